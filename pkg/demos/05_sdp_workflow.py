"""The full certificate-search workflow, minus the external solver.

Finding a certificate means minimizing the bound b subject to Q being
PSD and one linear constraint per host class.  The package exports that
problem in SDPA sparse format for any off-the-shelf solver, then turns
the solver's approximate output back into an exact certificate by
rounding over a grid of denominators and re-verifying from scratch.

Here the bundled path matrix plays the role of "solver output": its
float entries go through the same rounding pipeline a real solver dump
would.
"""

import tempfile
from pathlib import Path

from flagcert import (
    POINT_TYPE,
    Orgraph,
    build_problem,
    builtin_certificate,
    export_sdpa,
    parse_sdpa,
    round_and_verify,
)

workdir = Path(tempfile.mkdtemp(prefix="flagcert-demo-"))

problem = build_problem(Orgraph.from_org1("3:012"), POINT_TYPE, 3, 5)
path = workdir / "p3.dat-s"
export_sdpa(problem, path)
print(f"exported {path}")
print(f"  {problem.dimension}x{problem.dimension} PSD block,",
      f"{len(problem.hosts)} diagonal slack entries,",
      f"{1 + problem.dimension * (problem.dimension + 1) // 2} variables")

again = parse_sdpa(path)
print(f"re-parsed and cross-checked: {len(again.hosts)} hosts, targets match:",
      again.target == problem.target)
print()

cert = builtin_certificate("p3")
d = cert.matrix.dimension
approx = [[float(cert.matrix[i][j]) for j in range(d)] for i in range(d)]

print("rounding the decimal dump over denominators 100, 10^4, 10^5:")
result = round_and_verify(problem, approx, 0.4446, [100, 10**4, 10**5])
for attempt in result.attempts:
    print(" ", attempt.describe())
print()
if result.ok:
    report = result.report
    print(f"final certificate: bound {result.certificate.bound},",
          f"implied {report.implied_bound} = {float(report.implied_bound):.8f}")
    print("recovered the bundled matrix exactly:",
          result.certificate.matrix.rows == cert.matrix.rows)
