"""Export the certificate-search problem for an external SDP solver and
turn a numerical solution back into an exactly verified certificate.

No solver runs in-process.  The search for a matrix Q minimizing b
subject to Q >= 0 and, for every host class G,

    b - t_G - <C_G, Q> >= 0

is written in SDPA sparse format; whatever solver produces an
approximate Q, ``round_and_verify`` rationalizes it over a grid of
denominators and hands the first exactly PSD candidate to the verifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .certificates import Certificate, VerificationReport, verify
from .flags import FlagBasis, ProductCoefficientTable, TypeSigma, enumerate_flags, product_table
from .linalg import RationalMatrix, psd_check_exact, rationalize
from .orgraphs import Orgraph, induced_density

__all__ = [
    "SdpProblem",
    "build_problem",
    "export_sdpa",
    "parse_sdpa",
    "load_solution",
    "RoundingAttempt",
    "RoundingResult",
    "round_and_verify",
    "BOUND_DENOMINATOR_CAP",
]

# rounded certificates quote their bound with a denominator this size or less
BOUND_DENOMINATOR_CAP = 10**4


@dataclass(frozen=True)
class SdpProblem:
    """Linear data of the bound-minimization problem for one target."""

    basis: FlagBasis
    host_order: int
    target: Orgraph
    table: ProductCoefficientTable
    densities: tuple[Fraction, ...]  # induced density of target per host

    def __post_init__(self):
        if len(self.densities) != len(self.table.hosts):
            raise ValueError("one density per host class required")
        for t in self.densities:
            if not 0 <= t <= 1:
                raise ValueError(f"target density {t} outside [0, 1]")

    @property
    def hosts(self) -> tuple[Orgraph, ...]:
        return self.table.hosts

    @property
    def dimension(self) -> int:
        return len(self.basis)


def build_problem(target: Orgraph, sigma: TypeSigma, flag_order: int, host_order: int) -> SdpProblem:
    """Assemble the problem: basis, product coefficients, target densities."""
    if target.n > host_order:
        raise ValueError(
            f"target order {target.n} exceeds host order {host_order}"
        )
    basis = enumerate_flags(sigma, flag_order)
    table = product_table(basis, host_order)
    densities = tuple(induced_density(target, g) for g in table.hosts)
    return SdpProblem(
        basis=basis,
        host_order=host_order,
        target=target,
        table=table,
        densities=densities,
    )


def _triangle_pairs(d: int):
    for r in range(d):
        for s in range(r, d):
            yield r, s


def _render(value: Fraction) -> str:
    return f"{float(value):.17g}"


def _entry_lines(problem: SdpProblem) -> list[str]:
    """Constraint-matrix entries as ``matno block i j value`` lines.

    Variable 1 is the bound b; variables 2 .. 1+d(d+1)/2 are the
    upper-triangle entries of Q in row-major order.  Block 1 pins the
    PSD matrix to Q; block 2 is the diagonal of slacks, so the matrix
    for matno 0 carries the target densities and each Q variable enters
    with weight -(2 - delta_rs) c_rs(G).
    """
    d = problem.dimension
    lines = []
    for g_index, t in enumerate(problem.densities):
        if t != 0:
            lines.append(f"0 2 {g_index + 1} {g_index + 1} {_render(t)}")
    for g_index in range(len(problem.hosts)):
        lines.append(f"1 2 {g_index + 1} {g_index + 1} 1")
    matno = 1
    for r, s in _triangle_pairs(d):
        matno += 1
        lines.append(f"{matno} 1 {r + 1} {s + 1} 1")
        weight = 2 if r != s else 1
        for g_index in range(len(problem.hosts)):
            c = problem.table.entry(r, s, g_index)
            if c != 0:
                lines.append(f"{matno} 2 {g_index + 1} {g_index + 1} {_render(-weight * c)}")
    return lines


def _header_lines(problem: SdpProblem) -> list[str]:
    d = problem.dimension
    m = 1 + d * (d + 1) // 2
    return [
        "* flag-algebra bound minimization"
        f" target={problem.target.to_org1()}"
        f" type={problem.basis.sigma.graph.to_org1()}"
        f" flag_order={problem.basis.order}"
        f" host_order={problem.host_order}",
        str(m),
        "2",
        f"{d} -{len(problem.hosts)}",
        " ".join(["1"] + ["0"] * (m - 1)),
    ]


def export_sdpa(problem: SdpProblem, path) -> None:
    """Write the problem in SDPA sparse format (".dat-s").

    A feasible solution's variable vector is (b, q_11, q_12, ..., q_dd);
    minimizing the objective minimizes the certified bound.
    """
    lines = _header_lines(problem) + _entry_lines(problem)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_sdpa(path) -> SdpProblem:
    """Rebuild the problem from an exported file and cross-check it.

    The parameter comment pins target, type, flag order, and host order;
    the problem is re-derived from those and every structural element
    (dimensions, objective, each entry at 17 significant digits) is
    compared against the file.  Any mismatch raises ValueError.
    """
    with open(path) as fh:
        raw = [ln.strip() for ln in fh]
    lines = [ln for ln in raw if ln]
    params = {}
    for ln in lines:
        if ln.startswith("*") and "target=" in ln:
            for tok in ln[1:].split():
                if "=" in tok:
                    key, val = tok.split("=", 1)
                    params[key] = val
            break
    for key in ("target", "type", "flag_order", "host_order"):
        if key not in params:
            raise ValueError(f"{path}: parameter comment lacks {key}")
    problem = build_problem(
        target=Orgraph.from_org1(params["target"]),
        sigma=TypeSigma(Orgraph.from_org1(params["type"])),
        flag_order=int(params["flag_order"]),
        host_order=int(params["host_order"]),
    )
    body = [ln for ln in lines if not ln.startswith("*")]
    expected = _header_lines(problem)[1:] + _entry_lines(problem)
    if len(body) != len(expected):
        raise ValueError(
            f"{path}: {len(body)} data lines, expected {len(expected)}"
        )
    for got, want in zip(body, expected):
        if got.split() != want.split():
            raise ValueError(f"{path}: line {got!r} does not match {want!r}")
    return problem


def load_solution(path) -> tuple[list[list[float]], float]:
    """Read a solver dump: d lines of d numbers, then one line with b."""
    with open(path) as fh:
        rows = [ln.split() for ln in fh if ln.strip()]
    if len(rows) < 2:
        raise ValueError(f"{path}: expected a matrix plus a bound line")
    d = len(rows) - 1
    b_line = rows[-1]
    if len(b_line) != 1:
        raise ValueError(f"{path}: final line must hold the single bound value")
    matrix = []
    for i, row in enumerate(rows[:d]):
        if len(row) != d:
            raise ValueError(f"{path}: line {i + 1} has {len(row)} values, expected {d}")
        matrix.append([float(v) for v in row])
    return matrix, float(b_line[0])


def _ceil_fraction(value: Fraction, max_denominator: int) -> Fraction:
    """Smallest p/q >= value with q <= max_denominator."""
    best = None
    for q in range(1, max_denominator + 1):
        p = -((-value.numerator * q) // value.denominator)  # ceil(value * q)
        cand = Fraction(p, q)
        if best is None or cand < best:
            best = cand
        if cand == value:
            break
    return best


@dataclass(frozen=True)
class RoundingAttempt:
    """What happened at one denominator."""

    denominator: int
    psd: bool
    counterexample: tuple | None
    bound: Fraction
    min_slack: Fraction
    implied_bound: Fraction

    def describe(self) -> str:
        if self.psd:
            return (
                f"D={self.denominator}: PSD, bound {self.bound}, "
                f"min slack {self.min_slack}"
            )
        return (
            f"D={self.denominator}: rounded matrix is not PSD "
            f"(witness form value {self._witness_value()}), "
            f"worst slack {self.min_slack}"
        )

    def _witness_value(self):
        return self.counterexample[1] if self.counterexample else None


@dataclass(frozen=True)
class RoundingResult:
    certificate: Certificate | None
    report: VerificationReport | None
    attempts: tuple[RoundingAttempt, ...]

    @property
    def ok(self) -> bool:
        return self.certificate is not None and self.report is not None and self.report.ok


def round_and_verify(problem: SdpProblem, numerical_q, numerical_b, denominators) -> RoundingResult:
    """Rationalize a numerical solution over a denominator grid.

    For each denominator in ascending order the matrix is symmetrized and
    rounded, the bound is recomputed as the smallest rational of
    denominator at most 10^4 dominating every host's t_G + <C_G, Q>, and
    the exact verifier runs.  The first fully passing certificate wins;
    if none passes, the attempts record which check failed where.
    """
    d = problem.dimension
    rows = [list(r) for r in numerical_q]
    if len(rows) != d or any(len(r) != d for r in rows):
        raise ValueError(f"solution matrix must be {d}x{d}")
    float(numerical_b)  # shape sanity only; the bound is recomputed exactly

    attempts = []
    for denom in sorted(set(int(D) for D in denominators)):
        q = rationalize(rows, denom)
        worst = None
        for g_index in range(len(problem.hosts)):
            value = problem.densities[g_index] + problem.table.quadratic_form(g_index, q)
            if worst is None or value > worst:
                worst = value
        bound = _ceil_fraction(worst, BOUND_DENOMINATOR_CAP)
        cert = Certificate(
            sigma=problem.basis.sigma,
            flags=problem.basis.flags,
            matrix=q,
            target=problem.target,
            bound=bound,
            host_order=problem.host_order,
        )
        psd = psd_check_exact(q)
        if psd.is_psd:
            report = verify(cert)
            attempt = RoundingAttempt(
                denominator=denom,
                psd=True,
                counterexample=None,
                bound=bound,
                min_slack=report.min_slack,
                implied_bound=report.implied_bound,
            )
            attempts.append(attempt)
            if report.ok:
                return RoundingResult(cert, report, tuple(attempts))
        else:
            attempts.append(
                RoundingAttempt(
                    denominator=denom,
                    psd=False,
                    counterexample=(psd.counterexample, psd.form_value),
                    bound=bound,
                    min_slack=bound - worst,
                    implied_bound=worst,
                )
            )
    return RoundingResult(None, None, tuple(attempts))
