"""Acceptance gate: every headline claim, one test per criterion.

Run with ``pytest -v tests/test_acceptance.py`` to get one pass/fail
line per criterion.  Tolerances and time limits are stated inline; all
density and slack comparisons are exact rational equality unless a
float window is explicitly part of the claim.
"""

import math
import time
from fractions import Fraction

import pytest

from chain_identity import check_chain_identities, check_density_normalization
from flagcert.certificates import (
    builtin_certificate,
    verify,
    verify_example_order3,
)
from flagcert.constructions import (
    BlowupSpec,
    K12_OPTIMAL_S,
    builtin_blowup,
    limit_densities,
    optimize_weight,
)
from flagcert.flags import EMPTY_TYPE, POINT_TYPE, Flag, chain_expand, enumerate_flags
from flagcert.linalg import psd_check_exact
from flagcert.orgraphs import Orgraph, enumerate_orgraphs
from flagcert.sdp import build_problem, round_and_verify


def test_criterion_01_enumeration_counts():
    """Class counts 1, 2, 7, 42, 582 for n = 1..5 and 15 point flags of
    order 3, in under 10 seconds."""
    started = time.monotonic()
    counts = [len(enumerate_orgraphs(n)) for n in range(1, 6)]
    flags15 = len(enumerate_flags(POINT_TYPE, 3))
    elapsed = time.monotonic() - started
    assert counts == [1, 2, 7, 42, 582]
    assert flags15 == 15
    assert elapsed < 10
    print(f"criterion 1 PASS: counts {counts}, 15 flags, {elapsed:.2f}s")


def test_criterion_02_edge_expansion():
    """The edge density expands over the order-3 classes with exact
    coefficients (1, 1, 2/3, 2/3, 2/3, 1/3, 0)."""
    edge = Flag.from_embedding(EMPTY_TYPE, Orgraph.from_org1("2:1"), ())
    basis = enumerate_flags(EMPTY_TYPE, 3)
    got = {f.graph.to_org1(): c for f, c in zip(basis.flags, chain_expand(edge, basis))}
    assert got == {
        "3:121": Fraction(1),
        "3:111": Fraction(1),
        "3:022": Fraction(2, 3),
        "3:012": Fraction(2, 3),
        "3:011": Fraction(2, 3),
        "3:001": Fraction(1, 3),
        "3:000": Fraction(0),
    }
    print("criterion 2 PASS: edge expansion coefficients exact")


def test_criterion_03_order3_identities():
    """The three order-3 averaging identities reproduce exactly and the
    scalar chain gives 4/7 at rho = 4/7 and 1/4 at rho = 1."""
    report = verify_example_order3()
    assert report.ok
    assert report.quadratic_argmax == Fraction(4, 7)
    assert report.quadratic_max == Fraction(4, 7)
    assert report.value_at_full_edge_density == Fraction(1, 4)
    print("criterion 3 PASS: identities and scalar chain exact")


def _check_certificate(name, bound, eig_window, budget):
    cert = builtin_certificate(name)
    started = time.monotonic()
    report = verify(cert)
    elapsed = time.monotonic() - started
    assert elapsed < budget
    assert report.psd, f"{name}: matrix not exactly PSD"
    assert report.min_slack >= 0, f"{name}: negative slack {report.min_slack}"
    assert report.implied_bound <= bound
    lo, hi = eig_window
    assert lo <= report.min_eigenvalue <= hi
    return report, elapsed


def test_criterion_04_p3_certificate():
    """Directed path: exactly PSD, all 582 slacks nonnegative, implied
    bound at most 4446/10^4, min eigenvalue in [2e-5, 8e-5], < 120 s."""
    report, elapsed = _check_certificate(
        "p3", Fraction(4446, 10**4), (2e-5, 8e-5), 120
    )
    print(
        f"criterion 4 PASS: implied {float(report.implied_bound):.6f}, "
        f"eig {report.min_eigenvalue:.2e}, {elapsed:.2f}s"
    )


def test_criterion_05_c4_certificate():
    """4-cycle: implied bound at most 1104/10^4, eigenvalue window
    [2.5e-5, 1e-4]."""
    report, elapsed = _check_certificate(
        "c4", Fraction(1104, 10**4), (2.5e-5, 1e-4), 120
    )
    print(
        f"criterion 5 PASS: implied {float(report.implied_bound):.6f}, "
        f"eig {report.min_eigenvalue:.2e}, {elapsed:.2f}s"
    )


def test_criterion_06_k12_certificate():
    """Out-star: implied bound at most 4644/10^4, eigenvalue window
    [3.5e-6, 1.4e-5]."""
    report, elapsed = _check_certificate(
        "k12", Fraction(4644, 10**4), (3.5e-6, 1.4e-5), 120
    )
    print(
        f"criterion 6 PASS: implied {float(report.implied_bound):.6f}, "
        f"eig {report.min_eigenvalue:.2e}, {elapsed:.2f}s"
    )


def test_criterion_07_k2e1_certificate():
    """Edge plus isolated vertex: bound exactly 3/4 at host order 3."""
    cert = builtin_certificate("k2e1")
    report = verify(cert)
    assert report.ok
    assert cert.bound == Fraction(3, 4)
    assert report.implied_bound == Fraction(3, 4)
    assert report.min_slack == 0
    print("criterion 7 PASS: tight 3/4 bound at host order 3")


def test_criterion_08_constructions():
    """Blowup densities: P3 2/5 and C4 2/21 in the uniform 4-cycle
    blowup, C3 1/4, two tournaments 3/4 (exact); the weighted source
    construction within 1e-9 of 6 - 4 sqrt(2) with the non-edge density
    within 1e-9 of (1-s)/(3s+1); optimizer within 1e-6 of the best s."""
    c4 = limit_densities(builtin_blowup("c4"), 4)
    assert c4.density(Orgraph.from_org1("3:012")) == Fraction(2, 5)
    assert c4.density(Orgraph.from_org1("4:012210")) == Fraction(2, 21)
    c3 = limit_densities(builtin_blowup("c3"), 3)
    assert c3.density(Orgraph.from_org1("3:121")) == Fraction(1, 4)
    two = limit_densities(builtin_blowup("2tournaments"), 3)
    assert two.density(Orgraph.from_org1("3:001")) == Fraction(3, 4)

    s = K12_OPTIMAL_S
    k12 = limit_densities(builtin_blowup("k12"), 3)
    assert abs(k12.density(Orgraph.from_org1("3:022")) - (6 - 4 * math.sqrt(2))) < 1e-9
    assert abs(k12.density(Orgraph.from_org1("2:0")) - (1 - s) / (3 * s + 1)) < 1e-9

    def family(t):
        return BlowupSpec(
            Orgraph.from_org1("3:110"), (t, (1 - t) / 2, (1 - t) / 2), ("recurse",) * 3
        )

    s_star, _ = optimize_weight(family, Orgraph.from_org1("3:022"))
    assert abs(s_star - s) < 1e-6
    print(f"criterion 8 PASS: all densities exact/within tolerance, s* = {s_star:.8f}")


def test_criterion_09_property_suites():
    """Chain rule exact for every flag pair and intermediate order up to
    5 for types 0 and 1; density columns normalize; arc reversal fixes
    the path and 4-cycle matrices; verify is basis-permutation covariant."""
    n0 = check_chain_identities(EMPTY_TYPE, 5)
    n1 = check_chain_identities(POINT_TYPE, 5)
    check_density_normalization(EMPTY_TYPE, 5)
    check_density_normalization(POINT_TYPE, 5)

    # arc-reversal invariance of the two self-converse certificates
    flip = {0: 0, 1: 2, 2: 1}
    for name in ("p3", "c4"):
        cert = builtin_certificate(name)
        lookup = {f.graph.digits: i for i, f in enumerate(cert.flags)}
        perm = []
        for f in cert.flags:
            digits = tuple(flip[d] for d in f.graph.digits)
            conv = Flag.from_embedding(POINT_TYPE, Orgraph(3, digits), (0,)).canonical()
            perm.append(lookup[conv.graph.digits])
        assert cert.matrix.permuted(tuple(perm)).rows == cert.matrix.rows

    # basis-permutation covariance of verify
    import dataclasses

    base = builtin_certificate("k2e1")
    perm = (1, 2, 0)
    flags = tuple(base.flags[perm.index(i)] for i in range(3))
    moved = dataclasses.replace(base, flags=flags, matrix=base.matrix.permuted(perm))
    assert verify(moved).slack == verify(base).slack

    print(f"criterion 9 PASS: {n0 + n1} chain identities, invariances hold")


def test_criterion_10_sdp_round_trip():
    """Exporting the path problem and re-ingesting the bundled matrix as
    a numerical solution reproduces a passing certificate with implied
    bound at most 4446/10^4, in under 60 seconds."""
    started = time.monotonic()
    problem = build_problem(Orgraph.from_org1("3:012"), POINT_TYPE, 3, 5)
    cert = builtin_certificate("p3")
    d = cert.matrix.dimension
    rows = [[float(cert.matrix[i][j]) for j in range(d)] for i in range(d)]
    result = round_and_verify(problem, rows, 0.4446, [10**4, 10**5])
    elapsed = time.monotonic() - started
    assert result.ok
    assert result.report.implied_bound <= Fraction(4446, 10**4)
    assert psd_check_exact(result.certificate.matrix).is_psd
    assert elapsed < 60
    print(
        f"criterion 10 PASS: implied {float(result.report.implied_bound):.6f}, "
        f"{elapsed:.2f}s"
    )
