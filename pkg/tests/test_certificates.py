"""Certificate verification: the four bundled bounds plus failure modes.

Core claims:
    - every bundled certificate verifies exactly, with the float spectrum
      inside its documented window
    - verification is covariant under basis permutation and arc reversal
    - JSON round trips preserve the report; malformed or non-canonical
      input is rejected with a position
    - the order-2 example is tight: min slack 0, bound exactly 3/4
"""

import dataclasses
import json
import time
from fractions import Fraction

import pytest

from flagcert.certificates import (
    BUILTIN_CERTIFICATES,
    Certificate,
    VerificationError,
    builtin_certificate,
    load_certificate,
    save_certificate,
    verify,
    verify_example_order3,
)
from flagcert.flags import POINT_TYPE, Flag, enumerate_flags
from flagcert.linalg import RationalMatrix
from flagcert.orgraphs import Orgraph, converse, max_induced_density

EXPECTED = {
    # target, bound, eigenvalue window
    "p3": ("3:012", Fraction(4446, 10**4), (2e-5, 8e-5)),
    "c4": ("4:012210", Fraction(1104, 10**4), (2.5e-5, 1e-4)),
    "k12": ("3:022", Fraction(4644, 10**4), (3.5e-6, 1.4e-5)),
}


@pytest.mark.parametrize("name", ["p3", "c4", "k12"])
def test_builtin_certificates_verify(name):
    target, bound, (lo, hi) = EXPECTED[name]
    cert = builtin_certificate(name)
    assert cert.target.to_org1() == target
    assert cert.bound == bound
    started = time.monotonic()
    report = verify(cert)
    assert time.monotonic() - started < 120
    assert report.ok
    assert report.psd
    assert report.min_slack >= 0
    assert report.implied_bound <= bound
    assert lo <= report.min_eigenvalue <= hi


def test_builtin_k2e1_is_tight():
    cert = builtin_certificate("k2e1")
    report = verify(cert)
    assert report.ok
    assert report.min_slack == 0
    assert report.implied_bound == Fraction(3, 4)
    # the float spectrum dips a hair below zero; the exact check does not
    assert report.min_eigenvalue == pytest.approx(0, abs=1e-12)
    assert report.psd


def test_order3_worked_example():
    report = verify_example_order3()
    assert report.ok
    assert report.quadratic_argmax == Fraction(4, 7)
    assert report.quadratic_max == Fraction(4, 7)
    assert report.value_at_full_edge_density == Fraction(1, 4)


def test_zero_matrix_certificate_reports_max_density():
    base = builtin_certificate("p3")
    d = base.matrix.dimension
    zero = RationalMatrix.from_rows([[Fraction(0)] * d for _ in range(d)])
    cert = dataclasses.replace(base, matrix=zero, bound=Fraction(1))
    report = verify(cert)
    best, witness = max_induced_density(base.target, 5)
    assert report.implied_bound == best == Fraction(7, 10)
    assert report.min_slack == 1 - best
    assert report.min_slack_graph == witness


def test_lowered_bound_fails_with_witness():
    base = builtin_certificate("p3")
    cert = dataclasses.replace(base, bound=Fraction(44, 100))
    report = verify(cert)
    assert not report.ok
    assert report.min_slack < 0
    # the violated host is recorded
    g = report.min_slack_graph
    assert report.slack[g] == report.min_slack


def test_bound_shift_moves_slack_exactly():
    base = builtin_certificate("c4")
    eps = Fraction(1, 10**4)
    report = verify(base)
    shifted = verify(dataclasses.replace(base, bound=base.bound + eps))
    assert shifted.min_slack == report.min_slack + eps
    assert shifted.implied_bound == report.implied_bound


def test_basis_permutation_covariance():
    base = builtin_certificate("k2e1")
    perm = (2, 0, 1)
    flags = tuple(base.flags[perm.index(i)] for i in range(len(perm)))
    matrix = base.matrix.permuted(perm)
    cert = Certificate(
        sigma=base.sigma,
        flags=flags,
        matrix=matrix,
        target=base.target,
        bound=base.bound,
        host_order=base.host_order,
    )
    ref, moved = verify(base), verify(cert)
    assert moved.min_slack == ref.min_slack
    assert moved.implied_bound == ref.implied_bound
    assert moved.slack == ref.slack


def _converse_permutation(flags):
    lookup = {f.graph.digits: i for i, f in enumerate(flags)}
    perm = []
    for f in flags:
        flipped = Flag.from_embedding(
            f.sigma,
            Orgraph(f.graph.n, tuple({0: 0, 1: 2, 2: 1}[d] for d in f.graph.digits)),
            tuple(range(f.sigma.order)),
        ).canonical()
        perm.append(lookup[flipped.graph.digits])
    return tuple(perm)


@pytest.mark.parametrize("name", ["p3", "c4"])
def test_arc_reversal_fixes_self_converse_matrices(name):
    """The path and the 4-cycle equal their own converses, and the
    bundled matrices commute with the arc-reversal permutation."""
    cert = builtin_certificate(name)
    assert converse(cert.target) == cert.target
    perm = _converse_permutation(cert.flags)
    assert cert.matrix.permuted(perm).rows == cert.matrix.rows


def test_arc_reversal_covariance_k12():
    """Reversing every arc carries the out-star certificate to an in-star
    certificate with identical slack profile."""
    cert = builtin_certificate("k12")
    perm = _converse_permutation(cert.flags)
    flipped = Certificate(
        sigma=cert.sigma,
        flags=cert.flags,
        matrix=cert.matrix.permuted(perm),
        target=converse(cert.target),
        bound=cert.bound,
        host_order=cert.host_order,
    )
    ref, moved = verify(cert), verify(flipped)
    assert moved.min_slack == ref.min_slack
    assert moved.implied_bound == ref.implied_bound
    assert sorted(moved.slack.values()) == sorted(ref.slack.values())


def test_certificate_json_round_trip(tmp_path):
    for name in BUILTIN_CERTIFICATES:
        cert = builtin_certificate(name)
        path = tmp_path / f"{name}.json"
        save_certificate(cert, path)
        again = load_certificate(path)
        assert again == cert


def test_load_rejects_missing_field(tmp_path):
    cert = builtin_certificate("k2e1")
    path = tmp_path / "c.json"
    save_certificate(cert, path)
    doc = json.loads(path.read_text())
    del doc["bound"]
    path.write_text(json.dumps(doc))
    with pytest.raises(VerificationError, match="bound"):
        load_certificate(path)


def test_load_rejects_noncanonical_flag(tmp_path):
    cert = builtin_certificate("p3")
    path = tmp_path / "c.json"
    save_certificate(cert, path)
    doc = json.loads(path.read_text())
    # rebuild one flag encoding with its two unlabeled vertices swapped
    f = cert.flags[1]
    swapped = Orgraph(3, (f.graph.digits[1], f.graph.digits[0],
                          {0: 0, 1: 2, 2: 1}[f.graph.digits[2]]))
    assert swapped.digits != f.graph.digits
    doc["flags"][1] = f"1;{swapped.to_org1()};1"
    path.write_text(json.dumps(doc))
    with pytest.raises(VerificationError, match=r"flags\[1\]"):
        load_certificate(path)


def test_load_rejects_bad_matrix_shape(tmp_path):
    cert = builtin_certificate("k2e1")
    path = tmp_path / "c.json"
    save_certificate(cert, path)
    doc = json.loads(path.read_text())
    doc["matrix"][0] = doc["matrix"][0][:2]
    path.write_text(json.dumps(doc))
    with pytest.raises(VerificationError, match=r"matrix"):
        load_certificate(path)


def test_certificate_validation():
    base = builtin_certificate("k2e1")
    with pytest.raises(ValueError):
        dataclasses.replace(base, host_order=2)  # two order-2 flags need 3 vertices
    asym = RationalMatrix.from_rows(
        [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    )
    with pytest.raises(ValueError):
        dataclasses.replace(base, matrix=asym)
    with pytest.raises(ValueError):
        dataclasses.replace(base, matrix=RationalMatrix.from_rows([[1]]))
