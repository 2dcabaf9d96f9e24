"""Certificates for inducibility upper bounds, and their exact verification.

A certificate packages a flag basis, a symmetric rational matrix Q, a
target orgraph, a claimed bound, and a host order N.  It is valid when Q
is positive semidefinite and, for every order-N class G,

    bound - density(target in G) - sum_ij Q_ij c_ij(G) >= 0,

where c is the product coefficient table of the basis.  Both conditions
are decided in exact rational arithmetic; a float eigenvalue is reported
alongside as a cross-check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .flags import (
    Flag,
    FlagBasis,
    POINT_TYPE,
    TypeSigma,
    enumerate_flags,
    product_table,
)
from .linalg import (
    PsdResult,
    RationalMatrix,
    min_eigenvalue_float,
    psd_check_exact,
)
from .orgraphs import Orgraph, induced_density

__all__ = [
    "Certificate",
    "VerificationReport",
    "VerificationError",
    "verify",
    "load_certificate",
    "save_certificate",
    "builtin_certificate",
    "BUILTIN_CERTIFICATES",
    "Order3Report",
    "verify_example_order3",
]


class VerificationError(Exception):
    """A certificate or worked identity failed an exact check."""


@dataclass(frozen=True)
class Certificate:
    """An upper-bound certificate: target density <= bound, asymptotically."""

    sigma: TypeSigma
    flags: tuple[Flag, ...]
    matrix: RationalMatrix
    target: Orgraph
    bound: Fraction
    host_order: int

    def __post_init__(self):
        if not self.flags:
            raise ValueError("certificate has no flags")
        orders = {f.order for f in self.flags}
        if len(orders) != 1:
            raise ValueError("certificate flags have mixed orders")
        for f in self.flags:
            if f.sigma != self.sigma:
                raise ValueError("certificate flag type differs from certificate type")
        if self.matrix.dimension != len(self.flags):
            raise ValueError(
                f"matrix dimension {self.matrix.dimension} does not match flag count {len(self.flags)}"
            )
        if not self.matrix.is_symmetric():
            raise ValueError("certificate matrix is not symmetric")
        ell = next(iter(orders))
        k = self.sigma.order
        if 2 * ell - k > self.host_order:
            raise ValueError(
                f"host order {self.host_order} cannot hold two order-{ell} flags over a type of order {k}"
            )
        if self.target.n > self.host_order:
            raise ValueError("target larger than host order")

    @property
    def flag_order(self) -> int:
        return self.flags[0].order

    def basis(self) -> FlagBasis:
        return FlagBasis(self.sigma, self.flag_order, self.flags)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of exact certificate verification."""

    certificate: Certificate
    psd: PsdResult
    slack: dict[Orgraph, Fraction]
    min_slack: Fraction
    min_slack_graph: Orgraph
    implied_bound: Fraction
    min_eigenvalue: float
    claimed_bound_ok: bool

    @property
    def ok(self) -> bool:
        return self.claimed_bound_ok

    def to_json_dict(self) -> dict:
        return {
            "target": self.certificate.target.to_org1(),
            "bound": _frac_str(self.certificate.bound),
            "host_order": self.certificate.host_order,
            "psd_ok": self.psd.is_psd,
            "min_slack": _frac_str(self.min_slack),
            "min_slack_graph": self.min_slack_graph.to_org1(),
            "implied_bound": _frac_str(self.implied_bound),
            "min_eigenvalue_float": self.min_eigenvalue,
            "ok": self.ok,
        }


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def verify(cert: Certificate) -> VerificationReport:
    """Check PSD and every order-N slack, exactly."""
    psd = psd_check_exact(cert.matrix)
    table = product_table(cert.basis(), cert.host_order)
    q = cert.matrix.rows
    slack: dict[Orgraph, Fraction] = {}
    min_slack: Fraction | None = None
    min_graph: Orgraph | None = None
    implied: Fraction | None = None
    for g_index, g in enumerate(table.hosts):
        t = induced_density(cert.target, g)
        quad = table.quadratic_form(g_index, q)
        s = cert.bound - t - quad
        slack[g] = s
        if min_slack is None or s < min_slack:
            min_slack, min_graph = s, g
        v = t + quad
        if implied is None or v > implied:
            implied = v
    assert min_slack is not None and min_graph is not None and implied is not None
    return VerificationReport(
        certificate=cert,
        psd=psd,
        slack=slack,
        min_slack=min_slack,
        min_slack_graph=min_graph,
        implied_bound=implied,
        min_eigenvalue=min_eigenvalue_float(cert.matrix),
        claimed_bound_ok=psd.is_psd and min_slack >= 0,
    )


# -- JSON certificate files ------------------------------------------------


def save_certificate(cert: Certificate, path) -> None:
    scale, ints = cert.matrix.common_scale()
    doc = {
        "type_order": cert.sigma.order,
        "type_edges": list(cert.sigma.graph.digits),
        "flags": [f.encode() for f in cert.flags],
        "matrix": ints,
        "scale": _frac_str(scale),
        "target": cert.target.to_org1(),
        "bound": _frac_str(cert.bound),
        "host_order": cert.host_order,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _parse_fraction(text, where: str) -> Fraction:
    if not isinstance(text, str):
        raise VerificationError(f"{where}: expected a 'p/q' string, got {text!r}")
    num, sep, den = text.partition("/")
    try:
        return Fraction(int(num), int(den)) if sep else Fraction(int(num))
    except (ValueError, ZeroDivisionError) as e:
        raise VerificationError(f"{where}: bad rational {text!r} ({e})") from None


def load_certificate(path) -> Certificate:
    """Read a certificate JSON file, rejecting malformed content loudly."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise VerificationError(f"{path}: not valid JSON ({e})") from None
    required = [
        "type_order", "type_edges", "flags", "matrix",
        "scale", "target", "bound", "host_order",
    ]
    missing = [k for k in required if k not in doc]
    if missing:
        raise VerificationError(f"{path}: missing fields {missing}")

    k = doc["type_order"]
    if not isinstance(k, int) or k < 0:
        raise VerificationError(f"{path}: type_order must be a non-negative integer")
    edges = doc["type_edges"]
    if len(edges) != k * (k - 1) // 2:
        raise VerificationError(f"{path}: type_edges needs {k*(k-1)//2} digits for type order {k}")
    sigma = TypeSigma(Orgraph(k, tuple(edges)))

    flags = []
    for pos, enc in enumerate(doc["flags"]):
        try:
            f = Flag.decode(enc)
        except ValueError as e:
            raise VerificationError(f"{path}: flags[{pos}]: {e}") from None
        if f.sigma != sigma:
            raise VerificationError(f"{path}: flags[{pos}]: type does not match type_edges")
        if Orgraph.from_org1(enc.split(";")[1]).digits != f.graph.digits:
            raise VerificationError(f"{path}: flags[{pos}]: {enc!r} is not in canonical form")
        flags.append(f)

    ints = doc["matrix"]
    d = len(flags)
    if len(ints) != d or any(len(row) != d for row in ints):
        raise VerificationError(f"{path}: matrix must be {d}x{d} to match the flag list")
    for i, row in enumerate(ints):
        for j, x in enumerate(row):
            if not isinstance(x, int):
                raise VerificationError(f"{path}: matrix[{i}][{j}] must be an integer")
    scale = _parse_fraction(doc["scale"], f"{path}: scale")
    matrix = RationalMatrix.from_scaled_integers(ints, scale)

    try:
        target = Orgraph.from_org1(doc["target"])
    except ValueError as e:
        raise VerificationError(f"{path}: target: {e}") from None
    if not target.is_canonical():
        raise VerificationError(
            f"{path}: target {doc['target']!r} is not a canonical encoding"
        )
    bound = _parse_fraction(doc["bound"], f"{path}: bound")
    host_order = doc["host_order"]
    if not isinstance(host_order, int):
        raise VerificationError(f"{path}: host_order must be an integer")
    try:
        return Certificate(sigma, tuple(flags), matrix, target, bound, host_order)
    except ValueError as e:
        raise VerificationError(f"{path}: {e}") from None


# -- bundled certificates ----------------------------------------------------

BUILTIN_CERTIFICATES = ("p3", "c4", "k12", "k2e1")

_BUILTIN_TARGETS = {
    "p3": ("3:012", Fraction(4446, 10_000), 5),
    "c4": ("4:012210", Fraction(1104, 10_000), 5),
    "k12": ("3:022", Fraction(4644, 10_000), 5),
    "k2e1": ("3:001", Fraction(3, 4), 3),
}


def builtin_matrix(name: str) -> RationalMatrix:
    if name not in BUILTIN_CERTIFICATES:
        raise ValueError(f"unknown builtin certificate {name!r}")
    with resources.as_file(resources.files("flagcert.data").joinpath(f"{name}.mat")) as p:
        return RationalMatrix.load(p)


def builtin_certificate(name: str) -> Certificate:
    """One of the bundled certificates: p3, c4, k12 (order-3 flags over the
    single labeled vertex, host order 5) or k2e1 (order-2 flags, host 3)."""
    if name not in BUILTIN_CERTIFICATES:
        raise ValueError(f"unknown builtin certificate {name!r}")
    target_enc, bound, host_order = _BUILTIN_TARGETS[name]
    flag_order = 2 if name == "k2e1" else 3
    basis = enumerate_flags(POINT_TYPE, flag_order)
    return Certificate(
        sigma=POINT_TYPE,
        flags=basis.flags,
        matrix=builtin_matrix(name),
        target=Orgraph.from_org1(target_enc),
        bound=bound,
        host_order=host_order,
    )


# -- worked order-3 identities ----------------------------------------------


@dataclass(frozen=True)
class Order3Report:
    """Exact re-derivation of the order-3 worked identities.

    Each identity states that a squared order-2 point flag, averaged over
    label placements, expands over the order-3 classes with the recorded
    coefficients.  The scalar step bounds the single-edge density rho via
    the concave quadratic -(7/4) rho^2 + 2 rho, whose maximum over [0, 1]
    is 4/7 at rho = 4/7; at rho = 1 the quadratic is worth 1/4.
    """

    identities: tuple[tuple[str, dict[str, str]], ...]
    quadratic_argmax: Fraction
    quadratic_max: Fraction
    value_at_full_edge_density: Fraction
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "identities": [
                {"name": name, "coefficients": dict(coeffs)}
                for name, coeffs in self.identities
            ],
            "quadratic_argmax": _frac_str(self.quadratic_argmax),
            "quadratic_max": _frac_str(self.quadratic_max),
            "value_at_full_edge_density": _frac_str(self.value_at_full_edge_density),
            "ok": self.ok,
        }


def verify_example_order3() -> Order3Report:
    """Re-derive the three averaging identities and the scalar bound.

    Raises VerificationError when any coefficient differs from the
    expected exact value.
    """
    basis2 = enumerate_flags(POINT_TYPE, 2)
    table = product_table(basis2, 3)
    hosts = {g.to_org1(): i for i, g in enumerate(table.hosts)}

    expected = [
        # squared non-edge flag: the empty class plus a third of the
        # single-edge class
        ("avg(non_edge^2)", 0, Fraction(1), {
            "3:000": Fraction(1), "3:001": Fraction(1, 3),
        }),
        # (3/2) x squared out-edge flag: half out-star, half transitive
        ("avg(out_edge^2) * 3/2", 1, Fraction(3, 2), {
            "3:022": Fraction(1, 2), "3:111": Fraction(1, 2),
        }),
        # (3/2) x squared in-edge flag: half in-star, half transitive
        ("avg(in_edge^2) * 3/2", 2, Fraction(3, 2), {
            "3:011": Fraction(1, 2), "3:111": Fraction(1, 2),
        }),
    ]
    identities = []
    for name, idx, factor, want in expected:
        got = {}
        for enc, g_index in hosts.items():
            c = factor * table.entry(idx, idx, g_index)
            if c:
                got[enc] = c
        if got != want:
            raise VerificationError(f"{name}: expected {want}, computed {got}")
        identities.append((name, {enc: _frac_str(c) for enc, c in sorted(got.items())}))

    # scalar step: f(rho) = -(7/4) rho^2 + 2 rho on [0, 1]
    def f(rho: Fraction) -> Fraction:
        return -Fraction(7, 4) * rho * rho + 2 * rho

    argmax = Fraction(4, 7)  # vertex of the concave parabola
    if f(argmax) != Fraction(4, 7):
        raise VerificationError("quadratic maximum is not 4/7")
    for probe in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)):
        if f(probe) > f(argmax):
            raise VerificationError(f"quadratic exceeds its vertex value at {probe}")
    if f(Fraction(1)) != Fraction(1, 4):
        raise VerificationError("quadratic at full edge density is not 1/4")

    return Order3Report(
        identities=tuple(identities),
        quadratic_argmax=argmax,
        quadratic_max=f(argmax),
        value_at_full_edge_density=f(Fraction(1)),
        ok=True,
    )
