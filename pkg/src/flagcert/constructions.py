"""Limit densities of recursive weighted blowup constructions.

A construction replaces each vertex of a small host orgraph by a part
carrying a weight; cross-part pairs copy the host's arcs (or stay
non-adjacent), and each part is filled recursively with the whole
construction, with a growing transitive tournament, or with nothing.
The density of any small orgraph in the n -> infinity limit satisfies a
linear fixed-point equation solved bottom-up by order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .orgraphs import (
    Orgraph,
    automorphism_count,
    canonical_digits,
    enumerate_orgraphs,
)

__all__ = [
    "FILL_KINDS",
    "BlowupSpec",
    "LimitDensities",
    "limit_densities",
    "k12_closed_form",
    "optimize_weight",
    "builtin_blowup",
    "BUILTIN_BLOWUPS",
    "load_blowup",
    "save_blowup",
]

FILL_KINDS = ("recurse", "transitive", "empty")

MAX_DENSITY_ORDER = 5


@dataclass(frozen=True)
class BlowupSpec:
    """Weighted recursive blowup of a host orgraph."""

    host: Orgraph
    weights: tuple
    fills: tuple[str, ...]

    def __post_init__(self):
        m = self.host.n
        if len(self.weights) != m or len(self.fills) != m:
            raise ValueError(f"need {m} weights and {m} fills for a host of order {m}")
        for f in self.fills:
            if f not in FILL_KINDS:
                raise ValueError(f"unknown fill kind {f!r}")
        for w in self.weights:
            if w < 0:
                raise ValueError("weights must be non-negative")
        total = sum(self.weights)
        if self.exact:
            if total != 1:
                raise ValueError(f"weights sum to {total}, expected 1")
        elif abs(total - 1) > 1e-9:
            raise ValueError(f"weights sum to {total!r}, expected 1")

    @property
    def exact(self) -> bool:
        return all(isinstance(w, (Fraction, int)) for w in self.weights)


def _parse_weight(text):
    if isinstance(text, str):
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return float(text)
    if isinstance(text, int):
        return Fraction(text)
    return float(text)


def load_blowup(path) -> BlowupSpec:
    with open(path) as fh:
        doc = json.load(fh)
    for key in ("host", "weights", "fill"):
        if key not in doc:
            raise ValueError(f"{path}: missing field {key!r}")
    return BlowupSpec(
        host=Orgraph.from_org1(doc["host"]),
        weights=tuple(_parse_weight(w) for w in doc["weights"]),
        fills=tuple(doc["fill"]),
    )


def save_blowup(spec: BlowupSpec, path) -> None:
    def encode(w):
        if isinstance(w, (Fraction, int)):
            f = Fraction(w)
            return f"{f.numerator}/{f.denominator}"
        return repr(float(w))

    doc = {
        "host": spec.host.to_org1(),
        "weights": [encode(w) for w in spec.weights],
        "fill": list(spec.fills),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


@dataclass(frozen=True)
class LimitDensities:
    """Exact (or double-precision) limit densities per order."""

    spec: BlowupSpec
    orders: dict  # order -> {canonical Orgraph: density}

    def density(self, target: Orgraph):
        table = self.orders.get(target.n)
        if table is None:
            raise KeyError(f"order {target.n} not computed")
        return table[target.canonical()]


def _cross_digit(host: Orgraph, p: int, q: int) -> int:
    """Digit required between a vertex in part p and one in part q (p first)."""
    if p < q:
        return host.digit(p, q)
    d = host.digit(q, p)
    return {0: 0, 1: 2, 2: 1}[d]


def _is_transitive_tournament(digits: tuple[int, ...], k: int) -> bool:
    if any(d == 0 for d in digits):
        return False
    out = [0] * k
    pos = 0
    for i in range(k):
        for j in range(i + 1, k):
            if digits[pos] == 1:
                out[i] += 1
            else:
                out[j] += 1
            pos += 1
    return sorted(out) == list(range(k))


def limit_densities(spec: BlowupSpec, max_order: int) -> LimitDensities:
    """Density of every orgraph of order <= max_order in the limit object.

    Works with ordered-embedding probabilities e (a uniformly random
    ordered k-tuple of distinct vertices induces the target with that
    vertex order); the unordered density is e * k!/|Aut|.  Exact when
    every weight is rational.
    """
    if max_order > MAX_DENSITY_ORDER:
        raise ValueError(f"max_order {max_order} exceeds {MAX_DENSITY_ORDER}")
    exact = spec.exact
    one = Fraction(1) if exact else 1.0
    m = spec.host.n
    weights = spec.weights
    recurse_parts = [p for p in range(m) if spec.fills[p] == "recurse"]

    # e-values per order, keyed by canonical digit tuple
    e_tables: dict[int, dict[tuple[int, ...], object]] = {
        0: {(): one},
        1: {(): one},
    }

    for k in range(2, max_order + 1):
        sc = sum(weights[p] ** k for p in recurse_parts)
        if exact:
            degenerate = sc == 1
        else:
            degenerate = abs(sc - 1) < 1e-12
        table = {}
        for g in enumerate_orgraphs(k):
            base = _base_probability(spec, g, k, e_tables)
            if degenerate:
                if base == 0:
                    raise ValueError(
                        "degenerate blowup: a single recursive part of weight 1 "
                        "leaves the densities underdetermined"
                    )
                raise ValueError("degenerate blowup: self-term has weight 1")
            table[g.digits] = base / (1 - sc)
        e_tables[k] = table

    orders = {}
    for k in range(0, max_order + 1):
        row = {}
        for g in enumerate_orgraphs(k):
            e = e_tables[k][g.digits] if k >= 2 else one
            labelings = Fraction(math.factorial(k), automorphism_count(g))
            row[g] = e * labelings if exact else e * float(labelings)
        orders[k] = row
    return LimitDensities(spec=spec, orders=orders)


def _base_probability(spec: BlowupSpec, g: Orgraph, k: int, e_tables) -> object:
    """Probability mass of all part assignments except the pure self-term."""
    exact = spec.exact
    zero = Fraction(0) if exact else 0.0
    m = spec.host.n
    weights = spec.weights
    total = zero
    # iterate over assignments of the k tuple positions to parts
    for code in range(m ** k):
        phi = []
        c = code
        for _ in range(k):
            phi.append(c % m)
            c //= m
        parts_used = set(phi)
        if len(parts_used) == 1:
            p = phi[0]
            if spec.fills[p] == "recurse":
                continue  # self-term, handled by the fixed-point division
        w = weights[phi[0]]
        for p in phi[1:]:
            w = w * weights[p]
        if w == 0:
            continue
        # cross-part pairs must match the host
        ok = True
        for i in range(k):
            for j in range(i + 1, k):
                if phi[i] != phi[j]:
                    if g.digit(i, j) != _cross_digit(spec.host, phi[i], phi[j]):
                        ok = False
                        break
            if not ok:
                break
        if not ok:
            continue
        factor = Fraction(1) if exact else 1.0
        for p in parts_used:
            block = tuple(i for i in range(k) if phi[i] == p)
            if len(block) < 2:
                continue
            sub = g.subgraph(block)
            fill = spec.fills[p]
            if fill == "recurse":
                factor *= e_tables[len(block)][canonical_digits(len(block), sub.digits)]
            elif fill == "transitive":
                if _is_transitive_tournament(sub.digits, len(block)):
                    factor = factor * (Fraction(1, math.factorial(len(block)))
                                       if exact else 1.0 / math.factorial(len(block)))
                else:
                    factor = zero
                    break
            else:  # empty
                if any(d != 0 for d in sub.digits):
                    factor = zero
                    break
        if factor != 0:
            total += w * factor
    return total


def k12_closed_form(s):
    """Closed-form out-star density and non-edge density of the
    three-part source construction at source weight s."""
    if not 0 < s < 1:
        raise ValueError(f"s must lie in (0, 1), got {s!r}")
    rho_bar = (1 - s) / (3 * s + 1)
    d = 4 * (1 - s) * s / ((1 + s) * (3 * s + 1))
    return d, rho_bar


def optimize_weight(family, target: Orgraph, lo=0.0, hi=1.0, tol=1e-10):
    """Golden-section maximization of the target's limit density over a
    one-parameter family of blowup specs.  Probes stay strictly inside
    (lo, hi), so boundary-degenerate families are fine."""
    if not lo < hi:
        raise ValueError("empty search interval")
    inv_phi = (math.sqrt(5) - 1) / 2

    def value(s):
        dens = limit_densities(family(s), target.n)
        return float(dens.density(target))

    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = value(c), value(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = value(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = value(d)
    s_best, f_best = (c, fc) if fc >= fd else (d, fd)
    return s_best, f_best


BUILTIN_BLOWUPS = ("c3", "c4", "k12", "2tournaments")

K12_OPTIMAL_S = (2 * math.sqrt(2) - 1) / 7


def builtin_blowup(name: str) -> BlowupSpec:
    """Named constructions: the uniform recursive cycle blowups, the
    weighted three-part source construction, and two disjoint growing
    tournaments."""
    if name == "c3":
        return BlowupSpec(
            host=Orgraph.from_org1("3:121"),
            weights=(Fraction(1, 3),) * 3,
            fills=("recurse",) * 3,
        )
    if name == "c4":
        return BlowupSpec(
            host=Orgraph.from_org1("4:012210"),
            weights=(Fraction(1, 4),) * 4,
            fills=("recurse",) * 4,
        )
    if name == "k12":
        s = K12_OPTIMAL_S
        return BlowupSpec(
            host=Orgraph.from_org1("3:110"),
            weights=(s, (1 - s) / 2, (1 - s) / 2),
            fills=("recurse",) * 3,
        )
    if name == "2tournaments":
        return BlowupSpec(
            host=Orgraph.from_org1("2:0"),
            weights=(Fraction(1, 2), Fraction(1, 2)),
            fills=("transitive", "transitive"),
        )
    raise ValueError(f"unknown builtin blowup {name!r}")
