"""Flags: orgraphs with a distinguished labeled induced subgraph.

A type is a fully labeled orgraph sigma on vertices 1..k.  A sigma-flag is
an orgraph together with an injection theta of the labels such that the
labeled vertices induce sigma exactly, label for label.  Flag isomorphism
fixes every labeled vertex, so the canonical form of a flag keeps the
labels at positions 0..k-1 and minimizes the digit string over
permutations of the unlabeled vertices only.

Densities follow the usual sampling picture: petal vertex sets are drawn
uniformly from the unlabeled part, ordered tuples of petals are drawn
disjointly, and the averaging operator weights a graph by the fraction of
its labeled embeddings that produce a given flag.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .orgraphs import (
    Orgraph,
    canonical_digits,
    enumerate_orgraphs,
    permute_digits,
)

__all__ = [
    "TypeSigma",
    "Flag",
    "FlagBasis",
    "POINT_TYPE",
    "EMPTY_TYPE",
    "enumerate_flags",
    "flag_density",
    "sunflower_density",
    "chain_expand",
    "averaging_coefficient",
    "ProductCoefficientTable",
    "product_table",
]


def _falling(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= n - t
    return out


@dataclass(frozen=True)
class TypeSigma:
    """A fully labeled orgraph; vertex i carries label i+1."""

    graph: Orgraph

    @property
    def order(self) -> int:
        return self.graph.n

    def __str__(self) -> str:
        return f"type[{self.graph.to_org1()}]"


EMPTY_TYPE = TypeSigma(Orgraph(0, ()))
POINT_TYPE = TypeSigma(Orgraph(1, ()))


@lru_cache(maxsize=None)
def _tail_perms(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Permutations of range(n) fixing 0..k-1 pointwise."""
    out = []
    for tail in itertools.permutations(range(k, n)):
        perm = tuple(range(k)) + tail
        out.append(perm)
    return tuple(out)


_flag_canon_cache: dict[tuple[int, int, tuple[int, ...]], tuple[int, ...]] = {}


def _flag_canonical_digits(n: int, k: int, digits: tuple[int, ...]) -> tuple[int, ...]:
    """Lex-min digits over relabelings of the unlabeled vertices k..n-1."""
    key = (n, k, digits)
    hit = _flag_canon_cache.get(key)
    if hit is not None:
        return hit
    best = digits
    for perm in _tail_perms(n, k):
        cand = permute_digits(digits, n, perm)
        if cand < best:
            best = cand
    _flag_canon_cache[key] = best
    return best


@dataclass(frozen=True)
class Flag:
    """A sigma-flag in canonical position: labels sit at vertices 0..k-1."""

    sigma: TypeSigma
    graph: Orgraph

    def __post_init__(self):
        k = self.sigma.order
        if self.graph.n < k:
            raise ValueError("flag smaller than its type")
        if self.graph.subgraph(range(k)).digits != self.sigma.graph.digits:
            raise ValueError("labeled vertices do not induce the type")

    @classmethod
    def from_embedding(cls, sigma: TypeSigma, graph: Orgraph, theta) -> "Flag":
        """Build from an explicit label embedding and canonicalize.

        theta[i] is the 0-based vertex carrying label i+1.
        """
        theta = tuple(theta)
        k = sigma.order
        if len(theta) != k or len(set(theta)) != k:
            raise ValueError(f"theta {theta} is not an injection of {k} labels")
        if any(not 0 <= v < graph.n for v in theta):
            raise ValueError(f"theta {theta} out of range for order {graph.n}")
        rest = sorted(set(range(graph.n)) - set(theta))
        ordered = graph.subgraph(tuple(theta) + tuple(rest))
        if ordered.subgraph(range(k)).digits != sigma.graph.digits:
            raise ValueError("theta does not induce the type")
        return cls(sigma, Orgraph(graph.n, _flag_canonical_digits(graph.n, k, ordered.digits)))

    @property
    def order(self) -> int:
        return self.graph.n

    @property
    def type_order(self) -> int:
        return self.sigma.order

    def canonical(self) -> "Flag":
        k = self.sigma.order
        return Flag(self.sigma, Orgraph(self.graph.n, _flag_canonical_digits(self.graph.n, k, self.graph.digits)))

    def is_canonical(self) -> bool:
        return self.graph.digits == _flag_canonical_digits(self.graph.n, self.sigma.order, self.graph.digits)

    def plain(self) -> Orgraph:
        """Forget the labels."""
        return self.graph.canonical()

    # -- text encoding ``k;org1;t1,...,tk`` ---------------------------------

    def encode(self) -> str:
        k = self.sigma.order
        theta = ",".join(str(i + 1) for i in range(k))
        return f"{k};{self.graph.to_org1()};{theta}"

    @classmethod
    def decode(cls, text: str) -> "Flag":
        parts = text.split(";")
        if len(parts) != 3:
            raise ValueError(f"bad flag encoding {text!r}: expected 3 ';' fields")
        try:
            k = int(parts[0])
        except ValueError:
            raise ValueError(f"bad flag encoding {text!r}: type order not an integer") from None
        graph = Orgraph.from_org1(parts[1])
        if parts[2]:
            theta = tuple(int(x) - 1 for x in parts[2].split(","))
        else:
            theta = ()
        if len(theta) != k:
            raise ValueError(f"bad flag encoding {text!r}: theta has {len(theta)} entries, type order {k}")
        sigma = TypeSigma(graph.subgraph(theta))
        return cls.from_embedding(sigma, graph, theta)

    def __str__(self) -> str:
        return self.encode()


@dataclass(frozen=True)
class FlagBasis:
    """An ordered tuple of same-type, same-order canonical flags."""

    sigma: TypeSigma
    order: int
    flags: tuple[Flag, ...]

    def __post_init__(self):
        for f in self.flags:
            if f.sigma != self.sigma:
                raise ValueError("basis mixes types")
            if f.order != self.order:
                raise ValueError("basis mixes flag orders")
            if not f.is_canonical():
                raise ValueError(f"basis flag {f} is not canonical")

    def __len__(self) -> int:
        return len(self.flags)

    def index_map(self) -> dict[tuple[int, ...], int]:
        return {f.graph.digits: i for i, f in enumerate(self.flags)}


def _point_flag(edge_lists: list[list[tuple[int, int]]]) -> tuple[Flag, ...]:
    out = []
    for edges in edge_lists:
        g = Orgraph.from_edges(3, edges)
        out.append(Flag.from_embedding(POINT_TYPE, g, (0,)))
    return tuple(out)


# Order-3 flags over the single labeled vertex, in the index order the
# bundled certificate matrices use.  Vertex 0 is labeled; 1 and 2 are the
# unlabeled pair.
_PINNED_ORDER3_EDGES: list[list[tuple[int, int]]] = [
    [],                            # 0: empty
    [(0, 1)],                      # 1: out-edge
    [(0, 1), (0, 2)],              # 2: out-star
    [(0, 1), (0, 2), (1, 2)],      # 3: out-star plus arc between petals
    [(0, 1), (2, 0)],              # 4: one out, one in
    [(0, 1), (2, 0), (1, 2)],      # 5: directed 3-cycle through the label
    [(0, 1), (2, 0), (2, 1)],      # 6: transitive triangle, label in middle
    [(0, 1), (1, 2)],              # 7: out-edge extended by a path
    [(0, 1), (2, 1)],              # 8: out-edge plus arc into its head
    [(1, 0)],                      # 9: in-edge
    [(1, 0), (2, 0)],              # 10: in-star
    [(1, 0), (2, 0), (1, 2)],      # 11: in-star plus arc between petals
    [(1, 0), (1, 2)],              # 12: in-edge extended by a path
    [(1, 0), (2, 1)],              # 13: in-edge plus arc into its tail
    [(1, 2)],                      # 14: arc between the unlabeled pair
]


@lru_cache(maxsize=None)
def pinned_point_order3_basis() -> FlagBasis:
    """The 15 order-3 point flags in the bundled certificates' order."""
    return FlagBasis(POINT_TYPE, 3, _point_flag(_PINNED_ORDER3_EDGES))


def _type_embeddings(sigma: TypeSigma, g: Orgraph) -> list[tuple[int, ...]]:
    """All injections of the labels into g that induce sigma exactly."""
    k = sigma.order
    want = sigma.graph.digits
    out = []
    for theta in itertools.permutations(range(g.n), k):
        if g.subgraph(theta).digits == want:
            out.append(theta)
    return out


@lru_cache(maxsize=None)
def enumerate_flags(sigma: TypeSigma, ell: int) -> FlagBasis:
    """All sigma-flag classes of order ell, canonical.

    Ordered by their canonical digit string, except the order-3 basis over
    the single labeled vertex, whose index order is pinned to match the
    bundled certificate matrices.
    """
    k = sigma.order
    if ell < k:
        raise ValueError(f"flag order {ell} below type order {k}")
    found = {}
    for g in enumerate_orgraphs(ell):
        for theta in _type_embeddings(sigma, g):
            f = Flag.from_embedding(sigma, g, theta)
            found[f.graph.digits] = f
    flags = tuple(found[d] for d in sorted(found))
    basis = FlagBasis(sigma, ell, flags)
    if sigma == POINT_TYPE and ell == 3:
        pinned = pinned_point_order3_basis()
        if set(f.graph.digits for f in pinned.flags) != set(found):
            raise AssertionError("pinned order-3 basis out of sync with enumeration")
        return pinned
    return basis


def flag_density(f1: Flag, f: Flag) -> Fraction:
    """Probability that a random petal of f induces the flag f1.

    Draws |f1| - k unlabeled vertices of f uniformly and tests whether
    they, together with the labels, induce f1.
    """
    if f1.sigma != f.sigma:
        raise ValueError("flags have different types")
    k = f1.sigma.order
    a = f1.order - k
    pool = f.order - k
    if a > pool:
        raise ValueError(f"petal size {a} exceeds unlabeled pool {pool}")
    f1 = f1.canonical()
    f = f.canonical()
    want = f1.graph.digits
    labels = tuple(range(k))
    hits = 0
    for petal in itertools.combinations(range(k, f.order), a):
        sub = f.graph.subgraph(labels + petal)
        if _flag_canonical_digits(k + a, k, sub.digits) == want:
            hits += 1
    return Fraction(hits, math.comb(pool, a))


def sunflower_density(f1: Flag, f2: Flag, f: Flag) -> Fraction:
    """Probability that an ordered pair of disjoint petals induces (f1, f2)."""
    if not (f1.sigma == f2.sigma == f.sigma):
        raise ValueError("flags have different types")
    k = f.sigma.order
    a = f1.order - k
    b = f2.order - k
    pool = f.order - k
    if a + b > pool:
        raise ValueError(f"petal sizes {a}+{b} exceed unlabeled pool {pool}")
    f1 = f1.canonical()
    f2 = f2.canonical()
    f = f.canonical()
    want1 = f1.graph.digits
    want2 = f2.graph.digits
    labels = tuple(range(k))
    unlabeled = range(k, f.order)
    hits = 0
    total = 0
    for v1 in itertools.combinations(unlabeled, a):
        rest = tuple(u for u in unlabeled if u not in v1)
        sub1 = f.graph.subgraph(labels + v1)
        ok1 = _flag_canonical_digits(k + a, k, sub1.digits) == want1
        for v2 in itertools.combinations(rest, b):
            total += 1
            if not ok1:
                continue
            sub2 = f.graph.subgraph(labels + v2)
            if _flag_canonical_digits(k + b, k, sub2.digits) == want2:
                hits += 1
    return Fraction(hits, total)


def chain_expand(f1: Flag, basis: FlagBasis) -> list[Fraction]:
    """Coefficients expressing f1's density through an order-ell basis."""
    if f1.sigma != basis.sigma:
        raise ValueError("flag and basis have different types")
    return [flag_density(f1, f) for f in basis.flags]


def averaging_coefficient(f: Flag) -> Fraction:
    """Weight of the label-forgetting average: the fraction of labeled
    embeddings of the underlying graph that reproduce this flag."""
    f = f.canonical()
    k = f.sigma.order
    g = f.graph
    want = f.graph.digits
    hits = 0
    for theta in _type_embeddings(f.sigma, g):
        rest = sorted(set(range(g.n)) - set(theta))
        ordered = g.subgraph(tuple(theta) + tuple(rest))
        if _flag_canonical_digits(g.n, k, ordered.digits) == want:
            hits += 1
    return Fraction(hits, _falling(g.n, k))


@dataclass(frozen=True)
class ProductCoefficientTable:
    """Coefficients of averaged flag products over the order-N classes.

    entry(i, j, g) is the coefficient of host graph g in the label-averaged
    product of basis flags i and j.  Stored sparsely per host.
    """

    basis: FlagBasis
    host_order: int
    hosts: tuple[Orgraph, ...]
    coeffs: tuple[dict[tuple[int, int], Fraction], ...]

    def entry(self, i: int, j: int, g_index: int) -> Fraction:
        return self.coeffs[g_index].get((i, j), Fraction(0))

    def quadratic_form(self, g_index: int, matrix) -> Fraction:
        """Sum of matrix[i][j] * entry(i, j, g) over all (i, j)."""
        total = Fraction(0)
        for (i, j), c in self.coeffs[g_index].items():
            total += matrix[i][j] * c
        return total

    def to_text(self) -> str:
        """Lines ``i j g_index num/den``, zero entries omitted."""
        lines = []
        for g_index, cell in enumerate(self.coeffs):
            for (i, j) in sorted(cell):
                c = cell[(i, j)]
                lines.append(f"{i} {j} {g_index} {c.numerator}/{c.denominator}")
        lines.sort(key=lambda s: tuple(int(x.split("/")[0]) for x in s.split()[:3]))
        return "\n".join(lines) + "\n"


_product_cache: dict[tuple, ProductCoefficientTable] = {}


def product_table(basis: FlagBasis, host_order: int) -> ProductCoefficientTable:
    """Expansion of every pairwise averaged product over order-N classes.

    For each host G and each label embedding theta, every ordered pair of
    disjoint petals contributes to the (i, j) cell matching the two petal
    flags; the total is normalized by the number of ordered vertex
    injections and of petal pairs.
    """
    k = basis.sigma.order
    ell = basis.order
    if 2 * ell - k > host_order:
        raise ValueError(
            f"host order {host_order} too small for two order-{ell} flags over a type of order {k}"
        )
    key = (basis.sigma.graph.digits, ell, tuple(f.graph.digits for f in basis.flags), host_order)
    hit = _product_cache.get(key)
    if hit is not None:
        return hit

    hosts = enumerate_orgraphs(host_order)
    lookup = basis.index_map()
    a = ell - k
    n = host_order
    pool = n - k
    pair_total = math.comb(pool, a) * math.comb(pool - a, a)
    denom = _falling(n, k) * pair_total

    coeffs = []
    for g in hosts:
        counts: dict[tuple[int, int], int] = {}
        for theta in _type_embeddings(basis.sigma, g):
            unlabeled = tuple(u for u in range(n) if u not in theta)
            for v1 in itertools.combinations(unlabeled, a):
                sub1 = g.subgraph(theta + v1)
                i = lookup.get(_flag_canonical_digits(ell, k, sub1.digits))
                if i is None:
                    continue
                rest = tuple(u for u in unlabeled if u not in v1)
                for v2 in itertools.combinations(rest, a):
                    sub2 = g.subgraph(theta + v2)
                    j = lookup.get(_flag_canonical_digits(ell, k, sub2.digits))
                    if j is None:
                        continue
                    counts[(i, j)] = counts.get((i, j), 0) + 1
        coeffs.append({ij: Fraction(c, denom) for ij, c in counts.items()})

    table = ProductCoefficientTable(basis, host_order, hosts, tuple(coeffs))
    _product_cache[key] = table
    return table
