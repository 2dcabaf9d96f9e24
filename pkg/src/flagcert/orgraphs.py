"""Oriented graphs on up to a handful of vertices, with exact density counts.

An oriented graph ("orgraph") has no loops and at most one arc per vertex
pair.  Orgraphs are stored as the upper triangle of the adjacency relation:
for each unordered pair (i, j) with i < j, a digit in {0, 1, 2} meaning
no arc, an arc i -> j, or an arc j -> i.  Pairs are laid out row-major:
(0,1), (0,2), ..., (0,n-1), (1,2), ...

The text encoding "org1" is ``n:digits`` in that pair order, e.g. the
path 1 -> 2 -> 3 is ``3:101``.  The canonical encoding of an isomorphism
class is the lexicographically smallest digit string over all vertex
relabelings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Orgraph",
    "MAX_ORDER",
    "validate_edges",
    "canonical_form",
    "enumerate_orgraphs",
    "converse",
    "induced_density",
    "max_induced_density",
    "automorphism_count",
]

# Canonicalization enumerates all vertex permutations, so keep orders small.
MAX_ORDER = 8

_FLIP = (0, 2, 1)  # digit relabeling when a pair's endpoints swap sides


def _npairs(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def _pair_index(n: int) -> dict[tuple[int, int], int]:
    """Map (i, j) with i < j to its slot in the digit tuple."""
    index = {}
    t = 0
    for i in range(n):
        for j in range(i + 1, n):
            index[(i, j)] = t
            t += 1
    return index


@lru_cache(maxsize=None)
def _perm_moves(n: int) -> tuple[tuple[tuple[int, int, bool], ...], ...]:
    """For every permutation of range(n), the digit moves it induces.

    Each move is (src_slot, dst_slot, flipped): the digit at src_slot goes
    to dst_slot, exchanging 1 <-> 2 when the pair's endpoints change order.
    """
    idx = _pair_index(n)
    moves = []
    for perm in itertools.permutations(range(n)):
        one = []
        for (i, j), t in idx.items():
            pi, pj = perm[i], perm[j]
            if pi < pj:
                one.append((t, idx[(pi, pj)], False))
            else:
                one.append((t, idx[(pj, pi)], True))
        moves.append(tuple(one))
    return tuple(moves)


def _apply_moves(digits: tuple[int, ...], moves) -> tuple[int, ...]:
    out = [0] * len(digits)
    for src, dst, flipped in moves:
        d = digits[src]
        out[dst] = _FLIP[d] if flipped else d
    return tuple(out)


def permute_digits(digits: tuple[int, ...], n: int, perm) -> tuple[int, ...]:
    """Digits of the relabeled graph where old vertex i becomes perm[i]."""
    idx = _pair_index(n)
    out = [0] * len(digits)
    for (i, j), t in idx.items():
        pi, pj = perm[i], perm[j]
        d = digits[t]
        if pi < pj:
            out[idx[(pi, pj)]] = d
        else:
            out[idx[(pj, pi)]] = _FLIP[d]
    return tuple(out)


@dataclass(frozen=True)
class Orgraph:
    """An oriented graph in upper-triangle digit form.  Immutable."""

    n: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if not (0 <= self.n <= MAX_ORDER):
            raise ValueError(f"order {self.n} out of supported range 0..{MAX_ORDER}")
        if len(self.digits) != _npairs(self.n):
            raise ValueError(
                f"expected {_npairs(self.n)} digits for order {self.n}, got {len(self.digits)}"
            )
        if any(d not in (0, 1, 2) for d in self.digits):
            raise ValueError("digits must be 0, 1 or 2")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges) -> "Orgraph":
        """Build from directed edges (u, v) meaning u -> v, 0-based."""
        ok, reason = validate_edges(n, edges)
        if not ok:
            raise ValueError(reason)
        digits = [0] * _npairs(n)
        idx = _pair_index(n)
        for u, v in edges:
            if u < v:
                digits[idx[(u, v)]] = 1
            else:
                digits[idx[(v, u)]] = 2
        return cls(n, tuple(digits))

    @classmethod
    def from_org1(cls, text: str) -> "Orgraph":
        """Parse the ``n:digits`` encoding."""
        head, sep, body = text.partition(":")
        if not sep:
            raise ValueError(f"bad org1 {text!r}: missing ':'")
        try:
            n = int(head)
        except ValueError:
            raise ValueError(f"bad org1 {text!r}: order is not an integer") from None
        if n < 0:
            raise ValueError(f"bad org1 {text!r}: negative order")
        if len(body) != _npairs(n):
            raise ValueError(
                f"bad org1 {text!r}: expected {_npairs(n)} digits, got {len(body)}"
            )
        for pos, ch in enumerate(body):
            if ch not in "012":
                raise ValueError(f"bad org1 {text!r}: digit {pos} is {ch!r}")
        return cls(n, tuple(int(ch) for ch in body))

    # -- views -------------------------------------------------------------

    def to_org1(self) -> str:
        return f"{self.n}:" + "".join(str(d) for d in self.digits)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        idx = _pair_index(self.n)
        for (i, j), t in idx.items():
            d = self.digits[t]
            if d == 1:
                out.append((i, j))
            elif d == 2:
                out.append((j, i))
        return out

    def digit(self, i: int, j: int) -> int:
        """Digit for the unordered pair, oriented from min to max index."""
        if i == j:
            raise ValueError("no self-pairs")
        if i < j:
            return self.digits[_pair_index(self.n)[(i, j)]]
        return _FLIP[self.digits[_pair_index(self.n)[(j, i)]]]

    def edge_count(self) -> int:
        return sum(1 for d in self.digits if d)

    def subgraph(self, verts) -> "Orgraph":
        """Induced subgraph on the given vertices, kept in the given order."""
        verts = tuple(verts)
        digits = []
        for a in range(len(verts)):
            for b in range(a + 1, len(verts)):
                u, v = verts[a], verts[b]
                digits.append(self.digit(u, v))
        return Orgraph(len(verts), tuple(digits))

    def canonical(self) -> "Orgraph":
        return canonical_form(self)

    def is_canonical(self) -> bool:
        return self.digits == canonical_form(self).digits

    def __str__(self) -> str:
        return self.to_org1()


def validate_edges(n: int, edges) -> tuple[bool, str]:
    """Check a directed edge list against the orgraph invariants.

    Returns (ok, reason).  Rejects loops, out-of-range endpoints, repeated
    arcs, and pairs carrying arcs in both directions.
    """
    seen = set()
    for e in edges:
        try:
            u, v = e
        except (TypeError, ValueError):
            return False, f"edge {e!r} is not a pair"
        if not (0 <= u < n and 0 <= v < n):
            return False, f"edge ({u}, {v}) out of range for order {n}"
        if u == v:
            return False, f"loop at vertex {u}"
        if (u, v) in seen:
            return False, f"repeated edge ({u}, {v})"
        if (v, u) in seen:
            return False, f"pair ({v}, {u}) oriented both ways"
        seen.add((u, v))
    return True, "ok"


_canon_cache: dict[tuple[int, tuple[int, ...]], tuple[int, ...]] = {}


def canonical_digits(n: int, digits: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically smallest digit tuple over all vertex relabelings."""
    key = (n, digits)
    hit = _canon_cache.get(key)
    if hit is not None:
        return hit
    best = digits
    for moves in _perm_moves(n):
        cand = _apply_moves(digits, moves)
        if cand < best:
            best = cand
    _canon_cache[key] = best
    return best


def canonical_form(g: Orgraph) -> Orgraph:
    return Orgraph(g.n, canonical_digits(g.n, g.digits))


def converse(g: Orgraph) -> Orgraph:
    """Reverse every arc, then canonicalize."""
    flipped = tuple(_FLIP[d] for d in g.digits)
    return Orgraph(g.n, canonical_digits(g.n, flipped))


def automorphism_count(g: Orgraph) -> int:
    """Number of vertex permutations mapping the graph onto itself."""
    return sum(1 for moves in _perm_moves(g.n) if _apply_moves(g.digits, moves) == g.digits)


@lru_cache(maxsize=None)
def enumerate_orgraphs(n: int) -> tuple[Orgraph, ...]:
    """All isomorphism classes of order n, canonical, in lex order.

    Orders up to 5 sweep all 3^C(n,2) digit assignments and keep one
    representative per permutation orbit; order 6 extends the order-5
    classes by one vertex and deduplicates with vectorized relabeling.
    """
    if not (0 <= n <= 6):
        raise ValueError(f"enumeration supports orders 0..6, got {n}")
    if n <= 1:
        return (Orgraph(n, ()),)
    if n == 6:
        return _enumerate_order6()

    m = _npairs(n)
    total = 3**m
    weights = [3 ** (m - 1 - t) for t in range(m)]
    all_moves = _perm_moves(n)
    seen = bytearray(total)
    reps: list[Orgraph] = []
    for code in range(total):
        if seen[code]:
            continue
        # first unseen code in ascending order is its orbit's minimum
        digits = []
        c = code
        for w in weights:
            digits.append(c // w)
            c %= w
        digits = tuple(digits)
        for moves in all_moves:
            other = _apply_moves(digits, moves)
            seen[sum(d * w for d, w in zip(other, weights))] = 1
        reps.append(Orgraph(n, digits))
    return tuple(reps)


def _enumerate_order6() -> tuple[Orgraph, ...]:
    import numpy as np

    base = enumerate_orgraphs(5)
    idx6 = _pair_index(6)
    m6 = _npairs(6)

    # candidate rows: each order-5 class plus one new vertex, all 3^5 joins
    old_slots = [idx6[(i, j)] for i in range(5) for j in range(i + 1, 5)]
    new_slots = [idx6[(i, 5)] for i in range(5)]
    joins = list(itertools.product((0, 1, 2), repeat=5))
    cand = np.zeros((len(base) * len(joins), m6), dtype=np.uint8)
    row = 0
    for g in base:
        for join in joins:
            for s, d in zip(old_slots, g.digits):
                cand[row, s] = d
            for s, d in zip(new_slots, join):
                cand[row, s] = d
            row += 1

    flip = np.array(_FLIP, dtype=np.uint8)
    pow3 = np.array([3 ** (m6 - 1 - t) for t in range(m6)], dtype=np.int64)
    best = None
    idx_items = list(_pair_index(6).items())
    for perm in itertools.permutations(range(6)):
        src = np.empty(m6, dtype=np.int64)
        flipmask = np.zeros(m6, dtype=bool)
        for (i, j), t in idx_items:
            pi, pj = perm[i], perm[j]
            if pi < pj:
                src[idx6[(pi, pj)]] = t
            else:
                src[idx6[(pj, pi)]] = t
                flipmask[idx6[(pj, pi)]] = True
        arr = cand[:, src]
        arr[:, flipmask] = flip[arr[:, flipmask]]
        codes = arr.astype(np.int64) @ pow3
        best = codes if best is None else np.minimum(best, codes)

    out = []
    for code in sorted(set(int(c) for c in best)):
        digits = []
        for t in range(m6):
            w = 3 ** (m6 - 1 - t)
            digits.append(code // w)
            code %= w
        out.append(Orgraph(6, tuple(digits)))
    return tuple(out)


def induced_density(target: Orgraph, host: Orgraph) -> Fraction:
    """Probability that a random |target|-subset of host induces target."""
    k, n = target.n, host.n
    if k > n:
        raise ValueError(f"target order {k} exceeds host order {n}")
    want = canonical_digits(k, target.digits)
    hits = 0
    for verts in itertools.combinations(range(n), k):
        sub = host.subgraph(verts)
        if canonical_digits(k, sub.digits) == want:
            hits += 1
    return Fraction(hits, math.comb(n, k))


def max_induced_density(target: Orgraph, n: int) -> tuple[Fraction, Orgraph]:
    """Largest induced density of target over all order-n classes.

    Returns (density, witness); ties go to the lexicographically first
    canonical encoding.
    """
    if target.n > n:
        raise ValueError(f"target order {target.n} exceeds host order {n}")
    best: Fraction | None = None
    arg: Orgraph | None = None
    for host in enumerate_orgraphs(n):
        d = induced_density(target, host)
        if best is None or d > best:
            best, arg = d, host
    assert best is not None and arg is not None
    return best, arg
