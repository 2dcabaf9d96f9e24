"""Exact rational matrices: PSD certification, float eigenvalues, rounding.

Positive semidefiniteness is decided by symmetric Gaussian elimination
over the rationals, which never needs row exchanges on a PSD input: pivot
on each positive diagonal entry in turn; a zero diagonal entry forces its
whole row and column to vanish; a negative diagonal entry or a violated
zero row yields an explicit vector x with x^T m x < 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "RationalMatrix",
    "PsdResult",
    "psd_check_exact",
    "min_eigenvalue_float",
    "rationalize",
]


@dataclass(frozen=True)
class RationalMatrix:
    """A square matrix of exact rationals."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        d = len(self.rows)
        for r in self.rows:
            if len(r) != d:
                raise ValueError("matrix is not square")

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def from_scaled_integers(cls, ints, scale: Fraction) -> "RationalMatrix":
        scale = Fraction(scale)
        return cls(tuple(tuple(scale * x for x in row) for row in ints))

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def is_symmetric(self) -> bool:
        d = self.dimension
        return all(self.rows[i][j] == self.rows[j][i] for i in range(d) for j in range(i + 1, d))

    def scaled(self, factor: Fraction) -> "RationalMatrix":
        factor = Fraction(factor)
        return RationalMatrix(tuple(tuple(factor * x for x in row) for row in self.rows))

    def permuted(self, perm) -> "RationalMatrix":
        """Conjugate by a permutation: entry (i, j) moves to (perm[i], perm[j])."""
        d = self.dimension
        out = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                out[perm[i]][perm[j]] = self.rows[i][j]
        return RationalMatrix(tuple(tuple(r) for r in out))

    def quadratic_form(self, x) -> Fraction:
        x = [Fraction(v) for v in x]
        total = Fraction(0)
        for i, row in enumerate(self.rows):
            for j, m in enumerate(row):
                total += x[i] * m * x[j]
        return total

    # -- plain text format: ``d num/den`` then d rows of d integers -------

    def common_scale(self) -> tuple[Fraction, list[list[int]]]:
        """Write the matrix as scale * integer matrix with scale = 1/lcm."""
        den = 1
        for row in self.rows:
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
        scale = Fraction(1, den)
        ints = [[int(x * den) for x in row] for row in self.rows]
        return scale, ints

    def save(self, path) -> None:
        scale, ints = self.common_scale()
        with open(path, "w") as fh:
            fh.write(f"{self.dimension} {scale.numerator}/{scale.denominator}\n")
            for row in ints:
                fh.write(" ".join(str(x) for x in row) + "\n")

    @classmethod
    def load(cls, path) -> "RationalMatrix":
        with open(path) as fh:
            tokens = fh.read().split()
        if len(tokens) < 2:
            raise ValueError(f"{path}: matrix file too short")
        d = int(tokens[0])
        num, _, den = tokens[1].partition("/")
        scale = Fraction(int(num), int(den) if den else 1)
        body = tokens[2:]
        if len(body) != d * d:
            raise ValueError(f"{path}: expected {d * d} entries, got {len(body)}")
        ints = [[int(body[i * d + j]) for j in range(d)] for i in range(d)]
        return cls.from_scaled_integers(ints, scale)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class PsdResult:
    """Outcome of the exact PSD check.

    On success, ``pivots`` lists the positive pivots encountered (zero
    rows are skipped).  On failure, ``counterexample`` is a rational
    vector x with x^T m x < 0, and ``form_value`` is that negative value.
    """

    is_psd: bool
    pivots: tuple[Fraction, ...] | None = None
    counterexample: tuple[Fraction, ...] | None = None
    form_value: Fraction | None = None


def psd_check_exact(m: RationalMatrix) -> PsdResult:
    """Decide x^T m x >= 0 for all real x, exactly."""
    if not m.is_symmetric():
        raise ValueError("matrix is not symmetric")
    d = m.dimension
    work = [[Fraction(x) for x in row] for row in m.rows]
    live = list(range(d))  # original indices of the active submatrix
    pivots: list[Fraction] = []
    # per pivot: (pivot index, its stage row restricted to then-active indices)
    elim_steps: list[tuple[int, dict[int, Fraction]]] = []

    def lift(base: dict[int, Fraction]) -> tuple[Fraction, ...]:
        """Extend a Schur-complement witness to the original coordinates.

        Filling the pivot coordinate with -<row, x>/pivot at each earlier
        stage keeps the quadratic form value unchanged.
        """
        coords = dict(base)
        for p, row in reversed(elim_steps):
            s = sum((row.get(q, Fraction(0)) * v for q, v in coords.items()), Fraction(0))
            coords[p] = -s / row[p]
        x = [Fraction(0)] * d
        for q, v in coords.items():
            x[q] = v
        return tuple(x)

    while live:
        p = live[0]
        diag = work[p][p]
        if diag < 0:
            witness = lift({p: Fraction(1)})
            return PsdResult(False, None, witness, m.quadratic_form(witness))
        if diag == 0:
            bad = next((q for q in live[1:] if work[p][q] != 0), None)
            if bad is not None:
                # active submatrix rows p, bad look like [[0, b], [b, c]]
                # with b != 0; x = (-(c+1)/2b, 1) drives the form to -1
                b = work[p][bad]
                c = work[bad][bad]
                witness = lift({p: -(c + 1) / (2 * b), bad: Fraction(1)})
                return PsdResult(False, None, witness, m.quadratic_form(witness))
            live.pop(0)
            continue
        pivots.append(diag)
        elim_steps.append((p, {q: work[p][q] for q in live}))
        live.pop(0)
        for i in live:
            if work[p][i] == 0:
                continue
            f = work[p][i] / diag
            for j in live:
                work[i][j] -= f * work[p][j]
    return PsdResult(True, tuple(pivots), None, None)


def min_eigenvalue_float(m: RationalMatrix) -> float:
    """Smallest eigenvalue in double precision (symmetric input)."""
    import numpy as np

    if not m.is_symmetric():
        raise ValueError("matrix is not symmetric")
    if m.dimension == 0:
        raise ValueError("empty matrix has no eigenvalues")
    arr = np.array([[float(x) for x in row] for row in m.rows], dtype=float)
    return float(np.linalg.eigvalsh(arr).min())


def rationalize(values, denominator: int) -> RationalMatrix:
    """Round approximate reals to a symmetric rational matrix.

    Entries (i, j) and (j, i) are averaged before rounding to the nearest
    multiple of 1/denominator.
    """
    import math

    if denominator < 1:
        raise ValueError("denominator must be positive")
    rows = [list(row) for row in values]
    d = len(rows)
    for r in rows:
        if len(r) != d:
            raise ValueError("matrix is not square")
    for i in range(d):
        for j in range(d):
            v = float(rows[i][j])
            if not math.isfinite(v):
                raise ValueError(f"entry ({i}, {j}) is not finite")
    out = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            avg = (float(rows[i][j]) + float(rows[j][i])) / 2.0
            q = Fraction(round(avg * denominator), denominator)
            out[i][j] = q
            out[j][i] = q
    return RationalMatrix(tuple(tuple(r) for r in out))
