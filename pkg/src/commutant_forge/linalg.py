"""Exact sparse Gaussian elimination over the rationals.

Vectors are dicts mapping column index -> nonzero Fraction.  All routines
return fully reduced (RREF) data: leading coefficient 1, zeros above and
below every pivot, rows sorted by pivot column.  RREF is unique per row
space, which is what makes kernel bases and quotient representatives
canonical across runs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

SparseVec = dict[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def vec_scale(v: SparseVec, c: Fraction) -> SparseVec:
    if not c:
        return {}
    return {k: val * c for k, val in v.items()}


def vec_axpy(target: SparseVec, coeff: Fraction, source: SparseVec) -> None:
    """target += coeff * source, in place, dropping zeros."""
    if not coeff:
        return
    for k, val in source.items():
        acc = target.get(k, _ZERO) + coeff * val
        if acc:
            target[k] = acc
        else:
            target.pop(k, None)


def vec_is_zero(v: SparseVec) -> bool:
    return not v


class Echelon:
    """Incrementally maintained reduced row echelon form of a row space."""

    def __init__(self, rows: Iterable[SparseVec] = ()):  # noqa: D401
        self.rows: list[tuple[int, SparseVec]] = []  # (pivot, row), sorted by pivot
        for r in rows:
            self.add(r)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return [p for p, _ in self.rows]

    def reduce(self, vec: SparseVec) -> SparseVec:
        """Residue of vec after eliminating all pivot coordinates."""
        out = dict(vec)
        for pivot, row in self.rows:
            c = out.get(pivot)
            if c:
                vec_axpy(out, -c, row)
        return out

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)

    def add(self, vec: SparseVec) -> bool:
        """Insert vec's residue if independent; returns True if rank grew."""
        residue = self.reduce(vec)
        if not residue:
            return False
        pivot = min(residue)
        inv = _ONE / residue[pivot]
        new_row = {k: v * inv for k, v in residue.items()}
        for _, row in self.rows:
            c = row.get(pivot)
            if c:
                vec_axpy(row, -c, new_row)
        self.rows.append((pivot, new_row))
        self.rows.sort(key=lambda item: item[0])
        return True

    def basis(self) -> list[SparseVec]:
        return [dict(row) for _, row in self.rows]


def rref(rows: Iterable[SparseVec]) -> tuple[list[SparseVec], list[int]]:
    """Reduced echelon basis of the row space and its pivot columns."""
    ech = Echelon(rows)
    return ech.basis(), ech.pivots


def rank(rows: Iterable[SparseVec]) -> int:
    return Echelon(rows).dim


def kernel(rows: Iterable[SparseVec], ncols: int) -> list[SparseVec]:
    """Canonical reduced basis of {v : M v = 0} for M given by `rows`.

    The standard free-column parametrization is re-echelonized so the
    output is the unique RREF basis of the null space.
    """
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    basis: list[SparseVec] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v: SparseVec = {free: _ONE}
        for pivot, row in zip(pivots, reduced):
            c = row.get(free)
            if c:
                v[pivot] = -c
        basis.append(v)
    out = Echelon(basis)
    return out.basis()


def express(vectors: Sequence[SparseVec], target: SparseVec) -> tuple[list[Fraction], SparseVec]:
    """Write target = sum(coeffs[i] * vectors[i]) + residue, canonically.

    The residue is the reduction of target modulo span(vectors); it is zero
    exactly when target lies in the span.  With dependent `vectors` the
    coefficient choice is still deterministic: later dependent vectors get
    coefficient zero.
    """
    rows: list[tuple[int, SparseVec, SparseVec]] = []  # (pivot, main, combo)
    for idx, v in enumerate(vectors):
        main = dict(v)
        combo: SparseVec = {idx: _ONE}
        for pivot, m, t in rows:
            c = main.get(pivot)
            if c:
                vec_axpy(main, -c, m)
                vec_axpy(combo, -c, t)
        if not main:
            continue
        pivot = min(main)
        inv = _ONE / main[pivot]
        main = {k: val * inv for k, val in main.items()}
        combo = {k: val * inv for k, val in combo.items()}
        for _, m, t in rows:
            c = m.get(pivot)
            if c:
                vec_axpy(m, -c, main)
                vec_axpy(t, -c, combo)
        rows.append((pivot, main, combo))
        rows.sort(key=lambda item: item[0])
    residue = dict(target)
    acc: SparseVec = {}
    for pivot, m, t in rows:
        c = residue.get(pivot)
        if c:
            vec_axpy(residue, -c, m)
            vec_axpy(acc, c, t)
    coeffs = [acc.get(i, _ZERO) for i in range(len(vectors))]
    return coeffs, residue


def matrix_rank_at(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a dense matrix of Fractions."""
    sparse = [{j: Fraction(v) for j, v in enumerate(row) if v} for row in rows]
    return rank(sparse)


def invert(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse of a square matrix; raises ValueError if singular."""
    n = len(matrix)
    rows: list[SparseVec] = []
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise ValueError("matrix is not square")
        r: SparseVec = {}
        for j, v in enumerate(row):
            v = Fraction(v)
            if v:
                r[j] = v
        r[n + i] = _ONE
        rows.append(r)
    ech = Echelon(rows)
    if ech.pivots[: n if ech.dim >= n else ech.dim] != list(range(n)) or ech.dim != n:
        raise ValueError("matrix is singular")
    inverse = [[_ZERO] * n for _ in range(n)]
    for pivot, row in ech.rows:
        for k, v in row.items():
            if k >= n:
                inverse[pivot][k - n] = v
    return inverse
