"""Exact row reduction over the rationals.

Small dense matrices only (a few hundred columns at most); everything is a
list of lists of :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Vector = List[Fraction]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    n_cols = len(m[0])
    pivots: list[int] = []
    piv_r = 0
    for c in range(n_cols):
        for i in range(piv_r, len(m)):
            if m[i][c] != 0:
                break
        else:
            continue
        m[piv_r], m[i] = m[i], m[piv_r]
        p = m[piv_r][c]
        m[piv_r] = [x / p for x in m[piv_r]]
        for i in range(len(m)):
            if i != piv_r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[piv_r])]
        pivots.append(c)
        piv_r += 1
        if piv_r == len(m):
            break
    return m[:piv_r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int) -> list[Vector]:
    """Basis of {c : M c = 0} for the matrix whose rows are given."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    red, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


class Subspace:
    """Span of a finite set of rational vectors, with exact membership tests."""

    def __init__(self, vectors: Sequence[Sequence[Fraction]], dim: int):
        self.dim = dim
        self.basis, self.pivots = rref(vectors) if vectors else ([], [])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Fraction]) -> bool:
        w = [Fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return all(x == 0 for x in w)

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.rank == other.rank and self.issubset(other)

    __hash__ = None  # type: ignore[assignment]
