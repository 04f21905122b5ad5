"""Vandermonde and Cauchy exponent matrices and superregularity checks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateEvaluationPoint,
    DuplicatePoint,
    SingularPair,
    TooLarge,
)
from .field import ZERO, Elem, FieldTables, gf2_rank

MAX_ENUMERATION = 8


@dataclass(frozen=True)
class ExponentMatrix:
    """m x k grid of alpha-exponents; ``sigma(i, j)`` uses 1-based indices."""

    grid: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.grid)

    @property
    def k(self) -> int:
        return len(self.grid[0]) if self.grid else 0

    def sigma(self, i: int, j: int) -> int:
        return self.grid[i - 1][j - 1]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j - 1] for row in self.grid)

    def elements(self) -> list[list[Elem]]:
        return [list(row) for row in self.grid]


@dataclass(frozen=True)
class MatrixSpec:
    """How to build the superregular matrix: ``kind`` is vandermonde, cauchy or explicit."""

    kind: str
    points: tuple[int, ...] = ()
    xs: tuple[int, ...] = ()
    ys: tuple[int, ...] = ()
    sigma: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def vandermonde(cls, points: Sequence[int]) -> "MatrixSpec":
        return cls("vandermonde", points=tuple(points))

    @classmethod
    def cauchy(cls, xs: Sequence[int], ys: Sequence[int]) -> "MatrixSpec":
        return cls("cauchy", xs=tuple(xs), ys=tuple(ys))

    @classmethod
    def explicit(cls, sigma: Sequence[Sequence[int]]) -> "MatrixSpec":
        return cls("explicit", sigma=tuple(tuple(r) for r in sigma))

    def resolve(self, tables: FieldTables, m: int) -> ExponentMatrix:
        if self.kind == "vandermonde":
            return build_vandermonde(tables, m, self.points)
        if self.kind == "cauchy":
            return build_cauchy(tables, self.xs, self.ys)
        if self.kind == "explicit":
            return build_explicit(tables, self.sigma)
        raise ValueError(f"unknown matrix kind {self.kind!r}")

    def to_dict(self) -> dict:
        if self.kind == "vandermonde":
            return {"kind": "vandermonde", "points": list(self.points)}
        if self.kind == "cauchy":
            return {"kind": "cauchy", "xs": list(self.xs), "ys": list(self.ys)}
        return {"kind": "explicit", "sigma": [list(r) for r in self.sigma]}


def build_vandermonde(tables: FieldTables, m: int, points: Sequence[int]) -> ExponentMatrix:
    q = tables.order
    reduced = [p % q for p in points]
    if len(set(reduced)) != len(reduced):
        raise DuplicateEvaluationPoint(f"evaluation exponents {list(points)} repeat mod {q}")
    if m < 1 or not reduced:
        raise DimensionMismatch("Vandermonde matrix needs m >= 1 and at least one point")
    return ExponentMatrix(tuple(tuple((i * a) % q for a in reduced) for i in range(m)))


def build_cauchy(tables: FieldTables, xs: Sequence[int], ys: Sequence[int]) -> ExponentMatrix:
    q = tables.order
    xr, yr = [x % q for x in xs], [y % q for y in ys]
    if len(set(xr)) != len(xr) or len(set(yr)) != len(yr):
        raise DuplicatePoint("Cauchy points must be pairwise distinct")
    if not xr or not yr:
        raise DimensionMismatch("Cauchy matrix needs at least one x and one y")
    grid = []
    for x in xr:
        row = []
        for y in yr:
            total = tables.add(x, y)
            if total is ZERO:
                raise SingularPair(f"x = alpha^{x} and y = alpha^{y} sum to zero")
            row.append(tables.inv(total))
        grid.append(tuple(row))
    return ExponentMatrix(tuple(grid))


def build_explicit(tables: FieldTables, sigma: Sequence[Sequence[int]]) -> ExponentMatrix:
    rows = [tuple(int(v) % tables.order for v in r) for r in sigma]
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatch("explicit sigma must be a non-empty rectangular grid")
    return ExponentMatrix(tuple(rows))


def determinant(tables: FieldTables, grid: Sequence[Sequence[Elem]]) -> Elem:
    """Determinant over GF(2^b) by Gaussian elimination (first nonzero pivot)."""
    a = [list(r) for r in grid]
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("determinant needs a square matrix")
    det: Elem = 0
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] is not None), None)
        if pivot is None:
            return ZERO
        a[col], a[pivot] = a[pivot], a[col]
        det = tables.mul(det, a[col][col])
        inv_p = tables.inv(a[col][col])
        for r in range(col + 1, n):
            if a[r][col] is None:
                continue
            f = tables.mul(a[r][col], inv_p)
            for c in range(col, n):
                a[r][c] = tables.add(a[r][c], tables.mul(f, a[col][c]))
    return det


def _check_size(m: int, k: int) -> None:
    if m > MAX_ENUMERATION or k > MAX_ENUMERATION:
        raise TooLarge(f"{m}x{k} exceeds the {MAX_ENUMERATION}x{MAX_ENUMERATION} enumeration bound")


def _square_subsets(m: int, k: int):
    for size in range(1, min(m, k) + 1):
        for rows in combinations(range(m), size):
            for cols in combinations(range(k), size):
                yield rows, cols


def is_superregular(tables: FieldTables, a: ExponentMatrix | Sequence[Sequence[Elem]]) -> bool:
    grid = a.elements() if isinstance(a, ExponentMatrix) else [list(r) for r in a]
    m, k = len(grid), len(grid[0])
    _check_size(m, k)
    if any(v is None for r in grid for v in r):
        return False
    for rows, cols in _square_subsets(m, k):
        if len(rows) == 1:
            continue
        sub = [[grid[i][j] for j in cols] for i in rows]
        if determinant(tables, sub) is ZERO:
            return False
    return True


def psi(tables: FieldTables, a: ExponentMatrix | Sequence[Sequence[Elem]]) -> np.ndarray:
    """Replace every entry alpha^s by the block C^s (zero entries by zero blocks)."""
    grid = a.elements() if isinstance(a, ExponentMatrix) else [list(r) for r in a]
    b = tables.b
    out = np.zeros((len(grid) * b, len(grid[0]) * b), dtype=np.uint8)
    for i, row in enumerate(grid):
        for j, e in enumerate(row):
            if e is not None:
                out[i * b:(i + 1) * b, j * b:(j + 1) * b] = tables.psi_block(e)
    return out


def _block_minor_nonsingular(big: np.ndarray, b: int, rows, cols) -> bool:
    idx_r = [i * b + t for i in rows for t in range(b)]
    idx_c = [j * b + t for j in cols for t in range(b)]
    sub = big[np.ix_(idx_r, idx_c)]
    return gf2_rank(sub) == len(idx_r)


def is_block_superregular(tables: FieldTables, a: ExponentMatrix | Sequence[Sequence[Elem]]) -> bool:
    grid = a.elements() if isinstance(a, ExponentMatrix) else [list(r) for r in a]
    m, k = len(grid), len(grid[0])
    _check_size(m, k)
    big = psi(tables, grid)
    return all(_block_minor_nonsingular(big, tables.b, rows, cols) for rows, cols in _square_subsets(m, k))


def check_mds_columns(h: np.ndarray, b: int, m: int, limit: int = 100_000) -> bool:
    """Every choice of m block-columns of the binary parity-check matrix ``h`` is nonsingular."""
    n = h.shape[1] // b
    from math import comb

    if comb(n, m) > limit:
        raise TooLarge(f"C({n},{m}) block-column subsets exceed {limit}")
    rows = tuple(range(m))
    return all(_block_minor_nonsingular(h, b, rows, cols) for cols in combinations(range(n), m))


def cauchy_points_for(tables: FieldTables, grid: Sequence[Sequence[int]]) -> Optional[tuple[list[int], list[int]]]:
    """Find nonzero exponent vectors xs, ys whose Cauchy matrix is ``grid``, if any."""
    q = tables.order
    for shift in range(q):
        xs: list[Elem] = []
        for i in range(len(grid)):
            # x_i = shift + 1/a_{11} + 1/a_{i1}, y_j = shift + 1/a_{1j}
            xs.append(tables.add(shift, tables.add(tables.inv(grid[0][0]), tables.inv(grid[i][0]))) if i else shift)
        ys = [tables.add(shift, tables.inv(grid[0][j])) for j in range(len(grid[0]))]
        if any(v is None for v in xs + ys):
            continue
        try:
            if build_cauchy(tables, xs, ys).grid == tuple(tuple(r) for r in grid):
                return xs, ys
        except (SingularPair, DuplicatePoint):
            continue
    return None
