"""The [m+k, k, m+1] array code with parity-check matrix H = [psi(A) | I_mb]."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, NotSuperregular
from .field import FieldTables, PrimitivePolynomial, build_field
from .matrices import ExponentMatrix, MatrixSpec, is_superregular, psi

Word = list[int]


@dataclass(frozen=True, eq=False)
class CodeParams:
    b: int
    m: int
    k: int
    poly: PrimitivePolynomial
    spec: MatrixSpec
    A: ExponentMatrix
    field: FieldTables
    trusted: bool = False

    @property
    def n(self) -> int:
        return self.m + self.k

    @property
    def d(self) -> int:
        return self.m + 1

    def sigma(self, i: int, j: int) -> int:
        return self.A.grid[i - 1][j - 1]

    def __str__(self) -> str:
        return f"[{self.n},{self.k},{self.d}] over GF(2)^{self.b}, {self.spec.kind}, p(x) = {self.poly}"


def build_code(
    b: int,
    m: int,
    k: int,
    poly: PrimitivePolynomial | int,
    spec: MatrixSpec,
    trusted: bool = False,
    tables: FieldTables | None = None,
) -> CodeParams:
    if isinstance(poly, int):
        poly = PrimitivePolynomial.from_int(poly)
    if m < 1 or k < 1:
        raise DimensionMismatch(f"need m >= 1 and k >= 1, got m={m}, k={k}")
    if poly.b != b:
        raise DimensionMismatch(f"polynomial degree {poly.b} != b = {b}")
    tables = tables or build_field(poly)
    a = spec.resolve(tables, m)
    if (a.m, a.k) != (m, k):
        raise DimensionMismatch(f"matrix is {a.m}x{a.k}, expected {m}x{k}")
    if not trusted and not is_superregular(tables, a):
        raise NotSuperregular(f"{spec.kind} matrix is not superregular over GF(2^{b})")
    return CodeParams(b, m, k, poly, spec, a, tables, trusted)


def parity_check_matrix(params: CodeParams) -> np.ndarray:
    """Explicit mb x nb binary H; only for tests and table dumps."""
    mb = params.m * params.b
    return np.hstack([psi(params.field, params.A), np.eye(mb, dtype=np.uint8)])


def encode(params: CodeParams, info: Sequence[int]) -> Word:
    if len(info) != params.k:
        raise DimensionMismatch(f"expected {params.k} information symbols, got {len(info)}")
    f = params.field
    parity = []
    for row in params.A.grid:
        p = 0
        for e, u in zip(row, info):
            p ^= f.mul_sym(e, u)
        parity.append(p)
    return list(info) + parity


def syndrome(params: CodeParams, v: Sequence[int]) -> list[int]:
    if len(v) != params.n:
        raise DimensionMismatch(f"expected a word of length {params.n}, got {len(v)}")
    f, k = params.field, params.k
    out = []
    for i, row in enumerate(params.A.grid):
        s = v[k + i]
        for e, u in zip(row, v):
            s ^= f.mul_sym(e, u)
        out.append(s)
    return out


def is_codeword(params: CodeParams, v: Sequence[int]) -> bool:
    return not any(syndrome(params, v))


# -- batched forms over many stripe rows ------------------------------------


def encode_many(params: CodeParams, info: np.ndarray) -> np.ndarray:
    """Encode an (R, k) array of symbols into an (R, n) array."""
    info = np.asarray(info, dtype=np.int64)
    out = np.zeros((info.shape[0], params.n), dtype=np.int64)
    out[:, :params.k] = info
    for i, row in enumerate(params.A.grid):
        acc = np.zeros(info.shape[0], dtype=np.int64)
        for j, e in enumerate(row):
            acc ^= params.field.mul_table(e)[info[:, j]]
        out[:, params.k + i] = acc
    return out


def syndrome_many(params: CodeParams, words: np.ndarray) -> np.ndarray:
    words = np.asarray(words, dtype=np.int64)
    out = words[:, params.k:].copy()
    for i, row in enumerate(params.A.grid):
        for j, e in enumerate(row):
            out[:, i] ^= params.field.mul_table(e)[words[:, j]]
    return out
