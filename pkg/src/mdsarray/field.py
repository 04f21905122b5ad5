"""Arithmetic in GF(2^b) on top of log/antilog and Zech tables.

Two representations are used throughout the package:

* a *field element* is an exponent ``e`` standing for ``alpha**e``, or
  ``None`` for zero (``ZERO``);
* a *symbol* is a plain ``int`` whose bit ``j`` is the coefficient of
  ``alpha**j``. Symbols are what gets stored and XORed.

Multiplying a symbol by the companion-matrix power ``C**e`` is the same as
multiplying by ``alpha**e``; :meth:`FieldTables.mul_sym` does it with the
tables and :meth:`FieldTables.companion_power_apply` does it with the
explicit bit matrix.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import DivisionByZero, MalformedPolynomial, NotPrimitive, UndefinedZech

MAX_B = 16

ZERO = None
Elem = Optional[int]


def bits_to_sym(bits: str) -> int:
    """``"011"`` -> symbol with coefficient of alpha^0 first (leftmost)."""
    s = 0
    for j, ch in enumerate(bits.replace(" ", "")):
        if ch == "1":
            s |= 1 << j
        elif ch != "0":
            raise ValueError(f"not a bit string: {bits!r}")
    return s


def sym_to_bits(s: int, b: int) -> str:
    return "".join("1" if (s >> j) & 1 else "0" for j in range(b))


# -- operation counters ------------------------------------------------------


@dataclass
class OpCounts:
    zech_evals: int = 0
    field_mults: int = 0
    linear_solves: int = 0

    def merge(self, other: "OpCounts") -> None:
        self.zech_evals += other.zech_evals
        self.field_mults += other.field_mults
        self.linear_solves += other.linear_solves


_COUNTS: contextvars.ContextVar[Optional[OpCounts]] = contextvars.ContextVar(
    "mdsarray_counts", default=None
)


@contextlib.contextmanager
def counting() -> Iterator[OpCounts]:
    """Count field operations performed inside the ``with`` block."""
    counts = OpCounts()
    token = _COUNTS.set(counts)
    try:
        yield counts
    finally:
        _COUNTS.reset(token)


def count_linear_solve() -> None:
    c = _COUNTS.get()
    if c is not None:
        c.linear_solves += 1


# -- polynomials -------------------------------------------------------------


@dataclass(frozen=True)
class PrimitivePolynomial:
    """Binary polynomial of degree ``b``; ``coeffs[i]`` multiplies ``x**i``."""

    b: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.b, int) or self.b < 1:
            raise MalformedPolynomial(f"degree must be a positive integer, got {self.b!r}")
        if self.b > MAX_B:
            raise MalformedPolynomial(f"degree {self.b} exceeds the supported maximum {MAX_B}")
        if len(self.coeffs) != self.b + 1 or any(c not in (0, 1) for c in self.coeffs):
            raise MalformedPolynomial(f"expected {self.b + 1} binary coefficients, got {self.coeffs!r}")
        if self.coeffs[self.b] != 1:
            raise MalformedPolynomial("leading coefficient must be 1")
        if self.coeffs[0] != 1:
            raise MalformedPolynomial("constant term must be 1")

    @classmethod
    def from_int(cls, value: int) -> "PrimitivePolynomial":
        if value < 2:
            raise MalformedPolynomial(f"polynomial {value!r} has degree < 1")
        b = value.bit_length() - 1
        return cls(b, tuple((value >> i) & 1 for i in range(b + 1)))

    def to_int(self) -> int:
        return sum(c << i for i, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for i in range(self.b, -1, -1):
            if self.coeffs[i]:
                terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return " + ".join(terms)


def _polymulmod(a: int, c: int, poly: int, b: int) -> int:
    r = 0
    while c:
        if c & 1:
            r ^= a
        c >>= 1
        a <<= 1
        if (a >> b) & 1:
            a ^= poly
    return r


def _polypowmod(a: int, n: int, poly: int, b: int) -> int:
    r = 1
    while n:
        if n & 1:
            r = _polymulmod(r, a, poly, b)
        a = _polymulmod(a, a, poly, b)
        n >>= 1
    return r


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_primitive(poly: PrimitivePolynomial) -> bool:
    """True iff ``x`` has multiplicative order ``2^b - 1`` modulo ``poly``."""
    b, p = poly.b, poly.to_int()
    order = (1 << b) - 1
    x = 2 % p if b > 1 else 1
    if _polypowmod(x, order, p, b) != 1:
        return False
    return all(_polypowmod(x, order // r, p, b) != 1 for r in _prime_factors(order))


# -- bit matrices (numpy uint8 arrays over GF(2)) ------------------------------


def gf2_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


def gf2_matpow(a: np.ndarray, n: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.uint8)
    while n:
        if n & 1:
            result = gf2_matmul(result, a)
        a = gf2_matmul(a, a)
        n >>= 1
    return result


def gf2_rank(mat: np.ndarray) -> int:
    mat = np.asarray(mat, dtype=np.uint8)
    weights = [1 << j for j in range(mat.shape[1])]
    rows = [sum(w for w, bit in zip(weights, r) if bit) for r in mat.tolist()]
    rank = 0
    for bit in range(mat.shape[1]):
        mask = 1 << bit
        pivot = next((i for i in range(rank, len(rows)) if rows[i] & mask), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & mask:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def sym_to_vec(s: int, b: int) -> np.ndarray:
    return np.array([(s >> j) & 1 for j in range(b)], dtype=np.uint8)


def vec_to_sym(v: np.ndarray) -> int:
    return sum(int(bit) << j for j, bit in enumerate(v))


# -- the field ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldTables:
    """Precomputed tables for GF(2^b) under one primitive polynomial.

    ``antilog[e]`` is the symbol of ``alpha**e``; ``log[s]`` is the exponent of
    symbol ``s`` (``None`` for 0); ``zech[n]`` is Z(n) for ``1 <= n <= q-2``
    with ``zech[0] = None``.
    """

    poly: PrimitivePolynomial
    antilog: tuple[int, ...]
    log: tuple[Elem, ...]
    zech_table: tuple[Elem, ...]
    companion: np.ndarray = field(repr=False)

    @property
    def b(self) -> int:
        return self.poly.b

    @property
    def order(self) -> int:
        """Size of the multiplicative group, ``2^b - 1``."""
        return len(self.antilog)

    # conversions
    def elem(self, s: int) -> Elem:
        return self.log[s]

    def sym(self, a: Elem) -> int:
        return 0 if a is None else self.antilog[a % self.order]

    # element arithmetic
    def zech(self, n: int) -> int:
        n %= self.order
        if n == 0:
            raise UndefinedZech("Z(0) is undefined in characteristic 2")
        c = _COUNTS.get()
        if c is not None:
            c.zech_evals += 1
        return self.zech_table[n]

    def add(self, x: Elem, y: Elem) -> Elem:
        if x is None:
            return y
        if y is None:
            return x
        q = self.order
        if (x - y) % q == 0:
            return ZERO
        return (x + self.zech(y - x)) % q

    def mul(self, x: Elem, y: Elem) -> Elem:
        if x is None or y is None:
            return ZERO
        c = _COUNTS.get()
        if c is not None:
            c.field_mults += 1
        return (x + y) % self.order

    def inv(self, x: Elem) -> int:
        if x is None:
            raise DivisionByZero("zero has no inverse")
        return -x % self.order

    def pow(self, x: Elem, n: int) -> Elem:
        if x is None:
            if n < 0:
                raise DivisionByZero("zero has no inverse")
            return ZERO if n > 0 else 0
        return (x * n) % self.order

    # symbol arithmetic
    def mul_sym(self, e: int, s: int) -> int:
        """``C**e . s`` via the tables."""
        if s == 0:
            return 0
        c = _COUNTS.get()
        if c is not None:
            c.field_mults += 1
        return self.antilog[(e + self.log[s]) % self.order]

    def psi_block(self, e: int) -> np.ndarray:
        """The b x b bit matrix ``C**(e mod 2^b-1)``."""
        return self._companion_powers[e % self.order]

    def companion_power_apply(self, e: int, s: int) -> int:
        """``C**e . s`` as an explicit bit-matrix product."""
        vec = sym_to_vec(s, self.b)
        return vec_to_sym(gf2_matmul(self.psi_block(e), vec[:, None])[:, 0])

    def mul_table(self, e: int) -> np.ndarray:
        """Lookup array ``t`` with ``t[s] == mul_sym(e, s)`` for every symbol."""
        e %= self.order
        cache = self._mul_tables
        if e not in cache:
            syms = np.arange(1 << self.b)
            t = np.zeros(1 << self.b, dtype=np.int64)
            t[1:] = self._antilog_np[(e + self._log_np[syms[1:]]) % self.order]
            cache[e] = t
        return cache[e]

    @cached_property
    def _companion_powers(self) -> list[np.ndarray]:
        powers = [np.eye(self.b, dtype=np.uint8)]
        for _ in range(self.order - 1):
            powers.append(gf2_matmul(self.companion, powers[-1]))
        return powers

    @cached_property
    def _antilog_np(self) -> np.ndarray:
        return np.array(self.antilog, dtype=np.int64)

    @cached_property
    def _log_np(self) -> np.ndarray:
        return np.array([-1 if v is None else v for v in self.log], dtype=np.int64)

    @cached_property
    def _mul_tables(self) -> dict:
        return {}

    def __getstate__(self):
        return {k: getattr(self, k) for k in ("poly", "antilog", "log", "zech_table", "companion")}

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)


def companion_matrix(poly: PrimitivePolynomial) -> np.ndarray:
    b = poly.b
    c = np.zeros((b, b), dtype=np.uint8)
    for i in range(1, b):
        c[i, i - 1] = 1
    # -p_i == p_i over GF(2)
    c[:, b - 1] = poly.coeffs[:b]
    return c


def build_field(poly: PrimitivePolynomial | int) -> FieldTables:
    if isinstance(poly, int):
        poly = PrimitivePolynomial.from_int(poly)
    if not is_primitive(poly):
        raise NotPrimitive(f"{poly} is not primitive: x does not have order {(1 << poly.b) - 1}")
    b, p = poly.b, poly.to_int()
    order = (1 << b) - 1
    antilog = []
    x = 1
    for _ in range(order):
        antilog.append(x)
        x <<= 1
        if (x >> b) & 1:
            x ^= p
    log: list[Elem] = [None] * (1 << b)
    for e, s in enumerate(antilog):
        log[s] = e
    zech: list[Elem] = [None] * order
    for n in range(1, order):
        zech[n] = log[1 ^ antilog[n]]
    return FieldTables(poly, tuple(antilog), tuple(log), tuple(zech), companion_matrix(poly))


def dump_tables_csv(tables: FieldTables) -> str:
    lines = ["n,antilog_bits,zech_n"]
    for n in range(tables.order):
        z = "" if n == 0 else str(tables.zech_table[n])
        lines.append(f"{n},{sym_to_bits(tables.antilog[n], tables.b)},{z}")
    return "\n".join(lines) + "\n"


def xor_all(symbols: Sequence[int]) -> int:
    out = 0
    for s in symbols:
        out ^= s
    return out
