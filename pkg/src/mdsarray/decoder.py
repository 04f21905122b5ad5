"""Syndrome decoders for one, two and three symbol errors at unknown positions.

The closed-form decoders (:func:`decode_one`, :func:`decode_two`,
:func:`decode_three`) work on the y-vectors of a hypothesised first error
column.  :func:`hypothesis_decode` and :func:`brute_force_decode` are
independent oracles used to check them.

Positions are 1-based: ``1..k`` are information symbols, ``k+1..k+m`` parity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import chain, combinations, product
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .code import CodeParams, encode_many, syndrome
from .errors import (
    DegenerateRelation,
    SingularSystem,
    TooLarge,
    UndefinedZech,
    UnsupportedRadius,
    WrongMatrixKind,
)
from .field import Elem, count_linear_solve, sym_to_bits

Correction = tuple[int, int]


class Status(enum.Enum):
    NO_ERROR = "no_error"
    CORRECTED = "corrected"
    FAILURE = "failure"


class Reason(enum.Enum):
    RADIUS_EXCEEDED = "radius_exceeded"
    NO_CONSISTENT_HYPOTHESIS = "no_consistent_hypothesis"


@dataclass(frozen=True)
class DecodeOutcome:
    status: Status
    corrections: tuple[Correction, ...] = ()
    reason: Optional[Reason] = None

    @classmethod
    def no_error(cls) -> "DecodeOutcome":
        return cls(Status.NO_ERROR)

    @classmethod
    def failure(cls, reason: Reason = Reason.RADIUS_EXCEEDED) -> "DecodeOutcome":
        return cls(Status.FAILURE, (), reason)

    @classmethod
    def corrected(cls, corrections: Iterable[Correction]) -> "DecodeOutcome":
        kept = tuple(sorted((p, e) for p, e in corrections if e))
        if not kept:
            return cls.no_error()
        return cls(Status.CORRECTED, kept)

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAILURE

    def apply(self, v: Sequence[int]) -> list[int]:
        out = list(v)
        for pos, mag in self.corrections:
            out[pos - 1] ^= mag
        return out

    def describe(self, b: int) -> str:
        if self.status is Status.FAILURE:
            return f"FAILURE({self.reason.name})"
        if self.status is Status.NO_ERROR:
            return "NO_ERROR"
        return "CORRECTED " + " ".join(f"({p},{sym_to_bits(e, b)})" for p, e in self.corrections)


@dataclass(frozen=True)
class ErrorHypothesis:
    info_positions: tuple[int, ...]
    parity_positions: tuple[int, ...]

    @property
    def weight(self) -> int:
        return len(self.info_positions) + len(self.parity_positions)


# -- helpers ------------------------------------------------------------------


def _bits(params: CodeParams, syms: Iterable[int]) -> str:
    return " ".join(sym_to_bits(s, params.b) for s in syms)


def _error_syndrome(params: CodeParams, corrections: Iterable[Correction]) -> list[int]:
    """Syndrome of an error pattern, straight from the tables (not counted)."""
    f, k, q = params.field, params.k, params.field.order
    s = [0] * params.m
    for pos, mag in corrections:
        if not mag:
            continue
        if pos > k:
            s[pos - k - 1] ^= mag
            continue
        lm = f.log[mag]
        for i in range(params.m):
            s[i] ^= f.antilog[(params.A.grid[i][pos - 1] + lm) % q]
    return s


def _explains(params: CodeParams, s: Sequence[int], corrections: Iterable[Correction]) -> bool:
    return _error_syndrome(params, corrections) == list(s)


def _use_fast(params: CodeParams, fast: Optional[bool]) -> bool:
    is_vdm = params.spec.kind == "vandermonde"
    if fast is None:
        return is_vdm
    if fast and not is_vdm:
        raise WrongMatrixKind("the Vandermonde fast path needs a Vandermonde code")
    return fast


def _require_m(params: CodeParams, minimum: int, name: str) -> None:
    if params.m < minimum:
        raise UnsupportedRadius(f"{name} needs m >= {minimum}, code has m = {params.m}")


def _parity_only(params: CodeParams, s: Sequence[int], limit: int) -> Optional[list[Correction]]:
    nonzero = [j for j, x in enumerate(s, 1) if x]
    if 1 <= len(nonzero) <= limit:
        return [(params.k + j, s[j - 1]) for j in nonzero]
    return None


# -- building blocks ------------------------------------------------------------


def compute_y(params: CodeParams, s: Sequence[int], l1: int) -> list[int]:
    """y_1 = s_1 + C^(sigma(1,l1)-sigma(m,l1)) s_m; y_i = s_i + C^(sigma(i,l1)-sigma(i-1,l1)) s_(i-1)."""
    f, m = params.field, params.m
    col = params.A.column(l1)
    y = [s[0] ^ f.mul_sym(col[0] - col[m - 1], s[m - 1])]
    for i in range(1, m):
        y.append(s[i] ^ f.mul_sym(col[i] - col[i - 1], s[i - 1]))
    return y


def r_generic(params: CodeParams, l1: int, l2: int, i: int) -> int:
    """Exponent r_(i-2) with y_i = C^r y_(i-1) when the errors sit at columns l1 and l2."""
    sg, z = params.sigma, params.field.zech
    r = (
        sg(i, l2) - sg(i - 1, l2)
        + z(sg(i, l1) - sg(i, l2) - sg(i - 1, l1) + sg(i - 1, l2))
        - z(sg(i - 1, l1) - sg(i - 1, l2) - sg(i - 2, l1) + sg(i - 2, l2))
    )
    return r % params.field.order


def vandermonde_r(params: CodeParams, l2: int) -> int:
    """For a Vandermonde code r_(i-2) is just the evaluation exponent of column l2."""
    if params.spec.kind != "vandermonde":
        raise WrongMatrixKind("vandermonde_r needs a Vandermonde code")
    return params.spec.points[l2 - 1] % params.field.order


def solve_magnitudes(
    params: CodeParams, positions: Sequence[int], rows: Sequence[int], s: Sequence[int]
) -> list[int]:
    """Solve sum_j C^sigma(i, l_j) e_(l_j) = s_i over the given rows (Gauss-Jordan)."""
    t = len(positions)
    if len(rows) != t or len(set(rows)) != t or len(set(positions)) != t or t > params.m:
        raise ValueError("need as many distinct rows as distinct positions, at most m")
    f = params.field
    count_linear_solve()
    a: list[list[Elem]] = [[params.sigma(i, l) for l in positions] for i in rows]
    rhs = [s[i - 1] for i in rows]
    for col in range(t):
        piv = next((r for r in range(col, t) if a[r][col] is not None), None)
        if piv is None:
            raise SingularSystem(f"singular coefficient block for positions {tuple(positions)}")
        a[col], a[piv] = a[piv], a[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv_p = f.inv(a[col][col])
        a[col] = [f.mul(inv_p, x) for x in a[col]]
        rhs[col] = f.mul_sym(inv_p, rhs[col])
        for r in range(t):
            fac = a[r][col]
            if r == col or fac is None:
                continue
            a[r] = [f.add(x, f.mul(fac, y)) for x, y in zip(a[r], a[col])]
            rhs[r] ^= f.mul_sym(fac, rhs[col])
    return rhs


def _zx(params: CodeParams, n: Elem) -> Elem:
    """log(1 + alpha^n) with ZERO handled: n = ZERO gives 0, n = 0 gives ZERO."""
    if n is None:
        return 0
    if n % params.field.order == 0:
        return None
    return params.field.zech(n)


def _tot(q: int, *terms: Elem) -> Elem:
    if any(t is None for t in terms):
        return None
    return sum(terms) % q


def _neg(x: Elem) -> int:
    if x is None:
        raise DegenerateRelation("division by a zero coefficient")
    return -x


def three_error_exponents(params: CodeParams, l1: int, l2: int, l3: int, i: int) -> tuple[Elem, Elem]:
    """Exponents (rhat_1, rhat_2) with y_i = C^rhat_1 y_(i-1) + C^rhat_2 y_(i-2).

    Either exponent may be ``None`` (the coefficient is the zero matrix).
    Raises DegenerateRelation when the elimination divides by zero.
    """
    if not (4 <= i <= params.m) or not (l1 < l2 < l3):
        raise ValueError("need 4 <= i <= m and l1 < l2 < l3")
    q, sg = params.field.order, params.sigma

    def r_col(ii: int, l: int) -> Elem:
        return _tot(q, sg(ii, l), _zx(params, sg(ii, l1) - sg(ii, l) - sg(ii - 1, l1) + sg(ii - 1, l)))

    r1i, r1a, r1b = r_col(i, l2), r_col(i - 1, l2), r_col(i - 2, l2)
    r2i, r2a, r2b = r_col(i, l3), r_col(i - 1, l3), r_col(i - 2, l3)
    bar1 = _tot(q, r1a, _neg(r1b))
    bar2 = _tot(q, r2a, _zx(params, _tot(q, r1a, r2b, _neg(r1b), _neg(r2a))))
    inner = _zx(params, _tot(q, r1i, r2b, _neg(r1b), _neg(r2i)))
    rhat1 = _tot(q, r2i, _neg(bar2), inner)
    rhat2 = _tot(q, r1i, _neg(r1b), _zx(params, _tot(q, r2i, inner, bar1, _neg(bar2), _neg(r1i), r1b)))
    return rhat1, rhat2


def vandermonde_rhat(params: CodeParams, l2: int, l3: int) -> tuple[int, int]:
    """Closed-form (rhat_1, rhat_2) for a Vandermonde code; independent of i and l1."""
    if params.spec.kind != "vandermonde":
        raise WrongMatrixKind("vandermonde_rhat needs a Vandermonde code")
    f = params.field
    a2, a3 = params.spec.points[l2 - 1], params.spec.points[l3 - 1]
    z1, z2 = f.zech(a2 - a3), f.zech(2 * a2 - 2 * a3)
    rhat1 = (a3 - z1 + z2) % f.order
    rhat2 = (2 * a2 + f.zech(a3 - a2 - z1 + z2)) % f.order
    return rhat1, rhat2


def _adjacent_pair(y: Sequence[int]) -> Optional[int]:
    """Index j when exactly y_j and y_(j+1) (cyclically) are nonzero."""
    m = len(y)
    nz = [i for i, v in enumerate(y, 1) if v]
    if len(nz) != 2:
        return None
    a, b = nz
    if b == a + 1:
        return a
    if (a, b) == (1, m):
        return m
    return None


# -- candidate generators (step order) ------------------------------------------


def _single_info_candidates(params, s, trace) -> Iterator[list[Correction]]:
    f = params.field
    for l1 in range(1, params.k + 1):
        y = compute_y(params, s, l1)
        if trace is not None:
            trace.append(f"l1={l1} y: {_bits(params, y)}")
        if not any(y):
            yield [(l1, f.mul_sym(-params.sigma(1, l1), s[0]))]


def _two_info_candidates(params, s, fast, trace) -> Iterator[list[Correction]]:
    f, m, k = params.field, params.m, params.k
    for l1 in range(1, k + 1):
        y = compute_y(params, s, l1)
        if trace is not None:
            trace.append(f"l1={l1} y: {_bits(params, y)}")
        if not any(y):
            yield [(l1, f.mul_sym(-params.sigma(1, l1), s[0]))]
            continue
        j = _adjacent_pair(y)
        if j is not None:
            i = 1 if j != 1 else 2
            e = f.mul_sym(-params.sigma(i, l1), s[i - 1])
            p = s[j - 1] ^ f.mul_sym(params.sigma(j, l1), e)
            if trace is not None:
                trace.append(f"l1={l1} parity pair at j={j}")
            yield [(l1, e), (k + j, p)]
            continue
        for l2 in range(l1 + 1, k + 1):
            rs = []
            ok = True
            r_fast = vandermonde_r(params, l2) if fast else None
            for i in range(3, m + 1):
                try:
                    r = r_fast if fast else r_generic(params, l1, l2, i)
                except UndefinedZech:
                    ok = False
                    break
                rs.append(r)
                if y[i - 1] != f.mul_sym(r, y[i - 2]):
                    ok = False
                    break
            if trace is not None:
                trace.append(f"l1={l1} l2={l2} r={','.join(map(str, rs))} {'accept' if ok else 'reject'}")
            if ok:
                e1, e2 = solve_magnitudes(params, [l1, l2], [1, 2], s)
                yield [(l1, e1), (l2, e2)]


def _three_info_candidates(params, s, fast, trace) -> Iterator[list[Correction]]:
    f, m, k = params.field, params.m, params.k
    ys: dict[int, list[int]] = {}
    for l1, l2, l3 in combinations(range(1, k + 1), 3):
        if l1 not in ys:
            ys[l1] = compute_y(params, s, l1)
        y = ys[l1]
        ok, degenerate, seen = True, False, []
        for i in range(4, m + 1):
            try:
                if fast:
                    h1, h2 = vandermonde_rhat(params, l2, l3)
                else:
                    h1, h2 = three_error_exponents(params, l1, l2, l3, i)
            except (DegenerateRelation, UndefinedZech):
                degenerate = True
                break
            seen.append((h1, h2))
            rhs = (0 if h1 is None else f.mul_sym(h1, y[i - 2])) ^ (0 if h2 is None else f.mul_sym(h2, y[i - 3]))
            if y[i - 1] != rhs:
                ok = False
                break
        if trace is not None:
            status = "degenerate" if degenerate else ("accept" if ok else "reject")
            trace.append(f"l1={l1} l2={l2} l3={l3} rhat={seen} {status}")
        if not ok:
            continue
        e = solve_magnitudes(params, [l1, l2, l3], [1, 2, 3], s)
        cand = list(zip((l1, l2, l3), e))
        if degenerate and not _explains(params, s, cand):
            continue
        yield cand


def _hypotheses(k: int, m: int, t: int) -> Iterator[ErrorHypothesis]:
    for w in range(t + 1):
        for ni in range(w + 1):
            for info in combinations(range(1, k + 1), ni):
                for par in combinations(range(1, m + 1), w - ni):
                    yield ErrorHypothesis(info, par)


def _hypothesis_candidates(params, s, t, keep=None) -> Iterator[list[Correction]]:
    f, k = params.field, params.k
    for h in _hypotheses(params.k, params.m, t):
        if keep is not None and not keep(h):
            continue
        outside = [r for r in range(1, params.m + 1) if r not in h.parity_positions]
        ni = len(h.info_positions)
        if ni > len(outside):
            continue
        mags = solve_magnitudes(params, h.info_positions, outside[:ni], s) if ni else []
        if not all(mags):
            continue

        def row_value(r: int) -> int:
            acc = 0
            for l, e in zip(h.info_positions, mags):
                acc ^= f.mul_sym(params.sigma(r, l), e)
            return acc

        if any(row_value(r) != s[r - 1] for r in outside[ni:]):
            continue
        parity = [(k + j, s[j - 1] ^ row_value(j)) for j in h.parity_positions]
        if not all(p for _, p in parity):
            continue
        yield list(zip(h.info_positions, mags)) + parity


def _sound(params, s, candidates: Iterator[list[Correction]], trace) -> Iterator[list[Correction]]:
    # never hand back a correction that leaves a nonzero syndrome
    for cand in candidates:
        if _explains(params, s, cand):
            yield cand
        elif trace is not None:
            trace.append(f"inconsistent candidate {cand} skipped")


def _conclude(params, s, candidates: Iterator[list[Correction]], trace) -> DecodeOutcome:
    candidates = _sound(params, s, candidates, trace)
    first = next(candidates, None)
    if first is None:
        outcome = DecodeOutcome.failure(Reason.RADIUS_EXCEEDED)
    else:
        outcome = DecodeOutcome.corrected(first)
        if trace is not None:
            for other in candidates:
                if DecodeOutcome.corrected(other) != outcome:
                    trace.append("AMBIGUOUS_OUTSIDE_RADIUS")
                    break
    if trace is not None:
        trace.append(f"result: {outcome.describe(params.b)}")
    return outcome


def _start(params, s, trace) -> bool:
    if trace is not None:
        trace.append("syndrome: " + " ".join(f"s{i}={sym_to_bits(x, params.b)}" for i, x in enumerate(s, 1)))
    return not any(s)


# -- decoders --------------------------------------------------------------------


def decode_one_syndrome(params: CodeParams, s: Sequence[int], trace: Optional[list] = None) -> DecodeOutcome:
    _require_m(params, 2, "decode_one")
    if _start(params, s, trace):
        return DecodeOutcome.no_error()
    parity = _parity_only(params, s, 1)
    cands = iter([parity]) if parity else _single_info_candidates(params, s, trace)
    return _conclude(params, s, cands, trace)


def decode_two_syndrome(
    params: CodeParams, s: Sequence[int], fast: Optional[bool] = None, trace: Optional[list] = None
) -> DecodeOutcome:
    _require_m(params, 4, "decode_two")
    fast = _use_fast(params, fast)
    if _start(params, s, trace):
        return DecodeOutcome.no_error()
    parity = _parity_only(params, s, 2)
    cands = iter([parity]) if parity else _two_info_candidates(params, s, fast, trace)
    return _conclude(params, s, cands, trace)


def decode_three_syndrome(
    params: CodeParams, s: Sequence[int], fast: Optional[bool] = None, trace: Optional[list] = None
) -> DecodeOutcome:
    _require_m(params, 6, "decode_three")
    fast = _use_fast(params, fast)
    if _start(params, s, trace):
        return DecodeOutcome.no_error()
    parity = _parity_only(params, s, 3)
    if parity:
        return _conclude(params, s, iter([parity]), trace)

    def mixed(h: ErrorHypothesis) -> bool:
        return h.weight == 3 and 0 < len(h.info_positions) < 3

    cands = chain(
        _two_info_candidates(params, s, fast, trace),
        _three_info_candidates(params, s, fast, trace),
        _hypothesis_candidates(params, s, 3, keep=mixed),
    )
    return _conclude(params, s, cands, trace)


def decode_one(params: CodeParams, v: Sequence[int], trace: Optional[list] = None) -> DecodeOutcome:
    _require_m(params, 2, "decode_one")
    return decode_one_syndrome(params, syndrome(params, v), trace)


def decode_two(
    params: CodeParams, v: Sequence[int], fast: Optional[bool] = None, trace: Optional[list] = None
) -> DecodeOutcome:
    _require_m(params, 4, "decode_two")
    return decode_two_syndrome(params, syndrome(params, v), fast, trace)


def decode_three(
    params: CodeParams, v: Sequence[int], fast: Optional[bool] = None, trace: Optional[list] = None
) -> DecodeOutcome:
    _require_m(params, 6, "decode_three")
    return decode_three_syndrome(params, syndrome(params, v), fast, trace)


def hypothesis_decode_syndrome(
    params: CodeParams, s: Sequence[int], t: int, trace: Optional[list] = None
) -> DecodeOutcome:
    if t > params.m // 2:
        raise UnsupportedRadius(f"t = {t} exceeds floor(m/2) = {params.m // 2}")
    if _start(params, s, trace):
        return DecodeOutcome.no_error()
    return _conclude(params, s, _hypothesis_candidates(params, s, t), trace)


def hypothesis_decode(params: CodeParams, v: Sequence[int], t: int, trace: Optional[list] = None) -> DecodeOutcome:
    """Minimum-weight error-support search over all hypotheses of weight <= t."""
    return hypothesis_decode_syndrome(params, syndrome(params, v), t, trace)


@lru_cache(maxsize=8)
def _all_codewords(params: CodeParams) -> np.ndarray:
    infos = np.array(list(product(range(1 << params.b), repeat=params.k)), dtype=np.int64)
    return encode_many(params, infos)


def brute_force_decode(params: CodeParams, v: Sequence[int], t: int) -> DecodeOutcome:
    """Nearest codeword within symbol distance t, by enumerating every codeword."""
    if params.k * params.b > 20:
        raise TooLarge(f"k*b = {params.k * params.b} > 20 codeword bits")
    words = _all_codewords(params)
    dist = (words != np.asarray(v, dtype=np.int64)).sum(axis=1)
    close = np.flatnonzero(dist <= t)
    if len(close) == 0:
        return DecodeOutcome.failure(Reason.RADIUS_EXCEEDED)
    best = close[dist[close] == dist[close].min()]
    if len(best) > 1:
        return DecodeOutcome.failure(Reason.NO_CONSISTENT_HYPOTHESIS)
    c = words[best[0]]
    return DecodeOutcome.corrected((p, int(x) ^ int(y)) for p, (x, y) in enumerate(zip(v, c), 1))


# -- dispatch ----------------------------------------------------------------------

MAX_SPECIALIZED_RADIUS = 3


def max_radius(params: CodeParams) -> int:
    """Largest t the specialised decoders handle for this code."""
    return min(params.m // 2, MAX_SPECIALIZED_RADIUS)


def decode_syndrome(
    params: CodeParams,
    s: Sequence[int],
    max_errors: Optional[int] = None,
    fast: Optional[bool] = None,
    trace: Optional[list] = None,
) -> DecodeOutcome:
    """Decode with the strongest specialised algorithm covering ``max_errors``."""
    t = max_radius(params) if max_errors is None else max_errors
    if t < 0 or t > max_radius(params):
        raise UnsupportedRadius(f"t = {t} not supported for m = {params.m} (max {max_radius(params)})")
    if t == 0:
        return DecodeOutcome.no_error() if not any(s) else DecodeOutcome.failure()
    if t == 1:
        return decode_one_syndrome(params, s, trace)
    if t == 2:
        return decode_two_syndrome(params, s, fast, trace)
    return decode_three_syndrome(params, s, fast, trace)


def decode(
    params: CodeParams,
    v: Sequence[int],
    max_errors: Optional[int] = None,
    fast: Optional[bool] = None,
    trace: Optional[list] = None,
) -> DecodeOutcome:
    return decode_syndrome(params, syndrome(params, v), max_errors, fast, trace)
