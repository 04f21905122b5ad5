"""Ready-made code configurations for the CLI, tests and scripts."""

from __future__ import annotations

from .code import CodeParams
from .config import params_from_config

# poly integers: bit i is the coefficient of x^i
X3_X2_1 = 0b1101
X4_X3_1 = 0b11001
X5_X2_1 = 0b100101
X5_X3_X2_X_1 = 0b101111

# Exponent grid of the [8,4,5] Cauchy code, as used by its parity-check
# matrix; CAUCHY_XS/CAUCHY_YS regenerate it under x^4 + x^3 + 1.
CAUCHY_XS = (7, 13, 9, 12)
CAUCHY_YS = (6, 8, 14, 3)
CAUCHY_8_4_5_GRID = ((12, 11, 10, 9), (11, 12, 5, 7), (5, 10, 11, 4), (1, 4, 9, 10))

PRESETS: dict[str, dict] = {
    "ex42": {"b": 3, "m": 2, "k": 2, "poly": X3_X2_1, "matrix": {"kind": "vandermonde", "points": [1, 2]}},
    "ex32": {"b": 5, "m": 5, "k": 5, "poly": X5_X3_X2_X_1, "matrix": {"kind": "vandermonde", "points": [1, 2, 3, 4, 5]}},
    "ex43": {"b": 4, "m": 4, "k": 4, "poly": X4_X3_1, "matrix": {"kind": "cauchy", "xs": list(CAUCHY_XS), "ys": list(CAUCHY_YS)}},
    "ex47": {
        "b": 5, "m": 6, "k": 5, "poly": X5_X2_1, "matrix": {"kind": "vandermonde", "points": [1, 2, 3, 4, 5]},
        # four singular 3x3 minors under this polynomial, e.g. rows {1,3,6} x cols {1,2,4}
        "trusted": True,
    },
    "c625": {"b": 3, "m": 4, "k": 2, "poly": X3_X2_1, "matrix": {"kind": "vandermonde", "points": [1, 2]}},
}

SHIPPED = ("ex42", "ex32", "ex43", "ex47")


def preset(name: str) -> CodeParams:
    return params_from_config(PRESETS[name])
