#!/usr/bin/env python3
"""Cross-check field-level and block-level superregularity on random grids."""

import argparse
import random

from mdsarray.field import build_field
from mdsarray.matrices import ExponentMatrix, is_block_superregular, is_superregular
from mdsarray.presets import PRESETS, preset

# one primitive polynomial per degree
POLYS = {2: 0b111, 3: 0b1011, 4: 0b10011}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    for name in PRESETS:
        p = preset(name)
        print(f"{name}: field={is_superregular(p.field, p.A)} block={is_block_superregular(p.field, p.A)}")

    agree = positives = 0
    for _ in range(args.count):
        b = rng.choice(sorted(POLYS))
        f = build_field(POLYS[b])
        m, k = rng.randint(1, 4), rng.randint(1, 4)
        grid = ExponentMatrix(tuple(tuple(rng.randrange(f.order) for _ in range(k)) for _ in range(m)))
        a, c = is_superregular(f, grid), is_block_superregular(f, grid)
        agree += a == c
        positives += a
    print(f"random grids: {agree}/{args.count} agree, {positives} superregular")


if __name__ == "__main__":
    main()
