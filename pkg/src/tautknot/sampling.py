"""Random inputs for property tests and experiments.

``TAUTKNOT_SEED`` in the environment fixes the default seed.
"""

from __future__ import annotations

import math
import os
import random
from math import gcd
from typing import Optional

from .paramcode import ParamSequence


def make_rng(seed: Optional[int] = None) -> random.Random:
    if seed is None:
        env = os.environ.get("TAUTKNOT_SEED")
        seed = int(env) if env else 0
    return random.Random(seed)


def random_slope(rng: random.Random, bound: int = 5) -> tuple[int, int]:
    """Uniform slope pair allowed by the validity predicate, |p|, |q| <= bound."""
    while True:
        p, q = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if (p, q) != (0, 0) and gcd(abs(p), abs(q)) == 1:
            return p, q


def feasible_windings(disp, sides, i: int, bound: int) -> list[int]:
    """Winding magnitudes a taut string can have at contact i, up to ``bound``."""
    (ax, ay), (bx, by) = disp[i], disp[i + 1]
    n = len(sides)
    s = sides[i]
    cross, dot = ax * by - ay * bx, ax * bx + ay * by
    if cross != 0:
        base = s * math.atan2(cross, dot) % (2 * math.pi)
        lo = math.ceil(base / math.pi)
    else:
        j = 0 if dot > 0 else 1
        same = 0 < i < n - 1 and sides[i - 1] == s == sides[i + 1]
        lo = j if same else j + 1
    return list(range(lo, bound + 1, 2))


def random_sequence(rng: random.Random, n_max: int = 6, pq_max: int = 5, m_max: int = 4) -> ParamSequence:
    """Random sequence that some taut string realizes.

    Slopes and sides are drawn first; each winding is then drawn from the
    magnitudes compatible with the turn between its two slopes.
    """
    while True:
        n = rng.randint(0, n_max)
        disp = [random_slope(rng, pq_max) for _ in range(n + 1)]
        sides = [rng.choice((1, -1)) for _ in range(n)]
        wind = []
        for i in range(n):
            mags = feasible_windings(disp, sides, i, m_max)
            if not mags:
                break
            wind.append(sides[i] * rng.choice(mags))
        else:
            flat = []
            for i, (p, q) in enumerate(disp):
                flat += [p, q]
                if i < n:
                    flat.append(wind[i])
            return ParamSequence.from_flat(flat)
