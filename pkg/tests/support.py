"""Independent oracles and generators shared by the test modules."""

from __future__ import annotations

import math
import random
import re
from functools import lru_cache

from pseudocircles.codes import MINUS, PLUS, Arrangement
from pseudocircles.families import gen_X4, generate
from pseudocircles.geometry import PlaneCircle, circles_to_arrangement, random_circles
from pseudocircles.isomorphism import Transform, apply
from pseudocircles.pseudolines import WiringDiagram

# bracket notation: [1+:i+) runs 1, 2, .., i-1 with sign +; a unit such as
# 1+1- repeats its sign pattern for every value; '(' and ')' exclude an end.
_TOKEN = re.compile(r"([\[(])([^:\]\)]+):([^\]\)]+)([\])])")
_UNIT = re.compile(r"([a-z0-9]+)([+-])")


def expand_brackets(formula: str, **values) -> list:
    """Expand a code written as a concatenation of bracket intervals."""

    def num(tok):
        return values[tok] if tok in values else int(tok)

    out = []
    for opening, lo, hi, closing in _TOKEN.findall(formula.replace(" ", "")):
        lo_units = _UNIT.findall(lo)
        hi_units = _UNIT.findall(hi)
        signs = [s for _, s in lo_units]
        assert signs == [s for _, s in hi_units], formula
        a, b = num(lo_units[0][0]), num(hi_units[0][0])
        step = 1 if b >= a else -1
        seq = list(range(a, b + step, step))
        if opening == "(":
            seq = seq[1:]
        if closing == ")":
            seq = seq[:-1]
        for v in seq:
            for s in signs:
                out.append((v, PLUS if s == "+" else MINUS))
    return out


C2_FORMULA = "[1+:i+)(i-:m-][m+:i+)(i-:1-]"
C3_FORMULA = "[1+1-:i+i-)(i-:m-][m+:i+)"


def random_wiring(rng: random.Random, n: int) -> WiringDiagram:
    """A uniformly built reduced word: swap random not-yet-swapped neighbours."""
    order = list(range(1, n + 1))
    swaps = []
    while True:
        ready = [p for p in range(n - 1) if order[p] < order[p + 1]]
        if not ready:
            break
        p = rng.choice(ready)
        order[p], order[p + 1] = order[p + 1], order[p]
        swaps.append(p + 1)
    return WiringDiagram(n, tuple(swaps))


def random_lines(rng: random.Random, n: int):
    return [(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(n)]


def random_transform(rng: random.Random, arr: Arrangement, relabel=True) -> Transform:
    labels = list(arr.labels)
    image = labels[:]
    if relabel:
        rng.shuffle(image)
        image = [10 + 3 * x for x in image]
    flips = {x for x in labels if rng.random() < 0.5}
    rotations = {x: rng.randrange(max(1, len(arr.code(x)))) for x in labels}
    return Transform(dict(zip(labels, image)), flips, rotations, rng.random() < 0.5)


def _rotation(rng: random.Random):
    # random orthogonal matrix from a random unit quaternion
    q = [rng.gauss(0, 1) for _ in range(4)]
    s = math.sqrt(sum(x * x for x in q))
    w, x, y, z = (v / s for v in q)
    return [
        [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
        [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
        [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
    ]


def great_circles_as_plane_circles(lines, rng: random.Random):
    """Lift lines y = a*x + b to great circles, rotate, project stereographically.

    The line lies in the plane a*x - y + b*z = 0 through the origin, so its
    great circle has normal (a, -1, b).  Projecting from the north pole, the
    great circle with normal n becomes the plane circle with center
    -(n1, n2)/n3 and radius |n|/|n3|.
    """
    rot = _rotation(rng)
    out = []
    for label, (a, b) in enumerate(lines, 1):
        n = [a, -1.0, b]
        n = [sum(rot[r][c] * n[c] for c in range(3)) for r in range(3)]
        out.append(
            PlaneCircle(label, -n[0] / n[2], -n[1] / n[2], math.sqrt(sum(v * v for v in n)) / abs(n[2]))
        )
    return out


# five plane circles realizing C3_5, found by local search around C3_4 examples
C3_CIRCLES = [
    PlaneCircle(1, 0.34, 0.55, 1.77),
    PlaneCircle(2, 0.18, -0.78, 0.56),
    PlaneCircle(3, -0.68, -0.64, 0.46),
    PlaneCircle(4, 0.30, 0.71, 1.83),
    PlaneCircle(5, 0.28, 0.65, 1.88),
]

C2_CIRCLES = [PlaneCircle(i, 0.3 * i, 0.0, 1.0) for i in range(1, 6)]

VENN_CIRCLES = [
    PlaneCircle(i + 1, math.cos(2 * math.pi * i / 3 + 0.1), math.sin(2 * math.pi * i / 3 + 0.1), 1.5)
    for i in range(3)
]


@lru_cache(maxsize=None)
def corpus():
    """Deterministic arrangements of size at most 7, as (name, Arrangement)."""
    rng = random.Random(20240601)
    items = []
    for family in ("C1", "C2", "C3"):
        for m in range(1, 8):
            arr = generate(family, m)
            items.append((f"{family}_{m}", arr))
            items.append((f"{family}_{m}-moved", apply(random_transform(rng, arr), arr)))
    items.append(("X4", gen_X4()))
    for n in range(3, 8):
        for k in range(4):
            circles = random_circles(n, rng, spread=rng.choice([0.5, 1.5]), radius=(0.6, 2.0))
            items.append((f"circles-{n}-{k}", circles_to_arrangement(circles)))
            flat = random_circles(n, rng, spread=2.0, yspread=0.3, radius=(1.0, 3.0))
            items.append((f"flat-{n}-{k}", circles_to_arrangement(flat)))
        lines = random_lines(rng, n)
        items.append(
            (f"great-{n}", circles_to_arrangement(great_circles_as_plane_circles(lines, rng)))
        )
    items.append(("C3-circles", circles_to_arrangement(C3_CIRCLES)))
    return tuple(items)


# acceptance results, printed by the terminal summary hook in conftest.py
ACCEPTANCE = {}
