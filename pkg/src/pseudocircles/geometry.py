"""Plane circles and lines as concrete sources of codes.

Every circle is traversed counterclockwise from its leftmost point, so the
left side of each circle is its interior.  A crossing with ``j`` gets the
sign :data:`~pseudocircles.codes.PLUS` when the traversed point is inside
``j`` just before the crossing.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .codes import MINUS, PLUS, Arrangement, CodeError

DEFAULT_EPS = 1e-9


class GeneralPositionError(ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


@dataclass(frozen=True)
class PlaneCircle:
    label: int
    cx: float
    cy: float
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"circle {self.label}: radius must be positive")


@dataclass
class Violation:
    kind: str  # tangency, not-crossing, triple-point, coincident, start-point
    labels: Tuple[int, ...]
    margin: float

    def __str__(self):
        who = ", ".join(map(str, self.labels))
        return f"{self.kind} ({who}), margin {self.margin:.3g}"


@dataclass
class GeneralPositionReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else "; ".join(map(str, self.violations))


def _scale(circles: Sequence[PlaneCircle]) -> float:
    return max(max(abs(c.cx), abs(c.cy), c.r) for c in circles)


def _check_labels(circles):
    labels = [c.label for c in circles]
    if len(set(labels)) != len(labels):
        raise CodeError("duplicate circle labels")


def intersection_points(a: PlaneCircle, b: PlaneCircle):
    """The two crossing points of ``a`` and ``b``; assumes they cross twice."""
    dx, dy = b.cx - a.cx, b.cy - a.cy
    d2 = dx * dx + dy * dy
    d = math.sqrt(d2)
    along = (a.r * a.r - b.r * b.r + d2) / (2 * d)
    h = math.sqrt(max(a.r * a.r - along * along, 0.0))
    mx, my = a.cx + along * dx / d, a.cy + along * dy / d
    return (mx + h * dy / d, my - h * dx / d), (mx - h * dy / d, my + h * dx / d)


def check_general_position(
    circles: Sequence[PlaneCircle], eps: float = DEFAULT_EPS
) -> GeneralPositionReport:
    _check_labels(circles)
    report = GeneralPositionReport()
    if not circles:
        return report
    s = _scale(circles)
    crossings = []
    for a, b in combinations(circles, 2):
        d = math.hypot(b.cx - a.cx, b.cy - a.cy) / s
        ra, rb = a.r / s, b.r / s
        pair = (a.label, b.label)
        if d <= eps and abs(ra - rb) <= eps:
            report.violations.append(Violation("coincident", pair, d))
            continue
        inner = abs(d - abs(ra - rb))
        outer = abs(d - (ra + rb))
        if min(inner, outer) <= eps:
            report.violations.append(Violation("tangency", pair, min(inner, outer)))
        elif d >= ra + rb or d <= abs(ra - rb):
            report.violations.append(Violation("not-crossing", pair, min(inner, outer)))
        else:
            for p in intersection_points(a, b):
                crossings.append((pair, (p[0] / s, p[1] / s)))
    crossings.sort(key=lambda item: item[1][0])
    for idx, (pa, p) in enumerate(crossings):
        for pb, q in crossings[idx + 1 :]:
            if q[0] - p[0] > eps:
                break
            if pa == pb:
                continue
            dist = math.hypot(p[0] - q[0], p[1] - q[1])
            if dist <= eps:
                labels = tuple(sorted(set(pa) | set(pb)))
                report.violations.append(Violation("triple-point", labels, dist))
    return report


def _angle_from_left(c: PlaneCircle, p) -> float:
    """Counterclockwise angle of ``p`` on ``c`` measured from the leftmost point."""
    return (math.atan2(p[1] - c.cy, p[0] - c.cx) - math.pi) % (2 * math.pi)


def circle_events(c: PlaneCircle, others: Sequence[PlaneCircle], eps: float = DEFAULT_EPS):
    """Events of ``c`` as (angle, label, sign) triples sorted by angle."""
    out = []
    for o in others:
        for p in intersection_points(c, o):
            theta = _angle_from_left(c, p)
            # counterclockwise tangent at p
            tx, ty = -(p[1] - c.cy), p[0] - c.cx
            outward = tx * (p[0] - o.cx) + ty * (p[1] - o.cy)
            out.append((theta, o.label, PLUS if outward > 0 else MINUS))
    out.sort()
    if out and (out[0][0] <= eps or 2 * math.pi - out[-1][0] <= eps):
        raise GeneralPositionError(
            GeneralPositionReport([Violation("start-point", (c.label,), out[0][0])])
        )
    return out


def circles_to_arrangement(
    circles: Sequence[PlaneCircle], eps: float = DEFAULT_EPS
) -> Arrangement:
    report = check_general_position(circles, eps)
    if not report.ok:
        raise GeneralPositionError(report)
    codes = {}
    for c in circles:
        others = [o for o in circles if o.label != c.label]
        codes[c.label] = [(lab, sg) for _, lab, sg in circle_events(c, others, eps)]
    return Arrangement(codes)


def plot_data(circles: Sequence[PlaneCircle], eps: float = DEFAULT_EPS) -> dict:
    """Circles and labelled crossing points, for external plotting scripts."""
    points = []
    for c in circles:
        others = [o for o in circles if o.label != c.label]
        for theta, lab, sg in circle_events(c, others, eps):
            phi = theta + math.pi
            points.append(
                {
                    "on": c.label,
                    "with": lab,
                    "sign": "+" if sg == PLUS else "-",
                    "x": c.cx + c.r * math.cos(phi),
                    "y": c.cy + c.r * math.sin(phi),
                }
            )
    return {
        "circles": [
            {"label": c.label, "cx": c.cx, "cy": c.cy, "r": c.r} for c in circles
        ],
        "crossings": points,
    }


# text and tree formats


def parse_circles(text: str) -> List[PlaneCircle]:
    stripped = text.lstrip()
    if stripped.startswith("[") or stripped.startswith("{"):
        data = json.loads(text)
        if isinstance(data, dict):
            data = data["circles"]
        circles = [
            PlaneCircle(int(d["label"]), float(d["cx"]), float(d["cy"]), float(d["r"]))
            for d in data
        ]
    else:
        circles = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].split()
            if not line:
                continue
            if len(line) != 4:
                raise CodeError(f"line {lineno}: expected 'label cx cy r'")
            circles.append(
                PlaneCircle(int(line[0]), float(line[1]), float(line[2]), float(line[3]))
            )
    _check_labels(circles)
    return circles


def format_circles(circles: Sequence[PlaneCircle]) -> str:
    return "".join(f"{c.label} {c.cx!r} {c.cy!r} {c.r!r}\n" for c in circles)


# lines


def lines_to_wiring(lines: Sequence[Tuple[float, float]], eps: float = DEFAULT_EPS):
    """Wiring diagram of the lines ``y = a*x + b``, labelled 1..len(lines).

    Crossings are swept left to right.  Crossings on a common line closer than
    ``eps`` in abscissa are rejected; coincident abscissas of disjoint pairs are
    harmless and ordered by label.
    """
    from .pseudolines import WiringDiagram, WiringError

    n = len(lines)
    labels = list(range(1, n + 1))
    for (i, (a1, _)), (j, (a2, _)) in combinations(enumerate(lines, 1), 2):
        if abs(a1 - a2) <= eps:
            raise WiringError(f"lines {i} and {j} are parallel")
    crossings = []
    for i, j in combinations(labels, 2):
        (a1, b1), (a2, b2) = lines[i - 1], lines[j - 1]
        crossings.append(((b2 - b1) / (a1 - a2), i, j))
    crossings.sort()
    last_x = {}
    for x, i, j in crossings:
        for w in (i, j):
            if w in last_x and x - last_x[w] <= eps:
                raise WiringError(f"near-coincident crossings on line {w} at x={x:.6g}")
            last_x[w] = x
    # far left, steeper lines are lower
    order = sorted(labels, key=lambda w: -lines[w - 1][0])
    wires = tuple(order)
    swaps = []
    for _, i, j in crossings:
        p, q = order.index(i), order.index(j)
        if abs(p - q) != 1:
            raise WiringError(f"crossing of {i} and {j} is not between adjacent wires")
        lo = min(p, q)
        order[lo], order[lo + 1] = order[lo + 1], order[lo]
        swaps.append(lo + 1)
    return WiringDiagram(n, tuple(swaps), wires)


# sampling


def random_circles(
    n: int,
    rng: random.Random,
    spread: float = 0.5,
    radius=(1.0, 1.3),
    eps: float = 1e-6,
    yspread: Optional[float] = None,
) -> List[PlaneCircle]:
    """Rejection-sample ``n`` circles crossing pairwise twice, in general position.

    Centers are uniform in ``[-spread, spread] x [-yspread, yspread]``; a small
    ``yspread`` gives nearly collinear centers, which favours NonKrupp triples.
    """
    if yspread is None:
        yspread = spread
    circles: List[PlaneCircle] = []
    points: List[Tuple[float, float]] = []
    attempts = 0
    while len(circles) < n:
        attempts += 1
        if attempts > 10000 * n:
            raise RuntimeError("sampling failed; widen the radius range")
        c = PlaneCircle(
            len(circles) + 1,
            rng.uniform(-spread, spread),
            rng.uniform(-yspread, yspread),
            rng.uniform(*radius),
        )
        fresh = _crossings_with(c, circles, eps)
        if fresh is None:
            continue
        if any(math.hypot(p[0] - q[0], p[1] - q[1]) <= eps for p in fresh for q in points):
            continue
        candidate = circles + [c]
        if any(_near_start(x, candidate, eps) for x in candidate):
            continue
        circles.append(c)
        points.extend(fresh)
    return circles


def _crossings_with(c: PlaneCircle, circles, eps):
    out = []
    for o in circles:
        d = math.hypot(o.cx - c.cx, o.cy - c.cy)
        if min(abs(d - abs(o.r - c.r)), abs(d - (o.r + c.r))) <= eps:
            return None
        if d >= o.r + c.r or d <= abs(o.r - c.r):
            return None
        out.extend(intersection_points(c, o))
    return out


def _near_start(c: PlaneCircle, circles, eps) -> bool:
    left = (c.cx - c.r, c.cy)
    for o in circles:
        if o is not c and abs(math.hypot(left[0] - o.cx, left[1] - o.cy) - o.r) <= eps:
            return True
    return False


def random_arrangement(n: int, rng: random.Random, **kwargs) -> Arrangement:
    return circles_to_arrangement(random_circles(n, rng, **kwargs))
