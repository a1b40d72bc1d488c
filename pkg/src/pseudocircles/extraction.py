"""Certified extraction of an unavoidable subarrangement.

:func:`find_unavoidable` colours the triples of the input as Krupp or
NonKrupp and follows the matching branch:

* Krupp: cut the monochromatic set open into a wiring diagram, find a cyclic
  subset of wires and certify it against ``C1_m``.
* NonKrupp: find a rainbow subarrangement (an anchor circle met by the others
  as ``x1 .. xn xn .. x1`` with all their mutual crossings on one side), fix
  its orientations and starts with :func:`normalize_rainbow`, then colour
  triples by side (N/S) and by the middle circle's signed pattern (P1/P2/P3)
  to land on ``C2_m`` or ``C3_m``.

Every monochromatic set is searched adaptively rather than at worst-case
Ramsey sizes; correctness rests on the final certificate, which is always
checked.  If a branch comes up short, an exhaustive subset search against
the three families takes over.

Normalized rainbow convention: the anchor is labelled 0 and reads
``1- 2- .. n- n+ .. 2+ 1+``; all crossings among 1..n lie on the right of the
anchor; each other circle starts right after its plus crossing with the
anchor, so its code reads ``[crossings with 1..n] 0- 0+``.  Under this
convention the north side of circle k (the side holding the middle of the
anchor) is its left side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, FrozenSet, List, Optional, Tuple

from .codes import (
    LEFT,
    MINUS,
    PLUS,
    RIGHT,
    Arrangement,
    CodeError,
    arcs,
    mirror,
    relabel,
    reorient,
    restrict,
    rotate_start,
    validate,
)
from .families import (
    KRUPP,
    NONKRUPP,
    classify_triple,
    generate,
    intersection_side,
    rainbow_orders,
)
from .isomorphism import (
    Certificate,
    FamilyId,
    Transform,
    apply,
    check_certificate,
    exhaustive_find,
    is_isomorphic,
    solve_rotations,
)
from .pseudolines import NotGreatPseudocircles, find_cyclic_subarrangement, iter_antipodal_cuts
from .ramsey import ColoredHypergraph, find_monochromatic, largest_monochromatic

FOUR_COLOURS = ("kkll", "llkk", "kllk", "lkkl")
NESTED = ("kllk", "lkkl")
PAIRED = ("kkll", "llkk")
P1, P2, P3 = "P1", "P2", "P3"


class InvalidInput(ValueError):
    """The input violates a property every realizable arrangement has."""


class NotRainbow(ValueError):
    pass


class StageFailure(Exception):
    """A pipeline stage could not produce a large enough monochromatic set."""


class NotFound(LookupError):
    """No subarrangement of any of the three families exists at this size."""


class BudgetExhausted(RuntimeError):
    """The node budget ran out before the search could decide."""


@dataclass
class ExtractionResult:
    family: FamilyId
    subset: FrozenSet[int]
    certificate: Certificate
    trace: List[dict] = field(default_factory=list)

    @property
    def branch(self) -> str:
        return self.trace[-1]["stage"] if self.trace else ""

    def to_dict(self, with_trace: bool = True) -> dict:
        out = {
            "family": self.family.family,
            "m": self.family.size,
            "subset": sorted(self.subset),
            "certificate": self.certificate.to_dict(),
        }
        if with_trace:
            out["trace"] = self.trace
        return out


class _Budget:
    def __init__(self, nodes: Optional[int]):
        self.remaining = nodes
        self.hit = False

    def search(self, fn, h, *args, **kwargs):
        if self.remaining is not None and self.remaining <= 0:
            self.hit = True
            return None
        before = h.nodes
        found = fn(h, *args, budget=self.remaining, **kwargs)
        if self.remaining is not None:
            self.remaining -= h.nodes - before
        if h.truncated:
            self.hit = True
        return found

    def spend(self, n=1) -> bool:
        if self.remaining is None:
            return True
        self.remaining -= n
        if self.remaining < 0:
            self.hit = True
            return False
        return True


class _Frame:
    """An arrangement derived from a source by restriction and transforms.

    ``back`` maps current labels to source labels; ``flips`` (source labels)
    and ``reflect`` record the net reorientations and mirror applied so far.
    """

    def __init__(self, arr, back=None, flips=frozenset(), reflect=False):
        self.arr = arr
        self.back = dict(back) if back is not None else {c: c for c in arr.labels}
        self.flips = frozenset(flips)
        self.reflect = reflect

    def restrict(self, subset) -> "_Frame":
        keep = set(subset)
        sub = restrict(self.arr, keep)
        return _Frame(sub, {c: self.back[c] for c in keep}, self.flips, self.reflect)

    def transform(self, t: Transform) -> "_Frame":
        new = apply(t, self.arr)
        back = {t.pi[c]: self.back[c] for c in self.arr.labels}
        flips = self.flips.symmetric_difference(self.back[c] for c in t.flips)
        return _Frame(new, back, flips, self.reflect != t.reflect)

    def source_labels(self, labels) -> FrozenSet[int]:
        return frozenset(self.back[c] for c in labels)

    def certificate(self, source: Arrangement, target: FamilyId) -> Optional[Certificate]:
        """Certificate from the tracked transform, if the codes match verbatim."""
        subset = self.source_labels(self.arr.labels)
        pi = {self.back[c]: c for c in self.arr.labels}
        t = solve_rotations(
            restrict(source, subset), target.build(), pi, self.flips & subset, self.reflect
        )
        if t is None:
            return None
        cert = Certificate(t, subset, target)
        return cert if check_certificate(cert, source) else None


# rainbow normalization


def _normalize(arr: Arrangement, anchor: int, reverse: bool = False) -> Tuple[Arrangement, Transform]:
    if anchor not in arr:
        raise CodeError(f"unknown anchor {anchor}")
    others = [c for c in arr.labels if c != anchor]
    if not others:
        t = Transform({anchor: 0})
        return apply(t, arr), t
    orders = rainbow_orders(arr.code(anchor))
    consistent, _ = intersection_side(arr, anchor)
    if not orders or not consistent:
        raise NotRainbow(f"arrangement is not rainbow with anchor {anchor}")
    flip_a, rot_a, xs = orders[0]
    if reverse:
        flip_a, rot_a, xs = next(o for o in orders if o[2] == orders[0][2][::-1])
    flips = set()
    cur = arr
    if flip_a:
        cur = reorient(cur, anchor)
        flips.add(anchor)
    cur = rotate_start(cur, anchor, rot_a)
    n = len(xs)
    for lab, sg in cur.code(anchor)[:n]:
        if sg == PLUS:
            cur = reorient(cur, lab)
            flips.symmetric_difference_update({lab})
    _, side = intersection_side(cur, anchor)
    reflect = side == LEFT
    if reflect:
        cur = mirror(cur)
        for x in others:
            cur = reorient(cur, x)
        flips.symmetric_difference_update(others)
    rotations = {anchor: rot_a}
    for x in others:
        idx = cur.code(x).index((anchor, PLUS)) + 1
        rotations[x] = idx
        cur = rotate_start(cur, x, idx)
    pi = {anchor: 0}
    pi.update({x: t for t, x in enumerate(xs, 1)})
    t = Transform(pi, flips, rotations, reflect)
    out = relabel(cur, pi)
    assert apply(t, arr) == out
    return out, t


def normalize_rainbow(arr: Arrangement, anchor: int) -> Arrangement:
    """Relabel, reorient and rotate a rainbow arrangement into normal form.

    The anchor becomes 0 and reads ``1- 2- .. n- n+ .. 2+ 1+``.
    """
    return _normalize(arr, anchor)[0]


def _normalized_frame(frame: _Frame, anchor: int, reverse=False) -> _Frame:
    _, t = _normalize(frame.arr, anchor, reverse)
    return frame.transform(t)


# colourings


def four_colour(arr: Arrangement, j: int, k: int, l: int) -> str:
    """Unsigned pattern of j's code restricted to k and l, as 'kkll' etc."""
    name = {k: "k", l: "l"}
    pattern = "".join(name[x] for x in restrict(arr, (j, k, l)).unsigned(j))
    if pattern not in FOUR_COLOURS:
        raise InvalidInput(f"triple {(j, k, l)} is not NonKrupp")
    return pattern


def ns_colour(arr: Arrangement, j: int, k: int, l: int) -> str:
    """'N' when the crossings of j and l lie on the left of k, 'S' on the right."""
    side = arcs(arr, j, k).side_of(l)
    other = arcs(arr, l, k).side_of(j)
    if side is None or side != other:
        raise StageFailure(f"crossings of {j} and {l} are split by {k}")
    return "N" if side == LEFT else "S"


def pattern_colour(arr: Arrangement, j: int, k: int, l: int) -> str:
    """Signed code of the middle circle k in a normalized triple j < k < l.

    P1 is ``j+ l- l+ j-`` (normalized C2), P2 is ``l- l+ j+ j-`` (normalized
    C3) and P3 is ``j+ j- l- l+``, which becomes P2 once every circle is
    reoriented and the picture mirrored.
    """
    code = restrict(arr, (j, k, l)).code(k)
    return _PATTERNS.get(tuple((("j" if x == j else "l"), s) for x, s in code), "other")


_PATTERNS = {
    (("j", PLUS), ("l", MINUS), ("l", PLUS), ("j", MINUS)): P1,
    (("l", MINUS), ("l", PLUS), ("j", PLUS), ("j", MINUS)): P2,
    (("j", PLUS), ("j", MINUS), ("l", MINUS), ("l", PLUS)): P3,
}


# stages


def _vertex_orders(arr: Arrangement):
    """The label order, then each circle followed by the circles it meets in turn."""
    yield arr.labels
    for a in arr.labels:
        readings = rainbow_orders(arr.code(a))
        if readings:
            yield (a,) + readings[0][2]
            yield (a,) + readings[0][2][::-1]
            continue
        seen = []
        for lab, _ in arr.code(a):
            if lab not in seen:
                seen.append(lab)
        yield (a,) + tuple(seen)


def _restart(arr: Arrangement, order) -> Arrangement:
    """Move each circle's start to the axis of its reading of later circles.

    The triple colouring depends on the starts; a circle that sees all later
    circles nested gets a start where every sub-triple reads as colour (iii).
    """
    out = arr
    for t, j in enumerate(order):
        later = set(order[t + 1 :])
        if len(later) < 2:
            continue
        code = arr.code(j)
        where = [q for q, (lab, _) in enumerate(code) if lab in later]
        readings = [o for o in rainbow_orders([code[q] for q in where]) if not o[0]]
        if readings:
            out = rotate_start(out, j, where[readings[0][1]])
    return out


def _rainbow_frames(frame: _Frame, n: int, trace: list, budget: _Budget):
    """Yield rainbow restrictions with at least n + 1 circles, anchor relabelled 0.

    The triple colouring depends on how the circles are ordered and where
    they start, so one candidate is tried per order.  Raises when no order
    gives any candidate.
    """
    produced = 0
    for order in _vertex_orders(frame.arr):
        if budget.hit:
            break
        arr = _restart(frame.arr, order)
        h = ColoredHypergraph(order, 3, lambda tri, arr=arr: four_colour(arr, *tri))
        found = budget.search(largest_monochromatic, h, colours=NESTED)
        if found is None or len(found[0]) < n + 1:
            continue
        subset, colour = found
        anchor, rest = subset[0], subset[1:]
        trace.append({"stage": "four-colour", "colour": colour, "size": len(subset)})
        pairs = ColoredHypergraph(rest, 2, lambda pair, a=anchor: _pair_side(arr, a, *pair))
        mono = budget.search(largest_monochromatic, pairs)
        if mono is None or len(mono[0]) < n:
            trace.append({"stage": "failed", "reason": f"no one-sided pair set of size {n}"})
            continue
        chosen = mono[0]
        trace.append({"stage": "pair-side", "colour": mono[1], "size": len(chosen), "anchor": anchor})
        sub = frame.restrict((anchor,) + tuple(chosen))
        pi = {anchor: 0}
        pi.update({x: t for t, x in enumerate(chosen, 1)})
        produced += 1
        yield sub.transform(Transform(pi))
    if produced:
        return
    arr = frame.arr
    h = ColoredHypergraph(arr.labels, 3, lambda tri: four_colour(arr, *tri))
    bad = budget.search(find_monochromatic, h, max(5, n + 1), colours=PAIRED)
    if bad is not None:
        raise InvalidInput(
            f"only paired-colour witnesses: circles {bad[0]} read each other in "
            f"consecutive pairs ({bad[1]}) and no nested set of size {n + 1} exists"
        )
    raise StageFailure(f"no rainbow set of size {n + 1}")


def _pair_side(arr: Arrangement, anchor: int, i: int, j: int) -> str:
    tag = arcs(arr, i, anchor).side_of(j)
    if tag is None or tag != arcs(arr, j, anchor).side_of(i):
        raise InvalidInput(f"crossings of {i} and {j} are split by {anchor}")
    return tag


def rainbow_extract(arr: Arrangement, n: int) -> Tuple[Arrangement, int]:
    """A rainbow subarrangement with n circles besides the anchor (labelled 0)."""
    if n < 1:
        raise ValueError("n must be positive")
    frame = next(_rainbow_frames(_Frame(arr), n, [], _Budget(None)))
    keep = (0,) + tuple(sorted(c for c in frame.arr.labels if c != 0))[:n]
    return restrict(frame.arr, keep), 0


def _rainbow_to_family(
    source: Arrangement, frame: _Frame, m: int, trace: list, budget: _Budget
) -> ExtractionResult:
    frame = _normalized_frame(frame, 0)
    arr = frame.arr
    ring = tuple(c for c in arr.labels if c != 0)
    h = ColoredHypergraph(ring, 3, lambda tri: ns_colour(arr, *tri))
    found = budget.search(largest_monochromatic, h)
    if found is None or len(found[0]) < m:
        raise StageFailure(f"no N/S monochromatic set of size {m}")
    q, colour = found
    trace.append({"stage": "north-south", "colour": colour, "size": len(q)})
    frame = frame.restrict((0,) + tuple(q))
    if colour == "S":
        frame = _normalized_frame(frame, 0, reverse=True)
    frame = _normalized_frame(frame, 0)
    arr = frame.arr
    ring = tuple(c for c in arr.labels if c != 0)
    if colour == "S":
        h = ColoredHypergraph(ring, 3, lambda tri: ns_colour(arr, *tri))
        if not h.is_monochromatic(ring, "N"):
            raise StageFailure("reversing the anchor did not turn S into N")

    h = ColoredHypergraph(ring, 3, lambda tri: pattern_colour(arr, *tri))
    found = budget.search(find_monochromatic, h, m, colours=(P1, P2, P3))
    if found is None:
        raise StageFailure(f"no pattern-monochromatic set of size {m}")
    chosen, pattern = found
    trace.append({"stage": "pattern", "colour": pattern, "size": len(chosen)})
    frame = frame.restrict((0,) + tuple(chosen))
    if pattern == P3:
        everyone = frame.arr.labels
        frame = frame.transform(Transform({c: c for c in everyone}, everyone, {}, True))
        frame = _normalized_frame(frame, 0)
        chosen = tuple(c for c in frame.arr.labels if c != 0)
        if not ColoredHypergraph(
            chosen, 3, lambda tri: pattern_colour(frame.arr, *tri)
        ).is_monochromatic(chosen, P2):
            raise StageFailure("flipping a P3 set did not give P2")
    family = FamilyId("C2" if pattern == P1 else "C3", m)
    frame = frame.restrict(chosen)
    frame = frame.transform(Transform({x: t for t, x in enumerate(sorted(chosen), 1)}))
    cert = frame.certificate(source, family)
    verbatim = cert is not None
    if cert is None:
        sub = frame.source_labels(frame.arr.labels)
        t = is_isomorphic(restrict(source, sub), family.build())
        if t is None:
            raise StageFailure(f"pattern {pattern} set is not isomorphic to {family}")
        cert = Certificate(t, sub, family)
    trace.append({"stage": "nonkrupp", "family": family.family, "verbatim": verbatim})
    return ExtractionResult(family, cert.source_subset, cert, trace)


def rainbow_to_family(arr: Arrangement, m: int) -> ExtractionResult:
    """Find C2_m or C3_m inside a NonKrupp-packed rainbow arrangement with anchor 0."""
    return _rainbow_to_family(arr, _Frame(arr), m, [], _Budget(None))


def _direct(arr: Arrangement, m: int, trace: list) -> ExtractionResult:
    subset = arr.labels[:m]
    sub = restrict(arr, subset)
    family = "C2" if m == 3 and classify_triple(sub) == NONKRUPP else "C1"
    target = FamilyId(family, m)
    t = is_isomorphic(sub, target.build())
    cert = Certificate(t, frozenset(subset), target)
    trace.append({"stage": "direct", "family": family})
    return ExtractionResult(target, cert.source_subset, cert, trace)


def _krupp_branch(source, subset, m, trace, budget) -> ExtractionResult:
    target = FamilyId("C1", m)
    want = target.build()
    cuts = 0
    for w in iter_antipodal_cuts(restrict(source, subset)):
        cuts += 1
        if not budget.spend():
            break
        found = find_cyclic_subarrangement(w, m, budget=budget.remaining)
        if found is None:
            continue
        wires, _ = found
        t = is_isomorphic(restrict(source, wires), want)
        if t is None:
            continue
        cert = Certificate(t, frozenset(wires), target)
        trace.append({"stage": "krupp", "family": "C1", "wires": sorted(wires), "cuts": cuts})
        return ExtractionResult(target, cert.source_subset, cert, trace)
    if cuts == 0:
        raise NotGreatPseudocircles("no consistent cut into a wiring diagram")
    raise StageFailure(f"no cyclic set of {m} wires in {cuts} cuts")


def _nonkrupp_branch(source, subset, m, trace, budget) -> ExtractionResult:
    for frame in _rainbow_frames(_Frame(source).restrict(subset), m, trace, budget):
        try:
            return _rainbow_to_family(source, frame, m, trace, budget)
        except StageFailure as exc:
            trace.append({"stage": "failed", "reason": str(exc)})
    raise StageFailure("no rainbow candidate reached a family")


def find_unavoidable(arr: Arrangement, m: int, budget: Optional[int] = None) -> ExtractionResult:
    """A certified subarrangement isomorphic to C1_m, C2_m or C3_m.

    Raises :class:`NotFound` when the input has no such subarrangement and
    :class:`BudgetExhausted` when ``budget`` search nodes did not suffice.
    """
    report = validate(arr)
    if not report.ok:
        raise InvalidInput(str(report))
    if m < 1:
        raise ValueError("m must be positive")
    if m > len(arr):
        raise NotFound(f"arrangement has only {len(arr)} circles")
    trace: List[dict] = []
    if m <= 3:
        return _check(_direct(arr, m, trace), arr)
    spend = _Budget(budget)
    classes: Dict[tuple, str] = {}

    def colour(tri):
        cls = classes.get(tri)
        if cls is None:
            cls = classes[tri] = classify_triple(restrict(arr, tri))
        return cls

    h = ColoredHypergraph(arr.labels, 3, colour)
    candidates = []
    for cls in (KRUPP, NONKRUPP):
        found = spend.search(largest_monochromatic, h, colours=(cls,))
        if found is not None:
            candidates.append(found)
    candidates.sort(key=lambda w: -len(w[0]))
    for subset, cls in candidates:
        attempt = [{"stage": "krupp-colour", "colour": cls, "size": len(subset)}]
        try:
            if cls == KRUPP and len(subset) >= m:
                result = _krupp_branch(arr, subset, m, attempt, spend)
            elif cls == NONKRUPP and len(subset) >= m + 1:
                result = _nonkrupp_branch(arr, subset, m, attempt, spend)
            else:
                continue
        except (StageFailure, NotGreatPseudocircles, InvalidInput) as exc:
            # paired-colour witnesses do occur in realizable inputs, e.g. C3 read
            # in reverse label order, so they only end this branch
            attempt.append({"stage": "failed", "reason": str(exc)})
            trace.extend(attempt)
            continue
        trace.extend(attempt)
        result.trace = trace
        return _check(result, arr)

    for family in ("C1", "C2", "C3"):
        target = FamilyId(family, m)
        cert = _budgeted_exhaustive(arr, target, classes, spend)
        if cert is not None:
            trace.append({"stage": "fallback", "family": family})
            return _check(ExtractionResult(target, cert.source_subset, cert, trace), arr)
    if spend.hit:
        raise BudgetExhausted(f"budget of {budget} nodes exhausted")
    raise NotFound(f"no subarrangement isomorphic to C1_{m}, C2_{m} or C3_{m}")


def _budgeted_exhaustive(arr, target, classes, spend) -> Optional[Certificate]:
    # one budget unit per candidate subset
    if not spend.spend(comb(len(arr), target.size)):
        return None
    return exhaustive_find(arr, target, classes)


def _check(result: ExtractionResult, arr: Arrangement) -> ExtractionResult:
    if not check_certificate(result.certificate, arr):
        raise AssertionError("extraction produced a certificate that does not verify")
    return result
