"""Wiring diagrams of simple pseudoline arrangements.

A :class:`WiringDiagram` lists its wires bottom to top at the far left and a
sequence of swaps; swap ``p`` exchanges the wires currently at positions ``p``
and ``p + 1`` (1-based, counted from the bottom).  Every pair of wires swaps
exactly once.

Doubling a diagram glues two copies of it into an arrangement of great
pseudocircles.  At a swap the lower wire rises over the upper one; the lower
wire records the upper one with a plus sign and the upper wire records the
lower one with a minus sign.  The second copy repeats the same sequence with
every sign flipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .codes import MINUS, PLUS, Arrangement, CodeError, reorient, validate
from .ramsey import ColoredHypergraph, find_monochromatic


class WiringError(ValueError):
    pass


class NotGreatPseudocircles(ValueError):
    """Raised by :func:`antipodal_cut` on arrangements it cannot cut open."""


@dataclass(frozen=True)
class WiringDiagram:
    n: int
    swaps: Tuple[int, ...]
    wires: Tuple[int, ...] = ()

    def __post_init__(self):
        if not self.wires:
            object.__setattr__(self, "wires", tuple(range(1, self.n + 1)))
        object.__setattr__(self, "swaps", tuple(self.swaps))
        if len(self.wires) != self.n or len(set(self.wires)) != self.n:
            raise WiringError("wires must list n distinct labels")
        seen = set()
        for a, b, _ in self.crossings():
            pair = frozenset((a, b))
            if pair in seen:
                raise WiringError(f"wires {a} and {b} swap twice")
            seen.add(pair)
        if len(seen) != self.n * (self.n - 1) // 2:
            raise WiringError("some pair of wires never swaps")

    def crossings(self):
        """Yield (lower, upper, position) for every swap, left to right."""
        order = list(self.wires)
        for p in self.swaps:
            if not 1 <= p < self.n:
                raise WiringError(f"swap position {p} out of range")
            lo, hi = order[p - 1], order[p]
            yield lo, hi, p
            order[p - 1], order[p] = hi, lo

    def meet_order(self) -> Dict[int, Tuple[int, ...]]:
        meets = {w: [] for w in self.wires}
        for lo, hi, _ in self.crossings():
            meets[lo].append(hi)
            meets[hi].append(lo)
        return {w: tuple(m) for w, m in meets.items()}

    def to_text(self) -> str:
        text = f"{self.n}\n{' '.join(map(str, self.swaps))}\n"
        if self.wires != tuple(range(1, self.n + 1)):
            text += "wires: " + " ".join(map(str, self.wires)) + "\n"
        return text

    @classmethod
    def from_text(cls, text: str) -> "WiringDiagram":
        lines = [ln.strip() for ln in text.splitlines()]
        while lines and not lines[-1]:
            lines.pop()
        try:
            n = int(lines[0])
            swaps = tuple(int(tok) for tok in (lines[1].split() if len(lines) > 1 else ()))
            wires = ()
            if len(lines) > 2 and lines[2].startswith("wires:"):
                wires = tuple(int(tok) for tok in lines[2][6:].split())
        except (IndexError, ValueError):
            raise WiringError("expected 'n' on line 1 and swap positions on line 2") from None
        return cls(n, swaps, wires)


def gen_cyclic(m: int) -> WiringDiagram:
    """Wiring diagram of the tangent lines ``y = 2ix - i^2`` to the parabola."""
    if m < 1:
        raise ValueError("m must be positive")
    # larger slope is lower at the far left
    order = list(range(m, 0, -1))
    pairs = sorted(combinations(range(1, m + 1), 2), key=lambda ij: (ij[0] + ij[1], ij[0]))
    swaps = []
    for i, j in pairs:
        p, q = order.index(i), order.index(j)
        lo = min(p, q)
        assert abs(p - q) == 1
        order[lo], order[lo + 1] = order[lo + 1], order[lo]
        swaps.append(lo + 1)
    return WiringDiagram(m, tuple(swaps), tuple(range(m, 0, -1)))


def is_cyclic(w: WiringDiagram, labeling: Optional[Mapping[int, int]] = None) -> bool:
    """True when every wire meets the others in increasing label order."""
    if labeling is None:
        labeling = {x: x for x in w.wires}
    if set(labeling) != set(w.wires) or len(set(labeling.values())) != w.n:
        raise WiringError("labeling must be a bijection on the wires")
    for meets in w.meet_order().values():
        ranks = [labeling[x] for x in meets]
        if any(a >= b for a, b in zip(ranks, ranks[1:])):
            return False
    return True


def restrict_wiring(w: WiringDiagram, subset) -> WiringDiagram:
    keep = set(subset)
    if not keep:
        raise WiringError("subset must be non-empty")
    if not keep <= set(w.wires):
        raise WiringError(f"unknown wires {sorted(keep - set(w.wires))}")
    order = [x for x in w.wires if x in keep]
    wires = tuple(order)
    swaps = []
    for lo, hi, _ in w.crossings():
        if lo in keep and hi in keep:
            p = order.index(lo)
            assert order[p + 1] == hi
            order[p], order[p + 1] = hi, lo
            swaps.append(p + 1)
    return WiringDiagram(len(wires), tuple(swaps), wires)


def find_cyclic_subarrangement(w: WiringDiagram, m: int, budget=None):
    """A set of ``m`` wires with a labeling 1..m making them cyclic, or None.

    Triples of wires, taken bottom to top at the far left, are coloured by
    whether the middle wire meets the lower one first.  A monochromatic set is
    cyclic with labels ascending (lower first) or descending (upper first).
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m > w.n:
        return None
    rank = {x: i for i, x in enumerate(w.wires)}
    meets = w.meet_order()
    pos = {x: {y: t for t, y in enumerate(seq)} for x, seq in meets.items()}

    def colour(tri):
        a, b, c = sorted(tri, key=rank.get)
        return "up" if pos[b][a] < pos[b][c] else "down"

    candidates = []
    if m >= 3:
        h = ColoredHypergraph(w.wires, 3, colour)
        found = find_monochromatic(h, m, budget=budget)
        if found is not None:
            candidates.append(found)
    else:
        candidates.append((w.wires[:m], "up"))
    for subset, col in candidates:
        ordered = sorted(subset, key=rank.get)
        if col == "down":
            ordered.reverse()
        labeling = {x: i for i, x in enumerate(ordered, 1)}
        if is_cyclic(restrict_wiring(w, subset), labeling):
            return frozenset(subset), labeling
    # exhaustive fallback; a cyclic labeling is monotone in left-end position
    for subset in combinations(w.wires, m):
        sub = restrict_wiring(w, subset)
        ordered = sorted(subset, key=rank.get)
        for seq in (ordered, ordered[::-1]):
            labeling = {x: i for i, x in enumerate(seq, 1)}
            if is_cyclic(sub, labeling):
                return frozenset(subset), labeling
    return None


def double_wiring(w: WiringDiagram) -> Arrangement:
    first = {x: [] for x in w.wires}
    for lo, hi, _ in w.crossings():
        first[lo].append((hi, PLUS))
        first[hi].append((lo, MINUS))
    codes = {x: seq + [(lab, -sg) for lab, sg in seq] for x, seq in first.items()}
    return Arrangement(codes)


def _is_antipodal(events) -> bool:
    h = len(events) // 2
    return all(events[k + h] == (events[k][0], -events[k][1]) for k in range(h))


def _diagram_from_halves(halves: Mapping[int, Sequence]) -> Optional[WiringDiagram]:
    """Rebuild a wiring diagram from each wire's signed first-copy sequence."""
    labels = list(halves)
    below_count = {}
    for i in labels:
        signs = {}
        for j, sg in halves[i]:
            signs[j] = sg
        for j, sg in signs.items():
            if (i, -sg) not in halves[j]:
                return None
        below_count[i] = sum(1 for _, sg in halves[i] if sg == MINUS)
    order = sorted(labels, key=below_count.get)
    if [below_count[x] for x in order] != list(range(len(labels))):
        return None
    pointer = {x: 0 for x in labels}
    wires = tuple(order)
    swaps = []
    total = len(labels) * (len(labels) - 1) // 2
    while len(swaps) < total:
        for p in range(len(order) - 1):
            lo, hi = order[p], order[p + 1]
            if (
                pointer[lo] < len(halves[lo])
                and pointer[hi] < len(halves[hi])
                and halves[lo][pointer[lo]] == (hi, PLUS)
                and halves[hi][pointer[hi]] == (lo, MINUS)
            ):
                pointer[lo] += 1
                pointer[hi] += 1
                order[p], order[p + 1] = hi, lo
                swaps.append(p + 1)
                break
        else:
            return None
    return WiringDiagram(len(labels), tuple(swaps), wires)


def antipodal_cut(arr: Arrangement) -> WiringDiagram:
    """Cut an arrangement of great pseudocircles open into a wiring diagram.

    The given start points are used as the cut when they are consistent, so
    ``antipodal_cut(double_wiring(w))`` recovers ``w``.  Otherwise the cut runs
    alongside a pushed-off copy of some circle ``c0``, which then becomes the
    bottom wire, and circles are reoriented as needed; the doubling of the
    result is isomorphic to ``arr``.
    """
    for w in iter_antipodal_cuts(arr):
        return w
    raise NotGreatPseudocircles("no consistent cut into a wiring diagram")


def iter_antipodal_cuts(arr: Arrangement):
    """Every distinct wiring diagram :func:`antipodal_cut` can produce, best first."""
    if not validate(arr).ok:
        raise NotGreatPseudocircles("arrangement is not valid")
    labels = arr.labels
    n = len(labels)
    if n == 1:
        yield WiringDiagram(1, (), labels)
        return
    h = n - 1
    for c in labels:
        if not _is_antipodal(arr.code(c)):
            raise NotGreatPseudocircles(f"code of circle {c} has no antipodal form")

    def halves_from(cur, starts):
        out = {}
        for c in labels:
            code = cur.code(c)
            s = starts[c] % len(code)
            out[c] = (code[s:] + code[:s])[:h]
        return out

    seen = set()
    w = _diagram_from_halves(halves_from(arr, {c: 0 for c in labels}))
    if w is not None:
        seen.add(w)
        yield w
    for c0 in labels:
        for rev0 in (False, True):
            turned = reorient(arr, c0) if rev0 else arr
            for s0 in range(2 * h):
                cur = turned
                base = cur.code(c0)[s0:] + cur.code(c0)[:s0]
                for lab, sg in base[:h]:
                    if sg == MINUS:
                        cur = reorient(cur, lab)
                # c0 is the bottom wire and crosses the others first or last
                for last in (False, True):
                    starts = {c0: s0}
                    for lab in labels:
                        if lab != c0:
                            q = cur.code(lab).index((c0, MINUS))
                            starts[lab] = q - h + 1 if last else q
                    w = _diagram_from_halves(halves_from(cur, starts))
                    if w is not None and w not in seen:
                        seen.add(w)
                        yield w
