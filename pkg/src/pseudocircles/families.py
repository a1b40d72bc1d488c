"""The unavoidable families and the predicates that classify arrangements."""

from __future__ import annotations

from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .codes import MINUS, PLUS, Arrangement, CodeError, arcs, restrict

KRUPP = "Krupp"
NONKRUPP = "NonKrupp"


def _plus(labels):
    return [(x, PLUS) for x in labels]


def _minus(labels):
    return [(x, MINUS) for x in labels]


def gen_C2(m: int) -> Arrangement:
    """Code of i: 1+ .. (i-1)+, (i+1)- .. m-, m+ .. (i+1)+, (i-1)- .. 1-."""
    if m < 1:
        raise ValueError("m must be positive")
    codes = {}
    for i in range(1, m + 1):
        low, high = range(1, i), range(i + 1, m + 1)
        codes[i] = _plus(low) + _minus(high) + _plus(reversed(high)) + _minus(reversed(low))
    return Arrangement(codes)


def gen_C3(m: int) -> Arrangement:
    """Code of i: 1+ 1- .. (i-1)+ (i-1)-, (i+1)- .. m-, m+ .. (i+1)+."""
    if m < 1:
        raise ValueError("m must be positive")
    codes = {}
    for i in range(1, m + 1):
        high = range(i + 1, m + 1)
        paired = [ev for j in range(1, i) for ev in ((j, PLUS), (j, MINUS))]
        codes[i] = paired + _minus(high) + _plus(reversed(high))
    return Arrangement(codes)


def gen_C1(m: int) -> Arrangement:
    """Two glued copies of the cyclic wiring diagram on m wires."""
    from .pseudolines import double_wiring, gen_cyclic

    if m < 1:
        raise ValueError("m must be positive")
    return double_wiring(gen_cyclic(m))


_GENERATORS = {"C1": gen_C1, "C2": gen_C2, "C3": gen_C3}


def generate(family: str, m: int) -> Arrangement:
    try:
        gen = _GENERATORS[family.upper()]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    return gen(m)


def _alternates(seq) -> bool:
    return len(seq) == 4 and seq[0] == seq[2] and seq[1] == seq[3] and seq[0] != seq[1]


def classify_triple(arr: Arrangement) -> str:
    """Krupp when a circle meets the other two alternately, else NonKrupp."""
    if len(arr) != 3:
        raise CodeError(f"classify_triple needs 3 circles, got {len(arr)}")
    return KRUPP if _alternates(arr.unsigned(arr.labels[0])) else NONKRUPP


def triple_classes(arr: Arrangement):
    return {tri: classify_triple(restrict(arr, tri)) for tri in combinations(arr.labels, 3)}


def is_packed(arr: Arrangement, cls: str) -> bool:
    return all(c == cls for c in triple_classes(arr).values())


def _is_rotation(seq, pattern) -> bool:
    if len(seq) != len(pattern):
        return False
    if not seq:
        return True
    doubled = tuple(seq) + tuple(seq)
    pattern = tuple(pattern)
    return any(doubled[r : r + len(seq)] == pattern for r in range(len(seq)))


def is_bad(arr: Arrangement, labeling: Sequence[int]) -> bool:
    """Whether ``labeling`` (circles listed as 1..n) witnesses badness.

    For each of the first n-2 circles, its unsigned code among itself and the
    later circles must read later circles in pairs, in order, up to rotation.
    """
    order = list(labeling)
    if sorted(order) != sorted(arr.labels):
        raise CodeError("labeling must list every circle exactly once")
    n = len(order)
    for i in range(n - 2):
        tail = order[i:]
        sub = restrict(arr, tail)
        pattern = [x for x in tail[1:] for _ in (0, 1)]
        if not _is_rotation(sub.unsigned(order[i]), pattern):
            return False
    return True


def find_bad_labeling(arr: Arrangement) -> Optional[List[int]]:
    from itertools import permutations

    for order in permutations(arr.labels):
        if is_bad(arr, order):
            return list(order)
    return None


# X4 was found by rejection sampling plane circles (see demos/find_x4.py)
# and frozen here; its native order is 1, 2, 3, 4.
_X4_TEXT = """\
1: 3+ 4+ 4- 2+ 2- 3-
2: 3+ 4- 1- 1+ 4+ 3-
3: 2- 4- 1- 1+ 4+ 2+
4: 3+ 1- 1+ 2+ 2- 3-
"""


def gen_X4() -> Arrangement:
    return Arrangement.from_text(_X4_TEXT)


# rainbow


def rainbow_orders(anchor_code) -> List[Tuple[bool, int, Tuple[int, ...]]]:
    """Ways to read an anchor's unsigned code as x1 .. xn xn .. x1.

    Returns (reversed, rotation, (x1, .., xn)) triples, unreversed readings
    first and rotations ascending; rotation applies after reversal.
    """
    unsigned = [lab for lab, _ in anchor_code]
    length = len(unsigned)
    if length % 2:
        return []
    n = length // 2
    out = []
    for flip in (False, True):
        seq = unsigned[::-1] if flip else unsigned
        for r in range(max(length, 1)):
            s = seq[r:] + seq[:r]
            head = s[:n]
            if len(set(head)) == n and s[n:] == head[::-1]:
                out.append((flip, r, tuple(head)))
    return out


def intersection_side(arr: Arrangement, anchor: int) -> Tuple[bool, Optional[str]]:
    """Whether the crossings among non-anchor circles lie on one side of ``anchor``.

    Returns (consistent, side); side is None when there are no such crossings.
    """
    side = None
    for i in arr.labels:
        if i == anchor:
            continue
        view = arcs(arr, i, anchor)
        filled = [t for t in (0, 1) if view.arcs[t]]
        if len(filled) == 2:
            return False, None
        if filled:
            tag = view.side_tags[filled[0]]
            if side is None:
                side = tag
            elif side != tag:
                return False, None
    return True, side


def is_rainbow(arr: Arrangement, anchor: int) -> bool:
    if anchor not in arr:
        raise CodeError(f"unknown anchor {anchor}")
    if len(arr) == 1:
        return True
    if not rainbow_orders(arr.code(anchor)):
        return False
    consistent, _ = intersection_side(arr, anchor)
    return consistent
