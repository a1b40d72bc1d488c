"""Monochromatic subsets of coloured complete k-uniform hypergraphs.

The colour of a k-subset is supplied as a callable and memoized.  Searches
grow a partial monochromatic set in vertex order while filtering the
remaining candidates, and prune when too few candidates remain.  Results are
deterministic: colours are tried in first-seen order, and within a colour
the lexicographically first witness wins.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Hashable, Iterable, List, Optional, Sequence, Tuple

Witness = Tuple[Tuple, Hashable]


class _OutOfBudget(Exception):
    pass


class ColoredHypergraph:
    """Complete k-uniform hypergraph with a lazily evaluated edge colouring.

    ``colour`` receives k-tuples listed in vertex order.  ``evaluations`` counts
    actual calls to it, ``nodes`` counts search nodes, and ``truncated`` is set
    when a search gave up because of its node budget.
    """

    def __init__(self, vertices: Iterable, k: int, colour: Callable[[tuple], Hashable]):
        self.vertices = tuple(vertices)
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        self._colour = colour
        self._memo = {}
        self._rank = {v: i for i, v in enumerate(self.vertices)}
        self.evaluations = 0
        self.nodes = 0
        self.truncated = False

    def colour(self, edge) -> Hashable:
        key = tuple(sorted(edge, key=self._rank.__getitem__))
        try:
            return self._memo[key]
        except KeyError:
            self.evaluations += 1
            value = self._memo[key] = self._colour(key)
            return value

    def colours(self) -> List[Hashable]:
        """All colours in order of first appearance over lexicographic edges."""
        seen = []
        for edge in combinations(self.vertices, self.k):
            c = self.colour(edge)
            if c not in seen:
                seen.append(c)
        return seen

    def is_monochromatic(self, subset: Sequence, colour=None) -> bool:
        values = {self._colour(tuple(sorted(e, key=self._rank.__getitem__)))
                  for e in combinations(subset, self.k)}
        if colour is None:
            return len(values) <= 1
        return values <= {colour}


def _grow(h: ColoredHypergraph, colour, target: int, budget, best=None):
    """Yield monochromatic sets of size >= target in lexicographic order.

    With ``best`` (a one-element list) the search instead keeps the largest set
    found there and prunes against it.
    """
    k = h.k

    def ok(chosen, v, w):
        return all(h.colour(tuple(c) + (v, w)) == colour for c in combinations(chosen, k - 2))

    def rec(chosen: list, cands: list):
        h.nodes += 1
        if budget is not None and h.nodes > budget:
            h.truncated = True
            raise _OutOfBudget
        if best is not None:
            if len(chosen) > len(best[0]):
                best[0] = tuple(chosen)
        elif len(chosen) >= target:
            yield tuple(chosen)
            return
        for t, v in enumerate(cands):
            bound = len(best[0]) + 1 if best is not None else target
            if len(chosen) + len(cands) - t < bound:
                return
            rest = cands[t + 1 :]
            if len(chosen) + 1 >= k - 1:
                rest = [w for w in rest if ok(chosen, v, w)]
            chosen.append(v)
            yield from rec(chosen, rest)
            chosen.pop()

    yield from rec([], list(h.vertices))


def _colour_order(h, colours):
    return list(colours) if colours is not None else h.colours()


def find_monochromatic(
    h: ColoredHypergraph, target: int, colours=None, budget: Optional[int] = None
) -> Optional[Witness]:
    """First set of ``target`` vertices whose k-subsets share one colour.

    ``colours`` restricts which colours are acceptable.  Returns None when no
    such set exists or when the node ``budget`` ran out (``h.truncated``).
    """
    found = find_all_monochromatic(h, target, 1, colours, budget)
    return found[0] if found else None


def find_all_monochromatic(
    h: ColoredHypergraph, target: int, limit: int, colours=None, budget: Optional[int] = None
) -> List[Witness]:
    if target < h.k:
        raise ValueError(f"target must be at least k={h.k}")
    if limit < 1:
        raise ValueError("limit must be positive")
    out: List[Witness] = []
    if target > len(h.vertices):
        return out
    try:
        for colour in _colour_order(h, colours):
            for subset in _grow(h, colour, target, budget):
                out.append((subset, colour))
                if len(out) >= limit:
                    return out
    except _OutOfBudget:
        pass
    return out


def largest_monochromatic(
    h: ColoredHypergraph, colours=None, budget: Optional[int] = None
) -> Optional[Witness]:
    """A maximum monochromatic set (at least k vertices), or None.

    Ties go to the earlier colour.  None with ``h.truncated`` set means the
    budget ran out before the search finished.
    """
    if len(h.vertices) < h.k:
        return None
    result = None
    try:
        for colour in _colour_order(h, colours):
            floor = len(result[0]) if result else h.k - 1
            best = [tuple(range(floor))]  # placeholder of the size to beat
            list(_grow(h, colour, 0, budget, best))
            if len(best[0]) > floor:
                result = (best[0], colour)
    except _OutOfBudget:
        return None
    return result
