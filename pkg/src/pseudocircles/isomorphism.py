"""Isomorphism of arrangements by code matching.

Two arrangements are treated as isomorphic when some choice of labels,
orientations, start points and (optionally) a mirror makes their codes equal
verbatim.  The four freedoms are bundled into a :class:`Transform`.

Canonical forms and isomorphism tests use *rooted forms*: once a mirror flag,
a root circle, its orientation and its start are fixed, the remaining
freedoms are forced (labels by first appearance on the root, orientations so
that the root meets every circle first with a minus sign, starts at the plus
crossing with the root).  An arrangement of size n has at most 8n(n-1) rooted
forms and two arrangements are isomorphic exactly when they share one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Tuple, Union

from .codes import PLUS, Arrangement, CodeError, restrict

MAX_CANONICAL_SIZE = 10


class SizeLimitError(ValueError):
    pass


@dataclass(frozen=True)
class Transform:
    """Relabeling plus per-circle reorientations, start rotations and a mirror.

    :func:`apply` performs, in this order: the mirror (every sign flips), the
    reorientations in ``flips``, the start rotations (keyed by source label,
    applied to the already reoriented code), and finally the relabeling.
    """

    pi: Mapping[int, int]
    flips: FrozenSet[int] = frozenset()
    rotations: Mapping[int, int] = field(default_factory=dict)
    reflect: bool = False

    def __post_init__(self):
        object.__setattr__(self, "pi", dict(self.pi))
        object.__setattr__(self, "flips", frozenset(self.flips))
        object.__setattr__(
            self, "rotations", {c: r for c, r in dict(self.rotations).items() if r}
        )

    def __hash__(self):
        return hash(
            (
                tuple(sorted(self.pi.items())),
                self.flips,
                tuple(sorted(self.rotations.items())),
                self.reflect,
            )
        )

    @classmethod
    def identity(cls, labels) -> "Transform":
        return cls({lab: lab for lab in labels})

    def to_dict(self) -> dict:
        return {
            "pi": {str(k): v for k, v in sorted(self.pi.items())},
            "flips": sorted(self.flips),
            "rotations": {str(k): v for k, v in sorted(self.rotations.items())},
            "reflect": self.reflect,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Transform":
        return cls(
            {int(k): int(v) for k, v in data["pi"].items()},
            frozenset(int(c) for c in data.get("flips", ())),
            {int(k): int(v) for k, v in data.get("rotations", {}).items()},
            bool(data.get("reflect", False)),
        )

    def inverse(self, arr: Arrangement) -> "Transform":
        """Inverse transform; ``arr`` is the source, needed for code lengths."""
        inv = {v: k for k, v in self.pi.items()}
        rotations = {}
        for c in arr.labels:
            length = len(arr.code(c))
            if not length:
                continue
            r = self.rotations.get(c, 0)
            rotations[self.pi[c]] = r % length if c in self.flips else (-r) % length
        return Transform(inv, {self.pi[c] for c in self.flips}, rotations, self.reflect)

    def then(self, other: "Transform", arr: Arrangement) -> "Transform":
        """The transform applying ``self`` first and ``other`` second."""
        pi = {c: other.pi[self.pi[c]] for c in self.pi}
        flips = set()
        rotations = {}
        for c in arr.labels:
            mid = self.pi[c]
            f1, f2 = c in self.flips, mid in other.flips
            if f1 != f2:
                flips.add(c)
            length = len(arr.code(c))
            if length:
                r1 = self.rotations.get(c, 0)
                r2 = other.rotations.get(mid, 0)
                rotations[c] = (r2 - r1 if f2 else r2 + r1) % length
        return Transform(pi, flips, rotations, self.reflect != other.reflect)


def _check_transform(t: Transform, arr: Arrangement) -> None:
    labels = set(arr.labels)
    if set(t.pi) != labels:
        raise CodeError("transform relabeling must be defined exactly on the arrangement's labels")
    if len(set(t.pi.values())) != len(labels):
        raise CodeError("transform relabeling is not a bijection")
    if not t.flips <= labels or not set(t.rotations) <= labels:
        raise CodeError("transform mentions labels outside the arrangement")


def _oriented(arr: Arrangement, reflect: bool, flips) -> Dict[int, tuple]:
    g = -1 if reflect else 1
    out = {}
    for c, events in arr.items():
        fc = -1 if c in flips else 1
        seq = reversed(events) if c in flips else events
        out[c] = tuple(
            (lab, sg * g * fc * (-1 if lab in flips else 1)) for lab, sg in seq
        )
    return out


def apply(t: Transform, arr: Arrangement) -> Arrangement:
    _check_transform(t, arr)
    oriented = _oriented(arr, t.reflect, t.flips)
    pi = t.pi
    codes = {}
    for c, events in oriented.items():
        r = t.rotations.get(c, 0)
        if events and r:
            r %= len(events)
            events = events[r:] + events[:r]
        codes[pi[c]] = [(pi[lab], sg) for lab, sg in events]
    return Arrangement(codes)


def solve_rotations(
    arr: Arrangement, target: Arrangement, pi, flips=frozenset(), reflect=False
) -> Optional[Transform]:
    """Complete a partial transform with the start rotations matching ``target``."""
    oriented = _oriented(arr, reflect, flips)
    rotations = {}
    for c, events in oriented.items():
        want = tuple(target.code(pi[c])) if pi[c] in target else None
        if want is None or len(want) != len(events):
            return None
        mapped = tuple((pi[lab], sg) for lab, sg in events)
        if not mapped:
            continue
        for r in range(len(mapped)):
            if mapped[r:] + mapped[:r] == want:
                rotations[c] = r
                break
        else:
            return None
    return Transform(pi, flips, rotations, reflect)


# rooted forms


@dataclass(frozen=True)
class _Rooted:
    key: tuple
    pi: Dict[int, int]
    flips: FrozenSet[int]
    reflect: bool


def _root_code(arr: Arrangement, reflect: bool, root: int, flip_root: bool, rot: int):
    """Root code in rooted-form labels plus the forced relabeling and flips."""
    g = -1 if reflect else 1
    fr = -1 if flip_root else 1
    events = arr.code(root)
    seq = tuple(reversed(events)) if flip_root else events
    if seq:
        rot %= len(seq)
        seq = seq[rot:] + seq[:rot]
    pi = {root: 1}
    factor = {}
    out = []
    for lab, sg in seq:
        s = sg * g * fr
        if lab not in pi:
            pi[lab] = len(pi) + 1
            factor[lab] = -s  # first meeting with each circle reads as minus
        out.append((pi[lab], s * factor[lab]))
    return tuple(out), pi, factor


def _rooted_form(arr, reflect, root, flip_root, rot, expected=None) -> Optional[_Rooted]:
    head, pi, factor = _root_code(arr, reflect, root, flip_root, rot)
    if expected is not None and head != expected[0]:
        return None
    g = -1 if reflect else 1
    factor[root] = -1 if flip_root else 1
    parts = [head]
    order = sorted(pi, key=pi.get)
    for idx, c in enumerate(order[1:], 1):
        events = arr.code(c)
        fc = factor[c]
        seq = reversed(events) if fc == -1 else events
        code = tuple((pi[lab], sg * g * fc * factor[lab]) for lab, sg in seq)
        start = code.index((1, PLUS))
        code = code[start:] + code[:start]
        if expected is not None and code != expected[idx]:
            return None
        parts.append(code)
    flips = frozenset(c for c, f in factor.items() if f == -1)
    return _Rooted(tuple(parts), pi, flips, reflect)


def _choices(arr: Arrangement) -> Iterator[tuple]:
    for reflect in (False, True):
        for root in arr.labels:
            length = len(arr.code(root))
            for flip_root in (False, True):
                for rot in range(max(length, 1)):
                    yield reflect, root, flip_root, rot


def _check_size(arr: Arrangement) -> None:
    if len(arr) > MAX_CANONICAL_SIZE:
        raise SizeLimitError(
            f"exact canonicalization is limited to {MAX_CANONICAL_SIZE} circles, got {len(arr)}"
        )


def _compose(sa: _Rooted, sb: _Rooted, a: Arrangement, b: Arrangement) -> Optional[Transform]:
    inv_b = {v: k for k, v in sb.pi.items()}
    pi = {c: inv_b[sa.pi[c]] for c in a.labels}
    flips = frozenset(c for c in a.labels if (c in sa.flips) != (pi[c] in sb.flips))
    return solve_rotations(a, b, pi, flips, sa.reflect != sb.reflect)


class _Matcher:
    """Reusable search for transforms onto a fixed target arrangement."""

    def __init__(self, target: Arrangement):
        _check_size(target)
        self.target = target
        self.labels = target.labels
        if len(target) >= 2:
            self.ref = _rooted_form(target, False, target.labels[0], False, 0)

    def match(self, a: Arrangement) -> Optional[Transform]:
        b = self.target
        if len(a) != len(b):
            return None
        if len(a) <= 1:
            return Transform(dict(zip(a.labels, b.labels)))
        for choice in _choices(a):
            form = _rooted_form(a, *choice, expected=self.ref.key)
            if form is not None:
                t = _compose(form, self.ref, a, b)
                if t is not None:
                    return t
        return None


def is_isomorphic(a: Arrangement, b: Arrangement) -> Optional[Transform]:
    """A transform with ``apply(t, a) == b``, or None if none exists."""
    if len(a) != len(b):
        return None
    _check_size(a)
    return _Matcher(b).match(a)


def canonical_key(arr: Arrangement) -> tuple:
    _check_size(arr)
    if len(arr) <= 1:
        return ()
    return min(_rooted_form(arr, *choice).key for choice in _choices(arr))


def canonical_form(arr: Arrangement) -> bytes:
    """Serialization of the least rooted form, labels renamed 1..n."""
    n = len(arr)
    if n == 0:
        return b""
    key = canonical_key(arr)
    if n == 1:
        return b"1:\n"
    return Arrangement({i + 1: code for i, code in enumerate(key)}).to_text().encode()


# certificates


@dataclass(frozen=True)
class FamilyId:
    family: str
    size: int

    def __post_init__(self):
        if self.family not in ("C1", "C2", "C3"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.size < 1:
            raise ValueError("family size must be positive")

    def build(self) -> Arrangement:
        from . import families

        return families.generate(self.family, self.size)

    def __str__(self):
        return f"{self.family}_{self.size}"


Target = Union[FamilyId, Arrangement]


@dataclass(frozen=True)
class Certificate:
    transform: Transform
    source_subset: FrozenSet[int]
    target: Target

    def target_arrangement(self) -> Arrangement:
        if isinstance(self.target, FamilyId):
            return self.target.build()
        return self.target

    def to_dict(self) -> dict:
        if isinstance(self.target, FamilyId):
            target = {"family": self.target.family, "size": self.target.size}
        else:
            target = {"arrangement": self.target.to_dict()}
        return {
            "source_subset": sorted(self.source_subset),
            "transform": self.transform.to_dict(),
            "target": target,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Certificate":
        tgt = data["target"]
        if "family" in tgt:
            target: Target = FamilyId(tgt["family"], int(tgt["size"]))
        else:
            target = Arrangement.from_dict(tgt["arrangement"])
        return cls(
            Transform.from_dict(data["transform"]),
            frozenset(int(c) for c in data["source_subset"]),
            target,
        )


def check_certificate(cert: Certificate, source: Arrangement) -> bool:
    try:
        sub = restrict(source, cert.source_subset)
        return apply(cert.transform, sub) == cert.target_arrangement()
    except (CodeError, KeyError, ValueError):
        return False


def _triple_profile(arr: Arrangement, labels, cache) -> tuple:
    from .families import classify_triple

    out = []
    for tri in combinations(labels, 3):
        cls = cache.get(tri)
        if cls is None:
            cls = cache[tri] = classify_triple(restrict(arr, tri))
        out.append(cls)
    return tuple(sorted(out))


def iter_subarrangement_matches(source: Arrangement, target: Arrangement, cache=None):
    """Yield a certificate for every subset of ``source`` isomorphic to ``target``.

    Subsets are visited in lexicographic order.  ``cache`` memoizes triple
    classes across calls on the same source.
    """
    m = len(target)
    if m > len(source):
        return
    matcher = _Matcher(target)
    cache = {} if cache is None else cache
    profile = _triple_profile(target, target.labels, {}) if m >= 3 else None
    for subset in combinations(source.labels, m):
        if profile is not None and _triple_profile(source, subset, cache) != profile:
            continue
        t = matcher.match(restrict(source, subset))
        if t is not None:
            yield Certificate(t, frozenset(subset), target)


def exhaustive_find(source: Arrangement, target: Target, cache=None) -> Optional[Certificate]:
    """First lexicographic subset of ``source`` isomorphic to ``target``."""
    target_arr = target.build() if isinstance(target, FamilyId) else target
    for cert in iter_subarrangement_matches(source, target_arr, cache):
        return Certificate(cert.transform, cert.source_subset, target)
    return None
