"""Signed intersection codes and the elementary operations on them.

A code is the sequence of crossings met while traversing one pseudocircle
from a chosen start point in a chosen direction.  Each crossing is an event
``(j, sign)`` where ``sign`` is :data:`PLUS` when the traversed circle crosses
``j`` coming from the left side of ``j`` and :data:`MINUS` otherwise.

Codes are stored as tuples whose index 0 is the start.  Rotating the start or
reversing the direction produces a new tuple; :class:`Arrangement` values are
never mutated.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

PLUS = 1
MINUS = -1

Event = Tuple[int, int]
SignedCode = Tuple[Event, ...]

LEFT = "Left"
RIGHT = "Right"


class CodeError(ValueError):
    """Malformed code data, unknown labels, or bad label maps."""


def sign_char(sign: int) -> str:
    return "+" if sign == PLUS else "-"


def _parse_sign(token) -> int:
    if token in ("+", 1, "plus"):
        return PLUS
    if token in ("-", -1, "minus"):
        return MINUS
    raise CodeError(f"malformed sign {token!r}")


class Arrangement:
    """A labelled family of signed codes, one per pseudocircle.

    Construction only normalizes the storage; use :func:`validate` to check
    the structural invariants.
    """

    __slots__ = ("_codes", "_hash")

    def __init__(self, codes: Mapping[int, Iterable[Event]]):
        store = {}
        for label in sorted(codes):
            if not isinstance(label, int) or label < 0:
                raise CodeError(f"labels must be non-negative integers, got {label!r}")
            events = []
            for ev in codes[label]:
                lab, sg = ev
                if sg not in (PLUS, MINUS):
                    raise CodeError(f"circle {label}: malformed sign {sg!r}")
                events.append((int(lab), int(sg)))
            store[label] = tuple(events)
        self._codes: Dict[int, SignedCode] = store
        self._hash = None

    @property
    def labels(self) -> Tuple[int, ...]:
        return tuple(self._codes)

    def code(self, label: int) -> SignedCode:
        try:
            return self._codes[label]
        except KeyError:
            raise CodeError(f"unknown label {label}") from None

    __getitem__ = code

    def unsigned(self, label: int) -> Tuple[int, ...]:
        return tuple(lab for lab, _ in self.code(label))

    def items(self):
        return self._codes.items()

    def __contains__(self, label) -> bool:
        return label in self._codes

    def __iter__(self) -> Iterator[int]:
        return iter(self._codes)

    def __len__(self) -> int:
        return len(self._codes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self._codes == other._codes

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._codes.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Arrangement({self.to_text().strip()!r})"

    # serialization

    def to_text(self) -> str:
        lines = []
        for label, events in self._codes.items():
            body = " ".join(f"{lab}{sign_char(sg)}" for lab, sg in events)
            lines.append(f"{label}: {body}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Arrangement":
        codes: Dict[int, List[Event]] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, sep, body = line.partition(":")
            if not sep or not head.strip().isdigit():
                raise CodeError(f"line {lineno}: expected '<label>: <events>'")
            label = int(head)
            if label in codes:
                raise CodeError(f"line {lineno}: duplicate label {label}")
            events = []
            for tok in body.split():
                match = _EVENT_RE.fullmatch(tok)
                if match is None:
                    raise CodeError(f"line {lineno}: malformed event {tok!r}")
                events.append((int(match.group(1)), _parse_sign(match.group(2))))
            codes[label] = events
        return cls(codes)

    def to_dict(self) -> dict:
        return {
            "n": len(self),
            "codes": {
                str(label): [[lab, sign_char(sg)] for lab, sg in events]
                for label, events in self._codes.items()
            },
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Arrangement":
        try:
            raw = data["codes"]
        except (KeyError, TypeError):
            raise CodeError("structured input needs a 'codes' field") from None
        codes = {}
        for key, events in raw.items():
            label = int(key)
            if label in codes:
                raise CodeError(f"duplicate label {label}")
            codes[label] = [(int(lab), _parse_sign(sg)) for lab, sg in events]
        if "n" in data and int(data["n"]) != len(codes):
            raise CodeError(f"n={data['n']} but {len(codes)} codes given")
        return cls(codes)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


_EVENT_RE = re.compile(r"(\d+)([+-])")


def parse_arrangement(text: str) -> Arrangement:
    """Parse either the line format or the JSON tree format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CodeError(f"invalid JSON: {exc}") from None
        return Arrangement.from_dict(data)
    return Arrangement.from_text(text)


# validation


@dataclass
class ValidationReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "pass" if self.ok else "\n".join(self.violations)


def validate(arr: Arrangement) -> ValidationReport:
    """Check the local invariants of every code and of every pair."""
    report = ValidationReport()
    labels = set(arr.labels)
    n = len(labels)
    for owner, events in arr.items():
        if len(events) != 2 * (n - 1):
            report.violations.append(
                f"circle {owner}: code has {len(events)} events, expected {2 * (n - 1)}"
            )
        seen: Dict[int, List[int]] = {}
        for lab, sg in events:
            seen.setdefault(lab, []).append(sg)
        if owner in seen:
            report.violations.append(f"circle {owner}: its own label appears in its code")
        for lab, signs in sorted(seen.items()):
            if lab == owner:
                continue
            if lab not in labels:
                report.violations.append(f"circle {owner}: unknown label {lab}")
            elif len(signs) != 2:
                report.violations.append(
                    f"circle {owner}: label {lab} appears {len(signs)} times, expected 2"
                )
            elif signs[0] == signs[1]:
                report.violations.append(
                    f"circle {owner}: both crossings with {lab} have sign {sign_char(signs[0])}"
                )
        for lab in sorted(labels - set(seen) - {owner}):
            report.violations.append(f"circle {owner}: never crosses {lab}")
    return report


# elementary algebra


def restrict(arr: Arrangement, subset: Iterable[int]) -> Arrangement:
    """Subarrangement on ``subset``; a deleted start moves to the next kept event."""
    keep = set(subset)
    if not keep:
        raise CodeError("subset must be non-empty")
    unknown = keep - set(arr.labels)
    if unknown:
        raise CodeError(f"unknown labels {sorted(unknown)}")
    return Arrangement(
        {label: [ev for ev in arr.code(label) if ev[0] in keep] for label in keep}
    )


def relabel(arr: Arrangement, pi: Mapping[int, int]) -> Arrangement:
    labels = arr.labels
    missing = [lab for lab in labels if lab not in pi]
    if missing:
        raise CodeError(f"relabeling is not defined on {missing}")
    images = [pi[lab] for lab in labels]
    if len(set(images)) != len(images):
        raise CodeError("relabeling is not injective")
    return Arrangement(
        {pi[label]: [(pi[lab], sg) for lab, sg in events] for label, events in arr.items()}
    )


def reverse_code(events: Sequence[Event]) -> SignedCode:
    """Traverse a code backwards from the same start point, flipping signs."""
    return tuple((lab, -sg) for lab, sg in reversed(events))


def reorient(arr: Arrangement, c: int) -> Arrangement:
    if c not in arr:
        raise CodeError(f"unknown label {c}")
    codes = {}
    for label, events in arr.items():
        if label == c:
            codes[label] = reverse_code(events)
        else:
            codes[label] = [(lab, -sg if lab == c else sg) for lab, sg in events]
    return Arrangement(codes)


def rotate(events: Sequence[Event], offset: int) -> SignedCode:
    if not events:
        return tuple(events)
    k = offset % len(events)
    return tuple(events[k:]) + tuple(events[:k])


def rotate_start(arr: Arrangement, c: int, offset: int) -> Arrangement:
    if c not in arr:
        raise CodeError(f"unknown label {c}")
    codes = dict(arr.items())
    codes[c] = rotate(codes[c], offset)
    return Arrangement(codes)


def mirror(arr: Arrangement) -> Arrangement:
    """Mirror image: every left/right side swaps, so every sign flips."""
    return Arrangement(
        {label: [(lab, -sg) for lab, sg in events] for label, events in arr.items()}
    )


@dataclass(frozen=True)
class ArcView:
    """The code of ``owner`` cut at its two crossings with ``reference``.

    ``arcs[t]`` is the run of events following the t-th occurrence of
    ``reference``; ``side_tags[t]`` is the side of ``reference`` that run lies
    on.
    """

    owner: int
    reference: int
    arcs: Tuple[SignedCode, SignedCode]
    side_tags: Tuple[str, str]

    def side_of(self, label: int):
        """Tag of the arc holding both events of ``label``, or None if split."""
        hits = [any(lab == label for lab, _ in arc) for arc in self.arcs]
        if hits[0] and hits[1]:
            return None
        if hits[0]:
            return self.side_tags[0]
        if hits[1]:
            return self.side_tags[1]
        raise CodeError(f"label {label} does not occur in the code of {self.owner}")


def arcs(arr: Arrangement, owner: int, reference: int) -> ArcView:
    if owner == reference:
        raise CodeError("owner and reference must differ")
    events = arr.code(owner)
    if reference not in arr:
        raise CodeError(f"unknown label {reference}")
    where = [i for i, (lab, _) in enumerate(events) if lab == reference]
    if len(where) != 2:
        raise CodeError(f"circle {owner} does not cross {reference} twice")
    p, q = where
    first = tuple(events[p + 1 : q])
    second = tuple(events[q + 1 :]) + tuple(events[:p])
    tags = tuple(RIGHT if events[idx][1] == PLUS else LEFT for idx in (p, q))
    return ArcView(owner, reference, (first, second), tags)
