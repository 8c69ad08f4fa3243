"""Combinatorial Legendrian front projections.

A front is encoded as a word of events read left to right, each event
acting on the ordered list of strands currently present (position 1 is
the top strand):

* ``("L", i)`` -- left cusp: two new strands appear at positions i, i+1;
* ``("R", i)`` -- right cusp: adjacent strands i, i+1 terminate;
* ``("X", i)`` -- crossing: strands i, i+1 cross.

Segments (maximal strand pieces between their left and right cusp) are
the edges of a graph whose vertices are the cusp events; each cusp has
exactly two incident segment ends, so the graph decomposes into cycles,
one per link component.  Walking a cycle assigns each segment a
traversal direction, which is everything needed for the classical
invariants: a crossing counts +1 towards the writhe exactly when its
two segments are traversed in the same horizontal direction (the
descending strand is in front, since it has the more negative slope),
a left cusp counts towards the rotation number when entered along its
upper branch, a right cusp when entered along its lower branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    EmptyWord,
    IndexOutOfRange,
    ParseError,
    SameComponent,
    UnbalancedCusps,
    UnrealizablePair,
)

LCUSP = "L"
RCUSP = "R"
CROSS = "X"

Event = tuple[str, int]


@dataclass(frozen=True)
class FrontWord:
    """Immutable event word; structural validity is checked lazily."""

    events: tuple[Event, ...]

    def __post_init__(self):
        for kind, pos in self.events:
            if kind not in (LCUSP, RCUSP, CROSS):
                raise ParseError(f"unknown front event kind {kind!r}")
            if not isinstance(pos, int) or pos < 1:
                raise ParseError(f"front event position must be a positive int, got {pos!r}")

    @classmethod
    def from_events(cls, events) -> "FrontWord":
        return cls(tuple((str(k), int(i)) for k, i in events))

    @classmethod
    def from_tokens(cls, tokens) -> "FrontWord":
        """Parse the flat serialized form ["L", 1, "X", 1, "R", 1]."""
        if len(tokens) % 2 != 0:
            raise ParseError(f"front token list has odd length {len(tokens)}")
        events = []
        for kind, pos in zip(tokens[::2], tokens[1::2]):
            if not isinstance(kind, str) or not isinstance(pos, int) or isinstance(pos, bool):
                raise ParseError(f"bad front token pair ({kind!r}, {pos!r})")
            events.append((kind, pos))
        return cls.from_events(events)

    def to_tokens(self) -> list:
        out = []
        for kind, pos in self.events:
            out.extend([kind, pos])
        return out

    def __len__(self):
        return len(self.events)


@dataclass(frozen=True)
class OrientedFront:
    """A front word with one traversal direction chosen per component.

    ``orientations[c]`` is True when component c runs rightward along
    its base segment (the upper strand born at the component's first
    left cusp); this is the default.
    """

    word: FrontWord
    orientations: tuple[bool, ...] = ()

    def __post_init__(self):
        n = validate(self.word)
        flags = self.orientations or tuple([True] * n)
        if len(flags) != n:
            raise ValueError(f"{len(flags)} orientation flags for {n} components")
        object.__setattr__(self, "orientations", tuple(bool(f) for f in flags))

    @property
    def component_count(self) -> int:
        return len(self.orientations)

    def reversed_component(self, component: int) -> "OrientedFront":
        flags = list(self.orientations)
        flags[component] = not flags[component]
        return OrientedFront(self.word, tuple(flags))

    def tb(self, component: int = 0) -> int:
        return thurston_bennequin(self, component)

    def rot(self, component: int = 0) -> int:
        return rotation(self, component)


@dataclass
class _Analysis:
    """Result of one sweep + cycle walk over a front word."""

    n_components: int = 0
    seg_component: list = field(default_factory=list)
    seg_dir: list = field(default_factory=list)  # True = rightward (default orientation)
    lcusps: list = field(default_factory=list)  # (event index, upper seg, lower seg)
    rcusps: list = field(default_factory=list)
    crossings: list = field(default_factory=list)  # (event index, over seg, under seg)


@lru_cache(maxsize=512)
def _analyze(events: tuple[Event, ...]) -> _Analysis:
    if not events:
        raise EmptyWord("front word has no events")

    seg_left: list[int] = []  # segment id -> creating L event
    seg_right: dict[int, int] = {}
    l_pair: dict[int, tuple[int, int]] = {}
    r_pair: dict[int, tuple[int, int]] = {}
    crossings: list[tuple[int, int, int]] = []
    current: list[int] = []

    for idx, (kind, pos) in enumerate(events):
        n = len(current)
        if kind == LCUSP:
            if not 1 <= pos <= n + 1:
                raise IndexOutOfRange(
                    f"event {idx}: left cusp at {pos} with {n} strands"
                )
            upper = len(seg_left)
            lower = upper + 1
            seg_left.extend([idx, idx])
            current[pos - 1:pos - 1] = [upper, lower]
            l_pair[idx] = (upper, lower)
        elif pos < 1 or pos > n - 1:
            raise IndexOutOfRange(
                f"event {idx}: {'right cusp' if kind == RCUSP else 'crossing'}"
                f" at {pos} with {n} strands"
            )
        elif kind == RCUSP:
            upper, lower = current[pos - 1], current[pos]
            del current[pos - 1:pos + 1]
            seg_right[upper] = idx
            seg_right[lower] = idx
            r_pair[idx] = (upper, lower)
        else:
            over, under = current[pos - 1], current[pos]
            current[pos - 1], current[pos] = under, over
            crossings.append((idx, over, under))

    if current:
        raise UnbalancedCusps(f"{len(current)} strands left open at end of word")

    # Walk the cusp/segment cycles; base segment of each component is its
    # lowest-numbered segment, traversed rightward under the default
    # orientation.  Cusps alternate L, R around a cycle so directions alternate.
    n_segs = len(seg_left)
    seg_component = [-1] * n_segs
    seg_dir = [True] * n_segs
    n_components = 0
    for base in range(n_segs):
        if seg_component[base] != -1:
            continue
        comp = n_components
        n_components += 1
        seg, rightward = base, True
        while seg_component[seg] == -1:
            seg_component[seg] = comp
            seg_dir[seg] = rightward
            ev = seg_right[seg] if rightward else seg_left[seg]
            a, b = r_pair[ev] if rightward else l_pair[ev]
            seg = b if seg == a else a
            rightward = not rightward

    ana = _Analysis(n_components=n_components, seg_component=seg_component, seg_dir=seg_dir)
    ana.lcusps = [(idx, u, l) for idx, (u, l) in sorted(l_pair.items())]
    ana.rcusps = [(idx, u, l) for idx, (u, l) in sorted(r_pair.items())]
    ana.crossings = crossings
    return ana


def validate(word: FrontWord) -> int:
    """Check structural validity and return the number of closed components."""
    return _analyze(word.events).n_components


def _directions(front: OrientedFront):
    """Per-segment traversal directions with the front's orientation applied."""
    ana = _analyze(front.word.events)
    flags = front.orientations
    dirs = [d == flags[c] for d, c in zip(ana.seg_dir, ana.seg_component)]
    return ana, dirs


def _check_component(ana: _Analysis, component: int):
    if not 0 <= component < ana.n_components:
        raise IndexOutOfRange(
            f"component {component} out of range (front has {ana.n_components})"
        )


def cusp_count(front: OrientedFront, component: int = 0) -> int:
    ana = _analyze(front.word.events)
    _check_component(ana, component)
    comp = ana.seg_component
    return sum(
        1
        for _, u, _l in ana.lcusps + ana.rcusps
        if comp[u] == component
    )


def writhe(front: OrientedFront, component: int = 0) -> int:
    """Signed self-crossing count of one component."""
    ana, dirs = _directions(front)
    _check_component(ana, component)
    comp = ana.seg_component
    return sum(
        1 if dirs[over] == dirs[under] else -1
        for _, over, under in ana.crossings
        if comp[over] == component and comp[under] == component
    )


def thurston_bennequin(front: OrientedFront, component: int = 0) -> int:
    """writhe - (cusp count)/2; reduces to -c/2 on crossing-free components."""
    return writhe(front, component) - cusp_count(front, component) // 2


def rotation(front: OrientedFront, component: int = 0) -> int:
    """Down-oriented left cusps minus up-oriented right cusps."""
    ana, dirs = _directions(front)
    _check_component(ana, component)
    comp = ana.seg_component
    down_left = sum(
        1 for _, u, _l in ana.lcusps if comp[u] == component and not dirs[u]
    )
    up_right = sum(
        1 for _, u, _l in ana.rcusps if comp[u] == component and not dirs[u]
    )
    return down_left - up_right


def linking_number(front: OrientedFront, comp_a: int, comp_b: int) -> int:
    """Half the signed count of crossings between two distinct components."""
    if comp_a == comp_b:
        raise SameComponent(f"linking number needs two components, got {comp_a} twice")
    ana, dirs = _directions(front)
    _check_component(ana, comp_a)
    _check_component(ana, comp_b)
    comp = ana.seg_component
    pair = {comp_a, comp_b}
    total = sum(
        1 if dirs[over] == dirs[under] else -1
        for _, over, under in ana.crossings
        if {comp[over], comp[under]} == pair
    )
    assert total % 2 == 0
    return total // 2


def standard_unknot() -> OrientedFront:
    """The two-cusp unknot front, tb = -1 and rot = 0."""
    return OrientedFront(FrontWord.from_events([(LCUSP, 1), (RCUSP, 1)]))


def stabilize(front: OrientedFront, component: int = 0, sign: str = "+") -> OrientedFront:
    """Add one zigzag: tb drops by 1, rot moves by +1 ('+') or -1 ('-').

    The zigzag is inserted immediately before the component's first
    right cusp, on that cusp's upper strand; whether it points up or
    down is decided by the strand's traversal direction so that the
    rotation number always moves in the requested direction.
    """
    if sign not in ("+", "-"):
        raise ValueError(f"stabilization sign must be '+' or '-', got {sign!r}")
    ana, dirs = _directions(front)
    _check_component(ana, component)
    comp = ana.seg_component
    idx, pos, upper = next(
        (idx, front.word.events[idx][1], u)
        for idx, u, _l in ana.rcusps
        if comp[u] == component
    )
    wants_down = (sign == "+") == dirs[upper]
    if wants_down:
        zigzag = [(LCUSP, pos + 1), (RCUSP, pos)]
    else:
        zigzag = [(LCUSP, pos), (RCUSP, pos + 1)]
    events = list(front.word.events)
    events[idx:idx] = zigzag
    return OrientedFront(FrontWord.from_events(events), front.orientations)


def realize_unknot(tb: int, rot: int) -> OrientedFront:
    """Unknot front with the prescribed invariants, built by stabilizing.

    Requires tb + |rot| <= -1 and rot = tb + 1 (mod 2); the tb = -n-1
    fronts realize exactly the rotation numbers -n, -n+2, ..., n.
    """
    if tb + abs(rot) > -1:
        raise UnrealizablePair(f"(tb, rot) = ({tb}, {rot}) violates tb + |rot| <= -1")
    if (rot - tb - 1) % 2 != 0:
        raise UnrealizablePair(f"(tb, rot) = ({tb}, {rot}) has the wrong parity")
    n = -tb - 1
    front = standard_unknot()
    for _ in range((n + rot) // 2):
        front = stabilize(front, 0, "+")
    for _ in range((n - rot) // 2):
        front = stabilize(front, 0, "-")
    return front
