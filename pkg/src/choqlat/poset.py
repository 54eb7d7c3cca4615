"""Finite posets over opaque string labels.

Covering pairs are the only stored relation; the full order is derived once
at construction and every value is immutable afterwards, so posets are cheap
to query and safe to share between concurrent evaluators. Covers must form a
transitive reduction: a cover implied by other covers is rejected instead of
silently dropped, which keeps file round trips byte-stable.
"""

from __future__ import annotations

import heapq
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

from .errors import (
    CycleDetected,
    DuplicateLabel,
    RedundantCover,
    SizeLimitExceeded,
    UnknownLabel,
)

# Default ceiling for downset enumeration; the family is exponential in the
# poset size and failing loudly beats exhausting memory.
DOWNSET_CAP = 10 ** 6


class Component(NamedTuple):
    """Connected component of the cover graph with its minimal elements."""

    members: frozenset
    minimals: frozenset


class Poset:
    """Immutable finite poset described by elements and covering pairs."""

    __slots__ = ("elements", "covers", "_below", "_uppers", "_lowers", "_topo")

    def __init__(self, elements: Iterable[str], covers: Iterable[Sequence[str]] = ()):
        labels: list[str] = []
        seen: set[str] = set()
        for label in elements:
            if not isinstance(label, str):
                raise UnknownLabel(f"labels must be strings, got {label!r}")
            if label in seen:
                raise DuplicateLabel(f"duplicate label {label!r}", label=label)
            seen.add(label)
            labels.append(label)

        pairs: set[tuple[str, str]] = set()
        for cover in covers:
            lower, upper = cover
            for label in (lower, upper):
                if label not in seen:
                    raise UnknownLabel(
                        f"cover references unknown label {label!r}", label=label
                    )
            if lower == upper:
                raise CycleDetected(f"self-cover on {lower!r}", label=lower)
            pairs.add((lower, upper))

        self.elements: tuple[str, ...] = tuple(sorted(labels))
        self.covers: frozenset[tuple[str, str]] = frozenset(pairs)

        uppers: dict[str, list[str]] = {x: [] for x in self.elements}
        lowers: dict[str, list[str]] = {x: [] for x in self.elements}
        for lower, upper in pairs:
            uppers[lower].append(upper)
            lowers[upper].append(lower)
        self._uppers = {x: tuple(sorted(ups)) for x, ups in uppers.items()}
        self._lowers = {x: tuple(sorted(lows)) for x, lows in lowers.items()}

        self._topo = self._toposort()

        below: dict[str, frozenset] = {}
        for x in self._topo:
            closure = {x}
            for lower in self._lowers[x]:
                closure |= below[lower]
            below[x] = frozenset(closure)
        self._below = below

        for lower, upper in pairs:
            between = below[upper] - {lower, upper}
            if any(lower in below[mid] for mid in between):
                raise RedundantCover(
                    f"cover ({lower!r}, {upper!r}) is implied by other covers",
                    lower=lower,
                    upper=upper,
                )

    def _toposort(self) -> tuple[str, ...]:
        indegree = {x: len(self._lowers[x]) for x in self.elements}
        ready = [x for x in self.elements if indegree[x] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            x = heapq.heappop(ready)
            order.append(x)
            for upper in self._uppers[x]:
                indegree[upper] -= 1
                if indegree[upper] == 0:
                    heapq.heappush(ready, upper)
        if len(order) != len(self.elements):
            raise CycleDetected("cover relation contains a cycle")
        return tuple(order)

    # queries

    def _check(self, label: str) -> str:
        if label not in self._below:
            raise UnknownLabel(f"unknown label {label!r}", label=label)
        return label

    def leq(self, x: str, y: str) -> bool:
        """True iff ``x`` is below or equal to ``y``."""
        self._check(x)
        return x in self._below[self._check(y)]

    def below(self, x: str) -> frozenset:
        """All elements at or below ``x`` (its principal downset)."""
        return self._below[self._check(x)]

    def upper_covers(self, x: str) -> tuple[str, ...]:
        return self._uppers[self._check(x)]

    def lower_covers(self, x: str) -> tuple[str, ...]:
        return self._lowers[self._check(x)]

    def minimals(self) -> tuple[str, ...]:
        return tuple(x for x in self.elements if not self._lowers[x])

    def restrict(self, members: Iterable[str]) -> "Poset":
        """Sub-poset induced on ``members``; covers are recomputed."""
        kept = sorted({self._check(label) for label in members})
        sub_leq = lambda a, b: a in self._below[b]
        return Poset(kept, reduce_order(kept, sub_leq))

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.elements, self.covers))

    def __repr__(self) -> str:
        return f"Poset({len(self.elements)} elements, {len(self.covers)} covers)"


def validate_poset(elements: Iterable[str], covers: Iterable[Sequence[str]]) -> Poset:
    """Build a poset, rejecting cycles, redundant covers and unknown labels."""
    return Poset(elements, covers)


def linear_extension(p: Poset) -> tuple[str, ...]:
    """Deterministic total order refining the poset order.

    Topological sort with lexicographic tie-breaking on labels; used as the
    canonical tie-break everywhere determinism matters.
    """
    return p._topo


def is_downset(p: Poset, members: Iterable[str]) -> bool:
    """True iff ``members`` is downward closed in ``p``."""
    kept = {p._check(label) for label in members}
    return all(p.below(label) <= kept for label in kept)


def downset_key(d: Iterable[str]) -> tuple:
    """Canonical sort key for downsets: size, then sorted labels."""
    labels = tuple(sorted(d))
    return (len(labels), labels)


def all_downsets(p: Poset, max_count: int | None = None) -> list[frozenset]:
    """Every downset of ``p`` exactly once, canonically ordered.

    Grows the family one element at a time along the linear extension;
    raises :class:`SizeLimitExceeded` as soon as the family would outgrow
    ``max_count`` (default ``DOWNSET_CAP``).
    """
    cap = DOWNSET_CAP if max_count is None else max_count
    family: list[frozenset] = [frozenset()]
    if len(family) > cap:
        raise SizeLimitExceeded(f"downset family exceeds cap {cap}", cap=cap)
    for label in linear_extension(p):
        required = p.below(label) - {label}
        grown = [d | {label} for d in family if required <= d]
        if len(family) + len(grown) > cap:
            raise SizeLimitExceeded(f"downset family exceeds cap {cap}", cap=cap)
        family.extend(grown)
    family.sort(key=downset_key)
    return family


def connected_components(p: Poset) -> tuple[Component, ...]:
    """Components of the comparability graph, each with its minimal elements.

    Ordered by smallest member label, so output is deterministic.
    """
    neighbours: dict[str, set[str]] = {x: set() for x in p.elements}
    for lower, upper in p.covers:
        neighbours[lower].add(upper)
        neighbours[upper].add(lower)
    unvisited = set(p.elements)
    out = []
    for seed in p.elements:
        if seed not in unvisited:
            continue
        unvisited.discard(seed)
        stack, members = [seed], set()
        while stack:
            x = stack.pop()
            members.add(x)
            for y in neighbours[x]:
                if y in unvisited:
                    unvisited.discard(y)
                    stack.append(y)
        minimals = frozenset(x for x in members if not p.lower_covers(x))
        out.append(Component(frozenset(members), minimals))
    return tuple(out)


def reduce_order(
    elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]
) -> list[tuple]:
    """Transitive reduction (covering pairs) of an explicit finite order."""
    covers = []
    for a in elements:
        for b in elements:
            if a == b or not leq(a, b):
                continue
            if any(c not in (a, b) and leq(a, c) and leq(c, b) for c in elements):
                continue
            covers.append((a, b))
    return covers
