"""Distributive lattices carried as families of downsets of a base poset.

Every finite distributive lattice is, up to isomorphism, the family of
downsets of the poset of its join-irreducible elements ordered by inclusion.
This module keeps that single representation everywhere: joins are unions,
meets are intersections, and explicitly presented lattices are converted at
the boundary by :func:`verify_distributive`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping

from .errors import NotALattice, NotAnElement, NotDistributive, SizeLimitExceeded
from .poset import Poset, all_downsets, downset_key


class DownsetLattice:
    """The lattice of all downsets of ``base``, ordered by inclusion.

    Bottom is the empty set, top is the whole ground set. Elements are
    enumerated lazily (first access to :attr:`elements`) and cached; a
    ``max_size`` cap guards the exponential family.
    """

    def __init__(self, base: Poset, max_size: int | None = None):
        self.base = base
        self._max_size = max_size

    @cached_property
    def elements(self) -> tuple[frozenset, ...]:
        return tuple(all_downsets(self.base, self._max_size))

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def bottom(self) -> frozenset:
        return frozenset()

    @cached_property
    def top(self) -> frozenset:
        return frozenset(self.base.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item) -> bool:
        try:
            return frozenset(item) in self._member_set
        except TypeError:
            return False

    def __eq__(self, other) -> bool:
        if not isinstance(other, DownsetLattice):
            return NotImplemented
        return self.base == other.base

    def __hash__(self) -> int:
        return hash(("DownsetLattice", self.base))

    def __repr__(self) -> str:
        return f"DownsetLattice(base={self.base!r})"

    def check_element(self, x) -> frozenset:
        member = frozenset(x)
        if member not in self._member_set:
            raise NotAnElement(
                f"{sorted(member)!r} is not a downset of the base poset",
                element=sorted(member),
            )
        return member

    def eta(self, x) -> frozenset:
        """Decomposition of ``x`` into the join-irreducibles at or below it.

        In downset form this is the identity; it exists so callers never
        bypass the canonical accessor (and so non-elements are rejected).
        """
        return self.check_element(x)

    def join(self, x, y) -> frozenset:
        return self.check_element(x) | self.check_element(y)

    def meet(self, x, y) -> frozenset:
        return self.check_element(x) & self.check_element(y)

    def leq(self, x, y) -> bool:
        """Inclusion order; arguments are trusted to be elements."""
        return frozenset(x) <= frozenset(y)

    def principal(self, j: str) -> frozenset:
        """The join-irreducible element attached to base element ``j``."""
        return self.base.below(j)

    @cached_property
    def join_irreducibles(self) -> tuple[frozenset, ...]:
        return tuple(
            sorted((self.principal(j) for j in self.base.elements), key=downset_key)
        )

    def cover_pairs(self) -> list[tuple[frozenset, frozenset]]:
        """All covering pairs (lower, upper); upper adds one base element."""
        out = []
        for d in self.elements:
            for j in self.base.elements:
                if j not in d and (self.base.below(j) - {j}) <= d:
                    out.append((d, d | {j}))
        return out

    def complemented(self) -> dict[frozenset, frozenset]:
        """Elements whose set complement is again a downset, with complements."""
        member = self._member_set
        top = self.top
        return {d: top - d for d in self.elements if (top - d) in member}


def disjoint_element_pairs(
    lattice: DownsetLattice,
) -> tuple[tuple[frozenset, frozenset], ...]:
    """All ordered pairs of disjoint lattice elements, canonically ordered."""
    elems = lattice.elements
    return tuple((a, b) for a in elems for b in elems if not (a & b))


@dataclass(frozen=True)
class BirkhoffForm:
    """Downset form of an explicitly given lattice, plus the dictionary
    sending each original element to its set of join-irreducibles."""

    lattice: DownsetLattice
    eta_map: Mapping[str, frozenset]


def verify_distributive(explicit: Poset) -> BirkhoffForm:
    """Convert an explicitly presented lattice to downset form.

    The input poset must be a lattice (all pairwise joins and meets exist).
    Join-irreducible elements — those covering exactly one element — are
    extracted with their induced order, and the lattice is distributive
    exactly when it has as many elements as that poset has downsets.
    """
    elems = explicit.elements
    n = len(elems)
    if n == 0:
        raise NotALattice("a lattice needs at least one element")
    for x in elems:
        for y in elems:
            _bound(explicit, x, y, upper=True)
            _bound(explicit, x, y, upper=False)
    irreducibles = [x for x in elems if len(explicit.lower_covers(x)) == 1]
    base = explicit.restrict(irreducibles)
    try:
        count = len(all_downsets(base, max_count=n))
    except SizeLimitExceeded:
        raise NotDistributive(
            f"the join-irreducible poset has more downsets than the lattice"
            f" has elements ({n})"
        ) from None
    if count != n:
        raise NotDistributive(
            f"lattice has {n} elements but the join-irreducible poset has"
            f" {count} downsets"
        )
    eta_map = {
        x: frozenset(j for j in irreducibles if explicit.leq(j, x)) for x in elems
    }
    return BirkhoffForm(DownsetLattice(base), eta_map)


def _bound(p: Poset, x: str, y: str, *, upper: bool) -> str:
    rel = p.leq
    if upper:
        shared = [z for z in p.elements if rel(x, z) and rel(y, z)]
        extremal = [z for z in shared if all(rel(z, w) for w in shared)]
    else:
        shared = [z for z in p.elements if rel(z, x) and rel(z, y)]
        extremal = [z for z in shared if all(rel(w, z) for w in shared)]
    if len(extremal) != 1:
        kind = "join" if upper else "meet"
        raise NotALattice(f"{x!r} and {y!r} have no {kind}", x=x, y=y)
    return extremal[0]


def explicit_poset(
    lattice: DownsetLattice, label: Callable[[frozenset], str] | None = None
) -> Poset:
    """Explicit element/cover presentation of the lattice (files, display)."""
    if label is None:
        label = lambda d: "{" + ",".join(sorted(d)) + "}"
    names = {d: label(d) for d in lattice.elements}
    covers = [(names[a], names[b]) for a, b in lattice.cover_pairs()]
    return Poset(names.values(), covers)
