"""Bipolar extension of a distributive lattice: signed vertices, tiles,
mosaic structure, signed profiles and capacities, and the signed natural
extension.

The bipolar extension pairs two disjoint lattice elements, a positive and a
negative part, under the product order. For a complemented element the
interval below (x, complement) is a tile order-isomorphic to the whole
lattice; when every connected component of the base poset has a single
bottom element the tiles cover the entire extension (a "regular mosaic"),
and signed profiles can be evaluated by pulling them back to the unsigned
polytope through their tile.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, NamedTuple

from .birkhoff import DownsetLattice, disjoint_element_pairs
from .errors import (
    BaseMismatch,
    NotAnElement,
    NotComplemented,
    NotInBipolarExtension,
    NotInTile,
    NotNonincreasing,
    NotRegularMosaic,
    ProfileNotInAnyTile,
    SignConstraintViolated,
    SizeLimitExceeded,
    ValueOutOfRange,
)
from .interpolation import Profile, choquet_classical, triangulate
from .poset import DOWNSET_CAP, Poset, connected_components, is_downset
from .rationals import as_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class BipolarElement(NamedTuple):
    """Signed vertex: a positive and a negative part with empty meet."""

    pos: frozenset
    neg: frozenset


def bipolar_leq(a, b) -> bool:
    """Product order on signed elements."""
    return a[0] <= b[0] and a[1] <= b[1]


def bipolar_extension(
    lattice: DownsetLattice, max_size: int | None = None
) -> tuple[BipolarElement, ...]:
    """Enumerate the bipolar extension: all disjoint element pairs, in
    canonical order."""
    cap = DOWNSET_CAP if max_size is None else max_size
    out = []
    for pos, neg in disjoint_element_pairs(lattice):
        out.append(BipolarElement(pos, neg))
        if len(out) > cap:
            raise SizeLimitExceeded(f"bipolar extension exceeds cap {cap}", cap=cap)
    return tuple(out)


def bipolar_join_irreducibles(lattice: DownsetLattice) -> tuple[BipolarElement, ...]:
    """Join-irreducibles of the extension: the one-signed principal downsets."""
    empty = frozenset()
    out = [BipolarElement(d, empty) for d in lattice.join_irreducibles]
    out += [BipolarElement(empty, d) for d in lattice.join_irreducibles]
    return tuple(out)


def is_regular_mosaic(base: Poset) -> bool:
    """True iff every connected component of ``base`` has one minimal element.

    Exactly then is the bipolar extension the union of its tiles.
    """
    return all(len(c.minimals) == 1 for c in connected_components(base))


@dataclass(frozen=True)
class Tile:
    """Interval of the bipolar extension below (x, complement of x).

    ``phi`` collapses a signed element to its unsigned join, ``phi_inverse``
    splits an unsigned element along the complement pair; the two maps are
    mutually inverse order isomorphisms between the tile and the lattice.
    """

    lattice: DownsetLattice
    positive: frozenset
    negative: frozenset

    @cached_property
    def elements(self) -> tuple[BipolarElement, ...]:
        pos_parts = [d for d in self.lattice.elements if d <= self.positive]
        neg_parts = [d for d in self.lattice.elements if d <= self.negative]
        return tuple(BipolarElement(a, b) for a in pos_parts for b in neg_parts)

    def __contains__(self, pair) -> bool:
        try:
            pos, neg = pair
            return (
                frozenset(pos) in self.lattice
                and frozenset(neg) in self.lattice
                and frozenset(pos) <= self.positive
                and frozenset(neg) <= self.negative
            )
        except (TypeError, ValueError):
            return False

    def check_pair(self, pair) -> BipolarElement:
        pos, neg = pair
        pos = self.lattice.check_element(pos)
        neg = self.lattice.check_element(neg)
        if not (pos <= self.positive and neg <= self.negative):
            raise NotInTile(
                f"({sorted(pos)!r}, {sorted(neg)!r}) is outside the tile at"
                f" {sorted(self.positive)!r}"
            )
        return BipolarElement(pos, neg)

    def phi(self, pair) -> frozenset:
        """Unsigned element matching a signed tile element (their join)."""
        pos, neg = self.check_pair(pair)
        return pos | neg

    def phi_inverse(self, element) -> BipolarElement:
        """Signed tile element matching an unsigned element."""
        member = self.lattice.check_element(element)
        return BipolarElement(member & self.positive, member & self.negative)


def tile(lattice: DownsetLattice, x) -> Tile:
    """Tile of the bipolar extension attached to a complemented element."""
    member = lattice.check_element(x)
    complement = lattice.top - member
    if complement not in lattice:
        raise NotComplemented(
            f"{sorted(member)!r} has no complement", element=sorted(member)
        )
    return Tile(lattice, member, complement)


def psi(lattice: DownsetLattice, x, signed: Mapping[str, int]) -> BipolarElement:
    """Signed vertex (ternary map on the base) to element of the tile at x."""
    t = tile(lattice, x)
    base = lattice.base
    if set(signed) != set(base.elements):
        raise BaseMismatch("signed map must cover the base poset exactly")
    for label, value in signed.items():
        if value not in (-1, 0, 1):
            raise SignConstraintViolated(
                f"value {value!r} at {label!r} is not in {{-1, 0, 1}}", label=label
            )
        if value < 0 and label in t.positive:
            raise SignConstraintViolated(
                f"negative value on the positive side at {label!r}", label=label
            )
        if value > 0 and label in t.negative:
            raise SignConstraintViolated(
                f"positive value on the negative side at {label!r}", label=label
            )
    for lower, upper in base.covers:
        if abs(signed[lower]) < abs(signed[upper]):
            raise NotNonincreasing(
                f"|values| increase along {lower!r} < {upper!r}", lower=lower, upper=upper
            )
    pos = frozenset(label for label, value in signed.items() if value == 1)
    neg = frozenset(label for label, value in signed.items() if value == -1)
    return BipolarElement(pos, neg)


def psi_inverse(lattice: DownsetLattice, x, pair) -> dict[str, int]:
    """Element of the tile at x back to its signed vertex."""
    t = tile(lattice, x)
    pos, neg = t.check_pair(pair)
    return {
        label: (1 if label in pos else -1 if label in neg else 0)
        for label in lattice.base.elements
    }


class BipolarProfile:
    """Signed map on the base poset: values in [-1, 1], sizes nonincreasing."""

    def __init__(self, base: Poset, values: Mapping[str, object]):
        parsed = {label: as_fraction(raw) for label, raw in values.items()}
        if set(parsed) != set(base.elements):
            raise BaseMismatch(
                "profile labels must cover the base poset exactly",
                missing=sorted(set(base.elements) - set(parsed)),
                extra=sorted(set(parsed) - set(base.elements)),
            )
        for label, value in parsed.items():
            if not -ONE <= value <= ONE:
                raise ValueOutOfRange(
                    f"signed value {value} at {label!r} is outside [-1, 1]",
                    label=label,
                )
        for lower, upper in base.covers:
            if abs(parsed[lower]) < abs(parsed[upper]):
                raise NotNonincreasing(
                    f"|values| increase along {lower!r} < {upper!r}",
                    lower=lower,
                    upper=upper,
                )
        self.base = base
        self.values: dict[str, Fraction] = {label: parsed[label] for label in base.elements}

    def __call__(self, label: str) -> Fraction:
        return self.values[label]

    def __repr__(self) -> str:
        return f"BipolarProfile(on {len(self.values)} elements)"

    def magnitude(self) -> Profile:
        return Profile(self.base, {label: abs(v) for label, v in self.values.items()})


def admissible_vertex_pairs(
    lattice: DownsetLattice,
) -> tuple[BipolarElement, ...]:
    """Signed vertices lying in some tile: disjoint downset pairs whose
    supports touch disjoint sets of connected components.

    For a regular mosaic this is the whole bipolar extension; otherwise it
    is a strict subset (elements like two minimal points of one component on
    opposite signs belong to no tile).
    """
    comp_index: dict[str, int] = {}
    for i, comp in enumerate(connected_components(lattice.base)):
        for label in comp.members:
            comp_index[label] = i
    out = []
    for pos, neg in disjoint_element_pairs(lattice):
        if {comp_index[l] for l in pos} & {comp_index[l] for l in neg}:
            continue
        out.append(BipolarElement(pos, neg))
    return tuple(out)


class BipolarCapacity:
    """Rational values on every signed vertex that lies in some tile.

    One value per vertex globally: overlapping tiles share vertices by
    construction, so tile-consistency cannot be violated. Values on
    non-tile elements of a non-mosaic extension are deliberately not
    representable.
    """

    def __init__(self, base, values: Mapping, max_size: int | None = None):
        lattice = base if isinstance(base, DownsetLattice) else DownsetLattice(base, max_size)
        domain = admissible_vertex_pairs(lattice)
        domain_set = frozenset(domain)
        parsed = {}
        for key, raw in values.items():
            pos, neg = key
            pair = BipolarElement(lattice.check_element(pos), lattice.check_element(neg))
            if pair.pos & pair.neg:
                raise NotInBipolarExtension(
                    f"parts are not disjoint: {sorted(pair.pos & pair.neg)!r}",
                    overlap=sorted(pair.pos & pair.neg),
                )
            if pair not in domain_set:
                raise NotInTile(
                    f"({sorted(pair.pos)!r}, {sorted(pair.neg)!r}) lies in no tile",
                    pos=sorted(pair.pos),
                    neg=sorted(pair.neg),
                )
            parsed[pair] = as_fraction(raw)
        if len(parsed) != len(domain):
            missing = [p for p in domain if p not in parsed]
            raise BaseMismatch(
                f"missing values for {len(missing)} signed vertices, e.g."
                f" ({sorted(missing[0].pos)!r}, {sorted(missing[0].neg)!r})"
            )
        self.lattice = lattice
        self.base = lattice.base
        self.values: dict[BipolarElement, Fraction] = {p: parsed[p] for p in domain}

    def __call__(self, pair) -> Fraction:
        pos, neg = pair
        key = BipolarElement(frozenset(pos), frozenset(neg))
        try:
            return self.values[key]
        except KeyError:
            raise NotAnElement(
                f"({sorted(key.pos)!r}, {sorted(key.neg)!r}) is not a stored vertex"
            ) from None

    def __repr__(self) -> str:
        return f"BipolarCapacity(on {len(self.values)} signed vertices)"

    @property
    def is_game(self) -> bool:
        return self.values[BipolarElement(frozenset(), frozenset())] == 0

    @cached_property
    def is_monotone(self) -> bool:
        """Nondecreasing in the positive part, nonincreasing in the negative."""
        stored = self.values
        for (pos, neg), value in stored.items():
            for j in self.base.elements:
                grown_pos = BipolarElement(pos | {j}, neg)
                if j not in pos and grown_pos in stored and stored[grown_pos] < value:
                    return False
                grown_neg = BipolarElement(pos, neg | {j})
                if j not in neg and grown_neg in stored and stored[grown_neg] > value:
                    return False
        return True

    def check_normalized(self) -> bool:
        """Optional normalization: 1 at (top, bottom) and -1 at (bottom, top)."""
        top = self.lattice.top
        empty = frozenset()
        return (
            self.values[BipolarElement(top, empty)] == 1
            and self.values[BipolarElement(empty, top)] == -1
        )


def select_tile(profile: BipolarProfile) -> frozenset:
    """Positive side of a tile containing the signed profile.

    A connected component goes to the positive side exactly when it carries
    no strictly negative value (so all-zero components count as positive);
    a component carrying both strict signs lies in no tile.
    """
    base = profile.base
    if not is_regular_mosaic(base):
        raise NotRegularMosaic("tile selection needs single-bottom components")
    positive: set = set()
    for comp in connected_components(base):
        has_pos = any(profile.values[l] > 0 for l in comp.members)
        has_neg = any(profile.values[l] < 0 for l in comp.members)
        if has_pos and has_neg:
            raise ProfileNotInAnyTile(
                f"component {sorted(comp.members)!r} carries both signs",
                component=sorted(comp.members),
            )
        if not has_neg:
            positive |= comp.members
    return frozenset(positive)


def _checked_tile(profile: BipolarProfile, x) -> frozenset:
    base = profile.base
    member = frozenset(x)
    complement = frozenset(base.elements) - member
    if not (is_downset(base, member) and is_downset(base, complement)):
        raise NotComplemented(
            f"{sorted(member)!r} is not a complemented element", element=sorted(member)
        )
    for label, value in profile.values.items():
        if value > 0 and label not in member:
            raise NotInTile(f"strictly positive value at {label!r} outside the tile")
        if value < 0 and label in member:
            raise NotInTile(f"strictly negative value at {label!r} inside the tile")
    return member


@dataclass(frozen=True)
class BipolarEvaluation:
    """Value of the signed extension together with its decomposition."""

    value: Fraction
    tile: frozenset
    order: tuple[str, ...]
    chain: tuple[BipolarElement, ...]
    weights: tuple[Fraction, ...]


def evaluate_bipolar(
    capacity: BipolarCapacity, profile: BipolarProfile, tile_hint=None
) -> BipolarEvaluation:
    """Signed natural extension with its full decomposition.

    The profile is pulled back to the unsigned polytope through its tile:
    triangulate the magnitude profile, split every chain vertex along the
    complement pair, and take the convex combination of stored vertex
    values, bottom vertex included. ``tile_hint`` forces a particular tile
    (it must contain the profile); the value does not depend on the
    admissible choice.
    """
    if capacity.base != profile.base:
        raise BaseMismatch("capacity and profile are over different base posets")
    if not is_regular_mosaic(profile.base):
        raise NotRegularMosaic("signed evaluation needs a regular mosaic base")
    positive = select_tile(profile) if tile_hint is None else _checked_tile(profile, tile_hint)
    negative = frozenset(profile.base.elements) - positive
    dec = triangulate(profile.magnitude())
    chain = tuple(BipolarElement(v & positive, v & negative) for v in dec.chain)
    value = sum(
        (w * capacity.values[p] for p, w in zip(chain, dec.weights)), ZERO
    )
    return BipolarEvaluation(value, positive, dec.order, chain, dec.weights)


def bipolar_natural_extension(
    capacity: BipolarCapacity, profile: BipolarProfile, tile_hint=None
) -> Fraction:
    """Value of the signed natural extension (see :func:`evaluate_bipolar`)."""
    return evaluate_bipolar(capacity, profile, tile_hint).value


def bicapacity_choquet(values, scores: Mapping[str, object]) -> Fraction:
    """Signed Choquet integral on a plain index set.

    ``values`` maps pairs of disjoint frozensets of the score keys to
    numbers (a :class:`BipolarCapacity` over an antichain base works too).
    The keys split by score sign (zero counts as positive), the induced
    one-sided game reads the pair table along that split, and |scores| is
    integrated classically against it.
    """
    table = values.values if isinstance(values, BipolarCapacity) else values
    parsed = {label: as_fraction(raw) for label, raw in scores.items()}
    plus = frozenset(label for label, value in parsed.items() if value >= 0)
    minus = frozenset(parsed) - plus

    def induced(subset: frozenset) -> Fraction:
        key = (subset & plus, subset & minus)
        try:
            return table[key]
        except KeyError:
            raise NotAnElement(
                f"pair table not defined at ({sorted(key[0])!r}, {sorted(key[1])!r})"
            ) from None

    return choquet_classical(induced, {label: abs(v) for label, v in parsed.items()})


def bipolar_moebius_form_eval(
    coefficients: Mapping, profile: BipolarProfile
) -> Fraction:
    """Evaluate the signed extension from Moebius coefficients on the
    bipolar extension.

    Each signed element contributes its coefficient times the joint minimum
    of the positive part of the profile over its positive side and of the
    negative part over its negative side; empty sides contribute the
    empty-meet value 1. Equals ``bipolar_natural_extension`` when the
    coefficients are the bipolar Moebius transform of the capacity.
    """
    values = profile.values
    known = set(profile.base.elements)
    total = ZERO
    for (pos, neg), raw in coefficients.items():
        coeff = as_fraction(raw)
        if not (set(pos) <= known and set(neg) <= known):
            raise BaseMismatch("coefficient keys mention labels outside the base")
        if not coeff:
            continue
        plus = min((max(values[j], ZERO) for j in pos), default=ONE)
        minus = min((max(-values[j], ZERO) for j in neg), default=ONE)
        total += coeff * min(plus, minus)
    return total


def embed_profile(profile: Profile, x) -> BipolarProfile:
    """Signed copy of an unsigned profile whose tile is ``x``: values keep
    their size and take the sign of the side of the complement pair."""
    base = profile.base
    member = frozenset(x)
    complement = frozenset(base.elements) - member
    if not (is_downset(base, member) and is_downset(base, complement)):
        raise NotComplemented(
            f"{sorted(member)!r} is not a complemented element", element=sorted(member)
        )
    signed = {
        label: (value if label in member else -value)
        for label, value in profile.values.items()
    }
    return BipolarProfile(base, signed)
