"""Moebius functions and transforms, exact in rational arithmetic.

The single computational primitive is the defining recursion for the Moebius
function of a finite order; lattice transforms, unanimity bases and the
product rule on the bipolar extension are built on top of it. Memo caches
are created per call (or passed in explicitly), never global, so concurrent
evaluations need no coordination.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Callable, Hashable, Mapping, Sequence

from .birkhoff import DownsetLattice, disjoint_element_pairs
from .errors import (
    BaseMismatch,
    NotAnElement,
    NotComparable,
    NotInBipolarExtension,
)
from .poset import Poset
from .rationals import as_fraction

ZERO = Fraction(0)


class GeneralizedCapacity:
    """A rational value attached to every element of a downset lattice."""

    def __init__(self, lattice: DownsetLattice, values: Mapping):
        parsed = {}
        for key, raw in values.items():
            parsed[lattice.check_element(key)] = as_fraction(raw)
        missing = [e for e in lattice.elements if e not in parsed]
        if missing:
            raise BaseMismatch(
                f"missing values for {len(missing)} lattice elements,"
                f" e.g. {sorted(missing[0])!r}"
            )
        self.lattice = lattice
        self.values: dict[frozenset, Fraction] = {e: parsed[e] for e in lattice.elements}

    def __call__(self, x) -> Fraction:
        try:
            return self.values[frozenset(x)]
        except KeyError:
            raise NotAnElement(f"{sorted(frozenset(x))!r} is not a lattice element") from None

    def __repr__(self) -> str:
        return f"GeneralizedCapacity(on {len(self.values)} elements)"

    @property
    def is_game(self) -> bool:
        """True when the bottom element carries value zero."""
        return self.values[self.lattice.bottom] == 0

    @cached_property
    def is_monotone(self) -> bool:
        return all(
            self.values[a] <= self.values[b] for a, b in self.lattice.cover_pairs()
        )


class MoebiusVector:
    """Coordinates of a lattice functional in the unanimity basis."""

    def __init__(self, lattice: DownsetLattice, coefficients: Mapping):
        parsed = {}
        for key, raw in coefficients.items():
            parsed[lattice.check_element(key)] = as_fraction(raw)
        missing = [e for e in lattice.elements if e not in parsed]
        if missing:
            raise BaseMismatch(
                f"missing coefficients for {len(missing)} lattice elements"
            )
        self.lattice = lattice
        self.coefficients: dict[frozenset, Fraction] = {
            e: parsed[e] for e in lattice.elements
        }

    def __call__(self, x) -> Fraction:
        try:
            return self.coefficients[frozenset(x)]
        except KeyError:
            raise NotAnElement(f"{sorted(frozenset(x))!r} is not a lattice element") from None

    def __repr__(self) -> str:
        return f"MoebiusVector(on {len(self.coefficients)} elements)"


def rota_moebius(
    elements: Sequence[Hashable],
    leq: Callable[[Hashable, Hashable], bool],
    lower: Hashable,
    upper: Hashable,
    cache: dict | None = None,
) -> int:
    """Moebius function of a finite order via the defining recursion.

    ``cache`` may be shared across calls over the same order; keys are
    (lower, mid) pairs, so values computed for one interval are reused by
    every interval with the same bottom.
    """
    if lower == upper:
        return 1
    if not leq(lower, upper):
        raise NotComparable(f"{lower!r} is not below {upper!r}")
    if cache is None:
        cache = {}
    interval = [z for z in elements if leq(lower, z) and leq(z, upper)]

    def mu(z):
        if z == lower:
            return 1
        key = (lower, z)
        value = cache.get(key)
        if value is None:
            value = -sum(mu(t) for t in interval if t != z and leq(t, z))
            cache[key] = value
        return value

    return mu(upper)


def moebius_function(p: Poset, lower: str, upper: str, cache: dict | None = None) -> int:
    """Moebius function of a poset between two comparable elements."""
    p.leq(lower, upper)  # raises UnknownLabel early
    return rota_moebius(p.elements, p.leq, lower, upper, cache)


def lattice_moebius(
    lattice: DownsetLattice, lower, upper, cache: dict | None = None
) -> int:
    """Moebius function of the downset lattice itself (inclusion order)."""
    x = lattice.check_element(lower)
    y = lattice.check_element(upper)
    return rota_moebius(lattice.elements, frozenset.issubset, x, y, cache)


def moebius_transform(g: GeneralizedCapacity) -> MoebiusVector:
    """Coefficients of ``g`` in the unanimity basis; inverse of ``zeta_transform``."""
    lattice = g.lattice
    cache: dict = {}
    coefficients = {}
    for x in lattice.elements:
        acc = ZERO
        for y in lattice.elements:
            if y <= x:
                acc += g.values[y] * rota_moebius(
                    lattice.elements, frozenset.issubset, y, x, cache
                )
        coefficients[x] = acc
    return MoebiusVector(lattice, coefficients)


def zeta_transform(m: MoebiusVector) -> GeneralizedCapacity:
    """Accumulate coefficients upward: value at x sums m over elements below x."""
    lattice = m.lattice
    values = {
        x: sum((m.coefficients[y] for y in lattice.elements if y <= x), ZERO)
        for x in lattice.elements
    }
    return GeneralizedCapacity(lattice, values)


def unanimity(lattice: DownsetLattice, x) -> GeneralizedCapacity:
    """0-1 capacity equal to 1 exactly on the up-set of ``x``."""
    member = lattice.check_element(x)
    return GeneralizedCapacity(
        lattice, {e: int(member <= e) for e in lattice.elements}
    )


# bipolar side: functionals on pairs of disjoint elements under the product order


def check_bipolar_pair(lattice: DownsetLattice, pair) -> tuple[frozenset, frozenset]:
    pos, neg = pair
    pos = lattice.check_element(pos)
    neg = lattice.check_element(neg)
    if pos & neg:
        raise NotInBipolarExtension(
            f"parts are not disjoint: {sorted(pos & neg)!r}",
            overlap=sorted(pos & neg),
        )
    return pos, neg


def bipolar_moebius_function(
    lattice: DownsetLattice, lower, upper, cache: dict | None = None
) -> int:
    """Moebius function on the bipolar extension: the product of the two
    one-sided lattice values."""
    z, t = check_bipolar_pair(lattice, lower)
    x, y = check_bipolar_pair(lattice, upper)
    if not (z <= x and t <= y):
        raise NotComparable(f"{(z, t)!r} is not below {(x, y)!r}")
    if cache is None:
        cache = {}
    return rota_moebius(
        lattice.elements, frozenset.issubset, z, x, cache
    ) * rota_moebius(lattice.elements, frozenset.issubset, t, y, cache)


def _full_bipolar_table(lattice: DownsetLattice, values: Mapping) -> dict:
    table = {}
    for key, raw in values.items():
        table[check_bipolar_pair(lattice, key)] = as_fraction(raw)
    expected = disjoint_element_pairs(lattice)
    if len(table) != len(expected) or any(pair not in table for pair in expected):
        raise BaseMismatch(
            "values must cover the whole bipolar extension"
            f" ({len(expected)} pairs, got {len(table)})"
        )
    return table


def bipolar_moebius_transform(lattice: DownsetLattice, values: Mapping) -> dict:
    """Moebius coefficients of a functional given on the whole bipolar
    extension; inverse of :func:`bipolar_zeta_transform`."""
    table = _full_bipolar_table(lattice, values)
    cache: dict = {}
    out = {}
    for (x, y) in disjoint_element_pairs(lattice):
        acc = ZERO
        for (z, t), value in table.items():
            if z <= x and t <= y:
                acc += (
                    value
                    * rota_moebius(lattice.elements, frozenset.issubset, z, x, cache)
                    * rota_moebius(lattice.elements, frozenset.issubset, t, y, cache)
                )
        out[(x, y)] = acc
    return out


def bipolar_zeta_transform(lattice: DownsetLattice, coefficients: Mapping) -> dict:
    """Accumulate bipolar coefficients upward under the product order."""
    table = _full_bipolar_table(lattice, coefficients)
    out = {}
    for (x, y) in disjoint_element_pairs(lattice):
        out[(x, y)] = sum(
            (value for (z, t), value in table.items() if z <= x and t <= y), ZERO
        )
    return out


def bipolar_unanimity(lattice: DownsetLattice, pair) -> dict:
    """0-1 functional equal to 1 exactly on the up-set of ``pair`` in the
    bipolar extension."""
    x, y = check_bipolar_pair(lattice, pair)
    return {
        (a, b): Fraction(int(x <= a and y <= b))
        for (a, b) in disjoint_element_pairs(lattice)
    }
