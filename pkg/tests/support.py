"""Shared generators and fixtures for the test suite.

Hypothesis strategies cover the property tests; the plain ``random.Random``
helpers drive the seeded bulk runs in the acceptance module.
"""

from __future__ import annotations

from fractions import Fraction
import random

from hypothesis import strategies as st

import choqlat as cq


def wedge_poset() -> cq.Poset:
    """Three elements, one top covering two incomparable bottoms."""
    return cq.Poset(["a", "b", "c"], [("a", "b"), ("c", "b")])


def antichain(n: int) -> cq.Poset:
    return cq.Poset([str(i) for i in range(1, n + 1)], [])


def chain(m: int) -> cq.Poset:
    labels = [f"x{i}" for i in range(m)]
    return cq.Poset(labels, list(zip(labels, labels[1:])))


def poset_from_ranked_flags(labels, ranking, flags) -> cq.Poset:
    """Poset from a hidden ranking and one comparability flag per index pair.

    The flagged pairs are transitively closed, then reduced to covers, so
    the result is always a valid poset.
    """
    n = len(labels)
    rel = [[False] * n for _ in range(n)]
    position = {x: i for i, x in enumerate(ranking)}
    flat = iter(flags)
    for i in range(n):
        for j in range(i + 1, n):
            lo, hi = (i, j) if position[i] < position[j] else (j, i)
            if next(flat):
                rel[lo][hi] = True
    for mid in range(n):
        for lo in range(n):
            if rel[lo][mid]:
                for hi in range(n):
                    if rel[mid][hi]:
                        rel[lo][hi] = True
    covers = []
    for lo in range(n):
        for hi in range(n):
            if rel[lo][hi] and not any(rel[lo][m] and rel[m][hi] for m in range(n)):
                covers.append((labels[lo], labels[hi]))
    return cq.Poset(labels, covers)


@st.composite
def posets(draw, min_elements=0, max_elements=5):
    n = draw(st.integers(min_value=min_elements, max_value=max_elements))
    labels = [f"p{i}" for i in range(n)]
    ranking = draw(st.permutations(range(n)))
    flags = draw(
        st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2)
    )
    return poset_from_ranked_flags(labels, ranking, flags)


@st.composite
def lattices(draw, min_elements=0, max_elements=5):
    return cq.DownsetLattice(draw(posets(min_elements, max_elements)))


unit_fractions = st.fractions(min_value=0, max_value=1, max_denominator=12)
small_fractions = st.fractions(min_value=-2, max_value=2, max_denominator=8)


def nonincreasing(base: cq.Poset, raw: dict) -> dict:
    """Largest value over each up-set; always a valid profile shape."""
    return {
        j: max(raw[x] for x in base.elements if base.leq(j, x))
        for j in base.elements
    }


@st.composite
def profiles(draw, base: cq.Poset):
    raw = {label: draw(unit_fractions) for label in base.elements}
    return cq.Profile(base, nonincreasing(base, raw))


@st.composite
def capacities(draw, lattice: cq.DownsetLattice, game=False):
    values = {element: draw(small_fractions) for element in lattice.elements}
    if game:
        values[lattice.bottom] = Fraction(0)
    return cq.GeneralizedCapacity(lattice, values)


# plain-random helpers for seeded bulk runs


def random_poset(rng: random.Random, n: int, edge_chance=0.4) -> cq.Poset:
    labels = [f"p{i}" for i in range(n)]
    ranking = list(range(n))
    rng.shuffle(ranking)
    flags = [rng.random() < edge_chance for _ in range(n * (n - 1) // 2)]
    return poset_from_ranked_flags(labels, ranking, flags)


def random_fraction(rng: random.Random, low=-2, high=2, denominator=12) -> Fraction:
    return Fraction(rng.randint(low * denominator, high * denominator), denominator)


def random_profile(rng: random.Random, base: cq.Poset, denominator=10) -> cq.Profile:
    raw = {
        label: Fraction(rng.randint(0, denominator), denominator)
        for label in base.elements
    }
    return cq.Profile(base, nonincreasing(base, raw))


def random_capacity(
    rng: random.Random, lattice: cq.DownsetLattice, game=False
) -> cq.GeneralizedCapacity:
    values = {element: random_fraction(rng) for element in lattice.elements}
    if game:
        values[lattice.bottom] = Fraction(0)
    return cq.GeneralizedCapacity(lattice, values)


def random_monotone01(rng: random.Random, lattice: cq.DownsetLattice) -> cq.GeneralizedCapacity:
    """Pointwise maximum of a few unanimity functionals (or the zero one)."""
    generators = [
        rng.choice(lattice.elements) for _ in range(rng.randint(0, 3))
    ]
    values = {
        element: int(any(g <= element for g in generators))
        for element in lattice.elements
    }
    return cq.GeneralizedCapacity(lattice, values)


def random_signed_profile(
    rng: random.Random, base: cq.Poset, denominator=10
) -> cq.BipolarProfile:
    magnitude = random_profile(rng, base, denominator)
    signed = dict(magnitude.values)
    for component in cq.connected_components(base):
        if rng.random() < 0.5:
            for label in component.members:
                signed[label] = -signed[label]
    return cq.BipolarProfile(base, signed)


def random_bipolar_capacity(
    rng: random.Random, lattice: cq.DownsetLattice, game=False
) -> cq.BipolarCapacity:
    values = {
        pair: random_fraction(rng) for pair in cq.admissible_vertex_pairs(lattice)
    }
    if game:
        values[cq.BipolarElement(frozenset(), frozenset())] = Fraction(0)
    return cq.BipolarCapacity(lattice, values)


def random_linear_extension(rng: random.Random, base: cq.Poset) -> tuple[str, ...]:
    """Uniformly shuffled topological order (for tie-break invariance tests)."""
    remaining = {label: len(base.lower_covers(label)) for label in base.elements}
    ready = [label for label, degree in remaining.items() if degree == 0]
    order = []
    while ready:
        label = ready.pop(rng.randrange(len(ready)))
        order.append(label)
        for upper in base.upper_covers(label):
            remaining[upper] -= 1
            if remaining[upper] == 0:
                ready.append(upper)
    return tuple(order)


def mosaic_bases() -> list[cq.Poset]:
    """Mixed bag of single-bottom-component bases."""
    forest = cq.Poset(
        ["r", "s", "t", "u", "v"],
        [("r", "s"), ("r", "t"), ("u", "v")],
    )
    return [
        antichain(2),
        antichain(3),
        antichain(4),
        cq.build_kary_base(3, 2),
        cq.build_kary_base(4, 2),
        cq.build_kary_base(3, 3),
        cq.build_kary_base(2, 4),
        forest,
    ]
