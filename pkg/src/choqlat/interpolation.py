"""Profiles on a base poset and the piecewise-linear extension of vertex
functionals along the natural triangulation.

A profile is a nonincreasing map from the base poset into [0, 1]: a point of
the polytope whose vertices are indicators of downsets. Sorting the profile
values decreasingly picks a maximal chain of downsets whose simplex contains
the profile, and the extension of a vertex functional is the matching convex
combination of its vertex values. On an antichain base this is the classical
Choquet integral; the bottom vertex is always kept in the combination so
functionals that do not vanish at the empty set evaluate correctly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    BaseMismatch,
    NegativeScore,
    NotAnElement,
    NotMonotone,
    NotNonincreasing,
    NotZeroOne,
    ValueOutOfRange,
)
from .moebius import GeneralizedCapacity, MoebiusVector
from .poset import Poset, linear_extension
from .rationals import as_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class Profile:
    """Nonincreasing map from the base poset into [0, 1]."""

    def __init__(self, base: Poset, values: Mapping[str, object]):
        parsed = {label: as_fraction(raw) for label, raw in values.items()}
        if set(parsed) != set(base.elements):
            raise BaseMismatch(
                "profile labels must cover the base poset exactly",
                missing=sorted(set(base.elements) - set(parsed)),
                extra=sorted(set(parsed) - set(base.elements)),
            )
        for label, value in parsed.items():
            if not ZERO <= value <= ONE:
                raise ValueOutOfRange(
                    f"profile value {value} at {label!r} is outside [0, 1]",
                    label=label,
                )
        for lower, upper in base.covers:
            if parsed[lower] < parsed[upper]:
                raise NotNonincreasing(
                    f"profile increases along {lower!r} < {upper!r}",
                    lower=lower,
                    upper=upper,
                )
        self.base = base
        self.values: dict[str, Fraction] = {label: parsed[label] for label in base.elements}

    def __call__(self, label: str) -> Fraction:
        return self.values[label]

    def __repr__(self) -> str:
        return f"Profile(on {len(self.values)} elements)"


@dataclass(frozen=True)
class ChainDecomposition:
    """A profile written as a convex combination of chained downset vertices.

    ``chain[0]`` is the empty set and ``chain[i]`` adds ``order[i-1]``;
    ``weights`` are the simplex coordinates (nonnegative, summing to one),
    with ``weights[0]`` attached to the bottom vertex.
    """

    base: Poset
    order: tuple[str, ...]
    chain: tuple[frozenset, ...]
    weights: tuple[Fraction, ...]

    def reconstruct(self) -> dict[str, Fraction]:
        """Profile values implied by the decomposition (exact)."""
        out = {label: ZERO for label in self.base.elements}
        for vertex, weight in zip(self.chain, self.weights):
            for label in vertex:
                out[label] += weight
        return out


def triangulate(profile: Profile, tie_break: Sequence[str] | None = None) -> ChainDecomposition:
    """Chain-of-downsets decomposition of a profile.

    Elements are sorted by decreasing value; ties fall back to ``tie_break``
    (any linear extension of the base poset, the deterministic one by
    default). The extension value computed from the result never depends on
    the tie order, only the reported chain does.
    """
    base = profile.base
    if tie_break is None:
        tie_break = linear_extension(base)
    ranks = {label: i for i, label in enumerate(tie_break)}
    if set(ranks) != set(base.elements) or len(tie_break) != len(base.elements):
        raise BaseMismatch("tie_break must enumerate the base poset exactly")
    for lower, upper in base.covers:
        if ranks[lower] > ranks[upper]:
            raise NotNonincreasing(
                f"tie_break does not refine the base order at {lower!r} < {upper!r}"
            )
    order = sorted(base.elements, key=lambda label: (-profile.values[label], ranks[label]))
    chain = [frozenset()]
    weights = [ONE - (profile.values[order[0]] if order else ZERO)]
    running: set = set()
    for i, label in enumerate(order):
        running.add(label)
        chain.append(frozenset(running))
        nxt = profile.values[order[i + 1]] if i + 1 < len(order) else ZERO
        weights.append(profile.values[label] - nxt)
    return ChainDecomposition(base, tuple(order), tuple(chain), tuple(weights))


def natural_extension(functional: GeneralizedCapacity, profile: Profile) -> Fraction:
    """Piecewise-linear interpolation of a vertex functional at ``profile``.

    The convex combination of vertex values along the triangulating chain,
    bottom vertex included. Agrees with the functional on indicator
    profiles, and reduces to the classical Choquet integral of a game on an
    antichain base.
    """
    if functional.lattice.base != profile.base:
        raise BaseMismatch("capacity and profile are over different base posets")
    dec = triangulate(profile)
    return sum(
        (w * functional.values[v] for v, w in zip(dec.chain, dec.weights)), ZERO
    )


def _capacity_value(capacity, subset: frozenset) -> Fraction:
    if callable(capacity):
        return as_fraction(capacity(subset))
    try:
        return as_fraction(capacity[subset])
    except KeyError:
        raise NotAnElement(f"capacity not defined on {sorted(subset)!r}") from None


def choquet_classical(capacity, scores: Mapping[str, object]) -> Fraction:
    """Classical Choquet integral of nonnegative scores against a set function.

    ``capacity`` maps frozensets of score keys to numbers (mapping or
    callable); only the sets along the sorted chain are read. Scores may
    exceed 1: the formula is positively homogeneous.
    """
    parsed = {label: as_fraction(raw) for label, raw in scores.items()}
    for label, value in parsed.items():
        if value < 0:
            raise NegativeScore(f"score {value} at {label!r} is negative", label=label)
    order = sorted(parsed, key=lambda label: (-parsed[label], label))
    total = ZERO
    prefix: set = set()
    for i, label in enumerate(order):
        prefix.add(label)
        nxt = parsed[order[i + 1]] if i + 1 < len(order) else ZERO
        step = parsed[label] - nxt
        if step:
            total += step * _capacity_value(capacity, frozenset(prefix))
    return total


def zero_one_maxmin(functional: GeneralizedCapacity, profile: Profile) -> Fraction:
    """Max-min form of the extension for 0-1 valued nondecreasing functionals.

    Takes, over the downsets where the functional equals one, the minimum
    profile value inside each, and returns the largest such minimum. The
    empty downset contributes the empty-meet value 1; if the functional is
    identically zero the result is 0. Always equals ``natural_extension``.
    """
    if functional.lattice.base != profile.base:
        raise BaseMismatch("functional and profile are over different base posets")
    for element, value in functional.values.items():
        if value not in (0, 1):
            raise NotZeroOne(f"value {value} at {sorted(element)!r} is not 0 or 1")
    if not functional.is_monotone:
        raise NotMonotone("functional is not nondecreasing")
    best = ZERO
    for element, value in functional.values.items():
        if value == 1:
            inner = min((profile.values[j] for j in element), default=ONE)
            if inner > best:
                best = inner
    return best


def moebius_form_eval(vector: MoebiusVector, profile: Profile) -> Fraction:
    """Evaluate the extension from Moebius coefficients.

    Each lattice element contributes its coefficient times the minimum
    profile value over its decomposition; the bottom element contributes
    the bare coefficient (empty meet is 1). Equals ``natural_extension`` of
    the zeta transform.
    """
    if vector.lattice.base != profile.base:
        raise BaseMismatch("coefficients and profile are over different base posets")
    total = ZERO
    for element, coeff in vector.coefficients.items():
        if coeff:
            total += coeff * min((profile.values[j] for j in element), default=ONE)
    return total
