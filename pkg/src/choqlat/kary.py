"""Products of chains as base structure: multi-level capacities, level
indexing against a numeric reference scale, and closed interpolation
formulas for scoring points of the score space.

The base poset for k levels and n criteria is a disjoint union of n chains
with k-1 elements each; a point of the k^n grid corresponds to the downset
of levels it dominates. A score vector is located inside a mesh cell, split
into per-criterion level indices and residues, and scored by interpolating
the capacity at the surrounding mesh nodes. The sorted-residue sweep, the
staircase-profile evaluation and the generic natural extension all give the
same number; the signed variants mirror the construction on a symmetric
scale around 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .bipolar import BipolarCapacity, BipolarElement, BipolarProfile, evaluate_bipolar
from .errors import (
    BaseMismatch,
    InvalidDimensions,
    NotStaircase,
    OutOfScale,
)
from .interpolation import Profile, triangulate
from .moebius import GeneralizedCapacity
from .poset import Poset
from .rationals import as_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def level_label(criterion: int, level: int) -> str:
    """Label of the join-irreducible "criterion reaches at least level"."""
    return f"c{criterion}l{level}"


def label_parts(label: str) -> tuple[int, int]:
    """(criterion, level) encoded in a base label."""
    criterion, sep, level = label[1:].partition("l")
    if label[:1] != "c" or not sep or not criterion.isdigit() or not level.isdigit():
        raise InvalidDimensions(f"label {label!r} does not encode a grid level")
    return int(criterion), int(level)


def build_kary_base(k: int, n: int) -> Poset:
    """Disjoint union of n chains with k-1 levels each."""
    if k < 2 or n < 1:
        raise InvalidDimensions(f"need k >= 2 and n >= 1, got k={k}, n={n}", k=k, n=n)
    elements = [level_label(i, l) for i in range(1, n + 1) for l in range(1, k)]
    covers = [
        (level_label(i, l), level_label(i, l + 1))
        for i in range(1, n + 1)
        for l in range(1, k - 1)
    ]
    return Poset(elements, covers)


def grid_shape(base: Poset) -> tuple[int, int]:
    """(k, n) of a chain-product base; rejects any other poset."""
    criteria = set()
    top_level = 0
    for label in base.elements:
        criterion, level = label_parts(label)
        criteria.add(criterion)
        top_level = max(top_level, level)
    k, n = top_level + 1, max(criteria, default=0)
    if n == 0 or base != build_kary_base(k, n):
        raise InvalidDimensions("base poset is not a chain product")
    return k, n


def node_to_downset(node: Sequence[int], k: int) -> frozenset:
    """Downset of the base poset matching a grid point."""
    out = set()
    for i, level in enumerate(node, start=1):
        if not 0 <= level <= k - 1:
            raise InvalidDimensions(
                f"node coordinate {level} of criterion {i} outside 0..{k - 1}"
            )
        out.update(level_label(i, l) for l in range(1, level + 1))
    return frozenset(out)


def downset_to_node(downset, n: int) -> tuple[int, ...]:
    """Grid point matching a downset of the base poset."""
    levels = [0] * n
    for label in downset:
        criterion, level = label_parts(label)
        levels[criterion - 1] = max(levels[criterion - 1], level)
    return tuple(levels)


@dataclass(frozen=True)
class ReferenceScale:
    """Strictly increasing anchor scores, one per level.

    Symmetric scales must contain 0 with equally many levels on each side;
    signed level indices then count away from the neutral entry.
    """

    levels: tuple[Fraction, ...]
    symmetric: bool = False

    def __post_init__(self):
        levels = tuple(as_fraction(v) for v in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) < 2:
            raise InvalidDimensions("a scale needs at least two levels")
        if any(a >= b for a, b in zip(levels, levels[1:])):
            raise InvalidDimensions("scale levels must be strictly increasing")
        if self.symmetric:
            if len(levels) % 2 == 0:
                raise InvalidDimensions("symmetric scales have an odd level count")
            if levels[len(levels) // 2] != 0:
                raise InvalidDimensions("symmetric scales are centred on 0")

    @property
    def k(self) -> int:
        """Number of levels on one side of the scale (grid arity)."""
        return (len(self.levels) + 1) // 2 if self.symmetric else len(self.levels)

    def rho(self, index: int) -> Fraction:
        """Anchor score at a signed level index (0 is the base level)."""
        offset = len(self.levels) // 2 if self.symmetric else 0
        position = offset + index
        if not 0 <= position < len(self.levels):
            raise OutOfScale(f"level index {index} outside the scale", index=index)
        return self.levels[position]


@dataclass(frozen=True)
class LevelIndexing:
    """Mesh-cell location of a score point: per-criterion level index in
    1..k-1 and residue in [0, 1], plus the criteria sorted by residue."""

    indices: tuple[int, ...]
    residues: tuple[Fraction, ...]
    order: tuple[int, ...]

    @property
    def prefix_size(self) -> int:
        """Number of grid levels fully passed on all criteria combined."""
        return sum(i - 1 for i in self.indices)


def _residue_order(residues: Sequence[Fraction]) -> tuple[int, ...]:
    return tuple(
        sorted(range(1, len(residues) + 1), key=lambda i: (-residues[i - 1], i))
    )


def _locate(value: Fraction, scale: ReferenceScale, sign: int) -> tuple[int, Fraction]:
    """Level index and residue of one coordinate on one side of the scale.

    Takes the lowest admissible interval, so residues are 1 at interior mesh
    nodes and 0 only at the neutral end of the side.
    """
    for j in range(1, scale.k):
        anchor = scale.rho(sign * j)
        if (value <= anchor) if sign > 0 else (value >= anchor):
            previous = scale.rho(sign * (j - 1))
            return j, (value - previous) / (anchor - previous)
    raise OutOfScale(f"{value} is outside the scale range")


def locate_point(point: Sequence, scale: ReferenceScale) -> LevelIndexing:
    """Mesh-cell location of a score point on a one-sided scale."""
    if scale.symmetric:
        raise InvalidDimensions("locate_point expects a one-sided scale")
    values = [as_fraction(v) for v in point]
    if not values:
        raise InvalidDimensions("a point needs at least one coordinate")
    low, high = scale.levels[0], scale.levels[-1]
    indices, residues = [], []
    for i, value in enumerate(values, start=1):
        if not low <= value <= high:
            raise OutOfScale(
                f"coordinate {value} of criterion {i} outside [{low}, {high}]",
                criterion=i,
            )
        index, residue = _locate(value, scale, 1)
        indices.append(index)
        residues.append(residue)
    return LevelIndexing(tuple(indices), tuple(residues), _residue_order(residues))


def _staircase_values(
    k: int, n: int, indices: Sequence[int], residues: Sequence[Fraction]
) -> dict[str, Fraction]:
    out = {}
    for i in range(1, n + 1):
        index, residue = indices[i - 1], residues[i - 1]
        for l in range(1, k):
            out[level_label(i, l)] = ONE if l < index else residue if l == index else ZERO
    return out


def level_profile(point: Sequence, scale: ReferenceScale) -> tuple[LevelIndexing, Profile]:
    """Locate a score point in the mesh and build its staircase profile.

    The staircase is 1 on levels strictly below the located index, the
    residue at the index and 0 above; its natural extension equals the
    closed interpolation formulas.
    """
    indexing = locate_point(point, scale)
    n = len(indexing.indices)
    base = build_kary_base(scale.k, n)
    return indexing, Profile(
        base, _staircase_values(scale.k, n, indexing.indices, indexing.residues)
    )


def _corner_sweep(
    read_corner: Callable[[frozenset], Fraction],
    residues: Sequence[Fraction],
    order: Sequence[int],
) -> Fraction:
    """Sorted sweep over residues against lazily read mesh corners.

    The corner with no criterion raised enters with weight 1 minus the top
    residue, so corners with nonzero value at the resting point are kept.
    """
    total = (ONE - residues[order[0] - 1]) * read_corner(frozenset())
    prefix: set = set()
    for position, criterion in enumerate(order):
        prefix.add(criterion)
        nxt = residues[order[position + 1] - 1] if position + 1 < len(order) else ZERO
        step = residues[criterion - 1] - nxt
        if step:
            total += step * read_corner(frozenset(prefix))
    return total


def interpolate_point(
    capacity: GeneralizedCapacity, point: Sequence, scale: ReferenceScale
) -> Fraction:
    """Score a point by interpolating the capacity at the surrounding mesh
    nodes (the corner-capacity form of the extension).

    Reads the 2^n corner values lazily rather than materialising a local
    capacity. Returns the capacity value itself at mesh nodes.
    """
    k, n = grid_shape(capacity.lattice.base)
    if scale.symmetric or scale.k != k:
        raise InvalidDimensions(
            f"scale has {scale.k} levels but the capacity grid has {k}"
        )
    indexing = locate_point(point, scale)
    if len(indexing.indices) != n:
        raise InvalidDimensions(f"point has {len(indexing.indices)} coordinates, grid has {n}")
    prefix = _staircase_prefix(indexing.indices, n)

    def read_corner(raised: frozenset) -> Fraction:
        node = prefix | {
            level_label(i, indexing.indices[i - 1]) for i in raised
        }
        return capacity.values[frozenset(node)]

    return _corner_sweep(read_corner, indexing.residues, indexing.order)


def _staircase_prefix(indices: Sequence[int], n: int) -> set:
    return {
        level_label(i, l)
        for i in range(1, n + 1)
        for l in range(1, indices[i - 1])
    }


def _parse_staircase(chain_values: Sequence[Fraction]) -> tuple[int, Fraction]:
    ones = 0
    while ones < len(chain_values) and chain_values[ones] == ONE:
        ones += 1
    if ones == len(chain_values):
        return ones, ONE
    index, residue = ones + 1, chain_values[ones]
    if any(v != 0 for v in chain_values[ones + 1:]):
        raise NotStaircase(
            "per-criterion values must look like 1..1, residue, 0..0"
        )
    return index, residue


def staircase_eval(capacity: GeneralizedCapacity, profile: Profile) -> Fraction:
    """Closed n-step form of the extension for staircase profiles.

    Each criterion's chain must read 1..1, residue, 0..0; the residue slot
    is parsed deterministically as the first level below 1. Equals the
    generic natural extension of the same profile.
    """
    k, n = grid_shape(capacity.lattice.base)
    if profile.base != capacity.lattice.base:
        raise BaseMismatch("capacity and profile are over different base posets")
    indices, residues = [], []
    for i in range(1, n + 1):
        index, residue = _parse_staircase(
            [profile.values[level_label(i, l)] for l in range(1, k)]
        )
        indices.append(index)
        residues.append(residue)
    prefix = _staircase_prefix(indices, n)

    def read_corner(raised: frozenset) -> Fraction:
        node = prefix | {level_label(i, indices[i - 1]) for i in raised}
        return capacity.values[frozenset(node)]

    return _corner_sweep(read_corner, residues, _residue_order(residues))


@dataclass(frozen=True)
class KaryEvaluation:
    """Extension value on a chain-product base plus the sorted-step report."""

    value: Fraction
    levels: tuple[int, ...]
    criteria: tuple[int, ...]
    nodes: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...]


def kary_choquet(capacity: GeneralizedCapacity, profile: Profile) -> KaryEvaluation:
    """Natural extension on a chain-product base, reporting the sorted pass.

    ``levels[i]``/``criteria[i]`` decode the i-th element of the sorted
    order; ``nodes`` renders the triangulating chain as grid points, bottom
    first, matching ``weights``.
    """
    k, n = grid_shape(capacity.lattice.base)
    if profile.base != capacity.lattice.base:
        raise BaseMismatch("capacity and profile are over different base posets")
    dec = triangulate(profile)
    value = sum(
        (w * capacity.values[v] for v, w in zip(dec.chain, dec.weights)), ZERO
    )
    parts = [label_parts(label) for label in dec.order]
    return KaryEvaluation(
        value=value,
        levels=tuple(level for _, level in parts),
        criteria=tuple(criterion for criterion, _ in parts),
        nodes=tuple(downset_to_node(v, n) for v in dec.chain),
        weights=dec.weights,
    )


# signed variants on a symmetric scale


def bipolar_level_profile(
    point: Sequence, scale: ReferenceScale
) -> tuple[frozenset, LevelIndexing, BipolarProfile]:
    """Locate a signed score point: the set of nonnegative criteria, the
    per-side mesh indices and residues, and the signed staircase profile."""
    if not scale.symmetric:
        raise InvalidDimensions("signed location needs a symmetric scale")
    values = [as_fraction(v) for v in point]
    if not values:
        raise InvalidDimensions("a point needs at least one coordinate")
    k = scale.k
    low, high = scale.rho(-(k - 1)), scale.rho(k - 1)
    indices, residues, positive = [], [], set()
    for i, value in enumerate(values, start=1):
        if not low <= value <= high:
            raise OutOfScale(
                f"coordinate {value} of criterion {i} outside [{low}, {high}]",
                criterion=i,
            )
        sign = 1 if value >= 0 else -1
        if sign > 0:
            positive.add(i)
        index, residue = _locate(value, scale, sign)
        indices.append(index)
        residues.append(residue)
    indexing = LevelIndexing(tuple(indices), tuple(residues), _residue_order(residues))
    n = len(values)
    base = build_kary_base(k, n)
    magnitudes = _staircase_values(k, n, indices, residues)
    signed = {
        label: (v if label_parts(label)[0] in positive else -v)
        for label, v in magnitudes.items()
    }
    return frozenset(positive), indexing, BipolarProfile(base, signed)


def interpolate_signed_point(
    capacity: BipolarCapacity, point: Sequence, scale: ReferenceScale
) -> Fraction:
    """Score a signed point against a bipolar capacity on the grid.

    Criteria split by score sign (zero counts as positive); mesh corners are
    read as signed vertices split along that tile.
    """
    k, n = grid_shape(capacity.base)
    if not scale.symmetric or scale.k != k:
        raise InvalidDimensions(
            f"need a symmetric scale with {k} levels per side"
        )
    positive, indexing, _ = bipolar_level_profile(point, scale)
    if len(indexing.indices) != n:
        raise InvalidDimensions(f"point has {len(indexing.indices)} coordinates, grid has {n}")
    positive_labels = {
        level_label(i, l) for i in positive for l in range(1, k)
    }
    prefix = _staircase_prefix(indexing.indices, n)

    def read_corner(raised: frozenset) -> Fraction:
        node = prefix | {level_label(i, indexing.indices[i - 1]) for i in raised}
        return capacity.values[
            BipolarElement(
                frozenset(node) & frozenset(positive_labels),
                frozenset(node) - frozenset(positive_labels),
            )
        ]

    return _corner_sweep(read_corner, indexing.residues, indexing.order)


@dataclass(frozen=True)
class BipolarKaryEvaluation:
    """Signed extension value on a chain-product base with the sorted-step
    report and the selected tile as a set of criteria."""

    value: Fraction
    levels: tuple[int, ...]
    criteria: tuple[int, ...]
    positive_criteria: frozenset
    nodes: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    weights: tuple[Fraction, ...]


def bipolar_kary_choquet(
    capacity: BipolarCapacity, profile: BipolarProfile
) -> BipolarKaryEvaluation:
    """Signed natural extension on a chain-product base with reporting."""
    k, n = grid_shape(capacity.base)
    evaluation = evaluate_bipolar(capacity, profile)
    parts = [label_parts(label) for label in evaluation.order]
    return BipolarKaryEvaluation(
        value=evaluation.value,
        levels=tuple(level for _, level in parts),
        criteria=tuple(criterion for criterion, _ in parts),
        positive_criteria=frozenset(
            {label_parts(label)[0] for label in evaluation.tile}
        ),
        nodes=tuple(
            (downset_to_node(pair.pos, n), downset_to_node(pair.neg, n))
            for pair in evaluation.chain
        ),
        weights=evaluation.weights,
    )
