from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

import choqlat as cq
from support import antichain, capacities, chain, lattices, wedge_poset


def boolean_lattice(n: int) -> cq.DownsetLattice:
    return cq.DownsetLattice(antichain(n))


def inline_rota(elements, leq, lower, upper):
    """Independent reference recursion, kept deliberately naive."""
    if lower == upper:
        return 1
    return -sum(
        inline_rota(elements, leq, lower, mid)
        for mid in elements
        if leq(lower, mid) and leq(mid, upper) and mid != upper
    )


class TestMoebiusFunction:
    def test_chain_steps(self):
        p = chain(3)
        assert cq.moebius_function(p, "x0", "x1") == -1
        assert cq.moebius_function(p, "x0", "x2") == 0
        assert cq.moebius_function(p, "x1", "x1") == 1

    def test_boolean_square_top(self):
        lattice = boolean_lattice(2)
        assert cq.lattice_moebius(lattice, frozenset(), lattice.top) == 1
        assert cq.lattice_moebius(lattice, frozenset(), frozenset({"1"})) == -1

    def test_wedge_lattice_top(self):
        lattice = cq.DownsetLattice(wedge_poset())
        assert cq.lattice_moebius(lattice, frozenset(), lattice.top) == 0

    def test_not_comparable(self):
        with pytest.raises(cq.NotComparable):
            cq.moebius_function(wedge_poset(), "b", "a")

    @given(lattices(min_elements=1, max_elements=4), st.data())
    def test_matches_inline_recursion(self, lattice, data):
        x = data.draw(st.sampled_from(lattice.elements))
        lows = [y for y in lattice.elements if y <= x]
        y = data.draw(st.sampled_from(lows))
        assert cq.lattice_moebius(lattice, y, x) == inline_rota(
            lattice.elements, frozenset.issubset, y, x
        )

    @given(lattices(min_elements=1, max_elements=4))
    def test_column_sums_vanish(self, lattice):
        cache = {}
        for x in lattice.elements:
            total = sum(
                cq.lattice_moebius(lattice, y, x, cache)
                for y in lattice.elements
                if y <= x
            )
            assert total == (1 if x == lattice.bottom else 0)


class TestTransforms:
    def test_boolean_inclusion_exclusion(self):
        lattice = boolean_lattice(2)
        capacity = cq.GeneralizedCapacity(
            lattice,
            {
                frozenset(): 0,
                frozenset({"1"}): "0.3",
                frozenset({"2"}): "0.4",
                frozenset({"1", "2"}): 1,
            },
        )
        vector = cq.moebius_transform(capacity)
        assert vector.coefficients == {
            frozenset(): Fraction(0),
            frozenset({"1"}): Fraction(3, 10),
            frozenset({"2"}): Fraction(2, 5),
            frozenset({"1", "2"}): Fraction(3, 10),
        }

    def test_unanimity_extremes(self):
        lattice = boolean_lattice(2)
        bottom_one = cq.unanimity(lattice, lattice.bottom)
        assert all(v == 1 for v in bottom_one.values.values())
        top_one = cq.unanimity(lattice, lattice.top)
        assert [e for e, v in top_one.values.items() if v == 1] == [lattice.top]

    @given(lattices(max_elements=4), st.data())
    def test_unanimity_has_delta_coefficients(self, lattice, data):
        if not lattice.elements:
            return
        x = data.draw(st.sampled_from(lattice.elements))
        vector = cq.moebius_transform(cq.unanimity(lattice, x))
        assert all(
            coeff == (1 if element == x else 0)
            for element, coeff in vector.coefficients.items()
        )

    @given(st.data())
    def test_round_trip(self, data):
        lattice = data.draw(lattices(max_elements=4))
        capacity = data.draw(capacities(lattice))
        again = cq.zeta_transform(cq.moebius_transform(capacity))
        assert again.values == capacity.values

    @given(st.data())
    def test_reverse_round_trip(self, data):
        lattice = data.draw(lattices(max_elements=4))
        seed = data.draw(capacities(lattice))
        vector = cq.MoebiusVector(lattice, seed.values)
        again = cq.moebius_transform(cq.zeta_transform(vector))
        assert again.coefficients == vector.coefficients

    @given(st.data())
    def test_linearity(self, data):
        lattice = data.draw(lattices(max_elements=4))
        g = data.draw(capacities(lattice))
        h = data.draw(capacities(lattice))
        alpha, beta = Fraction(2, 3), Fraction(-5, 7)
        mixed = cq.GeneralizedCapacity(
            lattice,
            {e: alpha * g.values[e] + beta * h.values[e] for e in lattice.elements},
        )
        mg = cq.moebius_transform(g).coefficients
        mh = cq.moebius_transform(h).coefficients
        mixed_vector = cq.moebius_transform(mixed).coefficients
        assert mixed_vector == {
            e: alpha * mg[e] + beta * mh[e] for e in lattice.elements
        }

    def test_capacity_flags(self):
        lattice = boolean_lattice(2)
        capacity = cq.GeneralizedCapacity(
            lattice,
            {
                frozenset(): 0,
                frozenset({"1"}): "0.5",
                frozenset({"2"}): "0.2",
                frozenset({"1", "2"}): 1,
            },
        )
        assert capacity.is_game
        assert capacity.is_monotone
        skewed = cq.GeneralizedCapacity(
            lattice,
            {
                frozenset(): 1,
                frozenset({"1"}): 0,
                frozenset({"2"}): 0,
                frozenset({"1", "2"}): 0,
            },
        )
        assert not skewed.is_game
        assert not skewed.is_monotone

    def test_missing_values_rejected(self):
        lattice = boolean_lattice(2)
        with pytest.raises(cq.BaseMismatch):
            cq.GeneralizedCapacity(lattice, {frozenset(): 0})


class TestBipolarMoebius:
    def test_single_atom_product(self):
        lattice = boolean_lattice(1)
        bottom = (frozenset(), frozenset())
        assert cq.bipolar_moebius_function(lattice, bottom, (frozenset({"1"}), frozenset())) == -1

    def test_square_product_by_hand(self):
        lattice = boolean_lattice(2)
        bottom = (frozenset(), frozenset())
        assert (
            cq.bipolar_moebius_function(
                lattice, bottom, (frozenset({"1"}), frozenset({"2"}))
            )
            == 1
        )

    def test_rejects_overlapping_pair(self):
        lattice = boolean_lattice(2)
        with pytest.raises(cq.NotInBipolarExtension):
            cq.bipolar_moebius_function(
                lattice,
                (frozenset(), frozenset()),
                (frozenset({"1"}), frozenset({"1"})),
            )

    def test_rejects_incomparable(self):
        lattice = boolean_lattice(2)
        with pytest.raises(cq.NotComparable):
            cq.bipolar_moebius_function(
                lattice,
                (frozenset({"1"}), frozenset()),
                (frozenset(), frozenset({"1"})),
            )

    @pytest.mark.parametrize(
        "base",
        [antichain(2), antichain(3), cq.build_kary_base(3, 2), wedge_poset()],
        ids=["bool2", "bool3", "grid3x2", "wedge"],
    )
    def test_product_rule_equals_recursion_everywhere(self, base):
        lattice = cq.DownsetLattice(base)
        pairs = cq.bipolar_extension(lattice)
        cache = {}
        for low in pairs:
            for up in pairs:
                if cq.bipolar_leq(low, up):
                    assert cq.bipolar_moebius_function(
                        lattice, low, up
                    ) == cq.rota_moebius(pairs, cq.bipolar_leq, low, up, cache)

    def test_unanimity_support_in_nine_element_extension(self):
        lattice = boolean_lattice(2)
        table = cq.bipolar_unanimity(lattice, (frozenset({"1"}), frozenset()))
        support = {pair for pair, value in table.items() if value == 1}
        assert support == {
            (frozenset({"1"}), frozenset()),
            (frozenset({"1", "2"}), frozenset()),
            (frozenset({"1"}), frozenset({"2"})),
        }
        assert len(table) == 9

    def test_unanimity_transform_is_delta(self):
        lattice = boolean_lattice(2)
        target = (frozenset({"1"}), frozenset({"2"}))
        table = cq.bipolar_unanimity(lattice, target)
        coefficients = cq.bipolar_moebius_transform(lattice, table)
        assert all(
            value == (1 if pair == target else 0)
            for pair, value in coefficients.items()
        )

    def test_round_trip_on_nine_elements(self):
        import random

        rng = random.Random(7)
        lattice = boolean_lattice(2)
        table = {
            pair: Fraction(rng.randint(-12, 12), 7)
            for pair in cq.disjoint_element_pairs(lattice)
        }
        coefficients = cq.bipolar_moebius_transform(lattice, table)
        again = cq.bipolar_zeta_transform(lattice, coefficients)
        assert again == table

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_boolean_alternating_sign_formula(self, n):
        import random

        rng = random.Random(n)
        lattice = boolean_lattice(n)
        table = {
            pair: Fraction(rng.randint(-20, 20), 9)
            for pair in cq.disjoint_element_pairs(lattice)
        }
        coefficients = cq.bipolar_moebius_transform(lattice, table)
        for (a1, a2), coeff in coefficients.items():
            expected = sum(
                (
                    (-1) ** (len(a1 - frozenset(b1)) + len(a2 - frozenset(b2)))
                    * table[(frozenset(b1), frozenset(b2))]
                    for b1 in _subsets(a1)
                    for b2 in _subsets(a2)
                ),
                Fraction(0),
            )
            assert coeff == expected

    def test_transform_requires_full_extension(self):
        lattice = boolean_lattice(2)
        with pytest.raises(cq.BaseMismatch):
            cq.bipolar_moebius_transform(lattice, {(frozenset(), frozenset()): 1})


def _subsets(s):
    items = sorted(s)
    for mask in range(1 << len(items)):
        yield [items[i] for i in range(len(items)) if mask >> i & 1]
