import random
from fractions import Fraction

import pytest

import choqlat as cq
from support import (
    random_bipolar_capacity,
    random_capacity,
    random_profile,
    random_signed_profile,
)


@pytest.fixture
def grid32():
    return cq.DownsetLattice(cq.build_kary_base(3, 2))


@pytest.fixture
def scale3():
    return cq.ReferenceScale(("0", "0.5", "1"))


@pytest.fixture
def symmetric5():
    return cq.ReferenceScale(("-1", "-0.5", "0", "0.5", "1"), symmetric=True)


class TestBase:
    def test_three_by_two(self):
        base = cq.build_kary_base(3, 2)
        assert set(base.elements) == {"c1l1", "c1l2", "c2l1", "c2l2"}
        assert len(cq.connected_components(base)) == 2
        assert base.leq("c1l1", "c1l2")
        assert not base.leq("c1l1", "c2l1")

    def test_two_levels_is_antichain(self):
        base = cq.build_kary_base(2, 3)
        assert base.covers == frozenset()
        assert len(base.elements) == 3

    def test_element_count(self):
        assert len(cq.build_kary_base(4, 3).elements) == 9

    def test_bad_dimensions(self):
        with pytest.raises(cq.InvalidDimensions):
            cq.build_kary_base(1, 2)
        with pytest.raises(cq.InvalidDimensions):
            cq.build_kary_base(3, 0)

    def test_node_round_trip(self):
        k, n = 4, 3
        base = cq.build_kary_base(k, n)
        lattice = cq.DownsetLattice(base)
        assert len(lattice) == k ** n
        for downset in lattice.elements:
            node = cq.downset_to_node(downset, n)
            assert cq.node_to_downset(node, k) == downset

    def test_grid_shape(self):
        assert cq.grid_shape(cq.build_kary_base(3, 2)) == (3, 2)
        with pytest.raises(cq.InvalidDimensions):
            cq.grid_shape(cq.Poset(["a"], []))

    def test_node_out_of_range(self):
        with pytest.raises(cq.InvalidDimensions):
            cq.node_to_downset((3, 0), 3)


class TestKaryChoquet:
    def test_worked_instance_report(self, grid32):
        rng = random.Random(0)
        capacity = random_capacity(rng, grid32)
        profile = cq.Profile(
            grid32.base, {"c1l1": "0.5", "c1l2": "0.1", "c2l1": "0.3", "c2l2": "0.2"}
        )
        evaluation = cq.kary_choquet(capacity, profile)
        assert evaluation.levels == (1, 1, 2, 2)
        assert evaluation.criteria == (1, 2, 2, 1)
        assert evaluation.nodes == ((0, 0), (1, 0), (1, 1), (1, 2), (2, 2))
        assert evaluation.weights == (
            Fraction(1, 2),
            Fraction(1, 5),
            Fraction(1, 10),
            Fraction(1, 10),
            Fraction(1, 10),
        )
        assert evaluation.value == cq.natural_extension(capacity, profile)

    def test_constant_one_profile_hits_top(self, grid32):
        rng = random.Random(1)
        capacity = random_capacity(rng, grid32, game=True)
        profile = cq.Profile(grid32.base, {x: 1 for x in grid32.base.elements})
        assert cq.kary_choquet(capacity, profile).value == capacity.values[grid32.top]

    def test_sorted_pass_is_nonincreasing(self, grid32):
        rng = random.Random(2)
        for _ in range(20):
            profile = random_profile(rng, grid32.base)
            evaluation = cq.kary_choquet(random_capacity(rng, grid32), profile)
            run = [
                profile.values[cq.level_label(c, l)]
                for l, c in zip(evaluation.levels, evaluation.criteria)
            ]
            assert run == sorted(run, reverse=True)

    def test_agrees_with_moebius_form(self, grid32):
        rng = random.Random(3)
        for _ in range(20):
            capacity = random_capacity(rng, grid32)
            profile = random_profile(rng, grid32.base)
            assert cq.kary_choquet(capacity, profile).value == cq.moebius_form_eval(
                cq.moebius_transform(capacity), profile
            )


class TestLevelProfile:
    def test_interior_point(self, scale3):
        indexing, profile = cq.level_profile(["0.7", "0.1"], scale3)
        assert indexing.indices == (2, 1)
        assert indexing.residues == (Fraction(2, 5), Fraction(1, 5))
        assert indexing.prefix_size == 1
        assert profile.values == {
            "c1l1": 1,
            "c1l2": Fraction(2, 5),
            "c2l1": Fraction(1, 5),
            "c2l2": 0,
        }

    def test_boundary_rule_at_interior_node(self, scale3):
        indexing, _ = cq.level_profile(["0.5", "0"], scale3)
        assert indexing.indices == (1, 1)
        assert indexing.residues == (Fraction(1), Fraction(0))

    def test_top_coordinate_fills_chain(self, scale3):
        _, profile = cq.level_profile(["1", "0"], scale3)
        assert profile.values["c1l1"] == 1
        assert profile.values["c1l2"] == 1

    def test_out_of_scale(self, scale3):
        with pytest.raises(cq.OutOfScale):
            cq.level_profile(["1.2", "0"], scale3)
        with pytest.raises(cq.OutOfScale):
            cq.level_profile(["0.5", "-0.1"], scale3)

    def test_residue_order_breaks_ties_by_criterion(self, scale3):
        indexing, _ = cq.level_profile(["0.7", "0.7"], scale3)
        assert indexing.order == (1, 2)


class TestScaleValidation:
    def test_strictly_increasing_required(self):
        with pytest.raises(cq.InvalidDimensions):
            cq.ReferenceScale(("0", "0"))

    def test_symmetric_needs_odd_count(self):
        with pytest.raises(cq.InvalidDimensions):
            cq.ReferenceScale(("-1", "0", "0.5", "1"), symmetric=True)

    def test_symmetric_needs_zero_centre(self):
        with pytest.raises(cq.InvalidDimensions):
            cq.ReferenceScale(("-2", "-1", "1", "2", "3"), symmetric=True)

    def test_signed_index_access(self, symmetric5):
        assert symmetric5.k == 3
        assert symmetric5.rho(0) == 0
        assert symmetric5.rho(-2) == -1
        assert symmetric5.rho(2) == 1


class TestPointInterpolation:
    def test_hand_formula(self, grid32, scale3):
        rng = random.Random(4)
        capacity = random_capacity(rng, grid32)
        at = lambda node: capacity.values[cq.node_to_downset(node, 3)]
        expected = (
            Fraction(3, 5) * at((1, 0))
            + Fraction(1, 5) * at((2, 0))
            + Fraction(1, 5) * at((2, 1))
        )
        assert cq.interpolate_point(capacity, ["0.7", "0.1"], scale3) == expected

    def test_exact_at_every_mesh_node(self, grid32, scale3):
        rng = random.Random(5)
        capacity = random_capacity(rng, grid32)
        for i in (0, 1, 2):
            for j in (0, 1, 2):
                point = [scale3.levels[i], scale3.levels[j]]
                assert cq.interpolate_point(capacity, point, scale3) == capacity.values[
                    cq.node_to_downset((i, j), 3)
                ]

    def test_agrees_with_staircase_and_chain(self, grid32, scale3):
        rng = random.Random(6)
        for _ in range(40):
            capacity = random_capacity(rng, grid32)
            point = [Fraction(rng.randint(0, 20), 20) for _ in range(2)]
            direct = cq.interpolate_point(capacity, point, scale3)
            _, staircase = cq.level_profile(point, scale3)
            assert direct == cq.staircase_eval(capacity, staircase)
            assert direct == cq.natural_extension(capacity, staircase)

    def test_scale_shape_checked(self, grid32):
        wrong = cq.ReferenceScale(("0", "0.3", "0.6", "1"))
        with pytest.raises(cq.InvalidDimensions):
            cq.interpolate_point(
                cq.GeneralizedCapacity(grid32, {d: 0 for d in grid32.elements}),
                ["0.5", "0.5"],
                wrong,
            )


class TestStaircaseEval:
    def test_rejects_non_staircase(self, grid32):
        rng = random.Random(7)
        capacity = random_capacity(rng, grid32)
        profile = cq.Profile(
            grid32.base, {"c1l1": "0.9", "c1l2": "0.4", "c2l1": 0, "c2l2": 0}
        )
        with pytest.raises(cq.NotStaircase):
            cq.staircase_eval(capacity, profile)

    def test_full_residues_reach_upper_corner(self, grid32):
        rng = random.Random(8)
        capacity = random_capacity(rng, grid32)
        profile = cq.Profile(
            grid32.base, {"c1l1": 1, "c1l2": 0, "c2l1": 1, "c2l2": 0}
        )
        assert cq.staircase_eval(capacity, profile) == capacity.values[
            cq.node_to_downset((1, 1), 3)
        ]

    def test_zero_residues_stay_at_prefix(self, grid32):
        rng = random.Random(9)
        capacity = random_capacity(rng, grid32)
        profile = cq.Profile(
            grid32.base, {"c1l1": 1, "c1l2": 0, "c2l1": 0, "c2l2": 0}
        )
        assert cq.staircase_eval(capacity, profile) == capacity.values[
            cq.node_to_downset((1, 0), 3)
        ]


class TestSignedGrid:
    def test_worked_instance_report(self, grid32):
        rng = random.Random(10)
        capacity = random_bipolar_capacity(rng, grid32)
        profile = cq.BipolarProfile(
            grid32.base,
            {"c1l1": "0.5", "c1l2": "0.1", "c2l1": "-0.3", "c2l2": "-0.2"},
        )
        evaluation = cq.bipolar_kary_choquet(capacity, profile)
        assert evaluation.positive_criteria == frozenset({1})
        assert evaluation.nodes == (
            ((0, 0), (0, 0)),
            ((1, 0), (0, 0)),
            ((1, 0), (0, 1)),
            ((1, 0), (0, 2)),
            ((2, 0), (0, 2)),
        )
        assert evaluation.weights == (
            Fraction(1, 2),
            Fraction(1, 5),
            Fraction(1, 10),
            Fraction(1, 10),
            Fraction(1, 10),
        )

    def test_nonnegative_profile_matches_unsigned(self, grid32):
        rng = random.Random(11)
        capacity = random_bipolar_capacity(rng, grid32)
        unsigned = cq.GeneralizedCapacity(
            grid32,
            {d: capacity.values[cq.BipolarElement(d, frozenset())] for d in grid32.elements},
        )
        for _ in range(10):
            magnitude = random_profile(rng, grid32.base)
            signed = cq.BipolarProfile(grid32.base, magnitude.values)
            assert cq.bipolar_kary_choquet(capacity, signed).value == cq.kary_choquet(
                unsigned, magnitude
            ).value

    def test_agrees_with_moebius_form(self, grid32):
        rng = random.Random(12)
        capacity = random_bipolar_capacity(rng, grid32)
        coefficients = cq.bipolar_moebius_transform(grid32, capacity.values)
        for _ in range(10):
            profile = random_signed_profile(rng, grid32.base)
            assert cq.bipolar_kary_choquet(
                capacity, profile
            ).value == cq.bipolar_moebius_form_eval(coefficients, profile)


class TestSignedPoints:
    def test_bipolar_location(self, symmetric5):
        positive, indexing, profile = cq.bipolar_level_profile(["0.7", "-0.1"], symmetric5)
        assert positive == frozenset({1})
        assert indexing.indices == (2, 1)
        assert indexing.residues == (Fraction(2, 5), Fraction(1, 5))
        assert profile.values == {
            "c1l1": 1,
            "c1l2": Fraction(2, 5),
            "c2l1": Fraction(-1, 5),
            "c2l2": 0,
        }
        rng = random.Random(18)
        capacity = random_bipolar_capacity(
            rng, cq.DownsetLattice(cq.build_kary_base(3, 2))
        )
        assert cq.interpolate_signed_point(
            capacity, ["0.7", "-0.1"], symmetric5
        ) == cq.bipolar_kary_choquet(capacity, profile).value

    def test_signed_point_agrees_with_chain_path(self, symmetric5):
        rng = random.Random(13)
        lattice = cq.DownsetLattice(cq.build_kary_base(3, 2))
        for _ in range(40):
            capacity = random_bipolar_capacity(rng, lattice)
            point = [Fraction(rng.randint(-20, 20), 20) for _ in range(2)]
            direct = cq.interpolate_signed_point(capacity, point, symmetric5)
            _, _, profile = cq.bipolar_level_profile(point, symmetric5)
            assert direct == cq.bipolar_kary_choquet(capacity, profile).value

    def test_nonnegative_point_reduces_to_unsigned(self, symmetric5, scale3):
        rng = random.Random(14)
        lattice = cq.DownsetLattice(cq.build_kary_base(3, 2))
        capacity = random_bipolar_capacity(rng, lattice)
        unsigned = cq.GeneralizedCapacity(
            lattice,
            {d: capacity.values[cq.BipolarElement(d, frozenset())] for d in lattice.elements},
        )
        for _ in range(15):
            point = [Fraction(rng.randint(0, 20), 20) for _ in range(2)]
            assert cq.interpolate_signed_point(
                capacity, point, symmetric5
            ) == cq.interpolate_point(unsigned, point, scale3)

    def test_exact_at_signed_mesh_nodes(self, symmetric5):
        rng = random.Random(15)
        lattice = cq.DownsetLattice(cq.build_kary_base(3, 2))
        capacity = random_bipolar_capacity(rng, lattice)
        point = ["0.5", "-1"]
        assert cq.interpolate_signed_point(capacity, point, symmetric5) == capacity.values[
            cq.BipolarElement(
                cq.node_to_downset((1, 0), 3), cq.node_to_downset((0, 2), 3)
            )
        ]

    def test_out_of_scale(self, symmetric5):
        lattice = cq.DownsetLattice(cq.build_kary_base(3, 2))
        capacity = cq.BipolarCapacity(
            lattice, {p: 0 for p in cq.admissible_vertex_pairs(lattice)}
        )
        with pytest.raises(cq.OutOfScale):
            cq.interpolate_signed_point(capacity, ["-1.5", "0"], symmetric5)


class TestTwoLevelCollapse:
    def test_unsigned_matches_classical(self):
        rng = random.Random(16)
        for n in (1, 2, 3, 4):
            base = cq.build_kary_base(2, n)
            lattice = cq.DownsetLattice(base)
            for _ in range(10):
                game = random_capacity(rng, lattice, game=True)
                profile = random_profile(rng, base)
                assert cq.kary_choquet(game, profile).value == cq.choquet_classical(
                    game.values, profile.values
                )

    def test_signed_matches_pair_integral(self):
        rng = random.Random(17)
        for n in (1, 2, 3):
            base = cq.build_kary_base(2, n)
            lattice = cq.DownsetLattice(base)
            for _ in range(10):
                capacity = random_bipolar_capacity(rng, lattice, game=True)
                profile = random_signed_profile(rng, base)
                assert cq.bipolar_kary_choquet(
                    capacity, profile
                ).value == cq.bicapacity_choquet(capacity, profile.values)
