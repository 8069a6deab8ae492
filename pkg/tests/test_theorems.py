"""Circle construction, anomaly integers, twist bundles, bounds, census."""

from fractions import Fraction

import pytest

from quasigenus.cohomology import SyntheticConnectedSumRing, build_face_ring
from quasigenus.errors import (InputError, PreconditionError,
                               PropertyViolationError, RankHypothesisError,
                               WellDefinednessError)
from quasigenus.genus import equivariant_index
from quasigenus.models import (cp2_connected_sum, projective_space,
                               sphere_product, sphere_product_spin)
from quasigenus.theorems import (EquivariantDegree4Class, SymmetryBoundInput,
                                 anomaly_coefficient, check_twist_classes,
                                 construct_twist_bundles,
                                 construct_twist_bundles_on_ring, find_circle,
                                 finiteness_census, max_dim_rank_ratio,
                                 rank_ratio_table_check, symmetry_bounds,
                                 synthetic_inflated_instance)


class TestDegree4Class:
    def test_validation(self):
        with pytest.raises(InputError, match="symmetric"):
            EquivariantDegree4Class([[0, 1], [2, 0]], [[1], [1]])
        with pytest.raises(InputError, match="square"):
            EquivariantDegree4Class([[0, 1]], [[1]])
        cls4 = EquivariantDegree4Class([[1, 0], [0, 1]], [[1], [2]])
        assert cls4.torus_rank == 2
        assert cls4.b2 == 1

    def test_mixed_component_of_cp2(self):
        cls4 = EquivariantDegree4Class.of_negative_tangent_p1(
            projective_space(2))
        assert cls4.a22 == ((-2,), (-2,))
        assert not cls4.a04_is_zero


class TestFindCircle:
    def test_rank2_kernel(self):
        cls4 = EquivariantDegree4Class([[0, 0], [0, 0]], [[1], [1]])
        assert find_circle(cls4).xi == (1, -1)

    def test_primitive_kernel(self):
        cls4 = EquivariantDegree4Class([[0, 0], [0, 0]], [[2], [4]])
        assert find_circle(cls4).xi == (2, -1)

    def test_rank3_two_columns(self):
        a22 = [[1, 0], [0, 1], [1, 1]]
        cls4 = EquivariantDegree4Class([[0] * 3] * 3, a22)
        xi = find_circle(cls4).xi
        assert xi == (1, 1, -1)
        for f in range(2):
            assert sum(a22[i][f] * xi[i] for i in range(3)) == 0

    def test_empty_mixed_component(self):
        cls4 = EquivariantDegree4Class([[0, 0], [0, 0]], [[], []])
        assert find_circle(cls4).xi == (1, 0)

    def test_nonzero_fiber_component_refused(self):
        cls4 = EquivariantDegree4Class.of_negative_tangent_p1(
            projective_space(2))
        with pytest.raises(PreconditionError):
            find_circle(cls4)

    def test_rank_hypothesis_failure_attaches_kernel(self):
        cls4 = EquivariantDegree4Class.of_negative_tangent_p1(
            sphere_product_spin(2))
        with pytest.raises(RankHypothesisError) as info:
            find_circle(cls4)
        # rank T equals b2 here; whether a kernel exists is reported
        assert hasattr(info.value, "kernel")

    def test_circle_from_spin_sphere_cube(self):
        # (S^2)^3 spin has rank 3 = b2 = 3: hypothesis fails, but p1 = 0
        cls4 = EquivariantDegree4Class.of_negative_tangent_p1(
            sphere_product_spin(3))
        assert cls4.a04_is_zero
        with pytest.raises(RankHypothesisError):
            find_circle(cls4)


class TestAnomalyCoefficient:
    def test_sphere_rotation(self):
        assert anomaly_coefficient(sphere_product_spin(1), (1,)) == -1
        assert anomaly_coefficient(projective_space(1), (1,)) == -1

    def test_diagonal_sphere_products(self):
        # each factor contributes -1: weights are unit vectors, the circle
        # pairs to +-1 with each of the n tangent lines
        for n in (2, 3):
            got = anomaly_coefficient(sphere_product_spin(n), (1,) * n)
            assert got == -n

    def test_cp2_not_a_pullback(self):
        with pytest.raises(WellDefinednessError) as info:
            anomaly_coefficient(projective_space(2), (1, 2))
        assert info.value.values == {(1, 2): -5, (1, 3): -5, (2, 3): -2}

    def test_negative_anomaly_forces_vanishing(self):
        # the bridge the machinery exists for: I < 0 with matching twist
        # class makes the whole equivariant q-series vanish
        for n in (1, 2):
            m = sphere_product_spin(n)
            xi = (1,) * n
            assert anomaly_coefficient(m, xi) == -n < 0
            eq = equivariant_index(m, xi, None, 3)
            assert eq.is_identically_zero()


class TestTwistClassChecks:
    def test_cp1_canonical_classes(self):
        m = projective_space(1)
        ring = build_face_ring(m)
        rep = check_twist_classes(m, [ring.line_class((1, 1))])
        assert rep["sum_is_spinc_class"]
        assert rep["squares_sum_is_p1"]
        assert rep["pairing"] == 2
        assert rep["all_hold"]

    def test_wrong_count(self):
        m = projective_space(2)
        ring = build_face_ring(m)
        with pytest.raises(InputError):
            check_twist_classes(m, [ring.facet_class(1)])

    def test_zero_classes_fail_pairing(self):
        m = projective_space(2)
        ring = build_face_ring(m)
        rep = check_twist_classes(m, [ring.zero(), ring.zero()])
        assert not rep["pairing_nonzero"]
        assert not rep["all_hold"]


class TestTwistConstruction:
    def test_cp3_case1(self):
        rep = construct_twist_bundles(projective_space(3))
        assert rep["beta"] == (4,)
        assert rep["applicable_case"] == 1
        case = rep["cases"][0]
        assert case["parity_matches"]
        # the bound 0 < beta <= n+1 shows up as a negative W multiplicity
        assert case["w_multiplicities"]["w_generator_1"] == -2
        assert not case["all_nonnegative"]
        assert rep["beta_bound_holds"]

    def test_cpn_is_always_case1(self):
        # beta = n+1 has the parity of n+1, so case 1 applies for every n
        # and its pivot W multiplicity is (n+1) - n - 3 = -2
        for n in (3, 4):
            rep = construct_twist_bundles(projective_space(n))
            assert rep["beta"] == (n + 1,)
            assert rep["applicable_case"] == 1
            assert rep["cases"][0]["w_multiplicities"]["w_generator_1"] == -2
            assert rep["beta_bound_holds"]

    def test_case2_on_synthetic_ring(self):
        # case 2 needs beta = n mod 2, which no projective space provides;
        # an inflated one-generator ring with beta = n + 2 exercises it
        for n in (4, 5):
            ring = SyntheticConnectedSumRing(n, 1, (1,))
            rep = construct_twist_bundles_on_ring(ring, (n + 2,))
            assert rep["applicable_case"] == 2
            case = rep["cases"][1]
            assert case["w_multiplicities"]["w_generator_1"] == 2
            assert case["all_nonnegative"]
            assert case["checks"]["c1_v_equals_twist"]
            assert case["checks"]["p1_difference_zero"]
            assert case["checks"]["w_spin"]
            assert case["checks"]["euler_pairing_nonzero"]

    def test_case2_p1_balance_on_synthetic_rings(self):
        # per-generator balance alpha^2 + (beta - alpha) = beta must hold
        # for every dimension parity, which pins the pivot exclusion
        for n in (3, 4, 5, 6):
            ring = SyntheticConnectedSumRing(n, 2, (1, 1))
            beta = (n + (n % 2), 4)
            beta = (beta[0] if beta[0] % 2 == n % 2 else beta[0] + 1, 4)
            rep = construct_twist_bundles_on_ring(ring, beta)
            for case in rep["cases"]:
                if case.get("checks"):
                    assert case["checks"]["p1_difference_zero"]

    def test_synthetic_inflated_instances(self):
        for n in (3, 4, 5, 6):
            for sign in (1, -1):
                rep = synthetic_inflated_instance(n, sign=sign, q_order=2)
                case = rep["cases"][0]
                assert case["all_nonnegative"]
                assert case["w_lines"] == []
                series = rep["index_series"]
                assert rep["index_is_constant"]
                assert series.coeffs[0] == rep["euler_pairing"]
                # e(V) = 2 g^n, which pairs to twice the orientation sign
                assert series.coeffs[0] == 2 * sign

    def test_inflated_needs_dimension_three(self):
        with pytest.raises(InputError):
            synthetic_inflated_instance(2)


class TestRankRatioTable:
    # oracle first: the running maximum of dim/rank over the simple
    # compact groups, tabulated directly from the classical dimension
    # formulas and the five exceptional dimensions
    @staticmethod
    def brute_table(l_max):
        series = {}
        for l in range(1, l_max + 1):
            dims = {l * (l + 2)}              # A_l
            if l >= 2:
                dims.add(l * (2 * l + 1))     # B_l
            if l >= 3:
                dims.add(l * (2 * l + 1))     # C_l
            if l >= 4:
                dims.add(l * (2 * l - 1))     # D_l
            for rank, dim in [(2, 14), (4, 52), (6, 78), (7, 133), (8, 248)]:
                if rank == l:
                    dims.add(dim)
            series[l] = dims
        best = Fraction(0)
        table = {}
        for l in range(1, l_max + 1):
            for d in series[l]:
                ratio = Fraction(d, l)
                if ratio > best:
                    best = ratio
            table[l] = best
        return table

    def test_closed_form_matches_running_max(self):
        table = self.brute_table(30)
        for l in range(1, 31):
            assert max_dim_rank_ratio(l) == table[l], f"rank {l}"

    def test_known_anchor_rows(self):
        assert max_dim_rank_ratio(1) == 3
        assert max_dim_rank_ratio(2) == 7
        assert max_dim_rank_ratio(4) == 13
        assert max_dim_rank_ratio(7) == 19
        assert max_dim_rank_ratio(8) == 31
        assert max_dim_rank_ratio(14) == 31
        assert max_dim_rank_ratio(15) == 31
        assert max_dim_rank_ratio(16) == 33

    def test_self_check_report(self):
        rep = rank_ratio_table_check(30)
        assert rep["all_match"]
        assert rep["matches"] == rep["total"] == 30

    def test_rejects_bad_rank(self):
        with pytest.raises(InputError):
            max_dim_rank_ratio(0)


class TestSymmetryBounds:
    def test_e8_squared(self):
        inp = SymmetryBoundInput(["E8", "E8"])
        assert symmetry_bounds(inp) == (496, 496)

    def test_mixed_factors_with_b2(self):
        inp = SymmetryBoundInput([(1, 3), "E8"], b2=5)
        lower, upper = symmetry_bounds(inp)
        assert lower == 3 + 248
        assert upper == 31 * (1 + 8) + 5
        assert lower <= upper

    def test_bad_factor_rejected(self):
        with pytest.raises(InputError):
            SymmetryBoundInput([(2, 9)])
        with pytest.raises(InputError):
            SymmetryBoundInput(["Q5"])


class TestCensus:
    def test_single_simplex(self):
        rep = finiteness_census(3, 1, 2)
        assert rep["total_matrices"] == 8
        assert rep["pattern_matches"] == 8
        assert rep["beta_vectors"] == [(4,)]
        assert rep["violations"] == []
        assert rep["all_within_bound"]

    def test_two_fold_sum(self):
        rep = finiteness_census(3, 2, 1)
        assert rep["total_matrices"] == 88
        assert rep["pattern_matches"] == 16
        assert rep["beta_vectors"] == [(4, 4)]
        assert rep["all_within_bound"]

    def test_thread_invariance(self):
        a = finiteness_census(3, 1, 2, threads=1)
        b = finiteness_census(3, 1, 2, threads=4)
        assert a == b

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            finiteness_census(2, 1, 1)
        with pytest.raises(PreconditionError):
            finiteness_census(3, 3, 1)
