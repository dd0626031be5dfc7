import math
from fractions import Fraction as F

import pytest

from fampersist.cerf import fiber_critical_vertices
from fampersist.family import (FamilyError, KernelSpec, cylinder_family,
                               hat_family, kde_family, nw_regression_family,
                               point_family, wrinkled_cylinder_family,
                               zigzag_family)
from fampersist.simplicial import ComplexError


class TestPointFamily:
    def test_hat_values(self):
        fam = hat_family(4)
        assert [row[0] for row in fam.vertex_values] == \
            [F(0), F(1, 2), F(1), F(1, 2), F(0)]

    def test_zigzag_values(self):
        fam = zigzag_family(3)
        assert len(fam.time_breakpoints) == 7
        assert [row[0] for row in fam.vertex_values] == \
            [F(0), F(1), F(0), F(1), F(0), F(1), F(0)]

    def test_domain_must_cover_unit_interval(self):
        with pytest.raises(FamilyError):
            point_family([("0", "0"), ("1/2", "1")])

    def test_duplicate_breakpoints_rejected(self):
        with pytest.raises(FamilyError):
            point_family([("0", "0"), ("1/2", "1"), ("1/2", "2"), ("1", "0")])

    def test_constant_family_round_trips(self):
        fam = point_family([("0", "0"), ("1", "0")])
        prism = fam.to_prism()
        assert prism.n_times == 2


class TestCylinderFamily:
    def test_subdiv_four_rows(self):
        fam = cylinder_family(4)
        assert fam.vertex_values[0] == (F(1), F(0), F(-1), F(0))

    def test_extremes_exact(self):
        for subdiv in (3, 4, 5, 8, 9):
            row = cylinder_family(subdiv).vertex_values[0]
            assert min(row) == -1 and max(row) == 1

    def test_subdiv_too_small(self):
        with pytest.raises((FamilyError, ComplexError)):
            cylinder_family(2)

    def test_full_complex_loop(self):
        from fampersist.homology import betti
        prism = cylinder_family(5).to_prism()
        assert betti(prism.simplices, 1) == 1


class TestWrinkledCylinder:
    def test_off_interval_rows_are_rescaled_cylinder(self):
        fam = wrinkled_cylinder_family()
        plain = cylinder_family(8).vertex_values[0]
        rescaled = tuple(0 + (4 - 0) * (s + 1) / 2 for s in plain)
        assert fam.vertex_values[0] == rescaled
        assert fam.vertex_values[4] == rescaled

    def test_middle_fiber_critical_values(self):
        prism = wrinkled_cylinder_family().to_prism()
        crits = fiber_critical_vertices(prism, 2)
        assert [(cv.value, cv.index) for cv in crits] == \
            [(F(0), 0), (F(1), 0), (F(3), 1), (F(4), 1)]

    def test_ordering_enforced(self):
        with pytest.raises(FamilyError):
            wrinkled_cylinder_family(ell="3", n="1")

    def test_degenerate_wrinkle_interval(self):
        with pytest.raises(FamilyError):
            wrinkled_cylinder_family(p="1/2", q="1/2")

    def test_small_subdiv_rejected(self):
        with pytest.raises(FamilyError):
            wrinkled_cylinder_family(subdiv=4)

    def test_global_extremes(self):
        fam = wrinkled_cylinder_family()
        values = [v for row in fam.vertex_values for v in row]
        assert min(values) == 0 and max(values) == 4


class TestKernelSpec:
    def test_bad_kind(self):
        with pytest.raises(FamilyError):
            KernelSpec(kind="sinc")

    def test_compact_support(self):
        for kind in ("epanechnikov", "triangular"):
            k = KernelSpec(kind=kind)
            assert k.evaluate(1.5) == 0
            assert k.evaluate(0.0) > 0

    def test_gaussian_peak(self):
        k = KernelSpec()
        assert abs(k.evaluate(0.0) - 1 / math.sqrt(2 * math.pi)) < 1e-12


class TestKdeFamily:
    def test_values_nonpositive(self):
        fam = kde_family([0.0, 0.5, 2.0], KernelSpec(), ("1/4", "2"),
                         t_res=4, x_res=12)
        assert all(v <= 0 for row in fam.vertex_values for v in row)

    def test_single_sample_unimodal_rows(self):
        fam = kde_family([0.0], KernelSpec(), ("1/2", "1"),
                         domain_box=("-2", "2"), t_res=3, x_res=9)
        for row in fam.vertex_values:
            mid = row.index(min(row))
            assert all(row[j] >= row[j + 1] for j in range(mid))
            assert all(row[j] <= row[j + 1] for j in range(mid, len(row) - 1))

    def test_two_clusters_bimodal_then_unimodal(self):
        fam = kde_family([-1.0, 1.0], KernelSpec(), ("1/5", "2"),
                         domain_box=("-2", "2"), t_res=6, x_res=17)

        def n_minima(row):
            count = 0
            for j, v in enumerate(row):
                left = [w for w in row[:j][::-1] if w != v]
                right = [w for w in row[j + 1:] if w != v]
                if (not left or left[0] > v) and (right and right[0] > v) \
                        and (left or j == 0):
                    count += 1
            return count

        assert n_minima(fam.vertex_values[0]) == 2
        assert n_minima(fam.vertex_values[-1]) == 1

    def test_triangular_disjoint_supports(self):
        fam = kde_family([-2.0, 2.0], KernelSpec(kind="triangular"),
                         ("1/2", "1/2"), domain_box=("-3", "3"),
                         t_res=2, x_res=25)
        row = fam.vertex_values[0]
        assert row[12] == 0  # midpoint outside both supports
        assert min(row) < 0

    def test_empty_samples(self):
        with pytest.raises(FamilyError):
            kde_family([], KernelSpec(), ("1/2", "1"))

    def test_nonpositive_bandwidth(self):
        with pytest.raises(FamilyError):
            kde_family([0.0], KernelSpec(), ("0", "1"))

    def test_resolution_floor(self):
        with pytest.raises(FamilyError):
            kde_family([0.0], KernelSpec(), ("1/2", "1"), t_res=1)

    def test_refinement_stability(self):
        # Doubling both resolutions moves values at new grid points by no
        # more than a Lipschitz bound of the estimator on the old spacing.
        samples = [-1.0, 1.0]
        a_min, a_max = F(1, 2), F(1)
        box = ("-3", "3")
        coarse = kde_family(samples, KernelSpec(), (a_min, a_max),
                            domain_box=box, t_res=5, x_res=9)
        fine = kde_family(samples, KernelSpec(), (a_min, a_max),
                          domain_box=box, t_res=9, x_res=17)
        amf = float(a_min)
        max_kprime = math.exp(-0.5) / math.sqrt(2 * math.pi)
        max_k = 1 / math.sqrt(2 * math.pi)
        max_ukprime = 2 * math.exp(-1) / math.sqrt(2 * math.pi)
        lip_x = max_kprime / amf ** 2
        lip_a = (max_k + max_ukprime) / amf ** 2
        dx = 6 / 8  # coarse x spacing
        da = float(a_max - a_min) / 4  # coarse bandwidth spacing
        # New x points at old bandwidth rows.
        for i_old in range(5):
            coarse_row = coarse.vertex_values[i_old]
            fine_row = fine.vertex_values[2 * i_old]
            for j_old in range(8):
                mid = float(fine_row[2 * j_old + 1])
                chord = float(coarse_row[j_old] + coarse_row[j_old + 1]) / 2
                assert abs(mid - chord) <= lip_x * dx
        # New bandwidth rows at old x points.
        for i_old in range(4):
            for j_old in range(9):
                mid = float(fine.vertex_values[2 * i_old + 1][2 * j_old])
                chord = float(coarse.vertex_values[i_old][j_old]
                              + coarse.vertex_values[i_old + 1][j_old]) / 2
                assert abs(mid - chord) <= lip_a * da


class TestRegressionFamily:
    def test_constant_response(self):
        fam = nw_regression_family([(-1.0, 3.0), (0.5, 3.0), (2.0, 3.0)],
                                   KernelSpec(), ("1/2", "1"),
                                   t_res=3, x_res=11)
        assert all(v == 3 for row in fam.vertex_values for v in row)

    def test_single_pair_constant(self):
        fam = nw_regression_family([(0.0, 2.5)], KernelSpec(), ("1/2", "1"),
                                   domain_box=("-1", "1"), t_res=2, x_res=5)
        assert all(v == F(5, 2) for row in fam.vertex_values for v in row)

    def test_step_transition(self):
        fam = nw_regression_family([(-5.0, 0.0), (5.0, 1.0)],
                                   KernelSpec(kind="triangular"), ("1", "1"),
                                   domain_box=("-6", "6"), t_res=2, x_res=13)
        row = fam.vertex_values[0]
        assert row[0] == 0 and row[-1] == 1
        assert all(a <= b for a, b in zip(row, row[1:]))

    def test_empty_pairs(self):
        with pytest.raises(FamilyError):
            nw_regression_family([], KernelSpec(), ("1/2", "1"))


def test_all_constructors_build_prisms():
    families = [
        hat_family(2), hat_family(8), zigzag_family(1), zigzag_family(4),
        cylinder_family(3), cylinder_family(8), wrinkled_cylinder_family(),
        kde_family([0.0, 1.0], KernelSpec(), ("1/2", "1"), t_res=3, x_res=6),
        nw_regression_family([(0.0, 1.0)], KernelSpec(kind="epanechnikov"),
                             ("1/2", "1"), domain_box=("-1", "1"),
                             t_res=2, x_res=4),
    ]
    for fam in families:
        prism = fam.to_prism()
        assert prism.n_times == len(fam.time_breakpoints)


def test_shifted_uniform_and_rowwise():
    fam = hat_family(2)
    up = fam.shifted(F(1, 4))
    assert [r[0] for r in up.vertex_values] == [F(1, 4), F(5, 4), F(1, 4)]
    rows = [(F(1),), (F(0),), (F(-1),)]
    mixed = fam.shifted(rows)
    assert [r[0] for r in mixed.vertex_values] == [F(1), F(1), F(-1)]
