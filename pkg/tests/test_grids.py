import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from vandersphere.extrema import solve_extrema
from vandersphere.grids import (
    GeneralizedOnlyFor3D,
    TRANSFORMS,
    UnsupportedDimension,
    embed,
    grid_eval,
    grid_local_maxima,
    rodrigues_circle,
    rodrigues_matrix,
    sign_change_edges,
    spherical_to_t,
)
from vandersphere.vandermonde import det_vandermonde

SQ2 = math.sqrt(2)


class TestSphericalToT:
    def test_north_reference(self):
        assert_allclose(spherical_to_t(0.0, 0.0), [0.0, 0.0, 1.0], atol=1e-16)

    def test_quarter_turn(self):
        assert_allclose(spherical_to_t(math.pi / 2, 0.0), [1.0, 0.0, 0.0], atol=1e-16)

    def test_unit_norm(self):
        rng = np.random.default_rng(0)
        th = rng.uniform(0, 2 * math.pi, 50)
        ph = rng.uniform(-math.pi / 2, math.pi / 2, 50)
        t = spherical_to_t(th, ph)
        assert np.abs((t ** 2).sum(axis=0) - 1.0).max() < 1e-15


class TestTransforms:
    @pytest.mark.parametrize("n", sorted(TRANSFORMS))
    def test_columns_orthonormal(self, n):
        m = TRANSFORMS[n].matrix
        assert np.abs(m.T @ m - np.eye(3)).max() < 1e-12

    def test_embed_n3_symmetry_axis(self):
        x = embed(TRANSFORMS[3], np.array([0.0, 0.0, 1.0]))
        assert_allclose(x, np.ones(3) / math.sqrt(3), atol=1e-15)

    def test_embed_n4_hyperplane(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            t = rng.standard_normal(3)
            t /= np.linalg.norm(t)
            x = embed(TRANSFORMS[4], t)
            assert abs(x.sum()) < 1e-12
            assert abs(np.dot(x, x) - 1.0) < 1e-12

    def test_embed_n5_symmetric_pairs(self):
        t = np.array([0.6, -0.8, 0.0])
        x = embed(TRANSFORMS[5], t)
        assert_allclose(x, [x[0], x[1], 0.0, -x[1], -x[0]], atol=1e-15)

    def test_embed_n5_linear_relation(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            t = rng.standard_normal(3)
            t /= np.linalg.norm(t)
            x = embed(TRANSFORMS[5], t)
            assert abs(x.sum() - math.sqrt(5) * t[2]) < 1e-12
            assert abs(x[2] - t[2] / math.sqrt(5)) < 1e-15

    @pytest.mark.parametrize("n", [6, 7])
    def test_embed_sign_symmetric_patterns(self, n):
        rng = np.random.default_rng(n)
        t = rng.standard_normal(3)
        t /= np.linalg.norm(t)
        x = embed(TRANSFORMS[n], t)
        assert_allclose(x, -x[::-1], atol=1e-15)
        if n == 7:
            assert x[3] == 0.0


class TestGridEval:
    def test_values_shape_and_finite(self):
        g = grid_eval(4, (36, 19))
        assert g.values.shape == (19, 36)
        assert np.all(np.isfinite(g.values))
        assert g.transform_label == "hyperplane-4"

    def test_n3_max_near_analytic(self):
        g = grid_eval(3, (720, 360))
        assert g.values.max() <= 1 / SQ2 + 1e-12
        assert g.values.max() > 1 / SQ2 - 1e-3

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_grid_below_analytic_maximum(self, n):
        g = grid_eval(n, (240, 120))
        target = solve_extrema(n).extreme_value
        assert np.abs(g.values).max() <= target + 1e-12

    def test_lattice_sum_relations(self):
        # every n=4 lattice point lies in the hyperplane; the n=5 lattice
        # satisfies the exact linear relation sum(x) = sqrt(5) * t3
        for n, g in ((4, grid_eval(4, (48, 25))), (5, grid_eval(5, (48, 25)))):
            th, ph = np.meshgrid(g.thetas, g.phis)
            t = spherical_to_t(th, ph)
            x = embed(TRANSFORMS[n], t)
            sums = x.sum(axis=0)
            if n == 4:
                assert np.abs(sums).max() < 1e-12
            else:
                assert np.abs(sums - math.sqrt(5) * t[2]).max() < 1e-12

    def test_antipodal_sign_law(self):
        for n in (3, 4, 6):
            g = grid_eval(n, (36, 19))
            m = n * (n - 1) // 2
            v = g.values
            rot = np.roll(v[::-1, :], 18, axis=1)  # (theta + pi, -phi)
            assert np.abs(v - (-1) ** m * rot).max() < 1e-12 * max(1.0, np.abs(v).max())

    def test_zero_circle_for_013(self):
        g = grid_eval(3, (360, 180), exponents=(0, 1, 3))
        ordinary = grid_eval(3, (360, 180))
        gt, gp = sign_change_edges(g.values)
        vt, vp = sign_change_edges(ordinary.values)
        # drop edges that graze an exact zero of the ordinary determinant
        vz = ordinary.values == 0.0
        extra_t = gt & ~vt & ~vz & ~np.roll(vz, -1, axis=1)
        assert extra_t.sum() > 0
        th, ph = np.meshgrid(g.thetas, g.phis)
        e1 = embed(TRANSFORMS[3], spherical_to_t(th, ph)).sum(axis=0)
        nxt = np.roll(e1, -1, axis=1)
        # the extra zero circle lies on the plane sum(x) = 0; lattice points
        # sitting exactly on it leave one endpoint at rounding level
        lo, hi = e1[extra_t], nxt[extra_t]
        crossing = (lo * hi <= 0) | (np.minimum(np.abs(lo), np.abs(hi)) < 0.02)
        assert crossing.all()

    def test_two_zero_circles_for_023(self):
        g = grid_eval(3, (360, 180), exponents=(0, 2, 3))
        ordinary = grid_eval(3, (360, 180))
        gt, _ = sign_change_edges(g.values)
        vt, _ = sign_change_edges(ordinary.values)
        extra = gt & ~vt
        assert extra.sum() > 0
        th, ph = np.meshgrid(g.thetas, g.phis)
        e1 = embed(TRANSFORMS[3], spherical_to_t(th, ph)).sum(axis=0)
        nxt = np.roll(e1, -1, axis=1)
        lo, hi = e1[extra], nxt[extra]
        brackets = ((lo - 1) * (hi - 1) <= 0) | ((lo + 1) * (hi + 1) <= 0)
        assert brackets.all()

    def test_generalized_matches_table_identity(self):
        g = grid_eval(3, (24, 13), exponents=(1, 2, 3))
        ordinary = grid_eval(3, (24, 13))
        th, ph = np.meshgrid(g.thetas, g.phis)
        x = embed(TRANSFORMS[3], spherical_to_t(th, ph))
        e3 = x[0] * x[1] * x[2]
        assert_allclose(g.values, ordinary.values * e3, atol=1e-14)

    def test_errors(self):
        with pytest.raises(UnsupportedDimension):
            grid_eval(8)
        with pytest.raises(UnsupportedDimension):
            grid_eval(2)
        with pytest.raises(GeneralizedOnlyFor3D):
            grid_eval(4, (16, 9), exponents=(0, 1, 2))
        with pytest.raises(ValueError):
            grid_eval(3, (16, 9), exponents=(0, -1, 2))
        with pytest.raises(ValueError):
            grid_eval(3, (1, 5))


class TestVisibleExtrema:
    @pytest.mark.parametrize("n", [6, 7])
    def test_48_visible_extreme_points(self, n):
        g = grid_eval(n, (2400, 1200))
        maxima = grid_local_maxima(g)
        assert len(maxima) >= 48
        roots = solve_extrema(n).roots
        for i, j in maxima:
            x = embed(TRANSFORMS[n], spherical_to_t(g.thetas[j], g.phis[i]))
            assert np.abs(np.sort(x) - roots).max() < 1e-3


class TestRodrigues:
    def test_theta_zero_is_base_point(self):
        p, v = rodrigues_circle(0.0)
        assert_allclose(p, [-1 / SQ2, 0.0, 1 / SQ2], atol=1e-15)
        assert abs(v - 1 / SQ2) < 1e-15

    def test_theta_pi_over_three_is_minimum(self):
        _, v = rodrigues_circle(math.pi / 3)
        assert abs(v + 1 / SQ2) < 1e-15

    def test_cos_identity_thousand_samples(self):
        th = np.linspace(0.0, 2 * math.pi, 1000, endpoint=False)
        p, v = rodrigues_circle(th)
        assert np.abs(v - np.cos(3 * th) / SQ2).max() < 1e-12
        assert np.abs((p ** 2).sum(axis=0) - 1.0).max() < 1e-14

    def test_matches_rotation_matrix(self):
        base = np.array([-1.0, 0.0, 1.0]) / SQ2
        for th in np.linspace(0.0, 2 * math.pi, 17):
            p, v = rodrigues_circle(th)
            assert_allclose(p, rodrigues_matrix(th) @ base, atol=1e-14)
            assert_allclose(v, det_vandermonde(p), atol=1e-14)


class TestExport:
    def test_csv_layout(self, tmp_path):
        g = grid_eval(3, (8, 5))
        out = tmp_path / "g.csv"
        g.write(out)
        raw = out.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode().strip().split("\n")
        assert lines[0] == "theta,phi,value"
        assert len(lines) == 1 + 8 * 5
        # row-major: phi fixed, theta sweeps
        first = [line.split(",") for line in lines[1:9]]
        assert len({row[1] for row in first}) == 1
        parsed = np.array([float(r[2]) for r in first])
        assert_allclose(parsed, g.values[0], rtol=0, atol=0)

    def test_csv_round_trips_values(self, tmp_path):
        g = grid_eval(3, (16, 9))
        out = tmp_path / "g.csv"
        g.write(out)
        rows = out.read_text().strip().split("\n")[1:]
        vals = np.array([float(r.split(",")[2]) for r in rows]).reshape(9, 16)
        assert np.array_equal(vals, g.values)

    def test_json_layout(self, tmp_path):
        g = grid_eval(3, (6, 4), exponents=(0, 1, 3))
        out = tmp_path / "g.json"
        g.write(out)
        payload = json.loads(out.read_text())
        assert payload["n"] == 3
        assert payload["exponents"] == [0, 1, 3]
        assert payload["theta_count"] == 6
        assert payload["phi_count"] == 4
        assert len(payload["values"]) == 24
        assert_allclose(np.array(payload["values"]).reshape(4, 6), g.values, rtol=0, atol=0)

    def test_write_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        grid_eval(4, (32, 17)).write(a)
        grid_eval(4, (32, 17)).write(b)
        assert a.read_bytes() == b.read_bytes()
