import numpy as np
from django.test import SimpleTestCase

from homogeneous.connection import validate
from homogeneous.holonomy import curvature, curvature_image, holonomy_report, wang_holonomy
from lie.algebra import bracket_closure, check_jacobi, is_subalgebra, killing_signature
from lie.exceptions import InputError, UndefinedRatioError
from spheres.algebras import alpha0, build_g, build_h
from spheres.model import (
    build_model, kappa_closed_form, metric, normal_connection, rho_from_ricci, rho_tensor, ricci_scalar,
)
from spheres.normalization import normalization_residuals, ricci_from_curvature
from spheres.params import (
    REGIME_EINSTEIN, REGIME_FLAT, REGIME_GENERIC, SphereParams, einstein_ratio, parameter_grid, regime,
)


class SphereParamsTest(SimpleTestCase):

    def test_validation(self):
        with self.assertRaises(InputError):
            SphereParams(1, 1, 1, 1)
        with self.assertRaises(InputError):
            SphereParams(2, 2, 0, 1)
        with self.assertRaises(InputError):
            SphereParams(2, 2, 1, 0)
        with self.assertRaises(InputError):
            SphereParams(2.5, 2, 1, 1)

    def test_einstein_ratio(self):
        self.assertEqual(einstein_ratio(SphereParams(3, 3, 2, 1)), 2.0)
        self.assertEqual(einstein_ratio(SphereParams(3, 2, 1, 1)), 2.0)
        with self.assertRaises(UndefinedRatioError):
            einstein_ratio(SphereParams(2, 1, 1, 1))

    def test_regime(self):
        self.assertEqual(regime(SphereParams(2, 3, 1, -1)), (REGIME_FLAT, 0))
        self.assertEqual(regime(SphereParams(1, 4, 1, 0.5)), (REGIME_FLAT, 0))
        self.assertEqual(regime(SphereParams(2, 2, 1, 1)), (REGIME_EINSTEIN, 10))
        self.assertEqual(regime(SphereParams(2, 2, 1, 3)), (REGIME_GENERIC, 15))

    def test_grid(self):
        grid = parameter_grid()
        self.assertTrue(all(point.n >= 3 for point in grid))
        self.assertIn(SphereParams(3, 2, 1, 2), grid)
        self.assertEqual({regime(point)[0] for point in grid}, {REGIME_FLAT, REGIME_EINSTEIN, REGIME_GENERIC})

    def test_simply_connected(self):
        self.assertTrue(SphereParams(2, 2, 1, 1).simply_connected)
        self.assertFalse(SphereParams(1, 3, 1, 1).simply_connected)


class AlgebrasTest(SimpleTestCase):

    def test_h(self):
        h, k_basis, n_basis = build_h(SphereParams(2, 2, 1, 1))
        self.assertEqual((h.dim, k_basis.dim, n_basis.dim), (6, 2, 4))
        self.assertLess(check_jacobi(h).max_violation, 1e-12)
        self.assertTrue(is_subalgebra(h, k_basis))
        # [v1, v2] = v2 v1^t - v1 v2^t = -(E_12 - E_21)
        np.testing.assert_allclose(h.bracket(np.eye(6)[0], np.eye(6)[1]), -np.eye(6)[4], atol=1e-12)

    def test_g(self):
        for params, signature in [(SphereParams(2, 2, 1, 1), (5, 10, 0)), (SphereParams(2, 2, 1, -2), (9, 6, 0))]:
            graded = build_g(params)
            self.assertEqual(graded.algebra.dim, 15)
            self.assertLess(check_jacobi(graded.algebra).max_violation, 1e-12)
            self.assertTrue(is_subalgebra(graded.algebra, graded.p_basis))
            self.assertEqual(tuple(killing_signature(graded.algebra)), signature)

    def test_grading_element(self):
        graded = build_g(SphereParams(2, 3, 1, 2))
        scaling = np.eye(graded.algebra.dim)[graded.scaling_index]
        np.testing.assert_allclose(graded.endomorphism(scaling), np.eye(5), atol=1e-12)
        plus = list(graded.grading.plus)
        for index in plus:
            np.testing.assert_allclose(graded.algebra.bracket(scaling, np.eye(graded.algebra.dim)[index]),
                                       -np.eye(graded.algebra.dim)[index], atol=1e-12)
        for i in plus:
            for j in plus:
                unit = np.eye(graded.algebra.dim)
                self.assertLess(np.max(np.abs(graded.algebra.bracket(unit[i], unit[j]))), 1e-12)

    def test_endomorphism_round_trip(self):
        graded = build_g(SphereParams(2, 3, 1, -2))
        rng = np.random.default_rng(3)
        element = np.zeros(graded.algebra.dim)
        element[list(graded.grading.zero)] = rng.normal(size=len(graded.grading.zero))
        recovered = graded.element_from_endomorphism(graded.endomorphism(element))
        np.testing.assert_allclose(recovered, element, atol=1e-12)

    def test_alpha0(self):
        params = SphereParams(2, 3, 2, -3)
        h, _, _ = build_h(params)
        graded = build_g(params)
        start = alpha0(params, h, graded)
        model = build_model(params, normalized=False)
        self.assertTrue(validate(model.connection).ok)
        frame = start[:params.n, :params.n]
        pulled_back = frame.T @ np.diag(graded.metric) @ frame
        expected = np.diag([1 / params.s] * params.p + [params.sign / abs(params.s_prime)] * params.q)
        np.testing.assert_allclose(pulled_back, expected, atol=1e-12)
        self.assertEqual(np.count_nonzero(start[list(graded.grading.plus)]), 0)
        self.assertEqual(np.count_nonzero(start[list(graded.grading.minus), params.n:]), 0)


class TensorsTest(SimpleTestCase):

    def test_ricci_scalar(self):
        params = SphereParams(2, 3, 1, 2)
        ricci, scalar = ricci_scalar(params)
        np.testing.assert_allclose(ricci.matrix, np.diag([1, 1, 4, 4, 4]))
        self.assertEqual(scalar, 14)
        ricci, _ = ricci_scalar(SphereParams(1, 3, 1, 1))
        self.assertEqual(ricci.blocks(SphereParams(1, 3, 1, 1))[0], 0.0)

    def test_rho(self):
        params = SphereParams(2, 3, 1, 2)
        np.testing.assert_allclose(rho_tensor(params).matrix, np.diag([0.25, 0.25, -0.75, -0.75, -0.75]))
        for params in [SphereParams(2, 2, 1, 1), SphereParams(3, 2, 1, 2), SphereParams(2, 3, 2, 1)]:
            r = -params.s * (params.p - 1) / (2 * (params.n - 1))
            np.testing.assert_allclose(rho_tensor(params).matrix, r * metric(params).matrix, atol=1e-10)

    def test_rho_matches_definition(self):
        for params in parameter_grid():
            ricci, scalar = ricci_scalar(params)
            np.testing.assert_allclose(rho_tensor(params).matrix, rho_from_ricci(params, ricci, scalar).matrix,
                                       atol=1e-10)

    def test_einstein_ricci(self):
        params = SphereParams(3, 2, 1, 2)
        ricci, _ = ricci_scalar(params)
        np.testing.assert_allclose(ricci.matrix, params.s * (params.p - 1) * metric(params).matrix)

    def test_ricci_from_curvature(self):
        for params in parameter_grid():
            model = build_model(params, normalized=False)
            contraction = ricci_from_curvature(model, curvature(model.connection))
            np.testing.assert_allclose(contraction, model.ricci.matrix, atol=1e-8)
            self.assertAlmostEqual(float(np.sum(np.diag(contraction) * model.graded.metric)), model.scalar,
                                   places=8)


class NormalConnectionTest(SimpleTestCase):

    def test_normal_connection_is_normal(self):
        for params in parameter_grid():
            connection = normal_connection(params)
            self.assertTrue(validate(connection).ok, params)
            residuals = normalization_residuals(connection, curvature(connection))
            self.assertLess(residuals['Conf.1'], 1e-8, params)
            self.assertLess(residuals['Conf.2'], 1e-8, params)
            self.assertLess(residuals['g1'], 1e-8, params)

    def test_closed_form_matches_brackets(self):
        for params in parameter_grid():
            model = build_model(params)
            np.testing.assert_allclose(kappa_closed_form(params, model.graded).values,
                                       curvature(model.connection).values, atol=1e-8, err_msg=str(params))

    def test_flatness(self):
        for params in parameter_grid():
            size = curvature(normal_connection(params)).max_abs()
            if regime(params)[0] == REGIME_FLAT:
                self.assertLess(size, 1e-8, params)
            else:
                self.assertGreater(size, 1e-6, params)

    def test_curvature_image(self):
        form = curvature(normal_connection(SphereParams(2, 2, 1, 3)))
        self.assertGreaterEqual(curvature_image(form).dim, 4)


class HolonomyTheoremsTest(SimpleTestCase):

    def test_flat(self):
        for params in [SphereParams(2, 3, 1, -1), SphereParams(3, 2, 2, -2),
                       SphereParams(1, 4, 1, 0.5), SphereParams(4, 1, 1, -3)]:
            connection = normal_connection(params)
            self.assertLess(curvature(connection).max_abs(), 1e-8)
            self.assertEqual(wang_holonomy(connection).dim, 0)

    def test_einstein(self):
        for p, q, s in [(2, 2, 1), (3, 2, 1), (2, 3, 2)]:
            params = SphereParams(p, q, s, (p - 1) / (q - 1) * s)
            dim = (p + q + 1) * (p + q) // 2
            report = holonomy_report(normal_connection(params))
            self.assertEqual(report.dim, dim)
            self.assertEqual(tuple(report.signature), (0, dim, 0))
            self.assertTrue(report.is_subalgebra)

    def test_generic(self):
        for params, signature in [(SphereParams(2, 2, 1, 3), (5, 10, 0)),
                                  (SphereParams(2, 2, 1, -2), (9, 6, 0)),
                                  (SphereParams(2, 3, 1, 2), (6, 15, 0))]:
            report = holonomy_report(normal_connection(params))
            self.assertEqual(report.dim, params.g_dim)
            self.assertTrue(report.equals_g)
            self.assertEqual(tuple(report.signature), signature)

    def test_grid_matches_regime(self):
        for params in parameter_grid():
            connection = normal_connection(params)
            holonomy = wang_holonomy(connection)
            self.assertEqual(holonomy.dim, regime(params)[1], params)
            self.assertTrue(bracket_closure(connection.g, holonomy).same_as(holonomy))

    def test_tolerance_stability(self):
        for params in [SphereParams(2, 2, 1, 1), SphereParams(2, 2, 1, 3), SphereParams(2, 3, 1, -1)]:
            connection = normal_connection(params)
            dims = {wang_holonomy(connection, tol).dim for tol in (1e-8, 1e-9, 1e-10)}
            self.assertEqual(len(dims), 1)
