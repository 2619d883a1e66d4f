import numpy as np
from django.test import SimpleTestCase

from common import constants
from homogeneous.connection import ConnectionData, Grading, validate
from homogeneous.holonomy import (
    ambrose_singer_residual, curvature, curvature_image, holonomy_report, iterate_wang_holonomy,
    module_residual, raw_curvature, wang_holonomy,
)
from lie.algebra import LieAlgebraData
from lie.exceptions import InputError, PreconditionError
from lie.subspace import Subspace, span
from spheres.model import normal_connection
from spheres.params import SphereParams

SO3 = [(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0)]
SL2 = [(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)]


def round_sphere_bundle():
    """SO(3) -> S^2 with the canonical SO(2) connection."""
    h = LieAlgebraData.from_structure(3, SO3)
    g = LieAlgebraData.from_structure(1, [])
    return ConnectionData(
        h=h, g=g, k_basis=span([[0, 0, 1]]), p_basis=Subspace.full(1),
        alpha=[[0.0, 0.0, 1.0]], kind=constants.KIND_PRINCIPAL)


def flat_model():
    sl2 = LieAlgebraData.from_structure(3, SL2)
    borel = span([[1, 0, 0], [0, 1, 0]])
    return ConnectionData(h=sl2, g=sl2, k_basis=borel, p_basis=borel, alpha=np.eye(3))


class ValidateTest(SimpleTestCase):

    def test_principal_bundle_is_valid(self):
        report = validate(round_sphere_bundle())
        self.assertTrue(report.ok)
        self.assertEqual(report.warnings, [])
        self.assertNotIn('C.3', report.passed)

    def test_principal_with_proper_p(self):
        so3 = LieAlgebraData.from_structure(3, SO3)
        line = span([[0, 0, 1]])
        connection = ConnectionData(h=so3, g=so3, k_basis=line, p_basis=line, alpha=np.eye(3),
                                    kind=constants.KIND_PRINCIPAL)
        report = validate(connection)
        self.assertTrue(report.ok)
        self.assertTrue(any('p_basis is expected to be all of g' in w for w in report.warnings))

    def test_flat_model_is_valid(self):
        report = validate(flat_model())
        self.assertTrue(report.ok)
        self.assertEqual(report.rank_deficit, 0)

    def test_degenerate_on_complement(self):
        plane = LieAlgebraData.from_structure(2, [])
        line = span([[1, 0]])
        connection = ConnectionData(h=plane, g=plane, k_basis=line, p_basis=line, alpha=np.diag([1.0, 0.0]))
        report = validate(connection)
        self.assertEqual(report.failures, ['C.3'])
        self.assertEqual(report.rank_deficit, 1)

    def test_not_equivariant(self):
        sl2 = LieAlgebraData.from_structure(3, SL2)
        borel = span([[1, 0, 0], [0, 1, 0]])
        connection = ConnectionData(h=sl2, g=sl2, k_basis=borel, p_basis=borel, alpha=np.diag([1.0, 1.0, 0.0]))
        report = validate(connection)
        self.assertIn('C.2', report.failures)
        with self.assertRaises(PreconditionError):
            curvature(connection)

    def test_psi_prime_mismatch(self):
        c = round_sphere_bundle()
        wrong = ConnectionData(h=c.h, g=c.g, k_basis=c.k_basis, p_basis=c.p_basis, alpha=c.alpha,
                               kind=c.kind, psi_prime=[[2.0]])
        self.assertIn('C.1', validate(wrong).failures)

    def test_shape_errors(self):
        c = round_sphere_bundle()
        with self.assertRaises(InputError):
            ConnectionData(h=c.h, g=c.g, k_basis=c.k_basis, p_basis=c.p_basis, alpha=np.zeros((2, 3)))
        with self.assertRaises(InputError):
            ConnectionData(h=c.h, g=c.g, k_basis=c.k_basis, p_basis=c.p_basis, alpha=c.alpha,
                           grading=Grading(minus=(0,), zero=(0,), plus=()))


class CurvatureTest(SimpleTestCase):

    def test_round_sphere_curvature(self):
        form = curvature(round_sphere_bundle())
        self.assertEqual(form.size, 2)
        np.testing.assert_allclose(form.values[0, 1], [-1.0])
        np.testing.assert_allclose(form.values[1, 0], [1.0])
        self.assertEqual(curvature_image(form).dim, 1)

    def test_custom_complement(self):
        form = curvature(round_sphere_bundle(), complement=[[1, 0, 0], [1, 1, 0]])
        np.testing.assert_allclose(form.values[0, 1], [-1.0])
        with self.assertRaises(InputError):
            curvature(round_sphere_bundle(), complement=[[0, 0, 1], [1, 0, 0]])

    def test_image_independent_of_complement(self):
        rng = np.random.default_rng(7)
        for params in (SphereParams(2, 2, 1, 3), SphereParams(3, 2, 1, 2), SphereParams(2, 3, 2, -1)):
            c = normal_connection(params)
            base = c.complement()
            m = base.shape[0]
            mix = rng.normal(size=(m, m)) + m * np.eye(m)
            rows = mix @ base + rng.normal(size=(m, c.k_basis.dim)) @ c.k_basis.basis
            standard = curvature_image(curvature(c))
            mixed = curvature_image(curvature(c, complement=rows))
            self.assertTrue(standard.same_as(mixed, 1e-8), params)

    def test_curvature_is_alternating(self):
        c = round_sphere_bundle()
        x, y = np.array([0.2, 1.0, -3.0]), np.array([1.5, 0.0, 2.0])
        np.testing.assert_allclose(raw_curvature(c, x, y), -raw_curvature(c, y, x))
        np.testing.assert_allclose(raw_curvature(c, x, x), [0.0], atol=1e-12)

    def test_flat_model_has_zero_curvature(self):
        form = curvature(flat_model())
        self.assertEqual(form.size, 1)
        self.assertEqual(curvature_image(form).dim, 0)


class HolonomyTest(SimpleTestCase):

    def test_round_sphere_holonomy(self):
        holonomy = wang_holonomy(round_sphere_bundle())
        self.assertEqual(holonomy.dim, 1)

    def test_flat_holonomy_is_zero(self):
        report = holonomy_report(flat_model())
        self.assertEqual(report.dim, 0)
        self.assertEqual(report.curvature_dim, 0)
        self.assertTrue(report.is_subalgebra)
        self.assertFalse(report.equals_g)

    def test_holonomy_invariants(self):
        c = round_sphere_bundle()
        holonomy = wang_holonomy(c)
        self.assertLess(ambrose_singer_residual(c, holonomy), 1e-12)
        self.assertLess(module_residual(c, holonomy), 1e-12)

    def test_iteration_is_monotone(self):
        dims = [s.dim for s in iterate_wang_holonomy(round_sphere_bundle())]
        self.assertEqual(dims, sorted(dims))
        self.assertEqual(dims[-1], 1)

    def test_not_simply_connected_warning(self):
        c = round_sphere_bundle()
        cover = ConnectionData(h=c.h, g=c.g, k_basis=c.k_basis, p_basis=c.p_basis, alpha=c.alpha,
                               kind=c.kind, simply_connected=False)
        self.assertTrue(any('simply connected' in w for w in holonomy_report(cover).warnings))
