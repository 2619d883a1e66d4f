import numpy as np
from django.test import SimpleTestCase

from automorphisms.hat import (
    annihilation_residual, build_hat, commutator_closed, hat_curvature_span, hat_holonomy, infinitesimal_automorphisms,
    kappa_on_quotient, observation_residual,
)
from common import constants
from homogeneous.connection import ConnectionData
from homogeneous.holonomy import curvature
from lie.algebra import LieAlgebraData
from lie.exceptions import PreconditionError
from lie.subspace import Subspace, span
from spheres.model import normal_connection
from spheres.params import REGIME_FLAT, SphereParams, parameter_grid, regime

SO3 = [(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0)]
SL2 = [(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)]


def flat_model():
    sl2 = LieAlgebraData.from_structure(3, SL2)
    borel = span([[1, 0, 0], [0, 1, 0]])
    return ConnectionData(h=sl2, g=sl2, k_basis=borel, p_basis=borel, alpha=np.eye(3), simply_connected=True)


class HatConnectionTest(SimpleTestCase):

    def test_flat_model(self):
        connection = flat_model()
        hat = build_hat(connection)
        for i in range(3):
            np.testing.assert_allclose(hat.operators[i], connection.g.ad(np.eye(3)[i]), atol=1e-12)
        self.assertEqual(hat_holonomy(hat).dim, 0)

    def test_principal_connection_is_rejected(self):
        h = LieAlgebraData.from_structure(3, SO3)
        g = LieAlgebraData.from_structure(1, [])
        principal = ConnectionData(h=h, g=g, k_basis=span([[0, 0, 1]]), p_basis=Subspace.full(1),
                                   alpha=[[0.0, 0.0, 1.0]], kind=constants.KIND_PRINCIPAL)
        with self.assertRaises(PreconditionError):
            build_hat(principal)

    def test_main_observation(self):
        connection = normal_connection(SphereParams(2, 2, 1, 1))
        hat = build_hat(connection)
        self.assertLess(observation_residual(connection, hat.operators), 1e-9)

    def test_isotropy_acts_by_adjoint(self):
        connection = normal_connection(SphereParams(2, 2, 1, 3))
        hat = build_hat(connection)
        for z, psi in zip(connection.k_basis.basis, connection.psi):
            np.testing.assert_allclose(hat.apply(z), connection.g.ad(psi), atol=1e-10)

    def test_kappa_on_quotient(self):
        connection = normal_connection(SphereParams(2, 2, 1, 3))
        form = curvature(connection)
        kappa = kappa_on_quotient(connection, form)
        x, y = connection.alpha[:, 0], connection.alpha[:, 1]
        np.testing.assert_allclose(np.einsum('u,v,uvk->k', x, y, kappa), form.values[0, 1], atol=1e-10)
        shift = connection.p_basis.basis[0] - 2.0 * connection.p_basis.basis[-1]
        np.testing.assert_allclose(np.einsum('u,v,uvk->k', x + shift, y, kappa), form.values[0, 1], atol=1e-10)
        self.assertEqual(np.max(np.abs(kappa_on_quotient(flat_model(), curvature(flat_model())))), 0.0)


class AutomorphismTest(SimpleTestCase):

    def test_flat_model(self):
        report = infinitesimal_automorphisms(flat_model())
        self.assertEqual(report.dim, 3)
        self.assertEqual(report.hat_dim, 0)
        self.assertEqual(report.warnings, [])

    def test_flat_spheres(self):
        connection = normal_connection(SphereParams(2, 3, 1, -1))
        report = infinitesimal_automorphisms(connection)
        self.assertEqual(report.dim, 21)
        self.assertEqual(report.hat_dim, 0)

    def test_generic_spheres(self):
        connection = normal_connection(SphereParams(2, 2, 1, 3))
        report = infinitesimal_automorphisms(connection)
        self.assertGreaterEqual(report.hat_dim, 1)
        self.assertGreaterEqual(report.dim, 6)
        self.assertLessEqual(report.dim, 15)
        self.assertLess(report.containment_residual, 1e-8)
        self.assertTrue(report.algebra.contains(connection.alpha.T, 1e-8))
        self.assertTrue(report.hat_closed)

    def test_hat_holonomy_is_closed(self):
        hat = build_hat(normal_connection(SphereParams(2, 2, 1, 1)))
        holonomy = hat_holonomy(hat)
        self.assertTrue(commutator_closed(holonomy, 15))
        self.assertLess(annihilation_residual(holonomy, 15, hat.base.alpha.T), 1e-8)

    def test_closure_from_curvature_generators(self):
        hat = build_hat(normal_connection(SphereParams(2, 2, 1, 3)))
        start = hat_curvature_span(hat)
        holonomy = hat_holonomy(hat, start=start)
        self.assertTrue(commutator_closed(holonomy, 15, generators=start.basis))
        self.assertTrue(commutator_closed(holonomy, 15))
        e01, e10 = np.zeros((2, 2)), np.zeros((2, 2))
        e01[0, 1] = e10[1, 0] = 1.0
        self.assertFalse(commutator_closed(span([e01.ravel(), e10.ravel()]), 2))

    def test_missing_simple_connectivity(self):
        report = infinitesimal_automorphisms(normal_connection(SphereParams(1, 3, 1, 2)))
        self.assertTrue(any('simply connected' in w for w in report.warnings))
        self.assertEqual(report.dim, 15)

    def test_tolerance_stability(self):
        connection = normal_connection(SphereParams(2, 2, 1, 1))
        dims = {infinitesimal_automorphisms(connection, tol).dim for tol in (1e-9, 1e-10)}
        self.assertEqual(len(dims), 1)

    def test_containment_on_grid(self):
        for params in parameter_grid():
            flat = regime(params)[0] == REGIME_FLAT
            connection = normal_connection(params)
            report = infinitesimal_automorphisms(connection, check_closure=False)
            self.assertIsNone(report.hat_closed)
            self.assertLess(report.containment_residual, 1e-8, params)
            self.assertGreaterEqual(report.dim, connection.h.dim, params)
            if flat:
                self.assertEqual(report.dim, params.g_dim, params)
