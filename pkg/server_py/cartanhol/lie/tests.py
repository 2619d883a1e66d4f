import numpy as np
from django.test import SimpleTestCase

from lie.algebra import (
    LieAlgebraData, bracket, bracket_closure, change_basis, check_jacobi, is_subalgebra,
    killing_signature,
)
from lie.exceptions import InputError, PreconditionError
from lie.subspace import (
    LinearOperator, Subspace, close_under_operators, iterate_closure, null_space, row_reduce, span,
)

SO3 = [(0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0)]
# basis (h, e, f) of sl(2): [h, e] = 2e, [h, f] = -2f, [e, f] = h
SL2 = [(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)]


class SpanTest(SimpleTestCase):

    def test_span_of_dependent_vectors(self):
        s = span([[1, 0, 0], [0, 1, 0], [1, 1, 0]])
        self.assertEqual(s.dim, 2)
        self.assertEqual(s.pivots, (0, 1))
        self.assertTrue(s.contains([3, -2, 0]))
        self.assertFalse(s.contains([0, 0, 1]))

    def test_empty_span_is_zero(self):
        self.assertEqual(span([], ambient_dim=4).dim, 0)
        self.assertEqual(span([]).dim, 0)

    def test_small_entries_are_not_rank(self):
        self.assertEqual(span([[1, 0], [1, 1e-12]]).dim, 1)
        self.assertEqual(span([[1e-12, 0], [0, 1e-13]]).dim, 0)

    def test_ambiguous_pivot_is_flagged(self):
        s = span([[1, 0], [0, 5e-9]], tol=1e-9)
        self.assertEqual(s.dim, 2)
        self.assertTrue(s.ambiguous)
        self.assertFalse(span([[1, 0], [0, 1]]).ambiguous)

    def test_mismatched_lengths(self):
        with self.assertRaises(InputError):
            span([[1, 0], [1, 0, 0]])

    def test_reduced_form(self):
        rows, pivots, _ = row_reduce([[2, 4, 0], [1, 3, 1]])
        self.assertEqual(pivots, (0, 1))
        np.testing.assert_allclose(rows, [[1, 0, -2], [0, 1, 1]], atol=1e-12)

    def test_quotient_coordinates(self):
        s = span([[1, 1, 0]])
        np.testing.assert_allclose(s.quotient_coordinates([1, 1, 0]), [0, 0])
        np.testing.assert_allclose(s.quotient_coordinates([0, 1, 2]), [1, 2])

    def test_inclusion(self):
        small = span([[1, 1, 0]])
        large = span([[1, 0, 0], [0, 1, 0]])
        self.assertTrue(small.is_subspace_of(large))
        self.assertFalse(large.is_subspace_of(small))
        self.assertTrue(large.same_as(span([[1, 1, 0], [1, -1, 0]])))


class ClosureTest(SimpleTestCase):

    def test_shift_operator(self):
        shift = np.diag([1.0, 1.0, 1.0], k=-1)
        closure = close_under_operators(span([[1, 0, 0, 0]]), [shift])
        self.assertEqual(closure.dim, 4)

    def test_no_operators(self):
        start = span([[1, 0, 0]])
        self.assertIs(close_under_operators(start, []), start)

    def test_zero_start(self):
        rotation = LinearOperator([[0, -1], [1, 0]])
        self.assertEqual(close_under_operators(Subspace.zero(2), [rotation]).dim, 0)

    def test_invariant_start(self):
        diagonal = np.diag([1.0, 2.0, 3.0])
        self.assertEqual(close_under_operators(span([[0, 1, 0]]), [diagonal]).dim, 1)

    def test_iteration_is_monotone(self):
        shift = np.diag([1.0] * 5, k=-1)
        dims = [s.dim for s in iterate_closure(span([[1, 0, 0, 0, 0, 0]]), [shift])]
        self.assertEqual(dims, [1, 2, 3, 4, 5, 6])

    def test_result_is_invariant(self):
        rng = np.random.default_rng(7)
        a, b = rng.normal(size=(2, 6, 6))
        a[:, 3:] = 0.0
        a[3:, :] = 0.0
        closure = close_under_operators(span([[1, 0, 0, 0, 0, 0]]), [a])
        self.assertTrue(closure.contains(closure.basis @ a.T))
        self.assertLessEqual(closure.dim, 3)
        self.assertEqual(close_under_operators(span([[1, 0, 0, 0, 0, 0]]), [a, b]).dim, 6)

    def test_operator_shape(self):
        with self.assertRaises(InputError):
            close_under_operators(span([[1, 0]]), [np.eye(3)])

    def test_null_space(self):
        kernel = null_space([[1, 1, 0], [0, 0, 1]])
        self.assertEqual(kernel.dim, 1)
        self.assertTrue(kernel.contains([1, -1, 0]))
        self.assertEqual(null_space(np.zeros((0, 3))).dim, 3)


class LieAlgebraTest(SimpleTestCase):

    def setUp(self):
        self.so3 = LieAlgebraData.from_structure(3, SO3)
        self.sl2 = LieAlgebraData.from_structure(3, SL2)

    def test_bracket_antisymmetry(self):
        np.testing.assert_allclose(bracket(self.so3, [1, 0, 0], [0, 1, 0]), [0, 0, 1])
        np.testing.assert_allclose(bracket(self.so3, [0, 1, 0], [1, 0, 0]), [0, 0, -1])
        np.testing.assert_allclose(bracket(self.so3, [1, 2, 3], [1, 2, 3]), [0, 0, 0])

    def test_ad_matches_bracket(self):
        x, y = np.array([1.0, -2.0, 0.5]), np.array([0.3, 1.0, 2.0])
        np.testing.assert_allclose(self.sl2.ad(x) @ y, self.sl2.bracket(x, y))

    def test_jacobi(self):
        self.assertTrue(check_jacobi(self.so3).ok)
        self.assertTrue(check_jacobi(self.sl2).ok)
        bad = LieAlgebraData.from_structure(3, [(0, 1, 1, 1.0), (0, 2, 2, 1.0), (1, 2, 0, 1.0)])
        report = check_jacobi(bad)
        self.assertFalse(report.ok)
        self.assertAlmostEqual(report.max_violation, 2.0)

    def test_killing_signature(self):
        self.assertEqual(tuple(killing_signature(self.so3)), (0, 3, 0))
        self.assertEqual(tuple(killing_signature(self.sl2)), (2, 1, 0))
        abelian = LieAlgebraData.from_structure(2, [])
        self.assertEqual(tuple(killing_signature(abelian)), (0, 0, 2))

    def test_killing_signature_of_subalgebra(self):
        borel = span([[1, 0, 0], [0, 1, 0]])
        self.assertEqual(tuple(killing_signature(self.sl2, borel)), (1, 0, 1))
        with self.assertRaises(PreconditionError):
            killing_signature(self.sl2, span([[0, 1, 0], [0, 0, 1]]))

    def test_bracket_closure(self):
        closure = bracket_closure(self.sl2, span([[0, 1, 0], [0, 0, 1]]))
        self.assertEqual(closure.dim, 3)
        self.assertTrue(is_subalgebra(self.sl2, span([[1, 0, 0]])))

    def test_invalid_structure(self):
        with self.assertRaises(InputError):
            LieAlgebraData.from_structure(3, [(1, 0, 2, 1.0)])
        with self.assertRaises(InputError):
            LieAlgebraData.from_structure(3, [(0, 1, 3, 1.0)])
        with self.assertRaises(InputError):
            LieAlgebraData.from_structure(0, [])

    def test_from_matrices(self):
        generators = []
        for a, b in [(0, 1), (0, 2), (1, 2)]:
            m = np.zeros((3, 3))
            m[a, b], m[b, a] = -1.0, 1.0
            generators.append(m)
        algebra = LieAlgebraData.from_matrices(generators)
        self.assertTrue(check_jacobi(algebra).ok)
        self.assertEqual(tuple(killing_signature(algebra)), (0, 3, 0))
        with self.assertRaises(InputError):
            LieAlgebraData.from_matrices([np.eye(2), 2 * np.eye(2)])

    def test_change_basis(self):
        # so(2,1) in a rotation basis is isomorphic to sl(2)
        P = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 1.0], [0.0, 1.0, -1.0]])
        changed = change_basis(self.sl2, P)
        self.assertTrue(check_jacobi(changed).ok)
        self.assertEqual(tuple(killing_signature(changed)), (2, 1, 0))
        with self.assertRaises(InputError):
            change_basis(self.sl2, np.zeros((3, 3)))
