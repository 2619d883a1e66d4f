"""
Matrix realizations of h = so(p+1) + so(q+1) and of the graded conformal algebra g.

h: an element v + A of so(m+1) is the block matrix [[0, -v^t], [v, A]].
   Basis order (R^p, R^q, so(p), so(q)); so-blocks use E_ab - E_ba for a < b.

g: so of the form B = [[0, 0, 1], [0, gh, 0], [1, 0, 0]] with gh = diag(I_p, sgn(s') I_q),
   whose elements read [[a, w^t, 0], [X, A, -gh w], [0, -X^t gh, -a]].
   Basis order (g_-1, E, so(gh), g_1), where E is the grading element acting by +1
   on g_-1 and by -1 on g_1.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
from scipy.linalg import block_diag

from homogeneous.connection import Grading
from lie.algebra import LieAlgebraData, check_jacobi
from lie.exceptions import ConstructionError
from lie.subspace import Subspace, span, threshold
from spheres.params import SphereParams

logger = logging.getLogger(__name__)


def _pairs(m: int) -> List[Tuple[int, int]]:
    return list(itertools.combinations(range(m), 2))


def _rotation_generator(size: int, a: int, b: int) -> np.ndarray:
    m = np.zeros((size, size))
    m[a, b], m[b, a] = 1.0, -1.0
    return m


def _sphere_block(m: int) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Translations v + 0 and rotations 0 + A of so(m+1)."""
    translations = []
    for a in range(m):
        t = np.zeros((m + 1, m + 1))
        t[1 + a, 0], t[0, 1 + a] = 1.0, -1.0
        translations.append(t)
    rotations = [_rotation_generator(m + 1, 1 + a, 1 + b) for a, b in _pairs(m)]
    return translations, rotations


@lru_cache(maxsize=None)
def build_h(params: SphereParams) -> Tuple[LieAlgebraData, Subspace, Subspace]:
    """
    Returns:
        (LieAlgebraData, Subspace, Subspace): h, its isotropy subalgebra k = so(p) + so(q)
        and the complement n = R^p + R^q
    """
    p, q = params.p, params.q
    trans_p, rot_p = _sphere_block(p)
    trans_q, rot_q = _sphere_block(q)
    zero_p, zero_q = np.zeros((p + 1, p + 1)), np.zeros((q + 1, q + 1))
    basis = ([block_diag(t, zero_q) for t in trans_p] + [block_diag(zero_p, t) for t in trans_q]
             + [block_diag(r, zero_q) for r in rot_p] + [block_diag(zero_p, r) for r in rot_q])
    labels = (['v{0}'.format(a + 1) for a in range(p)] + ['w{0}'.format(b + 1) for b in range(q)]
              + ['A{0}{1}'.format(a + 1, b + 1) for a, b in _pairs(p)]
              + ['B{0}{1}'.format(a + 1, b + 1) for a, b in _pairs(q)])
    h = LieAlgebraData.from_matrices(basis, labels)
    n = params.n
    identity = np.eye(h.dim)
    return h, span(identity[n:], ambient_dim=h.dim), span(identity[:n], ambient_dim=h.dim)


@dataclass(frozen=True, eq=False)
class GradedG:
    algebra: LieAlgebraData
    grading: Grading
    metric: np.ndarray
    so_index: Dict[Tuple[int, int], int]

    @property
    def n(self) -> int:
        return len(self.grading.minus)

    @property
    def scaling_index(self) -> int:
        return self.n

    @property
    def p_basis(self) -> Subspace:
        identity = np.eye(self.algebra.dim)
        return span(identity[list(self.grading.zero + self.grading.plus)], ambient_dim=self.algebra.dim)

    def degrees(self) -> np.ndarray:
        degree = np.zeros(self.algebra.dim, dtype=int)
        degree[list(self.grading.minus)] = -1
        degree[list(self.grading.plus)] = 1
        return degree

    def endomorphism(self, vectors) -> np.ndarray:
        """Action of the g_0 component of each vector on g_-1, as (..., n, n) matrices."""
        vectors = self.algebra.vector(vectors)
        zero = list(self.grading.zero)
        minus = list(self.grading.minus)
        table = self.algebra.constants[np.ix_(zero, minus, minus)]
        return np.einsum('...x,xsr->...rs', vectors[..., zero], table)

    def element_from_endomorphism(self, matrices) -> np.ndarray:
        """Inverse of `endomorphism` on co(gh): the g_0 element acting on g_-1 by each matrix."""
        matrices = np.asarray(matrices, dtype=float)
        result = np.zeros(matrices.shape[:-2] + (self.algebra.dim,))
        result[..., self.scaling_index] = np.trace(matrices, axis1=-2, axis2=-1) / self.n
        for (i, j), index in self.so_index.items():
            result[..., index] = matrices[..., i, j]
        return result

    def check(self, tol: float = 1e-10):
        """
        Raises:
            ConstructionError: if a bracket leaves the grading or E does not act by the degree
        """
        C = self.algebra.constants
        degree = self.degrees()
        allowed = degree[:, None, None] + degree[None, :, None] == degree[None, None, :]
        leak = float(np.max(np.abs(C[~allowed]), initial=0.0))
        if leak > threshold(tol, C):
            raise ConstructionError('bracket leaves the grading by {0:.3g}'.format(leak))
        action = self.algebra.ad(np.eye(self.algebra.dim)[self.scaling_index])
        expected = np.diag(-degree.astype(float))
        if not np.allclose(action, expected, rtol=0.0, atol=tol):
            raise ConstructionError('grading element does not act by the degree')
        if not check_jacobi(self.algebra, tol).ok:
            raise ConstructionError('structure table of g violates the Jacobi identity')


@lru_cache(maxsize=None)
def build_g(params: SphereParams) -> GradedG:
    p, n = params.p, params.n
    size = n + 2
    metric = np.array([1.0] * p + [float(params.sign)] * params.q)

    minus = []
    for i in range(n):
        m = np.zeros((size, size))
        m[1 + i, 0] = 1.0
        m[n + 1, 1 + i] = -metric[i]
        minus.append(m)
    scaling = np.zeros((size, size))
    scaling[0, 0], scaling[n + 1, n + 1] = -1.0, 1.0
    rotations = []
    for i, j in _pairs(n):
        m = np.zeros((size, size))
        m[1 + i, 1 + j] = 1.0
        m[1 + j, 1 + i] = -metric[i] * metric[j]
        rotations.append(m)
    plus = []
    for i in range(n):
        m = np.zeros((size, size))
        m[0, 1 + i] = 1.0
        m[1 + i, n + 1] = -metric[i]
        plus.append(m)

    labels = (['X{0}'.format(i + 1) for i in range(n)] + ['E']
              + ['A{0}{1}'.format(i + 1, j + 1) for i, j in _pairs(n)]
              + ['Z{0}'.format(i + 1) for i in range(n)])
    algebra = LieAlgebraData.from_matrices(minus + [scaling] + rotations + plus, labels)
    so_start = n + 1
    grading = Grading(
        minus=range(n),
        zero=range(n, so_start + len(rotations)),
        plus=range(so_start + len(rotations), algebra.dim),
    )
    so_index = {pair: so_start + t for t, pair in enumerate(_pairs(n))}
    graded = GradedG(algebra, grading, metric, so_index)
    graded.check()
    logger.debug('Built graded algebra of dimension %d for %s', algebra.dim, params)
    return graded


def frame_scales(params: SphereParams) -> np.ndarray:
    """Lengths 1/sqrt(s), 1/sqrt(|s'|) of the R^p and R^q basis vectors in the metric."""
    return np.array([1.0 / np.sqrt(params.s)] * params.p + [1.0 / np.sqrt(abs(params.s_prime))] * params.q)


def alpha0(params: SphereParams, h: LieAlgebraData, graded: GradedG) -> np.ndarray:
    """
    The isometry n -> g_-1 extended by the inclusion so(p) + so(q) -> so(p+q) on k.

    Returns:
        np.ndarray: (dim g, dim h) matrix
    """
    p, n = params.p, params.n
    alpha = np.zeros((graded.algebra.dim, h.dim))
    alpha[np.arange(n), np.arange(n)] = frame_scales(params)
    column = n
    for a, b in _pairs(p):
        alpha[graded.so_index[(a, b)], column] = 1.0
        column += 1
    for a, b in _pairs(params.q):
        alpha[graded.so_index[(p + a, p + b)], column] = 1.0
        column += 1
    return alpha
