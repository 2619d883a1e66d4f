"""
Infinitesimal automorphisms of homogeneous Cartan geometries.

The connection is modified to a linear connection on g,

    hat(x) Y = [alpha x, Y] + kappa(Y, alpha x),

where kappa is the curvature viewed on g/p. Infinitesimal automorphisms
are the vectors of g killed by the holonomy algebra of that connection,
computed inside gl(g) with matrices flattened row by row.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from homogeneous.connection import ConnectionData
from homogeneous.holonomy import CurvatureForm, curvature, holonomy_operators
from lie.exceptions import ConstructionError, PreconditionError
from lie.subspace import Subspace, _resolve_tol, close_under_operators, null_space, span, threshold

logger = logging.getLogger(__name__)


def _require_cartan(connection: ConnectionData):
    if not connection.is_cartan:
        raise PreconditionError('infinitesimal automorphisms need a Cartan connection, got {0}'.format(
            connection.kind))


def kappa_on_quotient(connection: ConnectionData, form: CurvatureForm) -> np.ndarray:
    """
    Curvature as a bilinear map on g/p, evaluated on the standard basis of g.

    Returns:
        np.ndarray: K[u, v] = kappa(e_u + p, e_v + p), shape (dim g, dim g, dim g)

    Raises:
        PreconditionError: if alpha does not induce an isomorphism h/k -> g/p
    """
    _require_cartan(connection)
    g_dim = connection.g.dim
    p_basis = connection.p_basis
    images = form.complement_basis @ connection.alpha.T
    # columns: quotient coordinates of alpha(n_a)
    iso = p_basis.quotient_coordinates(images).T
    if iso.shape[0] != iso.shape[1] or (iso.size and np.linalg.matrix_rank(iso) < iso.shape[0]):
        raise PreconditionError('alpha does not induce an isomorphism h/k -> g/p')
    if not iso.size:
        return np.zeros((g_dim, g_dim, g_dim))
    coefficients = np.linalg.solve(iso, p_basis.quotient_coordinates(np.eye(g_dim)).T)
    return np.einsum('au,bv,abk->uvk', coefficients, coefficients, form.values)


@dataclass(frozen=True, eq=False)
class HatConnection:
    """operators[i] is the matrix of hat(e_i) acting on g."""
    base: ConnectionData
    operators: np.ndarray
    kappa: np.ndarray
    observation_residual: float = 0.0

    def apply(self, x) -> np.ndarray:
        return np.einsum('i,ikl->kl', self.base.h.vector(x), self.operators)


def observation_residual(connection: ConnectionData, operators: np.ndarray) -> float:
    """max |hat(e_i) alpha(e_j) - alpha([e_i, e_j])| over basis pairs of h."""
    alpha = connection.alpha
    lhs = np.einsum('ikl,lj->ijk', operators, alpha)
    rhs = np.einsum('ijm,km->ijk', connection.h.constants, alpha)
    return float(np.max(np.abs(lhs - rhs), initial=0.0))


def build_hat(connection: ConnectionData, tol: Optional[float] = None) -> HatConnection:
    """
    Raises:
        PreconditionError: if the connection is not a validated Cartan connection
        ConstructionError: if the modified connection fails its self-checks
    """
    tol = _resolve_tol(tol)
    _require_cartan(connection)
    form = curvature(connection, tol=tol)
    kappa = kappa_on_quotient(connection, form)
    adjoint = holonomy_operators(connection)
    # moving argument Y in the first slot of kappa
    operators = adjoint + np.einsum('uvk,vi->iku', kappa, connection.alpha)

    residual = observation_residual(connection, operators)
    if residual > threshold(tol, operators) * max(1.0, float(np.max(np.abs(connection.alpha), initial=0.0))):
        raise ConstructionError('hat(x) alpha(y) differs from alpha([x, y]) by {0:.3g}'.format(residual))
    on_k = np.einsum('zi,ikl->zkl', connection.k_basis.basis, operators)
    expected = np.einsum('zj,jlk->zkl', connection.psi, connection.g.constants)
    if not np.allclose(on_k, expected, rtol=0.0, atol=threshold(tol, operators)):
        raise ConstructionError('hat(z) differs from ad(psi(z)) on k')
    logger.debug('Built modified connection, observation residual %.3g', residual)
    return HatConnection(connection, operators, kappa, residual)


def hat_curvature(hat: HatConnection) -> np.ndarray:
    """[hat(e_i), hat(e_j)] - hat([e_i, e_j]) for i < j, flattened to rows of length (dim g)^2."""
    H = hat.operators
    n = H.shape[0]
    size = H.shape[1]
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            commutator = H[i] @ H[j] - H[j] @ H[i]
            rows.append((commutator - hat.apply(hat.base.h.constants[i, j])).ravel())
    return np.array(rows).reshape(-1, size * size)


def commutator_operator(matrix: np.ndarray) -> np.ndarray:
    """Matrix of T -> [matrix, T] on row-major flattened T."""
    identity = np.eye(matrix.shape[0])
    return np.kron(matrix, identity) - np.kron(identity, matrix.T)


def hat_curvature_span(hat: HatConnection, tol: Optional[float] = None) -> Subspace:
    size = hat.operators.shape[1]
    return span(hat_curvature(hat), tol, ambient_dim=size * size)


def hat_holonomy(hat: HatConnection, tol: Optional[float] = None, start: Optional[Subspace] = None) -> Subspace:
    """Holonomy algebra of the modified connection, as a subspace of flattened gl(g)."""
    if start is None:
        start = hat_curvature_span(hat, tol)
    if not start.dim:
        return start
    return close_under_operators(start, [commutator_operator(H) for H in hat.operators], tol)


def commutator_closed(subspace: Subspace, size: int, tol: Optional[float] = None, generators=None) -> bool:
    """
    Whether a subspace of flattened (size, size) matrices is closed under the commutator.

    Args:
        generators (optional): flattened matrices spanning S, when the subspace is
            the smallest one containing S and invariant under a family of
            commutator operators; only [S, subspace] is then checked.
            Defaults to the subspace basis.
    """
    if not subspace.dim:
        return True
    matrices = subspace.basis.reshape(-1, size, size)
    generators = subspace.basis if generators is None else np.atleast_2d(generators)
    for generator in generators.reshape(-1, size, size):
        commutators = generator @ matrices - matrices @ generator
        if not subspace.contains(commutators.reshape(-1, size * size), tol):
            return False
    return True


@dataclass
class AutomorphismReport:
    algebra: Subspace
    containment_residual: float
    hat_dim: int
    hat_closed: Optional[bool] = True
    warnings: List[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.algebra.dim


def annihilation_residual(holonomy: Subspace, size: int, vectors) -> float:
    """max |T v| over holonomy basis matrices T and the given vectors."""
    if not holonomy.dim:
        return 0.0
    matrices = holonomy.basis.reshape(-1, size, size)
    return float(np.max(np.abs(np.einsum('tij,aj->tai', matrices, np.atleast_2d(vectors))), initial=0.0))


def infinitesimal_automorphisms(connection: ConnectionData, tol: Optional[float] = None,
                                 check_closure: bool = True) -> AutomorphismReport:
    """
    Vectors of g annihilated by the holonomy of the modified connection.

    With `check_closure` off the bracket-closure diagnostic is skipped and
    `hat_closed` is left at None.

    Raises:
        PreconditionError: for principal connections or connections failing validation
    """
    tol = _resolve_tol(tol)
    hat = build_hat(connection, tol)
    size = connection.g.dim
    start = hat_curvature_span(hat, tol)
    holonomy = hat_holonomy(hat, tol, start)
    warnings = []
    if holonomy.dim:
        system = holonomy.basis.reshape(-1, size, size).reshape(-1, size)
        algebra = null_space(system, tol)
    else:
        algebra = Subspace.full(size, tol)
    images = connection.alpha.T
    residual = annihilation_residual(holonomy, size, images)
    if not algebra.contains(images, tol):
        warnings.append('alpha(h) is not contained in the automorphism algebra')
    if algebra.ambiguous or holonomy.ambiguous:
        warnings.append('automorphism dimension is tolerance-ambiguous')
    if not connection.simply_connected:
        warnings.append('base is not known to be simply connected; result describes the universal cover')
    closed = commutator_closed(holonomy, size, tol, start.basis) if check_closure else None
    logger.info('Modified holonomy dim %d, automorphisms dim %d', holonomy.dim, algebra.dim)
    return AutomorphismReport(algebra, residual, holonomy.dim, closed, warnings)
