"""
Curvature and holonomy of invariant connections.

The curvature is the alternating map
    rho(x, y) = [alpha x, alpha y]_g - alpha([x, y]_h)
evaluated on a complement of k in h, and the holonomy algebra is the
smallest ad(alpha(h))-invariant subspace of g containing its image.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from homogeneous.connection import ConnectionData, validate
from lie.algebra import KillingSignature, is_subalgebra, killing_signature
from lie.exceptions import InputError, PreconditionError
from lie.subspace import Subspace, _resolve_tol, close_under_operators, iterate_closure, span

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CurvatureForm:
    """values[a, b] = rho(n_a, n_b) for the complement basis rows n."""
    complement_basis: np.ndarray
    values: np.ndarray

    @property
    def size(self) -> int:
        return self.complement_basis.shape[0]

    @property
    def target_dim(self) -> int:
        return self.values.shape[-1]

    def pairs(self) -> Iterator[Tuple[int, int, np.ndarray]]:
        for a in range(self.size):
            for b in range(a + 1, self.size):
                yield a, b, self.values[a, b]

    def image_vectors(self) -> np.ndarray:
        upper = np.triu_indices(self.size, k=1)
        return self.values[upper].reshape(-1, self.target_dim)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values), initial=0.0))


def raw_curvature(connection: ConnectionData, x, y) -> np.ndarray:
    """rho(x, y) for arbitrary vectors of h, without any validation."""
    h, g, alpha = connection.h, connection.g, connection.alpha
    return g.bracket(alpha @ h.vector(x), alpha @ h.vector(y)) - alpha @ h.bracket(x, y)


def curvature(connection: ConnectionData, complement=None, tol: Optional[float] = None) -> CurvatureForm:
    """
    Curvature on a complement of k.

    Args:
        connection (ConnectionData): a connection passing `validate`
        complement (optional): rows spanning a complement of k in h; defaults to
            the standard vectors on the non-pivot columns of k

    Raises:
        PreconditionError: if the connection fails validation
    """
    tol = _resolve_tol(tol)
    report = validate(connection, tol)
    if not report.ok:
        raise PreconditionError('connection fails {0}'.format(', '.join(report.failures)))
    h, g, alpha = connection.h, connection.g, connection.alpha
    if complement is None:
        rows = connection.complement()
    else:
        rows = np.atleast_2d(np.asarray(complement, dtype=float)).reshape(-1, h.dim)
        if rows.shape[0] != h.dim - connection.k_basis.dim or span(
                np.vstack([connection.k_basis.basis, rows]), tol).dim != h.dim:
            raise InputError('complement rows do not span a complement of k')
    images = rows @ alpha.T
    values = np.einsum('ai,bj,ijk->abk', images, images, g.constants)
    values -= np.einsum('ai,bj,ijk->abk', rows, rows, h.constants) @ alpha.T
    return CurvatureForm(rows, values)


def curvature_image(form: CurvatureForm, tol: Optional[float] = None) -> Subspace:
    return span(form.image_vectors(), tol, ambient_dim=form.target_dim)


def holonomy_operators(connection: ConnectionData) -> np.ndarray:
    """ad(alpha(e_i)) for every basis vector e_i of h."""
    return np.einsum('ji,jlk->ikl', connection.alpha, connection.g.constants)


def iterate_wang_holonomy(connection: ConnectionData, tol: Optional[float] = None) -> Iterator[Subspace]:
    form = curvature(connection, tol=tol)
    return iterate_closure(curvature_image(form, tol), list(holonomy_operators(connection)), tol)


def wang_holonomy(connection: ConnectionData, tol: Optional[float] = None) -> Subspace:
    """
    Holonomy algebra of an invariant connection on a simply connected homogeneous space.

    Raises:
        PreconditionError: if the connection fails validation
    """
    form = curvature(connection, tol=tol)
    image = curvature_image(form, tol)
    holonomy = close_under_operators(image, list(holonomy_operators(connection)), tol)
    logger.debug('Curvature image dim %d, holonomy dim %d', image.dim, holonomy.dim)
    return holonomy


@dataclass
class HolonomyReport:
    subspace: Subspace
    curvature_dim: int
    signature: KillingSignature
    is_subalgebra: bool
    equals_g: bool
    warnings: List[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.subspace.dim


def holonomy_report(connection: ConnectionData, tol: Optional[float] = None) -> HolonomyReport:
    tol = _resolve_tol(tol)
    form = curvature(connection, tol=tol)
    image = curvature_image(form, tol)
    holonomy = close_under_operators(image, list(holonomy_operators(connection)), tol)
    warnings = []
    closed = is_subalgebra(connection.g, holonomy, tol)
    if closed:
        signature = killing_signature(connection.g, holonomy, tol)
    else:
        signature = KillingSignature(0, 0, 0)
        warnings.append('holonomy subspace is not closed under the bracket')
    if holonomy.ambiguous or image.ambiguous:
        warnings.append('holonomy dimension is tolerance-ambiguous')
    if connection.simply_connected is False:
        warnings.append('base is not simply connected; result is the holonomy of the universal cover')
    return HolonomyReport(holonomy, image.dim, signature, closed, holonomy.dim == connection.g.dim, warnings)


def ambrose_singer_residual(connection: ConnectionData, holonomy: Subspace) -> float:
    """Largest residual of a curvature value outside the holonomy subspace."""
    form = curvature(connection)
    return holonomy.residual_norm(form.image_vectors()) if form.size > 1 else 0.0


def module_residual(connection: ConnectionData, holonomy: Subspace) -> float:
    """Largest residual of ad(alpha x) applied to the holonomy basis."""
    if not holonomy.dim:
        return 0.0
    images = np.einsum('ikl,al->aik', holonomy_operators(connection), holonomy.basis)
    return holonomy.residual_norm(images.reshape(-1, connection.g.dim))
