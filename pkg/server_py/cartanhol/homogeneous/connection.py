"""
Invariant principal and Cartan connections on homogeneous spaces.

A connection is a linear map alpha: h -> g stored as a (dim g, dim h)
matrix together with a subalgebra k of h and a subalgebra p of g.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from common import constants
from lie.algebra import LieAlgebraData, is_subalgebra
from lie.exceptions import InputError
from lie.subspace import Subspace, _resolve_tol, row_reduce, threshold

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Grading:
    """Index blocks g_-1, g_0, g_1 of a |1|-graded algebra, in basis order."""
    minus: tuple
    zero: tuple
    plus: tuple

    def __post_init__(self):
        for name in ('minus', 'zero', 'plus'):
            object.__setattr__(self, name, tuple(int(i) for i in getattr(self, name)))

    def check(self, dim: int):
        indices = sorted(self.minus + self.zero + self.plus)
        if indices != list(range(dim)):
            raise InputError('grading does not partition the {0} basis indices'.format(dim))


@dataclass(frozen=True, eq=False)
class ConnectionData:
    h: LieAlgebraData
    g: LieAlgebraData
    k_basis: Subspace
    p_basis: Subspace
    alpha: np.ndarray
    kind: str = constants.KIND_CARTAN
    psi_prime: Optional[np.ndarray] = None
    grading: Optional[Grading] = None
    simply_connected: Optional[bool] = None
    sphere_params: Optional[dict] = None

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=float)
        if alpha.shape != (self.g.dim, self.h.dim):
            raise InputError('alpha of shape {0}, expected ({1}, {2})'.format(alpha.shape, self.g.dim, self.h.dim))
        object.__setattr__(self, 'alpha', alpha)
        if self.kind not in constants.KINDS:
            raise InputError('unknown connection kind {0!r}'.format(self.kind))
        if self.k_basis.ambient_dim != self.h.dim:
            raise InputError('k lives in R^{0}, h has dimension {1}'.format(self.k_basis.ambient_dim, self.h.dim))
        if self.p_basis.ambient_dim != self.g.dim:
            raise InputError('p lives in R^{0}, g has dimension {1}'.format(self.p_basis.ambient_dim, self.g.dim))
        if self.psi_prime is not None:
            psi = np.asarray(self.psi_prime, dtype=float)
            if psi.size != self.k_basis.dim * self.g.dim:
                raise InputError('psi_prime needs {0} vectors of length {1}'.format(self.k_basis.dim, self.g.dim))
            object.__setattr__(self, 'psi_prime', psi.reshape(self.k_basis.dim, self.g.dim))
        if self.grading is not None:
            self.grading.check(self.g.dim)

    @property
    def is_cartan(self) -> bool:
        return self.kind == constants.KIND_CARTAN

    @property
    def psi(self) -> np.ndarray:
        """Images in g of the k basis rows; alpha restricted to k unless given explicitly."""
        if self.psi_prime is not None:
            return self.psi_prime
        return self.k_basis.basis @ self.alpha.T

    def apply(self, x) -> np.ndarray:
        return self.h.vector(x) @ self.alpha.T

    def complement(self) -> np.ndarray:
        """Standard basis vectors of h on the non-pivot columns of k, a complement of k."""
        return np.eye(self.h.dim)[list(self.k_basis.free_columns)]


@dataclass
class ValidationReport:
    kind: str
    residuals: Dict[str, float] = field(default_factory=dict)
    passed: Dict[str, bool] = field(default_factory=dict)
    rank_deficit: int = 0
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.passed.values())

    @property
    def failures(self) -> List[str]:
        return [name for name, passed in self.passed.items() if not passed]


def equivariance_residual(connection: ConnectionData) -> float:
    """max |alpha([z, x]) - [psi'(z), alpha(x)]| over z in the k basis and basis vectors x of h."""
    if not connection.k_basis.dim:
        return 0.0
    h, g, alpha = connection.h, connection.g, connection.alpha
    # rows j of h_brackets[z]: [z, e_j]
    h_brackets = np.einsum('zi,ijk->zjk', connection.k_basis.basis, h.constants)
    lhs = h_brackets @ alpha.T
    images = alpha.T
    rhs = np.einsum('zi,jl,ilk->zjk', connection.psi, images, g.constants)
    return float(np.max(np.abs(lhs - rhs)))


def validate(connection: ConnectionData, tol: Optional[float] = None) -> ValidationReport:
    """
    Check the defining conditions of a principal or Cartan connection.

    C.1: alpha agrees with psi' on k (and lands in p).
    C.2: alpha is k-equivariant.
    C.3: (Cartan only) alpha induces an isomorphism h/k -> g/p.
    """
    tol = _resolve_tol(tol)
    report = ValidationReport(kind=connection.kind)
    alpha, k_basis, p_basis = connection.alpha, connection.k_basis, connection.p_basis

    on_k = k_basis.basis @ alpha.T
    c1 = float(np.max(np.abs(on_k - connection.psi), initial=0.0))
    c1 = max(c1, p_basis.residual_norm(connection.psi) if k_basis.dim else 0.0)
    report.residuals['C.1'] = c1
    report.passed['C.1'] = c1 <= threshold(tol, alpha, connection.psi)

    c2 = equivariance_residual(connection)
    report.residuals['C.2'] = c2
    report.passed['C.2'] = c2 <= threshold(tol, alpha) * max(1.0, float(np.max(np.abs(alpha), initial=0.0)))

    if connection.is_cartan:
        quotient = p_basis.quotient_coordinates(alpha.T)
        _, pivots, ambiguous = row_reduce(quotient, tol) if quotient.size else (None, (), False)
        expected = connection.g.dim - p_basis.dim
        report.rank_deficit = expected - len(pivots)
        report.residuals['C.3'] = float(report.rank_deficit)
        report.passed['C.3'] = len(pivots) == expected == connection.h.dim - k_basis.dim
        if ambiguous:
            report.warnings.append('rank of alpha on h/k is tolerance-ambiguous')

    if not connection.is_cartan and p_basis.dim != connection.g.dim:
        report.warnings.append('principal connection with p of dimension {0} in g of dimension {1}; '
                               'p_basis is expected to be all of g'.format(p_basis.dim, connection.g.dim))
    if not is_subalgebra(connection.h, k_basis, tol):
        report.warnings.append('k is not closed under the bracket of h')
    if not is_subalgebra(connection.g, p_basis, tol):
        report.warnings.append('p is not closed under the bracket of g')

    for name in report.failures:
        logger.info('Connection fails %s (residual %.3g)', name, report.residuals[name])
    return report
