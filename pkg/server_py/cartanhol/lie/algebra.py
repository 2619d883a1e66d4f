"""
Finite-dimensional real Lie algebras given by structure constants.

An algebra of dimension d is stored as a dense (d, d, d) tensor C with
[e_i, e_j] = sum_k C[i, j, k] e_k. Input tables only list i < j; the other
half is filled in by antisymmetry.
"""
import logging
from collections import namedtuple
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from common import constants
from lie.exceptions import InputError, PreconditionError
from lie.subspace import Subspace, _resolve_tol, row_reduce, threshold

logger = logging.getLogger(__name__)

JacobiReport = namedtuple('JacobiReport', ['max_violation', 'ok'])
KillingSignature = namedtuple('KillingSignature', ['n_plus', 'n_minus', 'n_zero'])

StructureEntry = Tuple[int, int, int, float]


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    dim: int
    constants: np.ndarray
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        table = np.asarray(self.constants, dtype=float)
        if table.shape != (self.dim, self.dim, self.dim):
            raise InputError('structure tensor of shape {0} for dimension {1}'.format(table.shape, self.dim))
        object.__setattr__(self, 'constants', table)
        if self.labels and len(self.labels) != self.dim:
            raise InputError('{0} labels for an algebra of dimension {1}'.format(len(self.labels), self.dim))

    @classmethod
    def from_structure(cls, dim: int, structure: Iterable[Sequence], labels: Optional[Sequence[str]] = None):
        """
        Build from a sparse table of (i, j, k, c) entries meaning c^k_ij = c, i < j.

        Repeated (i, j, k) entries are summed.
        """
        if not isinstance(dim, (int, np.integer)) or isinstance(dim, bool) or dim < 1:
            raise InputError('dimension must be a positive integer, got {0!r}'.format(dim))
        table = np.zeros((dim, dim, dim))
        for entry in structure:
            if len(entry) != 4:
                raise InputError('structure entry {0!r} is not (i, j, k, c)'.format(entry))
            i, j, k, c = entry
            for index in (i, j, k):
                if not isinstance(index, (int, np.integer)) or isinstance(index, bool) or not 0 <= index < dim:
                    raise InputError('index {0!r} out of range for dimension {1}'.format(index, dim))
            if not i < j:
                raise InputError('structure entry ({0}, {1}, ...) must have i < j'.format(i, j))
            table[i, j, k] += float(c)
            table[j, i, k] -= float(c)
        return cls(int(dim), table, tuple(labels or ()))

    @classmethod
    def from_matrices(cls, basis: Sequence, labels: Optional[Sequence[str]] = None,
                      tol: Optional[float] = None) -> 'LieAlgebraData':
        """
        Structure constants of a matrix Lie algebra, from a basis of square matrices.

        Raises:
            InputError: if the matrices are dependent or do not close under commutators
        """
        tol = _resolve_tol(tol)
        matrices = [np.asarray(m, dtype=float) for m in basis]
        if not matrices:
            raise InputError('empty matrix basis')
        size = matrices[0].shape
        if len(size) != 2 or size[0] != size[1] or any(m.shape != size for m in matrices):
            raise InputError('matrix basis must consist of square matrices of one size')
        dim = len(matrices)
        flat = np.vstack([m.ravel() for m in matrices]).T
        if np.linalg.matrix_rank(flat) < dim:
            raise InputError('matrix basis is linearly dependent')
        table = np.zeros((dim, dim, dim))
        for i in range(dim):
            for j in range(i + 1, dim):
                commutator = (matrices[i] @ matrices[j] - matrices[j] @ matrices[i]).ravel()
                coefficients = np.linalg.lstsq(flat, commutator, rcond=None)[0]
                if np.max(np.abs(flat @ coefficients - commutator), initial=0.0) > threshold(tol, commutator):
                    raise InputError('commutator of basis elements {0} and {1} leaves the span'.format(i, j))
                table[i, j] = coefficients
                table[j, i] = -coefficients
        table[np.abs(table) < constants.STRUCTURE_NOISE] = 0.0
        return cls(dim, table, tuple(labels or ()))

    @property
    def structure(self) -> List[StructureEntry]:
        """Sparse (i, j, k, c) table with i < j."""
        i, j, k = np.nonzero(self.constants)
        return [(int(a), int(b), int(c), float(self.constants[a, b, c])) for a, b, c in zip(i, j, k) if a < b]

    def label(self, index: int) -> str:
        return self.labels[index] if self.labels else 'e{0}'.format(index)

    def vector(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise InputError('vector of length {0} in an algebra of dimension {1}'.format(x.shape[-1], self.dim))
        return x

    def bracket(self, x, y) -> np.ndarray:
        return np.einsum('...i,...j,ijk->...k', self.vector(x), self.vector(y), self.constants)

    def ad(self, x) -> np.ndarray:
        """Matrix of ad(x) acting on coordinate columns: ad(x) @ y == bracket(x, y)."""
        return np.einsum('i,ijk->kj', self.vector(x), self.constants)

    def to_dict(self) -> dict:
        data = {'dim': self.dim, 'structure': [list(entry) for entry in self.structure]}
        if self.labels:
            data['labels'] = list(self.labels)
        return data


def bracket(algebra: LieAlgebraData, x, y) -> np.ndarray:
    return algebra.bracket(x, y)


def jacobiator(algebra: LieAlgebraData) -> np.ndarray:
    """J[i, j, k, :] = [e_i, [e_j, e_k]] + [e_j, [e_k, e_i]] + [e_k, [e_i, e_j]]."""
    C = algebra.constants
    # [e_i, [e_j, e_k]] = sum_m C[j,k,m] C[i,m,:]
    nested = np.einsum('jkm,iml->ijkl', C, C)
    return nested + np.transpose(nested, (1, 2, 0, 3)) + np.transpose(nested, (2, 0, 1, 3))


def check_jacobi(algebra: LieAlgebraData, tol: Optional[float] = None) -> JacobiReport:
    tol = _resolve_tol(tol)
    violation = float(np.max(np.abs(jacobiator(algebra)), initial=0.0))
    if violation >= tol:
        logger.info('Jacobi identity violated by %.3g', violation)
    return JacobiReport(violation, violation < tol)


def bracket_table(algebra: LieAlgebraData, subspace: Subspace) -> np.ndarray:
    """B[a, b] = [v_a, v_b] for the basis rows v of the subspace."""
    if subspace.ambient_dim != algebra.dim:
        raise InputError('subspace of R^{0} in an algebra of dimension {1}'.format(
            subspace.ambient_dim, algebra.dim))
    basis = subspace.basis
    return np.einsum('ai,bj,ijk->abk', basis, basis, algebra.constants)


def is_subalgebra(algebra: LieAlgebraData, subspace: Subspace, tol: Optional[float] = None) -> bool:
    if not subspace.dim:
        return True
    return subspace.contains(bracket_table(algebra, subspace).reshape(-1, algebra.dim), tol)


def bracket_closure(algebra: LieAlgebraData, subspace: Subspace, tol: Optional[float] = None) -> Subspace:
    """Smallest subalgebra containing `subspace`."""
    current = subspace
    while True:
        brackets = bracket_table(algebra, current).reshape(-1, algebra.dim)
        current, added = current.extend(brackets, tol)
        if not len(added):
            return current


def killing_matrix(algebra: LieAlgebraData, subspace: Optional[Subspace] = None,
                   tol: Optional[float] = None) -> np.ndarray:
    """
    Killing form of a subalgebra in the coordinates of its reduced basis.

    Raises:
        PreconditionError: if `subspace` is not closed under the bracket
    """
    subspace = subspace if subspace is not None else Subspace.full(algebra.dim, tol)
    if not subspace.dim:
        return np.zeros((0, 0))
    brackets = bracket_table(algebra, subspace)
    if not subspace.contains(brackets.reshape(-1, algebra.dim), tol):
        raise PreconditionError('subspace of dimension {0} is not a subalgebra'.format(subspace.dim))
    # ad_sub[a, c, b]: coefficient of v_c in [v_a, v_b]
    ad_sub = np.transpose(subspace.coordinates(brackets), (0, 2, 1))
    return np.einsum('acd,bdc->ab', ad_sub, ad_sub)


def killing_signature(algebra: LieAlgebraData, subspace: Optional[Subspace] = None,
                      tol: Optional[float] = None) -> KillingSignature:
    """
    Inertia of the Killing form restricted to a subalgebra.

    Eigenvalues with |lambda| <= tol * max(1, max |lambda|) count as zero.
    """
    tol = _resolve_tol(tol)
    form = killing_matrix(algebra, subspace, tol)
    if not form.size:
        return KillingSignature(0, 0, 0)
    eigenvalues = np.linalg.eigvalsh((form + form.T) / 2)
    cut = threshold(tol, eigenvalues)
    return KillingSignature(
        int(np.sum(eigenvalues > cut)),
        int(np.sum(eigenvalues < -cut)),
        int(np.sum(np.abs(eigenvalues) <= cut)),
    )


def change_basis(algebra: LieAlgebraData, columns, labels: Optional[Sequence[str]] = None) -> LieAlgebraData:
    """
    Structure constants in the basis f_a = sum_i columns[i, a] e_i.

    Raises:
        InputError: if `columns` is not an invertible (dim, dim) matrix
    """
    P = np.asarray(columns, dtype=float)
    if P.shape != (algebra.dim, algebra.dim):
        raise InputError('change of basis of shape {0} for dimension {1}'.format(P.shape, algebra.dim))
    _, pivots, _ = row_reduce(P)
    if len(pivots) < algebra.dim:
        raise InputError('change of basis is singular')
    inverse = np.linalg.inv(P)
    table = np.einsum('ia,jb,ijk,ck->abc', P, P, algebra.constants, inverse)
    table[np.abs(table) < constants.STRUCTURE_NOISE] = 0.0
    return LieAlgebraData(algebra.dim, table, tuple(labels or ()))
