"""
Subspaces of R^n held as reduced row-echelon bases.

Every rank decision in the project goes through `row_reduce`: Gaussian
elimination with partial pivoting, where a pivot counts only if it exceeds
tol * max(1, max |entry|) of the matrix being reduced.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from common import constants
from lie.exceptions import InputError

logger = logging.getLogger(__name__)


def threshold(tol: float, *arrays) -> float:
    """
    Absolute cut-off for a tolerance relative to the data it is applied to.

    Args:
        tol (float): relative tolerance
        *arrays: arrays whose largest absolute entry sets the scale

    Returns:
        float: tol * max(1, max |entry|)
    """
    scale = 1.0
    for array in arrays:
        array = np.asarray(array, dtype=float)
        if array.size:
            scale = max(scale, float(np.max(np.abs(array))))
    return tol * scale


def _resolve_tol(tol: Optional[float]) -> float:
    if tol is None:
        return constants.DEFAULT_TOL
    if tol <= 0:
        raise InputError('tolerance must be positive, got {0}'.format(tol))
    return float(tol)


def row_reduce(matrix, tol: Optional[float] = None,
               scale: Optional[float] = None) -> Tuple[np.ndarray, Tuple[int, ...], bool]:
    """
    Reduced row-echelon form with partial pivoting and a pivot threshold.

    Args:
        matrix: (m, n) array
        tol (float, optional): relative pivot tolerance
        scale (float, optional): size of the data the rows were derived from;
            defaults to the largest entry of `matrix`

    Returns:
        (rows, pivots, ambiguous): the nonzero rows of the reduced matrix with
        entries below the cut-off snapped to zero, the pivot column of each row,
        and whether an accepted pivot was within the ambiguity band above the cut-off
    """
    tol = _resolve_tol(tol)
    reduced = np.array(matrix, dtype=float)
    if reduced.ndim != 2:
        raise InputError('row_reduce expects a 2D array, got shape {0}'.format(reduced.shape))
    m, n = reduced.shape
    cut = threshold(tol, reduced) if scale is None else tol * max(1.0, scale)
    pivots: List[int] = []
    ambiguous = False
    r = 0
    for c in range(n):
        if r == m:
            break
        column = np.abs(reduced[r:, c])
        p = r + int(np.argmax(column))
        pivot = column[p - r]
        if pivot <= cut:
            continue
        if pivot < constants.AMBIGUITY_FACTOR * cut:
            ambiguous = True
        if p != r:
            reduced[[r, p]] = reduced[[p, r]]
        reduced[r] /= reduced[r, c]
        factors = reduced[:, c].copy()
        factors[r] = 0.0
        reduced -= np.outer(factors, reduced[r])
        pivots.append(c)
        r += 1
    rows = reduced[:r]
    rows[np.abs(rows) <= cut] = 0.0
    if ambiguous:
        logger.debug('Pivot within %sx of the rank threshold %.3g', constants.AMBIGUITY_FACTOR, cut)
    return rows, tuple(pivots), ambiguous


@dataclass(frozen=True)
class LinearOperator:
    """A square matrix acting on coordinate vectors."""
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InputError('linear operator must be square, got shape {0}'.format(matrix.shape))
        object.__setattr__(self, 'matrix', matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, vectors):
        return np.asarray(vectors, dtype=float) @ self.matrix.T


@dataclass(frozen=True, eq=False)
class Subspace:
    ambient_dim: int
    basis: np.ndarray
    pivots: Tuple[int, ...]
    tol: float
    ambiguous: bool = False

    @classmethod
    def zero(cls, ambient_dim: int, tol: Optional[float] = None) -> 'Subspace':
        return cls(ambient_dim, np.zeros((0, ambient_dim)), (), _resolve_tol(tol))

    @classmethod
    def full(cls, ambient_dim: int, tol: Optional[float] = None) -> 'Subspace':
        return cls(ambient_dim, np.eye(ambient_dim), tuple(range(ambient_dim)), _resolve_tol(tol))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def free_columns(self) -> Tuple[int, ...]:
        taken = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in taken)

    def _check(self, vectors) -> np.ndarray:
        vectors = np.asarray(vectors, dtype=float)
        if vectors.shape[-1] != self.ambient_dim:
            raise InputError('vector of length {0} in a subspace of R^{1}'.format(
                vectors.shape[-1], self.ambient_dim))
        return vectors

    def residual(self, vectors) -> np.ndarray:
        """What is left of each vector after removing its component along the basis."""
        vectors = self._check(vectors)
        if not self.dim:
            return vectors.copy()
        return vectors - vectors[..., list(self.pivots)] @ self.basis

    def residual_norm(self, vectors) -> float:
        residual = self.residual(vectors)
        return float(np.max(np.abs(residual))) if residual.size else 0.0

    def contains(self, vectors, tol: Optional[float] = None) -> bool:
        tol = self.tol if tol is None else tol
        return self.residual_norm(vectors) <= threshold(tol, vectors)

    def coordinates(self, vectors) -> np.ndarray:
        """Coefficients along the basis (exact for members of the subspace)."""
        return self._check(vectors)[..., list(self.pivots)]

    def quotient_coordinates(self, vectors) -> np.ndarray:
        """Coordinates of the image under the canonical surjection onto R^n / self."""
        return self.residual(vectors)[..., list(self.free_columns)]

    def is_subspace_of(self, other: 'Subspace', tol: Optional[float] = None) -> bool:
        if other.ambient_dim != self.ambient_dim:
            return False
        if not self.dim:
            return True
        return other.contains(self.basis, tol)

    def same_as(self, other: 'Subspace', tol: Optional[float] = None) -> bool:
        return self.dim == other.dim and self.is_subspace_of(other, tol)

    def extend(self, vectors, tol: Optional[float] = None) -> Tuple['Subspace', np.ndarray]:
        """
        Enlarge the subspace by a set of vectors.

        Returns:
            (Subspace, np.ndarray): the enlarged subspace and the rows that were
            added to its basis (empty when nothing new was found)
        """
        tol = self.tol if tol is None else tol
        vectors = self._check(np.atleast_2d(vectors)) if np.size(vectors) else np.zeros((0, self.ambient_dim))
        fresh = self.residual(vectors)
        scale = float(np.max(np.abs(vectors))) if vectors.size else 0.0
        increment, new_pivots, ambiguous = row_reduce(fresh, tol, scale)
        if not new_pivots:
            return self, increment
        old = self.basis
        if self.dim:
            old = old - old[:, list(new_pivots)] @ increment
        rows = np.vstack([old, increment])
        pivots = self.pivots + new_pivots
        order = np.argsort(pivots)
        enlarged = Subspace(
            self.ambient_dim, rows[order], tuple(pivots[i] for i in order), self.tol,
            self.ambiguous or ambiguous)
        return enlarged, increment


def span(vectors: Iterable, tol: Optional[float] = None, ambient_dim: Optional[int] = None) -> Subspace:
    """
    The subspace spanned by a list of vectors.

    Args:
        vectors: list of equal-length vectors, or an (m, n) array
        tol (float, optional): relative rank tolerance
        ambient_dim (int, optional): needed only when `vectors` is empty

    Returns:
        Subspace: reduced basis; an empty input gives the zero subspace
    """
    tol = _resolve_tol(tol)
    rows = [np.asarray(v, dtype=float) for v in vectors] if not isinstance(vectors, np.ndarray) else vectors
    if isinstance(rows, list):
        if not rows:
            return Subspace.zero(ambient_dim or 0, tol)
        lengths = {len(v) for v in rows}
        if len(lengths) != 1:
            raise InputError('span of vectors with different lengths: {0}'.format(sorted(lengths)))
        rows = np.vstack(rows)
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2:
        raise InputError('span expects a list of vectors')
    n = rows.shape[1] if rows.shape[0] or ambient_dim is None else ambient_dim
    if ambient_dim is not None and n != ambient_dim:
        raise InputError('vectors of length {0} in R^{1}'.format(n, ambient_dim))
    if not rows.shape[0]:
        return Subspace.zero(n, tol)
    basis, pivots, ambiguous = row_reduce(rows, tol)
    return Subspace(n, basis, pivots, tol, ambiguous)


def _operator_matrix(operator, n: int) -> np.ndarray:
    matrix = operator.matrix if isinstance(operator, LinearOperator) else np.asarray(operator, dtype=float)
    if matrix.shape != (n, n):
        raise InputError('operator of shape {0} on R^{1}'.format(matrix.shape, n))
    return matrix


def iterate_closure(subspace: Subspace, operators: Sequence, tol: Optional[float] = None) -> Iterator[Subspace]:
    """
    Successive layers of the smallest operator-invariant subspace containing `subspace`.

    Breadth-first: each round applies every operator to the basis rows added in
    the previous round. Yields the starting subspace first and then every strictly
    larger subspace; stops once a round adds nothing (at most ambient_dim rounds).
    """
    n = subspace.ambient_dim
    matrices = [_operator_matrix(op, n) for op in operators]
    current = subspace
    yield current
    frontier = current.basis
    for round_number in range(n):
        if not len(frontier) or not matrices:
            return
        images = np.vstack([frontier @ matrix.T for matrix in matrices])
        current, frontier = current.extend(images, tol)
        if not len(frontier):
            return
        logger.debug('Closure round %d: dim %d', round_number + 1, current.dim)
        yield current


def close_under_operators(subspace: Subspace, operators: Sequence, tol: Optional[float] = None) -> Subspace:
    """Smallest subspace containing `subspace` and invariant under every operator."""
    closure = subspace
    for closure in iterate_closure(subspace, operators, tol):
        pass
    return closure


def null_space(matrix, tol: Optional[float] = None) -> Subspace:
    """
    Kernel of a (possibly tall) matrix, by row reduction.

    Args:
        matrix: (m, n) array

    Returns:
        Subspace: {x in R^n : matrix @ x = 0}
    """
    tol = _resolve_tol(tol)
    matrix = np.asarray(matrix, dtype=float)
    n = matrix.shape[1]
    if not matrix.shape[0]:
        return Subspace.full(n, tol)
    rows, pivots, ambiguous = row_reduce(matrix, tol)
    taken = set(pivots)
    kernel = []
    for free in (c for c in range(n) if c not in taken):
        x = np.zeros(n)
        x[free] = 1.0
        if pivots:
            x[list(pivots)] = -rows[:, free]
        kernel.append(x)
    result = span(kernel, tol, ambient_dim=n)
    if ambiguous and not result.ambiguous:
        result = Subspace(result.ambient_dim, result.basis, result.pivots, result.tol, True)
    return result
