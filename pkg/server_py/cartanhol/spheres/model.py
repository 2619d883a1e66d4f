"""
Normal conformal Cartan connection of a product of two spheres.

All two-tensors are written in the orthonormal frame X_1..X_{p+q} of g_-1,
where the metric is gh = diag(I_p, sgn(s') I_q). Every tensor arising here
is block-diagonal, c_1 on the R^p block and c_2 on the R^q block.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from common import constants
from homogeneous.connection import ConnectionData
from homogeneous.holonomy import CurvatureForm
from lie.algebra import LieAlgebraData
from lie.exceptions import InputError
from lie.subspace import Subspace
from spheres.algebras import GradedG, alpha0, build_g, build_h, frame_scales
from spheres.params import SphereParams, regime

logger = logging.getLogger(__name__)

ROLE_RICCI = 'ricci'
ROLE_RHO = 'rho'
ROLE_METRIC = 'metric'


@dataclass(frozen=True, eq=False)
class TwoTensor:
    matrix: np.ndarray
    role: str

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or not np.allclose(matrix, matrix.T):
            raise InputError('{0} tensor must be a symmetric square matrix'.format(self.role))
        object.__setattr__(self, 'matrix', matrix)

    @classmethod
    def from_blocks(cls, params: SphereParams, first: float, second: float, role: str) -> 'TwoTensor':
        return cls(np.diag([first] * params.p + [second] * params.q), role)

    def blocks(self, params: SphereParams) -> Tuple[float, float]:
        return float(self.matrix[0, 0]), float(self.matrix[params.p, params.p])


def metric(params: SphereParams) -> TwoTensor:
    return TwoTensor.from_blocks(params, 1.0, float(params.sign), ROLE_METRIC)


def ricci_scalar(params: SphereParams) -> Tuple[TwoTensor, float]:
    """R_ij = s(p-1) g1 + s'(q-1) sgn(s') g2 and the scalar curvature sp(p-1) + s'q(q-1)."""
    p, q, s, s_prime = params.p, params.q, params.s, params.s_prime
    ricci = TwoTensor.from_blocks(params, s * (p - 1), s_prime * (q - 1) * params.sign, ROLE_RICCI)
    return ricci, s * p * (p - 1) + s_prime * q * (q - 1)


def rho_from_ricci(params: SphereParams, ricci: TwoTensor, scalar: float) -> TwoTensor:
    """A = -(Ric - R g / (2(n-1))) / (n-2)."""
    n = params.n
    matrix = -(ricci.matrix - scalar * metric(params).matrix / (2 * (n - 1))) / (n - 2)
    return TwoTensor(matrix, ROLE_RHO)


def rho_tensor(params: SphereParams) -> TwoTensor:
    p, q, s, s_prime = params.p, params.q, params.s, params.s_prime
    delta = (params.n - 1) * (params.n - 2)
    big_delta = (p - 1) * (q - 1)
    m = s * p * (p - 1) - s_prime * q * (q - 1)
    return TwoTensor.from_blocks(
        params,
        -(2 * s * big_delta + m) / (2 * delta),
        -(2 * s_prime * big_delta - m) * params.sign / (2 * delta),
        ROLE_RHO,
    )


def normalize(alpha: np.ndarray, graded: GradedG, rho: TwoTensor) -> np.ndarray:
    """alpha + A(alpha): the g_-1 part X of each column adds the g_1 part rho @ X."""
    corrected = alpha.copy()
    minus, plus = list(graded.grading.minus), list(graded.grading.plus)
    corrected[plus] += rho.matrix @ alpha[minus]
    return corrected


def kappa_closed_form(params: SphereParams, graded: Optional[GradedG] = None) -> CurvatureForm:
    """
    Curvature of the normal connection from its coefficient formula.

    The g_0-valued curvature acts on X_s with component r as the skew-symmetrization
    in (i, j) of
        c1 d1^r_i g1_js + sgn(s') c2 d2^r_i g2_js
          - (Delta/delta)(s + s')(sgn(s') d1^r_i g2_js + d2^r_i g1_js)
    and is evaluated on the R^p + R^q basis of h.
    """
    graded = graded or build_g(params)
    p, q, s, s_prime, sign = params.p, params.q, params.s, params.s_prime, params.sign
    n = params.n
    delta = (n - 1) * (n - 2)
    big_delta = (p - 1) * (q - 1)
    m = s * p * (p - 1) - s_prime * q * (q - 1)
    c1 = s - (m + 2 * s * big_delta) / delta
    c2 = s_prime + (m - 2 * s_prime * big_delta) / delta
    cross = big_delta / delta * (s + s_prime)

    first = np.diag([1.0] * p + [0.0] * q)
    second = np.eye(n) - first
    # tilde[i, j, r, s]
    tilde = (c1 * np.einsum('ri,js->ijrs', first, first)
             + sign * c2 * np.einsum('ri,js->ijrs', second, second)
             - cross * (sign * np.einsum('ri,js->ijrs', first, second)
                        + np.einsum('ri,js->ijrs', second, first)))
    endomorphisms = tilde - np.transpose(tilde, (1, 0, 2, 3))
    scales = frame_scales(params)
    values = np.einsum('i,j,ijk->ijk', scales, scales, graded.element_from_endomorphism(endomorphisms))
    h_dim = n + p * (p - 1) // 2 + q * (q - 1) // 2
    return CurvatureForm(np.eye(h_dim)[:n], values)


@dataclass(frozen=True, eq=False)
class SphereModel:
    params: SphereParams
    h: LieAlgebraData
    k_basis: Subspace
    n_basis: Subspace
    graded: GradedG
    alpha0: np.ndarray
    alpha: np.ndarray
    ricci: TwoTensor
    scalar: float
    rho: TwoTensor
    normalized: bool
    connection: ConnectionData

    @property
    def regime(self) -> Tuple[str, int]:
        return regime(self.params)


def build_model(params: SphereParams, normalized: bool = True) -> SphereModel:
    """
    Generate the homogeneous Cartan geometry of S^p x S^q.

    Args:
        params (SphereParams): dimensions and curvatures
        normalized (bool): use the normal connection (True) or the unnormalized alpha0 (False)
    """
    h, k_basis, n_basis = build_h(params)
    graded = build_g(params)
    start = alpha0(params, h, graded)
    ricci, scalar = ricci_scalar(params)
    rho = rho_tensor(params)
    alpha = normalize(start, graded, rho)
    connection = ConnectionData(
        h=h,
        g=graded.algebra,
        k_basis=k_basis,
        p_basis=graded.p_basis,
        alpha=alpha if normalized else start,
        kind=constants.KIND_CARTAN,
        grading=graded.grading,
        simply_connected=params.simply_connected,
        sphere_params=params.to_dict(),
    )
    logger.debug('Built %s model for %s', 'normal' if normalized else 'unnormalized', params)
    return SphereModel(params, h, k_basis, n_basis, graded, start, alpha, ricci, scalar, rho, normalized,
                       connection)


def normal_connection(params: SphereParams) -> ConnectionData:
    return build_model(params).connection
