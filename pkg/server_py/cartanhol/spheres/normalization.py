"""
Normalization conditions of conformal Cartan connections.

For a |1|-graded g, a curvature form is normal when its g_-1 part vanishes
and the Ricci-type contraction of its g_0 part vanishes.
"""
from typing import Dict

import numpy as np

from homogeneous.connection import ConnectionData
from homogeneous.holonomy import CurvatureForm
from lie.exceptions import PreconditionError


def _require_grading(connection: ConnectionData):
    if connection.grading is None:
        raise PreconditionError('normalization needs a grading of g')


def curvature_on_minus(connection: ConnectionData, form: CurvatureForm) -> np.ndarray:
    """K[u, v] = curvature evaluated on the g_-1 basis vectors X_u, X_v via the C.3 identification."""
    _require_grading(connection)
    minus = list(connection.grading.minus)
    frame = (form.complement_basis @ connection.alpha.T)[:, minus].T
    if frame.shape[0] != frame.shape[1] or np.linalg.matrix_rank(frame) < frame.shape[0]:
        raise PreconditionError('alpha does not identify h/k with g_-1')
    inverse = np.linalg.inv(frame)
    return np.einsum('au,bv,abk->uvk', inverse, inverse, form.values)


def ricci_contraction(connection: ConnectionData, form: CurvatureForm) -> np.ndarray:
    """R_ij = sum_a of component a of R(X_a, X_i) X_j, with R the g_0 part of the curvature."""
    kappa = curvature_on_minus(connection, form)
    grading = connection.grading
    zero, minus = list(grading.zero), list(grading.minus)
    table = connection.g.constants[np.ix_(zero, minus, minus)]
    # action[a, i, r, s]: component r of R(X_a, X_i) X_s
    action = np.einsum('aix,xsr->airs', kappa[..., zero], table)
    return np.einsum('aiaj->ij', action)


def ricci_from_curvature(model, form: CurvatureForm) -> np.ndarray:
    return ricci_contraction(model.connection, form)


def normalization_residuals(connection: ConnectionData, form: CurvatureForm) -> Dict[str, float]:
    """
    Returns:
        dict: Conf.1 (largest g_-1 component), Conf.2 (largest Ricci-type contraction
        entry) and g1 (largest g_1 component) of the curvature
    """
    _require_grading(connection)
    values = form.values
    minus, plus = list(connection.grading.minus), list(connection.grading.plus)
    return {
        'Conf.1': float(np.max(np.abs(values[..., minus]), initial=0.0)),
        'Conf.2': float(np.max(np.abs(ricci_contraction(connection, form)), initial=0.0)),
        'g1': float(np.max(np.abs(values[..., plus]), initial=0.0)),
    }
