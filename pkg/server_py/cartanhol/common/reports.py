"""
Report dictionaries printed by the `cartan` command.

Every report carries the keys command, dims, residuals, killing_signature
and warnings; floats are rounded once by `finish` so that the text and
json renderings show the same numbers.
"""
import json
from typing import Dict, List, Optional

import numpy as np

from automorphisms.hat import AutomorphismReport
from common.utils import round_floats
from homogeneous.connection import ConnectionData, ValidationReport
from homogeneous.holonomy import CurvatureForm, HolonomyReport
from lie.exceptions import UndefinedRatioError
from lie.subspace import Subspace, _resolve_tol, threshold
from spheres.params import einstein_ratio


def base_dims(connection: ConnectionData) -> Dict[str, int]:
    return {
        'h': connection.h.dim,
        'k': connection.k_basis.dim,
        'g': connection.g.dim,
        'p': connection.p_basis.dim,
    }


def _report(command: str, dims: dict, residuals: Optional[dict] = None, signature=None,
            warnings: Optional[List[str]] = None, **extra) -> dict:
    report = {
        'command': command,
        'dims': dims,
        'residuals': residuals or {},
        'killing_signature': None if signature is None else [int(count) for count in signature],
        'warnings': list(warnings or []),
    }
    report.update(extra)
    return report


def _with_geometry(report: dict, connection: ConnectionData) -> dict:
    if connection.sphere_params:
        report['sphere_params'] = dict(connection.sphere_params)
    return report


def check_report(connection: ConnectionData, validation: ValidationReport) -> dict:
    return _with_geometry(_report(
        'check',
        base_dims(connection),
        residuals=validation.residuals,
        warnings=validation.warnings,
        kind=connection.kind,
        passed=validation.passed,
        failures=validation.failures,
        rank_deficit=validation.rank_deficit,
    ), connection)


def curvature_report(connection: ConnectionData, form: CurvatureForm, image: Subspace,
                     normalization: Optional[Dict[str, float]] = None, tol: Optional[float] = None) -> dict:
    """Nonzero curvature values on pairs of complement vectors, the image dimension and normalization residuals."""
    cut = threshold(_resolve_tol(tol), form.values)
    table = [
        {'pair': [a, b], 'value': value.tolist()}
        for a, b, value in form.pairs()
        if np.max(np.abs(value), initial=0.0) > cut
    ]
    residuals = {'max_abs': form.max_abs()}
    residuals.update(normalization or {})
    dims = base_dims(connection)
    dims['curvature_image'] = image.dim
    warnings = ['curvature image dimension is tolerance-ambiguous'] if image.ambiguous else []
    return _with_geometry(_report(
        'curvature',
        dims,
        residuals=residuals,
        warnings=warnings,
        flat=image.dim == 0,
        complement=form.complement_basis.tolist(),
        curvature=table,
    ), connection)


def holonomy_summary(connection: ConnectionData, report: HolonomyReport, residuals: Dict[str, float]) -> dict:
    dims = base_dims(connection)
    dims['curvature_image'] = report.curvature_dim
    dims['holonomy'] = report.dim
    return _with_geometry(_report(
        'holonomy',
        dims,
        residuals=residuals,
        signature=report.signature,
        warnings=report.warnings,
        is_subalgebra=report.is_subalgebra,
        equals_g=report.equals_g,
        basis=report.subspace.basis.tolist(),
    ), connection)


def infaut_summary(connection: ConnectionData, report: AutomorphismReport) -> dict:
    dims = base_dims(connection)
    dims['hat_holonomy'] = report.hat_dim
    dims['inf'] = report.dim
    return _with_geometry(_report(
        'infaut',
        dims,
        residuals={'containment': report.containment_residual},
        warnings=report.warnings,
        hat_holonomy_closed=report.hat_closed,
        basis=report.algebra.basis.tolist(),
    ), connection)


def spheres_summary(model) -> dict:
    params = model.params
    name, predicted = model.regime
    try:
        ratio = einstein_ratio(params)
    except UndefinedRatioError:
        ratio = None
    return _report(
        'spheres',
        {'h': model.h.dim, 'k': model.k_basis.dim, 'g': model.graded.algebra.dim, 'n': params.n},
        sphere_params=params.to_dict(),
        normalized=model.normalized,
        simply_connected=params.simply_connected,
        ricci=list(model.ricci.blocks(params)),
        scalar=model.scalar,
        rho=list(model.rho.blocks(params)),
        einstein_ratio=ratio,
        regime=name,
        predicted_holonomy=predicted,
    )


def finish(report: dict) -> dict:
    return round_floats(report)


def _scalar(value) -> str:
    return json.dumps(value)


def _text_lines(report: dict, depth: int = 0) -> List[str]:
    pad = '  ' * depth
    lines = []
    for key, value in report.items():
        if isinstance(value, dict) and value:
            lines.append('{0}{1}:'.format(pad, key))
            lines.extend(_text_lines(value, depth + 1))
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            lines.append('{0}{1}:'.format(pad, key))
            for item in value:
                if isinstance(item, dict):
                    item = ', '.join('{0}={1}'.format(name, _scalar(entry)) for name, entry in item.items())
                else:
                    item = _scalar(item)
                lines.append('{0}  - {1}'.format(pad, item))
        else:
            lines.append('{0}{1}: {2}'.format(pad, key, _scalar(value)))
    return lines


def render_text(report: dict) -> str:
    return '\n'.join(_text_lines(report))


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2)
