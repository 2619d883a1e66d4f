"""Pipelines behind the `cartan` management command."""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from automorphisms.hat import infinitesimal_automorphisms
from common import constants, reports
from common.serializers import ConnectionDataSerializer, ConnectionSerializer
from common.utils import flatten_errors, load_json, write_json
from homogeneous.connection import ConnectionData, validate
from homogeneous.holonomy import (
    ambrose_singer_residual, curvature, curvature_image, holonomy_report, module_residual,
)
from lie.exceptions import InputError
from spheres.model import build_model
from spheres.normalization import normalization_residuals
from spheres.params import SphereParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Optional[str] = None
    sphere_params: Optional[SphereParams] = None
    pipeline: Optional[str] = None
    tol: float = constants.DEFAULT_TOL
    output_format: str = 'text'
    unnormalized: bool = False
    emit_path: Optional[str] = None

    def __post_init__(self):
        if self.command not in constants.COMMANDS:
            raise InputError('unknown command {0!r}'.format(self.command))
        if (self.input_path is None) == (self.sphere_params is None):
            raise InputError('exactly one of an input file and sphere parameters is needed')
        if (self.command == 'spheres') != (self.sphere_params is not None):
            raise InputError('sphere parameters go with the spheres command only')
        if self.pipeline is not None and self.pipeline not in constants.PIPELINES:
            raise InputError('unknown pipeline {0!r}'.format(self.pipeline))
        if not self.tol > 0:
            raise InputError('tolerance must be positive, got {0}'.format(self.tol))
        if self.output_format not in constants.OUTPUT_FORMATS:
            raise InputError('unknown output format {0!r}'.format(self.output_format))


def load_connection(path) -> ConnectionData:
    """
    Raises:
        InputError: on unreadable or malformed JSON and on data the serializer rejects
    """
    serializer = ConnectionSerializer(data=load_json(path))
    if not serializer.is_valid():
        raise InputError('{0}: {1}'.format(path, '; '.join(flatten_errors(serializer.errors))))
    return serializer.save()


def emit_connection(connection: ConnectionData, path):
    write_json(path, ConnectionDataSerializer(connection).data)


def run_check(connection: ConnectionData, tol: float) -> Tuple[dict, int]:
    validation = validate(connection, tol)
    status = constants.EXIT_OK if validation.ok else constants.EXIT_VALIDATION
    return reports.check_report(connection, validation), status


def run_curvature(connection: ConnectionData, tol: float) -> Tuple[dict, int]:
    form = curvature(connection, tol=tol)
    image = curvature_image(form, tol)
    normalization = normalization_residuals(connection, form) if connection.grading is not None else None
    return reports.curvature_report(connection, form, image, normalization, tol), constants.EXIT_OK


def run_holonomy(connection: ConnectionData, tol: float) -> Tuple[dict, int]:
    report = holonomy_report(connection, tol)
    residuals = {
        'ambrose_singer': ambrose_singer_residual(connection, report.subspace),
        'module': module_residual(connection, report.subspace),
    }
    return reports.holonomy_summary(connection, report, residuals), constants.EXIT_OK


def run_infaut(connection: ConnectionData, tol: float) -> Tuple[dict, int]:
    return reports.infaut_summary(connection, infinitesimal_automorphisms(connection, tol)), constants.EXIT_OK


RUNNERS = {
    'check': run_check,
    'curvature': run_curvature,
    'holonomy': run_holonomy,
    'infaut': run_infaut,
}


def run(config: RunConfig) -> Tuple[dict, int]:
    """
    Runs one command.

    Returns:
        (dict, int): the rounded report and the exit status (0, or 1 when validation fails)

    Raises:
        InputError: for unreadable or inconsistent input
        PreconditionError: when a pipeline needs a valid connection and gets none
    """
    if config.command == 'spheres':
        model = build_model(config.sphere_params, normalized=not config.unnormalized)
        if config.emit_path:
            emit_connection(model.connection, config.emit_path)
        if config.pipeline is None:
            return reports.finish(reports.spheres_summary(model)), constants.EXIT_OK
        connection, command = model.connection, config.pipeline
    else:
        connection, command = load_connection(config.input_path), config.command

    logger.debug('Running %s with tol %g', command, config.tol)
    report, status = RUNNERS[command](connection, config.tol)
    for warning in report['warnings']:
        logger.warning(warning)
    return reports.finish(report), status
