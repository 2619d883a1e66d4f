import json
import logging
from pathlib import Path
from typing import Any, List

import numpy as np

from common import constants
from lie.exceptions import InputError

logger = logging.getLogger(__name__)


def load_json(path) -> Any:
    """
    Reads a JSON document.

    Raises:
        InputError: with the line and column of a syntax error, or when the file cannot be read
    """
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise InputError('cannot read {0}: {1}'.format(path, err.strerror or err))
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError('{0}: line {1} column {2}: {3}'.format(path, err.lineno, err.colno, err.msg))


def write_json(path, data):
    with open(path, 'w') as f:
        json.dump(data, f, indent=2)
        f.write('\n')
    logger.info('Wrote %s', path)


def flatten_errors(errors, prefix: str = '') -> List[str]:
    """
    Serializer errors as 'field: message' lines, nested fields joined with dots.

    Args:
        errors: the `errors` of a rest_framework serializer (dicts of lists, possibly nested)
    """
    lines = []
    if isinstance(errors, dict):
        for field, value in errors.items():
            name = field if not prefix else '{0}.{1}'.format(prefix, field)
            if field == 'non_field_errors' and prefix:
                name = prefix
            lines.extend(flatten_errors(value, name))
    elif isinstance(errors, list):
        for position, value in enumerate(errors):
            if isinstance(value, (dict, list)):
                lines.extend(flatten_errors(value, '{0}.{1}'.format(prefix, position) if prefix else str(position)))
            else:
                lines.append('{0}: {1}'.format(prefix or 'input', value))
    else:
        lines.append('{0}: {1}'.format(prefix or 'input', errors))
    return lines


def rounded(value, digits: int = None) -> float:
    digits = digits or constants.FLOAT_DIGITS
    return float('{0:.{1}g}'.format(float(value), digits))


def round_floats(data, digits: int = None):
    """Recursively round floats (and numpy scalars/arrays) in a report."""
    if isinstance(data, dict):
        return {key: round_floats(value, digits) for key, value in data.items()}
    if isinstance(data, (list, tuple)):
        return [round_floats(value, digits) for value in data]
    if isinstance(data, np.ndarray):
        return round_floats(data.tolist(), digits)
    if isinstance(data, (bool, np.bool_)):
        return bool(data)
    if isinstance(data, (int, np.integer)):
        return int(data)
    if isinstance(data, (float, np.floating)):
        return rounded(data, digits)
    return data
