"""
Machine readable reports of computed values.

A report is a JSON document::

    {"version": ..., "config": {...},
     "results": [{"name", "value", "bound_direction", "witness",
                  "converged", "elapsed_ms", "passed"}, ...]}

`witness` is left out of rows that have none and `passed` is only
present on verification rows. The CSV form has one line per row and no
witnesses.
"""
import csv
import json
import math

# 3rd party libraries
import numpy as np

# Local imports
from . import optim


# Constants ############################################################

REPORT_VERSION = '1.0'
JSON = 'json'
CSV = 'csv'
FORMATS = (JSON, CSV)

CSV_FIELDS = ('name', 'value', 'bound_direction', 'converged', 'elapsed_ms',
              'passed')


# Functions ############################################################

def make_row(name, value, bound_direction, witness=None, converged=True,
             elapsed_ms=0.0, passed=None):
    """Build one result row.

    Args:
        name (str): The name of the computed quantity.
        value (float): Its value.
        bound_direction (str): 'lower-of-sup', 'upper-of-inf' or 'exact'.
        witness: The point certifying the value, if any.
        converged (bool): Whether the search producing it converged.
        elapsed_ms (float): Time spent on it.
        passed (bool): Outcome of a verification check, None otherwise.

    Returns:
        dict: The row.
    """
    if bound_direction not in optim.BOUND_DIRECTIONS:
        raise ReportError(f"unknown bound direction: {bound_direction}")
    row = {'name': name, 'value': float(value),
           'bound_direction': bound_direction}
    if witness is not None:
        row['witness'] = witness
    row['converged'] = bool(converged)
    row['elapsed_ms'] = float(elapsed_ms)
    if passed is not None:
        row['passed'] = bool(passed)
    return row


def row_from(name, found, elapsed_ms=0.0, passed=None):
    """Build a row from a Witnessed result."""
    return make_row(name, found.value, found.bound_direction, found.witness,
                    found.converged, elapsed_ms, passed)


def emit_report(results, config, path, output_format=JSON):
    """Write results to a report file.

    Args:
        results (list of dict): Rows made by `make_row`.
        config (dict): The configuration the results were computed with.
        path (str): The file to write.
        output_format (str): 'json' or 'csv'.

    Returns:
        dict: The report as written, with witnesses converted to lists.

    Raises:
        ReportError: If there are no results, the format is unknown or
            the path cannot be written.
    """
    if not results:
        raise ReportError("a report needs at least one result")
    if output_format not in FORMATS:
        raise ReportError(f"unknown report format: {output_format}")

    report = {'version': REPORT_VERSION, 'config': jsonable(config),
              'results': [jsonable(row) for row in results]}
    try:
        if output_format == JSON:
            with open(path, 'w') as file:
                json.dump(report, file, indent=2)
        else:
            with open(path, 'w', newline='') as csvfile:
                wr = csv.writer(csvfile, delimiter=',')
                wr.writerow(CSV_FIELDS)
                for row in report['results']:
                    wr.writerow([row.get(field, '') for field in CSV_FIELDS])
    except OSError as error:
        raise ReportError(f"cannot write report to {path}: {error}")
    return report


def parse_report(path):
    """Read a JSON report back.

    Raises:
        ReportError: If the file is missing or is not a report.
    """
    try:
        with open(path) as file:
            report = json.load(file)
    except (OSError, json.JSONDecodeError) as error:
        raise ReportError(f"cannot read report {path}: {error}")
    if not isinstance(report, dict) or \
            set(report) != {'version', 'config', 'results'}:
        raise ReportError(f"{path} is not a report")
    return report


def jsonable(value):
    """Convert arrays, numpy scalars and library objects to JSON values.

    Infinite floats become the strings 'inf' and '-inf'.
    """
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, optim.Witnessed):
        return {'value': jsonable(value.value),
                'bound_direction': value.bound_direction,
                'witness': jsonable(value.witness)}
    if hasattr(value, 'as_dict'):
        return jsonable(value.as_dict())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return value
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def violations(results):
    """Return the rows of failed verification checks."""
    return [row for row in results if row.get('passed') is False]


# Exceptions ###########################################################

class ReportError(Exception):
    """Raised when a report cannot be written or read."""
