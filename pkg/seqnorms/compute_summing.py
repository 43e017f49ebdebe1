"""Script to compute summing norms of an operator between finite
dimensional normed spaces.

Every value is a lower bound of a supremum, found over vector sequences
of length n, and comes with the sequence reaching it.

Usage
=====
As a command line script.

Run::

    $ seqnorms-summing [-h] --space <space>
        (--operator <json> | -i <json file>) [--kind pi|pi-mid|w-mid|all]
        [--n <length>] [--m <truncation>] [-o <output file>] [-f json|csv]

Options
~~~~~~~

**--operator <json>**
    An operator, {"domain": "l2:2", "codomain": "l2:3", "rows": [...]},
    given by the rows of its matrix.

**-i <json file>**
    A file holding the operator.

**--kind <kind>**
    pi for the lambda summing norm, pi-mid for the mid summing norm,
    w-mid for the weak to mid summing norm or all. Defaults to all.

**--n <length>**
    Length of the vector sequences. Defaults to the config file.

**--m <truncation>**
    Number of coordinates of lambda in the mid norms. Defaults to the
    config file.
"""
import sys

# Local imports
from .evaluation import report
from .evaluation import script
from .evaluation import summing
from .help_text import COMPUTE_SUMMING as HELP_TEXT


# Constants ############################################################

LONG_OPTIONS = ['operator=', 'kind=', 'n=', 'm=']
KINDS = ('pi', 'pi-mid', 'w-mid', 'all')


# Script and Main Functions ############################################

def _entry():
    """Entry point for the script."""
    sys.exit(_script(sys.argv[1:]))


def _script(argv):
    """Processes command line arguments and calls main with their values."""
    return script.run_script(argv, LONG_OPTIONS, HELP_TEXT, main)


def main(operator=None, kind='all', n=None, m=None, **options):
    """Computes summing norms of an operator and writes a report.

    Args:
        operator (str or dict): The operator as JSON text or a dict.
        kind (str): One of KINDS.
        n (int): Length of the vector sequences.
        m (int): Truncation of the mid norms.
        **options: Common options, see
            :class:`~seqnorms.evaluation.script.RunConfig`.

    Returns:
        list of dict: The report rows.
    """
    if kind not in KINDS:
        raise script.ScriptInputError(f"Input Error: unknown kind {kind}")
    run = script.RunConfig('summing', **options)
    budget, defaults = run.settings()
    spec = run.space_spec()
    T = script.make_operator(operator, run.input_file)
    n = script.parse_int(script.null_arg(n, defaults['sequence_length']),
                         '--n')
    m = script.parse_int(script.null_arg(m, defaults['truncation']), '--m')
    rows = []

    if kind in ('pi', 'all'):
        found, elapsed = script.timed(summing.pi_lambda, spec, T, n, budget)
        rows.append(report.row_from('pi', found, elapsed))
    if kind in ('pi-mid', 'all'):
        found, elapsed = script.timed(summing.pi_lambda_mid, spec, T, n, m,
                                      budget)
        rows.append(report.row_from('pi_mid', found, elapsed))
    if kind in ('w-mid', 'all'):
        found, elapsed = script.timed(summing.w_lambda_mid, spec, T, n, m,
                                      budget)
        rows.append(report.row_from('w_mid', found, elapsed))
    for row in rows:
        run.log.info(f"{row['name']}: {row['value']!r}")

    run.finish(rows, run.echo(budget, defaults, space=spec, operator=T,
                              kind=kind, n=n, m=m))
    return rows
