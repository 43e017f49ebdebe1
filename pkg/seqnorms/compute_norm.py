"""Script to compute the norm of a finite sequence in a sequence space.

Can be run as a command line script or imported as a module and run with
compute_norm.main().

Usage
=====
As a command line script.

Run::

    $ seqnorms-norm [-h] --space <space> (--seq <json list> | -i <json file>)
        [--unit <n>] [--nip <json matrix>] [-o <output file>] [-f json|csv]

Options
~~~~~~~

**--seq <json list>**
    The sequence, for example '[3, 4]'.

**-i <json file>**
    A file holding the sequence.

**--unit <n>**
    Also compute the norm of the n-th unit vector.

**--nip <json matrix>**
    Compare the norm of the row norms of a double array with the norm of
    its column norms. The check only fails for spaces whose iterated
    norm is exact (lp, c0 and power Orlicz spaces). For other spaces
    the gap is reported.

The common options are listed in :mod:`seqnorms.cli`.
"""
import sys

# Local imports
from .evaluation import optim
from .evaluation import report
from .evaluation import script
from .evaluation import spaces
from .help_text import COMPUTE_NORM as HELP_TEXT


# Constants ############################################################

LONG_OPTIONS = ['seq=', 'unit=', 'nip=']


# Script and Main Functions ############################################

def _entry():
    """Entry point for the script."""
    sys.exit(_script(sys.argv[1:]))


def _script(argv):
    """Processes command line arguments and calls main with their values.

    Args:
        argv (list of str): The list of command line options and args
            not containing the script name.

    Returns:
        int: The exit code.
    """
    return script.run_script(argv, LONG_OPTIONS, HELP_TEXT, main)


def main(seq=None, unit=None, nip=None, **options):
    """Computes the norm of a sequence and writes a report.

    Args:
        seq (str or list): The sequence as JSON text or a list.
        unit (int): Also compute the norm of the unit-th unit vector.
        nip (str or list): A double array to run the norm iteration
            check on.
        **options: Common options, see
            :class:`~seqnorms.evaluation.script.RunConfig`.

    Returns:
        list of dict: The report rows.
    """
    run = script.RunConfig('norm', **options)
    budget, defaults = run.settings()
    spec = run.space_spec()
    rows = []

    if unit is not None:
        n = script.parse_int(unit, '--unit')
        value, elapsed = script.timed(spaces.unit_vector_norm, spec, n)
        rows.append(report.make_row(f"unit[{n}]", value, optim.EXACT,
                                    elapsed_ms=elapsed))

    if nip is not None:
        arr = script.make_double_array(nip)
        result, elapsed = script.timed(spaces.nip_check, spec, arr,
                                       run.user['tolerances']['nip'], budget)
        rows.append(report.make_row(
            'nip', result.gap, optim.EXACT,
            {'rows': result.row_value, 'cols': result.col_value,
             'enforced': result.enforced},
            elapsed_ms=elapsed, passed=result.passed))

    if seq is not None or run.input_file is not None or not rows:
        sequence = script.make_sequence(seq, run.input_file)
        if spec.family == spaces.GARLING_NU:
            found, elapsed = script.timed(spaces.garling_nu_norm, spec,
                                          sequence, budget)
            rows.append(report.row_from('norm', found, elapsed))
        else:
            value, elapsed = script.timed(spaces.evaluate_norm, spec,
                                          sequence)
            rows.append(report.make_row('norm', value, optim.EXACT,
                                        elapsed_ms=elapsed))
        run.log.info(f"norm of {sequence!r}: {rows[-1]['value']!r}")

    run.finish(rows, run.echo(budget, defaults, space=spec, seq=seq,
                              unit=unit, nip=nip))
    return rows

