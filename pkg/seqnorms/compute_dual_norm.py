"""Script to compute the norm of a finite sequence in the Koethe dual of
a sequence space.

Dual norms known in closed form are exact and come with the Hoelder
extremal point as witness. The dual of garling_mu is the garling_nu
norm, an upper bound. Any other dual norm is a lower bound found by a
search over the unit ball of the space.

Usage
=====
As a command line script.

Run::

    $ seqnorms-dual-norm [-h] --space <space>
        (--seq <json list> | -i <json file>) [--bidual]
        [-o <output file>] [-f json|csv]

Options
~~~~~~~

**--seq <json list>**
    The sequence.

**-i <json file>**
    A file holding the sequence.

**--bidual**
    Also compute sup{sum |a_n b_n| : b in the unit ball of the dual},
    which equals the norm of the sequence for perfect spaces.
"""
import sys

# Local imports
from .evaluation import report
from .evaluation import script
from .evaluation import spaces
from .help_text import COMPUTE_DUAL_NORM as HELP_TEXT


LONG_OPTIONS = ['seq=', 'bidual']


# Script and Main Functions ############################################

def _entry():
    """Entry point for the script."""
    sys.exit(_script(sys.argv[1:]))


def _script(argv):
    """Processes command line arguments and calls main with their values."""
    return script.run_script(argv, LONG_OPTIONS, HELP_TEXT, main)


def main(seq=None, bidual=False, **options):
    """Computes the dual norm of a sequence and writes a report.

    Args:
        seq (str or list): The sequence as JSON text or a list.
        bidual (bool): Also compute the bidual norm.
        **options: Common options, see
            :class:`~seqnorms.evaluation.script.RunConfig`.

    Returns:
        list of dict: The report rows.
    """
    run = script.RunConfig('dual-norm', **options)
    budget, defaults = run.settings()
    spec = run.space_spec()
    sequence = script.make_sequence(seq, run.input_file)

    found, elapsed = script.timed(spaces.dual_norm, spec, sequence, budget)
    rows = [report.row_from('dual_norm', found, elapsed)]
    if bidual:
        found, elapsed = script.timed(spaces.bidual_norm, spec, sequence,
                                      budget)
        rows.append(report.row_from('bidual_norm', found, elapsed))

    run.finish(rows, run.echo(budget, defaults, space=spec, seq=seq,
                              bidual=bidual or None))
    return rows
