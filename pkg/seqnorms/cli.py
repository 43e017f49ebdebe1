"""The seqnorms command, which dispatches to the command scripts.

Usage
=====
As a command line script.

Run::

    $ seqnorms <command> [options]

where command is one of norm, dual-norm, vecnorm, summing, tensor or
verify. ``seqnorms norm --space lp:2 --seq '[3,4]'`` is the same as
``seqnorms-norm --space lp:2 --seq '[3,4]'``.
"""
import sys

# Local imports
from . import compute_dual_norm
from . import compute_norm
from . import compute_summing
from . import compute_tensor
from . import compute_vecnorm
from . import verify
from .evaluation import script
from .help_text import CLI as HELP_TEXT


# Constants ############################################################

COMMANDS = {
    'norm': compute_norm,
    'dual-norm': compute_dual_norm,
    'vecnorm': compute_vecnorm,
    'summing': compute_summing,
    'tensor': compute_tensor,
    'verify': verify
}


# Script and Main Functions ############################################

def _entry():
    """Entry point for the script."""
    sys.exit(run(sys.argv[1:]))


def run(argv):
    """Runs the command named by the first argument.

    Args:
        argv (list of str): The command and its options.

    Returns:
        int: The exit code of the command, 2 for a missing or unknown
        command.
    """
    if not argv:
        print(HELP_TEXT)
        return script.EXIT_INPUT
    if argv[0] in ('-h', '--help'):
        print(HELP_TEXT)
        return script.EXIT_OK
    if argv[0] not in COMMANDS:
        script.log_error('seqnorms', script.ScriptInputError(
            f"Input Error: unknown command {argv[0]}"))
        return script.EXIT_INPUT
    return COMMANDS[argv[0]]._script(argv[1:])
