"""Script to run the randomized verification suites.

Every suite draws random instances from the run's seed and checks the
inequalities and equalities that hold between the computed norms. The
suites use the budget of the suites section of the config file, which is
smaller than the budget of the other commands.

Usage
=====
As a command line script.

Run::

    $ seqnorms-verify [-h]
        [--suite scalar|holder|iteration|chain|summing|tensor|all]
        [--trials <count>] [--seed <seed>] [-o <output file>] [-f json|csv]

Options
~~~~~~~

**--suite <suite>**
    The suite to run. Defaults to all.

**--trials <count>**
    Number of random instances of each suite. Defaults to the config
    file.

Witness checks are switched on for the run, so a witness breaking the
inequality it must satisfy ends its suite with a failed row. Prints one
line per suite with its number of rows and failures. Exits with 1 if any
row failed.
"""
import sys
import time

# Local imports
from .evaluation import common
from .evaluation import optim
from .evaluation import report
from .evaluation import script
from .evaluation import suites
from .help_text import VERIFY as HELP_TEXT


# Constants ############################################################

LONG_OPTIONS = ['suite=', 'trials=']


# Script and Main Functions ############################################

def _entry():
    """Entry point for the script."""
    sys.exit(_script(sys.argv[1:]))


def _script(argv):
    """Processes command line arguments and calls main with their values."""
    return script.run_script(argv, LONG_OPTIONS, HELP_TEXT, main)


def main(suite='all', trials=None, **options):
    """Runs verification suites and writes a report.

    Args:
        suite (str): A suite name or 'all'.
        trials (int): Trials of each suite. Defaults to the config file.
        **options: Common options, see
            :class:`~seqnorms.evaluation.script.RunConfig`.

    Returns:
        list of dict: The report rows of every suite run.
    """
    if suite != 'all' and suite not in suites.SUITES:
        raise script.ScriptInputError(f"Input Error: unknown suite {suite}")
    if trials is not None:
        trials = script.parse_int(trials, '--trials')
        if trials < 1:
            raise script.ScriptInputError(
                "Input Error: --trials must be positive")

    run = script.RunConfig('verify', **options)
    section = run.user['suites']
    budget, defaults = run.settings(section['budget'])
    names = list(suites.SUITES) if suite == 'all' else [suite]

    rows = []
    start = time.time()
    checks = optim.set_witness_checks(True)
    try:
        for name in names:
            count = script.null_arg(trials, section['trials'].get(name))
            suite_rows = suites.run_suite(name, count, budget, budget.seed)
            failed = report.violations(suite_rows)
            print(f"{name}: {len(suite_rows)} checks, {len(failed)} failed")
            run.log.info(f"{name} suite: {len(suite_rows)} rows, "
                         f"{len(failed)} failed")
            rows.extend(suite_rows)
    finally:
        optim.set_witness_checks(checks)
    run.log.info(f"verification took {common.find_time(time.time() - start)}")

    run.finish(rows, run.echo(budget, defaults, suite=suite, trials=trials),
               quiet=True)
    return rows
