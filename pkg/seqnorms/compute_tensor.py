"""Script to compute tensor norms of an element of X (x) Y.

gamma and gamma-c are upper bounds of infima over representations and
come with the representation reaching them. injective is a lower bound
of a supremum over pairs of unit functionals. trace checks the trace
duality pairing of an operator from Y into the dual of X on the gamma-c
representation.

Usage
=====
As a command line script.

Run::

    $ seqnorms-tensor [-h] --space <space> (--tensor <json> | -i <json file>)
        [--kind gamma|gamma-c|injective|trace|all] [--rank <r>]
        [--blocks <count>] [--m <truncation>] [--operator <json>]
        [-o <output file>] [-f json|csv]

Options
~~~~~~~

**--tensor <json>**
    A tensor, {"domain": "l2:2", "codomain": "l2:2", "entries": [...]}.
    The entries form a d by e matrix, x (x) y being the outer product.

**-i <json file>**
    A file holding the tensor.

**--kind <kind>**
    Defaults to all, which runs trace only when --operator is given.

**--rank <r>**
    Length of every representation block. Defaults to the config file,
    then to the smaller dimension.

**--blocks <count>**
    Number of blocks of the gamma-c representations.

**--m <truncation>**
    Truncation of the mid norm of the sharp estimates.

**--operator <json>**
    An operator from the codomain into the dual of the domain, as for
    seqnorms-summing.
"""
import sys

# Local imports
from .evaluation import optim
from .evaluation import report
from .evaluation import script
from .evaluation import tensor as tensor_norms
from .help_text import COMPUTE_TENSOR as HELP_TEXT


# Constants ############################################################

LONG_OPTIONS = ['tensor=', 'kind=', 'rank=', 'blocks=', 'm=', 'operator=']
KINDS = ('gamma', 'gamma-c', 'injective', 'trace', 'all')


# Script and Main Functions ############################################

def _entry():
    """Entry point for the script."""
    sys.exit(_script(sys.argv[1:]))


def _script(argv):
    """Processes command line arguments and calls main with their values."""
    return script.run_script(argv, LONG_OPTIONS, HELP_TEXT, main)


def main(tensor=None, kind='all', rank=None, blocks=None, m=None,
         operator=None, **options):
    """Computes tensor norms and writes a report.

    Args:
        tensor (str or dict): The tensor as JSON text or a dict.
        kind (str): One of KINDS.
        rank (int): Length of the representation blocks.
        blocks (int): Number of gamma-c blocks.
        m (int): Truncation of the mid norms.
        operator (str or dict): Operator for the trace duality check.
        **options: Common options, see
            :class:`~seqnorms.evaluation.script.RunConfig`.

    Returns:
        list of dict: The report rows.
    """
    if kind not in KINDS:
        raise script.ScriptInputError(f"Input Error: unknown kind {kind}")
    if kind == 'trace' and operator is None:
        raise script.ScriptInputError(
            "Input Error: --kind trace needs --operator")
    run = script.RunConfig('tensor', **options)
    budget, defaults = run.settings()
    spec = run.space_spec()
    u = script.make_tensor(tensor, run.input_file)
    T = script.make_operator(operator) if operator is not None else None

    rank = script.null_arg(rank, defaults['rank'])
    rank = None if rank is None else script.parse_int(rank, '--rank')
    blocks = script.parse_int(script.null_arg(blocks, defaults['blocks']),
                              '--blocks')
    m = script.parse_int(script.null_arg(m, defaults['truncation']), '--m')
    trace_tol = run.user['tolerances']['trace']
    rows = []

    if kind in ('gamma', 'all'):
        found, elapsed = script.timed(tensor_norms.gamma_lambda, spec, u,
                                      rank, m, budget)
        rows.append(report.row_from('gamma', found, elapsed))

    gamma_c = None
    if kind in ('gamma-c', 'trace', 'all'):
        gamma_c, elapsed = script.timed(tensor_norms.gamma_lambda_c, spec, u,
                                        blocks, rank, m, budget)
        rows.append(report.row_from('gamma_c', gamma_c, elapsed))
        rows.append(report.make_row(
            'weak_cost',
            tensor_norms.weak_cost(spec, gamma_c.witness, u.domain,
                                   u.codomain, budget),
            optim.EXACT))

    if kind in ('injective', 'all'):
        found, elapsed = script.timed(tensor_norms.injective_norm, u, budget)
        rows.append(report.row_from('injective', found, elapsed))
        if gamma_c is not None:
            lhs, rhs, passed = tensor_norms.functional_check(
                u, found.witness['f'], found.witness['g'], gamma_c.value,
                trace_tol)
            rows.append(report.make_row('functional', lhs, optim.EXACT,
                                        {'bound': rhs}, passed=passed))

    if T is not None and kind in ('trace', 'all'):
        checked, elapsed = script.timed(
            tensor_norms.trace_duality_check, spec, T, u, gamma_c.witness,
            gamma_c.value, budget, trace_tol)
        rows.append(report.make_row(
            'trace', abs(checked.phi), optim.EXACT,
            {'pairing': checked.pairing, 'bound': checked.bound,
             'ratio': checked.ratio},
            elapsed_ms=elapsed, passed=checked.passed))

    run.finish(rows, run.echo(budget, defaults, space=spec, tensor=u,
                              kind=kind, rank=rank, blocks=blocks, m=m,
                              operator=T))
    return rows
