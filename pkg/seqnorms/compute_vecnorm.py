"""Script to compute the vector valued norms of a finite sequence of
vectors.

Usage
=====
As a command line script.

Run::

    $ seqnorms-vecnorm [-h] --space <space> (--vectors <json> | -i <json file>)
        [--kind <kind>] [--m <truncation>] [--duals <json>]
        [-o <output file>] [-f json|csv]

Options
~~~~~~~

**--vectors <json>**
    A vector sequence, {"oracle": "l2:3", "vectors": [[...], ...]}.
    The oracle is l1, l2 or linf followed by the dimension.

**-i <json file>**
    A file holding the vector sequence.

**--kind <kind>**
    One of

    * strong: the norm of the sequence of norms, exact.
    * weak: sup over the dual unit ball of ||(f(x_n))||, a lower bound.
    * weak-star: sup over the unit ball of ||(f_n(x))|| for the
      functionals given with --duals, a lower bound.
    * mid: sup over operators into lambda_m, a lower bound.
    * mid-functional: the same supremum over m functionals.
    * chain: the weak, mid and strong norms and a check of their order.
    * profile: the values ||(f_j(x_n))_n|| for the functionals f_j of
      --duals, each checked against the lambda limited operator bound.

    Defaults to strong.

**--m <truncation>**
    Number of coordinates of the mid norm operators. Defaults to the
    config file.

**--duals <json>**
    Functionals, as a vector sequence on the same space.
"""
import sys

# Local imports
from .evaluation import optim
from .evaluation import report
from .evaluation import script
from .evaluation import vector_norms
from .help_text import COMPUTE_VECNORM as HELP_TEXT


# Constants ############################################################

LONG_OPTIONS = ['vectors=', 'kind=', 'm=', 'duals=']
KINDS = ('strong', 'weak', 'weak-star', 'mid', 'mid-functional', 'chain',
         'profile')


# Script and Main Functions ############################################

def _entry():
    """Entry point for the script."""
    sys.exit(_script(sys.argv[1:]))


def _script(argv):
    """Processes command line arguments and calls main with their values."""
    return script.run_script(argv, LONG_OPTIONS, HELP_TEXT, main)


def main(vectors=None, kind='strong', m=None, duals=None, **options):
    """Computes a norm of a vector sequence and writes a report.

    Args:
        vectors (str or dict): The vector sequence as JSON text or a
            dict.
        kind (str): One of KINDS.
        m (int): Truncation of the mid norms.
        duals (str or dict): Functionals for weak-star and profile.
        **options: Common options, see
            :class:`~seqnorms.evaluation.script.RunConfig`.

    Returns:
        list of dict: The report rows.
    """
    if kind not in KINDS:
        raise script.ScriptInputError(f"Input Error: unknown kind {kind}")
    run = script.RunConfig('vecnorm', **options)
    budget, defaults = run.settings()
    spec = run.space_spec()
    xs = script.make_vectors(vectors, run.input_file)
    m = script.parse_int(script.null_arg(m, defaults['truncation']), '--m')

    if kind in ('weak-star', 'profile'):
        if duals is None:
            raise script.ScriptInputError(
                f"Input Error: --kind {kind} needs --duals")
        fs = script.make_vectors(duals)
    rows = []

    if kind == 'strong':
        value, elapsed = script.timed(vector_norms.strong_norm, spec, xs,
                                      budget)
        rows.append(report.make_row('strong', value, optim.EXACT,
                                    elapsed_ms=elapsed))
    elif kind == 'weak':
        found, elapsed = script.timed(vector_norms.weak_norm, spec, xs,
                                      budget)
        rows.append(report.row_from('weak', found, elapsed))
    elif kind == 'weak-star':
        found, elapsed = script.timed(vector_norms.weak_star_norm, spec, fs,
                                      budget)
        rows.append(report.row_from('weak_star', found, elapsed))
    elif kind == 'mid':
        found, elapsed = script.timed(vector_norms.mid_norm, spec, xs, m,
                                      budget)
        rows.append(report.row_from('mid', found, elapsed))
    elif kind == 'mid-functional':
        found, elapsed = script.timed(vector_norms.mid_norm_functional_form,
                                      spec, xs, m, budget)
        rows.append(report.row_from('mid_functional', found, elapsed))
    elif kind == 'chain':
        rows.extend(_chain_rows(spec, xs, m, budget,
                                run.user['tolerances']['chain']))
    else:
        rows.extend(_profile_rows(spec, xs, fs, budget,
                                  run.user['tolerances']['chain']))

    run.finish(rows, run.echo(budget, defaults, space=spec, vectors=vectors,
                              kind=kind, m=m, duals=duals))
    return rows


# Helpers ##############################################################

def _chain_rows(spec, xs, m, budget, tolerance):
    chain, elapsed = script.timed(vector_norms.chain_check, spec, xs, m,
                                  budget, tolerance)
    return [
        report.row_from('weak', chain.weak, elapsed,
                        passed='weak<=mid' not in chain.violations),
        report.row_from('mid', chain.mid,
                        passed='mid<=strong' not in chain.violations),
        report.make_row('strong', chain.strong, optim.EXACT,
                        {'unit_normalized': chain.unit_normalized})
    ]


def _profile_rows(spec, xs, fs, budget, tolerance):
    profile = vector_norms.limited_bound_profile(spec, xs, fs, budget)
    rows = []
    for j, (f, bound) in enumerate(zip(fs.vectors, profile.coeffs)):
        found, elapsed = script.timed(vector_norms.limited_operator_bound,
                                      spec, xs, f, budget)
        rows.append(report.make_row(f"profile[{j}]", bound, optim.EXACT))
        rows.append(report.row_from(
            f"limited[{j}]", found, elapsed,
            passed=found.value <= bound + tolerance * max(1.0, bound)))
    return rows
