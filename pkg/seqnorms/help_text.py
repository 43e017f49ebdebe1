"""Usage text printed by the scripts with -h."""

# Common ###############################################################

_common_options = """
Common options
~~~~~~~~~~~~~~
-h
    Print out help text.

-o <output file>
    Write a report of every computed value to this file.

-f json|csv
    Format of the report. Defaults to the config file. CSV reports have
    no witnesses.

-v
    Echo log messages to stderr.

--space <space>
    The sequence space, for example lp:2, c0, orlicz:power:3,
    lorentz:geometric:0.5:p=1, garling_mu:power:1.5:p=2, sargent_m:sqrt.

--space-file <json file>
    The sequence space as JSON, {"family": ..., "params": {...}}.

--config <json file>
    Budget and defaults in the shape of a report's config section.

--seed, --restarts, --iterations, --workers <int>
    Override the search budget of the config file and of the
    SEQNORMS_BUDGET environment variable.
"""


# Commands #############################################################

CLI = """
$ seqnorms <command> [options]

Commands
~~~~~~~~
norm        Norm of a finite sequence in a sequence space.
dual-norm   Norm of a finite sequence in the Koethe dual.
vecnorm     Strong, weak, weak star and mid norms of vector sequences.
summing     Summing norms of an operator between finite dimensional spaces.
tensor      Tensor norms of an element of X (x) Y.
verify      Randomized verification suites.

Run seqnorms <command> -h for the options of a command.
"""


COMPUTE_NORM = """
$ seqnorms-norm [-h] --space <space> (--seq <json list> | -i <json file>)
    [--unit <n>] [--nip <json matrix>] [-o <output file>] [-f json|csv]

Options
~~~~~~~
--seq <json list>
    The sequence, for example '[3, 4]'.

-i <json file>
    A file holding the sequence.

--unit <n>
    Also compute the norm of the n-th unit vector.

--nip <json matrix>
    Compare the iterated norms of a double array by rows and by columns.
""" + _common_options


COMPUTE_DUAL_NORM = """
$ seqnorms-dual-norm [-h] --space <space> (--seq <json list> | -i <json file>)
    [--bidual] [-o <output file>] [-f json|csv]

Options
~~~~~~~
--seq <json list>
    The sequence.

-i <json file>
    A file holding the sequence.

--bidual
    Also recover the norm of the sequence as a supremum over the unit
    ball of the dual.
""" + _common_options


COMPUTE_VECNORM = """
$ seqnorms-vecnorm [-h] --space <space> (--vectors <json> | -i <json file>)
    [--kind strong|weak|weak-star|mid|mid-functional|chain|profile]
    [--m <truncation>] [--duals <json>] [-o <output file>] [-f json|csv]

Options
~~~~~~~
--vectors <json>
    A vector sequence, {"oracle": "l2:3", "vectors": [[...], ...]}.

-i <json file>
    A file holding the vector sequence.

--kind <kind>
    The norm to compute. Defaults to strong.

--m <truncation>
    Number of coordinates of the mid norm operators.

--duals <json>
    Functionals, as a vector sequence, for weak-star and profile.
""" + _common_options


COMPUTE_SUMMING = """
$ seqnorms-summing [-h] --space <space> (--operator <json> | -i <json file>)
    [--kind pi|pi-mid|w-mid|all] [--n <length>] [--m <truncation>]
    [-o <output file>] [-f json|csv]

Options
~~~~~~~
--operator <json>
    An operator, {"domain": "l2:2", "codomain": "l2:2", "rows": [...]}.

-i <json file>
    A file holding the operator.

--kind <kind>
    The summing norm to compute. Defaults to all.

--n <length>
    Length of the vector sequences searched over.

--m <truncation>
    Number of coordinates of the mid norms.
""" + _common_options


COMPUTE_TENSOR = """
$ seqnorms-tensor [-h] --space <space> (--tensor <json> | -i <json file>)
    [--kind gamma|gamma-c|injective|trace|all] [--rank <r>]
    [--blocks <count>] [--m <truncation>] [--operator <json>]
    [-o <output file>] [-f json|csv]

Options
~~~~~~~
--tensor <json>
    A tensor, {"domain": "l2:2", "codomain": "l2:2", "entries": [...]}.

-i <json file>
    A file holding the tensor.

--kind <kind>
    The tensor norm to compute. Defaults to all.

--rank <r>
    Length of every representation block.

--blocks <count>
    Number of blocks of the gamma-c representations.

--m <truncation>
    Number of coordinates of the mid norm of the sharp estimates.

--operator <json>
    An operator from the codomain into the dual of the domain for the
    trace duality check.
""" + _common_options


VERIFY = """
$ seqnorms-verify [-h] [--suite scalar|holder|iteration|chain|summing|tensor|all]
    [--trials <count>] [--seed <seed>] [-o <output file>] [-f json|csv]

Exits with 1 if any check fails.

Options
~~~~~~~
--suite <suite>
    The suite to run. Defaults to all.

--trials <count>
    Number of random instances of each suite. Defaults to the config
    file.
""" + _common_options
