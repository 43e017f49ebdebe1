"""Configuration values used by the seqnorms scripts.

The defaults are enough to run every command. The search budget is the
setting most worth tuning: larger budgets give sharper bounds and take
longer.

Values given here can be overridden, in increasing order of priority, by
the ``SEQNORMS_BUDGET`` environment variable, a ``--config`` JSON file
and command line options. See the :ref:`Scripts section <scripts>`.

Fields
------

budget
    The search settings used for every supremum and infimum.

    * restarts
        Number of random starts after the seeded ones.
    * iterations
        Maximum number of pattern search iterations of a start.
    * step
        Initial step length.
    * decay
        Factor the step shrinks by when no move improves.
    * min_step
        A start has converged once its step is below this.
    * directions
        Random directions tried along with the coordinate directions.
    * seed
        Root of all random streams. Runs with the same seed give the
        same values.
    * workers
        Threads the starts are spread over. Does not change results.

inner_budget
    The smaller budget of nested searches, such as the garling_nu norm
    inside a vector norm. Fields missing here take the budget defaults.

tolerances
    * nip
        Largest gap accepted by the norm iteration check.
    * chain
        Slack of the weak <= mid <= strong check.
    * trace
        Relative slack of the trace duality check.

suites
    * trials
        Default number of trials of each verification suite.
    * budget
        Budget fields the verification suites use in place of the
        ones in budget.

defaults
    * truncation
        The number m of coordinates of the mid norms.
    * sequence_length
        Length n of the sequences of the summing norm searches.
    * blocks
        Number of blocks of the gamma_c representations.
    * rank
        Length of every representation block. None uses the smaller
        dimension of the tensor.

report
    * format
        Default report format, json or csv.

max_logs_to_keep
    * The maximum number of logs to keep. **Cannot be None**

config
    * A dict of the config file's contents. Each of the above attributes
      is a field in the dict.
"""

budget = {
    'restarts': 32,
    'iterations': 400,
    'step': 0.5,
    'decay': 0.5,
    'min_step': 1e-9,
    'directions': 4,
    'seed': 7,
    'workers': 1
}

inner_budget = {
    'restarts': 2,
    'iterations': 100,
    'directions': 2
}

tolerances = {
    'nip': 1e-9,
    'chain': 1e-9,
    'trace': 1e-9
}

suites = {
    'trials': {
        'scalar': 200,
        'holder': 1000,
        'iteration': 500,
        'chain': 200,
        'summing': 100,
        'tensor': 100
    },
    'budget': {
        'restarts': 4,
        'iterations': 100
    }
}

defaults = {
    'truncation': 4,
    'sequence_length': 8,
    'blocks': 3,
    'rank': None
}

report = {
    'format': 'json'
}

max_logs_to_keep = 20

config = {
    'budget': budget,
    'inner_budget': inner_budget,
    'tolerances': tolerances,
    'suites': suites,
    'defaults': defaults,
    'report': report,
    'max_logs': max_logs_to_keep
}
