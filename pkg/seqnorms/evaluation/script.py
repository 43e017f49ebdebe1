"""Helper functions and factories for running scripts."""
import getopt
import json
import os
import sys
import time

# Local imports
from . import common
from . import optim
from . import report
from . import spaces
from .report import ReportError
from .spaces import OrliczFunction, SpaceSpec
from .summing import OperatorMatrix
from .tensor import RepresentationError, Tensor
from .vector_norms import DimensionError, VectorSequence


# Constants ############################################################

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_SPEC = 3
EXIT_OUTPUT = 4

BUDGET_ENV = 'SEQNORMS_BUDGET'
CONFIG_KEYS = ('command', 'budget', 'defaults', 'inputs')

_FLOAT_FIELDS = ('step', 'decay', 'min_step')

COMMON_SHORT = 'ho:f:vi:'
COMMON_LONG = ['help', 'seed=', 'restarts=', 'iterations=', 'workers=',
               'config=', 'space=', 'space-file=']

_COMMON_NAMES = {'-o': 'output', '-f': 'output_format', '-i': 'input_file',
                 '--space': 'space', '--space-file': 'space_file',
                 '--config': 'config_file'}
_BUDGET_FLAGS = ('--seed', '--restarts', '--iterations', '--workers')


# Classes ##############################################################

class RunConfig:
    """Options shared by every command, and the log of the run.

    Attributes:
        command (str): The subcommand being run.
        output (str): Report path, or None for no report.
        output_format (str): 'json' or 'csv'.
        input_file (str): File holding the main JSON input.
        space (str): Space in the command line mini language.
        space_file (str): JSON file holding a space.
        config_file (str): JSON file in the shape of a report's config.
        overrides (dict): Budget fields given on the command line.
        user (dict): The contents of the user's config.py.
        log (Log): The log of the run.
    """

    def __init__(self, command, output=None, output_format=None,
                 input_file=None, space=None, space_file=None,
                 config_file=None, seed=None, restarts=None, iterations=None,
                 workers=None, verbose=False):
        self.command = command
        self.output = output
        self.input_file = input_file
        self.space = space
        self.space_file = space_file
        self.config_file = config_file
        self.overrides = {'seed': seed, 'restarts': restarts,
                          'iterations': iterations, 'workers': workers}
        self.user = user_config()
        self.output_format = null_arg(output_format,
                                      self.user['report']['format'])
        if self.output_format not in report.FORMATS:
            raise ScriptInputError(
                f"Input Error: unknown format {self.output_format}")

        self.log = common.Log(common.LOG_DIR, command.replace('-', '_'),
                              verbose)
        common.remove_old_logs(common.LOG_DIR, self.user['max_logs'])

    def settings(self, budget_section=None):
        """Resolve the budget and defaults of a run.

        Precedence, lowest first: the user config, the SEQNORMS_BUDGET
        environment variable, the --config file, command line flags.
        The inner budget of nested searches follows the run's seed.

        Args:
            budget_section (dict): Budget fields replacing the user
                config's before the other sources apply.

        Returns:
            tuple: (OptBudget, defaults dict)
        """
        file_config = load_config_file(self.config_file)
        values = dict(self.user['budget'])
        values.update(budget_section or {})
        budget = make_budget(values, os.environ.get(BUDGET_ENV),
                             file_config.get('budget'), self.overrides)
        defaults = dict(self.user['defaults'])
        defaults.update(file_config.get('defaults') or {})

        inner = make_budget(self.user.get('inner_budget') or {})
        budget = optim.OptBudget(inner=inner, **budget.as_dict())
        self.log.info(f"{self.command}: {budget!r}")
        return budget, defaults

    def space_spec(self):
        spec = make_space(self.space, self.space_file)
        self.log.info(f"space: {spec!r}")
        return spec

    def echo(self, budget, defaults, **inputs):
        """The config section of a report."""
        return {'command': self.command, 'budget': budget.as_dict(),
                'defaults': defaults,
                'inputs': {key: value for key, value in inputs.items()
                           if value is not None}}

    def finish(self, rows, config, quiet=False):
        """Print the values of the rows and write the report.

        A single row prints its value alone, several rows print one
        'name value' line each.
        """
        if not quiet:
            for row in rows:
                value = '%.12g' % row['value']
                print(value if len(rows) == 1 else f"{row['name']} {value}")
        if self.output is not None:
            report.emit_report(rows, config, self.output, self.output_format)
            self.log.info(f"report written to {self.output}")


# Make Budget ##########################################################

def make_budget(defaults, env=None, file_budget=None, overrides=None):
    """Creates an :class:`~seqnorms.evaluation.optim.OptBudget`.

    Args:
        defaults (dict): Budget fields from the user config.
        env (str): 'restarts=8,iterations=100' style overrides.
        file_budget (dict): Budget fields from a config file.
        overrides (dict): Budget fields from the command line. None
            values are ignored.

    Returns:
        OptBudget

    Raises:
        ScriptInputError: On unknown fields or invalid values.
    """
    values = dict(defaults)
    values.update(parse_budget_env(env))
    values.update(file_budget or {})
    values.update({key: value for key, value in (overrides or {}).items()
                   if value is not None})
    try:
        return optim.OptBudget.from_dict(values)
    except (optim.OptimizationError, TypeError, ValueError) as error:
        raise ScriptInputError(f"Input Error: bad budget: {error}")


def parse_budget_env(text):
    """Read 'restarts=8,iterations=100,seed=3' into a dict."""
    values = {}
    if not text:
        return values
    for item in text.split(','):
        key, sep, value = item.strip().partition('=')
        if not sep or key not in optim.OptBudget.FIELDS:
            raise ScriptInputError(
                f"Input Error: bad {BUDGET_ENV} entry: {item!r}")
        try:
            values[key] = float(value) if key in _FLOAT_FIELDS else int(value)
        except ValueError:
            raise ScriptInputError(
                f"Input Error: bad {BUDGET_ENV} value: {item!r}")
    return values


def load_config_file(path):
    """Load a config file in the shape of a report's config section.

    Returns:
        dict: The config, empty when path is None.
    """
    if path is None:
        return {}
    data = read_json_file(path)
    if not isinstance(data, dict):
        raise ScriptInputError(f"Input Error: {path} must hold an object")
    unknown = set(data) - set(CONFIG_KEYS)
    if unknown:
        raise ScriptInputError(
            f"Input Error: unknown config keys: {', '.join(sorted(unknown))}")
    return data


def user_config():
    """Import the user's config.py from the seqnorms directory.

    Raises:
        ScriptInputError: If no config.py can be found.
    """
    try:
        sys.path.append(common.SEQNORMS_DIR)
        import config  # nopep8, pylint: disable=import-error
    except ModuleNotFoundError:
        raise ScriptInputError(
            "Config Error: Could not find config.py. "
            "Try re-installing the seqnorms package.")
    return config.config


# Run Scripts ##########################################################

def run_script(argv, long, help_text, main):
    """Parse command line options, run main and return an exit code.

    Options in `long` are passed to main under their names with dashes
    turned into underscores. Options without '=' are flags and pass True.

    Args:
        argv (list of str): The command line options, without the
            script name.
        long (list of str): The command's own getopt long options.
        help_text (str): Printed for -h.
        main (callable): The command's main function. It returns the
            report rows.

    Returns:
        int: 0 on success, 1 if a verification row failed, 2 on bad
        input, 3 on an invalid space and 4 if the report could not be
        written.
    """
    flags = ['--' + name for name in long if not name.endswith('=')]
    options = {}
    try:
        for opt, arg in get_options(argv, long=long):
            if opt in ('-h', '--help'):
                print(help_text)
                return EXIT_OK
            if not common_option(opt, arg, options):
                name = opt.lstrip('-').replace('-', '_')
                options[name] = True if opt in flags else arg
        rows = main(**options)
    except (ScriptInputError,) + INPUT_ERRORS as error:
        log_error(main.__module__.rpartition('.')[2], error)
        return exit_code(error)
    return EXIT_VIOLATION if report.violations(rows) else EXIT_OK


def log_error(name, error):
    """Log an error that ends a command and echo it to stderr.

    Args:
        name (str): The command, used as the log file prefix.
        error (Exception): The error.
    """
    common.Log(common.LOG_DIR, name).error(name, error)


def common_option(opt, arg, options):
    """Record a common option in an options dict.

    Returns:
        bool: False if the option is not a common one.
    """
    if opt in _COMMON_NAMES:
        options[_COMMON_NAMES[opt]] = arg
    elif opt == '-v':
        options['verbose'] = True
    elif opt in _BUDGET_FLAGS:
        options[opt[2:]] = parse_int(arg, opt)
    else:
        return False
    return True


def timed(function, *args, **kwargs):
    """Call a function and return its result and the milliseconds spent."""
    start = time.perf_counter()
    result = function(*args, **kwargs)
    return result, (time.perf_counter() - start) * 1000


# Make Space ###########################################################

def make_space(text=None, space_file=None):
    """Creates a :class:`~seqnorms.evaluation.spaces.SpaceSpec` from the
    mini language or from a JSON file.

    The mini language covers ``lp:<p>``, ``c0``, ``orlicz:<kind>:<p>``,
    ``<family>:<rule>:p=<p>`` for lorentz, garling_mu and garling_nu, and
    ``<family>:<rule>`` for sargent_m and sargent_n.

    Raises:
        ScriptInputError: If neither is given or the file is unreadable.
        SpecValidationError: If the space is invalid.
    """
    if space_file is not None:
        return SpaceSpec.from_dict(read_json_file(space_file))
    if text is None:
        raise ScriptInputError("Input Error: a space is required (--space)")

    family, _, rest = text.partition(':')
    params = rest.split(':') if rest else []
    p = None
    if params and params[-1].startswith('p='):
        p = params.pop()[2:]

    if family == spaces.LP:
        if len(params) != 1 or p is not None:
            raise spaces.SpecValidationError(f"lp needs one exponent: {text}")
        return SpaceSpec.lp(params[0])
    if family == spaces.C0:
        if params or p is not None:
            raise spaces.SpecValidationError(f"c0 takes no parameters: {text}")
        return SpaceSpec.c0()
    if family == spaces.ORLICZ:
        if len(params) != 2 or p is not None:
            raise spaces.SpecValidationError(
                f"orlicz needs a kind and an exponent: {text}")
        return SpaceSpec.orlicz([OrliczFunction(params[0], p=params[1])])
    if family not in spaces.WEIGHTED_FAMILIES:
        raise spaces.SpecValidationError(f"unknown space family: {family}")
    if not params:
        raise spaces.SpecValidationError(f"{family} needs a weight rule")

    rule = ':'.join(params)
    if family == spaces.LORENTZ:
        return SpaceSpec.lorentz(rule, p=1 if p is None else p)
    if family in spaces.GROWING_FAMILIES:
        if p is not None:
            raise spaces.SpecValidationError(f"{family} takes no exponent")
        return SpaceSpec(family, weights=rule)
    return SpaceSpec(family, p=p, weights=rule)


# Make Inputs ##########################################################

def read_input(text, input_file, what):
    """Parse JSON from an option value, or from the -i file.

    Values given from the interpreter as lists or dicts pass through.

    Raises:
        ScriptInputError: If neither is given or the JSON is malformed.
    """
    if text is not None and not isinstance(text, str):
        return text
    if text is not None:
        try:
            return json.loads(text)
        except json.JSONDecodeError as error:
            raise ScriptInputError(f"Input Error: bad {what} JSON: {error}")
    if input_file is not None:
        return read_json_file(input_file)
    raise ScriptInputError(f"Input Error: a {what} is required")


def make_sequence(text=None, input_file=None):
    data = read_input(text, input_file, 'sequence')
    return _build(spaces.FiniteSequence, data, 'sequence')


def make_double_array(text):
    data = read_input(text, None, 'double array')
    return _build(spaces.DoubleArray, data, 'double array')


def make_vectors(text=None, input_file=None):
    return VectorSequence.from_dict(read_input(text, input_file, 'vectors'))


def make_operator(text=None, input_file=None):
    return OperatorMatrix.from_dict(read_input(text, input_file, 'operator'))


def make_tensor(text=None, input_file=None):
    return Tensor.from_dict(read_input(text, input_file, 'tensor'))


# Helpers ##############################################################

def get_options(argv, short='', long=()):
    """Run getopt with the common options added.

    Raises:
        ScriptInputError: On unknown options or stray arguments.
    """
    try:
        opts, args = getopt.getopt(argv, COMMON_SHORT + short,
                                   COMMON_LONG + list(long))
    except getopt.GetoptError as error:
        raise ScriptInputError(f"Input Error: {error}")
    if args:
        raise ScriptInputError(
            f"Input Error: unexpected arguments: {' '.join(args)}")
    return opts


def get_file_path(filename):
    """Return filename if it is an existing file.

    Raises:
        ScriptInputError: If the file does not exist.
    """
    if filename is not None and os.path.isfile(filename):
        return filename
    raise ScriptInputError(f"Input Error: No such file: {filename}")


def read_json_file(path):
    try:
        return common.get_json_data(get_file_path(path))
    except json.JSONDecodeError as error:
        raise ScriptInputError(f"Input Error: bad JSON in {path}: {error}")


def parse_int(arg, name):
    try:
        return int(arg)
    except (TypeError, ValueError):
        raise ScriptInputError(f"Input Error: {name} needs an integer")


def null_arg(arg, default):
    """Return arg, or default when arg is None."""
    return default if arg is None else arg


def exit_code(error):
    """Map an exception raised by a command to its exit code."""
    if isinstance(error, spaces.SpecValidationError):
        return EXIT_SPEC
    if isinstance(error, ReportError):
        return EXIT_OUTPUT
    return EXIT_INPUT


def _build(kind, data, what):
    try:
        return kind(data)
    except spaces.SequenceError:
        raise
    except (TypeError, ValueError):
        raise ScriptInputError(f"Input Error: a {what} must hold numbers")


# Errors a command turns into an exit code instead of a traceback
INPUT_ERRORS = (spaces.SpecValidationError, spaces.SequenceError,
                DimensionError, RepresentationError, optim.OptimizationError,
                ReportError)


# Exceptions ###########################################################

class ScriptInputError(Exception):
    """Exception for all errors relating to incorrect script input."""
