"""
Witness certified search used by every quantity defined as a supremum or
an infimum.

Every value returned here comes with the point that produced it. A
supremum search can only report a value it actually reached, so the
value is a lower bound of the true supremum. An infimum search reports
the cost of a feasible point, so the value is an upper bound of the true
infimum. The bound direction is carried on the result so that callers
and reports never have to guess.

The search itself is a compass style pattern search. Every start is
followed by a sequence of trial moves along the coordinate directions
and a few random directions. A move is kept when it improves the
objective and the step shrinks when no move does. Feasibility is kept
by projecting every trial point back onto the feasible set.

Starts are made of the explicit seeds given by the caller followed by
`restarts` random starts. Each start owns a random stream derived from
the budget seed and its own position, so results are reproducible and
adding a seed can never lower a supremum.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor

# 3rd party libraries
import numpy as np


# Constants ############################################################

LOWER_OF_SUP = 'lower-of-sup'
UPPER_OF_INF = 'upper-of-inf'
EXACT = 'exact'
BOUND_DIRECTIONS = (LOWER_OF_SUP, UPPER_OF_INF, EXACT)

FEASIBILITY_TOL = 1e-9
REPRODUCTION_TOL = 1e-9

_SEED_STREAM = 0
_RESTART_STREAM = 1

log = logging.getLogger(__name__)

_witness_checks = os.environ.get('SEQNORMS_CHECK_WITNESSES', '') not in ('', '0')


def set_witness_checks(enabled):
    """Turn the post condition checks on returned witnesses on or off.

    When enabled every search re-evaluates its witness, confirms it is
    feasible and that it reproduces the reported value, and every
    higher level routine runs its own per witness inequality checks.

    Args:
        enabled (bool): The new state.

    Returns:
        bool: The previous state.
    """
    global _witness_checks
    previous = _witness_checks
    _witness_checks = bool(enabled)
    return previous


def witness_checks():
    """Return True if witness post condition checks are enabled."""
    return _witness_checks


# Classes ##############################################################

class OptBudget:
    """The knobs of a search.

    Attributes:
        restarts (int): Number of random starts after the seeds.
        iterations (int): Maximum number of pattern search iterations
            for each start.
        step (float): Initial step length.
        decay (float): Factor the step is multiplied by after an
            iteration with no improvement.
        min_step (float): A start is converged once its step falls below
            this.
        directions (int): Number of random directions tried in addition
            to the coordinate directions.
        seed (int): Root of every random stream of the search.
        workers (int): Number of threads the starts are spread over.
            Results do not depend on it.
        inner (OptBudget): Settings of the searches nested inside this
            one, INNER_BUDGET when None.
    """
    FIELDS = ('restarts', 'iterations', 'step', 'decay', 'min_step',
              'directions', 'seed', 'workers')

    def __init__(self, restarts=32, iterations=400, step=0.5, decay=0.5,
                 min_step=1e-9, directions=4, seed=7, workers=1, inner=None):
        self.restarts = int(restarts)
        self.iterations = int(iterations)
        self.step = float(step)
        self.decay = float(decay)
        self.min_step = float(min_step)
        self.directions = int(directions)
        self.seed = int(seed)
        self.workers = int(workers)
        self.inner = inner

        if self.restarts < 1 or self.iterations < 1:
            raise OptimizationError(
                "restarts and iterations must be >= 1")
        if self.step <= 0 or self.min_step <= 0:
            raise OptimizationError("step and min_step must be positive")
        if not 0 < self.decay < 1:
            raise OptimizationError("decay must lie strictly between 0 and 1")
        if self.directions < 0 or self.workers < 1 or self.seed < 0:
            raise OptimizationError(
                "directions and seed must be >= 0 and workers >= 1")

    def replace(self, **changes):
        """Return a copy of the budget with some fields changed."""
        values = self.as_dict()
        for key, value in changes.items():
            if key not in values:
                raise OptimizationError(f"unknown budget field: {key}")
            if value is not None:
                values[key] = value
        return OptBudget(inner=self.inner, **values)

    def nested(self):
        """Budget of the searches nested inside this one, on its seed."""
        return (self.inner or INNER_BUDGET).replace(seed=self.seed)

    def as_dict(self):
        return {name: getattr(self, name) for name in self.FIELDS}

    @classmethod
    def from_dict(cls, values):
        """Build a budget from a dict, rejecting unknown keys.

        Raises:
            OptimizationError: If a key is not a budget field.
        """
        unknown = set(values) - set(cls.FIELDS)
        if unknown:
            raise OptimizationError(
                f"unknown budget fields: {', '.join(sorted(unknown))}")
        return cls(**values)

    def __eq__(self, other):
        return (isinstance(other, OptBudget) and
                self.as_dict() == other.as_dict() and self.inner == other.inner)

    def __repr__(self):
        fields = ', '.join(f"{k}={v}" for k, v in self.as_dict().items())
        return f"OptBudget({fields})"


INNER_BUDGET = OptBudget(restarts=2, iterations=100, directions=2)


class BallSpec:
    """A closed unit ball of some norm on flat real vectors.

    Attributes:
        kind (str): A label for logs and reports.
        dim (int): Length of the flat vectors.
        norm (callable): Maps a flat vector to its norm.
        shape (tuple): Shape a witness is given before it is returned.
    """
    def __init__(self, kind, dim, norm, project=None, shape=None):
        self.kind = kind
        self.dim = int(dim)
        self.norm = norm
        self.shape = tuple(shape) if shape is not None else (self.dim,)
        self._project = project

    def contains(self, point, tol=FEASIBILITY_TOL):
        return self.norm(point) <= 1 + tol

    def project(self, point):
        """Radially rescale a point outside the ball onto its sphere."""
        if self._project is not None:
            return self._project(point)
        size = self.norm(point)
        if size > 1:
            return point / size
        return point


class FamilySpec:
    """A feasible family for an infimum search.

    Attributes:
        kind (str): A label for logs and reports.
        dim (int): Length of the flat parameter vectors.
        shape (tuple): Shape a witness is given before it is returned.
    """
    def __init__(self, kind, dim, project=None, contains=None, shape=None):
        self.kind = kind
        self.dim = int(dim)
        self.shape = tuple(shape) if shape is not None else (self.dim,)
        self._project = project
        self._contains = contains

    def contains(self, point, tol=FEASIBILITY_TOL):
        if self._contains is None:
            return True
        return self._contains(point, tol)

    def project(self, point):
        if self._project is None:
            return point
        return self._project(point)


class Witnessed:
    """A numeric value together with the point that certifies it.

    Attributes:
        value (float): The value reached.
        witness: The point, an array or a dict of arrays.
        bound_direction (str): One of 'lower-of-sup', 'upper-of-inf'
            or 'exact'.
        converged (bool): True if the winning start converged.
        evaluations (int): Number of objective evaluations spent.
        details (dict): Extra named values worth reporting.
    """
    def __init__(self, value, witness, bound_direction, converged=True,
                 evaluations=0, details=None):
        if bound_direction not in BOUND_DIRECTIONS:
            raise OptimizationError(
                f"unknown bound direction: {bound_direction}")
        self.value = float(value)
        self.witness = witness
        self.bound_direction = bound_direction
        self.converged = bool(converged)
        self.evaluations = int(evaluations)
        self.details = dict(details or {})

    def __float__(self):
        return self.value

    def __repr__(self):
        return (f"Witnessed(value={self.value!r}, "
                f"bound_direction={self.bound_direction!r}, "
                f"converged={self.converged})")


class _Start:
    def __init__(self, point, stream):
        self.point = point
        self.stream = stream


class _Trajectory:
    def __init__(self, value, point, converged, evaluations):
        self.value = value
        self.point = point
        self.converged = converged
        self.evaluations = evaluations


# Functions ############################################################

def maximize_over_ball(objective, ball, budget=None, seeds=()):
    """Search for the supremum of an objective over a ball.

    Args:
        objective (callable): Maps a flat vector to a float.
        ball (BallSpec): The feasible set.
        budget (OptBudget): Search settings. Defaults to OptBudget().
        seeds (iterable): Feasible starting points tried before the
            random restarts.

    Returns:
        Witnessed: A lower bound of the supremum and the point reaching
        it. The value is never below the objective at any seed.

    Raises:
        InfeasibleSeedError: If a seed lies outside the ball.
        OptimizationError: If the objective returns NaN.
    """
    return _search(objective, ball, budget, seeds, maximize=True)


def minimize_over_family(objective, family, budget=None, seeds=()):
    """Search for the infimum of an objective over a feasible family.

    Args:
        objective (callable): Maps a flat parameter vector to a float.
            Infeasible parameters may return inf.
        family (FamilySpec): The feasible set.
        budget (OptBudget): Search settings. Defaults to OptBudget().
        seeds (iterable): Feasible starting points tried first.

    Returns:
        Witnessed: An upper bound of the infimum and the point reaching
        it. The value is never above the objective at any seed.

    Raises:
        InfeasibleSeedError: If a seed is not in the family.
        OptimizationError: If the objective returns NaN.
    """
    return _search(objective, family, budget, seeds, maximize=False)


# Helpers ##############################################################

def _search(objective, feasible, budget, seeds, maximize):
    budget = budget or OptBudget()
    sign = 1.0 if maximize else -1.0
    starts = []

    for i, seed in enumerate(seeds):
        point = np.array(seed, dtype=float).ravel()
        if point.shape != (feasible.dim,):
            raise InfeasibleSeedError(
                f"seed {i} has {point.size} coordinates, "
                f"{feasible.kind} needs {feasible.dim}")
        if not feasible.contains(point):
            measured = ''
            if isinstance(feasible, BallSpec):
                measured = f" (norm {feasible.norm(point):.6g})"
            raise InfeasibleSeedError(
                f"seed {i} lies outside the {feasible.kind} feasible "
                f"set{measured}")
        starts.append(_Start(point, (budget.seed, _SEED_STREAM, i)))

    for r in range(budget.restarts):
        starts.append(_Start(None, (budget.seed, _RESTART_STREAM, r)))

    def run(start):
        return _pattern_search(objective, feasible, budget, start, sign)

    if budget.workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=budget.workers) as pool:
            trajectories = list(pool.map(run, starts))
    else:
        trajectories = [run(start) for start in starts]

    # Ties go to the earliest start
    best = trajectories[0]
    for trajectory in trajectories[1:]:
        if sign * trajectory.value > sign * best.value:
            best = trajectory

    evaluations = sum(t.evaluations for t in trajectories)
    direction = LOWER_OF_SUP if maximize else UPPER_OF_INF
    log.debug("%s search over %s: %d starts, %d evaluations, best %.12g",
              'sup' if maximize else 'inf', feasible.kind, len(starts),
              evaluations, best.value)

    if _witness_checks:
        _check_witness(objective, feasible, best)

    return Witnessed(best.value, best.point.reshape(feasible.shape),
                     direction, best.converged, evaluations)


def _pattern_search(objective, feasible, budget, start, sign):
    rng = np.random.default_rng(list(start.stream))
    dim = feasible.dim

    if start.point is None:
        point = feasible.project(rng.standard_normal(dim))
    else:
        point = start.point.copy()
    value = _evaluate(objective, point)
    evaluations = 1
    step = budget.step
    converged = False
    basis = np.eye(dim)

    for _ in range(budget.iterations):
        directions = np.concatenate([basis, -basis])
        if budget.directions:
            extra = rng.standard_normal((budget.directions, dim))
            extra /= np.linalg.norm(extra, axis=1, keepdims=True)
            directions = np.concatenate([directions, extra, -extra])
        directions = directions[rng.permutation(len(directions))]

        improved = False
        for direction in directions:
            trial = feasible.project(point + step * direction)
            trial_value = _evaluate(objective, trial)
            evaluations += 1
            if sign * trial_value > sign * value:
                point, value = trial, trial_value
                improved = True
                break

        if improved:
            step = min(step / budget.decay, budget.step)
        else:
            step *= budget.decay
            if step < budget.min_step:
                converged = True
                break

    return _Trajectory(value, point, converged, evaluations)


def _evaluate(objective, point):
    value = float(objective(point))
    if np.isnan(value):
        raise OptimizationError(f"objective returned NaN at {point.tolist()}")
    return value


def _check_witness(objective, feasible, best):
    if not feasible.contains(best.point):
        raise OptimizationError(
            f"witness left the {feasible.kind} feasible set")
    if np.isfinite(best.value):
        again = _evaluate(objective, best.point)
        scale = max(1.0, abs(best.value))
        if abs(again - best.value) > REPRODUCTION_TOL * scale:
            raise OptimizationError(
                f"witness reproduces {again!r}, reported {best.value!r}")


def product_ball(kind, balls):
    """The max norm ball of a product of balls on concatenated vectors.

    Args:
        kind (str): Label of the product.
        balls (list of BallSpec): The factors, in order.

    Returns:
        BallSpec: Unit ball of max_k ||v_k||_k, projecting each factor
        separately.
    """
    sizes = [ball.dim for ball in balls]
    cuts = np.cumsum(sizes)[:-1]

    def norm(point):
        parts = np.split(point, cuts)
        return max(ball.norm(part) for ball, part in zip(balls, parts))

    def project(point):
        parts = np.split(point, cuts)
        return np.concatenate(
            [ball.project(part) for ball, part in zip(balls, parts)])

    return BallSpec(kind, sum(sizes), norm, project)


def split_point(point, balls):
    """Split a concatenated product point back into its factors."""
    cuts = np.cumsum([ball.dim for ball in balls])[:-1]
    return [part.reshape(ball.shape)
            for ball, part in zip(balls, np.split(np.ravel(point), cuts))]


def normalized_seed(point, ball):
    """Rescale a candidate seed into a ball if it lies outside.

    Returns:
        numpy.ndarray: The flat seed, scaled by 1 / ||point|| when that
        norm exceeds 1 by more than the feasibility tolerance.
    """
    point = np.array(point, dtype=float).ravel()
    size = ball.norm(point)
    if size > 1 + FEASIBILITY_TOL:
        point = point / size
    return point


def pad_rows(point, rows):
    """Append zero rows to a 2d point until it has `rows` rows."""
    point = np.atleast_2d(np.asarray(point, dtype=float))
    extra = np.zeros((rows - point.shape[0], point.shape[1]))
    return np.concatenate([point, extra])


def nested_sup(search, top, pad):
    """Run a supremum search at the levels 1 to top, each one seeded
    with the witness of the level below.

    Quantities like the mid norm over lambda_m or a summing norm over
    sequences of length n never decrease with the level, since a padded
    witness of level k - 1 is feasible at level k with the same value.
    The returned values keep that order: a level whose search ends below
    the previous level reports the previous value and its padded witness.

    Args:
        search (callable): search(level, seeds) returns a Witnessed sup.
        top (int): The last level, at least 1.
        pad (callable): pad(witness, level) turns a witness of level - 1
            into a seed of the given level.

    Returns:
        tuple: The Witnessed of the top level and the list of the values
        reached at every level.
    """
    if top < 1:
        raise OptimizationError("a nested search needs at least one level")
    previous = None
    profile = []
    for level in range(1, top + 1):
        seeds = [] if previous is None else [pad(previous.witness, level)]
        found = search(level, seeds)
        if previous is not None and found.value < previous.value:
            found = Witnessed(previous.value, seeds[0],
                              previous.bound_direction, found.converged,
                              previous.evaluations + found.evaluations,
                              previous.details)
        profile.append(found.value)
        previous = found
    return previous, profile


# Exceptions ###########################################################

class OptimizationError(Exception):
    """Raised when a search cannot be carried out."""


class InfeasibleSeedError(OptimizationError):
    """Raised when a seed is outside the feasible set it was given for."""


class WitnessError(AssertionError):
    """Raised when a returned witness breaks an inequality it must satisfy."""
