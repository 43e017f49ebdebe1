"""
Summing norms of matrices between finite dimensional normed spaces.

For an operator T from X to Y and a sequence space lambda, over vector
sequences of a fixed length n:

- pi_lambda(T) is the sup of ||(T x_i)||^s over weak unit sequences,
- pi_lambda_mid(T) is the sup of ||(T x_i)||^s over mid unit sequences,
- w_lambda_mid(T) is the sup over operators S from Y into lambda_m with
  ||S|| <= 1 of pi_lambda(S T).

The searches maximize the ratio of the image norm to an over-estimate
of the constraint norm, so every witness, rescaled onto the sphere of
that over-estimate, is a feasible sequence and every value is a lower
bound. The weak constraint is measured with the certified weak upper
estimate and the mid constraint with the strong norm.
"""
import logging

# 3rd party libraries
import numpy as np

# Local imports
from . import optim
from . import spaces
from . import vector_norms
from .vector_norms import DimensionError, NormOracle, VectorSequence


# Constants ############################################################

CHECK_TOL = 1e-9

log = logging.getLogger(__name__)


# Classes ##############################################################

class OperatorMatrix:
    """A linear map between two finite dimensional normed spaces.

    Attributes:
        entries (numpy.ndarray): The e by d matrix of the map.
        domain (NormOracle): The space X, of dimension d.
        codomain (NormOracle): The space Y, of dimension e.
    """
    def __init__(self, entries, domain, codomain):
        values = np.atleast_2d(np.array(entries, dtype=float))
        if values.shape != (codomain.dim, domain.dim):
            raise DimensionError(
                f"a {values.shape} matrix cannot map {domain} into {codomain}")
        if not np.all(np.isfinite(values)):
            raise DimensionError("operator entries must be finite")
        self.entries = values
        self.domain = domain
        self.codomain = codomain

    @classmethod
    def from_dict(cls, values):
        """Read {"domain": "l2:2", "codomain": "l2:2", "rows": [...]}."""
        if not isinstance(values, dict) or \
                set(values) != {'domain', 'codomain', 'rows'}:
            raise DimensionError(
                "an operator needs exactly 'domain', 'codomain' and 'rows'")
        return cls(values['rows'], NormOracle.parse(values['domain']),
                   NormOracle.parse(values['codomain']))

    @classmethod
    def identity(cls, oracle, scale=1.0):
        return cls(scale * np.eye(oracle.dim), oracle, oracle)

    def apply(self, vectors):
        """Images of the rows of a matrix."""
        return np.atleast_2d(vectors) @ self.entries.T

    def image(self, xs):
        return VectorSequence(self.codomain, self.apply(xs.vectors))

    def compose(self, inner):
        """Return the map self after inner."""
        if inner.codomain.dim != self.domain.dim:
            raise DimensionError(
                f"cannot compose {self.domain} with {inner.codomain}")
        return OperatorMatrix(self.entries @ inner.entries, inner.domain,
                              self.codomain)

    def norm(self, budget=None):
        """Operator norm, exact for the built in spaces where possible."""
        return vector_norms.operator_norm_bound(self.entries, self.domain,
                                                self.codomain, budget)

    def as_dict(self):
        return {'domain': str(self.domain), 'codomain': str(self.codomain),
                'rows': self.entries.tolist()}

    def __repr__(self):
        return (f"OperatorMatrix({self.domain} -> {self.codomain}, "
                f"{self.entries.tolist()})")


class IdealReport:
    """Per witness checks of the ideal inequality of the mid summing norm.

    Attributes:
        rows (list of dict): One row per inequality with keys name, lhs,
            rhs and passed.
    """
    def __init__(self):
        self.rows = []

    def add(self, name, lhs, rhs):
        self.rows.append({'name': name, 'lhs': float(lhs), 'rhs': float(rhs),
                          'passed': bool(lhs <= rhs)})

    @property
    def violations(self):
        return [row for row in self.rows if not row['passed']]

    @property
    def passed(self):
        return not self.violations


# Functions ############################################################

def pi_lambda(spec, T, n, budget=None, seeds=()):
    """Lower bound of the lambda summing norm over sequences of length n.

    The lengths 1 to n are searched in turn, each seeded with the
    sequence found for the length below, so the values never decrease
    with n.

    Args:
        spec (SpaceSpec): The space lambda.
        T (OperatorMatrix): The operator.
        n (int): Length of the sequences.
        budget (OptBudget): Search settings.
        seeds (iterable): Extra n by d sequences to start from.

    Returns:
        Witnessed: Lower-of-sup value with the n by d sequence as witness,
        normalized to weak upper estimate 1. `details['profile']` holds
        the values reached for every length up to n.
    """
    def constraint(xs):
        return vector_norms.weak_norm_bound(spec, VectorSequence(T.domain, xs),
                                            budget)
    return _nested_ratio_sup(spec, T, n, constraint, 'weak', budget, seeds)


def pi_lambda_mid(spec, T, n, m=4, budget=None, seeds=()):
    """Lower bound of the mid summing norm over sequences of length n.

    Sequences are measured by their strong norm, which is at least their
    mid norm. Every witness satisfies
    ||(T x_i)||^s <= value * ||(x_i)||^s with equality. Like `pi_lambda`
    the lengths are searched in turn and the values never decrease
    with n.

    Args:
        spec (SpaceSpec): The space lambda.
        T (OperatorMatrix): The operator.
        n (int): Length of the sequences.
        m (int): Truncation of the mid norms the result is compared
            with. It is recorded in `details`.
        budget (OptBudget): Search settings.
        seeds (iterable): Extra n by d sequences to start from.

    Returns:
        Witnessed: Lower-of-sup value with the sequence as witness.
    """
    def constraint(xs):
        return vector_norms.strong_norm(spec, VectorSequence(T.domain, xs),
                                        budget)
    found = _nested_ratio_sup(spec, T, n, constraint, 'strong', budget,
                              seeds)

    if optim.witness_checks() and found.value > 0:
        xs = VectorSequence(T.domain, found.witness)
        lhs = _image_strong(spec, T, found.witness, budget)
        rhs = found.value * vector_norms.strong_norm(spec, xs, budget)
        _require(lhs <= rhs + CHECK_TOL * max(1.0, rhs),
                 f"mid summing witness gives {lhs!r} > {rhs!r}")
    found.details['m'] = m
    return found


def w_lambda_mid(spec, T, n, m=4, budget=None):
    """Lower bound of the weak to mid summing norm.

    For every length up to n the search runs jointly over an operator S
    from the codomain into lambda_m and a weak unit sequence, then
    polishes pi_lambda(S T) with S fixed, starting from the joint
    sequence. Each length is seeded with the pair found for the length
    below, so the values never decrease with n.

    Args:
        spec (SpaceSpec): The space lambda.
        T (OperatorMatrix): The operator.
        n (int): Length of the sequences.
        m (int): Number of coordinates of lambda S maps into.
        budget (OptBudget): Search settings.

    Returns:
        Witnessed: Lower-of-sup value with {'S': m by e operator, 'xs':
        n by d sequence} as witness. `details['seed_xs']` holds the joint
        sequence the polish started from and `details['profile']` the
        values reached for every length.
    """
    if n < 1:
        raise DimensionError("sequences need length n >= 1")
    d, e = T.domain.dim, T.codomain.dim
    if not T.entries.any():
        return optim.Witnessed(0.0, {'S': np.zeros((m, e)),
                                     'xs': np.zeros((n, d))}, optim.EXACT,
                               details={'profile': [0.0] * n})

    def s_bound(flat):
        return vector_norms.operator_norm_bound(flat.reshape(m, e), T.codomain,
                                                spec, budget)

    def x_bound(xs):
        return vector_norms.weak_norm_bound(
            spec, VectorSequence(T.domain, xs), budget)

    def pad(witness, level):
        return {'S': witness['S'], 'xs': optim.pad_rows(witness['xs'], level)}

    def search(level, padded):
        return _w_mid_level(spec, T, level, m, budget, s_bound, x_bound,
                            padded)

    found, profile = optim.nested_sup(search, n, pad)
    found.details['profile'] = profile

    if optim.witness_checks():
        S, best_xs = found.witness['S'], found.witness['xs']
        lhs = _image_strong(spec, T, best_xs, budget, S)
        weak = x_bound(best_xs)
        _require(lhs <= found.value * weak + CHECK_TOL * max(1.0, lhs),
                 f"weak to mid witness gives {lhs!r} > "
                 f"{found.value * weak!r}")
    return found


def ideal_witness_check(spec, R, T, S, n, m=4, budget=None, witnesses=None,
                        slack=CHECK_TOL):
    """Check the two witness sound halves of the ideal inequality.

    For each sequence xs, by default the witness of pi_lambda_mid(RTS),
    this checks ||(RTS x_i)||^s <= ||R|| ||(TS x_i)||^s and
    mid((S x_i)) <= ||S|| mid(xs), the mid norm of xs being seeded with
    the witness of mid((S x_i)) composed with S.

    Args:
        spec (SpaceSpec): The space lambda.
        R, T, S (OperatorMatrix): Composable operators, RTS = R T S.
        n (int): Length of the sequences.
        m (int): Truncation of the mid norms.
        budget (OptBudget): Search settings.
        witnesses (list): Sequences to check instead of the default one.
        slack (float): Relative slack of both inequalities.

    Returns:
        IdealReport: One row per inequality and sequence.
    """
    TS = T.compose(S)
    RTS = R.compose(TS)
    if witnesses is None:
        witnesses = [pi_lambda_mid(spec, RTS, n, m, budget).witness]
    r_norm, s_norm = R.norm(budget), S.norm(budget)
    report = IdealReport()

    for i, xs in enumerate(witnesses):
        xs = np.atleast_2d(xs)
        lhs = _image_strong(spec, RTS, xs, budget)
        rhs = r_norm * _image_strong(spec, TS, xs, budget)
        report.add(f"ideal[{i}].R", lhs, rhs + slack * max(1.0, rhs))

        sx = VectorSequence(S.codomain, S.apply(xs))
        mid_sx = vector_norms.mid_norm(spec, sx, m, budget)
        seeds = []
        if s_norm > 0:
            seeds.append(mid_sx.witness @ S.entries / s_norm)
        mid_x = vector_norms.mid_norm(spec, VectorSequence(S.domain, xs), m,
                                      budget, seeds)
        rhs = s_norm * mid_x.value
        report.add(f"ideal[{i}].S", mid_sx.value,
                   rhs + slack * max(1.0, rhs))

    for row in report.violations:
        log.warning("%s: %.12g > %.12g", row['name'], row['lhs'], row['rhs'])
    return report


# Helpers ##############################################################

def _image_strong(spec, T, xs, budget, S=None):
    """Strong lambda norm of (T x_i), or of (S T x_i) measured in lambda."""
    images = T.apply(xs)
    inner = budget and budget.nested()
    if S is None:
        norms = T.codomain.norms(images)
    else:
        norms = spaces.evaluate_norms(spec, images @ S.T, inner)
    return spaces.evaluate_norm(spec, norms, inner)


def _sequence_seeds(T, n):
    """Basis sequence and leading singular direction as n by d seeds."""
    d = T.domain.dim
    basis = np.zeros((n, d))
    rows = min(n, d)
    basis[:rows, :rows] = np.eye(rows)
    _, _, Vt = np.linalg.svd(T.entries)
    lead = np.zeros((n, d))
    lead[0] = Vt[0]
    return [basis, lead]


def _w_mid_level(spec, T, n, m, budget, s_bound, x_bound, seeds):
    """One length of the weak to mid search, a joint search and a polish."""
    d, e = T.domain.dim, T.codomain.dim
    s_ball = optim.BallSpec('operator ball', m * e, s_bound, shape=(m, e))
    x_ball = optim.BallSpec('weak ball', n * d,
                            lambda flat: x_bound(flat.reshape(n, d)),
                            shape=(n, d))
    balls = [s_ball, x_ball]
    joint = optim.product_ball('operator and weak ball', balls)

    def objective(point):
        S, xs = optim.split_point(point, balls)
        scale = s_bound(S.ravel()) * x_bound(xs)
        if scale == 0:
            return 0.0
        return _image_strong(spec, T, xs, budget, S) / scale

    lead = np.zeros((m, e))
    lead[0] = np.linalg.svd(T.entries)[0][:, 0]
    pairs = [(lead, xs) for xs in _sequence_seeds(T, n)]
    pairs += [(seed['S'], seed['xs']) for seed in seeds]
    candidates = [np.concatenate([optim.normalized_seed(S, s_ball),
                                  optim.normalized_seed(xs, x_ball)])
                  for S, xs in pairs]
    found = optim.maximize_over_ball(objective, joint, budget, candidates)

    S, xs = optim.split_point(found.witness, balls)
    S = _to_sphere(S, s_bound(S.ravel()))
    xs = _to_sphere(xs, x_bound(xs))
    ST = OperatorMatrix(S @ T.entries, T.domain,
                        NormOracle.from_space(spec, m, budget))

    def constraint(sequence):
        return vector_norms.weak_norm_bound(
            spec, VectorSequence(T.domain, sequence), budget)

    polish_seeds = [xs] + [seed['xs'] for seed in seeds]
    polished = _ratio_sup(spec, ST, n, constraint, 'weak', budget,
                          polish_seeds)

    best_xs = polished.witness if polished.value > found.value else xs
    return optim.Witnessed(max(found.value, polished.value),
                           {'S': S, 'xs': best_xs}, optim.LOWER_OF_SUP,
                           found.converged and polished.converged,
                           found.evaluations + polished.evaluations,
                           {'seed_xs': xs, 'joint': found.value})


def _nested_ratio_sup(spec, T, n, constraint, label, budget, seeds):
    if n < 1:
        raise DimensionError("sequences need length n >= 1")
    seeds = list(seeds)

    def search(level, padded):
        extra = padded + (seeds if level == n else [])
        return _ratio_sup(spec, T, level, constraint, label, budget, extra)

    found, profile = optim.nested_sup(search, n, optim.pad_rows)
    found.details['profile'] = profile
    return found


def _ratio_sup(spec, T, n, constraint, label, budget, seeds):
    if n < 1:
        raise DimensionError("sequences need length n >= 1")
    d = T.domain.dim
    if not T.entries.any():
        return optim.Witnessed(0.0, np.zeros((n, d)), optim.EXACT)

    def norm(flat):
        return constraint(flat.reshape(n, d))

    def objective(flat):
        size = norm(flat)
        if size == 0:
            return 0.0
        return _image_strong(spec, T, flat.reshape(n, d), budget) / size

    ball = optim.BallSpec(f"{label} ball", n * d, norm, shape=(n, d))
    candidates = _sequence_seeds(T, n) + list(seeds)
    starts = [optim.normalized_seed(c, ball) for c in candidates]
    found = optim.maximize_over_ball(objective, ball, budget, starts)

    found.witness = _to_sphere(found.witness, norm(found.witness.ravel()))
    return found


def _to_sphere(point, size):
    return point / size if size > 0 else point


def _require(condition, message):
    if optim.witness_checks() and not condition:
        raise optim.WitnessError(message)
