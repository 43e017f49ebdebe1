"""
Scalar sequence spaces evaluated on finitely supported sequences.

A space is described by a SpaceSpec, a family name with its parameters.
The families are

- ``lp``: the classical spaces, p >= 1 or p = inf.
- ``c0``: null sequences with the sup norm.
- ``orlicz``: the Luxemburg norm inf{k > 0 : sum M(|a_j| / k) <= 1} of one
  Orlicz function, or of one function per coordinate (a modular space).
- ``lorentz``: (sum x_j a*_j^p)^(1/p) with nonincreasing weights x.
- ``garling_mu``: (sum a^_j^p a_j)^(1/p) with nonincreasing weights a.
- ``garling_nu``: the Koethe dual of garling_mu, an infimum over
  nonincreasing vectors of the unit ball of l_q.
- ``sargent_m``: sup over s of (sum of the s largest moduli) / phi_s.
- ``sargent_n``: sup over rearrangements u of sum |u_j| (phi_j - phi_(j-1)),
  that is a*_j paired with the increments of phi sorted decreasingly. It
  is the dual of sargent_m when the increments are nonincreasing.

Every formula is exact on a finite support, so no tail is ever
estimated. Suprema over permutations are replaced by pairing the
decreasing rearrangement of the moduli with the nonincreasing weights.
"""
import itertools
import logging
import math

# 3rd party libraries
import numpy as np
from scipy import optimize

# Local imports
from . import optim


# Constants ############################################################

LP = 'lp'
C0 = 'c0'
ORLICZ = 'orlicz'
LORENTZ = 'lorentz'
GARLING_MU = 'garling_mu'
GARLING_NU = 'garling_nu'
SARGENT_M = 'sargent_m'
SARGENT_N = 'sargent_n'
FAMILIES = (LP, C0, ORLICZ, LORENTZ, GARLING_MU, GARLING_NU,
            SARGENT_M, SARGENT_N)

PERFECT_FAMILIES = (LP, GARLING_MU, GARLING_NU, SARGENT_M, SARGENT_N)
WEIGHTED_FAMILIES = (LORENTZ, GARLING_MU, GARLING_NU, SARGENT_M, SARGENT_N)
GROWING_FAMILIES = (SARGENT_M, SARGENT_N)

POWER = 'power'
POWER_LOG = 'powerlog'
TABULATED = 'tabulated'
ORLICZ_KINDS = (POWER, POWER_LOG, TABULATED)

CHECKED_PREFIX = 64
BRUTE_FORCE_LIMIT = 8
LUXEMBURG_RTOL = 1e-12
NIP_TOL = 1e-9
WEIGHT_TOL = 1e-12

log = logging.getLogger(__name__)


# Classes ##############################################################

class FiniteSequence:
    """A finitely supported scalar sequence.

    Coordinates past the end of `coeffs` are zero, so trailing zeros can
    be dropped without changing any norm.

    Attributes:
        coeffs (numpy.ndarray): The stored coordinates. Real or complex.
    """
    def __init__(self, coeffs=()):
        values = np.array(coeffs)
        if values.dtype == object or values.ndim > 1:
            raise SequenceError("a sequence is a flat list of numbers")
        values = values.ravel()
        if not np.iscomplexobj(values):
            values = values.astype(float)
        if not np.all(np.isfinite(values)):
            raise SequenceError("sequence coordinates must be finite")
        self.coeffs = values

    def moduli(self):
        return np.abs(self.coeffs).astype(float)

    def support_size(self):
        """Index of the last nonzero coordinate, 0 for the zero sequence."""
        nonzero = np.flatnonzero(self.coeffs)
        return int(nonzero[-1]) + 1 if nonzero.size else 0

    def stripped(self):
        return FiniteSequence(self.coeffs[:self.support_size()])

    def as_list(self):
        return self.coeffs.tolist()

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FiniteSequence):
            return NotImplemented
        a, b = self.stripped().coeffs, other.stripped().coeffs
        return a.shape == b.shape and bool(np.all(a == b))

    def __repr__(self):
        return f"FiniteSequence({self.as_list()})"


class DoubleArray:
    """A double sequence (a_j^n) stored as an n by m matrix.

    Attributes:
        entries (numpy.ndarray): Row n holds the sequence (a_j^n)_j.
    """
    def __init__(self, entries):
        values = np.array(entries)
        if values.ndim != 2:
            raise SequenceError("a double array is a matrix of numbers")
        if not np.all(np.isfinite(values)):
            raise SequenceError("double array entries must be finite")
        self.entries = values

    def rows(self):
        return [FiniteSequence(row) for row in self.entries]

    def cols(self):
        return [FiniteSequence(col) for col in self.entries.T]

    def moduli(self):
        return np.abs(self.entries).astype(float)


class WeightSequence:
    """A weight sequence given by an explicit prefix and a tail rule.

    Tail rules are ``geometric:r`` (r^(j-1)), ``power:s`` and ``sqrt``.
    For the decaying weights of the Lorentz and Garling families the
    power rules give j^-s and j^-1/2, for the growing Sargent weights
    they give j^s and sqrt(j). Prefix values override the rule. Without a
    rule the last prefix value repeats.

    Attributes:
        prefix (tuple of float): Explicit leading weights.
        tail (str): The tail rule or None.
        growing (bool): Reading of the power rules.
    """
    RULES = ('geometric', 'power', 'sqrt')

    def __init__(self, prefix=(), tail=None, growing=False):
        try:
            self.prefix = tuple(float(w) for w in prefix)
        except (TypeError, ValueError):
            raise SpecValidationError(f"weights must be numbers: {prefix!r}")
        self.tail = tail
        self.growing = bool(growing)
        self._rule = _parse_rule(tail) if tail is not None else None
        if not self.prefix and self._rule is None:
            raise SpecValidationError(
                "a weight sequence needs a prefix or a tail rule")

    def values(self, n):
        """Return the first n weights as an array."""
        j = np.arange(1, n + 1, dtype=float)
        if self._rule is None:
            weights = np.full(n, self.prefix[-1])
        else:
            name, arg = self._rule
            if name == 'geometric':
                weights = arg ** (j - 1)
            else:
                exponent = 0.5 if name == 'sqrt' else arg
                weights = j ** exponent if self.growing else j ** -exponent
        count = min(n, len(self.prefix))
        weights[:count] = self.prefix[:count]
        return weights

    def as_dict(self):
        return {'prefix': list(self.prefix), 'tail': self.tail}

    @classmethod
    def coerce(cls, value, growing=False):
        """Build weights from a rule string, a list, a dict or weights."""
        if isinstance(value, WeightSequence):
            return cls(value.prefix, value.tail, growing)
        if isinstance(value, str):
            return cls((), value, growing)
        if isinstance(value, dict):
            unknown = set(value) - {'prefix', 'tail'}
            if unknown:
                raise SpecValidationError(
                    f"unknown weight keys: {', '.join(sorted(unknown))}")
            return cls(value.get('prefix', ()), value.get('tail'), growing)
        if isinstance(value, (list, tuple)):
            return cls(value, None, growing)
        raise SpecValidationError(f"cannot read weights from {value!r}")

    def __repr__(self):
        return f"WeightSequence(prefix={list(self.prefix)}, tail={self.tail!r})"


class OrliczFunction:
    """A convex Orlicz function M with M(0) = 0.

    Attributes:
        kind (str): 'power' for t^p, 'powerlog' for t^p log(1 + t) or
            'tabulated' for a convex piecewise linear table.
        p (float): Exponent of the power kinds.
        breakpoints (numpy.ndarray): (t, M(t)) rows of a table, t
            increasing. The table is extended linearly past its end.
    """
    def __init__(self, kind, p=None, breakpoints=None):
        if kind not in ORLICZ_KINDS:
            raise SpecValidationError(f"unknown Orlicz function kind: {kind}")
        self.kind = kind
        self.p = None
        self.breakpoints = None

        if kind == TABULATED:
            self.breakpoints = _check_table(breakpoints)
            ts = np.concatenate([[0.0], self.breakpoints[:, 0]])
            ms = np.concatenate([[0.0], self.breakpoints[:, 1]])
            self._ts, self._ms = ts, ms
            self._slope = (ms[-1] - ms[-2]) / (ts[-1] - ts[-2])
        else:
            self.p = _check_exponent(p, f"{kind} Orlicz exponent")
            if math.isinf(self.p):
                raise SpecValidationError("Orlicz exponent must be finite")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == POWER:
            return t ** self.p
        if self.kind == POWER_LOG:
            return t ** self.p * np.log1p(t)
        inside = np.interp(t, self._ts, self._ms)
        beyond = self._ms[-1] + self._slope * (t - self._ts[-1])
        return np.where(t > self._ts[-1], beyond, inside)

    def as_dict(self):
        if self.kind == TABULATED:
            return {'kind': TABULATED, 'breakpoints': self.breakpoints.tolist()}
        return {'kind': self.kind, 'p': self.p}

    @classmethod
    def from_dict(cls, values):
        if isinstance(values, OrliczFunction):
            return values
        if not isinstance(values, dict) or 'kind' not in values:
            raise SpecValidationError(
                f"an Orlicz function needs a kind: {values!r}")
        return cls(values['kind'], values.get('p'), values.get('breakpoints'))

    def __repr__(self):
        return f"OrliczFunction({self.as_dict()})"


class SpaceSpec:
    """A sequence space family and its parameters.

    Use the family constructors (`SpaceSpec.lp(2)`,
    `SpaceSpec.lorentz('geometric:0.5', p=1)`, ...) or `from_dict`.

    Attributes:
        family (str): One of FAMILIES.
        p (float): Exponent of lp, lorentz and the Garling families.
        weights (WeightSequence): x for lorentz, a for the Garling
            families and phi for the Sargent families.
        functions (tuple of OrliczFunction): One function for an Orlicz
            space, several for a modular space. Coordinate j uses the
            j-th function, the last function serving every later
            coordinate.
        concave (bool): True unless the increments of the Sargent phi
            grow somewhere on the checked prefix.
    """
    def __init__(self, family, p=None, weights=None, functions=()):
        if family not in FAMILIES:
            raise SpecValidationError(f"unknown space family: {family}")
        self.family = family
        self.p = None
        self.weights = None
        self.functions = ()
        self.concave = True
        self._checked = 0

        if family == LP:
            self.p = _check_exponent(p, 'lp exponent')
        elif family in (LORENTZ, GARLING_MU, GARLING_NU):
            self.p = _check_exponent(p, f"{family} exponent")
            if math.isinf(self.p):
                raise SpecValidationError(f"{family} exponent must be finite")
            if family == GARLING_NU and self.p <= 1:
                raise SpecValidationError("garling_nu needs p > 1")
        elif p is not None:
            raise SpecValidationError(f"{family} takes no exponent")

        if family in WEIGHTED_FAMILIES:
            if weights is None:
                raise SpecValidationError(f"{family} needs weights")
            self.weights = WeightSequence.coerce(
                weights, growing=family in GROWING_FAMILIES)
            values = self.weight_values(
                max(CHECKED_PREFIX, len(self.weights.prefix)))
            if family in GROWING_FAMILIES:
                steps = np.diff(values, prepend=0.0)
                self.concave = not np.any(
                    np.diff(steps) > WEIGHT_TOL * max(1.0, values[-1]))
        elif weights is not None:
            raise SpecValidationError(f"{family} takes no weights")

        if family == ORLICZ:
            if isinstance(functions, (OrliczFunction, dict)):
                functions = [functions]
            self.functions = tuple(OrliczFunction.from_dict(f)
                                   for f in functions)
            if not self.functions:
                raise SpecValidationError("orlicz needs an Orlicz function")
        elif functions:
            raise SpecValidationError(f"{family} takes no Orlicz function")

    # Constructors #

    @classmethod
    def lp(cls, p):
        return cls(LP, p=p)

    @classmethod
    def c0(cls):
        return cls(C0)

    @classmethod
    def orlicz(cls, functions):
        return cls(ORLICZ, functions=functions)

    @classmethod
    def lorentz(cls, weights, p=1):
        return cls(LORENTZ, p=p, weights=weights)

    @classmethod
    def garling_mu(cls, weights, p):
        return cls(GARLING_MU, p=p, weights=weights)

    @classmethod
    def garling_nu(cls, weights, p):
        return cls(GARLING_NU, p=p, weights=weights)

    @classmethod
    def sargent_m(cls, weights):
        return cls(SARGENT_M, weights=weights)

    @classmethod
    def sargent_n(cls, weights):
        return cls(SARGENT_N, weights=weights)

    # Properties #

    @property
    def is_modular(self):
        return len(self.functions) > 1

    @property
    def is_symmetric(self):
        return not self.is_modular

    def weight_values(self, n):
        """Return the first n weights, validating any not checked yet.

        Raises:
            SpecValidationError: If the weights break the family's
                monotonicity conditions.
        """
        values = self.weights.values(n)
        if n > self._checked:
            if self.family in GROWING_FAMILIES:
                _check_sargent_weights(values)
            else:
                _check_decaying_weights(values, self.family)
            self._checked = n
        return values

    def as_dict(self):
        params = {}
        if self.p is not None:
            params['p'] = 'inf' if math.isinf(self.p) else self.p
        if self.weights is not None:
            params['weights'] = self.weights.as_dict()
        if len(self.functions) == 1:
            params['function'] = self.functions[0].as_dict()
        elif self.functions:
            params['functions'] = [f.as_dict() for f in self.functions]
        return {'family': self.family, 'params': params}

    @classmethod
    def from_dict(cls, values):
        """Build a spec from its JSON form {"family": ..., "params": {...}}.

        Raises:
            SpecValidationError: On unknown keys or invalid parameters.
        """
        if not isinstance(values, dict) or 'family' not in values:
            raise SpecValidationError("a space needs a 'family' key")
        unknown = set(values) - {'family', 'params'}
        if unknown:
            raise SpecValidationError(
                f"unknown space keys: {', '.join(sorted(unknown))}")
        params = dict(values.get('params') or {})
        for alias in ('x', 'a', 'phi'):
            if alias in params:
                params['weights'] = params.pop(alias)
        if 'function' in params:
            params['functions'] = [params.pop('function')]
        unknown = set(params) - {'p', 'weights', 'functions'}
        if unknown:
            raise SpecValidationError(
                f"unknown space parameters: {', '.join(sorted(unknown))}")
        return cls(values['family'], params.get('p'), params.get('weights'),
                   params.get('functions', ()))

    def __eq__(self, other):
        return isinstance(other, SpaceSpec) and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(repr(self.as_dict()))

    def __repr__(self):
        return f"SpaceSpec({self.as_dict()})"


class NipResult:
    """Outcome of a norm iteration check.

    Attributes:
        row_value (float): Norm of the row norms.
        col_value (float): Norm of the column norms.
        gap (float): |row_value - col_value|.
        enforced (bool): False when the family is only checked for
            information.
        tolerance (float): Largest gap accepted.
    """
    def __init__(self, row_value, col_value, enforced, tolerance=NIP_TOL):
        self.row_value = float(row_value)
        self.col_value = float(col_value)
        self.gap = abs(self.row_value - self.col_value)
        self.enforced = enforced
        self.tolerance = tolerance

    @property
    def passed(self):
        return not self.enforced or self.gap <= self.tolerance

    def __iter__(self):
        return iter((self.row_value, self.col_value, self.gap))

    def __repr__(self):
        return (f"NipResult(row={self.row_value!r}, col={self.col_value!r}, "
                f"gap={self.gap!r}, enforced={self.enforced})")


# Functions ############################################################

def as_sequence(seq):
    if isinstance(seq, FiniteSequence):
        return seq
    return FiniteSequence(seq)


def conjugate(p):
    """Return the Hoelder conjugate q of p, with 1/p + 1/q = 1."""
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1)


def decreasing_rearrangement(seq):
    """Return the moduli of a sequence sorted nonincreasing.

    Ties keep their original order.
    """
    moduli = as_sequence(seq).moduli()
    order = np.argsort(-moduli, kind='stable')
    return FiniteSequence(moduli[order])


def evaluate_norm(spec, seq, budget=None):
    """Evaluate the norm of a finite sequence in a space.

    Args:
        spec (SpaceSpec): The space.
        seq: A FiniteSequence or anything array like.
        budget (OptBudget): Budget of the garling_nu inner infimum.

    Returns:
        float: The norm. For garling_nu this is the certified upper
        bound of `garling_nu_norm`.
    """
    moduli = as_sequence(seq).moduli()
    if spec.family == GARLING_NU:
        return garling_nu_norm(spec, moduli, budget).value
    return float(evaluate_norms(spec, moduli[np.newaxis, :])[0])


def evaluate_norms(spec, rows, budget=None):
    """Evaluate the norm of every row of a matrix.

    Args:
        spec (SpaceSpec): The space.
        rows (array like): A k by N matrix, one sequence per row.
        budget (OptBudget): Budget of the garling_nu inner infimum.

    Returns:
        numpy.ndarray: The k norms.
    """
    rows = np.abs(np.atleast_2d(np.asarray(rows))).astype(float)
    count, length = rows.shape
    if length == 0 or count == 0:
        return np.zeros(count)
    family = spec.family

    if family == C0 or (family == LP and math.isinf(spec.p)):
        return rows.max(axis=1)
    if family == LP:
        return _power_sums(rows, np.ones(length), spec.p)
    if family == ORLICZ:
        return np.array([luxemburg_norm(spec.functions, row) for row in rows])
    if family == GARLING_NU:
        return np.array([garling_nu_norm(spec, row, budget).value
                         for row in rows])

    star = -np.sort(-rows, axis=1)
    weights = spec.weight_values(length)
    if family in (LORENTZ, GARLING_MU):
        return _power_sums(star, weights, spec.p)
    if family == SARGENT_M:
        return (np.cumsum(star, axis=1) / weights).max(axis=1)
    return star @ _sargent_steps(spec, length)


def luxemburg_norm(functions, moduli):
    """Luxemburg norm inf{k > 0 : sum M_j(|a_j| / k) <= 1} by bisection.

    Args:
        functions (sequence of OrliczFunction): Coordinate j uses entry j,
            the last entry serving every later coordinate.
        moduli (array like): The sequence.

    Returns:
        float: The norm, to relative accuracy LUXEMBURG_RTOL.
    """
    moduli = np.abs(np.asarray(moduli, dtype=float))
    support = np.flatnonzero(moduli)
    if support.size == 0:
        return 0.0
    values = moduli[support]
    which = np.minimum(support, len(functions) - 1)
    groups = [(functions[i], values[which == i]) for i in np.unique(which)]

    def excess(k):
        return sum(float(np.sum(f(v / k))) for f, v in groups) - 1.0

    low, high = float(values.max()), float(values.sum())
    for _ in range(2000):
        if excess(low) > 0:
            break
        low /= 2
    else:
        raise SpecValidationError("Luxemburg bracket failed to open below")
    for _ in range(2000):
        if excess(high) <= 0:
            break
        high *= 2
    else:
        raise SpecValidationError("Luxemburg bracket failed to open above")
    if excess(high) == 0:
        return high

    return float(optimize.bisect(excess, low, high,
                                 xtol=np.finfo(float).tiny,
                                 rtol=LUXEMBURG_RTOL, maxiter=2000))


def garling_nu_norm(spec, seq, budget=None):
    """Certified upper bound of the garling_nu norm.

    The norm is the infimum, over nonincreasing nonnegative k in the unit
    ball of l_q, of max_n (sum_{j<=n} b*_j) / (sum_{j<=n} k_j a_j^(1/p)).
    The search runs over free vectors z mapped to k by a cumulative
    minimum of |z| followed by normalization.

    Args:
        spec (SpaceSpec): A garling_nu spec.
        seq: The sequence.
        budget (OptBudget): Search settings, optim.INNER_BUDGET by default.

    Returns:
        Witnessed: Upper-of-inf value with the vector k as witness.
    """
    if spec.family != GARLING_NU:
        raise SpecValidationError(f"garling_nu_norm got a {spec.family} space")
    hat = decreasing_rearrangement(seq).stripped().coeffs.real
    size = hat.size
    if size == 0:
        return optim.Witnessed(0.0, np.zeros(0), optim.UPPER_OF_INF)

    q = conjugate(spec.p)
    b = spec.weight_values(size) ** (1 / spec.p)
    partial = np.cumsum(hat)

    def ratio(k):
        denom = np.cumsum(k * b)
        if denom[0] <= 0:
            return math.inf
        with np.errstate(divide='ignore'):
            return float(np.max(partial / denom))

    def project(z):
        k = np.minimum.accumulate(np.abs(z))
        length = np.linalg.norm(k, q)
        if length == 0:
            return _unit(size, 0)
        return k / length

    def contains(k, tol):
        return bool(np.all(k >= -tol) and np.all(np.diff(k) <= tol)
                    and np.linalg.norm(k, q) <= 1 + tol)

    majorant = np.maximum.accumulate((hat / b)[::-1])[::-1]
    seeds = [majorant / np.linalg.norm(majorant, q), _unit(size, 0),
             np.full(size, size ** (-1 / q))]

    family = optim.FamilySpec('garling_nu', size, project, contains)
    return optim.minimize_over_family(ratio, family,
                                      budget or optim.INNER_BUDGET, seeds)


def kothe_dual_spec(spec):
    """Return the Koethe dual of a space where it is known in closed form.

    Returns:
        SpaceSpec: The dual space, or None when no closed form is known
        (lorentz, powerlog and tabulated Orlicz, modular spaces, Sargent
        spaces whose phi increments grow somewhere).
    """
    family = spec.family
    if family == LP:
        return SpaceSpec.lp(conjugate(spec.p))
    if family == C0:
        return SpaceSpec.lp(1)
    if family == ORLICZ and not spec.is_modular:
        function = spec.functions[0]
        if function.kind == POWER:
            return SpaceSpec.lp(conjugate(function.p))
        return None
    swap = {GARLING_MU: GARLING_NU, GARLING_NU: GARLING_MU,
            SARGENT_M: SARGENT_N, SARGENT_N: SARGENT_M}
    if family in GROWING_FAMILIES and not spec.concave:
        return None
    if family in swap:
        return SpaceSpec(swap[family], p=spec.p, weights=spec.weights)
    return None


def holder_extremal(spec, seq):
    """Return a point of the unit ball of `spec` that norms `seq`.

    The point a satisfies ||a||_spec <= 1 and sum |a_j b_j| equals the
    norm of b = `seq` in the Koethe dual of `spec`. It is nonnegative and
    follows the positions of b.

    Returns:
        numpy.ndarray: The point, or None where no closed form is known
        (spaces without a known dual and garling_mu, whose dual norm is
        only bounded from above).
    """
    moduli = as_sequence(seq).moduli()
    length = moduli.size
    point = np.zeros(length)
    if not moduli.any():
        return point

    family = spec.family
    p = spec.p
    if family == ORLICZ:
        if spec.is_modular or spec.functions[0].kind != POWER:
            return None
        p = spec.functions[0].p
        family = LP

    if family == C0 or (family == LP and math.isinf(p)):
        return (moduli > 0).astype(float)
    if family == LP and p == 1:
        return _unit(length, int(np.argmax(moduli)))
    if family == LP:
        q = conjugate(p)
        scaled = moduli / moduli.max()
        return scaled ** (q - 1) / np.linalg.norm(scaled, q) ** (q - 1)

    if family not in (SARGENT_M, SARGENT_N, GARLING_NU) or not spec.concave:
        return None
    order = np.argsort(-moduli, kind='stable')
    star = moduli[order]
    weights = spec.weight_values(length)
    if family == SARGENT_M:
        support = int(np.count_nonzero(star))
        point[order[:support]] = np.diff(weights, prepend=0.0)[:support]
        return point
    if family == SARGENT_N:
        ratios = np.cumsum(star) / weights
        top = int(np.argmax(ratios)) + 1
        point[order[:top]] = 1 / weights[top - 1]
        return point
    scale = float(_power_sums(star[np.newaxis, :], weights, p)[0])
    point[order] = (star / scale) ** (p - 1) * weights
    return point


def dual_norm(spec, seq, budget=None):
    """Norm of a sequence in the Koethe dual of a space.

    The dual norm is sup{sum |a_n b_n| : a in the unit ball of spec}.
    When the dual is known in closed form it is evaluated directly and
    the witness is the Hoelder extremal point. Otherwise the supremum is
    searched for over the unit ball.

    Args:
        spec (SpaceSpec): The space.
        seq: The sequence b.
        budget (OptBudget): Search settings.

    Returns:
        Witnessed: Exact for closed form duals, upper-of-inf when the
        dual is garling_nu, lower-of-sup otherwise.
    """
    seq = as_sequence(seq)
    dual = kothe_dual_spec(spec)
    if dual is not None and dual.family == GARLING_NU:
        return garling_nu_norm(dual, seq, budget)
    if dual is not None:
        witness = holder_extremal(spec, seq)
        return optim.Witnessed(evaluate_norm(dual, seq), witness, optim.EXACT)

    moduli = seq.moduli()
    if not moduli.any():
        return optim.Witnessed(0.0, np.zeros(moduli.size), optim.EXACT)
    ball = space_ball(spec, moduli.size, budget)
    seeds = [optim.normalized_seed(moduli, ball)]
    return optim.maximize_over_ball(lambda a: float(np.abs(a) @ moduli),
                                    ball, budget, seeds)


def bidual_norm(spec, seq, budget=None):
    """Recover a norm as sup{sum |a_n b_n| : b in the dual unit ball}.

    For perfect spaces this equals the norm of `seq` itself. The search
    is seeded with the Hoelder extremal point of the dual when one is
    known.

    Returns:
        Witnessed: Lower-of-sup value with the dual point as witness.

    Raises:
        SpecValidationError: If the dual of `spec` is not known.
    """
    dual = kothe_dual_spec(spec)
    if dual is None:
        raise SpecValidationError(f"{spec.family} has no known Koethe dual")
    moduli = as_sequence(seq).moduli()
    if not moduli.any():
        return optim.Witnessed(0.0, np.zeros(moduli.size), optim.EXACT)
    ball = space_ball(dual, moduli.size, budget)
    extremal = holder_extremal(dual, moduli)
    if extremal is None:
        extremal = optim.normalized_seed(moduli, ball)
    return optim.maximize_over_ball(lambda b: float(np.abs(b) @ moduli),
                                    ball, budget, [extremal])


def space_ball(spec, length, budget=None):
    """The unit ball of a space truncated to `length` coordinates."""
    inner = budget and budget.nested()
    return optim.BallSpec(f"{spec.family} ball", length,
                          lambda v: evaluate_norm(spec, v, inner))


def unit_vector_norm(spec, n):
    """Return the norm of the n-th unit vector, n >= 1."""
    if n < 1:
        raise SequenceError("unit vectors are indexed from 1")
    return evaluate_norm(spec, _unit(n, n - 1))


def iterates_exactly(spec):
    """True for spaces whose iterated norm is a single sum or maximum."""
    if spec.family in (LP, C0):
        return True
    return (spec.family == ORLICZ and not spec.is_modular
            and spec.functions[0].kind == POWER)


def nip_check(spec, arr, tolerance=NIP_TOL, budget=None):
    """Compare the iterated norms of a double array by rows and by columns.

    The check is enforced for spaces that iterate exactly. For the
    rearrangement families the gap can be positive, so it is only
    reported.

    Args:
        spec (SpaceSpec): The space.
        arr: A DoubleArray or a matrix.
        tolerance (float): Largest gap accepted.
        budget (OptBudget): Budget of garling_nu inner searches.

    Returns:
        NipResult: The two values, their gap and whether it is enforced.
    """
    entries = arr.moduli() if isinstance(arr, DoubleArray) \
        else DoubleArray(arr).moduli()
    row_value = evaluate_norm(spec, evaluate_norms(spec, entries, budget),
                              budget)
    col_value = evaluate_norm(spec, evaluate_norms(spec, entries.T, budget),
                              budget)
    result = NipResult(row_value, col_value, iterates_exactly(spec), tolerance)
    if not result.enforced and result.gap > tolerance:
        log.info("%s iterated norms differ by %.3g (informational)",
                 spec.family, result.gap)
    return result


def brute_force_norm(spec, seq):
    """Evaluate a rearrangement norm by enumerating permutations or sets.

    Only meant as a reference for short sequences.

    Raises:
        SequenceError: If the support is longer than BRUTE_FORCE_LIMIT.
        SpecValidationError: For families without a brute force formula.
    """
    moduli = as_sequence(seq).stripped().moduli()
    size = moduli.size
    if size > BRUTE_FORCE_LIMIT:
        raise SequenceError(
            f"brute force is limited to {BRUTE_FORCE_LIMIT} coordinates")
    if size == 0:
        return 0.0
    family = spec.family
    if family not in (LORENTZ, GARLING_MU, SARGENT_M, SARGENT_N):
        raise SpecValidationError(f"no brute force formula for {family}")
    weights = spec.weight_values(size)

    if family == LORENTZ:
        return max(float(np.dot(weights, np.array(perm) ** spec.p))
                   for perm in itertools.permutations(moduli)) ** (1 / spec.p)
    if family == SARGENT_N:
        steps = _sargent_steps(spec, size, ordered=False)
        return max(float(np.dot(steps, perm))
                   for perm in itertools.permutations(moduli))
    if family == SARGENT_M:
        return max(sum(moduli[list(chosen)]) / weights[s - 1]
                   for s in range(1, size + 1)
                   for chosen in itertools.combinations(range(size), s))

    # a^_j is the least, over sets A of fewer than j indices, of the
    # largest modulus outside A
    hat = np.array([min(max((moduli[i] for i in range(size) if i not in drop),
                            default=0.0)
                        for r in range(j)
                        for drop in itertools.combinations(range(size), r))
                    for j in range(1, size + 1)])
    return float(np.dot(weights, hat ** spec.p)) ** (1 / spec.p)


# Helpers ##############################################################

def _unit(length, index):
    point = np.zeros(length)
    point[index] = 1.0
    return point


def _power_sums(rows, weights, p):
    """Rowwise (sum w_j r_j^p)^(1/p), scaled by the row maximum."""
    scale = rows.max(axis=1)
    safe = np.where(scale > 0, scale, 1.0)
    sums = ((rows / safe[:, np.newaxis]) ** p) @ weights
    return np.where(scale > 0, safe * sums ** (1 / p), 0.0)


def _parse_rule(rule):
    name, _, arg = str(rule).partition(':')
    if name not in WeightSequence.RULES:
        raise SpecValidationError(f"unknown weight rule: {rule}")
    if name == 'sqrt':
        if arg:
            raise SpecValidationError("the sqrt rule takes no argument")
        return name, None
    try:
        value = float(arg)
    except ValueError:
        raise SpecValidationError(f"weight rule needs a number: {rule}")
    if not math.isfinite(value) or value < 0:
        raise SpecValidationError(f"weight rule argument out of range: {rule}")
    return name, value


def _check_exponent(p, what):
    if isinstance(p, str) and p.lower() in ('inf', 'infinity'):
        return math.inf
    try:
        value = float(p)
    except (TypeError, ValueError):
        raise SpecValidationError(f"{what} must be a number, got {p!r}")
    if math.isnan(value) or value < 1:
        raise SpecValidationError(f"{what} must be >= 1, got {p!r}")
    return value


def _check_decaying_weights(values, family):
    if abs(values[0] - 1) > WEIGHT_TOL:
        raise SpecValidationError(f"{family} weights must start at 1")
    if not np.all(values > 0):
        raise SpecValidationError(f"{family} weights must be positive")
    if np.any(np.diff(values) > WEIGHT_TOL):
        raise SpecValidationError(f"{family} weights must be nonincreasing")


def _check_sargent_weights(values):
    if not values[0] > 0:
        raise SpecValidationError("sargent weights must start positive")
    if np.any(np.diff(values) < -WEIGHT_TOL):
        raise SpecValidationError("sargent weights must be nondecreasing")
    j = np.arange(1, values.size, dtype=float)
    if np.any((j + 1) * values[:-1] <= j * values[1:]):
        raise SpecValidationError(
            "sargent weights must satisfy (j+1) phi_j > j phi_(j+1)")


def _sargent_steps(spec, size, ordered=True):
    """The `size` largest increments of phi.

    Past the prefix the tail rules have nonincreasing increments, so the
    largest ones lie among the first size + len(prefix) positions. They
    are sorted decreasingly, or kept in position order when `ordered` is
    False.
    """
    window = size + len(spec.weights.prefix)
    steps = np.diff(spec.weight_values(window), prepend=0.0)
    top = np.sort(np.argsort(-steps, kind='stable')[:size])
    if ordered:
        return -np.sort(-steps[top])
    return steps[top]


def _check_table(breakpoints):
    try:
        table = np.array(breakpoints, dtype=float)
    except (TypeError, ValueError):
        raise SpecValidationError("Orlicz table must hold (t, M(t)) pairs")
    if table.ndim != 2 or table.shape[1] != 2 or len(table) < 1:
        raise SpecValidationError("Orlicz table must hold (t, M(t)) pairs")
    if not np.all(np.isfinite(table)):
        raise SpecValidationError("Orlicz table entries must be finite")
    ts = np.concatenate([[0.0], table[:, 0]])
    ms = np.concatenate([[0.0], table[:, 1]])
    if np.any(np.diff(ts) <= 0):
        raise SpecValidationError("Orlicz table t values must increase")
    slopes = np.diff(ms) / np.diff(ts)
    if slopes[0] <= 0:
        raise SpecValidationError("Orlicz table must be positive for t > 0")
    if np.any(np.diff(slopes) < -1e-12 * max(1.0, slopes.max())):
        raise SpecValidationError("Orlicz table must be convex")
    return table


# Exceptions ###########################################################

class SpecValidationError(ValueError):
    """Raised for an invalid space, Orlicz function or weight sequence."""


class SequenceError(ValueError):
    """Raised for malformed sequences."""
