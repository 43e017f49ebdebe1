"""
Norms of finite sequences of vectors in a finite dimensional normed space.

For a space X given by a NormOracle and a scalar sequence space lambda:

- the strong norm is the lambda norm of the sequence of norms ||x_n||,
- the weak norm is the sup over the dual unit ball of ||(f(x_n))_n||,
- the weak star norm of functionals is the sup over the unit ball of X,
- the mid norm is the sup over operators T from X into lambda truncated
  to m coordinates, ||T|| <= 1, of the strong lambda norm of (T x_n)_n.

The weak and mid norms are searches and return lower bounds with
witnesses. Every operator ball is measured with `operator_norm_bound`,
an upper estimate of the operator norm, so witnesses are always
genuinely feasible.
"""
import itertools
import logging
import math

# 3rd party libraries
import numpy as np

# Local imports
from . import optim
from . import spaces


# Constants ############################################################

L1 = 'l1'
L2 = 'l2'
LINF = 'linf'
CUSTOM = 'custom'
SPACE = 'space'
BUILTIN_KINDS = (L1, L2, LINF)
_DUAL_KIND = {L1: LINF, L2: L2, LINF: L1}
_ORDER = {L1: 1, L2: 2, LINF: np.inf}

MAX_SIGN_DIM = 12
NET_ANGLES = 256
NET_FACE = 32
ASCENT_DEFLATION = 0.95
CHAIN_TOL = 1e-9

log = logging.getLogger(__name__)


# Classes ##############################################################

class NormOracle:
    """A norm on R^dim together with its dual norm.

    Built in oracles are l1, l2 and linf with exact dual norms. A custom
    oracle must provide both callables.

    Attributes:
        dim (int): Dimension of the space.
        kind (str): 'l1', 'l2', 'linf', 'space' or 'custom'.
    """
    def __init__(self, dim, norm, dual_norm, kind=CUSTOM, name=None):
        self.dim = int(dim)
        if self.dim < 1:
            raise DimensionError("a normed space needs dimension >= 1")
        self.kind = kind
        self.name = name or f"{kind}:{self.dim}"
        self.spec = None
        self._norm = norm
        self._dual_norm = dual_norm

    @classmethod
    def builtin(cls, kind, dim):
        if kind not in BUILTIN_KINDS:
            raise DimensionError(f"unknown built in norm: {kind}")
        order = _ORDER[kind]
        dual = _ORDER[_DUAL_KIND[kind]]
        return cls(dim,
                   lambda x: float(np.linalg.norm(x, order)),
                   lambda f: float(np.linalg.norm(f, dual)),
                   kind)

    @classmethod
    def parse(cls, text):
        """Read an oracle from 'l1:d', 'l2:d' or 'linf:d'."""
        kind, _, dim = str(text).partition(':')
        try:
            return cls.builtin(kind, int(dim))
        except ValueError:
            raise DimensionError(f"cannot read a normed space from {text!r}")

    @classmethod
    def from_space(cls, spec, dim, budget=None):
        """The space lambda truncated to `dim` coordinates as an oracle."""
        oracle = cls(dim,
                     lambda x: spaces.evaluate_norm(spec, x),
                     lambda f: spaces.dual_norm(spec, f, budget).value,
                     SPACE, f"{spec.family}:{dim}")
        oracle.spec = spec
        return oracle

    def norm(self, x):
        return self._norm(np.asarray(x, dtype=float))

    def dual_norm(self, f):
        return self._dual_norm(np.asarray(f, dtype=float))

    def norms(self, rows):
        """Norms of the rows of a matrix."""
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        if self.kind in BUILTIN_KINDS:
            return np.linalg.norm(rows, _ORDER[self.kind], axis=1)
        if self.spec is not None:
            return spaces.evaluate_norms(self.spec, rows)
        return np.array([self.norm(row) for row in rows])

    def dual_norms(self, rows):
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        if self.kind in BUILTIN_KINDS:
            return np.linalg.norm(rows, _ORDER[_DUAL_KIND[self.kind]], axis=1)
        return np.array([self.dual_norm(row) for row in rows])

    def dual(self):
        """The dual space, whose dual is this space again."""
        if self.kind in BUILTIN_KINDS:
            return NormOracle.builtin(_DUAL_KIND[self.kind], self.dim)
        return NormOracle(self.dim, self._dual_norm, self._norm, self.kind,
                          f"dual of {self.name}")

    def ball(self):
        return optim.BallSpec(f"{self.name} ball", self.dim, self.norm)

    def dual_ball(self):
        return optim.BallSpec(f"dual {self.name} ball", self.dim,
                              self.dual_norm)

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"NormOracle({self.name!r})"


class VectorSequence:
    """A finite sequence of vectors of one normed space.

    Attributes:
        oracle (NormOracle): The space the vectors live in.
        vectors (numpy.ndarray): One vector per row.
    """
    def __init__(self, oracle, vectors):
        values = np.array(vectors, dtype=float)
        if values.size == 0:
            values = values.reshape(0, oracle.dim)
        if values.ndim != 2 or values.shape[1] != oracle.dim:
            raise DimensionError(
                f"vectors of shape {values.shape} do not live in {oracle}")
        if not np.all(np.isfinite(values)):
            raise DimensionError("vector coordinates must be finite")
        self.oracle = oracle
        self.vectors = values

    def norms(self):
        if not len(self):
            return np.zeros(0)
        return self.oracle.norms(self.vectors)

    def as_dict(self):
        return {'oracle': str(self.oracle), 'vectors': self.vectors.tolist()}

    @classmethod
    def from_dict(cls, values):
        if not isinstance(values, dict) or set(values) != {'oracle', 'vectors'}:
            raise DimensionError(
                "a vector sequence needs exactly 'oracle' and 'vectors'")
        return cls(NormOracle.parse(values['oracle']), values['vectors'])

    def __len__(self):
        return len(self.vectors)

    def __repr__(self):
        return f"VectorSequence({self.oracle}, {self.vectors.tolist()})"


class ChainResult:
    """The three norms of the weak, mid and strong chain.

    Attributes:
        weak (Witnessed): Weak norm lower bound.
        mid (Witnessed): Mid norm lower bound, seeded from the weak
            witness.
        strong (float): Exact strong norm.
        violations (list of str): Names of the failed inequalities.
        unit_normalized (bool): True if ||e_1|| = 1 in the space, the
            condition under which the seeding guarantees weak <= mid.
    """
    def __init__(self, weak, mid, strong, violations, unit_normalized):
        self.weak = weak
        self.mid = mid
        self.strong = strong
        self.violations = violations
        self.unit_normalized = unit_normalized

    @property
    def passed(self):
        return not self.violations

    def __iter__(self):
        return iter((self.weak.value, self.mid.value, self.strong,
                     self.violations))


# Functions ############################################################

def strong_norm(spec, xs, budget=None):
    """Return ||(||x_n||)_n||_lambda, computed exactly."""
    return spaces.evaluate_norm(spec, xs.norms(), budget)


def phi_operator(xs):
    """Matrix of the map f -> (f(x_n))_n from the dual of X into lambda."""
    return xs.vectors.copy()


def operator_norm_bound(matrix, domain, target, budget=None):
    """Upper estimate of the norm of a matrix between normed spaces.

    The matrix maps (R^d, domain) into R^k normed by `target`, either a
    SpaceSpec truncated to k coordinates or a NormOracle. The estimate is
    exact when the domain is l1, when it is linf with d <= MAX_SIGN_DIM,
    when the target is l2 over an l2 domain, when the target is linf or
    c0, when the target is l1 with k <= MAX_SIGN_DIM and when d = 1.
    Over an l2 domain the sum of the rank one terms of a singular value
    decomposition bounds the norm, refined by a net of the sphere when
    d is 2 or 3. Other domains use a search inflated by
    1 / ASCENT_DEFLATION, which is not certified.

    Args:
        matrix (array like): A k by d matrix.
        domain (NormOracle): Norm of the domain.
        target: SpaceSpec or NormOracle of the codomain.
        budget (OptBudget): Budget of inner searches.

    Returns:
        float: The estimate.
    """
    A = np.atleast_2d(np.asarray(matrix, dtype=float))
    k, d = A.shape
    if d != domain.dim:
        raise DimensionError(f"a {k}x{d} matrix cannot act on {domain}")
    if not A.any():
        return 0.0
    norms = _target_norms(target, budget)
    kind = _target_kind(target)

    if domain.kind == L1:
        return float(norms(A.T).max())
    if domain.kind == LINF and d <= MAX_SIGN_DIM:
        return float(norms(_sign_vectors(d) @ A.T).max())
    if kind == LINF:
        return float(domain.dual_norms(A).max())
    if kind == L1 and k <= MAX_SIGN_DIM:
        return float(domain.dual_norms(_sign_vectors(k) @ A).max())
    if d == 1:
        return float(norms(A.T).max()) / domain.norm(np.ones(1))
    if domain.kind == L2:
        if kind == L2:
            return float(np.linalg.norm(A, 2))
        bound = _rank_one_split(A, domain, norms)
        if d in (2, 3):
            bound = min(bound, _net_bound(A, norms, bound))
        return bound
    return _ascent_bound(A, domain, norms, budget)


def weak_norm_bound(spec, xs, budget=None):
    """Upper estimate of the weak norm, the norm of the phi operator."""
    if not len(xs):
        return 0.0
    return operator_norm_bound(phi_operator(xs), xs.oracle.dual(), spec,
                               budget)


def weak_star_norm_bound(spec, fs, budget=None):
    """Upper estimate of the weak star norm of functionals on fs.oracle."""
    if not len(fs):
        return 0.0
    return operator_norm_bound(fs.vectors, fs.oracle, spec, budget)


def weak_norm(spec, xs, budget=None, seeds=()):
    """Lower bound of sup over the dual unit ball of ||(f(x_n))_n||.

    Args:
        spec (SpaceSpec): The space lambda.
        xs (VectorSequence): The vectors.
        budget (OptBudget): Search settings.
        seeds (iterable): Extra dual functionals to start from.

    Returns:
        Witnessed: Lower-of-sup value with the functional f as witness.
    """
    return _image_sup(spec, phi_operator(xs), xs.oracle.dual(), budget,
                      seeds)


def weak_star_norm(spec, fs, budget=None, seeds=()):
    """Lower bound of sup over the unit ball of X of ||(f_n(x))_n||.

    `fs` holds functionals on the space of `fs.oracle`.

    Returns:
        Witnessed: Lower-of-sup value with the point x as witness.
    """
    return _image_sup(spec, fs.vectors, fs.oracle, budget, seeds)


def mid_norm(spec, xs, m, budget=None, seeds=()):
    """Lower bound of the mid norm over operators into lambda_m.

    The truncations 1 to m are searched in turn, each one seeded with the
    operator found for the truncation below padded with a zero row, so
    the values never decrease with m. The first truncation is seeded
    with T = e_1 (x) f where f is the weak norm witness, so the result is
    at least the weak norm when ||e_1|| = 1.

    Args:
        spec (SpaceSpec): The space lambda.
        xs (VectorSequence): The vectors.
        m (int): Number of coordinates of lambda the operators map into.
        budget (OptBudget): Search settings.
        seeds (iterable): Extra m by d operators. They are rescaled into
            the operator ball when needed.

    Returns:
        Witnessed: Lower-of-sup value with the m by d operator as
        witness. `details` holds the weak norm and the values reached
        for every truncation up to m.
    """
    if m < 1:
        raise DimensionError("the truncation m must be >= 1")
    dim = xs.oracle.dim
    weak = weak_norm(spec, xs, budget)
    if not len(xs) or not xs.vectors.any():
        return optim.Witnessed(0.0, np.zeros((m, dim)), optim.EXACT,
                               details={'weak': weak, 'profile': [0.0] * m})
    seeds = list(seeds)

    def search(level, padded):
        extra = padded + (seeds if level == m else [])
        return _operator_sup(spec, xs, level, budget, weak, extra)

    found, profile = optim.nested_sup(search, m, optim.pad_rows)
    found.details.update({'weak': weak, 'profile': profile})
    return found


def mid_norm_functional_form(spec, xs, m, budget=None, seeds=()):
    """The mid norm as a sup over m functionals (f_k) on X.

    The functionals are searched directly, unconstrained, maximizing
    ||((f_k(x_n))_k)_n||^s divided by the weak star estimate of (f_k).
    The starts are the right singular vectors of the vectors and their
    Euclidean directions, which makes this an independent estimate of
    the value `mid_norm` reaches over operator matrices.

    Returns:
        Witnessed: Lower-of-sup value with the m by d functionals as
        witness, scaled to weak star estimate 1.
    """
    if m < 1:
        raise DimensionError("the truncation m must be >= 1")
    dim = xs.oracle.dim
    if not len(xs) or not xs.vectors.any():
        return optim.Witnessed(0.0, np.zeros((m, dim)), optim.EXACT)
    inner = _inner(budget)

    def size(flat):
        return weak_star_norm_bound(
            spec, VectorSequence(xs.oracle, flat.reshape(m, dim)), budget)

    def objective(flat):
        scale = size(flat)
        if scale == 0:
            return 0.0
        values = xs.vectors @ flat.reshape(m, dim).T
        rows = spaces.evaluate_norms(spec, values, inner)
        return spaces.evaluate_norm(spec, rows, inner) / scale

    _, s, Vt = np.linalg.svd(xs.vectors, full_matrices=False)
    count = min(m, int(np.sum(s > s[0] * 1e-12)))
    singular = np.zeros((m, dim))
    singular[:count] = Vt[:count]
    nonzero = xs.vectors[np.any(xs.vectors != 0, axis=1)][:m]
    directions = np.zeros((m, dim))
    directions[:len(nonzero)] = (
        nonzero / np.linalg.norm(nonzero, axis=1, keepdims=True))

    ball = optim.BallSpec(f"weak star ball into {spec.family}:{m}", m * dim,
                          size, shape=(m, dim))
    candidates = [singular, directions] + list(seeds)
    starts = [optim.normalized_seed(c, ball) for c in candidates]
    found = optim.maximize_over_ball(objective, ball, budget, starts)
    scale = size(found.witness.ravel())
    if scale > 0:
        found.witness = found.witness / scale
    return found


def chain_check(spec, xs, m, budget=None, tolerance=CHAIN_TOL):
    """Compute the weak, mid and strong norms and check their order.

    Returns:
        ChainResult: The three norms and any violated inequality.
    """
    strong = strong_norm(spec, xs, budget)
    mid = mid_norm(spec, xs, m, budget)
    weak = mid.details['weak']
    violations = []
    if weak.value > mid.value + tolerance:
        violations.append('weak<=mid')
    if mid.value > strong + tolerance:
        violations.append('mid<=strong')
    unit = abs(spaces.unit_vector_norm(spec, 1) - 1) <= 1e-12
    if violations:
        log.warning("chain violated for %s: %s", spec.family,
                    ', '.join(violations))
    return ChainResult(weak, mid, strong, violations, unit)


def limited_bound_profile(spec, xs, fs, budget=None):
    """Return the profile b_j = ||(f_j(x_n))_n||_lambda.

    Args:
        spec (SpaceSpec): The space lambda.
        xs (VectorSequence): The vectors x_n.
        fs (VectorSequence): Functionals f_j on the same space.

    Returns:
        FiniteSequence: The profile.
    """
    if fs.oracle.dim != xs.oracle.dim:
        raise DimensionError("functionals and vectors live in different spaces")
    if not len(xs) or not len(fs):
        return spaces.FiniteSequence(np.zeros(len(fs)))
    images = fs.vectors @ xs.vectors.T
    return spaces.FiniteSequence(spaces.evaluate_norms(spec, images, budget))


def limited_operator_bound(spec, xs, f, budget=None):
    """Lower bound of sup over the unit ball of the dual of lambda of
    |sum a_n f(x_n)|.

    For perfect spaces this cannot exceed the profile value of f.

    Returns:
        Witnessed: Lower-of-sup value with the sequence a as witness.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (xs.oracle.dim,):
        raise DimensionError(f"functional of shape {f.shape} on {xs.oracle}")
    return spaces.bidual_norm(spec, xs.vectors @ f, budget)


# Helpers ##############################################################

def _inner(budget):
    return budget and budget.nested()


def _target_norms(target, budget=None):
    if isinstance(target, NormOracle):
        return target.norms
    inner = _inner(budget)
    return lambda rows: spaces.evaluate_norms(target, rows, inner)


def _target_kind(target):
    if isinstance(target, NormOracle):
        return target.kind
    if target.family == spaces.C0:
        return LINF
    if target.family == spaces.LP:
        return {1.0: L1, 2.0: L2, math.inf: LINF}.get(target.p)
    return None


def _sign_vectors(k):
    """All sign vectors of length k whose first entry is +1."""
    tails = list(itertools.product((1.0, -1.0), repeat=k - 1))
    return np.array([(1.0,) + tail for tail in tails])


def _rank_one_split(A, domain, norms):
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    keep = s > 0
    if not keep.any():
        return 0.0
    left = norms(U[:, keep].T)
    right = domain.dual_norms(Vt[keep])
    return float(np.sum(s[keep] * left * right))


def _net_bound(A, norms, split):
    d = A.shape[1]
    if d == 2:
        theta = np.pi * np.arange(NET_ANGLES) / NET_ANGLES
        points = np.column_stack([np.cos(theta), np.sin(theta)])
        best = float(norms(points @ A.T).max())
        return best / math.cos(math.pi / (2 * NET_ANGLES))

    grid = np.linspace(-1.0, 1.0, NET_FACE + 1)
    u, v = (axis.ravel() for axis in np.meshgrid(grid, grid))
    ones = np.ones_like(u)
    points = np.concatenate([np.column_stack([ones, u, v]),
                             np.column_stack([u, ones, v]),
                             np.column_stack([u, v, ones])])
    points /= np.linalg.norm(points, axis=1, keepdims=True)
    best = float(norms(points @ A.T).max())
    radius = math.sqrt(2) / NET_FACE
    return min(best / (1 - radius), best + radius * split)


def _ascent_bound(A, domain, norms, budget):
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    ball = domain.ball()
    seeds = [optim.normalized_seed(Vt[0], ball)]
    found = optim.maximize_over_ball(lambda x: float(norms(A @ x)[0]), ball,
                                     _inner(budget) or optim.INNER_BUDGET,
                                     seeds)
    log.debug("operator norm of a %s domain estimated by search", domain)
    return found.value / ASCENT_DEFLATION


def _image_sup(spec, matrix, domain, budget, seeds):
    """sup over the unit ball of `domain` of ||matrix @ f||_lambda."""
    matrix = np.atleast_2d(matrix)
    dim = domain.dim
    if not matrix.size or not matrix.any():
        return optim.Witnessed(0.0, np.zeros(dim), optim.EXACT)
    ball = domain.ball()
    inner = _inner(budget)

    def objective(f):
        return spaces.evaluate_norm(spec, matrix @ f, inner)

    _, _, Vt = np.linalg.svd(matrix, full_matrices=False)
    lead = Vt[0]
    signs = np.where(lead >= 0, 1.0, -1.0)
    candidates = [lead, signs] + list(np.eye(dim)) + list(seeds)
    starts = [optim.normalized_seed(c, ball) for c in candidates]
    return optim.maximize_over_ball(objective, ball, budget, starts)


def _operator_sup(spec, xs, m, budget, weak, seeds):
    """One truncation of the mid norm search, over m by d operators."""
    dim = xs.oracle.dim

    def bound(flat):
        return operator_norm_bound(flat.reshape(m, dim), xs.oracle, spec,
                                   budget)

    ball = optim.BallSpec(f"operator ball into {spec.family}:{m}", m * dim,
                          bound, shape=(m, dim))
    inner = _inner(budget)

    def objective(flat):
        images = xs.vectors @ flat.reshape(m, dim).T
        return spaces.evaluate_norm(
            spec, spaces.evaluate_norms(spec, images, inner), inner)

    first = np.zeros((m, dim))
    first[0] = weak.witness
    _, _, Vt = np.linalg.svd(xs.vectors, full_matrices=False)
    lead = np.zeros((m, dim))
    lead[0] = Vt[0]
    rows = min(m, dim)
    diagonal = np.zeros((m, dim))
    diagonal[:rows, :rows] = np.eye(rows)

    candidates = [first, lead, diagonal] + list(seeds)
    starts = [optim.normalized_seed(c, ball) for c in candidates]
    return optim.maximize_over_ball(objective, ball, budget, starts)


# Exceptions ###########################################################

class DimensionError(ValueError):
    """Raised when vectors, functionals or operators do not fit together."""
