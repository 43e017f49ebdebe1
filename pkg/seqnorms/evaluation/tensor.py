"""
Tensor norms on X (x) Y built from a sequence space lambda.

A tensor u is stored as a d by e matrix, x (x) y being the outer product.
A representation of u is a list of blocks, each block a pair of vector
sequences (x_j), (y_j) with u = sum over blocks of sum_j x_j (x) y_j.

- gamma_lambda(u) is the infimum over single block representations of
  ||(x_j)||^s_lambda ||(y_j)||^mid_dual, dual being the Koethe dual of
  lambda.
- gamma_lambda_c(u) is the infimum of the sum of the block costs over
  representations with several blocks.
- injective_norm(u) is the sup of |f(u)g| over unit functionals f, g.

Block costs use the strong norm of the y sequence, which is at least its
mid norm, so every reported cost is a true upper bound. The cost with
the mid norm lower bound is reported next to it as a sharper estimate
without a certificate.

Representations are searched through their x sequences (or their y
sequences when X is the larger space). The other sequence is solved for
by a pseudo inverse so that every candidate reconstructs u.
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

RECONSTRUCTION_TOL = 1e-9
CHECK_TOL = 1e-9
RANK_TOL = 1e-10

log = logging.getLogger(__name__)


# Classes ##############################################################

class Tensor:
    """An element of X (x) Y.

    Attributes:
        entries (numpy.ndarray): The d by e matrix of the tensor.
        domain (NormOracle): The space X, of dimension d.
        codomain (NormOracle): The space Y, of dimension e.
    """
    def __init__(self, entries, domain, codomain):
        values = np.atleast_2d(np.array(entries, dtype=float))
        if values.shape != (domain.dim, codomain.dim):
            raise DimensionError(
                f"a {values.shape} matrix is not a tensor of "
                f"{domain} and {codomain}")
        if not np.all(np.isfinite(values)):
            raise DimensionError("tensor entries must be finite")
        self.entries = values
        self.domain = domain
        self.codomain = codomain

    @classmethod
    def elementary(cls, x, y, domain, codomain):
        return cls(np.outer(x, y), domain, codomain)

    @classmethod
    def from_dict(cls, values):
        """Read {"domain": "l2:2", "codomain": "l2:2", "entries": [...]}."""
        if not isinstance(values, dict) or \
                set(values) != {'domain', 'codomain', 'entries'}:
            raise DimensionError(
                "a tensor needs exactly 'domain', 'codomain' and 'entries'")
        return cls(values['entries'], NormOracle.parse(values['domain']),
                   NormOracle.parse(values['codomain']))

    def rank(self):
        return _rank(self.entries)

    def scaled(self, factor):
        return Tensor(factor * self.entries, self.domain, self.codomain)

    def as_dict(self):
        return {'domain': str(self.domain), 'codomain': str(self.codomain),
                'entries': self.entries.tolist()}


class Representation:
    """A finite representation u = sum_i sum_j x_ij (x) y_ij.

    Attributes:
        blocks (list of tuple): (xs, ys) pairs of arrays with one vector
            per row and the same number of rows.
    """
    def __init__(self, blocks=()):
        self.blocks = []
        for xs, ys in blocks:
            xs, ys = np.atleast_2d(xs).astype(float), \
                np.atleast_2d(ys).astype(float)
            if len(xs) != len(ys):
                raise RepresentationError(
                    "the two sequences of a block need equal lengths")
            self.blocks.append((xs, ys))

    def reconstruct(self, shape=None):
        if not self.blocks:
            return np.zeros(shape or (0, 0))
        return sum(xs.T @ ys for xs, ys in self.blocks)

    def residual(self, entries):
        entries = np.asarray(entries, dtype=float)
        if not self.blocks:
            return float(np.max(np.abs(entries), initial=0.0))
        return float(np.max(np.abs(self.reconstruct() - entries)))

    def cost(self, spec, X, Y, budget=None):
        """Certified cost, the sum of strong x norms times strong y norms
        in the Koethe dual of lambda."""
        dual = _dual_of(spec)
        return sum(_block_cost(spec, dual, X, Y, xs, ys, budget)
                   for xs, ys in self.blocks)

    def sharp_cost(self, spec, X, Y, m=4, budget=None):
        """Cost with the mid norm lower bound of the y sequences."""
        dual = _dual_of(spec)
        total = 0.0
        for xs, ys in self.blocks:
            if not xs.any() or not ys.any():
                continue
            strong = vector_norms.strong_norm(spec, VectorSequence(X, xs),
                                              budget)
            mid = vector_norms.mid_norm(dual, VectorSequence(Y, ys), m, budget)
            total += strong * mid.value
        return total

    def scaled(self, factor):
        """Representation of factor * u, scaling the x sequences."""
        return Representation([(factor * xs, ys) for xs, ys in self.blocks])

    def as_dict(self):
        return {'blocks': [{'xs': xs.tolist(), 'ys': ys.tolist()}
                           for xs, ys in self.blocks]}

    def __len__(self):
        return len(self.blocks)


class TraceReport:
    """The trace duality pairing of an operator with a representation.

    Attributes:
        phi (float): sum of <x_ij, T y_ij> over the representation.
        pairing (float): <u, T>, the same value computed from u alone.
        bound (float): sum over blocks of ||(T y_ij)_j||^s_dual
            ||(x_ij)_j||^s_lambda.
        ratio (float): |phi| / gamma_lambda_c(u) when a gamma value is
            given, an empirical lower bound of the mid summing norm of T
            in the dual space.
    """
    def __init__(self, phi, pairing, bound, ratio=None, tolerance=CHECK_TOL):
        self.phi = float(phi)
        self.pairing = float(pairing)
        self.bound = float(bound)
        self.ratio = ratio
        scale = max(1.0, abs(self.pairing), self.bound)
        self.consistent = abs(self.phi - self.pairing) <= tolerance * scale
        self.within_bound = abs(self.phi) <= self.bound + tolerance * scale

    @property
    def passed(self):
        return self.consistent and self.within_bound


class _LastBlock:
    """Parametrizes a block of r vector pairs reconstructing a target.

    When r >= d the x sequence is free and y solves the reconstruction.
    When e <= r < d the y sequence is free instead. Otherwise x is
    confined to the span of the r leading left singular vectors of the
    target, which requires the target to have rank <= r.
    """
    def __init__(self, r, d, e):
        self.r, self.d, self.e = r, d, e
        if r >= d:
            self.mode, self.size = 'x', r * d
        elif r >= e:
            self.mode, self.size = 'y', r * e
        else:
            self.mode, self.size = 'basis', r * r

    def build(self, params, target):
        r, d, e = self.r, self.d, self.e
        if self.mode == 'x':
            xs = params.reshape(r, d)
            ys = np.linalg.pinv(xs.T) @ target
        elif self.mode == 'y':
            ys = params.reshape(r, e)
            xs = np.linalg.pinv(ys.T) @ target.T
        else:
            U = np.linalg.svd(target)[0][:, :r]
            xs = params.reshape(r, r) @ U.T
            ys = np.linalg.pinv(xs.T) @ target
        scale = max(1.0, float(np.max(np.abs(target), initial=0.0)))
        if np.max(np.abs(xs.T @ ys - target), initial=0.0) > \
                RECONSTRUCTION_TOL * scale:
            return None
        return xs, ys

    def params_of(self, xs, ys, target):
        xs, ys = _pad_rows(xs, self.r), _pad_rows(ys, self.r)
        if self.mode == 'x':
            return xs.ravel()
        if self.mode == 'y':
            return ys.ravel()
        return (xs @ np.linalg.svd(target)[0][:, :self.r]).ravel()

    def seeds(self, target):
        """Singular value and identity factorizations of the target."""
        r, d, e = self.r, self.d, self.e
        U, s, Vt = np.linalg.svd(target)
        count = min(r, _rank(target))
        xs, ys = np.zeros((r, d)), np.zeros((r, e))
        xs[:count] = np.sqrt(s[:count])[:, np.newaxis] * U[:, :count].T
        ys[:count] = np.sqrt(s[:count])[:, np.newaxis] * Vt[:count]
        seeds = [self.params_of(xs, ys, target)]
        if self.mode == 'x':
            seeds.append(_pad_rows(np.eye(d), r).ravel())
        elif self.mode == 'y':
            seeds.append(_pad_rows(np.eye(e), r).ravel())
        return seeds


# Functions ############################################################

def gamma_lambda(spec, u, r=None, m=4, budget=None, seeds=()):
    """Upper bound of the tensor quasi norm over single block
    representations of length r.

    Args:
        spec (SpaceSpec): The space lambda. Its Koethe dual must be known.
        u (Tensor): The tensor.
        r (int): Length of the representations, min(d, e) by default.
        m (int): Truncation of the mid norm in the sharp estimate.
        budget (OptBudget): Search settings.
        seeds (iterable of Representation): Extra single block
            representations to start from.

    Returns:
        Witnessed: Upper-of-inf value with the Representation as witness.
        `details` holds the sharp estimate and the search parameters.

    Raises:
        RepresentationError: If u has rank above r.
    """
    dual = _dual_of(spec)
    d, e = u.entries.shape
    r = r or min(d, e)
    if not u.entries.any():
        return optim.Witnessed(0.0, Representation(), optim.EXACT,
                               details={'sharp_estimate': 0.0})
    if u.rank() > r:
        raise RepresentationError(
            f"a tensor of rank {u.rank()} has no representation of length {r}")

    block = _LastBlock(r, d, e)
    target = u.entries

    def objective(params):
        pair = block.build(params, target)
        if pair is None:
            return np.inf
        return _block_cost(spec, dual, u.domain, u.codomain, *pair, budget)

    starts = block.seeds(target) + [
        block.params_of(*rep.blocks[-1], target) for rep in seeds]
    family = optim.FamilySpec('representation', block.size)
    found = optim.minimize_over_family(objective, family, budget, starts)

    rep = Representation([block.build(found.witness, target)])
    _check_representation(rep, target)
    sharp = rep.sharp_cost(spec, u.domain, u.codomain, m, budget)
    return optim.Witnessed(found.value, rep, optim.UPPER_OF_INF,
                           found.converged, found.evaluations,
                           {'sharp_estimate': sharp, 'params': found.witness})


def gamma_lambda_c(spec, u, blocks=3, r=None, m=4, budget=None, seeds=()):
    """Upper bound of the tensor norm over representations with up to
    `blocks` blocks of length r.

    The first blocks are free and the last one repairs the
    reconstruction. The search always starts from the gamma_lambda
    witness as a single block, so the value never exceeds gamma_lambda.

    Args:
        spec (SpaceSpec): The space lambda. Its Koethe dual must be known.
        u (Tensor): The tensor.
        blocks (int): Number of blocks.
        r (int): Length of every block, min(d, e) by default.
        m (int): Truncation of the mid norm in the sharp estimate.
        budget (OptBudget): Search settings.
        seeds (iterable of Representation): Extra representations to
            start from, with at most `blocks` blocks.

    Returns:
        Witnessed: Upper-of-inf value with the Representation as witness,
        `details['gamma']` holding the gamma_lambda result.
    """
    if blocks < 1:
        raise RepresentationError("a representation needs at least one block")
    dual = _dual_of(spec)
    gamma = gamma_lambda(spec, u, r, m, budget)
    if not u.entries.any():
        return optim.Witnessed(0.0, Representation(), optim.EXACT,
                               details={'gamma': gamma,
                                        'sharp_estimate': 0.0})

    d, e = u.entries.shape
    r = r or min(d, e)
    free = blocks - 1
    width = r * (d + e)
    last = _LastBlock(r, d, e)
    target = u.entries

    def unpack(params):
        pairs = []
        for b in range(free):
            chunk = params[b * width:(b + 1) * width]
            pairs.append((chunk[:r * d].reshape(r, d),
                          chunk[r * d:].reshape(r, e)))
        residual = target - sum((xs.T @ ys for xs, ys in pairs),
                                np.zeros_like(target))
        repaired = last.build(params[free * width:], residual)
        if repaired is None:
            return None
        return pairs + [repaired]

    def objective(params):
        pairs = unpack(params)
        if pairs is None:
            return np.inf
        head = sum(_block_cost(spec, dual, u.domain, u.codomain, xs, ys,
                               budget) for xs, ys in pairs[:-1])
        return head + _block_cost(spec, dual, u.domain, u.codomain,
                                  *pairs[-1], budget)

    starts = [np.concatenate([np.zeros(free * width),
                              gamma.details['params']])]
    for rep in seeds:
        starts.append(_multi_block_params(rep, free, r, last, target))
    family = optim.FamilySpec('multi block representation',
                              free * width + last.size)
    found = optim.minimize_over_family(objective, family, budget, starts)

    pairs = [(xs, ys) for xs, ys in unpack(found.witness)
             if xs.any() and ys.any()]
    rep = Representation(pairs)
    _check_representation(rep, target)
    sharp = rep.sharp_cost(spec, u.domain, u.codomain, m, budget)
    return optim.Witnessed(found.value, rep, optim.UPPER_OF_INF,
                           found.converged, found.evaluations,
                           {'gamma': gamma, 'sharp_estimate': sharp,
                            'params': found.witness})


def injective_norm(u, budget=None):
    """Lower bound of sup |f u g| over unit functionals f on X and g on Y.

    Returns:
        Witnessed: Lower-of-sup value with {'f': ..., 'g': ...} as witness.
    """
    E = u.entries
    d, e = E.shape
    if not E.any():
        return optim.Witnessed(0.0, {'f': np.zeros(d), 'g': np.zeros(e)},
                               optim.EXACT)
    balls = [optim.BallSpec('dual ball of X', d, u.domain.dual_norm),
             optim.BallSpec('dual ball of Y', e, u.codomain.dual_norm)]
    joint = optim.product_ball('pair of dual balls', balls)

    def objective(point):
        f, g = optim.split_point(point, balls)
        return abs(float(f @ E @ g))

    U, _, Vt = np.linalg.svd(E)
    i, j = np.unravel_index(np.argmax(np.abs(E)), E.shape)
    pairs = [(U[:, 0], Vt[0]),
             (np.sign(U[:, 0]) + (U[:, 0] == 0), np.sign(Vt[0]) + (Vt[0] == 0)),
             (np.eye(d)[i], np.eye(e)[j])]
    starts = [np.concatenate([optim.normalized_seed(f, balls[0]),
                              optim.normalized_seed(g, balls[1])])
              for f, g in pairs]
    found = optim.maximize_over_ball(objective, joint, budget, starts)
    f, g = optim.split_point(found.witness, balls)
    found.witness = {'f': f, 'g': g}
    return found


def trace_pairing(T, u):
    """Return <u, T> = sum_ab u_ab T_ab for T mapping Y into the dual of X."""
    if T.entries.shape != u.entries.shape:
        raise DimensionError(
            f"an operator of shape {T.entries.shape} does not pair with a "
            f"tensor of shape {u.entries.shape}")
    return float(np.sum(T.entries * u.entries))


def trace_duality_check(spec, T, u, representation, gamma_c=None,
                        budget=None, tolerance=CHECK_TOL):
    """Evaluate the trace duality pairing on a representation.

    Computes phi = sum <x_ij, T y_ij> and checks it against <u, T> and
    against the per block Hoelder bound
    sum_i ||(T y_ij)_j||^s_dual ||(x_ij)_j||^s_lambda.

    Args:
        spec (SpaceSpec): The space lambda. Its Koethe dual must be known.
        T (OperatorMatrix): The operator from Y into the dual of X, as a
            d by e matrix.
        u (Tensor): The tensor.
        representation (Representation): A representation of u.
        gamma_c (float): A gamma_lambda_c value of u, used for the ratio.
        budget (OptBudget): Budget of inner searches.

    Returns:
        TraceReport

    Raises:
        RepresentationError: If the representation does not reconstruct u.
    """
    dual = _dual_of(spec)
    _check_representation(representation, u.entries, force=True)
    phi, bound = 0.0, 0.0
    for xs, ys in representation.blocks:
        images = ys @ T.entries.T
        phi += float(np.sum(xs * images))
        bound += spaces.evaluate_norm(dual, u.domain.dual_norms(images),
                                      budget) * \
            spaces.evaluate_norm(spec, u.domain.norms(xs), budget)

    ratio = None
    if gamma_c is not None and float(gamma_c) > 0:
        ratio = abs(phi) / float(gamma_c)
    report = TraceReport(phi, trace_pairing(T, u), bound, ratio, tolerance)
    if optim.witness_checks() and not report.passed:
        raise optim.WitnessError(
            f"trace pairing {report.phi!r} against bound {report.bound!r} "
            f"and pairing {report.pairing!r}")
    return report


def functional_check(u, f, g, gamma_c, tolerance=CHECK_TOL):
    """Check |f u g| <= ||f|| ||g|| gamma_c for functionals f and g.

    Returns:
        tuple: (lhs, rhs, passed)
    """
    lhs = abs(float(np.asarray(f) @ u.entries @ np.asarray(g)))
    rhs = u.domain.dual_norm(f) * u.codomain.dual_norm(g) * float(gamma_c)
    return lhs, rhs, lhs <= rhs + tolerance * max(1.0, rhs)


def weak_cost(spec, representation, X, Y, budget=None):
    """Sum over blocks of the weak upper estimates of both sequences."""
    dual = _dual_of(spec)
    total = 0.0
    for xs, ys in representation.blocks:
        total += vector_norms.weak_norm_bound(spec, VectorSequence(X, xs),
                                              budget) * \
            vector_norms.weak_norm_bound(dual, VectorSequence(Y, ys), budget)
    return total


# Helpers ##############################################################

def _dual_of(spec):
    dual = spaces.kothe_dual_spec(spec)
    if dual is None:
        raise spaces.SpecValidationError(
            f"tensor norms need the Koethe dual of {spec.family}")
    return dual


def _rank(entries):
    s = np.linalg.svd(entries, compute_uv=False)
    if not s.size or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > RANK_TOL * s[0]))


def _pad_rows(values, rows):
    values = np.atleast_2d(values)
    if len(values) > rows:
        raise RepresentationError(
            f"a block of length {len(values)} exceeds the rank budget {rows}")
    padded = np.zeros((rows, values.shape[1]))
    padded[:len(values)] = values
    return padded


def _block_cost(spec, dual, X, Y, xs, ys, budget=None):
    inner = budget and budget.nested()
    return spaces.evaluate_norm(spec, X.norms(xs), inner) * \
        spaces.evaluate_norm(dual, Y.norms(ys), inner)


def _multi_block_params(rep, free, r, last, target):
    if not rep.blocks or len(rep.blocks) > free + 1:
        raise RepresentationError(
            f"a seed needs between 1 and {free + 1} blocks")
    head = rep.blocks[:-1]
    head = [(np.zeros((r, last.d)), np.zeros((r, last.e)))] * \
        (free - len(head)) + head
    parts = [np.concatenate([_pad_rows(xs, r).ravel(), _pad_rows(ys, r).ravel()])
             for xs, ys in head]
    residual = target - sum((xs.T @ ys for xs, ys in head),
                            np.zeros_like(target))
    parts.append(last.params_of(*rep.blocks[-1], residual))
    return np.concatenate(parts)


def _check_representation(rep, entries, force=False):
    if not (force or optim.witness_checks()):
        return
    scale = max(1.0, float(np.max(np.abs(entries), initial=0.0)))
    if rep.residual(entries) > RECONSTRUCTION_TOL * scale:
        raise RepresentationError(
            f"representation misses the tensor by {rep.residual(entries):.3g}")


# Exceptions ###########################################################

class RepresentationError(ValueError):
    """Raised for representations that do not reconstruct their tensor or
    exceed the rank budget."""
