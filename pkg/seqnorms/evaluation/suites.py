"""
Randomized verification suites.

Each suite is a generator taking the number of trials, a search budget
and a numpy random generator, and yielding one report row per checked
inequality or equality. A row with `passed` False is a violation.

- scalar: closed form norms against brute force enumeration, and the
  Luxemburg norm of t^2 against l2.
- holder: the Hoelder inequality over the dual pairs with a known
  Koethe dual, and the extremal points of the closed form duals.
- iteration: iterated norms of random double arrays by rows and by
  columns. Only spaces that iterate exactly can fail.
- chain: weak <= mid <= strong on random vector sequences, and the weak
  norm of l2 against the largest singular value.
- summing: the 2-summing norm on l2 against the Hilbert Schmidt norm on
  the first HS_TRIALS trials, the summing norms of rank one operators
  against ||f|| ||y||, the inequalities every mid summing and weak to
  mid witness satisfies, and the ideal inequality.
- tensor: gamma_c <= gamma, the elementary tensor sandwich and the
  trace duality pairing.
"""
import logging
import time

# 3rd party libraries
import numpy as np

# Local imports
from . import optim
from . import spaces
from . import summing
from . import tensor
from . import vector_norms
from .report import make_row, row_from
from .spaces import SpaceSpec
from .summing import OperatorMatrix
from .vector_norms import NormOracle, VectorSequence


# Constants ############################################################

DEFAULT_SEED = 7
DEFAULT_TRIALS = {'scalar': 200, 'holder': 1000, 'iteration': 500,
                  'chain': 200, 'summing': 100, 'tensor': 100}

ORACLE_TOL = 1e-12
LUXEMBURG_TOL = 1e-10
CHECK_TOL = 1e-9
SINGULAR_TOL = 1e-6
HS_LOWER = 0.9
HS_TRIALS = 50
WITNESS_LENGTH = 3
RANK_ONE_LENGTH = 3
INJECTIVE_TOL = 1e-6

log = logging.getLogger(__name__)


# Suites ###############################################################

def scalar_suite(trials, budget, rng):
    for t in range(trials):
        spec = _rearrangement_space(rng)
        seq = _sequence(rng, 6)
        value = spaces.evaluate_norm(spec, seq)
        reference = spaces.brute_force_norm(spec, seq)
        yield make_row(f"scalar[{t}].{spec.family}", value, optim.EXACT,
                       {'seq': seq, 'reference': reference},
                       passed=abs(value - reference)
                       <= ORACLE_TOL * max(1.0, reference))

        seq = _sequence(rng, 8)
        value = spaces.evaluate_norm(_ORLICZ_SQUARE, seq)
        reference = float(np.linalg.norm(seq))
        yield make_row(f"scalar[{t}].orlicz", value, optim.EXACT,
                       {'seq': seq, 'reference': reference},
                       passed=abs(value - reference)
                       <= LUXEMBURG_TOL * max(1.0, reference))


def holder_suite(trials, budget, rng):
    inner = budget.nested()
    for t in range(trials):
        spec = _dual_pair_space(rng)
        dual = spaces.kothe_dual_spec(spec)
        size = int(rng.integers(1, 7))
        alpha, beta = rng.normal(size=size), rng.normal(size=size)
        lhs = float(np.abs(alpha) @ np.abs(beta))
        rhs = spaces.evaluate_norm(spec, alpha, inner) * \
            spaces.evaluate_norm(dual, beta, inner)
        yield make_row(f"holder[{t}].{spec.family}", lhs, optim.EXACT,
                       {'alpha': alpha, 'beta': beta, 'bound': rhs},
                       passed=lhs <= rhs + CHECK_TOL * max(1.0, rhs))

        if spec.family in (spaces.LP, spaces.SARGENT_M, spaces.SARGENT_N):
            point = spaces.holder_extremal(spec, beta)
            radius = spaces.evaluate_norm(spec, point)
            pairing = float(point @ np.abs(beta))
            target = spaces.evaluate_norm(dual, beta)
            scale = max(1.0, target)
            yield make_row(f"holder[{t}].extremal", pairing, optim.EXACT,
                           point,
                           passed=radius <= 1 + CHECK_TOL and
                           abs(pairing - target) <= CHECK_TOL * scale)


def iteration_suite(trials, budget, rng):
    inner = budget.nested()
    for t in range(trials):
        spec = _ITERATION_SPACES[int(rng.integers(len(_ITERATION_SPACES)))]
        rows, cols = rng.integers(1, 6, size=2)
        arr = rng.normal(size=(rows, cols))
        result = spaces.nip_check(spec, arr, CHECK_TOL, inner)
        yield make_row(f"iteration[{t}].{spec.family}", result.gap,
                       optim.EXACT,
                       {'rows': result.row_value, 'cols': result.col_value,
                        'enforced': result.enforced},
                       passed=result.passed)


def chain_suite(trials, budget, rng, m=4):
    for t in range(trials):
        p = float(rng.choice([1.0, 2.0, 3.0]))
        spec = SpaceSpec.lp(p)
        d, n = int(rng.integers(1, 4)), int(rng.integers(1, 6))
        xs = VectorSequence(NormOracle.builtin(vector_norms.L2, d),
                            rng.normal(size=(n, d)))
        start = time.perf_counter()
        chain = vector_norms.chain_check(spec, xs, m, budget)
        elapsed = _since(start)
        yield make_row(f"chain[{t}].weak<=mid", chain.weak.value,
                       optim.LOWER_OF_SUP, {'mid': chain.mid.value},
                       chain.weak.converged, elapsed,
                       'weak<=mid' not in chain.violations)
        yield make_row(f"chain[{t}].mid<=strong", chain.mid.value,
                       optim.LOWER_OF_SUP, {'strong': chain.strong},
                       chain.mid.converged, 0.0,
                       'mid<=strong' not in chain.violations)

        if p == 2:
            sigma = float(np.linalg.norm(xs.vectors, 2))
            weak = chain.weak.value
            yield make_row(f"chain[{t}].singular", weak, optim.LOWER_OF_SUP,
                           {'sigma': sigma}, chain.weak.converged,
                           passed=abs(weak - sigma)
                           <= SINGULAR_TOL * max(1.0, sigma))


def summing_suite(trials, budget, rng, n=8, m=4):
    plane = NormOracle.builtin(vector_norms.L2, 2)
    for t in range(trials):
        d = int(rng.integers(1, 4))
        l2 = NormOracle.builtin(vector_norms.L2, d)
        T = OperatorMatrix(rng.normal(size=(d, d)), l2, l2)
        if t < HS_TRIALS:
            hs = float(np.linalg.norm(T.entries))
            found = summing.pi_lambda(SpaceSpec.lp(2), T, n, budget)
            yield row_from(f"summing[{t}].hilbert-schmidt", found,
                           passed=HS_LOWER * hs <= found.value
                           <= hs + CHECK_TOL)

        spec = SpaceSpec.lp(float(rng.choice([1.0, 2.0])))
        yield from _rank_one_rows(t, spec, l2, budget, rng, m)

        found = summing.pi_lambda_mid(spec, T, WITNESS_LENGTH, m, budget)
        xs = VectorSequence(l2, found.witness)
        lhs = _strong_image(spec, T, found.witness, budget)
        rhs = found.value * vector_norms.strong_norm(spec, xs, budget)
        yield make_row(f"summing[{t}].pi-mid.witness", lhs,
                       optim.LOWER_OF_SUP, {'bound': rhs},
                       found.converged,
                       passed=lhs <= rhs + CHECK_TOL * max(1.0, rhs))

        R, T2, S = (OperatorMatrix(rng.normal(size=(2, 2)), plane, plane)
                    for _ in range(3))
        ideal = summing.ideal_witness_check(spec, R, T2, S, 3, m, budget)
        for row in ideal.rows:
            yield make_row(f"summing[{t}].{row['name']}", row['lhs'],
                           optim.LOWER_OF_SUP, {'bound': row['rhs']},
                           passed=row['passed'])

        found = summing.w_lambda_mid(spec, T2, 2, m, budget)
        S0, xs0 = found.witness['S'], found.witness['xs']
        ST = OperatorMatrix(S0 @ T2.entries, plane,
                            NormOracle.from_space(spec, m, budget))
        seeded = summing.pi_lambda(spec, ST, 2, budget)
        yield row_from(f"summing[{t}].w-mid", found,
                       passed=seeded.value
                       <= found.value + CHECK_TOL * max(1.0, found.value))

        lhs = _strong_image(spec, ST, xs0, budget)
        rhs = found.value * vector_norms.weak_norm_bound(
            spec, VectorSequence(plane, xs0), budget)
        yield make_row(f"summing[{t}].w-mid.witness", lhs,
                       optim.LOWER_OF_SUP, {'bound': rhs},
                       found.converged,
                       passed=lhs <= rhs + CHECK_TOL * max(1.0, lhs))


def tensor_suite(trials, budget, rng):
    plane = NormOracle.builtin(vector_norms.L2, 2)
    for t in range(trials):
        spec = SpaceSpec.lp(float(rng.choice([1.0, 2.0])))
        u = tensor.Tensor(rng.normal(size=(2, 2)), plane, plane)
        gamma = tensor.gamma_lambda(spec, u, budget=budget)
        gamma_c = tensor.gamma_lambda_c(spec, u, budget=budget)
        yield row_from(f"tensor[{t}].gamma-c<=gamma", gamma_c,
                       passed=gamma_c.value <= gamma.value + ORACLE_TOL)

        T = OperatorMatrix(rng.normal(size=(2, 2)), plane, plane)
        trace = tensor.trace_duality_check(spec, T, u, gamma_c.witness,
                                           gamma_c.value, budget)
        yield make_row(f"tensor[{t}].trace", abs(trace.phi), optim.EXACT,
                       {'pairing': trace.pairing, 'bound': trace.bound,
                        'ratio': trace.ratio},
                       passed=trace.passed)

        x, y = rng.normal(size=2), rng.normal(size=2)
        elementary = tensor.Tensor.elementary(x, y, plane, plane)
        found = tensor.gamma_lambda_c(spec, elementary, budget=budget)
        injective = tensor.injective_norm(elementary, budget)
        product = float(np.linalg.norm(x) * np.linalg.norm(y))
        yield row_from(
            f"tensor[{t}].elementary", found,
            passed=injective.value - INJECTIVE_TOL * max(1.0, product)
            <= found.value <= product + CHECK_TOL * max(1.0, product))


SUITES = {'scalar': scalar_suite, 'holder': holder_suite,
          'iteration': iteration_suite, 'chain': chain_suite,
          'summing': summing_suite, 'tensor': tensor_suite}


# Functions ############################################################

def run_suite(name, trials=None, budget=None, seed=DEFAULT_SEED):
    """Run a suite, or every suite for 'all', and collect its rows.

    Args:
        name (str): A key of SUITES or 'all'.
        trials (int): Trials of each suite. Defaults to DEFAULT_TRIALS.
        budget (OptBudget): Search settings. Defaults to OptBudget(seed).
        seed (int): Seed of the random instances.

    Returns:
        list of dict: The report rows, each with its elapsed time.
    """
    if name == 'all':
        rows = []
        for suite in SUITES:
            rows.extend(run_suite(suite, trials, budget, seed))
        return rows
    if name not in SUITES:
        raise KeyError(f"unknown suite: {name}")

    budget = budget or optim.OptBudget(seed=seed)
    count = DEFAULT_TRIALS[name] if trials is None else int(trials)
    rng = np.random.default_rng([seed, list(SUITES).index(name)])
    log.info("running the %s suite, %d trials", name, count)

    rows = []
    start = time.perf_counter()
    try:
        for row in SUITES[name](count, budget, rng):
            if not row['elapsed_ms']:
                row['elapsed_ms'] = _since(start)
            rows.append(row)
            if row.get('passed') is False:
                log.warning("%s failed with value %.12g", row['name'],
                            row['value'])
            start = time.perf_counter()
    except (optim.WitnessError, optim.OptimizationError) as error:
        log.warning("the %s suite stopped after %d rows: %s", name,
                    len(rows), error)
        rows.append(make_row(f"{name}[{len(rows)}].witness", 0.0,
                             optim.EXACT, {'error': str(error)}, False,
                             _since(start), passed=False))
    return rows


# Helpers ##############################################################

_ORLICZ_SQUARE = SpaceSpec.orlicz([spaces.OrliczFunction(spaces.POWER, p=2)])

_ITERATION_SPACES = (SpaceSpec.lp(1), SpaceSpec.lp(2.5),
                     SpaceSpec.sargent_m('sqrt'),
                     SpaceSpec.garling_mu('power:1', p=2))


def _rank_one_rows(t, spec, domain, budget, rng, m, n=RANK_ONE_LENGTH):
    """Rows checking that the summing norms of T = f (x) y stay below
    ||f|| ||y||, on the values and on the witness of pi_lambda_mid."""
    d = domain.dim
    f, y = rng.normal(size=d), rng.normal(size=d)
    T = OperatorMatrix(np.outer(y, f), domain, domain)
    f_norm = float(domain.dual_norms(np.atleast_2d(f))[0])
    bound = f_norm * float(np.linalg.norm(y))
    slack = CHECK_TOL * max(1.0, bound)

    pi = summing.pi_lambda(spec, T, n, budget)
    yield row_from(f"summing[{t}].rank-one.pi", pi,
                   passed=pi.value <= bound + slack)
    pi_mid = summing.pi_lambda_mid(spec, T, n, m, budget)
    yield row_from(f"summing[{t}].rank-one.pi-mid", pi_mid,
                   passed=pi_mid.value <= bound + slack)
    w_mid = summing.w_lambda_mid(spec, T, n, m, budget)
    yield row_from(f"summing[{t}].rank-one.w-mid", w_mid,
                   passed=w_mid.value <= bound + slack)

    if f_norm == 0:
        return
    seed = np.zeros((m, d))
    seed[0] = f / f_norm
    xs = pi_mid.witness
    mid = vector_norms.mid_norm(spec, VectorSequence(domain, xs), m, budget,
                                [seed])
    lhs = _strong_image(spec, T, xs, budget)
    rhs = bound * mid.value
    yield make_row(f"summing[{t}].rank-one.mid-witness", lhs,
                   optim.LOWER_OF_SUP, {'bound': rhs, 'mid': mid.value},
                   mid.converged,
                   passed=lhs <= rhs + CHECK_TOL * max(1.0, rhs))


def _strong_image(spec, T, xs, budget):
    """Strong lambda norm of (T x_i), measured in the codomain of T."""
    images = VectorSequence(T.codomain, T.apply(xs))
    return vector_norms.strong_norm(spec, images, budget)


def _since(start):
    return (time.perf_counter() - start) * 1000


def _sequence(rng, longest):
    """A random sequence with at most `longest` nonzero coordinates."""
    size = int(rng.integers(1, longest + 1))
    seq = rng.normal(size=size)
    seq[rng.random(size) < 0.2] = 0.0
    return seq


def _rearrangement_space(rng):
    choice = int(rng.integers(4))
    if choice == 0:
        return SpaceSpec.lorentz(f"geometric:{rng.uniform(0.3, 1.0)}",
                                 p=float(rng.choice([1.0, 1.5, 2.0])))
    if choice == 1:
        return SpaceSpec.lorentz(f"power:{rng.uniform(0.1, 2.0)}", p=1)
    if choice == 2:
        return SpaceSpec.sargent_n('sqrt')
    return SpaceSpec.sargent_n(f"power:{rng.uniform(0.2, 0.9)}")


def _dual_pair_space(rng):
    choice = int(rng.integers(5))
    if choice == 0:
        return SpaceSpec.lp(float(rng.choice([1.0, 1.5, 2.0, 3.0, np.inf])))
    if choice == 1:
        return SpaceSpec.garling_mu(f"power:{rng.uniform(0.2, 1.0)}",
                                    p=float(rng.choice([1.5, 2.0, 3.0])))
    if choice == 2:
        return SpaceSpec.garling_nu(f"power:{rng.uniform(0.2, 1.0)}",
                                    p=float(rng.choice([1.5, 2.0, 3.0])))
    if choice == 3:
        return SpaceSpec.sargent_m(f"power:{rng.uniform(0.2, 0.9)}")
    return SpaceSpec.sargent_n('sqrt')
