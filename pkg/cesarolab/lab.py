"""Theorem scenarios run as desk-scale experiments.

Every theorem links a Carleson condition on mu to the boundedness of C_mu
between two function spaces. A scenario checks two directions:

* necessity: a witness statistic built from the proof's extremal functions,
  which grows when mu misses the required Carleson exponent;
* sufficiency: the ratio of the target norm of C_mu(f) to the domain norm of
  f along the family f_a(z) = (1-a)/(1-az)^b and over a corpus of functions
  in the domain space. Its sup stays flat as a -> 1 and as the truncation
  doubles when mu meets the condition, and grows with the truncation when
  mu misses it.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from math import inf, isinf

import numpy as np

from . import __version__
from .carleson import BOUNDED, GROWING, VANISHING, blasco_statistic, verdict_from_trend
from .cesaro import OperatorInstance, apply, derivative_at
from .config import ScenarioConfig
from .errors import CesaroLabError, ParameterError
from .iterators import half_powers
from .measure import BetaLog, Lebesgue, moments
from .report import Check, ExperimentReport, ReportRow, error_record
from .series import ClosedForm, ConformalKernel, GeometricOnes, Lacunary, LogKernel, PowerKernel, make_series
from .settings import DEFAULT
from .spaces import (BlochType, Hardy, Lambda11, MeanLip, Morrey, bloch_coefficient_profile,
                     estimate_norm)

logger = logging.getLogger(__name__)

MISS_MARGIN = 0.1
WITNESS_TRUNCATION = 16384
SUITE_TRUNCATION = 16384
A_MARGIN = 4.0
LADDER = 5
MIN_LADDER_ORDER = 128

__all__ = ['ScenarioConfig', 'Plan', 'THEOREMS', 'plan_for', 'expectation', 'run_scenario',
           'run_suite', 'default_suite']


@dataclass(frozen=True)
class Plan:
    """What a theorem tag asks for once its parameters are fixed.

    Args:
        required (float): Carleson exponent characterizing boundedness.
        log_power (int): logarithmic power of the Carleson condition.
        witness (str): 'derivative', 'log_profile', 'moment', 'blasco' or None.
        weight (float): exponent used by the witness statistic.
        kernel_p (float): p of the family f_a = (1-a)/(1-az)^(1+1/p).
        target: space of C_mu(f) in the sufficiency ratio, None without one.
        domain: space of f in the sufficiency ratio.
    """
    required: float
    log_power: int
    witness: str
    weight: float
    kernel_p: float
    target: object
    domain: object


def _in(value, lo, hi, name, closed_hi=True):
    ok = lo < value <= hi if closed_hi else lo < value < hi
    if not ok:
        raise ParameterError(f"{name}={value} outside ({lo}, {hi}{']' if closed_hi else ')'}.")


def _t1_1(p, lam, domain=None):
    _in(p, 0, inf, 'p')
    _in(lam, 0, 1, 'lam')
    return Plan((1 + lam) / 2 + 1 / p, 0, 'derivative', (3 - lam) / 2, p,
                Morrey(lam), domain or Hardy(p))


def _t1_2(p, q=None, log_variant=False, domain=None):
    _in(p, 0, inf, 'p', closed_hi=False)
    if log_variant:
        return Plan(1 + 1 / p, 1, None, 1.0, p, Lambda11(), domain or BlochType(1 + 1 / p))
    _in(q, 1, inf, 'q', closed_hi=False)
    return Plan(1 + 1 / p, 0, 'derivative', 1.0, p, MeanLip(q, 1 / q), domain or BlochType(1 + 1 / p))


def _t1_3(lam):
    _in(lam, 0, 1, 'lam')
    return Plan((1 + lam) / 2, 1, 'log_profile', (3 - lam) / 2, inf, Morrey(lam), BlochType(1.0))


def _t1_4():
    return Plan(1.0, 1, 'log_profile', 1.0, inf, Lambda11(), BlochType(1.0))


def _t1_5(lam1, lam2, domain=None):
    _in(lam1, 0, 1, 'lam1', closed_hi=False)
    _in(lam2, 0, 1, 'lam2')
    required = 1 + (lam2 - lam1) / 2
    return Plan(required, 0, 'moment', required, 2 / (1 - lam1), Morrey(lam2),
                domain or BlochType((3 - lam1) / 2))


def _c3_5(p):
    _in(p, 2, inf, 'p')
    return _t1_1(p, 1 - 2 / p)


def _c3_8(lam, q):
    _in(lam, 0, 1, 'lam', closed_hi=False)
    return _t1_2(2 / (1 - lam), q, domain=Morrey(lam))


def _c3_10(lam):
    _in(lam, 0, 1, 'lam', closed_hi=False)
    return _t1_5(lam, lam, domain=Morrey(lam))


def _r3_4(alpha):
    _in(alpha, 0, 0.5, 'alpha')
    return Plan(alpha, 0, None, 0.0, inf, BlochType(2 - alpha), Hardy(inf))


def _r3_7():
    return Plan(2.0, 0, 'blasco', 0.0, inf, None, None)


# tag -> (builder, parameter names in builder order)
THEOREMS = {
    'T1_1': (_t1_1, ('p', 'lam')),
    'T1_2': (_t1_2, ('p', 'q', 'log_variant')),
    'T1_3': (_t1_3, ('lam',)),
    'T1_4': (_t1_4, ()),
    'T1_5': (_t1_5, ('lam1', 'lam2')),
    'C3_3': (lambda lam: _t1_1(inf, lam), ('lam',)),
    'C3_5': (_c3_5, ('p',)),
    'C3_6': (lambda p, q: _t1_2(p, q, domain=Hardy(p)), ('p', 'q')),
    'C3_8': (_c3_8, ('lam', 'q')),
    'C3_9': (_t1_3, ('lam',)),
    'C3_10': (_c3_10, ('lam',)),
    'R3_4': (_r3_4, ('alpha',)),
    'R3_7': (_r3_7, ()),
}


def plan_for(theorem, params):
    if theorem not in THEOREMS:
        raise ParameterError(f"Unknown theorem tag {theorem!r}; known tags {sorted(THEOREMS)}.")
    builder, names = THEOREMS[theorem]
    extra = sorted(set(params) - set(names))
    if extra:
        raise ParameterError(f"{theorem} takes parameters {names}, got extra {extra}.")
    optional = {'log_variant', 'q'} if params.get('log_variant') else {'log_variant'}
    missing = [n for n in names if n not in params and n not in optional]
    if missing:
        raise ParameterError(f"{theorem} needs parameter(s) {missing}.")
    return builder(**{n: params[n] for n in names if n in params})


def expectation(measure, plan, direction):
    """'bounded', 'growing' or None when the measure sits too close to the threshold.

    A measure missing only the logarithmic factor is expected to grow under
    necessity; sufficiency expects growth only from a missed power.
    """
    s, gamma = measure.exponent
    meets = s > plan.required + 1e-12 or (abs(s - plan.required) <= 1e-12 and gamma >= plan.log_power)
    misses_power = s < plan.required - MISS_MARGIN
    if direction == 'sufficiency':
        return 'bounded' if meets else 'growing' if misses_power else None
    misses = misses_power or (abs(s - plan.required) <= 1e-12 and gamma < plan.log_power)
    return 'growing' if misses else None


def _check(name, direction, slope, verdict, expected):
    if expected is None:
        outcome = 'indeterminate'
    elif expected == 'growing':
        outcome = 'pass' if verdict == GROWING else 'fail'
    else:
        outcome = 'pass' if verdict != GROWING else 'fail'
    return Check(name, direction, slope, verdict, expected, outcome)


# necessity witnesses

def _witness_order(cfg, settings):
    return cfg.witness_truncation or settings.truncation


def _n_grid(N):
    n = sorted({int(2.0**(j / 2.0)) for j in range(2, int(2 * np.log2(N)) + 1)})
    return np.array([k for k in n if k <= N])


def _derivative_witness(cfg, plan, settings):
    """(1-a)^weight |C_mu(f_a)'(a)| with f_a in closed form."""
    a = np.array([1.0 - d for _, d in half_powers(1, settings.depth)])
    stats = np.array([(1.0 - a_j)**plan.weight *
                      abs(derivative_at(cfg.measure, ClosedForm(ConformalKernel(a_j, plan.kernel_p)), a_j, 1, settings))
                      for a_j in a])
    return a, stats, verdict_from_trend(1.0 - a, stats, settings)


def _log_profile_witness(cfg, plan, settings):
    """n^-weight sum_{k<=n} k mu_k H_k, the coefficient statistic of C_mu(log 1/(1-z))."""
    N = cfg.witness_truncation or WITNESS_TRUNCATION
    profile = bloch_coefficient_profile(apply(cfg.measure, make_series(LogKernel(), N), settings), plan.weight)
    n = _n_grid(N)
    stats = profile[n - 1]
    return n, stats, verdict_from_trend(1.0 / n, stats, settings)


def _moment_witness(cfg, plan, settings):
    N = _witness_order(cfg, settings)
    mu = moments(cfg.measure, N, settings).values
    n = _n_grid(N)
    stats = mu[n] * n**plan.weight
    return n, stats, verdict_from_trend(1.0 / n, stats, settings)


def _blasco_witness(cfg, plan, settings):
    report = blasco_statistic(moments(cfg.measure, _witness_order(cfg, settings), settings), settings)
    n = _n_grid(len(report.values) - 1)
    verdict = BOUNDED if report.bounded else GROWING
    return n, report.values[n], (report.trend_slope, verdict)


WITNESSES = {'derivative': _derivative_witness, 'log_profile': _log_profile_witness,
             'moment': _moment_witness, 'blasco': _blasco_witness}


def _necessity(cfg, plan, settings, expected, rows):
    grid, stats, (slope, verdict) = WITNESSES[plan.witness](cfg, plan, settings)
    name = f"witness:{plan.witness}"
    rows.extend(ReportRow(name, g, 'statistic', v) for g, v in zip(grid, stats))
    logger.info("%s necessity: slope %.4g -> %s", cfg.label, slope, verdict)
    return _check(name, 'necessity', slope, verdict, expected)


# sufficiency ratios

def _critical_power(domain):
    """Exponent c with (1-z)^-c on the edge of the domain space, None if there is none."""
    if isinstance(domain, Hardy):
        return None if isinf(domain.p) else 1.0 / (2.0 * domain.p)
    if isinstance(domain, BlochType):
        return domain.alpha - 1.0 if domain.alpha > 1 else None
    if isinstance(domain, Morrey):
        return (1.0 - domain.lam) / 2.0 if domain.lam < 1 else None
    return None


def _in_domain(kind, domain):
    """Whether a fixed corpus function belongs to the domain space."""
    if isinstance(kind, PowerKernel):
        return True
    if isinstance(domain, Hardy):
        if isinstance(kind, LogKernel):
            return not isinf(domain.p)
        return isinstance(kind, GeometricOnes) and domain.p < 1
    if isinstance(domain, BlochType):
        return domain.alpha >= (2.0 if isinstance(kind, GeometricOnes) else 1.0)
    return isinstance(domain, Morrey) and isinstance(kind, LogKernel)


def _corpus(domain):
    corpus = [LogKernel(), Lacunary(), GeometricOnes()]
    c = _critical_power(domain)
    if c is not None and c > 0:
        corpus.append(PowerKernel(c))
    return [kind for kind in corpus if _in_domain(kind, domain)]


def _ratio(Cf, f, plan, settings):
    target = estimate_norm(Cf, plan.target, settings=settings).value
    return target / estimate_norm(f, plan.domain, settings=settings).value


def _family_ratios(op, plan, N, settings):
    """Ratios along f_a for the a resolved at truncation N."""
    a_values, ratios = [], []
    for _, d in half_powers(1, settings.depth):
        a = 1.0 - d
        f = make_series(ConformalKernel(a, plan.kernel_p), N)
        Cf = apply(op, f)
        if 1.0 - a < A_MARGIN * (1.0 - min(f.r_max, Cf.r_max)):
            break
        a_values.append(a)
        ratios.append(_ratio(Cf, f, plan, settings))
    return np.array(a_values), np.array(ratios)


def _corpus_ratios(op, plan, N, settings, rows=None):
    values = []
    for kind in _corpus(plan.domain):
        try:
            f = make_series(kind, N)
            value = _ratio(apply(op, f), f, plan, settings)
        except CesaroLabError as err:
            if rows is not None:
                rows.append(ReportRow('ratio:corpus', kind.tag, 'ratio', None, error_record(err)))
            continue
        values.append(value)
        if rows is not None:
            rows.append(ReportRow('ratio:corpus', kind.tag, 'ratio', value))
    return values


def _ladder(op, plan, settings, top):
    """Sup ratio over f_a and the corpus at truncations N/2^k, k = LADDER-1..0."""
    orders, sups = [], []
    for k in range(LADDER - 1, 0, -1):
        N = settings.truncation >> k
        if N < MIN_LADDER_ORDER:
            continue
        _, ratios = _family_ratios(op, plan, N, settings)
        values = list(ratios) + _corpus_ratios(op, plan, N, settings)
        if values:
            orders.append(N)
            sups.append(max(values))
    orders.append(settings.truncation)
    sups.append(top)
    return np.array(orders), np.array(sups)


def _combined(verdicts):
    if GROWING in verdicts:
        return GROWING
    if all(v == VANISHING for v in verdicts):
        return VANISHING
    return BOUNDED


def _sufficiency(cfg, plan, settings, expected, rows):
    if plan.target is None:
        report = blasco_statistic(moments(cfg.measure, _witness_order(cfg, settings), settings), settings)
        rows.append(ReportRow('ratio:blasco', 'sup', 'statistic', report.sup_value))
        verdict = BOUNDED if report.bounded else GROWING
        return _check('ratio:blasco', 'sufficiency', report.trend_slope, verdict, expected)
    N = settings.truncation
    op = OperatorInstance(cfg.measure, settings)
    a_values, ratios = _family_ratios(op, plan, N, settings)
    rows.extend(ReportRow('ratio:f_a', a, 'ratio', v) for a, v in zip(a_values, ratios))
    corpus = _corpus_ratios(op, plan, N, settings, rows)
    if len(ratios) < 4:
        raise ParameterError(f"Truncation {N} resolves only {len(ratios)} points of the f_a family.")
    orders, sups = _ladder(op, plan, settings, max(list(ratios) + corpus))
    rows.extend(ReportRow('ratio:sup', int(n), 'ratio', v) for n, v in zip(orders, sups))
    slope, verdict = verdict_from_trend(1.0 - a_values, ratios, settings)
    ladder_slope, ladder_verdict = verdict_from_trend(1.0 / orders, sups, settings)
    logger.info("%s sufficiency: f_a slope %.4g -> %s, truncation slope %.4g -> %s",
                cfg.label, slope, verdict, ladder_slope, ladder_verdict)
    return _check('ratio:f_a', 'sufficiency', max(slope, ladder_slope),
                  _combined((verdict, ladder_verdict)), expected)


def _settings_for(cfg, settings):
    return settings.replace(truncation=cfg.truncation, depth=cfg.depth)


def run_scenario(cfg, settings=DEFAULT):
    """Run the requested directions of one scenario.

    Module errors are captured in the check they interrupt; the report is
    always produced.

    Returns:
        ExperimentReport: tables, checks and metadata; deterministic in cfg and settings.
    """
    settings = _settings_for(cfg, settings)
    metadata = {'package': 'cesarolab', 'version': __version__, 'settings': asdict(settings)}
    rows, checks = [], []
    try:
        plan = plan_for(cfg.theorem, cfg.params)
    except CesaroLabError as err:
        checks.append(Check('plan', cfg.direction, None, 'error', None, 'error', error_record(err)))
        return ExperimentReport(cfg.to_spec(), tuple(rows), tuple(checks), metadata)
    metadata['required_exponent'] = plan.required
    metadata['log_power'] = plan.log_power
    logger.info("scenario %s: required exponent %.4g, log power %d", cfg.label, plan.required, plan.log_power)
    directions = ('necessity', 'sufficiency') if cfg.direction == 'both' else (cfg.direction,)
    for direction in directions:
        if direction == 'necessity' and plan.witness is None:
            checks.append(Check('witness', direction, None, 'not_applicable', None, 'indeterminate'))
            continue
        if cfg.expect == 'auto':
            expected = expectation(cfg.measure, plan, direction)
        else:
            expected = cfg.expect
        run = _necessity if direction == 'necessity' else _sufficiency
        try:
            checks.append(run(cfg, plan, settings, expected, rows))
        except CesaroLabError as err:
            logger.warning("scenario %s, %s: %s", cfg.label, direction, err)
            checks.append(Check(direction, direction, None, 'error', expected, 'error', error_record(err)))
    return ExperimentReport(cfg.to_spec(), tuple(rows), tuple(checks), metadata)


def run_suite(scenarios, settings=DEFAULT):
    """Reports of several scenarios in input order; scenarios run on a thread pool."""
    scenarios = list(scenarios)
    if settings.workers == 1 or len(scenarios) < 2:
        return [run_scenario(s, settings) for s in scenarios]
    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        return list(pool.map(lambda s: run_scenario(s, settings), scenarios))


def default_suite():
    """Theorem scenarios reproduced by `cesarolab verify` without a configuration."""
    suite = []
    for lam in (0.5, 1.0):
        required = (1 + lam) / 2
        suite.append(ScenarioConfig('T1_1', BetaLog(required), {'p': inf, 'lam': lam}, 'sufficiency',
                                    truncation=SUITE_TRUNCATION, name=f"T1_1 p=inf lam={lam} s={required}"))
        suite.append(ScenarioConfig('T1_1', BetaLog(required - 0.25), {'p': inf, 'lam': lam}, 'necessity',
                                    name=f"T1_1 p=inf lam={lam} s={required - 0.25}"))
    suite.append(ScenarioConfig('T1_1', BetaLog(1.0), {'p': 2.0, 'lam': 0.5}, 'necessity',
                                name="T1_1 p=2 lam=0.5 s=1.0"))
    suite.append(ScenarioConfig('T1_1', Lebesgue(), {'p': inf, 'lam': 1.0}, 'sufficiency',
                                truncation=SUITE_TRUNCATION, name="T1_1 p=inf lam=1 lebesgue"))
    for lam in (0.5, 1.0):
        s = (1 + lam) / 2
        theorem, params = ('T1_3', {'lam': lam}) if lam < 1 else ('T1_4', {})
        suite.append(ScenarioConfig(theorem, BetaLog(s, 0.0), params, 'necessity',
                                    name=f"{theorem} lam={lam} s={s} gamma=0"))
        suite.append(ScenarioConfig(theorem, BetaLog(s, 1.0), params, 'sufficiency',
                                    truncation=SUITE_TRUNCATION, name=f"{theorem} lam={lam} s={s} gamma=1"))
    for lam1, lam2 in ((0.5, 0.5), (0.25, 0.75)):
        required = 1 + (lam2 - lam1) / 2
        params = {'lam1': lam1, 'lam2': lam2}
        suite.append(ScenarioConfig('T1_5', BetaLog(required), params, 'necessity', expect='bounded',
                                    name=f"T1_5 lam1={lam1} lam2={lam2} s={required}"))
        suite.append(ScenarioConfig('T1_5', BetaLog(required - 0.25), params, 'necessity',
                                    name=f"T1_5 lam1={lam1} lam2={lam2} s={required - 0.25}"))
    suite.append(ScenarioConfig('R3_7', BetaLog(2.0), {}, 'sufficiency', name="R3_7 s=2"))
    suite.append(ScenarioConfig('R3_7', Lebesgue(), {}, 'necessity', name="R3_7 lebesgue"))
    suite.append(ScenarioConfig('C3_5', Lebesgue(), {'p': 4.0}, 'sufficiency',
                                truncation=SUITE_TRUNCATION, name="C3_5 p=4 lebesgue"))
    suite.append(ScenarioConfig('R3_4', Lebesgue(), {'alpha': 0.5}, 'sufficiency',
                                truncation=SUITE_TRUNCATION, name="R3_4 alpha=0.5 lebesgue"))
    return suite
