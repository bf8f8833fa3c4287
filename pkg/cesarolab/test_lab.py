from math import inf

import pytest

from cesarolab.carleson import GROWING
from cesarolab.config import ScenarioConfig
from cesarolab.errors import ParameterError
from cesarolab.lab import THEOREMS, default_suite, expectation, plan_for, run_scenario, run_suite
from cesarolab.measure import Atoms, BetaLog, Lebesgue
from cesarolab.report import emit_report
from cesarolab.settings import DEFAULT
from cesarolab.spaces import BlochType, Hardy, Lambda11, MeanLip, Morrey

SMALL = DEFAULT.replace(truncation=1024, threads=1)


@pytest.mark.parametrize('theorem, params, required, log_power', [
    ('T1_1', {'p': inf, 'lam': 0.5}, 0.75, 0),
    ('T1_1', {'p': 2.0, 'lam': 0.5}, 1.25, 0),
    ('T1_2', {'p': 2.0, 'q': 2.0}, 1.5, 0),
    ('T1_2', {'p': 2.0, 'log_variant': True}, 1.5, 1),
    ('T1_3', {'lam': 0.5}, 0.75, 1),
    ('T1_4', {}, 1.0, 1),
    ('T1_5', {'lam1': 0.25, 'lam2': 0.75}, 1.25, 0),
    ('C3_3', {'lam': 1.0}, 1.0, 0),
    ('C3_5', {'p': 4.0}, 1.0, 0),
    ('C3_6', {'p': 2.0, 'q': 3.0}, 1.5, 0),
    ('C3_8', {'lam': 0.5, 'q': 2.0}, 1.25, 0),
    ('C3_9', {'lam': 0.5}, 0.75, 1),
    ('C3_10', {'lam': 0.5}, 1.0, 0),
    ('R3_4', {'alpha': 0.5}, 0.5, 0),
    ('R3_7', {}, 2.0, 0),
])
def test_required_exponents(theorem, params, required, log_power):
    plan = plan_for(theorem, params)
    assert plan.required == pytest.approx(required)
    assert plan.log_power == log_power


def test_every_theorem_is_tested():
    assert set(THEOREMS) == {'T1_1', 'T1_2', 'T1_3', 'T1_4', 'T1_5', 'C3_3', 'C3_5', 'C3_6', 'C3_8',
                             'C3_9', 'C3_10', 'R3_4', 'R3_7'}


def test_plan_spaces():
    plan = plan_for('T1_1', {'p': 2.0, 'lam': 0.5})
    assert (plan.target, plan.domain) == (Morrey(0.5), Hardy(2.0))
    plan = plan_for('T1_2', {'p': 2.0, 'q': 2.0})
    assert (plan.target, plan.domain) == (MeanLip(2.0, 0.5), BlochType(1.5))
    plan = plan_for('T1_2', {'p': 2.0, 'log_variant': True})
    assert plan.witness is None
    assert plan.target == Lambda11()
    assert plan_for('C3_8', {'lam': 0.5, 'q': 2.0}).domain == Morrey(0.5)


@pytest.mark.parametrize('theorem, params', [
    ('T9_9', {}),
    ('T1_1', {'p': inf}),
    ('T1_1', {'p': inf, 'lam': 1.5}),
    ('T1_1', {'p': inf, 'lam': 0.5, 'q': 2.0}),
    ('C3_5', {'p': 2.0}),
    ('R3_4', {'alpha': 0.75}),
    ('T1_2', {'p': inf, 'q': 2.0}),
    ('T1_2', {'p': inf, 'log_variant': True}),
    ('C3_6', {'p': inf, 'q': 2.0}),
])
def test_bad_plans(theorem, params):
    with pytest.raises(ParameterError):
        plan_for(theorem, params)


def test_expectations():
    plan = plan_for('T1_3', {'lam': 0.5})
    assert expectation(BetaLog(0.75, 1.0), plan, 'sufficiency') == 'bounded'
    assert expectation(BetaLog(0.75, 0.0), plan, 'sufficiency') is None
    assert expectation(BetaLog(0.5), plan, 'sufficiency') == 'growing'
    assert expectation(BetaLog(0.7), plan, 'sufficiency') is None
    assert expectation(BetaLog(0.75, 0.0), plan, 'necessity') == 'growing'
    assert expectation(BetaLog(0.7), plan, 'necessity') is None
    assert expectation(BetaLog(0.5), plan, 'necessity') == 'growing'
    assert expectation(Atoms(((0.5, 1.0),)), plan, 'sufficiency') == 'bounded'


def test_blasco_scenarios():
    bounded = run_scenario(ScenarioConfig('R3_7', BetaLog(2.0), direction='sufficiency'), SMALL)
    growing = run_scenario(ScenarioConfig('R3_7', Lebesgue(), direction='necessity'), SMALL)
    for report in (bounded, growing):
        check, = report.checks
        assert check.outcome == 'pass'
        assert report.exit_code == 0
        assert report.metadata['required_exponent'] == 2.0
    assert bounded.checks[0].expected == 'bounded'
    assert growing.checks[0].expected == 'growing'


@pytest.mark.parametrize('s, verdict', [(1.0, 'bounded'), (0.75, 'growing')])
def test_moment_witness(s, verdict):
    cfg = ScenarioConfig('T1_5', BetaLog(s), {'lam1': 0.5, 'lam2': 0.5}, 'necessity',
                         witness_truncation=4096, expect=verdict)
    report = run_scenario(cfg, SMALL)
    check, = report.checks
    assert check.outcome == 'pass'
    assert check.name == 'witness:moment'
    assert any(r.table == 'witness:moment' for r in report.rows)


def test_witness_not_applicable():
    report = run_scenario(ScenarioConfig('R3_4', Lebesgue(), {'alpha': 0.5}, 'necessity'), SMALL)
    assert report.checks[0].verdict == 'not_applicable'
    assert report.exit_code == 0


def test_errors_are_captured():
    report = run_scenario(ScenarioConfig('T1_1', Lebesgue(), {'p': inf}), SMALL)
    assert report.exit_code == 2
    assert report.checks[0].error['type'] == 'ParameterError'


def test_short_truncation_is_an_error():
    cfg = ScenarioConfig('T1_1', Lebesgue(), {'p': inf, 'lam': 1.0}, 'sufficiency', truncation=8)
    report = run_scenario(cfg, SMALL)
    assert report.checks[0].outcome == 'error'
    assert report.exit_code == 2


def test_suite_is_deterministic():
    suite = [ScenarioConfig('R3_7', BetaLog(2.0), direction='sufficiency', name='a'),
             ScenarioConfig('R3_7', Lebesgue(), direction='necessity', name='b'),
             ScenarioConfig('T1_5', BetaLog(1.0), {'lam1': 0.5, 'lam2': 0.5}, 'necessity', name='c')]
    threaded = SMALL.replace(threads=3)
    first = run_suite(suite, threaded)
    assert [r.scenario['name'] for r in first] == ['a', 'b', 'c']
    assert emit_report(first) == emit_report(run_suite(suite, threaded))
    single = run_suite(suite, SMALL)
    assert [(r.rows, r.checks) for r in single] == [(r.rows, r.checks) for r in first]


def test_default_suite():
    suite = default_suite()
    assert len({cfg.label for cfg in suite}) == len(suite)
    for cfg in suite:
        plan_for(cfg.theorem, cfg.params)


@pytest.mark.parametrize('theorem, params, meets, misses', [
    ('T1_1', {'p': inf, 'lam': 1.0}, BetaLog(1.5), BetaLog(0.5)),
    ('T1_3', {'lam': 0.5}, BetaLog(1.0), BetaLog(0.5)),
    ('R3_4', {'alpha': 0.5}, Lebesgue(), BetaLog(0.25)),
])
def test_sufficiency_separates_measures(theorem, params, meets, misses):
    checks = []
    for measure in (meets, misses):
        cfg = ScenarioConfig(theorem, measure, params, 'sufficiency', truncation=4096)
        report = run_scenario(cfg, SMALL)
        check, = report.checks
        assert check.outcome == 'pass', check
        assert {r.table for r in report.rows} >= {'ratio:f_a', 'ratio:sup'}
        checks.append(check)
    bounded, growing = checks
    assert bounded.expected == 'bounded'
    assert bounded.verdict != GROWING
    assert growing.expected == 'growing'
    assert growing.verdict == GROWING


def test_sufficiency_ladder_rows():
    cfg = ScenarioConfig('T1_1', BetaLog(0.5), {'p': inf, 'lam': 1.0}, 'sufficiency', truncation=4096)
    rows = [r for r in run_scenario(cfg, SMALL).rows if r.table == 'ratio:sup']
    orders = [r.parameter for r in rows]
    assert orders[-3:] == [1024, 2048, 4096]
    assert orders[0] >= 256
    assert rows[-1].value > rows[-3].value


def _necessity(theorem, params, measure, **kw):
    check, = run_scenario(ScenarioConfig(theorem, measure, params, 'necessity', **kw), SMALL).checks
    assert check.outcome != 'error', check
    return check


def test_derivative_witness_separates_measures():
    params = {'p': inf, 'lam': 0.5}
    growing = _necessity('T1_1', params, BetaLog(0.5), depth=24)
    assert growing.name == 'witness:derivative'
    assert growing.verdict == GROWING
    assert growing.outcome == 'pass'
    assert _necessity('T1_1', params, BetaLog(1.0), depth=24).verdict != GROWING


def test_derivative_witness_is_monotone_in_s():
    slopes = [_necessity('T1_1', {'p': inf, 'lam': 0.5}, BetaLog(s), depth=24).trend_slope
              for s in (0.5, 0.75, 1.0)]
    assert slopes[0] > slopes[1] > slopes[2]
    assert slopes[0] == pytest.approx(0.25, abs=0.08)
    assert slopes[2] == pytest.approx(-0.25, abs=0.08)


@pytest.mark.parametrize('theorem, params, s', [('T1_3', {'lam': 0.5}, 0.75), ('T1_4', {}, 1.0)])
def test_log_profile_witness_needs_the_log_factor(theorem, params, s):
    missing = _necessity(theorem, params, BetaLog(s, 0.0), witness_truncation=4096)
    assert missing.name == 'witness:log_profile'
    assert missing.expected == 'growing'
    assert missing.verdict == GROWING
    assert missing.outcome == 'pass'
    present = _necessity(theorem, params, BetaLog(s, 1.0), witness_truncation=4096)
    assert present.verdict != GROWING
    assert present.trend_slope < missing.trend_slope
