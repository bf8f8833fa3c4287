"""Command line entry point: `cesarolab`."""

import json
import logging
import sys
from dataclasses import asdict
from functools import wraps

import click
import numpy as np

from . import __version__
from .carleson import classify, tail_statistic
from .cesaro import apply
from .config import LabConfig, function_from_spec, load_config, measure_from_spec, space_from_spec
from .errors import CesaroLabError, ConfigError
from .estimates import circle_integral, disk_integral, prop31_suprema
from .lab import default_suite, run_suite
from .measure import moments
from .report import Check, ExperimentReport, ReportRow, emit_report
from .series import make_series
from .spaces import estimate_norm

logger = logging.getLogger(__name__)


def _json_option(text, what, parser):
    try:
        return parser(json.loads(text), what)
    except json.JSONDecodeError as err:
        raise ConfigError(f"--{what}: invalid JSON ({err}).") from err


def _complex(text):
    try:
        return complex(text.replace(' ', ''))
    except ValueError:
        raise click.BadParameter(f"not a complex number: {text!r}") from None


def _emit(ctx, reports):
    text = emit_report(reports, ctx.obj['format'], ctx.obj['out'])
    if ctx.obj['out'] is None:
        click.echo(text, nl=False)


def _report(ctx, command, options, rows=(), checks=()):
    metadata = {'package': 'cesarolab', 'version': __version__, 'settings': asdict(ctx.obj['settings'])}
    return ExperimentReport({'name': command, 'command': command, 'options': options},
                            tuple(rows), tuple(checks), metadata)


def handled(command):
    """Lab errors end the command with exit code 2 and a message on stderr."""
    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except CesaroLabError as err:
            click.echo(f"error: {type(err).__name__}: {err}", err=True)
            sys.exit(2)
    return wrapper


@click.group()
@click.version_option(__version__)
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON configuration (settings and scenarios).")
@click.option('--out', type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the report here instead of stdout.")
@click.option('--format', 'fmt', type=click.Choice(['json', 'csv']), default='json', show_default=True)
@click.option('--truncation', type=int, default=None, help="Taylor truncation N.")
@click.option('--depth', type=int, default=None, help="Number of half-power grid points.")
@click.option('--threads', type=int, default=None, help="Worker threads, 0 for all cores.")
@click.option('-v', '--verbose', count=True, help="-v for INFO, -vv for DEBUG.")
@click.pass_context
def main(ctx, config_path, out, fmt, truncation, depth, threads, verbose):
    """Numerical lab for Cesaro-like operators C_mu on spaces of analytic functions."""
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(verbose, 2)]
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(asctime)s %(name)s %(levelname)s: %(message)s', force=True)
    try:
        lab_config = load_config(config_path) if config_path else LabConfig()
        settings = lab_config.settings.replace(truncation=truncation, depth=depth, threads=threads)
    except CesaroLabError as err:
        raise click.UsageError(str(err)) from err
    ctx.obj = {'config': lab_config, 'settings': settings, 'out': out, 'format': fmt}


@main.command('moments')
@click.option('--measure', 'measure_json', required=True, help='Measure as JSON, e.g. {"family": "lebesgue"}.')
@click.option('--count', type=int, default=None, help="Largest moment order M (defaults to the truncation).")
@click.pass_context
@handled
def moments_command(ctx, measure_json, count):
    """Moments mu_0..mu_M with method tags and error estimates."""
    settings = ctx.obj['settings']
    m = _json_option(measure_json, 'measure', measure_from_spec)
    seq = moments(m, settings.truncation if count is None else count, settings)
    rows = []
    for n, (v, method, err) in enumerate(zip(seq.values, seq.method, seq.err)):
        rows += [ReportRow('moments', n, 'value', v), ReportRow('moments', n, 'err', err),
                 ReportRow('moments', n, 'method', str(method))]
    _emit(ctx, _report(ctx, 'moments', {'measure': m.to_spec(), 'count': seq.truncation}, rows))


@main.command('tail')
@click.option('--measure', 'measure_json', required=True)
@click.option('--t', 't', type=float, required=True, help="Carleson exponent.")
@click.option('--beta', type=float, default=0.0, show_default=True, help="Logarithmic exponent.")
@click.pass_context
@handled
def tail_command(ctx, measure_json, t, beta):
    """Tail statistic mu([a,1)) log^beta(e/(1-a)) / (1-a)^t on the half-power grid."""
    m = _json_option(measure_json, 'measure', measure_from_spec)
    rep = tail_statistic(m, t, beta, settings=ctx.obj['settings'])
    rows = [ReportRow('tail', a, 'statistic', v) for a, v in zip(rep.grid, rep.statistic)]
    checks = [Check('tail', 'classification', rep.trend_slope, rep.verdict)]
    _emit(ctx, _report(ctx, 'tail', {'measure': m.to_spec(), 't': t, 'beta': beta}, rows, checks))


@main.command('classify')
@click.option('--measure', 'measure_json', required=True)
@click.option('--t', 't', type=float, default=None, help="Carleson exponent, the measure's own by default.")
@click.option('--beta', type=float, default=0.0, show_default=True)
@click.pass_context
@handled
def classify_command(ctx, measure_json, t, beta):
    """Tail verdict, moment decay fits and the Blasco statistic of a measure."""
    m = _json_option(measure_json, 'measure', measure_from_spec)
    out = classify(m, t, beta, settings=ctx.obj['settings'])
    tail, fit, log_fit, blasco = out['tail'], out['moment_fit'], out['log_fit'], out['blasco']
    rows = [ReportRow('tail', a, 'statistic', v) for a, v in zip(tail.grid, tail.statistic)]
    rows += [ReportRow('moment_fit', 'M', 's_hat', fit.s_hat),
             ReportRow('moment_fit', 'M', 'residual', fit.residual),
             ReportRow('moment_fit', 'M', 'superpolynomial', str(fit.superpolynomial)),
             ReportRow('log_fit', tail.target_exponent, 'c_hat', log_fit.c_hat),
             ReportRow('log_fit', tail.target_exponent, 'trend', log_fit.trend)]
    checks = [Check('tail', 'classification', tail.trend_slope, tail.verdict)]
    if blasco is not None:
        rows.append(ReportRow('blasco', blasco.argmax_n, 'sup', blasco.sup_value))
        checks.append(Check('blasco', 'classification', blasco.trend_slope,
                            'consistent_bounded' if blasco.bounded else 'growing'))
    options = {'measure': m.to_spec(), 't': tail.target_exponent, 'beta': beta}
    _emit(ctx, _report(ctx, 'classify', options, rows, checks))


@main.command('apply')
@click.option('--measure', 'measure_json', required=True)
@click.option('--function', 'function_json', required=True, help='Test function, e.g. {"kind": "log_kernel"}.')
@click.pass_context
@handled
def apply_command(ctx, measure_json, function_json):
    """Taylor coefficients of C_mu(f)."""
    settings = ctx.obj['settings']
    m = _json_option(measure_json, 'measure', measure_from_spec)
    kind = _json_option(function_json, 'function', function_from_spec)
    Cf = apply(m, make_series(kind, settings.truncation), settings)
    rows = [ReportRow('coefficients', n, 'real', c.real) for n, c in enumerate(Cf.coeffs)]
    if np.any(Cf.coeffs.imag != 0):
        rows += [ReportRow('coefficients', n, 'imag', c.imag) for n, c in enumerate(Cf.coeffs)]
    rows.append(ReportRow('admissible_radius', 'r_max', 'value', Cf.r_max))
    options = {'measure': m.to_spec(), 'function': kind.to_spec(), 'truncation': settings.truncation}
    _emit(ctx, _report(ctx, 'apply', options, rows))


@main.command('norm')
@click.option('--function', 'function_json', required=True)
@click.option('--space', 'space_json', required=True, help='Space, e.g. {"space": "morrey", "lam": 0.5}.')
@click.pass_context
@handled
def norm_command(ctx, function_json, space_json):
    """Norm estimate of a test function with its radial profile."""
    settings = ctx.obj['settings']
    kind = _json_option(function_json, 'function', function_from_spec)
    space = _json_option(space_json, 'space', space_from_spec)
    est = estimate_norm(make_series(kind, settings.truncation), space, settings=settings)
    rows = [ReportRow('profile', r, 'statistic', v) for r, v in est.profile]
    rows.append(ReportRow('norm', 'sup', 'value', est.value))
    rows.append(ReportRow('norm', 'sup', 'converged', str(est.converged)))
    checks = [Check('norm', 'classification', est.trend_slope, est.verdict)]
    options = {'function': kind.to_spec(), 'space': space.to_spec(), 'grid': est.grid_spec}
    _emit(ctx, _report(ctx, 'norm', options, rows, checks))


@main.group('estimate')
def estimate():
    """Integral estimates: circle, disk and the Carleson suprema."""


def _comparison_rows(table, cmp):
    return [ReportRow(table, cmp.regime, 'computed', cmp.computed),
            ReportRow(table, cmp.regime, 'asymptotic_form', cmp.asymptotic_form),
            ReportRow(table, cmp.regime, 'ratio', cmp.ratio)]


@estimate.command('circle')
@click.option('--z', 'z', required=True, help="Point of the disk, e.g. 0.5 or 0.3+0.4j.")
@click.option('--alpha', type=float, required=True)
@click.pass_context
@handled
def circle_command(ctx, z, alpha):
    cmp = circle_integral(_complex(z), alpha)
    _emit(ctx, _report(ctx, 'estimate circle', {'z': z, 'alpha': alpha}, _comparison_rows('circle', cmp)))


@estimate.command('disk')
@click.option('--w', 'w', default='0')
@click.option('--a', 'a', default='0')
@click.option('--t', 't', type=float, required=True)
@click.option('--r', 'r', type=float, default=0.0, show_default=True)
@click.option('--delta', type=float, default=0.0, show_default=True)
@click.option('--k', 'k', type=float, default=0.0, show_default=True)
@click.pass_context
@handled
def disk_command(ctx, w, a, t, r, delta, k):
    cmp = disk_integral(_complex(w), _complex(a), t, r, delta, k, ctx.obj['settings'])
    rows = _comparison_rows('disk', cmp)
    if cmp.assumption:
        rows.append(ReportRow('disk', cmp.regime, 'assumption', cmp.assumption))
    options = {'w': w, 'a': a, 't': t, 'r': r, 'delta': delta, 'k': k}
    _emit(ctx, _report(ctx, 'estimate disk', options, rows))


@estimate.command('prop31')
@click.option('--measure', 'measure_json', required=True)
@click.option('--beta', type=float, required=True)
@click.option('--gamma', type=float, default=0.0, show_default=True)
@click.option('--q', 'q', type=float, default=0.0, show_default=True)
@click.option('--s', 's', type=float, required=True)
@click.option('--w-depth', 'w_depth', type=int, default=30, show_default=True)
@click.pass_context
@handled
def prop31_command(ctx, measure_json, beta, gamma, q, s, w_depth):
    """Suprema S1, S2, S3 of the Carleson characterization."""
    m = _json_option(measure_json, 'measure', measure_from_spec)
    reports = prop31_suprema(m, beta, gamma, q, s, w_depth, ctx.obj['settings'])
    rows, checks = [], []
    for name, rep in reports.items():
        rows += [ReportRow(name, w, 'value', v) for w, v in zip(rep.grid, rep.values)]
        checks.append(Check(name, 'classification', rep.trend_slope, rep.verdict))
    options = {'measure': m.to_spec(), 'beta': beta, 'gamma': gamma, 'q': q, 's': s, 'w_depth': w_depth}
    _emit(ctx, _report(ctx, 'estimate prop31', options, rows, checks))


@main.command('verify')
@click.pass_context
def verify(ctx):
    """Run the configured scenarios (the default suite without --config).

    Exit code 0 when every expectation is met, 1 on failed expectations,
    2 on execution errors.
    """
    scenarios = ctx.obj['config'].scenarios or tuple(default_suite())
    reports = run_suite(scenarios, ctx.obj['settings'])
    _emit(ctx, reports)
    code = max((r.exit_code for r in reports), default=0)
    for r in reports:
        for c in r.checks:
            logger.info("%s / %s: %s (expected %s)", r.scenario.get('name'), c.name, c.outcome, c.expected)
    sys.exit(code)


if __name__ == '__main__':
    main()
