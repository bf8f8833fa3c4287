"""JSON configuration documents: measures, test functions, spaces and scenarios."""

import json
import logging
from dataclasses import dataclass, field, fields
from math import inf

from .errors import ConfigError, ParameterError
from .measure import Atoms, BetaLog, Lebesgue, MeasureSum, RadialMeasure
from .series import KINDS
from .settings import DEFAULT, Settings
from .spaces import SPACES

logger = logging.getLogger(__name__)

DIRECTIONS = ('necessity', 'sufficiency', 'both')
EXPECTATIONS = ('auto', 'bounded', 'growing')
SCENARIO_PARAMS = ('p', 'q', 'lam', 'lam1', 'lam2', 'alpha', 'log_variant')


def number(value, where):
    """A float from JSON, accepting the strings 'inf' and '-inf'."""
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a number, got {value!r}.")
    if isinstance(value, str) and value.strip().lower() in ('inf', '+inf', 'infinity', '-inf'):
        return -inf if value.strip().startswith('-') else inf
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected a number, got {value!r}.") from None


def _check_keys(spec, allowed, where):
    if not isinstance(spec, dict):
        raise ConfigError(f"{where}: expected an object, got {type(spec).__name__}.")
    unknown = sorted(set(spec) - set(allowed))
    if unknown:
        raise ConfigError(f"{where}: unknown field(s) {unknown}.")


def _build(cls, kwargs, where):
    try:
        return cls(**kwargs)
    except ParameterError as err:
        raise ConfigError(f"{where}: {err}") from err


def measure_from_spec(spec, where='measure'):
    """A RadialMeasure from its JSON description; the inverse of measure.to_spec()."""
    if isinstance(spec, RadialMeasure):
        return spec
    _check_keys(spec, ('family', 'atoms', 's', 'gamma', 'normalizer', 'parts'), where)
    family = spec.get('family')
    if family == 'lebesgue':
        _check_keys(spec, ('family',), where)
        return Lebesgue()
    if family == 'atoms':
        _check_keys(spec, ('family', 'atoms'), where)
        try:
            atoms = tuple((number(t, where), number(m, where)) for t, m in spec['atoms'])
        except (KeyError, TypeError, ValueError):
            raise ConfigError(f"{where}: 'atoms' must be a list of [location, weight] pairs.") from None
        return _build(Atoms, {'atoms': atoms}, where)
    if family == 'beta_log':
        _check_keys(spec, ('family', 's', 'gamma', 'normalizer'), where)
        if 's' not in spec:
            raise ConfigError(f"{where}: beta_log needs 's'.")
        kwargs = {k: number(spec[k], f"{where}.{k}") for k in ('s', 'gamma', 'normalizer') if k in spec}
        return _build(BetaLog, kwargs, where)
    if family == 'sum':
        _check_keys(spec, ('family', 'parts'), where)
        parts = spec.get('parts') or []
        return _build(MeasureSum, {'parts': tuple(measure_from_spec(p, f"{where}.parts[{i}]")
                                                  for i, p in enumerate(parts))}, where)
    raise ConfigError(f"{where}: unknown measure family {family!r}.")


def function_from_spec(spec, where='function'):
    """A test-function kind from {"kind": tag, ...parameters}."""
    if not isinstance(spec, dict) or spec.get('kind') not in KINDS:
        raise ConfigError(f"{where}: unknown test function {spec!r}; known kinds {sorted(KINDS)}.")
    cls = KINDS[spec['kind']]
    names = [f.name for f in fields(cls)]
    _check_keys(spec, ['kind'] + names, where)
    kwargs = {}
    for name in names:
        if name not in spec:
            continue
        value = spec[name]
        if name == 'v' and isinstance(value, list):
            kwargs[name] = complex(number(value[0], where), number(value[1], where))
        elif name == 'n':
            kwargs[name] = int(number(value, f"{where}.n"))
        else:
            kwargs[name] = number(value, f"{where}.{name}")
    return _build(cls, kwargs, where)


def space_from_spec(spec, where='space'):
    """A space specification from {"space": tag, ...parameters}."""
    if not isinstance(spec, dict) or spec.get('space') not in SPACES:
        raise ConfigError(f"{where}: unknown space {spec!r}; known spaces {sorted(SPACES)}.")
    cls = SPACES[spec['space']]
    names = [f.name for f in fields(cls)]
    _check_keys(spec, ['space'] + names, where)
    return _build(cls, {n: number(spec[n], f"{where}.{n}") for n in names if n in spec}, where)


@dataclass(frozen=True)
class ScenarioConfig:
    """One theorem experiment: a measure, the theorem's parameters and the directions to test.

    Args:
        theorem (str): theorem or corollary tag, e.g. 'T1_1' or 'C3_5'.
        measure (RadialMeasure): the measure mu.
        params (dict): space parameters among SCENARIO_PARAMS.
        direction (str): 'necessity', 'sufficiency' or 'both'.
        truncation (int): Taylor truncation for the sufficiency corpus.
        depth (int): number of points of the witness grids.
        witness_truncation (int): truncation for coefficient-side witnesses.
        expect (str): 'auto' derives the expectation from the measure's exponent.
        name (str): label echoed in the report.
    """
    theorem: str
    measure: RadialMeasure
    params: dict = field(default_factory=dict)
    direction: str = 'both'
    truncation: int = None
    depth: int = None
    witness_truncation: int = None
    expect: str = 'auto'
    name: str = ''

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ConfigError(f"direction must be one of {DIRECTIONS}, got {self.direction!r}.")
        if self.expect not in EXPECTATIONS:
            raise ConfigError(f"expect must be one of {EXPECTATIONS}, got {self.expect!r}.")
        unknown = sorted(set(self.params) - set(SCENARIO_PARAMS))
        if unknown:
            raise ConfigError(f"scenario {self.label}: unknown parameter(s) {unknown}.")

    @property
    def label(self):
        return self.name or self.theorem

    def to_spec(self):
        params = {k: ('inf' if v == inf else v) for k, v in sorted(self.params.items())}
        spec = {'name': self.label, 'theorem': self.theorem, 'direction': self.direction,
                'params': params, 'measure': self.measure.to_spec(), 'expect': self.expect}
        for key in ('truncation', 'depth', 'witness_truncation'):
            if getattr(self, key) is not None:
                spec[key] = getattr(self, key)
        return spec


def scenario_from_spec(spec, where='scenario'):
    _check_keys(spec, ('name', 'theorem', 'direction', 'params', 'measure', 'truncation',
                       'depth', 'witness_truncation', 'expect'), where)
    for key in ('theorem', 'measure'):
        if key not in spec:
            raise ConfigError(f"{where}: missing field {key!r}.")
    params = spec.get('params', {})
    _check_keys(params, SCENARIO_PARAMS, f"{where}.params")
    params = {k: (bool(v) if k == 'log_variant' else number(v, f"{where}.params.{k}"))
              for k, v in params.items()}
    ints = {k: int(number(spec[k], f"{where}.{k}"))
            for k in ('truncation', 'depth', 'witness_truncation') if k in spec}
    return ScenarioConfig(theorem=str(spec['theorem']),
                          measure=measure_from_spec(spec['measure'], f"{where}.measure"),
                          params=params,
                          direction=spec.get('direction', 'both'),
                          expect=spec.get('expect', 'auto'),
                          name=spec.get('name', ''),
                          **ints)


@dataclass(frozen=True)
class LabConfig:
    settings: Settings = DEFAULT
    scenarios: tuple = ()


def parse_config(doc):
    """LabConfig from an already decoded JSON document."""
    _check_keys(doc, ('settings', 'scenarios'), 'config')
    overrides = doc.get('settings', {})
    _check_keys(overrides, [f.name for f in fields(Settings)], 'config.settings')
    settings = DEFAULT.replace(**overrides)
    scenarios = tuple(scenario_from_spec(s, f"scenarios[{i}]")
                      for i, s in enumerate(doc.get('scenarios', [])))
    logger.info("configuration with %d scenarios", len(scenarios))
    return LabConfig(settings, scenarios)


def load_config(path):
    """Read and validate a JSON configuration file."""
    try:
        with open(path) as f:
            doc = json.load(f)
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path}: invalid JSON ({err}).") from err
    return parse_config(doc)
