"""Experiment reports and their CSV / JSON documents."""

import io
import json
import logging
from dataclasses import asdict, dataclass, field
from math import isinf, isnan

import pandas as pd

from .array_ops import round_sig

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
CSV_COLUMNS = ['kind', 'table', 'parameter', 'statistic', 'value', 'verdict', 'expected',
               'outcome', 'error_type', 'error_message']


def _clean(x):
    """Round floats to 15 significant digits; NaN becomes None, infinities 'inf' and '-inf'."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    x = float(x)
    if isnan(x):
        return None
    if isinf(x):
        return 'inf' if x > 0 else '-inf'
    return round_sig(x)


def _json_safe(doc):
    if isinstance(doc, dict):
        return {k: _json_safe(v) for k, v in doc.items()}
    if isinstance(doc, (list, tuple)):
        return [_json_safe(v) for v in doc]
    if isinstance(doc, float):
        return _clean(doc)
    return doc


def error_record(err):
    return {'type': type(err).__name__, 'message': str(err)}


@dataclass(frozen=True)
class ReportRow:
    """One (parameter, statistic) value of a table."""
    table: str
    parameter: object
    statistic: str
    value: object
    error: dict = None

    def __post_init__(self):
        object.__setattr__(self, 'parameter', _clean(self.parameter))
        object.__setattr__(self, 'value', _clean(self.value))


@dataclass(frozen=True)
class Check:
    """A trend verdict confronted with its expectation.

    outcome is 'pass', 'fail', 'indeterminate' (no expectation) or 'error'.
    """
    name: str
    direction: str
    trend_slope: object
    verdict: str
    expected: str = None
    outcome: str = 'indeterminate'
    error: dict = None

    def __post_init__(self):
        object.__setattr__(self, 'trend_slope', _clean(self.trend_slope))


@dataclass(frozen=True)
class ExperimentReport:
    scenario: dict
    rows: tuple = ()
    checks: tuple = ()
    metadata: dict = field(default_factory=dict)

    @property
    def failures(self):
        return [c for c in self.checks if c.outcome == 'fail']

    @property
    def errors(self):
        return [c for c in self.checks if c.outcome == 'error'] + [r for r in self.rows if r.error]

    @property
    def exit_code(self):
        if self.errors:
            return 2
        return 1 if self.failures else 0

    def to_dict(self):
        return {'schema_version': SCHEMA_VERSION,
                'scenario': self.scenario,
                'metadata': self.metadata,
                'rows': [asdict(r) for r in self.rows],
                'checks': [asdict(c) for c in self.checks]}

    @classmethod
    def from_dict(cls, doc):
        if doc.get('schema_version') != SCHEMA_VERSION:
            raise ValueError(f"Unsupported report schema {doc.get('schema_version')!r}.")
        return cls(doc['scenario'],
                   tuple(ReportRow(**r) for r in doc['rows']),
                   tuple(Check(**c) for c in doc['checks']),
                   doc['metadata'])

    def to_frame(self):
        records = []
        for r in self.rows:
            records.append({'kind': 'row', 'table': r.table, 'parameter': r.parameter,
                            'statistic': r.statistic, 'value': r.value,
                            'error_type': (r.error or {}).get('type'),
                            'error_message': (r.error or {}).get('message')})
        for c in self.checks:
            records.append({'kind': 'check', 'table': c.name, 'parameter': c.direction,
                            'statistic': 'trend_slope', 'value': c.trend_slope, 'verdict': c.verdict,
                            'expected': c.expected, 'outcome': c.outcome,
                            'error_type': (c.error or {}).get('type'),
                            'error_message': (c.error or {}).get('message')})
        return pd.DataFrame.from_records(records, columns=CSV_COLUMNS)


def _documents(reports):
    return [reports] if isinstance(reports, ExperimentReport) else list(reports)


def emit_report(reports, format='json', out=None):
    """Serialize one report or a sequence of reports.

    JSON gives a list of report objects; CSV gives one table whose first
    columns name the scenario. The document is written to out when given.

    Returns:
        str: the document.
    """
    reports = _documents(reports)
    if format == 'json':
        text = json.dumps(_json_safe([r.to_dict() for r in reports]), indent=2, allow_nan=False) + '\n'
    elif format == 'csv':
        frames = []
        for r in reports:
            frame = r.to_frame()
            frame.insert(0, 'scenario', r.scenario.get('name', ''))
            frames.append(frame)
        table = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=['scenario'] + CSV_COLUMNS)
        buffer = io.StringIO()
        buffer.write(f"# cesarolab report schema {SCHEMA_VERSION}\n")
        table.to_csv(buffer, index=False, float_format='%.15g')
        text = buffer.getvalue()
    else:
        raise ValueError(f"Unknown report format {format!r}.")
    if out is not None:
        with open(out, 'w') as f:
            f.write(text)
        logger.info("report written to %s", out)
    return text


def parse_report(text):
    """Reports back from a JSON document produced by emit_report."""
    return [ExperimentReport.from_dict(d) for d in json.loads(text)]
