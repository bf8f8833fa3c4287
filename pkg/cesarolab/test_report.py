import io
import json

import numpy as np
import pandas as pd
import pytest

from cesarolab.errors import QuadratureError
from cesarolab.report import (CSV_COLUMNS, SCHEMA_VERSION, Check, ExperimentReport, ReportRow, emit_report,
                              error_record, parse_report)


def _report(outcome='pass', error=None):
    rows = (ReportRow('witness', 0.5, 'statistic', 1 / 3),
            ReportRow('witness', 0.75, 'statistic', np.float64(np.nan)),
            ReportRow('corpus', 'lacunary', 'ratio', None, error))
    checks = (Check('witness', 'necessity', 0.012345678901234567, 'consistent_bounded', 'bounded', outcome),)
    return ExperimentReport({'name': 'demo', 'theorem': 'T1_1'}, rows, checks, {'version': '0.1.0'})


def test_rows_are_rounded():
    row = ReportRow('t', np.float64(0.1) + np.float64(0.2), 'x', np.float64(np.nan))
    assert row.parameter == 0.3
    assert row.value is None


def test_json_round_trip():
    report = _report()
    text = emit_report(report)
    assert json.loads(text)[0]['schema_version'] == SCHEMA_VERSION
    back, = parse_report(text)
    assert back.to_dict() == report.to_dict()
    assert emit_report(back) == text


def test_exit_codes():
    assert _report().exit_code == 0
    assert _report('indeterminate').exit_code == 0
    assert _report('fail').exit_code == 1
    err = error_record(QuadratureError("no decay", partial=1.0, panels=61))
    assert err['type'] == 'QuadratureError'
    assert _report('fail', err).exit_code == 2


def test_csv_document(tmp_path):
    out = tmp_path / 'report.csv'
    text = emit_report([_report(), _report('fail')], format='csv', out=str(out))
    assert out.read_text() == text
    assert text.startswith(f"# cesarolab report schema {SCHEMA_VERSION}\n")
    table = pd.read_csv(io.StringIO(text), skiprows=1)
    assert list(table.columns) == ['scenario'] + CSV_COLUMNS
    assert len(table) == 8
    assert set(table['scenario']) == {'demo'}
    assert list(table.loc[table['kind'] == 'check', 'outcome']) == ['pass', 'fail']


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(_report(), format='xml')


def test_unknown_schema():
    doc = _report().to_dict()
    doc['schema_version'] = 99
    with pytest.raises(ValueError):
        ExperimentReport.from_dict(doc)


def test_infinities_stay_valid_json():
    report = ExperimentReport({'name': 'inf'}, (ReportRow('fit', 'M', 's_hat', np.inf),),
                              (Check('tail', 'classification', -np.inf, 'consistent_vanishing'),),
                              {'bound': float('inf')})
    assert report.rows[0].value == 'inf'
    assert report.checks[0].trend_slope == '-inf'

    def reject(token):
        raise AssertionError(f"non-standard JSON constant {token}")
    doc, = json.loads(emit_report(report), parse_constant=reject)
    assert doc['rows'][0]['value'] == 'inf'
    assert doc['checks'][0]['trend_slope'] == '-inf'
    assert doc['metadata']['bound'] == 'inf'
    back, = parse_report(emit_report(report))
    assert back.checks == report.checks
