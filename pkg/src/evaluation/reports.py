"""
Versioned JSON reports, digests, run metadata sidecars and pandas summaries.
"""

import os
import sys
import json
import hashlib
import logging
import platform
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

SCHEMA = "imcrystal/1"
REQUIRED_FIELDS = ('schema', 'suite', 'config', 'rows', 'summary', 'digest')


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(',', ':'), ensure_ascii=False)


def digest_of(body: Dict) -> str:
    """SHA-256 of the canonical encoding of everything except the digest field."""
    payload = {k: v for k, v in body.items() if k != 'digest'}
    return hashlib.sha256(canonical_json(payload).encode('utf-8')).hexdigest()


def build_report(suite: str, config: Dict, rows: List[Dict], summary: Dict) -> Dict:
    report = {
        'schema': SCHEMA,
        'suite': suite,
        'config': config,
        'rows': sorted(rows, key=lambda r: r['key']),
        'summary': summary,
    }
    report['digest'] = digest_of(report)
    return report


def run_metadata(workers: int, elapsed: Optional[float] = None) -> Dict:
    return {
        'timestamp': datetime.now().isoformat(),
        'workers': workers,
        'elapsed_seconds': elapsed,
        'python': sys.version.split()[0],
        'platform': platform.platform(),
        'numpy': np.__version__,
        'pandas': pd.__version__,
    }


def write_report(report: Dict, path: str, metadata: Optional[Dict] = None) -> str:
    """
    Write the report and, if given, its metadata to <path>.meta.json.

    Returns:
        Path of the report file
    """
    out = Path(path)
    if out.parent and str(out.parent) not in ('', '.'):
        os.makedirs(out.parent, exist_ok=True)
    with open(out, 'w', encoding='utf-8') as f:
        f.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False))
        f.write('\n')
    logger.info(f"Report saved to {out}")
    if metadata is not None:
        meta_path = f"{out}.meta.json"
        with open(meta_path, 'w', encoding='utf-8') as f:
            json.dump(dict(metadata, digest=report['digest']), f, indent=2, sort_keys=True)
        logger.info(f"Run metadata saved to {meta_path}")
    return str(out)


def load_report(path: str) -> Dict:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def validate_report(report: Dict) -> List[str]:
    """Structural problems of a report; an empty list means it is valid."""
    problems = []
    for field in REQUIRED_FIELDS:
        if field not in report:
            problems.append(f"missing field {field!r}")
    if problems:
        return problems
    if report['schema'] != SCHEMA:
        problems.append(f"schema is {report['schema']!r}, expected {SCHEMA!r}")
    if not isinstance(report['rows'], list):
        problems.append("rows is not a list")
    else:
        keys = [r.get('key') for r in report['rows']]
        if any(k is None for k in keys):
            problems.append("row without key")
        elif keys != sorted(keys):
            problems.append("rows are not sorted by key")
        elif len(set(keys)) != len(keys):
            problems.append("duplicate row keys")
        for n, row in enumerate(report['rows']):
            if not isinstance(row.get('passed'), bool):
                problems.append(f"row {n} has no boolean 'passed'")
                break
    if report['digest'] != digest_of(report):
        problems.append("digest does not match body")
    return problems


def summary_frame(rows: List[Dict]) -> pd.DataFrame:
    """One line per row with the verdict families flattened into columns."""
    records = []
    for r in rows:
        rec = {
            'key': r['key'],
            'suite': r.get('suite'),
            'operator': r.get('operator'),
            'case': r.get('case'),
            'class': r.get('class'),
            'passed': r['passed'],
            'error': r.get('error', {}).get('error') if 'error' in r else None,
            'no_case': len(r.get('no_case', ())),
            'residual_pairs': len(r.get('residual_pairs', ())),
        }
        for family, verdict in r.get('verdicts', {}).items():
            rec[f"v_{family}"] = verdict
        records.append(rec)
    return pd.DataFrame.from_records(records)


def verdict_counts(df: pd.DataFrame) -> pd.DataFrame:
    """pass / fail / n/a counts per verdict family."""
    counts = []
    for column in [c for c in df.columns if c.startswith('v_')]:
        series = df[column]
        counts.append({
            'verdict': column[2:],
            'passed': int((series == True).sum()),  # noqa: E712
            'failed': int((series == False).sum()),  # noqa: E712
            'not_applicable': int(series.isna().sum()),
        })
    return pd.DataFrame(counts, columns=['verdict', 'passed', 'failed', 'not_applicable'])


def write_csv(rows: List[Dict], path: str) -> str:
    df = summary_frame(rows)
    os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
    df.to_csv(path, index=False)
    logger.info(f"Row table saved to {path}")
    return path


def format_summary(report: Dict) -> str:
    """Human-readable summary for stdout."""
    summary = report['summary']
    lines = [
        "=" * 80,
        f"Suite: {report['suite']}    digest: {report['digest'][:16]}",
        "=" * 80,
        f"Instances: {summary.get('instances', len(report['rows']))}",
        f"Failed:    {summary.get('failed', 0)}",
        f"Engine errors: {summary.get('engine_errors', 0)}",
    ]
    if 'rows_with_no_case' in summary:
        lines.append(f"NoCase pairs: {summary['no_case']} in {summary['rows_with_no_case']} rows; "
                     f"residual pairs: {summary['residual_pairs']} in {summary['rows_with_residuals']} rows")
    if report['rows']:
        df = summary_frame(report['rows'])
        counts = verdict_counts(df)
        if not counts.empty:
            lines.append("")
            lines.append(counts.to_string(index=False))
        if df['class'].notna().any():
            lines.append("")
            lines.append(df['class'].value_counts().sort_index().to_string())
    return "\n".join(lines)
