"""Rendering of reports to JSON and CSV strings.

JSON payloads carry a schema version, the echoed run configuration, and
the report body.  The echo deliberately excludes worker count, output
format, and output path so that byte-identical payloads come out of
byte-identical computations regardless of parallelism or destination.

CSV is a flat table for census and baseline reports only.  Averages and
theory values are exact numerator/denominator pairs, never floats.  The
`k` column holds the cycle length for per-cycle-length rows and the
statistic or bound name for aggregate rows.  When a statistic is checked
against both a lower and an upper bound it gets one row per bound.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

SCHEMA_VERSION = 1

CSV_COLUMNS = (
    "family",
    "q",
    "d",
    "k",
    "avg_num",
    "avg_den",
    "theory_num",
    "theory_den",
    "bound_status",
)


def render_json(config: dict, report: dict) -> str:
    payload = {"schema": SCHEMA_VERSION, "config": config, "report": report}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _theory_value(comparison) -> Fraction | None:
    # one representative value per row: the target of an equality check,
    # else the bound being tested
    if comparison.expected is not None:
        return comparison.expected
    if comparison.lower is not None:
        return comparison.lower
    return comparison.upper


def _row(family: str, q, d, k, observed: Fraction, theory: Fraction | None, status: str) -> list[str]:
    return [
        family,
        str(q),
        "" if d is None else str(d),
        str(k),
        str(observed.numerator),
        str(observed.denominator),
        "" if theory is None else str(theory.numerator),
        "" if theory is None else str(theory.denominator),
        status,
    ]


def render_csv(report) -> str:
    """Flat CSV for a CensusReport or BaselineReport."""
    if hasattr(report, "kind"):  # baseline
        family = f"baseline:{report.kind}"
        q, d = report.size, None
        avg_k = {}
    else:
        family, q, d = report.family, report.q, report.d
        avg_k = report.avg_k_cycles
    comparisons = list(report.theory_comparison)
    rows: list[list[str]] = []

    def aggregate_rows(stat: str, observed: Fraction) -> None:
        matched = [c for c in comparisons if c.k is None and stat in c.name]
        if not matched:
            rows.append(_row(family, q, d, stat, observed, None, ""))
        for c in matched:
            rows.append(_row(family, q, d, c.name, observed, _theory_value(c), c.status))

    aggregate_rows("components", report.avg_components)
    aggregate_rows("periodic", report.avg_periodic)
    for k in sorted(avg_k):
        matched = [c for c in comparisons if c.k == k]
        if not matched:
            rows.append(_row(family, q, d, k, avg_k[k], None, ""))
        for c in matched:
            rows.append(_row(family, q, d, k, avg_k[k], _theory_value(c), c.status))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(rows)
    return buf.getvalue()
