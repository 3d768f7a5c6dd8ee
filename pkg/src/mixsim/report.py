"""Canonical text exports: measures CSV, radar CSV, features CSV, JSON report."""

import csv
import io
import json

from mixsim.msm import CSV_COLUMNS, MEASURE_NAMES


def fmt(x) -> str:
    """Six significant digits; None becomes an empty field."""
    if x is None:
        return ""
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    return f"{x:.6g}"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def measure_row(network, case, ms) -> list:
    values = ms.as_dict()
    return [network, case] + [fmt(values[c]) for c in CSV_COLUMNS[2:]]


def measures_csv(rows) -> str:
    """``rows`` yields ``(network, case, MeasureSet)`` triples."""
    return _csv((measure_row(*r) for r in rows), CSV_COLUMNS)


def report_measures_csv(report) -> str:
    rows = []
    for name in report.network_names:
        for label in report.case_labels:
            cell = report.cells[name, label]
            if cell.average is None:
                rows.append([name, label] + [""] * (len(CSV_COLUMNS) - 2))
            else:
                rows.append(measure_row(name, label, cell.average))
    return _csv(rows, CSV_COLUMNS)


def radar_csv(report) -> str:
    rows = []
    for label in report.case_labels:
        radar = report.radar[label]
        for name in report.network_names:
            if name not in radar:
                continue
            for measure in MEASURE_NAMES:
                rows.append([name, label, measure, fmt(radar[name][measure])])
    return _csv(rows, ("network", "case", "measure", "normalized_value"))


def features_csv(features, histogram) -> str:
    """Two-column ``key,value`` listing of graph features then ``degree_<k>`` counts."""
    rows = [[k, fmt(v)] for k, v in features.as_dict().items()]
    rows.extend([f"degree_{d}", c] for d, c in histogram.items())
    return _csv(rows, ("key", "value"))


def features_text(features, histogram) -> str:
    items = [(k, fmt(v) if v is not None else "undefined") for k, v in features.as_dict().items()]
    width = max(len(k) for k, _ in items)
    lines = [f"{k:<{width}}  {v}" for k, v in items]
    lines.append("degree histogram:")
    lines.extend(f"  {d:>4}: {c}" for d, c in histogram.items())
    return "\n".join(lines) + "\n"


def report_json(report) -> str:
    spec = report.spec
    base = spec.base
    doc = {
        "spec": {
            "networks": [
                {"name": n.name, "kind": n.kind, "params": n.params, "seed": n.seed} for n in spec.networks
            ],
            "cases": [list(c) for c in spec.cases],
            "reps": spec.reps,
            "u": base.u,
            "n0": base.n0,
            "t_max": base.t_max,
            "mode": base.mode,
            "master_seed": spec.master_seed,
        },
        "cells": [],
        "radar": report.radar,
    }
    for name in report.network_names:
        for label in report.case_labels:
            cell = report.cells[name, label]
            doc["cells"].append(
                {
                    "network": name,
                    "case": label,
                    "g_rate": cell.case[0],
                    "d_rate": cell.case[1],
                    "error": cell.error,
                    "average": cell.average.as_dict() if cell.average else None,
                    "per_rep": [ms.as_dict() for ms in cell.per_rep],
                }
            )
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
