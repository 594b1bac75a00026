"""CSV/JSON report writers with fixed, versioned schemas.

Every report embeds the resolved experiment configuration for
auditability.  Execution-only settings (thread count) are deliberately
left out of the payload: outputs are required to be byte-identical for
any degree of parallelism, so nothing volatile may be written.

CSV files are UTF-8 with LF line endings and '.' decimal separators;
the first line names the schema and version, the second is the header
row.  Floats are serialized with repr (shortest round-trip form).
"""

from __future__ import annotations

import json
from pathlib import Path

SCHEMA_VERSION = 1


def format_cell(v) -> str:
    if isinstance(v, float):
        return repr(float(v))  # shortest round-trip; also strips numpy scalars
    return str(v)


def write_csv(path: Path, schema: str, header: list[str], rows) -> None:
    lines = [f"# schema=egyfrac.{schema}/v{SCHEMA_VERSION}"]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(format_cell(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def json_payload(command: str, config: dict, results: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "results": results,
    }


def write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n",
                    encoding="utf-8", newline="\n")


def scan_csv_rows(report) -> tuple[list[str], list[tuple]]:
    """Header and one row per checkpoint for a MomentReport."""
    labels = [t.label for t in report.rows[0].turan] if report.rows else []
    header = ["n_max", "s1", "s2", "d_times_phi_sq", "d", "d_over_nlog2n"]
    for lab in labels:
        header += [f"turan_{lab}_fixed_ratio", f"turan_{lab}_pointwise_ratio"]
    rows = []
    for row in report.rows:
        cells = [row.n_max, row.s1, row.s2, row.d_times_phi_sq,
                 row.d_value, row.d_normalized]
        for t in row.turan:
            cells += [t.fixed_ratio, t.pointwise_ratio]
        rows.append(tuple(cells))
    return header, rows


def scan_results_dict(report) -> dict:
    return {
        "phi": report.phi,
        "checkpoints": [
            {
                "n_max": row.n_max,
                "s1": row.s1,
                "s2": row.s2,
                "d_times_phi_sq": row.d_times_phi_sq,
                "d": row.d_value,
                "d_over_nlog2n": row.d_normalized,
                "turan": [
                    {
                        "character": t.label,
                        "fixed_sum": t.fixed_sum,
                        "fixed_ratio": t.fixed_ratio,
                        "pointwise_sum": t.pointwise_sum,
                        "pointwise_ratio": t.pointwise_ratio,
                    }
                    for t in row.turan
                ],
            }
            for row in report.rows
        ],
    }


def dist_csv_rows(grid) -> tuple[list[str], list[tuple]]:
    header = ["z", "empirical", "gaussian", "abs_diff"]
    rows = [
        (z, e, g, abs(e - g))
        for z, e, g in zip(grid.z_values, grid.empirical, grid.gaussian)
    ]
    return header, rows


def dist_results_dict(grid, ks: float) -> dict:
    return {
        "ks_distance": ks,
        "N": grid.N,
        "eligible": grid.eligible,
        "excluded_zero_R": grid.excluded_zero_R,
        "excluded_small_n": grid.excluded_small_n,
        "z": list(grid.z_values),
        "empirical_eligible_denominator": list(grid.empirical),
        "empirical_all_n_denominator": list(grid.empirical_all_n),
        "gaussian": list(grid.gaussian),
    }


def coeff_csv_rows(partials) -> tuple[list[str], list[tuple]]:
    return ["p_cutoff", "value"], [(p, v) for p, v in partials]


def coeff_results_dict(result) -> dict:
    return {
        "a": result.a,
        "p_max": result.p_max,
        "value": result.value,
        "last_factor_delta": result.last_factor_delta,
        "sign_note": result.sign_note,
    }
