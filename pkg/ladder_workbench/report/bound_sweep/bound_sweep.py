"""
Bound sweep report: collate prior `bound` JSON reports into one CSV table.
"""

import csv
import io
import json
from pathlib import Path

from ladder_workbench.commands import require, write_output
from ladder_workbench.utils.config import RunConfig
from ladder_workbench.utils.logging import log_error, log_info


def execute(filters=None):
    """
    Args:
        filters: {"input": directory of JSON reports, "method": optional method filter}

    Returns:
        tuple: (columns, data, skipped) with skipped as [{"source", "reason"}]
    """
    columns = get_columns()
    data, skipped = get_data(filters)
    return columns, data, skipped


def get_columns():
    return [
        {"fieldname": "method", "label": "Method"},
        {"fieldname": "problem", "label": "Problem"},
        {"fieldname": "N", "label": "N"},
        {"fieldname": "M", "label": "M"},
        {"fieldname": "k", "label": "k"},
        {"fieldname": "eps", "label": "eps"},
        {"fieldname": "value", "label": "T / value"},
        {"fieldname": "source", "label": "Source"},
    ]


def _row(payload: dict, source: str) -> dict:
    result = payload["result"]
    params = result.get("parameters", {})
    config = payload.get("config", {})
    return {
        "method": result["bound_name"].lower(),
        "problem": params.get("problem", params.get("function", config.get("problem"))),
        "N": params.get("N", config.get("n")),
        "M": params.get("M", config.get("m")),
        "k": params.get("k", config.get("k")),
        "eps": params.get("eps", config.get("eps")),
        "value": result["value"],
        "source": source,
    }


def get_data(filters):
    if not filters:
        filters = {}

    directory = Path(require(filters.get("input"), "input", "report"))
    method = filters.get("method")
    data, skipped = [], []

    for path in sorted(directory.glob("*.json")):
        try:
            payload = json.loads(path.read_text())
            if "bound_name" not in payload.get("result", {}):
                skipped.append({"source": path.name, "reason": "not a bound report"})
                continue
            row = _row(payload, path.name)
        except (json.JSONDecodeError, KeyError, TypeError, AttributeError) as e:
            log_error(f"{path}: {e}", title="Report Skipped")
            skipped.append({"source": path.name, "reason": f"corrupt report: {e}"})
            continue
        if method and row["method"] != method:
            continue
        data.append(row)

    data.sort(key=lambda r: (r["method"], str(r["problem"]), str(r["N"]), str(r["M"]), r["source"]))
    return data, skipped


def to_csv(columns, data) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(
        buffer, fieldnames=[c["fieldname"] for c in columns], lineterminator="\n"
    )
    writer.writeheader()
    for row in data:
        writer.writerow({k: "" if v is None else v for k, v in row.items()})
    return buffer.getvalue()


def cmd_report(cfg: RunConfig):
    """
    Write the CSV to --out (or stdout); the skip list goes to the log.

    Returns:
        tuple: (None, 1 if no report could be collated else 0)
    """
    columns, data, skipped = execute({"input": cfg.input, "method": cfg.method})
    for item in skipped:
        log_info(f"skipped {item['source']}: {item['reason']}")
    write_output(to_csv(columns, data), cfg.out)
    log_info(f"collated {len(data)} reports, skipped {len(skipped)}")
    return None, 0 if data else 1
