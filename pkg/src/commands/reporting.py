"""
JSON report assembly shared by every subcommand

Each report carries the library version, the resolved config, the check
reports grouped by identity, and the metrics summary when observability is on.

How this file ties into the app:
- every module in `src/commands/` ends with `write_report`
- `exit_code_for` turns a list of identity reports into 0 or 1
"""

import json
import os
from collections import OrderedDict
from typing import Any, Dict, Iterable, List, Optional

from dependencies import LIBRARY_VERSION, OBSERVABILITY_ENABLED, logger, metrics_collector
from errors import EXIT_IDENTITY_FAILURE, EXIT_OK
from identities import IdentityReport
from models import RunConfig


def summarize(reports: Iterable[IdentityReport]) -> Dict[str, Any]:
    """Counts per identity id, in first-seen order, plus every failure in full"""
    groups: "OrderedDict[str, Dict[str, int]]" = OrderedDict()
    failed: List[Dict[str, Any]] = []
    for report in reports:
        entry = groups.setdefault(report.identity, {"checks": 0, "failures": 0})
        entry["checks"] += 1
        if not report.passed:
            entry["failures"] += 1
            failed.append(report.to_json())
    return {
        "identities": groups,
        "total_checks": sum(g["checks"] for g in groups.values()),
        "total_failures": len(failed),
        "failures": failed,
    }


def exit_code_for(reports: Iterable[IdentityReport]) -> int:
    return EXIT_OK if all(r.passed for r in reports) else EXIT_IDENTITY_FAILURE


def write_report(config: RunConfig, command: str, body: Dict[str, Any],
                 filename: Optional[str] = None) -> str:
    payload: Dict[str, Any] = {
        "command": command,
        "library_version": LIBRARY_VERSION,
        "config": config.resolved(),
        **body,
    }
    if OBSERVABILITY_ENABLED:
        payload["metrics"] = metrics_collector.get_metrics()
        payload["recent_failures"] = metrics_collector.get_recent_failures()
    os.makedirs(config.out, exist_ok=True)
    path = os.path.join(config.out, filename or f"{command}.json")
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2, default=str)
    logger.info(f"Report written: {path}")
    return path
