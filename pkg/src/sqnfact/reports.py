"""JSON experiment reports."""

import json
from pathlib import Path


def save_report(report: dict, path) -> None:
    """Write a report as UTF-8 JSON with LF line endings.

    Key order follows the report's insertion order, so identical runs
    produce identical bytes.
    """
    text = json.dumps(report, indent=2, ensure_ascii=False)
    Path(path).write_text(text + "\n", encoding="utf-8", newline="\n")
