"""
utils/reports.py
JSON-ready report dictionaries and the human-readable text renderer.
"""

import json
from typing import Dict, List, Optional

from models.activity import GrowthReport
from models.buchi import UltimatelyPeriodicWord
from utils.config import SCHEMA
from utils.decision import TorsionReport, Verdict


def _word(word) -> str:
    return " ".join(word)


def witness_dict(witness: UltimatelyPeriodicWord) -> Dict:
    return {"stem": _word(witness.stem), "loop": _word(witness.loop)}


def verdict_report(verdict: Verdict, command: str) -> Dict:
    """Report for `finite` and `sub-finite`."""
    out: Dict = {"schema": SCHEMA, "command": command, "verdict": verdict.label}
    if verdict.witness is not None:
        out["witness"] = witness_dict(verdict.witness)
    if verdict.order is not None:
        out["order"] = verdict.order
    out["buchi_states"] = verdict.buchi_states
    return out


def activity_report(report: GrowthReport, subset, counts: Optional[List[int]] = None) -> Dict:
    out: Dict = {"schema": SCHEMA, "command": "activity", "S": list(subset)}
    out.update(report.to_dict())
    if counts is not None:
        out["counts"] = counts
    return out


def torsion_report(report: TorsionReport) -> Dict:
    out: Dict = {
        "schema": SCHEMA,
        "command": "torsion",
        "has_torsion_element": report.has_torsion_element,
        "has_element_without_torsion": report.has_element_without_torsion,
        "torsion_free": report.torsion_free,
    }
    if report.torsion_witness is not None:
        out["torsion_witness"] = _word(report.torsion_witness)
    if report.without_torsion_witness is not None:
        out["without_torsion_witness"] = _word(report.without_torsion_witness)
    return out


def error_report(exc: Exception, exit_code: int) -> Dict:
    kind = type(exc).__name__
    return {"schema": SCHEMA, "error": kind, "message": str(exc), "exit_code": exit_code}


# ── Rendering ───────────────────────────────────────────────────────────────────
def render_json(report: Dict) -> str:
    return json.dumps(report, ensure_ascii=False, indent=2) + "\n"


def render_text(report: Dict) -> str:
    """
    One line per field, with a headline sentence for verdicts.

    Args:
        report: Any report dictionary produced by this module or the CLI.

    Returns:
        The text, ending with a newline.
    """
    lines: List[str] = []
    if "error" in report:
        return f"error ({report['error']}): {report['message']}\n"
    if "verdict" in report:
        if report["verdict"] == "finite":
            size = f" with {report['order']} elements" if "order" in report else ""
            lines.append(f"The decided semigroup is finite{size}.")
        else:
            w = report.get("witness", {})
            lines.append(
                f"The decided semigroup is infinite: the ω-word {w.get('stem', '')} ({w.get('loop', '')})^ω "
                "has an infinite orbit."
            )
    for key, value in report.items():
        if key in ("schema", "verdict", "witness"):
            continue
        if isinstance(value, (dict, list)):
            value = json.dumps(value, ensure_ascii=False)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"
