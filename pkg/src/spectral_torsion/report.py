"""The report document shared by every CLI command.

Both renderings (JSON and Markdown) are produced from :meth:`ReportDocument.to_dict`,
so they carry the same content.  Nothing time- or host-dependent goes in
unless timing was requested.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from . import __version__
from .results import ResidueReport
from .verification_oracle import TagSummary

SCHEMA_ID = "spectral-torsion-report/1"

EXIT_OK, EXIT_ENGINE_ERROR, EXIT_DISCREPANCY = 0, 1, 2


@dataclass
class ReportDocument:
    command: str
    seed: int
    trials: Optional[int] = None
    lemmas: List[TagSummary] = field(default_factory=list)
    residues: List[ResidueReport] = field(default_factory=list)
    errors: List[str] = field(default_factory=list)
    timing: Optional[Dict[str, float]] = None
    version: str = __version__

    @property
    def status(self) -> str:
        if self.errors or any(s.reconstruction == "failed" for s in self.lemmas):
            return "engine-error"
        if any(s.verdict != "Match" for s in self.lemmas):
            return "discrepancy"
        if any(c.verdict != "Match" for r in self.residues for c in r.comparisons):
            return "discrepancy"
        return "all-match"

    @property
    def exit_code(self) -> int:
        return {"all-match": EXIT_OK, "discrepancy": EXIT_DISCREPANCY}.get(self.status, EXIT_ENGINE_ERROR)

    def to_dict(self) -> dict:
        d = {
            "schema": SCHEMA_ID,
            "version": self.version,
            "command": self.command,
            "seed": self.seed,
            "trials": self.trials,
            "status": self.status,
            "lemmas": [s.to_dict() for s in self.lemmas],
            "residues": [r.to_dict() for r in self.residues],
            "errors": list(self.errors),
        }
        if self.timing is not None:
            d["timing"] = {k: round(v, 3) for k, v in self.timing.items()}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        if d.get("schema") != SCHEMA_ID:
            raise ValueError(f"not a {SCHEMA_ID} document")
        doc = cls(
            command=d["command"],
            seed=int(d["seed"]),
            trials=d["trials"],
            lemmas=[TagSummary.from_dict(x) for x in d["lemmas"]],
            residues=[ResidueReport.from_dict(x) for x in d["residues"]],
            errors=list(d["errors"]),
            timing=d.get("timing"),
            version=d["version"],
        )
        if doc.status != d["status"]:
            raise ValueError("status field disagrees with content")
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    def to_markdown(self) -> str:
        return render_markdown(self.to_dict())

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_markdown()


def _cell(x) -> str:
    return "" if x is None else str(x).replace("|", "\\|")


def render_markdown(d: dict) -> str:
    out = [
        f"# spectral-torsion report ({d['command']})",
        "",
        f"- version: {d['version']}",
        f"- seed: {d['seed']}",
        f"- trials: {d['trials']}",
        f"- status: {d['status']}",
        "",
    ]
    if d["lemmas"]:
        out += ["## Trace identities", "",
                "| tag | verdict | matches | mismatches | reconstruction |",
                "|---|---|---|---|---|"]
        for s in d["lemmas"]:
            out.append(f"| {s['tag']} | {s['verdict']} | {s['matches']} | {s['mismatches']} | {_cell(s['reconstruction'])} |")
        out.append("")
        for s in d["lemmas"]:
            out += [f"### {s['tag']}", "", f"- printed: `{s['printed']}`"]
            if s["oracle_form"] is not None:
                out.append(f"- oracle form: `{s['oracle_form']}`")
            fm = s["first_mismatch"]
            if fm is not None:
                inst = ", ".join(f"{k}=({', '.join(v)})" for k, v in fm["instantiation"].items())
                out += [
                    f"- first mismatch (trial {fm['trial']}): {inst}",
                    f"  - closed form: `{fm['closed_form']}`",
                    f"  - brute force: `{fm['brute_force']}`",
                    f"  - delta: `{fm['delta']}`",
                ]
            out.append("")
    for r in d["residues"]:
        out += [
            f"## Functional: {r['functional']} ({r['params']})",
            "",
            f"- bracket: `{r['bracket']}`",
            f"- derived: `{r['derived']['text']}`",
            f"- verdict: {r['verdict']}",
        ]
        for name, v in r["coefficients"].items():
            out.append(f"- coefficient {name}: `{v['text']}`")
        out += ["", "| comparison | claimed | verdict | delta | note |", "|---|---|---|---|---|"]
        for c in r["comparisons"]:
            out.append(f"| {_cell(c['label'])} | `{_cell(c['claimed']['text'])}` | {c['verdict']} | "
                       f"{'`' + _cell(c['delta']) + '`' if c['delta'] is not None else ''} | {_cell(c['note'])} |")
        if r["checks"]:
            out += ["", "| check | result |", "|---|---|"]
            out += [f"| {_cell(k)} | {_cell(v)} |" for k, v in r["checks"].items()]
        if r["notes"]:
            out += [""] + [f"- {n}" for n in r["notes"]]
        out.append("")
    if d["errors"]:
        out += ["## Engine errors", ""] + [f"- {e}" for e in d["errors"]] + [""]
    if "timing" in d:
        out += ["## Timing (s)", ""] + [f"- {k}: {v}" for k, v in d["timing"].items()] + [""]
    return "\n".join(out)
