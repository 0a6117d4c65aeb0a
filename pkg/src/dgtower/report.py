"""Report assembly and rendering.

The JSON form is canonical: fixed key order, no floating-point values, and
no wall-clock data, so the same input, seed, and tool version produce a
byte-identical document.  Elapsed time is shown only in the human-readable
rendering.
"""

from __future__ import annotations

import json
import random

from . import __version__
from .dgring import DGRingSpec, KoszulStep, TrivExtStep, realize
from .regularity import regularity_report

__all__ = [
    "SCHEMA_VERSION",
    "describe_spec",
    "build_report",
    "render_json",
    "render_text",
    "exit_code_for",
]

SCHEMA_VERSION = 1


def describe_spec(spec: DGRingSpec) -> dict:
    steps = []
    for step in spec.steps:
        if isinstance(step, KoszulStep):
            steps.append({"koszul": [str(e) for e in step.elements]})
        elif isinstance(step, TrivExtStep):
            steps.append(
                {
                    "trivext": {
                        "gens": step.gens,
                        "shift": step.shift,
                        "rels": [[str(p) for p in col] for col in step.relations],
                    }
                }
            )
    return {
        "field": spec.ring.field.name,
        "vars": list(spec.ring.names),
        "quotient": [str(g) for g in spec.base],
        "steps": steps,
        "point": [str(c) for c in spec.point] if spec.point else None,
        "label": spec.label,
    }


def build_report(spec: DGRingSpec, seed: int, trials: int,
                 verdicts=(), extra_caveats=()) -> dict:
    rng = random.Random(seed)
    real = realize(spec)
    reg = regularity_report(real, trials=trials, rng=rng)
    payload = {
        "tool": "dgtower",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "seed": seed,
        "trials": trials,
        "input": describe_spec(spec),
        "regularity": reg.to_dict(),
        "verdicts": [v.to_dict() for v in verdicts],
        "basis_hashes": real.basis_hashes(),
        "caveats": sorted(set(reg.caveats) | set(extra_caveats)),
    }
    return payload


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=None, separators=(",", ":"),
                      ensure_ascii=True) + "\n"


def _yesno(value) -> str:
    if value is None:
        return "n/a"
    return "yes" if value else "no"


def render_text(payload: dict, elapsed_ms: int | None = None) -> str:
    lines = []
    inp = payload.get("input", {})
    lines.append(f"dgtower {payload.get('version')} report"
                 f" (seed {payload.get('seed')})")
    if inp:
        lines.append(
            f"  ring: {inp.get('field')}[{', '.join(inp.get('vars', []))}]"
            f" / ({', '.join(inp.get('quotient', [])) or '0'})"
        )
        for step in inp.get("steps", []):
            if "koszul" in step:
                lines.append(f"  step: koszul [{', '.join(step['koszul'])}]")
            else:
                te = step["trivext"]
                lines.append(
                    f"  step: trivext shift={te['shift']} gens={te['gens']}"
                )
        if inp.get("point"):
            lines.append(f"  point: ({', '.join(inp['point'])})")
    reg = payload.get("regularity")
    if reg:
        ampl = reg["amplitude"]
        lines.append(
            f"  amplitude: inf={ampl['inf']} sup={ampl['sup']} amp={ampl['amp']}"
        )
        lines.append(
            f"  local dim {reg['local_dim']}, embdim {reg['embdim']},"
            f" H0 regular: {_yesno(reg['h0_is_regular_local'])}"
        )
        sd = reg["seq_depth"]
        lines.append(
            f"  seq.depth {sd['depth']} ({sd['label']});"
            f" witness [{', '.join(sd['witness'])}]"
        )
        lines.append(f"  depth (seq.depth + inf): {reg['depth']}")
        lines.append(
            f"  local-CM: {_yesno(reg['is_local_cm'])}"
            f" ({'certified' if reg['cm_certified'] else 'probabilistic'})"
        )
        lines.append(
            f"  constant amplitude: {_yesno(reg['constant_amplitude'])}"
        )
        if reg.get("cm_everywhere_note"):
            lines.append(f"  CM at every prime: {reg['cm_everywhere_note']}")
        sr = reg["sequence_regular"]
        lines.append(
            f"  sequence-regular: {_yesno(sr['is_sequence_regular'])}"
            f" (witness [{', '.join(sr['witness'])}])"
        )
        if reg.get("kappa"):
            k = reg["kappa"]
            lines.append(
                f"  residue DG-field: Koszul on [{', '.join(k['parameters'])}],"
                f" amp {k['amp']}, flat dim {k['flat_dim']}"
            )
    if payload.get("kappa") and not reg:
        k = payload["kappa"]
        lines.append(
            f"  residue DG-field: Koszul on [{', '.join(k['parameters'])}],"
            f" amp {k['amp']}, flat dim {k['flat_dim']}"
        )
    for v in payload.get("verdicts", []):
        status = "pass" if v["ok"] else ("n/a" if v["ok"] is None else "FAIL")
        if v.get("exhausted"):
            status = "search exhausted"
        lines.append(f"  verdict {v['name']}: {status} [{v['taint']}]")
    summary = payload.get("summary")
    if summary:
        lines.append(
            f"  corpus {summary['profile']}: {summary['passes']}/{summary['produced']}"
            f" pass, {len(summary['counterexamples'])} counterexamples,"
            f" {len(summary['exhausted'])} exhausted,"
            f" {len(summary['budget_exceeded'])} budget"
        )
        for c in summary["counterexamples"][:10]:
            lines.append(f"    counterexample: {c['repro']}")
        for c in summary["exhausted"][:10]:
            lines.append(f"    exhausted: {c['repro']}")
        for c in summary["self_check_failures"][:10]:
            lines.append(f"    self-check failure: {c['repro']}")
    for c in payload.get("caveats", []):
        lines.append(f"  caveat: {c}")
    if elapsed_ms is not None:
        lines.append(f"  elapsed: {elapsed_ms} ms")
    return "\n".join(lines) + "\n"


def exit_code_for(payload: dict) -> int:
    """0 = all verdicts pass, 1 = counterexample, 2 = budget or diagnostic."""
    if payload.get("budget_exceeded"):
        return 2
    verdicts = payload.get("verdicts", [])
    if any(v["ok"] is False and not v.get("exhausted") for v in verdicts):
        return 1
    if any(v.get("exhausted") for v in verdicts):
        return 2
    summary = payload.get("summary")
    if summary:
        if summary.get("counterexamples"):
            return 1
        if summary.get("exhausted") or summary.get("budget_exceeded"):
            return 2
    return 0
