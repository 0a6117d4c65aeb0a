"""Command-line interface.

Commands:
  report <file> [--seed N] [--trials T] [--json]
  verify <name> <file> | --random [--seed N] [--trials T] [--json]
  corpus <profile> [--count N] [--seed N] [--trials T] [--json]
  kappa <file> [--seed N] [--json]

Exit codes: 0 when every verdict passes, 1 on a counterexample, 2 on a
budget overrun or another diagnostic (including exhausted random
searches).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .corpus import (
    PROFILES,
    CorpusInstance,
    generate_instance,
    instance_document,
    run_corpus,
    run_verifier_on_instance,
)
from .dgring import realize
from .dsl import parse_document
from .errors import BudgetExceeded, DocumentError, InvalidTower, ToolkitError
from .regularity import is_sequence_regular, residue_dg_field
from .report import (
    build_report,
    describe_spec,
    exit_code_for,
    render_json,
    render_text,
)

__all__ = ["main"]


def _add_common(p):
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--trials", type=int, default=32,
                   help="trials per randomized search stage (default 32)")
    p.add_argument("--json", action="store_true", help="emit canonical JSON")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgtower",
        description="exact regularity analysis of DG-ring towers",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_report = sub.add_parser("report", help="full regularity report for a tower")
    p_report.add_argument("file", help="tower document")
    _add_common(p_report)

    p_verify = sub.add_parser("verify", help="run one named verification")
    p_verify.add_argument("name", choices=PROFILES, help="verification name")
    p_verify.add_argument("file", nargs="?", default=None, help="tower document")
    p_verify.add_argument("--random", action="store_true",
                          help="generate the instance from the seed instead")
    _add_common(p_verify)

    p_corpus = sub.add_parser("corpus", help="randomized corpus run for a profile")
    p_corpus.add_argument("profile", choices=PROFILES)
    p_corpus.add_argument("--count", type=int, default=100,
                          help="instances to verify (default 100)")
    _add_common(p_corpus)

    p_kappa = sub.add_parser("kappa", help="residue DG-field of a tower")
    p_kappa.add_argument("file", help="tower document")
    _add_common(p_kappa)
    return parser


def _emit(payload: dict, as_json: bool, elapsed_ms: int, out=sys.stdout) -> None:
    if as_json:
        out.write(render_json(payload))
    else:
        out.write(render_text(payload, elapsed_ms))


def _load_document(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_document(text)


def _instance_from_document(doc, seed: int, name: str) -> CorpusInstance:
    return CorpusInstance(
        spec=doc.to_spec(),
        seed=seed,
        kind=name,
        elements=doc.elements,
        points=doc.points,
        matrix=doc.matrix,
        module_elements=doc.module_elements,
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        if args.command == "report":
            doc = _load_document(args.file)
            payload = build_report(doc.to_spec(), args.seed, args.trials)
        elif args.command == "kappa":
            doc = _load_document(args.file)
            payload = _kappa_payload(doc, args.seed, args.trials)
        elif args.command == "verify":
            payload = _verify_payload(args)
        elif args.command == "corpus":
            summary = run_corpus(args.profile, args.count, args.seed, args.trials)
            payload = {
                "tool": "dgtower",
                "version": __version__,
                "summary": summary,
            }
        else:  # pragma: no cover - argparse enforces choices
            parser.error(f"unknown command {args.command}")
    except (DocumentError, InvalidTower) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed_ms = int((time.monotonic() - started) * 1000)
    _emit(payload, args.json, elapsed_ms)
    return exit_code_for(payload)


def _verify_payload(args) -> dict:
    seed = args.seed
    rng = random.Random(seed ^ 0x5EED)
    if args.random:
        inst = generate_instance(args.name, seed)
        source = {"generated": True, "document": instance_document(inst)}
    else:
        if not args.file:
            raise DocumentError("verify needs a file or --random", 1)
        doc = _load_document(args.file)
        inst = _instance_from_document(doc, seed, args.name)
        inst = _fill_missing_inputs(inst, args.name, rng)
        source = {"generated": False, "document": doc.source}
    record = run_verifier_on_instance(args.name, inst, args.trials, rng)
    return {
        "tool": "dgtower",
        "version": __version__,
        "seed": seed,
        "trials": args.trials,
        "input": describe_spec(inst.spec),
        "source": source,
        "verdicts": [record.to_dict()],
        "caveats": [],
    }


def _fill_missing_inputs(inst: CorpusInstance, name: str, rng) -> CorpusInstance:
    """Draw any payload the document did not provide (elements, points,
    matrices) from the seeded generator, so file-based verification works
    without spelling everything out."""
    from .corpus import random_gl_matrix, random_vanishing_poly
    from .points import find_points_on_locus

    spec = inst.spec
    ring = spec.ring
    needs_elements = name in ("kos-amp", "sop", "double-cm", "derived-quotient")
    if needs_elements and not inst.elements:
        inst.elements = (random_vanishing_poly(ring, rng, 2),)
    if name == "gl" and inst.matrix is None:
        elements = inst.elements
        if not elements:
            elements = realize(spec).minimal_generators()
            inst.elements = elements
        inst.matrix = tuple(
            tuple(row) for row in random_gl_matrix(ring, rng, len(elements))
        )
    if name in ("main", "serre-points") and not inst.points:
        j_a = list(spec.base)
        for step in spec.steps:
            if hasattr(step, "elements"):
                j_a.extend(step.elements)
        pts = find_points_on_locus(ring, j_a, 10, rng,
                                   exclude=[(ring.field.zero,) * ring.n])
        inst.points = tuple(pts)
    if name == "nakayama" and not inst.module_elements:
        inst.module_elements = (random_vanishing_poly(ring, rng, 2),)
    return inst


def _kappa_payload(doc, seed: int, trials: int) -> dict:
    spec = doc.to_spec()
    real = realize(spec)
    seqreg = is_sequence_regular(real)
    if not seqreg.value:
        raise ToolkitError(
            "residue DG-fields are available only in the sequence-regular case"
        )
    kappa = residue_dg_field(real, seqreg)
    return {
        "tool": "dgtower",
        "version": __version__,
        "seed": seed,
        "input": describe_spec(spec),
        "kappa": kappa.to_dict(),
        "verdicts": [
            {
                "name": "kappa-consistency",
                "ok": kappa.consistent,
                "taint": "certified",
                "exhausted": False,
                "details": kappa.to_dict(),
            }
        ],
        "caveats": [],
    }


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
