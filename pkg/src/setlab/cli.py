"""Command-line front end.

Subcommands: check, classify, verify, chains, enumerate, interp.  Output is
human-readable text by default or a single JSON document with --format
json; both are byte-identical across runs on the same inputs.  Exit codes:
0 success, 1 for a lemma violation, a failed demo check, or an unsatisfied
axiom under --require, 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import audit, classifier, dsl, enumerator, interp
from .errors import SetlabError
from .universe import LookupResult, Multiple, Unique, Universe

ENV_MAX_N = "SETLAB_MAX_N"


def _lookup_text(result: LookupResult) -> str:
    if isinstance(result, Unique):
        return f"unique({result.id})"
    if isinstance(result, Multiple):
        return f"multiple({', '.join(result.ids)})"
    return "absent"


def _lookup_json(result: LookupResult) -> dict:
    if isinstance(result, Unique):
        return {"kind": "unique", "id": result.id}
    if isinstance(result, Multiple):
        return {"kind": "multiple", "ids": list(result.ids)}
    return {"kind": "absent"}


def _load_universe(path: str) -> Universe:
    with open(path, "r", encoding="utf-8") as handle:
        return dsl.parse_universe(handle.read())


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))


# -- check ------------------------------------------------------------------


def _cmd_check(args) -> int:
    u = _load_universe(args.file)
    reports = [
        audit.check_axiom(u, audit.SUCCESSOR),
        audit.check_axiom(u, audit.PREDECESSOR),
    ]
    required = {
        None: (),
        "successor": (audit.SUCCESSOR,),
        "predecessor": (audit.PREDECESSOR,),
        "both": (audit.SUCCESSOR, audit.PREDECESSOR),
    }[args.require]
    by_name = {report.axiom: report for report in reports}
    ok = all(by_name[name].satisfied for name in required)

    doc = {
        "command": "check",
        "file": args.file,
        "elements": len(u),
        "axioms": [
            {
                "axiom": report.axiom,
                "satisfied": report.satisfied,
                "per_element": [
                    {"element": x, "result": _lookup_json(r)}
                    for x, r in report.per_element
                ],
            }
            for report in reports
        ],
        "require": args.require,
        "ok": ok,
    }
    lines = [f"universe: {args.file} ({len(u)} elements)"]
    for report in reports:
        state = "satisfied" if report.satisfied else "not satisfied"
        lines.append(f"axiom {report.axiom}: {state}")
        for x, result in report.per_element:
            lines.append(f"  {x}: {_lookup_text(result)}")
    if args.require:
        lines.append(f"require {args.require}: {'ok' if ok else 'FAIL'}")
    _emit(args, doc, lines)
    return 0 if ok else 1


# -- classify -----------------------------------------------------------------


def _cmd_classify(args) -> int:
    u = _load_universe(args.file)
    rows = classifier.classify_all(u)
    witness = classifier.russell_witness(u)

    def flag(value: bool) -> str:
        return "yes" if value else "no"

    doc = {
        "command": "classify",
        "file": args.file,
        "elements": [
            {
                "element": row.element,
                "lower": row.lower,
                "upper": row.upper,
                "self_membered": row.self_membered,
                "strictly_russellian": row.strictly_russellian,
            }
            for row in rows
        ],
        "russell_witness": witness,
    }
    lines = [f"universe: {args.file} ({len(u)} elements)"]
    for row in rows:
        lines.append(
            f"element {row.element}: lower={flag(row.lower)} "
            f"upper={flag(row.upper)} self-membered={flag(row.self_membered)}"
        )
    lines.append(f"russell witness: {witness if witness else 'none'}")
    _emit(args, doc, lines)
    return 0


# -- verify -------------------------------------------------------------------


def _cmd_verify(args) -> int:
    u = _load_universe(args.file)
    report = audit.verify_lemma_suite(u)
    doc = {
        "command": "verify",
        "file": args.file,
        "elements": len(u),
        "lemmas": [
            {
                "tag": tag,
                "status": verdict.status,
                "witness": list(verdict.witness),
            }
            for tag, verdict in report.per_lemma
        ],
        "notes": list(report.notes),
        "ok": report.ok,
    }
    lines = [f"universe: {args.file} ({len(u)} elements)"]
    for tag, verdict in report.per_lemma:
        line = f"{tag}: {verdict.status}"
        if verdict.witness:
            line += f" (witness: {', '.join(verdict.witness)})"
        lines.append(line)
    for note in report.notes:
        lines.append(f"note: {note}")
    lines.append(f"result: {'ok' if report.ok else 'VIOLATED'}")
    _emit(args, doc, lines)
    return 0 if report.ok else 1


# -- chains -------------------------------------------------------------------


def _cmd_chains(args) -> int:
    if args.cap < 1:
        raise SetlabError("--cap must be at least 1")
    u = _load_universe(args.file)
    direction = {
        "asc": classifier.ASCENDING,
        "desc": classifier.DESCENDING,
    }[args.dir]
    chain = audit.trace_chain(u, args.start, direction, args.cap)
    doc = {
        "command": "chains",
        "file": args.file,
        "from": args.start,
        "direction": chain.direction,
        "cap": args.cap,
        "nodes": list(chain.nodes),
        "terminated_by": chain.terminated_by,
        "repeated": chain.repeated,
    }
    lines = [
        f"chain {chain.direction} from {args.start} (cap {args.cap}):",
        "  " + " -> ".join(chain.nodes),
    ]
    if chain.repeated is not None:
        lines.append(f"terminated: {chain.terminated_by} (repeated {chain.repeated})")
    else:
        lines.append(f"terminated: {chain.terminated_by}")
    _emit(args, doc, lines)
    return 0


# -- enumerate ----------------------------------------------------------------


def _cmd_enumerate(args) -> int:
    max_n = enumerator.DEFAULT_MAX_N
    override = os.environ.get(ENV_MAX_N)
    if override is not None:
        try:
            max_n = int(override)
        except ValueError:
            raise SetlabError(f"{ENV_MAX_N} must be an integer, got {override!r}")
    try:
        spec = enumerator.EnumSpec(
            n=args.size, filter=args.filter, dedupe=args.dedupe, max_n=max_n
        )
    except ValueError as exc:
        raise SetlabError(str(exc)) from None
    stats = enumerator.enumerate_universes(spec)
    doc = {
        "command": "enumerate",
        "size": args.size,
        "filter": args.filter,
        "dedupe": args.dedupe,
        "total": stats.total,
        "matching": stats.matching,
        "witnesses": list(stats.sample_witnesses),
    }
    lines = [
        f"size {args.size}, filter {args.filter if args.filter else 'none'}, "
        f"dedupe {'on' if args.dedupe else 'off'}",
        f"total: {stats.total}",
        f"matching: {stats.matching}",
    ]
    for i, witness in enumerate(stats.sample_witnesses, start=1):
        lines.append(f"witness {i}:")
        for line in witness.splitlines():
            lines.append(f"  {line}")
    _emit(args, doc, lines)
    return 0


# -- interp -------------------------------------------------------------------


def _demo_model(args) -> interp.BaseModel:
    if args.model is not None:
        with open(args.model, "r", encoding="utf-8") as handle:
            return interp.parse_model(handle.read())
    return interp.default_demo_model()


def _cmd_interp(args) -> int:
    if args.k < 1:
        raise SetlabError("--k must be at least 1")
    if args.demo == "quine":
        if args.model is not None:
            raise SetlabError("--model does not apply to the quine demo")
        return _demo_quine(args)
    if args.demo == "forster":
        model = (
            interp.forster_demo_model()
            if args.model is None
            else _demo_model(args)
        )
        return _demo_forster(args, model)
    return _demo_upperchain(args, _demo_model(args))


def _demo_quine(args) -> int:
    u = interp.quine_universe()
    pred = u.predecessor_in("q")
    checks = [
        ("self-membered(q)", u.self_membered("q")),
        ("predecessor(q) = unique(e)", pred == Unique("e")),
        ("not self-membered(e)", not u.self_membered("e")),
    ]
    ok = all(result for _, result in checks)
    doc = {
        "command": "interp",
        "demo": "quine",
        "universe": dsl.print_universe(u).splitlines(),
        "checks": [{"check": name, "pass": result} for name, result in checks],
        "ok": ok,
    }
    lines = ["demo: quine"]
    for line in dsl.print_universe(u).splitlines():
        lines.append(f"  {line}")
    for name, result in checks:
        lines.append(f"check {name}: {'pass' if result else 'FAIL'}")
    lines.append(f"result: {'ok' if ok else 'FAIL'}")
    _emit(args, doc, lines)
    return 0 if ok else 1


def _demo_forster(args, model: interp.BaseModel) -> int:
    report = interp.verify_forster_counterexample(model)
    doc = {
        "command": "interp",
        "demo": "forster",
        "entities": len(model.entities),
        "universal": report.universal,
        "n": report.n,
        "m": report.m,
        "precondition_met": report.precondition_met,
        "checks": [{"check": name, "pass": ok} for name, ok in report.checks],
        "note": report.note,
        "ok": report.passed,
    }
    lines = [
        "demo: forster",
        f"model: {len(model.base)} base elements, "
        f"{len(model.urelements)} urelements",
        f"universal={report.universal} n={report.n or 'none'} m={report.m or 'none'}",
    ]
    if not report.precondition_met:
        lines.append("precondition: NOT met")
    for name, ok in report.checks:
        lines.append(f"check {name}: {'pass' if ok else 'FAIL'}")
    lines.append(f"note: {report.note}")
    lines.append(f"result: {'ok' if report.passed else 'FAIL'}")
    _emit(args, doc, lines)
    return 0 if report.passed else 1


def _demo_upperchain(args, model: interp.BaseModel) -> int:
    result = interp.upper_chain_interp(model, args.k)
    world = interp.materialize(result.model)
    universal = interp.find_universal(result.model)
    rows = []
    previous = universal
    for node in result.chain.nodes:
        rows.append(
            {
                "entity": node,
                "upper": classifier.is_upper(world, node),
                "member_of_previous": world.is_member(node, previous),
                "distinct_from_previous": node != previous,
            }
        )
        previous = node
    ok = all(
        row["upper"] and row["member_of_previous"] and row["distinct_from_previous"]
        for row in rows
    )
    doc = {
        "command": "interp",
        "demo": "upperchain",
        "k": args.k,
        "universal": universal,
        "nodes": list(result.chain.nodes),
        "steps": rows,
        "ok": ok,
    }
    lines = [
        f"demo: upperchain k={args.k}",
        f"chain descending from {universal}: " + " -> ".join(result.chain.nodes),
    ]
    for row in rows:
        lines.append(
            f"step {row['entity']}: upper={'yes' if row['upper'] else 'no'} "
            f"member-of-previous={'yes' if row['member_of_previous'] else 'no'} "
            f"distinct={'yes' if row['distinct_from_previous'] else 'no'}"
        )
    lines.append(f"result: {'ok' if ok else 'FAIL'}")
    _emit(args, doc, lines)
    return 0 if ok else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setlab",
        description="Finite-model workbench for ill-founded membership universes.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (default: text)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser(
        "check", parents=[common], help="check axiom satisfaction of a universe"
    )
    p_check.add_argument("file", help="universe file")
    p_check.add_argument(
        "--require",
        choices=("successor", "predecessor", "both"),
        default=None,
        help="exit 1 unless the universe satisfies the given axiom(s)",
    )
    p_check.set_defaults(func=_cmd_check)

    p_classify = sub.add_parser(
        "classify", parents=[common], help="classify every element of a universe"
    )
    p_classify.add_argument("file", help="universe file")
    p_classify.set_defaults(func=_cmd_classify)

    p_verify = sub.add_parser(
        "verify", parents=[common], help="run the lemma suite over a universe"
    )
    p_verify.add_argument("file", help="universe file")
    p_verify.set_defaults(func=_cmd_verify)

    p_chains = sub.add_parser(
        "chains", parents=[common], help="trace a successor or predecessor chain"
    )
    p_chains.add_argument("file", help="universe file")
    p_chains.add_argument("--from", dest="start", required=True, help="start element")
    p_chains.add_argument(
        "--dir", choices=("asc", "desc"), required=True, help="chain direction"
    )
    p_chains.add_argument(
        "--cap", type=int, default=32, help="maximum chain length (default: 32)"
    )
    p_chains.set_defaults(func=_cmd_chains)

    p_enum = sub.add_parser(
        "enumerate", parents=[common], help="enumerate all universes of a size"
    )
    p_enum.add_argument("--size", type=int, required=True, help="element count")
    p_enum.add_argument(
        "--filter",
        default=None,
        help="named filter: " + ", ".join(sorted(enumerator.FILTERS)),
    )
    p_enum.add_argument(
        "--dedupe",
        action="store_true",
        help="count one representative per isomorphism class",
    )
    p_enum.set_defaults(func=_cmd_enumerate)

    p_interp = sub.add_parser(
        "interp", parents=[common], help="run an interpreted-membership demo"
    )
    p_interp.add_argument(
        "--demo",
        choices=("forster", "quine", "upperchain"),
        required=True,
        help="which demo to run",
    )
    p_interp.add_argument(
        "--k", type=int, default=3, help="chain length for upperchain (default: 3)"
    )
    p_interp.add_argument(
        "--model",
        default=None,
        help="model file to use instead of the built-in demo model",
    )
    p_interp.set_defaults(func=_cmd_interp)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SetlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
