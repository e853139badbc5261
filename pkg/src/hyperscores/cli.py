"""Command-line front end.

Subcommands: check, realize, verify, convert, enumerate, random. Machine
output is a single JSON document on stdout (or a plain-text rendering with
``--format text``); human notes go to stderr. Exit codes: 0 valid/success,
1 predicate-invalid, 2 input error, 3 realization gap, 4 resource limit.

Documents use 1-based [part, index] vertex pairs to match the usual notation;
everything is 0-based internally.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import jsonschema

from .combinatorics import CapacityError
from .criteria import (
    CheckResult,
    check_losing_lists,
    check_score_lists,
    losing_to_scores,
    scores_to_losing,
)
from .model import (
    Arc,
    Hypertournament,
    ScoreLists,
    Shape,
    VertexId,
    losing_scores,
    scores,
    selection_vertices,
    validate,
)
from .oracle import (
    BudgetExceededError,
    DEFAULT_ASSIGNMENT_BUDGET,
    achievable_losing_lists,
    random_hypertournament,
)
from .realize import (
    InfeasibleError,
    InvalidListsError,
    RealizationGapError,
    realize_flow,
    realize_inductive,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_GAP = 3
EXIT_RESOURCE = 4

_INT_LIST = {"type": "array", "items": {"type": "integer"}}
_VERTEX = {
    "type": "array",
    "items": {"type": "integer"},
    "minItems": 2,
    "maxItems": 2,
}

INSTANCE_SCHEMA = {
    "type": "object",
    "required": ["k", "n", "alpha", "kind", "lists"],
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "n": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "alpha": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "kind": {"enum": ["losing", "score"]},
        "lists": {"type": "array", "items": _INT_LIST},
    },
}

WITNESS_SCHEMA = {
    "type": "object",
    "required": ["k", "n", "alpha"],
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "n": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "alpha": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "kind": {"enum": ["losing", "score"]},
        "lists": {"type": "array", "items": _INT_LIST},
        "arcs": {"type": "array", "items": {"type": "array", "items": _VERTEX}},
        "losers": {"type": "array", "items": _VERTEX},
    },
}


class InputError(Exception):
    """Malformed or inconsistent input document."""


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _parse_text_instance(text: str) -> dict:
    """Plain-text alternative: header "k n... alpha... [kind]", one list per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("empty document")
    header = lines[0].split()
    try:
        k = int(header[0])
    except ValueError as exc:
        raise InputError(f"bad header {lines[0]!r}: first token must be k") from exc
    kind = "losing"
    rest = header[1:]
    if rest and rest[-1] in ("losing", "score"):
        kind = rest[-1]
        rest = rest[:-1]
    if len(rest) != 2 * k:
        raise InputError(f"header needs {2 * k} sizes after k, got {len(rest)}")
    try:
        n = [int(x) for x in rest[:k]]
        alpha = [int(x) for x in rest[k:]]
        lists = [[int(x) for x in ln.split()] for ln in lines[1 : 1 + k]]
    except ValueError as exc:
        raise InputError(f"non-integer token: {exc}") from exc
    if len(lines) != 1 + k:
        raise InputError(f"expected {k} list lines after the header, got {len(lines) - 1}")
    return {"k": k, "n": n, "alpha": alpha, "kind": kind, "lists": lists}


def _read_document(path: str, schema: dict) -> dict:
    text = _read_text(path)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from exc
    else:
        doc = _parse_text_instance(text)
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise InputError(f"document fails the schema: {exc.message}") from exc
    return doc


def _shape_from_doc(doc: dict) -> Shape:
    if doc["k"] != len(doc["n"]) or doc["k"] != len(doc["alpha"]):
        raise InputError("k must equal the lengths of n and alpha")
    try:
        return Shape(tuple(doc["n"]), tuple(doc["alpha"]))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _lists_from_doc(doc: dict, shape: Shape, sort: bool) -> ScoreLists:
    lists = [list(lst) for lst in doc["lists"]]
    if len(lists) != shape.k or any(len(lst) != shape.n[i] for i, lst in enumerate(lists)):
        raise InputError("lists must match the shape: one list of n_i entries per part")
    if sort:
        lists = [sorted(lst) for lst in lists]
    try:
        return ScoreLists(doc["kind"], tuple(tuple(lst) for lst in lists))
    except ValueError as exc:
        raise InputError(f"{exc} (pass --sort to sort input lists)") from exc


def _load_instance(args) -> tuple[Shape, ScoreLists]:
    doc = _read_document(args.instance, INSTANCE_SCHEMA)
    shape = _shape_from_doc(doc)
    return shape, _lists_from_doc(doc, shape, args.sort)


def _shape_from_flags(args) -> Shape:
    try:
        n = tuple(int(x) for x in args.n.split(","))
        alpha = tuple(int(x) for x in args.alpha.split(","))
    except ValueError as exc:
        raise InputError(f"bad shape flags: {exc}") from exc
    try:
        return Shape(n, alpha)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _vertex_out(v: VertexId) -> list[int]:
    return [v.part + 1, v.index + 1]


def _vertex_in(pair) -> VertexId:
    return VertexId(int(pair[0]) - 1, int(pair[1]) - 1)


def _instance_doc(shape: Shape, lists: ScoreLists) -> dict:
    return {
        "k": shape.k,
        "n": list(shape.n),
        "alpha": list(shape.alpha),
        "kind": lists.kind,
        "lists": [list(lst) for lst in lists.lists],
    }


def _check_doc(kind: str, result: CheckResult) -> dict:
    violation = None
    if result.witness_violation is not None:
        violation = {
            "prefix": list(result.witness_violation.prefix),
            "lhs": result.witness_violation.lhs,
            "rhs": result.witness_violation.rhs,
        }
    return {
        "kind": kind,
        "valid": result.valid,
        "equality_at_full": result.equality_at_full,
        "violation": violation,
    }


def _emit(doc: dict, args, text_renderer=None) -> None:
    if getattr(args, "format", "json") == "text" and text_renderer is not None:
        print(text_renderer(doc))
    else:
        print(json.dumps(doc))


def _text_instance(doc: dict) -> str:
    header = [str(doc["k"])] + [str(x) for x in doc["n"]] + [str(x) for x in doc["alpha"]]
    header.append(doc["kind"])
    lines = [" ".join(header)]
    lines += [" ".join(str(x) for x in lst) for lst in doc["lists"]]
    return "\n".join(lines)


def _text_check(doc: dict) -> str:
    if doc["valid"]:
        return "valid"
    v = doc["violation"]
    return f"invalid at p={tuple(v['prefix'])}: lhs={v['lhs']} rhs={v['rhs']}"


def _text_witness(doc: dict) -> str:
    lines = [_text_instance(doc)]
    if "arcs" in doc:
        for arc in doc["arcs"]:
            lines.append(" ".join(f"{p}.{i}" for p, i in arc))
    elif "losers" in doc:
        lines.append(" ".join(f"{p}.{i}" for p, i in doc["losers"]))
    return "\n".join(lines)


def cmd_check(args) -> int:
    shape, lists = _load_instance(args)
    fn = check_losing_lists if lists.kind == "losing" else check_score_lists
    result = fn(shape, lists, jobs=args.jobs)
    _emit(_check_doc(lists.kind, result), args, _text_check)
    return EXIT_OK if result.valid else EXIT_INVALID


def cmd_realize(args) -> int:
    shape, lists = _load_instance(args)
    converted = False
    if lists.kind == "score":
        result = check_score_lists(shape, lists)
        if not result.valid:
            _emit(_check_doc("score", result), args, _text_check)
            return EXIT_INVALID
        try:
            lists = scores_to_losing(shape, lists)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        converted = True
        _note("score lists converted to losing lists for realization")
    else:
        result = check_losing_lists(shape, lists)
        if not result.valid:
            _emit(_check_doc("losing", result), args, _text_check)
            return EXIT_INVALID

    realizer = realize_inductive if args.method == "inductive" else realize_flow
    try:
        M = realizer(shape, lists)
    except (RealizationGapError, InfeasibleError) as exc:
        _note(f"error: {exc}")
        return EXIT_GAP
    except InvalidListsError as exc:
        _emit(_check_doc("losing", exc.result), args, _text_check)
        return EXIT_INVALID

    doc = _instance_doc(shape, lists)
    doc["method"] = args.method
    if converted:
        doc["converted_from_score"] = True
    if args.emit == "losers":
        doc["losers"] = [_vertex_out(arc.loser) for arc in M.arcs]
    else:
        doc["arcs"] = [[_vertex_out(v) for v in arc.order] for arc in M.arcs]
    _emit(doc, args, _text_witness)
    return EXIT_OK


def _hypertournament_from_doc(doc: dict, shape: Shape) -> Hypertournament:
    if "arcs" in doc:
        arcs = tuple(
            Arc(tuple(_vertex_in(pair) for pair in arc)) for arc in doc["arcs"]
        )
        return Hypertournament(shape, arcs)
    if "losers" in doc:
        sels = selection_vertices(shape)
        arcs = []
        for rank, pair in enumerate(doc["losers"]):
            if rank >= len(sels):
                break
            loser = _vertex_in(pair)
            sel = sels[rank]
            arcs.append(Arc(tuple(v for v in sel if v != loser) + (loser,)))
        return Hypertournament(shape, tuple(arcs))
    raise InputError("witness document needs an 'arcs' or 'losers' field")


def cmd_verify(args) -> int:
    doc = _read_document(args.witness, WITNESS_SCHEMA)
    shape = _shape_from_doc(doc)
    M = _hypertournament_from_doc(doc, shape)
    violations = validate(M)
    out = {
        "structure_valid": not violations,
        "violations": [
            {"selection_rank": v.selection_rank, "kind": v.kind, "detail": v.detail}
            for v in violations
        ],
        "arc_count": len(M.arcs),
    }
    lists_match = None
    if not violations:
        losing = losing_scores(M)
        score = scores(M)
        out["losing_lists"] = [list(lst) for lst in losing.lists]
        out["score_lists"] = [list(lst) for lst in score.lists]
        out["losing_total"] = losing.total()
        out["score_total"] = score.total()
        if "lists" in doc and "kind" in doc:
            recomputed = losing if doc["kind"] == "losing" else score
            lists_match = [list(lst) for lst in recomputed.lists] == doc["lists"]
    out["lists_match"] = lists_match

    def renderer(d):
        if not d["structure_valid"]:
            return "\n".join(
                f"violation rank={v['selection_rank']} {v['kind']}: {v['detail']}"
                for v in d["violations"]
            )
        match = {None: "n/a", True: "yes", False: "NO"}[d["lists_match"]]
        return (
            f"structure ok; losing={d['losing_lists']} score={d['score_lists']} "
            f"totals={d['losing_total']}/{d['score_total']} lists match: {match}"
        )

    _emit(out, args, renderer)
    if violations or lists_match is False:
        return EXIT_INVALID
    return EXIT_OK


def cmd_convert(args) -> int:
    shape, lists = _load_instance(args)
    try:
        if lists.kind == "losing":
            converted = losing_to_scores(shape, lists)
        else:
            converted = scores_to_losing(shape, lists)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(_instance_doc(shape, converted), args, _text_instance)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    shape = _shape_from_flags(args)
    ach = achievable_losing_lists(shape, budget=args.budget)
    lists = sorted(ach.lists)
    if args.kind == "score":
        lists = sorted(
            losing_to_scores(shape, ScoreLists("losing", tup)).lists for tup in ach.lists
        )
    doc = {
        "k": shape.k,
        "n": list(shape.n),
        "alpha": list(shape.alpha),
        "kind": args.kind,
        "count": len(lists),
        "assignments": ach.assignment_count,
        "lists": [[list(lst) for lst in tup] for tup in lists],
    }

    def renderer(d):
        lines = [f"{d['count']} achievable {d['kind']} list tuples"]
        lines += [" | ".join(" ".join(str(x) for x in lst) for lst in tup) for tup in d["lists"]]
        return "\n".join(lines)

    _emit(doc, args, renderer)
    return EXIT_OK


def cmd_random(args) -> int:
    shape = _shape_from_flags(args)
    M = random_hypertournament(shape, args.seed, args.mode)
    losing = losing_scores(M)
    doc = _instance_doc(shape, losing)
    doc["seed"] = args.seed
    doc["mode"] = args.mode
    doc["score_lists"] = [list(lst) for lst in scores(M).lists]
    if args.emit == "losers":
        doc["losers"] = [_vertex_out(arc.loser) for arc in M.arcs]
    else:
        doc["arcs"] = [[_vertex_out(v) for v in arc.order] for arc in M.arcs]
    _emit(doc, args, _text_witness)
    return EXIT_OK


def _add_format(sub) -> None:
    sub.add_argument("--format", choices=["json", "text"], default="json",
                     help="output format (default json)")


def _add_shape_flags(sub) -> None:
    sub.add_argument("--n", required=True, help="comma-separated part sizes, e.g. 2,2")
    sub.add_argument("--alpha", required=True, help="comma-separated arities, e.g. 1,1")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperscores",
        description="Check, realize, verify, convert, and enumerate score lists "
        "of multipartite hypertournaments.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="decide whether an instance's lists are realizable")
    p.add_argument("instance", help="instance file (JSON or text), '-' for stdin")
    p.add_argument("--sort", action="store_true", help="sort unsorted input lists")
    p.add_argument("--jobs", type=int, default=1, help="partition the check across N processes")
    _add_format(p)
    p.set_defaults(handler=cmd_check)

    p = subs.add_parser("realize", help="construct a witness hypertournament")
    p.add_argument("instance", help="instance file (JSON or text), '-' for stdin")
    p.add_argument("--method", choices=["inductive", "flow"], default="inductive")
    p.add_argument("--emit", choices=["losers", "arcs"], default="arcs")
    p.add_argument("--sort", action="store_true", help="sort unsorted input lists")
    _add_format(p)
    p.set_defaults(handler=cmd_realize)

    p = subs.add_parser("verify", help="validate a witness and recompute its lists")
    p.add_argument("witness", help="witness file (JSON), '-' for stdin")
    _add_format(p)
    p.set_defaults(handler=cmd_verify)

    p = subs.add_parser("convert", help="convert between losing and score lists")
    p.add_argument("instance", help="instance file (JSON or text), '-' for stdin")
    p.add_argument("--sort", action="store_true", help="sort unsorted input lists")
    _add_format(p)
    p.set_defaults(handler=cmd_convert)

    p = subs.add_parser("enumerate", help="enumerate the achievable lists of a shape")
    _add_shape_flags(p)
    p.add_argument("--kind", choices=["losing", "score"], default="losing")
    p.add_argument("--budget", type=int, default=DEFAULT_ASSIGNMENT_BUDGET,
                   help="assignment enumeration budget")
    _add_format(p)
    p.set_defaults(handler=cmd_enumerate)

    p = subs.add_parser("random", help="generate a seeded random hypertournament")
    _add_shape_flags(p)
    p.add_argument("--seed", type=int, default=0, help="64-bit seed")
    p.add_argument("--mode", choices=["loser-only", "full-permutation"], default="loser-only")
    p.add_argument("--emit", choices=["losers", "arcs"], default="losers")
    _add_format(p)
    p.set_defaults(handler=cmd_random)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InputError as exc:
        _note(f"error: {exc}")
        return EXIT_INPUT
    except (CapacityError, BudgetExceededError) as exc:
        _note(f"error: {exc}")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
