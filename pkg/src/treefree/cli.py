"""Command-line entry point: classify, blocks, prune, construct, check-free, decode-check, census."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .blocks import BlockPreconditionError, block_decomposition, pointed_code
from .classify import NotATree, NotCritical, census, classify, critical_reduction, universality_verdict
from .construct.builders import InconsistentGlue, InfeasibleTarget, RetryBudgetExhausted
from .construct.recipes import RECIPES, RecipeError, default_recipe
from .construct.rigidity import decoding_probes, default_threads, rigidity_sweep
from .construct.witness import build_witness
from .embed import InconsistentAnchors, find_monomorphism
from .graph import Graph, ParseError, ShapeKind, emit_dot, emit_edge_list, parse_edge_list, tree_shape
from .pruning import choose_minimal_leaf, prune, prune_to_critical

SCHEMA = 1
EXIT_FOUND = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _read(path: str) -> Graph:
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as e:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {e}") from None
    try:
        return parse_edge_list(data)
    except (ParseError, UnicodeDecodeError) as e:
        raise CliError(EXIT_PARSE, f"{path}: {e}") from None


def _digest(path: str) -> str | None:
    if path == "-":
        return None
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps({"schema": SCHEMA, **obj}, sort_keys=True) + "\n")


def _edges(g: Graph) -> list[list[int]]:
    return [list(e) for e in g.sorted_edges()]


# -- commands ---------------------------------------------------------------


def cmd_classify(args) -> int:
    t = _read(args.path)
    try:
        shape = tree_shape(t)
        if shape.variant is ShapeKind.NON_TREE:
            raise NotATree("input is not a tree")
        params = dict.fromkeys(("ell", "v0", "v1", "v_star"))
        out = {
            "order": t.order,
            "max_degree": t.max_degree(),
            "universal": universality_verdict(t).value == "Exists",
            "parameters": params,
        }
        if shape.variant is ShapeKind.PATH:
            out.update(shape="path", case="Path")
        elif shape.variant is ShapeKind.NEAR_PATH:
            out.update(shape="near_path", case="NearPath")
            params["v_star"] = shape.center
        else:
            red, steps = critical_reduction(t)
            c = classify(red)
            out.update(shape="critical" if steps == 0 else "reducible", case=c.label.value, roles=c.roles)
            if steps:
                out.update(pruning_steps=steps, critical_tree=_edges(red))
            if c.profile is not None:
                for k in params:
                    params[k] = getattr(c.profile, k)
    except (NotATree, NotCritical) as e:
        raise CliError(EXIT_PRECONDITION, str(e)) from None
    _emit(out)
    return 0


def cmd_blocks(args) -> int:
    g = _read(args.path)
    try:
        d = block_decomposition(g)
    except BlockPreconditionError as e:
        raise CliError(EXIT_PRECONDITION, str(e)) from None
    blocks = sorted(sorted(list(e) for e in b) for b in d.blocks)
    _emit({"blocks": blocks, "cut_vertices": list(d.cut_list), "block_cut_tree": _edges(d.block_cut_tree)})
    return 0


def cmd_prune(args) -> int:
    g = _read(args.path)
    try:
        if args.to_critical:
            tr = prune_to_critical(g)
            steps = [{"leaf": pointed_code(s.leaf), "order_before": s.before.order, "order_after": s.after.order} for s in tr.steps]
            final, extra = tr.final, {"critical": tr.critical}
        else:
            leaf = choose_minimal_leaf(g)
            final = prune(g, leaf)
            steps = [{"leaf": pointed_code(leaf), "order_before": g.order, "order_after": final.order}]
            extra = {}
    except (BlockPreconditionError, ValueError) as e:
        raise CliError(EXIT_PRECONDITION, str(e)) from None
    if args.output:
        Path(args.output).write_bytes(emit_edge_list(final))
    _emit({"trace": steps, "order": final.order, "edges": _edges(final), **extra})
    return 0


def _witness(args):
    t = _read(args.tree)
    try:
        return t, build_witness(t, default_recipe(args.case), args.length, args.seed)
    except (RecipeError, NotATree, NotCritical, InfeasibleTarget, InconsistentGlue, RetryBudgetExhausted) as e:
        raise CliError(EXIT_PRECONDITION, str(e)) from None


def cmd_construct(args) -> int:
    t, w = _witness(args)
    Path(args.output).write_bytes(emit_edge_list(w.graph))
    if args.roles:
        Path(args.roles).write_text("".join(f"{v} {r}\n" for v, r in enumerate(w.roles)))
    if args.dot:
        Path(args.dot).write_bytes(emit_dot(w.graph, w.role_map()))
    _emit(
        {
            "case": args.case,
            "length": args.length,
            "seed": args.seed,
            "order": w.graph.order,
            "size": w.graph.size,
            "core": len(w.core),
            "margin": w.margin,
        }
    )
    return 0


def _anchor(text: str) -> tuple[int, int]:
    try:
        p, h = text.split("=")
        return int(p), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"anchor must look like p=h, got {text!r}") from None


def cmd_check_free(args) -> int:
    host = _read(args.host)
    pattern = _read(args.pattern)
    try:
        m = find_monomorphism(pattern, host, dict(args.anchor), induced=args.induced)
    except InconsistentAnchors as e:
        raise CliError(EXIT_PRECONDITION, str(e)) from None
    if m is None:
        _emit({"free": True})
        return 0
    _emit({"free": False, "embedding": [f"{p}\u2192{m[p]}" for p in sorted(m)]})
    return EXIT_FOUND


def cmd_decode_check(args) -> int:
    t, w = _witness(args)
    probes = decoding_probes(w, t)
    res = rigidity_sweep(w, t, probes, args.threads)
    _emit(
        {
            "case": args.case,
            "length": args.length,
            "seed": args.seed,
            "probes": len(probes),
            "passed": len(res.passed),
            "failed": len(res.failed),
            "failed_probes": [repr(p) for p in res.failed],
        }
    )
    return 0 if res.ok else EXIT_FOUND


def cmd_census(args) -> int:
    try:
        rep = census(args.order)
    except ValueError as e:
        raise CliError(EXIT_PRECONDITION, str(e)) from None
    out = {
        "order": rep.order,
        "total_trees": rep.total_trees,
        "critical": rep.critical,
        "per_label": rep.per_label,
        "unlabeled": rep.unlabeled,
    }
    if args.output:
        Path(args.output).write_text(json.dumps({"schema": SCHEMA, **out}, sort_keys=True) + "\n")
    _emit(out)
    return 0


# -- argument parsing -------------------------------------------------------


def _threads(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("threads must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treefree", description=__doc__)
    p.add_argument("--report", help="write a run report (inputs, parameters, outcome, wall time) to this file")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="shape, case label and roles of a tree")
    s.add_argument("path")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("blocks", help="blocks and cut vertices of a connected graph")
    s.add_argument("path")
    s.set_defaults(func=cmd_blocks)

    s = sub.add_parser("prune", help="prune one minimal attached leaf, or down to a critical graph")
    s.add_argument("path")
    s.add_argument("--to-critical", action="store_true")
    s.add_argument("-o", "--output", help="write the pruned graph as an edge list")
    s.set_defaults(func=cmd_prune)

    cases = sorted(RECIPES)
    for name, func, hlp in (
        ("construct", cmd_construct, "build a witness truncation"),
        ("decode-check", cmd_decode_check, "run the rigidity probes over the core of a witness"),
    ):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("--case", required=True, choices=cases)
        s.add_argument("--tree", required=True)
        s.add_argument("--length", type=int, required=True)
        s.add_argument("--seed", type=int, default=0)
        s.set_defaults(func=func)
        if name == "construct":
            s.add_argument("-o", "--output", required=True)
            s.add_argument("--roles")
            s.add_argument("--dot")
        else:
            s.add_argument("--threads", type=_threads, default=None)

    s = sub.add_parser("check-free", help="exit 0 if the host has no copy of the pattern, 1 with a map otherwise")
    s.add_argument("--host", required=True)
    s.add_argument("--pattern", required=True)
    s.add_argument("--anchor", type=_anchor, action="append", default=[], help="pin pattern vertex p to host vertex h")
    s.add_argument("--induced", action="store_true")
    s.set_defaults(func=cmd_check_free)

    s = sub.add_parser("census", help="label every tree of a given order")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_census)
    return p


def _report(args, argv, code: int, wall: float) -> None:
    paths = {k: getattr(args, k) for k in ("path", "tree", "host", "pattern") if getattr(args, k, None)}
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in paths and k not in ("func", "report") and v is not None
    }
    rep = {
        "schema": SCHEMA,
        "command": args.command,
        "argv": list(argv),
        "inputs": {k: {"path": p, "sha256": _digest(p)} for k, p in paths.items()},
        "parameters": params,
        "seed": getattr(args, "seed", None),
        "outcome": code,
        "wall_time": round(wall, 3),
    }
    Path(args.report).write_text(json.dumps(rep, sort_keys=True, default=str) + "\n")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", "absent") is None:
        args.threads = default_threads()
    start = time.perf_counter()
    try:
        code = args.func(args)
    except CliError as e:
        print(f"treefree: {e}", file=sys.stderr)
        code = e.code
    if args.report:
        _report(args, argv, code, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
