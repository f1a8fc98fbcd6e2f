"""``kaprekar`` command line: every analysis as a batch command with text, JSON, CSV or DOT output."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable, Optional, Sequence

from .core import KaprekarError, iterate, make_number, orbit, params
from .dynamics import build_graph, export_dot, numeric_cycle
from .equivalence import SET_KIND, group_classify, partition, r_equiv, set_maps, stabilize
from .parametric import apply_f, classify
from .symbolic import derive_k_functions, solve_fixed_points

MAX_WIDTH = 16


class UsageError(Exception):
    """Bad input from the user; reported with exit status 2."""


def _dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _csv(rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _width(args, text: Optional[str] = None) -> int:
    w = args.width
    if w is None:
        if text is None:
            raise UsageError("--width is required for this command")
        w = len(text.strip())
    if not 2 <= w <= MAX_WIDTH:
        raise UsageError(f"width must be between 2 and {MAX_WIDTH}, got {w}")
    return w


def _formats(args, allowed: Sequence[str]) -> str:
    fmt = args.format or allowed[0]
    if fmt not in allowed:
        raise UsageError(f"{args.command} supports --format {', '.join(allowed)}; got {fmt}")
    return fmt


# -- commands --------------------------------------------------------------


def cmd_step(args) -> str:
    fmt = _formats(args, ("text", "json", "csv"))
    w = _width(args, args.number)
    n = make_number(args.number, w)
    if args.count is not None:
        if args.count < 0:
            raise UsageError("--count must be >= 0")
        seq = [iterate(n, 0)]
        for _ in range(args.count):
            seq.append(iterate(seq[-1], 1))
        terminal = None
    else:
        o = orbit(n, args.limit)
        seq = list(o.steps)
        terminal = o.terminal
    rows = [{"step": i, "number": str(m), "params": str(params(m))} for i, m in enumerate(seq)]
    if fmt == "json":
        return _dump_json({"width": w, "start": str(n), "steps": rows, "terminal": terminal})
    if fmt == "csv":
        return _csv([["step", "number", "params"]] + [[r["step"], r["number"], r["params"]] for r in rows])
    lines = [f"{r['step']:>3}  {r['number']}  params {r['params']}" for r in rows]
    if terminal:
        lines.append(f"# {terminal}")
    return "\n".join(lines) + "\n"


def cmd_params(args) -> str:
    fmt = _formats(args, ("text", "json"))
    w = _width(args, args.number)
    alpha = params(make_number(args.number, w))
    data = {
        "width": w,
        "number": args.number.rjust(w, "0"),
        "params": str(alpha),
        "family": str(classify(alpha)),
        "image": str(apply_f(alpha)),
    }
    if fmt == "json":
        return _dump_json(data)
    return f"params {data['params']}  family {data['family']}  image {data['image']}\n"


def cmd_derive(args) -> str:
    fmt = _formats(args, ("text", "json", "csv"))
    w = _width(args)
    cat = derive_k_functions(w, n_jobs=args.jobs)
    if fmt == "json":
        return _dump_json(cat.to_json())
    if fmt == "csv":
        rows = [["id", "aliases", "family", "map", "domain"]]
        for fn in cat.functions:
            rows.append([
                fn.id,
                "/".join(fn.aliases),
                str(fn.family),
                ", ".join(map(str, fn.output)),
                "; ".join(str(c) for c in fn.domain.extra_constraints()),
            ])
        return _csv(rows)
    counts = cat.family_counts()
    raw = cat.raw_family_counts()
    lines = [f"width {w}: {len(cat)} functions"]
    lines.append("distinct maps: " + ", ".join(f"{k}:{v}" for k, v in counts.items()))
    lines.append(
        "tie-inclusive orderings: "
        + ", ".join(f"{k}:{'-' if v is None else v}" for k, v in raw.items())
    )
    lines += [fn.describe() for fn in cat.functions]
    return "\n".join(lines) + "\n"


def cmd_graph(args) -> str:
    fmt = _formats(args, ("dot", "json", "text"))
    g = build_graph(_width(args), n_jobs=args.jobs)
    if fmt == "dot":
        return export_dot(g)
    if fmt == "json":
        return _dump_json(g.to_json())
    lines = []
    for c in g.components:
        lines.append(f"tree {c.name}: {c.size} classes, cycle {' -> '.join(str(g.nodes[i]) for i in c.cycle)}")
    return "\n".join(lines) + "\n"


def _cycle_data(w: int, jobs: int) -> list[dict]:
    g = build_graph(w, n_jobs=jobs)
    out = []
    for c in g.components:
        cyc = g.cycle(c)
        out.append({
            "tree": c.name,
            "size": c.size,
            "length": cyc.length,
            "members": [str(m) for m in cyc.members],
            "numbers": [str(n) for n in numeric_cycle(cyc)],
        })
    return out


def cmd_cycles(args) -> str:
    fmt = _formats(args, ("text", "json"))
    w = _width(args)
    data = _cycle_data(w, args.jobs)
    if fmt == "json":
        return _dump_json({"width": w, "cycles": data})
    lines = []
    for c in data:
        kind = "constant" if c["length"] == 1 else f"{c['length']}-cycle"
        lines.append(f"tree {c['tree']} ({c['size']} classes): {kind} {' -> '.join(c['members'])}")
        lines.append(f"    numbers {' -> '.join(c['numbers'])}")
    return "\n".join(lines) + "\n"


def cmd_constants(args) -> str:
    fmt = _formats(args, ("text", "json"))
    w = _width(args)
    fps = solve_fixed_points(w)
    data = [{"params": str(fp.alpha_e), "number": str(fp.n_e), "function": fp.witness_fn} for fp in fps]
    if fmt == "json":
        return _dump_json({"width": w, "constants": data})
    if not data:
        return f"width {w}: no fixed points\n"
    return "".join(f"{d['number']}  params {d['params']}  via {d['function']}\n" for d in data)


def cmd_partition(args) -> str:
    fmt = _formats(args, ("text", "json", "csv"))
    w = _width(args)
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    p = partition(w, args.order)
    if fmt == "json":
        return _dump_json(p.to_json())
    if fmt == "csv":
        rows = [["block", "image", "class"]]
        for i, (b, img) in enumerate(zip(p.blocks, p.images)):
            rows += [[i, str(img), str(m)] for m in b]
        return _csv(rows)
    lines = [f"width {w}, order {args.order}: {len(p)} blocks"]
    for b, img in zip(p.blocks, p.images):
        lines.append(f"{' '.join(map(str, b))}  -> {img}")
    return "\n".join(lines) + "\n"


def cmd_stabilize(args) -> str:
    fmt = _formats(args, ("text", "json"))
    w = _width(args)
    g = build_graph(w, n_jobs=args.jobs)
    trees = []
    for c in g.components:
        u, final = stabilize(w, [g.nodes[i] for i in c.nodes])
        trees.append({
            "tree": c.name,
            "order": u,
            "blocks": [[str(m) for m in b] for b in final.blocks],
        })
    u_all, whole = stabilize(w)
    data = {"width": w, "order": u_all, "block_count": len(whole), "trees": trees}
    if fmt == "json":
        return _dump_json(data)
    lines = [f"width {w}: stationary from order {u_all}, {len(whole)} blocks"]
    lines.append("per tree: " + "/".join(str(len(t["blocks"])) for t in trees))
    for t in trees:
        lines.append(f"tree {t['tree']}: order {t['order']}, {len(t['blocks'])} blocks")
    return "\n".join(lines) + "\n"


def cmd_group(args) -> str:
    fmt = _formats(args, ("text", "json", "csv"))
    if args.set_name not in SET_KIND:
        raise UsageError(f"unknown set {args.set_name!r}; expected one of {', '.join(SET_KIND)}")
    w = _width(args)
    if w // 2 != 3:
        raise UsageError(f"sets I, II and III are defined for widths 6 and 7, got {w}")
    table = group_classify(set_maps(args.set_name, w))
    if fmt == "json":
        return _dump_json(table.to_json())
    if fmt == "csv":
        return table.to_csv()
    head = f"set {args.set_name} at width {w}: {table.group}"
    head += f" (closed={str(table.closed).lower()}, abelian={str(table.abelian).lower()})"
    return head + "\n" + table.to_csv()


def cmd_equiv(args) -> str:
    fmt = _formats(args, ("text", "json"))
    w = _width(args, max(args.first, args.second, key=len))
    m, n = make_number(args.first, w), make_number(args.second, w)
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    same = r_equiv(m, n, args.order)
    data = {
        "width": w,
        "order": args.order,
        "first": str(m),
        "second": str(n),
        "equivalent": same,
        "images": [str(iterate(m, args.order)), str(iterate(n, args.order))],
    }
    if fmt == "json":
        return _dump_json(data)
    rel = "R" if same else "not R"
    return f"{m} {rel}{args.order} {n}  ({data['images'][0]} / {data['images'][1]})\n"


def cmd_verify(args) -> str:
    from .checks import run_all

    fmt = _formats(args, ("text", "json"))
    results = run_all()
    args._failed = any(not r.passed for r in results)
    if fmt == "json":
        return _dump_json([
            {"number": r.number, "title": r.title, "passed": r.passed, "details": r.details}
            for r in results
        ])
    lines = []
    for r in results:
        lines.append(r.line())
        if args.verbose or not r.passed:
            lines += [f"      {d}" for d in r.details]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria pass")
    return "\n".join(lines) + "\n"


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", "--width", type=int, help="digit width")
    common.add_argument("--format", choices=("json", "csv", "dot", "text"))
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    parser = argparse.ArgumentParser(prog="kaprekar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("step", cmd_step, "iterate the routine from a number")
    p.add_argument("number")
    p.add_argument("--count", type=int, help="number of steps (default: until a repeat)")
    p.add_argument("--limit", type=int, default=1000, help="step cap when --count is absent")
    p = add("params", cmd_params, "parameters, family and image of a number")
    p.add_argument("number")
    add("derive", cmd_derive, "derive the catalog of parametric maps")
    add("graph", cmd_graph, "class graph (DOT, JSON or a tree summary)")
    add("cycles", cmd_cycles, "attractors of every tree, parametric and numeric")
    add("constants", cmd_constants, "fixed points of the routine")
    p = add("partition", cmd_partition, "order-r equivalence classes")
    p.add_argument("-r", "--order", type=int, default=2)
    add("stabilize", cmd_stabilize, "order at which the partition stops changing")
    p = add("group", cmd_group, "product table of an equivalence set")
    p.add_argument("set_name", metavar="SET", help="I, II or III")
    p = add("equiv", cmd_equiv, "test m R_r n for two numbers")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-r", "--order", type=int, default=2)
    p = add("verify-paper", cmd_verify, "run the reproduction checks")
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if getattr(args, "limit", 1) is not None and getattr(args, "limit", 1) < 1:
        print("error: --limit must be >= 1", file=sys.stderr)
        return 2
    try:
        text = args.func(args)
    except (UsageError, KaprekarError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if getattr(args, "_failed", False) else 0


if __name__ == "__main__":
    sys.exit(main())
