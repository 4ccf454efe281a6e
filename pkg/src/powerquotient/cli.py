"""Command-line front end.

    powerquotient components --group sym --n 5 --graph quotient
    powerquotient verify-tables --rows 2..7
    powerquotient check-hom --group sym --n 6 --map t --orbit-sn
    powerquotient closed-form --n 101
    powerquotient export --group sym --n 4 --out s4/

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import re
import sys
import tempfile

from .config import CapExceeded, Caps
from .counting import closed_form_sn, run_procedure_sn
from .graphcore import (
    GraphMap,
    is_complete_map,
    is_homomorphism,
    is_locally_surjective,
    is_orbit_map,
    is_pseudo_covering,
    is_tame,
    is_two_homomorphism,
    read_graph,
    read_map,
    components,
)
from .permutations import (
    Permutation,
    enumerate_group,
    fx_automorphism,
    parse_group_file,
    symmetric_group,
)
from .powergraphs import build_bundle, export_bundle, symmetric_order_graph, symmetric_type_graph

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def split_generators(text: str) -> list[str]:
    """Split ``"(1 3),(1 2 3 4)"`` on commas or semicolons outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in ",;" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out if s.strip()]


def parse_rows(text: str) -> list[int]:
    """``"2..7"``, ``"2,5,8"`` or a mix of both."""
    rows = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(\d+)\.\.(\d+)", part)
        if m:
            rows.extend(range(int(m.group(1)), int(m.group(2)) + 1))
        elif part.isdigit():
            rows.append(int(part))
        else:
            raise UsageError(f"bad row spec {part!r}")
    return rows


def caps_from_args(args) -> Caps:
    over = {}
    if getattr(args, "max_order", None) is not None:
        over["max_order"] = args.max_order
    if getattr(args, "max_explicit_order", None) is not None:
        over["max_explicit_order"] = args.max_explicit_order
    if getattr(args, "max_degree", None) is not None:
        over["max_degree"] = args.max_degree
    try:
        return Caps.from_env(**over)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def group_from_args(args, caps: Caps):
    if args.n is None:
        raise UsageError("--n/--degree is required")
    gens = []
    n = args.n
    if args.gens_file:
        with open(args.gens_file) as fh:
            file_n, gens = parse_group_file(fh.read())
        if file_n != n:
            raise UsageError(f"group file has degree {file_n}, not {n}")
    if args.gens:
        gens = gens + [Permutation.parse(s, n) for s in split_generators(args.gens)]
    if args.group == "gen" and not gens:
        raise UsageError("--group gen needs --gens or --gens-file")
    if args.group != "gen" and gens:
        raise UsageError("generators only make sense with --group gen")
    try:
        return enumerate_group(args.group, n, gens, caps)
    except CapExceeded:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def emit(args, text: str) -> None:
    """Write the finished output once, atomically when going to a file."""
    if not text.endswith("\n"):
        text += "\n"
    if not args.out or args.command == "export":
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(args.out))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".powerquotient-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, args.out)


def _census_text(census: dict) -> str:
    return ";".join(f"{k}:{v}" for k, v in census.items())


def cmd_components(args) -> int:
    caps = caps_from_args(args)
    G = group_from_args(args, caps)
    bundle = build_bundle(G, caps)
    rep = bundle.components_of(args.graph)
    rows = [{"component_id": i, "size": c.size, "is_complete": c.is_complete,
             "census": {str(k): v for k, v in c.census.items()}}
            for i, c in enumerate(rep.components)]
    if args.format == "json":
        text = json.dumps({"group": G.name, "graph": args.graph, "count": rep.count,
                           "components": rows}, indent=2)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["graph", "component_id", "size", "is_complete", "census"])
        for r in rows:
            w.writerow([args.graph, r["component_id"], r["size"],
                        str(r["is_complete"]).lower(), _census_text(r["census"])])
        text = buf.getvalue()
    else:
        lines = [f"{G.name} {args.graph}: {rep.count} components"]
        shown = rows if args.verbose else rows[:20]
        for r in shown:
            lines.append(f"  #{r['component_id']} size={r['size']} complete={r['is_complete']} "
                         f"{_census_text(r['census'])}")
        if len(shown) < len(rows):
            lines.append(f"  ... {len(rows) - len(shown)} more (use -v)")
        text = "\n".join(lines)
    emit(args, text)
    return EXIT_OK


def _bfs_row(n: int, caps: Caps, rng: random.Random):
    bundle = build_bundle(symmetric_group(n, caps), caps)
    c0 = bundle.quotient_components.count
    # the randomized procedure must reproduce the same count
    proc = run_procedure_sn(n, rng=rng, caps=caps, bundle=bundle)
    if proc.total != c0:
        raise RuntimeError(f"procedure total {proc.total} differs from BFS {c0} at n = {n}")
    return c0, bundle.type_components.count, bundle.order_components.count


def _graph_row(n: int):
    """Type and order graph counts only; the count of ``P~_0`` is left to the closed form."""
    t = components(symmetric_type_graph(n)).count
    o = components(symmetric_order_graph(n)).count
    return None, t, o


def cmd_verify_tables(args) -> int:
    caps = caps_from_args(args)
    rows = parse_rows(args.rows) if args.rows else list(range(2, 14))
    if any(n < 2 for n in rows):
        raise UsageError("rows start at n = 2")
    expected = {}
    if args.expected:
        with open(args.expected) as fh:
            raw = json.load(fh)
        expected = {int(k): tuple(int(x) for x in v) for k, v in raw.items()}
    rng = random.Random(args.seed)
    lines, first_diff = [], None
    for n in rows:
        want = expected.get(n)
        if want is None:
            cf = closed_form_sn(n)
            want = (cf.c0, cf.c0_type, cf.c0_order)
        if n <= 9 or args.bfs_large:
            got, how = _bfs_row(n, caps, rng), "bfs"
        else:
            got, how = _graph_row(n), "closed-form"
        ok = True
        for name, w, g in zip(("c0", "type", "order"), want, got):
            if g is not None and g != w:
                ok = False
                if first_diff is None:
                    first_diff = f"n={n} {name}: expected {w}, got {g}"
        shown = [str(g) if g is not None else f"({w})" for w, g in zip(want, got)]
        lines.append(f"n={n:<3} c0={shown[0]} type={shown[1]} order={shown[2]} "
                     f"[{how}] {'PASS' if ok else 'FAIL'}")
    if args.format == "json":
        text = json.dumps({"rows": lines, "ok": first_diff is None, "first_diff": first_diff}, indent=2)
    else:
        tail = "PASS" if first_diff is None else f"FAIL first difference: {first_diff}"
        text = "\n".join(lines + [tail])
    emit(args, text)
    return EXIT_OK if first_diff is None else EXIT_MISMATCH


def _verdicts(m: GraphMap, orbit_gens=None) -> dict:
    out = {"hom": is_homomorphism(m)}
    if out["hom"]:
        out.update({
            "2-hom": is_two_homomorphism(m),
            "complete": is_complete_map(m),
            "tame": is_tame(m),
            "locally surjective": is_locally_surjective(m),
            "pseudo-covering": is_pseudo_covering(m),
        })
        if orbit_gens is not None:
            out["orbit"] = is_orbit_map(m, orbit_gens)
    return out


def cmd_check_hom(args) -> int:
    if args.map_file:
        if not (args.source and args.target):
            raise UsageError("--map-file needs --source and --target graph files")
        try:
            with open(args.source) as fh:
                src = read_graph(fh.read())
            with open(args.target) as fh:
                tgt = read_graph(fh.read())
            with open(args.map_file) as fh:
                m = read_map(fh.read(), src, tgt)
        except (ValueError, KeyError, IndexError) as exc:
            raise UsageError(f"malformed graph or map file: {exc}") from None
        verdicts = _verdicts(m)
    else:
        caps = caps_from_args(args)
        G = group_from_args(args, caps)
        bundle = build_bundle(G, caps)
        m = bundle.map(args.map)
        xs = []
        if args.orbit_sn:
            n = G.degree
            xs = [Permutation.from_cycles([(1, 2)], n), Permutation.from_cycles([tuple(range(1, n + 1))], n)]
        if args.orbit_gens:
            xs += [Permutation.parse(s, G.degree) for s in split_generators(args.orbit_gens)]
        orbit_gens = None
        if xs:
            if args.map not in ("t", "o"):
                raise UsageError("orbit generators act on the quotient graph; use --map t or o")
            try:
                orbit_gens = [fx_automorphism(x, bundle.quotient.labels) for x in xs]
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        verdicts = _verdicts(m, orbit_gens)
    if args.format == "json":
        text = json.dumps(verdicts, indent=2)
    else:
        text = "\n".join(f"{k}: {str(v).lower()}" for k, v in verdicts.items())
    emit(args, text)
    return EXIT_OK


def cmd_closed_form(args) -> int:
    if args.n is None or args.n < 2:
        raise UsageError("closed form needs --n >= 2")
    r = closed_form_sn(args.n)
    if args.format == "json":
        text = json.dumps(r.to_json(), indent=2)
    elif args.format == "csv":
        text = f"n,regime,c0,c0_type,c0_order\n{r.n},{r.regime},{r.c0},{r.c0_type},{r.c0_order}"
    else:
        text = (f"n = {r.n}\nregime = {r.regime}\nc0 = {r.c0}\n"
                f"type graph components = {r.c0_type}\norder graph components = {r.c0_order}")
    emit(args, text)
    return EXIT_OK


def cmd_export(args) -> int:
    if not args.out:
        raise UsageError("export needs --out DIRECTORY")
    caps = caps_from_args(args)
    bundle = build_bundle(group_from_args(args, caps), caps)
    for path in export_bundle(bundle, args.out):
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write output to this file (directory for export)")
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; computations run in one thread")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--max-order", type=int, default=None,
                        help="largest group order to enumerate (env POWERGRAPH_MAX_ORDER)")
    common.add_argument("--max-explicit-order", type=int, default=None)
    common.add_argument("--max-degree", type=int, default=None)

    grp = argparse.ArgumentParser(add_help=False)
    grp.add_argument("--group", choices=("sym", "alt", "gen"), default="sym")
    grp.add_argument("--n", "--degree", dest="n", type=int, default=None)
    grp.add_argument("--gens", help='generators in cycle notation, e.g. "(1 3),(1 2 3 4)"')
    grp.add_argument("--gens-file", help="file with 'degree n' then one generator per line")

    p = argparse.ArgumentParser(prog="powerquotient",
                                description="Power graphs of permutation groups and their component counts.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("components", parents=[common, grp], help="count components of one graph")
    s.add_argument("--graph", choices=("explicit", "quotient", "type", "order"), default="quotient")
    s.add_argument("-v", "--verbose", action="store_true", help="list every component")
    s.set_defaults(func=cmd_components)

    s = sub.add_parser("verify-tables", parents=[common], help="recompute the component tables for S_n")
    s.add_argument("--rows", help='rows to check, e.g. "2..7" or "2,8,9" (default 2..13)')
    s.add_argument("--expected", help="JSON file {n: [c0, type, order]} overriding the built-in values")
    s.add_argument("--bfs-large", action="store_true",
                   help="run BFS for n >= 10 too (needs raised caps and several GB)")
    s.set_defaults(func=cmd_verify_tables)

    s = sub.add_parser("check-hom", parents=[common, grp], help="verdicts for a graph map")
    s.add_argument("--map", choices=("pi", "t", "o", "oT"), default="t")
    s.add_argument("--orbit-sn", action="store_true",
                   help="check the orbit property against conjugation by (1 2) and (1 2 ... n)")
    s.add_argument("--orbit-gens", help="conjugating permutations for the orbit check")
    s.add_argument("--source", help="source graph file")
    s.add_argument("--target", help="target graph file")
    s.add_argument("--map-file", help="map file between --source and --target")
    s.set_defaults(func=cmd_check_hom)

    s = sub.add_parser("closed-form", parents=[common], help="exact counts for S_n from the degree")
    s.add_argument("--n", "--degree", dest="n", type=int, required=True)
    s.set_defaults(func=cmd_closed_form)

    s = sub.add_parser("export", parents=[common, grp], help="write graphs, maps and a summary")
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
