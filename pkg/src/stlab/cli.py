"""Command-line front end.

Exit codes: 0 on success, 1 on usage errors, 2 when an enumeration cap was
hit (partial results are still printed).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .algebra import CLUSTER, TILTING, chain_from_odd, green_sequences
from .core import tuple_str
from .errors import ResourceLimitError, StLabError
from .even import boolean_embedding_even, embedding_ground_set
from .poset import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_SECONDS,
    SCHEMA,
    boolean_embedding_odd,
    check_lattice,
    element_label,
    embedding_ground_set_odd,
    enumerate_poset,
    hasse_diagram,
    order_diff,
    poset_to_dot,
    poset_to_json,
)

log = logging.getLogger("stlab")

EXIT_OK, EXIT_USAGE, EXIT_CAP = 0, 1, 2

# (c, delta) cells of the order-equality and lattice tables for C(c+delta, delta)
DEFAULT_CELLS = tuple([(4, k) for k in range(4, 17)] + [(5, k) for k in range(4, 9)] + [(6, 4)])
DESK_CELLS = ((4, 4), (4, 5), (4, 6), (4, 7), (4, 8), (5, 4), (5, 5), (5, 6), (6, 4))
TIMEOUT_MARK = "—"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    m: Optional[int] = None
    delta: Optional[int] = None
    n: Optional[int] = None
    d: Optional[int] = None
    frame: str = CLUSTER
    order: int = 1
    fmt: str = "table"
    max_elements: int = DEFAULT_MAX_ELEMENTS
    max_seconds: float = DEFAULT_MAX_SECONDS
    threads: int = 1
    output: Optional[str] = None
    cells: tuple = DEFAULT_CELLS

    def __post_init__(self):
        if self.max_elements <= 0 or self.max_seconds <= 0:
            raise UsageError("caps must be positive")
        if self.threads <= 0:
            raise UsageError("--threads must be positive")

    def need(self, *names):
        missing = [f"--{n}" for n in names if getattr(self, n) is None]
        if missing:
            raise UsageError(f"{self.command} needs {' '.join(missing)}")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _poset(cfg: RunConfig):
    cfg.need("m", "delta")
    return enumerate_poset(cfg.m, cfg.delta, cfg.max_elements, cfg.max_seconds)


def cmd_enumerate(cfg: RunConfig) -> str:
    P = _poset(cfg)
    if cfg.fmt == "json":
        return _dump_json(poset_to_json(P))
    if cfg.fmt == "dot":
        return poset_to_dot(P)
    lines = [f"S({P.m},{P.delta}): {len(P)} triangulations, {len(P.hasse1)} flips"]
    lines += [f"{i}\t{element_label(T)}" for i, T in enumerate(P.elements)]
    return "\n".join(lines) + "\n"


def cmd_hasse(cfg: RunConfig) -> str:
    P = _poset(cfg)
    edges = P.hasse1 if cfg.order == 1 else hasse_diagram(P, 2)
    if cfg.fmt == "json":
        return _dump_json({"schema": SCHEMA, "m": P.m, "delta": P.delta, "order": cfg.order,
                           "elements": [element_label(T) for T in P.elements],
                           "edges": [list(e) for e in edges]})
    if cfg.fmt == "dot":
        if cfg.order == 1:
            return poset_to_dot(P)
        lines = [f'digraph "S{cfg.order}({P.m},{P.delta})" {{', "  rankdir=BT;"]
        lines += [f'  n{i} [label="{element_label(T)}"];' for i, T in enumerate(P.elements)]
        lines += [f"  n{i} -> n{j};" for i, j in edges]
        return "\n".join(lines + ["}"]) + "\n"
    return "".join(f"{element_label(P.elements[i])} -> {element_label(P.elements[j])}\n" for i, j in edges)


def cmd_compare_orders(cfg: RunConfig) -> str:
    P = _poset(cfg)
    diff = order_diff(P)
    witness = None
    if not diff.equal:
        i, j = (diff.only_second or diff.only_first)[0]
        witness = [element_label(P.elements[i]), element_label(P.elements[j])]
    if cfg.fmt == "json":
        return _dump_json({"schema": SCHEMA, "m": P.m, "delta": P.delta, "elements": len(P),
                           "equal": diff.equal, "only_order1": len(diff.only_first),
                           "only_order2": len(diff.only_second), "witness": witness})
    if diff.equal:
        return "equal\n"
    side = "order 2" if diff.only_second else "order 1"
    return f"unequal\nfirst pair related only in {side}: {witness[0]} <= {witness[1]}\n"


def cmd_check_lattice(cfg: RunConfig) -> str:
    P = _poset(cfg)
    res = check_lattice(P, cfg.order)
    witness = None
    if res.witness:
        witness = [element_label(P.elements[k]) for k in res.witness]
    if cfg.fmt == "json":
        return _dump_json({"schema": SCHEMA, "m": P.m, "delta": P.delta, "order": cfg.order,
                           "lattice": res.is_lattice, "missing": res.missing, "witness": witness})
    if res.is_lattice:
        return "lattice\n"
    return f"not a lattice\nno {res.missing} for: {witness[0]} | {witness[1]}\n"


def cmd_embed(cfg: RunConfig) -> str:
    P = _poset(cfg)
    if P.is_even:
        ground = embedding_ground_set(P.m, P.d)
        images = [boolean_embedding_even(T) for T in P.elements]
    else:
        ground = embedding_ground_set_odd(P.m, P.d)
        images = [boolean_embedding_odd(T) for T in P.elements]
    injective = len(set(images)) == len(images)
    if cfg.fmt == "json":
        return _dump_json({"schema": SCHEMA, "m": P.m, "delta": P.delta,
                           "ground_set": [list(A) for A in ground], "injective": injective,
                           "images": [[list(A) for A in sorted(im)] for im in images]})
    lines = [f"ground set ({len(ground)}): " + ",".join(tuple_str(A) for A in ground),
             f"injective: {'yes' if injective else 'no'}"]
    for T, im in zip(P.elements, images):
        lines.append(f"{element_label(T)}\t-> {{{','.join(tuple_str(A) for A in sorted(im))}}}")
    return "\n".join(lines) + "\n"


def cmd_green(cfg: RunConfig) -> str:
    cfg.need("n", "d")
    if cfg.frame == CLUSTER:
        pairs = green_sequences(cfg.n, cfg.d, cfg.max_elements, cfg.max_seconds)
    else:
        P = enumerate_poset(cfg.n + 2 * cfg.d, 2 * cfg.d + 1, cfg.max_elements, cfg.max_seconds)
        pairs = [(T, chain_from_odd(T)) for T in P.elements]
    if cfg.fmt == "json":
        return _dump_json({"schema": SCHEMA, "n": cfg.n, "d": cfg.d, "frame": cfg.frame,
                           "classes": [dict(triangulation=T.to_json(), chain=c.to_json()) for T, c in pairs]})
    lines = [f"{len(pairs)} classes ({cfg.frame} frame, n={cfg.n}, d={cfg.d})"]
    for T, c in pairs:
        moves = " ".join(f"{tuple_str(A)}>{tuple_str(B)}" for A, B in c.mutations)
        lines.append(f"[{element_label(T)}] {len(c)} mutations: {moves}")
    return "\n".join(lines) + "\n"


def _table_cell(c: int, delta: int, cfg: RunConfig) -> dict:
    m = c + delta
    cell = {"c": c, "delta": delta, "m": m}
    try:
        P = enumerate_poset(m, delta, cfg.max_elements, cfg.max_seconds)
    except ResourceLimitError as exc:
        cell.update(status="timeout", partial_count=exc.partial_count)
        return cell
    res = check_lattice(P, 1)
    cell.update(
        status="done",
        elements=len(P),
        orders_equal=order_diff(P).equal,
        lattice1=res.is_lattice,
        witness=[element_label(P.elements[k]) for k in res.witness] if res.witness else None,
        missing=res.missing,
    )
    return cell


def _grid(cells: list, key: str, title: str) -> list:
    cs = sorted({x["c"] for x in cells})
    ds = sorted({x["delta"] for x in cells})
    at = {(x["c"], x["delta"]): x for x in cells}
    lines = [title, "c\\delta " + "".join(f"{d:>4}" for d in ds)]
    for c in cs:
        row = f"{c:<8}"
        for d in ds:
            x = at.get((c, d))
            if x is None:
                mark = ""
            elif x["status"] != "done":
                mark = TIMEOUT_MARK
            else:
                mark = "✓" if x[key] else "✗"
            row += f"{mark:>4}"
        lines.append(row.rstrip())
    return lines


def cmd_tables(cfg: RunConfig) -> tuple:
    cells = [_table_cell(c, delta, cfg) for c, delta in cfg.cells]
    capped = any(x["status"] != "done" for x in cells)
    if cfg.fmt == "json":
        return _dump_json({"schema": SCHEMA, "cells": cells}), capped
    lines = _grid(cells, "orders_equal", "S1(c+delta,delta) = S2(c+delta,delta)")
    lines.append("")
    lines += _grid(cells, "lattice1", "S1(c+delta,delta) is a lattice")
    lines.append("")
    for x in cells:
        if x["status"] == "done":
            note = f"C({x['m']},{x['delta']}): {x['elements']} triangulations"
            if x["witness"]:
                note += f"; no {x['missing']} for {x['witness'][0]} | {x['witness'][1]}"
        else:
            note = f"C({x['m']},{x['delta']}): cap reached after {x['partial_count']} triangulations"
        lines.append(note)
    return "\n".join(lines) + "\n", capped


COMMANDS = {
    "enumerate": cmd_enumerate,
    "hasse": cmd_hasse,
    "compare-orders": cmd_compare_orders,
    "check-lattice": cmd_check_lattice,
    "embed": cmd_embed,
    "green": cmd_green,
    "tables": cmd_tables,
}


def _parse_cells(text: str) -> tuple:
    try:
        cells = tuple(tuple(int(v) for v in item.split(":")) for item in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad cell list {text!r}; use c:delta,c:delta,...") from None
    if any(len(x) != 2 or x[0] < 1 or x[1] < 1 for x in cells):
        raise argparse.ArgumentTypeError(f"bad cell list {text!r}")
    return cells


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, help="number of vertices")
    common.add_argument("--delta", type=int, help="dimension of the cyclic polytope")
    common.add_argument("--n", type=int, help="algebra parameter n of A_n^d")
    common.add_argument("--d", type=int, help="algebra parameter d of A_n^d")
    common.add_argument("--frame", choices=[TILTING, CLUSTER], default=CLUSTER)
    common.add_argument("--order", type=int, choices=[1, 2], default=1)
    common.add_argument("--format", dest="fmt", choices=["json", "dot", "table"], default="table")
    common.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    common.add_argument("--max-seconds", type=float, default=DEFAULT_MAX_SECONDS)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--output", metavar="PATH", help="write to PATH instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="stlab", description="Triangulations of cyclic polytopes and higher Stasheff-Tamari orders.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "enumerate": "list all triangulations of C(m, delta)",
        "hasse": "cover relation of the first or second order",
        "compare-orders": "test whether the two orders coincide",
        "check-lattice": "test the lattice property of one order",
        "embed": "Boolean embedding images of all triangulations",
        "green": "one d-maximal green sequence per equivalence class",
        "tables": "reproduce the order-equality and lattice tables",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        if name == "tables":
            p.add_argument("--cells", type=_parse_cells, default=DEFAULT_CELLS,
                           help="comma-separated c:delta cells (default: every cell of both tables)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = RunConfig(
            command=args.command, m=args.m, delta=args.delta, n=args.n, d=args.d, frame=args.frame,
            order=args.order, fmt=args.fmt, max_elements=args.max_elements, max_seconds=args.max_seconds,
            threads=args.threads, output=args.output, cells=getattr(args, "cells", DEFAULT_CELLS),
        )
        _kernels.set_threads(cfg.threads)
        code = EXIT_OK
        result = COMMANDS[cfg.command](cfg)
        if isinstance(result, tuple):
            result, capped = result
            code = EXIT_CAP if capped else EXIT_OK
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"stlab: error: {exc}\n")
    except ResourceLimitError as exc:
        sys.stderr.write(f"stlab: {exc} (partial count {exc.partial_count})\n")
        return EXIT_CAP
    except StLabError as exc:
        parser.exit(EXIT_USAGE, f"stlab: error: {exc}\n")
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(result)
    else:
        sys.stdout.write(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
