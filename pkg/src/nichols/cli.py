"""``nichols`` command line: Cartan matrices, reflections, roots, exchange graphs.

Input diagrams are JSON documents::

    {"theta": 2, "ambient": {"N": 6, "p": 7},
     "vertices": [2, 2], "edges": [{"i": 1, "j": 2, "exp": 4}]}

Exponents refer to a fixed primitive N-th root of unity; vertices are 1-based
in ``edges``.  Errors go to stderr as ``error[CODE]: message``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence, TextIO

from .braiding import GDDiagram
from .cartan import NotIFinite, cartan_matrix
from .cartan_graph import (
    AdmitsAllReflectionsFailure,
    LocalCartanGraph,
    PointBudgetExceeded,
    RootBudgetExceeded,
    build_graph,
    enumerate_roots,
    exchange_graph,
    to_dot,
)
from .classification import BadParameter, emit_root, load_rows, verify_all
from .cyclotomic import Ambient
from .neighborhoods import RankMismatch, good_neighborhood, goodnei_exists
from .reflection import CaseGap, reflect_diagram

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- documents


def load_document(doc: Any) -> GDDiagram:
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    try:
        theta = doc["theta"]
        amb = doc["ambient"]
        vertices = doc["vertices"]
        edges = doc.get("edges", [])
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from exc
    if not isinstance(theta, int) or theta < 1:
        raise InputError("theta must be a positive integer")
    try:
        ambient = Ambient(int(amb["N"]), int(amb["p"]))
    except (KeyError, TypeError) as exc:
        raise InputError("ambient needs integer fields N and p") from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    N = ambient.N

    def exponent(x: Any, where: str) -> int:
        if not isinstance(x, int) or isinstance(x, bool):
            raise InputError(f"{where}: exponent must be an integer")
        if not 0 <= x < N:
            raise InputError(f"{where}: exponent {x} not reduced mod {N}")
        return x

    if not isinstance(vertices, list) or len(vertices) != theta:
        raise InputError(f"expected {theta} vertex exponents")
    vs = [ambient(exponent(x, f"vertex {k + 1}")) for k, x in enumerate(vertices)]
    seen = set()
    es = []
    for e in edges:
        try:
            i, j, x = e["i"], e["j"], e["exp"]
        except (KeyError, TypeError) as exc:
            raise InputError("edges are objects with fields i, j, exp") from exc
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= theta):
            raise InputError(f"edge ({i}, {j}): need 1 <= i < j <= {theta}")
        if (i, j) in seen:
            raise InputError(f"edge ({i}, {j}) listed twice")
        seen.add((i, j))
        es.append((i - 1, j - 1, ambient(exponent(x, f"edge ({i}, {j})"))))
    return GDDiagram.from_labels(vs, es)


def emit_document(d: GDDiagram) -> dict:
    return {
        "theta": d.theta,
        "ambient": {"N": d.ambient.N, "p": d.ambient.p},
        "vertices": [v.exp for v in d.vertex],
        "edges": [{"i": i + 1, "j": j + 1, "exp": x.exp} for i, j, x in d.edges()],
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def _read_input(path: Optional[str], stdin: TextIO) -> GDDiagram:
    try:
        if path and path != "-":
            with open(path, encoding="utf-8") as fh:
                raw = fh.read()
        else:
            raw = stdin.read()
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return load_document(doc)


# ---------------------------------------------------------------- commands


def _cmd_cartan(args, out: TextIO, stdin: TextIO) -> int:
    d = _read_input(args.input, stdin)
    out.write(cartan_matrix(d).to_text() + "\n")
    return EXIT_OK


def _cmd_reflect(args, out: TextIO, stdin: TextIO) -> int:
    d = _read_input(args.input, stdin)
    if not 1 <= args.at <= d.theta:
        raise InputError(f"--at must lie in 1..{d.theta}")
    out.write(dumps(emit_document(reflect_diagram(d, args.at - 1))))
    return EXIT_OK


def _cmd_roots(args, out: TextIO, stdin: TextIO) -> int:
    d = _read_input(args.input, stdin)
    g = build_graph(d)
    rs = enumerate_roots(g)
    for v in rs.positive(g.base):
        out.write(emit_root(v) + "\n")
    return EXIT_OK


def _cmd_exchange(args, out: TextIO, stdin: TextIO) -> int:
    d = _read_input(args.input, stdin)
    g = build_graph(d)
    dot = to_dot(g, exchange_graph(g))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
        ex = exchange_graph(g)
        out.write(f"{len(ex.vertices)} vertices, {len(ex.edges)} edges written to {args.dot}\n")
    else:
        out.write(dot)
    return EXIT_OK


def _cmd_neighborhood(args, out: TextIO, stdin: TextIO) -> int:
    d = _read_input(args.input, stdin)
    if args.any_point:
        hit = goodnei_exists(build_graph(d))
        if hit is None:
            out.write("none\n")
        else:
            x, w = hit
            out.write(f"P{x} {w.describe()}\n")
        return EXIT_OK
    w = good_neighborhood(LocalCartanGraph(d), 0)
    out.write(("none" if w is None else w.describe()) + "\n")
    return EXIT_OK


def _cmd_fixture(args, out: TextIO, stdin: TextIO) -> int:
    from .classification import instantiate_row, smallest_admissible_prime

    rows = load_rows()
    if args.row not in rows:
        raise InputError(f"unknown row {args.row}; rows are {sorted(rows)}")
    row = rows[args.row]
    p = args.prime or smallest_admissible_prime(row)
    ds = instantiate_row(row, p)
    if not 1 <= args.index <= len(ds):
        raise InputError(f"row {args.row} has diagrams 1..{len(ds)}")
    out.write(dumps(emit_document(ds[args.index - 1])))
    return EXIT_OK


def _cmd_verify(args, out: TextIO, stdin: TextIO) -> int:
    rows = [args.row] if args.row is not None else None
    if rows and rows[0] not in load_rows():
        raise InputError(f"unknown row {args.row}")
    full = verify_all(p=args.prime, rows=rows)
    if args.json:
        payload = {
            "rows": [r.to_dict() for r in full.reports],
            "passed": all(r.passed for r in full.reports),
        }
        if rows is None:
            payload["coverage"] = full.coverage
            payload["uncovered"] = full.uncovered
            payload["passed"] = full.passed
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        for r in full.reports:
            out.write(r.to_text() + "\n")
        if rows is None:
            for label, hit in full.coverage.items():
                out.write(f"{label}: {'rows ' + ','.join(map(str, hit)) if hit else 'not realized'}\n")
    rejected = [r.row_id for r in full.reports if "parameters" in r.checks]
    if rejected:
        raise BadParameter(f"characteristic {args.prime} is excluded for rows {rejected}")
    ok = all(r.passed for r in full.reports) and (rows is not None or full.passed)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nichols", description=__doc__.splitlines()[0].replace("``", ""))
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--in", dest="input", metavar="FILE", help="diagram JSON (default: stdin)")
        return p

    with_input(sub.add_parser("cartan", help="print the Cartan matrix")).set_defaults(run=_cmd_cartan)
    p = with_input(sub.add_parser("reflect", help="reflect the diagram at a vertex"))
    p.add_argument("--at", type=int, required=True, metavar="I")
    p.set_defaults(run=_cmd_reflect)
    with_input(sub.add_parser("roots", help="positive roots at the input point")).set_defaults(run=_cmd_roots)
    p = with_input(sub.add_parser("exchange-graph", help="exchange graph as DOT"))
    p.add_argument("--dot", metavar="OUT", help="write DOT here instead of stdout")
    p.set_defaults(run=_cmd_exchange)
    p = with_input(sub.add_parser("check-neighborhood", help="good A_theta neighborhood witness"))
    p.add_argument("--any-point", action="store_true", help="search every point of the finite graph")
    p.set_defaults(run=_cmd_neighborhood)
    p = sub.add_parser("fixture", help="emit a diagram of a table row as JSON")
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--index", type=int, default=1)
    p.add_argument("--prime", type=int)
    p.set_defaults(run=_cmd_fixture)
    p = sub.add_parser("verify-tables", help="verify the classification tables")
    p.add_argument("--row", type=int)
    p.add_argument("--prime", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_cmd_verify)
    return ap


ERROR_CODES = (
    (InputError, "E_INPUT"),
    (BadParameter, "E_PARAMETER"),
    (AdmitsAllReflectionsFailure, "E_NOT_I_FINITE"),
    (NotIFinite, "E_NOT_I_FINITE"),
    (PointBudgetExceeded, "E_POINT_BUDGET"),
    (RootBudgetExceeded, "E_ROOT_BUDGET"),
    (RankMismatch, "E_RANK"),
    (CaseGap, "E_CASE_GAP"),
)


def run(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None, stdin: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.run(args, out, stdin)
    except tuple(cls for cls, _ in ERROR_CODES) as exc:
        code = next(c for cls, c in ERROR_CODES if isinstance(exc, cls))
        err.write(f"error[{code}]: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
