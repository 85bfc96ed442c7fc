"""Command-line front end: ``polyalg invariants|classify|generate|render|verify``.

Input is either a grid of ``#`` (cell) and ``.`` (empty) characters, where the
last line is y = 0, or a JSON document ``{"cells": [[i, j], ...]}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import __version__
from .algebra import (
    BudgetExceeded,
    IntPolynomial,
    NotFound,
    find_groebner_lex_order,
    hilbert_series_oracle,
    inner_two_minors,
    is_groebner_basis,
)
from .classify import (
    ClassifyError,
    NoDecomposition,
    NotApplicable,
    classify_basic,
    closed_path_sequence,
    find_l_configurations,
    has_zig_zag_walk,
    holes,
    is_thin,
    iter_lc_decompositions,
    iter_ladder3_decompositions,
    iter_w_configurations,
)
from .enumerate import closed_paths, generate
from .geometry import Cell, Disconnected, EmptyCollection, GeometryError, Polyomino
from .hilbert import (
    HilbertError,
    HasZigZag,
    OutOfScopeClass,
    all_blocks_rank_three,
    closed_path_invariants,
    formula_h,
    hp_q_relation_check,
    ladder3_rook_relations_hold,
    lc_rook_relations_hold,
    oracle_invariants,
    simple_thin_invariants,
    weakly_closed_invariants,
)
from .rook import is_rook_configuration, max_rook_configuration, rook_number, rook_polynomial, s_property
from .symmetry import canonical_form

SCHEMA_VERSION = 1
DEFAULT_CAP = 14

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DISAGREE = 3
EXIT_BUDGET = 4


class InputError(ValueError):
    code = "input"


class InputSyntaxError(InputError):
    code = "syntax"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DuplicateCell(InputError):
    code = "duplicate-cell"


class CapExceeded(InputError):
    code = "cap-exceeded"


class UnknownFormat(InputError):
    code = "unknown-format"


# stable machine-readable codes for errors raised by the library
ERROR_CODES = [
    (Disconnected, "disconnected"),
    (EmptyCollection, "empty"),
    (GeometryError, "geometry"),
    (HasZigZag, "has-zig-zag"),
    (OutOfScopeClass, "out-of-scope"),
    (HilbertError, "hilbert"),
    (NoDecomposition, "no-decomposition"),
    (NotApplicable, "not-applicable"),
    (ClassifyError, "classify"),
]


def error_code(exc: BaseException) -> str:
    if isinstance(exc, InputError):
        return exc.code
    for cls, code in ERROR_CODES:
        if isinstance(exc, cls):
            return code
    return "error"


# --------------------------------------------------------------------------
# input


def _parse_json(text: str) -> list[tuple[int, int]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputSyntaxError(e.msg, e.lineno, e.colno) from None
    if not isinstance(doc, dict) or "cells" not in doc or not isinstance(doc["cells"], list):
        raise InputSyntaxError('expected an object with a "cells" list', 1, 1)
    cells = []
    for k, c in enumerate(doc["cells"]):
        ok = isinstance(c, list) and len(c) == 2 and all(type(v) is int for v in c)
        if not ok:
            raise InputSyntaxError(f"cell #{k} is not a pair of integers", 1, 1)
        cells.append((c[0], c[1]))
    return cells


def _parse_grid(text: str) -> list[tuple[int, int]]:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    rows = len(lines)
    cells = []
    for k, line in enumerate(lines):
        for col, ch in enumerate(line.rstrip()):
            if ch == "#":
                cells.append((col, rows - 1 - k))
            elif ch != ".":
                raise InputSyntaxError(f"unexpected character {ch!r}", k + 1, col + 1)
    return cells


def parse_input(text: str) -> Polyomino:
    """Polyomino from grid text or JSON, translated so its bounding box starts at 0."""
    cells = _parse_json(text) if text.lstrip().startswith("{") else _parse_grid(text)
    if len(set(cells)) != len(cells):
        dup = next(c for c in cells if cells.count(c) > 1)
        raise DuplicateCell(f"cell {list(dup)} is listed twice")
    return Polyomino(cells).translated()


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# --------------------------------------------------------------------------
# output


def to_document(P) -> dict:
    return {"cells": [list(c) for c in sorted(P.cells)]}


def render_ascii(P) -> str:
    x0, y0, x1, y1 = P.bounding_box
    lines = []
    for y in range(y1, y0 - 1, -1):
        lines.append("".join("#" if (x, y) in P.cells else "." for x in range(x0, x1 + 1)))
    return "\n".join(lines)


def render_tikz(P, rooks: Sequence = ()) -> str:
    out = ["\\begin{tikzpicture}[scale=0.6]"]
    for i, j in sorted(P.cells):
        out.append(f"  \\draw ({i},{j}) rectangle ({i + 1},{j + 1});")
    for i, j in sorted(rooks):
        out.append(f"  \\fill ({i + 0.5},{j + 0.5}) circle (0.25);")
    out.append("\\end{tikzpicture}")
    return "\n".join(out)


def render_svg(P, rooks: Sequence = (), unit: int = 20) -> str:
    x0, y0, x1, y1 = P.bounding_box
    w, h = (x1 - x0 + 1) * unit, (y1 - y0 + 1) * unit
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w + 2}" height="{h + 2}" '
        f'viewBox="-1 -1 {w + 2} {h + 2}">'
    ]
    for i, j in sorted(P.cells):
        x, y = (i - x0) * unit, (y1 - j) * unit  # svg y grows downward
        out.append(
            f'  <rect x="{x}" y="{y}" width="{unit}" height="{unit}" '
            f'fill="#dddddd" stroke="black" stroke-width="1"/>'
        )
    for i, j in sorted(rooks):
        cx, cy = (i - x0) * unit + unit // 2, (y1 - j) * unit + unit // 2
        out.append(f'  <circle cx="{cx}" cy="{cy}" r="{unit // 4}" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out)


def _parse_rooks(text: Optional[str], P) -> list[Cell]:
    if not text:
        return []
    if text == "max":
        return max_rook_configuration(P)
    rooks = []
    for part in text.split(";"):
        try:
            i, j = (int(v) for v in part.split(","))
        except ValueError:
            raise InputError(f"bad rook position {part!r}; expected i,j") from None
        rooks.append(Cell(i, j))
    if any(c not in P.cells for c in rooks):
        raise InputError("a rook sits outside the polyomino")
    if not is_rook_configuration(P, rooks):
        raise InputError("rooks attack each other")
    return rooks


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, **payload}
        print(json.dumps(doc, indent=2))
    else:
        print(text)


def _poly(p: Optional[IntPolynomial]) -> str:
    return "-" if p is None else str(p)


# --------------------------------------------------------------------------
# commands


def _decomposition_summary(P) -> dict:
    """First decomposition of each kind, with labels as [x, y] pairs."""

    def labels(d):
        return {k: list(v) for k, v in sorted(d.labels.items())}

    out = {}
    for name, it in (
        ("lc", iter_lc_decompositions),
        ("w", iter_w_configurations),
        ("ladder3", iter_ladder3_decompositions),
    ):
        dec = next(iter(it(P)), None)
        if dec is None:
            out[name] = None
            continue
        entry = {"transform": dec.transform, "labels": labels(dec)}
        if hasattr(dec, "case"):
            entry["case"] = dec.case
        entry["derived"] = {k: [list(c) for c in v.sorted_cells] for k, v in dec.derived.items()}
        out[name] = entry
    return out


def cmd_classify(args) -> int:
    P = parse_input(_read(args.file))
    report = classify_basic(P)
    decs = _decomposition_summary(P) if report.is_closed_path else {}
    d = report.to_dict()
    lines = [f"{k}: {v}" for k, v in d.items() if k != "holes"]
    lines.insert(3, f"holes: {len(report.holes)}")
    for k, v in decs.items():
        lines.append(f"{k} decomposition: " + ("none" if v is None else f"transform {v['transform']}"))
    _emit(args, {"classification": d, "decompositions": decs}, "\n".join(lines))
    return EXIT_OK


def compute_invariants(P, method: str, oracle_only: bool = False):
    use_formula = method in ("formula", "all")
    use_oracle = method in ("oracle", "all")
    if closed_path_sequence(P) is not None:
        if has_zig_zag_walk(P):
            if oracle_only:
                return oracle_invariants(P), "closed-path-with-zig-zag"
            raise HasZigZag("closed path has a zig-zag walk; rerun with --oracle-only")
        return closed_path_invariants(P, use_formula, use_oracle), "prime-closed-path"
    if not holes(P) and is_thin(P):
        return simple_thin_invariants(P, use_oracle), "simple-thin"
    if oracle_only:
        return oracle_invariants(P), "other"
    raise OutOfScopeClass("no formula for this class; rerun with --oracle-only")


def cmd_invariants(args) -> int:
    P = parse_input(_read(args.file))
    report, kind = compute_invariants(P, args.method, args.oracle_only)
    d = report.to_dict()
    text = "\n".join(
        [
            f"class: {kind}",
            f"h (rook): {_poly(report.h_rook)}",
            f"h (formula): {_poly(report.h_formula)}" + (f"  [{report.formula}]" if report.formula else ""),
            f"h (oracle): {_poly(report.h_oracle)}",
            f"krull dim: {report.krull_dim}",
            f"regularity: {report.regularity}",
            f"gorenstein: {report.gorenstein}",
            f"methods agree: {report.methods_agree}",
        ]
        + [f"note: {n}" for n in report.notes]
    )
    _emit(args, {"class": kind, "invariants": d}, text)
    return EXIT_OK if report.methods_agree else EXIT_DISAGREE


def cmd_generate(args) -> int:
    if args.max_rank > args.cap:
        raise CapExceeded(f"--max-rank {args.max_rank} exceeds the cap {args.cap}")
    shapes = generate(
        args.max_rank,
        closed_only=args.closed_paths,
        skip_zig_zag=args.no_zigzag,
        count=args.count,
        seed=args.seed,
    )
    if args.json:
        for P in shapes:
            print(json.dumps(to_document(P)))
    elif shapes:
        print("\n\n".join(render_ascii(P) for P in shapes))
    return EXIT_OK


def cmd_render(args) -> int:
    P = parse_input(_read(args.file))
    rooks = _parse_rooks(args.rooks, P)
    fmt = args.format or "ascii"
    if fmt == "ascii":
        if rooks:
            raise InputError("rook markers need --tikz or --svg")
        text = render_ascii(P)
    elif fmt == "tikz":
        text = render_tikz(P, rooks)
    elif fmt == "svg":
        text = render_svg(P, rooks)
    else:
        raise UnknownFormat(f"unknown format {fmt!r}")
    if args.json:
        _emit(args, {"format": fmt, "payload": text, "rooks": [list(c) for c in rooks]}, text)
    else:
        print(text)
    return EXIT_OK


# --- verify ----------------------------------------------------------------


def check_instance(cells, inject: Optional[str] = None, groebner: bool = True) -> list[str]:
    """All corpus checks for one closed path; returns the names of failed checks."""
    P = Polyomino(cells)
    failed = []
    has_l = bool(find_l_configurations(P))
    zz = has_zig_zag_walk(P)
    report = classify_basic(P, zig_zag=False)
    prime = report.is_prime_closed_path
    if prime == zz:
        failed.append("zig-zag-equivalence")
    if not prime:
        return failed

    h_rook = rook_polynomial(P, see_through=inject == "attack-flip")
    sign = +1 if inject == "formula-sign" else -1
    h_form, _ = formula_h(P, _p3_sign=sign)
    hp = hilbert_series_oracle(P)
    if not (h_rook == h_form == hp.numerator):
        failed.append("three-way-agreement")
    dim = len(P.vertices) - P.rank
    if hp.denom_exponent != dim:
        failed.append("krull-dimension")
    if h_rook.degree != rook_number(P) or hp.numerator.degree != h_rook.degree:
        failed.append("regularity")
    s_prop, _ = s_property(P, closed_path=True)
    if not (h_rook.is_palindromic() == all_blocks_rank_three(P) == s_prop):
        failed.append("gorenstein-equivalence")

    if has_l:
        if not all(lc_rook_relations_hold(P, d) for d in iter_lc_decompositions(P)):
            failed.append("rook-relations-lc")
    else:
        if not all(ladder3_rook_relations_hold(P, k) for k in iter_ladder3_decompositions(P)):
            failed.append("rook-relations-ladder3")
        for w in iter_w_configurations(P):
            if not hp_q_relation_check(P, w, hilbert_series_oracle):
                failed.append("hp-q-relation")
                break
            if not weakly_closed_invariants(w.derived["Q"], w).methods_agree:
                failed.append("weakly-closed-h")
                break
            if groebner:
                anchors_in, anchors_out = w.anchors()
                try:
                    order = find_groebner_lex_order(P, anchors_in, anchors_out)
                    if not is_groebner_basis(inner_two_minors(P), order):
                        failed.append("groebner-s-pairs")
                except NotFound:
                    failed.append("groebner-s-pairs")
                break
    return failed


def _check_star(job):
    cells, inject, groebner = job
    return cells, check_instance(cells, inject, groebner)


def cmd_verify(args) -> int:
    corpus = [P for P in closed_paths(args.max_rank)]
    if args.no_l_max_rank:
        corpus += closed_paths(args.no_l_max_rank, min_rank=args.max_rank + 1, forbid_l=True)
    if args.corpus:
        with open(args.corpus, encoding="utf-8") as fh:
            corpus = [parse_input(line) for line in fh if line.strip()]
    jobs = [(tuple(sorted(canonical_form(P.cells))), args.inject, not args.skip_groebner) for P in corpus]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_check_star, jobs))
    else:
        results = [_check_star(j) for j in jobs]
    results.sort(key=lambda r: (len(r[0]), r[0]))

    failures = [(cells, f) for cells, f in results if f]
    if args.dump and failures:
        os.makedirs(args.dump, exist_ok=True)
        for k, (cells, names) in enumerate(failures):
            path = os.path.join(args.dump, f"failure_{k:04d}.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump({"cells": [list(c) for c in cells], "failed": names}, fh)
    counts: dict[str, int] = {}
    for _, names in failures:
        for n in names:
            counts[n] = counts.get(n, 0) + 1
    text = [f"instances: {len(results)}", f"failing instances: {len(failures)}"]
    text += [f"  {n}: {c}" for n, c in sorted(counts.items())]
    payload = {
        "instances": len(results),
        "failing": len(failures),
        "failed_checks": dict(sorted(counts.items())),
        "failures": [{"cells": [list(c) for c in cells], "failed": names} for cells, names in failures],
    }
    _emit(args, payload, "\n".join(text))
    return EXIT_DISAGREE if failures else EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyalg", description="Polyomino ideal invariants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", nargs="?", help="grid or JSON input (default: stdin)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("invariants", help="h-polynomial, dimension, regularity, Gorenstein")
    common(p)
    p.add_argument("--method", choices=["rook", "formula", "oracle", "all"], default="all")
    p.add_argument("--oracle-only", action="store_true", help="allow inputs without a formula")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", help="structural features and decompositions")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", help="enumerate polyominoes up to symmetry")
    common(p, with_file=False)
    p.add_argument("--max-rank", type=int, default=8)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--closed-paths", action="store_true")
    p.add_argument("--no-zigzag", action="store_true", help="drop shapes with a zig-zag walk")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None, help="random sample of this size")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("render", help="draw a polyomino")
    common(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--ascii", dest="format", action="store_const", const="ascii")
    fmt.add_argument("--tikz", dest="format", action="store_const", const="tikz")
    fmt.add_argument("--svg", dest="format", action="store_const", const="svg")
    fmt.add_argument("--format", dest="format")
    p.add_argument("--rooks", help='"i,j;i,j;..." or "max"')
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run the corpus checks")
    common(p, with_file=False)
    p.add_argument("--corpus", help="file with one JSON input document per line")
    p.add_argument("--max-rank", type=int, default=12)
    p.add_argument("--no-l-max-rank", type=int, default=0,
                   help="also add closed paths without L-configurations up to this rank")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dump", help="directory for failing instances")
    p.add_argument("--skip-groebner", action="store_true")
    p.add_argument("--inject", choices=["attack-flip", "formula-sign"], help="negative control")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"error [budget-exceeded]: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, GeometryError, HilbertError, ClassifyError, OSError) as e:
        print(f"error [{error_code(e)}]: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
