"""Command-line interface: ``pseudocircles <command> ...``.

Exit status is 0 on success, 1 on domain errors (invalid codes, search
failures, a negative isomorphism answer) and 2 on usage errors.  JSON output
is emitted with sorted keys so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from functools import lru_cache
from typing import List, Optional

from .codes import Arrangement, CodeError, parse_arrangement, restrict, validate
from .extraction import BudgetExhausted, InvalidInput, NotFound, StageFailure, find_unavoidable
from .families import classify_triple, gen_X4, generate, is_packed, triple_classes, KRUPP, NONKRUPP
from .geometry import (
    DEFAULT_EPS,
    GeneralPositionError,
    circles_to_arrangement,
    format_circles,
    parse_circles,
    plot_data,
    random_circles,
)
from .isomorphism import SizeLimitError, canonical_form, is_isomorphic
from .pseudolines import (
    NotGreatPseudocircles,
    WiringDiagram,
    WiringError,
    antipodal_cut,
    double_wiring,
    find_cyclic_subarrangement,
    gen_cyclic,
    is_cyclic,
)

DOMAIN_ERRORS = (
    CodeError,
    GeneralPositionError,
    WiringError,
    NotGreatPseudocircles,
    InvalidInput,
    NotFound,
    BudgetExhausted,
    StageFailure,
    SizeLimitError,
    OSError,
    ValueError,
)


class DomainError(Exception):
    pass


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> Arrangement:
    return parse_arrangement(_read(path))


def _dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _emit_arrangement(arr: Arrangement, fmt: str) -> str:
    return arr.to_json() + "\n" if fmt == "json" else arr.to_text()


def _labels(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated labels, got {text!r}")


# commands


def cmd_gen(args) -> str:
    family = args.family.lower()
    if family in ("random", "random-circles") and args.seed is None:
        raise UsageError(f"--family {family} needs --seed")
    if family == "cyclic":
        return gen_cyclic(args.size).to_text()
    if family == "x4":
        return _emit_arrangement(gen_X4(), args.format)
    if family == "random-circles":
        return format_circles(random_circles(args.size, random.Random(args.seed)))
    if family == "random":
        circles = random_circles(args.size, random.Random(args.seed))
        return _emit_arrangement(circles_to_arrangement(circles), args.format)
    return _emit_arrangement(generate(family, args.size), args.format)


def cmd_ingest(args) -> str:
    circles = parse_circles(_read(args.circles))
    if args.emit_plot_data:
        return _dump_json(plot_data(circles, args.eps))
    return _emit_arrangement(circles_to_arrangement(circles, args.eps), args.format)


def cmd_validate(args) -> str:
    report = validate(_load(args.file))
    if not report.ok:
        raise DomainError("\n".join(report.violations))
    return "ok\n"


def cmd_classify(args) -> str:
    arr = _load(args.file)
    report = validate(arr)
    if not report.ok:
        raise DomainError("\n".join(report.violations))
    if args.canonical:
        return canonical_form(arr).decode()
    if len(arr) == 3:
        return classify_triple(arr) + "\n"
    classes = triple_classes(arr)
    packed = None
    if classes:
        packed = next((c for c in (KRUPP, NONKRUPP) if is_packed(arr, c)), None)
    return _dump_json(
        {
            "n": len(arr),
            "packed": packed,
            "triples": [list(tri) + [cls] for tri, cls in sorted(classes.items())],
        }
    )


def cmd_isomorphic(args) -> str:
    a, b = _load(args.a), _load(args.b)
    t = is_isomorphic(a, b)
    if t is None:
        raise DomainError("not isomorphic")
    return _dump_json(t.to_dict())


def cmd_restrict(args) -> str:
    return _emit_arrangement(restrict(_load(args.file), args.subset), args.format)


def cmd_find(args) -> str:
    result = find_unavoidable(_load(args.input), args.m, budget=args.budget)
    return _dump_json(result.to_dict(with_trace=args.trace))


def cmd_cyclic(args) -> str:
    w = WiringDiagram.from_text(_read(args.file))
    if args.m is None:
        return _dump_json({"cyclic": is_cyclic(w)})
    found = find_cyclic_subarrangement(w, args.m, budget=args.budget)
    if found is None:
        raise DomainError(f"no cyclic subarrangement of size {args.m}")
    subset, labeling = found
    return _dump_json(
        {"subset": sorted(subset), "labeling": {str(k): v for k, v in sorted(labeling.items())}}
    )


def cmd_double(args) -> str:
    if args.cut:
        return antipodal_cut(_load(args.file)).to_text()
    w = WiringDiagram.from_text(_read(args.file))
    return _emit_arrangement(double_wiring(w), args.format)


def _threads_default() -> int:
    raw = os.environ.get("ARR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@lru_cache(maxsize=1)
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pseudocircles", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads for searches (default $ARR_THREADS or 1; searches run sequentially)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = with_format(sub.add_parser("gen", help="emit a family member"))
    p.add_argument(
        "--family",
        required=True,
        type=str.lower,
        choices=("c1", "c2", "c3", "cyclic", "x4", "random", "random-circles"),
    )
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--seed", type=int, help="required by the random families")
    p.set_defaults(func=cmd_gen)

    p = with_format(sub.add_parser("ingest", help="codes of plane circles"))
    p.add_argument("--circles", required=True, help="file of 'label cx cy r' lines or JSON")
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--emit-plot-data", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("validate", help="check the local validity rules")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="Krupp/NonKrupp classes of triples")
    p.add_argument("file")
    p.add_argument("--canonical", action="store_true", help="print the canonical form instead")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("isomorphic", help="transform from a to b, exit 1 if none")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_isomorphic)

    p = with_format(sub.add_parser("restrict", help="subarrangement on a label subset"))
    p.add_argument("file")
    p.add_argument("--subset", required=True, type=_labels)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("find-unavoidable", help="certified C1/C2/C3 subarrangement")
    p.add_argument("--input", required=True)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--budget", type=int, help="search node budget")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("cyclic", help="cyclicity of a wiring diagram")
    p.add_argument("file")
    p.add_argument("--m", type=int, help="find a cyclic set of m wires instead")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_cyclic)

    p = with_format(sub.add_parser("double", help="double a wiring diagram"))
    p.add_argument("file")
    p.add_argument("--cut", action="store_true", help="cut an arrangement open instead")
    p.set_defaults(func=cmd_double)
    return parser


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is None:
        args.threads = _threads_default()
    if args.threads < 1:
        err.write("pseudocircles: --threads must be positive\n")
        return 2
    try:
        out.write(args.func(args))
    except UsageError as exc:
        err.write(f"pseudocircles {args.command}: {exc}\n")
        return 2
    except (DomainError,) + DOMAIN_ERRORS as exc:
        err.write(f"pseudocircles {args.command}: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())
