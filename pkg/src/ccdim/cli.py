"""Command-line entry point: ``ccdim <command> ...``.

Exit status is 0 on success, 1 when a complex is invalid or a check fails,
2 on usage errors (bad arguments, unreadable files).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .audit import SUITES, run_audit
from .colouring import colour, control_bound
from .contraction import contract_pipeline
from .core import CubeComplex
from .errors import CCDimError, FormatError
from .generators import KINDS, GeneratorSpec, generate, product
from .io import (
    colouring_to_text,
    load_complex,
    parse_rational,
    save_complex,
)
from .rank import flatness, rank_vectors

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str) -> CubeComplex:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"cannot read {path}")
    return load_complex(p)


def _emit(args, payload: dict, text: str):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_validate(args) -> int:
    X = _load(args.file)
    print(f"valid: {X.hyperplane_count} hyperplanes, {X.vertex_count} vertices, dimension {X.dimension}")
    return EXIT_OK


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def cmd_analyze(args) -> int:
    X = _load(args.file)
    ranks = rank_vectors(X)
    f = flatness(X)
    rows = [{"id": h, "rank_vector": list(ranks[h]), "predecessors": sorted(X.predecessors(h))}
            for h in X.hyperplanes]
    payload = {"hyperplanes": X.hyperplane_count, "vertices": X.vertex_count,
               "dimension": X.dimension, "flatness": f, "diameter": X.diameter, "table": rows}
    lines = [f"hyperplanes {X.hyperplane_count}  vertices {X.vertex_count}  "
             f"dimension {X.dimension}  flatness {f}  diameter {X.diameter}",
             "id  rank_vector  predecessors"]
    for r in rows:
        lines.append(f"{r['id']:>2}  {_vec(r['rank_vector']):11}  {' '.join(map(str, r['predecessors'])) or '-'}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_colour(args) -> int:
    X = _load(args.file)
    c = colour(X)
    bound = control_bound(X)
    ok = c.control <= bound
    payload = {"colours": list(c.colours), "control": c.control, "bound": bound, "passed": ok}
    lines = ["id  colour"] + [f"{h:>2}  {col}" for h, col in enumerate(c.colours)]
    lines.append(f"control {c.control}  bound {bound}")
    lines.append(f"{'PASS' if ok else 'FAIL'} control {c.control} <= {bound}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def _epsilon(text: str) -> Fraction:
    try:
        eps = parse_rational(text)
    except FormatError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if not 0 < eps < 1:
        raise argparse.ArgumentTypeError("epsilon must lie strictly between 0 and 1")
    return eps


def _track(text: str) -> str:
    if text == "all":
        return text
    if text.startswith("sample:") and text[7:].isdigit() and int(text[7:]) > 0:
        return text
    raise argparse.ArgumentTypeError("use 'all' or 'sample:K' with K > 0")


def cmd_contract(args) -> int:
    X = _load(args.file)
    report = contract_pipeline(X, args.epsilon, args.max_rounds, args.track, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for t, r in enumerate(report.rounds, 1):
        save_complex(r.complex, out / f"round-{t:02d}.complex")
        (out / f"round-{t:02d}.colouring").write_text(
            colouring_to_text(r.colouring.colours, r.colouring.control), encoding="utf-8")
    save_complex(report.final, out / "final.complex")
    (out / "report.json").write_text(json.dumps(report.to_json(), indent=2) + "\n", encoding="utf-8")
    text = report.to_text()
    (out / "report.txt").write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK if report.passed else EXIT_FAIL


def _ints(params: list[str], kind: str) -> tuple[int, ...]:
    try:
        values = tuple(int(p) for p in params)
    except ValueError:
        raise UsageError(f"{kind} parameters must be integers") from None
    if any(v < 0 for v in values):
        raise UsageError(f"{kind} parameters must be non-negative")
    return values


def cmd_gen(args) -> int:
    kind, params = args.kind, args.params
    if kind == "product":
        if len(params) != 2:
            raise UsageError("product takes two complex files")
        X = product(_load(params[0]), _load(params[1]))
    else:
        values = _ints(params, kind)
        arity = {"path": 1, "tripod": 0, "ell_grid": 0}
        if kind in arity and len(values) != arity[kind]:
            raise UsageError(f"{kind} takes {arity[kind]} parameter(s)")
        if kind in ("grid", "random_median") and len(values) < (1 if kind == "grid" else 2):
            raise UsageError("grid needs axis sizes; random_median needs a sample count then axis sizes")
        try:
            X = generate(GeneratorSpec(kind, values, args.seed))
        except ValueError as e:
            if isinstance(e, CCDimError):
                raise
            raise UsageError(str(e)) from None
    save_complex(X, args.out)
    print(f"wrote {args.out}: {X.hyperplane_count} hyperplanes, {X.vertex_count} vertices")
    return EXIT_OK


def cmd_audit(args) -> int:
    X = _load(args.file)
    report = run_audit(X, args.suite, args.samples, args.seed)
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccdim", description="Finite CAT(0) cube complex toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check that a file describes a valid complex")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("analyze", help="dimension, flatness and rank vectors")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("colour", aliases=["color"], help="controlled colouring and its control value")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_colour)

    p = sub.add_parser("contract", help="iterate contraction rounds down to a Lipschitz target")
    p.add_argument("file")
    p.add_argument("--epsilon", required=True, type=_epsilon, help="target factor p/q in (0, 1)")
    p.add_argument("--max-rounds", type=int, default=64)
    p.add_argument("--track", type=_track, default=None, help="all or sample:K (default: all up to 400 vertices)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(run=cmd_contract)

    p = sub.add_parser("gen", help="generate a complex")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("audit", help="run invariant checks")
    p.add_argument("file")
    p.add_argument("--suite", required=True, choices=SUITES + ("all",))
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_audit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_rounds", 1) < 1 or getattr(args, "samples", 0) < 0:
        parser.error("--max-rounds must be positive and --samples non-negative")
    try:
        return args.run(args)
    except UsageError as e:
        print(f"ccdim: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CCDimError as e:
        print(f"invalid: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
