"""``arr`` command-line interface.

Exit codes: 0 success, 1 input/validation error, 2 internal-consistency
diagnostic (e.g. a TheoremViolation).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .analysis import analyze, render_text
from .arrangement import ArrangementError, load_arrangement
from .classify3 import Tag, classify
from .cubic import cubic_through_singular_locus
from .decompose import decompose
from .logderiv import derivation_space
from .search import SearchConfig, SearchConfigError, run_search, write_catalog

EXIT_OK, EXIT_INVALID, EXIT_INCONSISTENT = 0, 1, 2
DEFAULT_MAX_DEGREE = 4


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def max_degree() -> int:
    raw = os.environ.get("ARR_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        return int(raw)
    except ValueError:
        raise SearchConfigError(f"ARR_MAX_DEGREE must be an integer, got {raw!r}") from None


def cmd_analyze(args) -> int:
    a = load_arrangement(args.file)
    res = analyze(a)
    _emit(res.to_json(), args.json, render_text(res))
    return EXIT_OK if res.consistent else EXIT_INCONSISTENT


def cmd_derivations(args) -> int:
    a = load_arrangement(args.file)
    cap = max_degree()
    if not 0 <= args.degree <= cap:
        raise SearchConfigError(f"degree must be in [0, {cap}] (set ARR_MAX_DEGREE to raise the cap)")
    space = derivation_space(a, args.degree)
    text = "\n".join(
        [f"degree {space.degree}: dim = {space.dim}"]
        + [f"  {i + 1}: {th.format(a.names)}" for i, th in enumerate(space.basis)]
    )
    obj = {"degree": space.degree, "dim": space.dim, "basis": [th.to_json(a.names) for th in space.basis]}
    _emit(obj, args.json, text)
    return EXIT_OK


def cmd_decompose(args) -> int:
    a = load_arrangement(args.file)
    d = decompose(a)
    if d is None:
        _emit({"e1": 1, "parts": None}, args.json, "irreducible: dim D1 = 1")
        return EXIT_OK
    lines = [f"e1 = {d.e1} (dim D1 = {d.dim_d1})"]
    for p in d.parts:
        lines.append(f"  eigenvalue {p.eigenvalue}: " + ", ".join(a.form_str(i) for i in p.indices))
    lines += [f"DIAGNOSTIC: {m}" for m in d.diagnostics]
    _emit(d.to_json(), args.json, "\n".join(lines))
    return EXIT_INCONSISTENT if d.diagnostics else EXIT_OK


def cmd_classify(args) -> int:
    a = load_arrangement(args.file)
    c = classify(a)
    text = f"{c.tag}"
    if c.in_family and c.params:
        text += " t = {" + ", ".join(str(t) for t in c.params) + "}"
    if c.transform is not None:
        text += f"\ntransform: {c.transform.matrix}\npermutation: {list(c.permutation)}"
    if c.reason:
        text += f"\nreason: {c.reason}"
    _emit(c.to_json(), args.json, text)
    return EXIT_INCONSISTENT if c.tag is Tag.THEOREM_VIOLATION else EXIT_OK


def cmd_cubic(args) -> int:
    a = load_arrangement(args.file)
    r = cubic_through_singular_locus(a)
    text = f"singular points: {r.point_count}\nrank: {r.rank}\ncubic exists: {r.cubic_exists}"
    if r.witness is not None:
        text += f"\nwitness: {r.witness.format(a.names)}"
    _emit(r.to_json(), args.json, text)
    return EXIT_OK


def cmd_search(args) -> int:
    config = SearchConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        bound=args.bound,
        count=args.count,
        seed=args.seed,
        require_essential=not args.allow_inessential,
    )
    summary = write_catalog(run_search(config, jobs=args.jobs, timing=args.timing), args.out)
    _emit(summary.to_json(), args.json, summary.table())
    return EXIT_OK if summary.ok else EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arr", description="Low-degree logarithmic derivations of line and hyperplane arrangements.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, help_, func):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(func=func)
        return p

    with_file("analyze", "full report", cmd_analyze)
    p = with_file("derivations", "basis of degree-d logarithmic derivations", cmd_derivations)
    p.add_argument("--degree", "-d", type=int, required=True)
    with_file("decompose", "direct-product decomposition", cmd_decompose)
    with_file("classify", "rank-3 classification", cmd_classify)
    with_file("cubic", "cubic through the singular locus", cmd_cubic)

    s = sub.add_parser("search", help="seeded random search")
    s.add_argument("--n-min", type=int, default=4)
    s.add_argument("--n-max", type=int, default=6)
    s.add_argument("--bound", type=int, default=2)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--out", required=True, help="JSONL catalog path")
    s.add_argument("--jobs", type=int, default=1, help="worker processes (record order is unaffected)")
    s.add_argument("--timing", action="store_true", help="store per-record seconds (breaks byte-identical reruns)")
    s.add_argument("--allow-inessential", action="store_true")
    s.add_argument("--json", action="store_true", help="print the summary as JSON")
    s.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ArrangementError, SearchConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
