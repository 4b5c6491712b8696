"""Command-line front end: queries, invariant suites, SVG rendering.

Exit codes: 0 success, 1 domain error (message names the error class),
2 malformed arguments or input syntax.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .dyadic import parse_dyadic
from .band import parse_obj, Rect, hom_c_dim
from .cluster import STANDARD, parse_cluster_pt, mutate, object_of
from .walk import walk_of, support, approximation, hom_ct_dim
from .strings import parse_word
from .equiv import obj_to_string, string_to_obj, simple_object, DigitPrefix, digits_to_coords, digit_vertex
from .quotient import SumObj, MorQ, kernel, cokernel
from .render import RenderSpec, render
from .checks import run_all
from .errors import MoebiusError, ParseError


def _obj_json(x) -> str:
    return str(x)


def _morphism_from_json(data) -> MorQ:
    try:
        src = SumObj([parse_obj(s) for s in data["src"]])
        dst = SumObj([parse_obj(s) for s in data["dst"]])
        entries = tuple(tuple(Fraction(str(v)) for v in row) for row in data["entries"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad morphism JSON: {exc}")
    return MorQ(src, dst, entries)


def _morphism_to_json(f: MorQ) -> dict:
    return {"src": [str(s) for s in f.src],
            "dst": [str(s) for s in f.dst],
            "entries": [[str(v) for v in row] for row in f.entries]}


def _cmd_hom(args) -> int:
    x, y = parse_obj(args.x), parse_obj(args.y)
    c, ct = hom_c_dim(x, y), hom_ct_dim(x, y)
    if args.json:
        print(json.dumps({"ambient": c, "quotient": ct}))
    else:
        print(f"C: {c}, C/T: {ct}")
    return 0


def _cmd_support(args) -> int:
    pts = sorted(support(parse_obj(args.x)))
    if args.json:
        print(json.dumps([[p.n, p.m] for p in pts]))
    else:
        print(" ".join(str(p) for p in pts) if pts else "(empty)")
    return 0


def _cmd_walk(args) -> int:
    w = walk_of(parse_obj(args.x))
    if args.json:
        print(json.dumps(w.to_json()))
    else:
        for v in w.vertices:
            print(f"{v.pt}  rep ({v.rep[0]}, {v.rep[1]})  {v.role}")
    return 0


def _cmd_approx(args) -> int:
    a = approximation(parse_obj(args.x))
    if args.json:
        print(json.dumps({"sources": [[p.n, p.m] for p in a.sources],
                          "sinks": [[p.n, p.m] for p in a.sinks]}))
    else:
        print("sources: " + (" ".join(str(p) for p in a.sources) or "(none)"))
        print("sinks:   " + " ".join(str(p) for p in a.sinks))
    return 0


def _cmd_mutate(args) -> int:
    v = parse_cluster_pt(args.v)
    _, x_star = mutate(STANDARD, object_of(v))
    if args.json:
        print(json.dumps({"replacement": str(x_star)}))
    else:
        print(str(x_star))
    return 0


def _cmd_to_string(args) -> int:
    w = obj_to_string(parse_obj(args.x))
    if args.json:
        print(json.dumps({"word": str(w)}))
    else:
        print(str(w))
    return 0


def _cmd_from_string(args) -> int:
    x = string_to_obj(parse_word(args.word))
    if args.json:
        print(json.dumps({"object": str(x)}))
    else:
        print(str(x))
    return 0


def _cmd_simple(args) -> int:
    x = simple_object(parse_cluster_pt(args.v))
    if args.json:
        print(json.dumps({"object": str(x)}))
    else:
        print(str(x))
    return 0


def _cmd_kernel(args, which: str) -> int:
    try:
        data = json.load(sys.stdin)
    except json.JSONDecodeError as exc:
        raise ParseError(f"stdin is not JSON: {exc}")
    f = _morphism_from_json(data)
    if which == "kernel":
        obj, mor = kernel(f)
        key = "inclusion"
    else:
        obj, mor = cokernel(f)
        key = "projection"
    out = {"object": [str(s) for s in obj], key: _morphism_to_json(mor)}
    print(json.dumps(out) if args.json else json.dumps(out, indent=2))
    return 0


def _cmd_digits(args) -> int:
    v = parse_cluster_pt(args.v)
    digits = tuple(int(d) for d in args.digits)
    if any(d not in (0, 1) for d in digits):
        raise ParseError("digits must be 0 or 1")
    p = DigitPrefix(v, digits)
    am, bm = digits_to_coords(p)
    w = digit_vertex(p)
    if args.json:
        print(json.dumps({"rep": [str(am), str(bm)], "pt": [w.n, w.m]}))
    else:
        print(f"({am}, {bm}) = {w}")
    return 0


def _cmd_check(args) -> int:
    results = run_all(args.depth)
    payload = []
    for r in results:
        if args.json:
            payload.append({"index": r.index, "name": r.name, "ok": r.ok,
                            "detail": r.detail, "seconds": round(r.seconds, 2)})
        else:
            print(r.line())
    if args.json:
        print(json.dumps(payload))
    return 0 if all(r.ok for r in results) else 1


def _parse_render_spec(data) -> RenderSpec:
    spec = RenderSpec()
    for s in data.get("objects", []):
        spec.objects.append(parse_obj(s))
    for s in data.get("walks", []):
        spec.walks.append(parse_obj(s))
    for r in data.get("rects", []):
        try:
            x_lo, x_hi = (parse_dyadic(str(v)) for v in r["x"])
            y_lo, y_hi = (parse_dyadic(str(v)) for v in r["y"])
            flags = r.get("open", [False, False, False, False])
            spec.rects.append(Rect(x_lo, x_hi, y_lo, y_hi, *map(bool, flags)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad rect: {exc}")
    if "cluster_depth" in data:
        spec.cluster_depth = int(data["cluster_depth"])
    return spec


def _cmd_render(args) -> int:
    data = {}
    if args.spec:
        if args.spec == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.spec) as fh:
                data = json.load(fh)
    spec = _parse_render_spec(data)
    for s in args.walk or []:
        spec.walks.append(parse_obj(s))
    for s in args.object or []:
        spec.objects.append(parse_obj(s))
    if args.cluster_depth is not None:
        spec.cluster_depth = args.cluster_depth
    doc = render(spec)
    if args.out == "-":
        sys.stdout.write(doc)
    else:
        with open(args.out, "w") as fh:
            fh.write(doc)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="moebius",
        description="Exact computations in the cluster-tilted quotient of the "
                    "continuous cluster category, in units of pi.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    p = add("hom", _cmd_hom, "hom dimensions in the ambient and quotient categories")
    p.add_argument("x")
    p.add_argument("y")
    p = add("support", _cmd_support, "cluster points supporting an object")
    p.add_argument("x")
    p = add("walk", _cmd_walk, "the walk attached to an object")
    p.add_argument("x")
    p = add("approx", _cmd_approx, "sources and sinks of the approximation sequence")
    p.add_argument("x")
    p = add("mutate", _cmd_mutate, "flip a standard-cluster chord")
    p.add_argument("v")
    p = add("to-string", _cmd_to_string, "word of an object")
    p.add_argument("x")
    p = add("from-string", _cmd_from_string, "object of a word")
    p.add_argument("word")
    p = add("simple", _cmd_simple, "object corresponding to the simple at a vertex")
    p.add_argument("v")
    p = add("kernel", lambda a: _cmd_kernel(a, "kernel"), "kernel of a JSON morphism on stdin")
    p = add("cokernel", lambda a: _cmd_kernel(a, "cokernel"), "cokernel of a JSON morphism on stdin")
    p = add("digits", _cmd_digits, "coordinates of a digit-encoded tail vertex")
    p.add_argument("v")
    p.add_argument("digits", nargs="*")
    p = add("check", _cmd_check, "run the acceptance suites")
    p.add_argument("--depth", type=int, default=3, help="grid exponent (default 3)")
    p = add("render", _cmd_render, "draw an SVG picture")
    p.add_argument("--out", default="-")
    p.add_argument("--spec", help="JSON spec file, or - for stdin")
    p.add_argument("--walk", action="append", metavar="OBJ")
    p.add_argument("--object", action="append", metavar="OBJ")
    p.add_argument("--cluster-depth", type=int)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except MoebiusError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
