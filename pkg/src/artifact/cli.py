"""The ``asw`` command line: construct, query, export and verify.

Exit status is 0 on success, 1 when a verification fails and 2 on a usage
error.  Output is JSON with sorted keys unless ``--dot`` is given.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

from .algebra import (PresentedAlgebra, cartan_matrix, from_json, gabriel_presentation, parse_vertex,
                      to_dot, to_json, vertex_name)
from .arcs import (CohomologyTable, auroux_quasi_iso, auroux_triangle, collection_from_json,
                   collection_to_json, end_algebra_of_collection, fan_products, object_name,
                   swinging_products)
from .derived import (hom_table, is_exceptional, mutate, staircase_collection, staircase_object, stalk,
                      tilting_report, twist)
from .errors import ArtifactError, UnknownTarget
from .linalg import Field
from .reps import (auslander_step, dominant_dimension, ext, global_dimension, injective, projective,
                   representation_from_json, simple)
from .suites import SUITES, run_suite, suite_names
from .zoo import build_A, build_G, build_Ghat, build_alternating

FAMILIES = ("A", "G", "Ghat", "alt")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers


def field_from(args: argparse.Namespace) -> Field:
    """``ASW_FIELD`` wins over ``--char``."""
    env = os.environ.get("ASW_FIELD")
    raw = env if env else getattr(args, "char", None)
    try:
        return Field.parse(raw if raw is not None else 0)
    except ValueError as exc:
        raise UsageError(f"bad field {raw!r}: {exc}") from exc


def build_family(family: str, n: int, d: Optional[int], field: Field) -> PresentedAlgebra:
    if family == "alt":
        return build_alternating(n, field)
    if d is None:
        raise UsageError(f"family {family} needs --d")
    return {"A": build_A, "G": build_G, "Ghat": build_Ghat}[family](n, d, field)


def load_algebra(args: argparse.Namespace, field: Field) -> PresentedAlgebra:
    if getattr(args, "input", None):
        with open(args.input, encoding="utf-8") as fh:
            A = from_json(json.load(fh))
        A.name = A.name or os.path.basename(args.input)
        return A
    if args.family is None or args.n is None:
        raise UsageError("give --in FILE or --family with --n (and --d)")
    return build_family(args.family, args.n, args.d, field)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(text: str, out: Optional[str] = None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def parse_index(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.strip("()").split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"bad index {text!r}") from exc


def load_module(text: str, A: PresentedAlgebra):
    """``P:v``, ``I:v``, ``S:v`` or a JSON file holding a representation."""
    kind, sep, rest = text.partition(":")
    if sep and kind in ("P", "I", "S"):
        v = parse_vertex(rest)
        if v not in A.vertices:
            raise UsageError(f"{rest!r} is not a vertex of {A.name}")
        return {"P": projective, "I": injective, "S": simple}[kind](A, v)
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return representation_from_json(A, json.load(fh))
    raise UsageError(f"bad module {text!r}; use P:v, I:v, S:v or a JSON file")


def _num(x: float):
    return "inf" if x == math.inf else int(x)


# ---------------------------------------------------------------- commands


def cmd_zoo_build(args, field) -> int:
    A = build_family(args.family, args.n, args.d, field)
    if args.dot:
        q, _ = gabriel_presentation(A, max_length=2)
        emit(to_dot(q, A.name), args.out)
    else:
        emit(dumps(to_json(A)), args.out)
    if args.out:
        sys.stdout.write(dumps({"algebra": A.name, "dim": A.dim, "field": field.name, "out": args.out,
                                "vertices": len(A.vertices)}))
    return 0


def cmd_alg(args, field) -> int:
    A = load_algebra(args, field)
    if args.action == "cartan":
        emit(dumps({"algebra": A.name, "labels": [vertex_name(v) for v in A.vertices],
                    "cartan": cartan_matrix(A)}), args.out)
    elif args.action == "dims":
        degrees = {}
        for b in A.basis:
            degrees[str(b.degree)] = degrees.get(str(b.degree), 0) + 1
        emit(dumps({"algebra": A.name, "dim": A.dim, "vertices": len(A.vertices), "degrees": degrees,
                    "field": A.field.name}), args.out)
    elif args.action == "gabriel":
        q, profile = gabriel_presentation(A, max_length=args.max_length)
        if args.dot:
            emit(to_dot(q, A.name), args.out)
        else:
            emit(dumps({"algebra": A.name, "vertices": [vertex_name(v) for v in q.vertices],
                        "arrows": [{"id": a.id, "src": vertex_name(a.src), "tgt": vertex_name(a.tgt)}
                                   for a in q.arrows],
                        "relations_by_length": {str(k): v for k, v in sorted(profile.items())}}), args.out)
    else:
        if args.dot:
            q, _ = gabriel_presentation(A, max_length=2)
            emit(to_dot(q, A.name), args.out)
        else:
            emit(dumps(to_json(A)), args.out)
    return 0


def cmd_rep(args, field) -> int:
    if args.action == "auslander-step":
        step = auslander_step(args.n, args.d, build_A(args.n, args.d, field))
        emit(dumps({"claim": SUITES["auslander-step"][0], "n": args.n, "d": args.d,
                    "dim": step.algebra.dim, "summands": len(step.labels),
                    "cluster_tilting": step.cluster_tilting, "target": f"A_{args.n + 1},{args.d + 1}",
                    "status": "PASS" if step.ok else "FAIL"}))
        return 0 if step.ok else 1
    A = load_algebra(args, field)
    if args.action == "gldim":
        emit(dumps({"algebra": A.name, "gldim": global_dimension(A)}))
    elif args.action == "domdim":
        emit(dumps({"algebra": A.name, "domdim": _num(dominant_dimension(A))}))
    else:
        if not args.left or not args.right:
            raise UsageError("rep ext needs --left and --right")
        M, N = load_module(args.left, A), load_module(args.right, A)
        emit(dumps({"algebra": A.name, "left": args.left, "right": args.right, "i": args.i,
                    "ext": ext(M, N, args.i)}))
    return 0


def cmd_derived(args, field) -> int:
    if args.action == "tilting":
        labels, objs = staircase_collection(args.n, args.d, build_A(args.n, args.d, field))
        rep = tilting_report(objs, labels, build_G(args.n, args.d, field))
        out = {"claim": SUITES["tilting"][0], "n": args.n, "d": args.d, "concentrated": rep.concentrated,
               "status": "PASS" if rep.ok else "FAIL"}
        if rep.algebra is not None:
            out["dim"] = rep.algebra.dim
        if not rep.ok:
            out["failing_pair"] = [None if x is None else vertex_name(x) for x in rep.failing_pair or ()]
            out["table"] = [[sum(h.values()) for h in row] for row in rep.table]
        emit(dumps(out))
        return 0 if rep.ok else 1
    if args.action == "staircase":
        if not args.index:
            raise UsageError("derived staircase needs --index")
        X = staircase_object(args.n, args.d, parse_index(args.index), build_A(args.n, args.d, field))
        emit(dumps(X.to_json()), args.out)
        return 0
    A = load_algebra(args, field)
    objs = [stalk(A, v) for v in A.vertices]
    if args.action == "twist":
        if not args.source or not args.target:
            raise UsageError("derived twist needs --source and --target")
        E, X = (stalk(A, parse_vertex(s)) for s in (args.source, args.target))
        emit(dumps(twist(E, X).to_json()), args.out)
        return 0
    res = mutate(objs, args.k, args.side)
    emit(dumps({"algebra": A.name, "k": args.k, "side": args.side, "exceptional": is_exceptional(res),
                "objects": [X.to_json() for X in res],
                "hom": [[{str(p): c for p, c in sorted(h.items())} for h in row] for row in hom_table(res)]}),
         args.out)
    return 0


def _collection(args, field):
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            disk, objs, d = collection_from_json(json.load(fh))
        return disk, objs, [object_name(disk, X) for X in objs], d
    if args.n is None or args.d is None:
        raise UsageError("give --in FILE or --n and --d")
    make = swinging_products if args.collection == "swinging" else fan_products
    disk, objs, labels = make(args.n, args.d)
    return disk, objs, labels, args.d


def cmd_arc(args, field) -> int:
    if args.action == "end":
        disk, objs, labels, _ = _collection(args, field)
        E = end_algebra_of_collection(disk, objs, labels, field)
        if isinstance(E, CohomologyTable):
            emit(dumps({"tame": False, "labels": [vertex_name(v) for v in E.labels],
                        "cohomology": [[{str(p): c for p, c in sorted(h.items())} for h in row]
                                       for row in E.dims], "totals": E.totals()}), args.out)
        elif args.dot:
            q, _ = gabriel_presentation(E, max_length=2)
            emit(to_dot(q, E.name), args.out)
        else:
            emit(dumps({"tame": True, "algebra": to_json(E), "cartan": cartan_matrix(E)}), args.out)
        return 0
    if None in (args.n, args.i, args.j, args.k):
        raise UsageError("arc triangle needs --n, --i, --j and --k")
    bg = [tuple(parse_index(b)) for b in args.background]
    if any(len(b) != 2 for b in bg):
        raise UsageError("each --background is a pair a,b")
    T = auroux_triangle(args.n, args.i, args.j, args.k, bg, field)
    quasi = auroux_quasi_iso(args.n, args.i, args.j, args.k, bg)
    ok = T.ok and quasi
    emit(dumps({"claim": SUITES["auroux"][0], "labels": T.labels,
                "maps": {f"{a}->{b}": m.degree for (a, b), m in sorted(T.maps.items())},
                "shifts": {f"{a}->{b}": s for (a, b), s in sorted(T.shifts.items())},
                "non_split": {f"{a}->{b}": s for (a, b), s in sorted(T.non_split.items())},
                "quasi_iso": quasi, "status": "PASS" if ok else "FAIL"}))
    return 0 if ok else 1


def cmd_verify(args, field) -> int:
    if args.suite not in suite_names():
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(suite_names())}")
    rep = run_suite(args.suite, field, args.max_n, args.max_d, args.n, args.d)
    emit(dumps(rep.to_json(timing=args.timing)), args.out)
    if not rep.ok:
        bad = [c.name for c in rep.checks if not c.ok]
        sys.stderr.write(f"FAIL {rep.suite}: {rep.claim}; failing: {', '.join(bad)}\n")
        return 1
    sys.stderr.write(f"PASS {rep.suite}: {rep.claim}\n")
    return 0


def export_target(what: str, dot: bool, field: Field) -> str:
    """``A_4,2``, ``G_4,2``, ``Ghat_3,2``, ``alt_5``, ``cartan:A_4,2``, ``swinging_4,2`` or ``fan_4,2``."""
    kind, _, params = what.partition("_")
    cartan = kind.startswith("cartan:")
    if cartan:
        kind = kind[len("cartan:"):]
    try:
        nums = [int(x) for x in params.split(",")]
    except ValueError:
        raise UnknownTarget(f"unknown export target {what!r}") from None
    if kind in ("swinging", "fan") and len(nums) == 2 and not cartan:
        if dot:
            raise UnknownTarget("collections export as JSON only")
        make = swinging_products if kind == "swinging" else fan_products
        disk, objs, _ = make(*nums)
        return dumps(collection_to_json(disk, objs, nums[1]))
    if kind not in FAMILIES or len(nums) != (1 if kind == "alt" else 2):
        raise UnknownTarget(f"unknown export target {what!r}")
    A = build_family(kind, nums[0], nums[1] if len(nums) > 1 else None, field)
    if cartan:
        return dumps({"algebra": A.name, "labels": [vertex_name(v) for v in A.vertices],
                      "cartan": cartan_matrix(A)})
    if dot:
        q, _ = gabriel_presentation(A, max_length=2)
        return to_dot(q, A.name)
    return dumps(to_json(A))


def cmd_export(args, field) -> int:
    emit(export_target(args.what, args.dot, field), args.out)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--char", default=argparse.SUPPRESS, help="0 for Q or a prime p")
    common.add_argument("--dot", action="store_true", default=argparse.SUPPRESS, help="emit DOT")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file")

    def algebra_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--family", choices=FAMILIES)
        p.add_argument("--n", type=int)
        p.add_argument("--d", type=int)
        p.add_argument("--in", dest="input")

    parser = argparse.ArgumentParser(prog="asw", description=__doc__.splitlines()[0])
    parser.add_argument("--char", default=None, help="0 for Q or a prime p (ASW_FIELD overrides)")
    sub = parser.add_subparsers(dest="group", required=True)

    zoo = sub.add_parser("zoo").add_subparsers(dest="action", required=True)
    b = zoo.add_parser("build", parents=[common])
    b.add_argument("--family", choices=FAMILIES, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--d", type=int)

    alg = sub.add_parser("alg").add_subparsers(dest="action", required=True)
    for name in ("cartan", "dims", "gabriel", "export"):
        p = alg.add_parser(name, parents=[common])
        algebra_args(p)
        if name == "gabriel":
            p.add_argument("--max-length", type=int, default=None)

    rep = sub.add_parser("rep").add_subparsers(dest="action", required=True)
    for name in ("ext", "gldim", "domdim"):
        p = rep.add_parser(name, parents=[common])
        algebra_args(p)
        if name == "ext":
            p.add_argument("--left", help="P:v, I:v, S:v or a module JSON file")
            p.add_argument("--right", help="P:v, I:v, S:v or a module JSON file")
            p.add_argument("--i", type=int, default=1)
    p = rep.add_parser("auslander-step", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    der = sub.add_parser("derived").add_subparsers(dest="action", required=True)
    p = der.add_parser("mutate", parents=[common])
    algebra_args(p)
    p.add_argument("--k", type=int, default=1, help="1-based position")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p = der.add_parser("twist", parents=[common])
    algebra_args(p)
    p.add_argument("--source", help="vertex of the spherical stalk")
    p.add_argument("--target", help="vertex of the twisted stalk")
    p = der.add_parser("staircase", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--index", help="I as i1,...,id")
    p = der.add_parser("tilting", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    arc = sub.add_parser("arc").add_subparsers(dest="action", required=True)
    p = arc.add_parser("end", parents=[common])
    p.add_argument("--collection", choices=("swinging", "fan"), default="swinging")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--in", dest="input")
    p = arc.add_parser("triangle", parents=[common])
    for name in ("n", "i", "j", "k"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--background", action="append", default=[], help="background arc a,b")

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("suite", help=", ".join(suite_names()))
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--timing", action="store_true", help="include wall time in the report")

    p = sub.add_parser("export", parents=[common])
    p.add_argument("what", help="A_n,d | G_n,d | Ghat_n,d | alt_n | cartan:X_n,d | swinging_n,d | fan_n,d")
    return parser


COMMANDS = {"zoo": cmd_zoo_build, "alg": cmd_alg, "rep": cmd_rep, "derived": cmd_derived,
            "arc": cmd_arc, "verify": cmd_verify, "export": cmd_export}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("dot", False), ("out", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        field = field_from(args)
        return COMMANDS[args.group](args, field)
    except (UsageError, ArtifactError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"asw: {exc.args[0] if exc.args else exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
