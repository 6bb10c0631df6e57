"""``cayley-kit`` command-line front end.

Each command writes one JSON object to stdout; diagnostics go to stderr.
Exit codes: 0 success, 1 negative verdict, 2 input error, 3 certificate
verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .cayley import (CayleyStructure, find_cayley_structure, max_cayley_structure,
                     verify_cayley_structure)
from .degeneration import PlaneWitness, recover_cayley
from .errors import CayleyKitError, DegenerationError
from .polytope import LatticePolytope, cayley_sum
from .toric import normalized_volume, spanned_lattice_index
from .width import lattice_width

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INVALID = 3


class InputError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from exc


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def load_polytope(path: str) -> LatticePolytope:
    doc = _read_json(path)
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected an object")
    n = doc.get("ambient_dim")
    points = doc.get("points")
    if not _is_int(n) or n < 0:
        raise InputError(f"{path}: ambient_dim must be a nonnegative integer")
    if not isinstance(points, list) or not points:
        raise InputError(f"{path}: points must be a nonempty array")
    for p in points:
        if not isinstance(p, list) or len(p) != n or not all(map(_is_int, p)):
            raise InputError(f"{path}: every point must be {n} integers")
    return LatticePolytope(points, n)


def polytope_document(P: LatticePolytope) -> dict:
    return {"ambient_dim": P.ambient_dim, "points": [list(v) for v in P.vertices]}


def cmd_info(args) -> int:
    P = load_polytope(args.polytope)
    index = spanned_lattice_index(P)
    _emit({
        "ambient_dim": P.ambient_dim,
        "dim": P.dim,
        "vertices": len(P.vertices),
        "points": len(P.lattice_points()),
        "span_index": index,
        "nvol": normalized_volume(P) if P.is_full_dimensional else None,
    })
    return EXIT_OK


def cmd_width(args) -> int:
    P = load_polytope(args.polytope)
    _emit(lattice_width(P).to_json())
    return EXIT_OK


def cmd_cayley(args) -> int:
    P = load_polytope(args.polytope)
    if args.max:
        length, S = max_cayley_structure(P)
        _emit({"max_length": length, "certificate": S.to_json() if S else None})
        return EXIT_OK
    S = find_cayley_structure(P, args.length)
    if S is None:
        print(f"not a Cayley polytope of length {args.length + 1}", file=sys.stderr)
        _emit({"length": args.length + 1, "result": "none"})
        return EXIT_NEGATIVE
    _emit({"length": args.length + 1, "result": "found", "certificate": S.to_json()})
    return EXIT_OK


def cmd_sum(args) -> int:
    polytopes = [load_polytope(path) for path in args.polytopes]
    _emit(polytope_document(cayley_sum(polytopes)))
    return EXIT_OK


def cmd_degenerate(args) -> int:
    P = load_polytope(args.polytope)
    W = PlaneWitness.from_json(_read_json(args.witness))
    N = len(P.lattice_points()) - 1
    if W.N != N:
        raise InputError(f"witness has N={W.N} but the polytope has N={N}")
    try:
        S = recover_cayley(P, W)
    except DegenerationError as exc:
        print(f"recovery failed at stage {exc.stage}", file=sys.stderr)
        _emit({"result": "failure", "stage": exc.stage, "reason": str(exc)})
        return EXIT_NEGATIVE
    _emit({"result": "found", "certificate": S.to_json()})
    return EXIT_OK


def cmd_verify(args) -> int:
    P = load_polytope(args.polytope)
    doc = _read_json(args.certificate)
    if isinstance(doc, dict) and "certificate" in doc:
        doc = doc["certificate"]
    S = CayleyStructure.from_json(doc, P.ambient_dim)
    check = verify_cayley_structure(P, S)
    if not check:
        print(f"certificate rejected: {check.reason}", file=sys.stderr)
        _emit({"valid": False, "reason": check.reason})
        return EXIT_INVALID
    _emit({"valid": True})
    return EXIT_OK


def cmd_random(args) -> int:
    """Random test data; the only command that consumes ``--seed``."""
    rng = random.Random(args.seed)
    if args.kind == "polytope":
        n = args.dim
        while True:
            pts = [[rng.randint(0, args.max_coord) for _ in range(n)]
                   for _ in range(rng.randint(n + 1, n + 4))]
            P = LatticePolytope(pts, n)
            if P.is_full_dimensional:
                break
    else:
        while True:
            summands = [LatticePolytope([[rng.randint(0, args.max_coord) for _ in range(args.dim)]
                                         for _ in range(rng.randint(1, 3))], args.dim)
                        for _ in range(args.r + 1)]
            P = cayley_sum(summands)
            if P.is_full_dimensional:
                break
    _emit(polytope_document(P))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayley-kit",
        description="Exact Cayley-structure and lattice-width tools for lattice polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="basic invariants of a polytope")
    p.add_argument("polytope")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("width", help="lattice width with certificate")
    p.add_argument("polytope")
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("cayley", help="find a Cayley structure")
    p.add_argument("polytope")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--length", type=int, metavar="R",
                       help="look for a projection onto the unimodular R-simplex")
    group.add_argument("--max", action="store_true", help="report the maximal length")
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("sum", help="Cayley sum of polytopes")
    p.add_argument("polytopes", nargs="+")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("degenerate", help="recover a certificate from a plane witness")
    p.add_argument("polytope")
    p.add_argument("witness")
    p.set_defaults(func=cmd_degenerate)

    p = sub.add_parser("verify", help="check a Cayley certificate")
    p.add_argument("polytope")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", help="generate random test polytopes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=["polytope", "cayley-sum"], default="polytope")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--max-coord", type=int, default=3)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, CayleyKitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
