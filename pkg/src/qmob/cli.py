"""``qmob`` command-line tool.

Every command prints one JSON object.  Exit status is 0 on success, 1 when
the library reports a domain error (the JSON then carries ``error`` with a
stable code) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import List, Optional

from . import corpus
from .errors import QmobError, QrepSyntaxError, ValidationError
from .finiteness import decide_finiteness
from .lattice import DEFAULT_CAP, enumerate_subreps, is_poset_orthogonal, orthocyclic_obstruction
from .mobius import (Method, count_length_l, count_maximal, count_simple_submodules, downward_sums,
                     mobius_inversion_module, mobius_power, mobius_rep)
from .qrep import QrepDocument, load
from .rep import is_semisimple, is_thin, radical, socle


class UsageError(Exception):
    pass


def _subrep_json(U) -> dict:
    return {"dims": list(U.dims), "bases": [[[str(x) for x in r] for r in s.rows] for s in U.spaces]}


def _open(path: str) -> QrepDocument:
    if path.startswith("corpus:"):
        return corpus.load(path[len("corpus:"):])
    try:
        return load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def cmd_validate(args) -> dict:
    doc = _open(args.file)
    return {"valid": True, "name": doc.name, "dims": list(doc.representation.dims)}


def cmd_info(args) -> dict:
    doc = _open(args.file)
    M = doc.representation
    return {"name": doc.name, "field": str(M.field), "dims": list(M.dims), "total_dim": sum(M.dims),
            "thin": is_thin(M), "semisimple": is_semisimple(M),
            "acyclic": M.quiver.is_acyclic(), "sinks": sorted(M.quiver.sinks()),
            "socle_dims": list(socle(M).dims), "radical_dims": list(radical(M).dims)}


def cmd_mobius(args) -> dict:
    M = _open(args.file).representation
    out = {}
    if args.method in ("closed", "both"):
        rep = mobius_rep(M)
        out = {"mobius": str(rep.value), "method": rep.method.value}
    if args.method in ("brute", "both"):
        value = enumerate_subreps(M, args.cap, args.threads).mobius()
        if args.method == "brute":
            out = {"mobius": str(value), "method": Method.BruteForce.value}
        else:
            out["brute"] = str(value)
            out["agree"] = out["mobius"] == out["brute"]
    return out


def cmd_lattice(args) -> dict:
    M = _open(args.file).representation
    lat = enumerate_subreps(M, args.cap, args.threads)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(lat.to_dot())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(lat.dumps() + "\n")
    return {"size": len(lat), "mobius": str(lat.mobius()), "atoms": len(lat.atoms()),
            "coatoms": len(lat.coatoms()),
            "count_by_length": {str(k): str(v) for k, v in lat.count_by_length().items()}}


def cmd_count(args) -> dict:
    q, t = args.q, args.t
    out = {"q": q, "t": t, "simple": str(count_simple_submodules(q, t)),
           "maximal": str(count_maximal(q, t)), "mobius": str(mobius_power(q, t)),
           "by_length": [str(count_length_l(q, t, l)) for l in range(t + 1)]}
    if args.length is not None:
        out["length"] = args.length
        out["count"] = str(count_length_l(q, t, args.length))
    return out


def cmd_ortho(args) -> dict:
    M = _open(args.a).representation
    N = _open(args.b).representation
    ok, witness = is_poset_orthogonal(M, N, args.cap)
    obstruction = orthocyclic_obstruction(M, N, args.cap)
    out = {"poset_orthogonal": ok, "orthocyclic": obstruction is None}
    if witness is not None:
        out["witness"] = _subrep_json(witness)
    if obstruction is not None:
        side, U = obstruction
        out["hom_obstruction"] = {"side": side, "subrep": _subrep_json(U)}
    return out


def cmd_witness(args) -> dict:
    return decide_finiteness(_open(args.file).representation, enumerate_thin=False).to_json()


def cmd_invert(args) -> dict:
    M = _open(args.file).representation
    lat = enumerate_subreps(M, args.cap, args.threads)
    rng = random.Random(args.seed)
    if args.f == "one":
        f = {U.key(): Fraction(1) for U in lat}
    else:
        f = {U.key(): Fraction(rng.randint(-9, 9)) for U in lat}
    g = downward_sums(lat, f)
    full = mobius_inversion_module(M, g, args.cap, over="full")
    rad = mobius_inversion_module(M, g, args.cap, over="radical")
    expected = f[lat.elements[lat.top].key()]
    return {"f_top": str(expected), "full_sum": str(full), "radical_sum": str(rad),
            "recovered": full == rad == expected}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qmob", description="Möbius functions and submodule lattices "
                                 "of quiver representations.  FILE may be a path or corpus:NAME.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.set_defaults(func=fn)
        return p

    def enum_opts(p):
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)
        p.add_argument("--threads", type=int, default=1)

    with_file("validate", cmd_validate, "parse and validate a document")
    with_file("info", cmd_info, "dimension vector, flags, socle and radical")
    p = with_file("mobius", cmd_mobius, "Möbius value of the representation")
    p.add_argument("--method", choices=("closed", "brute", "both"), default="closed")
    enum_opts(p)
    p = with_file("lattice", cmd_lattice, "enumerate the submodule lattice")
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--json", metavar="PATH")
    enum_opts(p)
    p = sub.add_parser("count", help="submodule counts of S^t with |End S| = q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--length", type=int)
    p.set_defaults(func=cmd_count)
    p = sub.add_parser("ortho", help="poset-orthogonality and orthocyclicity of two documents")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_ortho)
    with_file("witness", cmd_witness, "finiteness verdict with an infinite-lattice witness")
    p = with_file("invert", cmd_invert, "Möbius inversion round trip on the lattice")
    p.add_argument("--f", choices=("random", "one"), default="random")
    p.add_argument("--seed", type=int, default=0)
    enum_opts(p)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}))
        return 2
    except ValidationError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc), "violations": exc.violations}))
        return 1
    except QrepSyntaxError as exc:
        print(json.dumps({"error": exc.code, "message": exc.message, "line": exc.line, "col": exc.col}))
        return 1
    except QmobError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}))
        return 1
    print(json.dumps(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
