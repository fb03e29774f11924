"""The ``mvs`` command line.

Exit codes: 0 success, 1 a checked property failed (a JSON counterexample is
printed), 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .classify import classify, is_perfect
from .corpus import CorpusSpec, default_corpus, emit
from .errors import ConsistencyError, MvsError
from .io import (
    algebra_from_json,
    algebra_to_json,
    emit_dot,
    lattice_hom_from_json,
    lattice_to_json,
    normal_form_from_json,
    poset_to_json,
)
from .lattice import (
    closed_defn_witness,
    closed_downsets_witness,
    closed_ideals_witness,
    closedness_verdicts,
    dual_closure_equalities,
    dual_preserves_closed,
    preserves_closed_witnesses,
    stone_dual,
)
from .lgroups import (
    LexGroup,
    SymbolicMvAlgebra,
    belluce,
    delta,
    gamma,
    idc,
    komori,
    symbolic_primes,
    symbolic_spec,
    verify_lspec,
)
from .mcnaughton import (
    eval_nf,
    homogeneity_violation,
    is_locally_homogeneous,
    is_syntactically_homogeneous,
    zero_at_origin_criterion,
    zeroset_1d,
)
from .mv import quotient, validate_algebra
from .spectra import enumerate_ideals, maximals, prime_ideals, radical, spec
from .verify import registry, run_verify

PASS, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _print(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False, default=str))


def _members(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


# --------------------------------------------------------------------------
# MV-algebras


def cmd_validate(args) -> int:
    data = json.loads(Path(args.algebra).read_text(encoding="utf-8"))
    if "oplus" not in data or "neg" not in data:
        raise UsageError("algebra file needs 'oplus' and 'neg'")
    report = validate_algebra(data["oplus"], data["neg"])
    _print({"size": len(data["neg"]), **report.as_dict()})
    return PASS if report.ok else FAIL


def cmd_spec(args) -> int:
    A = algebra_from_json(args.algebra)
    S = spec(A)
    if args.dot:
        Path(args.dot).write_text(emit_dot(S, "spec"), encoding="utf-8")
    if args.json or not args.dot:
        _print(poset_to_json(S))
    return PASS


def cmd_ideals(args) -> int:
    A = algebra_from_json(args.algebra)
    primes = {P.mask for P in prime_ideals(A)}
    maxes = {M.mask for M in maximals(A)}
    _print({"ideals": [{"members": I.members, "prime": I.mask in primes, "maximal": I.mask in maxes}
                       for I in enumerate_ideals(A)],
            "radical": radical(A).members})
    return PASS


def cmd_classify(args) -> int:
    A = algebra_from_json(args.algebra)
    ms = tuple(args.m) if args.m else (1, 2, 3, 4, 5, 6)
    _print(classify(A, ms).as_dict())
    return PASS


def _parse_members(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--ideal expects comma-separated integers, got {text!r}") from None


def cmd_quotient(args) -> int:
    A = algebra_from_json(args.algebra)
    members = _parse_members(args.ideal)
    if any(not 0 <= x < A.size for x in members):
        raise UsageError("ideal member outside the carrier")
    Q, h = quotient(A, members)
    _print({"quotient": algebra_to_json(Q), "projection": list(h.map)})
    return PASS


# --------------------------------------------------------------------------
# lattices


def cmd_check_closed(args) -> int:
    f = lattice_hom_from_json(args.hom)
    v = closedness_verdicts(f)
    out = v.as_dict()
    out["preserves_closed"] = dual_preserves_closed(f)
    out["dual_closure_equalities"] = dual_closure_equalities(f)
    witnesses = {"defn": closed_defn_witness(f), "downsets": closed_downsets_witness(f),
                 "ideals": closed_ideals_witness(f)}
    out["witnesses"] = {k: list(w) if w is not None else None for k, w in witnesses.items()}
    pw = preserves_closed_witnesses(f)
    if pw:
        P, I = pw[0]
        out["preserves_witness"] = {"prime": _members(P), "ideal": _members(I)}
    _print(out)
    return PASS if v.agree else FAIL


def cmd_lattice_dual(args) -> int:
    f = lattice_hom_from_json(args.hom)
    dual = stone_dual(f)
    _print({"dual": [{"prime": _members(q), "preimage": _members(p)} for q, p in sorted(dual.items())],
            "preserves_closed": dual_preserves_closed(f),
            "dual_closure_equalities": dual_closure_equalities(f)})
    return PASS


# --------------------------------------------------------------------------
# functors


def _parse_unit(text: str):
    try:
        return tuple(Fraction(t) for t in text.replace("(", "").replace(")", "").split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad unit {text!r}") from None


def _describe_symbolic(S: SymbolicMvAlgebra) -> dict:
    primes = symbolic_primes(S)
    Sp = symbolic_spec(S)
    return {"algebra": str(S), "group": str(S.group), "unit": S.format(S.unit),
            "finite": False, "group_rank": S.rank,
            "primes": [str(P) for P in primes],
            "spec": {"labels": [Sp.label(i) for i in range(Sp.size)],
                     "hasse": [list(e) for e in Sp.hasse_edges()]},
            "sample": [S.format(e) for e in S.sample(1)],
            "perfect": is_perfect(S)}


def _describe(A) -> dict:
    if isinstance(A, SymbolicMvAlgebra):
        return _describe_symbolic(A)
    return {"finite": True, **algebra_to_json(A)}


def cmd_functor(args) -> int:
    kind = args.kind
    if kind in ("gamma", "delta"):
        if not args.group:
            raise UsageError(f"functor {kind} needs --group")
        G = LexGroup.parse(args.group)
        if kind == "delta":
            _print(_describe(delta(G)))
            return PASS
        if not args.unit:
            raise UsageError("functor gamma needs --unit")
        _print(_describe(gamma(G, _parse_unit(args.unit))))
        return PASS
    if kind == "komori":
        if args.m is None:
            raise UsageError("functor komori needs --m")
        _print(_describe(komori(args.m)))
        return PASS
    if not args.algebra:
        raise UsageError(f"functor {kind} needs an algebra file")
    A = algebra_from_json(args.algebra)
    L = belluce(A) if kind == "belluce" else idc(A)
    if args.dot:
        Path(args.dot).write_text(emit_dot(L, kind), encoding="utf-8")
    _print(lattice_to_json(L))
    return PASS


# --------------------------------------------------------------------------
# McNaughton functions


def _parse_point(text: str) -> tuple:
    try:
        return tuple(Fraction(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad point {text!r}") from None


def cmd_mcn(args) -> int:
    phi = normal_form_from_json(args.nf)
    if args.action == "eval":
        if not args.at:
            raise UsageError("mcn eval needs --at")
        _print({"form": str(phi), "at": args.at, "value": str(eval_nf(phi, _parse_point(args.at)))})
    elif args.action == "homog":
        out = {"form": str(phi), "homogeneous": is_syntactically_homogeneous(phi),
               "zero_at_origin": zero_at_origin_criterion(phi),
               "locally_homogeneous": is_locally_homogeneous(phi)}
        bad = homogeneity_violation(phi)
        if bad is not None:
            x, n = bad
            out["violation"] = {"x": [str(c) for c in x], "n": n}
        _print(out)
    else:
        if phi.arity != 1:
            raise UsageError("exact zerosets are computed for arity 1 only")
        Z = zeroset_1d(phi)
        _print({"form": str(phi), "zeroset": str(Z), "parts": Z.to_json()})
    return PASS


# --------------------------------------------------------------------------
# verify and corpus


def _corpus_spec(args) -> CorpusSpec:
    return CorpusSpec(max_algebra_size=args.max_algebra_size,
                      max_product_size=args.max_product_size,
                      max_lattice_size=args.max_lattice_size, seed=args.seed)


def cmd_verify(args) -> int:
    if args.list:
        _print(registry())
        return PASS
    ids = list(args.ids)
    if ids[:1] == ["lspec"]:
        if not args.group:
            raise UsageError("verify lspec needs --group")
        ok = verify_lspec(LexGroup.parse(args.group))
        _print({"group": args.group, "lspec": ok})
        return PASS if ok else FAIL
    if args.only is not None:
        ids += [t for t in args.only.split(",") if t.strip()]
        selection = ids
    else:
        selection = ids or None
    report = run_verify(_corpus_spec(args), selection, jobs=args.jobs)
    _print(report.as_dict(timings=not args.no_timings))
    return PASS if report.ok else FAIL


def cmd_corpus_emit(args) -> int:
    manifest = emit(default_corpus(_corpus_spec(args)), args.out)
    _print({"out": args.out, "files": len(manifest["files"])})
    return PASS


# --------------------------------------------------------------------------


def _add_corpus_options(p) -> None:
    d = CorpusSpec()
    p.add_argument("--max-algebra-size", type=int, default=d.max_algebra_size)
    p.add_argument("--max-product-size", type=int, default=d.max_product_size)
    p.add_argument("--max-lattice-size", type=int, default=d.max_lattice_size)
    p.add_argument("--seed", type=int, default=d.seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvs", description="Finite MV-algebras, spectra and dualities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the MV-algebra axioms on a table")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("spec", help="prime spectrum as a poset")
    p.add_argument("algebra")
    p.add_argument("--dot")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spec)

    p = sub.add_parser("ideals", help="all ideals, flagged prime/maximal")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("classify", help="perfect/local/semisimple/rank/varieties")
    p.add_argument("algebra")
    p.add_argument("--m", type=int, action="append")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("quotient", help="quotient by an ideal")
    p.add_argument("algebra")
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("hom", help="lattice homomorphisms")
    hs = p.add_subparsers(dest="action", required=True)
    q = hs.add_parser("check-closed")
    q.add_argument("hom")
    q.set_defaults(func=cmd_check_closed)

    p = sub.add_parser("lattice", help="lattice duality")
    ls = p.add_subparsers(dest="action", required=True)
    q = ls.add_parser("dual")
    q.add_argument("hom")
    q.set_defaults(func=cmd_lattice_dual)

    p = sub.add_parser("functor", help="Γ, Δ, Belluce, Id_c, Komori")
    p.add_argument("kind", choices=["gamma", "delta", "belluce", "idc", "komori"])
    p.add_argument("algebra", nargs="?")
    p.add_argument("--group")
    p.add_argument("--unit")
    p.add_argument("--m", type=int)
    p.add_argument("--dot")
    p.set_defaults(func=cmd_functor)

    p = sub.add_parser("mcn", help="McNaughton normal forms")
    p.add_argument("action", choices=["eval", "homog", "zeroset"])
    p.add_argument("nf")
    p.add_argument("--at")
    p.set_defaults(func=cmd_mcn)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("ids", nargs="*")
    p.add_argument("--only", help="comma-separated suite ids; an empty value selects nothing")
    p.add_argument("--group")
    p.add_argument("--list", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timings", action="store_true")
    _add_corpus_options(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="the fixed test corpus")
    cs = p.add_subparsers(dest="action", required=True)
    q = cs.add_parser("emit")
    q.add_argument("--out", required=True)
    _add_corpus_options(q)
    q.set_defaults(func=cmd_corpus_emit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else PASS
    try:
        return args.func(args)
    except ConsistencyError as exc:
        _print({"error": "ConsistencyError", "message": str(exc)})
        return FAIL
    except (UsageError, MvsError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"mvs: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
