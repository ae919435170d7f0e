"""Command-line interface with deterministic JSON reports.

Every subcommand prints one JSON object: tool_version, input_digest,
command, results, and a checks list.  Exit code 0 means every check
passed, 1 means some check failed, 2 means the invocation or input
file was unusable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .abelres import (
    DegreeTooHigh,
    NotAbelian,
    _formal_basis,
    build_resolution,
    resolution_homology,
)
from .classical import classical_cohomology, delta_cl_matrix
from .dsl import (
    AlgebraFile,
    DslSyntaxError,
    DuplicateLabel,
    NonPrimeModulus,
    UnresolvedReference,
    build,
    emit,
    parse,
    parse_cocycle,
    structure_constants,
    witt_file,
)
from .field import verify_identities
from .gmod import adjoint_module, trivial_module, verify_module
from .interp import NotACocycle, deformation_check, inner_derivations, restricted_derivations
from .liealg import (
    NotRestrictable,
    RestrictedLieAlgebra,
    UnsupportedPrime,
    VerificationFailed,
    infer_p_operator,
    verify_restricted,
    witt_algebra,
)
from .rescochain import Cochain2, compare_classical, restricted_cohomology
from .ures import TooLarge

_USAGE_ERRORS = (
    DslSyntaxError,
    NonPrimeModulus,
    DuplicateLabel,
    UnresolvedReference,
    NotAbelian,
    DegreeTooHigh,
    NotACocycle,
    UnsupportedPrime,
    VerificationFailed,
    TooLarge,
    FileNotFoundError,
    ValueError,
)


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return repr(x)


def _digest(parts: list[bytes]) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part)
    return h.hexdigest()


def _clean_checks(checks: list[dict]) -> list[dict]:
    out = []
    for ch in checks:
        entry = {"name": str(ch["name"]), "pass": bool(ch["pass"])}
        if not entry["pass"] and ch.get("counterexample") is not None:
            entry["counterexample"] = _jsonable(ch["counterexample"])
        out.append(entry)
    return out


def _load(path: str) -> tuple[AlgebraFile, bytes]:
    data = Path(path).read_bytes()
    return parse(data.decode("utf-8")), data


def _pick_module(L, af: AlgebraFile, modules: dict, name: str):
    if name == "trivial":
        return trivial_module(L, 1)
    if name == "adjoint":
        return adjoint_module(L)
    if name in modules:
        return modules[name]
    raise UnresolvedReference(f"no module named {name!r} in the file")


def _cmd_validate(args):
    data = Path(args.file).read_bytes()
    af = parse(data.decode("utf-8"))
    L, modules = build(af, check=False)
    report = verify_restricted(L)
    checks = list(report["checks"])
    for name, M in modules.items():
        mrep = verify_module(M)
        checks.append({"name": f"module_{name}_axioms", "pass": mrep["pass"],
                       "counterexample": None if mrep["pass"] else mrep["checks"]})
    results = {
        "name": af.name,
        "p": af.p,
        "dim": len(af.basis),
        "modules": {mb.name: mb.dim for mb in af.modules},
    }
    return results, checks, [data]


def _cmd_cohomology(args):
    af, data = _load(args.file)
    L, modules = build(af)
    M = _pick_module(L, af, modules, args.module)
    k = args.degree
    checks = []
    if args.classical:
        dim, _ = classical_cohomology(L, M, k)
        results = {"module": args.module, "degree": k, "classical_dim": dim}
        return results, checks, [data]
    if k > 2:
        raise ValueError("restricted cohomology is available for degrees 0..2; "
                         "use --classical for higher degrees")
    rdim, _ = restricted_cohomology(L, M, k)
    cdim, _ = classical_cohomology(L, M, k)
    results = {"module": args.module, "degree": k,
               "restricted_dim": rdim, "classical_dim": cdim}
    if k == 0:
        checks.append({"name": "h0_matches_classical", "pass": rdim == cdim})
    else:
        _, kernel = compare_classical(L, M, k)
        results["comparison_kernel_dim"] = kernel
        if k == 1:
            checks.append({"name": "h1_injects_into_classical", "pass": kernel == 0})
    return results, checks, [data]


def _cmd_dims(args):
    af, data = _load(args.file)
    L, modules = build(af)
    n, p = L.n, L.p
    coeffs = {"trivial": trivial_module(L, 1), "adjoint": adjoint_module(L)}
    coeffs.update(modules)
    results = {"p": p, "dim": n, "spaces": {}}
    for name, M in coeffs.items():
        m = M.m
        entry = {
            "classical": [math.comb(n, q) * m for q in range(n + 1)],
            "restricted_C2": n * (n + 1) // 2 * m,
            "restricted_C3": n * (n + 1) * (n + 2) // 6 * m,
        }
        if L.is_abelian:
            entry["abelian_dual"] = [math.comb(n + k - 1, k) * m for k in range(p)]
        results["spaces"][name] = entry
    checks = []
    T = coeffs["trivial"]
    from .rescochain import delta1_matrix, delta2_matrix

    checks.append({
        "name": "c2_dim_matches_matrix",
        "pass": delta1_matrix(L, T).shape[0] == results["spaces"]["trivial"]["restricted_C2"],
    })
    checks.append({
        "name": "c3_dim_matches_matrix",
        "pass": delta2_matrix(L, T).shape[0] == results["spaces"]["trivial"]["restricted_C3"],
    })
    checks.append({
        "name": "classical_dims_match_matrix",
        "pass": delta_cl_matrix(L, T, 1).shape
        == (math.comb(n, 2), math.comb(n, 1)),
    })
    if L.is_abelian:
        checks.append({
            "name": "abelian_dual_dims_match_bidegree_count",
            "pass": all(
                len(_formal_basis(n, k)) == math.comb(n + k - 1, k) for k in range(p)
            ),
        })
    return results, checks, [data]


def _cmd_derivations(args):
    af, data = _load(args.file)
    L, _ = build(af)
    D = restricted_derivations(L)
    inner = inner_derivations(L)
    A = adjoint_module(L)
    h1, _ = restricted_cohomology(L, A, 1)
    results = {
        "derivation_dim": D.dim,
        "inner_dim": inner.dim,
        "outer_dim": D.dim - inner.dim,
        "h1_adjoint_dim": h1,
        "exhaustive": D.exhaustive,
    }
    checks = [{"name": "outer_equals_h1_adjoint", "pass": D.dim - inner.dim == h1}]
    return results, checks, [data]


def _cmd_resolve(args):
    af, data = _load(args.file)
    L, _ = build(af)
    res = build_resolution(L, args.kmax)
    hom = [resolution_homology(res, k) for k in range(args.kmax + 1)]
    results = {
        "kmax": args.kmax,
        "slice_dims": [len(s.basis) for s in res.slices],
        "homology": hom,
    }
    checks = [
        {"name": f"h{k}_vanishes", "pass": hom[k] == 0} for k in range(args.kmax + 1)
    ]
    return results, checks, [data]


def _cmd_deform_check(args):
    af, data = _load(args.file)
    L, _ = build(af)
    cdata = Path(args.cocycle).read_bytes()
    phi, omega = parse_cocycle(cdata.decode("utf-8"), af)
    rep = deformation_check(L, Cochain2(phi, omega))
    results = {
        "restricted": rep["restricted"],
        "cocycle": rep["cocycle"],
        "failing": _jsonable(rep["failing"]),
    }
    checks = [{"name": "deformation_matches_cocycle_predicate", "pass": rep["agrees"]}]
    return results, checks, [data, cdata]


def _cmd_identities(args):
    report = verify_identities(args.p)
    results = {"p": args.p, "families": [c["name"] for c in report]}
    return results, report, [f"identities:p={args.p}".encode()]


def _cmd_witt(args):
    L, _rep = witt_algebra(args.p)
    af = witt_file(args.p)
    checks = [
        {"name": "verify_restricted", "pass": verify_restricted(L)["pass"]},
        {"name": "emit_parse_roundtrip", "pass": parse(emit(af)) == af},
    ]
    written = None
    if args.emit:
        Path(args.emit).write_text(emit(af), encoding="utf-8")
        written = args.emit
    results = {"p": args.p, "dim": args.p, "written": written}
    return results, checks, [f"witt:p={args.p}".encode()]


def _cmd_infer(args):
    data = Path(args.file).read_bytes()
    af = parse(data.decode("utf-8"), require_pmap=False)
    c = structure_constants(af)
    try:
        pi = infer_p_operator(c, af.p)
    except NotRestrictable as exc:
        checks = [{"name": "p_operator_exists", "pass": False,
                   "counterexample": str(exc)}]
        return {"name": af.name}, checks, [data]
    lines = []
    for i, label in enumerate(af.basis):
        terms = [(int(pi[i, k]), af.basis[k]) for k in range(len(af.basis)) if pi[i, k]]
        rhs = "+".join(f"{cf}*{lab}" for cf, lab in terms) if terms else "0"
        lines.append(f"pmap {label}^[p] = {rhs}")
    results = {"name": af.name, "pi": pi.tolist(), "pmap_lines": lines}
    return results, [{"name": "p_operator_exists", "pass": True}], [data]


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rescoh",
                                 description="restricted Lie algebra cohomology")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="axiom report for a definition file")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("cohomology", help="restricted and classical dimensions")
    sp.add_argument("file")
    sp.add_argument("--module", default="trivial",
                    help="module name from the file, or trivial/adjoint")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--classical", action="store_true",
                    help="classical cohomology only (any degree)")
    sp.set_defaults(func=_cmd_cohomology)

    sp = sub.add_parser("dims", help="cochain dimension formulas")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_dims)

    sp = sub.add_parser("derivations", help="restricted derivations vs H1")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_derivations)

    sp = sub.add_parser("resolve", help="abelian resolution homology")
    sp.add_argument("file")
    sp.add_argument("--kmax", type=int, required=True)
    sp.set_defaults(func=_cmd_resolve)

    sp = sub.add_parser("deform-check", help="deformation vs cocycle predicate")
    sp.add_argument("file")
    sp.add_argument("--cocycle", required=True)
    sp.set_defaults(func=_cmd_deform_check)

    sp = sub.add_parser("identities", help="binomial identity families over GF(p)")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=_cmd_identities)

    sp = sub.add_parser("witt", help="built-in Witt algebra, optionally emitted")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--emit", metavar="PATH", default=None)
    sp.set_defaults(func=_cmd_witt)

    sp = sub.add_parser("infer", help="infer a p-operator from brackets")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_infer)
    return ap


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        results, checks, digest_parts = args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    checks = _clean_checks(checks)
    report = {
        "tool_version": __version__,
        "input_digest": _digest(digest_parts),
        "command": args.command,
        "results": _jsonable(results),
        "checks": checks,
    }
    print(json.dumps(report, indent=2))
    return 0 if all(c["pass"] for c in checks) else 1


if __name__ == "__main__":
    sys.exit(main())
