"""Command-line front end.

Thin shell over the library: every subcommand is a straight sequence of
library calls on schema-validated JSON.  Matrices are nested lists whose
entries are numbers or strings accepted by ``complex()``; output JSON
round-trips through the same parser.

Exit codes: 0 ok, 2 schema/usage, 3 recipe-invalid, 4 structural
violation, 5 numeric failure, 6 check failed.
"""

import argparse
import json
import sys

import numpy as np

from .pencils import BlockPencil, GfprRecipe, RecipeError, fiedler_pencil, \
    gf_pencil, gfpr
from .polymat import MatrixPolynomial, structure_check
from .realize import Realization, StructuralViolation, \
    make_structured_realization, system_matrix
from .recover import RecoveryDiagnostic, VectorBundle, recover_from_gfpr, \
    recover_s_to_g
from .structured import CmResolutionError, cauchy_maslov_index, \
    hamiltonian_linearization, skew_hamiltonian_linearization, \
    skew_symmetric_linearization, symmetric_linearization, \
    t_even_linearization, t_odd_linearization
from .verify import VerificationFailure, appendix_witnesses, \
    det_proportionality, infinity_structure, multiset_distance, \
    eig_multiset, pencil_eigenvalues

EXIT_SCHEMA = 2
EXIT_RECIPE = 3
EXIT_STRUCTURAL = 4
EXIT_NUMERIC = 5
EXIT_CHECK = 6


class SchemaError(ValueError):
    pass


# ---------------------------------------------------------------------------
# JSON <-> matrices

def _entry_in(v):
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, str):
        try:
            return complex(v)
        except ValueError as exc:
            raise SchemaError(f"bad matrix entry {v!r}") from exc
    raise SchemaError(f"bad matrix entry {v!r}")


def _mat_in(obj, what="matrix"):
    if not isinstance(obj, list) or not obj or not all(
            isinstance(row, list) for row in obj):
        raise SchemaError(f"{what} must be a nested list")
    try:
        return np.array([[_entry_in(v) for v in row] for row in obj],
                        dtype=complex)
    except ValueError as exc:
        raise SchemaError(f"ragged {what}") from exc


def _entry_out(z):
    z = complex(z)
    if z.imag == 0.0:
        return z.real
    return repr(z).strip("()")


def _mat_out(M):
    return [[_entry_out(v) for v in row] for row in np.asarray(M)]


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object")
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise SchemaError(f"unknown keys in {where}: {unknown}")


def _load_json(path, what):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {what} {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# schemas

_STRUCTURED_KINDS = ("symmetric", "t-even", "t-odd", "hamiltonian",
                     "skew-hamiltonian", "skew-symmetric")


def _parse_realization(obj):
    _check_keys(obj, {"kind", "P", "C", "E", "A", "B"}, "realization")
    kind = obj.get("kind", "general")
    for key in ("P", "A", "B"):
        if key not in obj:
            raise SchemaError(f"realization is missing {key!r}")
    P = obj["P"]
    if not isinstance(P, list) or not P:
        raise SchemaError("P must be a list of coefficient matrices")
    P = MatrixPolynomial([_mat_in(c, f"P[{k}]") for k, c in enumerate(P)])
    A = _mat_in(obj["A"], "A")
    B = _mat_in(obj["B"], "B")
    E = _mat_in(obj["E"], "E") if "E" in obj else None
    if kind == "general":
        if "C" not in obj:
            raise SchemaError("general realization needs C")
        C = _mat_in(obj["C"], "C")
        if E is None:
            E = np.eye(A.shape[0], dtype=complex)
        return Realization(P, C=C, E=E, A=A, B=B)
    if kind not in _STRUCTURED_KINDS:
        raise SchemaError(f"unknown realization kind {kind!r}")
    if "C" in obj:
        raise SchemaError(f"{kind} realization determines C; do not pass it")
    return make_structured_realization(kind, P, A, B, E=E)


def _parse_recipe(obj):
    allowed = {"m", "sigma", "tau", "sigma1", "sigma2", "tau1", "tau2",
               "X1", "X2", "Y1", "Y2"}
    _check_keys(obj, allowed, "recipe")
    for key in ("m", "sigma", "tau"):
        if key not in obj:
            raise SchemaError(f"recipe is missing {key!r}")
    kw = {"m": obj["m"]}
    for key in ("sigma", "tau", "sigma1", "sigma2", "tau1", "tau2"):
        kw[key] = tuple(obj.get(key, ()))
    for key in ("X1", "X2", "Y1", "Y2"):
        if obj.get(key) is not None:
            kw[key] = tuple(_mat_in(M, key) for M in obj[key])
    return GfprRecipe(**kw)


def _pencil_out(L):
    out = {"X": _mat_out(L.X), "Y": _mat_out(L.Y), "m": L.m, "n": L.n,
           "r": L.r, "col_block": L.col_block, "row_block": L.row_block}
    prov = L.provenance
    if "quasi_identity" in prov:
        out["quasi_identity"] = list(prov["quasi_identity"])
    if "target" in prov:
        out["target"] = prov["target"]
    recipe = prov.get("recipe")
    if recipe is not None:
        out["recipe"] = {"m": recipe.m,
                         "sigma": list(recipe.sigma),
                         "tau": list(recipe.tau),
                         "sigma1": list(recipe.sigma1),
                         "sigma2": list(recipe.sigma2),
                         "tau1": list(recipe.tau1),
                         "tau2": list(recipe.tau2)}
    return out


def _parse_pencil(obj):
    _check_keys(obj, {"X", "Y", "m", "n", "r", "col_block", "row_block",
                      "quasi_identity", "target", "recipe"}, "pencil")
    for key in ("X", "Y", "m", "n", "r"):
        if key not in obj:
            raise SchemaError(f"pencil is missing {key!r}")
    prov = {}
    if "quasi_identity" in obj:
        prov["quasi_identity"] = tuple(obj["quasi_identity"])
    if "target" in obj:
        prov["target"] = obj["target"]
    if "recipe" in obj:
        prov["recipe"] = _parse_recipe(obj["recipe"])
    return BlockPencil(_mat_in(obj["X"], "X"), _mat_in(obj["Y"], "Y"),
                       obj["m"], obj["n"], obj["r"],
                       obj.get("col_block"), obj.get("row_block"),
                       provenance=prov)


def _parse_problem(path):
    obj = _load_json(path, "problem file")
    _check_keys(obj, {"realization", "recipe", "options"}, "problem file")
    if "realization" not in obj:
        raise SchemaError("problem file is missing 'realization'")
    re = _parse_realization(obj["realization"])
    recipe = obj.get("recipe")
    options = obj.get("options", {})
    _check_keys(options, {"tol", "seed", "h", "z", "t_w", "t_z",
                          "t_wh", "t_vh", "X", "Y", "omega0", "omega1"},
                "options")
    return re, recipe, options


def _emit(data, args):
    text = json.dumps(data, indent=2 if args.pretty else None)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands

def _structured_build(re, kind, options):
    h = int(options.get("h", 0))
    if kind == "symmetric":
        X = options.get("X")
        Y = options.get("Y")
        return symmetric_linearization(
            re, h, tuple(options.get("t_wh", ())), tuple(options.get("t_vh", ())),
            X=None if X is None else tuple(_mat_in(M, "X") for M in X),
            Y=None if Y is None else tuple(_mat_in(M, "Y") for M in Y))
    z = options.get("z")
    z = tuple(z) if isinstance(z, list) else z
    if kind == "t-even":
        return t_even_linearization(re, h, z)
    if kind == "t-odd":
        return t_odd_linearization(re, h, z)
    if kind == "hamiltonian":
        return hamiltonian_linearization(re, h, z)
    t_w = tuple(options.get("t_w", ()))
    t_z = tuple(options.get("t_z", ()))
    if kind == "skew-symmetric":
        return skew_symmetric_linearization(re, h, z, t_w, t_z)
    if kind == "skew-hamiltonian":
        return skew_hamiltonian_linearization(re, h, z, t_w, t_z)
    raise SchemaError(f"unknown structured kind {kind!r}")


def cmd_build(args):
    re, recipe_obj, options = _parse_problem(args.problem)
    if args.recipe:
        recipe_obj = _load_json(args.recipe, "recipe file")
    kind = args.kind
    if kind == "fp":
        if recipe_obj is None or "sigma" not in recipe_obj:
            raise SchemaError("fp build needs a recipe with 'sigma'")
        L = fiedler_pencil(tuple(recipe_obj["sigma"]), re)
    elif kind == "gfp":
        omega0 = options.get("omega0") or (recipe_obj or {}).get("omega0")
        omega1 = options.get("omega1") or (recipe_obj or {}).get("omega1")
        if omega0 is None or omega1 is None:
            raise SchemaError("gfp build needs omega0 and omega1")
        L = gf_pencil(tuple(omega0), tuple(omega1), re)
    elif kind == "gfpr":
        if recipe_obj is None:
            raise SchemaError("gfpr build needs a recipe")
        L = gfpr(_parse_recipe(recipe_obj), re)
    elif kind.startswith("structured:"):
        skind = kind.split(":", 1)[1]
        if args.h is not None:
            options = dict(options, h=args.h)
        L = _structured_build(re, skind, options)
    else:
        raise SchemaError(f"unknown build kind {kind!r}")
    _emit(_pencil_out(L), args)
    return 0


def cmd_structured(args):
    re, _, options = _parse_problem(args.spec)
    if args.h is not None:
        options = dict(options, h=args.h)
    L = _structured_build(re, args.kind, options)
    out = _pencil_out(L)
    tag = L.provenance.get("target", re.structure)
    rep = structure_check([L.X, L.Y], tag) if tag in (
        "symmetric", "t-even", "t-odd", "skew-symmetric") else None
    if rep is not None:
        out["structure_report"] = {"tag": rep.tag, "ok": bool(rep),
                                   "deviation": rep.deviation}
    _emit(out, args)
    return 0


def cmd_verify(args):
    re, _, options = _parse_problem(args.problem)
    tol = args.tol if args.tol is not None else float(options.get("tol", 1e-8))
    L = _parse_pencil(_load_json(args.pencil, "pencil file"))
    S = system_matrix(re)
    checks = []

    def check(name, fn):
        try:
            detail = fn()
            checks.append({"name": name, "ok": True, "detail": detail})
        except (VerificationFailure, AssertionError) as exc:
            checks.append({"name": name, "ok": False, "detail": str(exc)})

    def _prop():
        rep = det_proportionality(L, S, tol=tol)
        return {"constant": _entry_out(rep.constant),
                "deviation": rep.deviation, "degree": rep.degree}

    check("det-proportionality", _prop)

    def _eig_match():
        eigs = eig_multiset(pencil_eigenvalues(L.X, L.Y))
        worst = 0.0
        for z in eigs:
            V = S(z)
            s = np.linalg.svd(V, compute_uv=False)
            worst = max(worst, float(s[-1] / max(s[0], 1e-300)))
        if worst > max(1e-6, tol):
            raise VerificationFailure(
                f"a pencil eigenvalue misses the system matrix: "
                f"relative residual {worst:.3e}")
        return {"max_relative_residual": worst, "count": len(eigs)}

    check("eigenvalue-residual", _eig_match)

    def _inf():
        rep = infinity_structure(L, S)
        if not rep.consistent:
            raise VerificationFailure("infinity structure inconsistent")
        return {"inf_count": rep.inf_count}

    check("infinity-structure", _inf)

    if args.paranoid:
        def _appendix():
            import itertools
            worst = 0.0
            for alpha in itertools.permutations(range(re.m)):
                rep = appendix_witnesses(alpha, re.P)
                worst = max(worst, rep.max_residual)
            if worst > 1e-10:
                raise VerificationFailure(f"appendix residual {worst:.3e}")
            return {"max_residual": worst}
        check("appendix-witnesses", _appendix)

    ok = all(c["ok"] for c in checks)
    _emit({"ok": ok, "checks": checks}, args)
    return 0 if ok else EXIT_CHECK


def cmd_recover(args):
    L = _parse_pencil(_load_json(args.pencil, "pencil file"))
    recipe = _parse_recipe(_load_json(args.recipe, "recipe file"))
    basis = _load_json(args.basis, "basis file")
    _check_keys(basis, {"data", "kind", "side", "degrees"}, "basis")
    data = _mat_in(basis["data"], "basis data")
    bundle = VectorBundle(data=data, kind=basis.get("kind", "eigenvector-basis"),
                          side=basis.get("side", args.side),
                          degrees=tuple(basis["degrees"]) if basis.get("degrees")
                          else None,
                          split=(L.m * L.n, L.r))
    s_level = recover_from_gfpr(bundle, recipe, side=args.side)
    g_level = recover_s_to_g(s_level)
    _emit({"system": _mat_out(s_level.eval(0)),
           "g": _mat_out(g_level.eval(0)),
           "side": args.side}, args)
    return 0


def cmd_eig(args):
    L = _parse_pencil(_load_json(args.pencil, "pencil file"))
    pairs = pencil_eigenvalues(L.X, L.Y)
    _emit({"eigenvalues": [{"value": _entry_out(z), "multiplicity": k}
                           for z, k in pairs]}, args)
    return 0


def cmd_cm_index(args):
    re, _, options = _parse_problem(args.problem)
    idx = cauchy_maslov_index(re, delta=args.delta, bound=args.bound)
    _emit({"cauchy_maslov_index": idx}, args)
    return 0


def cmd_examples(args):
    from .examples import list_examples, run_all
    if args.list:
        for eid, desc in list_examples():
            print(f"{eid:12s} {desc}")
        return 0
    results = run_all(seed=args.seed)
    width = max(len(r.eid) for r in results)
    ok = True
    for r in results:
        ok &= r.ok
        print(f"{r.eid:{width}s}  {'PASS' if r.ok else 'FAIL'}  {r.detail}")
    return 0 if ok else EXIT_CHECK


# ---------------------------------------------------------------------------

def _common(sp):
    sp.add_argument("--out", help="write JSON here instead of stdout")
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--paranoid", action="store_true")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false",
                     default=False, help="compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true")


def build_parser():
    ap = argparse.ArgumentParser(prog="rosepencil")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="construct a pencil from a problem file")
    sp.add_argument("--kind", required=True,
                    help="fp | gfp | gfpr | structured:<kind>")
    sp.add_argument("--problem", required=True)
    sp.add_argument("--recipe")
    sp.add_argument("--h", type=int, default=None)
    _common(sp)
    sp.set_defaults(fn=cmd_build)

    sp = sub.add_parser("structured", help="structured linearization")
    sp.add_argument("--kind", required=True, choices=_STRUCTURED_KINDS)
    sp.add_argument("--h", type=int, default=None)
    sp.add_argument("--spec", required=True)
    _common(sp)
    sp.set_defaults(fn=cmd_structured)

    sp = sub.add_parser("verify", help="verification suite on a pencil")
    sp.add_argument("--problem", required=True)
    sp.add_argument("--pencil", required=True)
    _common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("recover", help="system/G-level vectors from a bundle")
    sp.add_argument("--pencil", required=True)
    sp.add_argument("--basis", required=True)
    sp.add_argument("--recipe", required=True)
    sp.add_argument("--side", choices=("right", "left"), default="right")
    _common(sp)
    sp.set_defaults(fn=cmd_recover)

    sp = sub.add_parser("eig", help="eigenvalues of a pencil")
    sp.add_argument("--pencil", required=True)
    _common(sp)
    sp.set_defaults(fn=cmd_eig)

    sp = sub.add_parser("cm-index", help="Cauchy-Maslov index")
    sp.add_argument("--problem", required=True)
    sp.add_argument("--delta", type=float, default=None)
    sp.add_argument("--bound", type=float, default=None)
    _common(sp)
    sp.set_defaults(fn=cmd_cm_index)

    sp = sub.add_parser("examples", help="run the embedded example corpus")
    sp.add_argument("--list", action="store_true")
    _common(sp)
    sp.set_defaults(fn=cmd_examples)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        code = EXIT_SCHEMA
    except RecipeError as exc:
        print(f"recipe error: {exc}", file=sys.stderr)
        code = EXIT_RECIPE
    except StructuralViolation as exc:
        print(f"structural violation: {exc}", file=sys.stderr)
        code = EXIT_STRUCTURAL
    except (np.linalg.LinAlgError, CmResolutionError,
            RecoveryDiagnostic) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        code = EXIT_NUMERIC
    except VerificationFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        code = EXIT_CHECK
    sys.exit(code)


if __name__ == "__main__":
    main()
