"""Structure-preserving linearizations and the Cauchy-Maslov index.

All constructions share one pattern: pick the simple admissible tuple w
of {0:h} (h even), an admissible z + m of {0:m-h-1}, the symmetric
complements c_w and c_z, optionally type-1 decorations t_w / t_z, build
the GFPR through the generic recipe machinery, and left-multiply by the
unique sign-normalized quasi-identity that forces the target structure
on the polynomial part.  The sign at the border block is normalized to
+1 so the borders keep the realization's C and B unchanged.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import tuples as tp
from .pencils import (BlockPencil, GfprRecipe, RecipeError, gfpr, gfpr_poly,
                      trivial_assignment)
from .polymat import (block_transpose_dense, quasi_identity_matrix,
                      structure_check)
from .realize import StructuralViolation, jay, j_matrix

__all__ = [
    "QuasiIdentity", "AmbiguousQuasiIdentity", "find_quasi_identity",
    "block_symmetric_gfpr", "symmetric_linearization",
    "t_even_linearization", "t_odd_linearization",
    "hamiltonian_linearization", "skew_hamiltonian_linearization",
    "skew_symmetric_linearization", "cauchy_maslov_index",
    "t_pencil_tuples",
]


# ---------------------------------------------------------------------------
# quasi-identity search

@dataclass(frozen=True)
class QuasiIdentity:
    signs: tuple

    def matrix(self, n, r=0):
        return quasi_identity_matrix(self.signs, n, r)


class AmbiguousQuasiIdentity(RuntimeError):
    pass


def find_quasi_identity(L, target, tol=None, exact=False):
    """The quasi-identity Q (first parameter +1) with Q L(lam) having the
    target structure; exhaustive over the 2^(m-1) sign patterns.  Raises
    when none exists or more than one does."""
    m, n = L.m, L.n
    found = []
    for rest in itertools.product((1, -1), repeat=m - 1):
        signs = (1,) + rest
        Q = quasi_identity_matrix(signs, n)
        if structure_check([Q @ L.X, Q @ L.Y], target, tol=tol, exact=exact):
            found.append(signs)
    if not found:
        raise StructuralViolation(
            f"no quasi-identity makes this pencil {target}")
    if len(found) > 1:
        raise AmbiguousQuasiIdentity(
            f"{len(found)} quasi-identities make this pencil {target}: {found}")
    return QuasiIdentity(signs=found[0])


# ---------------------------------------------------------------------------
# block-symmetric GFPRs (symmetric family)

def _check_even_h(m, h):
    if not 0 <= h <= m - 1:
        raise RecipeError(f"h = {h} out of range 0..{m - 1}")
    if h % 2:
        raise StructuralViolation(
            f"h = {h} is odd: the simple admissible tuple of {{0:{h}}} has "
            "index 1 and no block-symmetric/structured construction exists")


def _rev_assign(mats):
    return None if mats is None else tp.rev(mats)


def symmetric_recipe(P, h, t_wh=(), t_vh=(), X=None, Y=None):
    """The GFPR recipe of the block-symmetric family:
    sigma = w_h, tau = v_h, sigma1 = t_wh, sigma2 = (c_wh, rev t_wh),
    tau1 = t_vh, tau2 = (c_vh, rev t_vh); the complements always carry
    the trivial assignment."""
    m = P.m
    _check_even_h(m, h)
    w = tp.simple_admissible(h)
    vp = tp.simple_admissible(m - h - 1)
    v = tp.shift(vp.entries, -m)
    c_w = tp.symmetric_complement(w)
    c_v = tp.shift(tp.symmetric_complement(vp), -m)
    t_wh, t_vh = tuple(t_wh), tuple(t_vh)
    if not tp.is_canonical_form(t_wh, h):
        raise RecipeError(f"t_wh = {t_wh} is not in canonical form for h = {h}")
    if not tp.is_canonical_form(tp.shift(t_vh, m), m - h - 1):
        raise RecipeError(
            f"t_vh + m = {tp.shift(t_vh, m)} is not in canonical form "
            f"for {m - h - 1}")
    X = None if X is None else tuple(np.asarray(M, dtype=complex) for M in X)
    Y = None if Y is None else tuple(np.asarray(M, dtype=complex) for M in Y)
    X2 = None if X is None else trivial_assignment(c_w, P) + tp.rev(X)
    Y2 = None if Y is None else trivial_assignment(c_v, P) + tp.rev(Y)
    return GfprRecipe(m=m, sigma=w.entries, tau=v,
                      sigma1=t_wh, sigma2=c_w + tp.rev(t_wh),
                      tau1=t_vh, tau2=c_v + tp.rev(t_vh),
                      X1=X, X2=X2, Y1=Y, Y2=Y2)


def block_symmetric_gfpr(re, h, t_wh=(), t_vh=(), X=None, Y=None, path="both"):
    """Block-symmetric GFPR of the realization; h must be even.  The
    borders coincide at block m - i_0(t_wh, w_h)."""
    recipe = symmetric_recipe(re.P, h, t_wh, t_vh, X, Y)
    if not recipe.assignments_nonsingular(re.P):
        raise RecipeError("assignment at an index 0 or -m position is singular")
    L = gfpr(recipe, re, path=path)
    if L.col_block != L.row_block:
        raise AssertionError("block-symmetric GFPR borders disagree")
    mn = re.m * re.n
    for M in (L.X, L.Y):
        H = M[:mn, :mn]
        scale = max(float(np.max(np.abs(H))), 1.0)
        if np.max(np.abs(block_transpose_dense(H, re.m, re.n) - H)) > 1e-12 * scale:
            raise AssertionError("GFPR polynomial part is not block-symmetric")
    return L


def symmetric_linearization(re, h, t_wh=(), t_vh=(), X=None, Y=None):
    """Symmetric Rosenbrock strong linearization of a symmetric G; needs
    a symmetric realization, symmetric matrix assignments, and a
    nonsingular A_m when m is even."""
    if re.structure != "symmetric":
        raise StructuralViolation("expects a symmetric realization")
    for name, mats in (("X", X), ("Y", Y)):
        for M in mats or ():
            M = np.asarray(M)
            if not np.array_equal(M.T, M):
                raise StructuralViolation(f"assignment in {name} is not symmetric")
    if re.m % 2 == 0 and abs(np.linalg.det(re.P.coeff(re.m))) == 0:
        raise StructuralViolation(
            "even m forces -m into c_v; A_m must be nonsingular")
    L = block_symmetric_gfpr(re, h, t_wh, t_vh, X, Y)
    rep = structure_check([L.X, L.Y], "symmetric")
    if not rep:
        raise AssertionError(f"constructed pencil failed the symmetry check: {rep}")
    return L


def t_pencil_tuples(m):
    """(t_wh, t_vh) decorations giving the block-tridiagonal member of
    the symmetric family (h = 0, t_vh = -m + (0:m-3, 0:m-5, ...))."""
    t = []
    k = m - 3
    while k >= 0:
        t += list(range(0, k + 1))
        k -= 2
    return (), tp.shift(tuple(t), -m)


# ---------------------------------------------------------------------------
# T-even / T-odd / Hamiltonian / skew families

def _resolve_z(hp, z):
    """Admissible tuple of {0:hp} from an index, entry tuple or None."""
    if z is None:
        return tp.simple_admissible(hp)
    if isinstance(z, tp.AdmissibleTuple):
        if z.h != hp:
            raise RecipeError(f"admissible tuple is for {{0:{z.h}}}, need {{0:{hp}}}")
        return z
    if isinstance(z, int):
        return tp.admissible_tuple(hp, z)
    entries = tuple(z)
    for p in range(hp + 1):
        try:
            cand = tp.admissible_tuple(hp, p)
        except ValueError:
            continue
        if cand.entries == entries:
            return cand
    raise RecipeError(f"{z} is not an admissible tuple of {{0:{hp}}}")


def _even_odd_recipe(re, h, z, t_w=(), t_z=()):
    """Common recipe of the T-even/T-odd/skew constructions:
    sigma = w, tau = z, sigma1 = rev(t_w), sigma2 = (c_w, t_w),
    tau1 = rev(t_z), tau2 = (c_z, t_z)."""
    P = re.P
    m = P.m
    _check_even_h(m, h)
    w = tp.simple_admissible(h)
    if isinstance(z, (tuple, list)) and z and min(z) < 0:
        z = tp.shift(tuple(z), m)   # accept z itself as well as z + m
    zadm = _resolve_z(m - h - 1, z)
    zt = tp.shift(zadm.entries, -m)
    c_w = tp.symmetric_complement(w)
    c_z = tp.shift(tp.symmetric_complement(zadm), -m)

    Am_singular = abs(np.linalg.det(P.coeff(m))) == 0
    if zadm.p > 0 and Am_singular:
        raise StructuralViolation(
            f"Ind(z + m) = {zadm.p} > 0 requires a nonsingular leading "
            "coefficient")

    t_w, t_z = tuple(t_w), tuple(t_z)
    if t_w or t_z:
        if not tp.is_type1_right(t_w, tp.rev(w.entries)):
            raise RecipeError(f"t_w = {t_w} is not type-1 right relative to rev(w)")
        if not tp.is_type1_right(tp.shift(t_z, m), tp.rev(zadm.entries)):
            raise RecipeError(
                f"t_z + m = {tp.shift(t_z, m)} is not type-1 right relative "
                "to rev(z + m)")
        if 0 in t_w and abs(np.linalg.det(P.coeff(0))) == 0:
            raise StructuralViolation("0 in t_w requires a nonsingular A_0")
        if -m in t_z and Am_singular:
            raise StructuralViolation("-m in t_z requires a nonsingular A_m")
    return GfprRecipe(m=m, sigma=w.entries, tau=zt,
                      sigma1=tp.rev(t_w), sigma2=c_w + t_w,
                      tau1=tp.rev(t_z), tau2=c_z + t_z)


def _sign_normalized(re, recipe, target):
    """Build the GFPR, find the unique Q making the polynomial part
    target-structured, normalize so the border-block sign is +1, and
    return the scaled pencil."""
    L = gfpr(recipe, re)
    LP = gfpr_poly(recipe, re.P)
    qi = find_quasi_identity(LP, target)
    alpha = recipe.right_index()
    if recipe.left_index() != alpha:
        raise AssertionError(
            f"border blocks disagree: i_0 = {recipe.left_index()}, "
            f"c_0 = {alpha}")
    s = qi.signs[re.m - alpha - 1]
    signs = tuple(s * e for e in qi.signs)
    Q = quasi_identity_matrix(signs, re.n, re.r)
    out = L.scaled_rows(Q)
    prov = dict(out.provenance)
    prov["quasi_identity"] = signs
    prov["target"] = target
    return BlockPencil(out.X, out.Y, out.m, out.n, out.r,
                       out.col_block, out.row_block, prov)


def _check_full(pencil, tag, J=None):
    cl = [pencil.X, pencil.Y]
    if J is not None:
        cl = [J @ pencil.X, J @ pencil.Y]
    rep = structure_check(cl, tag)
    if not rep:
        raise AssertionError(f"constructed pencil failed the {tag} check: {rep}")


def t_even_linearization(re, h=0, z=None):
    """T-even Rosenbrock strong linearization from a T-even realization;
    borders carry +/- nothing: +B^T at block m - i_0(w)."""
    if re.structure != "t-even":
        raise StructuralViolation("expects a T-even realization")
    recipe = _even_odd_recipe(re, h, z)
    out = _sign_normalized(re, recipe, "t-even")
    _check_full(out, "t-even")
    return out


def t_odd_linearization(re, h=0, z=None):
    """T-odd linearization from a T-odd realization; border -B^T at
    block m - i_0(w)."""
    if re.structure != "t-odd":
        raise StructuralViolation("expects a T-odd realization")
    recipe = _even_odd_recipe(re, h, z)
    out = _sign_normalized(re, recipe, "t-odd")
    _check_full(out, "t-odd")
    return out


def hamiltonian_linearization(re, h=0, z=None):
    """Hamiltonian linearization from a Hamiltonian realization: the
    T-even recipe applied verbatim; the result T satisfies
    J_{mn,r} T(lam) T-even."""
    if re.structure != "hamiltonian":
        raise StructuralViolation("expects a Hamiltonian realization")
    recipe = _even_odd_recipe(re, h, z)
    out = _sign_normalized(re, recipe, "t-even")
    _check_full(out, "t-even", J=jay(re.m * re.n, re.r))
    return out


def skew_symmetric_linearization(re, h=0, z=None, t_w=(), t_z=()):
    """Skew-symmetric linearization from a skew-symmetric realization,
    with optional type-1 decorations t_w (from {0:h-1}) and t_z (with
    t_z + m from {0:m-h-2})."""
    if re.structure != "skew-symmetric":
        raise StructuralViolation("expects a skew-symmetric realization")
    recipe = _even_odd_recipe(re, h, z, t_w, t_z)
    out = _sign_normalized(re, recipe, "skew-symmetric")
    _check_full(out, "skew-symmetric")
    return out


def skew_hamiltonian_linearization(re, h=0, z=None, t_w=(), t_z=()):
    """Skew-Hamiltonian linearization T of a skew-symmetric G from a
    skew-Hamiltonian realization: J_{mn,r} T(lam) is skew-symmetric."""
    if re.structure != "skew-hamiltonian":
        raise StructuralViolation("expects a skew-Hamiltonian realization")
    recipe = _even_odd_recipe(re, h, z, t_w, t_z)
    out = _sign_normalized(re, recipe, "skew-symmetric")
    _check_full(out, "skew-symmetric", J=jay(re.m * re.n, re.r))
    return out


# ---------------------------------------------------------------------------
# Cauchy-Maslov index

class CmResolutionError(RuntimeError):
    """Poles too close for the probe offset to separate them."""


def _cm_core(eval_fn, poles, delta, bound):
    from .kernels import jacobi_eigvals

    poles = sorted(poles)
    deltas = [delta if delta is not None else 1e-4 * (1.0 + abs(p)) for p in poles]
    for (p1, d1), (p2, d2) in zip(zip(poles, deltas), zip(poles[1:], deltas[1:])):
        if p2 - p1 < 2 * (d1 + d2):
            raise CmResolutionError(
                f"poles {p1} and {p2} are closer than the probe offsets")
    idx = 0
    details = []
    for p, d in zip(poles, deltas):
        # adaptive default: a residue of size rho produces probe values of
        # magnitude rho/d, so 0.1/d registers every residue above 0.1
        M = bound if bound is not None else 0.1 / d
        jumps = {}
        for side, lam in (("-", p - d), ("+", p + d)):
            G = eval_fn(lam)
            if np.max(np.abs(G.imag)) > 1e-8 * max(np.max(np.abs(G)), 1.0):
                raise ValueError(f"G({lam}) is not real; Cauchy-Maslov "
                                 "index needs a real symmetric matrix")
            G = (G.real + G.real.T) / 2.0
            ev = jacobi_eigvals(np.ascontiguousarray(G, dtype=np.float64),
                                1e-12, 100)
            jumps[side] = (int(np.sum(ev < -M)), int(np.sum(ev > M)))
        plus = min(jumps["-"][0], jumps["+"][1])    # -inf -> +inf
        minus = min(jumps["-"][1], jumps["+"][0])   # +inf -> -inf
        idx += plus - minus
        details.append((p, plus, minus))
    return idx, details


def cauchy_maslov_index(re_or_pencil, delta=None, bound=None, details=False):
    """Cauchy-Maslov index of a real symmetric G (realization input) or
    of the transfer function of a real symmetric linearization (pencil
    input): sum over real poles of the eigenvalue jumps through
    infinity, sign-counted."""
    from .realize import transfer_function_eval
    from .verify import pencil_eigenvalues

    if isinstance(re_or_pencil, BlockPencil):
        pencil = re_or_pencil
        k = pencil.m * pencil.n

        def ev(lam):
            return transfer_function_eval(pencil, lam)

        eigs = pencil_eigenvalues(pencil.X[k:, k:], pencil.Y[k:, k:])
    else:
        re = re_or_pencil

        def ev(lam):
            return re.g_eval(lam)

        if re.r == 0:
            return (0, []) if details else 0
        eigs = pencil_eigenvalues(re.A, -re.E)
    poles = [z.real for z, _ in eigs if abs(z.imag) <= 1e-8 * (1.0 + abs(z))]
    idx, det = _cm_core(ev, poles, delta, bound)
    return (idx, det) if details else idx
