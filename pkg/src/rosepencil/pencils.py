"""FP, GFP and GFPR pencil builders.

Convention: a BlockPencil stores the pair (X, Y) with value X + lam*Y.
The families are written lam*M_tau - M_sigma in product form, so the
builders set X = -(product without the lam factor) and Y = (lam factor).

Every builder offers two construction paths -- the raw product of
Fiedler factors, and the operation-free bordered formula -- and
``path="both"`` (the default) asserts they agree elementwise.
"""

from dataclasses import dataclass, field

import numpy as np

from . import tuples as tp
from .polymat import (
    PolyMatrix,
    elementary_matrix,
    fiedler_matrix_P,
    fiedler_matrix_S,
)

__all__ = [
    "BlockPencil", "GfprRecipe", "RecipeError",
    "fiedler_pencil", "gf_pencil", "gfpr", "gfpr_poly",
    "trivial_assignment",
]


class RecipeError(ValueError):
    """A construction recipe violates the family's preconditions."""


@dataclass(frozen=True)
class BlockPencil:
    """Square pencil X + lam*Y of size mn + r with block metadata."""
    X: np.ndarray
    Y: np.ndarray
    m: int
    n: int
    r: int
    col_block: int | None = None  # 1-based block index of the C column
    row_block: int | None = None  # 1-based block index of the B row
    provenance: dict = field(default_factory=dict)

    @property
    def size(self):
        return self.X.shape[0]

    def eval(self, lam):
        return self.X + lam * self.Y

    def __call__(self, lam):
        return self.eval(lam)

    def coeff_list(self):
        return [self.X, self.Y]

    def as_poly(self):
        return PolyMatrix([self.X, self.Y])

    def scaled_rows(self, Q):
        """Q @ (X + lam Y) for a constant Q, keeping metadata."""
        return BlockPencil(Q @ self.X, Q @ self.Y, self.m, self.n, self.r,
                           self.col_block, self.row_block, dict(self.provenance))


def trivial_assignment(t, P):
    """The matrices making M_i(X_i) = M_i^P: X = -A_i for i >= 0,
    X = A_{-i} for i < 0."""
    return tuple((-P.coeff(i) if i >= 0 else P.coeff(-i)) for i in t)


def _resolve_assignment(t, mats, P):
    t = tuple(t)
    if mats is None:
        return trivial_assignment(t, P)
    mats = tuple(np.asarray(M, dtype=complex) for M in mats)
    if len(mats) != len(t):
        raise RecipeError(f"assignment length {len(mats)} != tuple length {len(t)}")
    return mats


def _pad(M, r):
    if r == 0:
        return M
    N = M.shape[0] + r
    out = np.eye(N, dtype=complex)
    out[: M.shape[0], : M.shape[0]] = M
    return out


def _assign_product(t, mats, m, n, r=0):
    """Product of diag(M_i(X_i), I_r) over the tuple, left to right."""
    out = np.eye(m * n + r, dtype=complex)
    for i, X in zip(t, mats):
        out = out @ _pad(elementary_matrix(i, X, m, n), r)
    return out


def _fiedler_product_P(t, P, r=0):
    out = np.eye(P.m * P.n + r, dtype=complex)
    for i in t:
        out = out @ _pad(fiedler_matrix_P(i, P), r)
    return out


def _fiedler_product_S(t, re):
    N = re.m * re.n + re.r
    out = np.eye(N, dtype=complex)
    for i in t:
        out = out @ fiedler_matrix_S(i, re)
    return out


@dataclass(frozen=True)
class GfprRecipe:
    """(sigma1, sigma, sigma2; tau1, tau, tau2) with matrix assignments.

    sigma is a permutation of {0:h}, tau of {-m:-h-1}; the decorations
    sigma1, sigma2 live in {0:h-1} and tau1, tau2 in {-m:-h-2};
    (sigma1, sigma, sigma2) and (tau1, tau, tau2) must satisfy the SIP.
    Assignments are tuples of n x n matrices or None for the trivial
    (Fiedler) choice.
    """
    m: int
    sigma: tuple
    tau: tuple
    sigma1: tuple = ()
    sigma2: tuple = ()
    tau1: tuple = ()
    tau2: tuple = ()
    X1: tuple | None = None
    X2: tuple | None = None
    Y1: tuple | None = None
    Y2: tuple | None = None

    def __post_init__(self):
        for name in ("sigma", "tau", "sigma1", "sigma2", "tau1", "tau2"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        m = self.m
        sigma, tau = self.sigma, self.tau
        if not sigma:
            raise RecipeError("sigma must be a nonempty permutation of {0:h}")
        h = max(sigma)
        if not 0 <= h <= m - 1:
            raise RecipeError(f"h = {h} out of range 0..{m - 1}")
        if sorted(sigma) != list(range(h + 1)):
            raise RecipeError(f"sigma is not a permutation of {{0:{h}}}: {sigma}")
        if sorted(tau) != list(range(-m, -h)):
            raise RecipeError(f"tau is not a permutation of {{-{m}:-{h + 1}}}: {tau}")
        for name, t, lo, hi in (("sigma1", self.sigma1, 0, h - 1),
                                ("sigma2", self.sigma2, 0, h - 1),
                                ("tau1", self.tau1, -m, -h - 2),
                                ("tau2", self.tau2, -m, -h - 2)):
            if any(x < lo or x > hi for x in t):
                raise RecipeError(f"{name} entries must lie in {{{lo}:{hi}}}: {t}")
        if not tp.is_sip(self.sigma1 + sigma + self.sigma2, h):
            raise RecipeError("(sigma1, sigma, sigma2) violates the SIP")
        if not tp.is_sip(self.tau1 + tau + self.tau2, m):
            raise RecipeError("(tau1, tau, tau2) violates the SIP")

    @property
    def h(self):
        return max(self.sigma)

    def right_index(self):
        """c_0(sigma, sigma2): the B row of the bordered form sits at
        block m - right_index()."""
        return tp.consecutions(self.sigma + self.sigma2, 0)

    def left_index(self):
        """i_0(sigma1, sigma): the C column sits at block m - left_index()."""
        return tp.inversions(self.sigma1 + self.sigma, 0)

    def alpha(self):
        """The permutation (-rev(tau_l), sigma, -rev(tau_r)) of {0:m-1}
        from the split tau = (tau_l, -m, tau_r); drives index shifts."""
        k = self.tau.index(-self.m)
        tau_l, tau_r = self.tau[:k], self.tau[k + 1:]
        return tp.neg(tp.rev(tau_l)) + tuple(self.sigma) + tp.neg(tp.rev(tau_r))

    def assignments_nonsingular(self, P, tol=0.0):
        """True when every matrix assigned at an index 0 or -m position
        (in the decorations) is nonsingular."""
        for t, mats in ((self.sigma1, self.X1), (self.sigma2, self.X2),
                        (self.tau1, self.Y1), (self.tau2, self.Y2)):
            mats = _resolve_assignment(t, mats, P)
            for i, X in zip(t, mats):
                if i in (0, -self.m) and abs(np.linalg.det(X)) <= tol:
                    return False
        return True


def _border_dense(XP, YP, re, u, v):
    """Wrap the polynomial pencil (XP, YP) with the C column at block u,
    B row at block v and corner A - lam E."""
    m, n, r = re.m, re.n, re.r
    N = m * n + r
    X = np.zeros((N, N), dtype=complex)
    Y = np.zeros((N, N), dtype=complex)
    X[: m * n, : m * n] = XP
    Y[: m * n, : m * n] = YP
    X[(u - 1) * n: u * n, m * n:] = re.C
    X[m * n:, (v - 1) * n: v * n] = re.B
    X[m * n:, m * n:] = re.A
    Y[m * n:, m * n:] = -re.E
    return X, Y


def _paths_agree(Xa, Ya, Xb, Yb, what):
    if not (np.array_equal(Xa, Xb) and np.array_equal(Ya, Yb)):
        dev = max(float(np.max(np.abs(Xa - Xb))), float(np.max(np.abs(Ya - Yb))))
        raise AssertionError(
            f"product and bordered constructions disagree for {what} "
            f"(max deviation {dev:.3e})")


def fiedler_pencil(sigma, re, path="both"):
    """FP: lam * MS_{-m} - MS_sigma for a permutation sigma of {0:m-1}."""
    sigma = tuple(sigma)
    m, n, r = re.m, re.n, re.r
    if sorted(sigma) != list(range(m)):
        raise RecipeError(f"sigma is not a permutation of {{0:{m - 1}}}: {sigma}")
    u = m - tp.inversions(sigma, 0)
    v = m - tp.consecutions(sigma, 0)
    prov = {"family": "fp", "sigma": sigma, "path": path}

    Xp = Yp = Xb = Yb = None
    if path in ("product", "both"):
        Xp = -_fiedler_product_S(sigma, re)
        Yp = fiedler_matrix_S(-m, re)
    if path in ("bordered", "both"):
        XP = -_fiedler_product_P(sigma, re.P)
        YP = fiedler_matrix_P(-m, re.P)
        Xb, Yb = _border_dense(XP, YP, re, u, v)
    if path == "both":
        _paths_agree(Xp, Yp, Xb, Yb, f"FP sigma={sigma}")
    X, Y = (Xb, Yb) if Xb is not None else (Xp, Yp)
    return BlockPencil(X, Y, m, n, r, col_block=u, row_block=v, provenance=prov)


def gf_pencil(omega0, omega1, re):
    """GFP: lam * MS_{-omega1} - MS_{omega0} for a partition
    (omega0, omega1) of {0:m} with m in omega1."""
    omega0, omega1 = tuple(omega0), tuple(omega1)
    m, n, r = re.m, re.n, re.r
    if sorted(omega0 + omega1) != list(range(m + 1)):
        raise RecipeError(f"(omega0, omega1) must partition {{0:{m}}}")
    if m not in omega1:
        raise RecipeError("m must belong to omega1 (no Fiedler factor M_m exists)")
    if 0 not in omega0:
        raise RecipeError("0 must belong to omega0 (proper GFP)")
    X = -_fiedler_product_S(omega0, re)
    Y = _fiedler_product_S(tp.neg(omega1), re)
    u = m - tp.inversions(omega0, 0)
    v = m - tp.consecutions(omega0, 0)
    prov = {"family": "gfp", "omega0": omega0, "omega1": omega1}
    return BlockPencil(X, Y, m, n, r, col_block=u, row_block=v, provenance=prov)


def gfpr_poly(recipe, P):
    """Polynomial GFPR of P:
    L(lam) = M_{tau1}(Y1) M_{sigma1}(X1) (lam M_tau - M_sigma)
             M_{sigma2}(X2) M_{tau2}(Y2),  an mn x mn pencil."""
    m, n = P.m, P.n
    if m != recipe.m:
        raise RecipeError(f"recipe degree {recipe.m} != polynomial degree {m}")
    left = (_assign_product(recipe.tau1, _resolve_assignment(recipe.tau1, recipe.Y1, P), m, n)
            @ _assign_product(recipe.sigma1, _resolve_assignment(recipe.sigma1, recipe.X1, P), m, n))
    right = (_assign_product(recipe.sigma2, _resolve_assignment(recipe.sigma2, recipe.X2, P), m, n)
             @ _assign_product(recipe.tau2, _resolve_assignment(recipe.tau2, recipe.Y2, P), m, n))
    X = left @ (-_fiedler_product_P(recipe.sigma, P)) @ right
    Y = left @ _fiedler_product_P(recipe.tau, P) @ right
    prov = {"family": "gfpr-poly", "recipe": recipe}
    return BlockPencil(X, Y, m, n, 0, provenance=prov)


def gfpr(recipe, re, path="both"):
    """GFPR of G: the system-matrix product per the defining formula, or
    the operation-free bordered form (C column at block m - i_0(sigma1,
    sigma), B row at block m - c_0(sigma, sigma2)); ``both`` checks the
    two agree and returns the bordered result."""
    P = re.P
    m, n, r = re.m, re.n, re.r
    if m != recipe.m:
        raise RecipeError(f"recipe degree {recipe.m} != realization degree {m}")
    u = m - recipe.left_index()
    v = m - recipe.right_index()
    prov = {"family": "gfpr", "recipe": recipe, "path": path}

    Xp = Yp = Xb = Yb = None
    if path in ("product", "both"):
        left = (_assign_product(recipe.tau1, _resolve_assignment(recipe.tau1, recipe.Y1, P), m, n, r)
                @ _assign_product(recipe.sigma1, _resolve_assignment(recipe.sigma1, recipe.X1, P), m, n, r))
        right = (_assign_product(recipe.sigma2, _resolve_assignment(recipe.sigma2, recipe.X2, P), m, n, r)
                 @ _assign_product(recipe.tau2, _resolve_assignment(recipe.tau2, recipe.Y2, P), m, n, r))
        Xp = left @ (-_fiedler_product_S(recipe.sigma, re)) @ right
        Yp = left @ _fiedler_product_S(recipe.tau, re) @ right
    if path in ("bordered", "both"):
        Lp = gfpr_poly(recipe, P)
        Xb, Yb = _border_dense(Lp.X, Lp.Y, re, u, v)
    if path == "both":
        _paths_agree(Xp, Yp, Xb, Yb, "GFPR")
    X, Y = (Xb, Yb) if Xb is not None else (Xp, Yp)
    return BlockPencil(X, Y, m, n, r, col_block=u, row_block=v, provenance=prov)
