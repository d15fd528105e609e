"""Numeric oracles and proxy checks.

Unimodular equivalence of a pencil to its system matrix is checked by
proxy: both determinants are interpolated on a shared node set and must
be proportional coefficientwise with equal degree; the structure at
infinity is checked by rank chains and determinant-degree counts.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import tuples as tp
from .kernels import aberth_roots
from .polymat import PolyMatrix, lambda_alpha, omega_alpha, q_matrix, r_matrix

__all__ = [
    "DetPolynomial", "det_poly", "det_proportionality", "DetProportionality",
    "pencil_eigenvalues", "nullspace_at", "minimal_basis_degree_sweep",
    "infinity_structure", "InfinityReport",
    "appendix_witnesses", "AppendixReport", "elimination_witness",
    "product_equal", "VerificationFailure", "argument_principle_count",
]


class VerificationFailure(RuntimeError):
    """A numeric oracle check failed beyond its stated tolerance."""


# ---------------------------------------------------------------------------
# determinant interpolation

def _as_polymat(M):
    if isinstance(M, PolyMatrix):
        return M
    if hasattr(M, "as_poly"):
        return M.as_poly()
    return PolyMatrix.constant(np.asarray(M, dtype=complex))


def _degree_bound(M):
    if hasattr(M, "re"):  # SystemMatrix
        return M.re.n * M.re.m + M.re.r
    if hasattr(M, "X") and hasattr(M, "Y"):  # BlockPencil
        return M.X.shape[0]
    pm = _as_polymat(M)
    return pm.degree * pm.shape[0]


def _chebyshev_nodes(count, radius):
    k = np.arange(count)
    return radius * np.cos(np.pi * (2 * k + 1) / (2 * count))


def _divided_differences(x, f):
    a = np.array(f, dtype=complex)
    for j in range(1, len(x)):
        a[j:] = (a[j:] - a[j - 1:-1]) / (x[j:] - x[:-j])
    return a


def _newton_eval(x, a, lam):
    out = a[-1]
    for k in range(len(a) - 2, -1, -1):
        out = out * (lam - x[k]) + a[k]
    return out


@dataclass(frozen=True)
class DetPolynomial:
    nodes: np.ndarray          # interpolation nodes
    newton: np.ndarray         # divided-difference coefficients
    degree: int                # significant degree
    scale: float               # max |det| over the fit nodes

    def __call__(self, lam):
        return _newton_eval(self.nodes, self.newton, lam)


def det_poly(M, degree_bound=None, tol=1e-8, radius=2.0, size_bound=200):
    """Interpolate det(M(lam)): LU determinants at degree_bound + 1 scaled
    Chebyshev nodes, Newton divided differences, and 5 held-out nodes for
    validation."""
    pm = _as_polymat(M)
    if pm.shape[0] != pm.shape[1]:
        raise ValueError("det_poly needs a square input")
    if pm.shape[0] > size_bound:
        raise ValueError(f"size {pm.shape[0]} exceeds bound {size_bound}")
    bound = _degree_bound(M) if degree_bound is None else degree_bound
    nodes = _chebyshev_nodes(bound + 1, radius)
    vals = np.array([np.linalg.det(pm(x)) for x in nodes])
    a = _divided_differences(nodes, vals)
    amax = float(np.max(np.abs(a))) if len(a) else 0.0
    deg = len(a) - 1
    while deg > 0 and abs(a[deg]) <= tol * amax:
        deg -= 1
    scale = float(np.max(np.abs(vals))) if len(vals) else 0.0
    dp = DetPolynomial(nodes=nodes, newton=a, degree=deg, scale=scale)

    held = radius * (0.83 + 0.11 * np.arange(5)) * np.exp(1j * (0.7 + np.arange(5)))
    for x in held:
        ref = np.linalg.det(pm(x))
        err = abs(dp(x) - ref)
        denom = max(scale, abs(ref), 1e-300)
        if err > 1e3 * tol * denom:
            raise VerificationFailure(
                f"det interpolation failed held-out validation at {x}: "
                f"relative residual {err / denom:.3e}")
    return dp


@dataclass(frozen=True)
class DetProportionality:
    constant: complex
    deviation: float
    degree: int


def det_proportionality(L, S, tol=1e-8):
    """Check det L(lam) = c * det S(lam): shared-node Newton coefficients
    must have equal significant degree and constant coefficientwise ratio."""
    bound = max(_degree_bound(L), _degree_bound(S))
    dL = det_poly(L, degree_bound=bound)
    dS = det_poly(S, degree_bound=bound)
    if dL.scale == 0.0 or dS.scale == 0.0:
        raise VerificationFailure("near-zero determinant: singular input")
    if dL.degree != dS.degree:
        raise VerificationFailure(
            f"determinant degree mismatch: {dL.degree} vs {dS.degree} "
            "(strong-linearization proxy fails)")
    aL, aS = dL.newton, dS.newton
    k = int(np.argmax(np.abs(aS)))
    c = aL[k] / aS[k]
    dev = float(np.max(np.abs(aL - c * aS)) / np.max(np.abs(aL)))
    if dev > tol:
        raise VerificationFailure(
            f"determinants not proportional: relative deviation {dev:.3e}")
    return DetProportionality(constant=c, deviation=dev, degree=dL.degree)


# ---------------------------------------------------------------------------
# pencil eigenvalues

def _monomial_det_coeffs(X, Y, radius=1.5):
    """Monomial coefficients of det(X + lam Y) by inverse DFT of samples
    on a circle."""
    N = X.shape[0]
    K = 1
    while K < 2 * (N + 1):
        K *= 2
    ang = 2 * np.pi * np.arange(K) / K
    pts = radius * np.exp(1j * ang)
    vals = np.array([np.linalg.det(X + z * Y) for z in pts])
    c = np.fft.fft(vals) / K  # fft computes sum f_j w^{-jk}
    c = c[: N + 1] / radius ** np.arange(N + 1)
    return c


def pencil_eigenvalues(X, Y=None, cluster_tol=1e-6, coeff_tol=1e-10,
                       max_iter=200):
    """Finite eigenvalues of the pencil X + lam Y with multiplicities.

    Roots of the interpolated determinant polynomial via Aberth-Ehrlich,
    polished by Newton steps on the exact determinant (logarithmic
    derivative = trace((X + lam Y)^{-1} Y)), then clustered."""
    if Y is None:
        X, Y = X.X, X.Y
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    if X.shape[0] == 0:
        return []
    c = _monomial_det_coeffs(X, Y)
    scale = float(np.max(np.abs(c)))
    if scale == 0.0:
        raise VerificationFailure("singular pencil: determinant vanishes identically")
    deg = len(c) - 1
    while deg > 0 and abs(c[deg]) <= coeff_tol * scale:
        deg -= 1
    if deg == 0:
        return []
    roots = aberth_roots(np.ascontiguousarray(c[: deg + 1]), 1e-13, max_iter)

    polished = []
    for z in roots:
        for _ in range(12):
            M = X + z * Y
            try:
                t = np.trace(np.linalg.solve(M, Y))
            except np.linalg.LinAlgError:
                break
            if t == 0 or not np.isfinite(t):
                break
            step = 1.0 / t
            z = z - step
            if abs(step) <= 1e-14 * (1.0 + abs(z)):
                break
        polished.append(z)

    polished.sort(key=lambda z: (round(z.real, 8), round(z.imag, 8)))
    out = []
    for z in polished:
        if out and abs(z - out[-1][0]) <= cluster_tol * (1.0 + abs(z)):
            zc, k = out[-1]
            out[-1] = ((zc * k + z) / (k + 1), k + 1)
        else:
            out.append((z, 1))
    return [(complex(z), int(k)) for z, k in out]


def eig_multiset(pairs):
    out = []
    for z, k in pairs:
        out += [z] * k
    return sorted(out, key=lambda z: (z.real, z.imag))


def multiset_distance(a, b):
    """Max pairing distance between two eigenvalue multisets (optimal
    assignment); inf when the sizes differ."""
    import scipy.optimize

    a, b = list(a), list(b)
    if len(a) != len(b):
        return float("inf")
    if not a:
        return 0.0
    D = np.abs(np.subtract.outer(np.array(a), np.array(b)))
    rows, cols = scipy.optimize.linear_sum_assignment(D)
    return float(D[rows, cols].max())


def argument_principle_count(X, Y, center=0.0, radius=10.0, samples=4096):
    """Number of roots of det(X + lam Y) inside the circle, by winding
    number of the determinant along the contour (independent oracle)."""
    ang = 2 * np.pi * np.arange(samples + 1) / samples
    pts = center + radius * np.exp(1j * ang)
    vals = np.array([np.linalg.det(X + z * Y) for z in pts])
    phase = np.unwrap(np.angle(vals))
    return int(round((phase[-1] - phase[0]) / (2 * np.pi)))


# ---------------------------------------------------------------------------
# nullspaces and minimal bases

def nullspace_at(M, tol=1e-10):
    """Orthonormal basis of the right nullspace, by QR with column
    pivoting; pass M transposed for the left nullspace."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    rows, cols = M.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=complex)
    if not M.any():
        return np.eye(cols, dtype=complex)
    _, R, piv = scipy.linalg.qr(M, mode="economic", pivoting=True)
    d = np.abs(np.diag(R))
    rank = int(np.sum(d > tol * d[0]))
    if rank == cols:
        return np.zeros((cols, 0), dtype=complex)
    W = np.zeros((cols, cols - rank), dtype=complex)
    top = -scipy.linalg.solve_triangular(R[:rank, :rank], R[:rank, rank:])
    W[piv[:rank]] = top
    W[piv[rank:]] = np.eye(cols - rank)
    Q, _ = np.linalg.qr(W)
    return Q


def normal_rank(W, tol=1e-10, seed=5):
    pm = _as_polymat(W)
    rng = np.random.default_rng(seed)
    best = 0
    for _ in range(3):
        lam = complex(rng.normal(), rng.normal()) * 1.3
        s = np.linalg.svd(pm(lam), compute_uv=False)
        if s.size:
            best = max(best, int(np.sum(s > tol * max(s[0], 1e-300))))
    return best


def _poly_columns_degree(coeffs, tol):
    """Significant degree of a stacked coefficient column (d+1, q)."""
    norms = np.max(np.abs(coeffs), axis=1)
    top = float(norms.max())
    d = len(norms) - 1
    while d > 0 and norms[d] <= tol * top:
        d -= 1
    return d


def minimal_basis_degree_sweep(W, tol=1e-8, seed=11, max_degree=None):
    """Right minimal basis of a singular polynomial matrix by degree
    sweep: for d = 0, 1, ... the kernel of the block-convolution matrix
    encodes degree-<=d null vectors; new vectors independent over the
    rational functions (rank test at random points) are collected until
    size - normal rank is reached.  Returns a (bundle, degrees) pair from
    the `recover` module's VectorBundle type."""
    from .recover import VectorBundle

    pm = _as_polymat(W)
    kk, q = pm.shape
    dW = pm.degree
    target = q - normal_rank(pm, tol=max(tol * 1e-2, 1e-12))
    if target <= 0:
        raise ValueError("input has a trivial nullspace over the rational functions")
    if max_degree is None:
        max_degree = dW * min(kk, q) + 1

    rng = np.random.default_rng(seed)
    test_pts = [complex(rng.normal(), rng.normal()) * 1.1 for _ in range(3)]
    chosen = []          # list of (coeff-stack (d+1, q), degree)

    def poly_eval(coeffs, lam):
        out = np.zeros(q, dtype=complex)
        for row in coeffs[::-1]:
            out = lam * out + row
        return out

    def independent(cand):
        for lam in test_pts:
            cols = [poly_eval(c, lam) for c, _ in chosen] + [poly_eval(cand, lam)]
            V = np.array(cols).T
            s = np.linalg.svd(V, compute_uv=False)
            rank = int(np.sum(s > 1e-9 * max(s[0], 1e-300)))
            if rank == len(cols):
                return True
        return False

    for d in range(max_degree + 1):
        S = np.zeros(((dW + d + 1) * kk, (d + 1) * q), dtype=complex)
        for a in range(dW + 1):
            for b in range(d + 1):
                S[(a + b) * kk: (a + b + 1) * kk, b * q: (b + 1) * q] = pm.coeff(a)
        ker = nullspace_at(S, tol=1e-12)
        cands = []
        for col in ker.T:
            coeffs = col.reshape(d + 1, q)
            coeffs = coeffs / max(np.max(np.abs(coeffs)), 1e-300)
            cands.append((coeffs, _poly_columns_degree(coeffs, 1e-9)))
        cands.sort(key=lambda t: t[1])
        for coeffs, cdeg in cands:
            if len(chosen) == target:
                break
            if independent(coeffs):
                chosen.append((coeffs[: cdeg + 1], cdeg))
        if len(chosen) == target:
            break
    else:
        raise VerificationFailure(
            f"degree sweep exhausted max degree {max_degree} with "
            f"{len(chosen)}/{target} basis vectors")

    degrees = tuple(d for _, d in chosen)
    dmax = max(degrees)
    stack = np.zeros((dmax + 1, q, target), dtype=complex)
    for j, (coeffs, d) in enumerate(chosen):
        stack[: d + 1, :, j] = coeffs
    bundle = VectorBundle(data=PolyMatrix(stack), kind="minimal-basis",
                          side="right", degrees=degrees)
    return bundle


# ---------------------------------------------------------------------------
# structure at infinity

@dataclass(frozen=True)
class InfinityReport:
    leading_rank: int
    toeplitz_ranks: tuple
    inf_count: int
    sys_inf_count: int | None = None
    consistent: bool | None = None


def infinity_structure(pencil, sys=None, tol=1e-10):
    """Rank chain of the leading coefficient and its Toeplitz extensions,
    plus the infinite-eigenvalue count N - deg det; when a system matrix
    is supplied, checks the count against N - deg det S."""
    X, Y = pencil.X, pencil.Y
    N = X.shape[0]

    def num_rank(M):
        s = np.linalg.svd(M, compute_uv=False)
        return int(np.sum(s > tol * max(float(s[0]), 1e-300))) if s.size else 0

    ranks = []
    for k in range(1, 4):
        T = np.zeros((k * N, k * N), dtype=complex)
        for i in range(k):
            T[i * N: (i + 1) * N, i * N: (i + 1) * N] = Y
            if i + 1 < k:
                T[i * N: (i + 1) * N, (i + 1) * N: (i + 2) * N] = X
        ranks.append(num_rank(T))
    inf_count = N - det_poly(pencil).degree
    sys_count = None
    consistent = None
    if sys is not None:
        sys_count = N - det_poly(sys).degree
        consistent = (sys_count == inf_count)
    return InfinityReport(leading_rank=ranks[0], toeplitz_ranks=tuple(ranks),
                          inf_count=inf_count, sys_inf_count=sys_count,
                          consistent=consistent)


# ---------------------------------------------------------------------------
# appendix witness identities

def _unimodular_uv(alpha, P):
    """U and V products of the witness lemma from the RCISS of alpha."""
    m, n = P.m, P.n
    rc = tp.rciss(alpha)
    eye = PolyMatrix.constant(np.eye(m * n))

    def qB(i):
        return q_matrix(i, m, n).transpose()  # block transpose = plain transpose here

    U = eye
    V = eye
    for j in range(1, rc.ell + 1):
        s0 = rc.s_partial(j - 1)
        cj, ij = rc.c(j), rc.i(j)
        Uj = eye
        for i in range(s0 + cj + ij, s0 + cj, -1):
            Uj = Uj @ r_matrix(i, P)          # R_i = R_i block-transposed
        for i in range(s0 + cj, s0, -1):
            Uj = Uj @ qB(i)
        Vj = eye
        for i in range(s0 + 1, s0 + cj + 1):
            Vj = Vj @ r_matrix(i, P)
        for i in range(s0 + cj + 1, s0 + cj + ij + 1):
            Vj = Vj @ q_matrix(i, m, n)
        U = Uj @ U
        V = V @ Vj
    return U, V


def _block_transpose_poly(pm, m, n):
    out = np.empty_like(pm.coeffs)
    for k in range(pm.coeffs.shape[0]):
        for i in range(m):
            for j in range(m):
                out[k, j * n: (j + 1) * n, i * n: (i + 1) * n] = \
                    pm.coeffs[k, i * n: (i + 1) * n, j * n: (j + 1) * n]
    return PolyMatrix(out)


def elimination_witness(Xcol, Yrow, m, n, tol=1e-10):
    """Block-Gaussian identity: for Z = diag(I_{(m-1)n}, 0) + X Y with
    monomial block column X and block row Y such that x_i y_i = 0 for
    i < m, the unit triangular L, U with entries -Z_{i,j} satisfy
    L Z U = diag(I_{(m-1)n}, x_m y_m).  Returns the max residual."""
    Z = Xcol @ Yrow
    base = np.zeros((m * n, m * n), dtype=complex)
    base[: (m - 1) * n, : (m - 1) * n] = np.eye((m - 1) * n)
    Z = Z + PolyMatrix.constant(base)

    dz = Z.coeffs.shape[0]
    Lc = np.zeros((dz, m * n, m * n), dtype=complex)
    Uc = np.zeros((dz, m * n, m * n), dtype=complex)
    Lc[0] = np.eye(m * n)
    Uc[0] = np.eye(m * n)
    for k in range(dz):
        for i in range(m):
            for j in range(m):
                blkv = Z.coeffs[k, i * n: (i + 1) * n, j * n: (j + 1) * n]
                if i > j:
                    Lc[k, i * n: (i + 1) * n, j * n: (j + 1) * n] -= blkv
                elif i < j:
                    Uc[k, i * n: (i + 1) * n, j * n: (j + 1) * n] -= blkv
    L = PolyMatrix(Lc)
    U = PolyMatrix(Uc)
    result = L @ Z @ U

    xm = PolyMatrix(Xcol.coeffs[:, (m - 1) * n: m * n, :])
    ym = PolyMatrix(Yrow.coeffs[:, :, (m - 1) * n: m * n])
    tgt = xm @ ym
    dmax = max(result.coeffs.shape[0], tgt.coeffs.shape[0])
    res = 0.0
    for k in range(dmax):
        expect = np.zeros((m * n, m * n), dtype=complex)
        if k == 0:
            expect[: (m - 1) * n, : (m - 1) * n] = np.eye((m - 1) * n)
        expect[(m - 1) * n:, (m - 1) * n:] = tgt.coeff(k)
        res = max(res, float(np.max(np.abs(result.coeff(k) - expect))))
    return res


@dataclass(frozen=True)
class AppendixReport:
    ok: bool
    lambda_residual: float
    omega_residual: float
    corollary_residual: float

    def __bool__(self):
        return self.ok

    @property
    def max_residual(self):
        return max(self.lambda_residual, self.omega_residual,
                   self.corollary_residual)


def appendix_witnesses(alpha, P, seed=3, tol=1e-10):
    """Check the witness identities: U (e_1 (x) I) = Lambda_alpha,
    (e_1^T (x) I) V = Omega_alpha at 5 random lam, and the corollary
    T1 (diag(I,0) + Lambda Omega) T2 = diag(I, lam^{m-1} I)."""
    m, n = P.m, P.n
    alpha = tuple(alpha)
    U, V = _unimodular_uv(alpha, P)
    lam_a = lambda_alpha(alpha, n)
    ome_a = omega_alpha(alpha, n)
    rng = np.random.default_rng(seed)
    pts = [complex(rng.normal(), rng.normal()) for _ in range(5)]
    e1 = np.zeros((m * n, n), dtype=complex)
    e1[:n] = np.eye(n)
    res_l = max(float(np.max(np.abs(U(z) @ e1 - lam_a(z)))) for z in pts)
    res_o = max(float(np.max(np.abs(e1.T @ V(z) - ome_a(z)))) for z in pts)

    res_c = elimination_witness(lam_a, ome_a, m, n, tol=tol)

    ok = res_l <= tol and res_o <= tol and res_c <= tol
    return AppendixReport(ok=ok, lambda_residual=res_l, omega_residual=res_o,
                          corollary_residual=res_c)


# ---------------------------------------------------------------------------
# product equality

def product_equal(t1, t2, context, a1=None, a2=None, tol=0.0):
    """Exact/tolerance equality of the two Fiedler(-decorated) matrix
    products; context is a MatrixPolynomial (mn products) or a
    Realization (system-matrix products, trivial assignments only)."""
    from .pencils import (_assign_product, _fiedler_product_S,
                          _resolve_assignment)

    if hasattr(context, "g_eval"):  # Realization
        if a1 is not None or a2 is not None:
            raise ValueError("system-matrix products take no assignments")
        M1 = _fiedler_product_S(tuple(t1), context)
        M2 = _fiedler_product_S(tuple(t2), context)
    else:
        P = context
        m, n = P.m, P.n
        M1 = _assign_product(tuple(t1), _resolve_assignment(tuple(t1), a1, P), m, n)
        M2 = _assign_product(tuple(t2), _resolve_assignment(tuple(t2), a2, P), m, n)
    if tol == 0.0:
        return bool(np.array_equal(M1, M2))
    return bool(np.max(np.abs(M1 - M2)) <= tol)
