import numpy as np
import pytest

from rosepencil import tuples as tp
from rosepencil.pencils import (GfprRecipe, RecipeError, fiedler_pencil,
                                gf_pencil, gfpr, gfpr_poly,
                                trivial_assignment)
from rosepencil.realize import system_matrix
from rosepencil.verify import det_proportionality
from conftest import ints, make_realization


def test_fiedler_pencil_borders(rng):
    re = make_realization("general", rng, m=4)
    sigma = (1, 0, 3, 2)
    L = fiedler_pencil(sigma, re)
    assert L.size == re.m * re.n + re.r
    assert L.col_block == re.m - tp.inversions(sigma, 0)
    assert L.row_block == re.m - tp.consecutions(sigma, 0)


def test_fiedler_pencil_rejects_non_permutation(rng):
    re = make_realization("general", rng, m=3)
    with pytest.raises(RecipeError):
        fiedler_pencil((0, 0, 1), re)


def test_fp_is_strong_linearization_proxy(rng):
    re = make_realization("general", rng, m=3)
    S = system_matrix(re)
    for sigma in ((0, 1, 2), (2, 1, 0), (1, 0, 2)):
        L = fiedler_pencil(sigma, re)
        rep = det_proportionality(L, S)
        assert rep.deviation <= 1e-9


def test_gf_pencil(rng):
    re = make_realization("general", rng, m=4)
    L = gf_pencil((1, 0, 3), (2, 4), re)
    S = system_matrix(re)
    assert det_proportionality(L, S).deviation <= 1e-9
    with pytest.raises(RecipeError):
        gf_pencil((0, 1, 2, 4), (3,), re)  # m not in omega1


def test_gfpr_paths_agree_exactly(rng):
    re = make_realization("general", rng, m=4)
    recipe = GfprRecipe(m=4, sigma=(1, 2, 3, 0), tau=(-4,), sigma2=(2, 1),
                        X2=(ints(rng, 2, 2), ints(rng, 2, 2)))
    Lp = gfpr(recipe, re, path="product")
    Lb = gfpr(recipe, re, path="bordered")
    assert np.array_equal(Lp.X, Lb.X)
    assert np.array_equal(Lp.Y, Lb.Y)
    # path="both" asserts internally and must not raise
    gfpr(recipe, re, path="both")


def test_gfpr_border_blocks(rng):
    re = make_realization("general", rng, m=4)
    recipe = GfprRecipe(m=4, sigma=(1, 2, 3, 0), tau=(-4,), sigma2=(2, 1))
    L = gfpr(recipe, re)
    assert L.col_block == 4 - recipe.left_index()
    assert L.row_block == 4 - recipe.right_index()
    n, r, mn = re.n, re.r, 4 * re.n
    u, v = L.col_block, L.row_block
    col = L.X[:mn, mn:]
    assert np.array_equal(col[(u - 1) * n: u * n], re.C)
    assert not np.any(np.delete(col, range((u - 1) * n, u * n), axis=0))
    row = L.X[mn:, :mn]
    assert np.array_equal(row[:, (v - 1) * n: v * n], re.B)


def test_gfpr_poly_embeds_in_gfpr(rng):
    re = make_realization("general", rng, m=4)
    recipe = GfprRecipe(m=4, sigma=(0,), tau=(-4, -3, -2, -1),
                        tau2=(-4, -3, -2, -4, -3, -4))
    mn = 4 * re.n
    L = gfpr(recipe, re)
    LP = gfpr_poly(recipe, re.P)
    assert np.array_equal(L.X[:mn, :mn], LP.X)
    assert np.array_equal(L.Y[:mn, :mn], LP.Y)
    # corner carries A - lam E
    assert np.array_equal(L.X[mn:, mn:], re.A)
    assert np.array_equal(L.Y[mn:, mn:], -re.E)


def test_recipe_validation():
    with pytest.raises(RecipeError):
        GfprRecipe(m=4, sigma=(1, 2, 0), tau=(-4,))  # tau misses -3
    with pytest.raises(RecipeError):
        GfprRecipe(m=4, sigma=(1, 2, 3, 0), tau=(-4,), sigma2=(0, 0))
    with pytest.raises(RecipeError):
        GfprRecipe(m=4, sigma=(1, 2, 3, 0), tau=(-4,), sigma1=(3,))
    with pytest.raises(RecipeError):
        GfprRecipe(m=3, sigma=(), tau=(-3, -2, -1))


def test_recipe_indices_and_alpha():
    recipe = GfprRecipe(m=4, sigma=(1, 2, 3, 0), tau=(-4,), sigma2=(2, 1))
    assert recipe.h == 3
    assert recipe.right_index() == tp.consecutions((1, 2, 3, 0, 2, 1), 0)
    assert recipe.left_index() == tp.inversions((1, 2, 3, 0), 0)
    alpha = recipe.alpha()
    assert sorted(alpha) == list(range(4))
    assert tp.total_consecutions(alpha) + tp.total_inversions(alpha) == 3


def test_trivial_assignment(rng):
    re = make_realization("general", rng, m=3)
    mats = trivial_assignment((1, -2), re.P)
    assert np.array_equal(mats[0], -re.P.coeff(1))
    assert np.array_equal(mats[1], re.P.coeff(2))


def test_assignment_length_checked(rng):
    re = make_realization("general", rng, m=4)
    recipe = GfprRecipe(m=4, sigma=(1, 2, 3, 0), tau=(-4,), sigma2=(2, 1),
                        X2=(ints(rng, 2, 2),))
    with pytest.raises(RecipeError):
        gfpr(recipe, re)


def test_fp_as_gfpr(rng):
    # the FP for sigma (a permutation of {0:m-1}) equals the GFPR with
    # sigma = sigma, tau = (-m), no decorations
    re = make_realization("general", rng, m=3)
    sigma = (1, 2, 0)
    L1 = fiedler_pencil(sigma, re)
    L2 = gfpr(GfprRecipe(m=3, sigma=sigma, tau=(-3,)), re)
    assert np.array_equal(L1.X, L2.X)
    assert np.array_equal(L1.Y, L2.Y)


def test_gfp_vs_gfpr_consistency(rng):
    # GFP with omega0 = sigma, omega1 = (m) + neg(tau') matches the GFPR
    re = make_realization("general", rng, m=4)
    omega0, omega1 = (1, 0, 2), (3, 4)
    L1 = gf_pencil(omega0, omega1, re)
    L2 = gfpr(GfprRecipe(m=4, sigma=omega0, tau=(-3, -4)), re)
    assert np.array_equal(L1.X, L2.X)
    assert np.array_equal(L1.Y, L2.Y)
