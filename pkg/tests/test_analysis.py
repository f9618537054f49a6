import random
from fractions import Fraction

import pytest

from indeflll.analysis import (
    automorphy_check,
    char_poly,
    hermitian_embed,
    kernel_split,
    remove_hyperbolic_plane,
    signature_via_gso,
    signature_via_sturm,
    verify_theorem_bound,
)
from indeflll.gram import GramMatrix, mat_det, mat_mul
from indeflll.generators import gen_random_symmetric, gen_random_unimodular
from indeflll.reducer import ReducerParams, reduce

# the closing example: diag(1,-1,1,-1) admits a transform of infinite order
AUTOMORPHIC_G = GramMatrix([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
AUTOMORPHIC_U = [[1, 0, 1, 1], [-1, 1, 0, -1], [1, -1, -1, 0], [0, 1, 1, 1]]


def test_kernel_split_examples():
    ks = kernel_split(GramMatrix([[1, 1], [1, 1]]))
    assert ks.rank == 1
    assert abs(mat_det(ks.transform)) == 1
    g = GramMatrix([[1, 1], [1, 1]]).congruence(ks.transform)
    assert g.rows[1] == [0, 0] and g.rows[0][1] == 0

    ks = kernel_split(GramMatrix.identity(4))
    assert ks.rank == 4 and ks.nondegenerate == GramMatrix.identity(4)

    ks = kernel_split(GramMatrix.zeros(3))
    assert ks.rank == 0 and ks.transform == [[1 if i == j else 0 for j in range(3)] for i in range(3)]

    with pytest.raises(ValueError):
        kernel_split(GramMatrix([[Fraction(1, 2)]]))


def test_kernel_split_random():
    rng = random.Random(8)
    for _ in range(30):
        d = rng.randrange(2, 7)
        rk = rng.randrange(0, d + 1)
        m = [[rng.randrange(-3, 4) for _ in range(rk)] for _ in range(d)]
        core = [[0] * rk for _ in range(rk)]
        for i in range(rk):
            for j in range(i, rk):
                core[i][j] = core[j][i] = rng.randrange(-9, 10)
        from indeflll.gram import mat_transpose

        g = GramMatrix(mat_mul(m, mat_mul(core, mat_transpose(m)))) if rk else GramMatrix.zeros(d)
        ks = kernel_split(g)
        assert abs(mat_det(ks.transform)) == 1
        moved = g.congruence(ks.transform)
        for i in range(ks.rank, d):
            assert all(x == 0 for x in moved.rows[i])
        if ks.rank:
            assert ks.nondegenerate.det() != 0


def test_char_poly():
    # det(xI - G) for diag(2, -3) is (x-2)(x+3) = x^2 + x - 6
    assert char_poly(GramMatrix([[2, 0], [0, -3]])) == [-6, 1, 1]
    assert char_poly(GramMatrix.zeros(0)) == [1]
    assert char_poly(GramMatrix([[0, 4], [4, 0]])) == [-16, 0, 1]


def test_signature_examples():
    inv = signature_via_sturm(GramMatrix([[2, 0], [0, -3]]))
    assert (inv.n_plus, inv.n_minus) == (1, 1)
    inv = signature_via_sturm(GramMatrix([[0, 4], [4, 0]]))
    assert (inv.n_plus, inv.n_minus) == (1, 1)
    inv = signature_via_sturm(GramMatrix.identity(4))
    assert (inv.n_plus, inv.n_minus) == (4, 0)
    # multiple eigenvalues are counted with multiplicity
    inv = signature_via_sturm(GramMatrix([[2, 0, 0], [0, 2, 0], [0, 0, -5]]))
    assert (inv.n_plus, inv.n_minus) == (2, 1)
    # degenerate input
    inv = signature_via_sturm(GramMatrix([[1, 1], [1, 1]]))
    assert inv.rank == 1 and inv.n_plus == 1 and inv.nondeg_det == 1

    inv = signature_via_gso(GramMatrix([[1, 0, 0], [0, -1, 0], [0, 0, 1]]))
    assert (inv.n_plus, inv.n_minus) == (2, 1) and inv.signature == 1
    inv = signature_via_gso(GramMatrix([[0, 1], [1, 0]]))
    assert (inv.n_plus, inv.n_minus) == (1, 1) and inv.signature == 0


def test_signature_oracles_agree():
    rng = random.Random(15)
    for _ in range(40):
        d = rng.randrange(2, 7)
        g = gen_random_symmetric(d, 40, rng.randrange(10**6))
        a = signature_via_sturm(g)
        b = signature_via_gso(g)
        assert (a.n_plus, a.n_minus, a.rank) == (b.n_plus, b.n_minus, b.rank)
        assert a.nondeg_det != 0 or a.rank == 0
        if a.rank:
            assert (a.nondeg_det < 0) == (a.n_minus % 2 == 1)


def test_signature_invariant_under_conjugation():
    rng = random.Random(44)
    g = gen_random_symmetric(5, 20, 7)
    base = signature_via_sturm(g)
    for i in range(100):
        w = gen_random_unimodular(5, 10, 1000 + i)
        moved = signature_via_sturm(g.congruence(w))
        assert (moved.n_plus, moved.n_minus) == (base.n_plus, base.n_minus)


def test_verify_theorem_bound():
    rng = random.Random(61)
    for _ in range(15):
        d = rng.randrange(2, 7)
        g = gen_random_symmetric(d, 50, rng.randrange(10**6))
        res = reduce(g)
        rep = verify_theorem_bound(res, g)
        assert rep.holds
        assert rep.slack is None or rep.slack >= 1
        assert rep.rank == res.rank
    with pytest.raises(ValueError):
        other = gen_random_symmetric(3, 10, 5)
        res = reduce(other)
        verify_theorem_bound(res, gen_random_symmetric(3, 10, 6))


def test_hermitian_embed():
    assert hermitian_embed([[(2, 0)]]).rows == [[2, 0], [0, 2]]
    h = hermitian_embed([[(0, 0), (0, 1)], [(0, -1), (0, 0)]])
    assert h.rows == [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ]
    assert hermitian_embed([[(1, 0), (0, 0)], [(0, 0), (1, 0)]]) == GramMatrix.identity(4)
    with pytest.raises(ValueError):
        hermitian_embed([[(0, 1)]])  # imaginary diagonal
    with pytest.raises(ValueError):
        hermitian_embed([[(0, 0), (1, 1)], [(1, 1), (0, 0)]])  # not Hermitian


def test_hermitian_embed_doubles_signature():
    # eigenvalue signs double under the embedding
    rng = random.Random(3)
    for _ in range(10):
        d = rng.randrange(1, 4)
        re = [[0] * d for _ in range(d)]
        im = [[0] * d for _ in range(d)]
        for i in range(d):
            re[i][i] = rng.randrange(-5, 6)
            for j in range(i + 1, d):
                re[i][j] = re[j][i] = rng.randrange(-5, 6)
                im[i][j] = rng.randrange(-5, 6)
                im[j][i] = -im[i][j]
        entries = [[(re[i][j], im[i][j]) for j in range(d)] for i in range(d)]
        emb = hermitian_embed(entries)
        inv = signature_via_sturm(emb)
        # each complex eigenvalue appears twice
        assert inv.n_plus % 2 == 0 and inv.n_minus % 2 == 0
        if all(x == 0 for row in im for x in row):
            real_inv = signature_via_sturm(GramMatrix(re))
            assert inv.n_plus == 2 * real_inv.n_plus
            assert inv.n_minus == 2 * real_inv.n_minus


def test_remove_hyperbolic_plane():
    out, u = remove_hyperbolic_plane(GramMatrix([[1, 0, 0], [0, 0, 1], [0, 1, 0]]))
    assert out == GramMatrix([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert abs(mat_det(u)) == 1
    half = Fraction(1, 2)
    out, _ = remove_hyperbolic_plane(
        GramMatrix([[1, 0, 0], [0, 0, half], [0, half, 0]])
    )
    assert out.rows == [
        [0, half, half],
        [half, 1, half],
        [half, half, 1],
    ]
    with pytest.raises(ValueError):
        remove_hyperbolic_plane(GramMatrix([[1, 0, 0], [0, 0, -1], [0, -1, 0]]))
    with pytest.raises(ValueError):
        remove_hyperbolic_plane(GramMatrix([[2, 0, 0], [0, 0, 1], [0, 1, 0]]))


def test_automorphy_infinite_order():
    uk = AUTOMORPHIC_U
    for k in range(1, 7):
        assert automorphy_check(AUTOMORPHIC_G, uk)
        assert uk[0][0] == Fraction((-1) ** k + 7 + 2 * k * k, 8)
        uk = mat_mul(uk, AUTOMORPHIC_U)
    assert automorphy_check(GramMatrix.identity(2), [[1, 0], [0, 1]])
    assert not automorphy_check(GramMatrix.identity(2), [[1, 1], [0, 1]])
