from fractions import Fraction

import pytest

from affinetrees.actions import (
    MatrixAffineAut,
    ProductAut,
    check_affine_law,
    check_free_and_rigid,
    from_affine_matrix,
    point_space_for,
)
from affinetrees.embedding import embed_unitriangular
from affinetrees.errors import IdentityInput, IndexSpaceMismatch, NotAffineForm
from affinetrees.ordered import LexVec, lex_compare, lex_distance
from affinetrees.sampling import (
    rand_fraction,
    rand_nontrivial_unitriangular,
    rand_unitriangular,
    trial_rng,
)
from affinetrees.trimat import TriMat


def translation_matrix(*column):
    n = len(column) + 1
    rows = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i, v in enumerate(column):
        rows[i][n - 1] = Fraction(v)
    return TriMat(rows)


def test_identity_aut():
    aut = from_affine_matrix(TriMat.identity(4))
    assert aut.is_identity()
    p = LexVec(aut.space, (1, 2, 3))
    assert aut.act(p) == p


def test_affine_form_validation():
    with pytest.raises(NotAffineForm):
        from_affine_matrix(TriMat([[1, 0], [1, 1]]))  # lower entry
    with pytest.raises(NotAffineForm):
        from_affine_matrix(TriMat([[1, 0], [0, 2]]))  # corner not 1
    with pytest.raises(NotAffineForm):
        from_affine_matrix(TriMat([[-1, 0], [0, 1]]))  # negative diagonal


def test_translation_action():
    aut = from_affine_matrix(translation_matrix(5, 7))
    p = LexVec(aut.space, (Fraction(1), Fraction(2)))
    # matrix rows (5, 7) land on coordinates in significance order (7, 5)
    assert aut.act(p) == LexVec(aut.space, (Fraction(8), Fraction(7)))


def test_roundtrip_to_affine_matrix():
    for t in range(30):
        rng = trial_rng(0, "roundtrip", t)
        mat = rand_unitriangular(rng, rng.randint(2, 6))
        aut = from_affine_matrix(mat)
        assert aut.to_affine_matrix() == mat


def test_composition_matches_matrix_product():
    for t in range(40):
        rng = trial_rng(1, "compose", t)
        n = rng.randint(2, 6)
        a, b = rand_unitriangular(rng, n), rand_unitriangular(rng, n)
        ga, gb = from_affine_matrix(a), from_affine_matrix(b)
        assert ga.compose(gb).to_affine_matrix() == a * b
        p = LexVec(ga.space, ga.space.sample(rng))
        assert ga.compose(gb).act(p) == ga.act(gb.act(p))
        assert ga.invert().to_affine_matrix() == a.inverse()
        assert ga.invert().act(ga.act(p)) == p


def test_translation_embedded_image():
    rng = trial_rng(2, "image")
    g = rand_unitriangular(rng, 4)
    aut = from_affine_matrix(embed_unitriangular(g))
    image = embed_unitriangular(g)
    # translation column read off the final matrix column
    assert aut.translation == tuple(image.rows[i][6] for i in range(6))


def test_order_preserved():
    for t in range(60):
        rng = trial_rng(3, "order", t)
        n = rng.randint(2, 5)
        aut = from_affine_matrix(rand_unitriangular(rng, n))
        p = LexVec(aut.space, aut.space.sample(rng))
        q = LexVec(aut.space, aut.space.sample(rng))
        if p < q:
            assert aut.act(p) < aut.act(q)
        elif q < p:
            assert aut.act(q) < aut.act(p)


def test_affine_law_isometry():
    aut = from_affine_matrix(translation_matrix(1, -2, 3))
    report = check_affine_law(aut, 50, seed=4)
    assert report["failures"] == 0


def test_affine_law_on_images():
    rng = trial_rng(5, "law")
    aut = from_affine_matrix(embed_unitriangular(rand_unitriangular(rng, 4)))
    report = check_affine_law(aut, 50, seed=6)
    assert report["failures"] == 0


def test_affine_law_negative_control():
    good = from_affine_matrix(embed_unitriangular(
        TriMat([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    ))
    corrupted = MatrixAffineAut(
        TriMat.identity(good.dim), good.translation, good.space
    )
    # identity dilation with the real translation: act uses dilation, so
    # the metric law must fail somewhere
    hybrid = MatrixAffineAut(good.dilation, good.translation, good.space)
    report_good = check_affine_law(hybrid, 50, seed=7)
    assert report_good["failures"] == 0

    class Corrupted:
        space = good.space

        def act(self, p):
            return good.act(p)

        def dilate(self, d):
            return corrupted.dilate(d)

        def is_identity(self):
            return False

    report_bad = check_affine_law(Corrupted(), 50, seed=8)
    assert report_bad["failures"] > 0
    assert report_bad["witness"] is not None


def test_free_and_rigid_translation():
    aut = from_affine_matrix(translation_matrix(0, 4))
    report = check_free_and_rigid(aut, 40, seed=9)
    assert report["certified"] is True
    assert report["free_on_samples"] and report["sign_constant"]
    assert report["consistent"]


def test_not_free_dilation_fixes_origin():
    mat = TriMat([[1, 0, 0], [0, 2, 0], [0, 0, 1]])
    aut = from_affine_matrix(mat)
    assert not aut.is_identity()
    report = check_free_and_rigid(aut, 20, seed=10)
    assert report["certified"] is False
    origin = LexVec.zero(aut.space)
    assert aut.act(origin) == origin


def test_free_and_rigid_identity_rejected():
    with pytest.raises(IdentityInput):
        check_free_and_rigid(from_affine_matrix(TriMat.identity(3)), 5, seed=0)


def test_free_and_rigid_on_images():
    for t in range(20):
        rng = trial_rng(11, "free", t)
        n = rng.randint(2, 5)
        g = rand_nontrivial_unitriangular(rng, n)
        aut = from_affine_matrix(embed_unitriangular(g))
        report = check_free_and_rigid(aut, 20, seed=t)
        assert report["certified"] is True
        assert report["consistent"]


def test_product_action_identity_and_translations():
    t1 = from_affine_matrix(translation_matrix(1))
    t2 = from_affine_matrix(translation_matrix(2, 3))
    prod = ProductAut([t1, t2])
    p = LexVec(prod.space, ((Fraction(5),), (Fraction(0), Fraction(0))))
    moved = prod.act(p)
    assert moved.value[0] == (Fraction(6),)
    assert moved.value[1] == (Fraction(3), Fraction(2))
    ident = ProductAut([from_affine_matrix(TriMat.identity(2))])
    q = LexVec(ident.space, ((Fraction(9),),))
    assert ident.act(q) == q
    assert ident.is_identity()


def test_product_action_affine_law_mixed():
    rng = trial_rng(12, "product")
    g1 = from_affine_matrix(embed_unitriangular(rand_unitriangular(rng, 3)))
    g2 = from_affine_matrix(embed_unitriangular(rand_unitriangular(rng, 4)))
    prod = ProductAut([g1, g2])
    report = check_affine_law(prod, 40, seed=13)
    assert report["failures"] == 0


def test_product_action_functorial():
    rng = trial_rng(14, "functorial")
    a1, b1 = (from_affine_matrix(rand_unitriangular(rng, 3)) for _ in range(2))
    a2, b2 = (from_affine_matrix(rand_unitriangular(rng, 2)) for _ in range(2))
    left = ProductAut([a1, a2]).compose(ProductAut([b1, b2]))
    right = ProductAut([a1.compose(b1), a2.compose(b2)])
    p = LexVec(left.space, left.space.sample(rng))
    assert left.act(p) == right.act(p)


def test_space_mismatch_rejected():
    aut = from_affine_matrix(TriMat.identity(3))
    other = from_affine_matrix(TriMat.identity(4))
    with pytest.raises(IndexSpaceMismatch):
        aut.act(LexVec(other.space, (0, 0, 0)))
