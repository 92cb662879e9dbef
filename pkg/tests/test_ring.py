from itertools import product

import pytest
from hypothesis import given, strategies as st

from counterpoint.errors import ModulusError, ModulusMismatch, NotAUnit
from counterpoint.ring import (
    AffineMap,
    FirstInterval,
    Projection,
    TwoInterval,
    affine_apply,
    affine_compose,
    affine_inverse,
    check_modulus,
    polarity1_apply,
    polarity2_apply,
    project_apply,
    units,
)

P = AffineMap(2, 5, 12)


@pytest.mark.parametrize(
    "n, expected",
    [(12, [1, 5, 7, 11]), (2, [1]), (24, [1, 5, 7, 11, 13, 17, 19, 23])],
)
def test_units(n, expected):
    assert units(n) == expected


@pytest.mark.parametrize("n", [13, 2, 0, -4, 3])
def test_bad_modulus(n):
    with pytest.raises(ModulusError):
        check_modulus(n)


def test_affine_apply():
    assert affine_apply(P, 7) == 1
    assert affine_apply(P, 0) == 2
    assert all(affine_apply(AffineMap(0, 1, 12), x) == x for x in range(12))


def test_polarity_is_involution():
    assert affine_compose(P, P) == AffineMap(0, 1, 12)
    assert affine_inverse(P) == P
    assert affine_inverse(AffineMap(0, 1, 12)) == AffineMap(0, 1, 12)
    assert str(P) == "T^2.5"


def test_affine_rejects_nonunit_and_mixed_rings():
    with pytest.raises(NotAUnit):
        AffineMap(0, 4, 12)
    with pytest.raises(ModulusMismatch):
        P @ AffineMap(0, 1, 10)


def test_constructors_reduce():
    assert AffineMap(14, 17, 12) == P
    assert TwoInterval(13, -1, 25) == TwoInterval(1, 11, 1)
    assert Projection(s=19, w1=-6, t2=18, modulus=12).params == (0, 6, 7, 6, 0)


unit12 = st.sampled_from(units(12))
res12 = st.integers(0, 11)


@given(res12, unit12, res12, unit12, res12)
def test_composition_is_pointwise(u1, v1, u2, v2, x):
    f, g = AffineMap(u1, v1, 12), AffineMap(u2, v2, 12)
    assert (f @ g)(x) == f(g(x))
    assert (f @ f.inverse())(x) == x


def test_project_apply_examples():
    g1 = Projection(s=7, modulus=12)
    assert project_apply(g1, TwoInterval(11, 4, 11)) == FirstInterval(5, 4)
    ident = Projection(s=1, modulus=12)
    for c, x, y in product(range(12), repeat=3):
        assert ident(TwoInterval(c, x, y)) == FirstInterval(c, x)
    g2 = Projection(s=1, w1=6, t2=6, modulus=12)
    # 6*11 + 8 + 6 = 80 = 8 mod 12
    assert g2(TwoInterval(11, 8, 6)) == FirstInterval(11, 8)
    with pytest.raises(ModulusMismatch):
        g1(TwoInterval(1, 2, 3, modulus=10))


def test_matrix_conversion_roundtrip():
    # printed entries (s*w1, s*w2) -> parameters
    g6 = Projection.from_matrix(((5, 0, 0), (8, 5, 0)), modulus=12, t2=8)
    assert (g6.s, g6.w1, g6.w2, g6.t2) == (5, 4, 0, 8)
    g7 = Projection.from_matrix(((11, 0, 0), (0, 11, 8)), modulus=12)
    assert (g7.s, g7.w1, g7.w2) == (11, 0, 4)
    assert g7.matrix == ((11, 0, 0), (0, 11, 8))
    assert g6.matrix_str() == "T^(e1.8) o (5 0 0; 8 5 0)"
    with pytest.raises(ValueError):
        Projection.from_matrix(((5, 0, 0), (8, 7, 0)), modulus=12)


def test_parameter_equality_agrees_with_pointwise_equality():
    n = 6
    pts = [TwoInterval(c, x, y, n) for c, x, y in product(range(n), repeat=3)]
    maps = [
        Projection(s=s, w1=w1, w2=w2, t2=t2, t1=t1, modulus=n)
        for s in units(n)
        for w1, w2, t2, t1 in product(range(n), repeat=4)
    ]
    seen = {}
    for g in maps:
        key = tuple(g(p) for p in pts)
        assert key not in seen, (g, seen.get(key))
        seen[key] = g


def test_polarity_examples():
    assert polarity2_apply(P, 0, TwoInterval(0, 0, 0)) == TwoInterval(0, 2, 2)
    assert polarity2_apply(P, 1, TwoInterval(1, 3, 9)) == TwoInterval(1, 5, 11)
    assert polarity1_apply(P, 0, FirstInterval(0, 7)) == FirstInterval(0, 1)
    assert polarity1_apply(P, 0, FirstInterval(3, 0)) == FirstInterval(3, 2)


@given(res12, res12, res12, res12)
def test_polarity_fixes_tangent_space_and_is_involutive(c, x, y, z):
    xi = TwoInterval(c, x, y)
    assert polarity2_apply(P, c, xi).c == c
    assert polarity2_apply(P, z, polarity2_apply(P, z, xi)) == xi
    eta = FirstInterval(c, x)
    assert polarity1_apply(P, c, eta).c == c
    assert polarity1_apply(P, z, polarity1_apply(P, z, eta)) == eta


def test_polarity2_maps_consonant_space_onto_dissonant_space():
    X = {0, 3, 4, 7, 8, 9}
    for c in (0, 5):
        image = {polarity2_apply(P, c, TwoInterval(a, x, y)) for a in range(12) for x in X for y in range(12)}
        assert image == {TwoInterval(a, x, y) for a in range(12) for x in range(12) if x not in X for y in range(12)}


@given(res12, res12, res12, res12, res12)
def test_conjugation_formula(c1, c2, c, x, y):
    xi = TwoInterval(c, x, y)
    rhs = polarity2_apply(P, c2, xi.translate(dc=-c1)).translate(dc=c1)
    assert polarity2_apply(P, c1 + c2, xi) == rhs


@given(unit12, res12, res12, res12, res12, res12, res12, res12)
def test_translation_relation(s, w1, w2, t2, t1, c, x, y):
    g = Projection(s=s, w1=w1, w2=w2, t2=t2, modulus=12)
    xi = TwoInterval(c, x, y)
    si = pow(s, -1, 12)
    lhs = g(xi).translate(dc=t1)
    rhs = g.precompose_shift(-t1)(xi.translate(dc=si * t1, dy=t1))
    assert lhs == rhs
