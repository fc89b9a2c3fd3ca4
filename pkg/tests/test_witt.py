import pytest
from hypothesis import given, settings, strategies as st

from arithjet.errors import IncompatibleSpec
from arithjet.ring import BaseRingSpec
from arithjet.verify import ghost_components
from arithjet.witt import (
    WittVector,
    f_tilde_scalar,
    frobenius_W,
    structural_polynomials,
    teichmuller,
    verschiebung,
)

SPEC3 = BaseRingSpec(3, 1)
SPEC5 = BaseRingSpec(5, 1)

ints = st.integers(min_value=0, max_value=3 ** 7)


def vec(spec, comps, prec=6):
    return WittVector.from_ints(spec, comps, prec)


@given(a=st.lists(ints, min_size=3, max_size=3),
       b=st.lists(ints, min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_ghost_homomorphism(a, b):
    x, y = vec(SPEC3, a), vec(SPEC3, b)
    wx, wy = ghost_components(x), ghost_components(y)
    for i, w in enumerate(ghost_components(x + y)):
        assert (w - (wx[i] + wy[i])).is_zero()
    for i, w in enumerate(ghost_components(x * y)):
        assert (w - wx[i] * wy[i]).is_zero()


@given(a=st.lists(ints, min_size=3, max_size=3))
@settings(max_examples=40, deadline=None)
def test_additive_inverse(a):
    x = vec(SPEC3, a)
    assert (x - x).is_zero()
    assert (x + (-x)).is_zero()


def test_structural_polynomial_shapes():
    table = structural_polynomials(SPEC3, 2, "sum", cap=None, prec=5)
    assert len(table.polys) == 3
    # w0 of the sum is x0 + y0 on the nose
    p0 = table.polys[0]
    assert p0.linear_coeff("x0") == SPEC3.one(5)
    assert p0.linear_coeff("y0") == SPEC3.one(5)


@given(a=st.lists(ints, min_size=3, max_size=3))
@settings(max_examples=30, deadline=None)
def test_fv_is_pi(a):
    x = vec(SPEC3, a)
    assert frobenius_W(verschiebung(x)) == x.scalar_mul(SPEC3.pi(6))


def test_fv_neq_vf_pinned_witness():
    # p = 2, x = (1, 0): ghost w(x) = (1, 1).
    #   F(x) has ghost (w1) = (1), so F(x) = (1) and VF(x) = (0, 1).
    #   FV(x) = 2x has ghost (2, 2): y0 = 2, y0^2 + 2 y1 = 2 => y1 = -1.
    spec = BaseRingSpec(2, 1)
    x = vec(spec, [1, 0])
    fv = frobenius_W(verschiebung(x))
    vf = verschiebung(frobenius_W(x))
    assert fv == vec(spec, [2, -1])
    assert vf == vec(spec, [0, 1])
    assert fv != vf


@given(a=st.lists(ints, min_size=4, max_size=4))
@settings(max_examples=20, deadline=None)
def test_ffv_equals_fvf(a):
    x = vec(SPEC3, a)
    assert (frobenius_W(frobenius_W(verschiebung(x)))
            == frobenius_W(verschiebung(frobenius_W(x))))


def test_frobenius_ghost_shift():
    x = vec(SPEC5, [2, 7, 1], prec=5)
    fx = frobenius_W(x)
    wx = ghost_components(x)
    wfx = ghost_components(fx)
    # ghost of F is the left shift (phi = id)
    for i in range(fx.length):
        assert (wfx[i] - wx[i + 1].reduce_prec(wfx[i].prec)).is_zero()


def test_frobenius_needs_length():
    with pytest.raises(IncompatibleSpec):
        frobenius_W(vec(SPEC3, [1]))


@given(a=ints, b=ints)
@settings(max_examples=30, deadline=None)
def test_teichmuller_multiplicative(a, b):
    x = teichmuller(SPEC3, SPEC3.scalar(a, 6), 3)
    y = teichmuller(SPEC3, SPEC3.scalar(b, 6), 3)
    xy = teichmuller(SPEC3, SPEC3.scalar(a * b, 6), 3)
    assert x * y == xy


def test_f_tilde_constant_ghost():
    r = SPEC5.scalar(7, 9)
    x = f_tilde_scalar(SPEC5, r, 3)
    for w in ghost_components(x):
        assert (w - r.reduce_prec(w.prec)) .is_zero()


def test_f_tilde_frobenius_fixed():
    # F(f~(r)) = f~(phi(r)) = f~(r) one step down the tower
    r = SPEC3.scalar(5, 9)
    x = f_tilde_scalar(SPEC3, r, 3)
    fx = frobenius_W(x)
    y = f_tilde_scalar(SPEC3, r, 2)
    prec = min(fx.prec(), y.prec())
    assert fx.reduce_prec(prec) == y.reduce_prec(prec)
