from fractions import Fraction

import pytest

from arithjet.crystal import (
    build_crystal,
    de_rham_shadow,
    polygons,
    weak_admissibility,
)
from arithjet.errors import Inconclusive, InvalidParameters
from arithjet.ring import BaseRingSpec

SPEC = BaseRingSpec(5, 1)


def crys(m, lam, gam, prec=4, spec=SPEC):
    l = None if lam is None else spec.scalar(lam, prec)
    return build_crystal(spec, m, l, spec.scalar(gam, prec))


def test_companion_shape():
    c = crys(2, -3, 5)
    (a, b), (d, e) = c.frobenius_matrix
    assert a.is_zero()
    assert b == SPEC.scalar(-5, 4)
    assert d == SPEC.one(4)
    assert e == SPEC.scalar(-3, 4)
    assert c.det == SPEC.scalar(5, 4)
    assert c.fil1 == (SPEC.scalar(3, 4), SPEC.one(4))


def test_dim1_shape():
    c = crys(1, None, -5)
    assert c.frobenius_matrix == ((SPEC.scalar(-5, 4),),)
    assert c.fil1 is None


def test_unit_gamma_rejected():
    with pytest.raises(InvalidParameters):
        crys(2, -3, 3)


def test_zero_gamma_inconclusive():
    with pytest.raises(Inconclusive):
        crys(2, -3, 0)


def test_lambda_required_in_dim2():
    with pytest.raises(InvalidParameters):
        crys(2, None, 5)


def test_polygons_ordinary():
    hodge, newton = polygons(crys(2, -3, 5))
    assert hodge == [Fraction(0), Fraction(1)]
    assert newton == [Fraction(0), Fraction(1)]


def test_polygons_supersingular_shape():
    hodge, newton = polygons(crys(2, 5, 5))
    assert newton == [Fraction(1, 2), Fraction(1, 2)]


def test_polygons_dim1():
    hodge, newton = polygons(crys(1, None, -5))
    assert hodge == [Fraction(1)] and newton == [Fraction(1)]


def test_newton_above_hodge_with_equal_endpoints():
    for c in (crys(2, -3, 5), crys(2, 5, 5), crys(1, None, -5)):
        hodge, newton = polygons(c)
        assert sum(hodge) == sum(newton)
        # newton lies on or above hodge: partial sums from the top
        assert sorted(newton)[0] >= sorted(hodge)[0]


SYNTHETIC = [
    # (gamma, lambda, admissible): admissible iff v(gamma) == 1
    (5, 1, True), (5, 5, True), (10, 1, True), (10, 5, True),
    (25, 1, False), (25, 5, False), (50, 1, False), (50, 5, False),
]


@pytest.mark.parametrize("gam,lam,want", SYNTHETIC)
def test_weak_admissibility_synthetic_sweep(gam, lam, want):
    cert = weak_admissibility(crys(2, lam, gam))
    assert (cert["verdict"] == "admissible") is want
    assert cert["closed_form_v_gamma_1"] is want


def test_weak_admissibility_dim1():
    assert weak_admissibility(crys(1, None, -5))["verdict"] == "admissible"
    assert (weak_admissibility(crys(1, None, 25))["verdict"]
            == "not_admissible")


def test_weak_admissibility_certificate_contents():
    cert = weak_admissibility(crys(2, -3, 5, prec=5))
    assert cert["top"]["equal"] is True
    # the ordinary case has two Frobenius-stable lines, both transverse
    # to the filtration line
    assert len(cert["subobjects"]) == 2
    assert all(s["ok"] for s in cert["subobjects"])
    assert not any(s["is_fil1"] for s in cert["subobjects"])
    slopes = sorted(s["t_N"] for s in cert["subobjects"])
    assert slopes == ["0", "1"]


def test_weak_admissibility_ramified():
    spec = BaseRingSpec(5, 2)
    good = build_crystal(spec, 2, spec.one(5), spec.one(5).mul_pi_power(1))
    assert weak_admissibility(good)["verdict"] == "admissible"
    bad = build_crystal(spec, 2, spec.one(5), spec.one(5).mul_pi_power(2))
    assert weak_admissibility(bad)["verdict"] == "not_admissible"


def test_de_rham_shadow():
    c = crys(2, -3, 5)
    rep = de_rham_shadow(c, SPEC.scalar(-1, 4))
    assert rep["phi_injective"] is True
    assert rep["gamma_over_pi"]["digits"] == [1]
    assert rep["rows"] == {"X_prim_rank": 1, "H_rank": 2, "I_rank": 1}


def test_to_json_serialization():
    j = crys(2, -3, 5).to_json()
    assert j["m"] == 2 and j["dim"] == 2
    assert j["Gamma"][1][0]["digits"] == [1]
    assert j["gamma"] == {"digits": [5], "prec": 4, "pi_power_basis": 1}
    assert j["fil1"][0]["digits"] == [3]
