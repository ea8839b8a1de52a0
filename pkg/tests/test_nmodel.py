import math

import pytest

from afmspec.errors import DomainError
from afmspec.nmodel import (ABCD_EXP, ABCD_YUK, BC_EXP, BC_YUK, CoulombLike, EtaRational, FixedBC, FixedSqrtNL,
                            Hyperbola, Quadratic, parse_nmodel)


def test_bcexp_at_40():
    assert BC_EXP.b(40.0) == pytest.approx((1.42 * 40 - 12.76) / (40 - 8.62))
    assert BC_EXP.c(40.0) == pytest.approx((1.32 * 40 + 16.88) / (40 + 14.95))
    assert BC_EXP(40.0, 1, 2) == pytest.approx(BC_EXP.b(40.0) + 2 + BC_EXP.c(40.0))


def test_bcyuk_values():
    assert BC_YUK.b(30.0) == pytest.approx((0.99 * 30 - 5.92) / (30 - 5.08))
    assert BC_YUK.c(30.0) == pytest.approx((1.00 * 30 - 1.68) / (30 - 1.58))


def test_abcd_includes_sqrt_term():
    g = 40.0
    s = 6.69e-6 * g * g - 0.00019 * g - 0.126
    expected = ABCD_EXP.b(g) * 2 + ABCD_EXP.lc(g) * 3 + ABCD_EXP.c(g) + s * math.sqrt(6)
    assert ABCD_EXP(g, 2, 3) == pytest.approx(expected)
    assert ABCD_YUK.s(30.0) == pytest.approx(-0.000233 * 900 + 0.0202 * 30 - 0.480)


@pytest.mark.parametrize("model, pole", [(BC_EXP.b, 8.62), (BC_YUK.b, 5.08), (BC_YUK.c, 1.58), (ABCD_YUK.b, 6.64)])
def test_pole_raises(model, pole):
    with pytest.raises(DomainError):
        model(pole)


def test_simple_models():
    assert CoulombLike()(123.0, 2, 3) == 6.0
    assert EtaRational(2.0)(0.0, 1, 1) == pytest.approx(4.5)
    assert FixedBC(1.5, 1.3)(1.0, 2, 1) == pytest.approx(5.3)
    assert FixedSqrtNL(1.0, 1.0, 1.0, 0.5)(1.0, 1, 4) == pytest.approx(7.0)
    assert Quadratic(1.0, 2.0, 3.0)(2.0) == 11.0
    assert Hyperbola(1.0, 2.0, 3.0).pole == -3.0


def test_parse_nmodel():
    assert parse_nmodel("BcExp") is BC_EXP
    assert parse_nmodel("coulomb")(5.0, 1, 1) == 3.0
    assert parse_nmodel("bcdef:-1")(5.0, 2, 1) == pytest.approx(4.0)
    assert parse_nmodel("fixed:1.5,1.25") == FixedBC(1.5, 1.25)
    with pytest.raises(ValueError):
        parse_nmodel("fixed:1.5")
    with pytest.raises(ValueError):
        parse_nmodel("nonsense")
