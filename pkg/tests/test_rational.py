"""Unit tests for the exact rational-function algebra."""

from fractions import Fraction as F

import pytest

from schwarztri.rational import (
    MobiusMap,
    Poly,
    RatFunc,
    compose,
    derivative,
    mobius_apply,
    ratfunc_arith,
    schwarz_pullback,
    schwarzian,
)

Y = RatFunc.variable()


class TestPoly:
    def test_normalization_strips_leading_zeros(self):
        assert Poly([1, 2, 0, 0]) == Poly([1, 2])
        assert Poly([0, 0]).is_zero
        assert Poly([]).degree == -1

    def test_divmod_roundtrip(self):
        a = Poly([1, 0, -3, 2, 5])
        b = Poly([2, 1, 1])
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree

    def test_gcd_common_factor(self):
        p = Poly([-1, 1])  # y - 1
        a = p * Poly([1, 1]) * 6
        b = p * Poly([2, 0, 1]) * F(1, 3)
        assert a.gcd(b) == p

    def test_gcd_coprime(self):
        assert Poly([1, 1]).gcd(Poly([2, 1])) == Poly([1])

    def test_root_multiplicity(self):
        p = Poly([0, 0, 1]) * Poly([-1, 1])  # y^2 (y-1)
        assert p.root_multiplicity(0) == 2
        assert p.root_multiplicity(1) == 1
        assert p.root_multiplicity(5) == 0

    def test_evaluation(self):
        p = Poly([1, 2, 3])
        assert p(F(1, 2)) == 1 + 1 + F(3, 4)
        assert abs(p(1j) - (1 + 2j - 3)) < 1e-15


class TestRatFuncArithmetic:
    def test_add_common_denominator(self):
        # 1/y + 1/(y-1) = (2y-1)/(y^2-y)
        f = 1 / Y
        g = 1 / (Y - 1)
        expected = RatFunc(Poly([-1, 2]), Poly([0, -1, 1]))
        assert ratfunc_arith(f, g, "add") == expected

    def test_mul_inverse_identity(self):
        f = Y * Y + 3
        assert ratfunc_arith(f, 1 / f, "mul") == RatFunc.constant(1)

    def test_division_by_zero_function(self):
        f = Y / (Y - 1)
        with pytest.raises(ZeroDivisionError):
            ratfunc_arith(f, RatFunc.constant(0), "div")

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            ratfunc_arith(Y, Y, "sub")

    def test_canonical_form(self):
        f = RatFunc(Poly([0, 2]), Poly([0, 0, 4]))  # 2y / 4y^2
        assert f.num == Poly([F(1, 2)])
        assert f.den == Poly([0, 1])
        assert f.den.leading == 1

    def test_pow_negative(self):
        assert (Y + 1) ** -2 == 1 / ((Y + 1) * (Y + 1))


class TestDerivative:
    def test_square(self):
        assert derivative(Y * Y) == 2 * Y

    def test_reciprocal(self):
        assert derivative(1 / Y) == RatFunc(Poly([-1]), Poly([0, 0, 1]))

    def test_constant(self):
        assert derivative(RatFunc.constant(5)).is_zero

    def test_repeated_pole(self):
        f = 1 / (Y * Y)
        assert derivative(f) == RatFunc(Poly([-2]), Poly([0, 0, 0, 1]))


class TestCompose:
    def test_shift(self):
        assert compose(1 / Y, Y - 1) == 1 / (Y - 1)

    def test_identity_inner(self):
        f = (Y * Y + 1) / (Y - 3)
        assert compose(f, Y) == f

    def test_constant_on_pole(self):
        f = 1 / (Y - 2)
        with pytest.raises(ZeroDivisionError):
            compose(f, RatFunc.constant(2))

    def test_constant_inner_regular(self):
        f = Y * Y + 1
        assert compose(f, RatFunc.constant(3)) == RatFunc.constant(10)


class TestSchwarzian:
    def test_mobius_maps_have_zero_schwarzian(self):
        for m in [MobiusMap(1, 2, 3, 4), MobiusMap(0, -1, 1, 0), MobiusMap(2, 1, 0, 1)]:
            assert schwarzian(m.as_ratfunc()).is_zero

    def test_degree_one_polynomial_is_zero_not_error(self):
        assert schwarzian(3 * Y + 7).is_zero

    def test_square(self):
        assert schwarzian(Y * Y) == RatFunc(Poly([F(-3, 2)]), Poly([0, 0, 1]))

    def test_cube(self):
        assert schwarzian(Y ** 3) == RatFunc(Poly([-4]), Poly([0, 0, 1]))

    def test_constant_raises(self):
        with pytest.raises(ValueError):
            schwarzian(RatFunc.constant(7))


class TestSchwarzPullback:
    def test_identity(self):
        r = (Y + 2) / (Y * Y - 1)
        assert schwarz_pullback(r, Y) == r

    def test_mobius_change_of_coordinate(self):
        # for Mobius phi the Schwarzian term drops out
        r = 1 / Y
        m = MobiusMap(2, 1, 1, 1)
        phi = m.as_ratfunc()
        dphi = derivative(phi)
        assert schwarz_pullback(r, phi) == compose(r, phi) * dphi * dphi

    def test_square_map(self):
        r = 1 / Y
        # 4y^2 r(y^2) + S(y^2) = 4 - 3/(2y^2)
        expected = RatFunc.constant(4) + RatFunc(Poly([F(-3, 2)]), Poly([0, 0, 1]))
        assert schwarz_pullback(r, Y * Y) == expected

    def test_constant_phi_raises(self):
        with pytest.raises(ValueError):
            schwarz_pullback(1 / Y, RatFunc.constant(1))


class TestMobius:
    def test_identity(self):
        f = (Y - 1) / (Y + 2)
        assert mobius_apply(MobiusMap.identity(), f) == f

    def test_inversion(self):
        assert mobius_apply(MobiusMap(0, -1, 1, 0), Y) == -1 / Y

    def test_translation(self):
        assert mobius_apply(MobiusMap(1, 1, 0, 1), Y) == Y + 1

    def test_singular_map_rejected(self):
        with pytest.raises(ValueError):
            MobiusMap(1, 2, 2, 4)

    def test_identically_zero_denominator(self):
        m = MobiusMap(1, 0, 1, -3)
        with pytest.raises(ZeroDivisionError):
            mobius_apply(m, RatFunc.constant(3))

    def test_inverse_composes_to_identity(self):
        m = MobiusMap(2, 3, 1, 4)
        assert mobius_apply(m.inverse(), mobius_apply(m, Y)) == Y


class TestStructure:
    def test_pole_order(self):
        f = (Y + 1) / (Y * Y * (Y - 1))
        assert f.pole_order(0) == 2
        assert f.pole_order(1) == 1
        assert f.pole_order(2) == 0

    def test_order_at_infinity(self):
        assert (1 / (Y * Y)).order_at_infinity() == 2
        assert (Y * Y).order_at_infinity() == -2

    def test_evaluation_at_pole_raises(self):
        with pytest.raises(ZeroDivisionError):
            (1 / Y)(F(0))

    def test_text_round_trip(self):
        cases = [
            RatFunc(Poly([-1, 2]), Poly([0, -1, 1])),
            RatFunc(Poly([F(1, 2), 0, 1]), Poly([1])),
            RatFunc.constant(0),
            RatFunc(Poly([F(-7, 3)]), Poly([F(5, 2), 1])),
        ]
        for f in cases:
            assert RatFunc.from_text(f.to_text()) == f

    def test_from_text_missing_separator(self):
        with pytest.raises(ValueError):
            RatFunc.from_text("1,2,3")

    def test_float_coefficients_rejected(self):
        with pytest.raises(TypeError):
            Poly([0.5])
