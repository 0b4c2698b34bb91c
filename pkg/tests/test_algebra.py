from fractions import Fraction

import pytest

from alpha_cf import (Enclosure, FieldError, FieldZeroDivisionError, NegativeDiscriminantError,
                      NoRootError, RealAlgebraic, chebyshev_v, compare, decimal_string,
                      minpoly_of_nu, number_field, quad_roots, quad_solve, quad_solve_between,
                      refine, triangle_constants)


@pytest.mark.parametrize('n, expected', [
    (3, (-1, 1)),
    (4, (-2, 0, 1)),
    (5, (-1, -1, 1)),
    (6, (-3, 0, 1)),
])
def test_minpoly_of_nu(n, expected):
    assert minpoly_of_nu(n) == expected


def test_chebyshev_v():
    assert chebyshev_v(0) == [2]
    assert chebyshev_v(1) == [0, 1]
    assert chebyshev_v(2) == [-2, 0, 1]
    assert chebyshev_v(3) == [0, -3, 0, 1]


def test_triangle_constants_t():
    assert triangle_constants(3, 3).t == 2
    assert triangle_constants(3, 6).field.degree == 2

    # t(3,4) = 1 + √2 は t^2 - 2t - 1 = 0 を満たす
    t = triangle_constants(3, 4).t
    assert t * t - 2 * t - 1 == 0
    assert 2 < t < Fraction(5, 2)


def test_field_arithmetic():
    field = number_field(5)
    g = field.gen()
    # g = 黄金比、g^2 = g + 1
    assert g * g == g + 1
    assert g.inverse() == g - 1
    assert (g / g) == field.one()
    assert g ** 0 == 1
    with pytest.raises(FieldZeroDivisionError):
        field.zero().inverse()


def test_field_mismatch():
    with pytest.raises(FieldError):
        number_field(4).gen() + number_field(5).gen()


def test_quad_roots_order(sqrt):
    field = triangle_constants(3, 3).field
    roots = quad_roots(field.scalar(1), 0, -2)
    assert len(roots) == 2
    assert roots[0] < 0 < roots[1]
    assert roots[1] == sqrt(2)
    assert roots[1] * roots[1] == 2


def test_quad_roots_negative_discriminant():
    field = triangle_constants(3, 3).field
    with pytest.raises(NegativeDiscriminantError):
        quad_roots(field.scalar(1), 0, 1)


def test_quad_solve_selects_root():
    field = triangle_constants(3, 3).field
    # 2X^2 - 5X + 1 = 0 の小さい根 (5 - √17)/4
    r = quad_solve(field.scalar(2), -5, 1, Enclosure(0, 1))
    assert r.sign() > 0
    assert 2 * r * r - 5 * r + 1 == 0
    with pytest.raises(NoRootError):
        quad_solve_between(field.scalar(2), -5, 1, 1, 2)


def test_quad_needs_field_element():
    with pytest.raises(FieldError):
        quad_roots(1, 0, -2)


def test_compare_across_radicands(sqrt):
    a, b = sqrt(2), sqrt(3)
    assert compare(a, b) < 0
    assert compare(b, a) > 0
    assert compare(sqrt(8), 2 * a) == 0
    assert compare(Fraction(7, 5), a) < 0


def test_refine_is_canonical_and_nested(sqrt):
    x = sqrt(21)
    e8 = refine(x, 8)
    e16 = refine(x, 16)
    assert e8.width == Fraction(1, 256)
    assert e8.lo <= e16.lo and e16.hi <= e8.hi
    assert refine(x, 16) == e16
    assert refine(Fraction(1, 2), 4) == Enclosure(Fraction(7, 16), Fraction(1, 2))


def test_decimal_string_truncates(sqrt):
    x = sqrt(2)
    assert decimal_string(x, 5) == '1.41421'
    assert decimal_string(-x, 3) == '-1.414'
    assert decimal_string(x, 8).startswith(decimal_string(x, 5))
    assert decimal_string(Fraction(1, 3), 4) == '0.3333'


def test_real_algebraic_lift_and_normalize(sqrt):
    field = triangle_constants(3, 3).field
    # √4 は有理数に正規化される
    r = RealAlgebraic(field.zero(), 1, 4)
    assert r.is_rational()
    assert r.rational_value() == 2
    assert RealAlgebraic.lift(Fraction(1, 2), field) == Fraction(1, 2)
    assert (sqrt(21) - sqrt(21)).is_rational()


def test_real_algebraic_square_in_base_field():
    # n = 4 では g = √2
    field = number_field(4)
    g = field.gen()

    r = RealAlgebraic(field.zero(), 1, 3 + 2 * g)
    assert r.is_base()
    assert (r.p - (1 + g)).is_zero()

    r = RealAlgebraic(field.one(), 1, 2)
    assert r.is_base()
    assert (r.p - (1 + g)).is_zero()

    # √3 は ℚ(√2) にないので根号のまま
    r = RealAlgebraic(field.zero(), 1, 3)
    assert not r.is_base()
    assert r.radicand.rational_value() == 3
    assert compare(r, Fraction(17, 10)) > 0


def test_enclosure_arithmetic():
    a = Enclosure(1, 2)
    b = Enclosure(-1, 3)
    assert (a + b) == Enclosure(0, 5)
    assert (a * b) == Enclosure(-2, 6)
    assert Fraction(3, 2) in a
    assert a.contains(Enclosure(Fraction(5, 4), Fraction(3, 2)))
    assert a.mid == Fraction(3, 2)
