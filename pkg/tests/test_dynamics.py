from fractions import Fraction

import pytest

from alpha_cf import (AlphaParam, Digit, DynamicsError, admissible, alpha0_period_digits,
                      alpha0_suite, alpha1_suite, alphabet, cf_reconstruct, cylinder, digit_lt,
                      endpoint_digits, orbit, regime_constants, seq_compare, step)


def test_alpha_param_interval(alpha_in_j11):
    at = AlphaParam(alpha_in_j11, 3, 3)
    assert at.r0 == Fraction(3, 10)
    assert at.l0 == Fraction(-17, 10)
    assert at.contains(Fraction(0))
    assert not at.contains(at.r0)
    assert at.in_closed(at.r0)
    assert AlphaParam('3/20').value == alpha_in_j11


def test_alpha_param_errors():
    with pytest.raises(DynamicsError):
        AlphaParam(Fraction(3, 2))
    with pytest.raises(DynamicsError):
        AlphaParam(-1)
    with pytest.raises(DynamicsError):
        AlphaParam('abc')


def test_first_digits(alpha_in_j11):
    at = AlphaParam(alpha_in_j11, 3, 3)
    digit, image = step(at.r0, at)
    assert digit == Digit(1, 1)
    assert image == Fraction(-1, 3)
    digit, image = step(at.l0, at)
    assert digit == Digit(-1, 1)
    assert at.contains(image)


def test_step_outside_interval(alpha_in_j11):
    at = AlphaParam(alpha_in_j11, 3, 3)
    with pytest.raises(DynamicsError):
        step(Fraction(1), at)


def test_orbit_hits_pole():
    at = AlphaParam(Fraction(1, 4), 3, 3)
    record = orbit(Fraction(0), at, 5)
    assert record.hit_pole
    assert len(record) == 0
    assert record.points == [0]


def test_digit_order():
    assert digit_lt((-1, 1), (-2, 1))
    assert digit_lt((2, 1), (1, 1))
    assert digit_lt((-5, 1), (3, 1))
    assert digit_lt((1, 1), (-1, 2))
    assert not digit_lt((1, 1), (1, 1))
    assert seq_compare([(1, 1), (2, 1)], [(1, 1), (1, 1)]) == -1
    assert seq_compare([(1, 1)], [(1, 1), (5, 1)]) == 0


def test_alphabet_and_admissible(alpha_in_j11):
    at = AlphaParam(alpha_in_j11, 3, 3)
    letters = alphabet(at)
    assert letters.left == Digit(-1, 1)
    assert letters.right == Digit(1, 1)
    assert (3, 1) in letters
    assert (-4, 1) in letters
    assert (0, 1) not in letters
    assert (1, 2) not in letters
    upper = endpoint_digits(at, 'r0', 4)
    assert admissible(upper, at)
    assert not admissible([(1, 2)], at)


def test_cylinder_contains_its_points(alpha_in_j11):
    at = AlphaParam(alpha_in_j11, 3, 3)
    cyl = cylinder(at, 1, 1)
    assert cyl is not None
    assert cyl.lo < cyl.hi
    assert cyl.right_closed
    digit, _ = step((cyl.lo + cyl.hi) / 2, at)
    assert digit == Digit(1, 1)
    assert cylinder(at, 0, 1) is None


@pytest.mark.parametrize('x', [Fraction(1, 7), Fraction(-6, 5), Fraction(2, 9)])
def test_cf_reconstruct(x, alpha_in_j11):
    at = AlphaParam(alpha_in_j11, 3, 3)
    result = cf_reconstruct(x, at, 6)
    assert result.ok


def test_regime_constants_n3(golden_ratio):
    rc = regime_constants(3)
    assert rc.gamma == (golden_ratio - 1) ** 2 / 2
    assert rc.epsilon == golden_ratio / 2
    assert rc.delta < rc.epsilon
    assert 0 < rc.gamma < rc.epsilon < 1


def test_alpha0_period_digits():
    assert alpha0_period_digits(3, 3) == [-1, -2, -2]
    assert alpha0_period_digits(3, 4) == [-1, -1, -2, -1, -2]


@pytest.mark.parametrize('m, n', [(3, 3), (3, 5), (4, 4)])
def test_alpha0_suite(m, n):
    rows = alpha0_suite(m, n)
    assert rows
    assert [r for r in rows if not r['ok']] == []


def test_alpha1_suite():
    rows = alpha1_suite(3, 3)
    assert rows
    assert [r for r in rows if not r['ok']] == []
