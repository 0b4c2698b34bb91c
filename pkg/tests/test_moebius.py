import pytest

from alpha_cf import (INFINITY, GroupWord, ProjMatrix, TreeWord, WordError, apply, digit_matrix, digit_word,
                      eval_word, generators, large_blocks, left_matrix, proj_eq, right_matrix,
                      triangle_constants)


@pytest.mark.parametrize('m, n', [(3, 3), (3, 4), (3, 5), (4, 6)])
def test_generator_relations(m, n):
    A, B, C = generators(m, n)
    field = triangle_constants(m, n).field
    identity = ProjMatrix.identity(field)
    assert proj_eq(A * B, C)
    assert proj_eq(C ** m, identity)
    assert proj_eq(B ** n, identity)
    assert A.det() == 1


def test_b_power_is_minus_identity():
    _, B, _ = generators(3, 5)
    field = triangle_constants(3, 5).field
    assert B ** 5 == -ProjMatrix.identity(field)


def test_apply_infinity():
    _, _, C = generators(3, 3)
    assert apply(C, 0) is INFINITY
    assert apply(C, INFINITY) == 1
    A, _, _ = generators(3, 3)
    assert apply(A, INFINITY) is INFINITY
    assert apply(A, 1) == 3


def test_group_word_parse_and_merge():
    w = GroupWord.parse('A^-2 C A^-1 C')
    assert str(w) == 'A^-2 C A^-1 C'
    assert str(GroupWord.parse('A A^-1')) == 'Id'
    assert str(GroupWord.parse('A^(2) A')) == 'A^3'
    assert len(w * w.inverse()) == 0
    with pytest.raises(WordError):
        GroupWord.parse('D^2')
    with pytest.raises(WordError):
        GroupWord.of(('X', 1))


def test_eval_word_matches_generators():
    A, B, C = generators(3, 4)
    assert proj_eq(eval_word(GroupWord.parse('A B'), 3, 4), C)
    assert proj_eq(eval_word(GroupWord.parse('C^3'), 3, 4), eval_word(GroupWord(), 3, 4))
    assert proj_eq(eval_word(GroupWord.parse('A^-2 C'), 3, 4), A.inverse() * A.inverse() * C)


def test_digit_matrix_first_digit_acts_first():
    n = 4
    A, _, C = generators(3, n)
    digits = [(1, 1), (-2, 1), (1, 2)]
    expected = (A * C * C) * (A ** -2 * C) * (A * C)
    assert proj_eq(digit_matrix(digits, 3, n), expected)
    assert proj_eq(eval_word(digit_word(digits), 3, n), expected)
    # 簡略桁は (k, 1)
    assert proj_eq(digit_matrix([2, 2, 3], 3, n), digit_matrix([(2, 1), (2, 1), (3, 1)], 3, n))


def test_left_right_matrices():
    A, _, C = generators(3, 3)
    R = right_matrix(1, '1', 3)
    assert proj_eq(R, digit_matrix([1], 3, 3))
    assert proj_eq(right_matrix(1, TreeWord.parse('111'), 3), digit_matrix([1, 2, 1], 3, 3))
    L = left_matrix(1, '1', 3)
    assert proj_eq(L, digit_matrix([-1, -2, -2, -1], 3, 3) * A.inverse())
    with pytest.raises(WordError):
        right_matrix(0, '1', 3)


@pytest.mark.parametrize('n, text', [(3, '1'), (4, '1'), (4, '2'), (4, '111'), (5, '121'), (5, '3')])
def test_large_upper_cancellation_matches_group_word(n, text):
    # k = -1 の ℰ = (1,2)^-1 を語のまま掛けたものと、連を打ち消した桁の行列は同じ
    v = TreeWord.parse(text)
    blocks = large_blocks(1, n)
    word = digit_word([(1, 2)] * (n - 2))
    for ch in v.pattern:
        for digit, exp in (blocks['E'] if ch == '1' else blocks['F']):
            word = digit_word([digit]) ** exp * word
    assert proj_eq(eval_word(word, 3, n), right_matrix(-1, v, n))
