import pytest

from alpha_cf import (ROOT, TreeWord, WordError, derived, digits_large, double_prime,
                      enumerate_tree, frak_f, frak_f_closed, from_path, large_blocks,
                      lower_digits_small, lower_length, periodic_less, prime, theta, tree_path,
                      upper_digits_small, word_suite)
from alpha_cf.words import _expand_runs


def w(text):
    return TreeWord.parse(text)


def test_parse_and_letters():
    v = w('313')
    assert v.pattern == '1110111'
    assert v.letters == (3, 1, 3)
    assert v.c_letters == (3, 3)
    assert v.d_letters == (1,)
    assert w('3 1 3') == v
    assert w('12 1 12').text == '12 1 12'
    with pytest.raises(WordError):
        w('3x')
    with pytest.raises(WordError):
        TreeWord('12')


def test_prime():
    assert prime(TreeWord('111')).pattern == '011'
    assert prime(w('313')).pattern == '0110111'
    assert prime(ROOT) == TreeWord('0')
    with pytest.raises(WordError):
        prime(TreeWord('011'))


def test_theta_children():
    assert theta(ROOT, 1).pattern == '101'
    assert theta(ROOT, 2) == w('121')
    assert theta(ROOT, -1) == w('2')
    three = from_path((-1, -1))
    assert three == w('3')
    assert theta(three, 1).letters == (3, 1, 2, 1, 3)
    assert theta(three, 0) == w('313')
    with pytest.raises(WordError):
        theta(ROOT, 0)
    with pytest.raises(WordError):
        theta(w('111'), -1)


def test_from_path_and_tree_path():
    assert from_path((-1, -1, 0, 0)) == w('31313')
    assert tree_path(w('313')) == (-1, -1, 0)
    assert tree_path(w('111')) == (1,)
    assert tree_path(w('3')) == (-1, -1)
    assert tree_path(w('13')) is None
    assert w('121').parent == ROOT
    assert w('121').last_q == 2


def test_double_prime():
    assert double_prime(w('111')).pattern == '01'
    assert double_prime(w('313')).pattern == '0111'
    with pytest.raises(WordError):
        double_prime(w('2'))


def test_frak_f():
    assert frak_f(w('111')).pattern == '10'
    assert frak_f(theta(w('313'), 1)) == w('313121')
    v = theta(w('313'), 1)
    assert frak_f_closed(TreeWord(v.pattern, tree_path(v))) == frak_f(v)


def test_periodic_order():
    assert periodic_less(w('11'), w('1'))
    assert periodic_less(w('313121'), w('31312131'))
    assert not periodic_less(w('1'), w('1'))


def test_derived():
    assert derived(w('31313')) == TreeWord('111')
    assert derived(w('121')) == w('1')
    with pytest.raises(WordError):
        derived(w('1'))
    with pytest.raises(WordError):
        derived(w('313121'))


def test_upper_and_lower_digits_small():
    assert upper_digits_small(2, w('313')) == [2, 2, 2, 3, 2, 2, 2]
    assert upper_digits_small(1, w('111')) == [1, 2, 1]
    assert lower_digits_small(1, ROOT, 3) == [-1, -2, -2, -1]
    assert lower_digits_small(1, w('2'), 3) == [-1, -2, -2, -2, -1]
    assert lower_length(2, w('111'), 4) == len(lower_digits_small(2, w('111'), 4))
    with pytest.raises(WordError):
        upper_digits_small(0, ROOT)


def test_digits_large():
    d = digits_large(-2, ROOT, 3)
    assert d.lower == [-2]
    assert d.upper == [(1, 2), (1, 1)]
    # K = 1 では (1,2) の指数が打ち消し合う
    assert digits_large(-1, ROOT, 4).upper == [(1, 2)]
    with pytest.raises(WordError):
        digits_large(1, ROOT, 3)


@pytest.mark.parametrize('K, n', [(2, 3), (3, 4), (4, 5)])
def test_large_blocks_eg_is_f(K, n):
    blocks = large_blocks(K, n)
    assert _expand_runs(blocks['E'] + blocks['G']) == _expand_runs(blocks['F'])


def test_enumerate_tree():
    words = enumerate_tree(ROOT, 3, 2)
    assert {str(v) for v in words} == {'1', '2', '3', '111', '121', '212', '313'}
    assert [len(v) for v in words] == sorted(len(v) for v in words)
    assert all(v.path is not None for v in words)
    assert [str(v) for v in enumerate_tree(ROOT, 5, 3, trimmed_n=3)] == ['1']
    assert {str(v) for v in enumerate_tree(ROOT, 3, 2, trimmed_n=4)} == {'1', '2', '111', '121'}
    with pytest.raises(WordError):
        enumerate_tree(ROOT, 0, 2)


def test_word_suite_passes():
    rows = word_suite(5, 2)
    assert rows
    failed = [r for r in rows if not r['ok']]
    assert failed == []
