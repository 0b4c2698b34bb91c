import pytest

from alpha_cf import (ROOT, WordError, enumerate_tree, identity_cases, identity_suite,
                      run_cases, verify_left_right_large, verify_left_right_small, verify_long_large,
                      verify_long_small, verify_one_step, verify_short_right, verify_W_forms,
                      verify_w_middle)


@pytest.mark.parametrize('m, n', [(3, 3), (3, 5), (4, 6), (5, 7)])
def test_w_forms(m, n):
    assert verify_W_forms(m, n)


@pytest.mark.parametrize('n', [3, 4, 5])
def test_short_right(n):
    for u, k, a in [(0, 1, 1), (2, 3, 2), (-1, 2, 4)]:
        assert verify_short_right(u, k, a, n)


@pytest.mark.parametrize('n', [3, 4, 6])
def test_w_middle(n):
    for k in range(1, 5):
        assert verify_w_middle(k, n)


@pytest.mark.parametrize('n', [3, 4])
def test_long_small(n):
    assert verify_long_small(-1, 2, (1, 2), (1,), n)
    assert verify_long_small(0, 1, (2, 1, 3), (2, 1), n)
    assert verify_long_small(2, 3, (2,), (), n)


@pytest.mark.parametrize('n', [3, 5])
def test_one_step_and_long_large(n):
    for k in range(1, 4):
        for a in range(1, 3):
            assert verify_one_step(k, a, n)
    assert verify_long_large(2, (1, 2), (1,), n)
    assert verify_long_large(3, (2, 1, 1), (1, 2), n)


def test_vector_errors():
    with pytest.raises(WordError):
        verify_long_small(0, 1, (1, 2), (), 3)
    with pytest.raises(WordError):
        verify_long_large(2, (0,), (), 3)
    with pytest.raises(WordError):
        verify_one_step(0, 1, 3)


@pytest.mark.parametrize('n', [3, 4])
def test_left_right_relations(n):
    for v in enumerate_tree(ROOT, 3, 2):
        for k in (1, 2):
            assert verify_left_right_small(k, v, n)
        assert verify_left_right_large(2, v, n)
        assert verify_left_right_large(3, v, n)


def test_run_cases_rows():
    cases = identity_cases({'n_max': 3, 'k_max': 1, 'vec_len': 1, 'entry_max': 2, 'u_values': [0]})
    rows = run_cases(cases)
    assert len(rows) == len(cases)
    assert set(rows[0]) == {'check', 'ok', 'detail'}
    assert all(r['ok'] for r in rows)


def test_identity_suite_small_grid():
    grid = {'n_max': 4, 'k_max': 2, 'vec_len': 2, 'entry_max': 2, 'u_values': [-1, 2]}
    rows = identity_suite(grid, 3, 2)
    assert [r for r in rows if not r['ok']] == []
    assert any(r['check'].startswith('W forms') for r in rows)
    assert any(r['check'].startswith('L = C^-1 A C^2 R') for r in rows)
