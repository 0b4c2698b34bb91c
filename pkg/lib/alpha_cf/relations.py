#!/usr/bin/env python

"""
群の元の恒等式の検算

語を行列に評価し、符号を除いた等号（proj_eq）で比べる。
m = 3 の恒等式では W は短い形 A^-1 C^-1 A C A、U は A C (A C^2)^{n-2} を使う。
"""

import logging
from itertools import product
from typing import NamedTuple

from .dynamics import u_word, w_words
from .errors import WordError
from .moebius import GroupWord, eval_word, generators, left_matrix, proj_eq, right_matrix
from .words import ROOT, enumerate_tree

logger = logging.getLogger(__name__)

__all__ = [
    'IdentityCase', 'verify_W_forms', 'verify_short_right', 'verify_w_middle', 'verify_long_small',
    'verify_one_step', 'verify_long_large', 'verify_left_right_small', 'verify_left_right_large',
    'identity_cases', 'run_cases', 'identity_suite',
]


def _g(text: str) -> GroupWord:
    return GroupWord.parse(text)


def _w(n: int) -> GroupWord:
    return w_words(3, n)[1]


def _u(n: int) -> GroupWord:
    return u_word(3, n)


def _ac(e: int) -> GroupWord:
    """A^e C"""
    return GroupWord.of(('A', e), ('C', 1))


class IdentityCase(NamedTuple):
    """
    恒等式の1つの場合

    Attributes:
        ident (str): 恒等式の名前
        params (dict): パラメータ
        lhs, rhs (GroupWord): 両辺の語
        n, m (int): 三角群の符号（W の2つの形以外は m = 3）
    """

    ident: str
    params: dict
    lhs: GroupWord
    rhs: GroupWord
    n: int
    m: int = 3

    def holds(self) -> bool:
        return proj_eq(eval_word(self.lhs, self.m, self.n), eval_word(self.rhs, self.m, self.n))

    def describe(self) -> str:
        return ' '.join(f'{k}={v}' for k, v in self.params.items())


#
# W と U
#

def verify_W_forms(m: int, n: int) -> bool:
    """W の長い形と短い形が一致する"""
    if not 3 <= m <= n:
        raise WordError(f'verify_W_forms needs 3 <= m <= n: m={m} n={n}')
    long_form, short_form = w_words(m, n)
    return proj_eq(eval_word(long_form, m, n), eval_word(short_form, m, n))


#
# 小さいαの領域
#

def _short_right_case(u: int, k: int, a: int, n: int) -> IdentityCase:
    """A^u C (A^k C)^a = A^{u-1} C (A^-1C)^{n-2} [W^{k-1} A^-2C (A^-1C)^{n-3}]^{a-1} W^k A^-1"""
    W = _w(n)
    lhs = _ac(u) * (_ac(k) ** a)
    block = (W ** (k - 1)) * _ac(-2) * (_ac(-1) ** (n - 3))
    rhs = _ac(u - 1) * (_ac(-1) ** (n - 2)) * (block ** (a - 1)) * (W ** k) * _g('A^-1')
    return IdentityCase('short_right', {'u': u, 'k': k, 'a': a}, lhs, rhs, n)


def verify_short_right(u: int, k: int, a: int, n: int) -> bool:
    if k < 1 or a < 1:
        raise WordError(f'k and a must be positive: k={k} a={a}')
    return _short_right_case(u, k, a, n).holds()


def _w_middle_case(k: int, n: int) -> IdentityCase:
    """W A^-1 A^k C A^-1 C = A^-2 C (A^-1C)^{n-3} W^k A^-2 C"""
    W = _w(n)
    lhs = W * _g('A^-1') * _ac(k) * _ac(-1)
    rhs = _ac(-2) * (_ac(-1) ** (n - 3)) * (W ** k) * _ac(-2)
    return IdentityCase('w_middle', {'k': k}, lhs, rhs, n)


def verify_w_middle(k: int, n: int) -> bool:
    if k < 1:
        raise WordError(f'k must be positive: {k}')
    return _w_middle_case(k, n).holds()


def _check_vectors(a_vec, b_vec) -> None:
    if not a_vec or len(a_vec) != len(b_vec) + 1:
        raise WordError(f'need |a| = |b| + 1 >= 1: a={a_vec} b={b_vec}')
    if any(x < 1 for x in list(a_vec) + list(b_vec)):
        raise WordError(f'exponents must be positive: a={a_vec} b={b_vec}')


def _long_small_case(u: int, k: int, a_vec, b_vec, n: int) -> IdentityCase:
    """
    A^u C (A^kC)^{a_s} (A^{k+1}C)^{b_{s-1}} ... (A^kC)^{a_1}
      = A^{u-1} C A^-1 C Q_{k-1}^{a_s} Q_k^{b_{s-1}} ... Q_k^{b_1} Q_{k-1}^{a_1-1} (A^-1C)^{n-3} W^k A^-1

    Q_j = (A^-1C)^{n-3} W^j A^-2 C。a_vec, b_vec は (a_1, ..., a_s), (b_1, ..., b_{s-1})。
    """
    _check_vectors(a_vec, b_vec)
    W = _w(n)
    s = len(a_vec)

    def q_block(j: int) -> GroupWord:
        return (_ac(-1) ** (n - 3)) * (W ** j) * _ac(-2)

    lhs = _ac(u)
    rhs = _ac(u - 1) * _ac(-1)
    for idx in range(s, 0, -1):
        a = a_vec[idx - 1]
        lhs = lhs * (_ac(k) ** a)
        rhs = rhs * (q_block(k - 1) ** (a if idx > 1 else a - 1))
        if idx > 1:
            b = b_vec[idx - 2]
            lhs = lhs * (_ac(k + 1) ** b)
            rhs = rhs * (q_block(k) ** b)
    rhs = rhs * (_ac(-1) ** (n - 3)) * (W ** k) * _g('A^-1')
    params = {'u': u, 'k': k, 'a': list(a_vec), 'b': list(b_vec)}
    return IdentityCase('long_small', params, lhs, rhs, n)


def verify_long_small(u: int, k: int, a_vec, b_vec, n: int) -> bool:
    return _long_small_case(u, k, tuple(a_vec), tuple(b_vec), n).holds()


#
# 大きいαの領域
#

def _t_block(k: int, e: int, n: int) -> GroupWord:
    """[(AC^2)^{n-3} U^{k-2} A C]^e"""
    ac2 = GroupWord.of(('A', 1), ('C', 2))
    return ((ac2 ** (n - 3)) * (_u(n) ** (k - 2)) * _ac(1)) ** e


def _s_block(k: int, b: int, n: int) -> GroupWord:
    """[(AC^2)^{n-3} U^{k-1} A C]^{b-1} (AC^2)^{n-3} A C A C^2"""
    ac2 = GroupWord.of(('A', 1), ('C', 2))
    head = ((ac2 ** (n - 3)) * (_u(n) ** (k - 1)) * _ac(1)) ** (b - 1)
    return head * (ac2 ** (n - 3)) * _ac(1) * ac2


def _one_step_case(k: int, a: int, n: int) -> IdentityCase:
    """C A^-1 C (A^-k C)^a A^-1 = [(AC^2)^{n-3} U^{k-2} AC]^{a-1} (AC^2)^{n-3} U^{k-1}"""
    ac2 = GroupWord.of(('A', 1), ('C', 2))
    lhs = _g('C A^-1 C') * (_ac(-k) ** a) * _g('A^-1')
    rhs = _t_block(k, a - 1, n) * (ac2 ** (n - 3)) * (_u(n) ** (k - 1))
    return IdentityCase('one_step', {'k': k, 'a': a}, lhs, rhs, n)


def verify_one_step(k: int, a: int, n: int) -> bool:
    if k < 1 or a < 1:
        raise WordError(f'k and a must be positive: k={k} a={a}')
    return _one_step_case(k, a, n).holds()


def _long_large_case(k: int, a_vec, b_vec, n: int) -> IdentityCase:
    """
    C A^-1 C (A^-kC)^{a_s} (A^-(k+1)C)^{b_{s-1}} ... (A^-kC)^{a_1} A^-1
      = T^{a_s} S_{b_{s-1}} T^{1+a_{s-1}} ... T^{1+a_2} S_{b_1} T^{a_1} (AC^2)^{n-3} U^{k-1}

    s = 1 では一段の恒等式に一致する。
    """
    _check_vectors(a_vec, b_vec)
    s = len(a_vec)
    if s == 1:
        case = _one_step_case(k, a_vec[0], n)
        return case._replace(ident='long_large', params={'k': k, 'a': list(a_vec), 'b': []})

    ac2 = GroupWord.of(('A', 1), ('C', 2))
    lhs = _g('C A^-1 C')
    rhs = GroupWord()
    for idx in range(s, 0, -1):
        a = a_vec[idx - 1]
        lhs = lhs * (_ac(-k) ** a)
        exponent = a if idx in (s, 1) else a + 1
        rhs = rhs * _t_block(k, exponent, n)
        if idx > 1:
            b = b_vec[idx - 2]
            lhs = lhs * (_ac(-(k + 1)) ** b)
            rhs = rhs * _s_block(k, b, n)
    lhs = lhs * _g('A^-1')
    rhs = rhs * (ac2 ** (n - 3)) * (_u(n) ** (k - 1))
    return IdentityCase('long_large', {'k': k, 'a': list(a_vec), 'b': list(b_vec)}, lhs, rhs, n)


def verify_long_large(k: int, a_vec, b_vec, n: int) -> bool:
    return _long_large_case(k, tuple(a_vec), tuple(b_vec), n).holds()


#
# 左右の行列の関係
#

def verify_left_right_small(k: int, v, n: int) -> bool:
    """L_{k,v} = C^-1 A C R_{k,v}"""
    A, _, C = generators(3, n)
    return proj_eq(left_matrix(k, v, n), C.inverse() * A * C * right_matrix(k, v, n))


def verify_left_right_large(k: int, v, n: int) -> bool:
    """L_{-k,v} = C^-1 A C^2 R_{-k,v}（k は正で渡す）"""
    A, _, C = generators(3, n)
    return proj_eq(left_matrix(-k, v, n), C.inverse() * A * (C ** 2) * right_matrix(-k, v, n))


#
# 格子
#

def _vectors(length: int, entry_max: int):
    return product(range(1, entry_max + 1), repeat=length)


def identity_cases(grid: dict) -> list:
    """
    格子から恒等式の場合を作る

    Args:
        grid (dict): n_max, k_max, vec_len, entry_max, u_values を持つ辞書（grids.yaml の identities）

    Returns:
        list: IdentityCase のリスト
    """
    n_max = grid.get('n_max', 8)
    k_max = grid.get('k_max', 5)
    vec_len = grid.get('vec_len', 3)
    entry_max = grid.get('entry_max', 4)
    u_values = grid.get('u_values', [-1, 0, 2])

    cases = []
    for n in range(3, n_max + 1):
        for k in range(1, k_max + 1):
            cases.append(_w_middle_case(k, n))
            for a in range(1, entry_max + 1):
                for u in u_values:
                    cases.append(_short_right_case(u, k, a, n))
                cases.append(_one_step_case(k, a, n))
            for s in range(1, vec_len + 1):
                for a_vec in _vectors(s, entry_max):
                    for b_vec in _vectors(s - 1, entry_max):
                        cases.append(_long_small_case(u_values[0], k, a_vec, b_vec, n))
                        cases.append(_long_large_case(k, a_vec, b_vec, n))
    logger.info(f'{len(cases)} identity cases')
    return cases


def run_cases(cases) -> list:
    """各場合を評価して {'check', 'ok', 'detail'} の行にする"""
    rows = []
    for case in cases:
        ok = case.holds()
        if not ok:
            logger.error(f'identity failed: {case.ident} n={case.n} {case.describe()}')
        rows.append({'check': f'{case.ident} n={case.n}', 'ok': ok, 'detail': case.describe()})
    return rows


def identity_suite(grid: dict, words_len: int = 5, words_q: int = 3) -> list:
    """
    格子上のすべての恒等式と、W の2つの形、左右の行列の関係を確かめる

    Returns:
        list: {'check', 'ok', 'detail'} の行
    """
    rows = run_cases(identity_cases(grid))
    n_max = grid.get('n_max', 8)
    k_max = grid.get('k_max', 5)

    for n in range(3, n_max + 1):
        for m in range(3, n + 1):
            ok = verify_W_forms(m, n)
            rows.append({'check': f'W forms m={m} n={n}', 'ok': ok, 'detail': ''})

    words = enumerate_tree(ROOT, words_len, words_q)
    for n in range(3, n_max + 1):
        for k in range(1, k_max + 1):
            for v in words:
                rows.append({
                    'check': f'L = C^-1 A C R n={n}', 'ok': verify_left_right_small(k, v, n),
                    'detail': f'k={k} v={v}',
                })
                if k >= 2:
                    rows.append({
                        'check': f'L = C^-1 A C^2 R n={n}', 'ok': verify_left_right_large(k, v, n),
                        'detail': f'k=-{k} v={v}',
                    })
    failed = sum(1 for r in rows if not r['ok'])
    if failed:
        logger.error(f'{failed} identity checks failed')
    return rows


if __name__ == '__main__':

    logging.basicConfig(level=logging.INFO)

    def main():
        grid = {'n_max': 4, 'k_max': 2, 'vec_len': 2, 'entry_max': 2}
        rows = identity_suite(grid, 3, 2)
        print(sum(r['ok'] for r in rows), '/', len(rows))
        return 0

    main()
