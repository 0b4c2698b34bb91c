#!/usr/bin/env python

"""
語の木 𝒱 の組み合わせ論

語 v = c_1 d_1 ... d_{s-1} c_s は c文字を '1'、d文字を '0' の単位に展開した
パターン文字列で保持する。隣り合う同種の文字は自動的に合体するので、
べき乗の規約（c_j + c_1 の合体）はパターンの連結そのものになる。

パターンの辞書式順序は簡略桁の順序（k+1 ≺ k、すなわち d ≺ c）と一致する。

k = -1 の上側の桁 b̄ は ℰ_1 = (1,2)^{-1} を含むので、ブロックを (桁, 指数) の連として並べ、
隣り合う同じ桁の指数を足して打ち消す。桁 (1,2) は行列 AC^2 の1文字なので、これは
ブロックを語として掛けて (AC^2)(AC^2)^{-1} を消すのと同じ行列を与える。
負の指数が残れば WordError にする。
"""

import logging
from functools import lru_cache
from itertools import groupby
from typing import NamedTuple

from .errors import WordError

logger = logging.getLogger(__name__)

__all__ = [
    'TreeWord', 'LargeDigits', 'LT', 'EQ', 'GT',
    'prime', 'double_prime', 'theta', 'derived', 'derived_commutes', 'frak_f', 'frak_f_closed',
    'word_order', 'periodic_less', 'upper_digits_small', 'lower_digits_small', 'digits_large',
    'large_blocks', 'small_blocks', 'enumerate_tree', 'tree_path', 'from_path', 'theta_zero_overlap',
    'expand_periodic', 'upper_length', 'lower_length', 'word_suite', 'ROOT',
]

LT, EQ, GT = -1, 0, 1

C_UNIT = '1'
D_UNIT = '0'


def _pattern_of(letters, first_is_c=True) -> str:
    parts = []
    for i, letter in enumerate(letters):
        if letter < 1:
            raise WordError(f'letters must be positive: {letters}')
        is_c = (i % 2 == 0) == first_is_c
        parts.append((C_UNIT if is_c else D_UNIT) * letter)
    return ''.join(parts)


class TreeWord:
    """
    c文字とd文字が交互に並ぶ語

    木の語として列挙されたものは構成経路 path（Θ_q の q の列）を持つ。
    接頭辞や v' のように木に属さない語は path が None。
    """

    __slots__ = ('pattern', 'path')

    def __init__(self, pattern: str, path: tuple = None) -> None:
        if not pattern or set(pattern) - {C_UNIT, D_UNIT}:
            raise WordError(f'bad word pattern: {pattern!r}')
        self.pattern = pattern
        self.path = tuple(path) if path is not None else None

    @classmethod
    def from_letters(cls, letters, path: tuple = None) -> 'TreeWord':
        return cls(_pattern_of(letters), path)

    @classmethod
    def parse(cls, text: str) -> 'TreeWord':
        """'3 1 3' や '313' の形式を読む（1桁の文字だけなら空白は省略できる）"""
        text = text.strip()
        try:
            if ' ' in text or ',' in text:
                letters = [int(x) for x in text.replace(',', ' ').split()]
            else:
                letters = [int(x) for x in text]
        except ValueError:
            raise WordError(f'bad word: {text!r}') from None
        if not letters:
            raise WordError('empty word')
        return cls.from_letters(letters)

    @property
    def letters(self) -> tuple:
        return tuple(len(list(g)) for _, g in groupby(self.pattern))

    @property
    def starts_with_c(self) -> bool:
        return self.pattern[0] == C_UNIT

    @property
    def c_letters(self) -> tuple:
        offset = 0 if self.starts_with_c else 1
        return self.letters[offset::2]

    @property
    def d_letters(self) -> tuple:
        offset = 1 if self.starts_with_c else 0
        return self.letters[offset::2]

    def is_single(self) -> bool:
        return D_UNIT not in self.pattern

    def is_palindrome(self) -> bool:
        return self.pattern == self.pattern[::-1]

    def reverse(self) -> 'TreeWord':
        return TreeWord(self.pattern[::-1])

    def __add__(self, other: 'TreeWord') -> 'TreeWord':
        return TreeWord(self.pattern + other.pattern)

    def __mul__(self, e: int) -> 'TreeWord':
        if e < 1:
            raise WordError(f'power must be positive: {e}')
        return TreeWord(self.pattern * e)

    def __len__(self):
        return len(self.letters)

    @property
    def size(self) -> int:
        """単位の個数 = 上側の簡略桁の長さ"""
        return len(self.pattern)

    def __eq__(self, other):
        if not isinstance(other, TreeWord):
            return NotImplemented
        return self.pattern == other.pattern

    def __hash__(self):
        return hash(self.pattern)

    @property
    def parent(self) -> 'TreeWord':
        path = self._require_path()
        if not path:
            raise WordError('the root has no parent')
        return from_path(path[:-1])

    @property
    def last_q(self) -> int:
        path = self._require_path()
        if not path:
            raise WordError('the root has no construction step')
        return path[-1]

    def _require_path(self) -> tuple:
        if self.path is None:
            path = tree_path(self)
            if path is None:
                raise WordError(f'no construction path known for {self}')
            self.path = path
        return self.path

    @property
    def text(self) -> str:
        return ' '.join(str(x) for x in self.letters)

    def __str__(self):
        letters = self.letters
        if all(x < 10 for x in letters):
            return ''.join(str(x) for x in letters)
        return self.text

    def __repr__(self):
        return f'TreeWord({self.text!r}, path={self.path})'

    def to_json(self) -> dict:
        return {'letters': list(self.letters), 'path': list(self.path) if self.path is not None else None}


ROOT = TreeWord(C_UNIT, ())


#
# v', v'', Θ_q
#

def prime(v: TreeWord) -> TreeWord:
    """
    v'

    c_1 ≠ 1 なら 1 (c_1-1) d_1 c_2 ...、c_1 = 1 なら (d_1+1) c_2 ...。
    どちらも先頭の c単位を d単位に置き換えたものになる（v = 1 なら v' = 1）。
    """
    if not v.starts_with_c:
        raise WordError(f'prime needs a word starting with a c-letter: {v}')
    return TreeWord(D_UNIT + v.pattern[1:])


def double_prime(v: TreeWord) -> TreeWord:
    """v = u v'' となる接尾辞 v''（u は親）"""
    if v.is_single():
        raise WordError(f'double_prime is undefined for a single letter: {v}')
    u = v.parent
    return TreeWord(v.pattern[len(u.pattern):])


def _child_suffix(u: TreeWord) -> str:
    """Θ_q(u) = u (u')^q (u'') の u'' の部分"""
    if u.is_single():
        return D_UNIT + C_UNIT * len(u.pattern)
    return double_prime(u).pattern


def theta(v: TreeWord, q: int) -> TreeWord:
    """
    子 Θ_q(v)

    Θ_{-1}(c) = c+1、Θ_q(1) = 1q1 (q ≥ 1)、Θ_q(c) = c[1(c-1)]^q 1c (c > 1)、
    それ以外は v (v')^q v''。

    Raises:
        WordError: Θ_0(1) や長い語への Θ_{-1} など未定義の場合
    """
    path = v.path + (q,) if v.path is not None else None

    if v.is_single():
        c = len(v.pattern)
        if q == -1:
            return TreeWord(C_UNIT * (c + 1), path)
        if q < -1:
            raise WordError(f'theta_{q} is undefined')
        if c == 1:
            if q == 0:
                raise WordError('theta_0(1) is undefined')
            return TreeWord(C_UNIT + D_UNIT * q + C_UNIT, path)
        return TreeWord(v.pattern + prime(v).pattern * q + _child_suffix(v), path)

    if q < 0:
        raise WordError(f'theta_{q} is undefined for {v}')
    return TreeWord(v.pattern + prime(v).pattern * q + _child_suffix(v), path)


@lru_cache(maxsize=None)
def from_path(path: tuple) -> TreeWord:
    """構成経路から語を作る"""
    v = ROOT
    for q in path:
        v = theta(v, q)
    return v


#
# 語の順序
#

def expand_periodic(pre: str, per: str, length: int) -> str:
    """pre per per ... の先頭 length 単位"""
    if not per:
        raise WordError('empty period')
    out = pre
    if len(out) < length:
        reps = (length - len(out)) // len(per) + 1
        out = out + per * reps
    return out[:length]


def _pattern(x) -> str:
    if isinstance(x, TreeWord):
        return x.pattern
    if isinstance(x, str):
        return x
    raise WordError(f'not a word: {x!r}')


def word_order(x: tuple, y: tuple) -> int:
    """
    前周期と周期の組 (pre, per) で与えた無限語を比較する

    簡略桁 {k, k+1} に展開して k+1 ≺ k で辞書式に比べるのと同じ。

    Returns:
        int: LT, EQ, GT のいずれか
    """
    pre_x, per_x = (_pattern(z) if z else '' for z in x)
    pre_y, per_y = (_pattern(z) if z else '' for z in y)
    length = max(len(pre_x), len(pre_y)) + len(per_x) + len(per_y)
    a = expand_periodic(pre_x, per_x, length)
    b = expand_periodic(pre_y, per_y, length)
    return (a > b) - (a < b)


def periodic_less(x, y) -> bool:
    """x^∞ ≺ y^∞"""
    return word_order(('', x), ('', y)) == LT


#
# 𝔣
#

def frak_f(v: TreeWord) -> TreeWord:
    """
    最長の全分岐接頭辞 𝔣(v)

    文字の区切りで切った接頭辞 p のうち p^∞ が最小になるものの中で最長のもの。
    """
    best = None
    offset = 0
    for letter in v.letters:
        offset += letter
        candidate = v.pattern[:offset]
        if best is None or word_order(('', candidate), ('', best)) <= EQ:
            best = candidate
    return TreeWord(best)


def frak_f_closed(v: TreeWord) -> TreeWord:
    """
    𝔣(v) を構成経路から閉じた形で求める（frak_f の検算用）

    v = Θ_0^h(x) と書いて
      h = 0, x = Θ_p(u), p ≥ 1 なら 𝔣 = reverse((Θ_{p-1}(u))')（ただし 𝔣(111) = 11）
      h ≥ 1, x = c なら 𝔣 = (c 1)^h
      h ≥ 1, x = u a u なら 𝔣 = (u a)^{h+1}
    """
    if v.is_single():
        return TreeWord(v.pattern)

    path = v._require_path()
    h = 0
    while h < len(path) and path[-1 - h] == 0:
        h += 1
    x = from_path(path[:len(path) - h])

    if h == 0:
        if v.pattern == '101':
            return TreeWord('10')
        u = x.parent
        return prime(theta(u, x.last_q - 1)).reverse()

    if x.is_single():
        return TreeWord((x.pattern + D_UNIT) * h)

    u = x.parent
    suffix = x.pattern[len(u.pattern):]
    a = suffix[:len(suffix) - len(u.pattern)]
    return TreeWord((u.pattern + a) * (h + 1))


#
# 派生語 𝒟
#

def derived(v: TreeWord) -> TreeWord:
    """
    派生語 𝒟(v)

    c_1 > 1 のときは d文字がすべて1で c文字が {c_1, c_1-1} にあり、c文字の列の連長を並べる。
    c_1 = 1 のときは c文字がすべて1で d文字が {d_1, d_1+1} にあり、d文字の列の連長を並べる。

    Raises:
        WordError: アルファベットが2文字に収まらない、ブロックの形が合わない場合
    """
    if not v.starts_with_c:
        raise WordError(f'derived needs a word starting with a c-letter: {v}')
    cs, ds = v.c_letters, v.d_letters
    if len(cs) != len(ds) + 1:
        raise WordError(f'derived needs a word ending with a c-letter: {v}')

    c1 = cs[0]
    if c1 > 1:
        if any(d != 1 for d in ds) or any(c not in (c1, c1 - 1) for c in cs):
            raise WordError(f'alphabet violation in {v}')
        a, seq = c1, cs
    else:
        if not ds:
            raise WordError('derived(1) is undefined')
        d1 = ds[0]
        if any(c != 1 for c in cs) or any(d not in (d1, d1 + 1) for d in ds):
            raise WordError(f'alphabet violation in {v}')
        a, seq = d1, ds

    runs = [(key, len(list(g))) for key, g in groupby(seq)]
    if runs[0][0] != a or runs[-1][0] != a:
        raise WordError(f'blocks of {v} do not start and end with {a}')
    return TreeWord.from_letters([r for _, r in runs])


def derived_commutes(v: TreeWord) -> bool:
    """
    𝒟(Θ_q(u)) = Θ_{q'}(𝒟(u)) を確かめる（v = Θ_q(u), q ≥ 0）

    q' は q = 0 かつ 𝒟(u) が1文字のとき -1、それ以外は q。
    𝒟(u) が定義されない u = 1 の子は対象外で True を返す。
    """
    q = v.last_q
    u = v.parent
    if q < 0 or u.pattern == C_UNIT:
        return True
    try:
        du = derived(u)
        du_path = tree_path(du)
        if du_path is None:
            return False
        du = TreeWord(du.pattern, du_path)
        q2 = -1 if q == 0 and du.is_single() else q
        return derived(v) == theta(du, q2)
    except WordError as e:
        logger.error(e)
        return False


def theta_zero_overlap(v: TreeWord) -> bool:
    """
    v = Θ_0(u) で u が接頭辞かつ接尾辞になり、重なりがちょうど祖父 Z であることを確かめる

    u 自身が Θ_q (q ≥ 0) で作られた場合だけを対象にする。
    """
    if v.last_q != 0:
        raise WordError(f'{v} is not a theta_0 child')
    u = v.parent
    if not u.path or u.last_q < 0:
        return True
    z = u.parent
    n, m = len(v.pattern), len(u.pattern)
    if not (v.pattern.startswith(u.pattern) and v.pattern.endswith(u.pattern)):
        return False
    if 2 * m - n != len(z.pattern):
        return False
    return v.pattern[n - m:m] == z.pattern


#
# 桁の列
#

def upper_digits_small(k: int, v) -> list:
    """d̄(k,v) = k^{c_1}, (k+1)^{d_1}, ..."""
    if k < 1:
        raise WordError(f'k must be positive: {k}')
    return [k if ch == C_UNIT else k + 1 for ch in _pattern(v)]


def upper_length(v) -> int:
    """S̄(v)"""
    return len(_pattern(v))


def small_blocks(k: int, n: int) -> dict:
    """小さいαの左側の桁のブロック w, 𝒞_k, 𝒟_k"""
    w = [-1] * (n - 2) + [-2] + [-1] * (n - 3) + [-2]
    head = [-1] * (n - 3) + [-2]
    return {'w': w, 'C': head + w * (k - 1), 'D': head + w * k}


def lower_digits_small(k: int, v, n: int) -> list:
    """
    d̲(k,v) = w^k, 𝒞^{c_1-1} 𝒟^{d_1} ... 𝒞^{c_s}, (-1)^{n-2}

    接頭辞や無限語の先頭にも使えるよう、先頭のc単位を除いた各単位を
    c単位なら 𝒞、d単位なら 𝒟 に置き換える。
    """
    if k < 1:
        raise WordError(f'k must be positive: {k}')
    pattern = _pattern(v)
    if pattern[0] != C_UNIT:
        raise WordError(f'lower digits need a word starting with a c-letter: {pattern}')
    blocks = small_blocks(k, n)
    out = list(blocks['w'] * k)
    for ch in pattern[1:]:
        out.extend(blocks['C'] if ch == C_UNIT else blocks['D'])
    out.extend([-1] * (n - 2))
    return out


def lower_length(k: int, v, n: int) -> int:
    """S̲(k,v) を列そのものから求める"""
    return len(lower_digits_small(k, v, n))


class LargeDigits(NamedTuple):
    lower: list
    upper: list


def _runs(digits) -> list:
    return [(d, len(list(g))) for d, g in groupby(digits)]


def _reduce_runs(runs) -> list:
    """隣り合う同じ桁の指数を足し合わせ、0になったものを消す"""
    stack = []
    for digit, exp in runs:
        if exp == 0:
            continue
        if stack and stack[-1][0] == digit:
            total = stack[-1][1] + exp
            stack.pop()
            if total:
                stack.append((digit, total))
        else:
            stack.append((digit, exp))
    return stack


def large_blocks(K: int, n: int) -> dict:
    """
    大きいαの上側の桁のブロック ℰ_K, ℱ_K, 𝒢 を指数付きの連の列で返す

    K = 1 では ℰ_1 = (1,2)^{-1} となる。
    """
    if K < 1:
        raise WordError(f'K must be positive: {K}')
    one_one, one_two = (1, 1), (1, 2)
    u = [(one_two, n - 2), (one_one, 1)]
    G = [(one_two, 1), (one_one, 1), (one_two, n - 3)]
    F = [(one_one, 1)] + u * (K - 1) + [(one_two, n - 3)]
    if K == 1:
        E = [(one_two, -1)]
    else:
        E = [(one_one, 1)] + u * (K - 2) + [(one_two, n - 3)]
    return {'E': _reduce_runs(E), 'F': _reduce_runs(F), 'G': _reduce_runs(G), 'u': u}


def _expand_runs(runs) -> list:
    out = []
    for digit, exp in runs:
        if exp < 0:
            raise WordError(f'net negative exponent {exp} for digit {digit}')
        out.extend([digit] * exp)
    return out


def digits_large(k: int, v, n: int) -> LargeDigits:
    """
    k ≤ -1 の下側の簡略桁 d̲(k,v) と上側の桁 b̄(k,v)

    d̲(-K,v) = (-K)^{c_1}, (-K-1)^{d_1}, ...
    b̄(-K,v) = (1,2)^{n-2} ℰ^{c_1} ℱ^{d_1} ... ℰ^{c_s}

    K = 1 では連の指数を足し合わせて打ち消し、負の指数が残れば WordError。
    """
    if k > -1:
        raise WordError(f'k must be negative: {k}')
    K = -k
    pattern = _pattern(v)
    lower = [-K if ch == C_UNIT else -K - 1 for ch in pattern]

    blocks = large_blocks(K, n)
    runs = [((1, 2), n - 2)]
    for ch in pattern:
        runs.extend(blocks['E'] if ch == C_UNIT else blocks['F'])
    upper = _expand_runs(_reduce_runs(runs))
    return LargeDigits(lower, upper)


#
# 列挙と経路探索
#

def _children(v: TreeWord, q_cap: int):
    if v.is_single():
        start = -1
    else:
        start = 0
    for q in range(start, q_cap + 1):
        if v.pattern == C_UNIT and q == 0:
            continue
        yield theta(v, q)


def enumerate_tree(root: TreeWord = None, max_len: int = 7, q_cap: int = 5, trimmed_n: int = None) -> list:
    """
    木 𝒱 の語を列挙する

    文字数 max_len 以下、構成に使う q が q_cap 以下のものを (文字数, 経路) の順で返す。
    Θ_{-1} の鎖は1文字の語 c ≤ q_cap + 1 までに制限する。
    trimmed_n を与えると刈り込んだ木（c_i ≤ n-2、n-2 で始まるのは n-2 だけ）を返す。

    Args:
        root (TreeWord, optional): 根（経路付き）。省略時は 1
        max_len (int): 文字数の上限
        q_cap (int): 構成の指数の上限
        trimmed_n (int, optional): 刈り込みの n

    Returns:
        list: TreeWord のリスト
    """
    if max_len < 1 or q_cap < 1:
        raise WordError(f'caps must be positive: max_len={max_len}, q_cap={q_cap}')
    root = ROOT if root is None else root
    if root.path is None:
        root = TreeWord(root.pattern, root._require_path())

    def allowed(v: TreeWord) -> bool:
        if len(v) > max_len:
            return False
        if v.is_single() and len(v.pattern) > q_cap + 1:
            return False
        if trimmed_n is not None and max(v.c_letters) > trimmed_n - 2:
            return False
        return True

    found = []
    seen = set()
    stack = [root] if allowed(root) else []
    while stack:
        v = stack.pop()
        if v.pattern in seen:
            logger.error(f'duplicate word in enumeration: {v}')
            continue
        seen.add(v.pattern)
        found.append(v)
        if trimmed_n is not None and v.c_letters[0] == trimmed_n - 2:
            continue
        for child in _children(v, q_cap):
            if allowed(child):
                stack.append(child)

    found.sort(key=lambda w: (len(w), w.path))
    logger.debug(f'enumerated {len(found)} words (max_len={max_len}, q_cap={q_cap}, trimmed_n={trimmed_n})')
    return found


def tree_path(v, q_cap: int = 12):
    """
    語の構成経路を探す

    v = Θ_q(u) となる u は v の奇数文字の接頭辞なので、それを再帰的にたどる。
    q_cap までに見つからなければ None。
    """
    pattern = _pattern(v)
    return _tree_path(pattern, q_cap)


@lru_cache(maxsize=4096)
def _tree_path(pattern: str, q_cap: int):
    if pattern == C_UNIT:
        return ()
    if D_UNIT not in pattern:
        return (-1,) * (len(pattern) - 1)
    if pattern[0] != C_UNIT or pattern[-1] != C_UNIT:
        return None

    offset = 0
    letters = [len(list(g)) for _, g in groupby(pattern)]
    for i, letter in enumerate(letters[:-1]):
        offset += letter
        if i % 2 == 1:
            continue
        prefix = pattern[:offset]
        sub = _tree_path(prefix, q_cap)
        if sub is None:
            continue
        u = TreeWord(prefix, sub)
        for q in range(0, q_cap + 1):
            try:
                child = theta(u, q)
            except WordError:
                continue
            if len(child.pattern) > len(pattern):
                break
            if child.pattern == pattern:
                return sub + (q,)
    return None


#
# 性質の検査
#

def _row(check: str, ok: bool, detail: str = '') -> dict:
    if not ok:
        logger.error(f'check failed: {check} {detail}')
    return {'check': check, 'ok': bool(ok), 'detail': detail}


def _word_rows(v: TreeWord) -> list:
    rows = []
    name = str(v)
    rows.append(_row('palindrome', v.is_palindrome(), name))

    f = frak_f(v)
    if len(v) > 1:
        rows.append(_row('f(v) has even length', len(f) % 2 == 0, f'{name} f={f}'))
    rows.append(_row('v is a prefix of f(v)^2', (f.pattern * 2).startswith(v.pattern), f'{name} f={f}'))
    rows.append(_row('closed form of f', frak_f_closed(v) == f, f'{name} f={f}'))
    if v.pattern != C_UNIT:
        rows.append(_row("v (v')^inf < f(v)^inf",
                         word_order((v, prime(v)), ('', f)) == LT, name))

    if not v.path:
        return rows

    q = v.last_q
    u = v.parent
    if not v.is_single():
        rows.append(_row("v' < v''", word_order(('', prime(v)), ('', double_prime(v))) == LT, name))
        rows.append(_row('D commutes with theta', derived_commutes(v), name))
    if q >= 1 and not v.is_single():
        middle = v.pattern[len(u.pattern):len(v.pattern) - len(u.pattern)]
        ok = (v.pattern.startswith(u.pattern) and v.pattern.endswith(u.pattern)
              and middle == middle[::-1])
        rows.append(_row('v = u x u with x a palindrome', ok, name))
        y = prime(v).pattern[:len(v.pattern) - len(u.pattern)]
        ok = prime(v).pattern.endswith(u.pattern) and y == y[::-1]
        rows.append(_row("v' = y u with y a palindrome", ok, name))
        rows.append(_row("v' v'' = y v", prime(v).pattern + double_prime(v).pattern == y + v.pattern, name))
    if q >= 1 and not (u.pattern == C_UNIT and q == 1):
        ok = f == prime(theta(u, q - 1)).reverse()
        rows.append(_row("f(theta_q(u)) = reverse(theta_(q-1)(u)')", ok, name))
    if q == 0:
        rows.append(_row('theta_0 overlap is the grandparent', theta_zero_overlap(v), name))
    return rows


def word_suite(max_len: int = 7, q_cap: int = 5) -> list:
    """
    木の語の性質をまとめて確かめる

    回文、v' ≺ v''、𝔣 の閉じた形と直接の走査の一致、𝒟 と Θ の可換性、
    𝔣(Θ_q(u)) と (Θ_{q-1}(u))' の反転の一致など。
    例の 𝔣(111) = 11、𝔣(Θ_1(313)) = 313121 も含める。

    Returns:
        list: {'check', 'ok', 'detail'} の行
    """
    rows = [
        _row('f(111) = 11', frak_f(TreeWord.parse('111')) == TreeWord.parse('11')),
        _row('f(theta_1(313)) = 313121',
             frak_f(theta(TreeWord.parse('313'), 1)) == TreeWord.parse('313121')),
    ]
    for v in enumerate_tree(ROOT, max_len, q_cap):
        try:
            rows.extend(_word_rows(v))
        except WordError as e:
            rows.append(_row('word property evaluation', False, f'{v}: {e}'))
    return rows
