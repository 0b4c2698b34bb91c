#!/usr/bin/env python

"""
区間写像 T_{m,n,α} の力学

𝕀_α = [(α-1)t, αt) 上で、x に対し C^l·x ∉ 𝕀_α となる最小の l と
A^k C^l·x ∈ 𝕀_α となる k を求め、桁 (k,l) と像を返す。
写像は閉区間 [(α-1)t, αt] 上で定義され、値は半開区間に入る。

比較はすべて厳密に行う（algebra.compare）。
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .algebra import FieldElement, RealAlgebraic, compare, floor_of, quad_solve_between, triangle_constants
from .errors import DynamicsError, FieldError
from .moebius import INFINITY, GroupWord, ProjMatrix, apply, eval_word, generators, proj_eq

logger = logging.getLogger(__name__)

__all__ = [
    'AlphaParam', 'Digit', 'OrbitStep', 'OrbitRecord', 'Alphabet', 'Cylinder', 'RegimeConstants',
    'CfReconstruction', 'step', 'orbit', 'endpoint_digits', 'digit_key', 'digit_lt', 'seq_compare',
    'alphabet', 'admissible', 'cylinder', 'cf_reconstruct', 'r0_quadratic', 'regime_constants',
    'w_words', 'u_word', 'alpha0_period_digits', 'alpha0_order_chain', 'alpha0_suite', 'alpha1_suite',
]


def _as_field_value(value, tc):
    """int, Fraction, 'p/q' を基礎体の元にする（体の元はそのまま）"""
    if isinstance(value, (FieldElement, RealAlgebraic)):
        if value.field is not tc.field:
            raise FieldError(f'field mismatch: {value.field} vs {tc.field}')
        return value
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except ValueError:
            raise DynamicsError(f'bad alpha: {value!r}') from None
    return tc.field.scalar(Fraction(value))


class AlphaParam:
    """
    パラメータ α と区間 𝕀_α

    Attributes:
        value: α（FieldElement または RealAlgebraic）
        m, n (int): 三角群の符号
        t: μ + ν
        l0: 左端 ℓ_0 = (α-1)t
        r0: 右端 r_0 = αt
    """

    def __init__(self, value, m: int = 3, n: int = 3) -> None:
        tc = triangle_constants(m, n)
        value = _as_field_value(value, tc)
        if compare(value, 0) < 0 or compare(value, 1) > 0:
            raise DynamicsError(f'alpha must be in [0, 1]: {value}')
        self.m = m
        self.n = n
        self.tc = tc
        self.value = value
        self.t = tc.t
        self.r0 = value * tc.t
        self.l0 = self.r0 - tc.t

    @classmethod
    def from_r0(cls, x, m: int = 3, n: int = 3) -> 'AlphaParam':
        """r_0 = αt の値から α を作る"""
        tc = triangle_constants(m, n)
        return cls(_as_field_value(x, tc) / tc.t, m, n)

    def contains(self, y) -> bool:
        """y ∈ [ℓ_0, r_0)"""
        if y is INFINITY:
            return False
        return compare(self.l0, y) <= 0 and compare(y, self.r0) < 0

    def in_closed(self, y) -> bool:
        """y ∈ [ℓ_0, r_0]"""
        if y is INFINITY:
            return False
        return compare(self.l0, y) <= 0 and compare(y, self.r0) <= 0

    @property
    def frak_b(self):
        """𝔟 = C^-1·ℓ_0"""
        _, _, C = generators(self.m, self.n)
        return apply(C.inverse(), self.l0)

    def decimal(self, digits: int = 20) -> str:
        return self.value.decimal(digits)

    def __repr__(self):
        return f'AlphaParam({self.value.decimal(12)}, m={self.m}, n={self.n})'


class Digit(NamedTuple):
    k: int
    l: int

    def __str__(self):
        return f'({self.k},{self.l})'


def _as_digit(d) -> Digit:
    if isinstance(d, Digit):
        return d
    if isinstance(d, tuple):
        return Digit(*d)
    return Digit(d, 1)


#
# 1ステップ
#

def _exponent_l(x, alpha: AlphaParam):
    """C^l·x ∉ 𝕀 となる最小の l と C^l·x を返す（極に当たれば None）"""
    _, _, C = generators(alpha.m, alpha.n)
    y = x
    for l in range(1, alpha.m):
        y = apply(C, y)
        if y is INFINITY:
            return None
        if not alpha.contains(y):
            return l, y
    raise DynamicsError(f'no exponent l <= {alpha.m - 1} leaves the interval at x={x}')


def _is_pole(x, alpha: AlphaParam) -> bool:
    return _exponent_l(x, alpha) is None


def step(x, alpha: AlphaParam) -> tuple:
    """
    T_α を1回適用する

    Args:
        x: 閉区間 [ℓ_0, r_0] の点
        alpha (AlphaParam): パラメータ

    Returns:
        tuple: (Digit, 像)

    Raises:
        DynamicsError: x が区間外、極に当たった、l が m-1 を超えた場合
    """
    if not alpha.in_closed(x):
        raise DynamicsError(f'point outside the closed interval: {x}')
    found = _exponent_l(x, alpha)
    if found is None:
        raise DynamicsError(f'pole hit at x={x.decimal(12)}')
    l, y = found
    k = -floor_of(y / alpha.t + 1 - alpha.value)
    image = y + k * alpha.t
    if not alpha.contains(image):
        raise DynamicsError(f'image outside the interval: {image}')
    return Digit(k, l), image


class OrbitStep(NamedTuple):
    index: int
    digit: Digit
    point: object


@dataclass
class OrbitRecord:
    """
    点の T_α 軌道

    hit_pole は軌道が極（T が定義されない点、0 など）に達して止まったこと、
    returned_to_l0 は ℓ_0 にちょうど戻って止まったことを表す。
    """

    alpha: AlphaParam
    start: object
    steps: list = field(default_factory=list)
    hit_pole: bool = False
    returned_to_l0: bool = False

    @property
    def points(self) -> list:
        return [self.start] + [s.point for s in self.steps]

    @property
    def digits(self) -> list:
        return [s.digit for s in self.steps]

    def __len__(self):
        return len(self.steps)


def orbit(x, alpha: AlphaParam, N: int, stop_at_l0: bool = True) -> OrbitRecord:
    """
    x から T_α を最大 N 回適用した軌道

    極に達したとき、または stop_at_l0 で ℓ_0 に戻ったときは早めに止める。
    """
    record = OrbitRecord(alpha, x)
    point = x
    for i in range(1, N + 1):
        if _is_pole(point, alpha):
            record.hit_pole = True
            break
        digit, point = step(point, alpha)
        record.steps.append(OrbitStep(i, digit, point))
        if compare(point, alpha.l0) == 0:
            record.returned_to_l0 = True
            if stop_at_l0:
                break
    logger.debug(f'orbit of length {len(record)} at {alpha}')
    return record


def endpoint_digits(alpha: AlphaParam, which: str, N: int) -> list:
    """端点 'l0' または 'r0' の桁の列の先頭 N 個（極で止まれば短くなる）"""
    start = {'l0': alpha.l0, 'r0': alpha.r0}[which]
    return orbit(start, alpha, N, stop_at_l0=False).digits


#
# 順序
#

def digit_key(d) -> tuple:
    """
    全順序のキー

    l の小さいものが先。同じ l の中では負の桁が正の桁より先で、
    負の桁は (-1,l) ≺ (-2,l) ≺ ...、正の桁は ... ≺ (2,l) ≺ (1,l)。
    """
    k, l = _as_digit(d)
    if k < 0:
        return (l, 0, -k)
    return (l, 1, -k)


def digit_lt(d1, d2) -> bool:
    return digit_key(d1) < digit_key(d2)


def seq_compare(a, b) -> int:
    """桁の列を辞書式に比べる（一方が他方の接頭辞なら 0）"""
    for x, y in zip(a, b):
        kx, ky = digit_key(x), digit_key(y)
        if kx != ky:
            return -1 if kx < ky else 1
    return 0


#
# アルファベットと許容性
#

class Alphabet(NamedTuple):
    """
    α-アルファベット

    無限集合なので、ℓ_0 の桁 left と r_0 の桁 right だけを持ち、所属は規則で判定する。
    """

    left: Digit
    right: Digit

    def __contains__(self, d) -> bool:
        k, l = _as_digit(d)
        kl = self.left.k
        kr, lr = self.right
        if k == 0 or l < 1:
            return False
        if l == lr:
            if kr > 0 and k >= kr:
                return True
            if kr < 0 and kr <= k < 0:
                return True
        if l <= lr and k <= kl:
            return True
        if l < lr and k > 0:
            return True
        return False

    def describe(self) -> str:
        kl = self.left.k
        kr, lr = self.right
        parts = [f'(k,{lr}) for k from {kr} toward {"+inf" if kr > 0 else "-1"}',
                 f'(k,l) for k <= {kl}, 1 <= l <= {lr}']
        if lr > 1:
            parts.append(f'(k,l) for k >= 1, 1 <= l < {lr}')
        return '; '.join(parts)


def alphabet(alpha: AlphaParam) -> Alphabet:
    """ℓ_0 と r_0 の最初の桁から α-アルファベットを決める"""
    if compare(alpha.value, 0) <= 0 or compare(alpha.value, 1) >= 0:
        raise DynamicsError(f'alphabet needs 0 < alpha < 1: {alpha}')
    left, _ = step(alpha.l0, alpha)
    right, _ = step(alpha.r0, alpha)
    return Alphabet(left, right)


def admissible(word, alpha: AlphaParam) -> bool:
    """
    桁の列が α で許容されるか

    すべての文字がアルファベットに属し、各接尾辞が
    d̲^α の同じ長さの接頭辞と d̄^α の同じ長さの接頭辞の間にあること。
    """
    word = [_as_digit(d) for d in word]
    letters = alphabet(alpha)
    bad = [d for d in word if d not in letters]
    if bad:
        logger.debug(f'letters outside the alphabet: {bad}')
        return False

    u = len(word)
    lower = endpoint_digits(alpha, 'l0', u)
    upper = endpoint_digits(alpha, 'r0', u)
    for j in range(u):
        suffix = word[j:]
        if seq_compare(lower, suffix) > 0 or seq_compare(suffix, upper) > 0:
            return False
    return True


#
# シリンダー
#

@dataclass
class Cylinder:
    digit: Digit
    lo: object
    hi: object
    full: bool
    right_closed: bool = False

    def image(self, alpha: AlphaParam) -> tuple:
        M = _digit_matrix(self.digit, alpha.m, alpha.n)
        return apply(M, self.lo), apply(M, self.hi)


def _digit_matrix(d: Digit, m: int, n: int) -> ProjMatrix:
    return eval_word(GroupWord.of(('A', d.k), ('C', d.l)), m, n)


def cylinder(alpha: AlphaParam, k: int, l: int):
    """
    シリンダー Δ_α(k,l) を [lo, hi) として返す（空なら None）

    A^k C^l による [ℓ_0, r_0) の逆像を 𝕀 で切り取り、
    中点の桁が (k,l) になる部分を選ぶ。切り取られていなければ full。
    hi が r_0 に一致するときは閉区間上の写像として right_closed を立てる。
    """
    d = Digit(k, l)
    inv = _digit_matrix(d, alpha.m, alpha.n).inverse()
    p = apply(inv, alpha.l0)
    q = apply(inv, alpha.r0)

    # 向きを保つので逆像は p から q へ増加する弧（∞ をまたぐこともある）
    if p is INFINITY:
        pieces = [(None, q)]
    elif q is INFINITY:
        pieces = [(p, None)]
    elif compare(p, q) < 0:
        pieces = [(p, q)]
    else:
        pieces = [(p, None), (None, q)]

    for lo, hi in pieces:
        a = alpha.l0 if lo is None or compare(lo, alpha.l0) < 0 else lo
        b = alpha.r0 if hi is None or compare(hi, alpha.r0) > 0 else hi
        if compare(a, b) >= 0:
            continue
        try:
            digit, _ = step((a + b) / 2, alpha)
        except DynamicsError as e:
            logger.debug(e)
            continue
        if digit != d:
            continue
        full = lo is not None and hi is not None and compare(a, lo) == 0 and compare(b, hi) == 0
        return Cylinder(d, a, b, full, compare(b, alpha.r0) == 0)
    return None


#
# 連分数展開の再構成
#

class CfReconstruction(NamedTuple):
    digits: list
    tail: object
    value: object
    ok: bool


def cf_reconstruct(x, alpha: AlphaParam, N: int) -> CfReconstruction:
    """
    最初の N 桁と尾の点から x を組み立て直す

    x = C^{-l_1}(A^{-k_1} C^{-l_2}(A^{-k_2} ... (x_N)))、ここで C^{-1}·y = 1/(μ - y)、
    A^{-k}·y = y - kt なので、部分商が μ の入れ子の分数になる。
    """
    record = orbit(x, alpha, N, stop_at_l0=False)
    mu = alpha.tc.mu
    y = record.points[-1]
    for d in reversed(record.digits):
        y = y - d.k * alpha.t
        for _ in range(d.l):
            if y is INFINITY:
                y = alpha.tc.field.zero()
            else:
                den = mu - y
                y = INFINITY if compare(den, 0) == 0 else 1 / den
    ok = y is not INFINITY and compare(y, x) == 0
    return CfReconstruction(record.digits, record.points[-1], y, ok)


#
# 境界の定数
#

def r0_quadratic(P: ProjMatrix, Q: ProjMatrix, m: int, n: int) -> tuple:
    """
    P·r_0(α) = Q·r_0(α) を α の二次方程式 aα^2 + bα + c = 0 にする

    ℓ_0 = A^-1·r_0 なので ℓ_0 を含む式は Q に A^-1 を掛けて書き直せる。
    """
    t = triangle_constants(m, n).t
    a, b, c, d = P.entries()
    e, f, g, h = Q.entries()
    x2 = a * g - e * c
    x1 = a * h + b * g - e * d - f * c
    x0 = b * h - f * d
    return x2 * t * t, x1 * t, x0


class RegimeConstants(NamedTuple):
    gamma: RealAlgebraic
    epsilon: RealAlgebraic
    delta: RealAlgebraic


def regime_constants(n: int) -> RegimeConstants:
    """
    m = 3 の領域の境界 γ, ε, δ

    γ: C^-1·ℓ_0 = r_0、ε: A^-1C·ℓ_0 = r_0、δ: C^-1·ℓ_0 = A^-1C·ℓ_0 の (0,1) にある根。

    Raises:
        DynamicsError: δ < ε が成り立たない場合
    """
    A, _, C = generators(3, n)
    Ainv, Cinv = A.inverse(), C.inverse()
    ident = ProjMatrix.identity(triangle_constants(3, n).field)

    gamma = quad_solve_between(*r0_quadratic(Cinv * Ainv, ident, 3, n), 0, 1)
    epsilon = quad_solve_between(*r0_quadratic(Ainv * C * Ainv, ident, 3, n), 0, 1)
    delta = quad_solve_between(*r0_quadratic(Cinv * Ainv, Ainv * C * Ainv, 3, n), 0, 1)

    if compare(delta, epsilon) >= 0:
        raise DynamicsError(f'delta >= epsilon for n={n}')
    return RegimeConstants(gamma, epsilon, delta)


#
# α = 0
#

def w_words(m: int, n: int) -> tuple:
    """
    W の長い形と短い形

    長い形: A^-2C (A^-1C)^{n-3} [A^-2C (A^-1C)^{n-2}]^{m-2}
    短い形: A^-1 C^-1 A C A
    """
    a1 = GroupWord.of(('A', -1), ('C', 1))
    a2 = GroupWord.of(('A', -2), ('C', 1))
    block = a2 * (a1 ** (n - 2))
    long_form = a2 * (a1 ** (n - 3)) * (block ** (m - 2))
    short_form = GroupWord.parse('A^-1 C^-1 A C A')
    return long_form, short_form


def alpha0_period_digits(m: int, n: int) -> list:
    """α = 0 での ℓ_0 = -t の周期の簡略桁（W の長い形を右から読んだもの）"""
    block = [-1] * (n - 2) + [-2]
    return block * (m - 2) + [-1] * (n - 3) + [-2]


def alpha0_order_chain(m: int, n: int) -> list:
    """
    α = 0 で ℓ_0 の軌道を実数として小さい順に並べた添字

    行 r = 0..n-2 に ℓ_{r + c(n-1)} を並べ、最後の行だけ列が1つ少ない。
    """
    chain = []
    for r in range(n - 1):
        last = m - 3 if r == n - 2 else m - 2
        chain.extend(r + c * (n - 1) for c in range(last + 1))
    return chain


def _row(check: str, ok: bool, detail: str = '') -> dict:
    if not ok:
        logger.error(f'check failed: {check} {detail}')
    return {'check': check, 'ok': bool(ok), 'detail': detail}


def alpha0_suite(m: int, n: int, k_cap: int = 6) -> list:
    """
    α = 0 の構造を厳密に確かめる

    Returns:
        list: {'check', 'ok', 'detail'} の行
    """
    if not 3 <= m <= n:
        raise DynamicsError(f'alpha0_suite needs 3 <= m <= n: m={m} n={n}')
    rows = []
    tc = triangle_constants(m, n)
    alpha = AlphaParam(0, m, n)
    A, _, C = generators(m, n)
    a1 = A.inverse() * C
    a2 = (A ** -2) * C
    neg_t = -tc.t

    long_form, short_form = w_words(m, n)
    W = eval_word(short_form, m, n)
    rows.append(_row('W long form = short form', proj_eq(eval_word(long_form, m, n), W)))
    rows.append(_row('W fixes -t', compare(apply(W, neg_t), neg_t) == 0))

    below = apply(a1 ** (n - 3), alpha.l0)
    above = apply(a1 ** (n - 2), alpha.l0)
    split = -1 / tc.nu
    rows.append(_row('(A^-1C)^(n-3) l0 < -1/nu < (A^-1C)^(n-2) l0',
                     compare(below, split) < 0 and compare(split, above) < 0))

    block = a2 * (a1 ** (n - 2))
    rows.append(_row('[A^-2C(A^-1C)^(n-2)]^(m-2) l0 = -nu',
                     compare(apply(block ** (m - 2), alpha.l0), -tc.nu) == 0))
    rows.append(_row('A^-2C(A^-1C)^(n-2) (-nu) = inf', apply(block, -tc.nu) is INFINITY))

    period = (m - 1) * (n - 1) - 1
    record = orbit(alpha.l0, alpha, period + 1)
    digits = [d.k for d in record.digits]
    rows.append(_row('period returns to l0',
                     record.returned_to_l0 and len(record) == period,
                     f'length={len(record)} expected={period}'))
    rows.append(_row('period digits = W', digits == alpha0_period_digits(m, n)
                     and all(d.l == 1 for d in record.digits), str(digits)))

    points = record.points[:period]
    chain = alpha0_order_chain(m, n)
    ordered = len(points) == period and all(
        compare(points[a], points[b]) < 0 for a, b in zip(chain, chain[1:]))
    rows.append(_row('real order of the l0 orbit', ordered, ' < '.join(f'l{i}' for i in chain)))

    rightmost = (m - 3) * (n - 1) + n - 2
    rows.append(_row('rightmost orbit element = -1/t',
                     rightmost < len(points) and compare(points[rightmost], -1 / tc.t) == 0,
                     f'l{rightmost}'))

    delta1 = cylinder(alpha, -1, 1)
    ok = (delta1 is not None and not delta1.full
          and compare(delta1.lo, neg_t) == 0 and compare(delta1.hi, split) == 0)
    if ok:
        lo, _ = delta1.image(alpha)
        ok = compare(lo, -tc.nu + 1 / tc.t) == 0
    rows.append(_row('Delta_1 = [-t, -1/nu) with image [-nu + 1/t, 0)', ok))

    for k in range(2, k_cap + 1):
        cyl = cylinder(alpha, -k, 1)
        ok = (cyl is not None and cyl.full
              and compare(cyl.lo, 1 / (tc.mu - (k - 1) * tc.t)) == 0
              and compare(cyl.hi, 1 / (tc.mu - k * tc.t)) == 0)
        rows.append(_row(f'Delta_{k} full', ok))

    return rows


#
# α = 1
#

def u_word(m: int, n: int) -> GroupWord:
    """U = A C^{m-2} (A C^-1)^{n-2}"""
    return GroupWord.of(('A', 1), ('C', m - 2)) * (GroupWord.of(('A', 1), ('C', -1)) ** (n - 2))


def alpha1_suite(m: int, n: int, k_cap: int = 5) -> list:
    """
    α = 1 の構造を厳密に確かめる

    t の軌道は (1, m-1) を n-2 回たどって μ に着く。μ では C^{m-2}·μ = 0 = ℓ_0 となり、
    閉区間の写像として A C^{m-2} で t に戻る（U·t = t）。
    """
    if not 3 <= m <= n:
        raise DynamicsError(f'alpha1_suite needs 3 <= m <= n: m={m} n={n}')
    rows = []
    tc = triangle_constants(m, n)
    alpha = AlphaParam(1, m, n)
    A, _, C = generators(m, n)
    t = tc.t

    record = orbit(t, alpha, n - 2, stop_at_l0=False)
    expected = [Digit(1, m - 1)] * (n - 2)
    rows.append(_row('orbit of t starts with (1, m-1)^(n-2)', record.digits == expected,
                     ' '.join(str(d) for d in record.digits)))

    landing = apply((A * C ** (m - 1)) ** (n - 2), t)
    rows.append(_row('(AC^(m-1))^(n-2) t = mu', compare(landing, tc.mu) == 0))
    rows.append(_row('C^(m-2) mu = l0', compare(apply(C ** (m - 2), tc.mu), alpha.l0) == 0))
    rows.append(_row('U t = t', compare(apply(eval_word(u_word(m, n), m, n), t), t) == 0))

    cyl = cylinder(alpha, 1, m - 1)
    ok = (cyl is not None and not cyl.full and cyl.right_closed
          and compare(cyl.lo, tc.mu + 1 / t) == 0 and compare(cyl.hi, t) == 0)
    rows.append(_row('Delta(1, m-1) = [mu + 1/t, t] not full', ok))

    for l in range(1, m - 1):
        for k in range(1, k_cap + 1):
            cyl = cylinder(alpha, k, l)
            rows.append(_row(f'Delta({k},{l}) full', cyl is not None and cyl.full))
    for k in range(2, k_cap + 1):
        cyl = cylinder(alpha, k, m - 1)
        rows.append(_row(f'Delta({k},{m - 1}) full', cyl is not None and cyl.full))

    return rows


if __name__ == '__main__':

    logging.basicConfig(level=logging.INFO)

    def main():
        for row in alpha0_suite(3, 3):
            print(row)
        for row in alpha1_suite(3, 3):
            print(row)
        print(regime_constants(3))
        return 0

    main()
