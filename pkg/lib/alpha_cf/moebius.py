#!/usr/bin/env python

"""
2x2行列による射影的な一次分数変換

三角群の生成元 A, B, C と、その語（GroupWord）の評価、拡張実数直線への作用を扱う。
行列は符号を正規化せずに保持し、比較は proj_eq で ±1 倍を同一視する。
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import groupby

from .algebra import RealAlgebraic, FieldElement, quad_roots, sign, triangle_constants
from .errors import FieldError, WordError
from .words import digits_large, lower_digits_small, upper_digits_small

logger = logging.getLogger(__name__)

__all__ = [
    'INFINITY', 'ProjMatrix', 'GroupWord', 'generators', 'apply', 'eval_word', 'proj_eq',
    'digit_word', 'digit_matrix', 'right_matrix', 'left_matrix', 'is_infinity', 'as_real',
]


class _Infinity:
    """拡張実数直線の ∞"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'INFINITY'

    def __str__(self):
        return 'inf'

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def is_infinity(x) -> bool:
    return x is INFINITY


class ProjMatrix:
    """
    行列 (a b; c d)

    成分は体の元（FieldElement、あるいは RealAlgebraic）。
    """

    __slots__ = ('a', 'b', 'c', 'd')

    def __init__(self, a, b, c, d) -> None:
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @classmethod
    def identity(cls, field) -> 'ProjMatrix':
        return cls(field.one(), field.zero(), field.zero(), field.one())

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: 'ProjMatrix') -> 'ProjMatrix':
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        return ProjMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> 'ProjMatrix':
        return ProjMatrix(-self.a, -self.b, -self.c, -self.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def inverse(self) -> 'ProjMatrix':
        """余因子行列（射影的には逆行列、行列式1なら真の逆行列）"""
        return ProjMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, e: int) -> 'ProjMatrix':
        if e < 0:
            return self.inverse() ** (-e)
        zero = self.a * 0
        result = ProjMatrix(zero + 1, zero, zero, zero + 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        return all(sign(x - y) == 0 for x, y in zip(self.entries(), other.entries()))

    __hash__ = None

    def apply(self, x):
        return apply(self, x)

    def fixed_points(self) -> list:
        """有限な固定点を昇順で返す（cx^2 + (d-a)x - b = 0 の実根）"""
        return quad_roots(self.c, self.d - self.a, -self.b)

    def to_json(self) -> list:
        return [[_entry_json(self.a), _entry_json(self.b)], [_entry_json(self.c), _entry_json(self.d)]]

    def __repr__(self):
        return f'ProjMatrix({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})'


def _entry_json(x):
    return x.to_json() if hasattr(x, 'to_json') else str(x)


def _is_zero(x) -> bool:
    if isinstance(x, FieldElement):
        return x.is_zero()
    return sign(x) == 0


def apply(M: ProjMatrix, x):
    """
    一次分数変換 x -> (ax+b)/(cx+d)

    極は ∞ に、∞ は a/c（c = 0 なら ∞）に移る。
    """
    if x is INFINITY:
        if _is_zero(M.c):
            return INFINITY
        return M.a / M.c

    den = M.c * x + M.d
    if _is_zero(den):
        return INFINITY
    return (M.a * x + M.b) / den


def proj_eq(M: ProjMatrix, N: ProjMatrix) -> bool:
    """M = ±N を厳密に判定する"""
    if M == N:
        return True
    return M == -N


@lru_cache(maxsize=None)
def generators(m: int, n: int) -> tuple:
    """
    三角群 G_{m,n} の生成元 A, B, C を返す

    A = (1 t; 0 1), B = (ν 1; -1 0), C = (-μ 1; -1 0) で C = AB が成り立つ。
    """
    tc = triangle_constants(m, n)
    one, zero = tc.field.one(), tc.field.zero()
    A = ProjMatrix(one, tc.t, zero, one)
    B = ProjMatrix(tc.nu, one, -one, zero)
    C = ProjMatrix(-tc.mu, one, -one, zero)
    return A, B, C


#
# 語
#

GENERATOR_NAMES = ('A', 'B', 'C')

_FACTOR = re.compile(r'^([ABC])(?:\^\(?(-?\d+)\)?)?$')


@dataclass(frozen=True)
class GroupWord:
    """
    生成元のべきの列

    書かれた順に積をとるので、右端の因子が最初に作用する。
    """

    factors: tuple = ()

    def __post_init__(self):
        merged = []
        for gen, exp in self.factors:
            if gen not in GENERATOR_NAMES:
                raise WordError(f'unknown generator: {gen}')
            if merged and merged[-1][0] == gen:
                merged[-1] = (gen, merged[-1][1] + exp)
            else:
                merged.append((gen, exp))
            if merged[-1][1] == 0:
                merged.pop()
        object.__setattr__(self, 'factors', tuple(merged))

    @classmethod
    def parse(cls, text: str) -> 'GroupWord':
        """'A^-2 C A^-1 C' の形式を読む"""
        factors = []
        for token in text.split():
            match = _FACTOR.match(token)
            if match is None:
                raise WordError(f'bad factor: {token}')
            exp = int(match.group(2)) if match.group(2) is not None else 1
            factors.append((match.group(1), exp))
        return cls(tuple(factors))

    @classmethod
    def of(cls, *factors) -> 'GroupWord':
        return cls(tuple(factors))

    def __mul__(self, other: 'GroupWord') -> 'GroupWord':
        return GroupWord(self.factors + other.factors)

    def __pow__(self, e: int) -> 'GroupWord':
        if e < 0:
            return self.inverse() ** (-e)
        return GroupWord(self.factors * e)

    def inverse(self) -> 'GroupWord':
        return GroupWord(tuple((gen, -exp) for gen, exp in reversed(self.factors)))

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        if not self.factors:
            return 'Id'
        return ' '.join(gen if exp == 1 else f'{gen}^{exp}' for gen, exp in self.factors)


def _generator_power(gen: str, exp: int, m: int, n: int) -> ProjMatrix:
    A, B, C = generators(m, n)
    if gen == 'A':
        tc = triangle_constants(m, n)
        one, zero = tc.field.one(), tc.field.zero()
        return ProjMatrix(one, tc.t * exp, zero, one)
    if gen == 'B':
        return B ** exp
    return C ** exp


def eval_word(word: GroupWord, m: int, n: int) -> ProjMatrix:
    """語を行列にする（空の語は単位行列）"""
    tc = triangle_constants(m, n)
    result = ProjMatrix.identity(tc.field)
    for gen, exp in word.factors:
        result = result * _generator_power(gen, exp, m, n)
    return result


#
# 桁の列と行列
#

def _as_pair(digit) -> tuple:
    if isinstance(digit, tuple):
        return digit
    return (digit, 1)


def digit_word(digits) -> GroupWord:
    """
    桁の列 b_1, ..., b_N から語 M_N ... M_1 を作る

    簡略桁 k は A^k C、組 (k, l) は A^k C^l を表す。
    """
    factors = []
    for digit in reversed(list(digits)):
        k, l = _as_pair(digit)
        factors.append(('A', k))
        factors.append(('C', l))
    return GroupWord(tuple(factors))


def digit_matrix(digits, m: int, n: int) -> ProjMatrix:
    """digit_word(digits) の行列（同じ桁の連続はべき乗で計算する）"""
    tc = triangle_constants(m, n)
    result = ProjMatrix.identity(tc.field)
    for digit, run in groupby(_as_pair(d) for d in digits):
        k, l = digit
        M = _generator_power('A', k, m, n) * _generator_power('C', l, m, n)
        result = (M ** len(list(run))) * result
    return result


def right_matrix(k: int, v, n: int) -> ProjMatrix:
    """
    右行列 R_{k,v}

    k ≥ 1 は上側の簡略桁、k ≤ -1 は上側の桁の組 b̄(k,v) の行列。
    """
    if k == 0:
        raise WordError('k must be nonzero')
    if k > 0:
        return digit_matrix(upper_digits_small(k, v), 3, n)
    return digit_matrix(digits_large(k, v, n).upper, 3, n)


def left_matrix(k: int, v, n: int) -> ProjMatrix:
    """左行列 L_{k,v} = Dig(d̲(k,v)) A^-1"""
    if k == 0:
        raise WordError('k must be nonzero')
    A, _, _ = generators(3, n)
    if k > 0:
        lower = lower_digits_small(k, v, n)
    else:
        lower = digits_large(k, v, n).lower
    return digit_matrix(lower, 3, n) * A.inverse()


def as_real(x):
    """行列の作用の結果を RealAlgebraic にそろえる（∞ はそのまま）"""
    if x is INFINITY or isinstance(x, RealAlgebraic):
        return x
    if isinstance(x, FieldElement):
        return RealAlgebraic(x)
    raise FieldError(f'not a field value: {x!r}')
