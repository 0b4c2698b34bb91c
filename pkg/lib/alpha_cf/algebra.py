#!/usr/bin/env python

"""
実代数的数の厳密演算

ℚ(g), g = 2cos(π/L) の元を最小多項式を法とする多項式の剰余として表し、
その上の二次拡大 ℚ(g)(√D) の元 p + q√D を扱う。

符号と大小比較は、係数によるゼロ判定と有理数区間による包み込みの精密化で決める。
許容誤差による判定はしない。
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple

import mpmath
from sympy import QQ, Poly, Rational, Symbol, primerange

from .errors import (AmbiguousRootError, FieldError, FieldZeroDivisionError,
                     NegativeDiscriminantError, NoRootError, RootSelectionError)

logger = logging.getLogger(__name__)

__all__ = [
    'Enclosure', 'NumberField', 'FieldElement', 'RealAlgebraic', 'TriangleConstants',
    'chebyshev_v', 'minpoly_of_nu', 'number_field', 'triangle_constants',
    'fe_add', 'fe_mul', 'fe_inv', 'sign', 'compare', 'refine', 'floor_of',
    'quad_roots', 'quad_solve', 'quad_solve_between', 'decimal_string', 'to_fraction',
    'DEFAULT_PRECISION_BITS',
]

# 多項式の変数
X = Symbol('x')

# 包み込みのデフォルト精度（ビット）
DEFAULT_PRECISION_BITS = 64

# 内部計算で上乗せするビット数
GUARD_BITS = 16

# ハッシュ用の正準区間の精度
HASH_BITS = 40

# 平方因子を取り除くときの試し割りの素数
SMALL_PRIMES = list(primerange(2, 10000))


def to_fraction(r) -> Fraction:
    """sympyのRationalやintをFractionにする"""
    if isinstance(r, Fraction):
        return r
    if isinstance(r, int):
        return Fraction(r)
    return Fraction(int(r.p), int(r.q))


def _floor_div_pow2(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.floor(x * scale), scale)


def _ceil_div_pow2(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.ceil(x * scale), scale)


#
# 有理数の閉区間
#

class Enclosure:
    """
    有理数の閉区間 [lo, hi]

    実数を包み込むために使う。端点は常にFraction。
    """

    __slots__ = ('lo', 'hi')

    def __init__(self, lo, hi) -> None:
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError(f'empty enclosure: [{lo}, {hi}]')
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x):
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains(self, other: 'Enclosure') -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def outward(self, bits: int) -> 'Enclosure':
        """2^-bits の格子に外向きに丸める"""
        return Enclosure(_floor_div_pow2(self.lo, bits), _ceil_div_pow2(self.hi, bits))

    def _coerce(self, other) -> 'Enclosure':
        if isinstance(other, Enclosure):
            return other
        return Enclosure.point(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        products = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def sqrt(self, bits: int) -> 'Enclosure':
        """非負部分の平方根を 2^-bits の格子で包み込む"""
        if self.hi < 0:
            raise ValueError(f'sqrt of negative enclosure: {self}')
        scale = 1 << bits
        lo = max(self.lo, Fraction(0))
        lo_root = math.isqrt(math.floor(lo * scale * scale))
        hi_root = math.isqrt(math.ceil(self.hi * scale * scale)) + 1
        return Enclosure(Fraction(lo_root, scale), Fraction(hi_root, scale))

    def __eq__(self, other):
        if not isinstance(other, Enclosure):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f'Enclosure({float(self.lo)!r}, {float(self.hi)!r})'

    def to_json(self) -> dict:
        return {'lo': str(self.lo), 'hi': str(self.hi)}


#
# 最小多項式
#

def chebyshev_v(j: int) -> list:
    """
    V_0 = 2, V_1 = x, V_{j+1} = x V_j - V_{j-1} で決まる整数係数多項式を返す（低次から）

    V_j(2cos θ) = 2cos(jθ) を満たす。

    Args:
        j (int): 次数

    Returns:
        list: 係数のリスト
    """
    if j < 0:
        raise ValueError(f'negative index: {j}')
    prev, cur = [2], [0, 1]
    if j == 0:
        return prev
    for _ in range(j - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return list(cur)


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def minpoly_of_nu(n: int) -> tuple:
    """
    2cos(π/n) の最小多項式を返す（モニック、整数係数、低次から）

    V_n(x) + 2 の根は 2cos((2j+1)π/n) なので、これを因数分解して
    2cos(π/n) で消える既約因子を数値的に選ぶ。
    選んだ因子は NumberField の構築時に孤立区間で確認する。

    Args:
        n (int): 3以上

    Returns:
        tuple: 係数
    """
    if n < 3:
        raise FieldError(f'n must be at least 3: {n}')

    v = chebyshev_v(n)
    v[0] += 2
    poly = Poly(list(reversed(v)), X, domain='ZZ')

    best = None
    with mpmath.workdps(60):
        target = 2 * mpmath.cos(mpmath.pi / n)
        _, factors = poly.factor_list()
        for f, _mult in factors:
            coeffs = [int(c) for c in reversed(f.all_coeffs())]
            value = abs(_horner(coeffs, target))
            if best is None or value < best[0]:
                best = (value, coeffs)

    coeffs = best[1]
    lead = coeffs[-1]
    if abs(lead) != 1:
        raise FieldError(f'leading coefficient is not a unit: {coeffs}')
    return tuple(c * lead for c in coeffs)


def _reduce(coeffs: list, minpoly: tuple) -> list:
    """モニックな最小多項式を法として次数を下げる"""
    d = len(minpoly) - 1
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[i]
        if c:
            for j in range(d):
                coeffs[i - d + j] -= c * minpoly[j]
            coeffs[i] = 0
    coeffs = coeffs[:d]
    coeffs.extend([Fraction(0)] * (d - len(coeffs)))
    return coeffs


class NumberField:
    """
    ℚ(g), g = 2cos(π/L)

    元は最小多項式を法とする剰余として FieldElement で表す。
    """

    def __init__(self, L: int) -> None:
        self.L = L
        self.minpoly = minpoly_of_nu(L)
        self.degree = len(self.minpoly) - 1
        self.poly = Poly(list(reversed(self.minpoly)), X, domain=QQ)
        self.root_interval = self._isolate()
        self._generator_cache = {}

    def _isolate(self) -> Enclosure:
        if self.degree == 1:
            r = Fraction(-self.minpoly[0])
            return Enclosure.point(r)

        found = []
        with mpmath.workdps(60):
            target = 2 * mpmath.cos(mpmath.pi / self.L)
            for (a, b), _mult in self.poly.intervals():
                a, b = to_fraction(a), to_fraction(b)
                if mpmath.mpf(a.numerator) / a.denominator <= target <= mpmath.mpf(b.numerator) / b.denominator:
                    found.append((a, b))

        if len(found) != 1:
            raise FieldError(f'cannot isolate 2cos(pi/{self.L}): {found}')
        return Enclosure(*found[0])

    def generator_enclosure(self, bits: int) -> Enclosure:
        """g を幅 2^-bits 以下で包み込む"""
        if self.degree == 1:
            return self.root_interval

        cached = self._generator_cache.get(bits)
        if cached is not None:
            return cached

        lo, hi = self.root_interval.lo, self.root_interval.hi
        s, t = self.poly.refine_root(Rational(lo.numerator, lo.denominator),
                                     Rational(hi.numerator, hi.denominator),
                                     eps=Rational(1, 1 << bits))
        enclosure = Enclosure(to_fraction(s), to_fraction(t))
        self._generator_cache[bits] = enclosure
        return enclosure

    def element(self, coeffs) -> 'FieldElement':
        return FieldElement(self, coeffs)

    def scalar(self, c) -> 'FieldElement':
        return FieldElement(self, [c])

    def zero(self) -> 'FieldElement':
        return self.scalar(0)

    def one(self) -> 'FieldElement':
        return self.scalar(1)

    def gen(self) -> 'FieldElement':
        if self.degree == 1:
            return self.scalar(-self.minpoly[0])
        return FieldElement(self, [0, 1])

    def __repr__(self):
        return f'NumberField(L={self.L}, minpoly={self.minpoly})'


@lru_cache(maxsize=None)
def number_field(L: int) -> NumberField:
    return NumberField(L)


#
# 実数の共通部分
#

class _Real:
    """FieldElementとRealAlgebraicに共通の比較、床関数、表示"""

    __slots__ = ()

    def sign(self) -> int:
        raise NotImplementedError

    def _enclosure(self, bits: int) -> Enclosure:
        raise NotImplementedError

    def enclosure(self, bits: int) -> Enclosure:
        """幅 2^-bits 以下の包み込み（正準ではない）"""
        target = Fraction(1, 1 << bits)
        p = bits + 4
        while True:
            e = self._enclosure(p)
            if e.width <= target:
                return e
            p *= 2

    def is_rational(self) -> bool:
        raise NotImplementedError

    def floor(self) -> int:
        e = self.enclosure(8)
        top = math.floor(e.hi)
        if e.lo >= top:
            return top
        return top if compare(self, top) >= 0 else top - 1

    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, _Real)):
            return NotImplemented
        return compare(self, other) == 0

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_value())
            else:
                self._hash = hash(refine(self, HASH_BITS))
        return self._hash

    def __float__(self):
        return float(refine(self, 60).mid)

    def decimal(self, digits: int = 20) -> str:
        return decimal_string(self, digits)

    def __abs__(self):
        return -self if self.sign() < 0 else self


class FieldElement(_Real):
    """
    ℚ(g) の元

    係数は g のべきの係数（低次から）、長さは体の次数。
    """

    __slots__ = ('field', 'coeffs', '_hash')

    def __init__(self, field: NumberField, coeffs) -> None:
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > field.degree:
            coeffs = _reduce(coeffs, field.minpoly)
        coeffs.extend([Fraction(0)] * (field.degree - len(coeffs)))
        self.field = field
        self.coeffs = tuple(coeffs)
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError(f'field mismatch: {self.field} vs {other.field}')
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [other])
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f'not rational: {self}')
        return self.coeffs[0]

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.field.degree == 1:
            return FieldElement(self.field, [self.coeffs[0] * o.coeffs[0]])
        if o.is_rational():
            c = o.coeffs[0]
            return FieldElement(self.field, [a * c for a in self.coeffs])
        if self.is_rational():
            c = self.coeffs[0]
            return FieldElement(self.field, [c * b for b in o.coeffs])
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return FieldElement(self.field, _reduce(prod, self.field.minpoly))

    __rmul__ = __mul__

    def inverse(self) -> 'FieldElement':
        if self.is_zero():
            raise FieldZeroDivisionError('inverse of zero')
        if self.is_rational():
            return FieldElement(self.field, [1 / self.coeffs[0]])
        f = Poly([Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)], X, domain=QQ)
        inv = f.invert(self.field.poly)
        return FieldElement(self.field, [to_fraction(c) for c in reversed(inv.all_coeffs())])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            c = self.coeffs[0]
            return (c > 0) - (c < 0)
        bits = 32
        while True:
            e = self._enclosure(bits)
            if e.lo > 0:
                return 1
            if e.hi < 0:
                return -1
            bits *= 2

    def _enclosure(self, bits: int) -> Enclosure:
        if self.is_rational():
            return Enclosure.point(self.coeffs[0])
        p = bits + GUARD_BITS
        g = self.field.generator_enclosure(p)
        acc = Enclosure.point(self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = (acc * g + c).outward(p)
        return acc

    def to_json(self) -> list:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f'{c}' if i == 0 else f'{c}*g^{i}')
        return f'FieldElement({" + ".join(terms) or "0"}; L={self.field.L})'


def _strip_square(N: int) -> tuple:
    """N = s^2 r と分解して (s, r) を返す（試し割りで見つかる範囲）"""
    s, r = 1, N
    for prime in SMALL_PRIMES:
        pp = prime * prime
        if pp > r:
            break
        while r % pp == 0:
            r //= pp
            s *= prime
    root = math.isqrt(r)
    if root * root == r:
        s *= root
        r = 1
    return s, r


def _is_rational_square(x: Fraction) -> bool:
    if x < 0:
        return False
    return math.isqrt(x.numerator) ** 2 == x.numerator and math.isqrt(x.denominator) ** 2 == x.denominator


@lru_cache(maxsize=None)
def _field_sqrt_coeffs(L: int, coeffs: tuple):
    """
    ℚ(g) の元 D の平方根が ℚ(g) にあればその係数（正の方）を返す

    ノルムが有理数の平方でなければ None。そうでなければ共役ごとの √σ(D) の符号を
    すべて試し、連立一次方程式の解を有理数に丸めて s^2 = D を厳密に確かめる。
    丸めに失敗したときも None を返す（根号のまま保持される）。
    """
    field = number_field(L)
    D = FieldElement(field, coeffs)

    norm = to_fraction(field.poly.resultant(Poly([Rational(c.numerator, c.denominator) for c in reversed(coeffs)], X, domain=QQ)))
    if not _is_rational_square(norm):
        return None

    size = max(max(c.numerator.bit_length(), c.denominator.bit_length()) for c in coeffs)
    dps = 40 + size
    max_denominator = 1 << (size + 32)
    degree = field.degree
    with mpmath.workdps(dps):
        try:
            roots = mpmath.polyroots(list(reversed(field.minpoly)), maxsteps=200, extraprec=2 * dps)
        except mpmath.NoConvergence:
            logger.warning(f'conjugates of g did not converge for L={L}')
            return None
        roots = [mpmath.re(r) for r in roots]
        values = [mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(coeffs)], r) for r in roots]
        if any(v < 0 for v in values):
            return None
        roots_of_values = [mpmath.sqrt(v) for v in values]
        vandermonde = mpmath.matrix([[r ** j for j in range(degree)] for r in roots])
        for signs in product((1, -1), repeat=degree - 1):
            rhs = mpmath.matrix([roots_of_values[0]] + [s * x for s, x in zip(signs, roots_of_values[1:])])
            solution = mpmath.lu_solve(vandermonde, rhs)
            candidate = FieldElement(field, [
                Fraction(mpmath.nstr(c, dps, strip_zeros=False)).limit_denominator(max_denominator) for c in solution
            ])
            if (candidate * candidate - D).is_zero():
                if candidate.sign() < 0:
                    candidate = -candidate
                logger.debug(f'radicand {D} is the square of {candidate}')
                return candidate.coeffs
    return None


class RealAlgebraic(_Real):
    """
    p + q√D  (p, q, D ∈ ℚ(g), D ≥ 0)

    q = 0 のとき D は 0 に正規化する。
    D が有理数のときは平方因子を取り除いて無平方の整数にする。
    D が ℚ(g) の元の平方なら（有理数の D も含めて）根号を外して p にまとめる。
    """

    __slots__ = ('p', 'q', 'radicand', '_hash')

    def __init__(self, p, q=None, radicand=None, normalized=False) -> None:
        if not isinstance(p, FieldElement):
            raise FieldError(f'p must be a FieldElement: {p!r}')
        field = p.field
        q = field.zero() if q is None else p._coerce(q)
        radicand = field.zero() if radicand is None else p._coerce(radicand)

        if not normalized and not q.is_zero():
            s = radicand.sign()
            if s < 0:
                raise NegativeDiscriminantError(f'negative radicand: {radicand}')
            if s == 0:
                q = field.zero()
            elif radicand.is_rational():
                d = radicand.rational_value()
                square, rest = _strip_square(d.numerator * d.denominator)
                q = q * Fraction(square, d.denominator)
                if rest == 1:
                    p = p + q
                    q = field.zero()
                radicand = field.scalar(rest)
            if not q.is_zero() and field.degree > 1:
                root = _field_sqrt_coeffs(field.L, radicand.coeffs)
                if root is not None:
                    p = p + q * FieldElement(field, root)
                    q = field.zero()

        if q.is_zero():
            radicand = field.zero()

        self.p = p
        self.q = q
        self.radicand = radicand
        self._hash = None

    @property
    def field(self) -> NumberField:
        return self.p.field

    @classmethod
    def lift(cls, x, field: NumberField = None) -> 'RealAlgebraic':
        if isinstance(x, RealAlgebraic):
            return x
        if isinstance(x, FieldElement):
            return cls(x)
        if field is None:
            raise FieldError(f'cannot lift {x!r} without a field')
        return cls(field.scalar(x))

    def is_base(self) -> bool:
        return self.q.is_zero()

    def is_rational(self) -> bool:
        return self.q.is_zero() and self.p.is_rational()

    def rational_value(self) -> Fraction:
        if not self.q.is_zero():
            raise FieldError(f'not rational: {self}')
        return self.p.rational_value()

    def base_value(self) -> FieldElement:
        if not self.q.is_zero():
            raise FieldError(f'not in the base field: {self}')
        return self.p

    def same_radicand(self, other: 'RealAlgebraic') -> bool:
        return self.q.is_zero() or other.q.is_zero() or self.radicand.coeffs == other.radicand.coeffs

    def _coerce(self, other):
        if isinstance(other, RealAlgebraic):
            if other.field is not self.field:
                raise FieldError(f'field mismatch: {self.field} vs {other.field}')
            if not self.same_radicand(other):
                raise FieldError('arithmetic across different radicands needs a deeper tower')
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return RealAlgebraic(self.p._coerce(other))
        return None

    def _radicand_with(self, other: 'RealAlgebraic') -> FieldElement:
        return other.radicand if self.q.is_zero() else self.radicand

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RealAlgebraic(self.p + o.p, self.q + o.q, self._radicand_with(o), normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return RealAlgebraic(-self.p, -self.q, self.radicand, normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RealAlgebraic(self.p - o.p, self.q - o.q, self._radicand_with(o), normalized=True)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._radicand_with(o)
        p = self.p * o.p + self.q * o.q * d
        q = self.p * o.q + self.q * o.p
        return RealAlgebraic(p, q, d, normalized=True)

    __rmul__ = __mul__

    def conjugate(self) -> 'RealAlgebraic':
        return RealAlgebraic(self.p, -self.q, self.radicand, normalized=True)

    def inverse(self) -> 'RealAlgebraic':
        if self.q.is_zero():
            return RealAlgebraic(self.p.inverse())
        norm = self.p * self.p - self.q * self.q * self.radicand
        if norm.is_zero():
            # D = (p/q)^2 が基礎体の平方だった場合
            root = self.p / self.q
            if root.sign() < 0:
                root = -root
            value = self.p + self.q * root
            return RealAlgebraic(value.inverse())
        inv = norm.inverse()
        return RealAlgebraic(self.p * inv, -self.q * inv, self.radicand, normalized=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = RealAlgebraic(self.field.one())
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def sign(self) -> int:
        sp = self.p.sign()
        sq = self.q.sign()
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        return sp * (self.p * self.p - self.q * self.q * self.radicand).sign()

    def _enclosure(self, bits: int) -> Enclosure:
        if self.q.is_zero():
            return self.p._enclosure(bits)
        p = bits + GUARD_BITS
        root = self.radicand._enclosure(p).sqrt(p)
        return (self.p._enclosure(p) + self.q._enclosure(p) * root).outward(p)

    def to_json(self) -> dict:
        return {'p': self.p.to_json(), 'q': self.q.to_json(), 'D': self.radicand.to_json()}

    def __repr__(self):
        if self.q.is_zero():
            return f'RealAlgebraic({self.p!r})'
        return f'RealAlgebraic({self.p!r} + {self.q!r}*sqrt({self.radicand!r}))'


#
# 演算の関数形
#

def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def sign(x) -> int:
    if isinstance(x, _Real):
        return x.sign()
    x = Fraction(x)
    return (x > 0) - (x < 0)


def _cross_sign(a: RealAlgebraic, b: RealAlgebraic) -> int:
    """根号の異なる2数について sign(a - b)"""
    u = RealAlgebraic(a.p - b.p, a.q, a.radicand, normalized=True)

    # u = q2√D2 となるのは符号が一致して u^2 = q2^2 D2 のときだけ
    if u.sign() == b.q.sign() and (u * u - b.q * b.q * b.radicand).sign() == 0:
        return 0

    bits = 32
    while True:
        p = bits + GUARD_BITS
        rhs = b.q._enclosure(p) * b.radicand._enclosure(p).sqrt(p)
        e = u._enclosure(p) - rhs
        if e.lo > 0:
            return 1
        if e.hi < 0:
            return -1
        bits *= 2


def compare(a, b) -> int:
    """a と b の大小を -1, 0, 1 で返す"""
    if not isinstance(a, _Real) and not isinstance(b, _Real):
        a, b = Fraction(a), Fraction(b)
        return (a > b) - (a < b)
    if isinstance(a, RealAlgebraic) and isinstance(b, RealAlgebraic) and not a.same_radicand(b):
        return _cross_sign(a, b)
    return sign(a - b)


def refine(x, bits: int) -> Enclosure:
    """
    x を含む正準な区間 ((c-1)/2^bits, c/2^bits] を閉区間として返す

    c = ceil(x 2^bits) なので、bitsを増やすと区間は入れ子になる。

    Args:
        x: 実数（int, Fraction, FieldElement, RealAlgebraic）
        bits (int): 1以上

    Returns:
        Enclosure: 幅 2^-bits の区間
    """
    if bits < 1:
        raise ValueError(f'bits must be positive: {bits}')
    scale = 1 << bits

    if not isinstance(x, _Real):
        c = math.ceil(Fraction(x) * scale)
        return Enclosure(Fraction(c - 1, scale), Fraction(c, scale))

    e = x.enclosure(bits + 2)
    c0 = math.ceil(e.lo * scale)
    c1 = math.ceil(e.hi * scale)
    if c0 == c1:
        c = c0
    else:
        c = c0 if compare(x, Fraction(c0, scale)) <= 0 else c1
    return Enclosure(Fraction(c - 1, scale), Fraction(c, scale))


def floor_of(x) -> int:
    if isinstance(x, _Real):
        return x.floor()
    return math.floor(Fraction(x))


def decimal_string(x, digits: int = 20) -> str:
    """
    0方向への切り捨てで小数表示する

    桁数を増やしても既存の桁は変わらず、後ろに桁が追加されるだけになる。
    """
    s = sign(x)
    a = -x if s < 0 else x
    scaled = floor_of(a * (10 ** digits))
    ip, fp = divmod(scaled, 10 ** digits)
    text = f'{ip}.{fp:0{digits}d}' if digits > 0 else str(ip)
    return ('-' if s < 0 else '') + text


#
# 二次方程式
#

def _field_of(*xs) -> NumberField:
    for x in xs:
        if isinstance(x, FieldElement):
            return x.field
    raise FieldError('at least one coefficient must be a FieldElement')


def quad_roots(a, b, c) -> list:
    """
    aX^2 + bX + c = 0 の実根を昇順で返す

    a = 0 のときは一次方程式として解く。

    Raises:
        NegativeDiscriminantError: 判別式が負
        RootSelectionError: 係数がすべて0
    """
    field = _field_of(a, b, c)
    a, b, c = (x if isinstance(x, FieldElement) else field.scalar(x) for x in (a, b, c))

    if a.is_zero():
        if b.is_zero():
            if c.is_zero():
                raise RootSelectionError('all coefficients are zero')
            return []
        return [RealAlgebraic(-c / b)]

    disc = b * b - 4 * a * c
    s = disc.sign()
    if s < 0:
        raise NegativeDiscriminantError(f'negative discriminant: {disc}')

    inv = (2 * a).inverse()
    p = -b * inv
    if s == 0:
        return [RealAlgebraic(p)]

    roots = [RealAlgebraic(p, inv, disc), RealAlgebraic(p, -inv, disc)]
    roots.sort(key=lambda r: refine(r, 64).lo)
    if compare(roots[0], roots[1]) > 0:
        roots.reverse()
    return roots


def quad_solve_between(a, b, c, lo, hi) -> RealAlgebraic:
    """lo ≤ X ≤ hi にある唯一の根を返す（lo, hi は任意の実数）"""
    found = [r for r in quad_roots(a, b, c) if compare(lo, r) <= 0 and compare(r, hi) <= 0]
    if not found:
        raise NoRootError(f'no root in [{decimal_string(lo, 12)}, {decimal_string(hi, 12)}]')
    if len(found) > 1:
        raise AmbiguousRootError(f'two roots in [{decimal_string(lo, 12)}, {decimal_string(hi, 12)}]')
    return found[0]


def quad_solve(a, b, c, selector: Enclosure) -> RealAlgebraic:
    """
    selector の中にある aX^2 + bX + c の唯一の根を p + q√D で返す

    Args:
        a, b, c (FieldElement): 係数（少なくとも1つはFieldElement）
        selector (Enclosure): 根を1つだけ含む有理数区間

    Raises:
        NoRootError, AmbiguousRootError, NegativeDiscriminantError
    """
    return quad_solve_between(a, b, c, selector.lo, selector.hi)


#
# 三角群の定数
#

class TriangleConstants(NamedTuple):
    m: int
    n: int
    field: NumberField
    mu: FieldElement
    nu: FieldElement
    t: FieldElement


@lru_cache(maxsize=None)
def triangle_constants(m: int, n: int) -> TriangleConstants:
    """
    μ = 2cos(π/m), ν = 2cos(π/n), t = μ + ν を共通の体 ℚ(2cos(π/L)) の元として返す

    m = 3 のときは μ = 1 なので L = n でよい。
    """
    if m < 3 or n < 3:
        raise FieldError(f'm, n must be at least 3: m={m}, n={n}')

    if m == 3 or n % m == 0:
        L = n
    elif m % n == 0:
        L = m
    else:
        L = math.lcm(m, n)

    field = number_field(L)
    g = field.gen()

    nu = _horner(chebyshev_v(L // n), g) if L != n else g
    if L % m == 0:
        mu = _horner(chebyshev_v(L // m), g) if L != m else g
    else:
        mu = field.one()

    # 定数多項式のときはintが返るので体の元にしておく
    nu = nu if isinstance(nu, FieldElement) else field.scalar(nu)
    mu = mu if isinstance(mu, FieldElement) else field.scalar(mu)

    logger.debug(f'triangle constants m={m} n={n} L={L} degree={field.degree}')
    return TriangleConstants(m, n, field, mu, nu, mu + nu)
