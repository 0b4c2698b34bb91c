#!/usr/bin/env python

"""
同期区間

3つの領域（小さいα、中間、大きいα）について、語 v と整数 k で添字付けた
区間 𝒥_{k,v} の端点 ζ, η, ω を二次方程式の根として厳密に求め、
軌道の同期 r_j = ℓ_i を確かめる。

領域ごとの向き
  SMALL: ζ < η ≤ ω、𝒥 = [ζ, η)、𝓘 = [ζ, ω)
  LARGE, MID: ω ≤ η < ζ、𝒥 = [η, ζ)、𝓘 = (ω, ζ]
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .algebra import RealAlgebraic, compare, decimal_string, quad_solve_between, refine, triangle_constants
from .dynamics import AlphaParam, Digit, orbit, r0_quadratic, regime_constants, step
from .errors import NegativeDiscriminantError, NoRootError, SyncError, WordError
from .moebius import ProjMatrix, apply, as_real, digit_matrix, generators, right_matrix
from .words import (
    ROOT, TreeWord, digits_large, enumerate_tree, expand_periodic, frak_f, from_path, large_blocks,
    lower_digits_small, prime, small_blocks, theta, tree_path, upper_digits_small,
)

logger = logging.getLogger(__name__)

__all__ = [
    'Regime', 'SyncInterval', 'SyncWitness', 'NonSyncReport', 'BetaWitness', 'LocateResult',
    'DEFAULT_SCAN_CAP', 'regime_of', 'endpoints', 'expected_indices', 'find_sync', 'verify_sync',
    'interior_samples', 'digit_certificates', 'partition_check', 'children', 'enumerate_intervals',
    'measure_report', 'nonsync_point', 'chi_point', 'beta_witness', 'locate', 'length_lower_bound',
    'k_values',
]

DEFAULT_SCAN_CAP = 200

# 長さの下界や標本点に使う精度
DEFAULT_BITS = 64


class Regime(Enum):
    SMALL = 'small'
    MID = 'mid'
    LARGE = 'large'

    @classmethod
    def parse(cls, text) -> 'Regime':
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).lower())
        except ValueError:
            raise SyncError(f'unknown regime: {text!r}') from None

    @property
    def sort_order(self) -> int:
        return {'small': 0, 'mid': 1, 'large': 2}[self.value]


def _check_k(regime: Regime, k: int) -> None:
    if regime is Regime.SMALL and k < 1:
        raise SyncError(f'small regime needs k >= 1: {k}')
    if regime is Regime.MID and k != -1:
        raise SyncError(f'middle regime needs k = -1: {k}')
    if regime is Regime.LARGE and k > -2:
        raise SyncError(f'large regime needs k <= -2: {k}')


def regime_of(alpha, n: int) -> Regime:
    """α の属する領域（γ は MID、ε は LARGE に含める）"""
    value = alpha.value if isinstance(alpha, AlphaParam) else alpha
    rc = regime_constants(n)
    if compare(value, rc.gamma) < 0:
        return Regime.SMALL
    if compare(value, rc.epsilon) < 0:
        return Regime.MID
    return Regime.LARGE


#
# 区間の記録
#

@dataclass
class SyncInterval:
    """
    区間 𝒥_{k,v} とそれを含む 𝓘_{k,v}

    Attributes:
        regime (Regime): 領域
        k (int): SMALL は k ≥ 1、MID は -1、LARGE は k ≤ -2
        v (TreeWord): 木の語（経路付き）
        zeta, eta, omega (RealAlgebraic): 端点（α の値）
        i_expected (int): ℓ 側の同期の添字
        j_expected (int): r 側の同期の添字（LARGE, MID では j_expected か j_expected+1）
        n (int): 三角群の符号
    """

    regime: Regime
    k: int
    v: TreeWord
    zeta: RealAlgebraic
    eta: RealAlgebraic
    omega: RealAlgebraic
    i_expected: int
    j_expected: int
    n: int = 3

    @property
    def is_small(self) -> bool:
        return self.regime is Regime.SMALL

    @property
    def j_candidates(self) -> tuple:
        if self.is_small:
            return (self.j_expected,)
        return (self.j_expected, self.j_expected + 1)

    @property
    def sync_bounds(self) -> tuple:
        """𝒥 の (左端, 右端)"""
        if self.is_small:
            return self.zeta, self.eta
        return self.eta, self.zeta

    @property
    def cylinder_bounds(self) -> tuple:
        """𝓘 の (左端, 右端)"""
        if self.is_small:
            return self.zeta, self.omega
        return self.omega, self.zeta

    @property
    def child_window(self) -> tuple:
        """子の 𝓘 がすべて入る閉区間 𝓘 ∖ 𝒥 の閉包"""
        if self.is_small:
            return self.eta, self.omega
        return self.omega, self.eta

    def contains(self, alpha) -> bool:
        """α ∈ 𝒥（左閉右開）"""
        value = alpha.value if isinstance(alpha, AlphaParam) else alpha
        lo, hi = self.sync_bounds
        return compare(lo, value) <= 0 and compare(value, hi) < 0

    def in_cylinder(self, alpha) -> bool:
        """α ∈ 𝓘（SMALL は [ζ, ω)、それ以外は (ω, ζ]）"""
        value = alpha.value if isinstance(alpha, AlphaParam) else alpha
        lo, hi = self.cylinder_bounds
        if self.is_small:
            return compare(lo, value) <= 0 and compare(value, hi) < 0
        return compare(lo, value) < 0 and compare(value, hi) <= 0

    def ordering_ok(self) -> bool:
        if self.is_small:
            return compare(self.zeta, self.eta) < 0 and compare(self.eta, self.omega) <= 0
        if self.regime is Regime.MID:
            return compare(self.omega, self.eta) <= 0 and compare(self.eta, self.zeta) < 0
        return compare(self.omega, self.eta) < 0 and compare(self.eta, self.zeta) < 0

    @property
    def key(self) -> tuple:
        return (self.regime.sort_order, abs(self.k), self.v.path)

    def row(self, digits: int = 20, bits: int = DEFAULT_BITS) -> dict:
        """表やJSONに出すための1行"""
        lo, hi = self.sync_bounds
        return {
            'regime': self.regime.value,
            'k': self.k,
            'v': self.v.text,
            'path': list(self.v.path),
            'zeta_exact': self.zeta.to_json(),
            'zeta_dec': decimal_string(self.zeta, digits),
            'eta_exact': self.eta.to_json(),
            'eta_dec': decimal_string(self.eta, digits),
            'omega_exact': self.omega.to_json(),
            'omega_dec': decimal_string(self.omega, digits),
            'i': self.i_expected,
            'j': self.j_expected,
            'length_dec': decimal_string(length_lower_bound(lo, hi, bits), digits),
        }


class SyncWitness(NamedTuple):
    """
    同期の証拠 r_j = ℓ_i

    at_pole は共通の点が極 0 で、その先に軌道が続かないことを表す。
    """

    alpha: object
    i: int
    j: int
    point: object
    pre_step_ok: bool = True
    at_pole: bool = False

    def row(self, digits: int = 20) -> dict:
        return {
            'alpha': decimal_string(self.alpha, digits),
            'i': self.i,
            'j': self.j,
            'point': decimal_string(self.point, digits),
            'pre_step_ok': self.pre_step_ok,
            'at_pole': self.at_pole,
        }


def length_lower_bound(lo, hi, bits: int = DEFAULT_BITS) -> Fraction:
    """hi - lo の保証付き下界（根号が異なっても使える）"""
    width = refine(hi, bits).lo - refine(lo, bits).hi
    return max(width, Fraction(0))


#
# 端点
#

def _word_path(v) -> tuple:
    if isinstance(v, TreeWord) and v.path is not None:
        return v.path
    path = tree_path(v)
    if path is None:
        raise WordError(f'{v} is not a word of the tree')
    return path


def _lower_large(K: int, pattern: str) -> list:
    """d̲(-K, pattern)（上側の桁を組み立てない）"""
    return [-K if ch == '1' else -K - 1 for ch in pattern]


def _regime_window(regime: Regime, n: int) -> tuple:
    rc = regime_constants(n)
    if regime is Regime.SMALL:
        return 0, rc.gamma
    if regime is Regime.MID:
        return rc.gamma, rc.epsilon
    return rc.epsilon, 1


def _solve(P: ProjMatrix, Q: ProjMatrix, window: tuple, n: int, what: str) -> RealAlgebraic:
    a, b, c = r0_quadratic(P, Q, 3, n)
    try:
        return quad_solve_between(a, b, c, *window)
    except NoRootError as e:
        logger.error(f'{what}: {e}')
        raise


def _equations(regime: Regime, k: int, pattern: str, n: int) -> dict:
    """
    ζ, η, ω を与える P·r_0 = Q·r_0 の組

    SMALL: R·r_0 = ℓ_0、r_0 = C^-1 A C R·r_0、R_{k,𝔣(v)}·r_0 = r_0
    LARGE, MID: L A·ℓ_0 = r_0、R·r_0 = C^-1·ℓ_0、ℓ_0 が周期 d̲(k,𝔣(v)) の純周期点
    """
    A, _, C = generators(3, n)
    Ainv, Cinv = A.inverse(), C.inverse()
    ident = ProjMatrix.identity(triangle_constants(3, n).field)
    v = TreeWord(pattern)
    f = frak_f(v)

    if regime is Regime.SMALL:
        R = right_matrix(k, v, n)
        return {
            'zeta': (R, Ainv),
            'eta': (ident, Cinv * A * C * R),
            'omega': (right_matrix(k, f, n), ident),
        }

    K = -k
    L = digit_matrix(_lower_large(K, pattern), 3, n) * Ainv
    R = right_matrix(k, v, n)
    periodic = digit_matrix(_lower_large(K, f.pattern), 3, n) * Ainv
    return {
        'zeta': (L, ident),
        'eta': (R, Cinv * Ainv),
        'omega': (periodic, Ainv),
    }


@lru_cache(maxsize=None)
def _endpoint_values(regime: Regime, k: int, path: tuple, n: int) -> tuple:
    v = from_path(path)
    if not path:
        window = _regime_window(regime, n)
    else:
        parent = _endpoint_values(regime, k, path[:-1], n)
        zeta_u, eta_u, omega_u = parent
        window = (eta_u, omega_u) if regime is Regime.SMALL else (omega_u, eta_u)

    eqs = _equations(regime, k, v.pattern, n)
    zeta = _solve(*eqs['zeta'], window, n, f'zeta {regime.value} k={k} v={v}')
    eta = _solve(*eqs['eta'], window, n, f'eta {regime.value} k={k} v={v}')
    try:
        omega = _solve(*eqs['omega'], window, n, f'omega {regime.value} k={k} v={v}')
    except (NoRootError, NegativeDiscriminantError):
        if regime is not Regime.MID:
            raise
        # 中間の領域では左端を γ（親の窓の左端）で切る
        omega = RealAlgebraic.lift(window[0], triangle_constants(3, n).field)
        logger.debug(f'omega clipped to the window for mid k={k} v={v}')
    return zeta, eta, omega


def expected_indices(regime, k: int, v, n: int) -> tuple:
    """
    同期の添字 (i, j)

    SMALL: i = S̲(k,v)+1、j = S̄(v)+1
    LARGE, MID: i = |d̲(k,v)|+1、j = |b̄(k,v)|+1（j+1 になる場合は verify_sync が判定）
    """
    regime = Regime.parse(regime)
    pattern = v.pattern if isinstance(v, TreeWord) else TreeWord.parse(str(v)).pattern
    if regime is Regime.SMALL:
        return len(lower_digits_small(k, pattern, n)) + 1, len(pattern) + 1
    return len(pattern) + 1, len(digits_large(k, pattern, n).upper) + 1


def endpoints(regime, k: int, v, n: int = 3) -> SyncInterval:
    """
    区間 𝒥_{k,v} の端点と同期の添字

    各端点は窓の中にある唯一の根として選ぶ。窓は根の語 1 なら領域全体、
    v = Θ_q(u) なら親の 𝓘_u ∖ 𝒥_u の閉包。

    Args:
        regime: Regime または 'small', 'mid', 'large'
        k (int): 領域に応じた整数
        v: TreeWord または語の文字列（'1 2 1' など）
        n (int): 3 以上

    Returns:
        SyncInterval

    Raises:
        SyncError: k が領域に合わない、または語が中間の領域の刈り込んだ木にない
        RootSelectionError: 窓の中に根が見つからない
    """
    regime = Regime.parse(regime)
    _check_k(regime, k)
    if not isinstance(v, TreeWord):
        v = TreeWord.parse(str(v))
    path = _word_path(v)
    v = TreeWord(v.pattern, path)
    if regime is Regime.MID and max(v.c_letters) > n - 2:
        raise SyncError(f'{v} is not in the trimmed tree for n={n}')

    zeta, eta, omega = _endpoint_values(regime, k, path, n)
    i, j = expected_indices(regime, k, v, n)
    return SyncInterval(regime, k, v, zeta, eta, omega, i, j, n)


#
# 同期の検出
#

def _pre_step_matrix(regime: Regime, n: int) -> ProjMatrix:
    """同期の1つ手前の関係 ℓ_{i-1} = M·r_{j-1} の M"""
    A, _, C = generators(3, n)
    if regime is Regime.SMALL:
        return C.inverse() * A * C
    return C.inverse() * A * C.inverse()


def find_sync(alpha, n: int = 3, scan_cap: int = DEFAULT_SCAN_CAP):
    """
    r_j = ℓ_i となる最初の (i, j) を探す（j が最小、その中で i が最小）

    共通の点が 0 のとき at_pole を立てる。0 は T_α の極なので、両方の軌道はそこで止まる。

    Returns:
        SyncWitness または None
    """
    if not isinstance(alpha, AlphaParam):
        alpha = AlphaParam(alpha, 3, n)
    lower = orbit(alpha.l0, alpha, scan_cap, stop_at_l0=False)
    upper = orbit(alpha.r0, alpha, scan_cap, stop_at_l0=False)

    buckets = {}
    for i, point in enumerate(lower.points):
        buckets.setdefault(refine(point, 48), []).append(i)

    for j, point in enumerate(upper.points):
        if j == 0:
            continue
        for i in buckets.get(refine(point, 48), []):
            if compare(lower.points[i], point) == 0:
                at_pole = compare(point, 0) == 0
                logger.debug(f'synchronized at i={i} j={j}')
                return SyncWitness(alpha.value, i, j, point, True, at_pole)
    return None


def verify_sync(alpha, interval: SyncInterval, scan_cap: int = DEFAULT_SCAN_CAP) -> SyncWitness:
    """
    𝒥 の内部の α で同期の添字と1つ手前の関係を確かめる

    SMALL では (i, j) = (S̲+1, S̄+1) と ℓ_{i-1} = C^-1AC·r_{j-1}。
    LARGE, MID では r_{j-1} からの桁が (1,2) のとき j が1つ後ろにずれ、
    ℓ_{i-1} = C^-1AC^-1·r_{j-1} はずれる前の j で確かめる。
    両方の軌道がちょうど極 0 を通る α（χ など）では (i-1, j-1) で一致して止まる。

    Raises:
        SyncError: 同期しない、または添字か関係が合わない
    """
    n = interval.n
    if not isinstance(alpha, AlphaParam):
        alpha = AlphaParam(alpha, 3, n)
    if not interval.contains(alpha):
        raise SyncError(f'alpha {alpha.decimal(12)} is outside J_{interval.k},{interval.v}')

    witness = find_sync(alpha, n, scan_cap)
    if witness is None:
        raise SyncError(f'no synchronization within {scan_cap} steps at alpha {alpha.decimal(12)}')

    i0, j0 = interval.i_expected, interval.j_expected
    lower = orbit(alpha.l0, alpha, i0, stop_at_l0=False)
    upper = orbit(alpha.r0, alpha, j0 + 1, stop_at_l0=False)

    if witness.at_pole and (witness.i, witness.j) == (i0 - 1, j0 - 1):
        return witness._replace(pre_step_ok=True)

    if interval.is_small:
        j_ok = j0
    else:
        digit = upper.digits[j0 - 1] if len(upper.digits) >= j0 else None
        j_ok = j0 + 1 if digit is not None and (digit.k, digit.l) == (1, 2) else j0

    if (witness.i, witness.j) != (i0, j_ok):
        raise SyncError(
            f'index mismatch at alpha {alpha.decimal(12)}: found ({witness.i},{witness.j}), expected ({i0},{j_ok})'
        )

    M = _pre_step_matrix(interval.regime, n)
    pre = compare(lower.points[i0 - 1], apply(M, upper.points[j0 - 1])) == 0
    if not pre:
        raise SyncError(f'pre-step relation fails at alpha {alpha.decimal(12)}')
    return witness._replace(pre_step_ok=True)


def interior_samples(interval: SyncInterval, count: int, bits: int = DEFAULT_BITS) -> list:
    """
    𝒥 の内部の2進有理数の標本点

    端点の包み込みが離れるまで精度を上げ、その間を 2^s 等分した点を使う。
    """
    lo, hi = interval.sync_bounds
    while True:
        a, b = refine(lo, bits).hi, refine(hi, bits).lo
        if a < b:
            break
        bits *= 2
    s = 1
    while (1 << s) <= count:
        s += 1
    step_size = (b - a) / (1 << s)
    return [a + step_size * j for j in range(1, count + 1)]


#
# 桁の証明
#

def _row(check: str, ok: bool, detail: str = '') -> dict:
    if not ok:
        logger.error(f'check failed: {check} {detail}')
    return {'check': check, 'ok': bool(ok), 'detail': detail}


def _as_digits(seq) -> list:
    return [Digit(*d) if isinstance(d, tuple) else Digit(d, 1) for d in seq]


def _prefix_row(check: str, x, alpha: AlphaParam, expected: list) -> dict:
    expected = _as_digits(expected)
    got = orbit(x, alpha, len(expected), stop_at_l0=False).digits
    ok = got == expected
    detail = '' if ok else f'got {[str(d) for d in got]} expected {[str(d) for d in expected]}'
    return _row(check, ok, detail)


def _small_endpoint_rows(interval: SyncInterval, periods: int) -> list:
    k, v, n = interval.k, interval.v, interval.n
    rows = []
    vp = prime(v)
    reverse_vp = vp.reverse()
    blocks = small_blocks(k, n)
    head = [-1] * (n - 3) + [-2]
    tail = n - 2

    # η: d̄ = d̄(k, v(v')^∞)、d̲ は純周期
    at = AlphaParam(interval.eta, 3, n)
    units = len(v.pattern) + periods * len(vp.pattern)
    rows.append(_prefix_row(
        f'eta upper k={k} v={v}', at.r0, at,
        upper_digits_small(k, expand_periodic(v.pattern, vp.pattern, units)),
    ))
    period = lower_digits_small(k, v, n)[:-tail] + head
    rows.append(_prefix_row(f'eta lower k={k} v={v}', at.l0, at, period * periods))

    # ζ: r_{S̄} = ℓ_0、d̲ は (←v')^∞ から
    at = AlphaParam(interval.zeta, 3, n)
    record = orbit(at.r0, at, len(v.pattern), stop_at_l0=False)
    ok = record.digits == _as_digits(upper_digits_small(k, v)) and compare(record.points[-1], at.l0) == 0
    rows.append(_row(f'zeta upper k={k} v={v}', ok))
    if v.pattern == '1':
        expected = blocks['w'] * (k + 1) + blocks['D'] * periods
    else:
        expected = lower_digits_small(k, reverse_vp.pattern * periods, n)[:-tail]
    rows.append(_prefix_row(f'zeta lower k={k} v={v}', at.l0, at, expected))

    R = right_matrix(k, reverse_vp, n)
    ok = compare(apply(R, at.r0), at.r0) == 0
    rows.append(_row(f'zeta fixed by R(k, reverse(v\')) k={k} v={v}', ok))

    if v.pattern == '1':
        at = AlphaParam(interval.omega, 3, n)
        expected = blocks['w'] * k + blocks['C'] * periods
        rows.append(_prefix_row(f'omega lower k={k} v=1', at.l0, at, expected))
    return rows


def _large_endpoint_rows(interval: SyncInterval, periods: int) -> list:
    k, v, n = interval.k, interval.v, interval.n
    K = -k
    rows = []
    vp = prime(v)
    reverse_vp = vp.reverse()

    at = AlphaParam(interval.eta, 3, n)
    units = len(v.pattern) + periods * len(vp.pattern)
    rows.append(_prefix_row(
        f'eta lower k={k} v={v}', at.l0, at,
        _lower_large(K, expand_periodic(v.pattern, vp.pattern, units)),
    ))

    at = AlphaParam(interval.zeta, 3, n)
    rows.append(_prefix_row(
        f'zeta lower k={k} v={v}', at.l0, at, _lower_large(K, reverse_vp.pattern) * periods,
    ))

    # K = 1 では ℰ が負のべきを持つので上側は大きいαの領域だけで確かめる
    if interval.regime is Regime.LARGE:
        if v.is_single():
            blocks = large_blocks(K, n)
            cycle = []
            for digit, exp in blocks['G'] + blocks['E'] * len(v.pattern):
                cycle.extend([digit] * exp)
            expected = digits_large(k, v, n).upper + cycle * periods
        else:
            expected = digits_large(k, reverse_vp.pattern * periods, n).upper
        rows.append(_prefix_row(f'zeta upper k={k} v={v}', at.r0, at, expected))
    return rows


def digit_certificates(interval: SyncInterval, samples: int = 8, periods: int = 2, beta_n: int = 2) -> list:
    """
    桁の展開を確かめる

    内部の標本点では上側と下側の桁の接頭辞、端点では周期的な展開、
    大きいαの領域では β の存在（数値的に見つけた点の桁の接頭辞）を確かめる。

    Returns:
        list: {'check', 'ok', 'detail'} の行
    """
    k, v, n = interval.k, interval.v, interval.n
    rows = []

    if interval.is_small:
        upper = upper_digits_small(k, v)
        lower = lower_digits_small(k, v, n)
    else:
        upper = digits_large(k, v, n).upper
        lower = _lower_large(-k, v.pattern)

    for x in interior_samples(interval, samples):
        at = AlphaParam(x, 3, n)
        rows.append(_prefix_row(f'interior upper k={k} v={v} alpha={x}', at.r0, at, upper))
        rows.append(_prefix_row(f'interior lower k={k} v={v} alpha={x}', at.l0, at, lower))

    if interval.is_small:
        rows.extend(_small_endpoint_rows(interval, periods))
    else:
        rows.extend(_large_endpoint_rows(interval, periods))
        if interval.regime is Regime.LARGE:
            try:
                beta = beta_witness(-k, v, beta_n, n)
                rows.append(_row(f'beta k={k} v={v} N={beta_n}', beta.ok, f'alpha={beta.alpha}'))
            except SyncError as e:
                rows.append(_row(f'beta k={k} v={v} N={beta_n}', False, str(e)))
    return rows


#
# 分割
#

def children(regime, v: TreeWord, q_max: int, n: int = 3) -> list:
    """
    子の語を 𝓘 の右から左への順（SMALL）に並べる

    1文字の c では Θ_{-1}(c) = c+1 が先頭、続いて Θ_q(c)（c = 1 は q ≥ 1）。
    それ以外の語では Θ_0, Θ_1, ...。中間の領域では刈り込んだ木の子だけを返す。
    """
    regime = Regime.parse(regime)
    if v.path is None:
        v = TreeWord(v.pattern, _word_path(v))
    out = []
    if v.is_single():
        qs = [-1] + list(range(1 if v.pattern == '1' else 0, q_max + 1))
    else:
        qs = list(range(0, q_max + 1))
    if regime is Regime.MID and v.c_letters[0] == n - 2:
        return []
    for q in qs:
        child = theta(v, q)
        if regime is Regime.MID and max(child.c_letters) > n - 2:
            continue
        out.append(child)
    return out


def _root_rows(regime: Regime, k: int, n: int) -> list:
    """根の語に固有の一致（円柱の隣接と領域の境界）"""
    rc = regime_constants(n)
    rows = []
    one = endpoints(regime, k, ROOT, n)
    if regime is Regime.SMALL:
        if k == 1:
            rows.append(_row('gamma = omega(1,1)', compare(one.omega, rc.gamma) == 0))
        nxt = endpoints(regime, k + 1, ROOT, n)
        rows.append(_row(f'omega({k + 1},1) = zeta({k},1)', compare(nxt.omega, one.zeta) == 0))
    elif regime is Regime.LARGE:
        if k == -2:
            rows.append(_row('epsilon = omega(-2,1)', compare(one.omega, rc.epsilon) == 0))
        nxt = endpoints(regime, k - 1, ROOT, n)
        rows.append(_row(f'omega({k - 1},1) = zeta({k},1)', compare(nxt.omega, one.zeta) == 0))
    else:
        rows.append(_row('zeta(-1,1) = epsilon', compare(one.zeta, rc.epsilon) == 0))
        last = endpoints(regime, -1, TreeWord('1' * (n - 2)), n)
        rows.append(_row(f'eta(-1,{n - 2}) = gamma', compare(last.eta, rc.gamma) == 0))
        rows.append(_row(
            f'I(-1,{n - 2}) = J(-1,{n - 2})',
            compare(last.omega, rc.gamma) == 0 and compare(last.eta, rc.gamma) == 0,
        ))
        rows.append(_row('I(-1,1) = [gamma, epsilon]',
                         compare(one.omega, rc.gamma) == 0 and compare(one.zeta, rc.epsilon) == 0))
    return rows


def partition_check(regime, k: int, parent, q_max: int, n: int = 3) -> list:
    """
    𝓘_{k,parent} = 𝒥_{k,parent} ∪ (子の 𝓘) の分割を確かめる

    確かめる内容
      - 各区間の端点の順序と 𝒥 ⊂ 𝓘
      - 先頭の子の ω が親の ω に一致し、続く子は ω_{q} = ζ_{q-1} で隣接する
      - 子の 𝓘 が親の 𝓘 ∖ 𝒥 に入り、𝒥 が互いに交わらない
      - ζ_{Θ_q} が q とともに η_parent に単調に近づく（数値）
      - 根の語では円柱どうしの隣接と領域の境界

    Returns:
        list: {'check', 'ok', 'detail'} の行
    """
    regime = Regime.parse(regime)
    if not isinstance(parent, TreeWord):
        parent = TreeWord.parse(str(parent))
    parent = TreeWord(parent.pattern, _word_path(parent))
    rows = []

    p = endpoints(regime, k, parent, n)
    rows.append(_row(f'order k={k} v={parent}', p.ordering_ok()))
    if parent.pattern == '1':
        rows.extend(_root_rows(regime, k, n))

    kids = [endpoints(regime, k, c, n) for c in children(regime, parent, q_max, n)]
    if not kids:
        return rows

    lo_w, hi_w = p.child_window
    prev = None
    for kid in kids:
        name = f'k={k} v={kid.v}'
        rows.append(_row(f'order {name}', kid.ordering_ok()))
        lo, hi = kid.cylinder_bounds
        inside = compare(lo_w, lo) <= 0 and compare(hi, hi_w) <= 0
        rows.append(_row(f'child inside parent window {name}', inside))
        if prev is None:
            rows.append(_row(f'omega {name} = omega k={k} v={parent}', compare(kid.omega, p.omega) == 0))
        else:
            rows.append(_row(f'omega {name} = zeta k={k} v={prev.v}', compare(kid.omega, prev.zeta) == 0))
        prev = kid

    # 𝒥 どうしは交わらない
    spans = sorted([p.sync_bounds] + [kid.sync_bounds for kid in kids], key=lambda b: refine(b[0], DEFAULT_BITS).lo)
    disjoint = all(compare(a[1], b[0]) <= 0 for a, b in zip(spans, spans[1:]))
    rows.append(_row(f'J disjoint k={k} v={parent}', disjoint))

    # Θ_{-1} を除いた子の ζ は η_parent に単調に近づく
    chain = [kid for kid in kids if kid.v.path[-1] >= 0]
    gaps = [abs(float(kid.zeta) - float(p.eta)) for kid in chain]
    monotone = all(b < a for a, b in zip(gaps, gaps[1:]))
    rows.append(_row(f'zeta(theta_q) -> eta k={k} v={parent}', monotone, ' '.join(f'{g:.3e}' for g in gaps)))
    return rows


#
# 列挙と測度
#

def k_values(regime, k_max: int) -> list:
    """領域で使う k（LARGE は -2, ..., -(k_max+1)）"""
    regime = Regime.parse(regime)
    if regime is Regime.SMALL:
        return list(range(1, k_max + 1))
    if regime is Regime.MID:
        return [-1]
    return [-K for K in range(2, k_max + 2)]


def enumerate_intervals(regime, n: int = 3, k_max: int = 3, len_max: int = 5, q_cap: int = 3) -> list:
    """
    上限までの語と k について区間を列挙し、(領域, |k|, 経路) の順に返す

    LARGE では k = -2, ..., -(k_max+1) を使う。
    """
    regime = Regime.parse(regime)
    trimmed = n if regime is Regime.MID else None
    words = enumerate_tree(ROOT, len_max, q_cap, trimmed_n=trimmed)
    out = []
    for k in k_values(regime, k_max):
        for v in words:
            out.append(endpoints(regime, k, v, n))
        logger.info(f'{regime.value} k={k}: {len(words)} intervals')
    out.sort(key=lambda s: s.key)
    return out


def measure_report(regime, n: int = 3, k_max: int = 3, len_max: int = 5, q_cap: int = 3,
                   bits: int = DEFAULT_BITS, digits: int = 12) -> list:
    """
    列挙した 𝒥 の長さの和の割合を k の上限ごとに累積して返す

    長さは保証付きの下界で足し合わせるので、表示する値も下界になる。

    Returns:
        list: 行 {'regime', 'n', 'k_max', 'len_max', 'q_cap', 'intervals', 'sum_dec',
              'coverage', 'window_coverage'}
    """
    regime = Regime.parse(regime)
    lo, hi = _regime_window(regime, n)
    regime_length = refine(hi, bits).hi - refine(lo, bits).lo

    intervals = enumerate_intervals(regime, n, k_max, len_max, q_cap)
    by_k = {}
    for s in intervals:
        by_k.setdefault(s.k, []).append(s)

    rows = []
    total = Fraction(0)
    window = Fraction(0)
    count = 0
    for level, k in enumerate(k_values(regime, k_max), start=1):
        for s in by_k.get(k, []):
            total += length_lower_bound(*s.sync_bounds, bits)
            count += 1
            if s.v.pattern == '1':
                # 𝓘_{k,1} の長さは上界が必要なので包み込みの外側を使う
                a, b = s.cylinder_bounds
                window += refine(b, bits).hi - refine(a, bits).lo
        rows.append({
            'regime': regime.value,
            'n': n,
            'k_max': level,
            'len_max': len_max,
            'q_cap': q_cap,
            'intervals': count,
            'sum_dec': decimal_string(total, digits),
            'coverage': decimal_string(total / regime_length, digits),
            'window_coverage': decimal_string(total / window, digits) if window else decimal_string(0, digits),
        })
    return rows


#
# 同期しない点
#

class NonSyncReport(NamedTuple):
    regime: Regime
    k: int
    path: tuple
    word: TreeWord
    lo: RealAlgebraic
    hi: RealAlgebraic
    nested: bool
    midpoint: Fraction
    upper_confined: int
    lower_confined: int
    guaranteed: tuple
    eta_confined: object
    synchronized: bool
    depth: int = 0

    @property
    def prefix_ok(self) -> bool:
        """中点の桁が語から決まる長さ（depth まで）閉じ込められている"""
        g_upper, g_lower = self.guaranteed
        return self.upper_confined >= g_upper and self.lower_confined >= g_lower

    @property
    def ok(self) -> bool:
        """
        入れ子で、中点の接頭辞が閉じ込められている

        SMALL では η の軌道が depth 歩すべて閉じ込められていることも要求する。
        中点は2進有理数で、語から決まる接頭辞より先は同期するか極で止まりうる。
        """
        if not (self.nested and self.prefix_ok):
            return False
        if self.regime is Regime.SMALL:
            return self.eta_confined is True
        return True

    def row(self, digits: int = 20) -> dict:
        return {
            'regime': self.regime.value,
            'k': self.k,
            'path': list(self.path),
            'v': self.word.text,
            'lo': decimal_string(self.lo, digits),
            'hi': decimal_string(self.hi, digits),
            'nested': self.nested,
            'midpoint': decimal_string(self.midpoint, digits),
            'upper_confined': self.upper_confined,
            'lower_confined': self.lower_confined,
            'guaranteed': list(self.guaranteed),
            'depth': self.depth,
            'eta_confined': self.eta_confined,
            'synchronized': self.synchronized,
            'ok': self.ok,
        }


def _confined_prefix(digits, allowed: set) -> int:
    count = 0
    for d in digits:
        if (d.k, d.l) not in allowed:
            break
        count += 1
    return count


def nonsync_point(regime, k: int, q_path, n: int = 3, depth: int = 200) -> NonSyncReport:
    """
    経路 q_path に沿って 𝓘 ∖ 𝒥 の入れ子をたどり、同期しない点を包み込む

    最後の包み込みの中点（2進有理数）で depth 歩の軌道を作り、桁が
    SMALL では d̄ ⊂ {k, k+1}、d̲ ⊂ {-1, -2}、LARGE では d̲ ⊂ {k, k-1}、
    b̄ ⊂ {(1,1), (1,2)} にとどまる歩数を数える。
    SMALL では η そのものの軌道が depth 歩まで閉じ込められることも確かめる。
    中点に要求する長さ guaranteed は語から決まる接頭辞の長さで、depth で打ち切る。
    """
    regime = Regime.parse(regime)
    _check_k(regime, k)
    v = ROOT
    current = endpoints(regime, k, v, n)
    lo, hi = current.child_window
    nested = True
    for q in q_path:
        v = theta(v, q)
        current = endpoints(regime, k, v, n)
        new_lo, new_hi = current.child_window
        if compare(new_lo, lo) < 0 or compare(hi, new_hi) < 0:
            nested = False
            logger.error(f'enclosure not nested at v={v}')
        lo, hi = new_lo, new_hi

    a, b = refine(lo, DEFAULT_BITS).hi, refine(hi, DEFAULT_BITS).lo
    bits = DEFAULT_BITS
    while a >= b:
        bits *= 2
        a, b = refine(lo, bits).hi, refine(hi, bits).lo
    mid = (a + b) / 2

    if regime is Regime.SMALL:
        upper_ok = {(k, 1), (k + 1, 1)}
        lower_ok = {(-1, 1), (-2, 1)}
        guaranteed = (len(v.pattern), len(lower_digits_small(k, v, n)) - (n - 2))
    else:
        upper_ok = {(1, 1), (1, 2)}
        lower_ok = {(k, 1), (k - 1, 1)}
        guaranteed = (len(digits_large(k, v, n).upper), len(v.pattern))
    guaranteed = tuple(min(g, depth) for g in guaranteed)

    at = AlphaParam(mid, 3, n)
    upper = orbit(at.r0, at, depth, stop_at_l0=False)
    lower = orbit(at.l0, at, depth, stop_at_l0=False)
    synchronized = find_sync(at, n, depth) is not None

    eta_confined = None
    if regime is Regime.SMALL:
        at_eta = AlphaParam(current.eta, 3, n)
        up = orbit(at_eta.r0, at_eta, depth, stop_at_l0=False).digits
        down = orbit(at_eta.l0, at_eta, depth, stop_at_l0=False).digits
        eta_confined = (
            len(up) == depth and _confined_prefix(up, upper_ok) == depth
            and len(down) == depth and _confined_prefix(down, lower_ok) == depth
        )

    return NonSyncReport(
        regime, k, tuple(q_path), v, lo, hi, nested, mid,
        _confined_prefix(upper.digits, upper_ok), _confined_prefix(lower.digits, lower_ok),
        guaranteed, eta_confined, synchronized, depth,
    )


#
# χ と β
#

def chi_point(k: int, v, n: int = 3) -> RealAlgebraic:
    """
    R_{k,v}·r_0(χ) = 0 となる 𝒥_{k,v} の内部の点 χ（小さいαの領域）

    r_0(χ) = R^-1·0 なので χ は基礎体の元になる。

    Raises:
        SyncError: k < 1、または χ が 𝒥 の内部にない
    """
    if k < 1:
        raise SyncError(f'chi is defined for the small regime only: k={k}')
    interval = endpoints(Regime.SMALL, k, v, n)
    R = right_matrix(k, interval.v, n)
    x = as_real(apply(R.inverse(), 0))
    chi = x / triangle_constants(3, n).t
    if not (compare(interval.zeta, chi) < 0 and compare(chi, interval.eta) < 0):
        raise SyncError(f'chi {decimal_string(chi, 12)} is not inside J_{k},{interval.v}')
    return chi


class BetaWitness(NamedTuple):
    alpha: Fraction
    N: int
    bits: int
    ok: bool


def beta_witness(K: int, v, N: int = 2, n: int = 3, max_bits: int = 4096) -> BetaWitness:
    """
    η_{-K,v} の少し左で上側の桁が [b̄(-K,v) (1,1)]^N で始まる有理数 β を探す

    A C R_{-K,v} が r_0(η) を固定するので、η に十分近い左側の点で
    この周期が N 回続く。2^-s ずつ η に近づけ、桁の接頭辞を厳密に確かめる。

    Raises:
        SyncError: max_bits までに見つからない
    """
    interval = endpoints(Regime.LARGE, -K, v, n)
    block = _as_digits(digits_large(-K, interval.v, n).upper + [(1, 1)])
    expected = block * N

    bits = 8
    while bits <= max_bits:
        candidate = refine(interval.eta, bits).lo - Fraction(1, 1 << bits)
        if compare(candidate, interval.omega) > 0:
            at = AlphaParam(candidate, 3, n)
            got = orbit(at.r0, at, len(expected), stop_at_l0=False).digits
            if got == expected:
                logger.debug(f'beta found at {bits} bits for K={K} v={interval.v}')
                return BetaWitness(candidate, N, bits, True)
        bits *= 2
    raise SyncError(f'no beta witness for K={K} v={interval.v} N={N} within {max_bits} bits')


#
# 位置の特定
#

class LocateResult(NamedTuple):
    interval: SyncInterval
    found: bool
    depth: int


def locate(alpha, n: int = 3, depth: int = 12, q_cap: int = 12) -> LocateResult:
    """
    α を含む 𝒥 を分割の木を下りながら探す

    SMALL では r_0 の最初の桁、LARGE では ℓ_0 の最初の桁から k を決め、
    語 1 から子の 𝓘 を順にたどる。depth 段で見つからなければ最も深い 𝓘 を返す。
    """
    if not isinstance(alpha, AlphaParam):
        alpha = AlphaParam(alpha, 3, n)
    if compare(alpha.value, 0) <= 0 or compare(alpha.value, 1) >= 0:
        raise SyncError(f'alpha must be inside (0, 1): {alpha.decimal(12)}')
    regime = regime_of(alpha, n)
    if regime is Regime.SMALL:
        k = step(alpha.r0, alpha)[0].k
    elif regime is Regime.LARGE:
        k = step(alpha.l0, alpha)[0].k
    else:
        k = -1

    current = endpoints(regime, k, ROOT, n)
    for level in range(depth + 1):
        if current.contains(alpha):
            return LocateResult(current, True, level)
        if level == depth:
            break
        nxt = None
        for child in children(regime, current.v, q_cap, n):
            candidate = endpoints(regime, k, child, n)
            if candidate.in_cylinder(alpha):
                nxt = candidate
                break
        if nxt is None:
            break
        current = nxt
    logger.debug(f'locate stopped at k={k} v={current.v}')
    return LocateResult(current, False, level)


if __name__ == '__main__':

    def main():
        logging.basicConfig(level=logging.INFO)
        s = endpoints(Regime.SMALL, 1, ROOT, 3)
        print(s.row(12))
        print(verify_sync(Fraction(3, 20), s))
        for row in partition_check(Regime.SMALL, 1, ROOT, 3, 3):
            print(row)
        return 0

    main()
