#!/usr/bin/env python

"""
設定

grids.yaml（検査の格子、コマンドごとの上限）を読み込み、コマンドラインの指定と
合わせて Config を作る。優先順位はコマンドライン > grids.yaml > このモジュールの定数。
名前付き定数（gamma, zeta:1:1 など）の α もここで解決する。
"""

import copy
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import yaml

from .algebra import DEFAULT_PRECISION_BITS, triangle_constants
from .dynamics import regime_constants
from .errors import AlphaCfError, UsageError
from .sync import Regime, chi_point, endpoints
from .words import TreeWord, tree_path

logger = logging.getLogger(__name__)

__all__ = [
    'GRIDS_PATH', 'DEFAULT_SECTIONS', 'OUTPUT_FORMATS', 'Config',
    'load_yaml', 'load_manifest', 'section', 'parse_word', 'regime_for_k', 'resolve_alpha',
]

# 同じディレクトリにある格子のマニフェスト
GRIDS_PATH = Path(__file__).with_name('grids.yaml')

OUTPUT_FORMATS = ('table', 'json', 'csv')

# grids.yaml がないときの値
DEFAULT_SECTIONS = {
    'identities': {
        'n_max': 8, 'k_max': 5, 'vec_len': 3, 'entry_max': 4, 'u_values': [-1, 0, 2],
        'words_len': 5, 'words_q': 3,
    },
    'tree': {'len_max': 7, 'q_cap': 5},
    'intervals': {'k_max': 3, 'len_max': 5, 'q_cap': 3},
    'measure': {'k_max': 3, 'len_max': 5, 'q_cap': 3},
    'orbit': {'steps': 20},
    'verify': {'scan_cap': 200, 'samples': 8},
    'figure': {'samples': 200, 'depth': 3, 'k_cap': 4},
    'suite': {
        'mn_max': 8,
        'words': {'len_max': 11, 'q_cap': 6},
        'partition': {'n_values': [3, 4, 5], 'k_max': 6, 'len_max': 7, 'q_max': 5},
        'certificates': {'k_max': 2, 'len_max': 3, 'q_cap': 2, 'samples': 4},
        'sync_samples': 50,
        'nonsync': {'k': 1, 'depth': 5, 'paths': 10, 'steps': 200},
    },
}


def load_yaml(file_path: str) -> dict:
    """
    YAMLファイルを読み取って辞書型にして返却する

    Args:
        file_path (str): YAMLファイルのパス

    Returns:
        dict: 読み取ったデータ
    """
    try:
        with open(file_path) as f:
            try:
                d = yaml.safe_load(f)
                return d
            except yaml.YAMLError as e:
                logger.error(e)
    except OSError as e:
        logger.error(e)
    return None


def _merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_manifest(file_path=GRIDS_PATH) -> dict:
    """
    grids.yaml を読み、足りない項目を DEFAULT_SECTIONS で補う

    読めなかったときは DEFAULT_SECTIONS のコピーを返す。
    """
    d = load_yaml(file_path)
    if d is None:
        logger.error(f'manifest {file_path} not loaded, using built-in defaults')
        d = {}
    if not isinstance(d, dict):
        raise UsageError(f'manifest {file_path} is not a mapping')
    return _merge(DEFAULT_SECTIONS, d)


def section(manifest: dict, name: str) -> dict:
    return copy.deepcopy(manifest.get(name) or DEFAULT_SECTIONS.get(name, {}))


@dataclass
class Config:
    """
    コマンドの設定

    Attributes:
        n, m (int): 三角群の符号（同期区間の計算は m = 3 のみ）
        regime (str): 'small', 'mid', 'large'
        k_max, len_max, q_cap (int): 列挙の上限
        precision_bits (int): 包み込みの精度（64以上）
        digits (int): 小数表示の桁数
        fmt (str): 'table', 'json', 'csv'
        out (str): 出力ファイル（None なら標準出力）
    """

    n: int = 3
    m: int = 3
    regime: str = 'small'
    k_max: int = 3
    len_max: int = 5
    q_cap: int = 3
    precision_bits: int = DEFAULT_PRECISION_BITS
    digits: int = 20
    fmt: str = 'table'
    out: str = None

    def __post_init__(self):
        if self.m < 3 or self.n < self.m:
            raise UsageError(f'need 3 <= m <= n: m={self.m} n={self.n}')
        for name in ('k_max', 'len_max', 'q_cap', 'digits'):
            if getattr(self, name) < 1:
                raise UsageError(f'{name} must be positive: {getattr(self, name)}')
        if self.precision_bits < DEFAULT_PRECISION_BITS:
            raise UsageError(f'precision must be at least {DEFAULT_PRECISION_BITS} bits: {self.precision_bits}')
        if self.fmt not in OUTPUT_FORMATS:
            raise UsageError(f'unknown format: {self.fmt}')
        try:
            self.regime = Regime.parse(self.regime).value
        except AlphaCfError as e:
            raise UsageError(str(e)) from None

    @property
    def caps(self) -> dict:
        return {'k_max': self.k_max, 'len_max': self.len_max, 'q_cap': self.q_cap}

    @classmethod
    def from_args(cls, args, defaults: dict = None) -> 'Config':
        """
        argparse の結果から作る。指定のない上限は defaults（grids.yaml の節）から取る
        """
        defaults = defaults or {}

        def pick(name, fallback):
            value = getattr(args, name, None)
            if value is None:
                value = defaults.get(name, fallback)
            return value

        return cls(
            n=args.n,
            m=args.m,
            regime=pick('regime', 'small'),
            k_max=pick('k_max', 3),
            len_max=pick('len_max', 5),
            q_cap=pick('q_cap', 3),
            precision_bits=args.precision_bits,
            digits=pick('digits', 20),
            fmt=args.format,
            out=args.out,
        )


#
# 語と α の指定
#

def parse_word(text: str) -> TreeWord:
    """
    '1', '313', '3 1 3', '3,1,3' の形の語を読み、木の構成経路を付けて返す

    Raises:
        UsageError: 書き方が誤っている、または木の語でない
    """
    try:
        v = TreeWord.parse(text)
    except AlphaCfError as e:
        raise UsageError(str(e)) from None
    path = tree_path(v)
    if path is None:
        raise UsageError(f'{text!r} is not a word of the tree')
    return TreeWord(v.pattern, path)


def regime_for_k(k: int, regime: str = None) -> Regime:
    """k の符号から領域を決める（k = -1 は MID、k ≤ -2 は LARGE）"""
    if k >= 1:
        found = Regime.SMALL
    elif k == -1:
        found = Regime.MID
    elif k <= -2:
        found = Regime.LARGE
    else:
        raise UsageError('k must be nonzero')
    if regime is not None and Regime.parse(regime) is not found:
        raise UsageError(f'k={k} does not belong to the {regime} regime')
    return found


def resolve_alpha(text: str, n: int = 3, m: int = 3):
    """
    α の指定を値にする

    有理数 'p/q' や小数 '0.15' のほか、次の名前付き定数を受け付ける。
      gamma, epsilon, delta
      zeta:k:v, eta:k:v, omega:k:v, chi:k:v（k ≥ 1 は小さいα、-1 は中間、≤ -2 は大きいα）

    Returns:
        FieldElement または RealAlgebraic

    Raises:
        UsageError: 書き方が誤っている、または m ≠ 3 で名前付き定数を使った
    """
    text = text.strip()
    field = triangle_constants(m, n).field
    try:
        return field.scalar(Fraction(text))
    except (ValueError, ZeroDivisionError):
        pass

    name, _, rest = text.partition(':')
    name = name.lower()
    if m != 3:
        raise UsageError(f'named constants need m = 3: {text!r}')

    if name in ('gamma', 'epsilon', 'delta'):
        if rest:
            raise UsageError(f'{name} takes no arguments: {text!r}')
        return getattr(regime_constants(n), name)

    if name in ('zeta', 'eta', 'omega', 'chi'):
        k_text, _, word_text = rest.partition(':')
        try:
            k = int(k_text)
        except ValueError:
            raise UsageError(f'bad k in {text!r}') from None
        if not word_text:
            raise UsageError(f'missing word in {text!r}')
        v = parse_word(word_text)
        regime = regime_for_k(k)
        if name == 'chi':
            if regime is not Regime.SMALL:
                raise UsageError(f'chi needs k >= 1: {text!r}')
            return chi_point(k, v, n)
        return getattr(endpoints(regime, k, v, n), name)

    raise UsageError(f'bad alpha: {text!r}')
