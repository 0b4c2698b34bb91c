import sys
from fractions import Fraction
from pathlib import Path

import pytest

# bin/sync_intervals.py と同じように lib をパスに加える
app_home = Path(__file__).parent.joinpath('..').resolve()
lib_dir = app_home.joinpath('lib')
if str(lib_dir) not in sys.path:
    sys.path.append(str(lib_dir))

from alpha_cf import quad_solve_between, triangle_constants  # noqa: E402

BIN_PATH = app_home.joinpath('bin', 'sync_intervals.py')


@pytest.fixture
def fields():
    """n = 3, 4, 5 の m = 3 の体"""
    return {n: triangle_constants(3, n).field for n in (3, 4, 5)}


@pytest.fixture
def sqrt():
    """n = 3 の体の上の √N（N は平方でない正の整数）"""
    field = triangle_constants(3, 3).field

    def _sqrt(N: int):
        return quad_solve_between(field.scalar(1), 0, -N, 0, N)

    return _sqrt


@pytest.fixture
def golden_ratio(sqrt):
    return (1 + sqrt(5)) / 2


@pytest.fixture
def db_path(tmp_path):
    return str(tmp_path.joinpath('db.json'))


@pytest.fixture
def bin_path():
    return BIN_PATH


@pytest.fixture
def alpha_in_j11():
    """𝒥_{1,1}（n = 3）の内部の点"""
    return Fraction(3, 20)
