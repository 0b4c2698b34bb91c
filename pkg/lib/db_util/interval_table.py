#!/usr/bin/env python

import logging
import os

#
# tinydb
#
from tinydb import Query, TinyDB

# JSONファイル
DB_DIR = os.path.dirname(__file__)
DB_PATH = os.path.join(DB_DIR, 'db.json')

# テーブルの種類
TABLE_INTERVALS = 'INTERVALS'
TABLE_MEASURE = 'MEASURE'

logger = logging.getLogger(__name__)


# テーブルを破棄するショートカット
def drop_table(table_name: str, db_path: str = None):
    with TinyDB(db_path or DB_PATH) as db:
        db.drop_table(table_name)


#
# 同期区間
#

def insert_intervals(rows: list, n: int, timestamp: float, db_path: str = None, table_name: str = TABLE_INTERVALS) -> int:
    """
    区間の行をテーブルに保存する。

    (regime, n, k, path) が同じものはあれば置き換える。
    格納するドキュメントの形式はこの通り
    {
        'regime': 'small', 'n': 3, 'k': 1, 'v': '1', 'path': [],
        'zeta_exact': {...}, 'zeta_dec': '0.10435...', ...,
        'timestamp': xxx
    }

    Args:
        rows (list): SyncInterval.row() の辞書のリスト
        n (int): 三角群の符号
        timestamp (float): 実行した時点のタイムスタンプ
        db_path (str, optional): JSONファイル Defaults to DB_PATH.
        table_name (str, optional): テーブル名 Defaults to TABLE_INTERVALS.

    Returns:
        int: 保存した行の数
    """
    q = Query()

    with TinyDB(db_path or DB_PATH) as db:
        table = db.table(table_name)
        for row in rows:
            doc = dict(row)
            doc['n'] = n
            doc['timestamp'] = timestamp
            cond = (q.regime == doc['regime']) & (q.n == n) & (q.k == doc['k']) & (q.path == doc['path'])
            table.upsert(doc, cond)

    logger.info(f'{len(rows)} intervals stored in {table_name}')
    return len(rows)


def get_intervals(regime: str = None, n: int = None, k: int = None, db_path: str = None, table_name: str = TABLE_INTERVALS) -> list:
    """
    保存した区間を検索する。

    Args:
        regime (str, optional): 'small', 'mid', 'large' のどれか。省略するとすべて
        n (int, optional): 三角群の符号
        k (int, optional): k の値

    Returns:
        list: 見つかった行を (regime, |k|, path) の順に並べたもの。なければ空のリスト。
    """
    q = Query()
    cond = q.regime.exists()
    if regime is not None:
        cond &= q.regime == regime
    if n is not None:
        cond &= q.n == n
    if k is not None:
        cond &= q.k == k

    with TinyDB(db_path or DB_PATH) as db:
        table = db.table(table_name)
        searched = table.search(cond)

    return sorted(searched, key=lambda d: (d['regime'], abs(d['k']), d['path']))


def delete_intervals(regime: str, n: int, db_path: str = None, table_name: str = TABLE_INTERVALS) -> int:
    """
    領域と n を指定して区間を削除する。

    Returns:
        int: 削除した数
    """
    q = Query()
    with TinyDB(db_path or DB_PATH) as db:
        table = db.table(table_name)
        removed = table.remove((q.regime == regime) & (q.n == n))
    return len(removed)


#
# 測度の表（固定した基準値）
#

def _caps_cond(q, regime: str, n: int, caps: dict):
    return (
        (q.regime == regime) & (q.n == n)
        & (q.caps.k_max == caps['k_max'])
        & (q.caps.len_max == caps['len_max'])
        & (q.caps.q_cap == caps['q_cap'])
    )


def insert_measure_report(rows: list, caps: dict, timestamp: float, db_path: str = None, table_name: str = TABLE_MEASURE):
    """
    measure_report の結果を基準値として保存する。

    同じ (regime, n, caps) の基準値があれば置き換える。
    {
        'regime': 'small', 'n': 3,
        'caps': {'k_max': 3, 'len_max': 5, 'q_cap': 3},
        'doc_data': [ measure_report の行, ... ],
        'timestamp': xxx
    }

    Args:
        rows (list): measure_report の行のリスト（空でないこと）
        caps (dict): k_max, len_max, q_cap
        timestamp (float): 実行した時点のタイムスタンプ
    """
    if not rows:
        logger.error('empty measure report is not stored')
        return

    regime = rows[0]['regime']
    n = rows[0]['n']
    doc = {
        'regime': regime,
        'n': n,
        'caps': {key: caps[key] for key in ('k_max', 'len_max', 'q_cap')},
        'doc_data': rows,
        'timestamp': timestamp,
    }

    q = Query()
    with TinyDB(db_path or DB_PATH) as db:
        table = db.table(table_name)
        table.upsert(doc, _caps_cond(q, regime, n, caps))


def get_measure_golden(regime: str, n: int, caps: dict, db_path: str = None, table_name: str = TABLE_MEASURE):
    """
    保存した基準値を取り出す。

    Returns:
        list: measure_report の行のリスト。保存されていなければ None
    """
    q = Query()
    with TinyDB(db_path or DB_PATH) as db:
        table = db.table(table_name)
        searched = table.get(_caps_cond(q, regime, n, caps))

    if searched is None:
        return None
    return searched['doc_data']
