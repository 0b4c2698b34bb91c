from db_util import (TABLE_INTERVALS, delete_intervals, drop_table, get_intervals,
                     get_measure_golden, insert_intervals, insert_measure_report)


def _row(regime, k, v, path, zeta='0.1'):
    return {'regime': regime, 'k': k, 'v': v, 'path': path, 'zeta_dec': zeta}


def test_insert_and_get_intervals(db_path):
    rows = [
        _row('small', 2, '1', []),
        _row('small', 1, '2', [-1]),
        _row('small', 1, '1', []),
        _row('large', -2, '1', []),
    ]
    assert insert_intervals(rows, 3, 1000.0, db_path=db_path) == 4

    found = get_intervals('small', 3, db_path=db_path)
    assert [(d['k'], d['v']) for d in found] == [(1, '1'), (1, '2'), (2, '1')]
    assert all(d['n'] == 3 and d['timestamp'] == 1000.0 for d in found)
    assert len(get_intervals(db_path=db_path)) == 4
    assert get_intervals('small', 4, db_path=db_path) == []
    assert [d['v'] for d in get_intervals('small', 3, k=2, db_path=db_path)] == ['1']


def test_insert_intervals_replaces(db_path):
    insert_intervals([_row('small', 1, '1', [], '0.1')], 3, 1.0, db_path=db_path)
    insert_intervals([_row('small', 1, '1', [], '0.2')], 3, 2.0, db_path=db_path)
    found = get_intervals('small', 3, db_path=db_path)
    assert len(found) == 1
    assert found[0]['zeta_dec'] == '0.2'


def test_delete_and_drop(db_path):
    insert_intervals([_row('small', 1, '1', []), _row('mid', -1, '1', [])], 3, 1.0, db_path=db_path)
    assert delete_intervals('small', 3, db_path=db_path) == 1
    assert [d['regime'] for d in get_intervals(db_path=db_path)] == ['mid']
    drop_table(TABLE_INTERVALS, db_path=db_path)
    assert get_intervals(db_path=db_path) == []


def test_measure_golden(db_path):
    caps = {'k_max': 2, 'len_max': 3, 'q_cap': 2}
    rows = [
        {'regime': 'small', 'n': 3, 'k_max': 1, 'coverage': '0.5'},
        {'regime': 'small', 'n': 3, 'k_max': 2, 'coverage': '0.6'},
    ]
    assert get_measure_golden('small', 3, caps, db_path=db_path) is None
    insert_measure_report(rows, caps, 1.0, db_path=db_path)
    assert get_measure_golden('small', 3, caps, db_path=db_path) == rows
    assert get_measure_golden('small', 3, dict(caps, q_cap=3), db_path=db_path) is None

    # 同じ caps なら置き換え
    insert_measure_report(rows[:1], caps, 2.0, db_path=db_path)
    assert get_measure_golden('small', 3, caps, db_path=db_path) == rows[:1]

    # 空の結果は保存しない
    insert_measure_report([], caps, 3.0, db_path=db_path)
    assert get_measure_golden('small', 3, caps, db_path=db_path) == rows[:1]
