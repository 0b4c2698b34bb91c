import io
import json

import pytest

from alpha_cf import (UsageError, headers_of, render, render_csv, render_json, render_table,
                      summarize, write_output)

ROWS = [
    {'k': 1, 'v': '1', 'zeta_exact': {'p': [1]}, 'zeta_dec': '0.10'},
    {'k': 2, 'v': '2 1 2', 'zeta_exact': {'p': [2]}, 'zeta_dec': '0.05', 'note': None},
]


def test_headers_of():
    assert headers_of(ROWS) == ['k', 'v', 'zeta_exact', 'zeta_dec', 'note']


def test_render_table_drops_exact_columns():
    text = render_table(ROWS)
    assert 'zeta_exact' not in text
    assert 'zeta_dec' in text
    assert text.splitlines()[1].startswith('|--')
    # 数値に見える文字列もそのまま
    assert '0.10' in text


def test_render_json_is_sorted():
    data = json.loads(render_json(ROWS))
    assert data == ROWS
    assert render(ROWS, 'json') == render(list(ROWS), 'json')
    assert render(ROWS, 'json').index('"k"') < render(ROWS, 'json').index('"v"')


def test_render_csv():
    text = render_csv(ROWS)
    lines = text.splitlines()
    assert lines[0] == 'k,v,zeta_exact,zeta_dec,note'
    assert lines[1] == '1,1,"{""p"":[1]}",0.10,'
    assert lines[2].endswith(',0.05,')


def test_render_empty_and_errors():
    assert render([], 'table') == '(no rows)\n'
    assert render([], 'json') == '[]\n'
    with pytest.raises(UsageError):
        render(ROWS, 'xml')


def test_write_output(tmp_path):
    buf = io.StringIO()
    write_output('abc\n', stream=buf)
    assert buf.getvalue() == 'abc\n'
    out = tmp_path.joinpath('sub', 'out.txt')
    write_output('xyz\n', out=str(out))
    assert out.read_text() == 'xyz\n'


def test_summarize():
    rows = [
        {'group': 'a', 'check': 'x', 'ok': True},
        {'group': 'a', 'check': 'y', 'ok': False},
        {'group': 'b', 'check': 'z', 'ok': True},
    ]
    assert summarize(rows) == [
        {'group': 'a', 'checks': 2, 'failed': 1, 'ok': False},
        {'group': 'b', 'checks': 1, 'failed': 0, 'ok': True},
    ]
