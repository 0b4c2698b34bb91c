#!/usr/bin/env python

"""
表の出力

行（辞書のリスト）を tabulate の表、JSON、CSV のどれかの文字列にする。
同じ入力からは同じバイト列になる。
"""

import csv
import io
import json
import logging
import sys
from pathlib import Path

from tabulate import tabulate

from .errors import UsageError

logger = logging.getLogger(__name__)

__all__ = ['headers_of', 'render', 'render_table', 'render_json', 'render_csv', 'write_output', 'summarize']


def headers_of(rows: list) -> list:
    """最初の行のキーの順に、後の行で現れたキーを追加した見出し"""
    headers = []
    for row in rows:
        for key in row:
            if key not in headers:
                headers.append(key)
    return headers


def _cell(value):
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True, separators=(',', ':'))
    if value is None:
        return ''
    return value


def render_table(rows: list, headers: list = None) -> str:
    """
    github 形式の表にする

    厳密値の列（*_exact）は幅が大きいので表では省く。
    """
    headers = headers or [h for h in headers_of(rows) if not h.endswith('_exact')]
    table = [[_cell(row.get(h)) for h in headers] for row in rows]
    return tabulate(table, headers=headers, tablefmt='github', disable_numparse=True)


def render_json(rows: list) -> str:
    return json.dumps(rows, sort_keys=True, indent=2, ensure_ascii=False)


def render_csv(rows: list, headers: list = None) -> str:
    headers = headers or headers_of(rows)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=headers, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({h: _cell(row.get(h)) for h in headers})
    return buf.getvalue()


def render(rows: list, fmt: str = 'table', headers: list = None) -> str:
    """
    Args:
        rows (list): 辞書のリスト
        fmt (str): 'table', 'json', 'csv'
        headers (list, optional): 列の順序

    Returns:
        str: 出力する文字列（末尾は改行）
    """
    if fmt == 'table':
        text = render_table(rows, headers) if rows else '(no rows)'
    elif fmt == 'json':
        text = render_json(rows)
    elif fmt == 'csv':
        text = render_csv(rows, headers)
    else:
        raise UsageError(f'unknown format: {fmt}')
    return text if text.endswith('\n') else text + '\n'


def write_output(text: str, out: str = None, stream=None) -> None:
    """out を指定すればファイルに、そうでなければ stream（標準出力）に書く"""
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        logger.info(f'wrote {path}')
        return
    if stream is None:
        stream = sys.stdout
    stream.write(text)


def summarize(rows: list, group_key: str = 'group') -> list:
    """
    {'check', 'ok', ...} の行をグループごとに数える

    Returns:
        list: {'group', 'checks', 'failed', 'ok'} の行
    """
    groups = {}
    for row in rows:
        g = groups.setdefault(row.get(group_key, ''), {'checks': 0, 'failed': 0})
        g['checks'] += 1
        if not row['ok']:
            g['failed'] += 1
    return [
        {'group': name, 'checks': g['checks'], 'failed': g['failed'], 'ok': g['failed'] == 0}
        for name, g in groups.items()
    ]
