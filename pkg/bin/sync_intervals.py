#!/usr/bin/env python

#
# α連分数の同期区間を計算して検査します。
#
# ./sync_intervals.py tree --len-max 5
# ./sync_intervals.py intervals --regime small --k-max 2 --format json
# ./sync_intervals.py verify --k 1 --v 1 --alpha 3/20
# ./sync_intervals.py orbit --alpha gamma --start r0 --steps 10
# ./sync_intervals.py measure --regime small --freeze
# ./sync_intervals.py identities --n-max 5 --k-max 3
# ./sync_intervals.py suite
# ./sync_intervals.py figure-data --figure endpoint-curves --format csv
#
# 終了コード 0: 成功、1: 検査の失敗、2: 指定の誤り
#

import argparse
import logging
import sys
import time
from fractions import Fraction
from itertools import product
from pathlib import Path


# このファイルへのPathオブジェクト
app_path = Path(__file__)

# このファイルの名前から拡張子を除いてプログラム名を得る
app_name = app_path.stem

# アプリケーションのホームディレクトリはこのファイルからみて一つ上
app_home = app_path.parent.joinpath('..').resolve()

# libフォルダにおいたpythonスクリプトをインポートできるようにするための処理
lib_dir = app_home.joinpath('lib')
if str(lib_dir) not in sys.path:
    sys.path.append(str(lib_dir))

# lib/alpha_cf
from alpha_cf import (
    ROOT, AlphaCfError, AlphaParam, Config, Regime, UsageError,
    alpha0_suite, alpha1_suite, cylinder, decimal_string, derived, digit_certificates, double_prime,
    endpoints, enumerate_intervals, enumerate_tree, find_sync, frak_f, identity_suite, interior_samples,
    k_values, load_manifest, locate, measure_report, nonsync_point, orbit, parse_word, partition_check,
    prime, quad_solve_between, refine, regime_constants, regime_for_k, render, resolve_alpha, section,
    summarize, triangle_constants, verify_sync, word_suite, write_output,
)

# lib/db_util
from db_util import get_measure_golden, insert_intervals, insert_measure_report

#
# logディレクトリ
#
log_file = app_path.with_suffix('.log').name
log_dir = app_home.joinpath('log')
log_dir.mkdir(exist_ok=True)

# ログファイルのパス
log_path = log_dir.joinpath(log_file)

logger = logging.getLogger(__name__)

# ライブラリのログも拾えるようにルートに設定する
root_logger = logging.getLogger()
root_logger.setLevel(logging.INFO)

# フォーマット
formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')

# 標準エラー出力へのハンドラ（標準出力はデータ用）
stderr_handler = logging.StreamHandler(sys.stderr)
stderr_handler.setFormatter(formatter)
stderr_handler.setLevel(logging.INFO)
root_logger.addHandler(stderr_handler)

# ログファイルのハンドラ
file_handler = logging.FileHandler(log_path, 'a+')
file_handler.setFormatter(formatter)
file_handler.setLevel(logging.INFO)
root_logger.addHandler(file_handler)


def set_log_level(verbose: bool, quiet: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    for h in (root_logger, stderr_handler, file_handler):
        h.setLevel(level)


def emit(rows: list, config: Config, headers: list = None) -> None:
    write_output(render(rows, config.fmt, headers), config.out)


def failed_count(rows: list) -> int:
    return sum(1 for r in rows if not r['ok'])


#
# tree
#

def _safe(func, v) -> str:
    try:
        return str(func(v))
    except AlphaCfError:
        return ''


def cmd_tree(config: Config, args) -> int:
    """木の語を v', v'', 𝒟, 𝔣, 親、回文かどうかとともに並べる"""
    trimmed = config.n if config.regime == Regime.MID.value else None
    rows = []
    for v in enumerate_tree(ROOT, config.len_max, config.q_cap, trimmed_n=trimmed):
        rows.append({
            'v': v.text,
            'path': list(v.path),
            'parent': v.parent.text if v.path else '',
            'q': v.last_q if v.path else '',
            'prime': _safe(prime, v),
            'double_prime': _safe(double_prime, v),
            'derived': _safe(derived, v),
            'frak_f': _safe(frak_f, v),
            'palindrome': v.is_palindrome(),
        })
    emit(rows, config)
    return 0


#
# intervals
#

def cmd_intervals(config: Config, args) -> int:
    """区間の端点の表。--store で tinydb に保存する"""
    intervals = enumerate_intervals(config.regime, config.n, config.k_max, config.len_max, config.q_cap)
    rows = [s.row(config.digits, config.precision_bits) for s in intervals]
    if args.store:
        insert_intervals(rows, config.n, time.time(), db_path=args.db)
    emit(rows, config)
    return 0


#
# verify
#

def _locate_row(alpha, config: Config) -> dict:
    try:
        found = locate(alpha, config.n)
    except AlphaCfError as e:
        logger.info(e)
        return {}
    s = found.interval
    return {'regime': s.regime.value, 'k': s.k, 'v': s.v.text, 'in_J': found.found, 'depth': found.depth}


def cmd_verify(config: Config, args) -> int:
    """
    同期を確かめる

    --alpha だけなら最初の同期 (i, j) を探す。--k と --v を付けると区間の添字と照合し、
    --alpha を省くと区間の内部の標本点と端点の桁を確かめる。
    """
    if (args.k is None) != (args.v is None):
        raise UsageError('--k and --v must be given together')

    if args.k is None:
        if args.alpha is None:
            raise UsageError('--alpha or --k/--v is required')
        alpha = AlphaParam(resolve_alpha(args.alpha, config.n), 3, config.n)
        witness = find_sync(alpha, config.n, args.scan_cap)
        if witness is None:
            logger.error(f'no synchronization within {args.scan_cap} steps')
            emit([{'alpha': alpha.decimal(config.digits), 'synchronized': False}], config)
            return 1
        row = witness.row(config.digits)
        row.update(_locate_row(alpha, config))
        emit([row], config)
        return 0

    k = args.k
    regime = regime_for_k(k, args.regime)
    interval = endpoints(regime, k, parse_word(args.v), config.n)

    if args.alpha is not None:
        witness = verify_sync(resolve_alpha(args.alpha, config.n), interval, args.scan_cap)
        emit([witness.row(config.digits)], config)
        return 0

    rows = []
    for x in interior_samples(interval, args.samples, config.precision_bits):
        try:
            w = verify_sync(x, interval, args.scan_cap)
            rows.append({'check': f'sync alpha={x}', 'ok': True, 'detail': f'i={w.i} j={w.j}'})
        except AlphaCfError as e:
            logger.error(e)
            rows.append({'check': f'sync alpha={x}', 'ok': False, 'detail': str(e)})
    rows.extend(digit_certificates(interval, args.samples))
    emit(rows, config)
    return 1 if failed_count(rows) else 0


#
# orbit
#

def _start_point(text: str, alpha: AlphaParam):
    if text == 'l0':
        return alpha.l0
    if text == 'r0':
        return alpha.r0
    try:
        return alpha.tc.field.scalar(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f'bad start point: {text!r}') from None


def cmd_orbit(config: Config, args) -> int:
    """ℓ_0, r_0 または与えた点の軌道"""
    alpha = AlphaParam(resolve_alpha(args.alpha, config.n, config.m), config.m, config.n)
    record = orbit(_start_point(args.start, alpha), alpha, args.steps, stop_at_l0=False)
    if record.hit_pole:
        logger.info(f'orbit stopped at a pole after {len(record)} steps')
    rows = [
        {
            'index': s.index,
            'k': s.digit.k,
            'l': s.digit.l,
            'point_decimal': decimal_string(s.point, config.digits),
            'point_exact': s.point.to_json(),
        }
        for s in record.steps
    ]
    emit(rows, config)
    return 0


#
# measure
#

def cmd_measure(config: Config, args) -> int:
    """
    𝒥 の長さの和の割合

    累積の割合が上限とともに単調で 1 未満であることを確かめ、保存した基準値と比べる。
    --freeze で今回の値を基準値として保存する。
    """
    rows = measure_report(config.regime, config.n, config.k_max, config.len_max, config.q_cap,
                          config.precision_bits, config.digits)
    status = 0

    values = [Fraction(r['coverage']) for r in rows]
    if any(b < a for a, b in zip(values, values[1:])) or any(x >= 1 for x in values):
        logger.error('coverage is not monotone or reaches 1')
        status = 1

    if args.freeze:
        insert_measure_report(rows, config.caps, time.time(), db_path=args.db)
        logger.info(f'measure golden frozen for {config.regime} n={config.n} caps={config.caps}')
    else:
        golden = get_measure_golden(config.regime, config.n, config.caps, db_path=args.db)
        if golden is not None and golden != rows:
            logger.error('measure report differs from the frozen golden')
            status = 1

    emit(rows, config)
    return status


#
# identities
#

def cmd_identities(config: Config, args, manifest: dict) -> int:
    grid = section(manifest, 'identities')
    if args.n_max is not None:
        grid['n_max'] = args.n_max
    if args.k_max is not None:
        grid['k_max'] = args.k_max
    rows = identity_suite(grid, grid.get('words_len', 5), grid.get('words_q', 3))
    emit(rows, config)
    return 1 if failed_count(rows) else 0


#
# suite
#

def _grouped(group: str, rows: list) -> list:
    for row in rows:
        row['group'] = group
    return rows


def _guarded(group: str, what: str, func, *a, **kw) -> list:
    """func の行を返す。例外は失敗した1行にする"""
    try:
        return _grouped(group, func(*a, **kw))
    except AlphaCfError as e:
        logger.error(f'{group} {what}: {e}')
        return [{'group': group, 'check': what, 'ok': False, 'detail': str(e)}]


def _partition_rows(cfg: dict) -> list:
    rows = []
    for n in cfg['n_values']:
        for regime in Regime:
            trimmed = n if regime is Regime.MID else None
            parents = enumerate_tree(ROOT, cfg['len_max'], cfg['q_max'], trimmed_n=trimmed)
            for k in k_values(regime, cfg['k_max']):
                for parent in parents:
                    rows.extend(_guarded('partition', f'n={n} k={k} v={parent}',
                                         partition_check, regime, k, parent, cfg['q_max'], n))
    return rows


def _certificate_rows(cfg: dict, n: int) -> list:
    rows = []
    for regime in Regime:
        try:
            intervals = enumerate_intervals(regime, n, cfg['k_max'], cfg['len_max'], cfg['q_cap'])
        except AlphaCfError as e:
            logger.error(e)
            rows.append({'group': 'certificates', 'check': f'{regime.value} enumeration', 'ok': False, 'detail': str(e)})
            continue
        for s in intervals:
            rows.extend(_guarded('certificates', f'{regime.value} k={s.k} v={s.v}',
                                 digit_certificates, s, cfg['samples']))
    return rows


def _sync_rows(count: int) -> list:
    """𝒥_{1,1}（n = 3）の内部の点で r_2 = ℓ_5 と ℓ_4 = C^-1AC·r_1"""
    rows = []
    interval = endpoints(Regime.SMALL, 1, ROOT, 3)
    for x in interior_samples(interval, count):
        try:
            w = verify_sync(x, interval)
            ok = (w.i, w.j) == (5, 2) and w.pre_step_ok
            rows.append({'group': 'sync', 'check': f'r2 = l5 alpha={x}', 'ok': ok, 'detail': f'i={w.i} j={w.j}'})
        except AlphaCfError as e:
            rows.append({'group': 'sync', 'check': f'r2 = l5 alpha={x}', 'ok': False, 'detail': str(e)})
    return rows


def _accidental_rows() -> list:
    """α = (2-√2)/4（r_0 = (2-√2)/2）で r_1 = ℓ_1"""
    field = triangle_constants(3, 3).field
    alpha = quad_solve_between(field.scalar(8), -8, 1, 0, Fraction(1, 2))
    w = find_sync(alpha, 3, 4)
    ok = w is not None and (w.i, w.j) == (1, 1)
    return [{'group': 'accidental', 'check': 'r1 = l1 at alpha=(2-sqrt2)/4', 'ok': ok,
             'detail': '' if w is None else f'i={w.i} j={w.j}'}]


def _nonsync_rows(cfg: dict) -> list:
    rows = []
    paths = [p for p in product((0, 1, 2), repeat=cfg['depth']) if p[0] >= 1][:cfg['paths']]
    for path in paths:
        try:
            report = nonsync_point(Regime.SMALL, cfg['k'], path, 3, cfg['steps'])
            rows.append({'group': 'nonsync', 'check': f'confinement path={list(path)}', 'ok': report.ok,
                         'detail': f'upper={report.upper_confined} lower={report.lower_confined}'})
        except AlphaCfError as e:
            rows.append({'group': 'nonsync', 'check': f'confinement path={list(path)}', 'ok': False, 'detail': str(e)})
    return rows


def cmd_suite(config: Config, args, manifest: dict) -> int:
    """すべての検査をまとめて実行し、グループごとの件数を出す（--all で全行）"""
    cfg = section(manifest, 'suite')
    rows = []

    for n in range(3, cfg['mn_max'] + 1):
        for m in range(3, n + 1):
            rows.extend(_guarded('alpha0', f'm={m} n={n}', alpha0_suite, m, n))
            rows.extend(_guarded('alpha1', f'm={m} n={n}', alpha1_suite, m, n))
    logger.info('alpha0 and alpha1 suites done')

    rows.extend(_guarded('words', 'word properties', word_suite, cfg['words']['len_max'], cfg['words']['q_cap']))
    logger.info('word suite done')

    grid = section(manifest, 'identities')
    rows.extend(_guarded('identities', 'identity grid', identity_suite, grid,
                         grid.get('words_len', 5), grid.get('words_q', 3)))
    logger.info('identity suite done')

    rows.extend(_partition_rows(cfg['partition']))
    logger.info('partition suite done')

    rows.extend(_certificate_rows(cfg['certificates'], config.n))
    rows.extend(_sync_rows(cfg['sync_samples']))
    rows.extend(_accidental_rows())
    rows.extend(_nonsync_rows(cfg['nonsync']))

    failed = failed_count(rows)
    if failed:
        logger.error(f'{failed} of {len(rows)} checks failed')
    else:
        logger.info(f'all {len(rows)} checks passed')

    if args.all:
        emit(rows, config, headers=['group', 'check', 'ok', 'detail'])
    else:
        emit(summarize(rows), config)
    return 1 if failed else 0


#
# figure-data
#

def _alpha_grid(lo, hi, count: int, bits: int) -> list:
    """[lo, hi] の内部に等間隔に並べた有理数の α"""
    a, b = refine(lo, bits).hi, refine(hi, bits).lo
    if a >= b:
        raise UsageError('empty alpha range')
    return [a + (b - a) * Fraction(2 * i + 1, 2 * count) for i in range(count)]


def _endpoint_curve_rows(config: Config, args, grid: list) -> list:
    depth = args.depth
    rows = []
    for x in grid:
        alpha = AlphaParam(x, config.m, config.n)
        row = {'kind': 'curve', 'alpha': decimal_string(x, config.digits),
               'x': decimal_string(alpha.r0, config.digits)}
        lower = orbit(alpha.l0, alpha, depth, stop_at_l0=False).points
        upper = orbit(alpha.r0, alpha, depth, stop_at_l0=False).points
        for j in range(1, depth + 1):
            row[f'l{j}'] = decimal_string(lower[j], config.digits) if j < len(lower) else ''
        for j in range(1, depth + 1):
            row[f'r{j}'] = decimal_string(upper[j], config.digits) if j < len(upper) else ''
        rows.append(row)

    if config.m == 3:
        t = triangle_constants(3, config.n).t
        rc = regime_constants(config.n)
        for name in ('gamma', 'epsilon'):
            value = getattr(rc, name)
            rows.append({'kind': name, 'alpha': decimal_string(value, config.digits),
                         'x': decimal_string(value * t, config.digits)})
    return rows


def _cylinder_rows(config: Config, args, grid: list) -> list:
    rows = []
    for x in grid:
        alpha = AlphaParam(x, config.m, config.n)
        for l in range(1, config.m):
            for k in [k for k in range(-args.k_cap, args.k_cap + 1) if k != 0]:
                cyl = cylinder(alpha, k, l)
                if cyl is None:
                    continue
                rows.append({
                    'alpha': decimal_string(x, config.digits),
                    'k': k,
                    'l': l,
                    'lo': decimal_string(cyl.lo, config.digits),
                    'hi': decimal_string(cyl.hi, config.digits),
                    'full': cyl.full,
                })
    return rows


def cmd_figure_data(config: Config, args) -> int:
    """
    図のもとになるデータ

    endpoint-curves: α ごとに x = r_0 と ℓ_j, r_j（j ≤ depth）、および γt, εt の位置
    cylinders: α ごとのシリンダー Δ_α(k,l) の端点と full かどうか
    """
    lo = resolve_alpha(args.lo, config.n, config.m)
    hi = resolve_alpha(args.hi, config.n, config.m)
    grid = _alpha_grid(lo, hi, args.samples, config.precision_bits)
    if args.figure == 'endpoint-curves':
        rows = _endpoint_curve_rows(config, args, grid)
    else:
        rows = _cylinder_rows(config, args, grid)
    emit(rows, config, headers=None)
    return 0


#
# 引数
#

def build_parser(manifest: dict) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=int, default=3, help='order n of the triangle group (default 3)')
    common.add_argument('--m', type=int, default=3, help='order m of the triangle group (default 3)')
    common.add_argument('--precision-bits', dest='precision_bits', type=int, default=64, help='enclosure precision, at least 64')
    common.add_argument('--digits', type=int, default=None, help='decimal digits in the output')
    common.add_argument('--format', choices=['table', 'json', 'csv'], default='table', help='output format')
    common.add_argument('--out', type=str, default=None, help='output file (default stdout)')
    common.add_argument('--manifest', type=str, default=None, help='grids.yaml to use')
    common.add_argument('--db', type=str, default=None, help='tinydb JSON file')
    common.add_argument('-v', '--verbose', action='store_true', default=False, help='debug log')
    common.add_argument('-q', '--quiet', action='store_true', default=False, help='warnings only')

    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument('--regime', choices=['small', 'mid', 'large'], default=None, help='regime of alpha')
    caps.add_argument('--k-max', dest='k_max', type=int, default=None, help='cap on |k|')
    caps.add_argument('--len-max', dest='len_max', type=int, default=None, help='cap on the number of letters')
    caps.add_argument('--q-cap', dest='q_cap', type=int, default=None, help='cap on the theta exponents')

    parser = argparse.ArgumentParser(description='synchronization intervals of alpha continued fractions')
    sub = parser.add_subparsers(dest='command')

    sub.add_parser('tree', parents=[common, caps], help='list the words of the tree')

    p = sub.add_parser('intervals', parents=[common, caps], help='interval endpoints')
    p.add_argument('--store', action='store_true', default=False, help='store the rows in tinydb')

    verify = section(manifest, 'verify')
    p = sub.add_parser('verify', parents=[common], help='check synchronization')
    p.add_argument('--alpha', type=str, default=None, help='p/q or gamma, epsilon, delta, zeta:k:v, eta:k:v, omega:k:v, chi:k:v')
    p.add_argument('--regime', choices=['small', 'mid', 'large'], default=None, help='regime (checked against k)')
    p.add_argument('--k', type=int, default=None, help='k of the interval')
    p.add_argument('--v', type=str, default=None, help='word of the interval, e.g. 121')
    p.add_argument('--scan-cap', dest='scan_cap', type=int, default=verify['scan_cap'], help='orbit steps to scan')
    p.add_argument('--samples', type=int, default=verify['samples'], help='interior samples')

    p = sub.add_parser('orbit', parents=[common], help='orbit of an endpoint or a point')
    p.add_argument('--alpha', type=str, required=True, help='p/q or a named constant')
    p.add_argument('--start', type=str, default='r0', help='l0, r0 or a rational point')
    p.add_argument('--steps', type=int, default=section(manifest, 'orbit')['steps'], help='number of steps')

    p = sub.add_parser('measure', parents=[common, caps], help='coverage of the synchronization intervals')
    p.add_argument('--freeze', action='store_true', default=False, help='store the report as the golden')

    p = sub.add_parser('identities', parents=[common], help='group identities over the grid')
    p.add_argument('--n-max', dest='n_max', type=int, default=None, help='largest n')
    p.add_argument('--k-max', dest='k_max', type=int, default=None, help='largest k')

    p = sub.add_parser('suite', parents=[common], help='run every check')
    p.add_argument('--all', action='store_true', default=False, help='print every row instead of the summary')

    figure = section(manifest, 'figure')
    p = sub.add_parser('figure-data', parents=[common], help='data behind the figures')
    p.add_argument('--figure', choices=['endpoint-curves', 'cylinders'], default='endpoint-curves')
    p.add_argument('--lo', type=str, default='0', help='left end of the alpha range')
    p.add_argument('--hi', type=str, default='1', help='right end of the alpha range')
    p.add_argument('--samples', type=int, default=figure['samples'], help='number of alpha samples')
    p.add_argument('--depth', type=int, default=figure['depth'], help='orbit steps per curve')
    p.add_argument('--k-cap', dest='k_cap', type=int, default=figure['k_cap'], help='cap on |k| for cylinders')

    return parser


def _manifest_path(argv: list):
    # --manifest はサブコマンドの既定値を決めるので先に読む
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument('--manifest', type=str, default=None)
    known, _ = pre.parse_known_args(argv)
    return known.manifest


def main(argv: list = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        manifest_path = _manifest_path(argv)
        manifest = load_manifest(manifest_path) if manifest_path else load_manifest()
    except UsageError as e:
        logger.error(e)
        return 2

    parser = build_parser(manifest)
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 0

    set_log_level(args.verbose, args.quiet)

    commands = {
        'tree': cmd_tree,
        'intervals': cmd_intervals,
        'verify': cmd_verify,
        'orbit': cmd_orbit,
        'measure': cmd_measure,
        'identities': lambda c, a: cmd_identities(c, a, manifest),
        'suite': lambda c, a: cmd_suite(c, a, manifest),
        'figure-data': cmd_figure_data,
    }
    # 上限の既定値は grids.yaml のコマンドの節から
    defaults = section(manifest, args.command if args.command in ('tree', 'measure') else 'intervals')

    try:
        config = Config.from_args(args, defaults)
        return commands[args.command](config, args)
    except UsageError as e:
        logger.error(e)
        return 2
    except AlphaCfError as e:
        logger.error(e)
        return 1


if __name__ == '__main__':
    sys.exit(main())
