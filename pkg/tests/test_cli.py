import csv
import io
import json
import subprocess
import sys

from db_util import get_intervals


def run(bin_path, *args, check=True):
    return subprocess.run(
        [sys.executable, str(bin_path), *args],
        capture_output=True,
        check=check,
        text=True,
    )


def test_tree_json(bin_path):
    proc = run(bin_path, 'tree', '--len-max', '3', '--q-cap', '2', '--format', 'json')
    rows = json.loads(proc.stdout)
    words = [r['v'] for r in rows]
    assert words[0] == '1'
    assert '2 1 2' in words
    row = next(r for r in rows if r['v'] == '3 1 3')
    assert row['path'] == [-1, -1, 0]
    assert row['parent'] == '3'
    assert row['palindrome'] is True


def test_intervals_csv(bin_path):
    proc = run(bin_path, 'intervals', '--regime', 'small', '--k-max', '1', '--len-max', '1', '--q-cap', '1',
               '--digits', '10', '--format', 'csv')
    rows = list(csv.DictReader(io.StringIO(proc.stdout)))
    assert [r['v'] for r in rows] == ['1', '2']
    assert rows[0]['zeta_dec'] == '0.1043560762'
    assert (rows[0]['i'], rows[0]['j']) == ('5', '2')


def test_intervals_store(bin_path, db_path):
    run(bin_path, 'intervals', '--k-max', '1', '--len-max', '1', '--q-cap', '1', '--store', '--db', db_path,
        '--format', 'json')
    assert [d['v'] for d in get_intervals('small', 3, db_path=db_path)] == ['1', '2']


def test_output_is_deterministic(bin_path):
    args = ('intervals', '--regime', 'large', '--k-max', '1', '--len-max', '3', '--q-cap', '2', '--format', 'json')
    assert run(bin_path, *args).stdout == run(bin_path, *args).stdout


def test_verify_example(bin_path):
    proc = run(bin_path, 'verify', '--k', '1', '--v', '1', '--alpha', '3/20', '--format', 'json')
    row = json.loads(proc.stdout)[0]
    assert (row['i'], row['j']) == (5, 2)
    assert row['pre_step_ok'] is True


def test_verify_locates_alpha(bin_path):
    proc = run(bin_path, 'verify', '--alpha', '3/20', '--format', 'json')
    row = json.loads(proc.stdout)[0]
    assert (row['i'], row['j']) == (5, 2)
    assert (row['k'], row['v'], row['in_J']) == (1, '1', True)


def test_orbit_csv(bin_path):
    proc = run(bin_path, 'orbit', '--alpha', '3/20', '--steps', '3', '--format', 'csv')
    lines = proc.stdout.splitlines()
    assert lines[0] == 'index,k,l,point_decimal,point_exact'
    assert lines[1].startswith('1,1,1,-0.3333')
    # r_2 = 0 は極なので2歩で止まる
    assert lines[2].startswith('2,-2,1,0.0000')
    assert len(lines) == 3


def test_measure_freeze_then_compare(bin_path, db_path):
    args = ('measure', '--k-max', '1', '--len-max', '2', '--q-cap', '1', '--db', db_path, '--format', 'json')
    frozen = run(bin_path, *args, '--freeze')
    again = run(bin_path, *args)
    assert json.loads(frozen.stdout) == json.loads(again.stdout)


def test_identities_with_manifest(bin_path, tmp_path):
    manifest = tmp_path.joinpath('grids.yaml')
    manifest.write_text(
        'identities:\n  n_max: 3\n  k_max: 1\n  vec_len: 2\n  entry_max: 2\n  words_len: 3\n  words_q: 2\n'
    )
    proc = run(bin_path, 'identities', '--manifest', str(manifest), '--format', 'json')
    rows = json.loads(proc.stdout)
    assert rows
    assert all(r['ok'] for r in rows)


def test_figure_data_endpoint_curves(bin_path):
    proc = run(bin_path, 'figure-data', '--samples', '4', '--depth', '2', '--format', 'json')
    rows = json.loads(proc.stdout)
    assert [r['kind'] for r in rows] == ['curve'] * 4 + ['gamma', 'epsilon']
    assert {'l1', 'l2', 'r1', 'r2'} <= set(rows[0])


def test_bad_alpha_is_usage_error(bin_path):
    proc = run(bin_path, 'orbit', '--alpha', 'foo', check=False)
    assert proc.returncode == 2
    assert proc.stdout == ''


def test_bad_word_is_usage_error(bin_path):
    proc = run(bin_path, 'verify', '--k', '1', '--v', '13', check=False)
    assert proc.returncode == 2


def test_k_without_v_is_usage_error(bin_path):
    proc = run(bin_path, 'verify', '--k', '1', check=False)
    assert proc.returncode == 2


def test_unknown_command(bin_path):
    proc = run(bin_path, 'bogus', check=False)
    assert proc.returncode == 2


def test_script_does_not_shadow_package(bin_path):
    # bin がパスの先頭に入るので、スクリプト名がパッケージ名と重なると import できない
    assert not bin_path.parent.parent.joinpath('lib', bin_path.stem).exists()
    proc = run(bin_path, '--help')
    assert 'usage' in proc.stdout
