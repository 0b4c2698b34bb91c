from fractions import Fraction
from itertools import product

import pytest

from alpha_cf import (ROOT, Regime, SyncError, TreeWord, beta_witness, chi_point, children,
                      digit_certificates, endpoints, enumerate_intervals, expected_indices, from_path,
                      find_sync, interior_samples, k_values, length_lower_bound, locate,
                      measure_report, nonsync_point, partition_check, regime_constants, regime_of,
                      verify_sync)


@pytest.fixture
def j11():
    return endpoints(Regime.SMALL, 1, ROOT, 3)


def test_j11_endpoints(j11, sqrt):
    sqrt21 = sqrt(21)
    assert j11.zeta == (5 - sqrt21) / 4
    # r_0(η) = (-1+√21)/10、α = r_0/2
    assert j11.eta == (sqrt21 - 1) / 20
    assert j11.omega == regime_constants(3).gamma
    assert (j11.i_expected, j11.j_expected) == (5, 2)
    assert j11.ordering_ok()


def test_j11_row(j11):
    row = j11.row(digits=10)
    assert row['regime'] == 'small'
    assert row['v'] == '1'
    assert row['path'] == []
    assert row['zeta_dec'] == '0.1043560762'
    assert (row['i'], row['j']) == (5, 2)
    assert Fraction(row['length_dec']) > 0


def test_expected_indices():
    assert expected_indices('small', 1, '1', 3) == (5, 2)
    i, j = expected_indices(Regime.SMALL, 2, TreeWord.parse('111'), 4)
    assert j == 4


def test_endpoint_errors():
    with pytest.raises(SyncError):
        endpoints(Regime.SMALL, 0, ROOT, 3)
    with pytest.raises(SyncError):
        endpoints(Regime.LARGE, -1, ROOT, 3)
    with pytest.raises(SyncError):
        endpoints(Regime.MID, -1, '2', 3)
    with pytest.raises(SyncError):
        Regime.parse('huge')


def test_middle_and_large_boundaries():
    rc = regime_constants(3)
    mid = endpoints(Regime.MID, -1, ROOT, 3)
    assert mid.zeta == rc.epsilon
    assert mid.eta == rc.gamma
    assert mid.omega == rc.gamma
    large = endpoints(Regime.LARGE, -2, ROOT, 3)
    assert large.omega == rc.epsilon
    assert large.ordering_ok()


def test_regime_of():
    assert regime_of(Fraction(1, 20), 3) is Regime.SMALL
    assert regime_of(Fraction(1, 2), 3) is Regime.MID
    assert regime_of(Fraction(9, 10), 3) is Regime.LARGE
    assert regime_of(regime_constants(3).gamma, 3) is Regime.MID


def test_find_sync_example(alpha_in_j11):
    witness = find_sync(alpha_in_j11, 3)
    assert witness is not None
    assert (witness.i, witness.j) == (5, 2)
    # r_2 = ℓ_5 = 0 で軌道が止まる
    assert witness.point == 0
    assert witness.at_pole


def test_verify_sync_example(j11, alpha_in_j11):
    witness = verify_sync(alpha_in_j11, j11)
    assert (witness.i, witness.j) == (5, 2)
    assert witness.pre_step_ok


def test_verify_sync_interior_samples(j11):
    samples = interior_samples(j11, 5)
    assert len(samples) == 5
    for alpha in samples:
        assert j11.contains(alpha)
        witness = verify_sync(alpha, j11)
        assert (witness.i, witness.j) == (5, 2)


def test_verify_sync_outside(j11):
    with pytest.raises(SyncError):
        verify_sync(Fraction(1, 20), j11)


def test_accidental_sync(sqrt, j11):
    # 8α^2 - 8α + 1 = 0 の根では r_1 = ℓ_1 で早く同期する
    alpha = (2 - sqrt(2)) / 4
    assert j11.contains(alpha)
    witness = find_sync(alpha, 3)
    assert (witness.i, witness.j) == (1, 1)
    with pytest.raises(SyncError):
        verify_sync(alpha, j11)


def test_chi_point(j11):
    chi = chi_point(1, ROOT, 3)
    assert j11.contains(chi)
    verify_sync(chi, j11)
    with pytest.raises(SyncError):
        chi_point(-2, ROOT, 3)


def test_children_order():
    kids = children(Regime.SMALL, ROOT, 2)
    assert [str(v) for v in kids] == ['2', '111', '121']
    assert children(Regime.MID, ROOT, 3, 3) == []


def test_partition_small_root():
    rows = partition_check(Regime.SMALL, 1, ROOT, 3, 3)
    assert len(rows) > 5
    assert [r for r in rows if not r['ok']] == []


def test_partition_middle_n3():
    rows = partition_check(Regime.MID, -1, ROOT, 3, 3)
    assert [r for r in rows if not r['ok']] == []


def test_k_values():
    assert k_values('small', 3) == [1, 2, 3]
    assert k_values('mid', 3) == [-1]
    assert k_values('large', 2) == [-2, -3]


def test_enumerate_intervals_sorted():
    intervals = enumerate_intervals(Regime.SMALL, 3, k_max=2, len_max=3, q_cap=2)
    keys = [s.key for s in intervals]
    assert keys == sorted(keys)
    assert {s.k for s in intervals} == {1, 2}
    assert all(s.ordering_ok() for s in intervals)


def test_measure_report_monotone():
    rows = measure_report(Regime.SMALL, 3, k_max=2, len_max=3, q_cap=2)
    assert [r['k_max'] for r in rows] == [1, 2]
    coverage = [Fraction(r['coverage']) for r in rows]
    assert coverage == sorted(coverage)
    assert all(0 < c < 1 for c in coverage)


def test_length_lower_bound(j11):
    bound = length_lower_bound(j11.zeta, j11.eta)
    assert 0 < bound < Fraction(1, 10)


def test_digit_certificates(j11):
    rows = digit_certificates(j11, samples=3)
    assert rows
    assert [r for r in rows if not r['ok']] == []


def test_nonsync_nested():
    report = nonsync_point(Regime.SMALL, 1, (1, 0), 3, depth=30)
    assert report.nested
    assert report.word == from_path((1, 0))
    row = report.row(12)
    assert row['path'] == [1, 0]
    assert row['nested'] is True


def test_beta_witness():
    witness = beta_witness(2, ROOT, 2, 3)
    assert witness.ok
    large = endpoints(Regime.LARGE, -2, ROOT, 3)
    assert large.omega < witness.alpha < large.eta


def test_locate(alpha_in_j11):
    result = locate(alpha_in_j11, 3)
    assert result.found
    assert result.depth == 0
    assert (result.interval.k, str(result.interval.v)) == (1, '1')
    with pytest.raises(SyncError):
        locate(Fraction(0), 3)


@pytest.mark.parametrize('n', [4, 5])
def test_middle_boundaries_higher_n(n):
    rc = regime_constants(n)
    first = endpoints(Regime.MID, -1, ROOT, n)
    assert first.zeta == rc.epsilon
    assert first.omega == rc.gamma
    assert first.ordering_ok()

    # 最後の1文字 n-2 では 𝓘 = 𝒥 で、左端は γ に切られる
    last = endpoints(Regime.MID, -1, TreeWord('1' * (n - 2)), n)
    assert last.eta == rc.gamma
    assert last.omega == rc.gamma
    assert last.ordering_ok()


@pytest.mark.parametrize('n', [4, 5])
def test_partition_middle_higher_n(n):
    rows = partition_check(Regime.MID, -1, ROOT, 0, n)
    assert len(rows) > 4
    assert [r for r in rows if not r['ok']] == []
    assert [str(v) for v in children(Regime.MID, ROOT, 0, n)] == ['2']


def test_verify_sync_large_without_shift():
    # 桁 (2,2) の後は j がずれずに (2, 3) で同期する
    large = endpoints(Regime.LARGE, -2, ROOT, 3)
    alpha = Fraction(43, 50)
    assert large.contains(alpha)
    witness = verify_sync(alpha, large)
    assert (witness.i, witness.j) == (2, 3)
    assert witness.j in large.j_candidates
    assert witness.pre_step_ok


@pytest.mark.parametrize('regime', [Regime.SMALL, Regime.LARGE])
@pytest.mark.parametrize('n', [3, 4, 5])
def test_verify_sync_enumerated_intervals(regime, n):
    # 6通りで合わせて約200点
    intervals = enumerate_intervals(regime, n, k_max=1, len_max=3, q_cap=1)
    assert intervals
    count = max(1, 34 // len(intervals))
    checked = 0
    for interval in intervals:
        for alpha in interior_samples(interval, count):
            witness = verify_sync(alpha, interval)
            checked += 1
            assert witness.pre_step_ok
            if witness.at_pole and witness.i == interval.i_expected - 1:
                continue
            assert witness.i == interval.i_expected
            assert witness.j in interval.j_candidates
    assert checked >= 30


NONSYNC_PATHS = [p for p in product((0, 1, 2), repeat=5) if p[0] >= 1][:10]


@pytest.mark.parametrize('path', NONSYNC_PATHS)
def test_nonsync_depth_200(path):
    report = nonsync_point(Regime.SMALL, 1, path, 3, depth=200)
    assert report.depth == 200
    assert report.nested
    assert report.eta_confined is True
    assert report.ok


def test_nonsync_guaranteed_is_capped():
    report = nonsync_point(Regime.SMALL, 1, (1, 0, 1, 2, 1), 3, depth=200)
    assert all(g <= 200 for g in report.guaranteed)
    assert report.prefix_ok
    assert report.ok
