from argparse import Namespace
from fractions import Fraction

import pytest

from alpha_cf import (DEFAULT_SECTIONS, GRIDS_PATH, Config, Regime, UsageError, endpoints, load_manifest,
                      load_yaml, parse_word, regime_constants, regime_for_k, resolve_alpha, section)


def test_grids_manifest_matches_defaults():
    d = load_yaml(GRIDS_PATH)
    assert d['version'] == 1
    manifest = load_manifest()
    for name in DEFAULT_SECTIONS:
        assert section(manifest, name) == DEFAULT_SECTIONS[name]


def test_load_manifest_merges(tmp_path):
    path = tmp_path.joinpath('grids.yaml')
    path.write_text('identities:\n  n_max: 3\nsuite:\n  partition:\n    k_max: 2\n')
    manifest = load_manifest(path)
    assert manifest['identities']['n_max'] == 3
    assert manifest['identities']['k_max'] == DEFAULT_SECTIONS['identities']['k_max']
    assert manifest['suite']['partition'] == dict(DEFAULT_SECTIONS['suite']['partition'], k_max=2)


def test_load_manifest_fallbacks(tmp_path):
    assert load_yaml(tmp_path.joinpath('missing.yaml')) is None
    assert load_manifest(tmp_path.joinpath('missing.yaml')) == DEFAULT_SECTIONS
    path = tmp_path.joinpath('list.yaml')
    path.write_text('- 1\n- 2\n')
    with pytest.raises(UsageError):
        load_manifest(path)


def _args(**kwargs):
    base = {'n': 3, 'm': 3, 'precision_bits': 64, 'format': 'table', 'out': None,
            'regime': None, 'k_max': None, 'len_max': None, 'q_cap': None, 'digits': None}
    base.update(kwargs)
    return Namespace(**base)


def test_config_from_args():
    config = Config.from_args(_args(k_max=2), {'k_max': 5, 'len_max': 4, 'q_cap': 2})
    assert config.caps == {'k_max': 2, 'len_max': 4, 'q_cap': 2}
    assert config.regime == 'small'
    assert config.digits == 20
    config = Config.from_args(_args(regime='LARGE', format='json'))
    assert config.regime == 'large'
    assert config.fmt == 'json'


@pytest.mark.parametrize('kwargs', [
    {'n': 2}, {'m': 5, 'n': 4}, {'k_max': 0}, {'precision_bits': 32}, {'fmt': 'xml'}, {'regime': 'huge'},
])
def test_config_validation(kwargs):
    with pytest.raises(UsageError):
        Config(**kwargs)


def test_parse_word():
    v = parse_word('3 1 3')
    assert v.path == (-1, -1, 0)
    assert parse_word('313') == v
    with pytest.raises(UsageError):
        parse_word('13')
    with pytest.raises(UsageError):
        parse_word('a')


def test_regime_for_k():
    assert regime_for_k(2) is Regime.SMALL
    assert regime_for_k(-1) is Regime.MID
    assert regime_for_k(-3, 'large') is Regime.LARGE
    with pytest.raises(UsageError):
        regime_for_k(0)
    with pytest.raises(UsageError):
        regime_for_k(2, 'large')


def test_resolve_alpha():
    assert resolve_alpha('3/20') == Fraction(3, 20)
    assert resolve_alpha('0.15') == Fraction(3, 20)
    assert resolve_alpha('gamma') == regime_constants(3).gamma
    assert resolve_alpha('epsilon', n=4) == regime_constants(4).epsilon
    assert resolve_alpha('zeta:1:1') == endpoints(Regime.SMALL, 1, '1', 3).zeta
    assert resolve_alpha('omega:-2:1') == regime_constants(3).epsilon
    assert resolve_alpha('chi:1:1') > resolve_alpha('zeta:1:1')


@pytest.mark.parametrize('text', ['foo', 'gamma:1', 'zeta:x:1', 'zeta:1', 'chi:-2:1', 'eta:0:1'])
def test_resolve_alpha_errors(text):
    with pytest.raises(UsageError):
        resolve_alpha(text)


def test_resolve_alpha_needs_m3():
    with pytest.raises(UsageError):
        resolve_alpha('gamma', n=4, m=4)
