from __future__ import annotations

from pathlib import Path

import pytest

from stlab import ConfigError, ExperimentConfig, parse_config, render_config
from stlab.config import apply_overrides

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


MINIMAL_COUNT = "kind = count\nfamily = complete\nn = 4\n"


def test_parse_minimal_with_defaults():
    cfg = parse_config(MINIMAL_COUNT)
    assert cfg.kind == "count"
    assert cfg.family == "complete"
    assert cfg.n == 4
    assert cfg.samples == 1000  # default filled
    assert cfg.out == "out"
    assert cfg.seed == 0


def test_parse_comments_and_blank_lines():
    text = "# header\n\nkind = count   # trailing\nfamily = complete\nn = 5\n"
    cfg = parse_config(text)
    assert cfg.n == 5


def test_unknown_key_names_key_and_line():
    with pytest.raises(ConfigError) as err:
        parse_config("kind = count\nfamily = complete\nn = 4\ngamm = 1\n")
    assert "gamm" in str(err.value)
    assert err.value.line == 4


def test_missing_kind():
    with pytest.raises(ConfigError):
        parse_config("family = complete\nn = 4\n")


def test_type_mismatch_has_line():
    with pytest.raises(ConfigError) as err:
        parse_config("kind = count\nfamily = complete\nn = four\n")
    assert err.value.line == 3


def test_duplicate_key():
    with pytest.raises(ConfigError) as err:
        parse_config("kind = count\nkind = count\n")
    assert err.value.line == 2


def test_gammas_list_parsing():
    cfg = parse_config(
        "kind = balls-bins\nfamily = complete-bipartite\nnx = 4\nny = 4\ngammas = 0.1, 0.25,0.5\n"
    )
    assert cfg.gammas == (0.1, 0.25, 0.5)


def test_render_parse_round_trip():
    cfg = parse_config(
        "kind = balls-bins\nfamily = complete-bipartite\nnx = 10\nny = 10\n"
        "samples = 50\nkmax = 2\ngammas = 0.1, 0.2\nseed = 3\nout = /tmp/x\n"
    )
    canon = render_config(cfg)
    assert parse_config(canon) == cfg
    assert render_config(parse_config(canon)) == canon


def test_kind_validation():
    with pytest.raises(ConfigError):
        parse_config("kind = nonsense\n")


def test_graph_source_exclusivity():
    with pytest.raises(ConfigError):
        parse_config("kind = count\nfamily = complete\nn = 4\ninput = g.txt\n")
    with pytest.raises(ConfigError):
        parse_config("kind = count\n")


def test_balls_bins_needs_bipartite_family():
    with pytest.raises(ConfigError):
        parse_config("kind = balls-bins\nfamily = complete\nn = 4\n")


def test_bounds_kind_validation():
    with pytest.raises(ConfigError):
        parse_config("kind = bounds\nn = 100\nd = 10\n")  # leaves unset
    cfg = parse_config("kind = bounds\nn = 100\nd = 10\nleaves = 30\n")
    assert cfg.leaves == 30


def test_enumerate_range_validation():
    with pytest.raises(ConfigError):
        parse_config("kind = enumerate-trees\nn_min = 5\nn_max = 3\n")
    with pytest.raises(ConfigError):
        parse_config("kind = otter-fit\nn_min = 5\nn_max = 6\n")


def test_inadmissible_family_parameters_rejected():
    with pytest.raises(ConfigError):
        parse_config("kind = count\nfamily = random-regular\nn = 5\nd = 3\n")


def test_shipped_configs_are_canonical():
    paths = sorted(CONFIG_DIR.glob("*.cfg"))
    assert len(paths) >= 5
    for path in paths:
        text = path.read_text()
        assert render_config(parse_config(text)) == text


def test_apply_overrides():
    cfg = parse_config(MINIMAL_COUNT)
    out = apply_overrides(cfg, seed=9, out="elsewhere", samples=None)
    assert out.seed == 9
    assert out.out == "elsewhere"
    assert out.samples == cfg.samples
    assert apply_overrides(cfg) == cfg
