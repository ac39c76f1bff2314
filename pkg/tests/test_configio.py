import json

import numpy as np
import pytest

from cnmarkers import (ConfigError, EmptyInput, GeneticConfig,
                       LinearOracleConfig, MutualisticConfig, ParseError,
                       TuringConfig)
from cnmarkers.configio import (apply_config, config_snapshot, make_manifest,
                                parse_config_file, parse_events_file,
                                parse_kv_text, parse_set_items,
                                prepare_output, write_manifest)


class TestKvParsing:
    def test_comments_blanks_and_duplicates(self):
        text = "\n".join(["# header", "a = 1  # trailing", "", "b=x", "a=2"])
        assert parse_kv_text(text) == {"a": "2", "b": "x"}

    def test_malformed_line_reports_its_number(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_kv_text("a=1\nb=2\nnot a pair\n")

    def test_missing_key_is_malformed(self):
        with pytest.raises(ParseError):
            parse_kv_text("=5\n")

    def test_file_round_trip(self, tmp_path):
        p = tmp_path / "run.cfg"
        p.write_text("P=-1.5\nsteps=100\n")
        assert parse_config_file(p) == {"P": "-1.5", "steps": "100"}

    def test_set_items(self):
        assert parse_set_items(["a=1", "b = 2"]) == {"a": "1", "b": "2"}
        assert parse_set_items(None) == {}
        with pytest.raises(ConfigError):
            parse_set_items(["novalue"])


class TestApplyConfig:
    def test_typed_coercion(self):
        cfg = apply_config(GeneticConfig(),
                           {"P": "-3", "steps": "2e3", "seed": "9", "D": "0"})
        assert cfg.P == -3.0 and isinstance(cfg.P, float)
        assert cfg.steps == 2000 and isinstance(cfg.steps, int)
        assert cfg.seed == 9 and cfg.D == 0.0

    def test_fractional_integer_is_rejected(self):
        with pytest.raises(ConfigError, match="steps"):
            apply_config(GeneticConfig(), {"steps": "10.5"})

    def test_tuple_field(self):
        cfg = apply_config(LinearOracleConfig(), {"lambdas": "0.8,0.4,0.2,0.1"})
        assert cfg.lambdas == (0.8, 0.4, 0.2, 0.1)

    def test_unknown_key_lists_the_valid_ones(self):
        with pytest.raises(ConfigError, match="valid keys:.*steps"):
            apply_config(GeneticConfig(), {"bogus": "1"})

    def test_string_field(self):
        assert apply_config(TuringConfig(), {"field": "both"}).field == "both"

    def test_none_clears_an_optional_field(self):
        base = LinearOracleConfig(mixing=np.eye(4))
        assert apply_config(base, {"mixing": "none"}).mixing is None

    def test_square_matrix_reshape(self):
        flat = ",".join(str(float(v)) for v in range(16))
        cfg = apply_config(LinearOracleConfig(), {"mixing": flat})
        assert cfg.mixing.shape == (4, 4) and cfg.mixing[1, 0] == 4.0
        with pytest.raises(ConfigError, match="square"):
            apply_config(LinearOracleConfig(), {"mixing": "1,2,3"})

    def test_incidence_matrix_reshape_uses_declared_geometry(self):
        cfg = apply_config(MutualisticConfig(),
                           {"n": "2", "m": "3", "M": "1,0,1,0,1,0"})
        assert cfg.M.shape == (2, 3)
        with pytest.raises(ConfigError, match="M"):
            apply_config(MutualisticConfig(), {"n": "2", "m": "3", "M": "1,2"})

    def test_empty_overrides_return_the_config_unchanged(self):
        cfg = GeneticConfig()
        assert apply_config(cfg, {}) is cfg


class TestSnapshotsAndEvents:
    def test_snapshot_is_json_safe(self):
        cfg = MutualisticConfig(n=2, m=2, M=np.ones((2, 2)))
        snap = config_snapshot(cfg)
        text = json.dumps(snap)
        assert json.loads(text)["M"] == [[1.0, 1.0], [1.0, 1.0]]
        assert isinstance(config_snapshot(LinearOracleConfig())["lambdas"], list)

    def test_events_file(self, tmp_path):
        p = tmp_path / "events.csv"
        p.write_text("# onset,end\n100, 110\n250,260\n")
        assert parse_events_file(p) == [(100.0, 110.0), (250.0, 260.0)]

    def test_events_errors(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("100\n")
        with pytest.raises(ParseError, match="line 1"):
            parse_events_file(bad)
        bad.write_text("a,b\n")
        with pytest.raises(ParseError):
            parse_events_file(bad)
        empty = tmp_path / "empty.csv"
        empty.write_text("# nothing\n")
        with pytest.raises(EmptyInput):
            parse_events_file(empty)


class TestOutputsAndManifest:
    def test_write_once_unless_forced(self, tmp_path):
        p = tmp_path / "out.csv"
        prepare_output(p)
        p.write_text("x")
        with pytest.raises(ConfigError, match="--force"):
            prepare_output(p)
        assert prepare_output(p, force=True) == str(p)

    def test_prepare_creates_parent_directories(self, tmp_path):
        p = tmp_path / "a" / "b" / "out.csv"
        prepare_output(p)
        assert (tmp_path / "a" / "b").is_dir()

    def test_manifest_round_trip(self, tmp_path):
        m = make_manifest(command=["cnm", "simulate", "genetic"],
                          version="0.1.0", seed=5,
                          config=config_snapshot(GeneticConfig()),
                          inputs=(), outputs=("genetic.csv",),
                          duration_seconds=1.25)
        path = tmp_path / "run.manifest.json"
        write_manifest(m, path)
        data = json.loads(path.read_text())
        assert data["command"] == ["cnm", "simulate", "genetic"]
        assert data["seed"] == 5 and data["outputs"] == ["genetic.csv"]
        assert data["config"]["P"] == -2.0
        assert "T" in data["created"]  # ISO timestamp

    def test_manifest_write_is_atomic(self, tmp_path):
        # no .tmp residue after a successful write
        m = make_manifest(command=["cnm"], version="0", seed=None, config={},
                          inputs=(), outputs=(), duration_seconds=0.0)
        write_manifest(m, tmp_path / "m.json")
        assert [p.name for p in tmp_path.iterdir()] == ["m.json"]
