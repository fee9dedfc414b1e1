import json
import logging

import pytest

from sarkisov_links.engine_config import EngineConfig
from sarkisov_links.link_classifier import POINT_TYPE_TABLE, ContractionFamily


class TestLoading:
    def test_defaults(self):
        """Without environment or file the defaults apply."""
        config = EngineConfig()
        assert config.get("modulus_sweep_max") == 64
        assert config.get("partner_box") == 64
        assert config.get("workers") == 1
        assert config.validate() == []

    def test_environment(self, monkeypatch):
        """Integer environment variables override defaults."""
        monkeypatch.setenv("SARKISOV_PARTNER_BOX", "30")
        monkeypatch.setenv("SARKISOV_WORKERS", "4")
        config = EngineConfig()
        assert config.get("partner_box") == 30
        assert config.get("workers") == 4

    def test_bad_environment_value(self, monkeypatch, caplog):
        """Non-integer values are ignored with a warning."""
        monkeypatch.setenv("SARKISOV_SEARCH_BOX", "wide")
        with caplog.at_level(logging.WARNING, logger="sarkisov_links.engine_config"):
            config = EngineConfig()
        assert config.get("search_box") == 1000
        assert "SARKISOV_SEARCH_BOX" in caplog.text

    def test_file_overrides_environment(self, tmp_path, monkeypatch):
        """The JSON file is applied after the environment."""
        monkeypatch.setenv("SARKISOV_PARTNER_BOX", "30")
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"partner_box": 50, "k3_hypothesis": False}))
        config = EngineConfig(str(path))
        assert config.get("partner_box") == 50
        assert config.get("k3_hypothesis") is False

    def test_config_env_var(self, tmp_path, monkeypatch):
        """SARKISOV_CONFIG names the file when none is passed."""
        path = tmp_path / "named.json"
        path.write_text(json.dumps({"workers": 3}))
        monkeypatch.setenv("SARKISOV_CONFIG", str(path))
        assert EngineConfig().get("workers") == 3

    def test_broken_file(self, tmp_path, caplog):
        """Unparseable files fall back to defaults with a warning."""
        path = tmp_path / "config.json"
        path.write_text("{not json")
        with caplog.at_level(logging.WARNING, logger="sarkisov_links.engine_config"):
            config = EngineConfig(str(path))
        assert config.get("partner_box") == 64
        assert "Error loading config file" in caplog.text

    def test_save_and_reload(self, tmp_path):
        """Saved values survive a reload."""
        path = tmp_path / "saved.json"
        config = EngineConfig(str(path))
        config.set("partner_box", 12)
        config.save_config()
        assert EngineConfig(str(path)).get("partner_box") == 12


class TestValidate:
    @pytest.mark.parametrize(
        "key, value, fragment",
        [
            ("modulus_sweep_max", 1, "at least 2"),
            ("partner_box", 0, "positive"),
            ("partner_genus_max", -1, "non-negative"),
            ("workers", 0, "at least 1"),
            ("search_box", "big", "integer"),
            ("workers", True, "integer"),
        ],
    )
    def test_invalid_values(self, key, value, fragment):
        """Each bad setting is reported once."""
        config = EngineConfig()
        config.set(key, value)
        errors = config.validate()
        assert len(errors) == 1
        assert fragment in errors[0]

    def test_bad_point_type(self):
        """Point-type overrides must name a point-type family."""
        config = EngineConfig()
        config.set("point_types", [["CONIC_BUNDLE", 1, -2, 1]])
        errors = config.validate()
        assert errors and "not a point-type contraction" in errors[0]


class TestPointTypes:
    def test_default_table(self):
        """No override keeps the built-in table."""
        assert EngineConfig().point_types() == POINT_TYPE_TABLE

    def test_override(self):
        """Override entries become configured invariants."""
        config = EngineConfig()
        config.set("point_types", [["E5", 1, -2, 4], ["E2", 4, -2, 1]])
        table = config.point_types()
        assert [p.family for p in table] == [ContractionFamily.E5, ContractionFamily.E2]
        assert table[0].triple == (1, -2, 4)
        assert all(p.provenance == "configured" for p in table)

    @pytest.mark.parametrize("entry", [["E2", 4, -2], ["E9", 4, -2, 1], ["E2", 4, -2, "1"]])
    def test_malformed_override(self, entry):
        """Short, unknown or non-integer entries are rejected."""
        config = EngineConfig()
        config.set("point_types", [entry])
        with pytest.raises(ValueError):
            config.point_types()


class TestClassifierOptions:
    def test_from_config(self, catalog):
        """Options carry the configured bounds and catalog."""
        config = EngineConfig()
        config.set("partner_box", 40)
        config.set("general_curve", False)
        options = config.classifier_options(catalog)
        assert options.partner_box == 40
        assert options.general_curve is False
        assert options.catalog is catalog
        assert options.bounds()["partner_box"] == 40

    def test_catalog_file(self, tmp_path):
        """catalog_file is loaded when no catalog is passed."""
        path = tmp_path / "catalog.txt"
        path.write_text("P3 4 64\n")
        config = EngineConfig()
        config.set("catalog_file", str(path))
        assert config.classifier_options().resolved_catalog().labels == ["P3"]

    def test_catalog_environment(self, tmp_path, monkeypatch):
        """SARKISOV_CATALOG reaches load_catalog; a configured file wins over it."""
        env_path = tmp_path / "env.txt"
        env_path.write_text("Q 3 54\n")
        monkeypatch.setenv("SARKISOV_CATALOG", str(env_path))
        config = EngineConfig()
        assert config.load_catalog().labels == ["Q"]

        file_path = tmp_path / "file.txt"
        file_path.write_text("V5 2 40\n")
        config.set("catalog_file", str(file_path))
        assert config.load_catalog().labels == ["V5"]

    def test_builtin_catalog(self):
        """Without a catalog file or SARKISOV_CATALOG the built-in catalog loads."""
        assert EngineConfig().load_catalog().source == "builtin"
