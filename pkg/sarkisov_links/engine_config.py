"""
Configuration for the Sarkisov link engine.

Values are layered: built-in defaults, then environment variables, then a
JSON configuration file. Explicit CLI flags are applied last by the caller.
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional, Tuple

from .ambient_catalog import AmbientCatalog
from .constants import (
    CATALOG_ENV_VAR,
    CONFIG_ENV_VAR,
    DEFAULT_CONFIG_FILE,
    DEFAULT_MODULUS_SWEEP_MAX,
    DEFAULT_PARTNER_BOX,
    DEFAULT_PARTNER_DEGREE_MAX,
    DEFAULT_PARTNER_GENUS_MAX,
    DEFAULT_SEARCH_BOX,
)
from .link_classifier import (
    POINT_TYPE_TABLE,
    ClassifierOptions,
    ContractionFamily,
    PointTypeInvariants,
)

logger = logging.getLogger(__name__)


class EngineConfig:
    """Configuration manager for classification runs and scans."""

    DEFAULT_CONFIG = {
        "modulus_sweep_max": DEFAULT_MODULUS_SWEEP_MAX,
        "search_box": DEFAULT_SEARCH_BOX,
        "partner_box": DEFAULT_PARTNER_BOX,
        "partner_degree_max": DEFAULT_PARTNER_DEGREE_MAX,
        "partner_genus_max": DEFAULT_PARTNER_GENUS_MAX,
        "k3_hypothesis": True,
        "general_curve": True,
        "catalog_file": None,  # None = built-in catalog
        "workers": 1,
        "point_types": None,  # None = built-in point-type table
    }

    INT_KEYS = (
        "modulus_sweep_max",
        "search_box",
        "partner_box",
        "partner_degree_max",
        "partner_genus_max",
        "workers",
    )

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize configuration.

        Args:
            config_file: Path to configuration file (JSON)
        """
        self.config_file = config_file or os.environ.get(CONFIG_ENV_VAR, DEFAULT_CONFIG_FILE)
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from file or use defaults."""
        config = self.DEFAULT_CONFIG.copy()

        # Override with environment variables
        env_mappings = {
            "SARKISOV_MODULUS_MAX": "modulus_sweep_max",
            "SARKISOV_SEARCH_BOX": "search_box",
            "SARKISOV_PARTNER_BOX": "partner_box",
            "SARKISOV_WORKERS": "workers",
            CATALOG_ENV_VAR: "catalog_file",
        }

        for env_var, config_key in env_mappings.items():
            if env_var in os.environ:
                value = os.environ[env_var]
                if config_key in self.INT_KEYS:
                    try:
                        value = int(value)
                    except ValueError:
                        logger.warning("Ignoring non-integer %s=%r", env_var, value)
                        continue
                config[config_key] = value

        # Override with config file if exists
        if os.path.exists(self.config_file):
            try:
                with open(self.config_file, "r") as f:
                    file_config = json.load(f)
                config.update(file_config)
                logger.info("Loaded config from %s", self.config_file)
            except (OSError, ValueError) as e:
                logger.warning("Error loading config file %s: %s", self.config_file, e)

        return config

    def save_config(self, config_file: Optional[str] = None):
        """Save current configuration to file."""
        file_path = config_file or self.config_file

        with open(file_path, "w") as f:
            json.dump(self.config, f, indent=2, sort_keys=True)

        logger.info("Saved config to %s", file_path)

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value."""
        return self.config.get(key, default)

    def set(self, key: str, value: Any):
        """Set configuration value."""
        self.config[key] = value

    def validate(self) -> List[str]:
        """Validate configuration settings; returns the list of problems found."""
        errors = []

        for key in self.INT_KEYS:
            value = self.config.get(key)
            if not isinstance(value, int) or isinstance(value, bool):
                errors.append(f"{key} must be an integer, got {value!r}")

        if not errors:
            if self.config["modulus_sweep_max"] < 2:
                errors.append("modulus_sweep_max must be at least 2")
            for key in ("search_box", "partner_box", "partner_degree_max"):
                if self.config[key] <= 0:
                    errors.append(f"{key} must be positive")
            if self.config["partner_genus_max"] < 0:
                errors.append("partner_genus_max must be non-negative")
            if self.config["workers"] < 1:
                errors.append("workers must be at least 1")

        try:
            self.point_types()
        except ValueError as e:
            errors.append(str(e))

        for error in errors:
            logger.warning("Configuration error: %s", error)
        return errors

    def point_types(self) -> Tuple[PointTypeInvariants, ...]:
        """Point-type table, from the `point_types` override when set.

        The override is a list of [family, (-K)^2 E, (-K) E^2, E^3] entries.
        """
        override = self.config.get("point_types")
        if override is None:
            return POINT_TYPE_TABLE

        entries = []
        for entry in override:
            if not isinstance(entry, (list, tuple)) or len(entry) != 4:
                raise ValueError(f"point type entry must be [family, degree, square, cube], got {entry!r}")
            family, degree, square, cube_value = entry
            try:
                family = ContractionFamily(family)
            except ValueError:
                raise ValueError(f"unknown point-type family {family!r}")
            if family in (ContractionFamily.CONIC_BUNDLE, ContractionFamily.DEL_PEZZO):
                raise ValueError(f"{family.value} is not a point-type contraction")
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in (degree, square, cube_value)):
                raise ValueError(f"point type {family.value} needs integer invariants, got {entry!r}")
            entries.append(PointTypeInvariants(family, degree, square, cube_value, provenance="configured"))
        return tuple(entries)

    def load_catalog(self) -> AmbientCatalog:
        return AmbientCatalog.from_environment(self.config.get("catalog_file"))

    def classifier_options(self, catalog: Optional[AmbientCatalog] = None) -> ClassifierOptions:
        """Build ClassifierOptions with current configuration."""
        return ClassifierOptions(
            modulus_sweep_max=self.config["modulus_sweep_max"],
            search_box=self.config["search_box"],
            partner_box=self.config["partner_box"],
            partner_degree_max=self.config["partner_degree_max"],
            partner_genus_max=self.config["partner_genus_max"],
            k3_hypothesis=bool(self.config["k3_hypothesis"]),
            general_curve=bool(self.config["general_curve"]),
            catalog=catalog or self.load_catalog(),
            point_types=self.point_types(),
        )

    def __repr__(self):
        """String representation."""
        return f"EngineConfig({self.config})"
