import random

import pytest

from sarkisov_links.ambient_catalog import AmbientCatalog
from sarkisov_links.divisor_lattice import BlowupSetup
from sarkisov_links.flop_calculus import FlopData
from sarkisov_links.secant_calculus import flopping_profile


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Keep user configuration and catalogs out of every test."""
    for name in (
        "SARKISOV_MODULUS_MAX",
        "SARKISOV_SEARCH_BOX",
        "SARKISOV_PARTNER_BOX",
        "SARKISOV_WORKERS",
        "SARKISOV_CATALOG",
        "SARKISOV_CONFIG",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def case_99():
    return BlowupSetup.on_p3(8, 5)


@pytest.fixture
def case_76():
    return BlowupSetup.on_p3(10, 11)


@pytest.fixture
def flop_99(case_99):
    return FlopData.from_profile(flopping_profile(case_99))


@pytest.fixture
def flop_76(case_76):
    return FlopData.from_profile(flopping_profile(case_76))


@pytest.fixture
def catalog():
    return AmbientCatalog.default()


@pytest.fixture
def rng():
    return random.Random(20240607)
