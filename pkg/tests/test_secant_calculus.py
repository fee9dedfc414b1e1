import pytest

from sarkisov_links.divisor_lattice import AmbientFano, BlowupSetup
from sarkisov_links.errors import FormulaDomainError, UnsupportedAmbientError
from sarkisov_links.secant_calculus import flopping_profile, quadrisecant_count


class TestQuadrisecantCount:
    @pytest.mark.parametrize(
        "d, g, expected",
        [(8, 5, 10), (10, 11, 20), (5, 0, 1), (6, 3, 0), (9, 5, 40), (8, 3, 23)],
    )
    def test_values(self, d, g, expected):
        """Closed formula at known curves."""
        assert quadrisecant_count(d, g) == expected

    def test_integral_on_grid(self):
        """The formula is integral for 5 <= d <= 40, 0 <= g <= 40."""
        for d in range(5, 41):
            for g in range(0, 41):
                assert isinstance(quadrisecant_count(d, g), int)

    @pytest.mark.parametrize("d", [1, 3, 4])
    def test_degree_below_domain(self, d):
        """d < 5 is outside the formula's domain."""
        with pytest.raises(FormulaDomainError):
            quadrisecant_count(d, 0)

    def test_negative_genus(self):
        """Genus must be non-negative."""
        with pytest.raises(FormulaDomainError):
            quadrisecant_count(8, -1)


class TestFloppingProfile:
    def test_case_99(self, case_99):
        """Ten lines of class (H.l, E.l) = (1, 4), each K-trivial."""
        profile = flopping_profile(case_99)
        assert profile.quadrisecant_count == 10
        assert profile.curve_class_on_x == (1, 4)
        assert profile.anticanonical_degree_of_secant == 0

    def test_other_ambient(self):
        """Flopping lines are only derived on P3."""
        setup = BlowupSetup(AmbientFano(3, 54, "Q"), 6, 2)
        with pytest.raises(UnsupportedAmbientError):
            flopping_profile(setup)
