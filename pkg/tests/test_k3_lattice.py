import itertools
import logging

import pytest

from sarkisov_links.binary_forms import VerdictStatus, evaluate, represents
from sarkisov_links.errors import InvariantViolationError
from sarkisov_links.k3_lattice import (
    K3LatticeData,
    SmallnessCertificate,
    is_free_kH_minus_C,
    is_nef_kH_minus_C,
    k3_self_intersection,
    no_rational_curves_obstruction,
    smallness_certificate,
)


@pytest.fixture
def lattice_99():
    return K3LatticeData.quartic(8, 5)


class TestLatticeData:
    def test_gram(self, lattice_99):
        """H_S^2 = 4, H_S.C = 8, C^2 = 8."""
        assert lattice_99.gram == ((4, 8), (8, 8))
        assert lattice_99.gram_form.coefficients == (4, 16, 8)

    def test_pairing_matches_self_intersection(self, lattice_99, rng):
        """pairing(D, D) is the self-intersection."""
        for _ in range(100):
            a, b = rng.randint(-30, 30), rng.randint(-30, 30)
            assert lattice_99.pairing((a, b), (a, b)) == k3_self_intersection(lattice_99, a, b)

    @pytest.mark.parametrize("n, d, g", [(0, 8, 5), (2, 0, 5), (2, 8, -1)])
    def test_invalid(self, n, d, g):
        """n and d positive, g non-negative."""
        with pytest.raises(ValueError):
            K3LatticeData(n, d, g)


class TestNefAndFree:
    def test_case_99_k4(self, lattice_99):
        """4H_S - C is nef and free for (8, 5)."""
        assert is_nef_kH_minus_C(lattice_99, 4)
        assert is_free_kH_minus_C(lattice_99, 4)

    def test_case_99_k3_not_nef(self, lattice_99):
        """3H_S - C is not nef: 2*9 - 24 + 4 < 0."""
        result = is_nef_kH_minus_C(lattice_99, 3)
        assert not result
        assert "-2" in result.reason

    def test_excluded_pair(self):
        """(2nk - d, nk^2 - dk + g) = (2n + 1, n + 1) fails nefness."""
        result = is_nef_kH_minus_C(K3LatticeData(2, 3, 1), 2)
        assert not result
        assert "excluded pair" in result.reason

    def test_small_k_fails_first_clause(self, lattice_99):
        """2nk must exceed d."""
        result = is_nef_kH_minus_C(lattice_99, 2)
        assert not result
        assert "not greater than" in result.reason

    def test_nef_but_not_free(self):
        """(n, d, g, k) = (2, 3, 2, 1): d^2 - 4n(g-1) = 1 and 2 divides 4."""
        lattice = K3LatticeData(2, 3, 2)
        assert is_nef_kH_minus_C(lattice, 1)
        result = is_free_kH_minus_C(lattice, 1)
        assert not result
        assert "divides" in result.reason

    def test_free_implies_nef(self):
        """Freeness is only granted to nef classes, for n <= 5, d, g <= 20 and k <= 6."""
        for n, d, g, k in itertools.product(range(1, 6), range(1, 21), range(0, 21), range(1, 7)):
            lattice = K3LatticeData(n, d, g)
            if is_free_kH_minus_C(lattice, k):
                assert is_nef_kH_minus_C(lattice, k), (n, d, g, k)

    def test_k_positive(self, lattice_99):
        """k must be positive."""
        with pytest.raises(ValueError):
            is_nef_kH_minus_C(lattice_99, 0)


class TestSelfIntersection:
    def test_matches_gram_form(self, rng):
        """D^2 is the Gram form evaluated at the coordinates of D."""
        for _ in range(1000):
            lattice = K3LatticeData(rng.randint(1, 5), rng.randint(1, 20), rng.randint(0, 20))
            a, b = rng.randint(-50, 50), rng.randint(-50, 50)
            assert k3_self_intersection(lattice, a, b) == evaluate(lattice.gram_form, a, b)

    @pytest.mark.parametrize("k", range(1, 11))
    def test_contracted_multiples(self, lattice_99, k):
        """(k(3H_S - C))^2 = -4k^2."""
        assert k3_self_intersection(lattice_99, 3 * k, -k) == -4 * k * k


class TestRationalCurveObstruction:
    def test_case_99(self, lattice_99):
        """All lattice values of (4, 16, 8) lie in 4Z."""
        assert no_rational_curves_obstruction(lattice_99)

    def test_case_76(self):
        """(4, 20, 20) also has all values in 4Z."""
        assert no_rational_curves_obstruction(K3LatticeData.quartic(10, 11))

    def test_odd_degree(self):
        """2d = 14 is not in 4Z, so no obstruction."""
        assert not no_rational_curves_obstruction(K3LatticeData.quartic(7, 5))

    def test_even_genus(self):
        """2g - 2 = 6 is not in 4Z."""
        assert not no_rational_curves_obstruction(K3LatticeData.quartic(8, 4))

    def test_obstruction_rules_out_minus_two_classes(self):
        """Whenever the 4Z obstruction holds, the Gram form never takes the value -2."""
        for n, d, g in itertools.product(range(1, 6), range(1, 21), range(0, 21)):
            lattice = K3LatticeData(n, d, g)
            if not no_rational_curves_obstruction(lattice):
                continue
            verdict = represents(lattice.gram_form, -2, 64, 1000)
            assert verdict.status == VerdictStatus.NOT_REPRESENTED, (n, d, g)


class TestSmallnessCertificate:
    def test_case_99(self, lattice_99):
        """3H_S - C has square -4 and S has no rational curves."""
        certificate, reason = smallness_certificate(lattice_99, (3, -1), 4)
        assert certificate == SmallnessCertificate.SMALL_CERTIFIED
        assert "-4" in reason

    def test_perturbed_degree(self, caplog):
        """With d = 7 the class is no longer orthogonal to 4H_S - C."""
        with caplog.at_level(logging.WARNING, logger="sarkisov_links.k3_lattice"):
            certificate, _ = smallness_certificate(K3LatticeData.quartic(7, 5), (3, -1), 4)
        assert certificate == SmallnessCertificate.UNKNOWN
        assert "Smallness not certified" in caplog.text

    def test_non_negative_square(self):
        """H_S is orthogonal to 4H_S - C when d = 16 but has square 4."""
        certificate, reason = smallness_certificate(K3LatticeData.quartic(16, 3), (1, 0), 4)
        assert certificate == SmallnessCertificate.UNKNOWN
        assert "> -4" in reason

    def test_obstruction_missing(self):
        """Square -28 but 2g - 2 = 2 is not in 4Z."""
        lattice = K3LatticeData.quartic(8, 2)
        a, b = 15, -4
        assert lattice.pairing((4, -1), (a, b)) == 0
        certificate, reason = smallness_certificate(lattice, (a, b), 4)
        assert certificate == SmallnessCertificate.UNKNOWN
        assert "4Z" in reason

    def test_non_primitive(self, lattice_99):
        """The contracted class must be primitive."""
        with pytest.raises(InvariantViolationError):
            smallness_certificate(lattice_99, (6, -2), 4)
