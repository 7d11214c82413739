import math
import sys
import unittest
from pathlib import Path

# Add project root to path for absolute imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.core.exceptions import PreconditionViolatedError  # noqa: E402
from src.services import bounds  # noqa: E402


class TestPheromoneBound(unittest.TestCase):
    """Test cases for the pheromone-only bound."""

    def test_integral_ratio(self):
        """Test C((m-k)c + k, k) with an integral argument."""
        bound = bounds.theorem1_bound(5, 2, 2)
        self.assertEqual(bound.value, 28.0)
        self.assertAlmostEqual(bound.log_value, math.log(28))
        self.assertEqual(bound.theorem, "theorem1")
        self.assertEqual(bound.inputs, {"m": 5, "k": 2, "c_n": 2})

    def test_uniform_levels_give_binomial(self):
        """Test that c = 1 reduces to C(m, k)."""
        self.assertEqual(bounds.theorem1_bound(5, 2, 1).value, 10.0)
        self.assertEqual(bounds.theorem1_bound(7, 3, 1).value, 35.0)

    def test_binomial_grid(self):
        """Test c = 1 against C(m, k) for every 1 <= k <= m <= 20."""
        for m in range(1, 21):
            for k in range(1, m + 1):
                bound = bounds.theorem1_bound(m, k, 1)
                self.assertEqual(bound.value, float(math.comb(m, k)), (m, k))

    def test_non_integral_ratio(self):
        """Test the Gamma continuation for a fractional (m-k)c."""
        # Γ(7.5) / (Γ(5.5) 2!) = 6.5 · 5.5 / 2
        self.assertAlmostEqual(bounds.theorem1_bound(5, 2, 1.5).value, 17.875)

    def test_all_edges_optimal(self):
        """Test that k = m gives a bound of one."""
        bound = bounds.theorem1_bound(4, 4, 3)
        self.assertEqual(bound.value, 1.0)
        self.assertEqual(bound.log_value, 0.0)

    def test_success_probability(self):
        """Test that the probability is the inverse of the time bound."""
        self.assertAlmostEqual(
            bounds.theorem1_success_probability(5, 2, 2).value, 1 / 28
        )

    def test_ratio_below_one(self):
        """Test that h/l must be at least one."""
        with self.assertRaises(PreconditionViolatedError):
            bounds.theorem1_bound(5, 2, 0.5)

    def test_k_out_of_range(self):
        """Test that k must lie in 0..m."""
        with self.assertRaises(PreconditionViolatedError):
            bounds.theorem1_bound(3, 4, 1)

    def test_overflow_keeps_log(self):
        """Test that huge bounds become inf while the log stays finite."""
        bound = bounds.theorem1_bound(4000, 2000, 10.5)
        self.assertEqual(bound.value, math.inf)
        self.assertTrue(math.isfinite(bound.log_value))


class TestHeuristicBound(unittest.TestCase):
    """Test cases for the heuristic-only bound."""

    def test_closed_form(self):
        """Test [1 + (ηmax/ηmin)^β (m-k)]^k."""
        self.assertAlmostEqual(bounds.theorem2_bound(4, 2, 2.0, 1.0, 1.0).value, 25.0)

    def test_beta_zero(self):
        """Test that β = 0 gives (1 + m - k)^k."""
        self.assertAlmostEqual(bounds.theorem2_bound(4, 2, 3.0, 1.0, 0.0).value, 9.0)

    def test_probability_is_inverse(self):
        """Test the per-construction probability."""
        self.assertAlmostEqual(
            bounds.theorem2_pmin(4, 2, 2.0, 1.0, 1.0).value, 1 / 25
        )

    def test_eta_order(self):
        """Test that ηmax must not be below ηmin."""
        with self.assertRaises(PreconditionViolatedError):
            bounds.theorem2_bound(4, 2, 1.0, 2.0, 1.0)

    def test_overflow_keeps_log(self):
        """Test very large bounds."""
        bound = bounds.theorem2_bound(10_000, 5_000, 10.0, 1.0, 5.0)
        self.assertEqual(bound.value, math.inf)
        self.assertTrue(math.isfinite(bound.log_value))


class TestBetaStar(unittest.TestCase):
    """Test cases for β* and the planted-cover probability."""

    def test_small_planted_instance(self):
        """Test β* = log(k(m-k)) / log(η′/η1)."""
        self.assertAlmostEqual(bounds.beta_star(6, 2, 2.0, 1.0).value, 3.0)
        self.assertAlmostEqual(
            bounds.beta_star(6, 3, 2.0, 1.0).value, math.log(9) / math.log(2)
        )

    def test_probability_at_threshold(self):
        """Test that β = β* yields a probability of at least 1/e."""
        for m, k, eta_prime, eta_1 in ((6, 2, 2.0, 1.0), (20, 5, 3.0, 1.5)):
            star = bounds.beta_star(m, k, eta_prime, eta_1).value
            p = bounds.theorem3_pmin(m, k, eta_prime, eta_1, star).value
            self.assertGreaterEqual(p, math.exp(-1))
            self.assertAlmostEqual(p, (1 + 1 / k) ** -k)

    def test_planted_probability(self):
        """Test P′ on the four-vertex planted instance."""
        p = bounds.theorem3_pmin(6, 2, 2.0, 1.0, 3.0)
        self.assertAlmostEqual(p.value, 1 / 2.25)
        self.assertAlmostEqual(bounds.expected_time_from_pmin(p).value, 2.25)
        self.assertEqual(bounds.expected_time_from_pmin(p).theorem, "theorem3")

    def test_planted_probability_grows_with_beta(self):
        """Test that P′ never decreases in β when η′ > η1."""
        for m, k, eta_prime, eta_1 in ((6, 2, 2.0, 1.0), (20, 5, 3.0, 1.5)):
            values = [
                bounds.theorem3_pmin(m, k, eta_prime, eta_1, beta / 4).log_value
                for beta in range(41)
            ]
            self.assertEqual(values, sorted(values))

    def test_planted_not_more_attractive(self):
        """Test that η′ ≤ η1 admits no threshold."""
        with self.assertRaises(PreconditionViolatedError):
            bounds.beta_star(6, 2, 1.0, 1.0)

    def test_all_edges_planted(self):
        """Test that k = m admits no threshold."""
        with self.assertRaises(PreconditionViolatedError):
            bounds.beta_star(4, 4, 2.0, 1.0)

    def test_to_dict(self):
        """Test the JSON payload of a bound."""
        payload = bounds.beta_star(6, 2, 2.0, 1.0).to_dict()
        self.assertEqual(sorted(payload), ["inputs", "log_value", "theorem", "value"])
        self.assertEqual(payload["theorem"], "beta_star")


if __name__ == "__main__":
    unittest.main()
