import sys
import unittest
from pathlib import Path

# Add project root to path for absolute imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.core.exceptions import ValidationError  # noqa: E402
from src.models.config import SolverConfig  # noqa: E402
from src.models.hypergraph import (  # noqa: E402
    Hyperedge,
    Hypergraph,
    is_vertex_cover,
    is_weak_independent,
)
from src.services.reductions import (  # noqa: E402
    PROBLEMS,
    solve_vertex_cover,
    solve_weak_independent_set,
)


class TestReductions(unittest.TestCase):
    """Test cases for problems solved through the dual hypergraph."""

    def setUp(self):
        """Set up a triangle and a vertex-weighted star."""
        self.triangle = Hypergraph.from_sets(3, [[1, 2], [2, 3], [1, 3]])
        self.star = Hypergraph(
            3,
            [Hyperedge.of([1, 2]), Hyperedge.of([1, 3])],
            vertex_weights=[5, 1, 1],
        )
        self.cfg = SolverConfig(max_iterations=200, seed=3)

    def test_triangle_vertex_cover(self):
        """Test that two vertices cover the triangle."""
        result = solve_vertex_cover(self.triangle, self.cfg)
        self.assertEqual(result.problem, "vertex-cover")
        self.assertEqual(result.value, 2.0)
        self.assertTrue(is_vertex_cover(self.triangle, result.witness))

    def test_triangle_weak_independent_set(self):
        """Test that the complement of the cover is a single vertex."""
        result = solve_weak_independent_set(self.triangle, self.cfg)
        self.assertEqual(result.problem, "weak-is")
        self.assertEqual(result.value, 1.0)
        self.assertEqual(len(result.witness), 1)
        self.assertTrue(is_weak_independent(self.triangle, result.witness))

    def test_weighted_vertex_cover(self):
        """Test that vertex weights steer the cover away from the hub."""
        result = solve_vertex_cover(self.star, self.cfg, weighted=True)
        self.assertEqual(result.witness, frozenset({2, 3}))
        self.assertEqual(result.value, 2.0)

    def test_weighted_weak_independent_set(self):
        """Test that the heavy hub is kept out of the weighted cover."""
        result = solve_weak_independent_set(self.star, self.cfg, weighted=True)
        self.assertEqual(result.witness, frozenset({1}))
        self.assertEqual(result.value, 5.0)

    def test_unweighted_star(self):
        """Test that without weights the hub alone is the cover."""
        result = solve_vertex_cover(self.star, self.cfg)
        self.assertEqual(result.witness, frozenset({1}))
        self.assertEqual(result.value, 1.0)

    def test_weighted_needs_vertex_weights(self):
        """Test that the weighted variant requires vertex weights."""
        with self.assertRaises(ValidationError):
            solve_vertex_cover(self.triangle, self.cfg, weighted=True)

    def test_payload_carries_dual_run(self):
        """Test the JSON payload of a reduction."""
        payload = solve_vertex_cover(self.triangle, self.cfg).to_dict()
        self.assertEqual(
            sorted(payload), ["dual_result", "problem", "value", "witness"]
        )
        self.assertIn("best_edges", payload["dual_result"])

    def test_problem_table(self):
        """Test that both reductions are registered."""
        self.assertEqual(sorted(PROBLEMS), ["vertex-cover", "weak-is"])


if __name__ == "__main__":
    unittest.main()
