"""Long-running frequency checks against exact per-construction probabilities."""

import math
import os
import sys
import tempfile
import time
import unittest
from pathlib import Path

import pytest

# Add project root to path for absolute imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.core.base import ExperimentContext  # noqa: E402
from src.models.config import ExperimentSpec, SolverConfig  # noqa: E402
from src.models.hypergraph import Hypergraph  # noqa: E402
from src.services import harness  # noqa: E402
from src.services.experiment_factory import ExperimentFactory  # noqa: E402

SIGMAS = 4.0
WORKERS = min(32, os.cpu_count() or 1)


def _frequency(records):
    return sum(r.success for r in records) / len(records)


def _sigma(p, trials):
    return math.sqrt(p * (1 - p) / trials)


@pytest.mark.integration
@pytest.mark.slow
class TestExactProbabilities(unittest.TestCase):
    """Observed success frequencies against hand-computed probabilities."""

    def setUp(self):
        """Set up two pendant-free four-vertex instances."""
        # unit edges {1,2}, {3,4} are optimal; three weight-2 edges cross them
        self.crossed = Hypergraph.from_sets(
            4, [[1, 2], [3, 4], [1, 3], [2, 4], [1, 4]], [1, 1, 2, 2, 2]
        )
        self.crossed_context = ExperimentContext(
            self.crossed, 2.0, frozenset({1, 2})
        )
        self.square = Hypergraph.from_sets(
            4, [[1, 2], [3, 4], [1, 3], [2, 4]], [1, 1, 2, 2]
        )
        self.square_context = ExperimentContext(self.square, 2.0, frozenset({1, 2}))

    def test_adversarial_start_meets_pheromone_bound(self):
        """Test that the worst pheromone state succeeds with probability 1/28."""
        experiment = ExperimentFactory.create(
            "adversarial_t1",
            self.crossed_context,
            SolverConfig(pher_high=0.4, pher_low=0.2),
        )
        trials = 1_000_000
        records = harness.run_trials(experiment, trials, 2024, threads=WORKERS)
        frequency = _frequency(records)
        expected = 1 / 28
        self.assertAlmostEqual(experiment.bound().value, expected)
        self.assertLess(abs(frequency - expected), SIGMAS * _sigma(expected, trials))

    @unittest.skipUnless(WORKERS >= 4, "needs at least four CPUs")
    @unittest.skipIf("coverage" in sys.modules, "tracing distorts timings")
    def test_million_adversarial_constructions_within_a_minute(self):
        """Test the throughput of the worst-case construction experiment."""
        experiment = ExperimentFactory.create(
            "adversarial_t1",
            self.crossed_context,
            SolverConfig(pher_high=0.4, pher_low=0.2),
        )
        started = time.perf_counter()
        harness.run_trials(experiment, 1_000_000, 7, threads=WORKERS)
        self.assertLessEqual(time.perf_counter() - started, 60.0)

    def test_uniform_start_without_heuristic(self):
        """Test that uniform pheromone with beta 0 succeeds with 1/C(m, k)."""
        experiment = ExperimentFactory.create(
            "construction_probability",
            self.crossed_context,
            SolverConfig(alpha=1.0, beta=0.0),
        )
        trials = 20_000
        frequency = _frequency(harness.run_trials(experiment, trials, master_seed=5))
        self.assertAlmostEqual(experiment.bound().value, 1 / 10)
        self.assertLess(abs(frequency - 0.1), SIGMAS * _sigma(0.1, trials))

    def test_heuristic_only_bound(self):
        """Test that alpha 0, beta 1 succeeds with 1/3, above the 1/25 bound."""
        experiment = ExperimentFactory.create(
            "construction_probability",
            self.square_context,
            SolverConfig(alpha=0.0, beta=1.0),
        )
        trials = 20_000
        frequency = _frequency(harness.run_trials(experiment, trials, master_seed=8))
        self.assertAlmostEqual(experiment.bound().value, 1 / 25)
        self.assertLess(abs(frequency - 1 / 3), SIGMAS * _sigma(1 / 3, trials))


@pytest.mark.integration
@pytest.mark.slow
class TestPlantedInstance(unittest.TestCase):
    """Full experiments on the four-vertex planted instance."""

    def spec(self, mode):
        return ExperimentSpec(
            mode=mode,
            generator="instance1",
            generator_params={"n": 4, "r": 2, "rand_max": 2, "seed": 11},
            alphas=(0.0,),
            betas=(None,),
            trials=5_000,
            master_seed=99,
            max_iterations=1_000,
            threads=4,
        )

    def test_construction_probability_at_threshold(self):
        """Test that beta = ceil(beta*) gives at least 1/e per construction."""
        (report,) = harness.run_construction_probability(
            self.spec("construction_probability")
        )
        sigma = _sigma(math.exp(-1), 5_000)
        self.assertGreaterEqual(report.success_frequency, math.exp(-1) - 3 * sigma)
        self.assertEqual(report.verdict, "bound respected")

    def test_optimization_time_within_bound(self):
        """Test that the mean time to the optimum stays below 1/P'."""
        (report,) = harness.run_optimization_time(self.spec("optimization_time"))
        self.assertEqual(report.success_frequency, 1.0)
        self.assertAlmostEqual(report.bound_value, 2.25)
        self.assertLessEqual(report.mean_iterations, 4.0)
        self.assertEqual(report.verdict, "bound respected")

    def test_csv_matches_trials(self):
        """Test that the trial CSV has one row per trial of every grid point."""
        spec = ExperimentSpec(
            mode="construction_probability",
            generator="instance1",
            generator_params={"n": 4, "r": 2, "rand_max": 2, "seed": 11},
            alphas=(0.0,),
            betas=(1.0, 2.0, 3.0),
            trials=1_000,
            threads=2,
        )
        reports = harness.run_experiment(spec)
        frequencies = [r.success_frequency for r in reports]
        # a stronger heuristic favours the unit-weight planted edges
        self.assertLess(frequencies[0], frequencies[2])
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "trials.csv"
            harness.write_trials_csv(reports, path)
            self.assertEqual(len(path.read_text().splitlines()), 3_001)


if __name__ == "__main__":
    unittest.main()
