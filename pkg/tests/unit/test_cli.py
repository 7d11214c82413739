import io
import json
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pandas as pd

# Add project root to path for absolute imports
project_root = Path(__file__).parent.parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.__version__ import __version__  # noqa: E402
from src.cli import (  # noqa: E402
    EXIT_INSTANCE,
    EXIT_OK,
    EXIT_TARGET_MISSED,
    EXIT_USAGE,
    main,
)

TRIANGLE = "3 3\n1 1 2\n1 2 3\n1 1 3\n"
CROSSED = "4 5\n1 1 2\n1 3 4\n2 1 3\n2 2 4\n2 1 4\n"
UNCOVERED = "3 1\n1 1 2\n"
MALFORMED = "3 2\n1 1 2\n"


class TestCli(unittest.TestCase):
    """Shared helpers for command-line tests."""

    def setUp(self):
        """Write instance files to a scratch directory."""
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        for name, text in (
            ("triangle", TRIANGLE),
            ("crossed", CROSSED),
            ("uncovered", UNCOVERED),
            ("malformed", MALFORMED),
        ):
            (self.tmp / f"{name}.hgr").write_text(text, encoding="utf-8")

    def tearDown(self):
        """Remove the scratch directory."""
        self._tmp.cleanup()

    def path(self, name):
        return str(self.tmp / name)

    def run_cli(self, *argv):
        """Run the CLI and capture (exit code, stdout, stderr)."""
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()


class TestValidateAndOracle(TestCli):
    """Test cases for validate and oracle."""

    def test_valid_instance(self):
        """Test that a valid instance exits 0."""
        code, out, _ = self.run_cli("validate", self.path("triangle.hgr"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "")

    def test_invalid_instances(self):
        """Test that broken instances exit 2."""
        for name in ("uncovered.hgr", "malformed.hgr", "missing.hgr"):
            code, _, err = self.run_cli("validate", self.path(name))
            self.assertEqual(code, EXIT_INSTANCE, name)
            self.assertIn("error", err)

    def test_oracle_vertex_cover(self):
        """Test the exhaustive vertex cover of the triangle."""
        code, out, _ = self.run_cli(
            "oracle", self.path("triangle.hgr"), "--problem", "vertex-cover"
        )
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["value"], 2.0)
        self.assertEqual(payload["witness"], [1, 2])


class TestBounds(TestCli):
    """Test cases for the bounds command."""

    def test_theorem1(self):
        """Test the pheromone-only bound."""
        code, out, _ = self.run_cli(
            "bounds", "theorem1", "--m", "5", "--k", "2", "--c-n", "2"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["value"], 28.0)

    def test_beta_star(self):
        """Test the threshold on the four-vertex planted instance."""
        code, out, _ = self.run_cli(
            "bounds",
            "beta-star",
            "--m",
            "6",
            "--k",
            "2",
            "--eta-prime-min",
            "2",
            "--eta-1-max",
            "1",
        )
        self.assertEqual(code, EXIT_OK)
        self.assertAlmostEqual(json.loads(out)["value"], 3.0)

    def test_precondition_is_usage_error(self):
        """Test that violated preconditions exit 1."""
        code, out, err = self.run_cli(
            "bounds",
            "beta-star",
            "--m",
            "6",
            "--k",
            "2",
            "--eta-prime-min",
            "1",
            "--eta-1-max",
            "1",
        )
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")


class TestGenAndSolve(TestCli):
    """Test cases for gen and solve."""

    def test_gen_to_stdout(self):
        """Test that HGR text goes to stdout."""
        code, out, _ = self.run_cli(
            "gen", "random", "--n", "4", "--m", "3", "--max-card", "2", "--seed", "1"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("4 3\n"))
        self.assertEqual(len(out.splitlines()), 4)

    def test_gen_then_solve_with_auto_beta(self):
        """Test the planted instance round trip through files."""
        hgr, meta = self.path("planted.hgr"), self.path("planted.json")
        code, _, _ = self.run_cli(
            "gen",
            "instance1",
            "--n",
            "4",
            "--r",
            "2",
            "--rand-max",
            "2",
            "--seed",
            "1",
            "--out",
            hgr,
            "--meta",
            meta,
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(Path(meta).read_text())["k"], 2)
        code, out, _ = self.run_cli(
            "solve",
            hgr,
            "--alpha",
            "0",
            "--beta",
            "auto",
            "--meta",
            meta,
            "--target",
            "2",
            "--max-iters",
            "500",
            "--seed",
            "3",
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["best_fitness"], 2.0)

    def test_auto_beta_needs_meta(self):
        """Test that 'auto' without metadata is a usage error."""
        code, _, err = self.run_cli(
            "solve", self.path("crossed.hgr"), "--beta", "auto", "--seed", "1"
        )
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--beta", err)

    def test_target_missed(self):
        """Test that an unreachable target exits 3 and still prints the result."""
        code, out, _ = self.run_cli(
            "solve",
            self.path("crossed.hgr"),
            "--target",
            "1",
            "--max-iters",
            "5",
            "--seed",
            "2",
        )
        self.assertEqual(code, EXIT_TARGET_MISSED)
        self.assertEqual(json.loads(out)["iterations_run"], 5)

    def test_trace_flag(self):
        """Test that --trace adds improvement events."""
        code, out, _ = self.run_cli(
            "solve", self.path("crossed.hgr"), "--trace", "--seed", "4"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertIn("trace", json.loads(out))

    def test_weak_independent_set(self):
        """Test the weak-independent set reduction with a lower-bound target."""
        code, out, _ = self.run_cli(
            "solve",
            self.path("triangle.hgr"),
            "--problem",
            "weak-is",
            "--target",
            "1",
            "--seed",
            "0",
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["value"], 1.0)

    def test_output_is_deterministic(self):
        """Test that a fixed seed reproduces stdout byte for byte."""
        argv = ("solve", self.path("crossed.hgr"), "--seed", "42", "--trace")
        self.assertEqual(self.run_cli(*argv)[1], self.run_cli(*argv)[1])

    def test_strict_requires_seed(self):
        """Test that --strict refuses implicit seeds."""
        code, _, err = self.run_cli("--strict", "solve", self.path("crossed.hgr"))
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--seed", err)


class TestParser(TestCli):
    """Test cases for argument parsing."""

    def test_unknown_command(self):
        """Test that argparse errors exit with the usage code."""
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main(["frobnicate"])
        self.assertEqual(ctx.exception.code, EXIT_USAGE)

    def test_version(self):
        """Test --version."""
        out = io.StringIO()
        with redirect_stdout(out):
            with self.assertRaises(SystemExit) as ctx:
                main(["--version"])
        self.assertEqual(ctx.exception.code, 0)
        self.assertIn(__version__, out.getvalue())

    def help_text(self, *argv):
        out = io.StringIO()
        with redirect_stdout(out):
            with self.assertRaises(SystemExit) as ctx:
                main([*argv, "--help"])
        self.assertEqual(ctx.exception.code, 0)
        return " ".join(out.getvalue().split())

    def test_instance1_help_explains_closing_edge(self):
        """Test that gen instance1 --help states both closing-edge conventions."""
        text = self.help_text("gen", "instance1")
        self.assertIn("k = ceil(n/r)", text)
        self.assertIn("k = floor(n/r) + 1", text)
        self.assertIn("(default 10)", text)

    def test_bounds_help_documents_ratios(self):
        """Test that every bound flag carries a description."""
        text = self.help_text("bounds", "theorem2")
        self.assertIn("largest |e|/w(e), > 0", text)
        self.assertIn("0 < eta-min <= eta-max", text)
        self.assertIn("heuristic exponent, >= 0", text)
        for theorem in ("theorem3", "beta-star"):
            text = self.help_text("bounds", theorem)
            self.assertIn("smallest |e|/w(e) over the planted cover", text)
            self.assertIn("largest |e|/w(e) outside the planted cover", text)

    def test_experiment_help_states_alpha_default(self):
        """Test the documented α default next to --beta auto."""
        text = self.help_text("experiment")
        self.assertIn("default 0 with --beta auto, otherwise 1", text)


class TestExperiment(TestCli):
    """Test cases for the experiment command."""

    def test_inline_planted_experiment(self):
        """Test the construction-probability check on the planted instance."""
        csv_path = self.path("trials.csv")
        code, out, _ = self.run_cli(
            "experiment",
            "--gen",
            "instance1",
            "--n",
            "4",
            "--r",
            "2",
            "--rand-max",
            "2",
            "--mode",
            "construction_probability",
            "--alpha",
            "0",
            "--beta",
            "auto",
            "--master-seed",
            "7",
            "--trials",
            "500",
            "--threads",
            "1",
            "--csv",
            csv_path,
        )
        self.assertEqual(code, EXIT_OK)
        (report,) = json.loads(out)["reports"]
        self.assertEqual(report["verdict"], "bound respected")
        self.assertEqual(report["trials"], 500)
        self.assertEqual(len(pd.read_csv(csv_path)), 500)

    def test_beta_auto_defaults_alpha_to_zero(self):
        """Test the documented planted run without --alpha or --rand-max."""
        code, out, _ = self.run_cli(
            "experiment",
            "--gen",
            "instance1",
            "--n",
            "4",
            "--r",
            "2",
            "--mode",
            "construction_probability",
            "--beta",
            "auto",
            "--master-seed",
            "1",
        )
        self.assertEqual(code, EXIT_OK)
        (report,) = json.loads(out)["reports"]
        self.assertEqual(report["parameters"]["alpha"], 0.0)
        self.assertEqual(report["verdict"], "bound respected")

    def test_explicit_alpha_wins_over_beta_auto(self):
        """Test that an explicit α is kept next to --beta auto."""
        code, out, _ = self.run_cli(
            "experiment",
            "--gen",
            "instance1",
            "--n",
            "4",
            "--r",
            "2",
            "--mode",
            "construction_probability",
            "--alpha",
            "1",
            "--beta",
            "auto",
            "--master-seed",
            "1",
            "--trials",
            "10",
        )
        self.assertEqual(code, EXIT_OK)
        (report,) = json.loads(out)["reports"]
        self.assertEqual(report["parameters"]["alpha"], 1.0)
        self.assertEqual(report["verdict"], "no bound")

    def test_config_file(self):
        """Test a flat configuration file."""
        config = self.tmp / "run.cfg"
        config.write_text(
            f"instance_path = {self.path('crossed.hgr')}\n"
            "master_seed = 3\n"
            "trials = 4\n"
            "threads = 1\n"
            "betas = 1, 2\n",
            encoding="utf-8",
        )
        code, out, _ = self.run_cli("experiment", "--config", str(config))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(json.loads(out)["reports"]), 2)

    def test_strict_config_needs_master_seed(self):
        """Test that --strict requires master_seed in the file."""
        config = self.tmp / "run.cfg"
        config.write_text(
            f"instance_path = {self.path('crossed.hgr')}\n", encoding="utf-8"
        )
        code, _, _ = self.run_cli("--strict", "experiment", "--config", str(config))
        self.assertEqual(code, EXIT_USAGE)

    def test_missing_instance(self):
        """Test that an experiment needs an instance."""
        code, _, _ = self.run_cli("experiment", "--master-seed", "1")
        self.assertEqual(code, EXIT_USAGE)

    def test_bad_grid_value(self):
        """Test that malformed grid values are usage errors."""
        code, _, _ = self.run_cli(
            "experiment",
            "--instance",
            self.path("crossed.hgr"),
            "--alpha",
            "fast",
        )
        self.assertEqual(code, EXIT_USAGE)


if __name__ == "__main__":
    unittest.main()
