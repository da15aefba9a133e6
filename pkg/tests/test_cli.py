import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(*args, cwd=None, env_extra=None):
    import os

    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "cascadia", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
        env=env,
    )


class TestSimulate:
    def test_row_count_and_manifest(self, tmp_path):
        out = tmp_path / "sim.csv"
        proc = run_cli(
            "simulate",
            "--graph", "dense:100",
            "--player", "budget=2,score=1.0",
            "--player", "budget=10,score=0.2",
            "--trials", "10",
            "--seed", "42",
            "--output", str(out),
        )
        assert proc.returncode == 0, proc.stderr
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert len(rows) == 20  # 10 trials x 2 players
        manifest = json.loads((tmp_path / "sim.manifest.json").read_text())
        assert manifest["subcommand"] == "simulate"
        assert manifest["master_seed"] == 42
        assert manifest["parameters"]["trials"] == 10

    def test_unknown_topology_exits_2(self, tmp_path):
        proc = run_cli("simulate", "--graph", "torus:100", "--player", "budget=1,score=1.0", cwd=tmp_path)
        assert proc.returncode == 2
        assert "dense" in proc.stderr and "ngon" in proc.stderr

    def test_bad_player_spec_exits_2(self, tmp_path):
        proc = run_cli("simulate", "--graph", "dense:10", "--player", "budget=1", cwd=tmp_path)
        assert proc.returncode == 2

    def test_edgelist_source(self, tmp_path):
        data = tmp_path / "edges.txt"
        data.write_text("# demo\n0 1\n1 2\n2 3\n")
        out = tmp_path / "sim.csv"
        proc = run_cli(
            "simulate",
            "--graph", f"edgelist:{data}",
            "--player", "budget=1,score=1.0",
            "--trials", "2",
            "--output", str(out),
        )
        assert proc.returncode == 0, proc.stderr
        rows = list(csv.DictReader(out.read_text().splitlines()))
        assert rows[0]["size"] == "4"

    def test_missing_edgelist_exits_1(self, tmp_path):
        proc = run_cli(
            "simulate",
            "--graph", "edgelist:/nonexistent/file.txt",
            "--player", "budget=1,score=1.0",
            cwd=tmp_path,
        )
        assert proc.returncode == 1

    def test_per_player_strategies(self, tmp_path):
        out = tmp_path / "sim.csv"
        proc = run_cli(
            "simulate",
            "--graph", "tree:50",
            "--player", "budget=3,score=1.0",
            "--player", "budget=5,score=0.4",
            "--strategy", "highest-degree",
            "--strategy", "degree-discount",
            "--trials", "2",
            "--output", str(out),
        )
        assert proc.returncode == 0, proc.stderr


class TestSweep:
    ARGS = (
        "sweep",
        "--topology", "ngon",
        "--sizes", "60:180:60",
        "--trials", "2",
        "--seed", "7",
    )

    def test_outputs_and_schema(self, tmp_path):
        proc = run_cli(*self.ARGS, "--out-dir", str(tmp_path))
        assert proc.returncode == 0, proc.stderr
        means = list(csv.DictReader((tmp_path / "sweep_means.csv").read_text().splitlines()))
        assert len(means) == 6  # 3 sizes x 2 players
        fits = json.loads((tmp_path / "sweep_fits.json").read_text())
        assert set(fits) == {"product", "budget"}
        assert 0 <= fits["budget"]["r_squared"] <= 1
        for stem in ("sweep_trials", "sweep_means", "sweep_fits"):
            assert (tmp_path / f"{stem}.manifest.json").exists()

    def test_identical_flags_are_byte_identical(self, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        assert run_cli(*self.ARGS, "--out-dir", str(d1)).returncode == 0
        assert run_cli(*self.ARGS, "--out-dir", str(d2)).returncode == 0
        assert (d1 / "sweep_trials.csv").read_bytes() == (d2 / "sweep_trials.csv").read_bytes()
        assert (d1 / "sweep_means.csv").read_bytes() == (d2 / "sweep_means.csv").read_bytes()

    def test_thread_env_var_honored_and_harmless(self, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        run_cli(*self.ARGS, "--out-dir", str(d1), "--threads", "1")
        run_cli(*self.ARGS, "--out-dir", str(d2), env_extra={"CASCADIA_THREADS": "5"})
        assert (d1 / "sweep_trials.csv").read_bytes() == (d2 / "sweep_trials.csv").read_bytes()

    def test_zero_size_exits_2(self, tmp_path):
        proc = run_cli("sweep", "--topology", "dense", "--sizes", "0:100:50", cwd=tmp_path)
        assert proc.returncode == 2

    def test_manifest_round_trip(self, tmp_path):
        d1 = tmp_path / "orig"
        run_cli(*self.ARGS, "--out-dir", str(d1))
        manifest = json.loads((d1 / "sweep_trials.manifest.json").read_text())
        params = manifest["parameters"]
        d2 = tmp_path / "replay"
        proc = run_cli(
            "sweep",
            "--topology", params["topology"],
            "--sizes", ",".join(str(s) for s in params["sizes"]),
            "--trials", str(params["trials"]),
            "--seed", str(manifest["master_seed"]),
            "--out-dir", str(d2),
        )
        assert proc.returncode == 0
        assert (d1 / "sweep_trials.csv").read_bytes() == (d2 / "sweep_trials.csv").read_bytes()


class TestGameMatrixCommand:
    def test_simulated_matrix_and_report(self, tmp_path):
        out = tmp_path / "m.json"
        proc = run_cli(
            "game-matrix",
            "--graph", "tree:80",
            "--player", "budget=4,score=0.9",
            "--player", "budget=4,score=0.4",
            "--strategies", "highest-degree,single-discount",
            "--trials", "2",
            "--output", str(out),
        )
        assert proc.returncode == 0, proc.stderr
        data = json.loads(out.read_text())
        assert len(data["cells"]) == 2
        assert "pure Nash equilibria:" in proc.stdout
        assert (tmp_path / "m.manifest.json").exists()

    def test_single_strategy_profile_is_both_equilibria(self, tmp_path):
        out = tmp_path / "m.json"
        proc = run_cli(
            "game-matrix",
            "--graph", "ngon:30",
            "--player", "budget=2,score=0.9",
            "--player", "budget=2,score=0.4",
            "--strategies", "highest-degree",
            "--trials", "2",
            "--output", str(out),
        )
        assert proc.returncode == 0, proc.stderr
        assert "dominant-strategy equilibrium: (highest-degree, highest-degree)" in proc.stdout
        assert "pure Nash equilibria: (highest-degree, highest-degree)" in proc.stdout

    def test_analyze_only_on_stored_matrix(self, tmp_path):
        proc = run_cli(
            "game-matrix",
            "--matrix-file", str(FIXTURES / "fig3_matrix.json"),
            "--analyze-only",
            cwd=tmp_path,
        )
        assert proc.returncode == 0, proc.stderr
        assert "dominant-strategy equilibrium: none" in proc.stdout
        assert "pure Nash equilibria: (highest-degree, degree-discount)" in proc.stdout

    def test_analyze_only_requires_matrix_file(self, tmp_path):
        proc = run_cli("game-matrix", "--analyze-only", cwd=tmp_path)
        assert proc.returncode == 2

    def test_needs_two_players(self, tmp_path):
        proc = run_cli(
            "game-matrix", "--graph", "ngon:10", "--player", "budget=1,score=1.0", cwd=tmp_path
        )
        assert proc.returncode == 2


class TestBounds:
    def test_values_within_bounds(self, tmp_path):
        proc = run_cli(
            "bounds", "--c", "0.02", "--m", "5", "--p1", "1", "--p2", "0.2",
            "--n", "1000,5000,9000", cwd=tmp_path,
        )
        assert proc.returncode == 0, proc.stderr
        lines = [l for l in proc.stdout.splitlines() if l and l[0].isdigit()]
        assert len(lines) == 3
        assert all(line.endswith(",true") for line in lines)

    def test_zero_score_gives_zero_interval(self, tmp_path):
        proc = run_cli(
            "bounds", "--c", "0.02", "--m", "5", "--p1", "0", "--p2", "0.2",
            "--n", "1000", cwd=tmp_path,
        )
        assert proc.returncode == 0
        assert "lower=0.000000000 upper=0.000000000" in proc.stdout

    def test_overfull_seeds_exit_2(self, tmp_path):
        proc = run_cli(
            "bounds", "--c", "0.5", "--m", "5", "--p1", "1", "--p2", "0.2",
            "--n", "1000", cwd=tmp_path,
        )
        assert proc.returncode == 2


class TestGraphStats:
    def test_ngon_exact(self, tmp_path):
        proc = run_cli("graph-stats", "--graph", "ngon:1000", "--exact", cwd=tmp_path)
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["diameter"] == 500
        assert data["connected"] is True
        assert data["approximate"] is False

    def test_dense(self, tmp_path):
        proc = run_cli("graph-stats", "--graph", "dense:200", cwd=tmp_path)
        data = json.loads(proc.stdout)
        assert data["diameter"] == 1
        assert data["average_degree"] == 199

    def test_edgelist_average_degree(self, tmp_path):
        edges = tmp_path / "g.txt"
        edges.write_text("\n".join(f"{i} {i+1}" for i in range(99)))
        proc = run_cli("graph-stats", "--graph", f"edgelist:{edges}", "--exact", cwd=tmp_path)
        data = json.loads(proc.stdout)
        assert data["nodes"] == 100
        assert data["average_degree"] == pytest.approx(2 * 99 / 100)

    def test_output_file_with_manifest(self, tmp_path):
        out = tmp_path / "stats.json"
        proc = run_cli("graph-stats", "--graph", "dense:10", "--output", str(out), cwd=tmp_path)
        assert proc.returncode == 0
        assert json.loads(out.read_text())["edges"] == 45
        assert (tmp_path / "stats.manifest.json").exists()


class TestGlobalBehavior:
    def test_version(self):
        proc = run_cli("--version")
        assert proc.returncode == 0
        assert "cascadia" in proc.stdout

    def test_seed_random_is_accepted_and_recorded(self, tmp_path):
        out = tmp_path / "sim.csv"
        proc = run_cli(
            "simulate", "--graph", "dense:20", "--player", "budget=1,score=1.0",
            "--trials", "1", "--seed", "random", "--output", str(out),
        )
        assert proc.returncode == 0
        manifest = json.loads((tmp_path / "sim.manifest.json").read_text())
        assert isinstance(manifest["master_seed"], int)

    def test_bad_seed_exits_2(self, tmp_path):
        proc = run_cli(
            "simulate", "--graph", "dense:20", "--player", "budget=1,score=1.0",
            "--seed", "maybe", cwd=tmp_path,
        )
        assert proc.returncode == 2
