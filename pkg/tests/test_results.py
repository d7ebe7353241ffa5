import pytest

from src.experiment import ExperimentConfig, last_sweep, run_experiment
from src.report import RUN_FIELDS, format_table, read_csv, summarize, write_csv
from src.results import ResultStore
from src.solve import OPTIMAL, BranchAndCutReport


@pytest.fixture
def store(tmp_path):
    return ResultStore(str(tmp_path / "results.db"))


def report_dict(z_init=50.0, z_root=90.0, z_ub=100.0, z_lb=100.0, status=OPTIMAL, cuts=7):
    report = BranchAndCutReport(status, "spi", z_init=z_init, z_root=z_root, z_ub=z_ub, z_lb=z_lb,
                                cuts_added=cuts, nodes_explored=3, wall_time=1.25)
    return report.to_dict()


KEY = (10, 100, 5, 1, "spi", "half")


class TestResultStore:
    def test_save_and_read_back(self, store):
        assert not store.has_run(KEY)
        store.save_run(KEY, report_dict())
        assert store.has_run(KEY)

        runs = store.get_runs()
        assert len(runs) == 1
        run = runs[0]
        assert (run["n"], run["f"], run["c"], run["seed"], run["mode"], run["preset"]) == KEY
        assert run["status"] == OPTIMAL
        assert run["gap_imp"] == pytest.approx(80)
        assert run["error"] is None

    def test_save_replaces(self, store):
        store.save_run(KEY, report_dict(cuts=1))
        store.save_run(KEY, report_dict(cuts=2))
        runs = store.get_runs()
        assert len(runs) == 1
        assert runs[0]["cuts_added"] == 2

    def test_failed_run(self, store):
        store.save_run(KEY, {}, "InstanceError: bad")
        run = store.get_runs()[0]
        assert run["error"] == "InstanceError: bad"
        assert run["status"] is None
        assert store.get_stats()["failed_runs"] == 1

    def test_runs_sorted_by_cell_then_seed(self, store):
        store.save_run((10, 100, 5, 2, "spi", "half"), report_dict())
        store.save_run((10, 100, 5, 1, "spi", "half"), report_dict())
        store.save_run((5, 100, 5, 1, "spi", "half"), report_dict())
        keys = [(r["n"], r["seed"]) for r in store.get_runs()]
        assert keys == [(5, 1), (10, 1), (10, 2)]

    def test_delete(self, store):
        store.save_run(KEY, report_dict())
        assert store.delete_runs() == 1
        assert store.get_runs() == []

    def test_metadata(self, store):
        assert store.get_metadata("seed", "none") == "none"
        store.set_metadata("seed", 7)
        assert store.get_metadata("seed") == "7"

    def test_stats(self, store):
        store.save_run(KEY, report_dict())
        store.save_run((10, 100, 5, 1, "mspi", "half"), report_dict())
        stats = store.get_stats()
        assert stats["total_runs"] == 2
        assert stats["failed_runs"] == 0
        assert stats["cells"] == 1
        assert stats["modes"] == ["mspi", "spi"]
        assert stats["first_run"] is not None

    def test_unopenable_path(self, tmp_path):
        with pytest.raises(RuntimeError):
            ResultStore(str(tmp_path / "missing" / "results.db"))


def run(seed, mode="spi", error=None, **kwargs):
    data = {"n": 10, "f": 100, "c": 5, "seed": seed, "mode": mode, "preset": "half", "error": error}
    data.update(report_dict(**kwargs) if error is None else {})
    return data


class TestReport:
    def test_csv_round_trip(self, tmp_path):
        path = tmp_path / "runs.csv"
        runs = [run(1), run(2, z_ub=None, z_lb=80.0, status="time_limit")]
        write_csv(runs, path)
        back = read_csv(path)
        assert len(back) == 2
        assert back[0]["n"] == 10 and back[0]["z_ub"] == pytest.approx(100)
        assert back[1]["z_ub"] is None
        assert back[1]["status"] == "time_limit"

    def test_empty_csv_has_header(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_csv([], path)
        assert path.read_text(encoding="utf-8").strip().split(",") == RUN_FIELDS
        assert read_csv(path) == []

    def test_summarize_averages(self):
        runs = [run(1, z_root=90.0), run(2, z_root=70.0), run(3, error="InstanceError: bad")]
        summary = summarize(runs)
        assert len(summary) == 1
        row = summary[0]
        assert row["runs"] == 3
        assert row["init_gap"] == pytest.approx(50)
        # gap improvements 80 and 40
        assert row["gap_imp"] == pytest.approx(60)
        assert row["end_gap"] == pytest.approx(0)
        assert row["unsolved"] == 1

    def test_unsolved_counts_limits(self):
        runs = [run(1), run(2, status="node_limit", z_lb=90.0)]
        row = summarize(runs)[0]
        assert row["unsolved"] == 1
        assert row["end_gap"] == pytest.approx(5)

    def test_cells_split_by_mode(self):
        summary = summarize([run(1, mode="spi"), run(1, mode="mspi")])
        assert [row["mode"] for row in summary] == ["mspi", "spi"]

    def test_format_table(self):
        table = format_table(summarize([run(1)]))
        lines = table.splitlines()
        assert lines[0].split() == ["n", "f", "c", "mode", "preset", "runs", "init_gap", "gap_imp",
                                    "cuts", "nodes", "time", "end_gap", "unsolved"]
        assert lines[2].split() == ["10", "100", "5", "spi", "half", "1", "50", "80", "7", "3", "1.2", "0", "0"]


class TestSweepRecord:
    def config(self):
        return ExperimentConfig(n=[4], f=[100], c=[5], seeds=1, modes=["none"], presets=["half"],
                                node_limit=50, jobs=1, show_progress=False)

    def test_nothing_swept(self, store):
        assert last_sweep(store) is None

    def test_sweep_is_recorded(self, store):
        assert run_experiment(self.config(), store) == (1, 0, 0)
        sweep = last_sweep(store)
        assert sweep["n"] == [4]
        assert sweep["modes"] == ["none"]
        assert (sweep["run"], sweep["skipped"], sweep["failed"]) == (1, 0, 0)

        assert run_experiment(self.config(), store) == (0, 1, 0)
        assert last_sweep(store)["skipped"] == 1
