import json

import pytest

from main import EXIT_OK, EXIT_USAGE, main
from src.instance import INCOMING, NonPathArc, PathInstance, load_instance, save_instance


@pytest.fixture
def instance_file(tmp_path, example1):
    """Example path instance with setup and holding costs."""
    arcs = [NonPathArc(a.id, a.node, INCOMING, a.capacity, 40, 1) for a in example1.arcs]
    inst = PathInstance(example1.n, example1.demand, example1.fwd_cap, example1.bwd_cap, arcs, [1, 1, 1], [3, 3, 3])
    path = tmp_path / "example.json"
    save_instance(inst, str(path))
    return path


def test_generate(tmp_path):
    out = tmp_path / "instances"
    code = main(["--quiet", "generate", "--n", "6", "--f", "100", "--c", "5", "--seeds", "2", "--out", str(out)])
    assert code == EXIT_OK
    files = sorted(p.name for p in out.iterdir())
    assert files == ["lot_n6_f100_c5_s1.json", "lot_n6_f100_c5_s2.json"]
    assert load_instance(str(out / files[0])).n == 6


def test_solve_writes_json(tmp_path, instance_file):
    report_path = tmp_path / "report.json"
    code = main(["--quiet", "solve", str(instance_file), "--cuts", "spi", "--json", str(report_path)])
    assert code == EXIT_OK
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert report["status"] == "optimal"
    assert report["z_ub"] == pytest.approx(report["z_lb"])


def test_cut_writes_lp_file(tmp_path, instance_file):
    out = tmp_path / "cuts.lp"
    code = main(["--quiet", "cut", str(instance_file), "--out", str(out)])
    assert code == EXIT_OK


def test_dump_profile(tmp_path, instance_file):
    out = tmp_path / "profile.json"
    code = main(["--quiet", "cut", str(instance_file), "--dump-profile", "1", "4", "--s-plus", "2", "3",
                 "--out", str(out)])
    assert code == EXIT_OK
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["profile"]["v"] == 40
    assert data["profile"]["lambda"] == [5, 25, 20, 5]


def test_missing_instance_is_usage_error(tmp_path):
    assert main(["--quiet", "solve", str(tmp_path / "nope.json")]) == EXIT_USAGE


def test_bad_flag_exits_with_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == EXIT_USAGE


def test_verify_mincut(capsys):
    assert main(["--quiet", "verify", "--scope", "mincut", "--seed", "3"]) == EXIT_OK
    assert "mincut" in capsys.readouterr().out


def test_report_from_csv(tmp_path, capsys):
    from src.report import write_csv

    path = tmp_path / "runs.csv"
    write_csv([{"n": 10, "f": 100, "c": 5, "seed": 1, "mode": "spi", "preset": "half", "status": "optimal",
                "z_init": 50.0, "z_root": 90.0, "z_ub": 100.0, "z_lb": 100.0}], path)
    assert main(["--quiet", "report", "--csv", str(path)]) == EXIT_OK
    assert "spi" in capsys.readouterr().out
