import csv
import json
import subprocess
import sys

import pytest

from cayley_sidorenko import __version__
from cayley_sidorenko.cli import OUTPUT_DIR_ENV, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_k3_subdivision(capsys):
    code, out, _ = run(capsys, "check", "--base", "K3", "--lengths", "1,1,1", "--group", "Z5", "--set", "1,4")
    data = json.loads(out)
    assert code == 0 and data["gap"] > 0 and data["verdict"] == "pass"
    assert data["header"]["version"] == __version__ and len(data["header"]["configHash"]) == 16


def test_density_all(capsys):
    code, out, _ = run(capsys, "density", "--pattern", "C4", "--group", "Z4", "--set", "1,3", "--method", "all")
    data = json.loads(out)
    assert code == 0
    assert [v["value"] for v in data["results"].values()] == [0.125] * 3
    assert all(d < 1e-9 for d in data["deltas"].values())


@pytest.mark.parametrize("argv", [
    ["check", "--base", "K3", "--lengths", "1,1,1", "--group", "Z1", "--set", "1"],
    ["density", "--pattern", "C4", "--group", "Z4", "--set", "1"],
    ["density", "--pattern", "nonsense", "--group", "Z4", "--set", "1,3"],
    ["density", "--pattern", "Q3", "--group", "Z8", "--set", "1,7", "--method", "brute", "--budget", "10"],
    ["check", "--base", "K3", "--lengths", "1,1", "--group", "Z5", "--set", "1,4"],
    ["matrix", "--pattern", "K3"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["density", "--group", "Z4"])
    assert exc.value.code == 2


def test_matrix_and_oriented(capsys):
    code, out, _ = run(capsys, "matrix", "--pattern", "C4")
    comp = json.loads(out)["components"][0]
    assert code == 0 and comp["circuit"]["rows"] == 1 and comp["incidence"]["sideW"] == [0, 2]
    code, out, _ = run(capsys, "matrix", "--pattern", "K3", "--oriented")
    assert code == 0 and json.loads(out)["components"][0]["circuit"]["rows"] == 1


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--group", "Z4", "--set", "1,3", "--epsilon", "0.9")
    data = json.loads(out)
    assert code == 0 and data["eigenvalues"] == [2.0, 0.0, -2.0, 0.0] and data["offenders"] == [[2]]


def test_search_csv(capsys):
    code, out, _ = run(capsys, "search", "--group", "Z8", "--base", "K3", "--size", "2")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("# cayley-sidorenko") and "seed=0" in lines[0]
    assert lines[1] == "set,density,maxRatio,maxNonprincipalEig"
    assert [l.split(",")[0] for l in lines[2:]] == ["1;7", "3;5", "2;6"]


def test_output_file_and_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    code, out, _ = run(capsys, "spectrum", "--group", "Z3", "--set", "1,2", "--output", "sub/spec.json")
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "sub" / "spec.json").read_text())["eigenvalues"][0] == 2.0


def test_threads_do_not_change_config_hash(capsys):
    base = ["search", "--group", "Z8", "--base", "K3", "--size", "3"]
    _, a, _ = run(capsys, *base)
    _, b, _ = run(capsys, *base, "--threads", "3")
    assert a == b


def test_suite_trees(capsys):
    code, out, err = run(capsys, "suite", "--trees", "--max-order", "5")
    assert code == 0 and "failures=0" in out.splitlines()[-1]
    rows = list(csv.DictReader(out.splitlines()[1:-1]))
    assert rows and all(abs(float(r["gap"])) < 1e-9 for r in rows)


def test_suite_fault_exits_1(capsys):
    code, out, _ = run(capsys, "suite", "--inject-fault", "--max-order", "4")
    summary = out.splitlines()[-1]
    assert code == 1 and "failures=0" not in summary


def test_suite_budget(capsys):
    code, _, err = run(capsys, "suite", "--budget", "10")
    assert code == 2 and "suite" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cayley_sidorenko", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == __version__
