import csv
import json
import math

import pytest

from cayley_perc.cli import main
from cayley_perc.experiment import (COLUMNS, SCHEMA_LINE, SweepConfig, derive_seed, emit_plot, epsilon_grid,
                                    read_rows, rows_to_csv, rows_to_json, run_sweep, summarize)
from cayley_perc.errors import InputDomainError

EXPECTED_COLUMNS = ["n", "tree_id", "epsilon", "lambda", "trial", "seed", "selected_count", "largest",
                    "second_largest", "num_components", "relative_giant", "predicted_survival",
                    "predicted_giant", "gamma_nk_count"]


def small_cfg(**kw):
    base = dict(n=6, tree_spec="star", epsilon_grid=[0.5, 1.0], trials=3, master_seed=7)
    base.update(kw)
    return SweepConfig(**base)


def test_columns():
    assert COLUMNS == EXPECTED_COLUMNS


def test_lambda_one_row():
    rows = run_sweep(SweepConfig(n=5, lambda_grid=[1.0], trials=2))
    for r in rows:
        assert r.selected_count == 120 and r.largest == 120 and r.num_components == 1
        assert r.relative_giant == 1.0 and r.second_largest == 0
        assert r.epsilon == pytest.approx(3.0)


def test_lambda_zero_row():
    (r,) = run_sweep(SweepConfig(n=5, lambda_grid=[0.0], trials=1))
    assert (r.selected_count, r.largest, r.num_components, r.relative_giant) == (0, 0, 0, 0.0)
    assert r.predicted_survival == 0.0


def test_seeds_distinct_and_derived():
    rows = run_sweep(small_cfg())
    assert len(rows) == 6
    assert len({r.seed for r in rows}) == 6
    assert rows[4].seed == derive_seed(7, 1, 1)


def test_csv_schema(tmp_path):
    out = tmp_path / "s.csv"
    rows = run_sweep(small_cfg(output_path=str(out)))
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0] == SCHEMA_LINE
    assert lines[1].split(",") == EXPECTED_COLUMNS
    parsed = list(csv.DictReader(lines[1:]))
    assert len(parsed) == 6
    assert float(parsed[0]["relative_giant"]) == rows[0].relative_giant
    assert text == rows_to_csv(rows)


def test_json_and_round_trip(tmp_path):
    rows = run_sweep(small_cfg())
    j = tmp_path / "s.json"
    j.write_text(rows_to_json(rows))
    assert list(json.loads(j.read_text())[0]) == EXPECTED_COLUMNS
    assert read_rows(j) == rows
    c = tmp_path / "s.csv"
    c.write_text(rows_to_csv(rows))
    assert read_rows(c) == rows


def test_workers_do_not_change_output():
    a = rows_to_csv(run_sweep(small_cfg(n=7, workers=1)))
    b = rows_to_csv(run_sweep(small_cfg(n=7, workers=3)))
    assert a == b


def test_theory_columns():
    (r,) = run_sweep(SweepConfig(n=6, epsilon_grid=[1.0], trials=1))
    assert r.predicted_survival == pytest.approx(0.79681213, abs=1e-8)
    assert r.predicted_giant == pytest.approx(r.predicted_survival * 0.4 * 720)


def test_summarize():
    s = summarize(run_sweep(small_cfg()))
    assert [x["epsilon"] for x in s] == [0.5, 1.0]
    assert all(x["trials"] == 3 for x in s)


def test_config_validation():
    with pytest.raises(InputDomainError):
        SweepConfig(n=3, epsilon_grid=[5.0])
    with pytest.raises(InputDomainError):
        SweepConfig(trials=0)
    assert epsilon_grid(0.05, 1.0, 20)[-1] == 1.0
    assert len(epsilon_grid(0.05, 1.0, 20)) == 20


def test_plot(tmp_path):
    rows = run_sweep(small_cfg(epsilon_grid=[0.25, 0.5, 1.0]))
    p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
    emit_plot(rows, p1)
    emit_plot(rows, p2)
    assert p1.read_text().lstrip().startswith("<?xml")
    assert p1.read_bytes() == p2.read_bytes()
    with pytest.raises(InputDomainError):
        emit_plot(rows + run_sweep(small_cfg(tree_spec="bubble")), p1)


# --- CLI ----------------------------------------------------------------------

def test_cli_simulate(tmp_path, capsys):
    out = tmp_path / "o.csv"
    svg = tmp_path / "o.svg"
    code = main(["simulate", "--n", "6", "--tree", "bubble", "--eps-min", "0.5", "--eps-max", "1",
                 "--eps-steps", "2", "--trials", "2", "--out", str(out), "--plot", str(svg)])
    assert code == 0
    rows = read_rows(out)
    assert len(rows) == 4 and rows[0].tree_id == "bubble"
    assert svg.exists()
    assert main(["plot", "--input", str(out), "--plot", str(tmp_path / "p.svg")]) == 0


def test_cli_stdout_csv(capsys):
    assert main(["simulate", "--n", "5", "--lambda-list", "1.0", "--trials", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == SCHEMA_LINE and len(lines) == 3


def test_cli_config_file_with_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": 5, "tree_spec": "bubble", "trials": 4, "epsilon_grid": [0.5]}))
    out = tmp_path / "o.csv"
    assert main(["simulate", "--config", str(cfg), "--trials", "2", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 2 and rows[0].n == 5 and rows[0].tree_id == "bubble"


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["simulate", "--n", "13", "--trials", "1", "--eps-steps", "1"]) == 2
    assert main(["simulate", "--n", "12", "--trials", "1", "--eps-steps", "1"]) == 2
    assert main(["simulate", "--n", "4", "--tree", "edges:1-2,2-1,3-4", "--trials", "1"]) == 1
    assert main(["simulate", "--config", str(tmp_path / "missing.json")]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--bogus"])
    assert exc.value.code == 1
    assert main(["verify", "--suite", "diameter", "--n", "4"]) == 0


def test_cli_survival(capsys):
    assert main(["survival", "--eps-min", "1", "--eps-max", "1", "--eps-steps", "1"]) == 0
    header, row = capsys.readouterr().out.splitlines()
    assert header.startswith("epsilon,")
    assert math.isclose(float(row.split(",")[2]), 0.7968121300200201, abs_tol=1e-12)


def test_cli_diameter(capsys):
    assert main(["diameter", "--n", "5", "--tree", "star"]) == 0
    out = capsys.readouterr().out
    assert "sum of subtree diameters = 7" in out
    assert "exact diameter = 6" in out
    assert "star bound 2(n-2) = 6" in out


@pytest.mark.parametrize("suite", ["boundary", "order", "survival", "diameter"])
def test_cli_verify_suites(suite, capsys):
    assert main(["verify", "--suite", suite, "--n", "4"]) == 0
    assert "PASS" in capsys.readouterr().out
