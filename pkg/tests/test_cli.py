"""Sweep runner, serialization, error reports, and the console entry point."""

import io
import json

import numpy as np
import pytest

from rabispec.cli import (ConfigError, MissingExactError, SweepConfig,
                          SweepRecord, main, read_records, report_errors,
                          run_sweep, write_csv, write_json)

FIG1B = dict(axis="detuning_delta", start=-0.5, stop=0.5, count=21,
             methods=("exact", "grwa", "brwa"), levels=7, g=0.5, epsilon=0.0)


def small_config(**overrides):
    base = dict(axis="g", start=0.0, stop=0.4, count=3,
                methods=("exact", "zoa", "grwa"), levels=4,
                delta=1.0, epsilon=0.5)
    base.update(overrides)
    return SweepConfig(**base)


def test_config_validation():
    with pytest.raises(ConfigError):
        small_config(count=1)
    with pytest.raises(ConfigError):
        small_config(start=1.0, stop=0.0)
    with pytest.raises(ConfigError):
        small_config(levels=0)
    with pytest.raises(ConfigError):
        small_config(methods=())
    with pytest.raises(ConfigError):
        small_config(methods=("exact", "magic"))
    with pytest.raises(ConfigError):
        small_config(axis="epsilon", epsilon=0.5, g=None)
    with pytest.raises(ConfigError):
        small_config(fmt="xml")


def test_points_follow_axis():
    cfg = small_config()
    pts = cfg.points()
    assert [p.g for p in pts] == [0.0, 0.2, 0.4]
    assert all(p.delta == 1.0 and p.epsilon == 0.5 for p in pts)
    cfg = SweepConfig(axis="detuning_delta", start=-0.5, stop=0.5, count=3,
                      methods=("exact",), levels=2, g=0.3, epsilon=0.0)
    assert [p.delta for p in cfg.points()] == [0.5, 1.0, 1.5]


def test_sweep_decoupled_matches_closed_form():
    cfg = SweepConfig(axis="g", start=0.1, stop=0.5, count=2,
                      methods=("exact",), levels=4, delta=0.0, epsilon=0.4)
    records = run_sweep(cfg)
    assert len(records) == 8
    for r in records:
        expected = sorted(m - r.g**2 + s * 0.2 for m in range(3) for s in (-1, 1))
        assert r.energy == pytest.approx(expected[r.level_index], abs=1e-12)
        assert r.flag == "ok"
        assert r.n_tr_used is not None


def test_sweep_record_grid_is_rectangular():
    records = run_sweep(small_config())
    assert len(records) == 3 * 3 * 4
    # point-major, method-minor, level-minor ordering
    keys = [(r.g, r.method, r.level_index) for r in records]
    assert keys == sorted(keys, key=lambda k: (k[0], ["exact", "zoa", "grwa"].index(k[1]), k[2]))


def test_sweep_flags_domain_errors_without_aborting():
    cfg = small_config(methods=("exact", "dsc", "variational", "brwa"))
    records = run_sweep(cfg)
    by_method = {}
    for r in records:
        by_method.setdefault(r.method, []).append(r)
    assert all(r.flag == "ok" for r in by_method["exact"])
    # finite bias: dsc, variational and brwa must fail per-point, not abort
    for method in ("dsc", "variational", "brwa"):
        assert all(r.flag == "error:domain" for r in by_method[method])
        assert all(r.energy is None for r in by_method[method])


def test_sweep_approximations_track_exact():
    records = run_sweep(small_config(methods=("exact", "grwa", "vvp", "zoa")))
    exact = {(r.g, r.level_index): r.energy for r in records if r.method == "exact"}
    for r in records:
        if r.method != "exact" and r.energy is not None:
            assert abs(r.energy - exact[(r.g, r.level_index)]) < 0.25


def test_sweep_variational_emits_single_level():
    cfg = small_config(epsilon=0.0, methods=("exact", "variational"))
    records = [r for r in run_sweep(cfg) if r.method == "variational"]
    assert len(records) == 3                 # one point, one ground level each
    assert all(r.level_index == 0 and r.energy is not None and r.flag == "ok"
               for r in records)
    # invariant: energy present exactly when the flag is ok/out_of_regime
    for r in run_sweep(cfg):
        assert (r.energy is not None) == (r.flag in ("ok", "out_of_regime"))


def test_csv_round_trip(tmp_path):
    records = run_sweep(small_config())
    path = tmp_path / "sweep.csv"
    with open(path, "w", newline="", encoding="utf-8") as f:
        write_csv(records, f)
    assert open(path, encoding="utf-8").readline().strip() == \
        "g,delta,epsilon,method,level_index,energy,n_tr_used,flag"
    assert read_records(str(path)) == records


def test_json_round_trip(tmp_path):
    records = run_sweep(small_config())
    path = tmp_path / "sweep.json"
    with open(path, "w", encoding="utf-8") as f:
        write_json(records, f)
    assert read_records(str(path)) == records


def test_report_errors_zero_for_identical():
    records = [
        SweepRecord(0.1, 1.0, 0.0, "exact", 0, -0.5, 16, "ok"),
        SweepRecord(0.1, 1.0, 0.0, "grwa", 0, -0.5, None, "ok"),
    ]
    rows = report_errors(records)
    assert rows == [("grwa", 0, 1, 0.0, 0.0)]


def test_report_errors_requires_exact_everywhere():
    records = [SweepRecord(0.1, 1.0, 0.0, "grwa", 0, -0.5, None, "ok")]
    with pytest.raises(MissingExactError):
        report_errors(records)


def test_fig1b_brwa_beats_grwa_per_level():
    records = run_sweep(SweepConfig(**FIG1B))
    rows = {(m, lvl): mx for m, lvl, _, mx, _ in report_errors(records)}
    for level in range(7):
        assert rows[("brwa", level)] <= rows[("grwa", level)]


def test_cli_sweep_and_compare(tmp_path, capsys):
    out = tmp_path / "run.csv"
    code = main(["sweep", "--axis", "g", "--range", "0:0.4:3", "--delta", "1",
                 "--epsilon", "0.5", "--methods", "exact,zoa,grwa",
                 "--levels", "4", "--out", str(out)])
    assert code == 0
    assert read_records(str(out))
    code = main(["compare", "--input", str(out)])
    assert code == 0
    assert "max_abs_err" in capsys.readouterr().out


def test_cli_json_output(tmp_path):
    out = tmp_path / "run.json"
    code = main(["sweep", "--axis", "epsilon", "--range", "0:1:2", "--delta", "1",
                 "--g", "0.2", "--methods", "exact", "--levels", "2",
                 "--format", "json", "--out", str(out)])
    assert code == 0
    parsed = json.loads(out.read_text())
    assert len(parsed) == 4
    assert {"g", "delta", "epsilon", "method", "level_index", "energy",
            "n_tr_used", "flag"} == set(parsed[0])


def test_cli_config_errors_exit_1(capsys):
    assert main(["sweep", "--axis", "g", "--range", "1:0:5", "--delta", "1",
                 "--epsilon", "0"]) == 1
    assert main(["sweep", "--axis", "g", "--range", "0:1:5", "--delta", "1",
                 "--epsilon", "0", "--methods", "nope"]) == 1
    assert main(["sweep", "--axis", "g", "--range", "0:1:5", "--delta", "1",
                 "--epsilon", "0", "--g", "0.5"]) == 1
    assert main(["compare", "--input", "/nonexistent/file.csv"]) == 1
    capsys.readouterr()


def test_cli_all_points_failed_exit_2(tmp_path):
    # dsc requires zero bias, so every record errors out
    out = tmp_path / "bad.csv"
    code = main(["sweep", "--axis", "g", "--range", "0:0.4:2", "--delta", "1",
                 "--epsilon", "0.5", "--methods", "dsc", "--levels", "2",
                 "--out", str(out)])
    assert code == 2


def test_cli_converge_reports(capsys):
    code = main(["converge", "--delta", "1", "--g", "0.3", "--levels", "4"])
    assert code == 0
    out = capsys.readouterr().out
    assert "converged: n_tr_used=" in out


def test_sweep_deterministic_with_threads(monkeypatch):
    cfg = small_config()
    base = run_sweep(cfg)
    monkeypatch.setenv("RABISPEC_JOBS", "4")
    assert run_sweep(cfg) == base


def test_fig1b_csv_is_byte_identical():
    cfg = SweepConfig(**FIG1B)
    outputs = []
    for _ in range(2):
        buf = io.StringIO()
        write_csv(run_sweep(cfg), buf)
        outputs.append(buf.getvalue().encode())
    assert outputs[0] == outputs[1]
