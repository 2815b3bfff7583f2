import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from accel_qed import __version__
from accel_qed.atom import Lorentz
from accel_qed.cli import ConfigError, format_number, main, parse_config, run
from accel_qed.core import unruh_temperature
from accel_qed.pair import PairConfig, static_vdw

PAIR = {
    "command": "pair",
    "R_cm": {"start": 1e-8, "stop": 1e-4, "points": 40, "spacing": "log"},
    "alpha_a": {"model": "lorentz", "alpha0_cm3": 4.4e-25, "omega0_rad_s": 1.55e16},
    "alpha_b": {"model": "lorentz", "alpha0_cm3": 4.4e-25, "omega0_rad_s": 1.55e16},
}


def write_config(tmp_path, doc, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# --- parsing -------------------------------------------------------------------------

def test_minimal_pair_config_defaults():
    cfg = parse_config(json.dumps(PAIR))
    assert cfg.command == "pair"
    assert len(cfg.grids["R_cm"]) == 40
    assert cfg.grids["acceleration_cm_s2"] == (0.0,)
    assert cfg.grids["time_s"] == (0.0,)
    assert cfg.quad.rel_tol == 1e-8
    assert cfg.threads == 1
    assert cfg.grids["R_cm"][0] == 1e-8 and cfg.grids["R_cm"][-1] == pytest.approx(1e-4, rel=1e-15)


def test_round_trip():
    doc = dict(PAIR, acceleration_m_s2=[1e18, 2e18], time_s=[1e-6], quad={"rel_tol": 1e-9})
    cfg = parse_config(json.dumps(doc))
    again = parse_config(json.dumps(cfg.to_dict()))
    assert again == cfg
    assert again.digest() == cfg.digest()


def test_units_are_converted():
    cfg = parse_config(json.dumps(dict(PAIR, acceleration_g0=[1.0, 2.0])))
    assert cfg.grids["acceleration_cm_s2"] == (980.665, 1961.33)


@pytest.mark.parametrize(
    "change, fragment",
    [
        ({"R_cm": [-1.0]}, "R_cm/0"),
        ({"R": [1e-6]}, "'R' was unexpected"),
        ({"alpha_a": {"model": "lorentz", "alpha0_cm3": 1.0, "omega0_rad_s": -2.0}}, "alpha_a/omega0_rad_s"),
        ({"alpha_b": {"model": "static"}}, "alpha_b: 'alpha0_cm3' is a required property"),
        ({"time_s": {"start": 0, "stop": 1, "points": 0}}, "time_s/points"),
        ({"R_cm": {"start": 0, "stop": 1, "points": 3, "spacing": "log"}}, "R_cm"),
        ({"acceleration_cm_s2": [1.0], "acceleration_g0": [1.0]}, "one unit only"),
        ({"command": "lamb"}, "command"),
    ],
)
def test_schema_rejections_name_the_field(change, fragment):
    with pytest.raises(ConfigError) as info:
        parse_config(json.dumps(dict(PAIR, **change)), "pair")
    assert any(fragment in e for e in info.value.errors), info.value.errors


def test_all_errors_are_collected():
    doc = dict(PAIR, R_cm=[-1.0], threads=0, bogus=1)
    with pytest.raises(ConfigError) as info:
        parse_config(json.dumps(doc))
    assert len(info.value.errors) >= 3


def test_malformed_json():
    with pytest.raises(ConfigError, match="malformed"):
        parse_config("{not json")


def test_unruh_needs_one_input():
    with pytest.raises(ConfigError, match="exactly one"):
        parse_config(json.dumps({"command": "unruh"}))
    with pytest.raises(ConfigError, match="exactly one"):
        parse_config(json.dumps({"command": "unruh", "temperature_K": [1.0], "acceleration_cm_s2": [1.0]}))


def test_missing_files_reported():
    doc = {"command": "wall", "z0_cm": [1e-6], "atom": "/nonexistent/atom.json",
           "kernel": {"type": "tabulated", "path": "/nonexistent/k.csv"}}
    with pytest.raises(ConfigError) as info:
        parse_config(json.dumps(doc))
    assert any(e.startswith("atom:") for e in info.value.errors)
    assert any(e.startswith("kernel/path:") for e in info.value.errors)


def test_sweep_validation():
    with pytest.raises(ConfigError, match="runs/0/output"):
        parse_config(json.dumps({"command": "sweep", "runs": [PAIR]}))
    nested = {"command": "sweep", "runs": [{"command": "sweep", "runs": [PAIR]}]}
    with pytest.raises(ConfigError, match="nest"):
        parse_config(json.dumps(nested))


def test_format_number():
    assert format_number(0.1) == "0.1"
    assert float(format_number(1 / 3)) == 1 / 3
    assert format_number(None) == ""
    assert format_number(True) == "true"
    assert format_number(3) == "3.0"


# --- runs ----------------------------------------------------------------------------

def test_unruh_rows(tmp_path):
    out = tmp_path / "u.csv"
    cfg = parse_config(json.dumps({"command": "unruh", "acceleration_cm_s2": [1e20, 1e22, 1e24]}))
    assert run(cfg, out=str(out)) == 0
    rows = read_csv(out)
    assert [float(r["temperature_K"]) for r in rows] == [unruh_temperature(a) for a in (1e20, 1e22, 1e24)]
    assert float(rows[1]["temperature_K"]) == pytest.approx(0.4055, rel=1e-3)
    assert all(r["converged"] == "true" and r["error"] == "" for r in rows)
    assert {r["constants_id"] for r in rows} == {"CODATA2018-CGS"}
    assert {r["artifact_version"] for r in rows} == {__version__}
    assert {r["config_sha256"] for r in rows} == {cfg.digest()}


def test_pair_sweep_matches_library_bit_for_bit(tmp_path):
    out = tmp_path / "p.csv"
    cfg = parse_config(json.dumps(PAIR))
    assert run(cfg, out=str(out)) == 0
    rows = read_csv(out)
    assert len(rows) == 40
    model = Lorentz(4.4e-25, 1.55e16)
    for r in rows:
        expected = static_vdw(PairConfig(float(r["R_cm"]), model, model))
        assert float(r["E_static_erg"]) == expected
        assert float(r["E_linear_erg"]) == 0.0


def test_pair_zone_columns(tmp_path):
    out = tmp_path / "p.csv"
    doc = dict(PAIR, R_cm=[1e-9, 1e-5, 1e-3], acceleration_cm_s2=[1e20], time_s=[1e-6])
    assert run(parse_config(json.dumps(doc)), out=str(out)) == 0
    near, mid, far = read_csv(out)
    assert (near["zone"], mid["zone"], far["zone"]) == ("near", "intermediate", "far")
    assert mid["asymptote_static_erg"] == ""
    assert float(near["exponent_static"]) == pytest.approx(-6, abs=1e-2)
    assert float(far["exponent_linear"]) == pytest.approx(-6, abs=1e-2)
    for r in (near, far):
        assert float(r["asymptote_static_erg"]) == pytest.approx(float(r["E_static_erg"]), rel=1e-2)


def test_static_models_in_near_zone_leave_asymptote_blank(tmp_path):
    out = tmp_path / "p.csv"
    doc = dict(PAIR, R_cm=[1e-9], alpha_a={"model": "static", "alpha0_cm3": 1e-24})
    assert run(parse_config(json.dumps(doc)), out=str(out)) == 0
    (row,) = read_csv(out)
    assert row["zone"] == "near"
    assert row["asymptote_static_erg"] == ""
    assert row["converged"] == "true"


def test_partial_failure_keeps_other_rows(tmp_path):
    out = tmp_path / "l.csv"
    doc = {"command": "lamb", "acceleration_cm_s2": [0.0, 1e25], "cutoff_lambda_rad_s": [1e15, 1e18]}
    assert run(parse_config(json.dumps(doc)), out=str(out)) == 2
    rows = read_csv(out)
    assert len(rows) == 4
    bad = [r for r in rows if r["converged"] == "false"]
    good = [r for r in rows if r["converged"] == "true"]
    assert len(bad) == 2 and len(good) == 2
    assert all(float(r["cutoff_lambda_rad_s"]) == 1e15 and "cutoff" in r["error"] for r in bad)
    assert all(math.isfinite(float(r["total_vf_erg"])) for r in good)


def test_unconverged_rows_are_flagged(tmp_path):
    out = tmp_path / "p.csv"
    doc = dict(
        PAIR,
        R_cm=[1e-8, 1e-4],
        alpha_b={"model": "lorentz", "alpha0_cm3": 4.4e-25, "omega0_rad_s": 1.55e12},
        quad={"max_evaluations": 100},
    )
    assert run(parse_config(json.dumps(doc)), out=str(out)) == 2
    rows = read_csv(out)
    assert [r["converged"] for r in rows].count("false") >= 1
    assert all(r["E_static_erg"] != "" for r in rows)
    assert all("tolerance" in r["error"] for r in rows if r["converged"] == "false")


def test_threads_do_not_change_output(tmp_path):
    doc = dict(PAIR, R_cm={"start": 1e-8, "stop": 1e-4, "points": 12, "spacing": "log"},
               acceleration_cm_s2=[1e20], time_s=[1e-6, 2e-6])
    cfg = parse_config(json.dumps(doc))
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    assert run(cfg, out=str(a)) == 0
    assert run(cfg, out=str(b), threads=4) == 0
    assert run(cfg, out=str(c)) == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_json_output(tmp_path):
    out = tmp_path / "u.json"
    cfg = parse_config(json.dumps({"command": "unruh", "temperature_K": [1.0, 2.0]}))
    assert run(cfg, out=str(out), fmt="json") == 0
    rows = json.loads(out.read_text())
    assert rows[1]["acceleration_cm_s2"] == 2 * rows[0]["acceleration_cm_s2"]
    assert rows[0]["converged"] is True


def test_wall_builtin_and_tabulated(tmp_path):
    table = tmp_path / "k.csv"
    om = np.concatenate([[0.0], np.geomspace(1e10, 2e18, 3000)])
    kv = om / (om + 1.55e16) * np.exp(-om / 1.55e16)
    table.write_text("omega_rad_s,K_value\n" + "".join(f"{float(o)!r},{float(k)!r}\n" for o, k in zip(om, kv)))
    base = {"command": "wall", "z0_cm": [1e-6, 2e-6], "acceleration_cm_s2": [0.0, 1e26],
            "cutoff_lambda_rad_s": [1.55e18]}
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    builtin = dict(base, kernel={"type": "builtin", "name": "damped_linear", "scale_rad_s": 1.55e16})
    tab = dict(base, kernel={"type": "tabulated", "path": str(table)})
    assert run(parse_config(json.dumps(builtin)), out=str(a)) == 0
    assert run(parse_config(json.dumps(tab)), out=str(b)) == 0
    for ra, rb in zip(read_csv(a), read_csv(b)):
        assert float(rb["total_wall_erg"]) == pytest.approx(float(ra["total_wall_erg"]), rel=1e-4)


def test_sweep_runs_every_subrun(tmp_path):
    u, p = tmp_path / "u.csv", tmp_path / "p.csv"
    doc = {
        "command": "sweep",
        "runs": [
            {"command": "unruh", "temperature_K": [1.0], "output": {"path": str(u)}},
            dict(PAIR, R_cm=[1e-6], output={"path": str(p)}),
        ],
    }
    assert run(parse_config(json.dumps(doc))) == 0
    assert len(read_csv(u)) == 1 and len(read_csv(p)) == 1


# --- command line ------------------------------------------------------------------------

def test_main_end_to_end(tmp_path, capsys):
    cfg = write_config(tmp_path, {"command": "unruh", "temperature_K": [1.0]})
    out = tmp_path / "u.csv"
    assert main(["unruh", "--config", cfg, "--out", str(out)]) == 0
    assert float(read_csv(out)[0]["acceleration_cm_s2"]) == pytest.approx(2.47e22, rel=5e-3)


def test_main_config_errors_exit_1(tmp_path, capsys):
    cfg = write_config(tmp_path, dict(PAIR, R_cm=[-1.0], extra=1))
    assert main(["pair", "--config", cfg, "--out", str(tmp_path / "x.csv")]) == 1
    err = capsys.readouterr().err
    assert "R_cm/0" in err and "extra" in err
    assert not (tmp_path / "x.csv").exists()


def test_main_command_mismatch(tmp_path, capsys):
    cfg = write_config(tmp_path, PAIR)
    assert main(["lamb", "--config", cfg, "--out", str(tmp_path / "x.csv")]) == 1
    assert "requested" in capsys.readouterr().err


def test_main_missing_output(tmp_path, capsys):
    cfg = write_config(tmp_path, PAIR)
    assert main(["pair", "--config", cfg]) == 1
    assert "output" in capsys.readouterr().err


def test_main_unreadable_config(tmp_path, capsys):
    assert main(["pair", "--config", str(tmp_path / "missing.json"), "--out", "x.csv"]) == 1


def test_unwritable_output_fails_before_computing(tmp_path, capsys):
    cfg = write_config(tmp_path, PAIR)
    assert main(["pair", "--config", cfg, "--out", str(tmp_path / "no" / "such" / "dir.csv")]) == 1
    assert "not writable" in capsys.readouterr().err


def test_output_parent_is_a_file(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    cfg = write_config(tmp_path, PAIR)
    assert main(["pair", "--config", cfg, "--out", str(blocker / "x.csv")]) == 1


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert capsys.readouterr().out.strip() == f"accel-qed {__version__} (constants CODATA2018-CGS)"


def test_console_script(tmp_path):
    cfg = write_config(tmp_path, {"command": "unruh", "acceleration_g0": [1.0]})
    out = tmp_path / "u.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "accel_qed.cli", "unruh", "--config", cfg, "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert float(read_csv(out)[0]["acceleration_cm_s2"]) == 980.665
