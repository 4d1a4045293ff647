import subprocess
import sys

import pytest

from scalefield.errors import ConfigError
from scalefield.experiment_cli import ExperimentConfig, run
from scalefield.experiment_cli.config import parse_lines
from scalefield.experiment_cli.main import main
from scalefield.experiment_cli.report import output_paths

FAST = {
    "axioms": ["axioms.cases=300", "axioms.fixed_cases=100", "axioms.polynomials=100"],
    "paths": [],
    "packet": ["grid.n=128", "packet.dump=true"],
    "detector-sweep": ["grid.n=1024"],
    "gauge-check": [],
    "commerce-demo": [],
}


def run_cli(tmp_path, experiment, *sets, name="out.csv", extra=()):
    out = tmp_path / name
    argv = [experiment, "--out", str(out), *extra]
    for s in sets:
        argv += ["--set", s]
    return main(argv), out


def test_parse_lines():
    got = parse_lines(["# comment", "", "a = 1", "b=x=y"])
    assert got == {"a": "1", "b": "x=y"}
    with pytest.raises(ConfigError):
        parse_lines(["a = 1", "a = 2"])
    with pytest.raises(ConfigError):
        parse_lines(["just words"])


def test_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# sweep\nseed = 5\naxioms.cases = 50\n")
    c = ExperimentConfig.load("axioms", cfg, ["axioms.cases=60"])
    assert c.seed == 5
    assert c.int("axioms.cases") == 60
    assert ExperimentConfig.load("axioms", cfg, seed=9).seed == 9


def test_unknown_experiment_and_bad_seed():
    with pytest.raises(ConfigError):
        ExperimentConfig("nope")
    with pytest.raises(ConfigError):
        ExperimentConfig("axioms", seed=-1)


@pytest.mark.parametrize("experiment", sorted(FAST))
def test_every_experiment_passes_by_default(tmp_path, experiment):
    code, out = run_cli(tmp_path, experiment, *FAST[experiment])
    assert code == 0
    assert out.exists()
    checks = out.with_name("out_checks.csv").read_text().splitlines()
    assert checks[0] == "check,operation,value,tolerance,passed,note"
    rows = [line for line in checks if not line.startswith("#")][1:]
    assert rows and all(",true," in r for r in rows)


def test_csv_layout(tmp_path):
    code, out = run_cli(tmp_path, "paths")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "steps,factor,exact,rel_error"
    echo = [line for line in lines if line.startswith("#")]
    assert echo[0] == "# experiment = paths"
    assert "# field.kind = gradient" in echo
    data = [line for line in lines[1:] if not line.startswith("#")]
    assert len(data) == 5
    # 17 significant digits round-trip
    factor = data[0].split(",")[1]
    assert len(factor.replace(".", "").lstrip("0")) == 17
    assert float(factor) == pytest.approx(2.68105474501486, rel=1e-13)
    names = {p.name for p in output_paths(out, run(ExperimentConfig("paths"))).values()}
    assert names == {"out.csv", "out_algebra.csv", "out_integrability.csv", "out_checks.csv"}


def test_paths_rotational_is_flagged(tmp_path):
    code, out = run_cli(tmp_path, "paths", "field.kind=rotational")
    assert code == 0
    text = out.with_name("out_integrability.csv").read_text()
    assert text.strip().endswith("false,false")


def test_paths_zero_field_gives_ones(tmp_path):
    code, out = run_cli(tmp_path, "paths", "field.kind=zero")
    assert code == 0
    rows = [r.split(",") for r in out.read_text().splitlines()[1:] if not r.startswith("#")]
    assert all(r[1] == "1" for r in rows)


def test_failed_check_exits_one(tmp_path):
    code, _ = run_cli(tmp_path, "paths", "paths.min_order=5")
    assert code == 1


@pytest.mark.parametrize(
    "experiment,sets",
    [
        ("axioms", ["bogus.key=1"]),
        ("axioms", ["axioms.cases=many"]),
        ("paths", ["field.kind=spiral"]),
        ("packet", ["field.kind=rotational", "field.dim=2", "grid.n=32", "packet.sigma=2", "packet.oracle_factor=1"]),
        ("detector-sweep", ["partition.divisions=7"]),
        ("gauge-check", ["gauge.g1=0"]),
        ("commerce-demo", ["commerce.detour=1,2"]),
    ],
)
def test_config_errors_exit_two(tmp_path, experiment, sets, capsys):
    code, out = run_cli(tmp_path, experiment, *sets)
    assert code == 2
    assert not out.exists()
    assert capsys.readouterr().err.strip()


def test_rotational_packet_message(tmp_path, capsys):
    code, _ = run_cli(tmp_path, "packet", "field.kind=rotational", "field.dim=2", "grid.n=32",
                      "packet.sigma=2", "packet.oracle_factor=1")
    assert code == 2
    assert "not integrable" in capsys.readouterr().err


def test_malformed_config_file(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("field.kind\n")
    code, _ = run_cli(tmp_path, "paths", extra=["--config", str(bad)])
    assert code == 2
    code, _ = run_cli(tmp_path, "paths", extra=["--config", str(tmp_path / "missing.cfg")])
    assert code == 2


def test_argparse_rejects_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["dance"])
    assert exc.value.code == 2


def test_zero_coupling_detector_sweep(tmp_path):
    code, out = run_cli(tmp_path, "detector-sweep", "grid.n=1024", "field.coupling=0")
    assert code == 0
    assert "zero_error" in out.with_name("out_checks.csv").read_text()


def test_zero_phase_gauge_check(tmp_path):
    code, out = run_cli(tmp_path, "gauge-check", "gauge.phi=zero")
    assert code == 0
    assert "zero_phase_residual" in out.with_name("out_checks.csv").read_text()


def test_commerce_scaled_view_differs(tmp_path):
    code, out = run_cli(tmp_path, "commerce-demo")
    assert code == 0
    rows = [r.split(",") for r in out.read_text().splitlines()[1:] if not r.startswith("#")]
    equal_rows = [r for r in rows if r[1] == "equal"]
    assert all(r[5] == "true" for r in equal_rows)
    # scaling the outcomes instead of transporting them would break agreement once g_r > 0
    assert any(r[8] == "false" for r in equal_rows if float(r[0]) > 0)
    assert all(r[5] == "false" for r in rows if r[1] == "unequal")


def test_seed_changes_axiom_rows(tmp_path):
    _, a = run_cli(tmp_path, "axioms", *FAST["axioms"], name="a.csv", extra=["--seed", "1"])
    _, b = run_cli(tmp_path, "axioms", *FAST["axioms"], name="b.csv", extra=["--seed", "2"])
    assert a.read_text() != b.read_text()


def test_module_entry_point(tmp_path):
    out = tmp_path / "c.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "scalefield", "commerce-demo", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "PASS transport_exact" in proc.stderr
    assert out.exists()
