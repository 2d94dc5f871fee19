import csv
import io
import json
import math

import numpy as np
import pytest

from donflow.algebra import STANDARD_FRAME, make_context, tables
from donflow.cli import (
    EXIT_CONFIG,
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_RUNTIME,
    CheckLevel,
    cmd_check,
    cmd_compare,
    cmd_run,
    generate_initial,
    line_chart,
    main,
)
from donflow.cli.artifacts import dumps, error_payload, snapshot_name
from donflow.cli.checks import REGISTRY, selected
from donflow.cli.main import build_parser
from donflow.config import OUTPUT_DIR_ENV, parse_config_text
from donflow.exceptions import ConfigValueError, DegenerateInitialError, UnknownKeyError
from donflow.grid import (
    PERIOD,
    GridSpec,
    KFormField,
    band_limited,
    codifferential,
    hodge_project,
    make_rng,
    read_snapshot,
    write_snapshot,
)

MINIMUM_ENERGY = 2.0 * PERIOD**4

AT_MINIMUM = """
initial.amplitude = 0
flow.dt = 0.01
flow.t_end = 0.03
output.emit_svg = true
"""


def last_json(stderr):
    # log lines may precede the error document
    return json.loads(stderr.strip().splitlines()[-1])


def write_config(tmp_path, text, name="run.conf"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_zero_amplitude_gives_the_minimum():
    rho = generate_initial(parse_config_text("initial.amplitude = 0"))
    expected = KFormField.constant(rho.grid, STANDARD_FRAME.form(1))
    np.testing.assert_array_equal(rho.coefficients, expected.coefficients)


def test_initial_field_is_deterministic_and_near_the_minimum():
    config = parse_config_text("initial.amplitude = 0.05\ninitial.seed = 3\n")
    first = generate_initial(config)
    second = generate_initial(config)
    np.testing.assert_array_equal(first.coefficients, second.coefficients)
    u = make_context(first).u
    assert 0.9 < np.min(u) and np.max(u) < 1.1
    np.testing.assert_allclose(hodge_project(first).harmonic, STANDARD_FRAME.form(1).coefficients, atol=1e-14)


def test_seeds_give_different_fields():
    first = generate_initial(parse_config_text("initial.amplitude = 0.05\ninitial.seed = 1"))
    second = generate_initial(parse_config_text("initial.amplitude = 0.05\ninitial.seed = 2"))
    assert not np.array_equal(first.coefficients, second.coefficients)


def test_harmonic_shift_moves_the_class():
    rho = generate_initial(parse_config_text("initial.amplitude = 0\ninitial.harmonic_shift = 0,0.5,0"))
    expected = STANDARD_FRAME.form(1) + STANDARD_FRAME.form(2).scaled(0.5)
    np.testing.assert_allclose(hodge_project(rho).harmonic, expected.coefficients)
    assert np.min(make_context(rho).u) == pytest.approx(1.25)


def test_degenerate_initial_field_is_a_configuration_error():
    config = parse_config_text("initial.amplitude = 0\ninitial.harmonic_shift = -1,0,0")
    with pytest.raises(DegenerateInitialError) as info:
        generate_initial(config)
    assert info.value.key == "initial.amplitude"


def snapshot_config(path):
    return parse_config_text(
        f"initial.amplitude = 0\ninitial.kind = custom_snapshot\ninitial.snapshot = {path}\n"
    )


def test_initial_field_from_a_snapshot(tmp_path, perturbed):
    rho = perturbed(amplitude=0.1)
    path = write_snapshot(tmp_path / "start.donf", rho)
    loaded = generate_initial(snapshot_config(path))
    np.testing.assert_array_equal(loaded.coefficients, rho.coefficients)


def test_snapshot_on_another_grid_is_rejected(tmp_path, perturbed):
    path = write_snapshot(tmp_path / "start.donf", perturbed(n=16))
    with pytest.raises(ConfigValueError) as info:
        generate_initial(snapshot_config(path))
    assert info.value.key == "initial.snapshot"


def test_snapshot_that_is_not_closed_is_rejected(tmp_path, omega8):
    coexact = codifferential(band_limited(make_rng(4), omega8.grid, 3, 1))
    path = write_snapshot(tmp_path / "start.donf", omega8 + coexact * 0.01)
    with pytest.raises(ConfigValueError) as info:
        generate_initial(snapshot_config(path))
    assert info.value.key == "initial.snapshot"


def test_run_at_the_minimum_writes_its_artifacts(tmp_path):
    out = tmp_path / "out"
    assert cmd_run(write_config(tmp_path, AT_MINIMUM), str(out)) == EXIT_OK
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert report["final_t"] == pytest.approx(0.03)
    assert report["final_energy"] == pytest.approx(MINIMUM_ENERGY, rel=1e-12)
    assert report["min_u_overall"] == pytest.approx(1.0)
    assert report["blowup"] is False
    assert report["decay_rate_fit"] is None
    assert report["steps"] == 3 and report["records"] == 4
    assert report["seed"] == 0 and report["generator"] == "philox4x64"
    with (out / "diagnostics.csv").open(encoding="utf-8", newline="") as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 4
    assert all(float(row["energy"]) == pytest.approx(MINIMUM_ENERGY, rel=1e-12) for row in rows)
    assert "<svg" in (out / "energy.svg").read_text(encoding="utf-8")
    # the distance stays zero, so there is nothing to draw on a log scale
    assert not (out / "distance.svg").exists()
    assert not (out / "snapshots").exists()


def test_run_writes_snapshots_at_the_cadence(tmp_path):
    text = (
        "initial.amplitude = 0.05\ninitial.max_mode = 1\n"
        "flow.dt = 0.005\nflow.t_end = 0.01\nflow.snapshot_cadence = 1\noutput.emit_svg = true\n"
    )
    out = tmp_path / "out"
    assert cmd_run(write_config(tmp_path, text), str(out)) == EXIT_OK
    names = sorted(path.name for path in (out / "snapshots").iterdir())
    assert names == [snapshot_name(step) for step in range(3)]
    final = read_snapshot(out / "snapshots" / snapshot_name(2))
    assert final.grid == GridSpec(8)
    assert (out / "distance.svg").exists()


def test_output_directory_from_the_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "env"))
    assert cmd_run(write_config(tmp_path, AT_MINIMUM)) == EXIT_OK
    assert (tmp_path / "env" / "report.json").exists()


def test_invalid_configuration_exits_with_the_key(tmp_path, capsys):
    path = write_config(tmp_path, "initial.amplitude = 0.1\ngrid.n = 12\n")
    out = tmp_path / "out"
    assert main(["run", "--config", str(path), "--out", str(out)]) == EXIT_CONFIG
    payload = last_json(capsys.readouterr().err)
    assert payload["key"] == "grid.n"
    assert payload["error"] == "ConfigValueError"
    written = json.loads((out / "error.json").read_text(encoding="utf-8"))
    assert written["key"] == "grid.n"


def test_missing_configuration_file_exits_with_a_configuration_error(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "absent.conf")]) == EXIT_CONFIG
    assert last_json(capsys.readouterr().err)["error"] == "ConfigError"


def test_blow_up_keeps_the_partial_results(tmp_path, capsys):
    text = "initial.amplitude = 1\ninitial.max_mode = 3\nflow.dt = 5\nflow.t_end = 5\n"
    out = tmp_path / "out"
    assert main(["run", "--config", str(write_config(tmp_path, text)), "--out", str(out)]) == EXIT_RUNTIME
    assert last_json(capsys.readouterr().err)["error"] == "BlowUpError"
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert report["blowup"] is True and report["steps"] == 0
    error = json.loads((out / "error.json").read_text(encoding="utf-8"))
    assert error["error"] == "BlowUpError" and error["seed"] == 0
    assert (out / "snapshots" / snapshot_name(0)).exists()
    assert (out / "diagnostics.csv").exists()


def test_fast_checks_pass():
    stream = io.StringIO()
    assert cmd_check(CheckLevel.FAST, stream) == EXIT_OK
    lines = stream.getvalue().splitlines()
    assert len(lines) == 1 + len(selected(CheckLevel.FAST))
    assert "FAIL" not in stream.getvalue()


def test_fast_checks_catch_a_wrong_hodge_star(monkeypatch):
    monkeypatch.setitem(tables.STAR_TABLES, 2, -tables.STAR_TABLES[2])
    stream = io.StringIO()
    assert cmd_check("fast", stream) == EXIT_INVARIANT
    failed = [line for line in stream.getvalue().splitlines() if line.endswith("FAIL")]
    assert any(line.startswith("Theta forms agree") for line in failed)


def test_full_level_extends_the_fast_level():
    fast = selected(CheckLevel.FAST)
    full = selected(CheckLevel.FULL)
    assert len(fast) == 6
    assert len(full) == len(REGISTRY) > len(fast)
    assert all(check in full for check in fast)


def test_compare_at_the_minimum(tmp_path):
    out = tmp_path / "out"
    assert cmd_compare(write_config(tmp_path, AT_MINIMUM), str(out)) == EXIT_OK
    payload = json.loads((out / "consistency.json").read_text(encoding="utf-8"))
    assert payload["max_defect"] <= 1e-12
    assert [item["t"] for item in payload["slices"]] == pytest.approx([0.0, 0.01, 0.02, 0.03])
    assert payload["grid_n"] == 8 and payload["scheme"] == "spectral"
    assert payload["generator"] == "philox4x64"


def test_schema_command(capsys):
    assert main(["schema"]) == EXIT_OK
    assert "initial.amplitude" in capsys.readouterr().out


def test_parser_accepts_verbosity_flags():
    arguments = build_parser().parse_args(["-vv", "check", "--level", "full"])
    assert arguments.verbose == 2 and arguments.level == "full"
    with pytest.raises(SystemExit):
        build_parser().parse_args(["run"])


def test_error_payload_names_the_key():
    payload = error_payload(UnknownKeyError("flow.speed"), seed=5)
    assert payload == {
        "error": "UnknownKeyError",
        "message": "Unknown configuration key 'flow.speed'",
        "key": "flow.speed",
        "seed": 5,
        "generator": "philox4x64",
    }


def test_non_finite_values_are_written_as_null():
    assert json.loads(dumps({"rate": math.nan, "values": np.arange(2.0)})) == {
        "rate": None,
        "values": [0.0, 1.0],
    }


def test_line_chart():
    svg = line_chart([0.0, 1.0, 2.0], [3.0, 2.0, 1.0], "Energy & time", y_label="E")
    assert "<svg" in svg and svg.rstrip().endswith("</svg>")
    # labels are kept as escaped text
    assert "Energy &amp; time" in svg
    assert ">E<" in svg


def test_line_chart_is_reproducible():
    first = line_chart([0.0, 1.0], [1.0, 0.1], "Distance", log_y=True)
    assert first == line_chart([0.0, 1.0], [1.0, 0.1], "Distance", log_y=True)


def test_line_chart_rejects_bad_input():
    with pytest.raises(ValueError):
        line_chart([0.0, 1.0], [1.0], "mismatch")
    with pytest.raises(ValueError):
        line_chart([0.0, 1.0], [0.0, 0.0], "nothing positive", log_y=True)


def test_snapshot_names_are_zero_padded():
    assert snapshot_name(42) == "rho_00000042.donf"

