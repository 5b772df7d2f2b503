import dataclasses
from pathlib import Path

import pytest
import yaml

from twotype.analytic import eigenvalue_oracle_2x2
from twotype.experiments import (
    PRESET_ALIASES,
    PRESET_DIR,
    Series,
    SweepResult,
    SweepSpec,
    SweepSpecError,
    columns_for,
    emit_csv,
    load_spec,
    preset,
    preset_names,
    resolve,
    run_sweep,
)

GOLDEN = Path(__file__).parent / "golden" / "preset_columns.txt"


def small_er(**kw):
    base = dict(
        name="t", model="er", size=500, replicates=3, master_seed=11, fixed={"p1": 0.5, "mu1": 0.5, "mu2": 1.2},
        sweep_param="beta", grid=(0.0, 0.5, 1.0, 1.3), derive=("alpha_from_mean",),
    )
    base.update(kw)
    return SweepSpec(**base).validate()


@pytest.mark.parametrize(
    "changes, field",
    [
        ({"model": "xx"}, "model"),
        ({"size": 0}, "size"),
        ({"replicates": 0}, "replicates"),
        ({"sweep_param": "gamma"}, "sweep.param"),
        ({"grid": (0.5, 0.2)}, "sweep.grid"),
        ({"grid": ()}, "sweep.grid"),
        ({"derive": ("xi2_from_balance",), "fixed": {"p1": 0.5, "alpha1": 1, "alpha2": 1}}, "derive"),
        ({"metrics": ("nope",)}, "metrics"),
        ({"fixed": {"p1": 0.5}}, "derive"),
        ({"series": (Series("a"), Series("a"))}, "series"),
    ],
)
def test_validation_names_field(changes, field):
    with pytest.raises(SweepSpecError, match=field.replace(".", r"\.")):
        small_er(**changes)


def test_missing_required_parameter():
    with pytest.raises(SweepSpecError, match="missing"):
        SweepSpec("t", "pa", 10, 1, 0, fixed={"p1": 0.5}).validate()


def test_sweep_is_deterministic_and_flags_infeasible():
    spec = small_er()
    a = run_sweep(spec)
    b = run_sweep(spec)
    assert a.rows == b.rows
    last = a.rows[-1]
    assert last["flags"].startswith("infeasible") and "maximum admissible beta" in last["flags"]
    assert last["replicates"] == 0 and last["largest_fraction_mean"] is None
    assert all(r["flags"] == "" for r in a.rows[:-1])
    # Grid values are echoed verbatim.
    assert [r["beta"] for r in a.rows] == [0.0, 0.5, 1.0, 1.3]


def test_parallel_equals_serial():
    spec = small_er(replicates=4)
    assert run_sweep(spec, jobs=1).rows == run_sweep(spec, jobs=2).rows


def test_single_replicate_has_no_sd():
    res = run_sweep(small_er(replicates=1, grid=(0.4,)))
    assert res.rows[0]["largest_fraction_sd"] is None


def test_resolve_er_and_cm():
    r = resolve("er", {"p1": 0.5, "mu1": 0.5, "mu2": 1.2, "beta": 0.4}, ("alpha_from_mean",))
    assert r["alpha1"] == pytest.approx(0.6) and r["alpha2"] == pytest.approx(2.0)
    assert r["lambda_c"] == pytest.approx(1.0531128874149276)
    c = resolve("cm", {"p1": 0.5, "F1": "poisson", "mu1": 0.5, "F2": "poisson", "mu2": 1.5, "xi1": 0.4},
                ("xi2_from_balance",))
    assert c["xi2"] == pytest.approx(0.8)
    assert c["lambda_c"] == pytest.approx(eigenvalue_oracle_2x2(0.4 * 0.5, 0.6 * 0.5, 0.2 * 1.5, 0.8 * 1.5))


def test_emit_csv_empty_and_single_point(tmp_path):
    spec = small_er(grid=(0.4,), replicates=1)
    res = run_sweep(spec)
    emit_csv(res, tmp_path / "one.csv")
    lines = (tmp_path / "one.csv").read_text().splitlines()
    assert len(lines) == 2 and lines[0].split(",")[-1] == "flags"
    empty = SweepResult(spec, columns_for(spec), [])
    emit_csv(empty, tmp_path / "empty.csv")
    assert (tmp_path / "empty.csv").read_text() == ",".join(columns_for(spec)) + "\n"
    with pytest.raises(OSError, match="cannot write"):
        emit_csv(res, tmp_path / "missing" / "x.csv")


def test_emit_csv_byte_identical(tmp_path):
    spec = small_er(replicates=2)
    emit_csv(run_sweep(spec), tmp_path / "a.csv", ["seed=11"])
    emit_csv(run_sweep(spec), tmp_path / "b.csv", ["seed=11"])
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_preset_columns_match_golden():
    golden = dict(line.split(": ", 1) for line in GOLDEN.read_text().splitlines())
    assert sorted(golden) == preset_names()
    for name in preset_names():
        assert ",".join(columns_for(preset(name))) == golden[name]


def test_exported_presets_match_catalogue():
    for name in preset_names():
        assert load_spec(PRESET_DIR / f"{name}.yaml").to_dict() == preset(name).to_dict()


def test_aliases_and_unknown_preset():
    for alias, target in PRESET_ALIASES.items():
        assert preset(alias).name == target
    with pytest.raises(KeyError, match="fig_ER_Ex2"):
        preset("fig99")
    assert preset("table2", full_scale=True).size == 10**9


def test_config_round_trip_and_range_grid(tmp_path):
    path = tmp_path / "s.yaml"
    path.write_text(yaml.safe_dump({
        "model": "pa", "size": 100, "fixed": {"p1": 0.5, "theta1": 0.8}, "sweep": {"param": "theta2",
        "grid": {"start": 0.2, "stop": 0.8, "num": 4}},
    }))
    spec = load_spec(path)
    assert spec.grid == pytest.approx((0.2, 0.4, 0.6, 0.8))
    assert SweepSpec.from_dict(spec.to_dict()) == spec
    path.write_text("model: er\nsize: 10\nbogus: 1\n")
    with pytest.raises(SweepSpecError, match="bogus"):
        load_spec(path)


def test_pa_sweep_metrics_and_detail():
    spec = dataclasses.replace(preset("fig_PA_loglog"), size=20_000)
    res = run_sweep(spec)
    assert res.series_labels() == ["caseI", "caseV"]
    row = res.rows[0]
    assert row["N11_mean"] == pytest.approx(1.6, rel=0.05)
    assert row["gamma1"] == 2.0
    det = res.detail["caseI"]
    assert set(det["ccdf"]) == {1, 2} and det["pairs"][1].shape[1] == 2
