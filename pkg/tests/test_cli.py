import csv

import pytest

from twotype.analysis import components, write_component_csv
from twotype.analytic import ErParams
from twotype.cli import main
from twotype.core import RngStream, read_edge_list, total_and_per_type_degrees
from twotype.generators import generate_er


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_rows(path):
    with open(path) as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


def test_gen_pa_t1(tmp_path, capsys):
    out = tmp_path / "pa.txt"
    code, _, _ = run(capsys, "gen", "pa", "--t", "1", "--p1", "0.5", "--theta1", "0.8", "--theta2", "0.8",
                     "--seed", "7", "--out", str(out))
    assert code == 0
    g = read_edge_list(out)
    assert g.n == 2 and g.num_edges == 1


def test_gen_er_mean_parameterisation(tmp_path, capsys):
    out = tmp_path / "er.txt"
    code, stdout, _ = run(capsys, "gen", "er", "--n", "10000", "--p1", "0.5", "--mu1", "0.5", "--mu2", "1.2",
                          "--beta", "0.4", "--seed", "1", "--out", str(out))
    assert code == 0
    assert "alpha1=0.6 alpha2=2" in stdout
    g = read_edge_list(out)
    d = total_and_per_type_degrees(g).total
    assert d[g.types == 1].mean() == pytest.approx(0.5, abs=0.05)
    assert d[g.types == 2].mean() == pytest.approx(1.2, abs=0.06)
    assert g.meta["seed"] == 1 and g.meta["params"]["alpha2"] == pytest.approx(2.0)


def test_gen_cm_infeasible_balance(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "cm", "--n", "100", "--p1", "0.5", "--F1", "poisson:1.5", "--F2",
                       "poisson:0.5", "--xi1", "0.4", "--seed", "1", "--out", str(tmp_path / "cm.txt"))
    assert code == 3
    assert "feasible xi1 interval is [0.666667, 1]" in err


def test_gen_cm_prints_report_and_auto_seed(tmp_path, capsys):
    out = tmp_path / "cm.txt"
    code, stdout, _ = run(capsys, "gen", "cm", "--n", "500", "--p1", "0.5", "--F1", "poisson:0.5", "--F2",
                          "ys-mean:1.5", "--xi1", "0.4", "--out", str(out))
    assert code == 0
    assert "erased half-edges=" in stdout and "(auto)" in stdout
    text = out.read_text()
    assert 'seed_source="auto"' in text
    seed = read_edge_list(out).meta["seed"]
    assert isinstance(seed, int)


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, "gen", "er", "--n", "10", "--p1", "0.5", "--beta", "1", "--out", "x")[0] == 2
    assert run(capsys, "experiment", "--preset", "nope", "--out-dir", str(tmp_path))[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["gen"])
    assert info.value.code == 2


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["analytic", "pa", "--p1", "0.1", "--theta1", "0.8", "--theta2", "0.2"], ["gamma1=1.125", "gamma2=5.5"]),
        (["analytic", "er", "--p1", "0.5", "--alpha1", "1", "--alpha2", "1", "--beta", "1"], ["lambda_c=1\n"]),
        (["analytic", "cm", "--xi1", "1", "--xi2", "1", "--nu1", "0.5", "--nu2", "1.5"], ["lambda_c=1.5\n"]),
        (["analytic", "er", "--p1", "0.5", "--mu1", "0.5", "--mu2", "1.2", "--beta", "0.4"], ["lambda_c=1.05311"]),
        (["analytic", "cm", "--p1", "0.5", "--F1", "poisson:0.5", "--F2", "poisson:1.5", "--xi1", "0.5",
          "--xi2", "0.7"], ["lambda_c=1.17202"]),
    ],
)
def test_analytic(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    for e in expected:
        assert e in out


def test_analytic_infeasible(capsys):
    code, _, err = run(capsys, "analytic", "er", "--p1", "0.5", "--mu1", "0.5", "--mu2", "1.2", "--beta", "1.5")
    assert code == 3 and "maximum admissible beta" in err


def test_gen_then_analyze_matches_in_memory(tmp_path, capsys):
    edge_file = tmp_path / "er.txt"
    run(capsys, "gen", "er", "--n", "3000", "--p1", "0.4", "--alpha1", "2", "--alpha2", "1", "--beta", "0.5",
        "--seed", "9", "--out", str(edge_file))
    code, stdout, _ = run(capsys, "analyze", str(edge_file), "--out-dir", str(tmp_path / "rep"))
    assert code == 0 and "largest_fraction=" in stdout
    g = generate_er(3000, ErParams(0.4, 2.0, 1.0, 0.5), RngStream(9))
    write_component_csv(components(g), tmp_path / "mem.csv")
    assert read_rows(tmp_path / "rep" / "components.csv") == read_rows(tmp_path / "mem.csv")
    header = (tmp_path / "rep" / "components.csv").read_text().splitlines()[:10]
    assert any("seed=9" in h for h in header) and any("twotype" in h for h in header)


def test_analyze_edgeless(tmp_path, capsys):
    f = tmp_path / "e.txt"
    f.write_text("# n=4 model=x seed=0\nv 0 1\nv 1 2\nv 2 1\nv 3 2\n")
    code, out, _ = run(capsys, "analyze", str(f), "--out-dir", str(tmp_path / "r"))
    assert code == 0 and "largest_fraction=0.25" in out


def test_analyze_malformed(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("# n=2 model=x seed=0\nv 0 1\nv 1 7\n")
    code, _, err = run(capsys, "analyze", str(f), "--out-dir", str(tmp_path / "r"))
    assert code == 4 and "line 3" in err
    assert run(capsys, "analyze", str(tmp_path / "none.txt"), "--out-dir", str(tmp_path / "r"))[0] == 4


def test_analyze_pa_case_i(tmp_path, capsys):
    edge_file = tmp_path / "pa.txt"
    run(capsys, "gen", "pa", "--t", "1000000", "--p1", "0.5", "--theta1", "0.8", "--theta2", "0.8",
        "--seed", "0", "--out", str(edge_file))
    code, _, _ = run(capsys, "analyze", str(edge_file), "--out-dir", str(tmp_path / "r"))
    assert code == 0
    rows = {r["series"]: r for r in read_rows(tmp_path / "r" / "exponents.csv")}
    for s in ("type1", "type2"):
        assert float(rows[s]["gamma_hat"]) == pytest.approx(2.0, abs=0.1)


def test_experiment_preset_schema_and_plots(tmp_path, capsys):
    out = tmp_path / "x"
    code, _, err = run(capsys, "experiment", "--preset", "fig_ER_Ex2", "--seed", "42", "--out-dir", str(out),
                       "--n", "300", "--replicates", "2")
    assert code == 0
    text = (out / "fig_ER_Ex2.csv").read_text().splitlines()
    assert text[0].startswith("# tool=twotype") and "seed=42" in text[1]
    golden = dict(line.split(": ", 1) for line in
                  (__import__("pathlib").Path(__file__).parent / "golden" / "preset_columns.txt").read_text().splitlines())
    assert text[3] == golden["fig_ER_Ex2"]
    # Beyond beta = mu1/p2 = 1.0 the first series is infeasible: warned, not fatal.
    assert "infeasible" in err
    for m in ("largest_fraction", "second_fraction", "third_fraction", "lambda_c"):
        assert (out / f"fig_ER_Ex2_{m}.svg").exists()


def test_experiment_config_twice_is_byte_identical(tmp_path, capsys):
    cfg = tmp_path / "my.sweep"
    cfg.write_text("model: cm\nsize: 400\nreplicates: 2\nfixed: {p1: 0.5, F1: poisson, mu1: 0.5, F2: poisson, "
                   "mu2: 1.5}\nsweep: {param: xi1, grid: [0.2, 0.6]}\nderive: [xi2_from_balance]\n")
    for d in ("a", "b"):
        assert run(capsys, "experiment", "--config", str(cfg), "--seed", "42", "--out-dir", str(tmp_path / d),
                   "--no-plots")[0] == 0
    assert (tmp_path / "a" / "custom.csv").read_bytes() == (tmp_path / "b" / "custom.csv").read_bytes()


def test_experiment_table3_prints_predictions(tmp_path, capsys):
    code, out, _ = run(capsys, "experiment", "--preset", "table3", "--t", "20000", "--out-dir", str(tmp_path),
                       "--no-plots")
    assert code == 0
    assert "N12 (pred)" in out and "(7.4)" in out and "(0.822222)" in out


def test_experiment_list(capsys):
    code, out, _ = run(capsys, "experiment", "--list")
    assert code == 0 and "fig_ER_Ex5" in out
