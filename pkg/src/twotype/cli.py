"""Command-line interface: ``twotype {gen,analytic,analyze,experiment}``.

Exit codes: 0 success, 2 usage error, 3 infeasible parameters, 4 I/O error
(including malformed input files).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from pathlib import Path

import yaml

from . import __version__
from .analysis import (
    DEFAULT_K_MIN,
    DEFAULT_MIN_TAIL_COUNT,
    ExponentFit,
    components,
    degree_report,
    fit_degree_exponents,
    series_name,
    write_component_csv,
    write_degree_csvs,
    write_exponent_csv,
)
from .analytic import (
    CmMixParams,
    ErParams,
    PaParams,
    cm_balance_xi2,
    cm_lambda_c,
    er_lambda_c,
    er_mean_degrees,
    pa_exponents,
    pa_expected_cross_degrees,
    pa_rates,
)
from .core import (
    EdgeListFormatError,
    InfeasibleParametersError,
    RngStream,
    fresh_seed,
    read_edge_list,
    write_edge_list,
)
from .degree_dist import parse_distribution
from .experiments import (
    PA_T_FULL,
    SweepSpecError,
    emit_csv,
    load_spec,
    preset,
    preset_names,
    provenance_lines,
    run_sweep,
)
from .generators import generate_cm, generate_er, generate_pa
from .plotting import emit_plot

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


def _g(x) -> str:
    """Six significant digits."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return f"{x:.6g}"


def _seed(args) -> tuple[int, bool]:
    if args.seed is not None:
        return args.seed, False
    return fresh_seed(), True


# -- parameter helpers ----------------------------------------------------------


def _er_params(args) -> ErParams:
    if args.p1 is None or args.beta is None:
        raise UsageError("er needs --p1 and --beta")
    means = args.mu1 is not None or args.mu2 is not None
    rates = args.alpha1 is not None or args.alpha2 is not None
    if means and rates:
        raise UsageError("give either --alpha1/--alpha2 or --mu1/--mu2, not both")
    if means:
        if args.mu1 is None or args.mu2 is None:
            raise UsageError("--mu1 and --mu2 must be given together")
        return ErParams.from_means(args.p1, args.mu1, args.mu2, args.beta)
    if args.alpha1 is None or args.alpha2 is None:
        raise UsageError("er needs --alpha1 and --alpha2 (or --mu1 and --mu2)")
    return ErParams(args.p1, args.alpha1, args.alpha2, args.beta)


def _cm_parts(args):
    if args.p1 is None or args.F1 is None or args.F2 is None or args.xi1 is None:
        raise UsageError("cm needs --p1, --F1, --F2 and --xi1")
    F1, F2 = parse_distribution(args.F1), parse_distribution(args.F2)
    xi2 = args.xi2
    if xi2 is None:
        xi2 = cm_balance_xi2(args.p1, F1.mean(), args.xi1, F2.mean())
    return F1, F2, args.xi1, xi2


def _pa_params(args) -> PaParams:
    if args.p1 is None or args.theta1 is None or args.theta2 is None:
        raise UsageError("pa needs --p1, --theta1 and --theta2")
    return PaParams(args.p1, args.theta1, args.theta2)


def _add_model_flags(p: argparse.ArgumentParser, model: str, analytic: bool = False):
    if model == "er":
        p.add_argument("--p1", type=float, help="fraction of type-1 vertices")
        p.add_argument("--alpha1", type=float, help="type-1 own-type rate (edge probability alpha1/n)")
        p.add_argument("--alpha2", type=float, help="type-2 own-type rate")
        p.add_argument("--mu1", type=float, help="type-1 mean degree (alternative to --alpha1)")
        p.add_argument("--mu2", type=float, help="type-2 mean degree (alternative to --alpha2)")
        p.add_argument("--beta", type=float, help="cross-type rate (edge probability beta/n)")
    elif model == "cm":
        p.add_argument("--p1", type=float, help="fraction of type-1 vertices")
        p.add_argument("--F1", help="type-1 degree law, e.g. poisson:1.5, ys:6, ys-mean:1.2, file:path")
        p.add_argument("--F2", help="type-2 degree law")
        p.add_argument("--xi1", type=float, help="share of type-1 half-edges paired within type 1")
        p.add_argument("--xi2", type=float, help="share for type 2 (default: from the balance condition)")
        if analytic:
            p.add_argument("--nu1", type=float, help="type-1 size-biased mean (instead of --F1/--p1)")
            p.add_argument("--nu2", type=float, help="type-2 size-biased mean")
    else:
        p.add_argument("--p1", type=float, help="probability an arriving vertex is type 1")
        p.add_argument("--theta1", type=float, help="probability a type-1 arrival attaches within type 1")
        p.add_argument("--theta2", type=float, help="probability a type-2 arrival attaches within type 2")


# -- gen -------------------------------------------------------------------------


def cmd_gen(args) -> int:
    seed, auto = _seed(args)
    rng = RngStream(seed)
    extra = {"tool": f"twotype {__version__}", "seed_source": "auto" if auto else "flag"}
    if args.model == "er":
        if args.n is None:
            raise UsageError("gen er needs --n")
        p = _er_params(args)
        mu1, mu2 = er_mean_degrees(p)
        print(f"resolved alpha1={_g(p.alpha1)} alpha2={_g(p.alpha2)} beta={_g(p.beta)} "
              f"(mu1={_g(mu1)} mu2={_g(mu2)})")
        g = generate_er(args.n, p, rng)
    elif args.model == "cm":
        if args.n is None:
            raise UsageError("gen cm needs --n")
        F1, F2, xi1, xi2 = _cm_parts(args)
        print(f"xi1={_g(xi1)} xi2={_g(xi2)}" + (" (balance)" if args.xi2 is None else ""))
        g, report = generate_cm(args.n, args.p1, F1, F2, xi1, xi2, rng)
        print(report.summary(g.n))
        extra["erasure"] = dataclasses.asdict(report)
    else:
        if args.t is None:
            raise UsageError("gen pa needs --t")
        g = generate_pa(args.t, _pa_params(args), rng)
    write_edge_list(g, args.out, extra)
    print(f"wrote {args.out}: n={g.n} edges={g.num_edges} seed={seed}" + (" (auto)" if auto else ""))
    return EXIT_OK


# -- analytic ----------------------------------------------------------------------


def cmd_analytic(args) -> int:
    if args.model == "er":
        p = _er_params(args)
        mu1, mu2 = er_mean_degrees(p)
        print(f"alpha1={_g(p.alpha1)} alpha2={_g(p.alpha2)} beta={_g(p.beta)} p1={_g(p.p1)}")
        print(f"mu1={_g(mu1)} mu2={_g(mu2)}")
        print(f"lambda_c={_g(er_lambda_c(p))}")
    elif args.model == "cm":
        if args.nu1 is not None or args.nu2 is not None:
            if None in (args.nu1, args.nu2, args.xi1, args.xi2):
                raise UsageError("with --nu1/--nu2 give --xi1, --xi2, --nu1 and --nu2")
            m = CmMixParams(args.xi1, args.xi2, args.nu1, args.nu2)
        else:
            F1, F2, xi1, xi2 = _cm_parts(args)
            m = CmMixParams(xi1, xi2, F1.size_biased_mean(), F2.size_biased_mean())
            print(f"mu1={_g(F1.mean())} mu2={_g(F2.mean())}")
        print(f"xi1={_g(m.xi1)} xi2={_g(m.xi2)} nu1={_g(m.nu1)} nu2={_g(m.nu2)}")
        print(f"lambda_c={_g(cm_lambda_c(m))}")
    else:
        p = _pa_params(args)
        rates = pa_rates(p)
        ex = pa_exponents(p)
        pred = pa_expected_cross_degrees(p)
        print(f"a1={_g(rates.a1)} a2={_g(rates.a2)} b1={_g(rates.b1)} b2={_g(rates.b2)}")
        print(f"tau1={_g(ex.tau1)} gamma1={_g(ex.gamma1)}")
        print(f"tau2={_g(ex.tau2)} gamma2={_g(ex.gamma2)}")
        print("expected neighbours (row: own type, column: neighbour type)")
        print("        type1      type2")
        for i in (1, 2):
            print(f"type{i}  {_g(pred[i - 1, 0]):>9}  {_g(pred[i - 1, 1]):>9}")
    return EXIT_OK


# -- analyze -----------------------------------------------------------------------


def cmd_analyze(args) -> int:
    g = read_edge_list(args.input)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    header = [f"tool=twotype {__version__}", f"source={args.input}"]
    header += [f"{k}={json.dumps(v, sort_keys=True)}" for k, v in sorted(g.meta.items())]
    comp = components(g)
    write_component_csv(comp, out / "components.csv", header)
    report = degree_report(g)
    write_degree_csvs(report, out, header)
    fits = fit_degree_exponents(report, args.k_min, args.k_max, args.min_count)
    write_exponent_csv(fits, out / "exponents.csv", header)
    top = comp.top(3)
    print(f"n={g.n} edges={g.num_edges} components={len(comp.sizes_desc)}")
    print(f"largest_fraction={_g(comp.largest_fraction)} top3={top}")
    for i in (1, 2):
        c = report.correlation[i]
        print(f"type{i}: vertices={report.type_sizes[i]} mean_to_type1={_g(report.cross_mean[i - 1, 0])} "
              f"mean_to_type2={_g(report.cross_mean[i - 1, 1])} corr={'NA' if c is None else _g(c)}")
    for key, fit in fits.items():
        if isinstance(fit, ExponentFit):
            print(f"{series_name(key)}: gamma_hat={fit.gamma_hat:.4f} k in [{_g(fit.k_min)}, {_g(fit.k_max)}] "
                  f"r2={fit.r_squared:.4f} points={fit.n_points}")
        else:
            print(f"{series_name(key)}: no fit ({fit})")
    print(f"wrote reports to {out}")
    return EXIT_OK


# -- experiment ----------------------------------------------------------------------


def _print_pa_table(result) -> None:
    print("series      gamma1  gamma_hat_1   gamma2  gamma_hat_2")
    for r in result.rows:
        print(f"{r['series']:<10} {_g(r['gamma1']):>7} {_fmt(r['gamma_hat_1_mean']):>12} "
              f"{_g(r['gamma2']):>8} {_fmt(r['gamma_hat_2_mean']):>12}")
    print()
    print("series     N11 (pred)        N12 (pred)        N21 (pred)        N22 (pred)")
    for r in result.rows:
        cells = [f"{_fmt(r[f'N{i}{j}_mean'])} ({_g(r[f'N{i}{j}_pred'])})" for i in (1, 2) for j in (1, 2)]
        print(f"{r['series']:<10} " + " ".join(f"{c:<17}" for c in cells))


def _fmt(x) -> str:
    return "NA" if x is None or (isinstance(x, float) and math.isnan(x)) else f"{x:.4f}"


def cmd_experiment(args) -> int:
    if args.list:
        for name in preset_names():
            print(f"{name}: {preset(name).description}")
        return EXIT_OK
    if (args.preset is None) == (args.config is None):
        raise UsageError("give exactly one of --preset or --config")
    try:
        spec = preset(args.preset, full_scale=args.full_scale) if args.preset else load_spec(args.config)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    changes = {}
    if args.seed is not None:
        changes["master_seed"] = args.seed
    if args.replicates is not None:
        changes["replicates"] = args.replicates
    size = args.t if spec.model == "pa" else args.n
    if spec.model == "pa" and args.n is not None or spec.model != "pa" and args.t is not None:
        raise UsageError("--t applies to pa sweeps, --n to er/cm sweeps")
    if size is not None:
        changes["size"] = size
    if args.full_scale and spec.model == "pa" and args.t is None:
        changes["size"] = PA_T_FULL
    spec = dataclasses.replace(spec, **changes).validate()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    result = run_sweep(spec, jobs=args.jobs)
    for r in result.rows:
        if r["flags"]:
            label = f"{r['series']} " if r["series"] else ""
            x = f"{spec.sweep_param}={r[spec.sweep_param]} " if spec.sweep_param else ""
            print(f"warning: {label}{x}{r['flags']}", file=sys.stderr)
    prov = provenance_lines(spec)
    csv_path = emit_csv(result, out / f"{spec.name}.csv", prov)
    written = [csv_path]
    if not args.no_plots:
        description = "\n".join(prov)
        if spec.model != "pa":
            written.append(emit_plot(result, "line", out / f"{spec.name}_lambda_c.svg", "lambda_c", description))
        for m in spec.active_metrics:
            written.append(emit_plot(result, "line", out / f"{spec.name}_{m}.svg", m, description))
        if result.detail:
            written.append(emit_plot(result, "loglog", out / f"{spec.name}_ccdf.svg", description=description))
            written.append(emit_plot(result, "scatter", out / f"{spec.name}_scatter.svg", description=description))
    if spec.model == "pa":
        _print_pa_table(result)
    for p in written:
        print(f"wrote {p}")
    return EXIT_OK


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twotype", description="Two-type random graph models.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph and write it as an edge list")
    gen_models = gen.add_subparsers(dest="model", required=True)
    for model in ("er", "cm", "pa"):
        p = gen_models.add_parser(model)
        _add_model_flags(p, model)
        if model == "pa":
            p.add_argument("--t", type=int, help="number of time steps (t + 1 vertices)")
        else:
            p.add_argument("--n", type=int, help="number of vertices")
        p.add_argument("--seed", type=int, help="RNG seed (default: random, recorded in the output header)")
        p.add_argument("--out", required=True, help="edge-list file to write")
        p.set_defaults(func=cmd_gen)

    ana = sub.add_parser("analytic", help="closed-form critical values and exponents")
    ana_models = ana.add_subparsers(dest="model", required=True)
    for model in ("er", "cm", "pa"):
        p = ana_models.add_parser(model)
        _add_model_flags(p, model, analytic=True)
        p.set_defaults(func=cmd_analytic)

    an = sub.add_parser("analyze", help="component and degree reports for an edge-list file")
    an.add_argument("input", help="edge-list file")
    an.add_argument("--out-dir", required=True)
    an.add_argument("--k-min", type=float, default=DEFAULT_K_MIN, help="lower end of the tail fit window")
    an.add_argument("--k-max", type=float, default=None, help="upper end (default: last k with enough vertices)")
    an.add_argument("--min-count", type=int, default=DEFAULT_MIN_TAIL_COUNT,
                    help="vertices needed at or above k_max for the default window")
    an.set_defaults(func=cmd_analyze)

    ex = sub.add_parser("experiment", help="run a preset or configured sweep; writes CSV and SVG plots")
    ex.add_argument("--preset", help="preset name (see --list)")
    ex.add_argument("--config", help="YAML sweep specification")
    ex.add_argument("--list", action="store_true", help="list presets and exit")
    ex.add_argument("--out-dir", default=".")
    ex.add_argument("--seed", type=int, help="master seed (default: the preset's or config's)")
    ex.add_argument("--jobs", type=int, default=None, help="worker processes (default: $TWOTYPE_JOBS or 1)")
    ex.add_argument("--t", type=int, help="override PA time horizon")
    ex.add_argument("--n", type=int, help="override ER/CM graph size")
    ex.add_argument("--replicates", type=int, help="override replicate count")
    ex.add_argument("--full-scale", action="store_true", help=f"PA presets at t={PA_T_FULL:.0e} (hours, ~8 GB)")
    ex.add_argument("--no-plots", action="store_true", help="write the CSV only")
    ex.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleParametersError as exc:
        print(f"infeasible parameters: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (EdgeListFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SweepSpecError, ValueError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
