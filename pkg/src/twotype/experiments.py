"""Parameter sweeps with seeded replicates, and the preset catalogue.

A :class:`SweepSpec` names a model, fixed parameters, an optional swept
parameter with its grid, optional *series* (one curve each, given as
parameter overrides) and derivation rules that resolve the remaining model
parameters at every grid point:

``alpha_from_mean``
    ER own-type rates from fixed mean degrees ``mu1``, ``mu2`` and ``beta``.
``xi2_from_balance``
    CM ``xi2`` from ``xi1`` and the means of ``F1``, ``F2`` so the expected
    numbers of cross-labelled half-edges match.

Replicate ``r`` uses ``RngStream(master_seed, r)`` at every grid point, so
neighbouring grid points share random numbers and curves are smooth.

Output columns (see :func:`columns_for`) are, in order: ``series``, the swept
parameter (grid value verbatim, if any), resolved model parameters, analytic
predictions, ``<metric>_mean``/``<metric>_sd`` for each metric,
``replicates`` and ``flags``.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .analysis import (
    CcdfTable,
    ExponentFit,
    InsufficientDataError,
    components,
    degree_report,
    fit_tail_exponent,
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
from .core import InfeasibleParametersError, RngStream, total_and_per_type_degrees
from .degree_dist import DegreeDistribution, parse_distribution
from .generators import generate_cm, generate_er, generate_pa

MODELS = ("er", "cm", "pa")
DERIVE_RULES = {"er": ("alpha_from_mean",), "cm": ("xi2_from_balance",), "pa": ()}
PARAM_NAMES = {
    "er": ("p1", "alpha1", "alpha2", "beta", "mu1", "mu2"),
    "cm": ("p1", "F1", "F2", "mu1", "mu2", "xi1", "xi2", "one_minus_xi1"),
    "pa": ("p1", "theta1", "theta2"),
}
METRICS = {
    "er": ("largest_fraction", "second_fraction", "third_fraction"),
    "cm": ("largest_fraction", "second_fraction", "third_fraction", "erased_affected_fraction"),
    "pa": (
        "gamma_hat_1",
        "gamma_hat_2",
        "gamma_hat_11",
        "gamma_hat_12",
        "gamma_hat_21",
        "gamma_hat_22",
        "r2_1",
        "r2_2",
        "N11",
        "N12",
        "N21",
        "N22",
        "corr_1",
        "corr_2",
    ),
}
RESOLVED_COLUMNS = {
    "er": ("p1", "alpha1", "alpha2", "beta", "mu1", "mu2"),
    "cm": ("p1", "F1", "F2", "mu1", "mu2", "nu1", "nu2", "xi1", "xi2"),
    "pa": ("p1", "theta1", "theta2"),
}
ANALYTIC_COLUMNS = {
    "er": ("lambda_c",),
    "cm": ("lambda_c",),
    "pa": ("a1", "a2", "gamma1", "gamma2", "N11_pred", "N12_pred", "N21_pred", "N22_pred"),
}

JOBS_ENV = "TWOTYPE_JOBS"


class SweepSpecError(ValueError):
    """Invalid sweep specification; the message names the offending field."""


@dataclass(frozen=True)
class Series:
    label: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SweepSpec:
    name: str
    model: str
    size: int
    replicates: int
    master_seed: int
    fixed: dict = field(default_factory=dict)
    sweep_param: str | None = None
    grid: tuple = ()
    series: tuple = (Series(""),)
    derive: tuple = ()
    metrics: tuple = ()
    description: str = ""
    # Whether to keep per-vertex detail (CCDF tables, degree pairs) of replicate 0 for plots.
    keep_detail: bool = False

    def validate(self) -> "SweepSpec":
        if self.model not in MODELS:
            raise SweepSpecError(f"model: must be one of {MODELS}, got {self.model!r}")
        if int(self.size) < 1:
            raise SweepSpecError("size: must be >= 1")
        if int(self.replicates) < 1:
            raise SweepSpecError("replicates: must be >= 1")
        if not 0 <= int(self.master_seed) < 2**64:
            raise SweepSpecError("master_seed: must be a 64-bit unsigned integer")
        names = PARAM_NAMES[self.model]
        declared = set(self.fixed)
        for s in self.series:
            declared |= set(s.params)
        if self.sweep_param is not None:
            declared.add(self.sweep_param)
            if self.sweep_param not in names:
                raise SweepSpecError(f"sweep.param: {self.sweep_param!r} is not a {self.model} parameter {names}")
            if not self.grid:
                raise SweepSpecError("sweep.grid: must be non-empty")
            if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
                raise SweepSpecError("sweep.grid: must be strictly increasing")
        elif self.grid:
            raise SweepSpecError("sweep.grid: given without sweep.param")
        unknown = declared - set(names)
        if unknown:
            raise SweepSpecError(f"fixed/series: unknown {self.model} parameters {sorted(unknown)}")
        required = {"er": {"p1", "beta"}, "cm": {"p1", "F1", "F2"}, "pa": {"p1", "theta1", "theta2"}}
        missing = required[self.model] - declared
        if self.model == "er" and "alpha_from_mean" not in self.derive:
            missing |= {"alpha1", "alpha2"} - declared
        if self.model == "cm" and "xi2_from_balance" not in self.derive:
            missing |= {"xi2"} - declared
        if self.model == "cm" and not {"xi1", "one_minus_xi1"} & declared:
            missing.add("xi1")
        if missing:
            raise SweepSpecError(f"fixed/series: missing {self.model} parameters {sorted(missing)}")
        for rule in self.derive:
            if rule not in DERIVE_RULES[self.model]:
                raise SweepSpecError(f"derive: unknown rule {rule!r} for model {self.model}")
        if "alpha_from_mean" in self.derive:
            missing = {"p1", "mu1", "mu2", "beta"} - declared
            if missing:
                raise SweepSpecError(f"derive: alpha_from_mean needs {sorted(missing)}")
        if "xi2_from_balance" in self.derive:
            if "xi2" in declared:
                raise SweepSpecError("derive: xi2_from_balance conflicts with a declared xi2")
            if not {"xi1", "one_minus_xi1"} & declared:
                raise SweepSpecError("derive: xi2_from_balance needs xi1 or one_minus_xi1")
        bad = set(self.metrics) - set(METRICS[self.model])
        if bad:
            raise SweepSpecError(f"metrics: unknown for {self.model}: {sorted(bad)}")
        labels = [s.label for s in self.series]
        if len(set(labels)) != len(labels):
            raise SweepSpecError("series: labels must be unique")
        return self

    @property
    def active_metrics(self) -> tuple:
        return tuple(self.metrics) if self.metrics else METRICS[self.model]

    def points(self):
        """``(series, grid value or None, merged parameters)`` in output order."""
        grid = self.grid if self.sweep_param is not None else (None,)
        for s in self.series:
            for x in grid:
                params = dict(self.fixed)
                params.update(s.params)
                if x is not None:
                    params[self.sweep_param] = x
                yield s, x, params

    # -- config files --

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "description": self.description,
            "model": self.model,
            "size": int(self.size),
            "replicates": int(self.replicates),
            "master_seed": int(self.master_seed),
            "fixed": dict(self.fixed),
        }
        if self.sweep_param is not None:
            out["sweep"] = {"param": self.sweep_param, "grid": [float(x) for x in self.grid]}
        if len(self.series) > 1 or self.series[0].label or self.series[0].params:
            out["series"] = [{"label": s.label, "params": dict(s.params)} for s in self.series]
        if self.derive:
            out["derive"] = list(self.derive)
        if self.metrics:
            out["metrics"] = list(self.metrics)
        if self.keep_detail:
            out["keep_detail"] = True
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        known = {"name", "description", "model", "size", "replicates", "master_seed", "fixed",
                 "sweep", "series", "derive", "metrics", "keep_detail"}
        extra = set(d) - known
        if extra:
            raise SweepSpecError(f"unknown top-level keys {sorted(extra)}")
        for key in ("model", "size"):
            if key not in d:
                raise SweepSpecError(f"{key}: required")
        sweep = d.get("sweep") or {}
        grid = sweep.get("grid", ())
        if isinstance(grid, dict):
            try:
                grid = np.linspace(float(grid["start"]), float(grid["stop"]), int(grid["num"])).tolist()
            except KeyError as exc:
                raise SweepSpecError(f"sweep.grid: range form needs start/stop/num, missing {exc}") from None
        series = tuple(Series(str(s.get("label", "")), dict(s.get("params") or {})) for s in d.get("series") or ())
        return cls(
            name=str(d.get("name", "custom")),
            model=str(d["model"]).lower(),
            size=int(d["size"]),
            replicates=int(d.get("replicates", 1)),
            master_seed=int(d.get("master_seed", 0)),
            fixed=dict(d.get("fixed") or {}),
            sweep_param=sweep.get("param"),
            grid=tuple(float(x) for x in grid),
            series=series or (Series(""),),
            derive=tuple(d.get("derive") or ()),
            metrics=tuple(d.get("metrics") or ()),
            description=str(d.get("description", "")),
            keep_detail=bool(d.get("keep_detail", False)),
        ).validate()


def load_spec(path) -> SweepSpec:
    with open(path, encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise SweepSpecError(f"{path}: expected a mapping at top level")
    return SweepSpec.from_dict(data)


def dump_spec(spec: SweepSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(spec.to_dict(), fh, sort_keys=False, default_flow_style=None)


# -- resolution -----------------------------------------------------------------


def _dist(params: dict, which: int) -> DegreeDistribution:
    spec = params.get(f"F{which}")
    mean = params.get(f"mu{which}")
    if isinstance(spec, str) and ":" not in spec:
        if mean is None:
            raise SweepSpecError(f"F{which}: kind {spec!r} needs mu{which}")
        return parse_distribution({"kind": spec, "mean": float(mean)})
    if spec is None:
        raise SweepSpecError(f"F{which}: required for model cm")
    return parse_distribution(spec)


def _dist_label(d: DegreeDistribution) -> str:
    desc = d.describe()
    if desc["kind"] == "poisson":
        return f"poisson({desc['mean']!r})"
    if desc["kind"] == "yule_simon":
        return f"yule_simon(rho={desc['rho']!r})"
    return f"explicit({len(desc['table'])} points)"


def resolve(model: str, params: dict, derive=()) -> dict:
    """Model parameters and analytic predictions at one grid point.

    Raises :class:`InfeasibleParametersError` when a derivation has no
    admissible solution.
    """
    out = {}
    if model == "er":
        p1 = float(params["p1"])
        beta = float(params["beta"])
        if "alpha_from_mean" in derive:
            p = ErParams.from_means(p1, float(params["mu1"]), float(params["mu2"]), beta)
        else:
            p = ErParams(p1, float(params["alpha1"]), float(params["alpha2"]), beta)
        mu1, mu2 = er_mean_degrees(p)
        out.update(p1=p.p1, alpha1=p.alpha1, alpha2=p.alpha2, beta=p.beta, mu1=mu1, mu2=mu2)
        out["lambda_c"] = er_lambda_c(p)
        out["_model"] = p
    elif model == "cm":
        p1 = float(params["p1"])
        F1, F2 = _dist(params, 1), _dist(params, 2)
        if "one_minus_xi1" in params:
            xi1 = 1.0 - float(params["one_minus_xi1"])
        else:
            xi1 = float(params["xi1"])
        if "xi2_from_balance" in derive:
            xi2 = cm_balance_xi2(p1, F1.mean(), xi1, F2.mean())
        else:
            xi2 = float(params["xi2"])
        nu1, nu2 = F1.size_biased_mean(), F2.size_biased_mean()
        out.update(p1=p1, F1=_dist_label(F1), F2=_dist_label(F2), mu1=F1.mean(), mu2=F2.mean(),
                   nu1=nu1, nu2=nu2, xi1=xi1, xi2=xi2)
        out["lambda_c"] = cm_lambda_c(CmMixParams(xi1, xi2, nu1, nu2))
        out["_model"] = (p1, F1, F2, xi1, xi2)
    else:
        p = PaParams(float(params["p1"]), float(params["theta1"]), float(params["theta2"]))
        rates = pa_rates(p)
        ex = pa_exponents(p)
        pred = pa_expected_cross_degrees(p)
        out.update(p1=p.p1, theta1=p.theta1, theta2=p.theta2, a1=rates.a1, a2=rates.a2,
                   gamma1=ex.gamma1, gamma2=ex.gamma2)
        for i in (1, 2):
            for j in (1, 2):
                out[f"N{i}{j}_pred"] = float(pred[i - 1, j - 1])
        out["_model"] = p
    return out


# -- replicates -------------------------------------------------------------------


def _fit_or_nan(table: CcdfTable):
    try:
        return fit_tail_exponent(table)
    except InsufficientDataError:
        return None


def run_replicate(model: str, model_params, size: int, seed: int, r: int, keep_detail: bool = False):
    """Generate and analyse one replicate; returns ``(metrics, detail or None)``."""
    rng = RngStream(seed, r)
    detail = None
    if model == "er":
        g = generate_er(size, model_params, rng)
    elif model == "cm":
        p1, F1, F2, xi1, xi2 = model_params
        g, rep = generate_cm(size, p1, F1, F2, xi1, xi2, rng)
    else:
        g = generate_pa(size, model_params, rng)

    if model in ("er", "cm"):
        comp = components(g)
        first, second, third = comp.top(3)
        m = {
            "largest_fraction": first / g.n,
            "second_fraction": second / g.n,
            "third_fraction": third / g.n,
        }
        if model == "cm":
            m["erased_affected_fraction"] = rep.erased_affected_vertices / g.n
        return m, None

    report = degree_report(g)
    m = {}
    fits = {}
    for key, table in [(1, report.ccdf[1]), (2, report.ccdf[2])] + sorted(report.cross_ccdf.items()):
        fits[key] = _fit_or_nan(table)
    for i in (1, 2):
        f = fits[i]
        m[f"gamma_hat_{i}"] = f.gamma_hat if f else math.nan
        m[f"r2_{i}"] = f.r_squared if f else math.nan
        c = report.correlation[i]
        m[f"corr_{i}"] = math.nan if c is None else c
        for j in (1, 2):
            f = fits[(i, j)]
            m[f"gamma_hat_{i}{j}"] = f.gamma_hat if f else math.nan
            m[f"N{i}{j}"] = float(report.cross_mean[i - 1, j - 1])
    if keep_detail:
        deg = total_and_per_type_degrees(g)
        pairs = {}
        for i in (1, 2):
            mask = g.types == i
            pairs[i] = np.unique(np.column_stack((deg.to_type1[mask], deg.to_type2[mask])), axis=0)
        detail = {"ccdf": {1: report.ccdf[1], 2: report.ccdf[2]}, "fits": fits, "pairs": pairs}
    return m, detail


def _task(args):
    return run_replicate(*args)


@dataclass
class SweepResult:
    spec: SweepSpec
    columns: list
    rows: list
    # label -> detail of replicate 0 (PA sweeps with keep_detail only)
    detail: dict = field(default_factory=dict)

    def column(self, name, series=None) -> np.ndarray:
        rows = [r for r in self.rows if series is None or r["series"] == series]
        return np.array([np.nan if r.get(name) is None else r[name] for r in rows], dtype=float)

    def series_labels(self) -> list:
        seen = []
        for r in self.rows:
            if r["series"] not in seen:
                seen.append(r["series"])
        return seen


def columns_for(spec: SweepSpec) -> list:
    cols = ["series"]
    if spec.sweep_param is not None and spec.sweep_param not in RESOLVED_COLUMNS[spec.model]:
        cols.append(spec.sweep_param)
    cols.extend(RESOLVED_COLUMNS[spec.model])
    if spec.model == "pa":
        cols.append("t")
    cols.extend(ANALYTIC_COLUMNS[spec.model])
    for m in spec.active_metrics:
        cols.extend((f"{m}_mean", f"{m}_sd"))
    cols.extend(("replicates", "flags"))
    return cols


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _aggregate(values: list) -> tuple:
    arr = np.array(values, dtype=float)
    arr = arr[~np.isnan(arr)]
    if arr.size == 0:
        return None, None
    mean = float(arr.mean())
    sd = float(arr.std(ddof=1)) if arr.size > 1 else None
    return mean, sd


def run_sweep(spec: SweepSpec, jobs: int | None = None) -> SweepResult:
    """Run every (series, grid point) with ``spec.replicates`` seeded replicates.

    Infeasible points are flagged and not simulated. The result depends only
    on ``spec``; ``jobs > 1`` distributes replicates over processes without
    changing any number.
    """
    spec.validate()
    jobs = default_jobs() if jobs is None else max(1, int(jobs))
    cols = columns_for(spec)
    metrics = spec.active_metrics
    points = []
    tasks = []
    for s, x, params in spec.points():
        try:
            resolved = resolve(spec.model, params, spec.derive)
        except InfeasibleParametersError as exc:
            points.append((s, x, params, None, f"infeasible: {exc}"))
            continue
        points.append((s, x, params, resolved, ""))
        for r in range(spec.replicates):
            keep = spec.keep_detail and r == 0 and x == (spec.grid[0] if spec.grid else None)
            tasks.append((spec.model, resolved["_model"], int(spec.size), int(spec.master_seed), r, keep))

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        outputs = [_task(t) for t in tasks]

    rows = []
    detail = {}
    it = iter(outputs)
    for s, x, params, resolved, flag in points:
        row = {c: None for c in cols}
        row["series"] = s.label
        if spec.sweep_param is not None:
            row[spec.sweep_param] = x
        if spec.model == "pa":
            row["t"] = int(spec.size)
        row["flags"] = flag
        if resolved is None:
            row["replicates"] = 0
            for k in RESOLVED_COLUMNS[spec.model]:
                if k in params and not isinstance(params[k], dict):
                    row[k] = params[k]
            rows.append(row)
            continue
        for k, v in resolved.items():
            if k in row:
                row[k] = v
        reps = [next(it) for _ in range(spec.replicates)]
        for m in metrics:
            row[f"{m}_mean"], row[f"{m}_sd"] = _aggregate([rep[0][m] for rep in reps])
        row["replicates"] = spec.replicates
        if reps[0][1] is not None:
            detail[s.label] = reps[0][1]
        rows.append(row)
    return SweepResult(spec, cols, rows, detail)


# -- CSV --------------------------------------------------------------------------


def _cell(x) -> str:
    if x is None:
        return "NA"
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "NA"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    return str(x)


def provenance_lines(spec: SweepSpec) -> list:
    return [
        f"tool=twotype {__version__}",
        f"model={spec.model} preset={spec.name} seed={spec.master_seed}",
        "spec=" + yaml.safe_dump(spec.to_dict(), default_flow_style=True, sort_keys=True, width=10**9).strip(),
    ]


def emit_csv(result: SweepResult, path, provenance: list | None = None) -> Path:
    """Write one row per grid point (per series) with a header row; flags come last.

    ``provenance`` lines, when given, are written first as ``# `` comments.
    """
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            for line in provenance or ():
                fh.write(f"# {line}\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(result.columns)
            for row in result.rows:
                w.writerow([_cell(row.get(c)) for c in result.columns])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


# -- presets ------------------------------------------------------------------------

ER_SIZE = 10_000
ER_REPS = 100
PA_T = 10**6
PA_T_FULL = 10**9
DEFAULT_SEED = 2017


def _grid(start, stop, step) -> tuple:
    num = int(round((stop - start) / step)) + 1
    return tuple(round(start + i * step, 10) for i in range(num))


PA_CASES = {
    "I": {"p1": 0.5, "theta1": 0.8, "theta2": 0.8},
    "II": {"p1": 0.5, "theta1": 0.2, "theta2": 0.2},
    "III": {"p1": 0.5, "theta1": 0.8, "theta2": 0.2},
    "IV": {"p1": 0.1, "theta1": 0.8, "theta2": 0.2},
    "V": {"p1": 0.2, "theta1": 0.2, "theta2": 0.2},
}


def _er_beta(name, desc, fixed, series, stop):
    return SweepSpec(
        name=name, model="er", size=ER_SIZE, replicates=ER_REPS, master_seed=DEFAULT_SEED,
        fixed=fixed, sweep_param="beta", grid=_grid(0.0, stop, 0.1),
        series=tuple(Series(lbl, p) for lbl, p in series), derive=("alpha_from_mean",),
        description=desc,
    )


def _cm_xi(name, desc, fixed, series):
    return SweepSpec(
        name=name, model="cm", size=ER_SIZE, replicates=ER_REPS, master_seed=DEFAULT_SEED,
        fixed=fixed, sweep_param="one_minus_xi1", grid=_grid(0.0, 1.0, 0.05),
        series=tuple(Series(lbl, p) for lbl, p in series), derive=("xi2_from_balance",),
        description=desc,
    )


def _pa_cases(name, desc, cases, keep_detail=False):
    return SweepSpec(
        name=name, model="pa", size=PA_T, replicates=1, master_seed=DEFAULT_SEED,
        series=tuple(Series(f"case{c}", PA_CASES[c]) for c in cases), description=desc,
        keep_detail=keep_detail,
    )


def _catalog() -> dict:
    cat = {}
    cat["fig_ER_Ex2"] = _er_beta(
        "fig_ER_Ex2",
        "ER, p1=1/2: one subcritical and one supercritical type; lambda_c and component size against beta",
        {"p1": 0.5},
        [("mu1=0.5,mu2=1.2", {"mu1": 0.5, "mu2": 1.2}), ("mu1=0.7,mu2=1.1", {"mu1": 0.7, "mu2": 1.1})],
        1.4,
    )
    cat["fig_ER_Ex2b"] = _er_beta(
        "fig_ER_Ex2b",
        "ER, p1=1/2, mu1=0.5: supercritical type 2 strong enough to keep lambda_c above 1",
        {"p1": 0.5, "mu1": 0.5},
        [("mu2=2.5", {"mu2": 2.5}), ("mu2=2.0", {"mu2": 2.0}), ("mu2=1.5", {"mu2": 1.5})],
        1.0,
    )
    cat["fig_ER_Ex3"] = _er_beta(
        "fig_ER_Ex3",
        "ER, p1=1/2: two supercritical types",
        {"p1": 0.5, "mu1": 1.2},
        [("mu2=1.5", {"mu2": 1.5}), ("mu2=2.0", {"mu2": 2.0})],
        2.4,
    )
    cat["fig_ER_Ex4"] = _er_beta(
        "fig_ER_Ex4",
        "ER, mu1=0.5, mu2=1.2: type 1 as majority (p1=0.9) or minority (p1=0.1)",
        {"mu1": 0.5, "mu2": 1.2},
        [("p1=0.1", {"p1": 0.1}), ("p1=0.9", {"p1": 0.9})],
        1.3,
    )
    cat["fig_ER_Ex5"] = SweepSpec(
        name="fig_ER_Ex5", model="er", size=ER_SIZE, replicates=ER_REPS, master_seed=DEFAULT_SEED,
        fixed={"alpha2": 1.5, "beta": 0.5}, sweep_param="p1", grid=_grid(0.05, 0.95, 0.05),
        series=(Series("alpha1=1.1", {"alpha1": 1.1}), Series("alpha1=0.3", {"alpha1": 0.3})),
        description="ER with fixed rates (beta=0.5, alpha2=1.5), varying the type proportion p1; "
        "second and third largest components peak where lambda_c crosses 1",
    )
    cat["fig_CM_PoPo"] = _cm_xi(
        "fig_CM_PoPo",
        "CM, F1=Poisson(0.5), F2=Poisson(1.5), balanced xi2, for several p1",
        {"F1": "poisson", "mu1": 0.5, "F2": "poisson", "mu2": 1.5},
        [(f"p1={p}", {"p1": p}) for p in (0.4, 0.5, 0.6, 0.7)],
    )
    cat["fig_CM_YSYS"] = _cm_xi(
        "fig_CM_YSYS",
        "CM, p1=1/2, both types Yule-Simon; (a) one subcritical type, (b) both supercritical",
        {"p1": 0.5, "F1": "yule_simon", "F2": "yule_simon"},
        [
            ("a:mu1=2.5,mu2=1.2", {"mu1": 2.5, "mu2": 1.2}),
            ("a:mu1=2.0,mu2=1.2", {"mu1": 2.0, "mu2": 1.2}),
            ("a:mu1=1.5,mu2=1.2", {"mu1": 1.5, "mu2": 1.2}),
            ("b:mu1=2.0,mu2=2.5", {"mu1": 2.0, "mu2": 2.5}),
            ("b:mu1=1.5,mu2=2.0", {"mu1": 1.5, "mu2": 2.0}),
            ("b:mu1=1.5,mu2=2.5", {"mu1": 1.5, "mu2": 2.5}),
        ],
    )
    cat["fig_CM_PoYS"] = _cm_xi(
        "fig_CM_PoYS",
        "CM, p1=1/2, F1=Poisson(mu1), F2=Yule-Simon(mu2); (a) Yule-Simon subcritical, (b) both supercritical",
        {"p1": 0.5, "F1": "poisson", "F2": "yule_simon"},
        [
            ("a:mu1=2.5,mu2=1.1", {"mu1": 2.5, "mu2": 1.1}),
            ("a:mu1=2.0,mu2=1.1", {"mu1": 2.0, "mu2": 1.1}),
            ("a:mu1=1.5,mu2=1.1", {"mu1": 1.5, "mu2": 1.1}),
            ("a:mu1=1.2,mu2=1.1", {"mu1": 1.2, "mu2": 1.1}),
            ("b:mu1=2.0,mu2=2.5", {"mu1": 2.0, "mu2": 2.5}),
            ("b:mu1=1.5,mu2=2.5", {"mu1": 1.5, "mu2": 2.5}),
            ("b:mu1=1.2,mu2=2.5", {"mu1": 1.2, "mu2": 2.5}),
        ],
    )
    cat["fig_PA_loglog"] = _pa_cases(
        "fig_PA_loglog", "PA degree CCDF per type on log-log axes, cases I and V", ("I", "V"), keep_detail=True
    )
    cat["fig_PA_scatter"] = _pa_cases(
        "fig_PA_scatter", "PA (type-1 degree, type-2 degree) scatter per vertex type, cases I, II and V",
        ("I", "II", "V"), keep_detail=True,
    )
    all_cases = tuple(PA_CASES)
    cat["table2"] = _pa_cases("table2", "PA estimated and analytic tail exponents, cases I-V", all_cases)
    cat["table3"] = _pa_cases("table3", "PA average degree split per type, cases I-V", all_cases)
    cat["table4"] = _pa_cases("table4", "PA tail exponents of degrees split per type, cases I-V", all_cases)
    for c in all_cases:
        cat[f"table2_case{c}"] = _pa_cases(f"table2_case{c}", f"PA case {c}", (c,))
    return cat


PRESET_ALIASES = {
    "fig1": "fig_ER_Ex2",
    "fig2": "fig_ER_Ex2b",
    "fig_ER_Ex2(2)": "fig_ER_Ex2b",
    "fig3": "fig_ER_Ex3",
    "fig4": "fig_ER_Ex4",
    "fig5": "fig_ER_Ex5",
    "fig6": "fig_CM_PoPo",
    "fig_CM_popo_subsup": "fig_CM_PoPo",
    "fig7": "fig_CM_YSYS",
    "fig8": "fig_CM_PoYS",
    "fig9": "fig_PA_loglog",
    "fig10": "fig_PA_scatter",
}


def preset_names() -> list:
    return sorted(_catalog())


def preset(name: str, full_scale: bool = False) -> SweepSpec:
    """Preset reproducing one figure or table; ``full_scale`` switches PA to t = 10**9."""
    cat = _catalog()
    key = PRESET_ALIASES.get(name, name)
    if key not in cat:
        listing = ", ".join(preset_names() + sorted(PRESET_ALIASES))
        raise KeyError(f"unknown preset {name!r}; available: {listing}")
    spec = cat[key]
    if full_scale and spec.model == "pa":
        spec = replace(spec, size=PA_T_FULL)
    return spec.validate()


PRESET_DIR = Path(__file__).with_name("presets")


def export_presets(directory=PRESET_DIR) -> list:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in preset_names():
        path = directory / f"{name}.yaml"
        dump_spec(preset(name), path)
        paths.append(path)
    return paths
