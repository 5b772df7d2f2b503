"""Component structure, per-type degree statistics and tail-exponent fits."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .core import TypedGraph, total_and_per_type_degrees

DEFAULT_K_MIN = 10
DEFAULT_MIN_TAIL_COUNT = 50
MIN_FIT_POINTS = 5


class InsufficientDataError(ValueError):
    """Too few CCDF points in the requested range to fit a slope."""


class UnionFind:
    """Disjoint sets over ``0..n-1`` with union by size and path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True

    def labels(self) -> np.ndarray:
        return np.fromiter((self.find(i) for i in range(len(self.parent))), dtype=np.int64, count=len(self.parent))


def component_labels(g: TypedGraph) -> np.ndarray:
    """Root id of each vertex's component."""
    uf = UnionFind(g.n)
    union = uf.union
    for a, b in g.edges.tolist():
        if a != b:
            union(a, b)
    return uf.labels()


@dataclass(frozen=True, eq=False)
class ComponentReport:
    """Component sizes in decreasing order with per-type counts.

    ``type_counts[r]`` is ``(type-1 vertices, type-2 vertices)`` in the
    component of rank ``r``.
    """

    n: int
    sizes_desc: np.ndarray
    type_counts: np.ndarray

    @property
    def largest_fraction(self) -> float:
        return float(self.sizes_desc[0]) / self.n if self.n else 0.0

    @property
    def per_type_in_largest(self) -> tuple[int, int]:
        if not self.n:
            return 0, 0
        return int(self.type_counts[0, 0]), int(self.type_counts[0, 1])

    def top(self, k: int) -> list[int]:
        out = self.sizes_desc[:k].tolist()
        return out + [0] * (k - len(out))


def components(g: TypedGraph) -> ComponentReport:
    if g.n == 0:
        return ComponentReport(0, np.zeros(0, dtype=np.int64), np.zeros((0, 2), dtype=np.int64))
    labels = component_labels(g)
    roots, inverse = np.unique(labels, return_inverse=True)
    t1 = np.bincount(inverse, weights=(g.types == 1), minlength=roots.size).astype(np.int64)
    sizes = np.bincount(inverse, minlength=roots.size).astype(np.int64)
    # Stable order: by size descending, ties by smallest vertex id of the component.
    order = np.lexsort((roots, -sizes))
    sizes = sizes[order]
    t1 = t1[order]
    return ComponentReport(g.n, sizes, np.column_stack((t1, sizes - t1)))


def top_k_component_sizes(g: TypedGraph, k: int) -> list[int]:
    if k < 1:
        raise ValueError("k must be >= 1")
    return components(g).top(k)


def giant_fraction_fixed_point(c: float, tol: float = 1e-12, max_iter: int = 1_000_000) -> float:
    """Survival probability ``s`` solving ``s = 1 - exp(-c s)`` (0 for ``c <= 1``).

    This is the limiting giant-component fraction of the one-type
    Erdos-Renyi graph with mean degree ``c``.
    """
    if c <= 1:
        return 0.0
    s = 1.0
    for _ in range(max_iter):
        nxt = 1.0 - math.exp(-c * s)
        if abs(nxt - s) < tol:
            return nxt
        s = nxt
    raise RuntimeError(f"fixed point did not converge for c={c}")


# -- degrees -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CcdfTable:
    """Complementary distribution evaluated at the distinct observed values ``k >= 1``.

    ``value[j]`` is the fraction of the population with degree ``>= k[j]``;
    ``count[j]`` the corresponding number of vertices (``None`` for
    synthetic tables).
    """

    k: np.ndarray
    value: np.ndarray
    count: np.ndarray | None = None
    population: int | None = None

    @classmethod
    def from_samples(cls, samples: np.ndarray) -> "CcdfTable":
        samples = np.asarray(samples, dtype=np.int64)
        total = samples.size
        if total == 0:
            return cls(np.zeros(0, np.int64), np.zeros(0), np.zeros(0, np.int64), 0)
        ks, counts = np.unique(samples, return_counts=True)
        at_least = total - np.concatenate(([0], np.cumsum(counts)[:-1]))
        keep = ks >= 1
        ks, at_least = ks[keep], at_least[keep]
        return cls(ks, at_least / total, at_least, total)


def degree_histogram(samples: np.ndarray) -> np.ndarray:
    """``hist[k]`` = number of samples equal to ``k``."""
    return np.bincount(np.asarray(samples, dtype=np.int64)) if len(samples) else np.zeros(1, np.int64)


@dataclass(frozen=True, eq=False)
class DegreeReport:
    """Per-type degree statistics.

    Keys of the dict fields are vertex types (1, 2) or ``(from_type, to_type)``
    pairs. ``cross_mean[i-1, j-1]`` is the average number of type-j
    neighbours of a type-i vertex. ``correlation[i]`` is the Pearson
    correlation of (neighbours of type 1, neighbours of type 2) over type-i
    vertices, ``None`` when either has zero variance.
    """

    type_sizes: dict
    histograms: dict
    ccdf: dict
    cross_mean: np.ndarray
    cross_ccdf: dict
    correlation: dict
    mean_degree: dict = field(default_factory=dict)


def _pearson(x: np.ndarray, y: np.ndarray):
    if x.size < 2:
        return None
    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if sxx == 0 or syy == 0:
        return None
    return float(np.dot(xc, yc) / math.sqrt(sxx * syy))


def degree_report(g: TypedGraph) -> DegreeReport:
    deg = total_and_per_type_degrees(g)
    to = {1: deg.to_type1, 2: deg.to_type2}
    sizes, hists, ccdfs, cross_ccdfs, corr, means = {}, {}, {}, {}, {}, {}
    cross = np.full((2, 2), math.nan)
    for i in (1, 2):
        mask = g.types == i
        sizes[i] = int(mask.sum())
        d_i = deg.total[mask]
        hists[i] = degree_histogram(d_i)
        ccdfs[i] = CcdfTable.from_samples(d_i)
        means[i] = float(d_i.mean()) if d_i.size else math.nan
        for j in (1, 2):
            dj = to[j][mask]
            cross[i - 1, j - 1] = float(dj.mean()) if dj.size else math.nan
            cross_ccdfs[(i, j)] = CcdfTable.from_samples(dj)
        corr[i] = _pearson(deg.to_type1[mask].astype(float), deg.to_type2[mask].astype(float))
    return DegreeReport(sizes, hists, ccdfs, cross, cross_ccdfs, corr, means)


# -- tail exponents ------------------------------------------------------------


@dataclass(frozen=True)
class ExponentFit:
    gamma_hat: float
    k_min: float
    k_max: float
    r_squared: float
    n_points: int


def default_k_max(ccdf: CcdfTable, min_count: int = DEFAULT_MIN_TAIL_COUNT) -> float:
    """Largest ``k`` still supported by at least ``min_count`` vertices."""
    if ccdf.count is None:
        return float(ccdf.k[-1]) if ccdf.k.size else 0.0
    ok = ccdf.count >= min_count
    return float(ccdf.k[ok][-1]) if ok.any() else 0.0


def fit_tail_exponent(
    ccdf: CcdfTable,
    k_min: float | None = None,
    k_max: float | None = None,
    min_count: int = DEFAULT_MIN_TAIL_COUNT,
) -> ExponentFit:
    """OLS slope of ``log CCDF`` against ``log k`` on ``[k_min, k_max]``; returns ``-slope``.

    Defaults: ``k_min = 10`` and ``k_max`` the largest ``k`` with at least
    ``min_count`` vertices at or above it.
    """
    if k_min is None:
        k_min = DEFAULT_K_MIN
    if k_max is None:
        k_max = default_k_max(ccdf, min_count)
    k = np.asarray(ccdf.k, dtype=np.float64)
    v = np.asarray(ccdf.value, dtype=np.float64)
    sel = (k >= k_min) & (k <= k_max) & (v > 0)
    n_points = int(sel.sum())
    if n_points < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"only {n_points} CCDF points in [{k_min}, {k_max}] (need {MIN_FIT_POINTS}); tail too short"
        )
    x = np.log(k[sel])
    y = np.log(v[sel])
    res = stats.linregress(x, y)
    return ExponentFit(
        gamma_hat=float(-res.slope),
        k_min=float(k[sel][0]),
        k_max=float(k[sel][-1]),
        r_squared=float(res.rvalue**2),
        n_points=n_points,
    )


def fit_degree_exponents(report: DegreeReport, k_min=None, k_max=None, min_count=DEFAULT_MIN_TAIL_COUNT) -> dict:
    """Fits for each total-degree CCDF (keys 1, 2) and cross CCDF (keys ``(i, j)``).

    Series whose tail is too short map to the :class:`InsufficientDataError`
    message instead of a fit.
    """
    out = {}
    tables = [(i, report.ccdf[i]) for i in (1, 2)] + sorted(report.cross_ccdf.items())
    for key, table in tables:
        try:
            out[key] = fit_tail_exponent(table, k_min, k_max, min_count)
        except InsufficientDataError as exc:
            out[key] = str(exc)
    return out


# -- CSV serialisation ---------------------------------------------------------
#
# components.csv     rank,size,fraction,type1,type2
# degree_hist.csv    type,k,count
# degree_ccdf.csv    type,k,count,fraction
# cross_ccdf.csv     from_type,to_type,k,count,fraction
# degree_summary.csv type,vertices,mean_degree,mean_to_type1,mean_to_type2,correlation
# exponents.csv      series,gamma_hat,k_min,k_max,r_squared,n_points,note


def _fmt(x) -> str:
    if x is None:
        return "NA"
    if isinstance(x, float):
        if math.isnan(x):
            return "NA"
        return repr(x)
    return str(x)


def _write_csv(path, header, rows, comments=None):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in comments or ():
            fh.write(f"# {line}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])


def write_component_csv(report: ComponentReport, path, comments=None):
    rows = (
        (r + 1, int(s), float(s) / report.n, int(report.type_counts[r, 0]), int(report.type_counts[r, 1]))
        for r, s in enumerate(report.sizes_desc)
    )
    _write_csv(path, ["rank", "size", "fraction", "type1", "type2"], rows, comments)


def write_degree_csvs(report: DegreeReport, out_dir, comments=None) -> list:
    from pathlib import Path

    out_dir = Path(out_dir)
    paths = [out_dir / name for name in ("degree_hist.csv", "degree_ccdf.csv", "cross_ccdf.csv", "degree_summary.csv")]
    _write_csv(
        paths[0],
        ["type", "k", "count"],
        ((i, k, int(c)) for i in (1, 2) for k, c in enumerate(report.histograms[i]) if c),
        comments,
    )
    _write_csv(
        paths[1],
        ["type", "k", "count", "fraction"],
        (
            (i, int(k), int(c), float(v))
            for i in (1, 2)
            for k, c, v in zip(report.ccdf[i].k, report.ccdf[i].count, report.ccdf[i].value)
        ),
        comments,
    )
    _write_csv(
        paths[2],
        ["from_type", "to_type", "k", "count", "fraction"],
        (
            (i, j, int(k), int(c), float(v))
            for (i, j), tab in sorted(report.cross_ccdf.items())
            for k, c, v in zip(tab.k, tab.count, tab.value)
        ),
        comments,
    )
    _write_csv(
        paths[3],
        ["type", "vertices", "mean_degree", "mean_to_type1", "mean_to_type2", "correlation"],
        (
            (
                i,
                report.type_sizes[i],
                report.mean_degree[i],
                float(report.cross_mean[i - 1, 0]),
                float(report.cross_mean[i - 1, 1]),
                report.correlation[i],
            )
            for i in (1, 2)
        ),
        comments,
    )
    return paths


def series_name(key) -> str:
    return f"type{key}" if isinstance(key, int) else f"type{key[0]}->type{key[1]}"


def write_exponent_csv(fits: dict, path, comments=None):
    rows = []
    for key, fit in fits.items():
        if isinstance(fit, ExponentFit):
            rows.append((series_name(key), fit.gamma_hat, fit.k_min, fit.k_max, fit.r_squared, fit.n_points, ""))
        else:
            rows.append((series_name(key), None, None, None, None, 0, fit))
    _write_csv(path, ["series", "gamma_hat", "k_min", "k_max", "r_squared", "n_points", "note"], rows, comments)
