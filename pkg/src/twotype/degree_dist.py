"""Degree distributions for the configuration model.

Each distribution exposes ``mean()``, ``size_biased_mean()`` (the expected
number of further neighbours reached along a uniformly chosen edge),
``pmf(k)`` and ``sample(rng, size)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln
from scipy.stats import poisson as _poisson

from .analytic import log_gamma_ratio
from .core import InfeasibleParametersError, RngStream

MAX_EXPLICIT_SUPPORT = 10**6


def _gen(rng):
    return rng.generator if isinstance(rng, RngStream) else rng


def yule_simon_pmf(rho: float, k):
    """``P(D = k) = rho * B(k, rho + 1)`` for ``k >= 1``; accepts scalar or array ``k``."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    k_arr = np.asarray(k, dtype=np.float64)
    if np.any(k_arr < 1) or np.any(k_arr != np.floor(k_arr)):
        raise ValueError("k must be an integer >= 1")
    log_p = math.log(rho) + gammaln(rho + 1.0) - log_gamma_ratio(k_arr, rho + 1.0)
    out = np.exp(log_p)
    return float(out) if out.ndim == 0 else out


def yule_simon_shape_from_mean(mu: float) -> float:
    """Shape ``rho`` whose Yule-Simon law has mean ``mu`` (needs ``mu > 1``)."""
    if not mu > 1:
        raise InfeasibleParametersError(f"Yule-Simon mean is always > 1, got mu={mu}")
    if math.isinf(mu):
        raise InfeasibleParametersError("mean must be finite")
    return mu / (mu - 1.0)


class DegreeDistribution:
    name = "abstract"

    def mean(self) -> float:
        raise NotImplementedError

    def size_biased_mean(self) -> float:
        raise NotImplementedError

    def pmf(self, k):
        raise NotImplementedError

    def sample(self, rng, size=None):
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Poisson(DegreeDistribution):
    lam: float
    name = "poisson"

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"Poisson mean must be finite and > 0, got {self.lam}")

    def mean(self):
        return float(self.lam)

    def size_biased_mean(self):
        return float(self.lam)

    def pmf(self, k):
        out = _poisson.pmf(np.asarray(k), self.lam)
        return float(out) if np.ndim(out) == 0 else out

    def sample(self, rng, size=None):
        # numpy uses inversion below mean 10 and PTRS transformed rejection above.
        return _gen(rng).poisson(self.lam, size=size)

    def describe(self):
        return {"kind": "poisson", "mean": self.lam}


@dataclass(frozen=True)
class YuleSimon(DegreeDistribution):
    """Yule-Simon law on ``{1, 2, ...}`` with shape ``rho > 1`` (finite mean)."""

    rho: float
    name = "yule_simon"

    def __post_init__(self):
        if not (math.isfinite(self.rho) and self.rho > 1):
            raise ValueError(f"Yule-Simon shape must exceed 1 for a finite mean, got {self.rho}")

    @classmethod
    def from_mean(cls, mu: float) -> "YuleSimon":
        return cls(yule_simon_shape_from_mean(mu))

    def mean(self):
        return self.rho / (self.rho - 1.0)

    def size_biased_mean(self):
        return 2.0 / (self.rho - 2.0) if self.rho > 2 else math.inf

    def pmf(self, k):
        return yule_simon_pmf(self.rho, k)

    def sample(self, rng, size=None):
        # Exponential mixture of geometrics: W ~ Exp(rho), K | W ~ Geom(exp(-W)) on {1, 2, ...}.
        g = _gen(rng)
        w = g.exponential(1.0 / self.rho, size=size)
        return g.geometric(np.exp(-w), size=size)

    def describe(self):
        return {"kind": "yule_simon", "rho": self.rho}


@dataclass(frozen=True, eq=False)
class Explicit(DegreeDistribution):
    """Finite table of degree probabilities; renormalised on construction."""

    ks: np.ndarray
    probs: np.ndarray
    _cdf: np.ndarray = field(init=False, repr=False)
    name = "explicit"

    def __post_init__(self):
        ks = np.asarray(self.ks, dtype=np.int64).reshape(-1)
        probs = np.asarray(self.probs, dtype=np.float64).reshape(-1)
        if ks.shape != probs.shape or ks.size == 0:
            raise ValueError("need matching, non-empty degree and probability columns")
        if ks.size > MAX_EXPLICIT_SUPPORT:
            raise ValueError(
                f"explicit table has {ks.size} support points (max {MAX_EXPLICIT_SUPPORT}); "
                "use a parametric distribution instead"
            )
        if np.any(ks < 0) or np.any(probs < 0):
            raise ValueError("degrees and probabilities must be nonnegative")
        if np.unique(ks).size != ks.size:
            raise ValueError("duplicate degree in explicit table")
        total = probs.sum()
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        order = np.argsort(ks)
        ks, probs = ks[order], probs[order] / total
        cdf = np.cumsum(probs)
        cdf[-1] = 1.0
        for name, value in (("ks", ks), ("probs", probs), ("_cdf", cdf)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @classmethod
    def from_pairs(cls, pairs) -> "Explicit":
        ks, ps = zip(*pairs)
        return cls(np.array(ks), np.array(ps))

    @classmethod
    def from_file(cls, path) -> "Explicit":
        """Two whitespace-separated columns ``k p_k``; ``#`` starts a comment."""
        data = np.loadtxt(path, comments="#", ndmin=2)
        if data.shape[1] != 2:
            raise ValueError(f"{path}: expected two columns 'k p_k', got {data.shape[1]}")
        if np.any(data[:, 0] != np.round(data[:, 0])):
            raise ValueError(f"{path}: degrees must be integers")
        return cls(data[:, 0].astype(np.int64), data[:, 1])

    def mean(self):
        return float(np.dot(self.ks, self.probs))

    def size_biased_mean(self):
        mu = self.mean()
        if mu == 0:
            return 0.0
        second = float(np.dot(self.ks.astype(np.float64) ** 2, self.probs))
        return (second - mu) / mu

    def pmf(self, k):
        k_arr = np.asarray(k)
        idx = np.searchsorted(self.ks, k_arr)
        idx_c = np.minimum(idx, self.ks.size - 1)
        out = np.where(self.ks[idx_c] == k_arr, self.probs[idx_c], 0.0)
        return float(out) if out.ndim == 0 else out

    def sample(self, rng, size=None):
        u = _gen(rng).random(size=size)
        idx = np.searchsorted(self._cdf, u, side="right")
        return self.ks[np.minimum(idx, self.ks.size - 1)]

    def describe(self):
        return {"kind": "explicit", "table": [[int(k), float(p)] for k, p in zip(self.ks, self.probs)]}


_SPEC_RE = re.compile(r"^\s*([a-z_-]+)\s*:\s*(.+?)\s*$", re.IGNORECASE)


def parse_distribution(spec) -> DegreeDistribution:
    """Build a distribution from a short string or a config mapping.

    Strings: ``poisson:1.5``, ``ys:6`` (shape), ``ys-mean:1.2``,
    ``file:path/to/table.txt``. Mappings: ``{kind: poisson, mean: 1.5}``,
    ``{kind: yule_simon, rho: 6}`` or ``{kind: yule_simon, mean: 1.2}``,
    ``{kind: explicit, table: [[k, p], ...]}`` or ``{kind: explicit, path: ...}``.
    """
    if isinstance(spec, DegreeDistribution):
        return spec
    if isinstance(spec, dict):
        kind = str(spec.get("kind", "")).lower().replace("-", "_")
        if kind == "poisson":
            return Poisson(float(spec["mean"]))
        if kind in ("yule_simon", "ys"):
            if "rho" in spec:
                return YuleSimon(float(spec["rho"]))
            return YuleSimon.from_mean(float(spec["mean"]))
        if kind == "explicit":
            if "path" in spec:
                return Explicit.from_file(spec["path"])
            return Explicit.from_pairs(spec["table"])
        raise ValueError(f"unknown distribution kind {spec.get('kind')!r}")
    m = _SPEC_RE.match(str(spec))
    if not m:
        raise ValueError(f"cannot parse distribution {spec!r}; try 'poisson:1.5' or 'ys-mean:1.2'")
    kind, arg = m.group(1).lower().replace("_", "-"), m.group(2)
    if kind == "poisson":
        return Poisson(float(arg))
    if kind in ("ys", "yule-simon"):
        return YuleSimon(float(arg))
    if kind in ("ys-mean", "yule-simon-mean"):
        return YuleSimon.from_mean(float(arg))
    if kind == "file":
        return Explicit.from_file(arg)
    raise ValueError(f"unknown distribution kind {kind!r}")
