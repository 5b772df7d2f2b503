"""Closed-form quantities for the three two-type models.

Critical parameters are largest eigenvalues of 2x2 mean-offspring matrices;
every closed form here has a matrix counterpart (``er_matrix``,
``cm_matrix``) that can be checked with :func:`eigenvalue_oracle_2x2`, which
goes through the characteristic polynomial instead.

Infinite size-biased means are ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

from .core import InfeasibleParametersError, VertexType

# Radicands more negative than this (relative to the squared scale) are corrupt input.
_RADICAND_TOL = 1e-12


def _check_prob(name, value, open_interval=False):
    if not (isinstance(value, (int, float, np.floating, np.integer)) and math.isfinite(value)):
        raise ValueError(f"{name} must be a finite number, got {value!r}")
    if open_interval and not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {value}")
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class ErParams:
    """Two-type Erdos-Renyi parameters.

    Edge probability is ``min(alpha_i/n, 1)`` inside type i and
    ``min(beta/n, 1)`` across types. ``beta = 0`` is accepted as the
    decoupled limit.
    """

    p1: float
    alpha1: float
    alpha2: float
    beta: float

    def __post_init__(self):
        _check_prob("p1", self.p1)
        for name in ("alpha1", "alpha2", "beta"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")

    @property
    def p2(self) -> float:
        return 1.0 - self.p1

    @classmethod
    def from_means(cls, p1: float, mu1: float, mu2: float, beta: float) -> "ErParams":
        """Resolve the own-type rates that give mean degrees ``mu1``, ``mu2`` at this ``beta``."""
        a1 = er_alpha_from_mean(p1, mu1, beta, VertexType.TYPE1)
        a2 = er_alpha_from_mean(p1, mu2, beta, VertexType.TYPE2)
        return cls(p1, a1, a2, beta)


@dataclass(frozen=True)
class CmMixParams:
    """Label probabilities and size-biased means of the two-type configuration model."""

    xi1: float
    xi2: float
    nu1: float
    nu2: float

    def __post_init__(self):
        _check_prob("xi1", self.xi1)
        _check_prob("xi2", self.xi2)
        for name in ("nu1", "nu2"):
            value = getattr(self, name)
            if math.isnan(value) or value < 0:
                raise ValueError(f"{name} must be >= 0 (inf allowed), got {value}")


@dataclass(frozen=True)
class PaParams:
    p1: float
    theta1: float
    theta2: float

    def __post_init__(self):
        _check_prob("p1", self.p1, open_interval=True)
        _check_prob("theta1", self.theta1)
        _check_prob("theta2", self.theta2)

    @property
    def p2(self) -> float:
        return 1.0 - self.p1

    def p(self, i: VertexType) -> float:
        return self.p1 if VertexType.parse(i) is VertexType.TYPE1 else self.p2

    def theta(self, i: VertexType) -> float:
        return self.theta1 if VertexType.parse(i) is VertexType.TYPE1 else self.theta2


_STIRLING_MIN = 30.0


def _stirling_tail(x):
    # log Gamma(x) minus its leading terms; truncation error < 1e-16 for x >= 30.
    x2 = x * x
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * x2)) / x2) / x2) / x


def log_gamma_ratio(k, s: float):
    """``log Gamma(k + s) - log Gamma(k)`` for ``k >= 1``, ``s >= 0``; scalar or array ``k``.

    Plain ``gammaln`` differences lose about ``eps * k log k`` to cancellation;
    for ``k >= 30`` the Stirling series is differenced term by term instead,
    so the error stays at the size of the result.
    """
    k = np.asarray(k, dtype=np.float64)
    out = np.empty_like(k)
    big = k >= _STIRLING_MIN
    kb = k[big]
    out[big] = (kb - 0.5) * np.log1p(s / kb) + s * np.log(kb + s) - s + _stirling_tail(kb + s) - _stirling_tail(kb)
    ks = k[~big]
    out[~big] = gammaln(ks + s) - gammaln(ks)
    return out


def eigenvalue_oracle_2x2(m11: float, m12: float, m21: float, m22: float) -> float:
    """Largest root of ``x**2 - (m11 + m22) x + (m11 m22 - m12 m21)``.

    For nonnegative entries the discriminant equals
    ``(m11 - m22)**2 + 4 m12 m21``, which is evaluated in that form so the
    root never loses precision to cancellation.
    """
    if min(m11, m12, m21, m22) < 0:
        raise ValueError("matrix entries must be nonnegative")
    disc = (m11 - m22) ** 2 + 4.0 * m12 * m21
    return 0.5 * ((m11 + m22) + math.sqrt(disc))


def _largest_root(half_trace: float, radicand: float, scale: float) -> float:
    if radicand < 0:
        if radicand < -_RADICAND_TOL * max(scale, 1.0) ** 2:
            raise ValueError(f"negative radicand {radicand!r}: corrupted parameters")
        radicand = 0.0
    return half_trace + math.sqrt(radicand)


# -- Erdos-Renyi ---------------------------------------------------------------


def er_mean_degrees(p: ErParams) -> tuple[float, float]:
    mu1 = p.alpha1 * p.p1 + p.beta * p.p2
    mu2 = p.alpha2 * p.p2 + p.beta * p.p1
    return mu1, mu2


def er_matrix(p: ErParams) -> np.ndarray:
    """Expected number of type-k neighbours of a type-i vertex, ``M[i-1, k-1]``."""
    return np.array([[p.alpha1 * p.p1, p.beta * p.p2], [p.beta * p.p1, p.alpha2 * p.p2]])


def er_lambda_c(p: ErParams) -> float:
    m11, m22 = p.alpha1 * p.p1, p.alpha2 * p.p2
    # half^2 + p1 p2 (beta^2 - alpha1 alpha2), regrouped so no terms cancel
    radicand = ((m11 - m22) / 2.0) ** 2 + p.beta**2 * p.p1 * p.p2
    return _largest_root((m11 + m22) / 2.0, radicand, max(m11, m22, p.beta))


def er_max_beta(p1: float, mu1: float, mu2: float) -> float:
    """Largest cross rate for which both own-type rates stay nonnegative."""
    p2 = 1.0 - p1
    b1 = mu1 / p2 if p2 > 0 else math.inf
    b2 = mu2 / p1 if p1 > 0 else math.inf
    return min(b1, b2)


def er_lambda_c_from_means(p1: float, mu1: float, mu2: float, beta: float) -> float:
    """Critical parameter at fixed per-type mean degrees, as a function of ``beta``."""
    _check_prob("p1", p1)
    if mu1 < 0 or mu2 < 0 or beta < 0:
        raise ValueError("means and beta must be nonnegative")
    p2 = 1.0 - p1
    # Small relative slack so grids ending exactly at the bound are admitted.
    if p2 > 0 and beta * p2 > mu1 * (1 + 1e-12):
        raise InfeasibleParametersError(
            f"beta={beta} exceeds mu1/p2={mu1 / p2} (alpha1 would be negative)"
        )
    if p1 > 0 and beta * p1 > mu2 * (1 + 1e-12):
        raise InfeasibleParametersError(
            f"beta={beta} exceeds mu2/p1={mu2 / p1} (alpha2 would be negative)"
        )
    d = mu1 - mu2
    radicand = d * d + beta * beta + 2.0 * beta * d * (p1 - p2)
    return 0.5 * (mu1 + mu2 - beta + math.sqrt(max(radicand, 0.0)))


def er_alpha_from_mean(p1: float, mu: float, beta: float, which: VertexType) -> float:
    """Own-type rate giving mean degree ``mu`` to type ``which`` at cross rate ``beta``."""
    _check_prob("p1", p1)
    which = VertexType.parse(which)
    p_own = p1 if which is VertexType.TYPE1 else 1.0 - p1
    p_other = 1.0 - p_own
    if p_own <= 0:
        raise InfeasibleParametersError(f"type {int(which)} has probability 0; alpha undefined")
    cross = beta * p_other
    if cross > mu * (1 + 1e-12):
        bmax = mu / p_other
        raise InfeasibleParametersError(
            f"mu{int(which)}={mu} < beta*p{int(which.complement())}={cross}; "
            f"maximum admissible beta is {bmax}"
        )
    return max(mu - cross, 0.0) / p_own


# -- configuration model ---------------------------------------------------------


def cm_matrix(m: CmMixParams) -> np.ndarray:
    return np.array(
        [
            [m.xi1 * m.nu1, (1 - m.xi1) * m.nu1],
            [(1 - m.xi2) * m.nu2, m.xi2 * m.nu2],
        ]
    )


def cm_lambda_c(m: CmMixParams) -> float:
    if math.isinf(m.nu1) or math.isinf(m.nu2):
        return math.inf
    if m.nu1 == m.nu2:
        # Both rows sum to nu, so nu is the Perron root; skip the rounding of the general form.
        return float(m.nu1)
    m11, m22 = m.xi1 * m.nu1, m.xi2 * m.nu2
    # half^2 + nu1 nu2 (1 - xi1 - xi2), regrouped so no terms cancel
    radicand = ((m11 - m22) / 2.0) ** 2 + (1.0 - m.xi1) * (1.0 - m.xi2) * m.nu1 * m.nu2
    return _largest_root((m11 + m22) / 2.0, radicand, max(m.nu1, m.nu2))


def cm_feasible_xi1(p1: float, mu1: float, mu2: float) -> tuple[float, float]:
    """Interval of ``xi1`` for which the balance condition has a solution ``xi2`` in [0, 1]."""
    p2 = 1.0 - p1
    lo = 1.0 - p2 * mu2 / (p1 * mu1)
    return max(0.0, lo), 1.0


def cm_balance_xi2(p1: float, mu1: float, xi1: float, mu2: float) -> float:
    """``xi2`` making the expected numbers of cross-labelled half-edges equal."""
    _check_prob("p1", p1, open_interval=True)
    _check_prob("xi1", xi1)
    if mu1 <= 0 or mu2 <= 0:
        raise ValueError("mean degrees must be positive")
    p2 = 1.0 - p1
    xi2 = 1.0 - p1 * mu1 * (1.0 - xi1) / (p2 * mu2)
    if xi2 < -1e-12:
        lo, hi = cm_feasible_xi1(p1, mu1, mu2)
        raise InfeasibleParametersError(
            f"balance needs xi2={xi2:.6g} < 0; feasible xi1 interval is [{lo:.6g}, {hi:.6g}]"
        )
    return min(max(xi2, 0.0), 1.0)


# -- preferential attachment --------------------------------------------------------


class PaRates(NamedTuple):
    a1: float
    a2: float
    b1: float
    b2: float

    def a(self, i) -> float:
        return self.a1 if VertexType.parse(i) is VertexType.TYPE1 else self.a2

    def b(self, i) -> float:
        return self.b1 if VertexType.parse(i) is VertexType.TYPE1 else self.b2

    @property
    def degenerate_types(self) -> tuple[VertexType, ...]:
        """Types that never receive attachments (``a_i == 0``)."""
        return tuple(t for t, a in zip(VertexType, (self.a1, self.a2)) if a == 0)


def pa_rates(p: PaParams) -> PaRates:
    """Attachment probabilities ``a_i`` and degree growth rates ``b_i = p_i + a_i``."""
    a1 = p.p1 * p.theta1 + p.p2 * (1.0 - p.theta2)
    a2 = p.p2 * p.theta2 + p.p1 * (1.0 - p.theta1)
    return PaRates(a1, a2, p.p1 + a1, p.p2 + a2)


class PaExponents(NamedTuple):
    tau1: float
    gamma1: float
    tau2: float
    gamma2: float


def pa_exponents(p: PaParams) -> PaExponents:
    """Degree exponents ``tau_i = 2 + p_i/a_i`` and CCDF exponents ``gamma_i = tau_i - 1``."""
    r = pa_rates(p)
    taus = []
    for p_i, a_i in ((p.p1, r.a1), (p.p2, r.a2)):
        taus.append(math.inf if a_i == 0 else 2.0 + p_i / a_i)
    return PaExponents(taus[0], taus[0] - 1.0, taus[1], taus[1] - 1.0)


def pa_degree_pmf(p: PaParams, type_: VertexType, k):
    """Limiting fraction of type-``type_`` vertices with degree ``k``.

    ``k`` may be an integer or an integer array. Evaluated as a difference of
    log-Gamma values so large ``k`` neither overflows nor underflows early.
    """
    r = pa_rates(p)
    a, b = r.a(type_), r.b(type_)
    if a <= 0:
        raise ValueError(f"type {int(VertexType.parse(type_))} receives no attachments (a_i = 0)")
    k_arr = np.asarray(k, dtype=np.float64)
    if np.any(k_arr < 1) or np.any(k_arr != np.floor(k_arr)):
        raise ValueError("k must be an integer >= 1")
    c = b / a
    log_r = math.log(b / (a + b)) + gammaln(c + 2.0) - log_gamma_ratio(k_arr, c + 1.0)
    out = np.exp(log_r)
    return float(out) if out.ndim == 0 else out


def pa_expected_cross_degrees(p: PaParams) -> np.ndarray:
    """Predicted mean number of type-j neighbours of a type-i vertex, ``N[i-1, j-1]``."""
    out = np.empty((2, 2))
    for i in VertexType:
        c = i.complement()
        p_i, p_c = p.p(i), p.p(c)
        out[i - 1, i - 1] = 2.0 * p.theta(i)
        out[i - 1, c - 1] = (p_i * (1.0 - p.theta(i)) + p_c * (1.0 - p.theta(c))) / p_i
    return out
