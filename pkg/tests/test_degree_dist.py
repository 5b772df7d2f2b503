import math

import numpy as np
import pytest
from scipy import stats

from twotype.core import InfeasibleParametersError, RngStream
from twotype.degree_dist import (
    Explicit,
    Poisson,
    YuleSimon,
    parse_distribution,
    yule_simon_pmf,
    yule_simon_shape_from_mean,
)


def chi_square_pvalue(samples, pmf, k_max):
    ks = np.arange(0, k_max + 1)
    observed = np.bincount(np.minimum(samples, k_max + 1), minlength=k_max + 2)
    expected_p = np.append(pmf(ks), 0.0)
    expected_p[-1] = 1.0 - expected_p[:-1].sum()
    expected = expected_p * samples.size
    keep = expected > 5
    obs, exp = observed[keep], expected[keep]
    exp = exp * obs.sum() / exp.sum()
    return stats.chisquare(obs, exp).pvalue


def test_poisson_moments_and_sampling():
    d = Poisson(1.5)
    assert d.mean() == 1.5 and d.size_biased_mean() == 1.5
    x = d.sample(RngStream(1), 200_000)
    assert chi_square_pvalue(x, d.pmf, 12) > 1e-3


def test_yule_simon_pmf_matches_closed_form():
    # rho = 1: P(k) = 1 / (k (k + 1)); rho = 2: 4 / (k (k + 1) (k + 2))
    k = np.arange(1, 2001)
    np.testing.assert_allclose(yule_simon_pmf(1.0, k), 1.0 / (k * (k + 1.0)), rtol=1e-13)
    np.testing.assert_allclose(yule_simon_pmf(2.0, k), 4.0 / (k * (k + 1.0) * (k + 2.0)), rtol=1e-13)


def test_yule_simon_against_scipy():
    k = np.arange(1, 50)
    np.testing.assert_allclose(yule_simon_pmf(3.7, k), stats.yulesimon.pmf(k, 3.7), rtol=1e-10)


def test_yule_simon_from_mean():
    assert yule_simon_shape_from_mean(1.2) == pytest.approx(6.0)
    d = YuleSimon.from_mean(1.2)
    assert d.mean() == pytest.approx(1.2)
    assert d.size_biased_mean() == pytest.approx(0.5)
    with pytest.raises(InfeasibleParametersError):
        yule_simon_shape_from_mean(1.0)
    assert YuleSimon.from_mean(2.5).size_biased_mean() == math.inf  # rho = 5/3 < 2


def test_yule_simon_sampling():
    d = YuleSimon(6.0)
    x = d.sample(RngStream(2), 200_000)
    assert x.min() >= 1
    assert x.mean() == pytest.approx(1.2, rel=0.01)
    pmf = lambda k: np.where(k >= 1, yule_simon_pmf(6.0, np.maximum(k, 1)), 0.0)  # noqa: E731
    assert chi_square_pvalue(x, pmf, 15) > 1e-3


def test_truncated_yule_simon_nu_grows():
    # Truncations of a rho < 2 law have finite but growing size-biased means.
    rho = 1.8
    nus = []
    for k_max in (10**2, 10**3, 10**4, 10**5):
        k = np.arange(1, k_max + 1)
        p = yule_simon_pmf(rho, k)
        nus.append(Explicit(k, p / p.sum()).size_biased_mean())
    assert all(b > a for a, b in zip(nus, nus[1:]))
    # Truncations of a rho > 2 law converge to 2 / (rho - 2).
    k = np.arange(1, 10**6 + 1)
    p = yule_simon_pmf(6.0, k)
    assert Explicit(k, p / p.sum()).size_biased_mean() == pytest.approx(YuleSimon(6.0).size_biased_mean(), rel=1e-4)


def test_explicit_validation_and_sampling(tmp_path):
    d = Explicit.from_pairs([(0, 0.2), (3, 0.5), (1, 0.3)])
    assert d.mean() == pytest.approx(1.8)
    assert d.size_biased_mean() == pytest.approx((0.3 + 4.5 - 1.8) / 1.8)
    assert d.pmf(3) == 0.5 and d.pmf(2) == 0.0
    x = d.sample(RngStream(3), 100_000)
    assert set(np.unique(x)) == {0, 1, 3}
    assert chi_square_pvalue(x, d.pmf, 3) > 1e-3
    with pytest.raises(ValueError, match="sum"):
        Explicit.from_pairs([(1, 0.5), (2, 0.4)])
    with pytest.raises(ValueError, match="duplicate"):
        Explicit.from_pairs([(1, 0.5), (1, 0.5)])
    path = tmp_path / "table.txt"
    path.write_text("# k p\n1 0.25\n2 0.75\n")
    assert Explicit.from_file(path).mean() == pytest.approx(1.75)


def test_parse_distribution():
    assert parse_distribution("poisson:1.5") == Poisson(1.5)
    assert parse_distribution("ys:6") == YuleSimon(6.0)
    assert parse_distribution("ys-mean:1.2").rho == pytest.approx(6.0)
    assert parse_distribution({"kind": "yule_simon", "mean": 1.2}).rho == pytest.approx(6.0)
    assert parse_distribution({"kind": "explicit", "table": [[1, 1.0]]}).mean() == 1.0
    with pytest.raises(ValueError):
        parse_distribution("gamma:2")


def test_sampling_is_deterministic():
    a = YuleSimon(3.0).sample(RngStream(9, 1), 1000)
    b = YuleSimon(3.0).sample(RngStream(9, 1), 1000)
    assert np.array_equal(a, b)
