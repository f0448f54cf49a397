"""Statistical gates, pinned against closed forms and direct integration."""

import math

import pytest
from scipy import integrate

from botchain import (
    HeightSample,
    Seed,
    chi_square_sf,
    chi_square_uniform,
    erasure_chain,
    height,
    ks_two_sample,
    parse_tree,
    sample_uniform,
    scaling_proxy,
    theta_gap_report,
)
from botchain.diagnostics import _height_at_size


def _sf_by_quadrature(x, dof):
    def density(u):
        return math.exp((dof / 2 - 1) * math.log(u) - u / 2 - math.lgamma(dof / 2) - (dof / 2) * math.log(2))

    # the density lives within ~40 sigma of dof; beyond that the tail is
    # far below the comparison tolerance, so a finite interval suffices
    hi = max(2.0 * x, dof + 60.0 * math.sqrt(2.0 * dof), 50.0)
    anchors = [p for p in (dof - 2.0, float(dof), dof + 2.0) if x < p < hi]
    val, _ = integrate.quad(
        density, x, hi, points=anchors or None, epsabs=1e-13, epsrel=1e-13, limit=800
    )
    return val


@pytest.mark.parametrize("dof", [1, 2, 3, 7, 119, 1679])
def test_sf_matches_quadrature(dof):
    for scale in (0.5, 0.9, 1.0, 1.1, 1.5):
        x = dof * scale
        assert chi_square_sf(x, dof) == pytest.approx(_sf_by_quadrature(x, dof), abs=1e-9)


def test_sf_closed_forms():
    # dof 1 is a folded normal, dof 2 an exponential
    for x in (0.3, 1.0, 3.841458820694124, 9.0):
        assert chi_square_sf(x, 1) == pytest.approx(math.erfc(math.sqrt(x / 2)), rel=1e-12)
        assert chi_square_sf(x, 2) == pytest.approx(math.exp(-x / 2), rel=1e-12)
    assert chi_square_sf(3.841458820694124, 1) == pytest.approx(0.05, rel=1e-9)


def test_sf_edges():
    assert chi_square_sf(0.0, 5) == 1.0
    assert chi_square_sf(-3.0, 5) == 1.0
    with pytest.raises(ValueError, match="degrees of freedom"):
        chi_square_sf(1.0, 0)


def test_chi_square_uniform_perfect():
    report = chi_square_uniform([25, 25, 25, 25])
    assert report.passed
    assert report.statistic == 0.0
    assert report.details["p_value"] == 1.0
    assert report.details["dof"] == 3
    assert report.n_samples == 100


def test_chi_square_uniform_lopsided():
    report = chi_square_uniform([100, 0])
    assert not report.passed
    assert report.statistic == 100.0
    assert report.details["p_value"] < 1e-20


def test_chi_square_uniform_permutation_invariant():
    a = chi_square_uniform([30, 20, 28, 22])
    b = chi_square_uniform([22, 28, 20, 30])
    assert a.statistic == b.statistic
    assert a.details["p_value"] == b.details["p_value"]


def test_chi_square_uniform_preconditions():
    with pytest.raises(ValueError, match="cells too thin"):
        chi_square_uniform([10, 10])
    with pytest.raises(ValueError, match="at least 2 cells"):
        chi_square_uniform([50])


def test_ks_identical_samples():
    vals = [i / 7.0 for i in range(150)]
    report = ks_two_sample(HeightSample(vals), HeightSample(list(vals)))
    assert report.statistic == 0.0
    assert report.passed


def test_ks_disjoint_samples():
    a = HeightSample([float(i) for i in range(150)])
    b = HeightSample([float(i) + 1000.0 for i in range(150)])
    report = ks_two_sample(a, b)
    assert report.statistic == 1.0
    assert not report.passed


def test_ks_symmetry_and_threshold():
    a = HeightSample([math.sin(i) for i in range(200)])
    b = HeightSample([math.cos(i) for i in range(300)])
    r1, r2 = ks_two_sample(a, b), ks_two_sample(b, a)
    assert r1.statistic == r2.statistic
    assert r1.threshold == pytest.approx(1.628 * math.sqrt(500 / (200 * 300)))


def test_ks_same_law_passes():
    a = HeightSample([i / 1000.0 for i in range(1000)])
    b = HeightSample([(i + 0.5) / 400.0 for i in range(400)])
    assert ks_two_sample(a, b).passed


def test_ks_minimum_points():
    short = HeightSample([0.0] * 99)
    ok = HeightSample([0.0] * 150)
    with pytest.raises(ValueError, match="points per sample"):
        ks_two_sample(short, ok)


def test_partial_heights_match_snapshots():
    t = sample_uniform(40, Seed(0xD1A6, 3))
    chain = erasure_chain(t, keep_snapshots=True)
    for m in range(40, -1, -1):
        snap = parse_tree(chain.trees[40 - m])
        assert _height_at_size(t, chain, m) == height(snap)


def test_scaling_proxy_positive():
    report = scaling_proxy(256, 0.5, trials=120, seed=Seed(0x5CA1E, 0))
    assert report.passed
    assert report.details["m"] == 128
    assert report.details["rescaled"] is True
    assert report.test_name == "scaling_proxy"


def test_scaling_proxy_full_time():
    # t = 1 erases nothing, so both samples share one law by construction
    report = scaling_proxy(64, 1.0, trials=110, seed=Seed(0x5CA1E, 1))
    assert report.passed


def test_scaling_proxy_negative_control():
    report = scaling_proxy(256, 0.25, trials=120, seed=Seed(0x5CA1E, 2), rescale_reference=False)
    assert not report.passed


def test_scaling_proxy_preconditions():
    with pytest.raises(ValueError, match=r"t must be in \(0, 1\]"):
        scaling_proxy(256, 0.0, trials=120, seed=Seed(1))
    with pytest.raises(ValueError, match=r"t must be in \(0, 1\]"):
        scaling_proxy(256, 1.5, trials=120, seed=Seed(1))
    with pytest.raises(ValueError, match="too small"):
        scaling_proxy(100, 0.25, trials=120, seed=Seed(1))


def test_theta_gaps_worked_example(w):
    report = theta_gap_report(w, [2])
    assert report.details["max_gaps"] == [pytest.approx(2 / 3)]


def test_theta_gaps_deep_fixture(recon):
    report = theta_gap_report(recon, [7, 2])
    assert report.details["ells"] == [2, 7]
    assert report.details["max_gaps"] == [pytest.approx(4 / 7), pytest.approx(1 / 7)]
    assert report.passed
    assert report.statistic == pytest.approx(1 / 7)
    assert report.threshold == pytest.approx(4 / 7)


def test_theta_gaps_full_level_value(recon):
    n = recon.size
    report = theta_gap_report(recon, [n + 1])
    assert report.details["max_gaps"] == [pytest.approx(1 / (n + 1))]
    assert report.passed


def test_theta_gaps_need_levels(w):
    with pytest.raises(ValueError, match="at least one level"):
        theta_gap_report(w, [])
