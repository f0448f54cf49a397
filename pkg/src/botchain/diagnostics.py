"""Statistical gates: chi-square uniformity, two-sample KS, height scaling.

The chi-square tail is computed from the regularized incomplete gamma
function: the lower series expansion when the statistic is small relative to
the degrees of freedom, the Lentz continued fraction for the upper tail
otherwise.  Both converge to near machine precision; the test suite pins the
values against direct numerical integration of the density.

A uniformity check passes when the p-value is at least 1e-3.  It refuses to
run on fewer than 2 cells or under 20 expected counts per cell rather than
produce an untrustworthy verdict.  The KS gate compares the statistic against
c(alpha) * sqrt((m + n) / (m n)) at alpha = 0.01, c = 1.628.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .chainfast import erasure_chain_fast
from .erasure import ErasureChain
from .rng import Seed
from .sampling import sample_uniform
from .span import reverse_time
from .tree import LabeledBinaryTree, depths, height

PASS = "pass"
FAIL = "fail"

P_VALUE_FLOOR = 1e-3
KS_ALPHA = 0.01
KS_COEFF = 1.628
MIN_EXPECTED_PER_CELL = 20.0
MIN_KS_POINTS = 100


@dataclass
class DiagnosticsReport:
    test_name: str
    statistic: float
    threshold: float
    n_samples: int
    verdict: str
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


@dataclass
class HeightSample:
    values: list[float]


# ----------------------------------------------------------------------
# chi-square machinery


def _lower_gamma_series(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) for x < a + 1."""
    term = 1.0 / a
    total = term
    k = a
    for _ in range(10_000):
        k += 1.0
        term *= x / k
        total += term
        if abs(term) < abs(total) * 1e-16:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))

def _upper_gamma_cf(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) for x >= a + 1, by the
    modified Lentz continued fraction."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def chi_square_sf(x: float, dof: int) -> float:
    """Upper tail probability of the chi-square distribution."""
    if dof < 1:
        raise ValueError("degrees of freedom must be positive")
    if x <= 0.0:
        return 1.0
    a = 0.5 * dof
    half = 0.5 * x
    if half < a + 1.0:
        return max(0.0, 1.0 - _lower_gamma_series(a, half))
    return _upper_gamma_cf(a, half)


def chi_square_uniform(counts: list[int]) -> DiagnosticsReport:
    """Pearson test of the hypothesis that the counts are uniform."""
    k = len(counts)
    if k < 2:
        raise ValueError("need at least 2 cells")
    total = sum(counts)
    expected = total / k
    if expected < MIN_EXPECTED_PER_CELL:
        raise ValueError(
            f"cells too thin: expected {expected:.2f} per cell, need >= {MIN_EXPECTED_PER_CELL}"
        )
    stat = sum((c - expected) ** 2 for c in counts) / expected
    p = chi_square_sf(stat, k - 1)
    return DiagnosticsReport(
        test_name="chi_square_uniform",
        statistic=stat,
        threshold=P_VALUE_FLOOR,
        n_samples=total,
        verdict=PASS if p >= P_VALUE_FLOOR else FAIL,
        details={"p_value": p, "dof": k - 1, "cells": k, "expected_per_cell": expected},
    )


# ----------------------------------------------------------------------
# Kolmogorov-Smirnov


def ks_two_sample(a: HeightSample, b: HeightSample) -> DiagnosticsReport:
    xs, ys = sorted(a.values), sorted(b.values)
    m, n = len(xs), len(ys)
    if m < MIN_KS_POINTS or n < MIN_KS_POINTS:
        raise ValueError(f"need >= {MIN_KS_POINTS} points per sample, got {m} and {n}")
    d = 0.0
    i = j = 0
    while i < m and j < n:
        v = xs[i] if xs[i] <= ys[j] else ys[j]
        while i < m and xs[i] <= v:
            i += 1
        while j < n and ys[j] <= v:
            j += 1
        gap = abs(i / m - j / n)
        if gap > d:
            d = gap
    threshold = KS_COEFF * math.sqrt((m + n) / (m * n))
    return DiagnosticsReport(
        test_name="ks_two_sample",
        statistic=d,
        threshold=threshold,
        n_samples=m + n,
        verdict=PASS if d <= threshold else FAIL,
        details={"m": m, "n": n, "alpha": KS_ALPHA, "coefficient": KS_COEFF},
    )


# ----------------------------------------------------------------------
# height scaling along the chain


def _height_at_size(t: LabeledBinaryTree, chain: ErasureChain, m: int) -> int:
    """Height of the chain's tree once it has shrunk to size m.

    Cuts never move surviving nodes, so the intermediate tree is the induced
    subtree on nodes whose removal step exceeds size - m, at original depths.
    """
    cutoff = chain.size - m
    parent = t.parent
    et = chain.erasure_time
    dep = depths(t)
    top = t.top
    best = 0
    for v in t.node_ids():
        # A node vanishes when its parent is cut; the root and the node
        # under it are never anyone's cherry child and survive throughout.
        if v == t.root or v == top or et[parent[v]] > cutoff:
            if dep[v] > best:
                best = dep[v]
    return best


def scaling_proxy(
    n: int,
    t: float,
    trials: int,
    seed: Seed,
    rescale_reference: bool = True,
) -> DiagnosticsReport:
    """Compare heights of partially erased size-n trees against fresh trees of
    the reduced size, both normalized by sqrt(n).

    Sample A takes a fresh uniform tree of size n, erases it down to
    m = floor(n t), and records height / sqrt(n).  Sample B records
    sqrt(t) * height / sqrt(m) on fresh uniform size-m trees.  Setting
    ``rescale_reference`` to False drops the sqrt(t) factor; that variant is
    expected to fail and serves as the negative control.
    """
    if not (0.0 < t <= 1.0):
        raise ValueError("t must be in (0, 1]")
    m = int(n * t)
    if m < 64:
        raise ValueError(f"floor(n * t) = {m} is too small, need >= 64")
    sqrt_n = math.sqrt(n)
    factor = math.sqrt(t) if rescale_reference else 1.0

    a_vals = []
    for i in range(trials):
        tree = sample_uniform(n, Seed(seed.master, seed.stream + i))
        chain = erasure_chain_fast(tree)
        a_vals.append(_height_at_size(tree, chain, m) / sqrt_n)
    b_vals = []
    sqrt_m = math.sqrt(m)
    for i in range(trials):
        tree = sample_uniform(m, Seed(seed.master, seed.stream + trials + i))
        b_vals.append(factor * height(tree) / sqrt_m)

    report = ks_two_sample(HeightSample(a_vals), HeightSample(b_vals))
    report.test_name = "scaling_proxy"
    report.details.update(
        {"n": n, "t": t, "m": m, "trials": trials, "rescaled": rescale_reference}
    )
    return report


# ----------------------------------------------------------------------
# reverse-time gaps


def theta_gap_report(t: LabeledBinaryTree, ells: list[int]) -> DiagnosticsReport:
    """Largest gap left in [0, 1] by the reverse times of each span level.

    Denser spans should fill the interval better; the verdict only requires
    the final level to do no worse than the first, since per-tree sequences
    wobble.  The full gap sequence is in the details for plotting.
    """
    if not ells:
        raise ValueError("need at least one level")
    ells = sorted(ells)
    chain = erasure_chain_fast(t)
    gaps = []
    for ell in ells:
        table = reverse_time(t, ell, chain)
        values = sorted(table.theta.values())
        worst = values[0]  # gap from 0 to the first point
        for x, y in zip(values, values[1:]):
            worst = max(worst, y - x)
        worst = max(worst, 1 - values[-1])
        gaps.append(float(worst))
    return DiagnosticsReport(
        test_name="theta_gap",
        statistic=gaps[-1],
        threshold=gaps[0],
        n_samples=t.size,
        verdict=PASS if gaps[-1] <= gaps[0] else FAIL,
        details={"ells": ells, "max_gaps": gaps},
    )
