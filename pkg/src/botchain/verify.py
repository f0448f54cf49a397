"""Executable correctness gates, shared by the CLI and the test suite.

Each check returns (ok, detail) and never prints; ``verify_suite`` wraps the
chosen battery with timing and exception capture and reports a machine
readable summary.  The quick level runs randomized spot checks in seconds;
the exhaustive level runs the full small-size censuses.
"""

from __future__ import annotations

import time

from .chainfast import erasure_chain_fast
from .diagnostics import DiagnosticsReport, chi_square_uniform
from .erasure import ErasureChain, bot_erase, erasure_chain
from .growth import apply_option, grow_chain, growth_options, preimages_oracle
from .rng import DEFAULT_MASTER, Seed, SplitMix64
from .sampling import count_labeled, enumerate_trees, preimage_census, sample_uniform
from .span import check_compatibility, reverse_time
from .tree import canonical_encoding, parse_tree

QUICK = "quick"
EXHAUSTIVE = "exhaustive"


def chains_equal(a: ErasureChain, b: ErasureChain) -> bool:
    return (
        a.size == b.size
        and a.steps == b.steps
        and a.erasure_time == b.erasure_time
        and a.leaf_erasure_time == b.leaf_erasure_time
    )


def run_censuses(n_lo: int = 2, n_hi: int = 6) -> dict[int, dict[str, int]]:
    return {n: preimage_census(n) for n in range(n_lo, n_hi + 1)}


def census_verdict(censuses: dict[int, dict[str, int]]) -> tuple[bool, str]:
    """Every smaller tree must be hit exactly 4n-2 times, covering all of them."""
    parts = []
    ok = True
    for n, census in sorted(censuses.items()):
        want = 4 * n - 2
        images = count_labeled(n - 1)
        good = (
            len(census) == images
            and all(c == want for c in census.values())
            and sum(census.values()) == count_labeled(n)
        )
        ok = ok and good
        parts.append(f"n={n}: {len(census)} images x {want} {'ok' if good else 'BAD'}")
    return ok, "; ".join(parts)


def propagation_verdict(census: dict[str, int], n: int) -> tuple[bool, str]:
    """Uniform in must give uniform out: all image counts equal and complete."""
    values = set(census.values())
    ok = len(values) == 1 and len(census) == count_labeled(n - 1)
    return ok, f"n={n}->{n - 1}: counts {sorted(values)} over {len(census)} trees"


def growth_inverse_check(max_size: int = 5) -> tuple[bool, str]:
    """Grafting options must match the blind oracle exactly and each must
    erase straight back with the label it inserted."""
    checked = 0
    for s in range(max_size + 1):
        want_count = 4 * (s + 1) - 2
        for t in enumerate_trees(s):
            base = canonical_encoding(t)
            opts = growth_options(t)
            encodings = set()
            for opt in opts:
                child = apply_option(t, opt)
                back, step = bot_erase(child)
                if canonical_encoding(back) != base or step.bot_label != opt.j:
                    return False, f"option {opt} does not invert erasure on {base}"
                encodings.add(canonical_encoding(child))
            if len(opts) != want_count or len(encodings) != want_count:
                return False, f"{base}: {len(opts)} options, {len(encodings)} distinct"
            oracle = {canonical_encoding(c) for c in preimages_oracle(t, s + 1)}
            if encodings != oracle:
                return False, f"{base}: options differ from oracle"
            checked += 1
    return True, f"{checked} trees through size {max_size}, all 4n-2 options exact"


def compat_exhaustive_check(n_hi: int = 6) -> tuple[bool, str]:
    checked = 0
    for n in range(2, n_hi + 1):
        for t in enumerate_trees(n):
            chain = erasure_chain_fast(t)
            for ell in range(2, n + 1):
                bad = check_compatibility(t, ell, chain)
                if bad is not None:
                    return False, f"counterexample {bad} on {canonical_encoding(t)}"
                checked += 1
    return True, f"{checked} (tree, ell) pairs through n={n_hi}"


def compat_random_check(
    instances: int, n_lo: int, n_hi: int, seed: Seed
) -> tuple[bool, str]:
    driver = SplitMix64(seed)
    for i in range(instances):
        n = n_lo + driver.below(n_hi - n_lo + 1)
        t = sample_uniform(n, Seed(seed.master, seed.stream + 1 + i))
        ell = 2 + driver.below(n - 1)
        bad = check_compatibility(t, ell, erasure_chain_fast(t))
        if bad is not None:
            return False, f"instance {i} (n={n}, ell={ell}): {bad}"
    return True, f"{instances} random instances, n in [{n_lo}, {n_hi}]"


def theta_coherence_check(trees: int, n_hi: int, seed: Seed) -> tuple[bool, str]:
    """Reverse times read through any span level must agree rationally."""
    driver = SplitMix64(seed)
    for i in range(trees):
        n = 2 + driver.below(n_hi - 1)
        t = sample_uniform(n, Seed(seed.master, seed.stream + 1 + i))
        chain = erasure_chain_fast(t)
        full = reverse_time(t, n + 1, chain).theta
        for ell in range(2, n + 2):
            table = reverse_time(t, ell, chain).theta
            for b, theta in table.items():
                if theta != full[b]:
                    return False, f"tree {i} ell={ell} node {b}: {theta} != {full[b]}"
            values = sorted(table.values())
            if len(set(values)) != len(values) or values[0] <= 0 or values[-1] >= 1:
                return False, f"tree {i} ell={ell}: bad theta range"
    return True, f"{trees} trees, every level, exact rational agreement"


def fastpath_random_check(trees: int, n_lo: int, n_hi: int, seed: Seed) -> tuple[bool, str]:
    driver = SplitMix64(seed)
    for i in range(trees):
        n = n_lo + driver.below(n_hi - n_lo + 1)
        t = sample_uniform(n, Seed(seed.master, seed.stream + 1 + i))
        if not chains_equal(erasure_chain(t), erasure_chain_fast(t)):
            return False, f"instance {i} (n={n}) diverges"
    return True, f"{trees} random trees, n in [{n_lo}, {n_hi}], step-for-step equal"


def fastpath_enumerated_check(n_hi: int = 5) -> tuple[bool, str]:
    checked = 0
    for n in range(n_hi + 1):
        for t in enumerate_trees(n):
            if not chains_equal(erasure_chain(t), erasure_chain_fast(t)):
                return False, f"diverges on {canonical_encoding(t)}"
            checked += 1
    return True, f"all {checked} trees through n={n_hi}"


def roundtrip_check(n_hi: int = 5) -> tuple[bool, str]:
    checked = 0
    for n in range(n_hi + 1):
        for t in enumerate_trees(n):
            enc = canonical_encoding(t)
            if canonical_encoding(parse_tree(enc)) != enc:
                return False, f"round-trip breaks on {enc}"
            checked += 1
    return True, f"{checked} encodings through n={n_hi}"


def sampler_chi2_check(n: int, samples: int, seed: Seed) -> DiagnosticsReport:
    index = {canonical_encoding(t): k for k, t in enumerate(enumerate_trees(n))}
    counts = [0] * len(index)
    for i in range(samples):
        t = sample_uniform(n, Seed(seed.master, seed.stream + i))
        counts[index[canonical_encoding(t)]] += 1
    report = chi_square_uniform(counts)
    report.details.update({"n": n, "source": "sample_uniform"})
    return report


def grow_chi2_check(n: int, chains: int, seed: Seed) -> DiagnosticsReport:
    index = {canonical_encoding(t): k for k, t in enumerate(enumerate_trees(n))}
    counts = [0] * len(index)
    for i in range(chains):
        t = grow_chain(n, Seed(seed.master, seed.stream + i))
        counts[index[canonical_encoding(t)]] += 1
    report = chi_square_uniform(counts)
    report.details.update({"n": n, "source": "grow_chain"})
    return report


def _chi2_as_check(report: DiagnosticsReport) -> tuple[bool, str]:
    return report.passed, (
        f"chi2={report.statistic:.2f} over {report.details['cells']} cells, "
        f"p={report.details['p_value']:.4g}"
    )


def verify_suite(level: str = QUICK) -> tuple[int, dict]:
    """Run the gate battery; exit status 0 only if every check passes."""
    if level not in (QUICK, EXHAUSTIVE):
        raise ValueError(f"unknown level {level!r}")
    base = Seed(DEFAULT_MASTER, 10_000)
    checks: list[dict] = []

    def run(name, fn):
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:
            ok, detail = False, f"error: {exc!r}"
        checks.append(
            {
                "name": name,
                "ok": ok,
                "detail": detail,
                "elapsed_s": round(time.perf_counter() - start, 3),
            }
        )

    if level == QUICK:
        run("roundtrip", lambda: roundtrip_check(3))
        run("census-small", lambda: census_verdict(run_censuses(2, 3)))
        run("growth-inverse", lambda: growth_inverse_check(2))
        run("fastpath-enumerated", lambda: fastpath_enumerated_check(3))
        run(
            "fastpath-random",
            lambda: fastpath_random_check(100, 2, 96, Seed(base.master, 10_100)),
        )
        run(
            "compat-random",
            lambda: compat_random_check(300, 2, 96, Seed(base.master, 10_500)),
        )
        run(
            "theta-coherence",
            lambda: theta_coherence_check(40, 48, Seed(base.master, 10_900)),
        )
        run(
            "sampler-chi2",
            lambda: _chi2_as_check(sampler_chi2_check(3, 24_000, Seed(base.master, 11_000))),
        )
        run(
            "grow-chi2",
            lambda: _chi2_as_check(grow_chi2_check(3, 24_000, Seed(base.master, 61_000))),
        )
    else:
        censuses = {}

        def census_all():
            censuses.update(run_censuses(2, 6))
            return census_verdict(censuses)

        run("census-full", census_all)
        run("uniformity-propagation", lambda: propagation_verdict(censuses[5], 5))
        run("roundtrip", lambda: roundtrip_check(5))
        run("growth-inverse", lambda: growth_inverse_check(5))
        run("fastpath-enumerated", lambda: fastpath_enumerated_check(5))
        run("compat-exhaustive", lambda: compat_exhaustive_check(6))

    report = {
        "level": level,
        "ok": all(c["ok"] for c in checks),
        "checks": checks,
    }
    return (0 if report["ok"] else 1, report)
