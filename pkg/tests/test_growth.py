"""Regrowth options, their inverse relation to erasure, and uniform growth."""

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from botchain import (
    GrowthOption,
    Seed,
    apply_option,
    bot_erase,
    canonical_encoding,
    count_labeled,
    enumerate_trees,
    grow_chain,
    grow_chain_log,
    grow_uniform,
    growth_options,
    minimal_tree,
    preimages_oracle,
    sample_uniform,
    validate,
)


def test_options_on_minimal_tree():
    opts = growth_options(minimal_tree())
    assert len(opts) == 2
    assert [(o.j, o.anchor_label, o.side) for o in opts] == [
        (2, 1, "left"),
        (2, 1, "right"),
    ]


def test_option_count_by_size():
    for n in range(5):
        t = sample_uniform(n, Seed(0x6A0, n))
        assert len(growth_options(t)) == 4 * (n + 1) - 2


def test_options_ordered_and_below_j(recon):
    opts = growth_options(recon)
    assert opts == sorted(opts, key=lambda o: (o.j, o.anchor_label, o.side == "right"))
    js = Counter(o.j for o in opts)
    assert js == {2: 2, **{j: 4 for j in range(3, recon.size + 3)}}
    for o in opts:
        assert o.anchor_label < o.j


def test_options_produce_distinct_valid_trees():
    for n in range(4):
        for t in enumerate_trees(n):
            seen = set()
            for o in growth_options(t):
                bigger = apply_option(t, o)
                assert bigger.size == n + 1
                assert validate(bigger) is None
                seen.add(canonical_encoding(bigger))
            assert len(seen) == 4 * (n + 1) - 2


def test_options_erase_back():
    for n in range(4):
        for t in enumerate_trees(n):
            want = canonical_encoding(t)
            for o in growth_options(t):
                back, step = bot_erase(apply_option(t, o))
                assert canonical_encoding(back) == want
                assert step.bot_label == o.j


def test_options_match_oracle():
    for n in range(4):
        for t in enumerate_trees(n):
            got = {canonical_encoding(apply_option(t, o)) for o in growth_options(t)}
            want = {canonical_encoding(u) for u in preimages_oracle(t, n + 1)}
            assert got == want


def test_deep_fixture_regrowth(recon):
    smaller, step = bot_erase(recon)
    assert step.bot_label == 7
    opts = [o for o in growth_options(smaller) if o.j == 7]
    assert sorted({o.anchor_label for o in opts}) == [1, 5]
    chosen = [o for o in opts if o.anchor_label == 5 and o.side == "right"]
    assert len(chosen) == 1
    assert canonical_encoding(apply_option(smaller, chosen[0])) == canonical_encoding(recon)


def test_one_step_propagation_is_exact():
    # applying every option to every size-1 tree covers size 2 exactly once
    tally = Counter()
    for t in enumerate_trees(1):
        for o in growth_options(t):
            tally[canonical_encoding(apply_option(t, o))] += 1
    assert len(tally) == count_labeled(2)
    assert set(tally.values()) == {1}


@settings(max_examples=40, deadline=None)
@given(n=st.integers(0, 30), stream=st.integers(0, 2**16), data=st.data())
def test_grow_then_erase_sampled(n, stream, data):
    t = sample_uniform(n, Seed(0x660, stream))
    opts = growth_options(t)
    o = opts[data.draw(st.integers(0, len(opts) - 1))]
    back, step = bot_erase(apply_option(t, o))
    assert canonical_encoding(back) == canonical_encoding(t)
    assert step.bot_label == o.j


def test_apply_option_stale(w):
    with pytest.raises(ValueError, match="stale growth option"):
        apply_option(w, GrowthOption(j=2, anchor=w.root, anchor_label=1, side="left"))
    with pytest.raises(ValueError, match="stale growth option"):
        apply_option(w, GrowthOption(j=2, anchor=w.leaf_of_label(3), anchor_label=3, side="left"))


def test_grow_uniform_single_step(w):
    out = grow_uniform(w, Seed(3, 0))
    assert out.size == w.size + 1
    assert canonical_encoding(out) == canonical_encoding(grow_uniform(w, Seed(3, 0)))


def test_grow_chain_deterministic():
    a = grow_chain(10, Seed(5, 1))
    b = grow_chain(10, Seed(5, 1))
    assert canonical_encoding(a) == canonical_encoding(b)
    assert a.size == 10
    assert validate(a) is None


def test_grow_chain_log_replays():
    t, log = grow_chain_log(8, Seed(5, 2))
    assert len(log) == 8
    cur = minimal_tree()
    for opt in log:
        cur = apply_option(cur, opt)
    assert canonical_encoding(cur) == canonical_encoding(t)


def test_grow_chain_from_start():
    start = sample_uniform(3, Seed(9, 9))
    out, log = grow_chain_log(7, Seed(9, 10), start=start)
    assert out.size == 7
    assert len(log) == 4
    with pytest.raises(ValueError, match="below the starting size"):
        grow_chain(2, Seed(9, 11), start=start)


def test_oracle_preconditions(w):
    with pytest.raises(ValueError, match="expected 4"):
        preimages_oracle(w, 5)
    big = sample_uniform(7, Seed(1, 1))
    with pytest.raises(ValueError, match="bounded at target size 7"):
        preimages_oracle(big, 8)
