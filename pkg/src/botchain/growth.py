"""Inverting one erasure step: all ways to regrow, and uniform growth.

A size-(n-1) tree has exactly 4n - 2 preimages under one erasure step.  Each
is reached by choosing the label j of the leaf to restore, shifting the other
labels out of its way, and grafting at an allowed anchor leaf:

* j = 2: the anchor is the leaf labeled 1, either side (2 options);
* j >= 3: exactly two anchor leaves exist, found by the selection walk
  restricted to labels below j, either side of either (4 options).

The restricted walk is the plain walk on the span of labels 0..j-1, so the
anchors are simply the cherry pair selected on the contracted span view.
No correctness argument is encoded here; growth_options is required to agree
with the blind oracle (graft everywhere, keep what erases back) on every
enumerated tree, and that equality is a gated test.
"""

from __future__ import annotations

from dataclasses import dataclass

from .erasure import bot_erase, bot_select
from .rng import Seed, SplitMix64
from .sampling import ENUMERATION_MAX
from .span import contract, span
from .tree import (
    LEAF,
    SIDE_LEFT,
    SIDE_RIGHT,
    LabeledBinaryTree,
    NodeId,
    canonical_encoding,
    graft,
    minimal_tree,
    relabel_excluding,
)


@dataclass(frozen=True)
class GrowthOption:
    j: int  # label given to the restored leaf
    anchor: NodeId  # leaf id in the relabeled tree (ids survive relabeling)
    anchor_label: int
    side: str


def _anchor_leaves(t: LabeledBinaryTree, j: int) -> list[tuple[int, NodeId]]:
    """(label, id) of the allowed anchors for label j, smaller label first."""
    if j == 2:
        v = t.leaf_of_label(1)
        return [(1, v)]
    s = span(t, j - 1)
    view, back = contract(s)
    c = bot_select(view)
    out = []
    for child in (view.left[c], view.right[c]):
        host = back[child]
        out.append((t.label[host], host))
    out.sort()
    return out


def growth_options(t: LabeledBinaryTree) -> list[GrowthOption]:
    """All 4(|t|+1) - 2 single-step regrowths, ordered by (j, anchor label,
    side) with left before right."""
    n = t.size + 1
    options: list[GrowthOption] = []
    for j in range(2, n + 2):
        for lab, v in _anchor_leaves(t, j):
            for side in (SIDE_LEFT, SIDE_RIGHT):
                options.append(GrowthOption(j=j, anchor=v, anchor_label=lab, side=side))
    assert len(options) == 4 * n - 2
    return options


def apply_option(t: LabeledBinaryTree, opt: GrowthOption) -> LabeledBinaryTree:
    relabeled = relabel_excluding(t, opt.j)
    if (
        not relabeled.is_live(opt.anchor)
        or relabeled.kind[opt.anchor] != LEAF
        or relabeled.label[opt.anchor] != opt.anchor_label
    ):
        raise ValueError("stale growth option: anchor does not match this tree")
    return graft(relabeled, opt.anchor, opt.side, opt.j)


def _option_by_index(t: LabeledBinaryTree, r: int) -> GrowthOption:
    """Option number r in growth_options order, materializing only its j."""
    if r < 2:
        lab, v = _anchor_leaves(t, 2)[0]
        return GrowthOption(2, v, lab, SIDE_LEFT if r == 0 else SIDE_RIGHT)
    q, rem = divmod(r - 2, 4)
    j = 3 + q
    lab, v = _anchor_leaves(t, j)[rem // 2]
    return GrowthOption(j, v, lab, SIDE_LEFT if rem % 2 == 0 else SIDE_RIGHT)


def _grow_step(t: LabeledBinaryTree, rng: SplitMix64) -> tuple[LabeledBinaryTree, GrowthOption]:
    opt = _option_by_index(t, rng.below(4 * (t.size + 1) - 2))
    return apply_option(t, opt), opt


def grow_uniform(t: LabeledBinaryTree, seed: Seed) -> LabeledBinaryTree:
    """One uniformly chosen regrowth step."""
    return _grow_step(t, SplitMix64(seed))[0]


def grow_chain_log(
    n: int, seed: Seed, start: LabeledBinaryTree | None = None
) -> tuple[LabeledBinaryTree, list[GrowthOption]]:
    """Grow to size n, one uniform option per step, keeping the replay log.

    Each step is the exact inverse of one erasure, so a uniform start (the
    size-0 tree trivially is one) gives a uniform result; the sampler gates
    certify this against enumeration.
    """
    t = minimal_tree() if start is None else start
    if n < t.size:
        raise ValueError(f"target size {n} is below the starting size {t.size}")
    rng = SplitMix64(seed)
    log: list[GrowthOption] = []
    while t.size < n:
        t, opt = _grow_step(t, rng)
        log.append(opt)
    return t, log


def grow_chain(
    n: int, seed: Seed, start: LabeledBinaryTree | None = None
) -> LabeledBinaryTree:
    return grow_chain_log(n, seed, start)[0]


def preimages_oracle(t: LabeledBinaryTree, n: int) -> list[LabeledBinaryTree]:
    """Blind inverse: graft every label at every leaf on both sides and keep
    the results that erase back to t.  Deduplicated, sorted by encoding."""
    if t.size != n - 1:
        raise ValueError(f"tree has size {t.size}, expected {n - 1}")
    if n > ENUMERATION_MAX:
        raise ValueError(f"oracle is bounded at target size {ENUMERATION_MAX}")
    want = canonical_encoding(t)
    found: dict[str, LabeledBinaryTree] = {}
    for j in range(2, n + 2):
        relabeled = relabel_excluding(t, j)
        leaves = [v for v in relabeled.leaf_ids() if v != relabeled.root]
        for anchor in leaves:
            for side in (SIDE_LEFT, SIDE_RIGHT):
                candidate = graft(relabeled, anchor, side, j)
                back, _ = bot_erase(candidate)
                if canonical_encoding(back) == want:
                    found.setdefault(canonical_encoding(candidate), candidate)
    return [found[k] for k in sorted(found)]
