"""Best-of-three leaf erasure: selection walk, one-step cut, full chains.

The walk starts at the branching node attached to the root leaf.  At each
active node it looks at the three smallest leaf labels strictly below it and
steps into the child subtree holding at least two of them; it halts at the
first node whose subtree holds no branching node.  Cutting there removes a
cherry: the larger label of the pair is the erased leaf, the smaller one is
inherited by the cut node, and labels are renumbered to stay an interval.

This module is the straightforward reference: every step recomputes fringe
minima from scratch and materializes the renumbered labels.  chainfast has an
equivalent near-linear implementation; the two are compared step for step in
the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tree import (
    BRANCH,
    FREE,
    LEAF,
    NO_LABEL,
    NO_NODE,
    LabeledBinaryTree,
    NodeId,
    _require_valid,
    canonical_encoding,
)


@dataclass(frozen=True)
class ErasureStep:
    cut_node: NodeId  # id in the original tree
    bot_label: int  # erased leaf label, in the labeling current at this step
    inherited_label: int  # label the cut node keeps, same labeling
    step_index: int  # 1-based


@dataclass
class ErasureChain:
    size: int
    steps: list[ErasureStep]
    erasure_time: dict[NodeId, int]  # branching node -> step it was cut
    leaf_erasure_time: dict[NodeId, int]  # original leaf -> step it vanished
    trees: list[str] | None = None  # canonical encodings, initial tree first


def _fringe_minima(t: LabeledBinaryTree):
    """Per branching node, the up-to-three smallest leaf labels below it."""
    kind, left, right, label = t.kind, t.left, t.right, t.label
    order = []
    stack = [t.top]
    while stack:
        v = stack.pop()
        if kind[v] == BRANCH:
            order.append(v)
            stack.append(left[v])
            stack.append(right[v])
    min3: list = [None] * len(kind)
    for v in reversed(order):
        l, r = left[v], right[v]
        a = [label[l]] if kind[l] == LEAF else min3[l]
        b = [label[r]] if kind[r] == LEAF else min3[r]
        merged = sorted(a + b)
        del merged[3:]
        min3[v] = merged
    return min3


def _walk(t: LabeledBinaryTree, min3) -> NodeId:
    kind, left, right, label = t.kind, t.left, t.right, t.label
    v = t.top
    while True:
        l, r = left[v], right[v]
        if kind[l] == LEAF and kind[r] == LEAF:
            return v
        a = [label[l]] if kind[l] == LEAF else min3[l]
        b = [label[r]] if kind[r] == LEAF else min3[r]
        # count how many of the three overall minima sit on the left
        i = j = from_left = 0
        for _ in range(3):
            if j >= len(b) or (i < len(a) and a[i] < b[j]):
                from_left += 1
                i += 1
            else:
                j += 1
        v = l if from_left >= 2 else r


def bot_select(t: LabeledBinaryTree) -> NodeId:
    """The branching node at which the next cut happens."""
    if t.size < 1:
        raise ValueError("tree has no branching node to select")
    return _walk(t, _fringe_minima(t))


def _erase_once(t: LabeledBinaryTree):
    """One erasure step.  Returns (new tree, step fields, removed child ids)."""
    v = bot_select(t)
    out = t.copy()
    kind, parent, left, right, label = out.kind, out.parent, out.left, out.right, out.label
    l, r = left[v], right[v]
    la, lb = label[l], label[r]
    lo, hi = (la, lb) if la < lb else (lb, la)
    for u in (l, r):
        kind[u] = FREE
        parent[u] = NO_NODE
        label[u] = NO_LABEL
    kind[v] = LEAF
    left[v] = NO_NODE
    right[v] = NO_NODE
    label[v] = lo
    out.size = t.size - 1
    # only the erased label leaves the set, so the renumbering is a shift
    for u in range(len(kind)):
        if kind[u] == LEAF and label[u] > hi:
            label[u] -= 1
    return out, v, hi, lo, (l, r)


def bot_erase(t: LabeledBinaryTree) -> tuple[LabeledBinaryTree, ErasureStep]:
    """Cut at the selected node; size drops by exactly one."""
    out, v, hi, lo, _ = _erase_once(t)
    return out, ErasureStep(cut_node=v, bot_label=hi, inherited_label=lo, step_index=1)


def erasure_chain(t: LabeledBinaryTree, keep_snapshots: bool = False) -> ErasureChain:
    """Erase all the way down to the size-0 tree, recording each step.

    Node ids in the records refer to the input tree: cuts tombstone slots and
    never renumber ids, so identity is stable along the chain.
    """
    _require_valid(t)
    n = t.size
    steps: list[ErasureStep] = []
    erasure_time: dict[NodeId, int] = {}
    leaf_time: dict[NodeId, int] = {}
    snaps = [canonical_encoding(t)] if keep_snapshots else None

    orig_kind = t.kind
    cur = t
    for k in range(1, n + 1):
        cur, v, hi, lo, removed = _erase_once(cur)
        steps.append(ErasureStep(cut_node=v, bot_label=hi, inherited_label=lo, step_index=k))
        erasure_time[v] = k
        for u in removed:
            if orig_kind[u] == LEAF:
                leaf_time[u] = k
        if keep_snapshots:
            snaps.append(canonical_encoding(cur))

    for u in range(len(orig_kind)):
        if orig_kind[u] == LEAF and u not in leaf_time:
            leaf_time[u] = n + 1  # survived the whole chain
    return ErasureChain(
        size=n,
        steps=steps,
        erasure_time=erasure_time,
        leaf_erasure_time=leaf_time,
        trees=snaps,
    )


# ----------------------------------------------------------------------
# tabular exports


def chain_records(chain: ErasureChain) -> list[dict]:
    return [
        {
            "k": s.step_index,
            "cut_node": s.cut_node,
            "bot_label": s.bot_label,
            "inherited_label": s.inherited_label,
            "size_after": chain.size - s.step_index,
        }
        for s in chain.steps
    ]


def coloring_rows(t: LabeledBinaryTree, chain: ErasureChain) -> list[tuple[int, str, int]]:
    """(node_id, node_kind, erasure_time) per node: branching nodes carry the
    step they were cut, leaves the step they vanished."""
    rows = []
    for v in sorted(t.node_ids()):
        if t.kind[v] == BRANCH:
            rows.append((v, "branching", chain.erasure_time[v]))
        else:
            rows.append((v, "leaf", chain.leaf_erasure_time[v]))
    return rows
