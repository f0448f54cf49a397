"""Spanned subtrees, their erasure order, and discrete reverse time.

The span of level ell is the union of the host paths between the leaves
labeled 0..ell.  Within it a host node is a leaf, a branching point (both
child sides hold a span leaf), or a pass-through unary node.  Contracting the
unary chains turns the span into an ordinary labeled binary tree of size
ell - 1, which is how the erasure walk is run on it: one walk implementation,
unary nodes transparent by construction.

Reverse time rates a span branching node by the fraction of non-root leaves
the host chain has consumed once that node is cut.  Each step consumes one
leaf net, so the value is erasure_time / (n + 1), an exact rational that does
not depend on the level through which the node is viewed.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction

from .chainfast import erasure_chain_fast
from .erasure import ErasureChain, erasure_chain
from .tree import (
    BRANCH,
    LEAF,
    NO_LABEL,
    NO_NODE,
    LabeledBinaryTree,
    NodeId,
    _require_valid,
)

KIND_LEAF = "leaf"
KIND_UNARY = "unary"
KIND_BRANCHING = "branching"


@dataclass
class SpanTree:
    host: LabeledBinaryTree
    ell: int
    kinds: dict[NodeId, str]  # host id -> leaf | unary | branching
    branch_list: list[NodeId]  # span branching nodes, depth-first order
    _counts: list[int]  # span leaves in each host subtree (internal)


@dataclass(frozen=True)
class Counterexample:
    ell: int
    i: int
    node: NodeId
    reason: str


def span(t: LabeledBinaryTree, ell: int) -> SpanTree:
    if not (2 <= ell <= t.size + 1):
        raise ValueError(f"ell must be in 2..{t.size + 1}, got {ell}")
    _require_valid(t)
    kind, left, right, label = t.kind, t.left, t.right, t.label

    preorder = []
    stack = [t.top]
    while stack:
        v = stack.pop()
        if kind[v] == BRANCH:
            preorder.append(v)
            stack.append(left[v])
            stack.append(right[v])
    counts = [0] * len(kind)
    for v in range(len(kind)):
        if kind[v] == LEAF and 0 <= label[v] <= ell:
            counts[v] = 1
    for v in reversed(preorder):
        counts[v] = counts[left[v]] + counts[right[v]]

    kinds: dict[NodeId, str] = {t.root: KIND_LEAF}
    branch_list: list[NodeId] = []
    stack = [t.top]
    while stack:
        v = stack.pop()
        if kind[v] == LEAF:
            if counts[v]:
                kinds[v] = KIND_LEAF
            continue
        cl, cr = counts[left[v]], counts[right[v]]
        if cl and cr:
            kinds[v] = KIND_BRANCHING
            branch_list.append(v)
        elif cl or cr:
            kinds[v] = KIND_UNARY
        else:
            continue
        stack.append(right[v])
        stack.append(left[v])
    assert len(branch_list) == ell - 1
    return SpanTree(host=t, ell=ell, kinds=kinds, branch_list=branch_list, _counts=counts)


def contract(s: SpanTree) -> tuple[LabeledBinaryTree, dict[NodeId, NodeId]]:
    """Binary view of the span plus a map from its node ids to host ids."""
    t = s.host
    kind, left, right, label = t.kind, t.left, t.right, t.label
    counts = s._counts

    def descend(v: NodeId) -> NodeId:
        # follow the single populated side until a span leaf or branch point
        while True:
            if kind[v] == LEAF:
                return v
            cl, cr = counts[left[v]], counts[right[v]]
            if cl and cr:
                return v
            v = left[v] if cl else right[v]

    ckind = [LEAF]
    cparent = [NO_NODE]
    cleft = [NO_NODE]
    cright = [NO_NODE]
    clabel = [0]
    back = {0: t.root}
    size = 0

    stack = [(descend(t.top), 0, True)]
    while stack:
        host_v, par, is_left = stack.pop()
        ckind.append(BRANCH if kind[host_v] == BRANCH else LEAF)
        cparent.append(par)
        cleft.append(NO_NODE)
        cright.append(NO_NODE)
        clabel.append(label[host_v] if kind[host_v] == LEAF else NO_LABEL)
        c = len(ckind) - 1
        back[c] = host_v
        if is_left:
            cleft[par] = c
        else:
            cright[par] = c
        if kind[host_v] == BRANCH:
            size += 1
            stack.append((descend(right[host_v]), c, False))
            stack.append((descend(left[host_v]), c, True))
    out = LabeledBinaryTree(ckind, cparent, cleft, cright, clabel, 0, size)
    return out, back


def span_erasure_order(s: SpanTree) -> list[NodeId]:
    """Cut order of the walk run on the span, as host node ids."""
    view, back = contract(s)
    # contract() built view this instant; no need to re-check its structure
    chain = erasure_chain_fast(view, validate=False)
    return [back[step.cut_node] for step in chain.steps]


def check_compatibility(
    t: LabeledBinaryTree, ell: int, chain: ErasureChain | None = None
) -> Counterexample | None:
    """Test that the span's own cut order embeds into the host chain.

    Two requirements: the host chain restricted to span branching nodes is the
    span order, and every host node cut strictly between consecutive span cuts
    b_i, b_{i+1} sits below b_{i+1} and below none of b_1..b_i.  Returns the
    first breach or None.
    """
    if not (2 <= ell <= t.size):
        raise ValueError(f"ell must be in 2..{t.size}, got {ell}")
    if chain is None:
        chain = erasure_chain_fast(t)
    pos = chain.erasure_time

    s = span(t, ell)
    so = span_erasure_order(s)
    by_host_time = sorted(s.branch_list, key=pos.__getitem__)
    for i, (a, b) in enumerate(zip(so, by_host_time), 1):
        if a != b:
            return Counterexample(ell=ell, i=i, node=b, reason="span order is not the host order restriction")

    # interval membership tests via an Euler tour of the host
    kind, left, right = t.kind, t.left, t.right
    tin = [0] * len(kind)
    tout = [0] * len(kind)
    clock = 0
    stack = [(t.top, False)]
    while stack:
        v, done = stack.pop()
        if done:
            tout[v] = clock
            continue
        clock += 1
        tin[v] = clock
        stack.append((v, True))
        if kind[v] == BRANCH:
            stack.append((right[v], False))
            stack.append((left[v], False))

    def strictly_below(u: NodeId, b: NodeId) -> bool:
        return u != b and tin[b] <= tin[u] and tout[u] <= tout[b]

    span_pos = [pos[b] for b in so]
    m = len(so)
    for c in t.branch_ids():
        if c in s.kinds and s.kinds[c] == KIND_BRANCHING:
            continue
        pc = pos[c]
        # locate the enclosing interval (b_i, b_{i+1}); cuts before the first
        # span node or after the last are unconstrained
        idx = bisect.bisect_left(span_pos, pc)
        if idx == 0 or idx >= m:
            continue
        nxt = so[idx]
        if not strictly_below(c, nxt):
            return Counterexample(ell=ell, i=idx, node=c, reason="cut between span steps but not below the next span node")
        for j in range(idx):
            if strictly_below(c, so[j]):
                return Counterexample(ell=ell, i=idx, node=c, reason="cut after a span node it sits below")
    return None


@dataclass
class ReverseTimeTable:
    ell: int
    theta: dict[NodeId, Fraction]  # span branching node -> exact time in (0, 1)


def reverse_time(
    t: LabeledBinaryTree, ell: int, chain: ErasureChain | None = None
) -> ReverseTimeTable:
    if not (2 <= ell <= t.size + 1):
        raise ValueError(f"ell must be in 2..{t.size + 1}, got {ell}")
    if chain is None:
        chain = erasure_chain_fast(t)
    s = span(t, ell)
    denom = t.size + 1
    theta = {b: Fraction(chain.erasure_time[b], denom) for b in s.branch_list}
    return ReverseTimeTable(ell=ell, theta=theta)
