"""Erasure chains in near-linear time, with no walk simulation at all.

Renumbering labels between steps is an order isomorphism, so every
best-of-three comparison can be made on the original labels.  Three static
quantities then pin the whole chain down:

* per branching node, the smallest original label in each child subtree;
* the node's activation label, the larger of those two minima.  Activation
  labels are pairwise distinct and cover exactly {2, ..., n + 1}: walking up
  from the leaf with that label is the first time the node separates two of
  the labels seen so far, and each label past 1 activates exactly one node;
* for each node, the nearest strict ancestor with a smaller activation label.

The cut order is obtained by processing nodes in increasing activation order
and splicing each one into a linked list directly before that ancestor, or at
the tail when no ancestor activates earlier.  Why this is the walk's order:
a leaf is invisible to best-of-three comparisons until the labels below its
activated node have shrunk to a pair, and that happens exactly when the walk
is about to cut the nearest earlier-activated ancestor; the newly activated
node then holds a cherry and is cut first, leaving the rest of the order
untouched.  The reference implementation in ``erasure`` replays the walk per
step; the equality of the two is a gated differential test.

Current labels for the step records come from a Fenwick tree over erased
original labels.  Total cost is O(n alpha(n) + n log n) against the
reference's quadratic replay.
"""

from __future__ import annotations

from .erasure import ErasureChain, ErasureStep
from .tree import BRANCH, LEAF, NO_NODE, LabeledBinaryTree, _require_valid


def erasure_chain_fast(t: LabeledBinaryTree, validate: bool = True) -> ErasureChain:
    """Same output as erasure_chain(t) without snapshots."""
    if validate:
        _require_valid(t)
    n = t.size
    kind, parent, left, right, label = t.kind, t.parent, t.left, t.right, t.label
    nslots = len(kind)

    if n == 0:
        leaf_time = {u: 1 for u in range(nslots) if kind[u] == LEAF}
        return ErasureChain(0, [], {}, leaf_time, None)

    # --- pass 1: subtree label minima and activation labels ---------------
    preorder = []
    push = preorder.append
    stack = [t.top]
    while stack:
        v = stack.pop()
        if kind[v] == BRANCH:
            push(v)
            stack.append(left[v])
            stack.append(right[v])
    minlab = label[:]  # leaves keep their label; branch entries overwritten below
    activation = [0] * nslots
    by_activation = [NO_NODE] * (n + 2)
    for v in reversed(preorder):
        a = minlab[left[v]]
        b = minlab[right[v]]
        if a < b:
            minlab[v] = a
            activation[v] = b
        else:
            minlab[v] = b
            activation[v] = a
        if by_activation[activation[v]] != NO_NODE:
            raise AssertionError("activation labels must be distinct")
        by_activation[activation[v]] = v

    # --- pass 2: nearest strict ancestor with smaller activation ----------
    # Nodes are visited in decreasing activation order, so "already visited"
    # means "activates later than the query node"; those are skipped with a
    # path-compressed jump pointer.
    anchor = [NO_NODE] * nslots
    jump = list(range(nslots))
    visited = bytearray(nslots)
    for lab in range(n + 1, 1, -1):
        b = by_activation[lab]
        x = parent[b]
        trail = []
        while x != t.root and visited[x]:
            trail.append(x)
            x = jump[x]
        for y in trail:
            jump[y] = x
        anchor[b] = x  # root id means: no earlier-activated ancestor
        visited[b] = 1
        jump[b] = parent[b]

    # --- pass 3: splice into the cut order ---------------------------------
    sentinel = nslots
    nxt = [NO_NODE] * (nslots + 1)
    prv = [NO_NODE] * (nslots + 1)
    nxt[sentinel] = sentinel
    prv[sentinel] = sentinel
    root = t.root
    for lab in range(2, n + 2):
        b = by_activation[lab]
        a = anchor[b]
        pos = sentinel if a == root else a
        p = prv[pos]
        nxt[p] = b
        prv[b] = p
        nxt[b] = pos
        prv[pos] = b

    order = []
    v = nxt[sentinel]
    while v != sentinel:
        order.append(v)
        v = nxt[v]

    # --- pass 4: step records with labels current at each step ------------
    fen = [0] * (n + 3)  # Fenwick over original labels 0..n+1, 1-indexed
    size_bound = n + 2
    steps = []
    add_step = steps.append
    erasure_time: dict[int, int] = {}
    for k, b in enumerate(order, 1):
        erasure_time[b] = k
        bot = activation[b]
        inh = minlab[b]
        i = bot
        shift = 0
        while i > 0:
            shift += fen[i]
            i -= i & (-i)
        i = inh
        inh_shift = 0
        while i > 0:
            inh_shift += fen[i]
            i -= i & (-i)
        add_step(ErasureStep(b, bot - shift, inh - inh_shift, k))
        i = bot + 1
        while i <= size_bound:
            fen[i] += 1
            i += i & (-i)

    last = n + 1
    leaf_time: dict[int, int] = {}
    for u in range(nslots):
        if kind[u] == LEAF:
            p = parent[u]
            if p != NO_NODE and kind[p] == BRANCH:
                leaf_time[u] = erasure_time[p]
            else:
                leaf_time[u] = last
    return ErasureChain(n, steps, erasure_time, leaf_time, None)
