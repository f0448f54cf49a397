"""Labeled binary plane trees stored in a flat node arena.

A tree is rooted at a leaf carrying label 0.  Every other node is either a
leaf or a branching node with an ordered pair of children.  A tree of size n
has n branching nodes and n + 2 leaves whose labels form a bijection onto
{0, ..., n + 1}.

Nodes are addressed by dense integer ids into parallel column lists.  Ids are
stable for the lifetime of a tree value: operations that return a new tree
keep surviving ids and tombstone removed slots, so the same id names the same
node across a whole erasure chain.  The root leaf keeps its unique child in
the ``left`` column; that is the only leaf with a child pointer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

NodeId = int

LEAF = 0
BRANCH = 1
FREE = 2  # tombstoned slot, never reused within one tree value

NO_NODE = -1
NO_LABEL = -1

SIDE_LEFT = "left"
SIDE_RIGHT = "right"


@dataclass(frozen=True)
class Violation:
    """First structural invariant found broken, with the offending node."""

    code: str
    node: NodeId
    message: str


class ParseError(ValueError):
    """Raised by parse_tree.  ``offset`` is a byte position for syntax errors."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class LabeledBinaryTree:
    """Arena-backed tree value.  Treat as immutable through the public API."""

    __slots__ = ("kind", "parent", "left", "right", "label", "root", "size")

    def __init__(self, kind, parent, left, right, label, root, size):
        self.kind = kind
        self.parent = parent
        self.left = left
        self.right = right
        self.label = label
        self.root = root
        self.size = size

    # ------------------------------------------------------------------
    # convenience accessors

    @property
    def top(self) -> NodeId:
        """The root leaf's unique child."""
        return self.left[self.root]

    def node_ids(self) -> Iterator[NodeId]:
        kind = self.kind
        return (v for v in range(len(kind)) if kind[v] != FREE)

    def leaf_ids(self) -> list[NodeId]:
        kind = self.kind
        return [v for v in range(len(kind)) if kind[v] == LEAF]

    def branch_ids(self) -> list[NodeId]:
        kind = self.kind
        return [v for v in range(len(kind)) if v != self.root and kind[v] == BRANCH]

    def leaf_of_label(self, lab: int) -> NodeId:
        kind, label = self.kind, self.label
        for v in range(len(kind)):
            if kind[v] == LEAF and label[v] == lab:
                return v
        raise ValueError(f"no leaf labeled {lab}")

    def is_live(self, v: NodeId) -> bool:
        return 0 <= v < len(self.kind) and self.kind[v] != FREE

    def copy(self) -> "LabeledBinaryTree":
        return LabeledBinaryTree(
            list(self.kind),
            list(self.parent),
            list(self.left),
            list(self.right),
            list(self.label),
            self.root,
            self.size,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledBinaryTree):
            return NotImplemented
        return canonical_encoding(self) == canonical_encoding(other)

    __hash__ = None  # structural equality only; use encodings as dict keys

    def __repr__(self) -> str:
        return f"LabeledBinaryTree({canonical_encoding(self)!r})"


def minimal_tree() -> LabeledBinaryTree:
    """The size-0 tree: root leaf 0 joined to a single leaf labeled 1."""
    return LabeledBinaryTree(
        kind=[LEAF, LEAF],
        parent=[NO_NODE, 0],
        left=[1, NO_NODE],
        right=[NO_NODE, NO_NODE],
        label=[0, 1],
        root=0,
        size=0,
    )


def from_nested(spec) -> LabeledBinaryTree:
    """Build a tree from ``int | (spec, spec)`` describing the root's subtree."""
    kind = [LEAF]
    parent = [NO_NODE]
    left = [NO_NODE]
    right = [NO_NODE]
    label = [0]
    size = 0

    def new_slot():
        kind.append(FREE)
        parent.append(NO_NODE)
        left.append(NO_NODE)
        right.append(NO_NODE)
        label.append(NO_LABEL)
        return len(kind) - 1

    # stack of (spec, parent id, side); sides resolved as slots are created
    stack = [(spec, 0, SIDE_LEFT)]
    while stack:
        item, par, side = stack.pop()
        v = new_slot()
        parent[v] = par
        if side == SIDE_LEFT:
            left[par] = v
        else:
            right[par] = v
        if isinstance(item, tuple):
            kind[v] = BRANCH
            size += 1
            lspec, rspec = item
            stack.append((rspec, v, SIDE_RIGHT))
            stack.append((lspec, v, SIDE_LEFT))
        else:
            kind[v] = LEAF
            label[v] = int(item)
    return LabeledBinaryTree(kind, parent, left, right, label, 0, size)


# ----------------------------------------------------------------------
# validation


def validate(t: LabeledBinaryTree) -> Violation | None:
    """Check every structural invariant; return the first breach or None."""
    kind, parent, left, right, label = t.kind, t.parent, t.left, t.right, t.label
    nslots = len(kind)
    root = t.root

    if not (0 <= root < nslots) or kind[root] != LEAF:
        return Violation("root node", root, "root must be a live leaf")
    if parent[root] != NO_NODE:
        return Violation("root node", root, "root must have no parent")
    if label[root] != 0:
        return Violation("root label", root, "root leaf must carry label 0")
    if not (0 <= left[root] < nslots) or kind[left[root]] == FREE:
        return Violation("root node", root, "root must have exactly one child")
    if right[root] != NO_NODE:
        return Violation("root node", root, "root has a second child")

    live = [v for v in range(nslots) if kind[v] != FREE]
    n_branch = sum(1 for v in live if kind[v] == BRANCH)
    n_leaf = len(live) - n_branch
    if n_branch != t.size:
        return Violation("size", NO_NODE, f"size field {t.size} but {n_branch} branching nodes")
    if n_leaf != t.size + 2:
        return Violation("leaf count", NO_NODE, f"{n_leaf} leaves for size {t.size}")

    seen = [False] * nslots
    seen[root] = True
    stack = [t.top]
    count = 1
    while stack:
        v = stack.pop()
        if not (0 <= v < nslots) or kind[v] == FREE:
            return Violation("dangling child", v, "child pointer to a dead slot")
        if seen[v]:
            return Violation("cycle", v, "node reachable twice")
        seen[v] = True
        count += 1
        if kind[v] == BRANCH:
            l, r = left[v], right[v]
            if l == NO_NODE or r == NO_NODE:
                return Violation("arity", v, "branching node missing a child")
            if parent[l] != v or parent[r] != v:
                return Violation("parent link", v, "child does not point back to parent")
            if label[v] != NO_LABEL:
                return Violation("branch label", v, "branching node carries a label")
            stack.append(r)
            stack.append(l)
        else:
            if v != root and (left[v] != NO_NODE or right[v] != NO_NODE):
                return Violation("arity", v, "non-root leaf has a child")
    if count != len(live):
        return Violation("connectivity", NO_NODE, "arena holds nodes unreachable from the root")
    if parent[t.top] != root:
        return Violation("parent link", t.top, "root child does not point back to root")

    labs = sorted(label[v] for v in live if kind[v] == LEAF)
    if labs != list(range(t.size + 2)):
        bad = next((v for v in live if kind[v] == LEAF and not (0 <= label[v] <= t.size + 1)), NO_NODE)
        return Violation("label bijection", bad, f"leaf labels {labs} are not 0..{t.size + 1}")
    return None


def _require_valid(t: LabeledBinaryTree) -> None:
    v = validate(t)
    if v is not None:
        raise ValueError(f"invalid tree ({v.code} at node {v.node}): {v.message}")


# ----------------------------------------------------------------------
# structural queries


def _check_node(t: LabeledBinaryTree, v: NodeId) -> None:
    if not t.is_live(v):
        raise ValueError(f"no such node: {v}")


def fringe(t: LabeledBinaryTree, v: NodeId) -> set[NodeId]:
    """All strict descendants of v, branching nodes and leaves alike.

    Empty exactly when v is a leaf; the root leaf counts as a leaf here
    even though the rest of the tree hangs below it.
    """
    _check_node(t, v)
    out: set[NodeId] = set()
    kind, left, right = t.kind, t.left, t.right
    stack = []
    if kind[v] == BRANCH:
        stack = [left[v], right[v]]
    while stack:
        u = stack.pop()
        out.add(u)
        if kind[u] == BRANCH:
            stack.append(left[u])
            stack.append(right[u])
    return out


def depths(t: LabeledBinaryTree) -> list[int]:
    """Edge distance from the root leaf, indexed by node id (-1 when dead)."""
    kind, left, right = t.kind, t.left, t.right
    d = [-1] * len(kind)
    d[t.root] = 0
    stack = [(t.top, 1)]
    while stack:
        v, dv = stack.pop()
        d[v] = dv
        if kind[v] == BRANCH:
            stack.append((left[v], dv + 1))
            stack.append((right[v], dv + 1))
    return d


def height(t: LabeledBinaryTree) -> int:
    return max(depths(t))


def diameter(t: LabeledBinaryTree) -> int:
    """Longest path (edge count) between any two nodes."""
    kind, left, right = t.kind, t.left, t.right
    # subtree heights, children before parents
    order = []
    stack = [t.top]
    while stack:
        v = stack.pop()
        order.append(v)
        if kind[v] == BRANCH:
            stack.append(left[v])
            stack.append(right[v])
    h = [0] * len(kind)
    best = 0
    for v in reversed(order):
        if kind[v] == BRANCH:
            hl, hr = h[left[v]], h[right[v]]
            h[v] = 1 + (hl if hl > hr else hr)
            if hl + hr + 2 > best:
                best = hl + hr + 2
    return max(best, h[t.top] + 1)


# ----------------------------------------------------------------------
# structural surgery


def cut(t: LabeledBinaryTree, v: NodeId) -> LabeledBinaryTree:
    """Remove the fringe of v; v becomes a leaf carrying the smallest label
    that lived below it, and surviving labels are renumbered increasingly."""
    _check_node(t, v)
    if t.kind[v] != BRANCH:
        raise ValueError(f"cut target must be a branching node, got leaf {v}")
    out = t.copy()
    kind, parent, left, right, label = out.kind, out.parent, out.left, out.right, out.label

    removed_branches = 0
    min_label = None
    stack = [left[v], right[v]]
    while stack:
        u = stack.pop()
        if kind[u] == BRANCH:
            removed_branches += 1
            stack.append(left[u])
            stack.append(right[u])
        else:
            if min_label is None or label[u] < min_label:
                min_label = label[u]
        kind[u] = FREE
        parent[u] = NO_NODE
        left[u] = NO_NODE
        right[u] = NO_NODE
        label[u] = NO_LABEL

    kind[v] = LEAF
    left[v] = NO_NODE
    right[v] = NO_NODE
    label[v] = min_label
    out.size = t.size - removed_branches - 1

    _renumber_leaves(out)
    return out


def _renumber_leaves(t: LabeledBinaryTree) -> None:
    """Map the surviving leaf labels increasingly onto 0..size+1 in place."""
    kind, label = t.kind, t.label
    leaf_ids = [u for u in range(len(kind)) if kind[u] == LEAF]
    leaf_ids.sort(key=lambda u: label[u])
    for rank, u in enumerate(leaf_ids):
        label[u] = rank


def graft(t: LabeledBinaryTree, anchor: NodeId, side: str, new_label: int) -> LabeledBinaryTree:
    """Split the edge above ``anchor`` with a new branching node and hang a new
    leaf labeled ``new_label`` on the given side of it."""
    _check_node(t, anchor)
    if t.kind[anchor] != LEAF or anchor == t.root:
        raise ValueError("graft anchor must be a non-root leaf")
    if side not in (SIDE_LEFT, SIDE_RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if new_label < 2:
        raise ValueError(f"grafted label must be at least 2, got {new_label}")
    have = sorted(t.label[u] for u in t.leaf_ids())
    want = [x for x in range(t.size + 3) if x != new_label]
    if have != want:
        raise ValueError(
            f"leaf labels {have} are not 0..{t.size + 2} minus {new_label}; "
            "relabel before grafting"
        )

    out = t.copy()
    kind, parent, left, right, label = out.kind, out.parent, out.left, out.right, out.label

    b = len(kind)
    kind.append(BRANCH)
    parent.append(NO_NODE)
    left.append(NO_NODE)
    right.append(NO_NODE)
    label.append(NO_LABEL)
    u = len(kind)
    kind.append(LEAF)
    parent.append(b)
    left.append(NO_NODE)
    right.append(NO_NODE)
    label.append(new_label)

    p = parent[anchor]
    parent[b] = p
    if left[p] == anchor:
        left[p] = b
    else:
        right[p] = b
    if side == SIDE_LEFT:
        left[b], right[b] = u, anchor
    else:
        left[b], right[b] = anchor, u
    parent[anchor] = b
    out.size = t.size + 1
    return out


def relabel_excluding(t: LabeledBinaryTree, j: int) -> LabeledBinaryTree:
    """Shift the non-root labels order-preservingly onto {1..size+2} minus j."""
    if not (2 <= j <= t.size + 2):
        raise ValueError(f"excluded label {j} out of range 2..{t.size + 2}")
    out = t.copy()
    kind, label = out.kind, out.label
    for u in range(len(kind)):
        if kind[u] == LEAF and label[u] >= j:
            label[u] += 1
    return out


# ----------------------------------------------------------------------
# canonical text form


def canonical_encoding(t: LabeledBinaryTree) -> str:
    """Render as ``0:`` followed by the root subtree, left child first,
    no whitespace.  A leaf prints its label; a branching node prints
    ``(left,right)``."""
    kind, left, right, label = t.kind, t.left, t.right, t.label
    out = ["0:"]
    stack: list = [t.top]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            out.append(x)
        elif kind[x] == LEAF:
            out.append(str(label[x]))
        else:
            stack.append(")")
            stack.append(right[x])
            stack.append(",")
            stack.append(left[x])
            stack.append("(")
    return "".join(out)


def parse_tree(text: str) -> LabeledBinaryTree:
    """Inverse of canonical_encoding.  Raises ParseError with a byte offset on
    syntax problems and without one on semantic problems (bad label set)."""
    s = text.strip()
    if not s.startswith("0:"):
        raise ParseError("expected leading '0:'", offset=0)
    i = 2
    n = len(s)

    kind = [LEAF]
    parent = [NO_NODE]
    left = [NO_NODE]
    right = [NO_NODE]
    label = [0]
    size = 0

    def new_node(k):
        nonlocal size
        kind.append(k)
        parent.append(NO_NODE)
        left.append(NO_NODE)
        right.append(NO_NODE)
        label.append(NO_LABEL)
        if k == BRANCH:
            size += 1
        return len(kind) - 1

    def attach(v, par, is_left):
        parent[v] = par
        if is_left:
            left[par] = v
        else:
            right[par] = v

    # frames: (branch id, expecting-left)
    frames: list[list] = []
    pending = (0, True)  # attach next node under root's single child slot
    while True:
        if i >= n:
            raise ParseError("unexpected end of input", offset=i)
        c = s[i]
        if c == "(":
            b = new_node(BRANCH)
            attach(b, pending[0], pending[1])
            frames.append([b, True])
            pending = (b, True)
            i += 1
        elif c.isdigit():
            j = i
            while j < n and s[j].isdigit():
                j += 1
            u = new_node(LEAF)
            label[u] = int(s[i:j])
            attach(u, pending[0], pending[1])
            i = j
            # close out finished frames
            while True:
                if not frames:
                    if i != n:
                        raise ParseError("trailing characters after tree", offset=i)
                    t = LabeledBinaryTree(kind, parent, left, right, label, 0, size)
                    bad = validate(t)
                    if bad is not None:
                        raise ParseError(f"semantic error ({bad.code}): {bad.message}")
                    return t
                b, expecting_left = frames[-1]
                if expecting_left:
                    if i >= n or s[i] != ",":
                        raise ParseError("expected ','", offset=i)
                    i += 1
                    frames[-1][1] = False
                    pending = (b, False)
                    break
                else:
                    if i >= n or s[i] != ")":
                        raise ParseError("expected ')'", offset=i)
                    i += 1
                    frames.pop()
                    # a closed subtree behaves like a completed leaf: loop again
        else:
            raise ParseError(f"unexpected character {c!r}", offset=i)
