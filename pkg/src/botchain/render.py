"""Radial layout and SVG export of trees colored by erasure time.

Non-root leaves sit on the unit circle in depth-first contour order, each
branch node at the angular midpoint of its leaf range with radius
depth / height, the root at the origin.  The construction is pure arithmetic
on the tree, so two identical trees produce byte-identical documents.

Coordinates are written with exactly four decimals and negative zero
normalized away; colors are 6-digit lowercase hex.  That pins the output
bytes across platforms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .erasure import ErasureChain
from .tree import BRANCH, LabeledBinaryTree, _require_valid, depths, height

MODE_LEAF = "leaf-time"
MODE_BRANCH = "branch-time"

_CANVAS = 1000.0
_PLOT_RADIUS = 480.0
_VERTEX_RADIUS = "2.5"
_STROKE_WIDTH = "1.5"


@dataclass(frozen=True)
class Layout:
    """Planar positions keyed by node id, plus the raw bounding box."""

    positions: dict[int, tuple[float, float]]
    extents: tuple[float, float, float, float]


@dataclass(frozen=True)
class ColorScale:
    """Linear blue-to-red ramp over erasure times 1..tmax.

    ``position`` is the strictly monotone continuous map; ``css`` quantizes
    it to 24-bit color, so times closer than the channel resolution may share
    a hex value.
    """

    mode: str
    tmax: int

    def __post_init__(self) -> None:
        if self.mode not in (MODE_LEAF, MODE_BRANCH):
            raise ValueError(f"unknown color mode {self.mode!r}")
        if self.tmax < 1:
            raise ValueError("tmax must be at least 1")

    @classmethod
    def for_tree(cls, mode: str, n: int) -> "ColorScale":
        # leaf mode spans one extra step: survivors outlive the last cut
        extra = 1 if mode == MODE_LEAF else 0
        return cls(mode, max(n + extra, 1))

    def position(self, time: int) -> float:
        if self.tmax == 1:
            return 0.0
        p = (time - 1) / (self.tmax - 1)
        return min(1.0, max(0.0, p))

    def css(self, time: int) -> str:
        p = self.position(time)
        r = round(255 * p)
        b = round(255 * (1.0 - p))
        return f"#{r:02x}00{b:02x}"


def layout_radial(t: LabeledBinaryTree) -> Layout:
    _require_valid(t)
    left, right, kind, root = t.left, t.right, t.kind, t.root
    dep = depths(t)
    maxdep = height(t)

    # preorder walk collecting non-root leaves in contour order
    order: list[int] = []
    leaf_index: dict[int, int] = {}
    stack = [left[root]]
    while stack:
        v = stack.pop()
        order.append(v)
        if kind[v] == BRANCH:
            stack.append(right[v])
            stack.append(left[v])
        else:
            leaf_index[v] = len(leaf_index)

    nleaves = len(leaf_index)
    step = 2.0 * math.pi / nleaves
    angle: dict[int, float] = {v: (i + 0.5) * step for v, i in leaf_index.items()}

    # leaf-range endpoints accumulate bottom-up in reverse preorder
    lo = dict(angle)
    hi = dict(angle)
    for v in reversed(order):
        if kind[v] == BRANCH:
            lo[v] = min(lo[left[v]], lo[right[v]])
            hi[v] = max(hi[left[v]], hi[right[v]])

    positions: dict[int, tuple[float, float]] = {root: (0.0, 0.0)}
    for v in order:
        if kind[v] == BRANCH:
            a = 0.5 * (lo[v] + hi[v])
            radius = dep[v] / maxdep
        else:
            a = angle[v]
            radius = 1.0
        positions[v] = (radius * math.cos(a), radius * math.sin(a))

    xs = [p[0] for p in positions.values()]
    ys = [p[1] for p in positions.values()]
    return Layout(positions, (min(xs), min(ys), max(xs), max(ys)))


def _fmt(value: float) -> str:
    out = f"{value:.4f}"
    return "0.0000" if out == "-0.0000" else out


def _px(x: float) -> str:
    return _fmt(_CANVAS / 2 + _PLOT_RADIUS * x)


def _vertex_times(t: LabeledBinaryTree, chain: ErasureChain, mode: str) -> dict[int, int]:
    kind, parent = t.kind, t.parent
    times: dict[int, int] = dict(chain.erasure_time)
    if mode == MODE_LEAF:
        times.update(chain.leaf_erasure_time)
    else:
        last = max(chain.size, 1)
        for u in t.leaf_ids():
            p = parent[u]
            times[u] = chain.erasure_time[p] if p != -1 and kind[p] == BRANCH else last
    return times


def _check_match(t: LabeledBinaryTree, chain: ErasureChain) -> None:
    """Cheap structural consistency: id sets, the leaf-time/parent relation,
    and child-before-parent cut order must all line up with this tree."""
    kind, parent = t.kind, t.parent
    ok = (
        chain.size == t.size
        and set(chain.erasure_time) == set(t.branch_ids())
        and set(chain.leaf_erasure_time) == set(t.leaf_ids())
    )
    if ok:
        last = chain.size + 1
        for u in t.leaf_ids():
            p = parent[u]
            want = chain.erasure_time[p] if p != -1 and kind[p] == BRANCH else last
            if chain.leaf_erasure_time[u] != want:
                ok = False
                break
    if ok:
        for v in t.branch_ids():
            p = parent[v]
            if kind[p] == BRANCH and chain.erasure_time[v] >= chain.erasure_time[p]:
                ok = False
                break
    if not ok:
        raise ValueError("erasure chain does not match this tree")


def _document(
    t: LabeledBinaryTree,
    layout: Layout,
    times: dict[int, int],
    scale: ColorScale,
    alive: set[int] | None,
    metadata: dict | None,
) -> str:
    pos = layout.positions
    nodes = sorted(pos) if alive is None else sorted(v for v in pos if v in alive)
    side = int(_CANVAS)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {side} {side}" width="{side}" height="{side}">'
    ]
    if metadata is not None:
        blob = json.dumps(metadata, sort_keys=True).replace("--", "- -")
        out.append(f"<!-- {blob} -->")
    out.append(f'<rect width="{side}" height="{side}" fill="#ffffff"/>')

    out.append(f'<g stroke-width="{_STROKE_WIDTH}">')
    parent = t.parent
    for v in nodes:
        p = parent[v]
        if p == -1 or (alive is not None and p not in alive):
            continue
        (x1, y1), (x2, y2) = pos[p], pos[v]
        color = scale.css(times[v])
        out.append(
            f'<line x1="{_px(x1)}" y1="{_px(y1)}" x2="{_px(x2)}" y2="{_px(y2)}" '
            f'stroke="{color}"/>'
        )
    out.append("</g>")

    out.append("<g>")
    for v in nodes:
        x, y = pos[v]
        out.append(
            f'<circle cx="{_px(x)}" cy="{_px(y)}" r="{_VERTEX_RADIUS}" '
            f'fill="{scale.css(times[v])}"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(
    t: LabeledBinaryTree,
    chain: ErasureChain,
    scale: ColorScale,
    metadata: dict | None = None,
) -> str:
    """Full-tree SVG; every vertex and every edge tinted by erasure time.

    Edges take the color of their child endpoint, which is the node whose
    removal deletes the edge.
    """
    _check_match(t, chain)
    layout = layout_radial(t)
    times = _vertex_times(t, chain, scale.mode)
    return _document(t, layout, times, scale, None, metadata)


def render_frames(
    t: LabeledBinaryTree,
    chain: ErasureChain,
    scale: ColorScale,
    delta: int,
    metadata: dict | None = None,
) -> list[tuple[int, str]]:
    """One SVG per remaining size n, n - delta, ... down to 0.

    Positions and colors stay fixed while vertices drop out, so the frames
    play back the erasure as a shrinking tree.  Returns (size, document)
    pairs, largest first.
    """
    if delta < 1:
        raise ValueError("delta must be positive")
    _check_match(t, chain)
    layout = layout_radial(t)
    times = _vertex_times(t, chain, scale.mode)
    n = chain.size
    sizes = sorted({m for m in range(n, -1, -delta)} | {0}, reverse=True)

    parent = t.parent
    et = chain.erasure_time
    top = t.top
    frames = []
    for m in sizes:
        cutoff = n - m
        # a node leaves the picture when its parent is cut; the root and the
        # node directly under it persist to the end
        alive = {
            v
            for v in layout.positions
            if v == t.root or v == top or et[parent[v]] > cutoff
        }
        meta = dict(metadata or {})
        meta["frame_size"] = m
        frames.append((m, _document(t, layout, times, scale, alive, meta)))
    return frames
