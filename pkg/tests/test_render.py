"""Radial layout geometry, the color ramp, and SVG document structure."""

import math
import re

import pytest

from botchain import (
    ColorScale,
    erasure_chain,
    layout_radial,
    minimal_tree,
    parse_tree,
    render_frames,
    render_svg,
    sample_uniform,
    Seed,
)
from botchain.erasure import ErasureChain
from botchain.render import MODE_BRANCH, MODE_LEAF

from conftest import mirrored

HEX = re.compile(r"^#[0-9a-f]{2}00[0-9a-f]{2}$")


def test_color_scale_validation():
    with pytest.raises(ValueError, match="unknown color mode"):
        ColorScale("rainbow", 5)
    with pytest.raises(ValueError, match="tmax must be at least 1"):
        ColorScale(MODE_LEAF, 0)


def test_color_scale_for_tree():
    assert ColorScale.for_tree(MODE_LEAF, 5).tmax == 6
    assert ColorScale.for_tree(MODE_BRANCH, 5).tmax == 5
    assert ColorScale.for_tree(MODE_LEAF, 0).tmax == 1
    assert ColorScale.for_tree(MODE_BRANCH, 0).tmax == 1


def test_color_position_monotone():
    scale = ColorScale(MODE_BRANCH, 10)
    ps = [scale.position(k) for k in range(1, 11)]
    assert ps[0] == 0.0
    assert ps[-1] == 1.0
    assert all(a < b for a, b in zip(ps, ps[1:]))
    assert ColorScale(MODE_BRANCH, 1).position(1) == 0.0


def test_color_css_endpoints_and_shape():
    scale = ColorScale(MODE_LEAF, 12)
    assert scale.css(1) == "#0000ff"
    assert scale.css(12) == "#ff0000"
    for k in range(1, 13):
        assert HEX.match(scale.css(k))
    reds = [int(scale.css(k)[1:3], 16) for k in range(1, 13)]
    assert reds == sorted(reds)


def test_layout_minimal_tree():
    lay = layout_radial(minimal_tree())
    assert lay.positions[0] == (0.0, 0.0)
    x, y = lay.positions[1]
    assert x == pytest.approx(-1.0)
    assert y == pytest.approx(0.0, abs=1e-12)


def test_layout_worked_example(w):
    lay = layout_radial(w)
    b2 = w.parent[w.leaf_of_label(1)]
    assert lay.positions[w.root] == (0.0, 0.0)
    for u in (w.leaf_of_label(1), w.leaf_of_label(2), w.leaf_of_label(3)):
        x, y = lay.positions[u]
        assert math.hypot(x, y) == pytest.approx(1.0)
    # contour order puts the label-3 leaf first, then 1, then 2
    a3 = math.atan2(*reversed(lay.positions[w.leaf_of_label(3)]))
    assert a3 == pytest.approx(math.pi / 3)
    tx, ty = lay.positions[w.top]
    assert (tx, ty) == (pytest.approx(-1 / 3), pytest.approx(0.0, abs=1e-12))
    bx, by = lay.positions[b2]
    assert math.hypot(bx, by) == pytest.approx(2 / 3)
    assert by < 0


def test_layout_mirror_symmetry(recon):
    lay = layout_radial(recon)
    mir = layout_radial(mirrored(recon))
    for v, (x, y) in lay.positions.items():
        mx, my = mir.positions[v]
        assert mx == pytest.approx(x, abs=1e-9)
        assert my == pytest.approx(-y, abs=1e-9)


def test_svg_basic_structure(w):
    chain = erasure_chain(w)
    doc = render_svg(w, chain, ColorScale.for_tree(MODE_LEAF, w.size))
    assert doc.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
    assert doc.endswith("</svg>\n")
    assert doc.count("<circle") == 6
    assert doc.count("<line") == 5
    for num in re.findall(r'(?:cx|cy|x1|y1|x2|y2)="([^"]+)"', doc):
        assert re.fullmatch(r"\d+\.\d{4}", num), num
    for color in re.findall(r'(?:<line .*stroke|<circle .*fill)="(#[^"]+)"', doc):
        assert HEX.match(color)


def test_svg_deterministic(recon):
    chain = erasure_chain(recon)
    scale = ColorScale.for_tree(MODE_BRANCH, recon.size)
    assert render_svg(recon, chain, scale) == render_svg(recon, chain, scale)


def test_svg_modes_differ(w):
    chain = erasure_chain(w)
    leaf = render_svg(w, chain, ColorScale.for_tree(MODE_LEAF, w.size))
    branch = render_svg(w, chain, ColorScale.for_tree(MODE_BRANCH, w.size))
    assert leaf != branch


def test_svg_metadata_comment(w):
    chain = erasure_chain(w)
    scale = ColorScale.for_tree(MODE_LEAF, w.size)
    doc = render_svg(w, chain, scale, metadata={"seed": 7, "note": "a--b"})
    assert '<!-- {"note": "a- -b", "seed": 7} -->' in doc


def test_svg_rejects_foreign_chain():
    t1 = parse_tree("0:(1,(2,3))")
    t2 = parse_tree("0:((1,2),3)")
    chain = erasure_chain(t2)
    with pytest.raises(ValueError, match="does not match"):
        render_svg(t1, chain, ColorScale.for_tree(MODE_LEAF, 2))


def test_svg_rejects_poisoned_times(w):
    real = erasure_chain(w)
    b2 = w.parent[w.leaf_of_label(1)]
    bad_leaf = dict(real.leaf_erasure_time)
    bad_leaf[w.leaf_of_label(3)] = 1
    poisoned = ErasureChain(real.size, real.steps, real.erasure_time, bad_leaf)
    with pytest.raises(ValueError, match="does not match"):
        render_svg(w, poisoned, ColorScale.for_tree(MODE_LEAF, 2))
    # branch order violated but leaf times kept self-consistent
    flipped_et = {b2: 2, w.top: 1}
    flipped_leaf = {
        w.leaf_of_label(1): 2,
        w.leaf_of_label(2): 2,
        w.leaf_of_label(3): 1,
        w.root: 3,
    }
    poisoned = ErasureChain(real.size, real.steps, flipped_et, flipped_leaf)
    with pytest.raises(ValueError, match="does not match"):
        render_svg(w, poisoned, ColorScale.for_tree(MODE_LEAF, 2))


def test_frames_shrink(w):
    chain = erasure_chain(w)
    frames = render_frames(w, chain, ColorScale.for_tree(MODE_LEAF, w.size), delta=1)
    assert [m for m, _ in frames] == [2, 1, 0]
    for m, doc in frames:
        assert doc.count("<circle") == 2 * m + 2
        assert doc.count("<line") == 2 * m + 1
        assert f'"frame_size": {m}' in doc


def test_frames_nested_geometry():
    t = sample_uniform(12, Seed(0xF4A, 0))
    chain = erasure_chain(t)
    frames = render_frames(t, chain, ColorScale.for_tree(MODE_BRANCH, 12), delta=4)
    assert [m for m, _ in frames] == [12, 8, 4, 0]
    circle_sets = [set(re.findall(r"<circle [^/]+/>", doc)) for _, doc in frames]
    for smaller, larger in zip(circle_sets[1:], circle_sets):
        assert smaller < larger


def test_frames_delta_validation(w):
    with pytest.raises(ValueError, match="delta must be positive"):
        render_frames(w, erasure_chain(w), ColorScale.for_tree(MODE_LEAF, 2), delta=0)


def test_frames_always_reach_zero(w):
    chain = erasure_chain(w)
    frames = render_frames(w, chain, ColorScale.for_tree(MODE_LEAF, 2), delta=5)
    assert [m for m, _ in frames] == [2, 0]
