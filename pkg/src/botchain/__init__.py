"""Best-of-three leaf erasure on labeled binary plane trees.

The package builds the whole pipeline around one Markov chain: uniform
sampling and exhaustive enumeration of labeled trees, the single-step erasure
and its exact (4n-2)-way inverse, fast full-chain computation, span
restriction with compatibility checks and rational reverse times, statistical
gates, and a deterministic SVG renderer.
"""

from .chainfast import erasure_chain_fast
from .diagnostics import (
    DiagnosticsReport,
    HeightSample,
    chi_square_sf,
    chi_square_uniform,
    ks_two_sample,
    scaling_proxy,
    theta_gap_report,
)
from .erasure import (
    ErasureChain,
    ErasureStep,
    bot_erase,
    bot_select,
    chain_records,
    coloring_rows,
    erasure_chain,
)
from .growth import (
    GrowthOption,
    apply_option,
    grow_chain,
    grow_chain_log,
    grow_uniform,
    growth_options,
    preimages_oracle,
)
from .render import ColorScale, Layout, layout_radial, render_frames, render_svg
from .rng import DEFAULT_MASTER, Seed, SplitMix64
from .sampling import (
    Enumeration,
    catalan,
    count_labeled,
    enumerate_trees,
    preimage_census,
    sample_uniform,
)
from .span import (
    Counterexample,
    ReverseTimeTable,
    SpanTree,
    check_compatibility,
    contract,
    reverse_time,
    span,
    span_erasure_order,
)
from .tree import (
    LabeledBinaryTree,
    ParseError,
    Violation,
    canonical_encoding,
    cut,
    depths,
    diameter,
    fringe,
    from_nested,
    graft,
    height,
    minimal_tree,
    parse_tree,
    relabel_excluding,
    validate,
)
from .verify import verify_suite

__version__ = "0.1.0"

__all__ = [
    "ColorScale",
    "Counterexample",
    "DEFAULT_MASTER",
    "DiagnosticsReport",
    "Enumeration",
    "ErasureChain",
    "ErasureStep",
    "GrowthOption",
    "HeightSample",
    "LabeledBinaryTree",
    "Layout",
    "ParseError",
    "ReverseTimeTable",
    "Seed",
    "SpanTree",
    "SplitMix64",
    "Violation",
    "apply_option",
    "bot_erase",
    "bot_select",
    "canonical_encoding",
    "catalan",
    "chain_records",
    "check_compatibility",
    "chi_square_sf",
    "chi_square_uniform",
    "coloring_rows",
    "contract",
    "count_labeled",
    "cut",
    "depths",
    "diameter",
    "enumerate_trees",
    "erasure_chain",
    "erasure_chain_fast",
    "fringe",
    "from_nested",
    "graft",
    "grow_chain",
    "grow_chain_log",
    "grow_uniform",
    "growth_options",
    "height",
    "ks_two_sample",
    "layout_radial",
    "minimal_tree",
    "parse_tree",
    "preimage_census",
    "preimages_oracle",
    "relabel_excluding",
    "render_frames",
    "render_svg",
    "reverse_time",
    "sample_uniform",
    "scaling_proxy",
    "span",
    "span_erasure_order",
    "theta_gap_report",
    "validate",
    "verify_suite",
    "__version__",
]
