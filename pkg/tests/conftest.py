import pytest

from botchain import LabeledBinaryTree, parse_tree

# Size-2 workhorse used across modules: one shallow leaf, one cherry.
W_ENCODING = "0:(3,(1,2))"

# Size-6 tree whose first cut removes the cherry {5,7}; the walk crosses
# three branch nodes to get there, so it exercises every decision kind.
RECON_ENCODING = "0:((3,(4,6)),(2,(1,(5,7))))"


@pytest.fixture
def w() -> LabeledBinaryTree:
    return parse_tree(W_ENCODING)


@pytest.fixture
def recon() -> LabeledBinaryTree:
    return parse_tree(RECON_ENCODING)


def mirrored(t: LabeledBinaryTree) -> LabeledBinaryTree:
    """Swap every branch node's children."""
    m = t.copy()
    for v in m.branch_ids():
        m.left[v], m.right[v] = m.right[v], m.left[v]
    return m
