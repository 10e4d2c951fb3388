import random

import pytest
from hypothesis import strategies as st

from cellstrat.diagrams import SetPartitionDiagram
from cellstrat.perm import Permutation


@st.composite
def permutations(draw, degree):
    images = draw(st.permutations(list(range(1, degree + 1))))
    return Permutation(images)


@st.composite
def diagrams(draw, r, brauer=False):
    """A random set partition (or perfect matching) of the 2r dot codes."""
    codes = draw(st.permutations(list(range(2 * r))))
    if brauer:
        return SetPartitionDiagram.from_code_blocks(r, [codes[i : i + 2] for i in range(0, 2 * r, 2)])
    labels = draw(st.lists(st.integers(0, 2 * r - 1), min_size=2 * r, max_size=2 * r))
    blocks = {}
    for c, k in zip(codes, labels):
        blocks.setdefault(k, []).append(c)
    return SetPartitionDiagram.from_code_blocks(r, blocks.values())


def random_diagram(rng: random.Random, r: int) -> SetPartitionDiagram:
    labels = [rng.randrange(2 * r) for _ in range(2 * r)]
    blocks = {}
    for c, k in enumerate(labels):
        blocks.setdefault(k, []).append(c)
    return SetPartitionDiagram.from_code_blocks(r, blocks.values())


@pytest.fixture
def rng():
    return random.Random(20261014)
