import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from graphent.graph import Arc, GraphStateSpec, QubitPrep  # noqa: E402

PI = math.pi
GRAPH_DIR = Path(__file__).resolve().parent.parent / "graphs"


def chain(phi01=PI / 2, phi12=PI / 2, preps=None):
    """The three-qubit chain 0 -> 1 -> 2."""
    preps = preps or [(0.0, 0.0)] * 3
    return GraphStateSpec(
        3,
        (Arc(0, 1, phi01), Arc(1, 2, phi12)),
        tuple(QubitPrep(a, t) for a, t in preps),
    )


def random_spec(rng: np.random.Generator, n_min=2, n_max=8, p_arc=0.35,
                p_back=0.4) -> GraphStateSpec:
    """Random digraph; a fraction of arcs get an antiparallel partner."""
    n = int(rng.integers(n_min, n_max + 1))
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p_arc:
                a, b = (i, j) if rng.random() < 0.5 else (j, i)
                arcs.append(Arc(a, b, float(rng.uniform(-PI, PI))))
                if rng.random() < p_back:
                    arcs.append(Arc(b, a, float(rng.uniform(-PI, PI))))
    preps = tuple(
        QubitPrep(float(rng.uniform(-PI, PI)), float(rng.uniform(0, PI)))
        for _ in range(n)
    )
    return GraphStateSpec(n, tuple(arcs), preps)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
