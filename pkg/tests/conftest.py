import itertools
import os

import numpy as np
import pytest

from dissect.burnside.phi import f2_rank
from dissect.burnside.planar import CircleSet, SliceWord, enumerate_matchings, load_diagram, trace


def absolute_path(filename):
    return os.path.join(os.path.dirname(__file__), filename)


def _edge_images(state: tuple[int, ...], old: CircleSet, new: CircleSet):
    """Images of a state under one bit flip; a state labels each circle 0 for the unit and 1 for ``X``."""
    targets = [sorted({new.circle_of_node(node) for node in nodes}) for nodes in old.nodes]
    out = [None] * len(new)
    for i, hit in enumerate(targets):
        if len(hit) == 1:
            out[hit[0]] = state[i] if out[hit[0]] is None else out[hit[0]] + state[i]

    if len(new) < len(old):
        merged = next(p for p in range(len(new)) if sum(hit == [p] for hit in targets) == 2)
        if out[merged] < 2:
            yield tuple(out)
        return

    i, (p, q) = next((i, hit) for i, hit in enumerate(targets) if len(hit) == 2)
    for labels in ((0, 1), (1, 0)) if state[i] == 0 else ((1, 1),):
        out[p], out[q] = labels
        yield tuple(out)


def direct_khovanov(diagram: SliceWord) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Dimensions and F2 homology of the Khovanov cube of a closed diagram, built from circle counts."""
    empty = enumerate_matchings(0)[0]
    n = diagram.n_crossings
    by_degree = [[] for _ in range(n + 1)]
    for v in itertools.product((0, 1), repeat=n):
        by_degree[sum(v)].append(v)

    circles, states, offsets, dims = {}, {}, {}, []
    for vertices in by_degree:
        offset = 0
        for v in vertices:
            circles[v] = trace(empty, diagram, empty, v)
            states[v] = {state: idx for idx, state in enumerate(itertools.product((0, 1), repeat=len(circles[v])))}
            offsets[v] = offset
            offset += len(states[v])
        dims.append(offset)

    ranks = []
    for k in range(n):
        d = np.zeros((dims[k + 1], dims[k]), dtype=np.uint8)
        for v in by_degree[k]:
            for c in range(n):
                if v[c]:
                    continue
                w = v[:c] + (1,) + v[c + 1 :]
                for state, col in states[v].items():
                    for image in _edge_images(state, circles[v], circles[w]):
                        d[offsets[w] + states[w][image], offsets[v] + col] ^= 1
        ranks.append(f2_rank(d))

    homology = []
    for k, dim in enumerate(dims):
        homology.append(dim - (ranks[k] if k < n else 0) - (ranks[k - 1] if k else 0))
    return tuple(dims), tuple(homology)


@pytest.fixture
def a0():
    """The matching 1-2, 3-4."""
    return enumerate_matchings(2)[0]


@pytest.fixture
def a1():
    """The matching 1-4, 2-3."""
    return enumerate_matchings(2)[1]


@pytest.fixture
def circle():
    return load_diagram(absolute_path("data/circle.txt"))


@pytest.fixture
def unknot():
    return load_diagram(absolute_path("data/unknot.txt"))


@pytest.fixture
def hopf():
    return load_diagram(absolute_path("data/hopf.txt"))


@pytest.fixture
def trefoil():
    return load_diagram(absolute_path("data/trefoil.txt"))


@pytest.fixture
def corrupted_signs():
    return absolute_path("data/signs_corrupted.json")
