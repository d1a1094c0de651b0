import pytest

from dissect.burnside.exceptions import ShapeError
from dissect.burnside.planar import SliceWord, crossing, enumerate_matchings
from dissect.burnside.shapes import (
    ChangeOfTree,
    PairObject,
    ShapeMultimorphism,
    Tree,
    TripleObject,
    basic_tree,
    enumerate_trees,
    flatten,
    graft,
)

M1 = enumerate_matchings(1)
TWIST = SliceWord(2, (crossing(1, 1),))


@pytest.fixture
def chain(a0, a1):
    """Pairs x = (a0, a1), y = (a1, a0) and their composite z = (a0, a0)."""
    return PairObject(a0, a1), PairObject(a1, a0), PairObject(a0, a0)


def test_objects(a0, a1) -> None:
    assert PairObject(a0, a1).key == "m(2,1,4,3;4,3,2,1)"
    assert PairObject(a0, a1, "n").to_json()["side"] == "n"
    assert TripleObject((1,), M1[0], TWIST, M1[0]).key == "t(1;2,1;2,1)"

    with pytest.raises(ShapeError):
        PairObject(a0, a1, "x")
    with pytest.raises(ShapeError):
        PairObject(a0, M1[0])
    with pytest.raises(ShapeError):
        TripleObject((), M1[0], TWIST, M1[0])
    with pytest.raises(ShapeError):
        TripleObject((0,), a0, TWIST, M1[0])


def test_pair_multimorphisms(chain, a0) -> None:
    x, y, z = chain
    mor = ShapeMultimorphism((x, y), z)
    assert mor.arity == 2
    assert not mor.is_tangle
    assert mor.triple_index is None
    assert mor.key == f"{x.key},{y.key}->{z.key}"

    assert ShapeMultimorphism((z,), z).is_identity
    assert ShapeMultimorphism((), z).arity == 0

    with pytest.raises(ShapeError):
        ShapeMultimorphism((y, x), z)
    with pytest.raises(ShapeError):
        ShapeMultimorphism((x,), z)
    with pytest.raises(ShapeError):
        ShapeMultimorphism((x, PairObject(a0, a0, "n")), PairObject(a0, a0))


def test_triple_multimorphisms() -> None:
    a = M1[0]
    low = TripleObject((0,), a, TWIST, a)
    high = TripleObject((1,), a, TWIST, a)
    left, right = PairObject(a, a, "m"), PairObject(a, a, "n")

    mor = ShapeMultimorphism((left, low, right), high)
    assert mor.is_tangle
    assert mor.triple_index == 1

    with pytest.raises(ShapeError):
        ShapeMultimorphism((high,), low)
    with pytest.raises(ShapeError):
        ShapeMultimorphism((left,), high)
    with pytest.raises(ShapeError):
        ShapeMultimorphism((right, low), high)
    with pytest.raises(ShapeError):
        ShapeMultimorphism((low, low), high)


def test_trees(chain) -> None:
    x, y, z = chain
    mor = ShapeMultimorphism((x, y), z)
    tree = basic_tree(mor)
    assert tree.leaves == (x, y)
    assert tree.leaf_paths() == ((0,), (1,))
    assert tree.vertex_count == 1
    assert [path for path, _ in tree.vertices()] == [()]
    assert tree.subtree((1,)) == Tree.edge(y)
    assert flatten(tree) == mor

    edge = Tree.edge(z)
    assert edge.is_edge
    assert edge.leaves == (z,)
    assert edge.leaf_paths() == ((),)

    with pytest.raises(ShapeError):
        Tree(x, mor, (Tree.edge(x), Tree.edge(y)))
    with pytest.raises(ShapeError):
        Tree(z, mor, (Tree.edge(x),))
    with pytest.raises(ShapeError):
        Tree(z, None, (Tree.edge(x),))


def test_graft(chain, a1) -> None:
    x, y, z = chain
    w = PairObject(a1, a1)
    inner = basic_tree(ShapeMultimorphism((w, y), y))
    outer = basic_tree(ShapeMultimorphism((x, y), z))

    grafted = graft([Tree.edge(x), inner], outer)
    assert grafted.vertex_count == 2
    assert grafted.leaves == (x, w, y)
    assert grafted.leaf_paths() == ((0,), (1, 0), (1, 1))
    assert flatten(grafted) == ShapeMultimorphism((x, w, y), z)

    with pytest.raises(ShapeError):
        graft([inner], outer)
    with pytest.raises(ShapeError):
        graft([inner, Tree.edge(y)], outer)


def test_change_of_tree(chain) -> None:
    x, y, z = chain
    outer = basic_tree(ShapeMultimorphism((x, y), z))
    unary = basic_tree(ShapeMultimorphism((z,), z))
    stacked = graft([outer], unary)

    change = ChangeOfTree(stacked, outer)
    assert not change.is_identity
    assert ChangeOfTree(outer, outer).is_identity

    with pytest.raises(ShapeError):
        ChangeOfTree(outer, basic_tree(ShapeMultimorphism((z,), z)))


@pytest.mark.parametrize("max_vertices, expected", [(1, 1), (2, 7)])
def test_enumerate_trees_pairs(chain, max_vertices: int, expected: int) -> None:
    x, y, z = chain
    mor = ShapeMultimorphism((x, y), z)
    trees = enumerate_trees(mor, max_vertices)
    assert len(trees) == expected
    assert len({tree.key for tree in trees}) == expected
    assert basic_tree(mor) in trees
    for tree in trees:
        assert not tree.is_edge
        assert 1 <= tree.vertex_count <= max_vertices
        assert flatten(tree) == mor


@pytest.mark.parametrize("max_vertices, expected", [(1, 1), (2, 5)])
def test_enumerate_trees_triples(max_vertices: int, expected: int) -> None:
    a = M1[0]
    mor = ShapeMultimorphism((TripleObject((0,), a, TWIST, a),), TripleObject((1,), a, TWIST, a))
    trees = enumerate_trees(mor, max_vertices)
    assert len(trees) == expected
    assert all(flatten(tree) == mor for tree in trees)


def test_enumerate_trees_identity(chain) -> None:
    _, _, z = chain
    trees = enumerate_trees(ShapeMultimorphism((z,), z), 1)
    assert [tree.key for tree in trees] == [f"[{z.key}<-{z.key}]"]
