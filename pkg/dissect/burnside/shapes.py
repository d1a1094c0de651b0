from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from dissect.burnside.exceptions import ShapeError
from dissect.burnside.planar import Matching, SliceWord

__all__ = [
    "PairObject",
    "TripleObject",
    "ShapeObject",
    "ShapeMultimorphism",
    "Tree",
    "ChangeOfTree",
    "basic_tree",
    "graft",
    "flatten",
    "enumerate_trees",
]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_SHAPES", "CRITICAL"))


@dataclass(frozen=True)
class PairObject:
    """A pair of matchings ``(a, b)`` on the left (``"m"``) or right (``"n"``) boundary."""

    a: Matching
    b: Matching
    side: str = "m"

    def __post_init__(self):
        if self.side not in ("m", "n"):
            raise ShapeError(f"Unknown side {self.side!r}")
        if self.a.n != self.b.n:
            raise ShapeError(f"Pair of matchings on {2 * self.a.n} and {2 * self.b.n} points")

    @property
    def key(self) -> str:
        return f"{self.side}({self.a.key};{self.b.key})"

    def to_json(self) -> dict:
        return {"type": "pair", "side": self.side, "a": self.a.to_json(), "b": self.b.to_json()}


@dataclass(frozen=True)
class TripleObject:
    """A resolution ``v`` of the crossings of ``tangle`` closed by ``a`` on the left and ``b`` on the right."""

    v: tuple[int, ...]
    a: Matching
    tangle: SliceWord
    b: Matching

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(self.v))
        if len(self.v) != self.tangle.n_crossings or any(bit not in (0, 1) for bit in self.v):
            raise ShapeError(f"Invalid resolution {self.v} for {self.tangle.n_crossings} crossings")
        if 2 * self.a.n != self.tangle.left_pts or 2 * self.b.n != self.tangle.right_pts:
            raise ShapeError("Matchings do not fit the tangle boundary")

    @property
    def key(self) -> str:
        return f"t({''.join(map(str, self.v))};{self.a.key};{self.b.key})"

    def to_json(self) -> dict:
        return {
            "type": "triple",
            "v": "".join(map(str, self.v)),
            "a": self.a.to_json(),
            "b": self.b.to_json(),
        }


ShapeObject = Union[PairObject, TripleObject]


def _check_chain(pairs: Sequence[PairObject], start: Matching, end: Matching, side: str) -> None:
    point = start
    for pair in pairs:
        if not isinstance(pair, PairObject) or pair.side != side:
            raise ShapeError(f"Expected a {side}-pair, got {pair}")
        if pair.a != point:
            raise ShapeError(f"Chain break at {pair.key}")
        point = pair.b
    if point != end:
        raise ShapeError(f"Chain ends at {point.key}, expected {end.key}")


@dataclass(frozen=True)
class ShapeMultimorphism:
    """The unique multimorphism from ``sources`` to ``target``; construction fails when none exists."""

    sources: tuple[ShapeObject, ...]
    target: ShapeObject

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        target = self.target

        if isinstance(target, PairObject):
            _check_chain(self.sources, target.a, target.b, target.side)
            return

        triples = [idx for idx, obj in enumerate(self.sources) if isinstance(obj, TripleObject)]
        if len(triples) != 1:
            raise ShapeError(f"Expected exactly one triple among the sources, got {len(triples)}")

        k = triples[0]
        triple = self.sources[k]
        if triple.tangle != target.tangle:
            raise ShapeError("Source and target triples have different tangles")
        if any(x > y for x, y in zip(triple.v, target.v)):
            raise ShapeError(f"Resolution {triple.v} is not below {target.v}")

        _check_chain(self.sources[:k], target.a, triple.a, "m")
        _check_chain(self.sources[k + 1 :], triple.b, target.b, "n")

    @property
    def arity(self) -> int:
        return len(self.sources)

    @property
    def is_tangle(self) -> bool:
        return isinstance(self.target, TripleObject)

    @property
    def triple_index(self) -> Optional[int]:
        for idx, obj in enumerate(self.sources):
            if isinstance(obj, TripleObject):
                return idx
        return None

    @property
    def is_identity(self) -> bool:
        return self.sources == (self.target,)

    @property
    def key(self) -> str:
        return f"{','.join(obj.key for obj in self.sources)}->{self.target.key}"

    def to_json(self) -> dict:
        return {"sources": [obj.to_json() for obj in self.sources], "target": self.target.to_json()}


@dataclass(frozen=True)
class Tree:
    """A decorated rooted plane tree.

    An edge tree has no vertex and a single leaf, its root. A vertex tree carries the multimorphism at
    its root vertex and one subtree per source of that multimorphism.
    """

    root: ShapeObject
    vertex: Optional[ShapeMultimorphism] = None
    children: tuple[Tree, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if self.vertex is None:
            if self.children:
                raise ShapeError("An edge tree has no children")
            return

        if self.vertex.target != self.root:
            raise ShapeError(f"Vertex target {self.vertex.target.key} differs from root {self.root.key}")
        if tuple(child.root for child in self.children) != self.vertex.sources:
            raise ShapeError("Children do not match the vertex sources")

    @classmethod
    def edge(cls, obj: ShapeObject) -> Tree:
        return cls(obj)

    @property
    def is_edge(self) -> bool:
        return self.vertex is None

    @property
    def leaves(self) -> tuple[ShapeObject, ...]:
        if self.vertex is None:
            return (self.root,)
        return tuple(leaf for child in self.children for leaf in child.leaves)

    @property
    def vertex_count(self) -> int:
        if self.vertex is None:
            return 0
        return 1 + sum(child.vertex_count for child in self.children)

    def vertices(self, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Tree]]:
        """Yield ``(path, subtree)`` for every vertex in preorder; a path lists child positions from the root."""
        if self.vertex is None:
            return
        yield path, self
        for idx, child in enumerate(self.children):
            yield from child.vertices(path + (idx,))

    def leaf_paths(self, path: tuple[int, ...] = ()) -> tuple[tuple[int, ...], ...]:
        if self.vertex is None:
            return (path,)
        return tuple(leaf for idx, child in enumerate(self.children) for leaf in child.leaf_paths(path + (idx,)))

    def subtree(self, path: Sequence[int]) -> Tree:
        tree = self
        for idx in path:
            tree = tree.children[idx]
        return tree

    @property
    def key(self) -> str:
        if self.vertex is None:
            return self.root.key
        return f"[{self.root.key}<-{','.join(child.key for child in self.children)}]"

    def to_json(self) -> dict:
        if self.vertex is None:
            return {"edge": self.root.to_json()}
        return {"vertex": self.vertex.to_json(), "children": [child.to_json() for child in self.children]}


def basic_tree(mor: ShapeMultimorphism) -> Tree:
    return Tree(mor.target, mor, tuple(Tree.edge(obj) for obj in mor.sources))


def graft(children: Sequence[Tree], parent: Tree) -> Tree:
    """Glue ``children`` onto the leaves of ``parent``, left to right."""
    children = list(children)
    if len(children) != len(parent.leaves):
        raise ShapeError(f"{len(children)} trees for {len(parent.leaves)} leaves")

    def rebuild(tree: Tree) -> Tree:
        if tree.vertex is None:
            child = children.pop(0)
            if child.root != tree.root:
                raise ShapeError(f"Cannot graft a tree with root {child.root.key} onto leaf {tree.root.key}")
            return child
        return Tree(tree.root, tree.vertex, tuple(rebuild(c) for c in tree.children))

    return rebuild(parent)


def flatten(tree: Tree) -> ShapeMultimorphism:
    return ShapeMultimorphism(tree.leaves, tree.root)


@dataclass(frozen=True)
class ChangeOfTree:
    source: Tree
    target: Tree

    def __post_init__(self):
        if flatten(self.source) != flatten(self.target):
            raise ShapeError("Trees with different multicomposites have no change-of-tree morphism")

    @property
    def is_identity(self) -> bool:
        return self.source == self.target


def _splits(length: int, max_parts: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Cut ``range(length)`` into consecutive, possibly empty, parts; at most ``max_parts`` of them."""
    if length == 0:
        yield ()

    def cuts(start: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if remaining == 1:
            yield (length,)
            return
        for cut in range(start, length + 1):
            for rest in cuts(cut, remaining - 1):
                yield (cut,) + rest

    for parts in range(1, max_parts + 1):
        for ends in cuts(0, parts):
            starts = (0,) + ends[:-1]
            yield tuple(zip(starts, ends))


def _chain_points(target: ShapeObject, segment: tuple[ShapeObject, ...]) -> tuple[list, int]:
    """The matching at every boundary between consecutive sources, and the position of the triple."""
    points = [target.a] + [obj.b for obj in segment]
    if isinstance(target, PairObject):
        return points, -1
    return points, next(idx for idx, obj in enumerate(segment) if isinstance(obj, TripleObject))


def _part_objects(target: ShapeObject, segment: tuple[ShapeObject, ...], parts) -> list[list[ShapeObject]]:
    """Every choice of intermediate object per part; only the part holding the triple has more than one."""
    points, k = _chain_points(target, segment)
    choices = []
    for start, end in parts:
        if isinstance(target, PairObject):
            choices.append([PairObject(points[start], points[end], target.side)])
        elif start <= k < end:
            low = segment[k].v
            options = []
            for u in _between(low, target.v):
                options.append(TripleObject(u, points[start], target.tangle, points[end]))
            choices.append(options)
        elif end <= k:
            choices.append([PairObject(points[start], points[end], "m")])
        else:
            choices.append([PairObject(points[start], points[end], "n")])
    return choices


def _between(low: tuple[int, ...], high: tuple[int, ...]) -> list[tuple[int, ...]]:
    options = [()]
    for lo, hi in zip(low, high):
        options = [u + (bit,) for u in options for bit in range(lo, hi + 1)]
    return options


@lru_cache(maxsize=None)
def _trees(target: ShapeObject, segment: tuple[ShapeObject, ...], limit: int) -> tuple[Tree, ...]:
    """All trees with root ``target``, leaves ``segment`` and at most ``limit`` vertices."""
    result = []
    if segment == (target,):
        result.append(Tree.edge(target))
    if limit < 1:
        return tuple(result)

    for parts in _splits(len(segment), len(segment) + limit - 1):
        for objects in _product(_part_objects(target, segment, parts)):
            try:
                vertex = ShapeMultimorphism(tuple(objects), target)
            except ShapeError:
                continue
            for forest in _forests(objects, [segment[s:e] for s, e in parts], limit - 1):
                result.append(Tree(target, vertex, forest))
    return tuple(result)


def _product(choices: list[list[ShapeObject]]) -> Iterator[tuple[ShapeObject, ...]]:
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for rest in _product(choices[1:]):
            yield (head,) + rest


def _forests(targets: Sequence[ShapeObject], segments: Sequence[tuple], limit: int) -> Iterator[tuple[Tree, ...]]:
    if not targets:
        yield ()
        return
    for tree in _trees(targets[0], tuple(segments[0]), limit):
        for rest in _forests(targets[1:], segments[1:], limit - tree.vertex_count):
            yield (tree,) + rest


def enumerate_trees(mor: ShapeMultimorphism, max_vertices: int) -> list[Tree]:
    """All trees with at least one vertex that flatten to ``mor`` and have at most ``max_vertices`` vertices."""
    trees = [tree for tree in _trees(mor.target, mor.sources, max_vertices) if not tree.is_edge]
    log.debug("Enumerated %d trees for %s within %d vertices", len(trees), mor.key, max_vertices)
    return trees
