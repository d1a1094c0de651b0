from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from dissect.burnside.exceptions import BoundaryError, DiagramError, MatchingError

__all__ = [
    "Matching",
    "Slice",
    "SliceWord",
    "TangleDiagram",
    "CircleSet",
    "UnionFind",
    "enumerate_matchings",
    "circles",
    "circles_with_tangle",
    "trace",
    "compose",
    "normalize",
    "resolve",
    "identity",
    "cup",
    "cap",
    "crossing",
    "plat_closure",
    "parse_diagram",
    "load_diagram",
    "dump_diagram",
]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_PLANAR", "CRITICAL"))

Node = tuple[int, int]


class UnionFind:
    def __init__(self, items: Iterable = ()):
        self.parent = {}
        self.rank = {}
        for item in items:
            self.add(item)

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def groups(self) -> list[list]:
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


@dataclass(frozen=True, order=True)
class Matching:
    """A crossingless matching on ``2n`` points.

    Points are stored 0-based; ``pairs[i]`` is the partner of point ``i``. The external
    representation (keys, JSON, DSL) is 1-based.
    """

    n: int
    pairs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if self.n < 0 or len(self.pairs) != 2 * self.n:
            raise MatchingError(f"Expected {2 * self.n} pair entries, got {len(self.pairs)}")

        for i, j in enumerate(self.pairs):
            if not 0 <= j < 2 * self.n or j == i or self.pairs[j] != i:
                raise MatchingError(f"Not a fixed-point-free involution: {self.pairs}")

        arcs = self.arcs
        for i, j in arcs:
            for k, l in arcs:
                if i < k < j < l:
                    raise MatchingError(f"Arcs ({i + 1},{j + 1}) and ({k + 1},{l + 1}) cross")

    @classmethod
    def from_pairs(cls, pairs: Sequence[int]) -> Matching:
        if len(pairs) % 2:
            raise MatchingError(f"Odd number of points: {len(pairs)}")
        return cls(len(pairs) // 2, tuple(p - 1 for p in pairs))

    @classmethod
    def from_key(cls, key: str) -> Matching:
        if not key:
            return cls(0, ())
        try:
            return cls.from_pairs([int(p) for p in key.split(",")])
        except ValueError:
            raise MatchingError(f"Invalid matching key: {key!r}")

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j in enumerate(self.pairs) if i < j)

    @property
    def key(self) -> str:
        return ",".join(str(p + 1) for p in self.pairs)

    def to_json(self) -> list[int]:
        return [p + 1 for p in self.pairs]

    def __str__(self) -> str:
        return self.key


@lru_cache(maxsize=None)
def _arc_systems(lo: int, hi: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    if lo >= hi:
        return ((),)

    result = []
    for j in range(lo + 1, hi, 2):
        for inner in _arc_systems(lo + 1, j):
            for outer in _arc_systems(j + 1, hi):
                result.append(((lo, j),) + inner + outer)
    return tuple(result)


@lru_cache(maxsize=None)
def _matchings(n: int) -> tuple[Matching, ...]:
    matchings = []
    for arcs in _arc_systems(0, 2 * n):
        pairs = [0] * (2 * n)
        for i, j in arcs:
            pairs[i] = j
            pairs[j] = i
        matchings.append(Matching(n, tuple(pairs)))
    return tuple(sorted(matchings, key=lambda m: m.pairs))


def enumerate_matchings(n: int) -> list[Matching]:
    """Return all crossingless matchings on ``2n`` points, ordered lexicographically by pair array."""
    if n < 0:
        raise MatchingError(f"Negative arc count: {n}")
    return list(_matchings(n))


@dataclass(frozen=True)
class Slice:
    kind: str
    index: int = 0
    crossing: int = 0

    def __post_init__(self):
        if self.kind not in ("id", "cup", "cap", "x"):
            raise DiagramError(f"Unknown slice kind: {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "id":
            return "id"
        if self.kind == "x":
            return f"x {self.index} {self.crossing}"
        return f"{self.kind} {self.index}"

    def to_json(self) -> dict:
        record = {"kind": self.kind}
        if self.kind != "id":
            record["index"] = self.index
        if self.kind == "x":
            record["crossing"] = self.crossing
        return record


IDENTITY_SLICE = Slice("id")


def cup(i: int) -> Slice:
    return Slice("cup", i)


def cap(i: int) -> Slice:
    return Slice("cap", i)


def crossing(i: int, c: int) -> Slice:
    return Slice("x", i, c)


def _widths(left: int, slices: Sequence[Slice]) -> tuple[int, ...]:
    widths = [left]
    k = left
    for j, s in enumerate(slices):
        if s.kind == "cup":
            if not 1 <= s.index <= k + 1:
                raise DiagramError(f"Slice {j}: cup {s.index} on {k} strands")
            k += 2
        elif s.kind == "cap":
            if not 1 <= s.index <= k - 1:
                raise DiagramError(f"Slice {j}: cap {s.index} on {k} strands")
            k -= 2
        elif s.kind == "x":
            if not 1 <= s.index <= k - 1:
                raise DiagramError(f"Slice {j}: crossing at {s.index} on {k} strands")
        widths.append(k)
    return tuple(widths)


@dataclass(frozen=True)
class SliceWord:
    """A tangle diagram as a word of elementary slices read left to right.

    Level ``j`` sits between slice ``j - 1`` and slice ``j``; level 0 is the left boundary.
    """

    left_pts: int
    slices: tuple[Slice, ...] = ()
    closed_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(self.slices))
        if self.left_pts < 0 or self.left_pts % 2:
            raise DiagramError(f"Boundary point count must be even, got {self.left_pts}")
        if self.closed_loops < 0:
            raise DiagramError(f"Negative closed loop count: {self.closed_loops}")

        widths = _widths(self.left_pts, self.slices)
        if widths[-1] % 2:
            raise DiagramError(f"Odd right boundary: {widths[-1]}")

        indices = sorted(s.crossing for s in self.slices if s.kind == "x")
        if indices != list(range(1, len(indices) + 1)):
            raise DiagramError(f"Crossing indices must be 1..{len(indices)}, got {indices}")

    @cached_property
    def widths(self) -> tuple[int, ...]:
        return _widths(self.left_pts, self.slices)

    @property
    def right_pts(self) -> int:
        return self.widths[-1]

    @cached_property
    def crossings(self) -> tuple[tuple[int, Slice], ...]:
        """The crossing slices with their slice positions, ordered by crossing index."""
        found = [(j, s) for j, s in enumerate(self.slices) if s.kind == "x"]
        return tuple(sorted(found, key=lambda item: item[1].crossing))

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def is_flat(self) -> bool:
        return not self.crossings

    @property
    def key(self) -> str:
        return f"{self.left_pts}:{';'.join(str(s) for s in self.slices)}:{self.closed_loops}"

    def to_json(self) -> dict:
        return {
            "left": self.left_pts,
            "right": self.right_pts,
            "slices": [s.to_json() for s in self.slices],
            "closed_loops": self.closed_loops,
        }


TangleDiagram = SliceWord


def identity(k: int) -> SliceWord:
    return SliceWord(k)


@dataclass(frozen=True)
class CircleSet:
    """Circles of a closed-up diagram in canonical order.

    ``circles`` holds the boundary points touched by each circle; free loops have none.
    ``nodes`` holds the diagram nodes ``(level, position)`` of each circle.
    """

    circles: tuple[tuple[int, ...], ...]
    nodes: tuple[tuple[Node, ...], ...]

    def __len__(self) -> int:
        return len(self.circles)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.circles)

    def circle_of_point(self, point: int) -> int:
        for idx, points in enumerate(self.circles):
            if point in points:
                return idx
        raise BoundaryError(f"Point {point} is not on any circle")

    def circle_of_node(self, node: Node) -> int:
        return self._node_index[node]

    @cached_property
    def _node_index(self) -> dict[Node, int]:
        return {node: idx for idx, nodes in enumerate(self.nodes) for node in nodes}

    def to_json(self) -> list[list[int]]:
        return [[p + 1 for p in points] for points in self.circles]


def circles(a: Matching, b: Matching) -> CircleSet:
    """Trace the circles formed by ``a`` and the mirror of ``b`` on shared points."""
    if a.n != b.n:
        raise BoundaryError(f"Matchings on {2 * a.n} and {2 * b.n} points")

    uf = UnionFind(range(2 * a.n))
    for i, j in a.arcs + b.arcs:
        uf.union(i, j)

    found = sorted(tuple(sorted(group)) for group in uf.groups())
    return CircleSet(tuple(found), tuple(() for _ in found))


def _slice_edges(j: int, s: Slice, width: int, bit: Optional[int]) -> list[tuple[Node, Node]]:
    if s.kind == "id" or (s.kind == "x" and not bit):
        return [((j, p), (j + 1, p)) for p in range(width)]

    t = s.index - 1
    if s.kind == "cup":
        edges = [((j, p), (j + 1, p if p < t else p + 2)) for p in range(width)]
        edges.append(((j + 1, t), (j + 1, t + 1)))
    elif s.kind == "cap":
        edges = [((j, t), (j, t + 1))]
        edges += [((j, p), (j + 1, p if p < t else p - 2)) for p in range(width) if p not in (t, t + 1)]
    else:
        edges = [((j, t), (j, t + 1)), ((j + 1, t), (j + 1, t + 1))]
        edges += [((j, p), (j + 1, p)) for p in range(width) if p not in (t, t + 1)]
    return edges


def tangle_edges(diagram: SliceWord, resolution: Optional[Sequence[int]] = None) -> list[tuple[Node, Node]]:
    """Edges of the resolved 1-manifold of ``diagram`` on its level-aligned node set."""
    if resolution is None:
        if not diagram.is_flat:
            raise DiagramError("Diagram has crossings, a resolution is required")
        resolution = ()
    elif len(resolution) != diagram.n_crossings:
        raise DiagramError(f"Resolution of length {len(resolution)} for {diagram.n_crossings} crossings")

    widths = diagram.widths
    edges = []
    for j, s in enumerate(diagram.slices):
        bit = resolution[s.crossing - 1] if s.kind == "x" else None
        edges.extend(_slice_edges(j, s, widths[j], bit))
    return edges


def diagram_nodes(diagram: SliceWord) -> list[Node]:
    return [(j, p) for j, width in enumerate(diagram.widths) for p in range(width)]


def trace(a: Matching, diagram: SliceWord, b: Matching, resolution: Optional[Sequence[int]] = None) -> CircleSet:
    """Trace ``a``, the (resolved) diagram and the mirror of ``b`` into circles.

    Left boundary point ``p`` is numbered ``p``, right boundary point ``q`` is numbered
    ``left_pts + q``. Circles touching the boundary come first, ordered by their smallest
    boundary point, then free loops ordered by their smallest node, then carried loops.
    """
    if 2 * a.n != diagram.left_pts or 2 * b.n != diagram.right_pts:
        raise BoundaryError(
            f"Closing a ({diagram.left_pts},{diagram.right_pts}) diagram with matchings on {2 * a.n} and {2 * b.n}"
        )

    last = len(diagram.slices)
    uf = UnionFind(diagram_nodes(diagram))
    for u, w in tangle_edges(diagram, resolution):
        uf.union(u, w)
    for i, j in a.arcs:
        uf.union((0, i), (0, j))
    for i, j in b.arcs:
        uf.union((last, i), (last, j))

    bounded = []
    free = []
    for group in uf.groups():
        points = set()
        for level, pos in group:
            if level == 0:
                points.add(pos)
            if level == last:
                points.add(diagram.left_pts + pos)
        entry = (tuple(sorted(points)), tuple(sorted(group)))
        (bounded if points else free).append(entry)

    bounded.sort()
    free.sort(key=lambda entry: entry[1])
    ordered = bounded + free + [((), ())] * diagram.closed_loops
    return CircleSet(tuple(points for points, _ in ordered), tuple(nodes for _, nodes in ordered))


def circles_with_tangle(a: Matching, diagram: SliceWord, b: Matching) -> CircleSet:
    if not diagram.is_flat:
        raise DiagramError("circles_with_tangle expects a flat diagram")
    return trace(a, diagram, b)


def normalize(word: SliceWord) -> SliceWord:
    """Drop identity slices, turn adjacent cup/cap loops into closed loops and straighten zigzags."""
    stack = []
    loops = word.closed_loops
    for s in word.slices:
        if s.kind == "id":
            continue

        if s.kind == "cap" and stack and stack[-1].kind == "cup":
            delta = s.index - stack[-1].index
            if delta == 0:
                stack.pop()
                loops += 1
                continue
            if delta in (-1, 1):
                stack.pop()
                continue

        stack.append(s)
    return SliceWord(word.left_pts, tuple(stack), loops)


def compose(first: SliceWord, second: SliceWord) -> SliceWord:
    """Glue ``second`` to the right of ``first``; crossings of ``second`` are renumbered after ``first``'s."""
    if first.right_pts != second.left_pts:
        raise BoundaryError(f"Cannot glue {first.right_pts} right points to {second.left_pts} left points")

    shift = first.n_crossings
    shifted = tuple(crossing(s.index, s.crossing + shift) if s.kind == "x" else s for s in second.slices)
    word = SliceWord(first.left_pts, first.slices + shifted, first.closed_loops + second.closed_loops)
    return normalize(word)


def resolve(diagram: SliceWord, resolution: Sequence[int]) -> SliceWord:
    """Replace crossing ``c`` by an identity slice if ``resolution[c - 1]`` is 0, else by a cap then a cup."""
    if len(resolution) != diagram.n_crossings:
        raise DiagramError(f"Resolution of length {len(resolution)} for {diagram.n_crossings} crossings")

    slices = []
    for s in diagram.slices:
        if s.kind != "x":
            slices.append(s)
        elif resolution[s.crossing - 1]:
            slices.extend((cap(s.index), cup(s.index)))
        else:
            slices.append(IDENTITY_SLICE)
    return SliceWord(diagram.left_pts, tuple(slices), diagram.closed_loops)


def plat_closure(twists: int) -> SliceWord:
    """Close ``twists`` half twists of the middle strands of four strands with cups and caps."""
    slices = [cup(1), cup(3)]
    slices += [crossing(2, c) for c in range(1, twists + 1)]
    slices += [cap(3), cap(1)]
    return SliceWord(0, tuple(slices))


def parse_diagram(text: str) -> SliceWord:
    """Parse the line based slice DSL.

    One slice per line: ``id``, ``cup i``, ``cap i`` or ``x i c``. An optional ``left k`` line before
    the first slice sets the number of left boundary points. ``#`` starts a comment.
    """
    left = 0
    slices = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        parts = line.split()
        try:
            if parts[0] == "left" and len(parts) == 2 and not slices:
                left = int(parts[1])
            elif parts == ["id"]:
                slices.append(IDENTITY_SLICE)
            elif parts[0] in ("cup", "cap") and len(parts) == 2:
                slices.append(Slice(parts[0], int(parts[1])))
            elif parts[0] == "x" and len(parts) == 3:
                slices.append(crossing(int(parts[1]), int(parts[2])))
            else:
                raise DiagramError(f"Line {lineno}: unrecognised slice {raw.strip()!r}")
        except ValueError:
            raise DiagramError(f"Line {lineno}: invalid number in {raw.strip()!r}")

    return SliceWord(left, tuple(slices))


def load_diagram(path) -> SliceWord:
    with open(path, "r") as fh:
        return parse_diagram(fh.read())


def dump_diagram(word: SliceWord) -> str:
    lines = []
    if word.left_pts:
        lines.append(f"left {word.left_pts}")
    lines.extend(str(s) for s in word.slices)
    return "\n".join(lines) + "\n"
