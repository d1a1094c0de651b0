from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Optional, Sequence

from dissect.burnside.exceptions import BoundaryError, FrameError
from dissect.burnside.planar import (
    CircleSet,
    Matching,
    SliceWord,
    UnionFind,
    circles,
    diagram_nodes,
    tangle_edges,
    trace,
)

__all__ = [
    "BoundaryCircle",
    "FrameComponent",
    "FrameSurface",
    "Event",
    "GluingGraph",
    "SaddleDecomposition",
    "build_arc_frame",
    "build_tangle_frame",
    "saddle_decompose",
    "glue_frame_reports",
]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_FRAMES", "CRITICAL"))

EVENT_KINDS = ("merge", "split", "birth", "death", "dot")


@dataclass(frozen=True, order=True)
class BoundaryCircle:
    """A boundary circle of a frame: circle ``index`` of input slot ``slot``, or of the output if ``slot`` is 0."""

    slot: int
    index: int

    @property
    def label(self) -> str:
        if self.slot == 0:
            return f"out:{self.index}"
        return f"in{self.slot}:{self.index}"


@dataclass(frozen=True)
class FrameComponent:
    pieces: tuple[str, ...]
    euler_char: int
    boundary: tuple[BoundaryCircle, ...]
    genus: int

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "euler_char": self.euler_char,
            "boundary": [b.label for b in self.boundary],
            "pieces": list(self.pieces),
        }


@dataclass(frozen=True)
class FrameSurface:
    """The abstract surface of a frame.

    ``slots`` holds the circle sets of the input slots in order, ``output`` the circle set of the
    output. Arc frames keep their matchings in ``matchings``; tangle frames keep the left chain in
    ``matchings``, the right chain in ``right`` and the diagram with its two resolutions.
    """

    slots: tuple[CircleSet, ...]
    output: CircleSet
    pieces: tuple[str, ...]
    gluings: tuple[tuple[str, str], ...]
    components: tuple[FrameComponent, ...]
    matchings: tuple[Matching, ...] = ()
    right: tuple[Matching, ...] = ()
    diagram: Optional[SliceWord] = None
    source_resolution: tuple[int, ...] = ()
    target_resolution: tuple[int, ...] = ()
    node_component: Mapping[Hashable, int] = field(default_factory=dict, compare=False, repr=False)

    @property
    def is_tangle(self) -> bool:
        return self.diagram is not None

    @property
    def euler_char(self) -> int:
        return sum(c.euler_char for c in self.components)

    def component_of(self, circle: BoundaryCircle) -> int:
        for idx, component in enumerate(self.components):
            if circle in component.boundary:
                return idx
        raise FrameError(f"No component carries boundary circle {circle.label}")

    def summary(self) -> tuple:
        return tuple(sorted((c.genus, c.euler_char, tuple(sorted(c.boundary))) for c in self.components))

    def report(self) -> dict:
        decomposition = saddle_decompose(self)
        return {
            "components": [c.to_json() for c in self.components],
            "steps": [e.to_json() for e in decomposition.steps],
        }


def _genus(euler_char: int, n_boundary: int) -> int:
    twice = 2 - euler_char - n_boundary
    if twice < 0 or twice % 2:
        raise FrameError(f"No orientable surface with euler characteristic {euler_char} and {n_boundary} boundaries")
    return twice // 2


def _assemble(
    roots: Sequence[Hashable],
    pieces: Mapping[Hashable, list[str]],
    euler: Mapping[Hashable, int],
    boundary: Mapping[Hashable, list[BoundaryCircle]],
) -> tuple[tuple[FrameComponent, ...], dict[Hashable, int]]:
    """Order components by their smallest output circle and compute their genus."""

    def output_key(root: Hashable) -> tuple[int, int]:
        outputs = [b.index for b in boundary[root] if b.slot == 0]
        return (min(outputs), 0) if outputs else (len(roots), 1)

    ordered = sorted(roots, key=output_key)
    components = []
    for root in ordered:
        circles_ = tuple(sorted(boundary[root]))
        components.append(
            FrameComponent(
                pieces=tuple(pieces[root]),
                euler_char=euler[root],
                boundary=circles_,
                genus=_genus(euler[root], len(circles_)),
            )
        )
    return tuple(components), {root: idx for idx, root in enumerate(ordered)}


def build_arc_frame(seq: Sequence[Matching]) -> FrameSurface:
    """Build the frame of the chain ``a_0, ..., a_m``.

    Each matching contributes one bridge per arc, each of the ``2n`` boundary points a rail. Input
    slot ``i`` is bounded by the circles of ``a_{i-1}`` and ``a_i``, the output by those of ``a_0`` and ``a_m``.
    """
    seq = tuple(seq)
    if not seq:
        raise FrameError("An arc frame needs at least one matching")

    n = seq[0].n
    if any(a.n != n for a in seq):
        raise BoundaryError(f"Mixed matching sizes in frame: {[a.n for a in seq]}")
    m = len(seq) - 1

    rails = UnionFind(range(2 * n))
    all_pieces = [f"rail:{p + 1}" for p in range(2 * n)]
    gluings = []
    bridges = {p: [] for p in range(2 * n)}
    for i, a in enumerate(seq):
        for p, q in a.arcs:
            name = f"bridge:{i}:{p + 1}-{q + 1}"
            all_pieces.append(name)
            gluings += [(name, f"rail:{p + 1}"), (name, f"rail:{q + 1}")]
            bridges[p].append(name)
            rails.union(p, q)

    slots = tuple(circles(seq[i - 1], seq[i]) for i in range(1, m + 1))
    output = circles(seq[0], seq[-1])

    roots = sorted({rails.find(p) for p in range(2 * n)})
    pieces = {root: [] for root in roots}
    rail_count = {root: 0 for root in roots}
    for p in range(2 * n):
        root = rails.find(p)
        rail_count[root] += 1
        pieces[root].append(f"rail:{p + 1}")
        pieces[root].extend(bridges[p])

    boundary = {root: [] for root in roots}
    for i, slot in enumerate(slots, 1):
        for idx, points in enumerate(slot.circles):
            boundary[rails.find(points[0])].append(BoundaryCircle(i, idx))
    for idx, points in enumerate(output.circles):
        boundary[rails.find(points[0])].append(BoundaryCircle(0, idx))

    euler = {root: rail_count[root] * (1 - m) // 2 for root in roots}
    components, index = _assemble(roots, {r: sorted(pieces[r]) for r in roots}, euler, boundary)

    node_component = {(i, p): index[rails.find(p)] for i in range(1, max(m, 1) + 1) for p in range(2 * n)}

    log.debug("Arc frame on %d matchings of %d arcs: %d components", m + 1, n, len(components))
    return FrameSurface(
        slots=slots,
        output=output,
        pieces=tuple(all_pieces),
        gluings=tuple(gluings),
        components=components,
        matchings=seq,
        node_component=node_component,
    )


def build_tangle_frame(
    v: Sequence[int],
    w: Sequence[int],
    a_seq: Sequence[Matching],
    diagram: SliceWord,
    b_seq: Sequence[Matching],
) -> FrameSurface:
    """Build the frame of ``(a_0, a_1), ..., (a_{k-1}, a_k), (v, a_k, T, b_0), (b_0, b_1), ..., (b_{l-1}, b_l)``.

    The middle region is a strip per arc of ``T_v`` and an annulus per closed loop of ``T_v``. Every
    crossing with ``v_c = 0`` and ``w_c = 1`` carries one saddle cell. The output is bounded by the
    circles of ``a_0``, ``T_w`` and ``b_l``.
    """
    v, w = tuple(v), tuple(w)
    a_seq, b_seq = tuple(a_seq), tuple(b_seq)
    if len(v) != diagram.n_crossings or len(w) != diagram.n_crossings:
        raise BoundaryError(f"Resolutions {v} and {w} for {diagram.n_crossings} crossings")
    if any(x > y for x, y in zip(v, w)):
        raise FrameError(f"Resolution {v} is not below {w}")
    if not a_seq or not b_seq:
        raise FrameError("A tangle frame needs at least one matching on each side")
    if any(2 * a.n != diagram.left_pts for a in a_seq):
        raise BoundaryError(f"Left matchings do not fit {diagram.left_pts} left points")
    if any(2 * b.n != diagram.right_pts for b in b_seq):
        raise BoundaryError(f"Right matchings do not fit {diagram.right_pts} right points")

    k, l = len(a_seq) - 1, len(b_seq) - 1
    last = len(diagram.slices)

    strands = UnionFind(diagram_nodes(diagram))
    for x, y in tangle_edges(diagram, v):
        strands.union(x, y)

    strand_groups = sorted(sorted(group) for group in strands.groups())
    frame = UnionFind()
    all_pieces = []
    strip_of = {}
    owned = {}
    euler_of = {}
    for idx, group in enumerate(strand_groups):
        name = f"strip:{idx}"
        item = strands.find(group[0])
        strip_of[item] = name
        frame.add(item)
        all_pieces.append(name)
        owned[item] = [name]
        is_arc = any(level in (0, last) for level, _ in group)
        euler_of[item] = 1 if is_arc else 0

    for c in range(diagram.closed_loops):
        item = ("loop", c)
        frame.add(item)
        all_pieces.append(f"loop:{c}")
        owned[item] = [f"loop:{c}"]
        euler_of[item] = 0

    gluings = []

    def attach(name: str, nodes: Sequence[tuple[int, int]]) -> None:
        items = [strands.find(node) for node in nodes]
        all_pieces.append(name)
        owned[items[0]].append(name)
        euler_of[items[0]] -= 1
        for item in items:
            gluings.append((name, strip_of[item]))
            frame.union(items[0], item)

    for i, a in enumerate(a_seq):
        for p, q in a.arcs:
            attach(f"bridge:a{i}:{p + 1}-{q + 1}", [(0, p), (0, q)])
    for j, b in enumerate(b_seq):
        for p, q in b.arcs:
            attach(f"bridge:b{j}:{p + 1}-{q + 1}", [(last, p), (last, q)])
    for c, (j, s) in enumerate(diagram.crossings, 1):
        if not v[c - 1] and w[c - 1]:
            t = s.index - 1
            attach(f"saddle:{c}", [(j, t), (j, t + 1)])

    left_slots = [circles(a_seq[i - 1], a_seq[i]) for i in range(1, k + 1)]
    middle = trace(a_seq[-1], diagram, b_seq[0], v)
    right_slots = [circles(b_seq[j - 1], b_seq[j]) for j in range(1, l + 1)]
    slots = tuple(left_slots + [middle] + right_slots)
    output = trace(a_seq[0], diagram, b_seq[-1], w)

    def traced_item(circle_set: CircleSet, idx: int) -> Hashable:
        nodes = circle_set.nodes[idx]
        if nodes:
            return strands.find(nodes[0])
        return ("loop", idx - (len(circle_set) - diagram.closed_loops))

    items = list(owned)
    boundary = {}
    for item in items:
        boundary.setdefault(frame.find(item), [])

    for i, slot in enumerate(left_slots, 1):
        for idx, points in enumerate(slot.circles):
            boundary[frame.find(strands.find((0, points[0])))].append(BoundaryCircle(i, idx))
    for idx in range(len(middle)):
        boundary[frame.find(traced_item(middle, idx))].append(BoundaryCircle(k + 1, idx))
    for j, slot in enumerate(right_slots, k + 2):
        for idx, points in enumerate(slot.circles):
            boundary[frame.find(strands.find((last, points[0])))].append(BoundaryCircle(j, idx))
    for idx in range(len(output)):
        boundary[frame.find(traced_item(output, idx))].append(BoundaryCircle(0, idx))

    roots = sorted(boundary, key=repr)
    pieces = {root: [] for root in roots}
    euler = {root: 0 for root in roots}
    for item in items:
        root = frame.find(item)
        pieces[root].extend(owned[item])
        euler[root] += euler_of[item]

    components, index = _assemble(roots, {r: sorted(pieces[r]) for r in roots}, euler, boundary)

    node_component = {}
    for node in diagram_nodes(diagram):
        node_component[node] = index[frame.find(strands.find(node))]
    for c in range(diagram.closed_loops):
        node_component[("loop", c)] = index[frame.find(("loop", c))]
    for i in range(1, k + 1):
        for p in range(diagram.left_pts):
            node_component[("l", i, p)] = node_component[(0, p)]
    for j in range(1, l + 1):
        for q in range(diagram.right_pts):
            node_component[("r", j, q)] = node_component[(last, q)]

    log.debug("Tangle frame %s -> %s with %d+%d slots: %d components", v, w, k, l, len(components))
    return FrameSurface(
        slots=slots,
        output=output,
        pieces=tuple(all_pieces),
        gluings=tuple(gluings),
        components=components,
        matchings=a_seq,
        right=b_seq,
        diagram=diagram,
        source_resolution=v,
        target_resolution=w,
        node_component=node_component,
    )


@dataclass(frozen=True)
class Event:
    """An elementary cobordism on circle ids: a saddle (merge or split), a birth, a death or a dot."""

    kind: str
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    component: int = 0

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise FrameError(f"Unknown event kind: {self.kind!r}")

    @property
    def euler_increment(self) -> int:
        if self.kind in ("merge", "split"):
            return -1
        if self.kind in ("birth", "death"):
            return 1
        return 0

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "component": self.component,
        }


@dataclass(frozen=True)
class GluingGraph:
    """Events as vertices, circles produced by one event and consumed by another as edges."""

    vertex_components: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    def vertices(self, component: Optional[int] = None) -> list[int]:
        return [v for v, c in enumerate(self.vertex_components) if component is None or c == component]

    def component_edges(self, component: Optional[int] = None) -> list[tuple[int, int, int]]:
        return [e for e in self.edges if component is None or self.vertex_components[e[1]] == component]

    def betti(self, component: Optional[int] = None) -> int:
        vertices = self.vertices(component)
        edges = self.component_edges(component)
        uf = UnionFind(vertices)
        for _, u, w in edges:
            uf.union(u, w)
        return len(edges) - len(vertices) + len(uf.groups())

    def cycle(self, component: Optional[int] = None) -> tuple[int, ...]:
        """Circle ids on the cycles of the graph, found by pruning vertices of degree one."""
        edges = list(self.component_edges(component))
        while True:
            degree = {}
            for _, u, w in edges:
                degree[u] = degree.get(u, 0) + 1
                degree[w] = degree.get(w, 0) + 1
            leaves = {v for v, d in degree.items() if d < 2}
            if not leaves:
                break
            edges = [e for e in edges if e[1] not in leaves and e[2] not in leaves]
        return tuple(sorted(circle for circle, _, _ in edges))


@dataclass(frozen=True)
class SaddleDecomposition:
    inputs: tuple[tuple[int, ...], ...]
    outputs: tuple[int, ...]
    steps: tuple[Event, ...]
    gluing_graph: GluingGraph

    def euler_char(self, component: Optional[int] = None) -> int:
        return sum(e.euler_increment for e in self.steps if component is None or e.component == component)


class _Sweep:
    """A configuration of circles as a multigraph whose nodes all have degree two."""

    def __init__(self, frame: FrameSurface, first_fresh: int):
        self.frame = frame
        self.edges = {}
        self.incident = {}
        self.circle_of = {}
        self.steps = []
        self._keys = 0
        self._fresh = first_fresh

    def fresh(self) -> int:
        self._fresh += 1
        return self._fresh - 1

    def add_edge(self, u: Hashable, w: Hashable, circle: Optional[int]) -> int:
        key = self._keys
        self._keys += 1
        self.edges[key] = (u, w)
        self.incident.setdefault(u, []).append(key)
        self.incident.setdefault(w, []).append(key)
        self.circle_of[key] = circle
        return key

    def remove_edge(self, key: int) -> int:
        u, w = self.edges.pop(key)
        self.incident[u].remove(key)
        self.incident[w].remove(key)
        return self.circle_of.pop(key)

    def walk(self, start: int) -> list[int]:
        visited = [start]
        prev = start
        node = self.edges[start][1]
        while True:
            keys = list(self.incident[node])
            keys.remove(prev)
            nxt = keys[0]
            if nxt == start:
                return visited
            visited.append(nxt)
            u, w = self.edges[nxt]
            node = u if w == node else w
            prev = nxt

    def relabel(self, start: int) -> tuple[int, list[int]]:
        circle = self.fresh()
        keys = self.walk(start)
        for key in keys:
            self.circle_of[key] = circle
        return circle, keys

    def circle_at(self, node: Hashable) -> int:
        return self.circle_of[self.incident[node][0]]

    def add_matching(self, node: Callable[[int], Hashable], a: Matching, circle_set: CircleSet, offset: int) -> dict:
        keys = {}
        for p, q in a.arcs:
            keys[p] = keys[q] = self.add_edge(node(p), node(q), offset + circle_set.circle_of_point(p))
        return keys

    def saddle(self, first: int, second: int, new_first: tuple, new_second: tuple) -> None:
        c1 = self.remove_edge(first)
        c2 = self.remove_edge(second)
        n1 = self.add_edge(*new_first, None)
        n2 = self.add_edge(*new_second, None)
        component = self.frame.node_component[new_first[0]]

        if c1 != c2:
            merged, keys = self.relabel(n1)
            if n2 not in keys:
                raise FrameError(f"Saddle on circles {c1} and {c2} does not merge them")
            self.steps.append(Event("merge", (c1, c2), (merged,), component))
        else:
            if n2 in self.walk(n1):
                raise FrameError(f"Non-orientable saddle on circle {c1}")
            f1, _ = self.relabel(n1)
            f2, _ = self.relabel(n2)
            self.steps.append(Event("split", (c1,), (f1, f2), component))


def _sweep_arc(frame: FrameSurface, sweep: _Sweep, offsets: list[int]) -> list[int]:
    seq = frame.matchings
    m = len(seq) - 1

    if m == 0:
        outputs = []
        for points in frame.output.circles:
            circle = sweep.fresh()
            sweep.steps.append(Event("birth", (), (circle,), frame.node_component[(1, points[0])]))
            outputs.append(circle)
        return outputs

    sweep.add_matching(lambda p: (1, p), seq[0], frame.slots[0], offsets[0])
    right = sweep.add_matching(lambda p: (1, p), seq[1], frame.slots[0], offsets[0])
    for i in range(2, m + 1):
        left = sweep.add_matching(lambda p, i=i: (i, p), seq[i - 1], frame.slots[i - 1], offsets[i - 1])
        new_right = sweep.add_matching(lambda p, i=i: (i, p), seq[i], frame.slots[i - 1], offsets[i - 1])
        for p, q in seq[i - 1].arcs:
            sweep.saddle(right[p], left[p], ((i - 1, p), (i, p)), ((i - 1, q), (i, q)))
        right = new_right

    return [sweep.circle_at((1, points[0])) for points in frame.output.circles]


def _sweep_tangle(frame: FrameSurface, sweep: _Sweep, offsets: list[int]) -> list[int]:
    diagram = frame.diagram
    a_seq, b_seq = frame.matchings, frame.right
    k, l = len(a_seq) - 1, len(b_seq) - 1
    last = len(diagram.slices)
    v, w = frame.source_resolution, frame.target_resolution

    right = {}
    rn = {}
    if k:
        sweep.add_matching(lambda p: ("l", 1, p), a_seq[0], frame.slots[0], offsets[0])
        right = sweep.add_matching(lambda p: ("l", 1, p), a_seq[1], frame.slots[0], offsets[0])
        for i in range(2, k + 1):
            left = sweep.add_matching(lambda p, i=i: ("l", i, p), a_seq[i - 1], frame.slots[i - 1], offsets[i - 1])
            new_right = sweep.add_matching(lambda p, i=i: ("l", i, p), a_seq[i], frame.slots[i - 1], offsets[i - 1])
            for p, q in a_seq[i - 1].arcs:
                sweep.saddle(right[p], left[p], (("l", i - 1, p), ("l", i, p)), (("l", i - 1, q), ("l", i, q)))
            right = new_right
        rn = {p: ("l", k, p) for p in range(diagram.left_pts)}

    middle = frame.slots[k]
    offset = offsets[k]
    tangle_keys = {}
    for x, y in tangle_edges(diagram, v):
        tangle_keys[(x, y)] = sweep.add_edge(x, y, offset + middle.circle_of_node(x))
    t_left = sweep.add_matching(lambda p: (0, p), a_seq[-1], middle, offset)
    t_right = {}
    for p, q in b_seq[0].arcs:
        t_right[p] = t_right[q] = sweep.add_edge((last, p), (last, q), offset + middle.circle_of_node((last, p)))
    first_loop = len(middle) - diagram.closed_loops
    for c in range(diagram.closed_loops):
        sweep.add_edge(("loop", c), ("loop", c), offset + first_loop + c)

    if k:
        for p, q in a_seq[-1].arcs:
            sweep.saddle(right[p], t_left[p], (rn[p], (0, p)), (rn[q], (0, q)))

    right = t_right
    rb = {q: (last, q) for q in range(diagram.right_pts)}
    for j in range(1, l + 1):
        slot = frame.slots[k + j]
        left = sweep.add_matching(lambda q, j=j: ("r", j, q), b_seq[j - 1], slot, offsets[k + j])
        new_right = sweep.add_matching(lambda q, j=j: ("r", j, q), b_seq[j], slot, offsets[k + j])
        for p, q in b_seq[j - 1].arcs:
            sweep.saddle(right[p], left[p], (rb[p], ("r", j, p)), (rb[q], ("r", j, q)))
        right = new_right
        rb = {q: ("r", j, q) for q in range(diagram.right_pts)}

    for c, (j, s) in enumerate(diagram.crossings, 1):
        if v[c - 1] or not w[c - 1]:
            continue
        t = s.index - 1
        sweep.saddle(
            tangle_keys[((j, t), (j + 1, t))],
            tangle_keys[((j, t + 1), (j + 1, t + 1))],
            ((j, t), (j, t + 1)),
            ((j + 1, t), (j + 1, t + 1)),
        )

    outputs = []
    first_loop = len(frame.output) - diagram.closed_loops
    for idx, nodes in enumerate(frame.output.nodes):
        node = nodes[0] if nodes else ("loop", idx - first_loop)
        outputs.append(sweep.circle_at(node))
    return outputs


def saddle_decompose(frame: FrameSurface) -> SaddleDecomposition:
    """Sweep the frame left to right into elementary events on circle ids.

    Input circles are numbered by slot, then by canonical order within the slot. Circles created by
    an event get fresh ids above all input ids. Slots are absorbed left to right, the arcs of a
    matching by their smallest endpoint, and crossing saddles come last in crossing order.
    """
    offsets = []
    total = 0
    for slot in frame.slots:
        offsets.append(total)
        total += len(slot)

    sweep = _Sweep(frame, total)
    if frame.is_tangle:
        outputs = _sweep_tangle(frame, sweep, offsets)
    else:
        outputs = _sweep_arc(frame, sweep, offsets)

    steps = tuple(sweep.steps)
    produced = {}
    consumed = {}
    for idx, event in enumerate(steps):
        for circle in event.outputs:
            produced[circle] = idx
        for circle in event.inputs:
            consumed[circle] = idx
    edges = tuple(sorted((circle, produced[circle], consumed[circle]) for circle in produced if circle in consumed))
    graph = GluingGraph(tuple(e.component for e in steps), edges)

    inputs = tuple(tuple(range(offset, offset + len(slot))) for offset, slot in zip(offsets, frame.slots))
    log.debug("Swept frame into %d events", len(steps))
    return SaddleDecomposition(inputs, tuple(outputs), steps, graph)


def glue_frame_reports(outer: FrameSurface, inners: Sequence[FrameSurface]) -> tuple:
    """Glue the outputs of ``inners`` into the input slots of ``outer`` and summarize the glued surface.

    The summary has the form of :meth:`FrameSurface.summary`, with the inputs of the inner frames
    renumbered consecutively.
    """
    if len(inners) != len(outer.slots):
        raise BoundaryError(f"{len(inners)} frames for {len(outer.slots)} slots")

    owner = {}
    for idx, component in enumerate(outer.components):
        for circle in component.boundary:
            owner[circle] = ("outer", idx)

    uf = UnionFind()
    euler = {}
    boundary = {}
    for idx, component in enumerate(outer.components):
        item = ("outer", idx)
        uf.add(item)
        euler[item] = component.euler_char
        boundary[item] = [b for b in component.boundary if b.slot == 0]

    offset = 0
    for slot, inner in enumerate(inners, 1):
        if inner.output != outer.slots[slot - 1]:
            raise BoundaryError(f"Frame output does not match slot {slot}")
        for idx, component in enumerate(inner.components):
            item = ("inner", slot, idx)
            uf.add(item)
            euler[item] = component.euler_char
            boundary[item] = [BoundaryCircle(offset + b.slot, b.index) for b in component.boundary if b.slot]
            for b in component.boundary:
                if b.slot == 0:
                    uf.union(item, owner[BoundaryCircle(slot, b.index)])
        offset += len(inner.slots)

    summary = []
    for group in uf.groups():
        chi = sum(euler[item] for item in group)
        circles_ = tuple(sorted(b for item in group for b in boundary[item]))
        summary.append((_genus(chi, len(circles_)), chi, circles_))
    return tuple(sorted(summary))
