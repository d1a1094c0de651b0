from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from dissect.burnside.exceptions import BoundaryError, SignatureError
from dissect.burnside.frames import (
    Event,
    FrameSurface,
    SaddleDecomposition,
    build_arc_frame,
    build_tangle_frame,
    saddle_decompose,
)
from dissect.burnside.planar import CircleSet, Matching, SliceWord, circles, enumerate_matchings, trace

__all__ = [
    "Ring",
    "Signature",
    "DiskElement",
    "Cob",
    "Component",
    "Surface",
    "disks",
    "bimodule_generators",
    "algebra_dimension",
    "unit",
    "replay",
    "act_cobordism",
    "evaluate_frame",
    "multiply",
    "multiply_n",
    "act_bimodule",
    "evaluate_surface",
    "check_barnatan_f2",
    "arc_decomposition",
    "tangle_decomposition",
]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_TQFT", "CRITICAL"))

State = tuple[tuple[int, int], ...]


class Ring(Enum):
    Z = "z"
    F2 = "f2"

    def reduce(self, value: int) -> int:
        return value % 2 if self is Ring.F2 else value


@lru_cache(maxsize=None)
def _circle_set(
    source: Matching, sink: Matching, tangle: Optional[SliceWord], resolution: tuple[int, ...]
) -> CircleSet:
    if tangle is None:
        return circles(source, sink)
    return trace(source, tangle, sink, resolution)


@dataclass(frozen=True)
class Signature:
    """The boundary data of a basis element: ``(a, b)`` or ``(a, T_v, b)``."""

    source: Matching
    sink: Matching
    tangle: Optional[SliceWord] = None
    resolution: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "resolution", tuple(self.resolution))
        if self.tangle is None:
            if self.source.n != self.sink.n:
                raise BoundaryError(f"Matchings on {2 * self.source.n} and {2 * self.sink.n} points")
        elif 2 * self.source.n != self.tangle.left_pts or 2 * self.sink.n != self.tangle.right_pts:
            raise BoundaryError("Matchings do not fit the tangle boundary")

    @property
    def circles(self) -> CircleSet:
        return _circle_set(self.source, self.sink, self.tangle, self.resolution)

    def element(self, dots: Sequence[int]) -> DiskElement:
        return DiskElement(self.source, self.sink, tuple(dots), self.tangle, self.resolution)

    def basis(self) -> list[DiskElement]:
        return [self.element(dots) for dots in itertools.product((0, 1), repeat=len(self.circles))]

    @property
    def key(self) -> str:
        if self.tangle is None:
            return f"{self.source.key}|{self.sink.key}"
        bits = "".join(map(str, self.resolution))
        return f"{self.source.key}|{self.tangle.key}@{bits}|{self.sink.key}"


@dataclass(frozen=True)
class DiskElement:
    """A dotted-disk basis element; ``dots[i]`` is 1 when canonical circle ``i`` carries a dot."""

    source: Matching
    sink: Matching
    dots: tuple[int, ...]
    tangle: Optional[SliceWord] = None
    resolution: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "dots", tuple(self.dots))
        object.__setattr__(self, "resolution", tuple(self.resolution))
        if any(d not in (0, 1) for d in self.dots):
            raise SignatureError(f"Dots must be bits, got {self.dots}")
        n_circles = len(self.signature.circles)
        if len(self.dots) != n_circles:
            raise SignatureError(f"{len(self.dots)} dots for {n_circles} circles")

    @property
    def signature(self) -> Signature:
        return Signature(self.source, self.sink, self.tangle, self.resolution)

    @property
    def is_pair(self) -> bool:
        return self.tangle is None

    @property
    def key(self) -> str:
        return f"{self.signature.key}|{''.join(map(str, self.dots))}"

    def reversed_dots(self) -> tuple[int, ...]:
        return tuple(1 - d for d in self.dots)

    def to_json(self) -> dict:
        record = {"a": self.source.to_json(), "b": self.sink.to_json(), "dots": "".join(map(str, self.dots))}
        if self.tangle is not None:
            record["tangle"] = self.tangle.to_json()
            record["resolution"] = "".join(map(str, self.resolution))
        return record

    def __str__(self) -> str:
        return self.key


TermsLike = Union[Mapping[DiskElement, int], Iterable[tuple[DiskElement, int]]]


@dataclass(frozen=True)
class Cob:
    """A formal linear combination of basis elements in normal form.

    Terms are sorted by element key, coefficients reduced in the ring and zero terms dropped.
    """

    ring: Ring
    terms: tuple[tuple[DiskElement, int], ...] = ()

    def __init__(self, ring: Ring, terms: TermsLike = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected = {}
        for element, coeff in items:
            collected[element] = collected.get(element, 0) + coeff

        normal = []
        for element, coeff in collected.items():
            coeff = ring.reduce(coeff)
            if coeff:
                normal.append((element, coeff))
        normal.sort(key=lambda term: term[0].key)

        signatures = {element.signature for element, _ in normal}
        if len(signatures) > 1:
            raise SignatureError(f"Mixed signatures in one combination: {sorted(s.key for s in signatures)}")

        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", tuple(normal))

    @classmethod
    def zero(cls, ring: Ring = Ring.Z) -> Cob:
        return cls(ring)

    @classmethod
    def of(cls, element: DiskElement, ring: Ring = Ring.Z) -> Cob:
        return cls(ring, [(element, 1)])

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: Cob) -> Cob:
        if self.ring is not other.ring:
            raise SignatureError(f"Cannot add combinations over {self.ring.name} and {other.ring.name}")
        return Cob(self.ring, self.terms + other.terms)

    def scale(self, factor: int) -> Cob:
        return Cob(self.ring, [(element, coeff * factor) for element, coeff in self.terms])

    def coefficient(self, element: DiskElement) -> int:
        for candidate, coeff in self.terms:
            if candidate == element:
                return coeff
        return 0

    def to_vector(self, basis: Sequence[DiskElement]) -> np.ndarray:
        index = {element: idx for idx, element in enumerate(basis)}
        vector = np.zeros(len(basis), dtype=np.int64)
        for element, coeff in self.terms:
            if element not in index:
                raise SignatureError(f"{element.key} is not in the given basis")
            vector[index[element]] = coeff
        return vector

    def to_json(self) -> list[dict]:
        return [{"element": element.to_json(), "key": element.key, "coeff": coeff} for element, coeff in self.terms]


def disks(a: Matching, b: Matching) -> list[DiskElement]:
    """All ``2^#Circ(a, b)`` dotted-disk elements of ``(a, b)`` in canonical order."""
    return Signature(a, b).basis()


def bimodule_generators(
    a: Matching, diagram: SliceWord, b: Matching, resolution: Optional[Sequence[int]] = None
) -> list[DiskElement]:
    if resolution is None:
        if not diagram.is_flat:
            raise SignatureError("A resolution is required for a diagram with crossings")
        resolution = ()
    return Signature(a, b, diagram, tuple(resolution)).basis()


def algebra_dimension(m: int) -> int:
    matchings = enumerate_matchings(m)
    return sum(2 ** len(circles(a, b)) for a in matchings for b in matchings)


def unit(a: Matching) -> DiskElement:
    return DiskElement(a, a, (0,) * a.n)


def _apply(event: Event, dots: dict[int, int]) -> list[dict[int, int]]:
    try:
        if event.kind == "merge":
            total = sum(dots.pop(circle) for circle in event.inputs)
            if total >= 2:
                return []
            dots[event.outputs[0]] = total
            return [dots]

        if event.kind == "split":
            dot = dots.pop(event.inputs[0])
            first, second = event.outputs
            if dot:
                return [{**dots, first: 1, second: 1}]
            return [{**dots, first: 0, second: 1}, {**dots, first: 1, second: 0}]

        if event.kind == "birth":
            if event.outputs[0] in dots:
                raise SignatureError(f"Birth of existing circle {event.outputs[0]}")
            dots[event.outputs[0]] = 0
            return [dots]

        if event.kind == "death":
            return [dots] if dots.pop(event.inputs[0]) else []

        if dots.pop(event.inputs[0]):
            return []
        dots[event.outputs[0]] = 1
        return [dots]
    except KeyError as e:
        raise SignatureError(f"{event.kind} event on unknown circle {e.args[0]}")


def replay(events: Iterable[Event], terms: Mapping[State, int], ring: Ring = Ring.Z) -> dict[State, int]:
    """Push dot states through elementary events with the Frobenius algebra ``Z[X]/X^2``.

    A state is a sorted tuple of ``(circle id, dot)`` pairs.
    """
    current = {state: ring.reduce(coeff) for state, coeff in terms.items() if ring.reduce(coeff)}
    for event in events:
        following = {}
        for state, coeff in current.items():
            for dots in _apply(event, dict(state)):
                key = tuple(sorted(dots.items()))
                following[key] = following.get(key, 0) + coeff
        current = {state: ring.reduce(coeff) for state, coeff in following.items() if ring.reduce(coeff)}
    return current


def _collect(states: Mapping[State, int], outputs: Sequence[int], target: Signature, ring: Ring) -> Cob:
    wanted = set(outputs)
    terms = []
    for state, coeff in states.items():
        dots = dict(state)
        if set(dots) != wanted:
            raise SignatureError(f"Circles {sorted(dots)} left after the events, expected {sorted(wanted)}")
        terms.append((target.element(tuple(dots[circle] for circle in outputs)), coeff))
    return Cob(ring, terms)


def act_cobordism(
    events: Sequence[Event],
    x: Cob,
    target: Signature,
    inputs: Optional[Sequence[int]] = None,
    outputs: Optional[Sequence[int]] = None,
) -> Cob:
    """Apply a list of events to a combination.

    ``inputs`` gives the circle id of each canonical circle of ``x``'s signature, ``outputs`` the
    circle id of each canonical circle of ``target``. Both default to ``0, 1, ...``.
    """
    if outputs is None:
        outputs = range(len(target.circles))
    outputs = tuple(outputs)
    if len(outputs) != len(target.circles):
        raise SignatureError(f"{len(outputs)} output ids for {len(target.circles)} circles")

    terms = {}
    for element, coeff in x.terms:
        ids = tuple(range(len(element.dots))) if inputs is None else tuple(inputs)
        if len(ids) != len(element.dots):
            raise SignatureError(f"{len(ids)} input ids for {len(element.dots)} circles")
        state = tuple(sorted(zip(ids, element.dots)))
        terms[state] = terms.get(state, 0) + coeff

    return _collect(replay(events, terms, x.ring), outputs, target, x.ring)


@lru_cache(maxsize=None)
def arc_decomposition(seq: tuple[Matching, ...]) -> tuple[FrameSurface, SaddleDecomposition]:
    frame = build_arc_frame(seq)
    return frame, saddle_decompose(frame)


@lru_cache(maxsize=None)
def tangle_decomposition(
    v: tuple[int, ...],
    w: tuple[int, ...],
    a_seq: tuple[Matching, ...],
    diagram: SliceWord,
    b_seq: tuple[Matching, ...],
) -> tuple[FrameSurface, SaddleDecomposition]:
    frame = build_tangle_frame(v, w, a_seq, diagram, b_seq)
    return frame, saddle_decompose(frame)


def evaluate_frame(
    decomposition: SaddleDecomposition, elements: Sequence[DiskElement], target: Signature, ring: Ring = Ring.Z
) -> Cob:
    """Glue ``elements`` into the input slots of a decomposed frame and read off the output."""
    if len(elements) != len(decomposition.inputs):
        raise SignatureError(f"{len(elements)} elements for {len(decomposition.inputs)} slots")

    state = []
    for ids, element in zip(decomposition.inputs, elements):
        if len(ids) != len(element.dots):
            raise SignatureError(f"Slot with {len(ids)} circles filled with {element.key}")
        state.extend(zip(ids, element.dots))

    result = replay(decomposition.steps, {tuple(sorted(state)): 1}, ring)
    return _collect(result, decomposition.outputs, target, ring)


def multiply_n(seq: Sequence[DiskElement], ring: Ring = Ring.Z) -> Cob:
    """Multiply a composable chain of pair elements through the frame of the chain."""
    seq = list(seq)
    if not seq:
        raise SignatureError("Cannot multiply an empty chain")
    for x, y in zip(seq, seq[1:]):
        if not x.is_pair or not y.is_pair:
            raise SignatureError("Only pair elements multiply in the arc algebra")
        if x.sink != y.source:
            raise SignatureError(f"Chain break between {x.key} and {y.key}")

    matchings = tuple([seq[0].source] + [x.sink for x in seq])
    _, decomposition = arc_decomposition(matchings)
    return evaluate_frame(decomposition, seq, Signature(matchings[0], matchings[-1]), ring)


def multiply(x: DiskElement, y: DiskElement, ring: Ring = Ring.Z) -> Cob:
    return multiply_n([x, y], ring)


def act_bimodule(
    left: Sequence[DiskElement], x: DiskElement, right: Sequence[DiskElement], ring: Ring = Ring.Z
) -> Cob:
    """Act on a bimodule element with arc algebra elements on both sides through the flat-tangle frame."""
    if x.is_pair:
        raise SignatureError(f"{x.key} is not a bimodule element")

    left, right = list(left), list(right)
    a_seq = tuple([y.source for y in left] + [x.source])
    b_seq = tuple([x.sink] + [y.sink for y in right])
    for y, expected in zip(left, a_seq[1:]):
        if not y.is_pair or y.sink != expected:
            raise SignatureError(f"Left chain break at {y.key}")
    for y, expected in zip(right, b_seq):
        if not y.is_pair or y.source != expected:
            raise SignatureError(f"Right chain break at {y.key}")

    _, decomposition = tangle_decomposition(x.resolution, x.resolution, a_seq, x.tangle, b_seq)
    target = Signature(a_seq[0], b_seq[-1], x.tangle, x.resolution)
    return evaluate_frame(decomposition, left + [x] + right, target, ring)


@dataclass(frozen=True)
class Component:
    """A connected dotted surface with ``genus`` handles, ``dots`` dots and the given boundary circle ids."""

    genus: int
    dots: int
    boundary: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))


@dataclass(frozen=True)
class Surface:
    components: tuple[Component, ...]
    coeff: int = 1

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def boundary(self) -> tuple[int, ...]:
        return tuple(sorted(circle for component in self.components for circle in component.boundary))


def _component_states(component: Component) -> dict[State, int]:
    unit_coeff, dot_coeff = 1, 0
    for _ in range(component.dots):
        unit_coeff, dot_coeff = 0, unit_coeff
    for _ in range(component.genus):
        unit_coeff, dot_coeff = 0, 2 * unit_coeff

    if not component.boundary:
        return {(): dot_coeff}

    states = {}
    ids = component.boundary
    for undotted in range(len(ids)):
        state = tuple(sorted((circle, 0 if idx == undotted else 1) for idx, circle in enumerate(ids)))
        states[state] = states.get(state, 0) + unit_coeff
    full = tuple(sorted((circle, 1) for circle in ids))
    states[full] = states.get(full, 0) + dot_coeff
    return states


def evaluate_surface(surface: Surface, ring: Ring = Ring.Z) -> dict[State, int]:
    """Evaluate a dotted surface into dot states on its boundary circles.

    Each component is ``X^dots (2X)^genus`` pushed through iterated coproducts onto its boundary,
    or through the counit when it is closed.
    """
    states = {(): surface.coeff}
    for component in surface.components:
        combined = {}
        for state, coeff in states.items():
            for local, local_coeff in _component_states(component).items():
                key = tuple(sorted(state + local))
                combined[key] = combined.get(key, 0) + coeff * local_coeff
        states = combined
    return {state: ring.reduce(coeff) for state, coeff in states.items() if ring.reduce(coeff)}


def _side_total(side: Sequence[Surface], ring: Ring) -> dict[State, int]:
    total = {}
    for surface in side:
        for state, coeff in evaluate_surface(surface, ring).items():
            total[state] = total.get(state, 0) + coeff
    return {state: ring.reduce(coeff) for state, coeff in total.items() if ring.reduce(coeff)}


def check_barnatan_f2(lhs: Sequence[Surface], rhs: Sequence[Surface]) -> bool:
    """Compare two sums of dotted surfaces after Bar-Natan reduction with F2 coefficients."""
    boundaries = {surface.boundary for surface in list(lhs) + list(rhs)}
    if len(boundaries) > 1:
        raise SignatureError(f"Surfaces with differing boundaries: {sorted(boundaries)}")
    return _side_total(lhs, Ring.F2) == _side_total(rhs, Ring.F2)
