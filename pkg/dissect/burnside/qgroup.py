from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Union

import numpy as np

from dissect.burnside.exceptions import QGroupError, UnknownRelationError
from dissect.burnside.frames import Event
from dissect.burnside.planar import (
    CircleSet,
    Matching,
    Node,
    Slice,
    SliceWord,
    UnionFind,
    cap,
    cup,
    enumerate_matchings,
    trace,
)
from dissect.burnside.report import Report
from dissect.burnside.tqft import (
    Cob,
    Component,
    DiskElement,
    Ring,
    Signature,
    Surface,
    act_cobordism,
    check_barnatan_f2,
)

__all__ = [
    "GLWeight",
    "Letter",
    "OneMorphismWord",
    "Move",
    "Shadow",
    "TwoMorphism",
    "Identity",
    "Dot",
    "Crossing",
    "Unit",
    "Counit",
    "Sideways",
    "Vertical",
    "Horizontal",
    "RelationInstance",
    "RELATIONS",
    "ladder_tangle",
    "generator_shadow",
    "crossing_scalar",
    "term_scalar",
    "evaluate_2morphism",
    "relation_instances",
    "check_instance",
    "check_relation",
    "check_relation_barnatan",
    "solve_instance_signs",
    "solve_signs",
    "in_range_weights",
    "verify_qgroup",
]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_QGROUP", "CRITICAL"))

Letter = tuple[str, int]

MAX_SIGN_TERMS = 16


@dataclass(frozen=True)
class GLWeight:
    """An integral weight of rank ``n``; outside ``{0, 1, 2}^n`` or with an odd number of ones it is zero."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    @classmethod
    def parse(cls, value: Union[str, Sequence[int]]) -> GLWeight:
        if not isinstance(value, str):
            return cls(tuple(value))
        try:
            if "," in value:
                return cls(tuple(int(k) for k in value.split(",")))
            return cls(tuple(int(k) for k in value.strip()))
        except ValueError:
            raise QGroupError(f"Invalid weight {value!r}")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def in_range(self) -> bool:
        return all(k in (0, 1, 2) for k in self.values)

    @property
    def ones(self) -> int:
        return sum(1 for k in self.values if k == 1)

    @property
    def is_zero(self) -> bool:
        return not self.in_range or self.ones % 2 == 1

    @property
    def key(self) -> str:
        return ",".join(map(str, self.values))

    def _check_letter(self, letter: Letter) -> None:
        kind, i = letter
        if kind not in ("E", "F") or not 1 <= i < self.n:
            raise QGroupError(f"Invalid generator {kind}{i} for rank {self.n}")

    def shift(self, letter: Letter) -> GLWeight:
        self._check_letter(letter)
        kind, i = letter
        step = 1 if kind == "E" else -1
        values = list(self.values)
        values[i - 1] += step
        values[i] -= step
        return GLWeight(tuple(values))

    def after(self, letters: Sequence[Letter]) -> GLWeight:
        weight = self
        for letter in letters:
            weight = weight.shift(letter)
        return weight

    def __str__(self) -> str:
        return self.key


def in_range_weights(n: int) -> list[GLWeight]:
    return [GLWeight(values) for values in itertools.product((0, 1, 2), repeat=n)]


@dataclass(frozen=True)
class _Ladder:
    slices: tuple[Slice, ...]
    dot: Node
    target: GLWeight


# (kind, k_i, k_i+1) -> slice constructor or None for a through strand, and the level of the dotted node
_LADDERS = {
    ("E", 1, 1): (cap, 0),
    ("E", 0, 2): (cup, 1),
    ("E", 0, 1): (None, 0),
    ("E", 1, 2): (None, 0),
    ("F", 1, 1): (cap, 0),
    ("F", 2, 0): (cup, 1),
    ("F", 1, 0): (None, 0),
    ("F", 2, 1): (None, 0),
}


@lru_cache(maxsize=None)
def _ladder(letter: Letter, weight: GLWeight) -> Optional[_Ladder]:
    target = weight.shift(letter)
    if weight.is_zero or target.is_zero:
        return None

    kind, i = letter
    pattern = _LADDERS.get((kind, weight.values[i - 1], weight.values[i]))
    if pattern is None:
        return None

    make, level = pattern
    r = sum(1 for k in weight.values[: i - 1] if k == 1)
    slices = (make(r + 1),) if make is not None else ()
    return _Ladder(slices, (level, r), target)


def ladder_tangle(letter: Letter, weight: GLWeight) -> Optional[SliceWord]:
    ladder = _ladder(letter, weight)
    if ladder is None:
        return None
    return SliceWord(weight.ones, ladder.slices)


@dataclass(frozen=True)
class OneMorphismWord:
    """Generators applied to ``start`` in order; the tangle concatenates their ladders left to right."""

    start: GLWeight
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(tuple(letter) for letter in self.letters))
        weight = self.start
        for letter in self.letters:
            weight = weight.shift(letter)

    @property
    def weights(self) -> tuple[GLWeight, ...]:
        result = [self.start]
        for letter in self.letters:
            result.append(result[-1].shift(letter))
        return tuple(result)

    @property
    def end(self) -> GLWeight:
        return self.weights[-1]

    def ladders(self) -> Optional[list[_Ladder]]:
        if self.start.is_zero:
            return None
        result = []
        for letter, weight in zip(self.letters, self.weights):
            ladder = _ladder(letter, weight)
            if ladder is None:
                return None
            result.append(ladder)
        return result

    def tangle(self) -> Optional[SliceWord]:
        ladders = self.ladders()
        if ladders is None:
            return None
        return SliceWord(self.start.ones, tuple(s for ladder in ladders for s in ladder.slices))

    @property
    def key(self) -> str:
        word = "".join(f"{kind}{i}" for kind, i in self.letters) or "1"
        return f"{word}@({self.start.key})"


@dataclass(frozen=True)
class Move:
    """An elementary change of a flat slice word at slice position ``position``.

    ``saddle`` inserts ``cap i, cup i``, ``unsaddle`` removes such a pair, ``birth`` inserts
    ``cup i, cap i``, ``death`` removes such a loop, ``dot`` dots the circle through node
    ``(position, index)`` and ``rearrange`` swaps the ``index`` slices from ``position`` on for ``slices``,
    joining the circles that share endpoints by a genus zero piece.
    """

    kind: str
    position: int
    index: int = 0
    slices: tuple[Slice, ...] = ()

    def shifted(self, offset: int) -> Move:
        return Move(self.kind, self.position + offset, self.index, self.slices)

    def to_json(self) -> dict:
        record = {"kind": self.kind, "position": self.position, "index": self.index}
        if self.slices:
            record["slices"] = [str(s) for s in self.slices]
        return record


@dataclass(frozen=True)
class Shadow:
    """The flat cobordism of a 2-morphism: moves that turn the source tangle into the target tangle."""

    source: SliceWord
    target: SliceWord
    moves: tuple[Move, ...]

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "moves": [move.to_json() for move in self.moves],
        }


def _other(kind: str) -> str:
    return "F" if kind == "E" else "E"


class TwoMorphism:
    """A 2-morphism expression; ``source`` and ``target`` are the letter words it maps between."""

    @property
    def source(self) -> tuple[Letter, ...]:
        raise NotImplementedError

    @property
    def target(self) -> tuple[Letter, ...]:
        raise NotImplementedError

    def shadow(self, weight: GLWeight) -> Optional[Shadow]:
        raise NotImplementedError


def _words(source: Sequence[Letter], target: Sequence[Letter], weight: GLWeight):
    src = OneMorphismWord(weight, tuple(source))
    dst = OneMorphismWord(weight, tuple(target))
    if src.end != dst.end:
        raise QGroupError(f"Words {src.key} and {dst.key} end at different weights")
    return src.tangle(), dst.tangle()


@dataclass(frozen=True)
class Identity(TwoMorphism):
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(tuple(letter) for letter in self.letters))

    @property
    def source(self) -> tuple[Letter, ...]:
        return self.letters

    @property
    def target(self) -> tuple[Letter, ...]:
        return self.letters

    def shadow(self, weight: GLWeight) -> Optional[Shadow]:
        word, _ = _words(self.letters, self.letters, weight)
        return None if word is None else Shadow(word, word, ())


@dataclass(frozen=True)
class Dot(TwoMorphism):
    letter: Letter

    @property
    def source(self) -> tuple[Letter, ...]:
        return (tuple(self.letter),)

    @property
    def target(self) -> tuple[Letter, ...]:
        return self.source

    def shadow(self, weight: GLWeight) -> Optional[Shadow]:
        word, _ = _words(self.source, self.target, weight)
        if word is None:
            return None
        level, point = _ladder(tuple(self.letter), weight).dot
        return Shadow(word, word, (Move("dot", level, point),))


@dataclass(frozen=True)
class Crossing(TwoMorphism):
    """The crossing ``X_i X_j -> X_j X_i`` for ``X`` one of ``E``, ``F``."""

    i: int
    j: int
    kind: str = "E"

    @property
    def source(self) -> tuple[Letter, ...]:
        return ((self.kind, self.i), (self.kind, self.j))

    @property
    def target(self) -> tuple[Letter, ...]:
        return ((self.kind, self.j), (self.kind, self.i))

    def shadow(self, weight: GLWeight) -> Optional[Shadow]:
        src, dst = _words(self.source, self.target, weight)
        if src is None or dst is None:
            return None

        if self.i != self.j:
            if src == dst:
                return Shadow(src, dst, ())
            return Shadow(src, dst, (Move("rearrange", 0, len(src.slices), dst.slices),))

        first, second = src.slices if len(src.slices) == 2 else (None, None)
        if first is None or first.kind != "cup" or second != cap(first.index):
            raise QGroupError(f"No crossing shadow for {src.key}")
        return Shadow(src, dst, (Move("death", 0), Move("birth", 0, first.index)))


def _pair(i: int, first: str) -> tuple[Letter, ...]:
    return ((first, i), (_other(first), i))


def _pair_moves(word: SliceWord, inverse: bool) -> tuple[Move, ...]:
    if not word.slices:
        return ()
    first, second = word.slices
    if first.kind == "cap" and second == cup(first.index):
        return (Move("unsaddle", 0),) if inverse else (Move("saddle", 0, first.index),)
    if first.kind == "cup" and second == cap(first.index):
        return (Move("death", 0),) if inverse else (Move("birth", 0, first.index),)
    raise QGroupError(f"No adjunction shadow for {word.key}")


@dataclass(frozen=True)
class Unit(TwoMorphism):
    """The unit ``1 -> X_i Y_i`` with ``X = first`` applied first."""

    i: int
    first: str = "E"

    @property
    def source(self) -> tuple[Letter, ...]:
        return ()

    @property
    def target(self) -> tuple[Letter, ...]:
        return _pair(self.i, self.first)

    def shadow(self, weight: GLWeight) -> Optional[Shadow]:
        src, dst = _words(self.source, self.target, weight)
        if src is None or dst is None:
            return None
        return Shadow(src, dst, _pair_moves(dst, False))


@dataclass(frozen=True)
class Counit(TwoMorphism):
    i: int
    first: str = "E"

    @property
    def source(self) -> tuple[Letter, ...]:
        return _pair(self.i, self.first)

    @property
    def target(self) -> tuple[Letter, ...]:
        return ()

    def shadow(self, weight: GLWeight) -> Optional[Shadow]:
        src, dst = _words(self.source, self.target, weight)
        if src is None or dst is None:
            return None
        return Shadow(src, dst, _pair_moves(src, True))


@dataclass(frozen=True)
class Sideways(TwoMorphism):
    i: int
    first: str = "E"

    @property
    def source(self) -> tuple[Letter, ...]:
        return _pair(self.i, self.first)

    @property
    def target(self) -> tuple[Letter, ...]:
        return _pair(self.i, _other(self.first))

    def shadow(self, weight: GLWeight) -> Optional[Shadow]:
        src, dst = _words(self.source, self.target, weight)
        if src is None or dst is None:
            return None
        if src != dst:
            raise QGroupError(f"No sideways shadow between {src.key} and {dst.key}")
        return Shadow(src, dst, ())


@dataclass(frozen=True)
class Vertical(TwoMorphism):
    second: TwoMorphism
    first: TwoMorphism

    def __post_init__(self):
        if self.first.target != self.second.source:
            raise QGroupError(f"Cannot compose {self.second.source} after {self.first.target}")

    @property
    def source(self) -> tuple[Letter, ...]:
        return self.first.source

    @property
    def target(self) -> tuple[Letter, ...]:
        return self.second.target

    def shadow(self, weight: GLWeight) -> Optional[Shadow]:
        first = self.first.shadow(weight)
        second = self.second.shadow(weight)
        if first is None or second is None:
            return None
        return Shadow(first.source, second.target, first.moves + second.moves)


@dataclass(frozen=True)
class Horizontal(TwoMorphism):
    left: TwoMorphism
    right: TwoMorphism

    @property
    def source(self) -> tuple[Letter, ...]:
        return self.left.source + self.right.source

    @property
    def target(self) -> tuple[Letter, ...]:
        return self.left.target + self.right.target

    def shadow(self, weight: GLWeight) -> Optional[Shadow]:
        middle = weight.after(self.left.source)
        left = self.left.shadow(weight)
        right = self.right.shadow(middle)
        if left is None or right is None:
            return None

        offset = len(left.target.slices)
        moves = left.moves + tuple(move.shifted(offset) for move in right.moves)
        source = SliceWord(left.source.left_pts, left.source.slices + right.source.slices)
        target = SliceWord(left.target.left_pts, left.target.slices + right.target.slices)
        return Shadow(source, target, moves)


def generator_shadow(expr: TwoMorphism, weight: GLWeight) -> Optional[Shadow]:
    return expr.shadow(weight)


def crossing_scalar(i: int, j: int) -> int:
    if j == i + 1:
        return -1
    return 1


def term_scalar(expr: TwoMorphism) -> int:
    if isinstance(expr, Crossing):
        return crossing_scalar(expr.i, expr.j)
    if isinstance(expr, Vertical):
        return term_scalar(expr.second) * term_scalar(expr.first)
    if isinstance(expr, Horizontal):
        return term_scalar(expr.left) * term_scalar(expr.right)
    return 1


class _Engine:
    """Applies moves to a slice word closed up by ``a`` and ``b`` and records the circle events."""

    def __init__(self, word: SliceWord, a: Matching, b: Matching):
        self.a = a
        self.b = b
        self.word = word
        self.circles = trace(a, word, b)
        self.ids = list(range(len(self.circles)))
        self.next_id = len(self.ids)
        self.events = []

    def fresh(self) -> int:
        self.next_id += 1
        return self.next_id - 1

    def _advance(self, slices: Sequence[Slice], node_map: Callable[[Node], Optional[Node]], affected: set[int]):
        word = SliceWord(self.word.left_pts, tuple(slices))
        if word.right_pts != self.word.right_pts:
            raise QGroupError("A move changed the right boundary")
        circles = trace(self.a, word, self.b)
        ids = [None] * len(circles)
        for idx, nodes in enumerate(self.circles.nodes):
            if idx in affected:
                continue
            mapped = sorted(node for node in map(node_map, nodes) if node is not None)
            if not mapped:
                raise QGroupError(f"Circle {idx} does not survive the move")
            new = circles.circle_of_node(mapped[0])
            if ids[new] is not None:
                raise QGroupError("Two circles meet in a move that should keep them apart")
            ids[new] = self.ids[idx]
        return word, circles, ids

    def _commit(self, word: SliceWord, circles: CircleSet, ids: list) -> None:
        if any(i is None for i in ids):
            raise QGroupError("A circle appeared without an event")
        self.word, self.circles, self.ids = word, circles, ids

    def _pair_at(self, j: int, first: str, second: str) -> int:
        slices = self.word.slices
        if j + 1 >= len(slices) or slices[j].kind != first or slices[j + 1] != Slice(second, slices[j].index):
            raise QGroupError(f"No {first}-{second} pair at position {j} of {self.word.key}")
        return slices[j].index - 1

    def _rearrange(self, j: int, removed: int, slices: tuple[Slice, ...]) -> None:
        s = self.word.slices
        end = j + removed
        if end > len(s):
            raise QGroupError(f"Rearrangement past the end of {self.word.key}")
        word = SliceWord(self.word.left_pts, s[:j] + tuple(slices) + s[end:])
        if word.right_pts != self.word.right_pts:
            raise QGroupError("A move changed the right boundary")
        circles = trace(self.a, word, self.b)
        shift = len(slices) - removed

        uf = UnionFind([("old", idx) for idx in range(len(self.circles))])
        for idx in range(len(circles)):
            uf.add(("new", idx))
        for idx, nodes in enumerate(self.circles.nodes):
            for level, point in nodes:
                if level <= j:
                    uf.union(("old", idx), ("new", circles.circle_of_node((level, point))))
                if level >= end:
                    uf.union(("old", idx), ("new", circles.circle_of_node((level + shift, point))))

        ids = [None] * len(circles)
        for group in uf.groups():
            olds = sorted(idx for side, idx in group if side == "old")
            news = sorted(idx for side, idx in group if side == "new")
            if olds:
                current = self.ids[olds[0]]
            else:
                current = self.fresh()
                self.events.append(Event("birth", (), (current,)))
            for idx in olds[1:]:
                merged = self.fresh()
                self.events.append(Event("merge", (current, self.ids[idx]), (merged,)))
                current = merged
            if not news:
                self.events.append(Event("death", (current,), ()))
                continue
            for idx in news[:-1]:
                first, second = self.fresh(), self.fresh()
                self.events.append(Event("split", (current,), (first, second)))
                ids[idx], current = first, second
            ids[news[-1]] = current
        self._commit(word, circles, ids)

    def apply(self, move: Move) -> None:
        j = move.position
        s = self.word.slices

        if move.kind == "dot":
            circle = self.ids[self.circles.circle_of_node((j, move.index))]
            self.events.append(Event("dot", (circle,), (circle,)))
            return

        if move.kind in ("saddle", "birth"):
            t = move.index - 1
            if move.kind == "saddle":
                inserted = (cap(move.index), cup(move.index))
            else:
                inserted = (cup(move.index), cap(move.index))
            affected = set()
            if move.kind == "saddle":
                affected = {self.circles.circle_of_node((j, t)), self.circles.circle_of_node((j, t + 1))}
            word, circles, ids = self._advance(
                s[:j] + inserted + s[j:], lambda node: (node[0] if node[0] <= j else node[0] + 2, node[1]), affected
            )
            if move.kind == "birth":
                new = self.fresh()
                ids[circles.circle_of_node((j + 1, t))] = new
                self.events.append(Event("birth", (), (new,)))
            elif len(affected) == 2:
                first, second = (self.ids[c] for c in sorted(affected))
                new = self.fresh()
                ids[circles.circle_of_node((j, t))] = new
                self.events.append(Event("merge", (first, second), (new,)))
            else:
                first, second = self.fresh(), self.fresh()
                ids[circles.circle_of_node((j, t))] = first
                ids[circles.circle_of_node((j + 2, t))] = second
                self.events.append(Event("split", (self.ids[affected.pop()],), (first, second)))
            self._commit(word, circles, ids)
            return

        def collapse(node: Node) -> Optional[Node]:
            level, point = node
            if level <= j:
                return node
            if level == j + 1:
                return None
            return (level - 2, point)

        if move.kind == "unsaddle":
            t = self._pair_at(j, "cap", "cup")
            upper = self.circles.circle_of_node((j, t))
            lower = self.circles.circle_of_node((j + 2, t))
            word, circles, ids = self._advance(s[:j] + s[j + 2 :], collapse, {upper, lower})
            if upper != lower:
                new = self.fresh()
                ids[circles.circle_of_node((j, t))] = new
                self.events.append(Event("merge", (self.ids[upper], self.ids[lower]), (new,)))
            else:
                first, second = self.fresh(), self.fresh()
                ids[circles.circle_of_node((j, t))] = first
                ids[circles.circle_of_node((j, t + 1))] = second
                self.events.append(Event("split", (self.ids[upper],), (first, second)))
            self._commit(word, circles, ids)
            return

        if move.kind == "death":
            t = self._pair_at(j, "cup", "cap")
            loop = self.circles.circle_of_node((j + 1, t))
            word, circles, ids = self._advance(s[:j] + s[j + 2 :], collapse, {loop})
            self.events.append(Event("death", (self.ids[loop],), ()))
            self._commit(word, circles, ids)
            return

        if move.kind == "rearrange":
            self._rearrange(j, move.index, move.slices)
            return

        raise QGroupError(f"Unknown move {move.kind!r}")


def _run(shadow: Shadow, a: Matching, b: Matching) -> _Engine:
    engine = _Engine(shadow.source, a, b)
    for move in shadow.moves:
        engine.apply(move)
    if engine.word.slices != shadow.target.slices:
        raise QGroupError(f"Moves end at {engine.word.key}, expected {shadow.target.key}")
    return engine


def _closures(source: SliceWord) -> list[tuple[Matching, Matching]]:
    return list(
        itertools.product(enumerate_matchings(source.left_pts // 2), enumerate_matchings(source.right_pts // 2))
    )


def _basis(word: SliceWord) -> list[DiskElement]:
    return [x for a, b in _closures(word) for x in Signature(a, b, word).basis()]


def evaluate_2morphism(expr: TwoMorphism, weight: GLWeight, ring: Ring = Ring.Z) -> Optional[np.ndarray]:
    """The matrix of ``expr`` on the bimodule bases of its source and target, or ``None`` when it is zero.

    Rows and columns run over all closures ``(a, b)`` in matching order, then over dotted disks.
    """
    shadow = expr.shadow(weight)
    if shadow is None:
        return None

    target_basis = _basis(shadow.target)
    source_basis = _basis(shadow.source)
    matrix = np.zeros((len(target_basis), len(source_basis)), dtype=np.int64)
    col = 0
    for a, b in _closures(shadow.source):
        engine = _run(shadow, a, b)
        signature = Signature(a, b, shadow.target)
        for x in Signature(a, b, shadow.source).basis():
            image = act_cobordism(engine.events, Cob.of(x, ring), signature, range(len(x.dots)), engine.ids)
            matrix[:, col] = image.to_vector(target_basis)
            col += 1
    return matrix


@dataclass(frozen=True)
class RelationInstance:
    """One instance of a relation: ``sum(lhs) == sum(rhs)`` between the words ``source`` and ``target``."""

    relation: str
    weight: GLWeight
    label: str
    source: tuple[Letter, ...]
    target: tuple[Letter, ...]
    lhs: tuple[TwoMorphism, ...]
    rhs: tuple[TwoMorphism, ...] = ()

    def __post_init__(self):
        for term in self.lhs + self.rhs:
            if term.source != self.source or term.target != self.target:
                raise QGroupError(f"Term of {self.relation} instance {self.label} has the wrong type")

    @property
    def key(self) -> str:
        return f"{self.relation}[{self.label}]@({self.weight.key})"


def _power(letter: Letter, dots: int) -> TwoMorphism:
    if not dots:
        return Identity((letter,))
    expr = Dot(letter)
    for _ in range(dots - 1):
        expr = Vertical(Dot(letter), expr)
    return expr


def _first_dotted(i: int, first: str, dots: int) -> TwoMorphism:
    return Horizontal(_power((first, i), dots), Identity(((_other(first), i),)))


def _is_loop(letters: Sequence[Letter], weight: GLWeight) -> bool:
    word = OneMorphismWord(weight, tuple(letters)).tangle()
    return word is not None and len(word.slices) == 2 and word.slices[0].kind == "cup"


def _nilhecke_square(weight: GLWeight) -> list[RelationInstance]:
    result = []
    for i in range(1, weight.n):
        for kind in ("E", "F"):
            tau = Crossing(i, i, kind)
            square = Vertical(tau, tau)
            result.append(RelationInstance("nilhecke-square", weight, f"{kind}{i}", tau.source, tau.source, (square,)))
    return result


def _nilhecke_dot_slide(weight: GLWeight) -> list[RelationInstance]:
    result = []
    for i in range(1, weight.n):
        for kind in ("E", "F"):
            letter = (kind, i)
            tau = Crossing(i, i, kind)
            before = Vertical(tau, Horizontal(Dot(letter), Identity((letter,))))
            after = Vertical(Horizontal(Identity((letter,)), Dot(letter)), tau)
            lhs, rhs = (before, after), (Identity(tau.source),)
            label = f"{kind}{i}"
            result.append(RelationInstance("nilhecke-dot-slide", weight, label, tau.source, tau.source, lhs, rhs))
    return result


def _distant_commute(weight: GLWeight) -> list[RelationInstance]:
    result = []
    for i, j in itertools.permutations(range(1, weight.n), 2):
        if abs(i - j) < 2:
            continue
        for kind in ("E", "F"):
            there, back = Crossing(i, j, kind), Crossing(j, i, kind)
            first, second = there.source
            label = f"{kind}{i}{kind}{j}"

            lhs, rhs = (Vertical(back, there),), (Identity(there.source),)
            name = f"{label}:inverse"
            result.append(RelationInstance("distant-commute", weight, name, there.source, there.source, lhs, rhs))

            lhs = (Vertical(there, Horizontal(Dot(first), Identity((second,)))),)
            rhs = (Vertical(Horizontal(Identity((second,)), Dot(first)), there),)
            name = f"{label}:dot"
            result.append(RelationInstance("distant-commute", weight, name, there.source, there.target, lhs, rhs))
    return result


def _zigzag(weight: GLWeight) -> list[RelationInstance]:
    result = []
    for i in range(1, weight.n):
        for kind in ("E", "F"):
            letter = (kind, i)
            other = _other(kind)
            right = Vertical(
                Horizontal(Counit(i, kind), Identity((letter,))),
                Horizontal(Identity((letter,)), Unit(i, other)),
            )
            left = Vertical(
                Horizontal(Identity((letter,)), Counit(i, other)),
                Horizontal(Unit(i, kind), Identity((letter,))),
            )
            for name, expr in (("right", right), ("left", left)):
                label = f"{kind}{i}:{name}"
                rhs = (Identity((letter,)),)
                result.append(RelationInstance("zigzag", weight, label, (letter,), (letter,), (expr,), rhs))
    return result


def _bubble(weight: GLWeight) -> list[RelationInstance]:
    result = []
    for i in range(1, weight.n):
        for first in ("E", "F"):
            if not _is_loop(_pair(i, first), weight):
                continue
            for dots in range(3):
                expr = Vertical(Counit(i, first), Vertical(_first_dotted(i, first, dots), Unit(i, first)))
                rhs = (Identity(()),) if dots == 1 else ()
                result.append(RelationInstance("bubble", weight, f"{first}{i}:{dots}", (), (), (expr,), rhs))
    return result


def _ef_decomposition(weight: GLWeight) -> list[RelationInstance]:
    result = []
    for i in range(1, weight.n):
        for first in ("E", "F"):
            pair = _pair(i, first)
            if _is_loop(pair, weight):
                includes = [Vertical(_first_dotted(i, first, a), Unit(i, first)) for a in range(2)]
                projections = [Vertical(Counit(i, first), _first_dotted(i, first, b)) for b in range(2)]
                for a, b in itertools.product(range(2), repeat=2):
                    label = f"{first}{i}:orthogonal:{a}{b}"
                    rhs = (Identity(()),) if a + b == 1 else ()
                    lhs = (Vertical(projections[b], includes[a]),)
                    result.append(RelationInstance("ef-decomposition", weight, label, (), (), lhs, rhs))

                lhs = tuple(Vertical(includes[a], projections[1 - a]) for a in range(2))
                label = f"{first}{i}:complete"
                result.append(RelationInstance("ef-decomposition", weight, label, pair, pair, lhs, (Identity(pair),)))

            swapped = _pair(i, _other(first))
            both = OneMorphismWord(weight, pair).tangle(), OneMorphismWord(weight, swapped).tangle()
            if None not in both:
                lhs = (Vertical(Sideways(i, _other(first)), Sideways(i, first)),)
                label = f"{first}{i}:sideways"
                result.append(RelationInstance("ef-decomposition", weight, label, pair, pair, lhs, (Identity(pair),)))
    return result


RELATIONS: dict[str, Callable[[GLWeight], list[RelationInstance]]] = {
    "nilhecke-square": _nilhecke_square,
    "nilhecke-dot-slide": _nilhecke_dot_slide,
    "distant-commute": _distant_commute,
    "zigzag": _zigzag,
    "bubble": _bubble,
    "ef-decomposition": _ef_decomposition,
}


def relation_instances(relation: str, weight: GLWeight) -> list[RelationInstance]:
    try:
        make = RELATIONS[relation]
    except KeyError:
        raise UnknownRelationError(f"Unknown relation {relation!r}, expected one of {', '.join(RELATIONS)}")
    if weight.is_zero:
        return []
    return make(weight)


def _term_matrices(instance: RelationInstance, ring: Ring) -> Optional[tuple[list[np.ndarray], list[np.ndarray]]]:
    src = OneMorphismWord(instance.weight, instance.source).tangle()
    dst = OneMorphismWord(instance.weight, instance.target).tangle()
    if src is None or dst is None:
        return None

    shape = (len(_basis(dst)), len(_basis(src)))

    def matrices(terms):
        result = []
        for term in terms:
            matrix = evaluate_2morphism(term, instance.weight, ring)
            if matrix is None:
                matrix = np.zeros(shape, dtype=np.int64)
            elif ring is Ring.Z:
                matrix = term_scalar(term) * matrix
            result.append(matrix)
        return result

    return matrices(instance.lhs), matrices(instance.rhs)


def _reduce(matrix: np.ndarray, ring: Ring) -> np.ndarray:
    return matrix % 2 if ring is Ring.F2 else matrix


def check_instance(instance: RelationInstance, ring: Ring = Ring.F2) -> bool:
    """Compare both sides of one instance as matrices; instances through a zero weight hold vacuously."""
    matrices = _term_matrices(instance, ring)
    if matrices is None:
        return True
    lhs, rhs = matrices
    shape = (lhs + rhs)[0].shape if lhs + rhs else (0, 0)
    left = sum(lhs, np.zeros(shape, dtype=np.int64))
    right = sum(rhs, np.zeros(shape, dtype=np.int64))
    return bool(np.array_equal(_reduce(left, ring), _reduce(right, ring)))


def check_relation(relation: str, weight: GLWeight, ring: Ring = Ring.F2) -> bool:
    ok = True
    for instance in relation_instances(relation, weight):
        passed = check_instance(instance, ring)
        log.debug("%s: %s", instance.key, "holds" if passed else "fails")
        ok &= passed
    return ok


def solve_instance_signs(instance: RelationInstance) -> Optional[tuple[int, ...]]:
    """Signs for every term, ``lhs`` then ``rhs``, making ``sum(eps * lhs) == sum(eps * rhs)`` hold over Z.

    The first sign is fixed to ``+1`` and the lexicographically least solution is returned, or ``None``.
    """
    count = len(instance.lhs) + len(instance.rhs)
    if count > MAX_SIGN_TERMS:
        raise QGroupError(f"{instance.key} has {count} terms, at most {MAX_SIGN_TERMS} are searched")
    matrices = _term_matrices(instance, Ring.Z)
    if matrices is None or not count:
        return (1,) * count

    lhs, rhs = matrices
    terms = lhs + [-matrix for matrix in rhs]
    zero = np.zeros(terms[0].shape, dtype=np.int64)
    for rest in itertools.product((-1, 1), repeat=count - 1):
        signs = (1,) + rest
        if not sum((sign * matrix for sign, matrix in zip(signs, terms)), zero).any():
            return signs
    return None


def solve_signs(relation: str, weight: GLWeight) -> Optional[tuple[int, ...]]:
    result = ()
    for instance in relation_instances(relation, weight):
        signs = solve_instance_signs(instance)
        if signs is None:
            return None
        result += signs
    return result


# Output circles are numbered from here on in Bar-Natan boundaries, inputs from zero.
_OUTPUT_OFFSET = 1 << 16


def _surface(engine: _Engine, n_inputs: int) -> Surface:
    uf = UnionFind()
    for k in range(n_inputs):
        uf.add(("in", k))
        uf.add(("id", k))
        uf.union(("in", k), ("id", k))
    for q, circle in enumerate(engine.ids):
        uf.add(("out", q))
        uf.add(("id", circle))
        uf.union(("out", q), ("id", circle))
    for idx, event in enumerate(engine.events):
        uf.add(("event", idx))
        for circle in event.inputs + event.outputs:
            uf.add(("id", circle))
            uf.union(("event", idx), ("id", circle))

    components = []
    for group in uf.groups():
        boundary = sorted(
            item[1] if item[0] == "in" else _OUTPUT_OFFSET + item[1] for item in group if item[0] in ("in", "out")
        )
        events = [engine.events[item[1]] for item in group if item[0] == "event"]
        euler = sum(event.euler_increment for event in events)
        genus, odd = divmod(2 - euler - len(boundary), 2)
        if odd or genus < 0:
            raise QGroupError(f"Inconsistent surface piece with euler characteristic {euler}")
        dots = sum(1 for event in events if event.kind == "dot")
        components.append(Component(genus, dots, tuple(boundary)))
    return Surface(tuple(components))


def check_relation_barnatan(relation: str, weight: GLWeight) -> bool:
    """Decide a relation by comparing the summed dotted surfaces of each closure with Bar-Natan's F2 relations."""
    for instance in relation_instances(relation, weight):
        src = OneMorphismWord(weight, instance.source).tangle()
        if src is None or OneMorphismWord(weight, instance.target).tangle() is None:
            continue
        for a, b in _closures(src):
            n_inputs = len(trace(a, src, b))
            sides = []
            for terms in (instance.lhs, instance.rhs):
                surfaces = []
                for term in terms:
                    shadow = term.shadow(weight)
                    if shadow is not None:
                        surfaces.append(_surface(_run(shadow, a, b), n_inputs))
                sides.append(surfaces)
            if not check_barnatan_f2(*sides):
                log.debug("%s fails by Bar-Natan reduction at closure (%s, %s)", instance.key, a.key, b.key)
                return False
    return True


def verify_qgroup(n: int, relations: Sequence[str], ring: Ring = Ring.F2) -> Report:
    """Check every relation at every in-range weight of rank ``n``, cross-checked by Bar-Natan reduction over F2."""
    report = Report("qgroup")
    for relation in relations:
        for weight in in_range_weights(n):
            for instance in relation_instances(relation, weight):
                report.record(relation, check_instance(instance, ring), {"instance": instance.key})
            if ring is Ring.F2:
                agree = check_relation_barnatan(relation, weight) == check_relation(relation, weight, Ring.F2)
                report.record("barnatan", agree, {"relation": relation, "weight": weight.key})
    log.info("qgroup sweep for n=%d: %s", n, "pass" if report.ok else f"{len(report.failures)} failures")
    return report
