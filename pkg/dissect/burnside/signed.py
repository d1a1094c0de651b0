from __future__ import annotations

import itertools
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from dissect.burnside.burnside import (
    EntrywiseBijection,
    SignedCorrespondence,
    identity_correspondence,
    linearize,
    sign_correspondence,
    signed_compose,
)
from dissect.burnside.exceptions import SignOracleError, WeightError
from dissect.burnside.phi import Lift, phi_basic, phi_object, phi_to_basic, structure_matrix, sweep
from dissect.burnside.planar import Matching, enumerate_matchings
from dissect.burnside.report import SCHEMA_VERSION, Bounds, Report
from dissect.burnside.shapes import PairObject, ShapeMultimorphism, ShapeObject, Tree, flatten
from dissect.burnside.tqft import DiskElement

__all__ = [
    "WeightSeq",
    "WebBasisElement",
    "SignOracle",
    "TrivialSigns",
    "TableSigns",
    "SignedLift",
    "web_basis",
    "phi_signed_basic",
    "signed_linearize",
    "verify_signed_multifunctor",
]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_SIGNED", "CRITICAL"))


@dataclass(frozen=True)
class WeightSeq:
    """A weight sequence over ``{0, 1, 2}``; the ones are the endpoints of the underlying matchings."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if any(k not in (0, 1, 2) for k in self.values):
            raise WeightError(f"Weight entries must lie in {{0, 1, 2}}, got {self.values}")

    @classmethod
    def parse(cls, value: Union[str, Sequence[int]]) -> WeightSeq:
        if isinstance(value, str):
            value = value.replace(",", "").strip()
            if not value.isdigit() and value:
                raise WeightError(f"Invalid weight {value!r}")
            return cls(tuple(int(k) for k in value))
        return cls(tuple(value))

    @property
    def balanced(self) -> bool:
        return self.ones % 2 == 0

    @property
    def ones(self) -> int:
        return sum(1 for k in self.values if k == 1)

    @property
    def p(self) -> int:
        if not self.balanced:
            raise WeightError(f"Unbalanced weight {self.key}")
        return self.ones // 2

    @property
    def m(self) -> int:
        return sum(self.values) // 2

    @property
    def key(self) -> str:
        return "".join(map(str, self.values))

    def __str__(self) -> str:
        return self.key


@dataclass(frozen=True)
class WebBasisElement:
    """A web of weight ``weight`` reduced to the matching of its 1-labeled endpoints."""

    weight: WeightSeq
    matching: Matching

    def __post_init__(self):
        if 2 * self.matching.n != self.weight.ones:
            raise WeightError(f"Matching on {2 * self.matching.n} points for weight {self.weight.key}")

    @property
    def key(self) -> str:
        return f"{self.weight.key}:{self.matching.key}"


def web_basis(weight: WeightSeq) -> list[WebBasisElement]:
    """One web per crossingless matching of the 1-labeled points, in matching order."""
    return [WebBasisElement(weight, a) for a in enumerate_matchings(weight.p)]


class SignOracle:
    """Assigns the sign of a nonempty entry from its weight, column elements and row element."""

    def sign(self, weight: WeightSeq, column: Sequence[DiskElement], row: DiskElement) -> int:
        raise NotImplementedError


class TrivialSigns(SignOracle):
    def sign(self, weight: WeightSeq, column: Sequence[DiskElement], row: DiskElement) -> int:
        return 1


def column_key(column: Sequence[DiskElement]) -> str:
    return " ".join(element.key for element in column)


class TableSigns(SignOracle):
    """Signs looked up in a table keyed by ``(weight, column, row)``.

    The table file is JSON::

        {"schema": 1, "default": 1, "signs": [{"weight": "1111", "column": "...", "row": "...", "sign": -1}]}

    where ``column`` joins the element keys of the column with a single space. Without a
    ``default``, a lookup of an absent key raises :class:`SignOracleError`.
    """

    def __init__(self, table: dict[tuple[str, str, str], int], default: Optional[int] = None):
        for key, sign in table.items():
            if sign not in (1, -1):
                raise SignOracleError(f"Invalid sign {sign} for {key}")
        if default not in (None, 1, -1):
            raise SignOracleError(f"Invalid default sign {default}")
        self.table = dict(table)
        self.default = default

    @classmethod
    def from_json(cls, data: dict) -> TableSigns:
        if data.get("schema") != SCHEMA_VERSION:
            raise SignOracleError(f"Unsupported sign table schema: {data.get('schema')!r}")
        table = {}
        try:
            for entry in data.get("signs", []):
                table[(str(entry["weight"]), entry["column"], entry["row"])] = int(entry["sign"])
        except (KeyError, TypeError, ValueError) as e:
            raise SignOracleError(f"Malformed sign table entry: {e}")
        return cls(table, data.get("default"))

    @classmethod
    def load(cls, path: Union[str, Path]) -> TableSigns:
        with open(path, "rt") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as e:
                raise SignOracleError(f"Sign table {path} is not valid JSON: {e}")
        log.debug("Loaded sign table %s", path)
        return cls.from_json(data)

    def to_json(self) -> dict:
        record = {
            "schema": SCHEMA_VERSION,
            "signs": [
                {"weight": weight, "column": column, "row": row, "sign": sign}
                for (weight, column, row), sign in sorted(self.table.items())
            ],
        }
        if self.default is not None:
            record["default"] = self.default
        return record

    def sign(self, weight: WeightSeq, column: Sequence[DiskElement], row: DiskElement) -> int:
        key = (weight.key, column_key(column), row.key)
        if key in self.table:
            return self.table[key]
        if self.default is None:
            raise SignOracleError(f"No sign for weight {key[0]}, column {key[1]!r}, row {key[2]!r}")
        return self.default


def _check_morphism(weight: WeightSeq, mor: ShapeMultimorphism) -> None:
    p = weight.p
    for obj in mor.sources + (mor.target,):
        if not isinstance(obj, PairObject) or obj.a.n != p:
            raise WeightError(f"{obj.key} is not an object over weight {weight.key}")


def phi_signed_basic(weight: WeightSeq, mor: ShapeMultimorphism, oracle: SignOracle) -> SignedCorrespondence:
    """The correspondence of ``mor`` over the web basis; all tokens of an entry share the oracle's sign."""
    _check_morphism(weight, mor)
    base = phi_basic(mor)
    signs = {}
    for (row, cols), tokens in base.entries:
        column = tuple(source[c] for source, c in zip(base.sources, cols))
        sign = oracle.sign(weight, column, base.target[row])
        for token in tokens:
            signs[((row, cols), token)] = sign
    return SignedCorrespondence.build(base, signs)


class SignedLift(Lift):
    """The multifunctor over the web basis of one weight, signed by an oracle."""

    kind = "signed"

    def __init__(self, weight: WeightSeq, oracle: SignOracle):
        self.weight = weight
        self.oracle = oracle
        self._basic = {}
        self._trees = {}

    def identity(self, obj: ShapeObject) -> SignedCorrespondence:
        return sign_correspondence(identity_correspondence(phi_object(obj)))

    def basic(self, mor: ShapeMultimorphism) -> SignedCorrespondence:
        if mor not in self._basic:
            self._basic[mor] = phi_signed_basic(self.weight, mor, self.oracle)
        return self._basic[mor]

    def tree(self, tree: Tree) -> SignedCorrespondence:
        if tree not in self._trees:
            if tree.is_edge:
                corr = self.identity(tree.root)
            else:
                corr = signed_compose(self.basic(tree.vertex), [self.tree(child) for child in tree.children])
            self._trees[tree] = corr
        return self._trees[tree]

    def compose(self, outer: SignedCorrespondence, inners: Sequence[SignedCorrespondence]) -> SignedCorrespondence:
        return signed_compose(outer, inners)

    def to_basic(self, tree: Tree) -> EntrywiseBijection:
        mapping = dict(phi_to_basic(tree).mapping)
        return EntrywiseBijection.build(self.tree(tree), self.basic(flatten(tree)), mapping)

    def constant_signs(self, corr: SignedCorrespondence) -> bool:
        return all(len(corr.entry_signs(row, cols)) == 1 for (row, cols), _ in corr.entries)

    def expected_matrix(self, mor: ShapeMultimorphism) -> np.ndarray:
        matrix = structure_matrix(mor)
        sources = [phi_object(obj) for obj in mor.sources]
        target = phi_object(mor.target)
        for col, column in enumerate(itertools.product(*sources)):
            for row in np.nonzero(matrix[:, col])[0]:
                matrix[row, col] *= self.oracle.sign(self.weight, column, target[int(row)])
        return matrix


def signed_linearize(weight: WeightSeq, oracle: SignOracle) -> np.ndarray:
    """The signed structure constants ``c[z, x, y]`` of ``x * y`` over the basis of the whole algebra.

    The basis lists the elements of every pair ``(a, b)`` with ``a`` major, in matching order.
    """
    matchings = enumerate_matchings(weight.p)
    offsets = {}
    size = 0
    for a, b in itertools.product(matchings, repeat=2):
        offsets[(a, b)] = size
        size += len(phi_object(PairObject(a, b)))

    tensor = np.zeros((size, size, size), dtype=np.int64)
    for a, b, c in itertools.product(matchings, repeat=3):
        mor = ShapeMultimorphism((PairObject(a, b), PairObject(b, c)), PairObject(a, c))
        block = linearize(phi_signed_basic(weight, mor, oracle))
        dy = len(phi_object(PairObject(b, c)))
        for z, col in zip(*np.nonzero(block)):
            i, j = divmod(int(col), dy)
            tensor[offsets[(a, c)] + int(z), offsets[(a, b)] + i, offsets[(b, c)] + j] = block[z, col]
    return tensor


def verify_signed_multifunctor(weight: WeightSeq, oracle: SignOracle, bounds: Bounds) -> Report:
    """Run the multifunctor sweep over the web basis of ``weight`` with signs from ``oracle``.

    Every unsigned check is paired with its signed counterpart: entries of composite trees carry a
    single sign, change-of-tree bijections preserve signs and the linearized algebra is associative.
    With :class:`TrivialSigns` the outcome equals the unsigned sweep.
    """
    log.debug("Signed sweep for weight %s", weight.key)
    return sweep(SignedLift(weight, oracle), weight.p, bounds)
