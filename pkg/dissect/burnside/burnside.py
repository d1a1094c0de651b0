from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from dissect.burnside.exceptions import BurnsideError
from dissect.burnside.tqft import Ring

__all__ = [
    "Token",
    "Correspondence",
    "SignedCorrespondence",
    "EntrywiseBijection",
    "identity_correspondence",
    "compose",
    "signed_compose",
    "sign_correspondence",
    "hcompose_bijections",
    "vcompose",
    "linearize",
    "token_str",
    "label_key",
]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_BURNSIDE", "CRITICAL"))

Path = tuple[int, ...]
Atom = tuple[Path, str]
Token = tuple[Atom, ...]
EntryKey = tuple[int, tuple[int, ...]]


def label_key(label: Hashable) -> str:
    return getattr(label, "key", None) or str(label)


def token_str(token: Token) -> str:
    return "{" + ",".join(f"{'.'.join(map(str, path))}:{payload}" for path, payload in token) + "}"


@dataclass(frozen=True)
class Correspondence:
    """A matrix of finite sets from the product of ``sources`` to ``target``.

    Entries are keyed by ``(row, columns)`` positions in the ordered index sets; only nonempty
    entries are stored. ``leaf_paths`` tags every source with the vertex path it enters the
    composite at; a single source at the empty path marks an identity.
    """

    sources: tuple[tuple, ...]
    target: tuple
    entries: tuple[tuple[EntryKey, tuple[Token, ...]], ...]
    leaf_paths: tuple[Path, ...]

    @classmethod
    def build(
        cls,
        sources: Sequence[Sequence],
        target: Sequence,
        entries: Union[Mapping[EntryKey, Iterable[Token]], Iterable[tuple[EntryKey, Iterable[Token]]]],
        leaf_paths: Optional[Sequence[Path]] = None,
    ) -> Correspondence:
        sources = tuple(tuple(s) for s in sources)
        target = tuple(target)
        if leaf_paths is None:
            leaf_paths = tuple((idx,) for idx in range(len(sources)))
        leaf_paths = tuple(tuple(p) for p in leaf_paths)
        if len(leaf_paths) != len(sources):
            raise BurnsideError(f"{len(leaf_paths)} leaf paths for {len(sources)} sources")

        items = entries.items() if isinstance(entries, Mapping) else entries
        collected = {}
        for (row, cols), tokens in items:
            cols = tuple(cols)
            if not 0 <= row < len(target) or len(cols) != len(sources):
                raise BurnsideError(f"Entry ({row}, {cols}) out of range")
            if any(not 0 <= c < len(s) for c, s in zip(cols, sources)):
                raise BurnsideError(f"Entry ({row}, {cols}) out of range")
            tokens = tuple(tuple(t) for t in tokens)
            if len(set(tokens)) != len(tokens):
                raise BurnsideError(f"Duplicate tokens in entry ({row}, {cols})")
            if (row, cols) in collected:
                raise BurnsideError(f"Entry ({row}, {cols}) given twice")
            if tokens:
                collected[(row, cols)] = tuple(sorted(tokens))

        return cls(sources, target, tuple(sorted(collected.items())), leaf_paths)

    @cached_property
    def _index(self) -> dict[EntryKey, tuple[Token, ...]]:
        return dict(self.entries)

    @cached_property
    def _rows(self) -> dict[int, list[tuple[tuple[int, ...], tuple[Token, ...]]]]:
        rows = {}
        for (row, cols), tokens in self.entries:
            rows.setdefault(row, []).append((cols, tokens))
        return rows

    def entry(self, row: int, cols: Sequence[int]) -> tuple[Token, ...]:
        return self._index.get((row, tuple(cols)), ())

    def row_entries(self, row: int) -> list[tuple[tuple[int, ...], tuple[Token, ...]]]:
        return self._rows.get(row, [])

    @property
    def is_identity(self) -> bool:
        return self.leaf_paths == ((),)

    @property
    def shape(self) -> tuple:
        return (self.sources, self.target)

    def cardinalities(self) -> dict[EntryKey, int]:
        return {key: len(tokens) for key, tokens in self.entries}

    def to_json(self) -> dict:
        return {
            "rows": [label_key(y) for y in self.target],
            "columns": [[label_key(x) for x in source] for source in self.sources],
            "entries": [
                {"row": row, "cols": list(cols), "tokens": [token_str(t) for t in tokens]}
                for (row, cols), tokens in self.entries
            ],
        }


def identity_correspondence(labels: Sequence) -> Correspondence:
    labels = tuple(labels)
    return Correspondence.build((labels,), labels, {(i, (i,)): [()] for i in range(len(labels))}, ((),))


def _token(
    outer: Correspondence,
    inners: Sequence[Correspondence],
    ys: Sequence[int],
    outer_token: Token,
    inner_tokens: Sequence[Token],
) -> Token:
    atoms = list(outer_token)
    for idx, (prefix, inner, y, token) in enumerate(zip(outer.leaf_paths, inners, ys, inner_tokens)):
        atoms.extend((prefix + path, payload) for path, payload in token)
        if not outer.is_identity and not inner.is_identity:
            atoms.append((prefix, "y:" + label_key(outer.sources[idx][y])))
    return tuple(sorted(atoms))


def _compose(
    outer: Correspondence, inners: Sequence[Correspondence]
) -> tuple[Correspondence, dict[tuple[EntryKey, Token], tuple]]:
    inners = list(inners)
    if len(inners) != len(outer.sources):
        raise BurnsideError(f"{len(inners)} correspondences for {len(outer.sources)} sources")
    for idx, inner in enumerate(inners):
        if inner.target != outer.sources[idx]:
            raise BurnsideError(f"Target of correspondence {idx} does not match source {idx}")

    leaf_paths = tuple(p + q for p, inner in zip(outer.leaf_paths, inners) for q in inner.leaf_paths)
    sources = tuple(s for inner in inners for s in inner.sources)

    entries = {}
    provenance = {}
    for (z, ys), outer_tokens in outer.entries:
        for combo in itertools.product(*(inner.row_entries(y) for inner, y in zip(inners, ys))):
            cols = tuple(c for inner_cols, _ in combo for c in inner_cols)
            bucket = entries.setdefault((z, cols), set())
            for outer_token in outer_tokens:
                for inner_tokens in itertools.product(*(tokens for _, tokens in combo)):
                    token = _token(outer, inners, ys, outer_token, inner_tokens)
                    if token in bucket:
                        raise BurnsideError(f"Token collision in entry ({z}, {cols})")
                    bucket.add(token)
                    provenance[((z, cols), token)] = (
                        ys,
                        outer_token,
                        tuple(inner_cols for inner_cols, _ in combo),
                        inner_tokens,
                    )

    result = Correspondence.build(sources, outer.target, entries, leaf_paths)
    return result, provenance


def compose(outer: Correspondence, inners: Sequence[Correspondence]) -> Correspondence:
    """Multicompose: entry ``(z, x)`` is the union over intermediate rows of the product of entries.

    Tokens of the inner correspondences are re-rooted at the leaf they are plugged into, which
    makes composition strictly associative and unital.
    """
    return _compose(outer, inners)[0]


@dataclass(frozen=True)
class SignedCorrespondence:
    base: Correspondence
    signs: tuple[tuple[tuple[EntryKey, Token], int], ...]

    @classmethod
    def build(cls, base: Correspondence, signs: Mapping[tuple[EntryKey, Token], int]) -> SignedCorrespondence:
        normal = {}
        for key, tokens in base.entries:
            for token in tokens:
                try:
                    sign = signs[(key, token)]
                except KeyError:
                    raise BurnsideError(f"No sign for a token of entry {key}")
                if sign not in (1, -1):
                    raise BurnsideError(f"Invalid sign {sign}")
                normal[(key, token)] = sign
        return cls(base, tuple(sorted(normal.items())))

    @cached_property
    def _index(self) -> dict[tuple[EntryKey, Token], int]:
        return dict(self.signs)

    def sign(self, row: int, cols: Sequence[int], token: Token) -> int:
        return self._index[((row, tuple(cols)), token)]

    @property
    def sources(self) -> tuple[tuple, ...]:
        return self.base.sources

    @property
    def target(self) -> tuple:
        return self.base.target

    @property
    def entries(self):
        return self.base.entries

    def entry(self, row: int, cols: Sequence[int]) -> tuple[Token, ...]:
        return self.base.entry(row, cols)

    def entry_signs(self, row: int, cols: Sequence[int]) -> set[int]:
        return {self.sign(row, cols, token) for token in self.entry(row, cols)}

    def to_json(self) -> dict:
        record = self.base.to_json()
        for entry in record["entries"]:
            key = (entry["row"], tuple(entry["cols"]))
            entry["tokens"] = [
                ("+" if self._index[(key, t)] > 0 else "-") + token_str(t) for t in self.base.entry(*key)
            ]
        return record


def sign_correspondence(base: Correspondence, sign: int = 1) -> SignedCorrespondence:
    return SignedCorrespondence.build(base, {(key, token): sign for key, tokens in base.entries for token in tokens})


def signed_compose(outer: SignedCorrespondence, inners: Sequence[SignedCorrespondence]) -> SignedCorrespondence:
    """Compose signed correspondences; a composite token carries the product of its factors' signs."""
    base, provenance = _compose(outer.base, [inner.base for inner in inners])
    signs = {}
    for ((z, cols), token), (ys, outer_token, inner_cols, inner_tokens) in provenance.items():
        sign = outer.sign(z, ys, outer_token)
        for inner, y, c, t in zip(inners, ys, inner_cols, inner_tokens):
            sign *= inner.sign(y, c, t)
        signs[((z, cols), token)] = sign
    return SignedCorrespondence.build(base, signs)


AnyCorrespondence = Union[Correspondence, SignedCorrespondence]


def _base(corr: AnyCorrespondence) -> Correspondence:
    return corr.base if isinstance(corr, SignedCorrespondence) else corr


@dataclass(frozen=True)
class EntrywiseBijection:
    """A 2-morphism: a bijection from each entry of ``source`` onto the same entry of ``target``."""

    source: AnyCorrespondence
    target: AnyCorrespondence
    mapping: tuple[tuple[tuple[EntryKey, Token], Token], ...]

    @classmethod
    def build(
        cls, source: AnyCorrespondence, target: AnyCorrespondence, mapping: Mapping[tuple[EntryKey, Token], Token]
    ) -> EntrywiseBijection:
        src, dst = _base(source), _base(target)
        if src.shape != dst.shape:
            raise BurnsideError("Bijection between correspondences of different shapes")

        keys = {key for key, _ in src.entries} | {key for key, _ in dst.entries}
        normal = {}
        for key in keys:
            images = []
            for token in src.entry(*key):
                if (key, token) not in mapping:
                    raise BurnsideError(f"Token of entry {key} is not mapped")
                images.append(mapping[(key, token)])
                normal[(key, token)] = mapping[(key, token)]
            if sorted(images) != sorted(dst.entry(*key)):
                raise BurnsideError(f"Not a bijection on entry {key}")

        if isinstance(source, SignedCorrespondence) and isinstance(target, SignedCorrespondence):
            for (key, token), image in normal.items():
                if source.sign(key[0], key[1], token) != target.sign(key[0], key[1], image):
                    raise BurnsideError(f"Bijection does not preserve signs on entry {key}")

        return cls(source, target, tuple(sorted(normal.items())))

    @classmethod
    def identity(cls, corr: AnyCorrespondence) -> EntrywiseBijection:
        return cls.build(corr, corr, {(key, token): token for key, tokens in _base(corr).entries for token in tokens})

    @cached_property
    def _index(self) -> dict[tuple[EntryKey, Token], Token]:
        return dict(self.mapping)

    def __call__(self, key: EntryKey, token: Token) -> Token:
        return self._index[(key, token)]

    def inverse(self) -> EntrywiseBijection:
        return EntrywiseBijection.build(
            self.target, self.source, {(key, image): token for (key, token), image in self.mapping}
        )

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and all(token == image for (_, token), image in self.mapping)


def vcompose(second: EntrywiseBijection, first: EntrywiseBijection) -> EntrywiseBijection:
    """``second`` after ``first``."""
    if first.target != second.source:
        raise BurnsideError("Bijections do not compose vertically")
    return EntrywiseBijection.build(
        first.source, second.target, {(key, token): second(key, image) for (key, token), image in first.mapping}
    )


def hcompose_bijections(outer: EntrywiseBijection, inners: Sequence[EntrywiseBijection]) -> EntrywiseBijection:
    """The bijection induced on multicomposites by bijections of the factors."""
    inners = list(inners)
    signed = isinstance(outer.source, SignedCorrespondence)
    compose_ = signed_compose if signed else compose

    src_outer, dst_outer = _base(outer.source), _base(outer.target)
    src_inners = [_base(f.source) for f in inners]
    dst_inners = [_base(f.target) for f in inners]
    if src_outer.leaf_paths != dst_outer.leaf_paths or any(
        s.leaf_paths != d.leaf_paths for s, d in zip(src_inners, dst_inners)
    ):
        raise BurnsideError("Bijections between correspondences with different leaf structure")

    source = compose_(outer.source, [f.source for f in inners])
    target = compose_(outer.target, [f.target for f in inners])
    _, provenance = _compose(src_outer, src_inners)

    mapping = {}
    for ((z, cols), token), (ys, outer_token, inner_cols, inner_tokens) in provenance.items():
        outer_image = outer((z, ys), outer_token)
        inner_images = tuple(f((y, c), t) for f, y, c, t in zip(inners, ys, inner_cols, inner_tokens))
        mapping[((z, cols), token)] = _token(dst_outer, dst_inners, ys, outer_image, inner_images)
    return EntrywiseBijection.build(source, target, mapping)


def linearize(corr: AnyCorrespondence, ring: Ring = Ring.Z) -> np.ndarray:
    """The matrix of entry cardinalities (signed sums for signed correspondences).

    Rows follow the target order, columns the product of the sources with the first source most significant.
    """
    base = _base(corr)
    dims = tuple(len(s) for s in base.sources)
    matrix = np.zeros((len(base.target), int(np.prod(dims, dtype=np.int64))), dtype=np.int64)
    for (row, cols), tokens in base.entries:
        col = int(np.ravel_multi_index(cols, dims)) if dims else 0
        if isinstance(corr, SignedCorrespondence):
            matrix[row, col] = sum(corr.sign(row, cols, token) for token in tokens)
        else:
            matrix[row, col] = len(tokens)
    if ring is Ring.F2:
        matrix %= 2
    return matrix
