from __future__ import annotations

import itertools
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

from dissect.burnside.burnside import (
    AnyCorrespondence,
    Correspondence,
    EntrywiseBijection,
    Token,
    compose,
    hcompose_bijections,
    identity_correspondence,
    label_key,
    linearize,
    vcompose,
)
from dissect.burnside.exceptions import BurnsideError, DiagramError, Error
from dissect.burnside.frames import (
    BoundaryCircle,
    FrameSurface,
    SaddleDecomposition,
    build_arc_frame,
    build_tangle_frame,
    saddle_decompose,
)
from dissect.burnside.planar import Matching, SliceWord, UnionFind, enumerate_matchings
from dissect.burnside.report import Bounds, Report
from dissect.burnside.shapes import (
    ChangeOfTree,
    PairObject,
    ShapeMultimorphism,
    ShapeObject,
    Tree,
    TripleObject,
    basic_tree,
    enumerate_trees,
    flatten,
    graft,
)
from dissect.burnside.tqft import DiskElement, Ring, Signature, evaluate_frame

__all__ = [
    "ChainComplex",
    "Lift",
    "phi_object",
    "phi_basic",
    "phi_tree",
    "phi_change_of_tree",
    "phi_to_basic",
    "tree_labelings",
    "frame_of",
    "structure_matrix",
    "pair_morphisms",
    "tangle_morphisms",
    "sweep",
    "verify_multifunctor",
    "phi_cube_linearize",
    "f2_rank",
]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_PHI", "CRITICAL"))


@lru_cache(maxsize=None)
def phi_object(obj: ShapeObject) -> tuple[DiskElement, ...]:
    return tuple(_signature(obj).basis())


def _signature(obj: ShapeObject) -> Signature:
    if isinstance(obj, PairObject):
        return Signature(obj.a, obj.b)
    return Signature(obj.a, obj.b, obj.tangle, obj.v)


@lru_cache(maxsize=None)
def frame_of(mor: ShapeMultimorphism) -> FrameSurface:
    """The frame of a multimorphism; input slot ``i`` receives source ``i - 1``."""
    target = mor.target
    if isinstance(target, PairObject):
        return build_arc_frame((target.a,) + tuple(obj.b for obj in mor.sources))

    k = mor.triple_index
    triple = mor.sources[k]
    a_seq = (target.a,) + tuple(obj.b for obj in mor.sources[:k])
    b_seq = (triple.b,) + tuple(obj.b for obj in mor.sources[k + 1 :])
    return build_tangle_frame(triple.v, target.v, a_seq, target.tangle, b_seq)


@lru_cache(maxsize=None)
def _decomposition(mor: ShapeMultimorphism) -> SaddleDecomposition:
    return saddle_decompose(frame_of(mor))


def _owners(frame: FrameSurface) -> dict[BoundaryCircle, int]:
    return {circle: idx for idx, component in enumerate(frame.components) for circle in component.boundary}


def _parse_choice(payload: str) -> tuple[int, str]:
    return int(payload[1:-1]), payload[-1]


@lru_cache(maxsize=None)
def phi_basic(mor: ShapeMultimorphism) -> Correspondence:
    """The correspondence of a single multimorphism, read off its frame.

    A column of source elements and a row element close the frame up: input circles carry the
    column's dots, output circles the row's reversed dots. The entry is nonempty when every genus 0
    component carries exactly one dot and every genus 1 component none; it then holds one token per
    choice of sign on each genus 1 component. Any component of genus 2 or more empties the matrix.
    """
    target = phi_object(mor.target)
    sources = tuple(phi_object(obj) for obj in mor.sources)
    if mor.is_identity:
        return identity_correspondence(target)

    frame = frame_of(mor)
    if any(component.genus >= 2 for component in frame.components):
        return Correspondence.build(sources, target, {})

    owners = _owners(frame)
    need = [1 if component.genus == 0 else 0 for component in frame.components]
    genus_one = [idx for idx, component in enumerate(frame.components) if component.genus == 1]
    tokens = [
        tuple(sorted(((), f"g{idx}{sign}") for idx, sign in zip(genus_one, signs)))
        for signs in itertools.product("+-", repeat=len(genus_one))
    ]

    rows_by_need = {}
    for z, element in enumerate(target):
        counts = [0] * len(need)
        for idx, dot in enumerate(element.reversed_dots()):
            counts[owners[BoundaryCircle(0, idx)]] += dot
        rows_by_need.setdefault(tuple(counts), []).append(z)

    entries = {}
    for cols in itertools.product(*(range(len(s)) for s in sources)):
        counts = list(need)
        for slot, (source, col) in enumerate(zip(sources, cols), 1):
            for idx, dot in enumerate(source[col].dots):
                counts[owners[BoundaryCircle(slot, idx)]] -= dot
        for z in rows_by_need.get(tuple(counts), ()):
            entries[(z, cols)] = tokens

    return Correspondence.build(sources, target, entries)


@lru_cache(maxsize=None)
def phi_tree(tree: Tree) -> Correspondence:
    if tree.is_edge:
        return identity_correspondence(phi_object(tree.root))
    return compose(phi_basic(tree.vertex), [phi_tree(child) for child in tree.children])


def _is_identity_tree(tree: Tree) -> bool:
    if tree.is_edge:
        return True
    return tree.vertex.is_identity and _is_identity_tree(tree.children[0])


class _Labeling(NamedTuple):
    row: int
    cols: tuple[int, ...]
    token: Token
    labels: dict
    choices: dict


def _annotate(tree: Tree, path: tuple[int, ...], eff: tuple[int, ...]) -> list[_Labeling]:
    """Every element of every entry of a tree as internal edge labels plus genus 1 choices.

    ``path`` is the vertex position in ``tree``, ``eff`` the position tokens are rooted at, which
    skips identity vertices.
    """
    if tree.is_edge:
        return [_Labeling(i, (i,), (), {}, {}) for i in range(len(phi_object(tree.root)))]

    basic = phi_basic(tree.vertex)
    identity = tree.vertex.is_identity
    by_row = []
    for i, child in enumerate(tree.children):
        rows = {}
        for labeling in _annotate(child, path + (i,), eff if identity else eff + (i,)):
            rows.setdefault(labeling.row, []).append(labeling)
        by_row.append(rows)

    result = []
    for (z, ys), tokens in basic.entries:
        edge_atoms = [
            (eff + (i,), "y:" + label_key(basic.sources[i][y]))
            for i, (child, y) in enumerate(zip(tree.children, ys))
            if not identity and not _is_identity_tree(child)
        ]
        for combo in itertools.product(*(rows.get(y, []) for rows, y in zip(by_row, ys))):
            cols = tuple(c for labeling in combo for c in labeling.cols)
            labels = {}
            choices = {}
            atoms = list(edge_atoms)
            for i, (child, labeling) in enumerate(zip(tree.children, combo)):
                labels.update(labeling.labels)
                choices.update(labeling.choices)
                atoms.extend(labeling.token)
                if not child.is_edge:
                    labels[path + (i,)] = ys[i]
            for token in tokens:
                local = dict(choices)
                for _, payload in token:
                    component, sign = _parse_choice(payload)
                    local[(path, component)] = sign
                full = tuple(sorted(atoms + [(eff + p, payload) for p, payload in token]))
                result.append(_Labeling(z, cols, full, labels, local))
    return result


@lru_cache(maxsize=None)
def _labelings(tree: Tree) -> tuple[_Labeling, ...]:
    return tuple(_annotate(tree, (), ()))


def tree_labelings(tree: Tree, row: int, columns: Sequence[int]) -> set[Token]:
    columns = tuple(columns)
    return {labeling.token for labeling in _labelings(tree) if labeling.row == row and labeling.cols == columns}


@dataclass(frozen=True)
class _Rule:
    kind: str
    piece: tuple = ()
    edge: tuple[int, ...] = ()
    circle: int = 0


@lru_cache(maxsize=None)
def _sign_rules(tree: Tree) -> tuple[tuple[int, Optional[_Rule]], ...]:
    """How the sign of every genus 1 component of the flattened frame is read off a labeling."""
    flat = frame_of(flatten(tree))
    if tree.is_edge:
        return ()

    pieces = UnionFind()
    genus = {}
    owners = {}
    for path, subtree in tree.vertices():
        frame = frame_of(subtree.vertex)
        owners[path] = _owners(frame)
        for idx, component in enumerate(frame.components):
            pieces.add((path, idx))
            genus[(path, idx)] = component.genus

    edges = []
    for path, subtree in tree.vertices():
        for i, child in enumerate(subtree.children):
            if child.is_edge:
                continue
            child_path = path + (i,)
            for j in range(len(phi_object(child.root)[0].dots)):
                lower = (child_path, owners[child_path][BoundaryCircle(0, j)])
                upper = (path, owners[path][BoundaryCircle(i + 1, j)])
                pieces.union(lower, upper)
                edges.append(((child_path, j), lower, upper))

    flat_owners = _owners(flat)
    global_of = {}
    for idx in range(len(flat.output)):
        global_of[pieces.find(((), owners[()][BoundaryCircle(0, idx)]))] = flat_owners[BoundaryCircle(0, idx)]

    rules = []
    for sigma, component in enumerate(flat.components):
        if component.genus != 1:
            continue
        members = [piece for piece in genus if global_of.get(pieces.find(piece)) == sigma]
        handles = [piece for piece in members if genus[piece] == 1]
        rule = None
        if len(handles) == 1 and all(genus[piece] == 0 for piece in members if piece not in handles):
            rule = _Rule("choice", piece=handles[0])
        elif not handles and all(genus[piece] == 0 for piece in members):
            local = [(key, u, w) for key, u, w in edges if pieces.find(u) in {pieces.find(p) for p in members}]
            cycle = _cycle_keys(local)
            if cycle:
                edge, circle = min(cycle)
                rule = _Rule("cycle", edge=edge, circle=circle)
        rules.append((sigma, rule))
    return tuple(rules)


def _cycle_keys(edges: list) -> list:
    while True:
        degree = {}
        for _, u, w in edges:
            degree[u] = degree.get(u, 0) + 1
            degree[w] = degree.get(w, 0) + 1
        leaves = {piece for piece, d in degree.items() if d < 2}
        if not leaves:
            return [key for key, _, _ in edges]
        edges = [e for e in edges if e[1] not in leaves and e[2] not in leaves]


def _global_token(tree: Tree, labeling: _Labeling) -> Token:
    atoms = []
    for sigma, rule in _sign_rules(tree):
        if rule is None:
            raise BurnsideError(f"No sign rule for genus 1 component {sigma} of {tree.key}")
        if rule.kind == "choice":
            sign = labeling.choices[rule.piece]
        else:
            element = phi_object(tree.subtree(rule.edge).root)[labeling.labels[rule.edge]]
            sign = "+" if element.dots[rule.circle] == 0 else "-"
        atoms.append(((), f"g{sigma}{sign}"))
    return tuple(sorted(atoms))


@lru_cache(maxsize=None)
def phi_to_basic(tree: Tree) -> EntrywiseBijection:
    """The bijection from the entries of ``tree`` to those of its flattening.

    A genus 1 component that contains a genus 1 piece of the tree inherits that piece's sign. One
    made of genus 0 pieces glued along a cycle takes ``+`` for the labeling without a dot on the
    smallest cycle circle, ordered by edge position and then by circle.
    """
    mapping = {}
    for labeling in _labelings(tree):
        mapping[((labeling.row, labeling.cols), labeling.token)] = _global_token(tree, labeling)
    return EntrywiseBijection.build(phi_tree(tree), phi_basic(flatten(tree)), mapping)


def phi_change_of_tree(change: ChangeOfTree) -> EntrywiseBijection:
    return vcompose(phi_to_basic(change.target).inverse(), phi_to_basic(change.source))


def _collapse(tree: Tree) -> Tree:
    return tree if tree.is_edge else basic_tree(flatten(tree))


def _cuts(tree: Tree) -> list[tuple[Tree, list[Tree]]]:
    """Every upward closed set of vertices as ``(top tree, subtrees hanging below it)``."""
    options = []
    for child in tree.children:
        choices = [(Tree.edge(child.root), [child])]
        if not child.is_edge:
            choices += _cuts(child)
        options.append(choices)

    result = []
    for combo in itertools.product(*options):
        top = Tree(tree.root, tree.vertex, tuple(top for top, _ in combo))
        result.append((top, [hanging for _, below in combo for hanging in below]))
    return result


def structure_matrix(mor: ShapeMultimorphism) -> np.ndarray:
    target = phi_object(mor.target)
    sources = [phi_object(obj) for obj in mor.sources]
    decomposition = _decomposition(mor)
    columns = list(itertools.product(*sources))
    matrix = np.zeros((len(target), len(columns)), dtype=np.int64)
    for col, elements in enumerate(columns):
        cob = evaluate_frame(decomposition, elements, _signature(mor.target), Ring.Z)
        matrix[:, col] = cob.to_vector(target)
    return matrix


def pair_morphisms(n: int, max_inputs: int, side: str = "m") -> Iterator[ShapeMultimorphism]:
    matchings = enumerate_matchings(n)
    for r in range(max_inputs + 1):
        for chain in itertools.product(matchings, repeat=r + 1):
            sources = tuple(PairObject(chain[i], chain[i + 1], side) for i in range(r))
            yield ShapeMultimorphism(sources, PairObject(chain[0], chain[-1], side))


def tangle_morphisms(diagram: SliceWord, max_inputs: int) -> Iterator[ShapeMultimorphism]:
    left = enumerate_matchings(diagram.left_pts // 2)
    right = enumerate_matchings(diagram.right_pts // 2)
    cube = list(itertools.product((0, 1), repeat=diagram.n_crossings))
    for k in range(max_inputs):
        for l in range(max_inputs - k):
            for a_seq in itertools.product(left, repeat=k + 1):
                for b_seq in itertools.product(right, repeat=l + 1):
                    for v in cube:
                        for w in cube:
                            if any(x > y for x, y in zip(v, w)):
                                continue
                            sources = (
                                tuple(PairObject(a_seq[i], a_seq[i + 1], "m") for i in range(k))
                                + (TripleObject(v, a_seq[-1], diagram, b_seq[0]),)
                                + tuple(PairObject(b_seq[j], b_seq[j + 1], "n") for j in range(l))
                            )
                            yield ShapeMultimorphism(sources, TripleObject(w, a_seq[0], diagram, b_seq[-1]))


class Lift:
    """The multifunctor as seen by a verification sweep.

    The unsigned lift returns plain correspondences; a subclass can decorate them and reuse every check.
    """

    kind = "phi"

    def identity(self, obj: ShapeObject) -> AnyCorrespondence:
        return identity_correspondence(phi_object(obj))

    def basic(self, mor: ShapeMultimorphism) -> AnyCorrespondence:
        return phi_basic(mor)

    def tree(self, tree: Tree) -> AnyCorrespondence:
        return phi_tree(tree)

    def compose(self, outer: AnyCorrespondence, inners: Sequence[AnyCorrespondence]) -> AnyCorrespondence:
        return compose(outer, inners)

    def to_basic(self, tree: Tree) -> EntrywiseBijection:
        return phi_to_basic(tree)

    def constant_signs(self, corr: AnyCorrespondence) -> bool:
        return True

    def expected_matrix(self, mor: ShapeMultimorphism) -> np.ndarray:
        return structure_matrix(mor)

    def change_of_tree(self, change: ChangeOfTree) -> EntrywiseBijection:
        return vcompose(self.to_basic(change.target).inverse(), self.to_basic(change.source))

    def to_collapsed(self, tree: Tree) -> EntrywiseBijection:
        if tree.is_edge:
            return EntrywiseBijection.identity(self.tree(tree))
        return self.to_basic(tree)


def _check_identity(lift: Lift, obj: ShapeObject, report: Report) -> None:
    identity = ShapeMultimorphism((obj,), obj)
    expected = lift.identity(obj)
    report.record("identity", lift.basic(identity) == expected, {"object": obj.key})
    report.record("identity", lift.tree(Tree.edge(obj)) == expected, {"object": obj.key, "tree": "edge"})
    tree = basic_tree(identity)
    report.record("identity", lift.change_of_tree(ChangeOfTree(tree, tree)).is_identity, {"object": obj.key})


def _check_tree(lift: Lift, tree: Tree, report: Report) -> bool:
    instance = {"tree": tree.key}
    corr = lift.tree(tree)
    composed = {key: tokens for key, tokens in corr.entries}
    described = {}
    for labeling in _labelings(tree):
        described.setdefault((labeling.row, labeling.cols), []).append(labeling.token)
    described = {key: tuple(sorted(tokens)) for key, tokens in described.items()}
    report.record("labeling", composed == described and lift.constant_signs(corr), instance)

    try:
        lift.to_basic(tree)
    except Error as e:
        report.record("flatten", False, {**instance, "error": str(e)})
        return False
    report.record("flatten", True)
    return True


def _check_horizontal(lift: Lift, tree: Tree, report: Report) -> None:
    for top, hanging in _cuts(tree):
        instance = {"tree": tree.key, "top": top.key, "below": [t.key for t in hanging]}
        composed = lift.compose(lift.tree(top), [lift.tree(t) for t in hanging])
        report.record("associativity", composed == lift.tree(tree), instance)
        try:
            lhs = hcompose_bijections(lift.to_collapsed(top), [lift.to_collapsed(t) for t in hanging])
            rhs = lift.change_of_tree(ChangeOfTree(tree, graft([_collapse(t) for t in hanging], _collapse(top))))
        except Error as e:
            report.record("horizontal", False, {**instance, "error": str(e)})
            continue
        report.record("horizontal", lhs == rhs, instance)


def _check_vertical(lift: Lift, trees: Sequence[Tree], report: Report) -> None:
    for first, second, third in itertools.product(trees, repeat=3):
        instance = {"trees": [first.key, second.key, third.key]}
        try:
            lhs = vcompose(
                lift.change_of_tree(ChangeOfTree(second, third)), lift.change_of_tree(ChangeOfTree(first, second))
            )
            rhs = lift.change_of_tree(ChangeOfTree(first, third))
        except Error as e:
            report.record("vertical", False, {**instance, "error": str(e)})
            continue
        report.record("vertical", lhs == rhs, instance)


def _check_cardinality(lift: Lift, mor: ShapeMultimorphism, report: Report) -> None:
    expected = lift.expected_matrix(mor)
    actual = linearize(lift.basic(mor))
    report.record("cardinality", bool(np.array_equal(expected, actual)), {"morphism": mor.key})


def _binary(lift: Lift, a: Matching, b: Matching, c: Matching) -> np.ndarray:
    mor = ShapeMultimorphism((PairObject(a, b), PairObject(b, c)), PairObject(a, c))
    return linearize(lift.basic(mor))


def _check_algebra(lift: Lift, n: int, report: Report) -> None:
    for a, b, c, d in itertools.product(enumerate_matchings(n), repeat=4):
        dims = [len(phi_object(PairObject(x, y))) for x, y in ((a, b), (b, c), (c, d))]
        lhs = _binary(lift, a, c, d) @ np.kron(_binary(lift, a, b, c), np.eye(dims[2], dtype=np.int64))
        rhs = _binary(lift, a, b, d) @ np.kron(np.eye(dims[0], dtype=np.int64), _binary(lift, b, c, d))
        bad = np.nonzero((lhs != rhs).any(axis=0))[0]
        if not len(bad):
            report.record("algebra-associativity", True)
            continue

        i, j, k = np.unravel_index(int(bad[0]), dims)
        triple = [
            phi_object(PairObject(a, b))[i].key,
            phi_object(PairObject(b, c))[j].key,
            phi_object(PairObject(c, d))[k].key,
        ]
        report.record("algebra-associativity", False, {"triple": triple, "columns": len(bad)})


def sweep(lift: Lift, n: int, bounds: Bounds, diagram: Optional[SliceWord] = None) -> Report:
    """Run every multifunctor check of ``lift`` within ``bounds``; failures are recorded, never raised."""
    report = Report(lift.kind)
    morphisms = list(pair_morphisms(n, bounds.inputs))
    if diagram is not None:
        morphisms += list(tangle_morphisms(diagram, bounds.inputs))

    objects = {}
    for mor in morphisms:
        for obj in mor.sources + (mor.target,):
            objects[obj.key] = obj
    for key in sorted(objects):
        _check_identity(lift, objects[key], report)

    for mor in morphisms:
        _check_cardinality(lift, mor, report)
        trees = enumerate_trees(mor, bounds.vertices)
        log.debug("Checking %d trees for %s", len(trees), mor.key)
        valid = []
        for tree in trees:
            if _check_tree(lift, tree, report):
                valid.append(tree)
            _check_horizontal(lift, tree, report)
        _check_vertical(lift, valid, report)

    _check_algebra(lift, n, report)
    log.info("%s sweep for n=%d: %s", lift.kind, n, "pass" if report.ok else f"{len(report.failures)} failures")
    return report


def verify_multifunctor(n: int, bounds: Bounds, diagram: Optional[SliceWord] = None) -> Report:
    return sweep(Lift(), n, bounds, diagram)


def f2_rank(matrix: np.ndarray) -> int:
    mat = (np.asarray(matrix) % 2).astype(np.uint8)
    rows, cols = mat.shape
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if mat[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            mat[[rank, pivot]] = mat[[pivot, rank]]
        for r in range(rows):
            if r != rank and mat[r, col]:
                mat[r, :] ^= mat[rank, :]
        rank += 1
        if rank == rows:
            break
    return rank


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """A cochain complex over F2; ``differentials[k]`` maps degree ``min_degree + k`` to the next one."""

    min_degree: int
    dims: tuple[int, ...]
    differentials: tuple[np.ndarray, ...]

    def d_squared_zero(self) -> bool:
        for first, second in zip(self.differentials, self.differentials[1:]):
            if ((second.astype(np.int64) @ first.astype(np.int64)) % 2).any():
                return False
        return True

    def homology(self) -> tuple[int, ...]:
        ranks = [f2_rank(d) if d.size else 0 for d in self.differentials]
        result = []
        for k, dim in enumerate(self.dims):
            outgoing = ranks[k] if k < len(ranks) else 0
            incoming = ranks[k - 1] if k > 0 else 0
            result.append(dim - outgoing - incoming)
        return tuple(result)

    @property
    def total(self) -> int:
        return sum(self.homology())

    def sparse(self, k: int) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(self.differentials[k] % 2)
        return sorted(zip(rows.tolist(), cols.tolist()))

    def to_json(self) -> dict:
        homology = self.homology()
        return {
            "min_degree": self.min_degree,
            "dims": list(self.dims),
            "homology": {str(self.min_degree + k): h for k, h in enumerate(homology)},
            "total": sum(homology),
            "d_squared_zero": self.d_squared_zero(),
        }


def phi_cube_linearize(diagram: SliceWord, a: Optional[Matching] = None, b: Optional[Matching] = None) -> ChainComplex:
    """Linearize the cube of resolutions of ``diagram`` over F2.

    Degree ``k`` collects the bases of all resolutions with ``k`` ones; the differential sums the
    linearized single-bit flips. For a closed diagram the homology is ungraded Khovanov homology.
    """
    a = a if a is not None else Matching(diagram.left_pts // 2, _trivial_pairs(diagram.left_pts))
    b = b if b is not None else Matching(diagram.right_pts // 2, _trivial_pairs(diagram.right_pts))
    if 2 * a.n != diagram.left_pts or 2 * b.n != diagram.right_pts:
        raise DiagramError("Closing matchings do not fit the diagram boundary")

    n_crossings = diagram.n_crossings
    by_degree = [[] for _ in range(n_crossings + 1)]
    for v in itertools.product((0, 1), repeat=n_crossings):
        by_degree[sum(v)].append(v)

    offsets = {}
    dims = []
    for vertices in by_degree:
        offset = 0
        for v in vertices:
            offsets[v] = offset
            offset += len(phi_object(TripleObject(v, a, diagram, b)))
        dims.append(offset)

    differentials = []
    for k in range(n_crossings):
        d = np.zeros((dims[k + 1], dims[k]), dtype=np.uint8)
        for v in by_degree[k]:
            source = TripleObject(v, a, diagram, b)
            for c in range(n_crossings):
                if v[c]:
                    continue
                w = v[:c] + (1,) + v[c + 1 :]
                block = linearize(phi_basic(ShapeMultimorphism((source,), TripleObject(w, a, diagram, b))), Ring.F2)
                rows, cols = block.shape
                d[offsets[w] : offsets[w] + rows, offsets[v] : offsets[v] + cols] ^= block.astype(np.uint8)
        differentials.append(d)

    log.debug("Cube of %d crossings with dimensions %s", n_crossings, dims)
    return ChainComplex(0, tuple(dims), tuple(differentials))


def _trivial_pairs(points: int) -> tuple[int, ...]:
    return tuple(p + 1 if p % 2 == 0 else p - 1 for p in range(points))
