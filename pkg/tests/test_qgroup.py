import hypothesis
import hypothesis.strategies as strat
import numpy as np
import pytest

from dissect.burnside.exceptions import QGroupError, UnknownRelationError
from dissect.burnside.planar import SliceWord, cap, cup
from dissect.burnside.qgroup import (
    RELATIONS,
    Counit,
    Crossing,
    Dot,
    GLWeight,
    Horizontal,
    Identity,
    OneMorphismWord,
    RelationInstance,
    Sideways,
    Unit,
    Vertical,
    check_instance,
    check_relation,
    check_relation_barnatan,
    evaluate_2morphism,
    generator_shadow,
    in_range_weights,
    ladder_tangle,
    relation_instances,
    solve_instance_signs,
    solve_signs,
    term_scalar,
    verify_qgroup,
)
from dissect.burnside.tqft import Ring

E1, F1 = ("E", 1), ("F", 1)
E2 = ("E", 2)
LOOP = GLWeight((0, 2))


def test_gl_weight() -> None:
    weight = GLWeight.parse("1,1")
    assert weight == GLWeight.parse("11") == GLWeight.parse([1, 1])
    assert weight.key == "1,1"
    assert weight.shift(E1) == GLWeight((2, 0))
    assert weight.shift(F1) == GLWeight((0, 2))
    assert weight.after([E1, F1]) == weight

    assert GLWeight((1, 0)).is_zero
    assert GLWeight((3, -1)).is_zero
    assert not LOOP.is_zero
    assert len(in_range_weights(2)) == 9

    with pytest.raises(QGroupError):
        GLWeight.parse("1,x")
    with pytest.raises(QGroupError):
        weight.shift(("E", 2))
    with pytest.raises(QGroupError):
        weight.shift(("G", 1))


@pytest.mark.parametrize(
    "letter, values, expected",
    [
        (E1, (1, 1), SliceWord(2, (cap(1),))),
        (E1, (0, 2), SliceWord(0, (cup(1),))),
        (F1, (2, 0), SliceWord(0, (cup(1),))),
        (F1, (1, 1), SliceWord(2, (cap(1),))),
        (E1, (2, 0), None),
        (F1, (0, 2), None),
        (E1, (1, 0), None),
        (("E", 2), (1, 0, 1), SliceWord(2)),
        (("E", 2), (1, 1, 1), None),
        (("E", 2), (1, 1, 1, 1), SliceWord(4, (cap(2),))),
    ],
)
def test_ladder_tangle(letter, values, expected) -> None:
    assert ladder_tangle(letter, GLWeight(values)) == expected


def test_one_morphism_word() -> None:
    word = OneMorphismWord(LOOP, (E1, E1))
    assert word.end == GLWeight((2, 0))
    assert word.tangle() == SliceWord(0, (cup(1), cap(1)))
    assert word.key == "E1E1@(0,2)"
    assert OneMorphismWord(LOOP).key == "1@(0,2)"
    assert OneMorphismWord(LOOP, (F1,)).tangle() is None


def test_generator_shadows() -> None:
    shadow = generator_shadow(Crossing(1, 1), LOOP)
    assert [move.kind for move in shadow.moves] == ["death", "birth"]
    assert generator_shadow(Unit(1, "E"), LOOP).moves[0].kind == "birth"
    assert generator_shadow(Counit(1, "E"), GLWeight((1, 1))).moves[0].kind == "unsaddle"
    assert generator_shadow(Sideways(1, "E"), GLWeight((1, 1))).moves == ()
    assert generator_shadow(Dot(E1), GLWeight((2, 0))) is None

    assert generator_shadow(Crossing(1, 2), GLWeight((1, 1, 1))) is None
    with pytest.raises(QGroupError):
        Vertical(Dot(E1), Dot(F1))


def test_evaluate_2morphism() -> None:
    dot = evaluate_2morphism(Dot(E1), GLWeight((1, 1)))
    assert np.array_equal(dot, np.array([[0, 0], [1, 0]]))

    unit = evaluate_2morphism(Unit(1, "E"), LOOP)
    assert np.array_equal(unit, np.array([[1], [0]]))

    tau = evaluate_2morphism(Crossing(1, 1), LOOP)
    assert np.array_equal(tau, np.array([[0, 1], [0, 0]]))
    assert not evaluate_2morphism(Vertical(Crossing(1, 1), Crossing(1, 1)), LOOP).any()

    assert evaluate_2morphism(Dot(E1), GLWeight((2, 0))) is None


@pytest.mark.parametrize("i, j", [(1, 2), (2, 1)])
@pytest.mark.parametrize("weight", in_range_weights(3), ids=lambda w: w.key)
def test_adjacent_crossing(i: int, j: int, weight: GLWeight) -> None:
    crossing = Crossing(i, j)
    src = OneMorphismWord(weight, crossing.source).tangle()
    dst = OneMorphismWord(weight, crossing.target).tangle()

    shadow = generator_shadow(crossing, weight)
    if src is None or dst is None:
        assert shadow is None
        assert evaluate_2morphism(crossing, weight) is None
    else:
        assert (shadow.source, shadow.target) == (src, dst)
        assert evaluate_2morphism(crossing, weight) is not None


def test_adjacent_crossing_matrices() -> None:
    weight = GLWeight((0, 1, 1))
    split = evaluate_2morphism(Crossing(1, 2), weight)
    merge = evaluate_2morphism(Crossing(2, 1), weight)
    assert generator_shadow(Crossing(1, 2), weight).moves[0].kind == "rearrange"
    assert split.shape == (4, 2)
    assert merge.shape == (2, 4)
    assert np.count_nonzero(split, axis=0).tolist() == [2, 1]
    assert np.count_nonzero(merge, axis=1).tolist() == [1, 2]

    composite = evaluate_2morphism(Vertical(Crossing(2, 1), Crossing(1, 2)), weight)
    assert np.array_equal(composite, np.array([[0, 0], [2, 0]]))
    assert np.array_equal(composite, merge @ split)
    assert not (composite % 2).any()


def test_term_scalar() -> None:
    assert term_scalar(Crossing(1, 2)) == -1
    assert term_scalar(Crossing(2, 1)) == 1
    assert term_scalar(Crossing(1, 1)) == 1
    assert term_scalar(Crossing(1, 3)) == 1
    assert term_scalar(Vertical(Crossing(2, 1), Crossing(1, 2))) == -1
    assert term_scalar(Horizontal(Crossing(1, 2), Crossing(1, 2))) == 1
    assert term_scalar(Dot(E1)) == 1


def test_solve_signs_adjacent_scalar() -> None:
    weight = GLWeight((0, 1, 1))
    word = (E1, E2)
    loop = Vertical(Crossing(2, 1), Crossing(1, 2))
    dotted = Horizontal(Dot(E1), Identity((E2,)))
    instance = RelationInstance("custom", weight, "loop", word, word, (loop,), (dotted, dotted))
    assert solve_instance_signs(instance) == (1, -1, -1)
    assert check_instance(instance)


LETTERS = [(kind, i) for kind in ("E", "F") for i in (1, 2)]
NONZERO = [weight for weight in in_range_weights(3) if not weight.is_zero]


def whiskered(letters, position: int, crossing: bool):
    """A dot or a crossing on ``letters`` at ``position``, with identities on both sides."""
    letters = tuple(letters)
    position %= len(letters)
    width = 1
    expr = Dot(letters[position])
    if crossing and len(letters) > 1:
        position = min(position, len(letters) - 2)
        (first, i), (second, j) = letters[position : position + 2]
        if first == second:
            expr, width = Crossing(i, j, first), 2
    return Horizontal(Identity(letters[:position]), Horizontal(expr, Identity(letters[position + width :])))


def chains():
    def build(args):
        weight, letters, steps = args
        result = []
        for crossing, position in steps:
            result.append(whiskered(letters, position, crossing))
            letters = result[-1].target
        return weight, result

    letters = strat.lists(strat.sampled_from(LETTERS), min_size=1, max_size=3)
    steps = strat.lists(strat.tuples(strat.booleans(), strat.integers(0, 2)), min_size=2, max_size=2)
    return strat.tuples(strat.sampled_from(NONZERO), letters, steps).map(build)


def pairs():
    def build(args):
        weight, letters, cut, left, right = args
        cut = 1 + cut % (len(letters) - 1)
        return weight, whiskered(letters[:cut], *left), whiskered(letters[cut:], *right)

    letters = strat.lists(strat.sampled_from(LETTERS), min_size=2, max_size=3)
    step = strat.tuples(strat.integers(0, 2), strat.booleans())
    return strat.tuples(strat.sampled_from(NONZERO), letters, strat.integers(0, 2), step, step).map(build)


@hypothesis.settings(deadline=None)
@hypothesis.given(chains())
def test_evaluate_vertical_functorial(chain) -> None:
    weight, (first, second) = chain
    composite = evaluate_2morphism(Vertical(second, first), weight)
    lower = evaluate_2morphism(first, weight)
    upper = evaluate_2morphism(second, weight)
    if lower is None or upper is None:
        assert composite is None
    else:
        assert np.array_equal(composite, upper @ lower)


@hypothesis.settings(deadline=None)
@hypothesis.given(pairs())
def test_evaluate_horizontal_functorial(pair) -> None:
    weight, left, right = pair
    whole = evaluate_2morphism(Horizontal(left, right), weight)
    left_first = Vertical(Horizontal(Identity(left.target), right), Horizontal(left, Identity(right.source)))
    right_first = Vertical(Horizontal(left, Identity(right.target)), Horizontal(Identity(left.source), right))
    if whole is None:
        assert evaluate_2morphism(left_first, weight) is None
        assert evaluate_2morphism(right_first, weight) is None
    else:
        assert np.array_equal(evaluate_2morphism(left_first, weight), whole)
        assert np.array_equal(evaluate_2morphism(right_first, weight), whole)
        assert np.array_equal(evaluate_2morphism(Horizontal(Horizontal(left, right), Identity(())), weight), whole)


def test_nilhecke_at_loop_weight() -> None:
    assert check_relation("nilhecke-square", LOOP)
    assert check_relation("nilhecke-square", LOOP, Ring.Z)
    assert check_relation("nilhecke-dot-slide", LOOP)
    assert solve_signs("nilhecke-dot-slide", LOOP) == (1, 1, 1, 1, 1, 1)
    assert check_relation_barnatan("nilhecke-dot-slide", LOOP)


@pytest.mark.parametrize("relation", list(RELATIONS))
@pytest.mark.parametrize("weight", in_range_weights(2), ids=lambda w: w.key)
def test_relations_rank_two(relation: str, weight: GLWeight) -> None:
    assert check_relation(relation, weight)
    assert check_relation_barnatan(relation, weight)


def test_distant_commute() -> None:
    weight = GLWeight((1, 1, 1, 1))
    instances = relation_instances("distant-commute", weight)
    assert [instance.label for instance in instances][:2] == ["E1E3:inverse", "E1E3:dot"]
    assert all(check_instance(instance) for instance in instances)


def test_relation_instances() -> None:
    assert relation_instances("bubble", GLWeight((1, 0))) == []
    assert {instance.label for instance in relation_instances("bubble", LOOP)} == {"E1:0", "E1:1", "E1:2"}
    assert relation_instances("zigzag", LOOP)[0].key == "zigzag[E1:right]@(0,2)"

    with pytest.raises(UnknownRelationError):
        relation_instances("braid", LOOP)
    with pytest.raises(KeyError):
        relation_instances("braid", LOOP)


def test_relation_instance_types() -> None:
    with pytest.raises(QGroupError):
        RelationInstance("zigzag", LOOP, "bad", (E1,), (E1,), (Identity((F1,)),))


def test_solve_instance_signs() -> None:
    tau = Crossing(1, 1)
    instance = RelationInstance("custom", LOOP, "minus", tau.source, tau.source, (tau,), (tau,))
    assert solve_instance_signs(instance) == (1, 1)

    negated = RelationInstance("custom", LOOP, "zero", tau.source, tau.source, (tau, tau))
    assert solve_instance_signs(negated) == (1, -1)

    impossible = RelationInstance("custom", LOOP, "odd", tau.source, tau.source, (tau,))
    assert solve_instance_signs(impossible) is None

    big = RelationInstance("custom", LOOP, "big", (), (), (Identity(()),) * 17)
    with pytest.raises(QGroupError):
        solve_instance_signs(big)


def test_verify_qgroup() -> None:
    report = verify_qgroup(2, list(RELATIONS))
    assert report.kind == "qgroup"
    assert report.ok, report.failures
    assert report.checks["barnatan"]["passed"] == len(RELATIONS) * 9
    assert report.checks["bubble"]["passed"] > 0


@pytest.mark.parametrize("relation", list(RELATIONS))
def test_solve_signs_rank_two(relation: str) -> None:
    for weight in in_range_weights(2):
        signs = solve_signs(relation, weight)
        assert signs is not None
        assert len(signs) == sum(len(instance.lhs + instance.rhs) for instance in relation_instances(relation, weight))


def test_verify_qgroup_rank_three() -> None:
    report = verify_qgroup(3, list(RELATIONS))
    assert report.ok, report.failures
    assert report.checks["barnatan"]["passed"] == len(RELATIONS) * 27
