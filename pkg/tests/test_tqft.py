import itertools

import numpy as np
import pytest

from dissect.burnside.exceptions import SignatureError
from dissect.burnside.frames import Event
from dissect.burnside.planar import SliceWord, crossing, enumerate_matchings
from dissect.burnside.tqft import (
    Cob,
    Component,
    DiskElement,
    Ring,
    Surface,
    algebra_dimension,
    act_bimodule,
    arc_decomposition,
    bimodule_generators,
    check_barnatan_f2,
    disks,
    evaluate_frame,
    evaluate_surface,
    multiply,
    multiply_n,
    replay,
    unit,
)

M1 = enumerate_matchings(1)
M2 = enumerate_matchings(2)


def basis(n):
    matchings = enumerate_matchings(n)
    return [x for a, b in itertools.product(matchings, repeat=2) for x in disks(a, b)]


def times(x: Cob, y: DiskElement) -> Cob:
    result = Cob.zero(x.ring)
    for element, coeff in x.terms:
        result = result + multiply(element, y, x.ring).scale(coeff)
    return result


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 2), (2, 12), (3, 120)])
def test_algebra_dimension(n: int, expected: int) -> None:
    assert algebra_dimension(n) == expected
    assert len(basis(n)) == expected


def test_disks(a0, a1) -> None:
    assert [x.key for x in disks(a0, a0)] == [
        "2,1,4,3|2,1,4,3|00",
        "2,1,4,3|2,1,4,3|01",
        "2,1,4,3|2,1,4,3|10",
        "2,1,4,3|2,1,4,3|11",
    ]
    assert [x.dots for x in disks(a0, a1)] == [(0,), (1,)]
    assert unit(a1) == disks(a1, a1)[0]


def test_disk_element_invalid(a0, a1) -> None:
    with pytest.raises(SignatureError):
        DiskElement(a0, a1, (0, 0))
    with pytest.raises(SignatureError):
        DiskElement(a0, a0, (0, 2))


def test_cob_normal_form(a0) -> None:
    x, y = disks(a0, a0)[:2]
    combination = Cob(Ring.Z, [(y, 1), (x, 2), (y, -1)])
    assert combination.terms == ((x, 2),)
    assert combination.coefficient(y) == 0
    assert not Cob(Ring.F2, [(x, 1), (x, 1)])
    assert Cob(Ring.F2, {x: 3}).coefficient(x) == 1

    vector = (Cob.of(x) + Cob.of(y).scale(-3)).to_vector(disks(a0, a0))
    assert np.array_equal(vector, np.array([1, -3, 0, 0]))


def test_cob_invalid(a0, a1) -> None:
    with pytest.raises(SignatureError):
        Cob(Ring.Z, [(unit(a0), 1), (unit(a1), 1)])
    with pytest.raises(SignatureError):
        Cob.of(unit(a0)) + Cob.of(unit(a0), Ring.F2)
    with pytest.raises(SignatureError):
        Cob.of(unit(a0)).to_vector(disks(a1, a1))


def test_single_arc_algebra() -> None:
    a = M1[0]
    one, x = disks(a, a)
    assert multiply(one, one) == Cob.of(one)
    assert multiply(one, x) == Cob.of(x)
    assert multiply(x, one) == Cob.of(x)
    assert not multiply(x, x)


@pytest.mark.parametrize("x", basis(2), ids=lambda x: x.key)
def test_unit_laws(x) -> None:
    assert multiply(unit(x.source), x) == Cob.of(x)
    assert multiply(x, unit(x.sink)) == Cob.of(x)


def test_chain_of_units(a0, a1) -> None:
    one_ab = DiskElement(a0, a1, (0,))
    one_ba = DiskElement(a1, a0, (0,))
    x_ab = DiskElement(a0, a1, (1,))

    assert multiply_n([one_ab, one_ba, one_ab], Ring.Z) == Cob(Ring.Z, [(x_ab, 2)])
    assert not multiply_n([one_ab, one_ba, one_ab], Ring.F2)


@pytest.mark.parametrize("ring", [Ring.Z, Ring.F2])
def test_multiplication_associative(ring: Ring) -> None:
    elements = basis(2)
    for x, y, z in itertools.product(elements, repeat=3):
        if x.sink != y.source or y.sink != z.source:
            continue
        product = multiply_n([x, y, z], ring)
        assert times(multiply(x, y, ring), z) == product
        assert times(Cob.of(x, ring), y) == multiply(x, y, ring)


def test_multiply_invalid(a0, a1) -> None:
    with pytest.raises(SignatureError):
        multiply_n([])
    with pytest.raises(SignatureError):
        multiply(unit(a0), unit(a1))

    _, decomposition = arc_decomposition((a0, a1, a0))
    with pytest.raises(SignatureError):
        evaluate_frame(decomposition, [unit(a0)], disks(a0, a0)[0].signature)


def test_replay() -> None:
    merged = replay([Event("merge", (0, 1), (2,))], {((0, 0), (1, 1)): 1, ((0, 1), (1, 1)): 5})
    assert merged == {((2, 1),): 1}

    split = replay([Event("split", (0,), (1, 2))], {((0, 0),): 1})
    assert split == {((1, 0), (2, 1)): 1, ((1, 1), (2, 0)): 1}

    closed = replay([Event("birth", (), (0,)), Event("dot", (0,), (0,)), Event("death", (0,), ())], {(): 3})
    assert closed == {(): 3}

    with pytest.raises(SignatureError):
        replay([Event("death", (4,), ())], {((0, 1),): 1})


def test_act_bimodule_flat() -> None:
    a = M1[0]
    x0, x1 = bimodule_generators(a, SliceWord(2), a)
    assert act_bimodule([unit(a)], x0, []) == Cob.of(x0)
    assert act_bimodule([], x0, [unit(a)]) == Cob.of(x0)
    assert act_bimodule([DiskElement(a, a, (1,))], x0, []) == Cob.of(x1)
    assert not act_bimodule([DiskElement(a, a, (1,))], x1, [])


def test_act_bimodule_invalid(a0) -> None:
    a = M1[0]
    with pytest.raises(SignatureError):
        act_bimodule([], unit(a), [])
    with pytest.raises(SignatureError):
        bimodule_generators(a, SliceWord(2, (crossing(1, 1),)), a)

    x0 = bimodule_generators(a, SliceWord(2), a)[0]
    with pytest.raises(SignatureError):
        act_bimodule([unit(a0)], x0, [])


def test_resolved_generators() -> None:
    a = M1[0]
    twist = SliceWord(2, (crossing(1, 1),))
    assert len(bimodule_generators(a, twist, a, (0,))) == 2
    assert len(bimodule_generators(a, twist, a, (1,))) == 4


def test_evaluate_surface() -> None:
    assert evaluate_surface(Surface((Component(0, 0),))) == {}
    assert evaluate_surface(Surface((Component(0, 1),))) == {(): 1}
    assert evaluate_surface(Surface((Component(1, 0),))) == {(): 2}
    assert evaluate_surface(Surface((Component(1, 0),)), Ring.F2) == {}
    assert evaluate_surface(Surface((Component(0, 0, (0,)),))) == {((0, 0),): 1}
    assert evaluate_surface(Surface((Component(0, 0, (0, 1)),), coeff=-1)) == {
        ((0, 0), (1, 1)): -1,
        ((0, 1), (1, 0)): -1,
    }


def test_check_barnatan_f2() -> None:
    tube = Surface((Component(0, 0, (0, 1)),))
    cut = [
        Surface((Component(0, 1, (0,)), Component(0, 0, (1,)))),
        Surface((Component(0, 0, (0,)), Component(0, 1, (1,)))),
    ]
    assert check_barnatan_f2([tube], cut)
    assert check_barnatan_f2([Surface((Component(1, 0),))], [])
    assert not check_barnatan_f2([Surface((Component(0, 1),))], [])

    with pytest.raises(SignatureError):
        check_barnatan_f2([tube], [Surface((Component(0, 0, (0,)),))])
