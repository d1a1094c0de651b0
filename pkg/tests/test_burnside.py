import itertools

import hypothesis
import hypothesis.strategies as strat
import numpy as np
import pytest

from dissect.burnside.burnside import (
    Correspondence,
    EntrywiseBijection,
    SignedCorrespondence,
    compose,
    hcompose_bijections,
    identity_correspondence,
    linearize,
    sign_correspondence,
    signed_compose,
    token_str,
    vcompose,
)
from dissect.burnside.exceptions import BurnsideError
from dissect.burnside.tqft import Ring


def labels(prefix, size):
    return tuple(f"{prefix}{i}" for i in range(size))


T = labels("z", 2)
S1, S2 = labels("s", 2), labels("u", 1)
R1, R2, R3 = labels("r", 2), labels("q", 2), labels("p", 1)
P1 = labels("o", 2)


def _entry_keys(sources, target):
    return [(row, cols) for row in range(len(target)) for cols in itertools.product(*(range(len(s)) for s in sources))]


def correspondences(sources, target, max_tokens=2):
    keys = _entry_keys(sources, target)

    def build(counts):
        entries = {key: [(((), f"t{i}"),) for i in range(count)] for key, count in zip(keys, counts)}
        return Correspondence.build(sources, target, entries)

    counts = strat.integers(min_value=0, max_value=max_tokens)
    return strat.lists(counts, min_size=len(keys), max_size=len(keys)).map(build)


def signed(sources, target):
    def attach(base, flips):
        signs = {}
        tokens = [(key, token) for key, entry in base.entries for token in entry]
        for (key, token), flip in zip(tokens, itertools.cycle(flips)):
            signs[(key, token)] = -1 if flip else 1
        return SignedCorrespondence.build(base, signs)

    flips = strat.lists(strat.booleans(), min_size=1, max_size=5)
    return strat.tuples(correspondences(sources, target), flips).map(lambda pair: attach(*pair))


@hypothesis.given(
    correspondences((S1, S2), T),
    correspondences((R1,), S1),
    correspondences((R2, R3), S2),
    correspondences((P1,), R1),
    correspondences((), R2),
    correspondences((P1,), R3),
)
def test_compose_associative(a, b1, b2, c1, c2, c3) -> None:
    left = compose(compose(a, [b1, b2]), [c1, c2, c3])
    right = compose(a, [compose(b1, [c1]), compose(b2, [c2, c3])])
    assert left == right


@hypothesis.given(correspondences((S1, S2), T))
def test_compose_unital(a) -> None:
    assert compose(identity_correspondence(T), [a]) == a
    assert compose(a, [identity_correspondence(S1), identity_correspondence(S2)]) == a


@hypothesis.given(correspondences((S1, S2), T), correspondences((R1,), S1), correspondences((R2, R3), S2))
def test_linearize_functorial(a, b1, b2) -> None:
    composite = linearize(compose(a, [b1, b2]))
    assert composite.shape == (2, 2 * 2 * 1)
    assert np.array_equal(composite, linearize(a) @ np.kron(linearize(b1), linearize(b2)))


@hypothesis.given(signed((S1, S2), T), signed((R1,), S1), signed((R2, R3), S2))
def test_signed_linearize_functorial(a, b1, b2) -> None:
    composite = linearize(signed_compose(a, [b1, b2]))
    assert np.array_equal(composite, linearize(a) @ np.kron(linearize(b1), linearize(b2)))


def test_correspondence_build() -> None:
    token = (((0,), "x"), ((), "y"))
    corr = Correspondence.build((S1,), T, {(1, (0,)): [token], (0, (1,)): []})
    assert corr.entries == (((1, (0,)), (token,)),)
    assert corr.entry(1, [0]) == (token,)
    assert corr.entry(0, [1]) == ()
    assert corr.cardinalities() == {(1, (0,)): 1}
    assert corr.leaf_paths == ((0,),)
    assert token_str(token) == "{0:x,:y}"
    assert corr.to_json()["entries"] == [{"row": 1, "cols": [0], "tokens": ["{0:x,:y}"]}]


@pytest.mark.parametrize(
    "entries",
    [
        {(2, (0,)): [()]},
        {(0, (2,)): [()]},
        {(0, (0, 0)): [()]},
        {(0, (0,)): [(), ()]},
    ],
)
def test_correspondence_invalid(entries) -> None:
    with pytest.raises(BurnsideError):
        Correspondence.build((S1,), T, entries)


def test_correspondence_invalid_leaf_paths() -> None:
    with pytest.raises(BurnsideError):
        Correspondence.build((S1,), T, {}, ((0,), (1,)))


def test_compose_invalid() -> None:
    a = Correspondence.build((S1, S2), T, {})
    with pytest.raises(BurnsideError):
        compose(a, [identity_correspondence(S1)])
    with pytest.raises(BurnsideError):
        compose(a, [identity_correspondence(S2), identity_correspondence(S1)])


def test_identity_correspondence() -> None:
    identity = identity_correspondence(T)
    assert identity.is_identity
    assert np.array_equal(linearize(identity), np.eye(2, dtype=np.int64))


def test_nullary_linearize() -> None:
    corr = Correspondence.build((), T, {(0, ()): [(((), "a"),), (((), "b"),), (((), "c"),)]})
    assert np.array_equal(linearize(corr), np.array([[3], [0]]))
    assert np.array_equal(linearize(corr, Ring.F2), np.array([[1], [0]]))


def test_signed_correspondence() -> None:
    base = Correspondence.build((S1,), T, {(0, (0,)): [(((), "a"),), (((), "b"),)]})
    corr = SignedCorrespondence.build(base, {((0, (0,)), (((), "a"),)): 1, ((0, (0,)), (((), "b"),)): -1})
    assert corr.entry_signs(0, (0,)) == {1, -1}
    assert linearize(corr)[0, 0] == 0
    assert corr.to_json()["entries"][0]["tokens"] == ["+{:a}", "-{:b}"]
    assert linearize(sign_correspondence(base, -1))[0, 0] == -2

    with pytest.raises(BurnsideError):
        SignedCorrespondence.build(base, {((0, (0,)), (((), "a"),)): 1})
    with pytest.raises(BurnsideError):
        SignedCorrespondence.build(base, {((0, (0,)), (((), "a"),)): 1, ((0, (0,)), (((), "b"),)): 2})


def swap(corr):
    """The bijection exchanging the two tokens of every entry holding exactly two."""
    mapping = {}
    for key, tokens in corr.entries:
        images = tokens[::-1] if len(tokens) == 2 else tokens
        mapping.update({(key, token): image for token, image in zip(tokens, images)})
    return EntrywiseBijection.build(corr, corr, mapping)


@hypothesis.given(correspondences((S1, S2), T))
def test_bijections(a) -> None:
    identity = EntrywiseBijection.identity(a)
    assert identity.is_identity

    f = swap(a)
    assert vcompose(f.inverse(), f).is_identity
    assert vcompose(f, f).is_identity
    assert f.is_identity == all(len(tokens) != 2 for _, tokens in a.entries)


@hypothesis.given(correspondences((S1, S2), T), correspondences((R1,), S1), correspondences((R2, R3), S2))
def test_hcompose_bijections(a, b1, b2) -> None:
    identities = hcompose_bijections(
        EntrywiseBijection.identity(a), [EntrywiseBijection.identity(b1), EntrywiseBijection.identity(b2)]
    )
    assert identities.is_identity
    assert identities.source == compose(a, [b1, b2])

    swapped = hcompose_bijections(swap(a), [swap(b1), swap(b2)])
    assert vcompose(swapped, swapped).is_identity


def test_bijection_invalid() -> None:
    base = Correspondence.build((S1,), T, {(0, (0,)): [(((), "a"),), (((), "b"),)]})
    a, b = (((), "a"),), (((), "b"),)
    key = (0, (0,))
    with pytest.raises(BurnsideError):
        EntrywiseBijection.build(base, base, {(key, a): a})
    with pytest.raises(BurnsideError):
        EntrywiseBijection.build(base, base, {(key, a): a, (key, b): a})
    with pytest.raises(BurnsideError):
        EntrywiseBijection.build(base, identity_correspondence(S1), {(key, a): a, (key, b): b})

    signs = SignedCorrespondence.build(base, {(key, a): 1, (key, b): -1})
    with pytest.raises(BurnsideError):
        EntrywiseBijection.build(signs, signs, {(key, a): b, (key, b): a})
