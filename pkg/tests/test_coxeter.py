from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from algraph.coxeter import (
    CoxeterType,
    InvalidMatrix,
    NotSpherical,
    Reducible,
    TypeMismatch,
    UnknownAtom,
    build_root_system,
    classify,
    coxeter_group,
    descents,
    parse_matrix,
    parse_type,
    w_inverse,
    w_longest,
    w_multiply,
)
from conftest import ALL_TYPES

CLASSICAL_ROOTS = {
    "A2": 3, "A3": 6, "A4": 10, "A8": 36, "B2": 4, "B3": 9, "B6": 36, "D4": 12, "D7": 42,
    "E6": 36, "E7": 63, "E8": 120, "F4": 24, "H3": 15, "H4": 60, "I2_5": 5, "I2_12": 12,
}


@pytest.mark.parametrize("name,count", sorted(CLASSICAL_ROOTS.items()))
def test_root_counts(name, count):
    rs = build_root_system(parse_type(name))
    assert rs.n_pos == count
    # each atom reflection sends exactly one positive root negative
    for s in range(rs.rank):
        row = rs.refl[s][:count]
        assert sum(int(i >= count) for i in row) == 1


def test_type_strings():
    assert str(parse_type("I2_7")) == "I2_7"
    assert str(parse_type("G2")) == "I2_6"
    assert str(parse_type("I2(3)")) == "A2"
    for bad in ("D3", "E9", "H5", "F5", "B1", "I2_2", "X4"):
        with pytest.raises(ValueError):
            parse_type(bad)


def test_classify_examples():
    assert str(classify(parse_matrix("1 3;3 1"))) == "A2"
    assert str(classify([[1, 5], [5, 1]])) == "I2_5"
    with pytest.raises(Reducible):
        classify([[1, 2], [2, 1]])
    with pytest.raises(NotSpherical):
        classify([[1, 3, 3], [3, 1, 3], [3, 3, 1]])
    with pytest.raises(NotSpherical):
        classify(parse_matrix("1 inf;inf 1"))
    with pytest.raises(InvalidMatrix):
        classify([[1, 3], [4, 1]])
    with pytest.raises(InvalidMatrix):
        classify([[2, 3], [3, 1]])


@pytest.mark.parametrize("name", ["A5", "B4", "D5", "E6", "E7", "E8", "F4", "H3", "H4", "I2_9"])
def test_classify_roundtrip(name):
    t = parse_type(name)
    m = t.coxeter_matrix()
    # relabel atoms; classification must not depend on the order
    perm = list(range(t.rank))
    random.Random(name).shuffle(perm)
    shuffled = [[m[perm[i]][perm[j]] for j in range(t.rank)] for i in range(t.rank)]
    assert classify(shuffled) == t


def test_a2_elements_and_descents():
    W = coxeter_group("A2")
    assert [e.word() for e in W.elements()] == [(), (0,), (1,), (0, 1), (1, 0), (0, 1, 0)]
    ab = W.word_to_w([0, 1])
    assert descents(ab, "left") == {0} and descents(ab, "right") == {1}
    assert W.word_to_w([0, 0]) is W.identity
    assert W.word_to_w([0, 1, 0]) is W.word_to_w([1, 0, 1]) is w_longest("A2")
    assert descents(W.identity, "left") == set()
    with pytest.raises(UnknownAtom):
        W.word_to_w([2])


@pytest.mark.parametrize("name", ["A2", "B2", "I2_5", "A3", "H3"])
def test_descents_exhaustive(name):
    W = coxeter_group(name)
    for u in W.elements():
        for s in range(W.rank):
            a = W.atoms[s]
            assert (s in descents(u, "left")) == (W.mul(a, u).length == u.length - 1)
            assert (s in descents(u, "right")) == (W.mul(u, a).length == u.length - 1)


def test_descents_e8_random():
    W = coxeter_group("E8")
    rng = random.Random(8)
    for _ in range(10_000 // 20):
        u = W.word_to_w([rng.randrange(8) for _ in range(rng.randrange(60))])
        for s in range(8):
            a = W.atoms[s]
            assert bool(u.ldes >> s & 1) == (W.mul(a, u).length < u.length)
            assert bool(u.rdes >> s & 1) == (W.mul(u, a).length < u.length)


@pytest.mark.parametrize("name", ALL_TYPES)
def test_longest_element(name):
    W = coxeter_group(name)
    w0 = w_longest(name)
    assert w0.length == W.N
    full = (1 << W.rank) - 1
    assert w0.ldes == w0.rdes == full
    assert w_inverse(w0) is w0


@pytest.mark.parametrize("name", ["A3", "D5", "E8", "H4", "I2_7", "F4"])
@given(data=st.data())
def test_group_laws(name, data):
    W = coxeter_group(name)
    word = lambda: data.draw(st.lists(st.integers(0, W.rank - 1), max_size=30))  # noqa: E731
    u, v, w = W.word_to_w(word()), W.word_to_w(word()), W.word_to_w(word())
    assert w_multiply(u, w_inverse(u)) is W.identity
    assert w_multiply(w_multiply(u, v), w) is w_multiply(u, w_multiply(v, w))
    assert u.length + w_multiply(u, W.w0).length == W.w0.length
    assert W.word_to_w(W.w_to_word(u)) is u
    assert len(W.w_to_word(u)) == u.length


def test_type_mismatch():
    with pytest.raises(TypeMismatch):
        w_multiply(coxeter_group("A2").atoms[0], coxeter_group("A3").atoms[0])


def test_rank2_is_dihedral():
    for m in range(3, 13):
        W = coxeter_group(CoxeterType("I2", 2, m) if m > 4 else ("A2" if m == 3 else "B2"))
        assert len(W.elements()) == 2 * m
        assert w_longest(W.type).length == m
