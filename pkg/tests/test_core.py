import itertools
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from naive import contains_brute
from satmat.core import (
    Embedding,
    Matrix01,
    PermutationMatrix,
    Transform,
    apply_transform,
    contains,
    find_embedding,
    find_embedding_through,
    flip_creates,
    orbit,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
Q = PermutationMatrix.parse("4 1 3 5 2")
I2 = Matrix01.identity(2)
ANTI2 = Matrix01.from_rows([[0, 1], [1, 0]])


@pytest.fixture(scope="module")
def t_q():
    return Matrix01.from_text((FIXTURES / "T_Q.txt").read_text())


def random_matrix(rng, rows, cols, density):
    return Matrix01.from_rows([[int(rng.random() < density) for _ in range(cols)] for _ in range(rows)])


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
    )
).map(Matrix01.from_rows)


# -- Matrix01 -------------------------------------------------------------------------


def test_text_round_trip():
    m = Matrix01.from_rows([[1, 0, 1], [0, 0, 0]])
    assert m.to_text() == "101\n000"
    assert Matrix01.from_text(m.to_text()) == m
    assert Matrix01.from_text("1 0 1\n0 0 0\n") == m


@pytest.mark.parametrize("text", ["", "10\n1", "12\n00"])
def test_bad_text_rejected(text):
    with pytest.raises(ValueError):
        Matrix01.from_text(text)


def test_cells_and_counts():
    m = Matrix01.from_cells(3, 4, [(1, 1), (3, 4)])
    assert m[1, 1] == 1 and m[3, 4] == 1 and m[2, 2] == 0
    assert m.ones() == [(1, 1), (3, 4)]
    assert m.ones_count() == 2
    assert len(m.zeros_cells()) == 10
    assert m.with_cell((2, 2))[2, 2] == 1
    assert m.with_cell((1, 1), 0).ones_count() == 1
    with pytest.raises(IndexError):
        m[4, 1]


def test_permutation_matrix():
    assert Q.k == 5
    assert str(Q) == "4 1 3 5 2"
    assert PermutationMatrix.from_matrix(Q.to_matrix()) == Q
    assert Q.inverse() == (2, 5, 3, 1, 4)
    with pytest.raises(ValueError):
        PermutationMatrix((1, 1))
    with pytest.raises(ValueError):
        PermutationMatrix.from_matrix(Matrix01.full(2))


# -- transforms -----------------------------------------------------------------------


def test_transform_examples():
    assert apply_transform(Transform.ROT90, I2) == ANTI2
    assert str(apply_transform(Transform.FLIP_VERTICAL, Q)) == "2 5 3 1 4"
    assert apply_transform(Transform.TRANSPOSE, Q).sigma == Q.inverse()


def test_rot90_is_clockwise():
    m = Matrix01.from_rows([[1, 0, 0], [0, 0, 0]])
    # the top-left corner moves to the top-right corner
    assert apply_transform(Transform.ROT90, m) == Matrix01.from_rows([[0, 1], [0, 0], [0, 0]])


def test_group_laws():
    m = random_matrix(random.Random(1), 3, 4, 0.5)
    for a, b in itertools.product(Transform, repeat=2):
        assert apply_transform(a.then(b), m) == apply_transform(b, apply_transform(a, m))
    for t in Transform:
        assert apply_transform(t.inverse(), apply_transform(t, m)) == m
        assert t.then(Transform.IDENTITY) is t
    assert {t.then(u) for t in Transform for u in Transform} == set(Transform)
    r = Transform.ROT90
    assert r.then(r).then(r).then(r) is Transform.IDENTITY
    assert Transform.from_label(Transform.ANTI_TRANSPOSE.label) is Transform.ANTI_TRANSPOSE


def test_orbits():
    assert {p.to_matrix() for p in orbit(PermutationMatrix.identity(2))} == {I2, ANTI2}
    # Q is fixed by the quarter turn, so only a reflection moves it
    assert apply_transform(Transform.ROT90, Q) == Q
    assert {str(q) for q in orbit(Q)} == {"4 1 3 5 2", "2 5 3 1 4"}
    R = PermutationMatrix.parse("4 1 3 6 2 5")
    assert len(orbit(R)) == 8
    assert all(orbit(q) == orbit(R) for q in orbit(R))


# -- containment ----------------------------------------------------------------------


def test_containment_examples(t_q):
    assert contains(Matrix01.identity(3), I2)
    assert not contains(ANTI2, I2)
    assert not contains(t_q, Q.to_matrix())
    assert find_embedding(t_q, Q.to_matrix()) is None
    flipped = t_q.with_cell((16, 16))
    assert contains(flipped, Q.to_matrix())
    emb = find_embedding(flipped, Q.to_matrix())
    assert emb.validate(flipped, Q.to_matrix())
    assert find_embedding(Matrix01.identity(3), I2) == Embedding((1, 2), (1, 2))


def test_pattern_larger_than_host():
    assert not contains(I2, Matrix01.identity(3))
    assert find_embedding(Matrix01.zeros(1, 5), Matrix01.zeros(2, 1)) is None


def test_zero_rows_in_pattern_still_need_room():
    pattern = Matrix01.from_rows([[1, 0], [0, 0], [0, 1]])
    assert not contains(Matrix01.identity(2), pattern)
    host = Matrix01.identity(3)
    emb = find_embedding(host, pattern)
    assert emb is not None and emb.validate(host, pattern)


def test_flip_creates_examples(t_q):
    assert flip_creates(Matrix01.zeros(3), Matrix01.identity(1), (2, 2))
    assert not flip_creates(Matrix01.zeros(3), I2, (1, 1))
    assert all(flip_creates(t_q, Q.to_matrix(), (16, c)) for c in range(1, 32))
    with pytest.raises(ValueError):
        flip_creates(Matrix01.identity(2), I2, (1, 1))


def test_embedding_validate_rejects_bad_maps():
    host = Matrix01.identity(3)
    assert not Embedding((2, 1), (1, 2)).validate(host, I2)
    assert not Embedding((1, 2), (1, 3)).validate(host, I2)
    assert not Embedding((1,), (1, 2)).validate(host, I2)


@settings(max_examples=300, deadline=None)
@given(host=matrices, pattern=matrices)
def test_contains_agrees_with_brute_force(host, pattern):
    assert contains(host, pattern) == contains_brute(host.to_rows(), pattern.to_rows())
    emb = find_embedding(host, pattern)
    if emb is not None:
        assert emb.validate(host, pattern)


@settings(max_examples=200, deadline=None)
@given(host=matrices, pattern=matrices, data=st.data())
def test_through_matches_flip(host, pattern, data):
    zeros = host.zeros_cells()
    if not zeros or contains(host, pattern):
        return
    cell = data.draw(st.sampled_from(zeros))
    flipped = host.with_cell(cell)
    emb = find_embedding_through(host, pattern, cell)
    assert (emb is not None) == contains_brute(flipped.to_rows(), pattern.to_rows())
    if emb is not None:
        assert emb.validate(flipped, pattern)


@settings(max_examples=200, deadline=None)
@given(host=matrices, pattern=matrices, data=st.data())
def test_containment_is_monotone(host, pattern, data):
    if not contains(host, pattern) or not host.ones():
        return
    bigger = host
    for cell in data.draw(st.lists(st.sampled_from(host.zeros_cells() or [(1, 1)]), max_size=4)):
        bigger = bigger.with_cell(cell)
    assert contains(bigger, pattern)
    assert bigger.dominates(host)


def test_dihedral_equivariance_seeded():
    rng = random.Random(20240611)
    for _ in range(500):
        host = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7), rng.random())
        pattern = random_matrix(rng, rng.randint(1, 3), rng.randint(1, 3), rng.random())
        base = contains(host, pattern)
        for t in Transform:
            assert contains(apply_transform(t, host), apply_transform(t, pattern)) == base
