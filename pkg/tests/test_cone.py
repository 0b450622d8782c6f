import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ordercone.cone import (
    ConeError,
    ConeSpace,
    contains,
    hrep_to_vrep,
    is_bounded_multiple,
    leq,
    subspace_cone_generators,
    vrep_contains,
    vrep_to_hrep,
)
from ordercone.exact import add, dot, identity, mat, vec
from ordercone.genlab import gen_l1_cone, gen_random_cone, gen_simplicial, l1_generators

from conftest import cones, vectors

L1_ROWS = {(-1, -1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, 1)}


def rows(A):
    return {tuple(int(x) for x in r) for r in A}


def test_vrep_to_hrep_orthant():
    assert rows(vrep_to_hrep([vec([1, 0]), vec([0, 1])])) == {(1, 0), (0, 1)}


def test_vrep_to_hrep_l1():
    assert rows(vrep_to_hrep(l1_generators(2))) == L1_ROWS


def test_vrep_to_hrep_single_ray_adds_equality_pair():
    assert rows(vrep_to_hrep([vec([1, 1])])) == {(1, 1), (-1, 1), (1, -1)}


def test_hrep_to_vrep_examples():
    assert {tuple(r) for r in hrep_to_vrep(identity(3))} == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert {tuple(r) for r in hrep_to_vrep(identity(2))} == {(1, 0), (0, 1)}
    got = {tuple(r) for r in hrep_to_vrep(mat(sorted(L1_ROWS)))}
    assert got == {(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)}


def test_hrep_to_vrep_rejects_lineality():
    with pytest.raises(ConeError) as exc:
        hrep_to_vrep(mat([[1, 0, 0], [0, 1, 0]]))
    line = exc.value.certificate
    assert line[0] == line[1] == 0 and line[2] != 0


def test_construction_rejects_degenerate_cones():
    with pytest.raises(ConeError) as exc:
        ConeSpace.from_generators([(1, 0, 0), (0, 1, 0)])
    assert exc.value.certificate is not None
    with pytest.raises(ConeError):
        ConeSpace.from_generators([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(ConeError):
        ConeSpace.from_halfspaces([(1, 0)])


def test_membership_examples(orthant2, l1_cone):
    assert contains(orthant2, vec([1, 0]))
    assert contains(l1_cone, vec([1, 0, 1]))
    v = contains(l1_cone, vec([1, 0, 0]))
    # both rows with a -z1 term are violated; the first one is reported
    assert not v and dot(l1_cone.halfspaces[v.violated_row], (1, 0, 0)) < 0
    assert rows([l1_cone.halfspaces[v.violated_row]]) <= {(-1, -1, 1), (-1, 1, 1)}


def test_leq_examples(orthant2, l1_cone):
    assert leq(orthant2, vec([0, 0]), vec([1, 2]))
    assert not leq(orthant2, vec([1, 0]), vec([0, 1]))
    assert leq(l1_cone, vec([0, 0, 0]), vec(["1/2", "1/2", 1]))


def test_bounded_multiple_examples(orthant2):
    assert is_bounded_multiple(orthant2, vec([-1, 0]), vec([0, 0]))
    assert not is_bounded_multiple(orthant2, vec([1, -1]), vec([5, 5]))
    assert is_bounded_multiple(orthant2, vec([0, 0]), vec([2, 3]))


def test_subspace_cone_generators():
    K3 = ConeSpace.from_generators(identity(3))
    got = {tuple(r) for r in subspace_cone_generators(K3, [vec([1, 0, 0]), vec([0, 1, 0])])}
    assert got == {(1, 0, 0), (0, 1, 0)}
    L = gen_l1_cone(2).cone
    assert subspace_cone_generators(L, [vec([1, 0, 0]), vec([0, 1, 0])]) == []
    assert [tuple(r) for r in subspace_cone_generators(L, [vec([1, 0, 1])])] == [(1, 0, 1)]


def test_json_roundtrip_and_tamper_detection():
    K = gen_random_cone(3, 5, 11).cone
    assert ConeSpace.from_json(K.to_json()) == K
    data = K.to_json()
    data["halfspaces"] = data["halfspaces"][1:]
    with pytest.raises(ValueError):
        ConeSpace.from_json(data)


@pytest.mark.parametrize("K", [gen_l1_cone(2).cone, gen_random_cone(3, 6, 5).cone, gen_simplicial(3, 2).cone,
                               gen_random_cone(4, 6, 9).cone])
def test_representations_agree_on_1000_points(K):
    rng = random.Random(7)
    for _ in range(1000):
        x = tuple(Fraction(rng.randint(-6, 6), rng.choice((1, 2))) for _ in range(K.dim))
        assert bool(contains(K, x)) == vrep_contains(K.generators, x)


@given(cones())
def test_round_trip(K):
    assert {tuple(r) for r in hrep_to_vrep(K.halfspaces)} == {tuple(r) for r in K.generators}
    assert all(contains(K, g) for g in K.generators)


@given(cones(dims=(3,)), vectors(3), vectors(3), vectors(3))
def test_partial_order(K, x, y, z):
    assert leq(K, x, x)
    if leq(K, x, y) and leq(K, y, x):
        assert x == y
    if leq(K, x, y) and leq(K, y, z):
        assert leq(K, x, z)
    assert bool(leq(K, x, y)) == bool(leq(K, add(x, z), add(y, z)))


@given(cones(dims=(3,)), vectors(3), vectors(3))
def test_archimedean(K, x, y):
    if is_bounded_multiple(K, x, y):
        assert leq(K, x, (0, 0, 0))
