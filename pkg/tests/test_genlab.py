import pytest
from hypothesis import given, strategies as st

from ordercone.band import is_order_projection
from ordercone.cone import contains, leq
from ordercone.exact import determinant, from_columns, inverse, matvec, zeros
from ordercone.genlab import (
    InstanceSpec,
    combine,
    derive_seed,
    gen_direct_sum,
    gen_l1_cone,
    gen_positive_vector,
    gen_random_cone,
    gen_simplicial,
    generate,
)

from conftest import vectors


def test_simplicial_conjugation_oracle():
    inst = gen_simplicial(2, 5)
    M = from_columns(inst.cone.generators)
    assert determinant(M) != 0
    Minv = inverse(M)
    for x in [(1, 0), (0, 1), (3, -1), (-2, 5)]:
        coords = matvec(Minv, x)
        assert bool(contains(inst.cone, x)) == all(c >= 0 for c in coords)


def test_one_dimensional_order_is_total():
    K = gen_simplicial(1, 9).cone
    for a, b in [((1,), (2,)), ((-3,), (1,)), ((5,), (5,))]:
        assert leq(K, a, b) or leq(K, b, a)


def test_direct_sum_identity_basis():
    inst = gen_direct_sum(1, 1, 0, blocks=("orthant", "orthant"), basis_change=False)
    assert set(inst.cone.generators) == {(1, 0), (0, 1)}
    assert inst.projection.M == ((1, 0), (0, 0))


@pytest.mark.parametrize("blocks", [None, ("l1", "orthant"), ("random", "simplicial")])
def test_direct_sum_projection_is_order_projection(blocks):
    n1 = 3 if blocks and blocks[0] in ("l1", "random") else 2
    inst = gen_direct_sum(n1, 2, 7, blocks=blocks)
    assert is_order_projection(inst.cone, inst.projection)


def test_l1_family():
    K = gen_l1_cone(2).cone
    assert len(K.generators) == 4 and len(K.halfspaces) == 4
    K3 = gen_l1_cone(3).cone
    assert K3.dim == 4 and len(K3.generators) == 6 and K3.pointed and K3.generating
    assert not K3.simplicial
    with pytest.raises(ValueError):
        gen_l1_cone(1)


def test_random_cone_flags():
    K = gen_random_cone(2, 3, 1).cone
    assert K.pointed and K.generating and len(K.generators) <= 3
    with pytest.raises(ValueError):
        gen_random_cone(3, 2, 1)


def test_positive_vector_edge_cases():
    K = gen_l1_cone(2).cone
    assert combine(K.generators, [0] * 4, 3) == zeros(3)
    assert combine(K.generators, [1, 0, 0, 0], 3) == K.generators[0]


@given(st.sampled_from(["simplicial", "direct_sum", "l1_cone", "random_rays"]), st.integers(0, 2**40))
def test_regeneration_is_bit_exact(kind, seed):
    params = {
        "simplicial": {"n": 3},
        "direct_sum": {"n1": 2, "n2": 1},
        "l1_cone": {"m": 2},
        "random_rays": {"n": 3, "k": 5},
    }[kind]
    a = generate(kind, params, seed)
    b = generate(a.kind, a.params, a.seed)
    assert a.dumps() == b.dumps()
    assert InstanceSpec.from_json(a.to_json()).canonical_hash() == a.canonical_hash()
    assert a.cone.pointed and a.cone.generating
    for _ in range(3):
        assert contains(a.cone, gen_positive_vector(a.cone, derive_seed(seed, _)))


def test_derive_seed_is_stable():
    assert derive_seed(1, 2) == derive_seed(1, 2) != derive_seed(2, 1)
    assert 0 <= derive_seed("x") < 2**63
