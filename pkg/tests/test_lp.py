import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from ordercone.exact import mat, vec
from ordercone.lp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    HPolyhedron,
    LinearProgram,
    check_validity_proof,
    is_feasible,
    is_valid_inequality,
    solve_lp,
)
from ordercone.recheck import lp_record, recheck_lp_record

from conftest import matrices, vectors


def lp(c, A, b):
    return LinearProgram(vec(c), mat(A), vec(b))


def test_bounded_example():
    # min z s.t. z >= 3, -z >= -5
    out = solve_lp(lp([1], [[1], [-1]], [3, -5]))
    assert out.status == OPTIMAL and out.value == 3 and out.point == (3,)
    assert out.check(lp([1], [[1], [-1]], [3, -5]))


def test_infeasible_example():
    # z >= 1 and -z >= 0
    prob = lp([1], [[1], [-1]], [1, 0])
    out = solve_lp(prob)
    assert out.status == INFEASIBLE
    assert out.farkas.multipliers == (1, 1)
    assert out.check(prob)


def test_unbounded_example():
    prob = lp([-1], [[1]], [0])
    out = solve_lp(prob)
    assert out.status == UNBOUNDED and out.ray == (1,)
    assert out.check(prob)


def test_degenerate_and_redundant_rows():
    # the same constraint three times plus a parallel weaker copy
    prob = lp([1, 1], [[1, 0], [1, 0], [1, 0], [2, 0], [0, 1]], [1, 1, 1, 1, 0])
    out = solve_lp(prob)
    assert out.status == OPTIMAL and out.value == 1 and out.check(prob)


def test_shape_validation():
    with pytest.raises(ValueError):
        lp([1, 2], [[1]], [0])
    with pytest.raises(ValueError):
        lp([1], [[1]], [0, 1])
    with pytest.raises(ValueError):
        lp([], [], [])


def test_validity_proofs():
    P = HPolyhedron(mat([[1, 0], [0, 1]]), vec([1, 2]))
    v = is_valid_inequality(P, vec([1, 1]), 3)
    assert v.holds and check_validity_proof(P, vec([1, 1]), 3, v.proof)
    w = is_valid_inequality(P, vec([1, 1]), 4)
    assert not w.holds and P.contains(w.witness) and w.witness[0] + w.witness[1] < 4
    # unbounded below: witness must still violate
    u = is_valid_inequality(P, vec([-1, 0]), -100)
    assert not u.holds and P.contains(u.witness) and -u.witness[0] < -100
    empty = HPolyhedron(mat([[1], [-1]]), vec([1, 0]))
    e = is_valid_inequality(empty, vec([1]), 10**6)
    assert e.holds and e.proof[0] == "farkas"


def _scipy_status(c, A, b):
    res = linprog(
        np.array(c, dtype=float),
        A_ub=-np.array(A, dtype=float),
        b_ub=-np.array(b, dtype=float),
        bounds=[(None, None)] * len(c),
        method="highs",
    )
    return {0: OPTIMAL, 2: INFEASIBLE, 3: UNBOUNDED}.get(res.status), res.fun


def test_against_float_oracle():
    rng = random.Random(20261015)
    agree = 0
    for _ in range(300):
        n, m = rng.randint(1, 4), rng.randint(1, 7)
        A = [[Fraction(rng.randint(-5, 5), rng.choice((1, 2))) for _ in range(n)] for _ in range(m)]
        b = [Fraction(rng.randint(-5, 5)) for _ in range(m)]
        c = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        prob = lp(c, A, b)
        out = solve_lp(prob)
        assert out.check(prob)
        status, fun = _scipy_status(c, A, b)
        if status is None:
            continue
        assert out.status == status
        if status == OPTIMAL:
            assert abs(float(out.value) - fun) < 1e-7
        agree += 1
    assert agree > 250


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(vectors(n), matrices(5, n), vectors(5))))
def test_every_outcome_carries_a_checkable_certificate(data):
    c, A, b = data
    prob = LinearProgram(c, A, b)
    out = solve_lp(prob)
    assert out.check(prob)
    assert recheck_lp_record(lp_record(prob, out)) == []


@given(matrices(4, 2), vectors(4))
def test_feasibility(A, b):
    v = is_feasible(A, b)
    if v.feasible:
        assert HPolyhedron(A, b).contains(v.point)
    else:
        assert v.certificate.check(A, b)
