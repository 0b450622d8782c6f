"""The re-checker must accept honest certificates and reject tampered ones."""

import copy

import pytest
from hypothesis import given, strategies as st

from ordercone.band import ProjectionMatrix, certify_projection_band
from ordercone.exact import jsonable, mat, vec
from ordercone.genlab import gen_direct_sum, gen_l1_cone, gen_vector
from ordercone.lp import LinearProgram, solve_lp
from ordercone.order import is_disjoint
from ordercone.recheck import lp_record, recheck_band_certificate, recheck_disjointness, recheck_lp_record

from conftest import cones


def _disjoint_record(v):
    out = {"disjoint": v.disjoint}
    if v.disjoint:
        out["proofs"] = {k: [{"kind": kind, "y": [str(q) for q in y]} for kind, y in ps] for k, ps in v.proofs.items()}
    else:
        out.update(direction_failed=v.direction_failed, witness=[str(q) for q in v.witness],
                   violated_row=v.violated_row)
    return out


@given(cones(), st.integers(0, 2**31), st.integers(0, 2**31))
def test_disjointness_records_recheck(K, s1, s2):
    x, y = gen_vector(K, s1), gen_vector(K, s2)
    rec = _disjoint_record(is_disjoint(K, x, y))
    assert recheck_disjointness(K.halfspaces, x, y, rec) == []


def test_tampered_lp_record_rejected():
    lp = LinearProgram(vec([1]), mat([[1], [-1]]), vec([3, -5]))
    rec = lp_record(lp, solve_lp(lp))
    assert recheck_lp_record(rec) == []
    bad = dict(rec, value="2")
    assert recheck_lp_record(bad)
    bad = dict(rec, dual=["0", "0"])
    assert recheck_lp_record(bad)


def test_tampered_band_certificate_rejected():
    inst = gen_direct_sum(2, 1, 4, blocks=("orthant", "orthant"))
    cert = certify_projection_band(inst.cone, inst.projection, probes=4).to_json()
    assert recheck_band_certificate(cert) == []

    bad = copy.deepcopy(cert)
    bad["kernel_pos_gens"][0] = bad["range_pos_gens"][0]
    assert recheck_band_certificate(bad)

    bad = copy.deepcopy(cert)
    cross = next(c for c in bad["checks"] if c["name"] == "cross_disjointness")
    cross["witness"][0]["proofs"]["u1⊆u2"][0]["y"][0] = "-1"
    assert recheck_band_certificate(bad)

    bad = copy.deepcopy(cert)
    bad["valid"] = False
    assert recheck_band_certificate(bad)


def test_negative_certificate_witness_rechecks():
    K = gen_l1_cone(2).cone
    D = mat([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
    cert = certify_projection_band(K, ProjectionMatrix(D)).to_json()
    assert recheck_band_certificate(cert) == []
    bad = copy.deepcopy(cert)
    bad["checks"][0]["witness"]["generator"] = None
    with pytest.raises(TypeError):
        recheck_band_certificate(bad)


def test_jsonable_is_what_certificates_use():
    assert jsonable({"a": (1,)}) == {"a": [1]}
