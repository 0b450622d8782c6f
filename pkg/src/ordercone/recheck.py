"""Independent re-verification of emitted certificates.

Works on the JSON forms only and imports nothing but exact arithmetic: no LP
solve, no double description.  Each function returns a list of problems; an
empty list means the certificate checks out.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import add, dot, identity, is_zero, matmul, matvec, neg, rank, sub, vec


def _mat(rows) -> tuple:
    return tuple(vec(r) for r in rows)


def _combo(y: Sequence[Fraction], A: Sequence[Sequence]) -> list:
    n = len(A[0]) if A else 0
    return [sum((yi * row[j] for yi, row in zip(y, A)), Fraction(0)) for j in range(n)]


def _in_cone(H, x) -> bool:
    return all(dot(a, x) >= 0 for a in H)


# -- LP records ------------------------------------------------------------


def lp_record(lp, outcome) -> dict:
    """JSON record of an LP and its outcome, for :func:`recheck_lp_record`."""
    s = lambda v: None if v is None else [str(q) for q in v]  # noqa: E731
    return {
        "objective": s(lp.objective),
        "A": [s(r) for r in lp.A],
        "b": s(lp.b),
        "status": outcome.status,
        "value": None if outcome.value is None else str(outcome.value),
        "point": s(outcome.point),
        "dual": s(outcome.dual),
        "ray": s(outcome.ray),
        "farkas": s(outcome.farkas.multipliers) if outcome.farkas else None,
    }


def recheck_lp_record(rec: dict) -> list:
    c, A, b = vec(rec["objective"]), _mat(rec["A"]), vec(rec["b"])
    problems = []
    status = rec["status"]
    if status == "infeasible":
        y = vec(rec["farkas"] or [])
        if len(y) != len(A) or any(v < 0 for v in y):
            problems.append("farkas multipliers malformed or negative")
        elif any(_combo(y, A)) or dot(y, b) <= 0:
            problems.append("farkas multipliers do not certify emptiness")
        return problems
    z = vec(rec["point"] or [])
    if len(z) != len(c) or any(dot(a, z) < bi for a, bi in zip(A, b)):
        problems.append("point is not feasible")
    if status == "unbounded":
        r = vec(rec["ray"] or [])
        if len(r) != len(c) or any(dot(a, r) < 0 for a in A) or dot(c, r) >= 0:
            problems.append("ray is not an improving recession direction")
        return problems
    if status != "optimal":
        return [f"unknown status {status!r}"]
    y = vec(rec["dual"] or [])
    if len(y) != len(A) or any(v < 0 for v in y):
        problems.append("dual multipliers malformed or negative")
    elif _combo(y, A) != list(c):
        problems.append("dual multipliers do not reproduce the objective")
    elif not problems and not (dot(c, z) == dot(b, y) == Fraction(rec["value"])):
        problems.append("primal and dual values differ")
    return problems


# -- disjointness ----------------------------------------------------------


def _upper_bounds(H, S):
    rows, rhs = [], []
    for s in S:
        for a in H:
            rows.append(a)
            rhs.append(dot(a, s))
    return rows, rhs


def _valid_proof(P, row, rhs, proof) -> bool:
    A, b = P
    y = vec(proof["y"])
    if len(y) != len(A) or any(v < 0 for v in y):
        return False
    combo = _combo(y, A)
    if proof["kind"] == "farkas":
        return not any(combo) and dot(y, b) > 0
    return proof["kind"] == "dual" and combo == list(row) and dot(y, b) >= rhs


def recheck_disjointness(H, x, y, record: dict) -> list:
    """Check a disjointness record (``disjoint`` with proofs, or a separating point)."""
    x, y = vec(x), vec(y)
    s, d = add(x, y), sub(x, y)
    u1 = _upper_bounds(H, [s, neg(s)])
    u2 = _upper_bounds(H, [d, neg(d)])
    if record["disjoint"]:
        for key, P, Q in (("u1⊆u2", u1, u2), ("u2⊆u1", u2, u1)):
            proofs = record["proofs"].get(key, [])
            if len(proofs) != len(Q[0]):
                return [f"{key}: expected {len(Q[0])} row proofs, got {len(proofs)}"]
            for row, rhs, proof in zip(Q[0], Q[1], proofs):
                if not _valid_proof(P, row, rhs, proof):
                    return [f"{key}: invalid row proof"]
        return []
    inside, outside = (u1, u2) if record["direction_failed"] == "u1⊄u2" else (u2, u1)
    z, i = vec(record["witness"]), int(record["violated_row"])
    if any(dot(a, z) < bi for a, bi in zip(*inside)):
        return ["separating point is not in the claimed upper-bound set"]
    if dot(outside[0][i], z) >= outside[1][i]:
        return ["separating point does not violate the named row"]
    return []


# -- band certificates -----------------------------------------------------


def recheck_band_certificate(cert: dict) -> list:
    """Re-verify every stored witness of a serialized ``BandCertificate``."""
    problems = []
    H = _mat(cert["cone"]["halfspaces"])
    G = _mat(cert["cone"]["generators"])
    n = int(cert["cone"]["dim"])
    P = _mat(cert["projection"])
    Q = tuple(sub(i, p) for i, p in zip(identity(n), P))
    if any(not _in_cone(H, g) for g in G):
        problems.append("cone generators violate the halfspaces")
    if matmul(P, P) != P:
        problems.append("projection is not idempotent")
    rb, kb = _mat(cert["range_basis"]), _mat(cert["kernel_basis"])
    rpos, kpos = _mat(cert["range_pos_gens"]), _mat(cert["kernel_pos_gens"])

    checks = {c["name"]: c for c in cert["checks"]}
    if cert.get("valid") != all(c["passed"] for c in cert["checks"]):
        problems.append("valid flag disagrees with the checks")

    c = checks.get("order_projection")
    if c is not None:
        if c["passed"]:
            for g in G:
                if not (_in_cone(H, matvec(P, g)) and _in_cone(H, matvec(Q, g))):
                    problems.append("order_projection: a generator image leaves the cone")
                    break
        else:
            w = c["witness"]
            M = P if w["operator"] == "P" else Q
            image = matvec(M, G[int(w["generator"])])
            if dot(H[int(w["violated_row"])], image) >= 0:
                problems.append("order_projection: witness does not violate its row")

    if "positive_range_identity" in checks:
        for h in rb:
            if matvec(P, h) != h:
                problems.append("range basis vector not fixed by P")
        for h in kb:
            if not is_zero(matvec(P, h)):
                problems.append("kernel basis vector not annihilated by P")
        for h in rpos:
            if not _in_cone(H, h) or matvec(P, h) != h:
                problems.append("range positive generator is not in PX cap X+")
        for h in kpos:
            if not _in_cone(H, h) or not is_zero(matvec(P, h)):
                problems.append("kernel positive generator is not in QX cap X+")
        rb_rank = rank(rb) if rb else 0
        if rb_rank != len(rb) or len(rb) != rank(P):
            problems.append("range basis is not a basis of the range")
        if len(rb) + len(kb) != n or (kb and rank(kb) != len(kb)):
            problems.append("kernel basis has the wrong size or is dependent")
        c = checks["positive_range_identity"]
        if c["passed"]:
            images = [matvec(P, g) for g in G]
            for lam, target in zip(c["witness"]["images_in_range_cone"], images):
                lam = vec(lam)
                if any(v < 0 for v in lam) or _combo(lam, rpos) != list(target):
                    problems.append("positive_range_identity: bad coefficients for P g")
            for mu, target in zip(c["witness"]["range_in_image_cone"], rpos):
                mu = vec(mu)
                if any(v < 0 for v in mu) or _combo(mu, images) != list(target):
                    problems.append("positive_range_identity: bad coefficients for a range generator")

    for name, gens, basis in (("directedness_range", rpos, rb), ("directedness_kernel", kpos, kb)):
        c = checks.get(name)
        if c is not None:
            r = rank(gens) if gens else 0
            if (r == len(basis)) != c["passed"] or c["witness"]["rank"] != r:
                problems.append(f"{name}: recorded rank disagrees")

    c = checks.get("cross_disjointness")
    if c is not None:
        records = c["witness"] if c["passed"] else [c["witness"]]
        if c["passed"] and len(records) != len(rpos) * len(kpos):
            problems.append("cross_disjointness: missing pairs")
        for rec in records:
            i, j = rec["pair"]
            if rec["disjoint"] != c["passed"]:
                problems.append("cross_disjointness: record contradicts the check")
            problems += recheck_disjointness(H, rpos[i], kpos[j], rec)

    c = checks.get("falsification_probes")
    if c is not None and c["passed"]:
        for rec in c["witness"]:
            x = vec(rec["x"])
            if matvec(P, x) == x:
                problems.append("probe lies in the range")
            if rec["disjoint"]:
                problems.append("probe record claims disjointness")
            problems += recheck_disjointness(H, x, kpos[int(rec["generator"])], rec)

    c = checks.get("corollary_precondition")
    if c is not None:
        records = c["witness"] if c["passed"] else [c["witness"]]
        for rec in records:
            problems += recheck_disjointness(H, rec["w"], rec["v"], rec)
    return problems
