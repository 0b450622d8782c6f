"""Order projections, band projections and their certificates.

An order projection is an idempotent ``P`` with ``P`` and ``I - P`` both
positive.  :func:`certify_projection_band` replays, on a concrete cone, the
argument that the range of such a ``P`` is a projection band whose disjoint
complement is the kernel; every step stores a witness that
:mod:`ordercone.recheck` can verify by evaluation alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cone import ConeSpace, conic_coefficients, contains, subspace_cone_generators
from .exact import (
    RMatrix,
    RVector,
    add,
    column_space_basis,
    format_vector,
    from_columns,
    identity,
    inverse,
    is_zero,
    jsonable,
    kernel_basis,
    mat_sub,
    matmul,
    matvec,
    neg,
    primitive,
    rank,
    scale,
    sub,
    transpose,
    vec,
    zeros,
)
from .order import PreconditionError, is_disjoint, is_disjoint_to_span

DEFAULT_PROBES = 64

CHECK_NAMES = (
    "order_projection",
    "positive_range_identity",
    "directedness_range",
    "directedness_kernel",
    "cross_disjointness",
    "falsification_probes",
)


class DecompositionError(ValueError):
    """``X`` is not the direct sum of the offered subspaces."""

    def __init__(self, message: str, rank_found: int, dim: int):
        super().__init__(message)
        self.rank_found = rank_found
        self.dim = dim


@dataclass(frozen=True)
class ProjectionMatrix:
    """Square matrix with ``M M = M`` (checked on construction)."""

    M: RMatrix

    def __post_init__(self):
        M = tuple(vec(r) for r in self.M)
        object.__setattr__(self, "M", M)
        n = len(M)
        if n == 0 or any(len(r) != n for r in M):
            raise ValueError("projection matrix must be square and nonempty")
        if matmul(M, M) != M:
            raise ValueError("matrix is not idempotent")

    @property
    def dim(self) -> int:
        return len(self.M)

    def __call__(self, x: Sequence) -> RVector:
        return matvec(self.M, vec(x))

    def complement(self) -> "ProjectionMatrix":
        return ProjectionMatrix(mat_sub(identity(self.dim), self.M))

    def to_json(self) -> list:
        return [format_vector(r) for r in self.M]

    @classmethod
    def from_json(cls, rows) -> "ProjectionMatrix":
        return cls(tuple(vec(r) for r in rows))

    @classmethod
    def onto_along(cls, range_basis: Sequence[RVector], kernel_basis_: Sequence[RVector]) -> "ProjectionMatrix":
        """Projection onto ``span(range_basis)`` along ``span(kernel_basis_)``."""
        vectors = [vec(v) for v in range_basis] + [vec(v) for v in kernel_basis_]
        n = len(vectors[0]) if vectors else 0
        r = rank(vectors) if vectors else 0
        if len(vectors) != n or r != n:
            raise DecompositionError(f"subspaces give rank {r} in dimension {n}", r, n)
        T = from_columns(vectors)
        k = len(range_basis)
        D = tuple(tuple(Fraction(1 if (i == j and i < k) else 0) for j in range(n)) for i in range(n))
        return cls(matmul(matmul(T, D), inverse(T)))


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.holds


def is_positive_operator(K: ConeSpace, M: Sequence[Sequence]) -> Verdict:
    """``M`` maps every cone generator into the cone."""
    M = tuple(vec(r) for r in M)
    if len(M) != K.dim or any(len(r) != K.dim for r in M):
        raise ValueError("operator must be square of the cone's dimension")
    for i, g in enumerate(K.generators):
        image = matvec(M, g)
        v = contains(K, image)
        if not v:
            return Verdict(False, {"generator": i, "image": image, "violated_row": v.violated_row})
    return Verdict(True)


def is_order_projection(K: ConeSpace, P: ProjectionMatrix) -> Verdict:
    """``P`` and ``I - P`` positive, cross-checked against ``0 <= P x <= x`` on generators."""
    via_operators = is_positive_operator(K, P.M)
    witness = None
    if via_operators:
        comp = is_positive_operator(K, P.complement().M)
        if not comp:
            witness = dict(comp.witness, operator="I-P")
    else:
        witness = dict(via_operators.witness, operator="P")
    sandwich = all(contains(K, P(g)) and contains(K, sub(g, P(g))) for g in K.generators)
    if sandwich != (witness is None):
        raise AssertionError("the two renderings of the order-projection test disagree")
    return Verdict(witness is None, witness)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: object = None
    detail: str = ""


@dataclass(frozen=True)
class BandCertificate:
    cone: ConeSpace
    P: ProjectionMatrix
    range_basis: tuple = ()
    kernel_basis: tuple = ()
    range_pos_gens: tuple = ()
    kernel_pos_gens: tuple = ()
    checks: tuple = ()
    seed: int = 0
    probes: int = DEFAULT_PROBES

    @property
    def valid(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def failed(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "cone": self.cone.to_json(),
            "projection": self.P.to_json(),
            "range_basis": [format_vector(v) for v in self.range_basis],
            "kernel_basis": [format_vector(v) for v in self.kernel_basis],
            "range_pos_gens": [format_vector(v) for v in self.range_pos_gens],
            "kernel_pos_gens": [format_vector(v) for v in self.kernel_pos_gens],
            "checks": [
                {"name": c.name, "passed": c.passed, "witness": jsonable(c.witness), "detail": c.detail}
                for c in self.checks
            ],
            "seed": self.seed,
            "probes": self.probes,
            "valid": self.valid,
        }


def _proofs_json(verdict) -> dict:
    return {
        key: [{"kind": kind, "y": list(y)} for kind, y in proofs]
        for key, proofs in verdict.proofs.items()
    }


def _disjoint_witness(verdict) -> dict:
    if verdict.disjoint:
        return {"disjoint": True, "proofs": _proofs_json(verdict)}
    return {
        "disjoint": False,
        "direction_failed": verdict.direction_failed,
        "witness": verdict.witness,
        "violated_row": verdict.violated_row,
    }


def _random_combination(rng: random.Random, basis: Sequence[RVector], n: int) -> RVector:
    out = zeros(n)
    for v in basis:
        coef = Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
        out = add(out, scale(coef, v))
    return out


def _positive_range_identity(K: ConeSpace, P: ProjectionMatrix, range_pos_gens: Sequence[RVector]) -> CheckResult:
    """The cone generated by ``{P g}`` equals ``PX cap X+`` (mutual membership)."""
    image_coeffs = []
    for g in K.generators:
        lam = conic_coefficients(range_pos_gens, P(g))
        if lam is None:
            return CheckResult("positive_range_identity", False, {"image_of_generator": P(g)},
                               "P g is outside the cone spanned by the range's positive generators")
        image_coeffs.append(lam)
    range_coeffs = []
    images = [P(g) for g in K.generators]
    for h in range_pos_gens:
        mu = conic_coefficients(images, h)
        if mu is None:
            return CheckResult("positive_range_identity", False, {"range_generator": h},
                               "positive range generator is not a combination of images P g")
        range_coeffs.append(mu)
    return CheckResult(
        "positive_range_identity",
        True,
        {"images_in_range_cone": image_coeffs, "range_in_image_cone": range_coeffs},
    )


def certify_projection_band(
    K: ConeSpace, P: ProjectionMatrix, probes: int = DEFAULT_PROBES, seed: int = 0
) -> BandCertificate:
    """Certify that ``P`` is the band projection onto its range.

    Runs in order: order-projection test, positive generators of range and
    kernel, directedness of both, pairwise disjointness of the positive
    generators, and seeded probes ``b + d`` (``b`` in the range, ``d != 0``
    in the kernel) that must each fail to be disjoint to the kernel.  The
    first failing step ends the certificate.
    """
    if P.dim != K.dim:
        raise ValueError("projection and cone dimensions differ")
    n = K.dim
    base = dict(cone=K, P=P, seed=seed, probes=probes)
    checks = []

    op = is_order_projection(K, P)
    checks.append(CheckResult("order_projection", op.holds, op.witness))
    if not op:
        return BandCertificate(checks=tuple(checks), **base)

    rb = tuple(vec(primitive(v)) for v in column_space_basis(P.M))
    kb = tuple(vec(primitive(v)) for v in kernel_basis(P.M)) if len(rb) < n else ()
    rpos = tuple(subspace_cone_generators(K, rb))
    kpos = tuple(subspace_cone_generators(K, kb))
    base.update(range_basis=rb, kernel_basis=kb, range_pos_gens=rpos, kernel_pos_gens=kpos)

    def done():
        return BandCertificate(checks=tuple(checks), **base)

    ident = _positive_range_identity(K, P, rpos)
    checks.append(ident)
    if not ident.passed:
        return done()

    for name, gens, basis in (("directedness_range", rpos, rb), ("directedness_kernel", kpos, kb)):
        r = rank(gens) if gens else 0
        ok = r == len(basis)
        checks.append(CheckResult(name, ok, {"rank": r, "dim": len(basis)}))
        if not ok:
            return done()

    pairs = []
    for i, g in enumerate(rpos):
        for j, h in enumerate(kpos):
            v = is_disjoint(K, g, h)
            if not v:
                checks.append(CheckResult("cross_disjointness", False,
                                          {"pair": [i, j], **_disjoint_witness(v)}))
                return done()
            pairs.append({"pair": [i, j], **_disjoint_witness(v)})
    checks.append(CheckResult("cross_disjointness", True, pairs))

    if not kb:
        checks.append(CheckResult("falsification_probes", True, [], "kernel is {0}; no probes"))
        return done()
    rng = random.Random(seed)
    records = []
    for _ in range(probes):
        d = zeros(n)
        while is_zero(d):
            d = _random_combination(rng, kb, n)
        x = add(_random_combination(rng, rb, n), d)
        sv = is_disjoint_to_span(K, x, kpos)
        if sv.holds:
            checks.append(CheckResult("falsification_probes", False, {"x": x},
                                      "vector outside the range is disjoint to the whole kernel"))
            return done()
        records.append({"x": x, "generator": sv.index, **_disjoint_witness(sv.verdict)})
    checks.append(CheckResult("falsification_probes", True, records))
    return done()


def decompose_positive(K: ConeSpace, P: ProjectionMatrix, x: Sequence):
    """Split a positive ``x`` as ``(P x, x - P x)``; both parts positive and disjoint."""
    x = vec(x)
    if not contains(K, x):
        raise PreconditionError(f"x = {format_vector(x)} is not in the cone")
    if not is_order_projection(K, P):
        raise PreconditionError("P is not an order projection")
    px = P(x)
    qx = sub(x, px)
    if not (contains(K, px) and contains(K, qx)):
        raise AssertionError("components of a positive vector are not positive")
    if not is_disjoint(K, px, qx):
        raise AssertionError("band components are not disjoint")
    return px, qx


@dataclass(frozen=True)
class ImplicationVerdict:
    hypothesis: bool
    conclusion: bool
    detail: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return (not self.hypothesis) or self.conclusion

    @property
    def vacuous(self) -> bool:
        return not self.hypothesis

    def __bool__(self) -> bool:
        return self.holds


def check_sum_decomposition(K: ConeSpace, x: Sequence, y: Sequence, z: Sequence) -> ImplicationVerdict:
    """``x >= 0`` and ``y, z`` disjoint with ``x = y + z`` force ``y, z >= 0``."""
    x, y, z = vec(x), vec(y), vec(z)
    if add(y, z) != x:
        raise ValueError("x is not y + z")
    positive = bool(contains(K, x))
    disjoint = is_disjoint(K, y, z) if positive else None
    hyp = positive and bool(disjoint)
    concl = bool(contains(K, y)) and bool(contains(K, z))
    return ImplicationVerdict(hyp, concl, {"x_positive": positive, "disjoint": disjoint})


def same_range(P: ProjectionMatrix, Q: ProjectionMatrix) -> bool:
    """Equal column spaces, decided by ranks."""
    cp, cq = transpose(P.M), transpose(Q.M)
    r = rank(cp)
    return r == rank(cq) == rank(cp + cq)


def uniqueness_check(K: ConeSpace, P: ProjectionMatrix, Q: ProjectionMatrix) -> ImplicationVerdict:
    """Two order projections with the same range are equal."""
    p_ok = bool(is_order_projection(K, P))
    q_ok = bool(is_order_projection(K, Q))
    hyp = p_ok and q_ok and same_range(P, Q)
    return ImplicationVerdict(hyp, P.M == Q.M, {"P_order": p_ok, "Q_order": q_ok})


def corollary_check(
    K: ConeSpace,
    V_basis: Sequence[RVector],
    W_basis: Sequence[RVector],
    probes: int = DEFAULT_PROBES,
    seed: int = 0,
) -> BandCertificate:
    """``X = V + W`` with ``W`` disjoint to ``V`` makes ``V`` a projection band.

    Builds the projection onto ``V`` along ``W`` and certifies it; a failed
    disjointness precondition is reported as the first check.
    """
    V = [vec(v) for v in V_basis]
    W = [vec(w) for w in W_basis]
    P = ProjectionMatrix.onto_along(V, W)

    vpos = subspace_cone_generators(K, V)
    if V and rank(vpos) == len(V):
        spanning = list(vpos)
    else:
        spanning = V + [neg(v) for v in V]
    # pairwise tests suffice: disjoint complements are subspaces
    failure = None
    proofs = []
    for i, w in enumerate(W):
        for v in spanning:
            dv = is_disjoint(K, w, v)
            if not dv:
                failure = {"w": w, "v": v, **_disjoint_witness(dv)}
                break
            proofs.append({"w": w, "v": v, **_disjoint_witness(dv)})
        if failure:
            break
    pre = CheckResult("corollary_precondition", failure is None, failure or proofs)
    if failure is not None:
        return BandCertificate(cone=K, P=P, checks=(pre,), seed=seed, probes=probes)
    cert = certify_projection_band(K, P, probes=probes, seed=seed)
    return BandCertificate(
        cone=cert.cone,
        P=cert.P,
        range_basis=cert.range_basis,
        kernel_basis=cert.kernel_basis,
        range_pos_gens=cert.range_pos_gens,
        kernel_pos_gens=cert.kernel_pos_gens,
        checks=(pre,) + cert.checks,
        seed=seed,
        probes=probes,
    )
