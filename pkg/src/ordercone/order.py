"""Upper bounds, disjointness and infima as exact polyhedral decisions.

Two vectors are disjoint when the upper-bound sets of ``{x+y, -x-y}`` and
``{x-y, y-x}`` coincide.  For a polyhedral cone both sets are H-polyhedra, so
disjointness reduces to two polyhedron inclusions, each decided row by row
with certified LPs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cone import ConeSpace, contains, hrep_to_vrep, leq
from .exact import RVector, add, dot, inverse, is_zero, matvec, neg, sub, vec
from .lp import HPolyhedron, check_validity_proof, is_valid_inequality

__all__ = [
    "HPolyhedron",
    "PreconditionError",
    "SubsetVerdict",
    "DisjointnessVerdict",
    "InfimumVerdict",
    "upper_bound_set",
    "lower_bound_set",
    "poly_subset",
    "poly_equal",
    "is_disjoint",
    "is_infimum_zero",
    "is_infimum_zero_vertex",
    "lower_bound_extremes",
    "verify_infimum",
    "infimum_simplicial",
    "is_disjoint_to_span",
    "SpanVerdict",
    "check_disjointness_verdict",
]


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SubsetVerdict:
    """``P subset Q``.

    ``proofs[i]`` certifies row ``i`` of ``Q`` on ``P`` when the answer is
    yes; otherwise ``witness`` lies in ``P`` and violates row ``failed_row``
    of ``Q``.
    """

    holds: bool
    witness: Optional[RVector] = None
    failed_row: Optional[int] = None
    proofs: tuple = ()

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class DisjointnessVerdict:
    disjoint: bool
    direction_failed: Optional[str] = None
    witness: Optional[RVector] = None
    violated_row: Optional[int] = None
    proofs: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.disjoint

    def to_json(self) -> dict:
        out = {"disjoint": self.disjoint}
        if not self.disjoint:
            out["direction_failed"] = self.direction_failed
            out["witness"] = [str(q) for q in self.witness]
            out["violated_row"] = self.violated_row
        return out


def upper_bound_set(K: ConeSpace, S: Sequence[RVector]) -> HPolyhedron:
    """``{z : z >= s for all s in S}`` as one stacked system."""
    if not S:
        raise ValueError("upper bounds of the empty set are the whole space")
    rows, rhs = [], []
    for s in S:
        if len(s) != K.dim:
            raise ValueError(f"vector has dimension {len(s)}, cone {K.dim}")
        for a in K.halfspaces:
            rows.append(a)
            rhs.append(dot(a, s))
    return HPolyhedron(tuple(rows), tuple(rhs))


def lower_bound_set(K: ConeSpace, S: Sequence[RVector]) -> HPolyhedron:
    """``{f : f <= s for all s in S}``."""
    rows, rhs = [], []
    for s in S:
        for a in K.halfspaces:
            rows.append(neg(a))
            rhs.append(-dot(a, s))
    return HPolyhedron(tuple(rows), tuple(rhs))


def poly_subset(P: HPolyhedron, Q: HPolyhedron) -> SubsetVerdict:
    """Decide ``P subset Q`` by checking every row of ``Q`` on ``P``."""
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch {P.dim} != {Q.dim}")
    proofs = []
    for i, (row, rhs) in enumerate(zip(Q.A, Q.b)):
        v = is_valid_inequality(P, row, rhs)
        if not v.holds:
            return SubsetVerdict(False, witness=v.witness, failed_row=i)
        proofs.append(v.proof)
    return SubsetVerdict(True, proofs=tuple(proofs))


def poly_equal(P: HPolyhedron, Q: HPolyhedron):
    """Both inclusions; returns ``(equal, direction_failed, subset_verdict)``."""
    forward = poly_subset(P, Q)
    if not forward:
        return False, "u1⊄u2", forward
    backward = poly_subset(Q, P)
    if not backward:
        return False, "u2⊄u1", backward
    return True, None, (forward, backward)


def _disjointness_sets(K: ConeSpace, x: RVector, y: RVector):
    s, d = add(x, y), sub(x, y)
    return upper_bound_set(K, [s, neg(s)]), upper_bound_set(K, [d, neg(d)])


def is_disjoint(K: ConeSpace, x: Sequence, y: Sequence) -> DisjointnessVerdict:
    """``x`` and ``y`` disjoint, straight from the upper-bound definition."""
    x, y = vec(x), vec(y)
    if len(x) != K.dim or len(y) != K.dim:
        raise ValueError("vector dimension does not match the cone")
    u1, u2 = _disjointness_sets(K, x, y)
    equal, direction, detail = poly_equal(u1, u2)
    if equal:
        forward, backward = detail
        return DisjointnessVerdict(True, proofs={"u1⊆u2": forward.proofs, "u2⊆u1": backward.proofs})
    return DisjointnessVerdict(
        False, direction_failed=direction, witness=detail.witness, violated_row=detail.failed_row
    )


def check_disjointness_verdict(K: ConeSpace, x: Sequence, y: Sequence, verdict: DisjointnessVerdict) -> bool:
    """Re-check a verdict by evaluation: proofs for yes, a separating point for no."""
    u1, u2 = _disjointness_sets(K, vec(x), vec(y))
    if verdict.disjoint:
        pairs = (("u1⊆u2", u1, u2), ("u2⊆u1", u2, u1))
        for key, P, Q in pairs:
            proofs = verdict.proofs.get(key)
            if proofs is None or len(proofs) != len(Q.A):
                return False
            for row, rhs, proof in zip(Q.A, Q.b, proofs):
                if not check_validity_proof(P, row, rhs, proof):
                    return False
        return True
    inside, outside = (u1, u2) if verdict.direction_failed == "u1⊄u2" else (u2, u1)
    z, i = verdict.witness, verdict.violated_row
    return inside.contains(z) and dot(outside.A[i], z) < outside.b[i]


@dataclass(frozen=True)
class InfimumVerdict:
    holds: bool
    witness: Optional[RVector] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


def _require_positive(K: ConeSpace, **vectors) -> None:
    for name, v in vectors.items():
        if not contains(K, v):
            raise PreconditionError(f"{name} = {[str(q) for q in v]} is not in the cone")


def is_infimum_zero(K: ConeSpace, x: Sequence, y: Sequence) -> InfimumVerdict:
    """For positive ``x, y``: is 0 their greatest lower bound?

    0 is always a lower bound here, so the question is whether every common
    lower bound ``f`` satisfies ``f <= 0``; one LP per cone row.
    """
    x, y = vec(x), vec(y)
    _require_positive(K, x=x, y=y)
    L = lower_bound_set(K, [x, y])
    for a in K.halfspaces:
        # f <= 0 needs a.(-f) >= 0, i.e. (-a).f >= 0
        v = is_valid_inequality(L, neg(a), Fraction(0))
        if not v.holds:
            return InfimumVerdict(False, witness=v.witness, detail="common lower bound not below 0")
    return InfimumVerdict(True)


def lower_bound_extremes(K: ConeSpace, x: RVector, y: RVector):
    """Vertices and extreme rays of the lower-bound polyhedron of ``{x, y}``.

    Homogenise ``{f : A f <= A x, A f <= A y}`` to a pointed cone in one more
    dimension and enumerate its rays by double description.
    """
    rows = []
    for s in (x, y):
        for a in K.halfspaces:
            # t (a.s) - a.f >= 0
            rows.append(tuple(-c for c in a) + (dot(a, s),))
    rows.append((Fraction(0),) * K.dim + (Fraction(1),))
    vertices, rays = [], []
    for r in hrep_to_vrep(rows):
        t = r[-1]
        if t > 0:
            vertices.append(tuple(c / t for c in r[:-1]))
        else:
            rays.append(tuple(r[:-1]))
    return vertices, rays


def is_infimum_zero_vertex(K: ConeSpace, x: Sequence, y: Sequence) -> InfimumVerdict:
    """Vertex-enumeration counterpart of :func:`is_infimum_zero` (no LP)."""
    x, y = vec(x), vec(y)
    _require_positive(K, x=x, y=y)
    vertices, rays = lower_bound_extremes(K, x, y)
    for f in vertices + rays:
        if not contains(K, neg(f)):
            return InfimumVerdict(False, witness=f, detail="extreme point or ray not below 0")
    return InfimumVerdict(True)


def verify_infimum(K: ConeSpace, g: Sequence, x: Sequence, y: Sequence) -> InfimumVerdict:
    """``g`` is the greatest lower bound of ``x`` and ``y``."""
    g, x, y = vec(g), vec(x), vec(y)
    if not leq(K, g, x):
        return InfimumVerdict(False, detail="g is not below x")
    if not leq(K, g, y):
        return InfimumVerdict(False, detail="g is not below y")
    L = lower_bound_set(K, [x, y])
    for a in K.halfspaces:
        # f <= g  <=>  a.(g - f) >= 0  <=>  (-a).f >= -a.g
        v = is_valid_inequality(L, neg(a), -dot(a, g))
        if not v.holds:
            return InfimumVerdict(False, witness=v.witness, detail="a lower bound is not below g")
    return InfimumVerdict(True)


def infimum_simplicial(K: ConeSpace, x: Sequence, y: Sequence) -> RVector:
    """Closed-form infimum on a simplicial cone: componentwise min in cone coordinates."""
    if not K.simplicial:
        raise PreconditionError("infimum_simplicial needs a simplicial cone")
    A = K.halfspaces
    ax, ay = matvec(A, vec(x)), matvec(A, vec(y))
    return matvec(inverse(A), tuple(min(p, q) for p, q in zip(ax, ay)))


@dataclass(frozen=True)
class SpanVerdict:
    """``holds`` unless generator ``index`` is not disjoint to the vector."""

    holds: bool
    index: Optional[int] = None
    verdict: Optional[DisjointnessVerdict] = None

    def __bool__(self) -> bool:
        return self.holds


def is_disjoint_to_span(K: ConeSpace, x: Sequence, gens: Sequence[RVector]) -> SpanVerdict:
    """Whether ``x`` lies in the disjoint complement of ``span(gens)``.

    Disjoint complements are subspaces on an Archimedean space with
    generating cone, so testing the spanning vectors is enough.
    """
    if not K.generating:
        raise PreconditionError("disjoint complements are only subspaces for generating cones")
    x = vec(x)
    for i, g in enumerate(gens):
        v = is_disjoint(K, x, g)
        if not v.disjoint:
            return SpanVerdict(False, i, v)
    return SpanVerdict(True)
