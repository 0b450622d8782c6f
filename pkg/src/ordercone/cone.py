"""Polyhedral cones and the order they induce.

A :class:`ConeSpace` stores both descriptions of a pointed, generating cone:
the extreme rays and the irredundant halfspace rows ``A`` with
``X+ = {z : A z >= 0}``.  Conversion in either direction uses the double
description method on integer data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import (
    RMatrix,
    RVector,
    column_space_basis,
    dot,
    format_vector,
    from_columns,
    integer_row,
    inverse,
    is_zero,
    kernel_basis,
    matmul,
    matvec,
    neg,
    primitive,
    rank,
    sub,
    transpose,
    vec,
)
from .lp import is_feasible


class ConeError(ValueError):
    """Input cone rejected; ``certificate`` explains why."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


def _ray_key(r: tuple) -> tuple:
    return tuple(-x for x in r)


def _dd_rays(rows: list, n: int) -> list:
    """Extreme rays of ``{z in Z^n : rows . z >= 0}`` for integer rows of rank n.

    Incremental double description with the combinatorial adjacency test.
    Zero sets are bitmasks over processed row indices.
    """
    order = []
    chosen = []
    for i, row in enumerate(rows):
        if rank(chosen + [row]) > len(chosen):
            chosen.append(row)
            order.append(i)
            if len(chosen) == n:
                break
    if len(chosen) < n:
        raise ConeError("constraint rows do not have full rank; the cone has lineality")

    inv = inverse(tuple(tuple(Fraction(x) for x in r) for r in chosen))
    rays = []
    for k in range(n):
        col = primitive([inv[j][k] for j in range(n)])
        zero = 0
        for t, i in enumerate(order):
            if t != k:
                zero |= 1 << i
        rays.append((col, zero))

    rest = [i for i in range(len(rows)) if i not in set(order)]
    for i in rest:
        a = rows[i]
        bit = 1 << i
        pos, neg_, nul = [], [], []
        for ray, zero in rays:
            s = sum(x * y for x, y in zip(a, ray))
            if s > 0:
                pos.append((ray, zero, s))
            elif s < 0:
                neg_.append((ray, zero, s))
            else:
                nul.append((ray, zero | bit))
        if not neg_:
            rays = [(r, z) for r, z, _ in pos] + nul
            continue
        new = []
        zlist = [z for _, z, _ in pos] + [z for _, z, _ in neg_] + [z for _, z in nul]
        npos = len(pos)
        for ip, (p, zp, sp) in enumerate(pos):
            for iq, (q, zq, sq) in enumerate(neg_):
                common = zp & zq
                if bin(common).count("1") < n - 2:
                    continue
                skip = (ip, npos + iq)
                if any(
                    t not in skip and z & common == common
                    for t, z in enumerate(zlist)
                ):
                    continue
                w = primitive([sp * qq - sq * pp for pp, qq in zip(p, q)])
                new.append((w, common | bit))
        rays = [(r, z) for r, z, _ in pos] + nul + new
    out = sorted({r for r, _ in rays if any(r)}, key=_ray_key)
    return [vec(r) for r in out]


def _rays_in_subspace(A: Sequence[Sequence], basis: Sequence[RVector], n: int) -> list:
    """Extreme rays of ``{z : A z >= 0} cap span(basis)``; must be pointed."""
    if not basis:
        return []
    B = from_columns(basis)
    k = len(basis)
    if A:
        AB = matmul(tuple(tuple(Fraction(x) for x in r) for r in A), B)
        rows = [integer_row(r) for r in AB if not is_zero(r)]
    else:
        rows = []
    if rank(rows) < k:
        raise ConeError("cone restricted to the subspace is not pointed")
    if k == 1:
        # one parameter: the ray t=1 and/or t=-1 survives
        t_rays = []
        for sgn in (1, -1):
            if all(r[0] * sgn >= 0 for r in rows):
                t_rays.append((Fraction(sgn),))
    else:
        t_rays = _dd_rays(rows, k)
    out = {primitive(matvec(B, t)) for t in t_rays}
    return [vec(r) for r in sorted(out, key=_ray_key) if any(r)]


def hrep_to_vrep(A: Sequence[Sequence]) -> list:
    """Extreme rays of the pointed cone ``{z : A z >= 0}``.

    Rays are primitive integer vectors in a fixed canonical order.  A cone
    with lineality is rejected with a lineality vector as certificate.
    """
    if not A:
        raise ConeError("no halfspaces: the cone is the whole space")
    n = len(A[0])
    if rank(A) < n:
        line = kernel_basis(A)[0]
        raise ConeError("cone is not pointed", certificate=vec(primitive(line)))
    if n == 1:
        return _rays_in_subspace(A, [vec([1])], 1)
    rows = [integer_row(r) for r in A if not is_zero(r)]
    return _dd_rays(rows, n)


def vrep_to_hrep(generators: Sequence[RVector]) -> RMatrix:
    """Irredundant rows ``A`` with ``{z : A z >= 0} = cone(generators)``.

    When the generators do not span the space, each direction orthogonal to
    them contributes an equality pair.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = len(generators[0])
    if any(len(g) != n for g in generators):
        raise ValueError("generators have different dimensions")
    G = tuple(vec(g) for g in generators)
    lineality = [vec(primitive(v)) for v in kernel_basis(G)]
    span = column_space_basis(transpose(G))
    facets = _rays_in_subspace(G, span, n)
    rows = list(facets)
    for v in lineality:
        rows.append(v)
        rows.append(neg(v))
    return tuple(rows)


@dataclass(frozen=True)
class OrderVerdict:
    holds: bool
    violated_row: Optional[int] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True, eq=False)
class ConeSpace:
    """Finite-dimensional ordered space with a polyhedral cone.

    Build with :meth:`from_generators` or :meth:`from_halfspaces`; both
    reject cones that are not pointed or not generating.
    """

    dim: int
    generators: tuple
    halfspaces: RMatrix

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.dim or any(dot(a, g) < 0 for a in self.halfspaces):
                raise ConeError(f"generator {format_vector(g)} violates the halfspaces")

    @property
    def pointed(self) -> bool:
        return rank(self.halfspaces) == self.dim

    @property
    def generating(self) -> bool:
        return rank(self.generators) == self.dim

    @property
    def simplicial(self) -> bool:
        return len(self.halfspaces) == self.dim and self.pointed

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence]) -> "ConeSpace":
        G = [vec(g) for g in generators]
        if not G:
            raise ConeError("empty generator list")
        n = len(G[0])
        _require_generating(G, n)
        A = vrep_to_hrep(G)
        if rank(A) < n:
            raise ConeError("cone is not pointed", certificate=vec(primitive(kernel_basis(A)[0])))
        return cls(n, tuple(hrep_to_vrep(A)), A)

    @classmethod
    def from_halfspaces(cls, A: Sequence[Sequence]) -> "ConeSpace":
        A = tuple(vec(r) for r in A)
        rays = hrep_to_vrep(A)
        n = len(A[0])
        _require_generating(rays, n)
        # re-derive the rows so the stored H-rep is irredundant and canonical
        return cls(n, tuple(rays), vrep_to_hrep(rays))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "generators": [format_vector(g) for g in self.generators],
            "halfspaces": [format_vector(a) for a in self.halfspaces],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConeSpace":
        K = cls.from_generators(data["generators"])
        if data.get("dim") is not None and int(data["dim"]) != K.dim:
            raise ConeError(f"declared dim {data['dim']} but generators have dim {K.dim}")
        if data.get("halfspaces"):
            rays = hrep_to_vrep(tuple(vec(r) for r in data["halfspaces"]))
            if set(rays) != set(K.generators):
                raise ConeError("halfspaces and generators describe different cones")
        return K

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConeSpace):
            return NotImplemented
        return self.dim == other.dim and set(self.generators) == set(other.generators)

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.generators)))


def _require_generating(G: Sequence[RVector], n: int) -> None:
    if not G or rank(G) < n:
        normal = kernel_basis(G, n)[0] if G else vec([1] + [0] * (n - 1))
        raise ConeError(
            "cone is not generating", certificate=vec(primitive(normal))
        )


def contains(K: ConeSpace, x: Sequence) -> OrderVerdict:
    """Membership ``x in X+``; on failure names the first violated row."""
    if len(x) != K.dim:
        raise ValueError(f"vector has dimension {len(x)}, cone {K.dim}")
    for i, a in enumerate(K.halfspaces):
        if dot(a, x) < 0:
            return OrderVerdict(False, violated_row=i)
    return OrderVerdict(True)


def leq(K: ConeSpace, x: Sequence, y: Sequence) -> OrderVerdict:
    """``x <= y``, i.e. ``y - x in X+``."""
    return contains(K, sub(y, x))


def is_bounded_multiple(K: ConeSpace, x: Sequence, y: Sequence) -> bool:
    """Whether ``n x <= y`` for every positive integer ``n``.

    For a closed cone this is exactly ``-x in X+`` and ``x <= y``:
    ``y - n x = (y - x) + (n - 1)(-x)`` covers one direction, and dividing
    ``y - n x`` by ``n`` and letting ``n`` grow covers the other.
    """
    return bool(contains(K, neg(x))) and bool(leq(K, x, y))


def subspace_cone_generators(K: ConeSpace, basis: Sequence[RVector]) -> list:
    """Extreme rays of ``X+ cap span(basis)`` (empty when only 0 remains)."""
    basis = [vec(b) for b in basis]
    if basis and rank(basis) < len(basis):
        raise ValueError("basis vectors are linearly dependent")
    return _rays_in_subspace(K.halfspaces, basis, K.dim)


def conic_coefficients(generators: Sequence[RVector], x: Sequence) -> Optional[RVector]:
    """Nonnegative ``lam`` with ``sum lam_i g_i = x``, or None.

    Decided by LP on the generator side, independently of any halfspace
    description.
    """
    k = len(generators)
    n = len(x)
    if k == 0:
        return tuple() if is_zero(x) else None
    rows = []
    rhs = []
    for j in range(n):
        row = tuple(Fraction(g[j]) for g in generators)
        rows.append(row)
        rhs.append(Fraction(x[j]))
        rows.append(neg(row))
        rhs.append(-Fraction(x[j]))
    for i in range(k):
        rows.append(tuple(Fraction(1 if t == i else 0) for t in range(k)))
        rhs.append(Fraction(0))
    v = is_feasible(tuple(rows), tuple(rhs))
    return v.point if v.feasible else None


def vrep_contains(generators: Sequence[RVector], x: Sequence) -> bool:
    return conic_coefficients(generators, x) is not None
