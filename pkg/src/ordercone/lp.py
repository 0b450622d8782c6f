"""Exact rational linear programming with checkable certificates.

Problems have the inequality form ``min c.z  s.t.  A z >= b`` with ``z`` free.
They are solved through the standard-form dual ``max b.y  s.t.  A^T y = c,
y >= 0``, which has only ``dim`` equality rows.  The tableau is kept in
integers with fraction-free (Bareiss) pivoting, two phases and Bland's rule,
so every run is exact and deterministic.

Every outcome carries a certificate that can be checked by evaluation alone:

* optimal    -- primal point ``z`` and dual multipliers ``y`` with equal values
* infeasible -- Farkas multipliers ``y >= 0`` with ``y^T A = 0``, ``y^T b > 0``
* unbounded  -- feasible point plus a ray ``r`` with ``A r >= 0``, ``c.r < 0``
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .exact import RMatrix, RVector, add, dot, integer_row, matvec, primitive, scale, solve_linear, vec, zeros

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

# Safety net only; Bland's rule cannot cycle.
_MAX_PIVOTS = 100_000


@dataclass(frozen=True)
class HPolyhedron:
    """The set ``{z : A z >= b}``."""

    A: RMatrix
    b: RVector

    def __post_init__(self):
        if len(self.A) != len(self.b):
            raise ValueError(f"{len(self.A)} rows but {len(self.b)} right-hand sides")
        if self.A and any(len(r) != len(self.A[0]) for r in self.A):
            raise ValueError("ragged constraint matrix")

    @property
    def dim(self) -> int:
        return len(self.A[0]) if self.A else 0

    def contains(self, z: Sequence[Fraction]) -> bool:
        return all(dot(row, z) >= bi for row, bi in zip(self.A, self.b))

    def violated_row(self, z: Sequence[Fraction]) -> Optional[int]:
        for i, (row, bi) in enumerate(zip(self.A, self.b)):
            if dot(row, z) < bi:
                return i
        return None


@dataclass(frozen=True)
class FarkasCertificate:
    """Nonnegative multipliers proving ``{z : A z >= b}`` empty."""

    multipliers: RVector

    def check(self, A: RMatrix, b: RVector) -> bool:
        y = self.multipliers
        if len(y) != len(A) or any(v < 0 for v in y):
            return False
        n = len(A[0]) if A else 0
        combo = [sum((yi * row[j] for yi, row in zip(y, A)), Fraction(0)) for j in range(n)]
        return all(v == 0 for v in combo) and dot(y, b) > 0


@dataclass(frozen=True)
class LinearProgram:
    objective: RVector
    A: RMatrix
    b: RVector

    def __post_init__(self):
        n = len(self.objective)
        if n == 0:
            raise ValueError("an LP needs at least one variable")
        if len(self.A) != len(self.b):
            raise ValueError(f"{len(self.A)} rows but {len(self.b)} right-hand sides")
        if any(len(r) != n for r in self.A):
            raise ValueError(f"constraint rows must have {n} columns")

    @property
    def dim(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LPOutcome:
    status: str
    value: Optional[Fraction] = None
    point: Optional[RVector] = None
    dual: Optional[RVector] = None
    ray: Optional[RVector] = None
    farkas: Optional[FarkasCertificate] = None

    def check(self, lp: LinearProgram) -> bool:
        """Re-verify the certificate by evaluation only."""
        A, b, c = lp.A, lp.b, lp.objective
        if self.status == INFEASIBLE:
            return self.farkas is not None and self.farkas.check(A, b)
        feasible = self.point is not None and HPolyhedron(A, b).contains(self.point)
        if self.status == UNBOUNDED:
            r = self.ray
            return (
                feasible
                and r is not None
                and all(dot(row, r) >= 0 for row in A)
                and dot(c, r) < 0
            )
        y = self.dual
        if not feasible or y is None or len(y) != len(A) or any(v < 0 for v in y):
            return False
        aty = [sum((yi * row[j] for yi, row in zip(y, A)), Fraction(0)) for j in range(lp.dim)]
        return list(aty) == list(c) and dot(c, self.point) == dot(b, y) == self.value


class _Tableau:
    """Integer simplex tableau for ``min cost.y, M y = r, y >= 0``.

    Stored rows equal the true rows times ``d`` (the last pivot), ``d > 0``.
    Two objective rows ride along: phase one (sum of artificials) and phase
    two (the real cost).
    """

    def __init__(self, M: list, r: list, cost: list):
        k = len(M)
        self.N = len(cost)
        self.signs = []
        rows = []
        for i, (row, ri) in enumerate(zip(M, r)):
            s = -1 if ri < 0 else 1
            self.signs.append(s)
            art = [0] * k
            art[i] = 1
            rows.append([s * a for a in row] + art + [s * ri])
        width = self.N + k + 1
        obj1 = [0] * width
        for row in rows:
            for j in range(self.N):
                obj1[j] -= row[j]
            obj1[-1] -= row[-1]
        obj2 = list(cost) + [0] * k + [0]
        self.rows = rows
        self.obj1 = obj1
        self.obj2 = obj2
        self.basis = [self.N + i for i in range(k)]
        self.d = 1
        self.pivots = 0

    def pivot(self, r: int, s: int) -> None:
        self.pivots += 1
        if self.pivots > _MAX_PIVOTS:
            raise RuntimeError("simplex pivot limit exceeded")
        prow = self.rows[r]
        p = prow[s]
        d = self.d
        nz = [j for j, v in enumerate(prow) if v]

        def update(row):
            f = row[s]
            if f == 0:
                if p != d:
                    return [v * p // d for v in row]
                return row
            out = [v * p for v in row]
            for j in nz:
                out[j] -= f * prow[j]
            return [v // d for v in out]

        self.rows = [prow if i == r else update(row) for i, row in enumerate(self.rows)]
        self.obj1 = update(self.obj1)
        self.obj2 = update(self.obj2)
        self.basis[r] = s
        self.d = p
        if p < 0:
            self.rows = [[-v for v in row] for row in self.rows]
            self.obj1 = [-v for v in self.obj1]
            self.obj2 = [-v for v in self.obj2]
            self.d = -p

    def _entering(self, obj: list) -> Optional[int]:
        for j in range(self.N):
            if obj[j] < 0:
                return j
        return None

    def _leaving(self, s: int) -> Optional[int]:
        best = None
        for i, row in enumerate(self.rows):
            a = row[s]
            if a <= 0:
                continue
            if best is None:
                best = i
                continue
            brow = self.rows[best]
            lhs = row[-1] * brow[s]
            rhs = brow[-1] * a
            if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                best = i
        return best

    def run(self, phase: int) -> Optional[int]:
        """Pivot to optimality; returns the unbounded entering column, if any."""
        while True:
            obj = self.obj1 if phase == 1 else self.obj2
            s = self._entering(obj)
            if s is None:
                return None
            r = self._leaving(s)
            if r is None:
                return s
            self.pivot(r, s)

    def drive_out_artificials(self) -> None:
        i = 0
        while i < len(self.rows):
            if self.basis[i] >= self.N:
                row = self.rows[i]
                j = next((j for j in range(self.N) if row[j] != 0), None)
                if j is None:
                    # redundant equality: drop it
                    del self.rows[i]
                    del self.basis[i]
                    continue
                self.pivot(i, j)
            i += 1


def _scaled_dual(lp: LinearProgram):
    """Integer data of the standard-form dual and the row scale factors."""
    n, m = lp.dim, len(lp.A)
    M, r, scales = [], [], []
    for j in range(n):
        row = [lp.A[i][j] for i in range(m)] + [lp.objective[j]]
        den = 1
        for q in row:
            den = lcm(den, q.denominator)
        scales.append(den)
        M.append([int(q * den) for q in row[:m]])
        r.append(int(row[m] * den))
    bden = 1
    for q in lp.b:
        bden = lcm(bden, q.denominator)
    cost = [-int(q * bden) for q in lp.b]
    return M, r, cost, scales


def _primal_from_basis(lp: LinearProgram, basic: list) -> RVector:
    if not basic:
        return zeros(lp.dim)
    z = solve_linear([lp.A[i] for i in basic], [lp.b[i] for i in basic])
    if z is None:
        raise ArithmeticError("basis system inconsistent")
    return z


def solve_lp(lp: LinearProgram) -> LPOutcome:
    """Solve ``min c.z s.t. A z >= b`` exactly, returning a certified outcome."""
    n, m = lp.dim, len(lp.A)
    M, r, cost, scales = _scaled_dual(lp)
    T = _Tableau(M, r, cost)
    T.run(phase=1)

    if T.obj1[-1] != 0:
        # Dual infeasible: the phase-one multipliers give a primal ray.
        w = [1 - Fraction(T.obj1[T.N + i], T.d) for i in range(n)]
        ray = primitive([-T.signs[j] * scales[j] * w[j] for j in range(n)])
        ray = vec(ray)
        feas = solve_lp(LinearProgram(zeros(n), lp.A, lp.b))
        if feas.status == INFEASIBLE:
            return feas
        return LPOutcome(UNBOUNDED, point=feas.point, ray=ray)

    T.drive_out_artificials()
    s = T.run(phase=2)
    if s is not None:
        # Dual unbounded: the improving direction is a Farkas certificate.
        y = [0] * m
        y[s] = T.d
        for i, bi in enumerate(T.basis):
            if bi < m:
                y[bi] = -T.rows[i][s]
        y = vec(primitive(y))
        return LPOutcome(INFEASIBLE, farkas=FarkasCertificate(y))

    y = [Fraction(0)] * m
    for i, bi in enumerate(T.basis):
        y[bi] = Fraction(T.rows[i][-1], T.d)
    y = tuple(y)
    # complementary slackness: every basic dual column is a tight primal row
    z = _primal_from_basis(lp, sorted(T.basis))
    return LPOutcome(OPTIMAL, value=dot(lp.objective, z), point=z, dual=y)


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    point: Optional[RVector] = None
    certificate: Optional[FarkasCertificate] = None

    def __bool__(self) -> bool:
        return self.feasible


def is_feasible(A: RMatrix, b: RVector) -> FeasibilityVerdict:
    """Feasible point of ``A z >= b`` or a Farkas certificate of emptiness."""
    if not A:
        raise ValueError("is_feasible needs at least one constraint to fix the dimension")
    out = solve_lp(LinearProgram(zeros(len(A[0])), A, b))
    if out.status == INFEASIBLE:
        return FeasibilityVerdict(False, certificate=out.farkas)
    return FeasibilityVerdict(True, point=out.point)


@dataclass(frozen=True)
class ValidityVerdict:
    """Whether ``c.z >= d`` holds on a polyhedron.

    ``proof`` is set when the answer is yes: either ``("dual", y)`` with
    ``y >= 0, y^T A = c, y^T b >= d`` or ``("farkas", y)`` proving the
    polyhedron empty.  ``witness`` is a point of the polyhedron with
    ``c.z < d`` when the answer is no.
    """

    holds: bool
    witness: Optional[RVector] = None
    proof: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.holds


def _merge_rows(P: HPolyhedron):
    """Keep one row per distinct normal (the largest right-hand side)."""
    best = {}
    for i, (row, bi) in enumerate(zip(P.A, P.b)):
        j = best.get(row)
        if j is None or bi > P.b[j]:
            best[row] = i
    keep = sorted(best.values())
    return keep


def _lift(multipliers: Sequence[Fraction], keep: list, m: int) -> RVector:
    y = [Fraction(0)] * m
    for v, i in zip(multipliers, keep):
        y[i] = v
    return tuple(y)


def is_valid_inequality(P: HPolyhedron, c: RVector, d: Fraction) -> ValidityVerdict:
    """Decide ``c.z >= d`` for every ``z`` in ``P`` (true when ``P`` is empty)."""
    d = Fraction(d)
    if len(c) != P.dim:
        raise ValueError(f"inequality has dimension {len(c)}, polyhedron {P.dim}")
    m = len(P.A)
    for i, (row, bi) in enumerate(zip(P.A, P.b)):
        if row == c and bi >= d:
            y = [Fraction(0)] * m
            y[i] = Fraction(1)
            return ValidityVerdict(True, proof=("dual", tuple(y)))

    keep = _merge_rows(P)
    A = tuple(P.A[i] for i in keep)
    b = tuple(P.b[i] for i in keep)
    out = solve_lp(LinearProgram(tuple(c), A, b))
    if out.status == INFEASIBLE:
        return ValidityVerdict(True, proof=("farkas", _lift(out.farkas.multipliers, keep, m)))
    if out.status == OPTIMAL:
        if out.value >= d:
            return ValidityVerdict(True, proof=("dual", _lift(out.dual, keep, m)))
        return ValidityVerdict(False, witness=out.point)
    z0, ray = out.point, out.ray
    gap = dot(c, z0) - d
    t = Fraction(0) if gap < 0 else gap / -dot(c, ray) + 1
    return ValidityVerdict(False, witness=add(z0, scale(t, ray)))


def check_validity_proof(P: HPolyhedron, c: Sequence, d: Fraction, proof: tuple) -> bool:
    """Evaluate a ``ValidityVerdict.proof`` against its polyhedron."""
    kind, y = proof
    if len(y) != len(P.A) or any(v < 0 for v in y):
        return False
    n = P.dim
    combo = [sum((yi * row[j] for yi, row in zip(y, P.A)), Fraction(0)) for j in range(n)]
    if kind == "farkas":
        return all(v == 0 for v in combo) and dot(y, P.b) > 0
    if kind == "dual":
        return combo == list(c) and dot(y, P.b) >= d
    return False
