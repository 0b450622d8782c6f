"""Exact rational vectors and matrices.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are tuples of row tuples, so every value is immutable and hashable.
Hot loops elsewhere work on integer rows produced by :func:`integer_row`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Tuple, Union

Rational = Fraction
RVector = Tuple[Fraction, ...]
RMatrix = Tuple[RVector, ...]

Scalar = Union[int, str, Fraction]

__all__ = [
    "Rational",
    "RVector",
    "RMatrix",
    "to_rational",
    "format_rational",
    "vec",
    "mat",
    "parse_vector",
    "format_vector",
    "jsonable",
    "zeros",
    "unit",
    "identity",
    "zero_matrix",
    "add",
    "sub",
    "neg",
    "scale",
    "dot",
    "is_zero",
    "matvec",
    "matmul",
    "mat_sub",
    "transpose",
    "columns",
    "from_columns",
    "integer_row",
    "primitive",
    "rank",
    "rref",
    "kernel_basis",
    "solve_linear",
    "column_space_basis",
    "inverse",
    "determinant",
]


def to_rational(value: Scalar) -> Fraction:
    """Coerce an int, a ``"p/q"`` string or a Fraction to a Fraction.

    Floats are refused: a float has already lost exactness by the time it
    gets here.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


def vec(entries: Iterable[Scalar]) -> RVector:
    return tuple(to_rational(e) for e in entries)


def mat(rows: Iterable[Iterable[Scalar]]) -> RMatrix:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix rows")
    return out


def parse_vector(text: str) -> RVector:
    """Parse ``"1,-1/2,3"`` into a vector."""
    parts = [p for p in text.strip().split(",")]
    if not parts or any(not p.strip() for p in parts):
        raise ValueError(f"malformed vector {text!r}")
    return vec(parts)


def format_vector(v: Sequence[Fraction]) -> list:
    return [format_rational(x) for x in v]


def jsonable(obj):
    """Fractions to ``"p/q"`` strings, recursively through dicts and sequences."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def zeros(n: int) -> RVector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> RVector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def identity(n: int) -> RMatrix:
    return tuple(unit(n, i) for i in range(n))


def zero_matrix(nrows: int, ncols: int) -> RMatrix:
    return tuple(zeros(ncols) for _ in range(nrows))


def _check_len(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} != {len(v)}")


def add(u: RVector, v: RVector) -> RVector:
    _check_len(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: RVector, v: RVector) -> RVector:
    _check_len(u, v)
    return tuple(a - b for a, b in zip(u, v))


def neg(u: RVector) -> RVector:
    return tuple(-a for a in u)


def scale(alpha: Scalar, u: RVector) -> RVector:
    alpha = to_rational(alpha)
    return tuple(alpha * a for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    _check_len(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def matvec(A: RMatrix, x: RVector) -> RVector:
    return tuple(dot(row, x) for row in A)


def transpose(A: RMatrix) -> RMatrix:
    return tuple(zip(*A)) if A else ()


def columns(A: RMatrix) -> list:
    return list(transpose(A))


def from_columns(cols: Sequence[RVector]) -> RMatrix:
    return transpose(tuple(tuple(c) for c in cols))


def matmul(A: RMatrix, B: RMatrix) -> RMatrix:
    if A and B and len(A[0]) != len(B):
        raise ValueError("inner dimensions do not agree")
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def mat_sub(A: RMatrix, B: RMatrix) -> RMatrix:
    return tuple(sub(a, b) for a, b in zip(A, B))


def integer_row(row: Sequence[Fraction]) -> list:
    """Scale a rational row by the lcm of its denominators (positive factor)."""
    den = 1
    for q in row:
        den = lcm(den, Fraction(q).denominator)
    return [int(Fraction(q) * den) for q in row]


def primitive(row: Sequence) -> tuple:
    """Positive rescaling of a rational row to coprime integers."""
    ints = integer_row(row)
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def rank(A: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination on integer-scaled rows."""
    M = [integer_row(r) for r in A]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, nrows):
            mic = M[i][c]
            Mi, Mr = M[i], M[r]
            M[i] = [(Mi[j] * p - mic * Mr[j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(A: Sequence[Sequence]) -> Tuple[list, list]:
    """Reduced row echelon form over the rationals; returns (rows, pivot_columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return [], []
    nrows, ncols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [x / p for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M, pivots


def kernel_basis(A: Sequence[Sequence], ncols: Optional[int] = None) -> list:
    """Basis of ``{x : A x = 0}``, one vector per free column of the RREF."""
    if not A:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [unit(ncols, i) for i in range(ncols)]
    n = len(A[0])
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_linear(A: Sequence[Sequence], b: Sequence) -> Optional[RVector]:
    """Some exact solution of ``A x = b`` (free variables set to 0), or None."""
    if len(A) != len(b):
        raise ValueError(f"A has {len(A)} rows but b has {len(b)} entries")
    if not A:
        raise ValueError("empty system")
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return tuple(x)


def column_space_basis(A: RMatrix) -> list:
    """Columns of ``A`` at the pivot positions of its RREF."""
    if not A:
        return []
    _, pivots = rref(A)
    cols = columns(A)
    return [tuple(cols[p]) for p in pivots]


def inverse(A: RMatrix) -> RMatrix:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + list(unit(n, i)) for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def determinant(A: RMatrix) -> Fraction:
    n = len(A)
    M = [list(map(Fraction, row)) for row in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        p = M[c][c]
        det *= p
        for i in range(c + 1, n):
            f = M[i][c] / p
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det
