"""Seeded instance generation.

Every instance is a pure function of ``(kind, params, seed)``.  Randomness
comes from :class:`random.Random` seeded with an integer, which is stable
across platforms and Python versions.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .band import ProjectionMatrix
from .cone import ConeError, ConeSpace
from .exact import (
    RVector,
    add,
    determinant,
    format_vector,
    from_columns,
    identity,
    inverse,
    matmul,
    matvec,
    scale,
    sub,
    unit,
    vec,
    zeros,
)

KINDS = ("simplicial", "direct_sum", "l1_cone", "random_rays")
BLOCK_KINDS = ("orthant", "simplicial", "l1", "random")

MAX_RETRIES = 200


@dataclass(frozen=True)
class RationalDist:
    """Numerators uniform in ``[-num_bound, num_bound]``, denominators from ``dens``."""

    num_bound: int = 9
    dens: tuple = (1, 2, 3)

    def draw(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-self.num_bound, self.num_bound), rng.choice(self.dens))

    def draw_positive(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(1, self.num_bound), rng.choice(self.dens))


DEFAULT_DIST = RationalDist()


@dataclass
class InstanceSpec:
    kind: str
    params: dict
    seed: int
    cone: ConeSpace
    projection: Optional[ProjectionMatrix] = None
    vectors: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "params": self.params,
            "seed": self.seed,
            "cone": self.cone.to_json(),
        }
        if self.projection is not None:
            out["projection"] = self.projection.to_json()
        if self.vectors:
            out["vectors"] = {k: format_vector(v) for k, v in self.vectors.items()}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    def canonical_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    @classmethod
    def from_json(cls, data: dict) -> "InstanceSpec":
        proj = data.get("projection")
        return cls(
            kind=data.get("kind", "custom"),
            params=dict(data.get("params", {})),
            seed=int(data.get("seed", 0)),
            cone=ConeSpace.from_json(data["cone"]),
            projection=ProjectionMatrix.from_json(proj) if proj else None,
            vectors={k: vec(v) for k, v in data.get("vectors", {}).items()},
        )


def _invertible(n: int, rng: random.Random, dist: RationalDist):
    for _ in range(MAX_RETRIES):
        M = tuple(tuple(dist.draw(rng) for _ in range(n)) for _ in range(n))
        if determinant(M) != 0:
            return M
    raise RuntimeError(f"no invertible {n}x{n} draw within {MAX_RETRIES} retries")


def _columns(M) -> list:
    return [tuple(row[j] for row in M) for j in range(len(M))]


def orthant(n: int) -> ConeSpace:
    return ConeSpace.from_generators([unit(n, i) for i in range(n)])


def l1_generators(m: int) -> list:
    gens = []
    for i in range(m):
        for s in (1, -1):
            g = [0] * (m + 1)
            g[i] = s
            g[m] = 1
            gens.append(vec(g))
    return gens


def gen_simplicial(n: int, seed: int, dist: RationalDist = DEFAULT_DIST) -> InstanceSpec:
    """Image of the standard orthant under a seeded invertible matrix."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    M = _invertible(n, rng, dist)
    K = ConeSpace.from_generators(_columns(M))
    return InstanceSpec("simplicial", {"n": n}, seed, K, vectors={"basis_" + str(j): c for j, c in enumerate(_columns(M))})


def gen_l1_cone(m: int) -> InstanceSpec:
    """Cone over the cross-polytope: generators ``(+-e_i, 1)`` in dimension ``m + 1``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return InstanceSpec("l1_cone", {"m": m}, 0, ConeSpace.from_generators(l1_generators(m)))


def _random_ray_generators(n: int, k: int, rng: random.Random, dist: RationalDist) -> list:
    # last coordinate positive keeps every draw inside an open halfspace
    return [tuple(dist.draw(rng) for _ in range(n - 1)) + (dist.draw_positive(rng),) for _ in range(k)]


def gen_random_cone(n: int, k: int, seed: int, dist: RationalDist = DEFAULT_DIST) -> InstanceSpec:
    """``k`` seeded rational rays, redrawn until the cone is pointed and generating."""
    if not k >= n >= 2:
        raise ValueError("need k >= n >= 2")
    rng = random.Random(seed)
    for _ in range(MAX_RETRIES):
        try:
            K = ConeSpace.from_generators(_random_ray_generators(n, k, rng, dist))
        except ConeError:
            continue
        return InstanceSpec("random_rays", {"n": n, "k": k}, seed, K)
    raise RuntimeError(f"retry budget of {MAX_RETRIES} exhausted without a pointed generating cone")


def _block_generators(kind: str, n: int, rng: random.Random, dist: RationalDist) -> list:
    if kind == "orthant":
        return [unit(n, i) for i in range(n)]
    if kind == "simplicial":
        return _columns(_invertible(n, rng, dist))
    if kind == "l1":
        if n < 3:
            raise ValueError("an l1 block needs dimension at least 3")
        return l1_generators(n - 1)
    if kind == "random":
        if n < 2:
            raise ValueError("a random block needs dimension at least 2")
        for _ in range(MAX_RETRIES):
            gens = _random_ray_generators(n, n + rng.randint(0, 2), rng, dist)
            try:
                ConeSpace.from_generators(gens)
            except ConeError:
                continue
            return gens
        raise RuntimeError("random block retry budget exhausted")
    raise ValueError(f"unknown block kind {kind!r}")


def _pick_block(n: int, rng: random.Random) -> str:
    allowed = ["orthant", "simplicial"]
    if n >= 2:
        allowed.append("random")
    if n >= 3:
        allowed.append("l1")
    return rng.choice(allowed)


def gen_direct_sum(
    n1: int,
    n2: int,
    seed: int,
    blocks: Optional[Sequence[str]] = None,
    basis_change: bool = True,
    dist: RationalDist = DEFAULT_DIST,
) -> InstanceSpec:
    """``T (C1 + C2)`` with its canonical order projection ``T diag(I, 0) T^-1``.

    ``blocks`` names the two block cones (see ``BLOCK_KINDS``); when omitted
    they are drawn from the seed.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("both blocks need dimension at least 1")
    rng = random.Random(seed)
    # always draw the block kinds so explicit blocks leave the stream unchanged
    drawn = (_pick_block(n1, rng), _pick_block(n2, rng))
    if blocks is None:
        blocks = drawn
    b1, b2 = blocks
    n = n1 + n2
    g1 = _block_generators(b1, n1, rng, dist)
    g2 = _block_generators(b2, n2, rng, dist)
    gens = [tuple(g) + (Fraction(0),) * n2 for g in g1] + [(Fraction(0),) * n1 + tuple(g) for g in g2]
    T = _invertible(n, rng, dist) if basis_change else identity(n)
    gens = [matvec(T, g) for g in gens]
    D = tuple(tuple(Fraction(1 if (i == j and i < n1) else 0) for j in range(n)) for i in range(n))
    P = ProjectionMatrix(matmul(matmul(T, D), inverse(T)))
    cols = _columns(T)
    params = {"n1": n1, "n2": n2, "blocks": [b1, b2], "basis_change": basis_change}
    return InstanceSpec(
        "direct_sum",
        params,
        seed,
        ConeSpace.from_generators(gens),
        projection=P,
        vectors={"range_" + str(j): c for j, c in enumerate(cols[:n1])}
        | {"kernel_" + str(j): c for j, c in enumerate(cols[n1:])},
    )


def generate(kind: str, params: dict, seed: int) -> InstanceSpec:
    """Dispatch on kind; the inverse of an instance's ``(kind, params, seed)``."""
    if kind == "simplicial":
        return gen_simplicial(int(params["n"]), seed)
    if kind == "direct_sum":
        return gen_direct_sum(
            int(params["n1"]),
            int(params["n2"]),
            seed,
            blocks=params.get("blocks"),
            basis_change=params.get("basis_change", True),
        )
    if kind == "l1_cone":
        return gen_l1_cone(int(params["m"]))
    if kind == "random_rays":
        return gen_random_cone(int(params["n"]), int(params["k"]), seed)
    raise ValueError(f"unknown instance kind {kind!r}")


def positive_coefficients(K: ConeSpace, seed: int, dist: RationalDist = DEFAULT_DIST) -> list:
    rng = random.Random(seed)
    # about a third of the coefficients are zero so draws hit faces too
    return [Fraction(0) if rng.random() < 1 / 3 else abs(dist.draw(rng)) for _ in K.generators]


def combine(gens: Sequence[RVector], coeffs: Sequence[Fraction], n: int) -> RVector:
    out = zeros(n)
    for c, g in zip(coeffs, gens):
        if c:
            out = add(out, scale(c, g))
    return out


def gen_positive_vector(K: ConeSpace, seed: int, dist: RationalDist = DEFAULT_DIST) -> RVector:
    """Seeded nonnegative combination of the cone's generators."""
    return combine(K.generators, positive_coefficients(K, seed, dist), K.dim)


def gen_vector(K: ConeSpace, seed: int, dist: RationalDist = DEFAULT_DIST) -> RVector:
    """Difference of two positive draws; covers the whole space since the cone generates it."""
    rng = random.Random(seed)
    s1, s2 = rng.getrandbits(63), rng.getrandbits(63)
    return sub(gen_positive_vector(K, s1, dist), gen_positive_vector(K, s2, dist))


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from any printable parts."""
    h = hashlib.sha256(":".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(h[:8], "big") >> 1
