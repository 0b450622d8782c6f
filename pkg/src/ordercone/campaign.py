"""Seeded campaign that checks every claim about bands and order projections.

Each trial generates one instance, runs the decision procedures on vectors
and projections derived from it, and records ``pass``/``fail``/``vacuous``
per claim.  Failures carry a dump (instance plus the raw query verdicts)
that ``ordercone check`` replays exactly.
"""

from __future__ import annotations

import os
import random
import time
from contextlib import contextmanager
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .band import (
    DEFAULT_PROBES,
    ProjectionMatrix,
    certify_projection_band,
    check_sum_decomposition,
    corollary_check,
    is_order_projection,
    uniqueness_check,
)
from .cone import ConeSpace, contains, leq, subspace_cone_generators
from .exact import (
    add,
    dot,
    format_vector,
    from_columns,
    identity,
    inverse,
    jsonable,
    matmul,
    matvec,
    rank,
    scale,
    sub,
    zeros,
)
from .genlab import (
    InstanceSpec,
    combine,
    derive_seed,
    gen_direct_sum,
    gen_l1_cone,
    gen_positive_vector,
    gen_random_cone,
    gen_simplicial,
    gen_vector,
)
from .order import is_disjoint, is_infimum_zero

# Claims, in the order the summary prints them.
CLAIMS = {
    "positive_disjointness": "Positive vectors are disjoint iff their infimum is 0",
    "smaller_vectors": "Disjointness passes to smaller positive vectors",
    "sum_decomposition": "Positive sum of disjoint vectors has positive summands",
    "band_projection_positive": "Band projections are order projections",
    "directed_bands": "Projection bands are directed",
    "unique_order_projection": "At most one order projection per range",
    "order_projection_is_band": "Order projections are band projections",
    "complement_band": "B is a projection band iff its complement is",
    "corollary": "X = V + V^perp makes V a projection band",
    "negative_controls": "Non-order projections are rejected with a witness",
}

CAMPAIGN_KINDS = ("simplicial", "direct-sum", "l1", "random", "orthant")
SABOTAGE_MODES = ("flip-disjoint",)


def parse_dims(text: str) -> list:
    """``"2..4"`` -> [2, 3, 4]; ``"2,5"`` -> [2, 5]; ``"3"`` -> [3]."""
    text = text.strip()
    if ".." in text:
        lo, hi = (int(t) for t in text.split("..", 1))
        dims = list(range(lo, hi + 1))
    else:
        dims = [int(t) for t in text.split(",")]
    if not dims or min(dims) < 1:
        raise ValueError(f"bad dimension range {text!r}")
    return dims


@dataclass(frozen=True)
class CampaignConfig:
    dims: tuple = (2, 3, 4, 5, 6)
    trials: int = 100
    seed: int = 1
    probes: int = DEFAULT_PROBES
    kinds: tuple = CAMPAIGN_KINDS[:4]
    sabotage: Optional[str] = None
    threads: Optional[int] = None

    def run(self) -> "Report":
        return run_campaign(**asdict(self))


@dataclass
class TrialResult:
    trial: int
    kind: str
    dim: int
    seed: int
    instance_hash: str
    counts: dict = field(default_factory=lambda: defaultdict(Counter))
    timings: dict = field(default_factory=lambda: defaultdict(float))
    failures: list = field(default_factory=list)


class _Recorder:
    def __init__(self, result: TrialResult, instance: InstanceSpec):
        self.result = result
        self.instance = instance

    def record(self, claim: str, status: str, queries=(), projection=None, detail=None):
        self.result.counts[claim][status] += 1
        if status == "fail":
            inst = self.instance.to_json()
            if projection is not None:
                inst["projection"] = projection.to_json()
            self.result.failures.append(
                {
                    "claim": claim,
                    "trial": self.result.trial,
                    "seed": self.result.seed,
                    "instance_hash": self.result.instance_hash,
                    "instance": inst,
                    "queries": [
                        {"query": q, "vectors": [format_vector(v) for v in vs], "holds": h}
                        for q, vs, h in queries
                    ],
                    "detail": jsonable(detail),
                }
            )


def _make_instance(kind: str, dim: int, rng: random.Random, seed: int) -> InstanceSpec:
    if kind == "simplicial":
        return gen_simplicial(dim, seed)
    if kind == "direct-sum":
        n1 = rng.randint(1, dim - 1)
        return gen_direct_sum(n1, dim - n1, seed)
    if kind == "orthant":
        n1 = rng.randint(1, dim - 1)
        return gen_direct_sum(n1, dim - n1, seed, blocks=("orthant", "orthant"), basis_change=False)
    if kind == "l1":
        return gen_l1_cone(dim - 1)
    if kind == "random":
        return gen_random_cone(dim, dim + rng.randint(0, 2), seed)
    raise ValueError(f"unknown campaign kind {kind!r}")


def _min_dim(kind: str) -> int:
    return {"simplicial": 1, "direct-sum": 2, "orthant": 2, "l1": 3, "random": 2}[kind]


def _coordinate_projection(K: ConeSpace, keep: Sequence[int]) -> ProjectionMatrix:
    """Projection in the coordinates given by the cone's generators (simplicial cones)."""
    M = from_columns(K.generators)
    n = K.dim
    D = tuple(tuple(Fraction(1 if (i == j and i in keep) else 0) for j in range(n)) for i in range(n))
    return ProjectionMatrix(matmul(matmul(M, D), inverse(M)))


def _shear_projection(K: ConeSpace, t: Fraction) -> ProjectionMatrix:
    """``[[1, t], [0, 0]]`` padded with zeros, in the generators' coordinates."""
    M = from_columns(K.generators)
    n = K.dim
    S = [[Fraction(0)] * n for _ in range(n)]
    S[0][0] = Fraction(1)
    S[0][1] = t
    return ProjectionMatrix(matmul(matmul(M, tuple(map(tuple, S))), inverse(M)))


def _l1_coordinate_projections(n: int) -> list:
    out = []
    for mask in range(1, 2 ** n - 1):
        D = tuple(tuple(Fraction(1 if (i == j and mask >> i & 1) else 0) for j in range(n)) for i in range(n))
        out.append(ProjectionMatrix(D))
    return out


def _projections_for(inst: InstanceSpec, rng: random.Random) -> list:
    K = inst.cone
    n = K.dim
    if inst.projection is not None:
        return [inst.projection]
    if inst.kind == "simplicial" and n >= 2:
        keep = rng.sample(range(n), rng.randint(1, n - 1))
        return [_coordinate_projection(K, keep)]
    out = [ProjectionMatrix(identity(n))]
    if n >= 2:
        # a generic rank-one idempotent: usually not an order projection
        basis = [gen_vector(K, rng.getrandbits(63)) for _ in range(n)]
        if rank(basis) == n:
            out.append(ProjectionMatrix.onto_along(basis[:1], basis[1:]))
    return out


def _sub_combination(rng: random.Random, coeffs: Sequence[Fraction]) -> list:
    return [c * Fraction(rng.randint(0, 3), 3) for c in coeffs]


def run_trial(trial: int, kind: str, dim: int, seed: int, probes: int = DEFAULT_PROBES,
              sabotage: Optional[str] = None) -> TrialResult:
    rng = random.Random(seed)
    inst = _make_instance(kind, dim, rng, seed)
    K = inst.cone
    n = K.dim
    res = TrialResult(trial, kind, n, seed, inst.canonical_hash())
    rec = _Recorder(res, inst)

    @contextmanager
    def timed(claim):
        t0 = time.perf_counter()
        yield
        res.timings[claim] += time.perf_counter() - t0

    def disjoint(x, y):
        v = is_disjoint(K, x, y)
        flag = v.disjoint
        if sabotage == "flip-disjoint":
            flag = not flag
        return v, flag

    projections = _projections_for(inst, rng)
    certs = [certify_projection_band(K, P, probes=probes, seed=derive_seed(seed, "cert", i))
             for i, P in enumerate(projections)]

    # positive pairs: generator pairs, random draws, and band/complement pairs
    with timed("positive_disjointness"):
        pairs = []
        gens = K.generators
        for _ in range(3):
            pairs.append((rng.choice(gens), rng.choice(gens)))
        for j in range(3):
            pairs.append((gen_positive_vector(K, derive_seed(seed, "px", j)),
                          gen_positive_vector(K, derive_seed(seed, "py", j))))
        for cert in certs:
            if cert.range_pos_gens and cert.kernel_pos_gens:
                for _ in range(2):
                    pairs.append((rng.choice(cert.range_pos_gens), rng.choice(cert.kernel_pos_gens)))
        for x, y in pairs:
            v, flag = disjoint(x, y)
            iz = is_infimum_zero(K, x, y)
            status = "pass" if flag == iz.holds else "fail"
            rec.record("positive_disjointness", status,
                       [("disjoint", (x, y), v.disjoint), ("inf-zero", (x, y), iz.holds)])

    with timed("smaller_vectors"):
        for j in range(3):
            cert = certs[0]
            if cert.range_pos_gens and cert.kernel_pos_gens and j < 2:
                big_gens, other = cert.range_pos_gens, cert.kernel_pos_gens
            else:
                big_gens, other = gens, gens
            lam = [Fraction(rng.randint(0, 6), rng.choice((1, 2))) for _ in big_gens]
            x2 = combine(big_gens, lam, n)
            x1 = combine(big_gens, _sub_combination(rng, lam), n)
            y = combine(other, [Fraction(rng.randint(0, 6)) for _ in other], n)
            assert contains(K, x1) and leq(K, x1, x2) and contains(K, y)
            v2, h = disjoint(x2, y)
            if not h:
                rec.record("smaller_vectors", "vacuous")
                continue
            v1, c = disjoint(x1, y)
            rec.record("smaller_vectors", "pass" if c else "fail",
                       [("disjoint", (x2, y), v2.disjoint), ("disjoint", (x1, y), v1.disjoint)])

    with timed("sum_decomposition"):
        P = projections[0]
        for j in range(3):
            if j == 0:
                w = gen_positive_vector(K, derive_seed(seed, "sd", j))
            else:
                w = gen_vector(K, derive_seed(seed, "sd", j))
            y, z = P(w), sub(w, P(w))
            if j == 2:
                y, z = gen_vector(K, derive_seed(seed, "sy")), gen_vector(K, derive_seed(seed, "sz"))
            x = add(y, z)
            iv = check_sum_decomposition(K, x, y, z)
            hyp = iv.hypothesis
            if sabotage == "flip-disjoint" and iv.detail["x_positive"]:
                hyp = not hyp
            if not hyp:
                rec.record("sum_decomposition", "vacuous")
            else:
                ok = iv.conclusion
                dv = iv.detail["disjoint"]
                rec.record("sum_decomposition", "pass" if ok else "fail",
                           [("disjoint", (y, z), bool(dv)), ("leq", (zeros(n), y), bool(contains(K, y))),
                            ("leq", (zeros(n), z), bool(contains(K, z)))])

    for i, (P, cert) in enumerate(zip(projections, certs)):
        op = is_order_projection(K, P)
        op_query = [("order-projection", (), op.holds)]
        with timed("order_projection_is_band"):
            if not op:
                rec.record("order_projection_is_band", "vacuous")
            else:
                rec.record("order_projection_is_band", "pass" if cert.valid else "fail",
                           op_query, projection=P, detail={"failed_checks": cert.failed})
        with timed("complement_band"):
            Q = P.complement()
            cq = certify_projection_band(K, Q, probes=probes, seed=derive_seed(seed, "comp", i))
            rec.record("complement_band", "pass" if cq.valid == cert.valid else "fail",
                       [("order-projection", (), is_order_projection(K, Q).holds)], projection=Q,
                       detail={"failed_checks": cq.failed})
        if not cert.valid:
            for claim in ("band_projection_positive", "directed_bands", "corollary",
                          "unique_order_projection"):
                rec.record(claim, "vacuous")
            continue

        with timed("directed_bands"):
            ok = all(cert.check(c).passed for c in ("directedness_range", "directedness_kernel"))
            rec.record("directed_bands", "pass" if ok else "fail", op_query, projection=P)

        with timed("band_projection_positive"):
            rebuilt = ProjectionMatrix.onto_along(cert.range_basis, cert.kernel_basis)
            rop = is_order_projection(K, rebuilt)
            ok = rop.holds and rebuilt.M == P.M
            rec.record("band_projection_positive", "pass" if ok else "fail",
                       [("order-projection", (), rop.holds)], projection=rebuilt)

        with timed("corollary"):
            cc = corollary_check(K, cert.range_basis, cert.kernel_basis, probes=probes,
                                 seed=derive_seed(seed, "cor", i))
            rec.record("corollary", "pass" if cc.valid else "fail", op_query, projection=P,
                       detail={"failed_checks": cc.failed})


        with timed("unique_order_projection"):
            for alt in alternative_complements(cert, rng, 4):
                Palt = ProjectionMatrix.onto_along(cert.range_basis, alt)
                uv = uniqueness_check(K, P, Palt)
                if uv.vacuous:
                    rec.record("unique_order_projection", "vacuous")
                else:
                    rec.record("unique_order_projection", "pass" if uv.conclusion else "fail",
                               [("order-projection", (), is_order_projection(K, Palt).holds)],
                               projection=Palt)

    with timed("negative_controls"):
        controls = []
        if inst.kind == "l1_cone":
            controls = _l1_coordinate_projections(n)
        elif inst.kind == "simplicial" and n >= 2:
            controls = [_shear_projection(K, Fraction(rng.randint(1, 9), rng.choice((1, 2, 3))))]
        for C in controls:
            v = is_order_projection(K, C)
            ok = (not v.holds) and negative_witness_ok(K, C, v.witness)
            rec.record("negative_controls", "pass" if ok else "fail",
                       [("order-projection", (), v.holds)], projection=C)
    return res


def negative_witness_ok(K: ConeSpace, P: ProjectionMatrix, witness: dict) -> bool:
    """The rejection witness names a generator whose image violates a cone row."""
    if not witness:
        return False
    g = K.generators[witness["generator"]]
    M = P.M if witness["operator"] == "P" else P.complement().M
    image = matvec(M, g)
    return image == tuple(witness["image"]) and dot(K.halfspaces[witness["violated_row"]], image) < 0


def alternative_complements(cert, rng: random.Random, count: int) -> list:
    """Complements ``D' = {d + R d}`` of the range; the first one is the kernel itself."""
    out = [list(cert.kernel_basis)]
    while len(out) < count:
        alt = []
        for d in cert.kernel_basis:
            shift = zeros(len(d))
            for b in cert.range_basis:
                shift = add(shift, scale(Fraction(rng.randint(-4, 4), rng.choice((1, 2))), b))
            alt.append(add(d, shift))
        out.append(alt)
    return out


@dataclass
class Report:
    global_seed: int
    dims: list
    trials: int
    probes: int
    kinds: list
    results: list

    @property
    def counts(self) -> dict:
        total = {claim: Counter() for claim in CLAIMS}
        for r in self.results:
            for claim, c in r.counts.items():
                total[claim].update(c)
        return total

    @property
    def failures(self) -> list:
        dumps = [f for r in self.results for f in r.failures]
        return sorted(dumps, key=lambda f: (f["instance_hash"], f["claim"], f["trial"]))

    @property
    def fail_count(self) -> int:
        return sum(c["fail"] for c in self.counts.values())

    @property
    def exit_code(self) -> int:
        return 1 if self.fail_count else 0

    def to_json(self) -> dict:
        timings = Counter()
        for r in self.results:
            timings.update(r.timings)
        return {
            "tool": "ordercone",
            "version": __version__,
            "global_seed": self.global_seed,
            "dims": self.dims,
            "trials": self.trials,
            "probes": self.probes,
            "kinds": self.kinds,
            "claims": {
                claim: {"label": label, **{s: self.counts[claim][s] for s in ("pass", "fail", "vacuous")}}
                for claim, label in CLAIMS.items()
            },
            "fail_count": self.fail_count,
            "failures": self.failures,
            "timings": {k: round(v, 4) for k, v in sorted(timings.items())},
            "instances": [
                {"trial": r.trial, "kind": r.kind, "dim": r.dim, "seed": r.seed, "hash": r.instance_hash}
                for r in sorted(self.results, key=lambda r: r.trial)
            ],
        }

    def summary(self) -> str:
        lines = [f"ordercone {__version__}  seed={self.global_seed}  trials={self.trials}  dims={self.dims}"]
        for claim, label in CLAIMS.items():
            c = self.counts[claim]
            mark = "FAIL" if c["fail"] else "ok  "
            lines.append(f"[{mark}] {label:<55} pass={c['pass']:<5} fail={c['fail']:<4} vacuous={c['vacuous']}")
        lines.append(f"{self.fail_count} failure(s)")
        return "\n".join(lines)


def _thread_cap() -> int:
    cap = os.environ.get("ORDERCONE_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


def plan_trials(dims: Sequence[int], trials: int, seed: int, kinds: Sequence[str] = CAMPAIGN_KINDS[:4]) -> list:
    """``(trial, kind, dim, instance_seed)`` for each trial, cycling through kinds."""
    plan = []
    rng = random.Random(seed)
    for t in range(trials):
        kind = kinds[t % len(kinds)]
        usable = [d for d in dims if d >= _min_dim(kind)]
        if not usable:
            kind, usable = "simplicial", list(dims)
        plan.append((t, kind, rng.choice(usable), derive_seed(seed, t)))
    return plan


def run_campaign(dims=(2, 3, 4), trials: int = 100, seed: int = 1, probes: int = DEFAULT_PROBES,
                 kinds: Sequence[str] = CAMPAIGN_KINDS[:4], sabotage: Optional[str] = None,
                 threads: Optional[int] = None) -> Report:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if sabotage is not None and sabotage not in SABOTAGE_MODES:
        raise ValueError(f"unknown sabotage mode {sabotage!r}")
    plan = plan_trials(dims, trials, seed, kinds)
    workers = threads or _thread_cap()
    args = [(t, k, d, s, probes, sabotage) for t, k, d, s in plan]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial_args, args))
    else:
        results = [run_trial(*a) for a in args]
    return Report(seed, list(dims), trials, probes, list(kinds), results)


def _run_trial_args(args):
    return run_trial(*args)
