"""Named decision queries shared by ``ordercone check`` and campaign dumps."""

from __future__ import annotations

from .band import ProjectionMatrix, is_order_projection
from .cone import ConeSpace, leq
from .exact import jsonable
from .order import is_disjoint, is_infimum_zero

QUERIES = {"disjoint": 2, "leq": 2, "inf-zero": 2, "order-projection": 0}


def run_query(cone: ConeSpace, query: str, vectors=(), projection: ProjectionMatrix = None) -> dict:
    """Evaluate one query; returns ``{"query", "holds", "witness"}`` in JSON-ready form.

    Raises ``ValueError`` (including ``PreconditionError``) on bad input.
    """
    if query not in QUERIES:
        raise ValueError(f"unknown query {query!r}; choose from {sorted(QUERIES)}")
    if len(vectors) != QUERIES[query]:
        raise ValueError(f"query {query!r} takes {QUERIES[query]} vectors, got {len(vectors)}")
    for v in vectors:
        if len(v) != cone.dim:
            raise ValueError(f"vector of dimension {len(v)} on a cone of dimension {cone.dim}")
    if query == "disjoint":
        v = is_disjoint(cone, *vectors)
        return {"query": query, "holds": v.disjoint, "witness": jsonable(v.to_json())}
    if query == "leq":
        v = leq(cone, *vectors)
        return {"query": query, "holds": v.holds, "witness": {"violated_row": v.violated_row}}
    if query == "inf-zero":
        v = is_infimum_zero(cone, *vectors)
        return {"query": query, "holds": v.holds, "witness": jsonable({"lower_bound": v.witness})}
    if projection is None:
        raise ValueError("order-projection needs an instance with a projection")
    if projection.dim != cone.dim:
        raise ValueError("projection and cone dimensions differ")
    v = is_order_projection(cone, projection)
    return {"query": query, "holds": v.holds, "witness": jsonable(v.witness)}
