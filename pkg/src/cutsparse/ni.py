"""Forest-index connectivity estimates via maximum-adjacency ordering, and
the linear-time preprocessing sparsifier built on them.

A weight-w edge occupies w contiguous forests of the packing; the stored
index l_e is the last of them.  Indices are computed by scanning vertices in
decreasing attachment order with a binary heap, which matches the classic
forest-packing semantics without materializing Theta(sum of weights) forests.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .graph import SparseGraph, WeightedGraph
from .sampling import RngStream, compress_edge

# Fixed constant of the preprocessing sampler; scaled only by the shared
# practical-mode knob.
PREPROCESS_RHO_CONSTANT = 224.0 / 0.38


@dataclass(frozen=True)
class NiIndices:
    """Last occupied forest index per edge (Python ints: sums of weights may
    exceed 64 bits)."""

    levels: list[int]

    def level_of(self, edge_id: int) -> int:
        return self.levels[edge_id]


def ni_indices(g: WeightedGraph) -> NiIndices:
    """Forest indices from a maximum-adjacency scan.

    Vertices leave a max-heap keyed by their attachment r(v); scanning vertex
    x assigns every edge to a still-queued neighbor y the range
    (r(y), r(y) + w], i.e. l_e = r(y) + w(e), then raises r(y).
    """
    n, m = g.n, g.m
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for eid, (u, v, w) in enumerate(
        zip(g.edge_u.tolist(), g.edge_v.tolist(), g.edge_w.tolist())
    ):
        adj[u].append((v, w, eid))
        adj[v].append((u, w, eid))

    levels = [0] * m
    r = [0] * n
    visited = [False] * n
    heap: list[tuple[int, int]] = [(0, x) for x in range(n)]
    heapq.heapify(heap)
    while heap:
        neg_r, x = heapq.heappop(heap)
        if visited[x] or -neg_r != r[x]:
            continue
        visited[x] = True
        for y, w, eid in adj[x]:
            if not visited[y]:
                levels[eid] = r[y] + w
                r[y] += w
                heapq.heappush(heap, (-r[y], y))
    return NiIndices(levels)


def preprocess_rho(n: int, epsilon: float, rho_scale: float = 1.0) -> float:
    return rho_scale * PREPROCESS_RHO_CONSTANT * math.log(n) / epsilon**2


def ni_preprocess(
    g: WeightedGraph,
    epsilon: float,
    c: float = 1.0,
    seed: int = 0,
    rho_scale: float = 1.0,
) -> SparseGraph:
    """Compress every edge with p_e = min(1, rho / l_e).

    The confidence parameter c is accepted for interface symmetry with the
    main sparsifier; this sampler's fixed constant already carries its
    confidence margin.
    """
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if rho_scale <= 0.0:
        raise ValueError(f"rho_scale must be positive, got {rho_scale}")
    indices = ni_indices(g)
    rho = preprocess_rho(g.n, epsilon, rho_scale) if g.n >= 2 else float("inf")
    rng = RngStream(seed).child("ni-compress")
    out: list[tuple[int, int, float]] = []
    for eid, (u, v, w) in enumerate(
        zip(g.edge_u.tolist(), g.edge_v.tolist(), g.edge_w.tolist())
    ):
        p = min(1.0, rho / indices.levels[eid])
        new_w = compress_edge(w, p, rng)
        if new_w is not None:
            out.append((u, v, new_w))
    return SparseGraph.from_edges(g.n, out)
