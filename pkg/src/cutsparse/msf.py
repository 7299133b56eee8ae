"""Partial maximum-spanning-forest packings and bottleneck weights.

A packing assigns each edge the index of the first forest whose endpoints it
can join when edges are inserted in descending weight order; edges whose
endpoints are already connected in every forest up to the requested bound get
the explicit OVER sentinel.  Two interchangeable computations are provided
(disjoint-set forest vs. linked-list union backend), plus a windowed
estimator that handles weights too large for the rescaled-integer fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dsu import ForestDsu, LinkedListDsu
from .graph import WeightedGraph

# Sentinel for "endpoints connected in every forest up to M"; kept distinct
# from any valid level so arithmetic on it fails loudly.
OVER = -1

# Weight bound W <= n**4 under which the descending sort may use radix
# passes; above it the same algorithm keeps its union backend but sorts by
# comparison.
POLY_WEIGHT_EXPONENT = 4


@dataclass(frozen=True)
class MsfPacking:
    """Per-edge forest index (1-based, OVER beyond M) plus the per-vertex
    smallest level at which the vertex is still a singleton."""

    M: int
    levels: np.ndarray  # int64 per edge; 1..M or OVER
    singleton_level: np.ndarray  # int64 per vertex

    def level_of(self, edge_id: int) -> int:
        return int(self.levels[edge_id])

    def forest_edges(self, level: int) -> np.ndarray:
        return np.flatnonzero(self.levels == level)

    def over_edges(self) -> np.ndarray:
        return np.flatnonzero(self.levels == OVER)


@dataclass(frozen=True)
class EstimatedMsfPacking:
    """Windowed estimate: levels are only meaningful where covered is True."""

    M: int
    levels: np.ndarray  # int64 per edge; 1..M or OVER where covered
    covered: np.ndarray  # bool per edge; the estimator's domain


def _descending_order_radix(w: np.ndarray) -> list[int]:
    # Stable sort on the negated weight: numpy's stable kind is a radix sort
    # for integer dtypes, so ties fall back to ascending edge id.
    return np.argsort(-w, kind="stable").tolist()


def _descending_order_comparison(w: np.ndarray) -> list[int]:
    wl = w.tolist()
    return sorted(range(len(wl)), key=lambda e: (-wl[e], e))


def _pack_levels(
    n: int,
    edge_u: list[int],
    edge_v: list[int],
    order: list[int],
    M: int,
    dsu_factory: Callable[[], ForestDsu | LinkedListDsu],
) -> tuple[np.ndarray, np.ndarray]:
    """Greedy first-fit packing over a fixed edge order.

    Binary search runs only over levels below min(s(u), s(v)), where both
    endpoints are known to be non-singletons; failing that, the level is
    min(s(u), s(v)) itself and the missing endpoints are created there.
    """
    m = len(edge_u)
    levels = np.empty(m, dtype=np.int64)
    m_eff = min(M, m)  # a level index can never exceed the edge count
    forests = [dsu_factory() for _ in range(m_eff + 1)]  # 1-based
    s = [1] * n

    for eid in order:
        u = edge_u[eid]
        v = edge_v[eid]
        su = s[u]
        sv = s[v]
        smin = su if su < sv else sv
        hi0 = smin - 1
        if hi0 > m_eff:
            hi0 = m_eff
        lo = 1
        hi = hi0
        while lo <= hi:
            mid = (lo + hi) >> 1
            forest = forests[mid]
            if forest.find(u) == forest.find(v):
                lo = mid + 1
            else:
                hi = mid - 1
        if lo <= hi0:
            forests[lo].union(u, v)
            levels[eid] = lo
        elif smin <= m_eff:
            j = smin
            forest = forests[j]
            if su == j:
                forest.make_set(u)
                s[u] = j + 1
            if sv == j:
                forest.make_set(v)
                s[v] = j + 1
            forest.union(u, v)
            levels[eid] = j
        else:
            levels[eid] = OVER

    return levels, np.array(s, dtype=np.int64)


def _packing(g: WeightedGraph, M: int, order: list[int], dsu_factory) -> MsfPacking:
    levels, s = _pack_levels(
        g.n, g.edge_u.tolist(), g.edge_v.tolist(), order, M, dsu_factory
    )
    return MsfPacking(M=M, levels=levels, singleton_level=s)


def msf_packing_bounded(g: WeightedGraph, M: int) -> MsfPacking:
    """M-partial packing with the disjoint-set forest backend.

    Radix-sorts the edges when weights stay within the polynomial regime
    (W <= n**4); otherwise falls back to a comparison sort while keeping the
    same union backend.  Tie-break is (weight descending, edge id ascending).
    """
    if M < 1:
        raise ValueError(f"forest count must be >= 1, got {M}")
    if g.m and g.max_weight() <= g.n**POLY_WEIGHT_EXPONENT:
        order = _descending_order_radix(g.edge_w)
    else:
        order = _descending_order_comparison(g.edge_w)
    return _packing(g, M, order, ForestDsu)


def msf_packing_general(g: WeightedGraph, M: int) -> MsfPacking:
    """M-partial packing for unbounded weights: comparison sort plus the
    linked-list union backend.  Identical output to the bounded variant."""
    if M < 1:
        raise ValueError(f"forest count must be >= 1, got {M}")
    order = _descending_order_comparison(g.edge_w)
    return _packing(g, M, order, LinkedListDsu)


# --- bottleneck weights ------------------------------------------------------

_UNREACHABLE = (1 << 63) - 1  # sentinel min; cannot be undercut by any weight


def bottleneck_weights(g: WeightedGraph) -> np.ndarray:
    """d(e): minimum edge weight on the path between e's endpoints in one
    maximum spanning forest; for forest edges d(e) = w(e).

    Path minima are answered with binary-lifting ancestor tables over the
    rooted forest.  Every edge of the graph has both endpoints inside one
    forest component, so the +inf sentinel is unreachable (asserted).
    """
    n, m = g.n, g.m
    d = np.zeros(m, dtype=np.int64)
    if m == 0:
        return d

    us = g.edge_u.tolist()
    vs = g.edge_v.tolist()
    ws = g.edge_w.tolist()
    order = (
        _descending_order_radix(g.edge_w)
        if g.max_weight() <= n**POLY_WEIGHT_EXPONENT
        else _descending_order_comparison(g.edge_w)
    )

    parent_uf = list(range(n))

    def find(x: int) -> int:
        root = x
        while parent_uf[root] != root:
            root = parent_uf[root]
        while parent_uf[x] != root:
            parent_uf[x], x = root, parent_uf[x]
        return root

    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    in_tree = [False] * m
    for eid in order:
        ru, rv = find(us[eid]), find(vs[eid])
        if ru != rv:
            parent_uf[ru] = rv
            in_tree[eid] = True
            adj[us[eid]].append((vs[eid], ws[eid]))
            adj[vs[eid]].append((us[eid], ws[eid]))

    # Root every tree; record parent, depth, and the weight up to the parent.
    parent = [-1] * n
    pweight = [0] * n
    depth = [0] * n
    comp = [-1] * n
    for root in range(n):
        if comp[root] != -1:
            continue
        comp[root] = root
        stack = [root]
        while stack:
            x = stack.pop()
            for y, wxy in adj[x]:
                if comp[y] == -1:
                    comp[y] = root
                    parent[y] = x
                    pweight[y] = wxy
                    depth[y] = depth[x] + 1
                    stack.append(y)

    levels = max(1, max(depth).bit_length())
    up = [parent[:]]
    mn = [[pw if par != -1 else _UNREACHABLE for pw, par in zip(pweight, parent)]]
    for x in range(n):
        if up[0][x] == -1:
            up[0][x] = x
    for k in range(1, levels):
        prev_up, prev_mn = up[k - 1], mn[k - 1]
        up.append([prev_up[prev_up[x]] for x in range(n)])
        mn.append([min(prev_mn[x], prev_mn[prev_up[x]]) for x in range(n)])

    def path_min(u: int, v: int) -> int:
        best = _UNREACHABLE
        if depth[u] < depth[v]:
            u, v = v, u
        diff = depth[u] - depth[v]
        k = 0
        while diff:
            if diff & 1:
                if mn[k][u] < best:
                    best = mn[k][u]
                u = up[k][u]
            diff >>= 1
            k += 1
        if u == v:
            return best
        for k in range(levels - 1, -1, -1):
            if up[k][u] != up[k][v]:
                best = min(best, mn[k][u], mn[k][v])
                u = up[k][u]
                v = up[k][v]
        return min(best, mn[0][u], mn[0][v])

    for eid in range(m):
        if in_tree[eid]:
            d[eid] = ws[eid]
        else:
            assert comp[us[eid]] == comp[vs[eid]], "forest must span each component"
            d[eid] = path_min(us[eid], vs[eid])
    return d


# --- windowed estimation ------------------------------------------------------


def _round_half_up(num: int, den: int) -> int:
    return (2 * num + den) // (2 * den)


def msf_packing_windowed(g: WeightedGraph, M: int) -> EstimatedMsfPacking:
    """Estimated MSF indices for the edges with w(e) > d(e)/n.

    Windows are processed from the largest uncovered d(e) downward.  Window D
    drops edges not heavier than D/n**2, rescales weights in (D/n**2, D] by
    n**3/D (round half up), caps everything heavier than D at n**3 + 1, and
    reads the exact packing of that rescaled graph.  Each edge is covered by
    the first window whose (D/n, D] interval contains its d(e).

    Capping (rather than contracting) the heavy edges keeps their
    multiplicities honest: the window's forests are genuine subgraphs of the
    input, so a covered index k certifies k edge-disjoint connecting paths
    among edges of weight at least (1 - 1/n) w(e).  Contraction would let a
    single heavy edge impersonate arbitrarily many disjoint routes through a
    merged blob and overstate the index.
    """
    if M < 1:
        raise ValueError(f"forest count must be >= 1, got {M}")
    n, m = g.n, g.m
    levels = np.zeros(m, dtype=np.int64)
    covered = np.zeros(m, dtype=bool)
    if m == 0:
        return EstimatedMsfPacking(M=M, levels=levels, covered=covered)

    ws = g.edge_w.tolist()
    ds = bottleneck_weights(g).tolist()
    us = g.edge_u.tolist()
    vs = g.edge_v.tolist()
    cap = n**3 + 1  # sorts above every rescaled in-window weight, stays < n**4

    pending = sorted(
        (e for e in range(m) if n * ws[e] > ds[e]),
        key=lambda e: (-ds[e], e),
    )

    pos = 0
    while pos < len(pending):
        D = ds[pending[pos]]
        batch = []
        while pos < len(pending) and n * ds[pending[pos]] > D:
            batch.append(pending[pos])
            pos += 1

        window_ids = [e for e in range(m) if n * n * ws[e] > D]
        window_graph = WeightedGraph.from_edges(
            g.n,
            [
                (
                    us[e],
                    vs[e],
                    cap if ws[e] > D else _round_half_up(n**3 * ws[e], D),
                )
                for e in window_ids
            ],
        )
        packing = msf_packing_bounded(window_graph, M)
        local = {e: i for i, e in enumerate(window_ids)}
        for e in batch:
            assert e in local, "covered edge must survive into its window"
            levels[e] = packing.levels[local[e]]
            covered[e] = True

    return EstimatedMsfPacking(M=M, levels=levels, covered=covered)
