"""Ground-truth machinery the test suites compare against.

Everything here is deliberately independent of the fast algorithms: cuts are
enumerated exhaustively, the packing oracle repeats standalone Kruskal
passes, and the global min cut comes from Stoer-Wagner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from collections import deque

import numpy as np

from .graph import CutSpec, SparseGraph, WeightedGraph
from .msf import OVER, MsfPacking, _descending_order_comparison

ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class CutReport:
    """Worst-case relative cut error of a sparsifier against its base graph."""

    max_rel_error: float
    worst_cut: CutSpec
    num_cuts: int
    min_cut_value: float

    def to_dict(self) -> dict:
        return {
            "max_rel_error": self.max_rel_error,
            "worst_cut_side": self.worst_cut.side,
            "num_cuts": self.num_cuts,
            "min_cut_value": self.min_cut_value,
        }


def _all_cut_weights(g: WeightedGraph | SparseGraph) -> np.ndarray:
    """Cut weight for every proper bipartition, indexed by the bitmask of the
    side not containing vertex n-1.  Entry 0 (empty side) is unused.

    Parallel edges aggregate per vertex pair first, so the mask sweep runs
    over at most n*(n-1)/2 pairs however dense the multigraph is.
    """
    n = g.n
    size = 1 << (n - 1)
    masks = np.arange(size, dtype=np.int64)
    weights = np.zeros(size, dtype=np.float64)
    agg: dict[tuple[int, int], float] = {}
    for u, v, w in zip(g.edge_u.tolist(), g.edge_v.tolist(), g.edge_w.tolist()):
        key = (u, v) if u < v else (v, u)
        agg[key] = agg.get(key, 0.0) + w
    for (u, v), w in agg.items():
        bu = (masks >> u) & 1 if u < n - 1 else np.zeros(size, dtype=np.int64)
        bv = (masks >> v) & 1 if v < n - 1 else np.zeros(size, dtype=np.int64)
        weights[bu != bv] += w
    return weights


def check_sparsifier(
    g: WeightedGraph | SparseGraph,
    h: WeightedGraph | SparseGraph,
    n_limit: int = ENUMERATION_LIMIT,
) -> CutReport:
    """Enumerate all 2**(n-1) - 1 cuts and report max |w_H(C)/w_G(C) - 1|."""
    if g.n != h.n:
        raise ValueError(f"vertex counts differ: {g.n} vs {h.n}")
    if g.n > n_limit:
        raise ValueError(f"n={g.n} exceeds enumeration limit {n_limit}")
    if g.n < 2:
        raise ValueError("graphs on a single vertex have no cuts")
    wg = _all_cut_weights(g)[1:]
    wh = _all_cut_weights(h)[1:]
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.abs(wh / wg - 1.0)
    zero = wg == 0.0
    rel[zero] = np.where(wh[zero] == 0.0, 0.0, np.inf)
    worst = int(np.argmax(rel))
    return CutReport(
        max_rel_error=float(rel[worst]),
        worst_cut=CutSpec(worst + 1),
        num_cuts=len(wg),
        min_cut_value=float(wg.min()),
    )


def oracle_msf_packing(g: WeightedGraph, M: int) -> MsfPacking:
    """Literal definition of a packing: M standalone descending-Kruskal
    rounds, each removing its forest before the next round starts."""
    if M < 1:
        raise ValueError(f"forest count must be >= 1, got {M}")
    m = g.m
    us = g.edge_u.tolist()
    vs = g.edge_v.tolist()
    levels = np.full(m, OVER, dtype=np.int64)
    remaining = _descending_order_comparison(g.edge_w)
    for level in range(1, M + 1):
        if not remaining:
            break
        parent = list(range(g.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        leftover = []
        for eid in remaining:
            ru, rv = find(us[eid]), find(vs[eid])
            if ru != rv:
                parent[ru] = rv
                levels[eid] = level
            else:
                leftover.append(eid)
        remaining = leftover

    singleton = np.ones(g.n, dtype=np.int64)
    for eid in range(m):
        lev = levels[eid]
        if lev != OVER:
            for x in (us[eid], vs[eid]):
                if singleton[x] <= lev:
                    singleton[x] = lev + 1
    return MsfPacking(M=M, levels=levels, singleton_level=singleton)


# --- exact minimum cut --------------------------------------------------------


def _components(g: WeightedGraph | SparseGraph) -> list[int]:
    comp = [-1] * g.n
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()):
        adj[u].append(v)
        adj[v].append(u)
    for start in range(g.n):
        if comp[start] != -1:
            continue
        comp[start] = start
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if comp[y] == -1:
                    comp[y] = start
                    queue.append(y)
    return comp


def exact_min_cut(g: WeightedGraph | SparseGraph) -> tuple[CutSpec, int | float]:
    """Stoer-Wagner global minimum cut; exact arithmetic on integer graphs.

    Disconnected input returns a zero-weight cut isolating one component.
    """
    n = g.n
    if n < 2:
        raise ValueError("minimum cut needs at least two vertices")

    comp = _components(g)
    if len(set(comp)) > 1:
        side = [x for x in range(n) if comp[x] == comp[0]]
        zero = 0.0 if isinstance(g, SparseGraph) else 0
        return CutSpec.from_vertices(side), zero

    weight: list[list] = [[0] * n for _ in range(n)]
    for u, v, w in zip(g.edge_u.tolist(), g.edge_v.tolist(), g.edge_w.tolist()):
        weight[u][v] += w
        weight[v][u] += w

    groups: list[list[int]] = [[x] for x in range(n)]
    active = list(range(n))
    best_value = None
    best_side: list[int] = []

    while len(active) > 1:
        a = active[0]
        in_a = {a}
        key = {x: weight[a][x] for x in active[1:]}
        order = [a]
        while key:
            # deterministic: max key, ties to the smallest vertex id
            z = max(key, key=lambda x: (key[x], -x))
            order.append(z)
            in_a.add(z)
            del key[z]
            wz = weight[z]
            for x in key:
                key[x] += wz[x]
        t = order[-1]
        s = order[-2]
        cut_of_phase = sum(weight[t][x] for x in active if x != t)
        if best_value is None or cut_of_phase < best_value:
            best_value = cut_of_phase
            best_side = list(groups[t])
        # merge t into s
        for x in active:
            if x != s and x != t:
                weight[s][x] += weight[t][x]
                weight[x][s] = weight[s][x]
        groups[s].extend(groups[t])
        active.remove(t)

    return CutSpec.from_vertices(best_side), best_value


# --- edge connectivity --------------------------------------------------------


def edge_connectivity(
    g: WeightedGraph | SparseGraph,
    u: int,
    v: int,
    n_limit: int = ENUMERATION_LIMIT,
) -> int | float:
    """Minimum weight over all cuts separating u and v.

    Exhaustive enumeration up to n_limit vertices; a capacity-scaled max-flow
    (weights as capacities) beyond that.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    if g.n <= n_limit:
        n = g.n
        size = 1 << (n - 1)
        masks = np.arange(size, dtype=np.int64)
        bu = (masks >> u) & 1 if u < n - 1 else np.zeros(size, dtype=np.int64)
        bv = (masks >> v) & 1 if v < n - 1 else np.zeros(size, dtype=np.int64)
        separating = bu != bv
        weights = _all_cut_weights(g)
        best = float(weights[separating].min())
        if isinstance(g, WeightedGraph):
            # recompute the winning cut exactly to avoid float rounding
            idx = int(np.flatnonzero(separating)[np.argmin(weights[separating])])
            member = [(idx >> x) & 1 if x < n - 1 else 0 for x in range(n)]
            exact = sum(
                w
                for uu, vv, w in zip(
                    g.edge_u.tolist(), g.edge_v.tolist(), g.edge_w.tolist()
                )
                if member[uu] != member[vv]
            )
            return exact
        return best
    return _dinic_max_flow(g, u, v)


def _dinic_max_flow(g: WeightedGraph | SparseGraph, source: int, sink: int):
    # capacities are the edge weights; parallel edges merge
    cap: dict[tuple[int, int], int | float] = {}
    for u, v, w in zip(g.edge_u.tolist(), g.edge_v.tolist(), g.edge_w.tolist()):
        cap[(u, v)] = cap.get((u, v), 0) + w
        cap[(v, u)] = cap.get((v, u), 0) + w
    adj: list[list[int]] = [[] for _ in range(g.n)]
    edges: list[list] = []  # [to, capacity, index of reverse]
    for (u, v), c in sorted(cap.items()):
        adj[u].append(len(edges))
        edges.append([v, c, None])
    lookup = {}
    pos = 0
    for (u, v), _c in sorted(cap.items()):
        lookup[(u, v)] = pos
        pos += 1
    for (u, v), _c in sorted(cap.items()):
        edges[lookup[(u, v)]][2] = lookup[(v, u)]

    flow = 0
    while True:
        level = [-1] * g.n
        level[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for eid in adj[x]:
                to, c, _ = edges[eid]
                if c > 0 and level[to] == -1:
                    level[to] = level[x] + 1
                    queue.append(to)
        if level[sink] == -1:
            return flow
        it = [0] * g.n

        def dfs(x, pushed):
            if x == sink:
                return pushed
            while it[x] < len(adj[x]):
                eid = adj[x][it[x]]
                to, c, rev = edges[eid]
                if c > 0 and level[to] == level[x] + 1:
                    got = dfs(to, min(pushed, c))
                    if got:
                        edges[eid][1] -= got
                        edges[rev][1] += got
                        return got
                it[x] += 1
            return 0

        while True:
            pushed = dfs(source, float("inf"))
            if not pushed:
                break
            flow += pushed


def binomial_pmf(n: int, p: float, k: int) -> float:
    """Binomial point mass via log-gamma; exact short-circuits at p in {0,1}."""
    if n < 0 or not (0.0 <= p <= 1.0):
        raise ValueError("need n >= 0 and p in [0, 1]")
    if k < 0 or k > n:
        return 0.0
    if p == 0.0:
        return 1.0 if k == 0 else 0.0
    if p == 1.0:
        return 1.0 if k == n else 0.0
    log_pmf = (
        math.lgamma(n + 1)
        - math.lgamma(k + 1)
        - math.lgamma(n - k + 1)
        + k * math.log(p)
        + (n - k) * math.log1p(-p)
    )
    return math.exp(log_pmf)


# --- packing validators (used by invariant tests) ------------------------------


def validate_msf_packing_forests(g: WeightedGraph, packing: MsfPacking) -> None:
    """Check each level's edge set is acyclic and levels stay within 1..M."""
    levels = packing.levels
    if len(levels) != g.m:
        raise AssertionError("level array does not match edge count")
    for level in sorted(set(levels.tolist()) - {OVER}):
        if not (1 <= level <= packing.M):
            raise AssertionError(f"level {level} outside 1..{packing.M}")
        parent = list(range(g.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for eid in np.flatnonzero(levels == level).tolist():
            ru, rv = find(int(g.edge_u[eid])), find(int(g.edge_v[eid]))
            if ru == rv:
                raise AssertionError(f"cycle in forest {level}")
            parent[ru] = rv


def validate_msf_packing_heaviness(g: WeightedGraph, packing: MsfPacking) -> None:
    """For each OVER edge, its endpoints must be connected inside every level
    using only edges at least as heavy (per-level BFS check)."""
    levels = packing.levels.tolist()
    us = g.edge_u.tolist()
    vs = g.edge_v.tolist()
    ws = g.edge_w.tolist()
    max_level = max((lv for lv in levels if lv != OVER), default=0)
    if max_level < packing.M and any(lv == OVER for lv in levels):
        raise AssertionError("OVER edge although some forest stayed empty")
    by_level: dict[int, list[int]] = {}
    for eid, lv in enumerate(levels):
        if lv != OVER:
            by_level.setdefault(lv, []).append(eid)
    for eid, lv in enumerate(levels):
        if lv != OVER:
            continue
        threshold = ws[eid]
        for level in range(1, packing.M + 1):
            adj: dict[int, list[int]] = {}
            for fid in by_level.get(level, []):
                if ws[fid] >= threshold:
                    adj.setdefault(us[fid], []).append(vs[fid])
                    adj.setdefault(vs[fid], []).append(us[fid])
            start, goal = us[eid], vs[eid]
            seen = {start}
            queue = deque([start])
            found = False
            while queue:
                x = queue.popleft()
                if x == goal:
                    found = True
                    break
                for y in adj.get(x, []):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            if not found:
                raise AssertionError(
                    f"edge {eid} is OVER but not heavy in forest {level}"
                )


def validate_ni_indices(g: WeightedGraph, levels: list[int]) -> None:
    """Reconstruct the occupied forests: edge e occupies l_e - w(e) + 1 .. l_e
    and every occupied forest must be acyclic."""
    if len(levels) != g.m:
        raise AssertionError("index list does not match edge count")
    us = g.edge_u.tolist()
    vs = g.edge_v.tolist()
    ws = g.edge_w.tolist()
    for eid in range(g.m):
        if levels[eid] < ws[eid]:
            raise AssertionError("edge cannot occupy nonpositive forest indices")
    top = max(levels, default=0)
    for forest in range(1, top + 1):
        parent = list(range(g.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for eid in range(g.m):
            if levels[eid] - ws[eid] + 1 <= forest <= levels[eid]:
                ru, rv = find(us[eid]), find(vs[eid])
                if ru == rv:
                    raise AssertionError(f"cycle in occupied forest {forest}")
                parent[ru] = rv
