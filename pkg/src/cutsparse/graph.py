"""Graph representation, cut evaluation, contraction, and file I/O.

Graphs are undirected multigraphs: parallel edges are allowed, self-loops are
not.  Integer weights live in [1, 2**63 - 1] so that one machine word covers
both the polynomial and the practical unbounded weight regime; cut weights are
accumulated in arbitrary-precision integers to rule out overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .dsu import ForestDsu

MAX_WEIGHT = (1 << 63) - 1


class GraphFormatError(ValueError):
    """Malformed graph file; the message names the offending line."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class WeightedGraph:
    """Integer-weighted undirected multigraph on vertices 0..n-1."""

    n: int
    edge_u: np.ndarray  # int64
    edge_v: np.ndarray  # int64
    edge_w: np.ndarray  # int64, each in [1, MAX_WEIGHT]

    @property
    def m(self) -> int:
        return len(self.edge_u)

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int, int]]) -> "WeightedGraph":
        edges = list(edges)
        for e in edges:
            if not (1 <= e[2] <= MAX_WEIGHT):
                raise ValueError(f"edge weight {e[2]} outside [1, 2^63-1]")
        u = np.fromiter((e[0] for e in edges), dtype=np.int64, count=len(edges))
        v = np.fromiter((e[1] for e in edges), dtype=np.int64, count=len(edges))
        w = np.fromiter((e[2] for e in edges), dtype=np.int64, count=len(edges))
        g = WeightedGraph(n, _frozen(u), _frozen(v), _frozen(w))
        g._validate()
        return g

    def _validate(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if self.m:
            if self.edge_u.min() < 0 or self.edge_v.min() < 0:
                raise ValueError("negative vertex id")
            if max(self.edge_u.max(), self.edge_v.max()) >= self.n:
                raise ValueError("edge endpoint out of range")
            if np.any(self.edge_u == self.edge_v):
                raise ValueError("self-loops are not allowed")
            if self.edge_w.min() < 1:
                raise ValueError("edge weights must be >= 1")

    def edges(self) -> list[tuple[int, int, int]]:
        return list(zip(self.edge_u.tolist(), self.edge_v.tolist(), self.edge_w.tolist()))

    def subgraph_edges(self, idx: np.ndarray) -> "WeightedGraph":
        """Graph on the same vertex set restricted to the given edge indices."""
        return WeightedGraph(
            self.n,
            _frozen(self.edge_u[idx]),
            _frozen(self.edge_v[idx]),
            _frozen(self.edge_w[idx]),
        )

    def max_weight(self) -> int:
        return int(self.edge_w.max()) if self.m else 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and bool(np.array_equal(self.edge_u, other.edge_u))
            and bool(np.array_equal(self.edge_v, other.edge_v))
            and bool(np.array_equal(self.edge_w, other.edge_w))
        )


@dataclass(frozen=True)
class SparseGraph:
    """Reweighted subgraph with positive 64-bit float weights."""

    n: int
    edge_u: np.ndarray  # int64
    edge_v: np.ndarray  # int64
    edge_w: np.ndarray  # float64, strictly positive and finite

    @property
    def m(self) -> int:
        return len(self.edge_u)

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int, float]]) -> "SparseGraph":
        edges = list(edges)
        u = np.fromiter((e[0] for e in edges), dtype=np.int64, count=len(edges))
        v = np.fromiter((e[1] for e in edges), dtype=np.int64, count=len(edges))
        w = np.fromiter((e[2] for e in edges), dtype=np.float64, count=len(edges))
        g = SparseGraph(n, _frozen(u), _frozen(v), _frozen(w))
        g._validate()
        return g

    def _validate(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if self.m:
            if max(self.edge_u.max(), self.edge_v.max()) >= self.n or min(self.edge_u.min(), self.edge_v.min()) < 0:
                raise ValueError("edge endpoint out of range")
            if np.any(self.edge_u == self.edge_v):
                raise ValueError("self-loops are not allowed")
            if not np.all(np.isfinite(self.edge_w)) or self.edge_w.min() <= 0.0:
                raise ValueError("edge weights must be positive and finite")

    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.edge_u.tolist(), self.edge_v.tolist(), self.edge_w.tolist()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and bool(np.array_equal(self.edge_u, other.edge_u))
            and bool(np.array_equal(self.edge_v, other.edge_v))
            and bool(np.array_equal(self.edge_w, other.edge_w))
        )


@dataclass(frozen=True)
class CutSpec:
    """One side of a vertex bipartition, stored as a bitmask over vertex ids."""

    side: int

    def validate(self, n: int) -> None:
        full = (1 << n) - 1
        if self.side & ~full:
            raise ValueError("cut side references vertices outside the graph")
        if self.side == 0 or self.side == full:
            raise ValueError("cut side must be a proper non-empty vertex subset")

    def vertices(self, n: int) -> list[int]:
        return [i for i in range(n) if (self.side >> i) & 1]

    def complement(self, n: int) -> "CutSpec":
        return CutSpec(((1 << n) - 1) ^ self.side)

    @staticmethod
    def from_vertices(vertices: Iterable[int]) -> "CutSpec":
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return CutSpec(mask)


def _side_membership(side: int, n: int) -> np.ndarray:
    raw = side.to_bytes((n + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return bits[:n].astype(bool)


def cut_weight(g: WeightedGraph | SparseGraph, cut: CutSpec) -> int | float:
    """Total weight of the edges crossing the cut.

    Integer graphs are accumulated exactly in Python integers; float graphs
    use compensated summation.
    """
    cut.validate(g.n)
    member = _side_membership(cut.side, g.n)
    crossing = member[g.edge_u] != member[g.edge_v]
    selected = g.edge_w[crossing]
    if selected.dtype == np.float64:
        return math.fsum(selected.tolist())
    return sum(selected.tolist())


def contract(
    g: WeightedGraph,
    keep: Callable[[int, int, int], bool] | Sequence[bool] | np.ndarray,
) -> tuple[WeightedGraph, np.ndarray]:
    """Contract every edge failing the keep predicate.

    Self-loops produced by the merging are deleted; kept parallel edges stay
    separate.  Returns the contracted graph (densely renumbered) and the map
    from old vertex ids to new ones.
    """
    if callable(keep):
        mask = np.fromiter(
            (keep(int(u), int(v), int(w)) for u, v, w in zip(g.edge_u, g.edge_v, g.edge_w)),
            dtype=bool,
            count=g.m,
        )
    else:
        mask = np.asarray(keep, dtype=bool)
        if len(mask) != g.m:
            raise ValueError("keep mask length does not match edge count")

    dsu = ForestDsu()
    for x in range(g.n):
        dsu.make_set(x)
    for u, v in zip(g.edge_u[~mask].tolist(), g.edge_v[~mask].tolist()):
        dsu.union(u, v)

    vertex_map = np.empty(g.n, dtype=np.int64)
    root_to_new: dict[int, int] = {}
    for x in range(g.n):
        root = dsu.find(x)
        if root not in root_to_new:
            root_to_new[root] = len(root_to_new)
        vertex_map[x] = root_to_new[root]

    new_u = vertex_map[g.edge_u[mask]]
    new_v = vertex_map[g.edge_v[mask]]
    new_w = g.edge_w[mask]
    not_loop = new_u != new_v
    contracted = WeightedGraph(
        len(root_to_new),
        _frozen(new_u[not_loop]),
        _frozen(new_v[not_loop]),
        _frozen(new_w[not_loop].copy()),
    )
    return contracted, vertex_map


# --- file formats -----------------------------------------------------------
#
# Edge-list text: first line "n m", then m lines "u v w" with 0-indexed
# endpoints.  DIMACS .gr: "c" comments, one "p <tag> n m" line, then "a"/"e"
# lines with 1-indexed endpoints.


def _detect_format(first_line: str) -> str:
    head = first_line.strip().split()
    if head and head[0] in ("c", "p", "a", "e"):
        return "dimacs"
    return "edgelist"


def _parse_weight_int(token: str, lineno: int) -> int:
    try:
        w = int(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: weight {token!r} is not an integer") from None
    if w < 1:
        raise GraphFormatError(f"line {lineno}: weight must be >= 1, got {w}")
    if w > MAX_WEIGHT:
        raise GraphFormatError(f"line {lineno}: weight exceeds 2^63-1")
    return w


def _check_endpoints(u: int, v: int, n: int, lineno: int) -> None:
    if u == v:
        raise GraphFormatError(f"line {lineno}: self-loop on vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise GraphFormatError(f"line {lineno}: endpoint out of range for n={n}")


def _read_lines(source: str | Path) -> list[str]:
    return Path(source).read_text().splitlines()


def load_graph(source: str | Path, fmt: str = "auto") -> WeightedGraph:
    """Read an integer-weighted graph from an edge-list or DIMACS file."""
    lines = _read_lines(source)
    if fmt == "auto":
        non_blank = next((ln for ln in lines if ln.strip()), "")
        fmt = _detect_format(non_blank)
    if fmt == "edgelist":
        return _load_edgelist(lines, float_weights=False)
    if fmt == "dimacs":
        return _load_dimacs(lines)
    raise ValueError(f"unknown graph format {fmt!r}")


def load_sparse(source: str | Path) -> SparseGraph:
    """Read a real-weighted graph in edge-list format."""
    return _load_edgelist(_read_lines(source), float_weights=True)


def _load_edgelist(lines: list[str], float_weights: bool) -> WeightedGraph | SparseGraph:
    it = ((i + 1, ln) for i, ln in enumerate(lines))
    header = None
    for lineno, ln in it:
        if ln.strip():
            header = (lineno, ln.split())
            break
    if header is None:
        raise GraphFormatError("line 1: missing 'n m' header")
    lineno, parts = header
    if len(parts) != 2:
        raise GraphFormatError(f"line {lineno}: header must be 'n m'")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(f"line {lineno}: header must be two integers") from None
    if n < 1 or m < 0:
        raise GraphFormatError(f"line {lineno}: invalid header values n={n} m={m}")

    edges: list[tuple[int, int, int | float]] = []
    for lineno, ln in it:
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != 3:
            raise GraphFormatError(f"line {lineno}: expected 'u v w'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: endpoints must be integers") from None
        _check_endpoints(u, v, n, lineno)
        if float_weights:
            try:
                w: int | float = float(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: weight {parts[2]!r} is not a number") from None
            if not math.isfinite(w) or w <= 0:
                raise GraphFormatError(f"line {lineno}: weight must be positive and finite")
        else:
            w = _parse_weight_int(parts[2], lineno)
        edges.append((u, v, w))
    if len(edges) != m:
        raise GraphFormatError(f"header announced {m} edges but file has {len(edges)}")
    if float_weights:
        return SparseGraph.from_edges(n, edges)
    return WeightedGraph.from_edges(n, edges)


def _load_dimacs(lines: list[str]) -> WeightedGraph:
    n = None
    m = None
    edges: list[tuple[int, int, int]] = []
    for i, ln in enumerate(lines):
        lineno = i + 1
        parts = ln.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate 'p' line")
            if len(parts) < 4:
                raise GraphFormatError(f"line {lineno}: 'p' line needs '<tag> n m'")
            try:
                n, m = int(parts[-2]), int(parts[-1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: 'p' line needs integer n m") from None
        elif parts[0] in ("a", "e"):
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before 'p' line")
            if len(parts) != 4:
                raise GraphFormatError(f"line {lineno}: expected '{parts[0]} u v w'")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise GraphFormatError(f"line {lineno}: endpoints must be integers") from None
            _check_endpoints(u, v, n, lineno)
            edges.append((u, v, _parse_weight_int(parts[3], lineno)))
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'p' line")
    if m is not None and len(edges) != m:
        raise GraphFormatError(f"'p' line announced {m} edges but file has {len(edges)}")
    return WeightedGraph.from_edges(n, edges)


def format_weight(w: float) -> str:
    """Render a float weight; integral values print as integers."""
    if float(w).is_integer() and abs(w) < 2**63:
        return str(int(w))
    return repr(float(w))


def save_graph(g: WeightedGraph | SparseGraph, sink: str | Path, fmt: str = "edgelist") -> None:
    """Write a graph; edge order is preserved as given."""
    if fmt == "edgelist":
        out = [f"{g.n} {g.m}"]
        if isinstance(g, SparseGraph):
            out += [f"{u} {v} {format_weight(w)}" for u, v, w in g.edges()]
        else:
            out += [f"{u} {v} {w}" for u, v, w in g.edges()]
    elif fmt == "dimacs":
        if isinstance(g, SparseGraph):
            raise ValueError("DIMACS output supports integer graphs only")
        out = [f"p sp {g.n} {g.m}"]
        out += [f"a {u + 1} {v + 1} {w}" for u, v, w in g.edges()]
    else:
        raise ValueError(f"unknown graph format {fmt!r}")
    Path(sink).write_text("\n".join(out) + "\n")
