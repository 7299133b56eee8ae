"""The sparsifier: level sampling with forest packings, edge compression,
the iterated wrapper, the unbounded-weight adaptation, the real-weight
reduction, the preprocess pipeline, and approximate min-cut.

One run proceeds in two phases.  Phase one peels the edge set into levels:
F_0 is the union of a floor(2*rho)-partial packing, and while the leftover
set stays above 2*rho*n edges it is halved by fair coins and re-packed with
twice as many forests.  Phase two keeps F_0 verbatim, keeps the final
leftover scaled up by the elapsed halvings, and compresses each F_j edge
binomially with trial count 2^j * w(e).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .graph import (
    MAX_WEIGHT,
    CutSpec,
    SparseGraph,
    WeightedGraph,
    cut_weight,
)
from .msf import (
    OVER,
    POLY_WEIGHT_EXPONENT,
    bottleneck_weights,
    msf_packing_bounded,
    msf_packing_windowed,
)
from .ni import ni_preprocess
from .oracles import exact_min_cut, _components
from .sampling import RngStream, binom_sample

RHO_NUMERATOR = 1352.0
# The unbounded-weight analysis doubles the overlap constant; running the
# standard formula at epsilon/sqrt(2) realizes exactly that 2704-numerator rho.
RHO_NUMERATOR_UNBOUNDED = 2704.0
COMPRESSION_CONSTANT = 384.0 / 169.0


class LevelOverflowError(RuntimeError):
    """Level count exceeded the configured guard; indicates a broken input
    or a pathological configuration rather than normal operation."""


def rho(
    n: int,
    epsilon: float,
    c: float = 1.0,
    rho_scale: float = 1.0,
    numerator: float = RHO_NUMERATOR,
) -> float:
    """Sampling intensity rho = rho_scale * (7+c) * numerator * ln(n) / (0.38 eps^2)."""
    if n < 2:
        raise ValueError(f"rho needs n >= 2, got {n}")
    return rho_scale * (7.0 + c) * numerator * math.log(n) / (0.38 * epsilon**2)


def practical_rho_scale(
    n: int, epsilon: float, c: float = 1.0, target_rho: float = 8.0
) -> float:
    """Multiplier that pins rho to a small target so sampling actually runs
    at desk scale (the literal constants force the early-out everywhere)."""
    return target_rho / rho(n, epsilon, c, 1.0)


def log_star2(x: float) -> int:
    count = 0
    while x > 1.0:
        x = math.log2(x)
        count += 1
    return count


_REGIMES = ("auto", "polynomial", "unbounded")


@dataclass(frozen=True)
class SparsifyConfig:
    epsilon: float
    seed: int = 0
    c: float = 1.0
    rho_scale: float = 1.0
    regime: str = "auto"
    max_levels_guard: int | None = None

    def validate(self) -> None:
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.rho_scale <= 0.0:
            raise ValueError(f"rho_scale must be positive, got {self.rho_scale}")
        if self.c < 1.0:
            raise ValueError(f"c must be >= 1, got {self.c}")
        if self.regime not in _REGIMES:
            raise ValueError(f"regime must be one of {_REGIMES}, got {self.regime!r}")
        if self.max_levels_guard is not None and self.max_levels_guard < 1:
            raise ValueError("max_levels_guard must be >= 1")


@dataclass
class LevelStats:
    x_size: int
    f_size: int
    y_size: int
    forests: int


@dataclass
class RunReport:
    n: int
    m: int
    w_max: int
    epsilon: float
    epsilon_effective: float
    c: float
    seed: int
    rho_scale: float
    regime: str
    rho: float
    early_out: bool
    set_aside_count: int
    levels: list[LevelStats] = field(default_factory=list)
    gamma: int = 0
    output_size: int = 0
    timings_ms: dict[str, float] = field(default_factory=dict)
    level_sets: list[dict[str, np.ndarray]] | None = None

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "w_max": self.w_max,
            "epsilon": self.epsilon,
            "epsilon_effective": self.epsilon_effective,
            "c": self.c,
            "seed": self.seed,
            "rho_scale": self.rho_scale,
            "regime": self.regime,
            "rho": self.rho,
            "early_out": self.early_out,
            "set_aside_count": self.set_aside_count,
            "levels": [
                {"x": s.x_size, "f": s.f_size, "y": s.y_size, "forests": s.forests}
                for s in self.levels
            ],
            "gamma": self.gamma,
            "output_size": self.output_size,
        }
        if include_timings:
            out["timings_ms"] = self.timings_ms
        return out


def _identity_output(g: WeightedGraph) -> SparseGraph:
    return SparseGraph(
        g.n, g.edge_u, g.edge_v, g.edge_w.astype(np.float64)
    )


def early_out_threshold(n: int, m: int, epsilon: float, rho_val: float) -> float:
    """Edge-count bound under which the run returns its input unchanged.

    The log factor is base 2 and clamped below at 1 (the ratio can drop
    under 1 at desk scale, where the bound still must stay positive).
    """
    if n < 2 or m == 0:
        return float("inf")
    ratio = m / (n * math.log2(n) / epsilon**2)
    return 4.0 * rho_val * n * max(1.0, math.log2(ratio))


def _algorithm_one(
    g: WeightedGraph,
    cfg: SparsifyConfig,
    eps_eff: float,
    rng: RngStream,
    *,
    windowed: bool,
    with_set_aside: bool,
    capture_levels: bool = False,
) -> tuple[SparseGraph, RunReport]:
    n, m = g.n, g.m
    report = RunReport(
        n=n,
        m=m,
        w_max=g.max_weight(),
        epsilon=cfg.epsilon,
        epsilon_effective=eps_eff,
        c=cfg.c,
        seed=cfg.seed,
        rho_scale=cfg.rho_scale,
        regime="unbounded" if windowed else "polynomial",
        rho=0.0,
        early_out=False,
        set_aside_count=0,
        level_sets=[] if capture_levels else None,
    )
    t_start = time.perf_counter()

    if n < 2 or m == 0:
        report.early_out = True
        report.output_size = m
        report.timings_ms["total"] = (time.perf_counter() - t_start) * 1e3
        return _identity_output(g), report

    rho_val = rho(n, eps_eff, cfg.c, cfg.rho_scale)
    report.rho = rho_val
    if m <= early_out_threshold(n, m, eps_eff, rho_val):
        report.early_out = True
        report.output_size = m
        report.timings_ms["total"] = (time.perf_counter() - t_start) * 1e3
        return _identity_output(g), report

    guard = cfg.max_levels_guard if cfg.max_levels_guard is not None else n
    edge_u = g.edge_u.tolist()
    edge_v = g.edge_v.tolist()
    edge_w = g.edge_w.tolist()

    out_u: list[int] = []
    out_v: list[int] = []
    out_w: list[float] = []

    t_pack = 0.0
    t_sample = 0.0
    t_compress = 0.0

    aside_ids: np.ndarray | None = None
    if with_set_aside:
        d_all = bottleneck_weights(g).tolist()
        aside_mask = np.fromiter(
            (n * w <= d for w, d in zip(edge_w, d_all)), dtype=bool, count=m
        )
        aside_ids = np.flatnonzero(aside_mask)
        report.set_aside_count = len(aside_ids)
        x_ids = np.flatnonzero(~aside_mask)
    else:
        x_ids = np.arange(m, dtype=np.int64)

    def pack(ids: np.ndarray, forest_count: int) -> np.ndarray:
        """Levels (1.. or OVER) for the subgraph (V, ids), aligned with ids."""
        if forest_count < 1:
            return np.full(len(ids), OVER, dtype=np.int64)
        sub = g.subgraph_edges(ids)
        if windowed:
            est = msf_packing_windowed(sub, forest_count)
            assert bool(est.covered.all()), "estimator must cover the working set"
            return est.levels
        return msf_packing_bounded(sub, forest_count).levels

    f_levels: list[np.ndarray] = []  # F_i id arrays, i = 0..Gamma

    i = 0
    m0 = math.floor(2.0 * rho_val)
    t0 = time.perf_counter()
    levels = pack(x_ids, m0)
    t_pack += time.perf_counter() - t0
    f_ids = x_ids[levels != OVER]
    y_ids = x_ids[levels == OVER]
    f_levels.append(f_ids)
    report.levels.append(LevelStats(len(x_ids), len(f_ids), len(y_ids), m0))
    if capture_levels:
        report.level_sets.append({"x": x_ids, "f": f_ids, "y": y_ids})

    while len(y_ids) > 2.0 * rho_val * n:
        t0 = time.perf_counter()
        bits = rng.child(f"half-sample:{i}").coin_flips(len(y_ids))
        x_ids = y_ids[bits == 1]
        t_sample += time.perf_counter() - t0
        i += 1
        if i > guard:
            raise LevelOverflowError(
                f"level count exceeded guard {guard} "
                f"(n={n}, m={m}, rho={rho_val:.3f})"
            )
        m_i = math.floor(rho_val * 2.0 ** (i + 1))
        t0 = time.perf_counter()
        levels = pack(x_ids, m_i)
        t_pack += time.perf_counter() - t0
        f_ids = x_ids[levels != OVER]
        y_ids = x_ids[levels == OVER]
        f_levels.append(f_ids)
        report.levels.append(LevelStats(len(x_ids), len(f_ids), len(y_ids), m_i))
        if capture_levels:
            report.level_sets.append({"x": x_ids, "f": f_ids, "y": y_ids})

    gamma = i
    report.gamma = gamma

    # F_0 is kept verbatim.
    for e in f_levels[0].tolist():
        out_u.append(edge_u[e])
        out_v.append(edge_v[e])
        out_w.append(float(edge_w[e]))

    # The final leftover is kept, scaled up by the gamma elapsed halvings.
    # (The run's own analysis requires the 2^gamma factor: the leftover
    # survived gamma fair coins, so anything else would bias every cut.)
    for e in y_ids.tolist():
        out_u.append(edge_u[e])
        out_v.append(edge_v[e])
        out_w.append(math.ldexp(float(edge_w[e]), gamma))

    t0 = time.perf_counter()
    for j in range(1, gamma + 1):
        stream = rng.child(f"compress:{j}")
        four_j = 4**j
        for e in f_levels[j].tolist():
            w = edge_w[e]
            p = min(1.0, COMPRESSION_CONSTANT / (four_j * w))
            r = binom_sample((1 << j) * w, p, stream)
            if r > 0:
                out_u.append(edge_u[e])
                out_v.append(edge_v[e])
                out_w.append(r / p)

    if aside_ids is not None and len(aside_ids):
        stream = rng.child("set-aside")
        for e in aside_ids.tolist():
            w = edge_w[e]
            p = min(1.0, COMPRESSION_CONSTANT / d_all[e])
            r = binom_sample(w, p, stream)
            if r > 0:
                out_u.append(edge_u[e])
                out_v.append(edge_v[e])
                out_w.append(r / p)
    t_compress += time.perf_counter() - t0

    result = SparseGraph.from_edges(n, list(zip(out_u, out_v, out_w)))
    report.output_size = result.m
    report.timings_ms = {
        "packing": t_pack * 1e3,
        "sampling": t_sample * 1e3,
        "compression": t_compress * 1e3,
        "total": (time.perf_counter() - t_start) * 1e3,
    }
    return result, report


def sparsify_once_with_report(
    g: WeightedGraph, cfg: SparsifyConfig, capture_levels: bool = False
) -> tuple[SparseGraph, RunReport]:
    cfg.validate()
    return _algorithm_one(
        g,
        cfg,
        cfg.epsilon,
        RngStream(cfg.seed),
        windowed=False,
        with_set_aside=False,
        capture_levels=capture_levels,
    )


def sparsify_once(g: WeightedGraph, cfg: SparsifyConfig) -> SparseGraph:
    """One run of the level-sampling sparsifier on an integer-weighted graph."""
    return sparsify_once_with_report(g, cfg)[0]


def sparsify_unbounded_with_report(
    g: WeightedGraph, cfg: SparsifyConfig, capture_levels: bool = False
) -> tuple[SparseGraph, RunReport]:
    cfg.validate()
    # Looser per-level heaviness of the windowed estimate costs a factor
    # sqrt(2) in precision; equivalently, the doubled rho numerator.
    eps_eff = cfg.epsilon / math.sqrt(2.0)
    return _algorithm_one(
        g,
        cfg,
        eps_eff,
        RngStream(cfg.seed),
        windowed=True,
        with_set_aside=True,
        capture_levels=capture_levels,
    )


def sparsify_unbounded(g: WeightedGraph, cfg: SparsifyConfig) -> SparseGraph:
    """Unbounded-weight variant: edges no heavier than d(e)/n are compressed
    directly against their bottleneck weight, the rest runs the standard
    levels with windowed index estimates."""
    return sparsify_unbounded_with_report(g, cfg)[0]


def _wants_windowed(g: WeightedGraph, cfg: SparsifyConfig) -> bool:
    if cfg.regime == "polynomial":
        return False
    if cfg.regime == "unbounded":
        return True
    return g.m > 0 and g.max_weight() > g.n**POLY_WEIGHT_EXPONENT


def _route_round(
    g: WeightedGraph, cfg: SparsifyConfig, eps_eff: float, rng: RngStream
) -> tuple[SparseGraph, RunReport]:
    if _wants_windowed(g, cfg):
        return _algorithm_one(
            g, cfg, eps_eff / math.sqrt(2.0), rng, windowed=True, with_set_aside=True
        )
    return _algorithm_one(
        g, cfg, eps_eff, rng, windowed=False, with_set_aside=False
    )


def sparsify_with_report(
    g: WeightedGraph, cfg: SparsifyConfig
) -> tuple[SparseGraph, list[RunReport]]:
    cfg.validate()
    root = RngStream(cfg.seed)
    n, m = g.n, g.m
    if n >= 2 and m > 0:
        k = max(1, log_star2(m / (n * math.log2(n) / cfg.epsilon**2)))
    else:
        k = 1

    reports: list[RunReport] = []
    scale_exp = 0
    current: SparseGraph | None = None
    work = g
    for i in range(1, k + 1):
        eps_i = cfg.epsilon / 2.0 ** (k - i + 2)
        if i > 1:
            # Chaining bridge: half the round budget pays for re-rounding the
            # previous round's rational weights, half for the round itself.
            work, r_i = reduce_real_weights(current, eps_i)
            scale_exp += r_i
            run_eps = eps_i / 2.0
        else:
            run_eps = eps_i
        current, rep = _route_round(work, cfg, run_eps, root.child(f"round:{i}"))
        reports.append(rep)

    if scale_exp:
        current = scale_back(current, scale_exp)
    return current, reports


def sparsify(g: WeightedGraph, cfg: SparsifyConfig) -> SparseGraph:
    """Iterated sparsification with exponentially tightening precision.

    Runs log*(m / (n log n / eps^2)) rounds, round i at eps / 2^(k-i+2); the
    error products telescope below 1 +/- eps.
    """
    return sparsify_with_report(g, cfg)[0]


# --- real-weight reduction ------------------------------------------------


def reduce_real_weights(
    g_real: SparseGraph, epsilon: float
) -> tuple[WeightedGraph, int]:
    """Round weights to the nearest multiple of 2^-r and rescale to integers.

    r = -floor(log2((eps/2) * W_min)) with W_min = min(1, smallest weight),
    so the per-edge additive error 2^-r never exceeds (eps/2) * W_min.  A
    (1 +/- eps/3)-sparsifier of the scaled graph, scaled back by 2^-r, is a
    (1 +/- eps)-sparsifier of the input.
    """
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    if g_real.m == 0:
        r = -math.floor(math.log2(0.5 * epsilon))
        return WeightedGraph.from_edges(g_real.n, []), r

    w = g_real.edge_w
    if not np.all(np.isfinite(w)) or float(w.min()) <= 0.0:
        raise ValueError("weights must be positive and finite")
    w_min = min(1.0, float(w.min()))
    r = -math.floor(math.log2(0.5 * epsilon * w_min))
    scaled = [math.floor(math.ldexp(float(x), r) + 0.5) for x in w.tolist()]
    if max(scaled) > MAX_WEIGHT:
        raise ValueError("scaled weights exceed the 63-bit range")
    g_int = WeightedGraph.from_edges(
        g_real.n,
        zip(g_real.edge_u.tolist(), g_real.edge_v.tolist(), scaled),
    )
    return g_int, r


def scale_back(h: SparseGraph, r: int) -> SparseGraph:
    """Undo the 2^r rescaling of reduce_real_weights."""
    return SparseGraph(
        h.n, h.edge_u, h.edge_v, (h.edge_w * math.ldexp(1.0, -r)).astype(np.float64)
    )


# --- pipeline and min-cut ---------------------------------------------------


def pipeline(g: WeightedGraph, cfg: SparsifyConfig) -> SparseGraph:
    """Preprocess with the forest-index sampler, reduce to integers, then run
    the main sparsifier; the budget splits eps/3 + eps/3 + eps/3."""
    cfg.validate()
    eps3 = cfg.epsilon / 3.0
    root = RngStream(cfg.seed)
    pre = ni_preprocess(
        g,
        eps3,
        cfg.c,
        seed=root.child("pipeline-preprocess").seed,
        rho_scale=cfg.rho_scale,
    )
    g_int, r = reduce_real_weights(pre, eps3)
    cfg_main = replace(cfg, epsilon=eps3, seed=root.child("pipeline-main").seed)
    h = sparsify(g_int, cfg_main)
    return scale_back(h, r)


def approx_min_cut(
    g: WeightedGraph, cfg: SparsifyConfig
) -> tuple[CutSpec, float]:
    """Sparsify, solve min-cut exactly on the sparsifier, report the found
    cut with its weight evaluated in the original graph."""
    if g.n < 2:
        raise ValueError("minimum cut needs at least two vertices")
    comp = _components(g)
    if len(set(comp)) > 1:
        side = [x for x in range(g.n) if comp[x] == comp[0]]
        return CutSpec.from_vertices(side), 0.0
    h = sparsify(g, cfg)
    cut, _ = exact_min_cut(h)
    return cut, float(cut_weight(g, cut))
