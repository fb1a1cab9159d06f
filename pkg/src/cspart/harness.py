"""Experiment harness: seeded campaigns over (algorithm, n, grid, rep).

Per-row seeds are derived deterministically from (base_seed, n, grid, rep)
so any single row can be reproduced in isolation. Within one rep the
centralized and distributed algorithms run on the identical deployment.

The CSV is the reporting contract; rows round-trip through emit/parse.
Wall-clock timing is opt-in because it breaks byte-identical reruns.
"""

import csv
import io
import statistics
import time
from dataclasses import dataclass, field, replace

from . import ccsp as ccsp_mod
from . import dcsp as dcsp_mod
from .comm_graph import build_comm_graph, is_connected_cover
from .geometry import deploy, make_grid_explicit

CSV_HEADER = ["algorithm", "n", "grid", "rep", "seed", "partitions",
              "active_pct", "density", "tx_total", "lifetime_rounds",
              "wall_time"]

ALGORITHMS = ("ccsp", "dcsp", "lifetime")

DEFAULT_ENERGY = dcsp_mod.EnergyConfig(initial=100.0, active_cost=1.0,
                                       tx_cost=0.01, threshold=10.0)


@dataclass(frozen=True)
class ExperimentConfig:
    n_values: tuple
    grids: tuple                  # (rows, cols) pairs
    region: tuple = (50.0, 50.0)
    S: float = 36.0
    T: float = 36.0
    L_P: float = 0.1
    reps: int = 20
    base_seed: int = 1
    algorithms: tuple = ("ccsp", "dcsp")
    energy: dcsp_mod.EnergyConfig = DEFAULT_ENERGY
    timing: bool = False

    def validate(self):
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if any(n < 0 for n in self.n_values):
            raise ValueError("all n values must be >= 0")
        if not self.n_values or not self.grids:
            raise ValueError("n_values and grids must be nonempty")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {alg!r}")
        if not 0 <= self.L_P <= 1:
            raise ValueError("leader probability must be in [0, 1]")
        self.energy.validate()


@dataclass(frozen=True)
class ResultRow:
    algorithm: str
    n: int
    grid: str
    rep: int
    seed: int
    partitions: int
    active_pct: float
    density: float
    tx_total: int
    lifetime_rounds: int = None
    wall_time: float = None


def derive_seed(base_seed, n, rows, cols, rep) -> int:
    """Stable 63-bit seed for one experiment cell."""
    x = (base_seed * 0x9E3779B97F4A7C15
         + n * 0x100000001B3
         + rows * 0x1000193
         + cols * 0x10001
         + rep) & 0x7FFFFFFFFFFFFFFF
    return x


def _grid_label(rows, cols):
    return f"{rows}x{cols}"


def run_one(algorithm, dep, g, L_P, seed, energy=DEFAULT_ENERGY, timing=False):
    """Run a single algorithm on a prepared deployment; returns a ResultRow."""
    n = dep.n
    density = (sum(g.degree(u) for u in g.vertices) / n) if n else 0.0
    t0 = time.perf_counter()
    lifetime_rounds = None
    if algorithm == "ccsp":
        res = ccsp_mod.ccsp_partition(g, dep)
        parts, tx = res.partitions, 0
    elif algorithm == "dcsp":
        out = dcsp_mod.run_dcsp(g, dep, L_P, seed)
        parts, tx = out.partitions, out.tx_total
    elif algorithm == "lifetime":
        rep = dcsp_mod.lifetime_simulation(g, dep, L_P, energy, seed)
        parts, tx = rep.dcsp.partitions, rep.dcsp.tx_total + rep.repair_messages
        lifetime_rounds = rep.lifetime_rounds
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    elapsed = time.perf_counter() - t0
    active = sum(len(p.members) for p in parts)
    rows, cols = dep.grid.rows, dep.grid.cols
    return ResultRow(
        algorithm=algorithm,
        n=n,
        grid=_grid_label(rows, cols),
        rep=-1,     # filled by the caller
        seed=seed,
        partitions=len(parts),
        active_pct=100.0 * active / n if n else 0.0,
        density=density,
        tx_total=tx,
        lifetime_rounds=lifetime_rounds,
        wall_time=elapsed if timing else None,
    )


def run_experiment(cfg: ExperimentConfig):
    """One row per (algorithm, n, grid, rep), deterministically ordered."""
    cfg.validate()
    rows = []
    w, h = cfg.region
    for n in cfg.n_values:
        for (gr, gc) in cfg.grids:
            grid = make_grid_explicit(w, h, gr, gc, cfg.S, cfg.T)
            for rep in range(cfg.reps):
                seed = derive_seed(cfg.base_seed, n, gr, gc, rep)
                dep = deploy(n, grid, cfg.S, cfg.T, seed)
                g = build_comm_graph(dep)
                for alg in cfg.algorithms:
                    row = run_one(alg, dep, g, cfg.L_P, seed,
                                  energy=cfg.energy, timing=cfg.timing)
                    rows.append(replace(row, rep=rep))
    rows.sort(key=lambda r: (r.algorithm, r.n, r.grid, r.rep))
    return rows


_METRICS = ("partitions", "active_pct", "density", "tx_total", "lifetime_rounds")


def summarize(rows):
    """Group by (algorithm, n, grid); per metric: mean, sd, min, max."""
    groups = {}
    for r in rows:
        groups.setdefault((r.algorithm, r.n, r.grid), []).append(r)
    out = {}
    for key in sorted(groups):
        stats = {}
        for metric in _METRICS:
            vals = [getattr(r, metric) for r in groups[key]
                    if getattr(r, metric) is not None]
            if not vals:
                continue
            stats[metric] = {
                "mean": statistics.fmean(vals),
                "sd": statistics.stdev(vals) if len(vals) > 1 else 0.0,
                "min": min(vals),
                "max": max(vals),
            }
        out[key] = stats
    return out


def _fmt(value):
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def emit_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([r.algorithm, r.n, r.grid, r.rep, r.seed, r.partitions,
                         _fmt(r.active_pct), _fmt(r.density), r.tx_total,
                         _fmt(r.lifetime_rounds), _fmt(r.wall_time)])
    return buf.getvalue()


def parse_csv(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header: {header}")
    rows = []
    for rec in reader:
        if not rec:
            continue
        rows.append(ResultRow(
            algorithm=rec[0], n=int(rec[1]), grid=rec[2], rep=int(rec[3]),
            seed=int(rec[4]), partitions=int(rec[5]),
            active_pct=float(rec[6]), density=float(rec[7]),
            tx_total=int(rec[8]),
            lifetime_rounds=int(rec[9]) if rec[9] else None,
            wall_time=float(rec[10]) if rec[10] else None,
        ))
    return rows


def check_rows(rows, cfg: ExperimentConfig):
    """Re-run every row from its seed and verify values and invariants.

    Returns a list of violation strings (empty when everything holds).
    """
    cfg.validate()
    problems = []
    w, h = cfg.region
    for r in rows:
        gr, gc = (int(p) for p in r.grid.split("x"))
        grid = make_grid_explicit(w, h, gr, gc, cfg.S, cfg.T)
        dep = deploy(r.n, grid, cfg.S, cfg.T, r.seed)
        g = build_comm_graph(dep)
        if r.algorithm == "ccsp":
            res = ccsp_mod.ccsp_partition(g, dep)
            parts = res.partitions
        elif r.algorithm == "dcsp":
            parts = dcsp_mod.run_dcsp(g, dep, cfg.L_P, r.seed).partitions
        else:
            parts = dcsp_mod.lifetime_simulation(
                g, dep, cfg.L_P, cfg.energy, r.seed).dcsp.partitions
        label = f"{r.algorithm} n={r.n} grid={r.grid} rep={r.rep}"
        if len(parts) != r.partitions:
            problems.append(f"{label}: partitions {len(parts)} != {r.partitions}")
        used = set()
        for p in parts:
            if not is_connected_cover(dep, g, p.members):
                problems.append(f"{label}: partition {p.id} is not a connected cover")
            if used & p.members:
                problems.append(f"{label}: partitions overlap")
            used |= p.members
    return problems
