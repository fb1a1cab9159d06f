"""Query region, virtual grid of square blocks, and random node deployment.

All randomness flows from explicit integer seeds through ``random.Random``
(Python's Mersenne Twister), so deployments are reproducible bit-for-bit
across platforms.
"""

import math
import random
from dataclasses import dataclass

SQRT2 = math.sqrt(2.0)

# Tolerance for the block-diagonal guarantee check only; geometry itself is exact.
_EPS = 1e-9


@dataclass(frozen=True)
class Grid:
    """Virtual grid of square blocks tiling the query region.

    The last row/column may overhang the region when block_side does not
    divide it evenly; overhanging blocks are truncated geometrically but
    treated as full blocks for coverage.
    """

    region_w: float
    region_h: float
    rows: int
    cols: int
    block_side: float
    guarantee_ok: bool

    @property
    def m(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class Node:
    id: int
    x: float
    y: float
    block: int


@dataclass(frozen=True)
class Deployment:
    grid: Grid
    nodes: tuple
    S: float
    T: float
    seed: int

    @property
    def n(self) -> int:
        return len(self.nodes)

    def nodes_by_block(self):
        """Map block index -> sorted list of node ids in that block."""
        out = {b: [] for b in range(self.grid.m)}
        for node in self.nodes:
            out[node.block].append(node.id)
        return out


def make_grid_from_ranges(region_w, region_h, S, T):
    """Grid whose block side is min(S, T)/sqrt(2).

    With this side any node covers its whole block and any two nodes sharing
    a block can communicate, so the coverage guarantee always holds.
    """
    if region_w <= 0 or region_h <= 0 or S <= 0 or T <= 0:
        raise ValueError("region dimensions and ranges must be positive")
    side = min(S, T) / SQRT2
    rows = math.ceil(region_h / side)
    cols = math.ceil(region_w / side)
    return Grid(region_w, region_h, rows, cols, side, guarantee_ok=True)


def make_grid_explicit(region_w, region_h, rows, cols, S, T):
    """Grid with a fixed number of rows and columns.

    guarantee_ok is false when block_side*sqrt(2) exceeds min(S, T); that is
    a warning, not an error -- runs proceed and per-instance invariant checks
    still apply.
    """
    if region_w <= 0 or region_h <= 0 or S <= 0 or T <= 0:
        raise ValueError("region dimensions and ranges must be positive")
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    side = max(region_w / cols, region_h / rows)
    ok = side * SQRT2 <= min(S, T) + _EPS
    return Grid(region_w, region_h, rows, cols, side, guarantee_ok=ok)


def block_index(grid: Grid, x, y) -> int:
    """Block containing point (x, y).

    Cells are half-open: a coordinate exactly on an interior gridline belongs
    to the higher-index block; points on the region's far edges are clamped
    into the last row/column so every point maps to exactly one block.
    """
    if x < 0 or y < 0 or x > grid.region_w or y > grid.region_h:
        raise ValueError(f"point ({x}, {y}) outside region")
    col = min(int(x // grid.block_side), grid.cols - 1)
    row = min(int(y // grid.block_side), grid.rows - 1)
    return row * grid.cols + col


def deploy(n, grid: Grid, S, T, seed) -> Deployment:
    """n nodes i.i.d. uniform over the region; pure function of its inputs."""
    if n < 0:
        raise ValueError("n must be >= 0")
    rng = random.Random(seed)
    nodes = []
    for i in range(n):
        x = rng.uniform(0.0, grid.region_w)
        y = rng.uniform(0.0, grid.region_h)
        nodes.append(Node(i, x, y, block_index(grid, x, y)))
    return Deployment(grid, tuple(nodes), S, T, seed)


def write_deployment(dep: Deployment, path):
    with open(path, "w") as fh:
        fh.write(format_deployment(dep))


def format_deployment(dep: Deployment) -> str:
    g = dep.grid
    lines = [
        f"region {float(g.region_w)!r} {float(g.region_h)!r} "
        f"grid {g.rows} {g.cols} "
        f"S {float(dep.S)!r} T {float(dep.T)!r} seed {dep.seed}"
    ]
    for node in dep.nodes:
        lines.append(f"node {node.id} {node.x:.6f} {node.y:.6f} {node.block}")
    return "\n".join(lines) + "\n"


def read_deployment(path) -> Deployment:
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty deployment file")
    head = lines[0].split()
    if len(head) != 12 or head[0] != "region" or head[3] != "grid" \
            or head[6] != "S" or head[8] != "T" or head[10] != "seed":
        raise ValueError(f"{path}: malformed header: {lines[0]!r}")
    region_w, region_h = float(head[1]), float(head[2])
    rows, cols = int(head[4]), int(head[5])
    S, T = float(head[7]), float(head[9])
    seed = int(head[11])
    grid = make_grid_explicit(region_w, region_h, rows, cols, S, T)
    nodes = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 5 or parts[0] != "node":
            raise ValueError(f"{path}: malformed node line: {ln!r}")
        nodes.append(Node(int(parts[1]), float(parts[2]), float(parts[3]), int(parts[4])))
    ids = [nd.id for nd in nodes]
    if ids != list(range(len(nodes))):
        raise ValueError(f"{path}: node ids must be dense from 0")
    return Deployment(grid, tuple(nodes), S, T, seed)
