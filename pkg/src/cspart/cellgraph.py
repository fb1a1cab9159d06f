"""Weighted cell graph: per block pair, vertex-disjoint cross-block edges.

The weight of a block pair is the size of a maximum bipartite matching
between the alive nodes of the two blocks, computed with augmenting paths
(unit-capacity max flow). Augmenting paths are explored in ascending node-id
order, so the realized pair lists are reproducible; only the cardinality is
contractual.
"""

from dataclasses import dataclass

from .comm_graph import CommGraph
from .geometry import Deployment


@dataclass(frozen=True)
class WeightedCellGraph:
    m: int
    weights: dict      # (i, j) with i < j -> matching size (0 entries omitted)
    pair_lists: dict   # (i, j) with i < j -> tuple of (u, v), u in block i

    def weight(self, i, j) -> int:
        if i == j:
            return 0
        key = (i, j) if i < j else (j, i)
        return self.weights.get(key, 0)

    def pairs(self, i, j):
        key = (i, j) if i < j else (j, i)
        return self.pair_lists.get(key, ())


def _max_matching(left, adj):
    """Maximum bipartite matching via Kuhn's augmenting paths.

    left: sorted ids of the left side; adj: id -> sorted right neighbors.
    Returns list of (u, v) pairs sorted by u.
    """
    match_right = {}

    def try_augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or try_augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in left:
        try_augment(u, set())
    pairs = sorted((u, v) for v, u in match_right.items())
    return pairs


def disjoint_edges(g: CommGraph, dep: Deployment, bi, bj, alive):
    """Maximum set of vertex-disjoint communication edges between two blocks.

    Only alive nodes participate. Deterministic for fixed input.
    """
    if bi == bj:
        raise ValueError("block pair must be distinct")
    if bi > bj:
        bi, bj = bj, bi
    nodes = dep.nodes
    left = sorted(u for u in alive if nodes[u].block == bi)
    adj = {}
    for u in left:
        nbrs = [v for v in g.adj[u] if v in alive and nodes[v].block == bj]
        if nbrs:
            adj[u] = nbrs
    return _max_matching(sorted(adj), adj)


def _pairs_for(g, nodes, bi, bj, alive_in_block, alive):
    left = alive_in_block.get(bi, ())
    adj = {}
    for u in left:
        nbrs = [v for v in g.adj[u] if v in alive and nodes[v].block == bj]
        if nbrs:
            adj[u] = nbrs
    if not adj:
        return ()
    return tuple(_max_matching(sorted(adj), adj))


def _group_alive(dep, alive):
    by_block = {}
    for u in sorted(alive):
        by_block.setdefault(dep.nodes[u].block, []).append(u)
    return by_block


def build_weighted_cell_graph(g: CommGraph, dep: Deployment, alive) -> WeightedCellGraph:
    """Matchings for every unordered block pair.

    All pairs are considered, not only geometric neighbors: a long
    transmission range can connect non-adjacent blocks.
    """
    m = dep.grid.m
    alive = set(alive)
    by_block = _group_alive(dep, alive)
    weights = {}
    pair_lists = {}
    for i in range(m):
        if i not in by_block:
            continue
        for j in range(i + 1, m):
            pairs = _pairs_for(g, dep.nodes, i, j, by_block, alive)
            if pairs:
                weights[(i, j)] = len(pairs)
                pair_lists[(i, j)] = pairs
    return WeightedCellGraph(m, weights, pair_lists)


def remove_nodes(w: WeightedCellGraph, g: CommGraph, dep: Deployment,
                 removed, alive) -> WeightedCellGraph:
    """Refresh the cell graph after node removal.

    Block pairs touching a block that lost a node are recomputed from scratch
    over the alive set; untouched pairs are carried over unchanged.
    """
    removed = set(removed)
    alive = set(alive)
    if removed & alive:
        raise ValueError("removed nodes must not be in the alive set")
    if not removed:
        return w
    dirty = {dep.nodes[u].block for u in removed}
    by_block = _group_alive(dep, alive)
    weights = {}
    pair_lists = {}
    for i in range(w.m):
        for j in range(i + 1, w.m):
            if i in dirty or j in dirty:
                pairs = _pairs_for(g, dep.nodes, i, j, by_block, alive) \
                    if i in by_block else ()
                if pairs:
                    weights[(i, j)] = len(pairs)
                    pair_lists[(i, j)] = pairs
            elif (i, j) in w.pair_lists:
                weights[(i, j)] = w.weights[(i, j)]
                pair_lists[(i, j)] = w.pair_lists[(i, j)]
    return WeightedCellGraph(w.m, weights, pair_lists)


def format_pair_lists(w: WeightedCellGraph) -> str:
    """Debug dump of the disjoint edge lists for all block pairs."""
    lines = []
    for (i, j) in sorted(w.pair_lists):
        lines.append(f"pair {i} {j} w={w.weights[(i, j)]}")
        for u, v in w.pair_lists[(i, j)]:
            lines.append(f"  {u} {v}")
    return "\n".join(lines) + ("\n" if lines else "")
