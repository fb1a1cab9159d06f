"""Centralized connected set cover partitioning.

Repeatedly extract a maximum spanning tree of the weighted cell graph,
realize each tree edge as one cross-block node pair, emit the selected nodes
as a partition, remove them, and refresh the weights; stop when no spanning
tree exists.
"""

from dataclasses import dataclass, field

from .cellgraph import WeightedCellGraph, build_weighted_cell_graph, remove_nodes
from .comm_graph import CommGraph
from .geometry import Deployment


@dataclass(frozen=True)
class Partition:
    """A connected 1-cover.

    realizing_edges is set by the centralized algorithm; leader and parents
    (the rooted partition tree) by the distributed one.
    """

    id: int
    members: frozenset
    realizing_edges: tuple = ()
    leader: int = None
    parents: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CcspResult:
    partitions: tuple
    free_nodes: frozenset
    iterations: int


def maximum_spanning_tree(w: WeightedCellGraph):
    """Spanning tree of the positive-weight cell graph maximizing total weight.

    Prim's algorithm on negated weights, rooted at block 0; ties broken by
    lower block index (new endpoint first, then tree endpoint). Returns the
    tree edges in insertion order, None when no spanning tree exists, and an
    empty tree for a single block.
    """
    m = w.m
    if m == 1:
        return []
    in_tree = {0}
    edges = []
    while len(in_tree) < m:
        best = None
        for (i, j), wt in w.weights.items():
            if wt <= 0:
                continue
            if i in in_tree and j not in in_tree:
                u, v = i, j
            elif j in in_tree and i not in in_tree:
                u, v = j, i
            else:
                continue
            key = (-wt, v, u)
            if best is None or key < best[0]:
                best = (key, u, v, wt)
        if best is None:
            return None
        _, u, v, _ = best
        in_tree.add(v)
        edges.append((u, v))
    return edges


def realize_tree(tree, w: WeightedCellGraph, dep: Deployment, alive):
    """Pick one realizing node pair per tree edge.

    Tree edges are processed in Prim insertion order; the pair needing the
    fewest new nodes is preferred (conserving nodes for later partitions),
    ties broken by the lexicographically smallest pair. For a single block
    the partition is the lowest-id alive node.
    """
    if w.m == 1:
        pool = sorted(alive)
        if not pool:
            raise RuntimeError("no alive node available in the single block")
        return {pool[0]}, ()
    chosen = set()
    realizing = []
    for (bi, bj) in tree:
        pairs = w.pairs(bi, bj)
        if not pairs:
            raise RuntimeError(f"tree edge ({bi}, {bj}) has an empty pair list")
        best = min(pairs, key=lambda p: (2 - (p[0] in chosen) - (p[1] in chosen),
                                         p[0], p[1]))
        chosen.update(best)
        realizing.append(((bi, bj) if bi < bj else (bj, bi), best))
    return chosen, tuple(realizing)


def ccsp_partition(g: CommGraph, dep: Deployment) -> CcspResult:
    """Run the full centralized partitioning loop. Deterministic."""
    alive = set(nd.id for nd in dep.nodes)
    partitions = []
    iterations = 0
    m = dep.grid.m
    if m == 1:
        # Degenerate grid: every single node covers the region on its own.
        for u in sorted(alive):
            partitions.append(Partition(len(partitions), frozenset([u])))
        return CcspResult(tuple(partitions), frozenset(), len(partitions))
    w = build_weighted_cell_graph(g, dep, alive)
    while True:
        tree = maximum_spanning_tree(w)
        if tree is None:
            break
        iterations += 1
        members, realizing = realize_tree(tree, w, dep, alive)
        partitions.append(Partition(len(partitions), frozenset(members), realizing))
        alive -= members
        w = remove_nodes(w, g, dep, members, alive)
    return CcspResult(tuple(partitions), frozenset(alive), iterations)


def format_partition_report(result) -> str:
    """Text report: one line per partition, then the free nodes."""
    lines = []
    for p in result.partitions:
        ids = " ".join(str(u) for u in sorted(p.members))
        lines.append(f"partition {p.id}: {ids}")
    free = " ".join(str(u) for u in sorted(result.free_nodes))
    lines.append(f"free: {free}")
    return "\n".join(lines) + "\n"
