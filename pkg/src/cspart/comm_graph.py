"""Communication graph: nodes adjacent when within transmission range.

The graph is immutable after construction and safe for concurrent reads.
Distance comparisons use squared values; the range bound is inclusive.
"""

from collections import deque
from dataclasses import dataclass, field

from .geometry import Deployment


@dataclass(frozen=True)
class CommGraph:
    vertices: tuple          # sorted node ids
    adj: dict                # id -> sorted tuple of neighbor ids
    _vset: frozenset = field(repr=False, default=None)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def degree(self, u) -> int:
        return len(self.adj[u])

    def has_vertex(self, u) -> bool:
        return u in self._vset

    def has_edge(self, u, v) -> bool:
        return v in self.adj.get(u, ())


def _make(vertices, adj):
    vs = tuple(sorted(vertices))
    return CommGraph(vs, {u: tuple(sorted(adj[u])) for u in vs}, frozenset(vs))


def build_comm_graph(dep: Deployment) -> CommGraph:
    """Edge (u, v) iff u != v and euclidean distance <= T (inclusive)."""
    t2 = dep.T * dep.T
    nodes = dep.nodes
    adj = {nd.id: [] for nd in nodes}
    for i in range(len(nodes)):
        ni = nodes[i]
        for j in range(i + 1, len(nodes)):
            nj = nodes[j]
            dx = ni.x - nj.x
            dy = ni.y - nj.y
            if dx * dx + dy * dy <= t2:
                adj[ni.id].append(nj.id)
                adj[nj.id].append(ni.id)
    return _make(list(adj), adj)


def induced_subgraph(g: CommGraph, members) -> CommGraph:
    """Subgraph with exactly the given vertices and the edges among them."""
    members = set(members)
    unknown = members - set(g.vertices)
    if unknown:
        raise ValueError(f"unknown node ids: {sorted(unknown)}")
    adj = {u: [v for v in g.adj[u] if v in members] for u in members}
    return _make(members, adj)


def is_connected(g: CommGraph) -> bool:
    """True iff the graph has at most one connected component.

    The empty graph is connected by convention.
    """
    if not g.vertices:
        return True
    start = g.vertices[0]
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(g.vertices)


def is_connected_cover(dep: Deployment, g: CommGraph, members) -> bool:
    """True iff members occupy every block and induce a connected subgraph."""
    members = set(members)
    covered = {dep.nodes[u].block for u in members}
    if len(covered) < dep.grid.m:
        return False
    return is_connected(induced_subgraph(g, members))


def format_edge_list(g: CommGraph) -> str:
    """Debug export: lines ``edge <u> <v>`` with u < v, sorted."""
    lines = []
    for u in g.vertices:
        for v in g.adj[u]:
            if u < v:
                lines.append(f"edge {u} {v}")
    return "\n".join(lines) + ("\n" if lines else "")
