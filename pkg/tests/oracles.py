"""Independent brute-force oracles used to validate the algorithms.

Everything here is deliberately naive: enumeration, union-find, exhaustive
search. None of it shares code with the implementations under test.
"""

from functools import lru_cache
from itertools import combinations

from cspart.comm_graph import is_connected_cover
from cspart.geometry import Deployment, Node, block_index


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def uf_connected(vertices, edges):
    vertices = list(vertices)
    if not vertices:
        return True
    uf = UnionFind(vertices)
    for u, v in edges:
        uf.union(u, v)
    root = uf.find(vertices[0])
    return all(uf.find(v) == root for v in vertices)


def brute_max_matching(edges):
    """Maximum number of vertex-disjoint edges, by full enumeration."""
    edges = list(edges)

    def rec(i, used):
        if i == len(edges):
            return 0
        best = rec(i + 1, used)
        u, v = edges[i]
        if u not in used and v not in used:
            best = max(best, 1 + rec(i + 1, used | {u, v}))
        return best

    return rec(0, frozenset())


def brute_max_spanning_tree_weight(m, weights):
    """Max total weight over all spanning trees using positive-weight edges.

    weights: dict (i, j) -> weight. Returns None when no spanning tree exists.
    """
    if m == 1:
        return 0
    edges = [(i, j, w) for (i, j), w in weights.items() if w > 0]
    best = None
    for combo in combinations(edges, m - 1):
        uf = UnionFind(range(m))
        for i, j, _ in combo:
            uf.union(i, j)
        root = uf.find(0)
        if all(uf.find(b) == root for b in range(m)):
            total = sum(w for _, _, w in combo)
            if best is None or total > best:
                best = total
    return best


def exact_max_partitions(dep, g):
    """Exhaustive maximum number of disjoint connected 1-covers (n <= ~12)."""
    n = dep.n
    covers = []
    for mask in range(1, 1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        if is_connected_cover(dep, g, members):
            covers.append(mask)
    cover_set = set(covers)
    # only minimal covers matter for a maximum packing
    minimal = [mk for mk in covers
               if not any((mk & ~(1 << i)) in cover_set
                          for i in range(n) if mk >> i & 1)]

    @lru_cache(maxsize=None)
    def best(free_mask):
        top = 0
        for cov in minimal:
            if cov & ~free_mask:
                continue
            top = max(top, 1 + best(free_mask & ~cov))
        return top

    return best((1 << n) - 1)


def spearman(xs, ys):
    """Spearman rank correlation with average ranks for ties."""

    def ranks(vals):
        order = sorted(range(len(vals)), key=lambda i: vals[i])
        rk = [0.0] * len(vals)
        i = 0
        while i < len(order):
            j = i
            while j + 1 < len(order) and vals[order[j + 1]] == vals[order[i]]:
                j += 1
            avg = (i + j) / 2 + 1
            for k in range(i, j + 1):
                rk[order[k]] = avg
            i = j + 1
        return rk

    rx, ry = ranks(xs), ranks(ys)
    n = len(xs)
    mx, my = sum(rx) / n, sum(ry) / n
    num = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    dx = sum((a - mx) ** 2 for a in rx) ** 0.5
    dy = sum((b - my) ** 2 for b in ry) ** 0.5
    if dx == 0 or dy == 0:
        return 1.0 if dx == dy else 0.0
    return num / (dx * dy)


def manual_deployment(grid, coords, S, T, seed=0):
    """Deployment with hand-placed node coordinates."""
    nodes = tuple(Node(i, x, y, block_index(grid, x, y))
                  for i, (x, y) in enumerate(coords))
    return Deployment(grid, nodes, S, T, seed)
