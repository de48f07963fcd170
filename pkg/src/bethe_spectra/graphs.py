"""Explicit simple graphs built from generalized Bethe trees and rooted gluing.

Vertices are 0..n-1 and all labelings are deterministic.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bethe import DegreeSequence, validate_prefix


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_order(self, 0)) == self.n

    def delete_vertex(self, v: int) -> Graph:
        """Remove v and relabel the remaining vertices in order."""
        relabel = {u: (u if u < v else u - 1) for u in range(self.n) if u != v}
        return Graph(
            self.n - 1,
            ((relabel[a], relabel[b]) for a, b in self.edges if v not in (a, b)),
        )

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> Graph:
        return cls(obj["n"], (tuple(e) for e in obj["edges"]))

    @classmethod
    def from_edge_list_text(cls, text: str, n: int | None = None) -> Graph:
        """Parse "u v" lines; blank lines and '#' comments are skipped."""
        edges = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            u, v = line.split()
            edges.append((int(u), int(v)))
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, edges)


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    root: int

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise ValueError("root out of range")

    def minus_root(self) -> Graph:
        return self.graph.delete_vertex(self.root)


def bfs_order(g: Graph, start: int) -> list[int]:
    adj = g.neighbors()
    seen = [False] * g.n
    seen[start] = True
    order = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                order.append(w)
                queue.append(w)
    return order


def bfs_levels(g: Graph, start: int) -> list[int]:
    """Distance from start (level 1 is the start vertex itself)."""
    adj = g.neighbors()
    level = [0] * g.n
    level[start] = 1
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if not level[w]:
                level[w] = level[u] + 1
                queue.append(w)
    return level


def build_bethe_tree(d: DegreeSequence) -> RootedGraph:
    """B(d_1, ..., d_k) rooted at vertex 0.

    Level 1 is the root (d_k children); a vertex at level j, 2 <= j <= k-1,
    has d_{k-j+1} - 1 children; level k holds the leaves. Ids are breadth-first.
    """
    k = d.k
    edges = []
    frontier = [0]
    n = 1
    for j in range(1, k):
        children = d.dk if j == 1 else d[k - j + 1] - 1
        nxt = []
        for u in frontier:
            for _ in range(children):
                edges.append((u, n))
                nxt.append(n)
                n += 1
        frontier = nxt
    return RootedGraph(Graph(n, edges), 0)


def line_graph(g: Graph) -> Graph:
    """Vertex i of the result is ``g.edges[i]`` (edges are sorted lexicographically)."""
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for idx, (u, v) in enumerate(g.edges):
        incident[u].append(idx)
        incident[v].append(idx)
    out = set()
    for inc in incident:
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                out.add((inc[a], inc[b]))
    return Graph(g.m, out)


def rooted_line_graph_of_capped_tree(prefix: Sequence[int]) -> RootedGraph:
    """H = L(B(d_1, ..., d_{k-1}, 1)) rooted at the edge incident with the tree root.

    ``H.minus_root()`` gives H' = H - e.
    """
    prefix = validate_prefix(prefix)
    tree = build_bethe_tree(DegreeSequence(prefix + (1,)))
    lg = line_graph(tree.graph)
    root_edges = [i for i, e in enumerate(tree.graph.edges) if tree.root in e]
    assert len(root_edges) == 1
    return RootedGraph(lg, root_edges[0])


def corona(g1: Graph, g2: Graph) -> Graph:
    """g1 plus n1 copies of g2, the i-th vertex of g1 joined to all of copy i."""
    n1, n2 = g1.n, g2.n
    edges = list(g1.edges)
    for i in range(n1):
        base = n1 + i * n2
        edges.extend((base + a, base + b) for a, b in g2.edges)
        edges.extend((i, base + a) for a in range(n2))
    return Graph(n1 + n1 * n2, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def coalesce_graphs(g: RootedGraph, h: RootedGraph) -> RootedGraph:
    """G . H: identify the two roots. The merged vertex keeps G's root id."""
    n = g.graph.n
    mapping = {}
    nxt = n
    for v in range(h.graph.n):
        if v == h.root:
            mapping[v] = g.root
        else:
            mapping[v] = nxt
            nxt += 1
    edges = list(g.graph.edges) + [(mapping[a], mapping[b]) for a, b in h.graph.edges]
    return RootedGraph(Graph(nxt, edges), g.root)


def attach_at(g0: Graph, h: RootedGraph, vertices: Iterable[int]) -> Graph:
    """Attach a copy of H at each listed vertex u of G0, identifying u with H's root."""
    edges = list(g0.edges)
    n = g0.n
    for u in vertices:
        mapping = {}
        for v in range(h.graph.n):
            if v == h.root:
                mapping[v] = u
            else:
                mapping[v] = n
                n += 1
        edges.extend((mapping[a], mapping[b]) for a, b in h.graph.edges)
    return Graph(n, edges)


def attach_to_all_graph(g0: Graph, h: RootedGraph) -> Graph:
    return attach_at(g0, h, range(g0.n))


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform random labelled tree on n vertices (random attachment order)."""
    if n < 1:
        raise ValueError("need n >= 1")
    return Graph(n, ((i, rng.randrange(i)) for i in range(1, n)))


def random_rooted_tree(max_vertices: int, rng: random.Random) -> RootedGraph:
    n = rng.randint(1, max_vertices)
    t = random_tree(n, rng)
    return RootedGraph(t, rng.randrange(n))


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1
    return a
