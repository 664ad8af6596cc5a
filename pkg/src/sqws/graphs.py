"""Graph families, named target vertices, and topology metrics.

Vertices are contiguous 0-based integers. Graphs are simple and
undirected; the trapping sink is *not* part of a Graph (it is appended by
the operator layer), so every metric here describes the bare topology.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import ConnectivityError, ParameterError, SelectorError

Edge = tuple[int, int]


@dataclass
class Graph:
    """Undirected simple graph with optional role labels on vertices."""

    n: int
    edges: tuple[Edge, ...]
    labels: dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"vertex count must be positive, got {self.n}")
        seen = set()
        norm = []
        for i, j in self.edges:
            if i == j:
                raise ParameterError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ParameterError(f"edge ({i},{j}) out of range for n={self.n}")
            e = (min(i, j), max(i, j))
            if e in seen:
                raise ParameterError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        self.edges = tuple(sorted(norm))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        """Symmetric 0/1 adjacency matrix with zero diagonal."""
        a = np.zeros((self.n, self.n))
        for i, j in self.edges:
            a[i, j] = 1.0
            a[j, i] = 1.0
        return a

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=int)
        for i, j in self.edges:
            d[i] += 1
            d[j] += 1
        return d

    def neighbor_lists(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def label_of(self, tag: str) -> int | None:
        for v, name in self.labels.items():
            if name == tag:
                return v
        return None


@dataclass
class FamilySpec:
    """Declarative description of one graph instance."""

    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def id_string(self) -> str:
        inner = ",".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}"
                         for k, v in sorted(self.params.items()))
        if self.family in _SEEDED_FAMILIES:
            inner = f"{inner},seed={self.seed}" if inner else f"seed={self.seed}"
        return f"{self.family}({inner})"


@dataclass
class TargetSelector:
    """Picks one vertex, either by index or by a named role tag."""

    mode: str  # "index" | "named"
    value: int | str
    depth: int | None = None  # only for the parametric "depth" tag

    def name(self) -> str:
        if self.mode == "index":
            return f"v{self.value}"
        if self.value == "depth":
            return f"depth{self.depth}"
        return str(self.value)


_SEEDED_FAMILIES = {"watts_strogatz", "glued_small_world", "maze"}

FAMILIES = (
    "complete", "cycle", "path", "hypercube", "grid", "star", "wheel",
    "tadpole", "lollipop", "perfect_binary_tree", "ring_lattice",
    "watts_strogatz", "glued_small_world", "maze",
)


def _need(params: dict, family: str, key: str) -> int | float:
    if key not in params:
        raise ParameterError(f"{family}: missing parameter '{key}'")
    return params[key]


def _complete_edges(n: int) -> list[Edge]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _cycle_edges(n: int) -> list[Edge]:
    return [(i, (i + 1) % n) for i in range(n)]


def _path_edges(n: int) -> list[Edge]:
    return [(i, i + 1) for i in range(n - 1)]


def _ring_lattice_edges(n: int, k: int) -> set[Edge]:
    # "As far as possible" each vertex links to its k nearest neighbors:
    # floor(k/2) on each side, duplicates discarded, so odd k acts as k-1
    # and large k saturates at the complete graph.
    edges: set[Edge] = set()
    for j in range(1, k // 2 + 1):
        for i in range(n):
            w = (i + j) % n
            if i != w:
                edges.add((min(i, w), max(i, w)))
    return edges


def _watts_strogatz_edges(n: int, k: int, p: float, rng: np.random.Generator) -> set[Edge]:
    # Ring lattice plus single-endpoint rewiring with rejection of
    # self-loops and duplicate edges.
    edges = _ring_lattice_edges(n, k)
    deg = np.zeros(n, dtype=int)
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
    for off in range(1, k // 2 + 1):
        for i in range(n):
            b = (i + off) % n
            e = (min(i, b), max(i, b))
            if i == b or e not in edges:
                continue  # wraparound duplicate of a smaller offset
            if rng.random() >= p:
                continue
            if deg[i] >= n - 1:
                continue  # no free endpoint left for this vertex
            for _ in range(8 * n):
                w = int(rng.integers(n))
                cand = (min(i, w), max(i, w))
                if w == i or cand in edges:
                    continue
                edges.discard(e)
                edges.add(cand)
                deg[b] -= 1
                deg[w] += 1
                break
    return edges


def _bfs_dists(adj: list[list[int]], src: int) -> np.ndarray:
    dist = np.full(len(adj), -1, dtype=int)
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def _edges_connected(n: int, edges: set[Edge]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    return bool(n == 0 or (_bfs_dists(adj, 0) >= 0).all())


def _glued_small_world(seed: int, comp_size: int = 22,
                       ks=(10, 4, 3), ps=(0.1, 0.5, 0.8)) -> tuple[int, list[Edge], dict[int, str]]:
    # Three small-world components chained by exactly two bridge edges
    # (1-2 and 2-3). Targets HC/IC/LC are the highest-degree vertex of
    # each component on the assembled graph.
    rng = np.random.default_rng(seed)
    n_total = 3 * comp_size
    edges: set[Edge] = set()
    for c, (k, p) in enumerate(zip(ks, ps)):
        off = c * comp_size
        for _ in range(200):
            comp = _watts_strogatz_edges(comp_size, k, p, rng)
            if _edges_connected(comp_size, comp):
                break
        else:
            raise ParameterError("glued_small_world: could not draw a connected component")
        edges |= {(i + off, j + off) for i, j in comp}
    for c in range(2):
        a = int(rng.integers(comp_size)) + c * comp_size
        b = int(rng.integers(comp_size)) + (c + 1) * comp_size
        edges.add((min(a, b), max(a, b)))
    deg = np.zeros(n_total, dtype=int)
    for i, j in edges:
        deg[i] += 1
        deg[j] += 1
    labels = {}
    for c, tag in enumerate(("HC", "IC", "LC")):
        block = deg[c * comp_size:(c + 1) * comp_size]
        labels[int(np.argmax(block)) + c * comp_size] = tag
    return n_total, sorted(edges), labels


def _maze_edges(rows: int, cols: int, rng: np.random.Generator) -> list[Edge]:
    # Depth-first recursive backtracker on the cell grid: cells are
    # vertices, removed walls are edges; the result is a spanning tree.
    n = rows * cols
    visited = [False] * n
    edges: list[Edge] = []
    stack = [0]
    visited[0] = True
    while stack:
        cell = stack[-1]
        r, c = divmod(cell, cols)
        nbrs = []
        for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            rr, cc = r + dr, c + dc
            if 0 <= rr < rows and 0 <= cc < cols and not visited[rr * cols + cc]:
                nbrs.append(rr * cols + cc)
        if not nbrs:
            stack.pop()
            continue
        nxt = nbrs[int(rng.integers(len(nbrs)))]
        visited[nxt] = True
        edges.append((min(cell, nxt), max(cell, nxt)))
        stack.append(nxt)
    return edges


def generate(spec: FamilySpec) -> Graph:
    """Build one graph instance; deterministic given the spec (and seed)."""
    fam = spec.family
    p = spec.params
    if fam == "complete":
        n = int(_need(p, fam, "n"))
        if n < 2:
            raise ParameterError(f"complete: n must be >= 2, got {n}")
        return Graph(n, tuple(_complete_edges(n)))
    if fam == "cycle":
        n = int(_need(p, fam, "n"))
        if n < 3:
            raise ParameterError(f"cycle: n must be >= 3, got {n}")
        return Graph(n, tuple(_cycle_edges(n)))
    if fam == "path":
        n = int(_need(p, fam, "n"))
        if n < 2:
            raise ParameterError(f"path: n must be >= 2, got {n}")
        return Graph(n, tuple(_path_edges(n)),
                     labels={n // 2: "center", 0: "border"})
    if fam == "hypercube":
        d = int(_need(p, fam, "d"))
        if d < 1:
            raise ParameterError(f"hypercube: d must be >= 1, got {d}")
        n = 1 << d
        edges = [(i, i ^ (1 << b)) for i in range(n) for b in range(d) if i < i ^ (1 << b)]
        return Graph(n, tuple(edges))
    if fam == "grid":
        rows = int(_need(p, fam, "rows"))
        cols = int(_need(p, fam, "cols"))
        if rows < 1 or cols < 1 or rows * cols < 2:
            raise ParameterError(f"grid: needs at least 2 cells, got {rows}x{cols}")
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return Graph(rows * cols, tuple(edges),
                     labels={(rows // 2) * cols + cols // 2: "center", 0: "border"})
    if fam == "star":
        n = int(_need(p, fam, "n"))
        if n < 2:
            raise ParameterError(f"star: n must be >= 2, got {n}")
        return Graph(n, tuple((0, i) for i in range(1, n)),
                     labels={0: "center", 1: "border"})
    if fam == "wheel":
        n = int(_need(p, fam, "n"))
        if n < 4:
            raise ParameterError(f"wheel: n must be >= 4, got {n}")
        rim = [(i, i + 1 if i + 1 < n else 1) for i in range(1, n)]
        spokes = [(0, i) for i in range(1, n)]
        return Graph(n, tuple(rim + spokes), labels={0: "center", 1: "border"})
    if fam == "tadpole":
        m = int(_need(p, fam, "m"))
        npath = int(_need(p, fam, "n"))
        if m < 3 or npath < 1:
            raise ParameterError(f"tadpole: need m >= 3 and n >= 1, got m={m}, n={npath}")
        edges = _cycle_edges(m) + [(0, m)] + [(m + i, m + i + 1) for i in range(npath - 1)]
        labels = {0: "shared", m // 2: "cycle", m + npath - 1: "path"}
        return Graph(m + npath, tuple(edges), labels=labels)
    if fam == "lollipop":
        m = int(_need(p, fam, "m"))
        npath = int(_need(p, fam, "n"))
        if m < 3 or npath < 1:
            raise ParameterError(f"lollipop: need m >= 3 and n >= 1, got m={m}, n={npath}")
        edges = _complete_edges(m) + [(0, m)] + [(m + i, m + i + 1) for i in range(npath - 1)]
        labels = {0: "shared", 1: "complete", m + npath - 1: "path"}
        return Graph(m + npath, tuple(edges), labels=labels)
    if fam == "perfect_binary_tree":
        depth = int(_need(p, fam, "depth"))
        if depth < 1:
            raise ParameterError(f"perfect_binary_tree: depth must be >= 1, got {depth}")
        n = (1 << (depth + 1)) - 1
        edges = [(v, 2 * v + 1) for v in range((n - 1) // 2)]
        edges += [(v, 2 * v + 2) for v in range((n - 1) // 2)]
        return Graph(n, tuple(edges), labels={0: "root", (1 << depth) - 1: "leaf"})
    if fam == "ring_lattice":
        n = int(_need(p, fam, "n"))
        k = int(_need(p, fam, "k"))
        if n < 3:
            raise ParameterError(f"ring_lattice: n must be >= 3, got {n}")
        if k < 2:
            raise ParameterError(f"ring_lattice: k must be >= 2, got {k}")
        return Graph(n, tuple(sorted(_ring_lattice_edges(n, k))))
    if fam == "watts_strogatz":
        n = int(_need(p, fam, "n"))
        k = int(_need(p, fam, "k"))
        prob = float(_need(p, fam, "p"))
        if n < 3 or k < 2:
            raise ParameterError(f"watts_strogatz: need n >= 3 and k >= 2, got n={n}, k={k}")
        if not 0.0 <= prob <= 1.0:
            raise ParameterError(f"watts_strogatz: p must lie in [0,1], got {prob}")
        rng = np.random.default_rng(spec.seed)
        return Graph(n, tuple(sorted(_watts_strogatz_edges(n, k, prob, rng))))
    if fam == "glued_small_world":
        comp_size = int(p.get("comp_size", 22))
        ks = tuple(p.get("ks", (10, 4, 3)))
        ps = tuple(p.get("ps", (0.1, 0.5, 0.8)))
        if comp_size < 3 or len(ks) != 3 or len(ps) != 3:
            raise ParameterError("glued_small_world: needs comp_size >= 3 and three (k, p) pairs")
        n, edges, labels = _glued_small_world(spec.seed, comp_size, ks, ps)
        return Graph(n, tuple(edges), labels=labels)
    if fam == "maze":
        rows = int(_need(p, fam, "rows"))
        cols = int(_need(p, fam, "cols"))
        if rows * cols < 2:
            raise ParameterError(f"maze: needs at least 2 cells, got {rows}x{cols}")
        rng = np.random.default_rng(spec.seed)
        edges = _maze_edges(rows, cols, rng)
        g = Graph(rows * cols, tuple(edges))
        dist = _bfs_dists(g.neighbor_lists(), 0)
        g.labels = {0: "start", int(np.argmax(dist)): "exit"}
        return g
    raise ParameterError(f"unknown graph family '{fam}'")


def resolve_target(g: Graph, sel: TargetSelector) -> int:
    """Resolve a selector to a single vertex index."""
    if sel.mode == "index":
        v = int(sel.value)
        if not 0 <= v < g.n:
            raise IndexError(f"target index {v} out of range for n={g.n}")
        return v
    if sel.mode != "named":
        raise SelectorError(f"unknown selector mode '{sel.mode}'")
    tag = str(sel.value)
    if tag == "depth":
        if sel.depth is None:
            raise SelectorError("'depth' selector needs a depth value")
        root = g.label_of("root")
        if root is None:
            raise SelectorError("'depth' selector needs a graph with a 'root' label")
        dist = _bfs_dists(g.neighbor_lists(), root)
        hits = np.flatnonzero(dist == sel.depth)
        if len(hits) == 0:
            raise SelectorError(f"no vertex at depth {sel.depth}")
        return int(hits[0])
    v = g.label_of(tag)
    if v is None:
        raise SelectorError(f"tag '{tag}' not defined for this graph "
                            f"(available: {sorted(set(g.labels.values()))})")
    return v


def density(g: Graph) -> float:
    """Edge density 2|E| / (n(n-1))."""
    if g.n < 2:
        raise ParameterError("density needs at least 2 vertices")
    return 2.0 * g.num_edges / (g.n * (g.n - 1))


def degree_centrality(g: Graph, v: int) -> float:
    """deg(v) / (n-1)."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")
    return g.degrees()[v] / (g.n - 1)


def eccentricity(g: Graph, v: int) -> int:
    """Longest shortest path from v; requires a connected graph."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")
    dist = _bfs_dists(g.neighbor_lists(), v)
    if (dist < 0).any():
        raise ConnectivityError("eccentricity is undefined on a disconnected graph")
    return int(dist.max())


def is_connected(g: Graph) -> bool:
    return (_bfs_dists(g.neighbor_lists(), 0) >= 0).all()


def ring_lattice_profile(n: int, k_values) -> list[tuple[int, int, float]]:
    """(k, eccentricity, degree centrality) of a ring-lattice vertex per k.

    Any vertex serves: the family is vertex-transitive.
    """
    if n < 3:
        raise ParameterError(f"ring_lattice_profile: n must be >= 3, got {n}")
    out = []
    for k in k_values:
        g = generate(FamilySpec("ring_lattice", {"n": n, "k": int(k)}))
        out.append((int(k), eccentricity(g, 0), degree_centrality(g, 0)))
    return out


def to_edge_list_text(g: Graph) -> str:
    """Serialize: first line n, then sorted 'i j' lines, then label comments."""
    lines = [str(g.n)]
    lines += [f"{i} {j}" for i, j in g.edges]
    lines += [f"# label {v} {name}" for v, name in sorted(g.labels.items())]
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParameterError("empty edge-list text")
    labels: dict[int, str] = {}
    edges: list[Edge] = []
    n = None
    for ln in lines:
        if ln.startswith("#"):
            parts = ln[1:].split()
            if len(parts) == 3 and parts[0] == "label":
                labels[int(parts[1])] = parts[2]
            continue
        if n is None:
            n = int(ln)
            continue
        i, j = ln.split()
        edges.append((int(i), int(j)))
    if n is None:
        raise ParameterError("edge-list text missing vertex count line")
    return Graph(n, tuple(edges), labels=labels)
