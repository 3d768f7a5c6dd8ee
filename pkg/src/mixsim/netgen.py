"""Benchmark network topologies and their structural features.

Vertices are dense integer ids ``0..n-1``; edges are stored as sorted
``(a, b)`` pairs with ``a < b``.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from mixsim.errors import EdgeListError, InvalidParameter

MAX_VERTICES = 1_000_000
MAX_HYPERCUBE_DIM = 20


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameter(f"vertex count must be non-negative, got {self.n}")
        normalized = set()
        for a, b in self.edges:
            if a == b:
                raise InvalidParameter(f"self-loop on vertex {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise InvalidParameter(f"edge ({a}, {b}) references a vertex >= n={self.n}")
            normalized.add((a, b) if a < b else (b, a))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor tuple for every vertex."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def degrees(self) -> list[int]:
        return [len(x) for x in self.adjacency]

    def has_edge(self, a: int, b: int) -> bool:
        return ((a, b) if a < b else (b, a)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_edge_list(self) -> str:
        """Canonical edge-list text: a vertex-count header, then sorted edges."""
        lines = [f"# n {self.n}"]
        lines.extend(f"{a} {b}" for a, b in self.sorted_edges())
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GraphFeatures:
    vertex_count: int
    edge_count: int
    diameter: Optional[int]
    mean_distance: Optional[float]
    density: float
    mean_clustering: float

    def as_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "diameter": self.diameter,
            "mean_distance": self.mean_distance,
            "density": self.density,
            "mean_clustering": self.mean_clustering,
        }


def _check_size(n):
    if n > MAX_VERTICES:
        raise InvalidParameter(f"graph of {n} vertices exceeds cap {MAX_VERTICES}")


def make_star(n: int) -> Graph:
    """Star on ``n`` vertices with vertex 0 as the hub."""
    if n < 2:
        raise InvalidParameter(f"star needs n >= 2, got {n}")
    _check_size(n)
    return Graph(n, frozenset((0, i) for i in range(1, n)))


def make_tree(branching: int, depth: int) -> Graph:
    """Complete ``branching``-ary tree of the given depth, numbered breadth-first.

    The children of vertex ``v`` are ``v*branching + 1 .. v*branching + branching``.
    """
    if branching < 1:
        raise InvalidParameter(f"branching must be >= 1, got {branching}")
    if depth < 0:
        raise InvalidParameter(f"depth must be >= 0, got {depth}")
    n = 0
    level = 1
    for _ in range(depth + 1):
        n += level
        if n > MAX_VERTICES:
            raise InvalidParameter(f"tree({branching}, {depth}) exceeds {MAX_VERTICES} vertices")
        level *= branching
    edges = frozenset(((i - 1) // branching, i) for i in range(1, n))
    return Graph(n, edges)


def add_jumpers(base: Graph, count: int, rng) -> Graph:
    """Add ``count`` edges drawn uniformly without replacement from absent pairs."""
    if count < 0:
        raise InvalidParameter(f"jumper count must be >= 0, got {count}")
    available = base.n * (base.n - 1) // 2 - base.edge_count
    if count > available:
        raise InvalidParameter(f"cannot add {count} jumpers, only {available} vertex pairs are free")
    if count == 0:
        return base
    absent = [
        (a, b)
        for a in range(base.n)
        for b in range(a + 1, base.n)
        if (a, b) not in base.edges
    ]
    return Graph(base.n, base.edges | frozenset(rng.sample(absent, count)))


def make_ws(n: int, k: int, p: float, rng) -> Graph:
    """Watts-Strogatz small world: ring lattice with per-edge rewiring.

    Lattice edges ``(v, v+j)`` are visited for ``j = 1..k/2`` and each ``v``;
    with probability ``p`` the far endpoint is replaced by a uniformly drawn
    vertex that is neither ``v`` nor already adjacent to it. The edge count
    stays ``n*k/2``.
    """
    if k < 2 or k % 2:
        raise InvalidParameter(f"k must be an even integer >= 2, got {k}")
    if n <= k:
        raise InvalidParameter(f"need n > k, got n={n}, k={k}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"rewiring probability must lie in [0, 1], got {p}")
    _check_size(n)
    adj = [set() for _ in range(n)]
    for v in range(n):
        for j in range(1, k // 2 + 1):
            w = (v + j) % n
            adj[v].add(w)
            adj[w].add(v)
    for j in range(1, k // 2 + 1):
        for v in range(n):
            w = (v + j) % n
            if rng.random() >= p or w not in adj[v]:
                continue
            if len(adj[v]) >= n - 1:
                continue
            target = rng.randrange(n)
            while target == v or target in adj[v]:
                target = rng.randrange(n)
            adj[v].remove(w)
            adj[w].remove(v)
            adj[v].add(target)
            adj[target].add(v)
    return Graph(n, frozenset((a, b) for a in range(n) for b in adj[a] if a < b))


def make_ba(n: int, m: int, rng) -> Graph:
    """Barabasi-Albert graph grown from a path on ``m+1`` vertices.

    Each later vertex attaches to ``m`` distinct existing vertices chosen
    with probability proportional to degree.
    """
    if m < 1:
        raise InvalidParameter(f"m must be >= 1, got {m}")
    if n <= m:
        raise InvalidParameter(f"need n > m, got n={n}, m={m}")
    _check_size(n)
    edges = {(i, i + 1) for i in range(m)}
    # one entry per edge endpoint, so uniform draws are degree-proportional
    endpoints = [v for e in sorted(edges) for v in e]
    for v in range(m + 1, n):
        targets: list[int] = []
        while len(targets) < m:
            t = endpoints[rng.randrange(len(endpoints))]
            if t not in targets:
                targets.append(t)
        for t in targets:
            edges.add((t, v))
            endpoints.extend((t, v))
    return Graph(n, frozenset(edges))


def make_hypercube(dim: int) -> Graph:
    if dim < 0:
        raise InvalidParameter(f"dimension must be >= 0, got {dim}")
    if dim > MAX_HYPERCUBE_DIM:
        raise InvalidParameter(f"hypercube dimension {dim} exceeds cap {MAX_HYPERCUBE_DIM}")
    n = 1 << dim
    return Graph(n, frozenset((v, v ^ (1 << b)) for v in range(n) for b in range(dim) if not v >> b & 1))


def load_edge_list(text: str) -> Graph:
    """Parse edge-list text into a Graph.

    One edge per line as two whitespace-separated non-negative ids. Blank
    lines and ``#`` comments are skipped, except that a ``# n <count>``
    header (as written by :meth:`Graph.to_edge_list`) sets a minimum vertex
    count so isolated trailing vertices survive a round trip.
    """
    edges: set[tuple[int, int]] = set()
    n_hint = 0
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "n" and parts[1].isdigit():
                n_hint = max(n_hint, int(parts[1]))
            continue
        parts = line.split()
        if len(parts) != 2 or not all(x.isdigit() for x in parts):
            raise EdgeListError(f"expected two non-negative integer ids, got {raw!r}", lineno)
        a, b = int(parts[0]), int(parts[1])
        if a == b:
            raise EdgeListError(f"self-loop on vertex {a}", lineno)
        key = (a, b) if a < b else (b, a)
        if key in edges:
            raise EdgeListError(f"duplicate edge {key[0]} {key[1]}", lineno)
        edges.add(key)
        max_id = max(max_id, b if b > a else a)
    n = max(n_hint, max_id + 1)
    if n > MAX_VERTICES:
        raise EdgeListError(f"vertex count {n} exceeds cap {MAX_VERTICES}")
    return Graph(n, frozenset(edges))


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distance from ``source`` to every vertex; -1 marks unreachable."""
    dist = [-1] * g.n
    dist[source] = 0
    adj = g.adjacency
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv
                queue.append(w)
    return dist


def local_clustering(g: Graph) -> list[float]:
    adj = g.adjacency
    sets = [set(x) for x in adj]
    out = []
    for v in range(g.n):
        nb = adj[v]
        deg = len(nb)
        if deg < 2:
            out.append(0.0)
            continue
        links = sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b in sets[a])
        out.append(2.0 * links / (deg * (deg - 1)))
    return out


def graph_features(g: Graph) -> GraphFeatures:
    n = g.n
    density = g.edge_count / (n * (n - 1) / 2) if n > 1 else 0.0
    clustering = local_clustering(g)
    mean_clustering = sum(clustering) / n if n else 0.0

    diameter: Optional[int] = 0 if n else None
    total = 0
    connected = n > 0
    for s in range(n):
        dist = bfs_distances(g, s)
        if -1 in dist:
            connected = False
            break
        diameter = max(diameter, max(dist))
        total += sum(dist)
    pairs = n * (n - 1) // 2
    if not connected:
        diameter, mean_distance = None, None
    else:
        # every unordered pair was counted from both ends
        mean_distance = (total / 2) / pairs if pairs else 0.0
    return GraphFeatures(n, g.edge_count, diameter, mean_distance, density, mean_clustering)


def degree_histogram(g: Graph) -> dict[int, int]:
    """Map degree -> number of vertices with that degree, keys ascending."""
    return dict(sorted(Counter(g.degrees()).items()))


def is_connected(g: Graph) -> bool:
    return g.n > 0 and -1 not in bfs_distances(g, 0)
