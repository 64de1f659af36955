"""Finite simple graphs: representation, generators, metrics, serialization.

Vertices are always the dense range 0..n-1.  Adjacency is kept twice: as a
sorted edge tuple (for I/O and hashing) and as per-vertex bitmask rows (for
clique enumeration).  Graphs are immutable; every operation returns a new one.

Seeded randomness uses ``random.Random`` (MT19937), so corpora are bit
reproducible for a fixed seed.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass

from .errors import GraphFormatError


class Graph:
    """Immutable finite simple graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "masks")

    def __init__(self, n: int, edges, _skip_checks: bool = False):
        edges = tuple(sorted({(min(u, v), max(u, v)) for u, v in edges}))
        if not _skip_checks:
            if n < 0:
                raise GraphFormatError("vertex count must be nonnegative")
            for u, v in edges:
                if u == v:
                    raise GraphFormatError(f"self-loop rejected: ({u}, {v})")
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphFormatError(f"endpoint out of range 0..{n - 1}: ({u}, {v})")
        masks = [0] * n
        for u, v in edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "masks", tuple(masks))

    def __setattr__(self, *args):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    def neighbors(self, v: int):
        return _bits(self.masks[v])

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def key(self):
        """Hashable identity used for memo tables."""
        return (self.n, self.edges)


def _bits(mask: int):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class VertexFunction:
    """Scalar function on vertices; ``injective`` asserts pairwise distinct values."""

    values: tuple
    injective: bool = False

    def __post_init__(self):
        if self.injective and len(set(self.values)) != len(self.values):
            raise ValueError("function marked injective has repeated values")


def build_graph(n: int, edges) -> Graph:
    """Validate and build a graph from an edge list (deduplicated)."""
    return Graph(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)], _skip_checks=True)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphFormatError("cycle requires at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(spikes: int) -> Graph:
    """Hub vertex 0 with ``spikes`` leaves."""
    return Graph(spikes + 1, [(0, i) for i in range(1, spikes + 1)])


def wheel_graph(spikes: int) -> Graph:
    """Hub vertex 0 joined to a cycle of ``spikes`` rim vertices."""
    if spikes < 3:
        raise GraphFormatError("wheel needs at least 3 spikes")
    edges = [(0, i) for i in range(1, spikes + 1)]
    edges += [(1 + i, 1 + (i + 1) % spikes) for i in range(spikes)]
    return Graph(spikes + 1, edges)


def cross_polytope(d: int) -> Graph:
    """2d+2 vertices in antipodal pairs (2i, 2i+1); adjacency = everything but
    the antipode.  d=2 is the octahedron, d=3 the 16-cell."""
    n = 2 * d + 2
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if u // 2 != v // 2]
    return Graph(n, edges, _skip_checks=True)


def octahedron() -> Graph:
    return cross_polytope(2)


def icosahedron() -> Graph:
    """12 vertices, 30 edges: two apexes (0, 11) over a pentagonal antiprism."""
    edges = []
    for i in range(5):
        u, unext = 1 + i, 1 + (i + 1) % 5
        l, lnext = 6 + i, 6 + (i + 1) % 5
        edges += [(0, u), (11, l), (u, unext), (l, lnext), (u, l), (u, lnext)]
    return Graph(12, edges)


def random_er(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p); pair (u, v) scanned in lexicographic order."""
    if not 0.0 <= p <= 1.0:
        raise GraphFormatError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree via a Prufer sequence."""
    if n <= 1:
        return Graph(max(n, 0), [])
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    import heapq

    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return Graph(n, edges)


def random_contractible(n: int, seed: int) -> Graph:
    """Grow a contractible graph by repeated cone extensions.

    Each new vertex is attached to a randomly grown connected set that is
    verified contractible (falling back to a single vertex, which always is).
    """
    from .morse import is_contractible  # runtime import; morse depends on graphs

    rng = random.Random(seed)
    g = Graph(1, [])
    while g.n < n:
        base = None
        for _ in range(20):
            size = rng.randint(1, g.n)
            start = rng.randrange(g.n)
            grown = [start]
            chosen = {start}
            frontier = [w for w in g.neighbors(start) if w not in chosen]
            while len(grown) < size and frontier:
                w = rng.choice(frontier)
                grown.append(w)
                chosen.add(w)
                frontier = [
                    x for v in grown for x in g.neighbors(v) if x not in chosen
                ]
            sub, _ = induced_subgraph(g, grown)
            if is_contractible(sub).verdict == "yes":
                base = grown
                break
        if base is None:
            base = [rng.randrange(g.n)]
        new = g.n
        g = Graph(g.n + 1, list(g.edges) + [(v, new) for v in base])
    return g


_GENERATORS = {
    "complete": lambda n: complete_graph(int(n)),
    "cycle": lambda n: cycle_graph(int(n)),
    "path": lambda n: path_graph(int(n)),
    "star": lambda n: star_graph(int(n)),
    "wheel": lambda n: wheel_graph(int(n)),
    "cross_polytope": lambda d: cross_polytope(int(d)),
    "octahedron": octahedron,
    "icosahedron": icosahedron,
    "random_er": lambda n, p, seed: random_er(int(n), float(p), int(seed)),
    "random_contractible": lambda n, seed: random_contractible(int(n), int(seed)),
    "random_tree": lambda n, seed: random_tree(int(n), int(seed)),
}


def generate(kind: str, *params) -> Graph:
    """Dispatch to a named generator, e.g. generate("cycle", 5)."""
    try:
        gen = _GENERATORS[kind]
    except KeyError:
        raise GraphFormatError(f"unknown generator kind: {kind!r}") from None
    return gen(*params)


def induced_subgraph(g: Graph, vertices):
    """Induced subgraph on ``vertices``; returns (graph, map new id -> old id)."""
    vmap = sorted(set(vertices))
    for v in vmap:
        if not 0 <= v < g.n:
            raise GraphFormatError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(vmap)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u in index and v in index
    ]
    return Graph(len(vmap), edges, _skip_checks=True), tuple(vmap)


def unit_sphere(g: Graph, x: int):
    """Induced subgraph on the neighbors of x; returns (graph, relabeling map)."""
    if not 0 <= x < g.n:
        raise GraphFormatError(f"vertex {x} out of range")
    return induced_subgraph(g, g.neighbors(x))


def _bfs_dist(g: Graph, source: int):
    dist = [-1] * g.n
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        for w in g.neighbors(v):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def components(g: Graph):
    """List of vertex lists, one per connected component."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = []
        q = deque([s])
        seen[s] = True
        while q:
            v = q.popleft()
            comp.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    q.append(w)
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


@dataclass(frozen=True)
class GraphMetrics:
    components: int
    diameter: int | None
    diameter_largest_component_only: bool
    mean_distance: float | None
    clustering: float | None
    edge_density: float | None


def metrics(g: Graph) -> GraphMetrics:
    """BFS-exact distance statistics plus clustering and edge density.

    When the graph is disconnected, diameter and mean distance are taken over
    the largest component and flagged as such.
    """
    comps = components(g)
    ncomp = len(comps)
    if g.n == 0:
        return GraphMetrics(0, None, False, None, None, None)
    scope = max(comps, key=len) if ncomp > 1 else list(range(g.n))
    diameter = None
    total = 0
    pairs = 0
    if len(scope) >= 2:
        diameter = 0
        for v in scope:
            dist = _bfs_dist(g, v)
            for w in scope:
                if w > v:
                    total += dist[w]
                    pairs += 1
                    diameter = max(diameter, dist[w])
    mean_distance = (total / pairs) if pairs else None
    cl_terms = []
    for v in range(g.n):
        d = g.degree(v)
        if d < 2:
            continue
        nbrs = g.neighbors(v)
        inside = sum(
            1 for i in range(len(nbrs)) for j in range(i + 1, len(nbrs))
            if g.adjacent(nbrs[i], nbrs[j])
        )
        cl_terms.append(inside / (d * (d - 1) / 2))
    clustering = sum(cl_terms) / len(cl_terms) if cl_terms else None
    density = g.m / (g.n * (g.n - 1) / 2) if g.n >= 2 else None
    return GraphMetrics(ncomp, diameter, ncomp > 1, mean_distance, clustering, density)


# --- serialization ---------------------------------------------------------

def to_edge_list_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty edge-list text")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError("line 1: expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError("line 1: expected integers 'n m'") from None
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {i}: expected 'u v'")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"line {i}: expected integers 'u v'") from None
    return Graph(n, edges)


def to_json_obj(g: Graph):
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


def from_json_obj(obj) -> Graph:
    try:
        return Graph(int(obj["n"]), [(int(u), int(v)) for u, v in obj["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"bad graph JSON: {exc}") from None


def to_json_text(g: Graph) -> str:
    return json.dumps(to_json_obj(g), separators=(",", ":")) + "\n"


def from_json_text(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"bad JSON: {exc}") from None
    return from_json_obj(obj)
