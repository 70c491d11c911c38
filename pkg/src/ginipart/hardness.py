"""Vertex cover on triangle-free graphs as Gini/k-means instances.

Every edge ``{u, v}`` of a graph on ``N`` vertices becomes the 0/1 vector of
length ``N`` with ones at ``u`` and ``v``.  All such vectors have l1 norm 2,
so the Gini and k-means objectives on them differ by a positive factor and a
constant.  If the graph has a vertex cover of size ``k``, grouping each edge
with a cover vertex it touches costs ``|E| - k`` in squared error.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .impurity import ContractViolation, DomainError, GiniInstance
from .partitions import branch_and_bound_min
from .solvers.brute import MAX_BRUTE_N, solve_brute_force

MAX_COVER_VERTICES = 20


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.num_vertices < 1:
            raise DomainError("a graph needs at least one vertex")
        seen = set()
        norm = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise DomainError(f"edge ({u}, {v}) leaves the vertex range [0, {self.num_vertices})")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise DomainError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.num_vertices)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def find_triangle(g: Graph) -> tuple[int, int, int] | None:
    """Lexicographically first triangle ``(a, b, c)`` with ``a < b < c``, or None."""
    adj = g.adjacency()
    for a, b in sorted(g.edges):
        common = sorted(c for c in adj[a] & adj[b] if c > b)
        if common:
            return a, b, common[0]
    return None


def is_triangle_free(g: Graph) -> bool:
    return find_triangle(g) is None


@dataclass
class HardnessInstance:
    graph: Graph
    vectors: GiniInstance
    k: int


def edge_vectors(g: Graph) -> np.ndarray:
    x = np.zeros((g.num_edges, g.num_vertices), dtype=np.int64)
    for i, (u, v) in enumerate(g.edges):
        x[i, u] = x[i, v] = 1
    return x


def build_hardness_instance(g: Graph, k: int) -> HardnessInstance:
    tri = find_triangle(g)
    if tri is not None:
        raise DomainError(f"graph has triangle {tri}; the reduction needs a triangle-free graph")
    if g.num_edges == 0:
        raise DomainError("graph has no edges")
    return HardnessInstance(g, GiniInstance(edge_vectors(g), k), k)


def min_vertex_cover(g: Graph, max_vertices: int = MAX_COVER_VERTICES) -> tuple[int, list[int]]:
    """Exact minimum vertex cover by branch and bound.

    Branches on the first uncovered edge ``(u, v)``: either ``u`` joins the
    cover, or ``u`` stays out and all of its neighbours join.  Branches that
    cannot beat the incumbent are cut.
    """
    if g.num_vertices > max_vertices:
        raise ContractViolation(f"exact vertex cover refuses {g.num_vertices} > {max_vertices} vertices")
    adj = g.adjacency()
    best = [set(range(g.num_vertices)) if g.edges else set()]

    # lower bound: a greedy matching needs one cover vertex per edge
    def matching_bound(cover: set[int]) -> int:
        used: set[int] = set()
        m = 0
        for u, v in g.edges:
            if u in cover or v in cover or u in used or v in used:
                continue
            used.update((u, v))
            m += 1
        return m

    def rec(cover: set[int]):
        if len(cover) + matching_bound(cover) >= len(best[0]):
            return
        edge = next(((u, v) for u, v in g.edges if u not in cover and v not in cover), None)
        if edge is None:
            best[0] = set(cover)
            return
        u, _ = edge
        rec(cover | {u})
        rec(cover | adj[u])

    if g.edges:
        rec(set())
    cover = sorted(best[0])
    return len(cover), cover


def covers_all_edges(g: Graph, cover) -> bool:
    c = set(cover)
    return all(u in c or v in c for u, v in g.edges)


def _sse_block(stat_sum: np.ndarray, count: int) -> float:
    # stat = (coords..., |x|^2)
    if count == 0:
        return 0.0
    lin = stat_sum[:-1]
    return float(stat_sum[-1] - lin.dot(lin) / count)


def exact_kmeans_optimum(vectors: np.ndarray, k: int) -> tuple[tuple[int, ...], float]:
    """Unweighted k-means optimum over partitions into at most ``k`` groups (centroid centers)."""
    x = np.asarray(vectors, dtype=np.float64)
    if len(x) > MAX_BRUTE_N:
        raise ContractViolation(f"exact k-means refuses {len(x)} > {MAX_BRUTE_N} points")
    rgs, cost, _ = branch_and_bound_min(x, k, _sse_block, lambda row: np.append(row, row.dot(row)))
    return rgs, cost


@dataclass
class CoverBoundReport:
    num_vertices: int
    num_edges: int
    k: int
    cover: list[int]
    kmeans_opt: float
    kmeans_assignment: tuple[int, ...]
    gini_opt: float
    bound: int
    bound_ok: bool
    consistency_residual: float

    @property
    def ok(self) -> bool:
        return self.bound_ok and self.consistency_residual <= 1e-9

    def to_dict(self) -> dict:
        return {
            "num_vertices": self.num_vertices,
            "num_edges": self.num_edges,
            "k": self.k,
            "cover": self.cover,
            "kmeans_opt": self.kmeans_opt,
            "kmeans_assignment": list(self.kmeans_assignment),
            "gini_opt": self.gini_opt,
            "bound": self.bound,
            "bound_ok": self.bound_ok,
            "consistency_residual": self.consistency_residual,
            "ok": self.ok,
        }


def check_cover_bound(g: Graph, tol: float = 1e-9) -> CoverBoundReport:
    """Check that the k-means optimum is at most ``|E| - k`` with ``k`` the minimum cover size.

    The k-means optimum is taken on the raw 0/1 edge vectors; the Gini
    optimum is found separately and must satisfy
    ``Gini_opt - |E| = Cost_KM_opt / 2`` (norm 2, and every edge vector has
    weighted Gini 1).
    """
    k, cover = min_vertex_cover(g)
    hi = build_hardness_instance(g, k)
    x = hi.vectors.vectors
    assignment, km_opt = exact_kmeans_optimum(x, k)
    gini_opt = solve_brute_force(hi.vectors).objective1
    bound = g.num_edges - k
    return CoverBoundReport(
        num_vertices=g.num_vertices,
        num_edges=g.num_edges,
        k=k,
        cover=cover,
        kmeans_opt=km_opt,
        kmeans_assignment=assignment,
        gini_opt=gini_opt,
        bound=bound,
        bound_ok=km_opt <= bound + tol,
        consistency_residual=abs((gini_opt - g.num_edges) - km_opt / 2.0),
    )


def generate_triangle_free(seed: int, num_vertices: int, edge_probability: float) -> Graph:
    """Erdos-Renyi graph with triangles broken up.

    Triangles are visited in lexicographic order and each one still intact
    loses its largest edge, so the output depends only on the arguments.
    """
    if not 0.0 <= edge_probability <= 1.0:
        raise ContractViolation(f"edge_probability must lie in [0, 1], got {edge_probability}")
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(num_vertices), 2))
    keep = rng.random(len(pairs)) < edge_probability
    edges = {p for p, kept in zip(pairs, keep) if kept}
    for a, b, c in combinations(range(num_vertices), 3):
        if (a, b) in edges and (a, c) in edges and (b, c) in edges:
            edges.discard((b, c))
    g = Graph(num_vertices, tuple(sorted(edges)))
    assert is_triangle_free(g)
    return g


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def small_connected_triangle_free(max_vertices: int = 6) -> list[Graph]:
    """All connected triangle-free graphs with 2..max_vertices vertices, up to isomorphism (max 7)."""
    import networkx as nx

    if max_vertices > 7:
        raise ContractViolation("the graph atlas stops at 7 vertices")
    out = []
    for h in nx.graph_atlas_g():
        nv = h.number_of_nodes()
        if nv < 2 or nv > max_vertices or not nx.is_connected(h):
            continue
        g = Graph(nv, tuple(h.edges()))
        if is_triangle_free(g):
            out.append(g)
    return out


def write_edge_list(g: Graph, fh=None) -> str:
    """``p <V> <E>`` header followed by one ``e u v`` line per edge, vertices 1-indexed."""
    lines = [f"p {g.num_vertices} {g.num_edges}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges]
    text = "\n".join(lines) + "\n"
    if fh is not None:
        fh.write(text)
    return text


def read_edge_list(source) -> Graph:
    """Parse the edge-list format; accepts a path, a file object or the text itself.

    Blank lines and lines starting with ``c`` are ignored.
    """
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).exists()):
        text = Path(source).read_text()
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
    header = None
    edges = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if header is not None:
                    raise DomainError(f"line {lineno}: second 'p' header")
                if len(parts) != 3:
                    raise DomainError(f"line {lineno}: expected 'p <num_vertices> <num_edges>'")
                header = (int(parts[1]), int(parts[2]))
            elif parts[0] == "e":
                if header is None:
                    raise DomainError(f"line {lineno}: edge before 'p' header")
                if len(parts) != 3:
                    raise DomainError(f"line {lineno}: expected 'e <u> <v>'")
                u, v = int(parts[1]), int(parts[2])
                if not (1 <= u <= header[0] and 1 <= v <= header[0]):
                    raise DomainError(f"line {lineno}: vertex out of range 1..{header[0]}")
                edges.append((u - 1, v - 1))
            else:
                raise DomainError(f"line {lineno}: unknown record type {parts[0]!r}")
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"line {lineno}: {exc}") from None
    if header is None:
        raise DomainError("missing 'p' header")
    if len(edges) != header[1]:
        raise DomainError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(header[0], tuple(edges))
