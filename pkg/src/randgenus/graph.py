"""Dart (half-edge) multigraphs.

Edge ``i`` owns darts ``2i`` and ``2i + 1``; the twin of dart ``x`` is
``x ^ 1``. Loops and parallel edges are kept as given.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, inf

DEFAULT_CYCLE_BUDGET = 10**8


class GraphFormatError(ValueError):
    """Raised when a graph or rotation file cannot be parsed."""


class WorkBudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its step budget."""


def twin(x):
    return x ^ 1


@dataclass(frozen=True)
class DartGraph:
    num_vertices: int
    dart_vertex: tuple
    degree: tuple = field(init=False, repr=False, compare=False)
    darts_at: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.num_vertices
        buckets = [[] for _ in range(n)]
        for x, v in enumerate(self.dart_vertex):
            if not 0 <= v < n:
                raise ValueError(f"dart {x} has vertex {v} outside [0, {n})")
            buckets[v].append(x)
        if len(self.dart_vertex) % 2:
            raise ValueError("odd number of darts")
        object.__setattr__(self, "darts_at", tuple(tuple(b) for b in buckets))
        object.__setattr__(self, "degree", tuple(len(b) for b in buckets))

    @property
    def num_darts(self):
        return len(self.dart_vertex)

    @property
    def num_edges(self):
        return len(self.dart_vertex) // 2

    def edges(self):
        dv = self.dart_vertex
        return [(dv[2 * i], dv[2 * i + 1]) for i in range(self.num_edges)]

    def regular_degree(self):
        """The common degree, or ``None`` if the graph is not regular."""
        degs = set(self.degree)
        return degs.pop() if len(degs) == 1 else None

    def is_simple(self):
        seen = set()
        for u, v in self.edges():
            if u == v:
                return False
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    def relabeled(self, vertex_perm=None, edge_perm=None, flip=None):
        """Isomorphic copy: vertex ``v`` becomes ``vertex_perm[v]``, edge ``i``
        moves to position ``edge_perm[i]``, and edges with ``flip[i]`` true have
        their two darts swapped."""
        edges = self.edges()
        if vertex_perm is not None:
            edges = [(vertex_perm[u], vertex_perm[v]) for u, v in edges]
        if flip is not None:
            edges = [(v, u) if flip[i] else (u, v) for i, (u, v) in enumerate(edges)]
        if edge_perm is not None:
            moved = [None] * len(edges)
            for i, e in enumerate(edges):
                moved[edge_perm[i]] = e
            edges = moved
        return build_graph(self.num_vertices, edges)


def build_graph(n, edge_list):
    """Build a :class:`DartGraph` on ``n`` vertices; edge ``i`` gives darts
    ``2i`` (at its first endpoint) and ``2i + 1`` (at its second)."""
    if n < 1:
        raise ValueError("graph needs at least one vertex")
    edge_list = list(edge_list)
    if not edge_list:
        raise ValueError("edge list is empty")
    darts = []
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        darts.append(u)
        darts.append(v)
    return DartGraph(n, tuple(darts))


def is_connected(g):
    n = g.num_vertices
    dv = g.dart_vertex
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for x in g.darts_at[v]:
            w = dv[x ^ 1]
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def neighbor_lists(g):
    """Per-vertex list of ``(neighbor, edge)`` pairs, loops excluded."""
    dv = g.dart_vertex
    nbrs = [[] for _ in range(g.num_vertices)]
    for i in range(g.num_edges):
        u, v = dv[2 * i], dv[2 * i + 1]
        if u != v:
            nbrs[u].append((v, i))
            nbrs[v].append((u, i))
    return nbrs


def girth(g):
    """Length of a shortest cycle (loops 1, parallel pairs 2); ``inf`` for forests."""
    edges = g.edges()
    if any(u == v for u, v in edges):
        return 1
    pairs = Counter((u, v) if u < v else (v, u) for u, v in edges)
    if any(c > 1 for c in pairs.values()):
        return 2
    nbrs = neighbor_lists(g)
    best = inf
    n = g.num_vertices
    for root in range(n):
        dist = [-1] * n
        parent_edge = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w, e in nbrs[v]:
                if e == parent_edge[v]:
                    continue
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent_edge[w] = e
                    queue.append(w)
                else:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


@dataclass
class CycleCensus:
    """Counts of unrooted, undirected cycles by length, up to ``max_len``."""

    max_len: int
    counts: dict
    total: int = field(init=False)

    def __post_init__(self):
        self.total = sum(self.counts.values())

    def up_to(self, m, min_len=1):
        return sum(c for t, c in self.counts.items() if min_len <= t <= m)


def estimate_cycle_work(g, m):
    """Upper bound on the DFS steps :func:`count_short_cycles` performs."""
    if m < 3:
        return g.num_darts
    dmax = max(g.degree)
    per_root = sum(dmax * max(dmax - 1, 1) ** (k - 1) for k in range(1, m))
    return g.num_vertices * per_root


def count_short_cycles(g, m, budget=DEFAULT_CYCLE_BUDGET):
    """Exact census of cycles of length ``<= m``.

    Cycles of length three or more are found by a DFS from each root that only
    visits larger vertices and keeps a cycle when its second vertex is smaller
    than its last, so each edge set is counted once. Loops and parallel pairs
    are counted combinatorially.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if budget is not None and estimate_cycle_work(g, m) > budget:
        raise WorkBudgetExceeded(
            f"estimated cycle enumeration work exceeds budget {budget}")
    counts = Counter()
    edges = g.edges()
    loops = sum(1 for u, v in edges if u == v)
    if loops:
        counts[1] = loops
    if m >= 2:
        pairs = Counter((u, v) if u < v else (v, u) for u, v in edges if u != v)
        twos = sum(comb(c, 2) for c in pairs.values())
        if twos:
            counts[2] = twos
    if m >= 3:
        nbrs = neighbor_lists(g)
        on_path = [False] * g.num_vertices
        steps = 0
        for root in range(g.num_vertices):
            on_path[root] = True
            for first, e0 in nbrs[root]:
                if first < root:
                    continue
                on_path[first] = True
                path_len = 1
                frames = [(first, e0, iter(nbrs[first]))]
                while frames:
                    v, e_in, it = frames[-1]
                    for w, e in it:
                        if e == e_in:
                            continue
                        steps += 1
                        if w == root:
                            if path_len >= 2 and first < v:
                                counts[path_len + 1] += 1
                        elif w > root and not on_path[w] and path_len + 1 < m:
                            on_path[w] = True
                            path_len += 1
                            frames.append((w, e, iter(nbrs[w])))
                            break
                    else:
                        frames.pop()
                        on_path[v] = False
                        path_len -= 1
                if budget is not None and steps > budget:
                    raise WorkBudgetExceeded(
                        f"cycle enumeration exceeded {budget} steps")
            on_path[root] = False
    return CycleCensus(m, {t: c for t, c in sorted(counts.items()) if t <= m and c})


def expected_short_cycles(d, m, n):
    """Finite-n expectation bound sum_{t=2}^{m} C(n,t) (t!/2t) (d/n)^t, exactly."""
    return sum(
        comb(n, t) * Fraction(factorial(t), 2 * t) * Fraction(d, n) ** t
        for t in range(2, m + 1)
    )


def short_cycle_bound(d, m, n=None):
    """Return ``(finite-n sum or None, n-free cap d^m / 2)`` as floats."""
    if d < 2 or m < 2:
        raise ValueError("need d >= 2 and m >= 2")
    cap = d**m / 2
    finite = None if n is None else float(expected_short_cycles(d, m, n))
    return finite, cap


def parse_graph(text):
    """Parse the ``n m`` / ``u v`` edge-list text format."""
    tokens = text.split()
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphFormatError(f"non-integer token in graph file: {exc}") from None
    if len(values) < 2:
        raise GraphFormatError("missing 'n m' header")
    n, m = values[0], values[1]
    body = values[2:]
    if n < 1 or m < 1:
        raise GraphFormatError("header needs n >= 1 and m >= 1")
    if len(body) != 2 * m:
        raise GraphFormatError(f"header promises {m} edges, found {len(body) / 2:g}")
    edges = [(body[2 * i], body[2 * i + 1]) for i in range(m)]
    try:
        return build_graph(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_graph(g):
    lines = [f"{g.num_vertices} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_graph(g))


def complete_graph(n):
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)
