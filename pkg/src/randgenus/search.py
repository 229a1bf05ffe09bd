"""Minimum orientable genus: bounds and exact rotation-system search.

The exact search assigns rotations one vertex at a time and, inside a vertex,
one successor at a time. Each assignment ``sigma[x] = y`` fixes one face
link ``phi(twin(x)) = y``. The partially defined ``phi`` is kept as a set
of open chains plus a count of closed faces, updated in O(1) per link and
undone on backtrack, so a candidate never needs a full re-trace.

Every face of a connected non-tree graph has at least ``girth`` darts. So
the faces still to be formed number at most
``long_chains + min(short_chains, short_darts // girth)``, where a chain is
long when it already has ``girth`` darts. Branches whose optimistic face
count falls below the target are cut.

Targets are tried from the Euler lower bound upwards; the first genus with a
surviving leaf is the minimum, and its leaf is the witness.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .embedding import (
    DisconnectedGraph,
    Embedding,
    RotationSystem,
    canonical_rotation,
    trace_faces,
)
from .graph import girth, is_connected

DEFAULT_GENUS_BUDGET = 5 * 10**7
PARTITION_TARGET = 64


class BudgetExceeded(Exception):
    pass


@dataclass
class GenusResult:
    mode: str
    genus_lower: int
    genus_upper: int
    num_vertices: int
    witness: RotationSystem = None
    embedding: Embedding = None
    rotations_examined: int = 0
    steps: int = 0
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def alpha(self):
        return self.genus_upper / self.num_vertices

    @property
    def exact(self):
        return self.mode == "exact"


def theoretical_alpha(d):
    """Asymptotic genus per vertex of a random d-regular graph, (d - 2) / 4."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return (d - 2) / 4


def euler_lower_bound(g):
    """max(0, ceil((E (1 - 2/girth) - V + 2) / 2)); 0 for forests."""
    gi = girth(g)
    if gi == math.inf:
        return 0
    E, V = g.num_edges, g.num_vertices
    value = (E * (1 - Fraction(2, gi)) - V + 2) / 2
    return max(0, math.ceil(value))


def max_genus_upper_bound(g):
    """Half the cycle rank, floor((E - V + 1) / 2)."""
    return (g.num_edges - g.num_vertices + 1) // 2


def faces_for_genus(g, genus):
    return g.num_edges - g.num_vertices + 2 - 2 * genus


class _Plan:
    """Static description of the search: vertex order and forced rotations."""

    def __init__(self, g):
        self.num_darts = g.num_darts
        gi = girth(g)
        self.girth = 1 if gi == math.inf else gi
        degree = g.degree
        free = [v for v in range(g.num_vertices) if degree[v] >= 3]
        self.forced = [g.darts_at[v] for v in range(g.num_vertices)
                       if 0 < degree[v] < 3]
        if not free:
            self.order = []
            self.free_darts = []
            return
        anchor = max(free, key=lambda v: (degree[v], -v))
        dv = g.dart_vertex
        placed = [degree[v] < 3 for v in range(g.num_vertices)]
        links = [0] * g.num_vertices
        for v in range(g.num_vertices):
            if placed[v]:
                for x in g.darts_at[v]:
                    links[dv[x ^ 1]] += 1
        # Max-adjacency order: faces close as early as possible.
        order = [anchor]
        placed[anchor] = True
        for x in g.darts_at[anchor]:
            links[dv[x ^ 1]] += 1
        remaining = set(free) - {anchor}
        while remaining:
            v = max(remaining, key=lambda u: (links[u], degree[u], -u))
            remaining.discard(v)
            order.append(v)
            placed[v] = True
            for x in g.darts_at[v]:
                links[dv[x ^ 1]] += 1
        self.order = order
        self.free_darts = [g.darts_at[v] for v in order]

    def split_depth(self):
        """Number of leading free vertices used to partition the search."""
        count = 1
        for i, darts in enumerate(self.free_darts):
            if count >= PARTITION_TARGET:
                return i
            classes = math.factorial(len(darts) - 1)
            count *= classes // 2 if i == 0 else classes
        return max(len(self.free_darts) - 1, 0)


class _Searcher:
    """Depth-first search for a rotation with at least ``target`` faces."""

    def __init__(self, plan, target, budget):
        self.plan = plan
        self.target = target
        self.budget = budget
        self.steps = 0
        self.rotations = 0

    def run(self, depth_stop=None, prefix=None):
        """Search below ``prefix`` (a list of per-vertex cyclic orders).

        With ``depth_stop`` set, returns every surviving prefix of that many
        vertices instead of searching to the leaves. Otherwise returns the
        witness ``sigma`` list or ``None``.
        """
        plan = self.plan
        nd = plan.num_darts
        gi = plan.girth
        target = self.target
        budget = self.budget
        free_darts = plan.free_darts
        nfree = len(free_darts)

        sigma = [-1] * nd
        end_of = list(range(nd))  # chain start -> chain end
        start_of = list(range(nd))  # chain end -> chain start
        length = [1] * nd  # valid at chain starts
        # stats = [closed, long chains, short chains, darts in short chains]
        if gi <= 1:
            stats = [0, nd, 0, 0]
        else:
            stats = [0, 0, nd, nd]
        undo = []
        steps = 0

        def link(x, y):
            # phi[x] = y; returns the optimistic face count afterwards.
            nonlocal steps
            steps += 1
            if steps > budget:
                raise BudgetExceeded
            e = end_of[y]
            L2 = length[y]
            if e == x:
                stats[0] += 1
                if L2 >= gi:
                    stats[1] -= 1
                else:
                    stats[2] -= 1
                    stats[3] -= L2
                undo.append((0, L2, 0, 0, 0))
            else:
                s = start_of[x]
                L1 = length[s]
                for L in (L1, L2):
                    if L >= gi:
                        stats[1] -= 1
                    else:
                        stats[2] -= 1
                        stats[3] -= L
                L = L1 + L2
                if L >= gi:
                    stats[1] += 1
                else:
                    stats[2] += 1
                    stats[3] += L
                end_of[s] = e
                start_of[e] = s
                length[s] = L
                undo.append((1, s, e, x, y))
            short = stats[3] // gi
            if stats[2] < short:
                short = stats[2]
            return stats[0] + stats[1] + short

        def unlink():
            kind, a, e, x, y = undo.pop()
            if kind == 0:
                stats[0] -= 1
                if a >= gi:
                    stats[1] += 1
                else:
                    stats[2] += 1
                    stats[3] += a
                return
            s = a
            L = length[s]
            L2 = length[y]
            L1 = L - L2
            if L >= gi:
                stats[1] -= 1
            else:
                stats[2] -= 1
                stats[3] -= L
            for Lp in (L1, L2):
                if Lp >= gi:
                    stats[1] += 1
                else:
                    stats[2] += 1
                    stats[3] += Lp
            end_of[s] = x
            start_of[e] = y
            length[s] = L1

        def assign_cycle(order):
            ub = 0
            k = len(order)
            for i in range(k):
                x = order[i]
                y = order[(i + 1) % k]
                sigma[x] = y
                ub = link(x ^ 1, y)
            return ub

        ub = min(nd, nd // gi)
        for darts in plan.forced:
            ub = assign_cycle(darts)
        for order in prefix or ():
            ub = assign_cycle(order)
        # Replayed prefix links are not charged to this search.
        start_depth = len(prefix or ())
        if prefix is not None:
            steps = 0
        if ub < target:
            self.steps += steps
            return [] if depth_stop is not None else None

        collected = []
        current = [list(o) for o in (prefix or ())]

        def place(vi):
            if vi == depth_stop:
                collected.append([list(o) for o in current])
                return False
            if vi == nfree:
                return True
            darts = free_darts[vi]
            a0 = darts[0]
            order = [a0]
            current.append(order)
            found = extend(vi, a0, list(darts[1:]), a0, order)
            current.pop()
            return found

        def extend(vi, cur, rest, a0, order):
            if not rest:
                if vi == 0 and len(order) > 2 and order[1] > order[-1]:
                    return False
                sigma[cur] = a0
                ok = link(cur ^ 1, a0) >= target
                if ok:
                    self.rotations += 1
                    if place(vi + 1):
                        return True
                unlink()
                sigma[cur] = -1
                return False
            for idx in range(len(rest)):
                nxt = rest[idx]
                sigma[cur] = nxt
                if link(cur ^ 1, nxt) >= target:
                    order.append(nxt)
                    if extend(vi, nxt, rest[:idx] + rest[idx + 1:], a0, order):
                        return True
                    order.pop()
                unlink()
            sigma[cur] = -1
            return False

        try:
            found = place(start_depth)
        finally:
            self.steps += steps
        if depth_stop is not None:
            return collected
        return list(sigma) if found else None


def _search_partition(args):
    plan, target, budget, prefix = args
    searcher = _Searcher(plan, target, budget)
    try:
        witness = searcher.run(prefix=prefix)
    except BudgetExceeded:
        return ("exceeded", None, searcher.steps, searcher.rotations)
    return ("done", witness, searcher.steps, searcher.rotations)


def _search_target(plan, target, budget, workers):
    """Search one target face count. Returns ``(witness, steps, rotations)``.

    The result, including step counts and the budget cut-off point, does not
    depend on ``workers``: partitions are reconciled in order as if they had
    run one after another.
    """
    depth = plan.split_depth()
    head = _Searcher(plan, target, budget)
    try:
        prefixes = head.run(depth_stop=depth)
    except BudgetExceeded:
        raise BudgetExceeded(head.steps, head.rotations) from None
    steps, rotations = head.steps, head.rotations
    if not prefixes:
        return None, steps, rotations

    def run_local(prefix, remaining):
        return _search_partition((plan, target, remaining, prefix))

    if workers <= 1:
        for prefix in prefixes:
            status, witness, s, r = run_local(prefix, budget - steps)
            steps += s
            rotations += r
            if status == "exceeded":
                raise BudgetExceeded(steps, rotations)
            if witness is not None:
                return witness, steps, rotations
        return None, steps, rotations

    with ProcessPoolExecutor(max_workers=workers) as pool:
        for start in range(0, len(prefixes), workers):
            chunk = prefixes[start:start + workers]
            cap = budget - steps
            results = list(pool.map(_search_partition,
                                    [(plan, target, cap, p) for p in chunk]))
            for prefix, (status, witness, s, r) in zip(chunk, results):
                remaining = budget - steps
                if status == "exceeded" or s > remaining:
                    status, witness, s, r = run_local(prefix, remaining)
                steps += s
                rotations += r
                if status == "exceeded":
                    raise BudgetExceeded(steps, rotations)
                if witness is not None:
                    return witness, steps, rotations
    return None, steps, rotations


def exact_genus(g, budget=DEFAULT_GENUS_BUDGET, workers=1, fallback=None):
    """Minimum genus over all rotation systems of the connected graph ``g``.

    ``budget`` caps the number of face-link steps. When it runs out the
    result has ``mode="heuristic"``: ``genus_lower`` is one more than the
    largest genus refuted exhaustively, and ``genus_upper`` comes from the
    canonical rotation or, when ``fallback`` is an :class:`AnnealConfig`
    (the default), from annealing.
    """
    started = time.perf_counter()
    if not is_connected(g):
        raise DisconnectedGraph("genus search needs a connected graph")
    canonical = canonical_rotation(g)
    best = trace_faces(g, canonical, check=False)
    lower = euler_lower_bound(g)
    plan = _Plan(g)
    steps = rotations = 0
    if best.genus <= lower or not plan.free_darts:
        return GenusResult("exact", best.genus, best.genus, g.num_vertices,
                           canonical, best, 1, 0, time.perf_counter() - started)
    genus = lower
    try:
        while genus < best.genus:
            target = faces_for_genus(g, genus)
            sigma, s, r = _search_target(plan, target, budget - steps, workers)
            steps += s
            rotations += r
            if sigma is not None:
                rot = RotationSystem(tuple(sigma))
                emb = trace_faces(g, rot, check=False)
                return GenusResult("exact", emb.genus, emb.genus, g.num_vertices,
                                   rot, emb, rotations, steps,
                                   time.perf_counter() - started)
            genus += 1
    except BudgetExceeded as exc:
        if exc.args:
            steps += exc.args[0]
            rotations += exc.args[1]
        witness, emb = canonical, best
        if fallback is not False:
            from .anneal import AnnealConfig, heuristic_genus
            res = heuristic_genus(g, fallback or AnnealConfig())
            if res.genus_upper < emb.genus:
                witness, emb = res.witness, res.embedding
        return GenusResult("heuristic", max(genus, lower), emb.genus, g.num_vertices,
                           witness, emb, rotations, steps,
                           time.perf_counter() - started, {"budget_exceeded": True})
    return GenusResult("exact", best.genus, best.genus, g.num_vertices,
                       canonical, best, rotations, steps,
                       time.perf_counter() - started)


def genus_bounds(g):
    """Bounds-only result: Euler lower bound and the cycle-rank upper bound."""
    started = time.perf_counter()
    if not is_connected(g):
        raise DisconnectedGraph("genus bounds need a connected graph")
    return GenusResult("bounds-only", euler_lower_bound(g), max_genus_upper_bound(g),
                       g.num_vertices, elapsed=time.perf_counter() - started)
