"""Rotation systems and face tracing.

A rotation is stored as a flat successor array ``sigma`` over dart ids:
``sigma[x]`` is the dart after ``x`` in the cyclic order at ``x``'s vertex.
Faces are the orbits of ``phi(x) = sigma[twin(x)]``.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .graph import GraphFormatError, is_connected


class InvalidRotation(ValueError):
    pass


class DisconnectedGraph(ValueError):
    pass


@dataclass(frozen=True)
class RotationSystem:
    next_at_vertex: tuple

    @classmethod
    def from_orders(cls, g, orders):
        """Build from per-vertex cyclic dart lists."""
        sigma = [-1] * g.num_darts
        for order in orders:
            for i, x in enumerate(order):
                sigma[x] = order[(i + 1) % len(order)]
        return cls(tuple(sigma))

    def orders(self, g):
        """Per-vertex cyclic orders, each starting from the smallest dart."""
        out = []
        for darts in g.darts_at:
            if not darts:
                out.append([])
                continue
            start = darts[0]
            cyc = [start]
            x = self.next_at_vertex[start]
            while x != start and len(cyc) <= len(darts):
                cyc.append(x)
                x = self.next_at_vertex[x]
            out.append(cyc)
        return out

    def reversed(self):
        sigma = self.next_at_vertex
        inv = [0] * len(sigma)
        for x, y in enumerate(sigma):
            inv[y] = x
        return RotationSystem(tuple(inv))


@dataclass(frozen=True)
class Embedding:
    face_lengths: tuple
    num_vertices: int
    num_edges: int
    is_simple: bool = True

    @property
    def F(self):
        return len(self.face_lengths)

    @property
    def euler_characteristic(self):
        return self.num_vertices - self.num_edges + self.F

    @property
    def genus(self):
        return (2 - self.euler_characteristic) // 2

    @property
    def alpha(self):
        return self.genus / self.num_vertices

    @property
    def alpha_exact(self):
        return Fraction(self.genus, self.num_vertices)

    def histogram(self):
        return dict(sorted(Counter(self.face_lengths).items()))


def validate_rotation(g, rot):
    """True iff ``rot`` is a permutation whose orbits are exactly the vertex dart sets."""
    sigma = rot.next_at_vertex
    if len(sigma) != g.num_darts:
        return False
    dv = g.dart_vertex
    if sorted(sigma) != list(range(g.num_darts)):
        return False
    for darts in g.darts_at:
        if not darts:
            continue
        start = darts[0]
        x = start
        steps = 0
        while True:
            y = sigma[x]
            if dv[y] != dv[start]:
                return False
            steps += 1
            x = y
            if x == start:
                break
        if steps != len(darts):
            return False
    return True


def canonical_rotation(g):
    """Darts at each vertex in ascending id order."""
    return RotationSystem.from_orders(g, g.darts_at)


def face_orbits(g, sigma):
    """Face boundary dart sequences of the rotation ``sigma`` (a sequence)."""
    nd = len(sigma)
    seen = bytearray(nd)
    faces = []
    for start in range(nd):
        if seen[start]:
            continue
        face = []
        x = start
        while not seen[x]:
            seen[x] = 1
            face.append(x)
            x = sigma[x ^ 1]
        faces.append(face)
    return faces


def count_faces(sigma):
    """Number of orbits of ``x -> sigma[x ^ 1]``; no validation."""
    nd = len(sigma)
    seen = bytearray(nd)
    faces = 0
    for start in range(nd):
        if seen[start]:
            continue
        faces += 1
        x = start
        while not seen[x]:
            seen[x] = 1
            x = sigma[x ^ 1]
    return faces


def trace_faces(g, rot, check=True):
    """Face census of the embedding described by ``rot``."""
    if check:
        if not is_connected(g):
            raise DisconnectedGraph("face tracing needs a connected graph")
        if not validate_rotation(g, rot):
            raise InvalidRotation("rotation does not match the graph's vertex dart sets")
    lengths = tuple(sorted(len(f) for f in face_orbits(g, rot.next_at_vertex)))
    return Embedding(lengths, g.num_vertices, g.num_edges, g.is_simple())


def genus_of(g, rot):
    return trace_faces(g, rot).genus


def faces_at_most(emb, m):
    return sum(1 for L in emb.face_lengths if L <= m)


def face_inequality_check(emb, census):
    """Check ``2E >= c(m) + m (F - c(m))`` with ``c(m)`` the faces of length ``<= m``.

    For simple graphs also checks ``c(m) <= 2 * census.total``: each short
    face contains a cycle of length ``<= m``, and a cycle lies on at most two
    faces.
    """
    m = census.max_len
    c = faces_at_most(emb, m)
    ok = 2 * emb.num_edges >= c + m * (emb.F - c)
    if emb.is_simple:
        ok = ok and c <= 2 * census.total
    return ok


def parse_rotation(g, text):
    """Parse ``v: d1 d2 ...`` lines into a validated :class:`RotationSystem`."""
    orders = [None] * g.num_vertices
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise GraphFormatError(f"line {lineno}: expected 'v: darts...'")
        try:
            v = int(head)
            darts = [int(t) for t in rest.split()]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token") from None
        if not 0 <= v < g.num_vertices or orders[v] is not None:
            raise GraphFormatError(f"line {lineno}: bad or repeated vertex {v}")
        if any(not 0 <= x < g.num_darts for x in darts):
            raise GraphFormatError(f"line {lineno}: dart id out of range")
        orders[v] = darts
    if any(o is None for o in orders):
        raise GraphFormatError("rotation file does not list every vertex")
    rot = RotationSystem.from_orders(g, orders)
    if not validate_rotation(g, rot):
        raise InvalidRotation("rotation does not match the graph's vertex dart sets")
    return rot


def format_rotation(g, rot):
    return "".join(
        f"{v}: {' '.join(map(str, order))}\n" for v, order in enumerate(rot.orders(g)))
