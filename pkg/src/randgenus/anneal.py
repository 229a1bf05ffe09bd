"""Simulated annealing over rotation systems.

A move transposes two cyclically adjacent darts ``a, b = a, sigma[a]`` at one
vertex: ``p a b q`` becomes ``p b a q``. Only ``phi`` at ``twin(p)``,
``twin(a)`` and ``twin(b)`` changes, so the face count is updated by
re-tracing just the faces through those three darts.
"""

import math
import time
from dataclasses import dataclass

from .embedding import DisconnectedGraph, RotationSystem, count_faces, trace_faces
from .graph import is_connected
from .rng import Xoshiro256


@dataclass(frozen=True)
class AnnealConfig:
    seed: int = 0
    moves_per_edge: int = 200
    temperature_steps: int = 40
    cooling: float = 0.85
    initial_acceptance: float = 0.5
    tuning_moves: int = 200
    stop_at_lower_bound: bool = True


def _faces_through(sigma, darts):
    """Count the distinct faces through ``darts``."""
    seen = set()
    faces = 0
    for start in darts:
        if start in seen:
            continue
        faces += 1
        x = start
        while x not in seen:
            seen.add(x)
            x = sigma[x ^ 1]
    return faces


class _MoveState:
    def __init__(self, sigma):
        self.sigma = sigma
        self.inv = [0] * len(sigma)
        for x, y in enumerate(sigma):
            self.inv[y] = x

    def transpose(self, a):
        """Swap ``a`` and its successor; return the change in face count."""
        sigma, inv = self.sigma, self.inv
        b = sigma[a]
        p = inv[a]
        q = sigma[b]
        touched = (p ^ 1, a ^ 1, b ^ 1)
        before = _faces_through(sigma, touched)
        sigma[p] = b
        sigma[b] = a
        sigma[a] = q
        inv[b] = p
        inv[a] = b
        inv[q] = a
        return _faces_through(sigma, touched) - before


def heuristic_genus(g, schedule=None):
    """Best genus found by annealing; ``genus_lower`` is the Euler bound."""
    from .search import GenusResult, euler_lower_bound

    schedule = schedule or AnnealConfig()
    started = time.perf_counter()
    if not is_connected(g):
        raise DisconnectedGraph("genus search needs a connected graph")
    lower = euler_lower_bound(g)
    movable = [x for v, darts in enumerate(g.darts_at) if len(darts) >= 3 for x in darts]
    rng = Xoshiro256(schedule.seed)

    orders = [list(darts) for darts in g.darts_at]
    for order in orders:
        rng.shuffle(order)
    sigma = list(RotationSystem.from_orders(g, orders).next_at_vertex)
    faces = count_faces(sigma)
    best_faces, best_sigma = faces, list(sigma)
    E, V = g.num_edges, g.num_vertices

    def genus_of_faces(f):
        return (2 - V + E - f) // 2

    moves = 0
    if movable and not (schedule.stop_at_lower_bound and genus_of_faces(faces) <= lower):
        state = _MoveState(sigma)
        count = len(movable)

        drops = []
        for _ in range(schedule.tuning_moves):
            a = movable[rng.below(count)]
            delta = state.transpose(a)
            if delta < 0:
                drops.append(-delta)
            # undo: the same transposition on the dart now in front
            state.transpose(state.inv[a])
        mean_drop = sum(drops) / len(drops) if drops else 2.0
        temperature = mean_drop / -math.log(schedule.initial_acceptance)

        per_step = schedule.moves_per_edge * E
        done = False
        for _ in range(schedule.temperature_steps):
            for _ in range(per_step):
                a = movable[rng.below(count)]
                delta = state.transpose(a)
                moves += 1
                if delta < 0 and rng.random() >= math.exp(delta / temperature):
                    state.transpose(state.inv[a])
                    continue
                faces += delta
                if faces > best_faces:
                    best_faces = faces
                    best_sigma = list(sigma)
                    if schedule.stop_at_lower_bound and genus_of_faces(faces) <= lower:
                        done = True
                        break
            if done:
                break
            temperature *= schedule.cooling

    witness = RotationSystem(tuple(best_sigma))
    emb = trace_faces(g, witness, check=False)
    return GenusResult("heuristic", lower, emb.genus, V, witness, emb, moves, moves,
                       time.perf_counter() - started)
