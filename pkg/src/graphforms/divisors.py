"""Baker-Norine chip-firing divisor theory on the 1-skeleton.

Effectivity of a divisor class is decided by Dhar burning q-reduction; the
rank recursion r(D) = 1 + min_v r(D - v) is memoized on q-reduced
representatives, which are unique per equivalence class.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import GraphFormatError, SizeLimitError
from .exact import int_det
from .graphs import Graph, is_connected


@dataclass(frozen=True)
class Divisor:
    values: tuple

    @property
    def degree(self) -> int:
        return sum(self.values)

    def to_json(self) -> str:
        return json.dumps(list(self.values))

    @staticmethod
    def from_json(text: str) -> "Divisor":
        return Divisor(tuple(int(x) for x in json.loads(text)))


def canonical_divisor(g: Graph) -> Divisor:
    """K(x) = deg(x) - 2 on the 1-skeleton; deg K = 2|E| - 2|V|."""
    if not is_connected(g):
        raise GraphFormatError("canonical divisor needs a connected graph")
    return Divisor(tuple(g.degree(v) - 2 for v in range(g.n)))


def _fire_set(g: Graph, values, vertex_set):
    """Chip movement when every vertex of the set fires once."""
    out = list(values)
    inside = set(vertex_set)
    for v in inside:
        for w in g.neighbors(v):
            if w not in inside:
                out[v] -= 1
                out[w] += 1
    return out


def q_reduce(g: Graph, values, q: int = 0):
    """The unique q-reduced divisor equivalent to ``values``.

    Stage 1 clears debt away from q by unfiring distance shells; stage 2 runs
    Dhar burning from q, firing the unburnt set until everything burns.
    """
    if not is_connected(g):
        raise GraphFormatError("q-reduction needs a connected graph")
    vals = list(values)
    dist = [-1] * g.n
    dist[q] = 0
    bfs = deque([q])
    while bfs:
        v = bfs.popleft()
        for w in g.neighbors(v):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                bfs.append(w)
    max_dist = max(dist)
    # stage 1: for shells far to near, unfire the outer region until clean
    for level in range(max_dist, 0, -1):
        region = [v for v in range(g.n) if dist[v] >= level]
        outdeg = {
            v: sum(1 for w in g.neighbors(v) if dist[w] < level)
            for v in region
            if dist[v] == level
        }
        complement = [v for v in range(g.n) if dist[v] < level]
        while True:
            need = 0
            for v, od in outdeg.items():
                if vals[v] < 0:
                    need = max(need, (-vals[v] + od - 1) // od)
            if need == 0:
                break
            # unfiring the outer region equals firing its complement (L*1 = 0)
            for _ in range(need):
                vals = _fire_set(g, vals, complement)
    # stage 2: Dhar burning
    for _ in range(10000 * (g.n + 1)):
        burnt = [False] * g.n
        burnt[q] = True
        changed = True
        while changed:
            changed = False
            for v in range(g.n):
                if burnt[v]:
                    continue
                heat = sum(1 for w in g.neighbors(v) if burnt[w])
                if heat > vals[v]:
                    burnt[v] = True
                    changed = True
        unburnt = [v for v in range(g.n) if not burnt[v]]
        if not unburnt:
            return tuple(vals)
        vals = _fire_set(g, vals, unburnt)
    raise AssertionError("q-reduction failed to terminate")


def is_effective_class(g: Graph, values, q: int = 0) -> bool:
    """Is the divisor linearly equivalent to an effective one?"""
    reduced = q_reduce(g, values, q)
    return reduced[q] >= 0


def rank(g: Graph, divisor, limit: int = 10, _memo=None) -> int:
    """Baker-Norine rank via the q-reduction recursion.

    r(D) = -1 if |D| is empty, else 1 + min over vertices v of r(D - v).
    """
    values = tuple(divisor.values if isinstance(divisor, Divisor) else divisor)
    if g.n > limit:
        raise SizeLimitError(f"divisor rank limited to {limit} vertices")
    if not is_connected(g):
        raise GraphFormatError("rank needs a connected graph")
    memo = _memo if _memo is not None else {}

    def rec(vals) -> int:
        if sum(vals) < 0:
            return -1
        reduced = q_reduce(g, vals, 0)
        hit = memo.get(reduced)
        if hit is not None:
            return hit
        if reduced[0] < 0:
            memo[reduced] = -1
            return -1
        best = None
        for v in range(g.n):
            lowered = list(reduced)
            lowered[v] -= 1
            r = rec(tuple(lowered))
            if best is None or r < best:
                best = r
            if best == -1:
                break
        result = 1 + best
        memo[reduced] = result
        return result

    return rec(values)


def riemann_roch_check(g: Graph, divisor, limit: int = 10):
    """r(D) - r(K - D) = chi + deg(D) with chi = |V| - |E| (1-skeleton)."""
    d = divisor if isinstance(divisor, Divisor) else Divisor(tuple(divisor))
    k = canonical_divisor(g)
    kd = Divisor(tuple(kv - dv for kv, dv in zip(k.values, d.values)))
    memo: dict = {}
    r_d = rank(g, d, limit=limit, _memo=memo)
    r_kd = rank(g, kd, limit=limit, _memo=memo)
    chi = g.n - g.m
    return {
        "rank_d": r_d,
        "rank_k_minus_d": r_kd,
        "degree": d.degree,
        "chi": chi,
        "identity_holds": r_d - r_kd == chi + d.degree,
        "has_triangles": any(
            g.adjacent(u, w)
            for u, v in g.edges
            for w in g.neighbors(v)
            if w != u and g.adjacent(u, w)
        ),
    }


def jacobian_order(g: Graph) -> int:
    """Order of the Jacobian: |det| of the reduced Laplacian (row/col 0 removed)."""
    if not is_connected(g):
        raise GraphFormatError("Jacobian order needs a connected graph")
    if g.n == 1:
        return 1
    lap = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        lap[u, u] += 1
        lap[v, v] += 1
        lap[u, v] -= 1
        lap[v, u] -= 1
    minor = np.delete(np.delete(lap, 0, axis=0), 0, axis=1)
    return abs(int_det(minor.tolist()))


def principal_shift(g: Graph, values, firing):
    """values + L * firing: the divisor after integer chip-firing moves."""
    out = list(values)
    for v, times in enumerate(firing):
        if times == 0:
            continue
        for w in g.neighbors(v):
            out[v] -= times
            out[w] += times
    return tuple(out)
