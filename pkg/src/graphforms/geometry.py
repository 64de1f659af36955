"""Inductive dimension, Euler curvature and its variants, geometric predicates.

Curvature values are exact rationals throughout; the identities they enter
(Gauss-Bonnet, flatness) are exact integer/rational statements.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import NotApplicableError
from .graphs import Graph, metrics, unit_sphere
from .complexes import clique_counts
from .morse import crit, _bits_list


@dataclass(frozen=True)
class CurvatureVector:
    values: tuple          # per vertex, Fraction
    sphere_fvectors: tuple # per vertex, tuple V_0(x), V_1(x), ...

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


def curvature(g: Graph) -> CurvatureVector:
    """Euler curvature K(x) = sum_k (-1)^k V_{k-1}(x)/(k+1) from sphere cliques."""
    vals = []
    fvecs = []
    for x in range(g.n):
        sphere, _ = unit_sphere(g, x)
        counts = clique_counts(sphere) if sphere.n else ()
        k = Fraction(1)  # V_{-1} = 1 term
        for j, vj in enumerate(counts):
            k += Fraction((-1) ** (j + 1) * vj, j + 2)
        vals.append(k)
        fvecs.append(tuple(counts))
    return CurvatureVector(tuple(vals), tuple(fvecs))


def second_order_curvature(g: Graph, x: int) -> int:
    """2|S_1(x)| - |S_2(x)| from BFS spheres of radius one and two."""
    dist = {x: 0}
    q = deque([x])
    s1 = s2 = 0
    while q:
        v = q.popleft()
        if dist[v] >= 2:
            continue
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                if dist[w] == 1:
                    s1 += 1
                elif dist[w] == 2:
                    s2 += 1
                q.append(w)
    return 2 * s1 - s2


def induced_cycles(h: Graph, min_len: int = 4):
    """All induced cycles of length >= min_len, one orientation per cycle."""
    out = []
    masks = h.masks
    for start in range(h.n):
        higher_mask = ~((1 << (start + 1)) - 1)
        start_bit = 1 << start

        def dfs(path, path_mask):
            last = path[-1]
            cand = masks[last] & higher_mask & ~path_mask
            while cand:
                low = cand & -cand
                w = low.bit_length() - 1
                cand ^= low
                conn = masks[w] & path_mask
                if conn == 1 << last:
                    dfs(path + [w], path_mask | (1 << w))
                elif conn == (1 << last) | start_bit and len(path) + 1 >= min_len:
                    if path[1] < w:
                        out.append(tuple(path) + (w,))

        for second in h.neighbors(start):
            if second > start:
                dfs([start, second], start_bit | (1 << second))
    return out


@dataclass(frozen=True)
class SectionalReport:
    wheels: tuple   # (center, rim tuple in original ids, spikes, curvature)
    ricci: dict     # edge (u, v) sorted -> Fraction or None
    scalar: tuple   # per vertex, Fraction or None


def sectional_and_ricci(g: Graph) -> SectionalReport:
    """Embedded wheels (center + induced sphere cycle of length >= 4), their
    curvature 1 - d/6, edge Ricci averages, and vertex scalar averages."""
    wheels = []
    per_edge: dict = {e: [] for e in g.edges}
    for c in range(g.n):
        sphere, vmap = unit_sphere(g, c)
        for cyc in induced_cycles(sphere, min_len=4):
            rim = tuple(vmap[i] for i in cyc)
            k = Fraction(1) - Fraction(len(rim), 6)
            wheels.append((c, rim, len(rim), k))
            for r in rim:
                per_edge[(min(c, r), max(c, r))].append(k)
            for i in range(len(rim)):
                u, v = rim[i], rim[(i + 1) % len(rim)]
                per_edge[(min(u, v), max(u, v))].append(k)
    ricci = {
        e: (sum(ks, Fraction(0)) / len(ks) if ks else None)
        for e, ks in per_edge.items()
    }
    scalar = []
    for x in range(g.n):
        incident = [
            ricci[(min(x, w), max(x, w))]
            for w in g.neighbors(x)
            if ricci[(min(x, w), max(x, w))] is not None
        ]
        scalar.append(sum(incident, Fraction(0)) / len(incident) if incident else None)
    return SectionalReport(tuple(wheels), ricci, tuple(scalar))


@dataclass(frozen=True)
class DimensionValue:
    per_vertex: tuple   # Fraction, dim at each vertex (= 1 + dim of its sphere)
    graph: Fraction     # mean over vertices; -1 for the empty graph


def inductive_dimension(g: Graph) -> DimensionValue:
    """dim(G) = 1 + mean_v dim(S(v)), dim(empty) = -1, memoized over subsets."""
    memo: dict = {}
    masks = g.masks

    def dim_of(mask: int) -> Fraction:
        if mask == 0:
            return Fraction(-1)
        hit = memo.get(mask)
        if hit is not None:
            return hit
        vs = _bits_list(mask)
        total = sum((dim_of(masks[v] & mask) for v in vs), Fraction(0))
        val = 1 + total / len(vs)
        memo[mask] = val
        return val

    if g.n == 0:
        return DimensionValue((), Fraction(-1))
    full = (1 << g.n) - 1
    per_vertex = tuple(1 + dim_of(masks[v]) for v in range(g.n))
    return DimensionValue(per_vertex, dim_of(full))


# --- expected dimension of Erdos-Renyi graphs --------------------------------

def _poly_add(a, b):
    n = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _poly_scale(a, c):
    return tuple(x * c for x in a)


def poly_eval(a, p):
    acc = Fraction(0) if isinstance(p, Fraction) else 0.0
    for c in reversed(a):
        acc = acc * p + (Fraction(c) if isinstance(p, Fraction) else float(c))
    return acc


def expected_dimension_polynomial(n: int):
    """Coefficients of d_n(p), the mean dimension of G(n, p), d_0 = -1.

    d_{n+1}(p) = 1 + sum_k C(n,k) p^k (1-p)^(n-k) d_k(p), exact rationals.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    polys = [(Fraction(-1),)]  # d_0
    one_minus_p = (Fraction(1), Fraction(-1))
    p_poly = (Fraction(0), Fraction(1))
    for m in range(n):
        acc = (Fraction(1),)
        for k in range(m + 1):
            term = (Fraction(comb(m, k)),)
            pk = (Fraction(1),)
            for _ in range(k):
                pk = _poly_mul(pk, p_poly)
            q = (Fraction(1),)
            for _ in range(m - k):
                q = _poly_mul(q, one_minus_p)
            term = _poly_mul(term, _poly_mul(pk, q))
            acc = _poly_add(acc, _poly_mul(term, polys[k]))
        # trim trailing zeros
        while len(acc) > 1 and acc[-1] == 0:
            acc = acc[:-1]
        polys.append(acc)
    return polys[n]


# --- geometric graphs --------------------------------------------------------

def is_geometric(g: Graph, d: int, crit_limit: int = 12) -> str:
    """'yes' / 'no' / 'unknown': all unit spheres are (d-1)-dimensional
    geometric spheres (minimal critical point count 2)."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if g.n == 0:
        return "no"
    sawunknown = False
    for x in range(g.n):
        sphere, _ = unit_sphere(g, x)
        v = _is_sphere(sphere, d - 1, crit_limit)
        if v == "no":
            return "no"
        if v == "unknown":
            sawunknown = True
    return "unknown" if sawunknown else "yes"


def _is_sphere(h: Graph, dim: int, crit_limit: int) -> str:
    """Is h a dim-dimensional geometric sphere?"""
    if dim == 0:
        return "yes" if (h.n == 2 and h.m == 0) else "no"
    sub = is_geometric(h, dim, crit_limit)
    if sub == "no":
        return "no"
    if h.n > crit_limit:
        return "unknown"
    value, exact = crit(h, exact_limit=crit_limit)
    if exact:
        if value != 2:
            return "no"
        return "unknown" if sub == "unknown" else "yes"
    return "unknown"


def flatness_check(g: Graph, d: int) -> bool:
    """For odd-dimensional geometric graphs: is K identically zero?"""
    if d % 2 == 0:
        raise NotApplicableError("flatness applies to odd-dimensional geometric graphs")
    if is_geometric(g, d) != "yes":
        raise NotApplicableError(f"graph is not geometric of dimension {d}")
    return all(k == 0 for k in curvature(g).values)


def positive_curvature_report(g: Graph, max_dim_probe: int = 4):
    """Sectional positivity and the diameter bound for geometric graphs."""
    found = None
    for d in range(1, max_dim_probe + 1):
        if is_geometric(g, d) == "yes":
            found = d
            break
    if found is None:
        raise NotApplicableError("graph is not geometric of any probed dimension")
    report = sectional_and_ricci(g)
    curvatures = [w[3] for w in report.wheels]
    positive = bool(curvatures) and all(k > 0 for k in curvatures)
    met = metrics(g)
    return {
        "dimension": found,
        "all_sectional_positive": positive,
        "diameter": met.diameter,
        "diameter_le_3": met.diameter is not None and met.diameter <= 3,
        "wheel_count": len(curvatures),
    }
