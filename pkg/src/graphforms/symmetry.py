"""Automorphisms, induced cohomology maps, fixed points, Riemann-Hurwitz.

Automorphism enumeration is exhaustive backtracking with degree-profile
pruning (refused above 16 vertices).  Lefschetz numbers are computed two
ways: traces of the induced maps on harmonic form bases (floating point,
integer-rounded) against the exact signed count over fixed simplices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import NotApplicableError, SizeLimitError
from .graphs import Graph
from .complexes import SimplicialStructure
from .spectral import OperatorBundle


def automorphisms(g: Graph, max_n: int = 16):
    """All graph automorphisms as vertex permutation tuples."""
    if g.n > max_n:
        raise SizeLimitError(f"automorphism enumeration limited to {max_n} vertices")
    if g.n == 0:
        return [()]
    profile = [
        (g.degree(v), tuple(sorted(g.degree(w) for w in g.neighbors(v))))
        for v in range(g.n)
    ]
    order = sorted(range(g.n), key=lambda v: (profile[v], v))
    assign = [-1] * g.n
    used = [False] * g.n
    out = []

    def backtrack(i: int):
        if i == g.n:
            out.append(tuple(assign))
            return
        v = order[i]
        for t in range(g.n):
            if used[t] or profile[t] != profile[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if g.adjacent(v, u) != g.adjacent(t, assign[u]):
                    ok = False
                    break
            if ok:
                assign[v] = t
                used[t] = True
                backtrack(i + 1)
                used[t] = False
                assign[v] = -1

    backtrack(0)
    return sorted(out)


def _perm_sign(seq) -> int:
    """Parity of the permutation sorting seq (tiny sequences)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def simplex_action(s: SimplicialStructure, perm, k: int):
    """Induced signed permutation on k-simplices: (image indices, signs)."""
    idx = s.index[k]
    images = []
    signs = []
    for simplex in s.simplices[k]:
        mapped = tuple(perm[v] for v in simplex)
        images.append(idx[tuple(sorted(mapped))])
        signs.append(_perm_sign(mapped))
    return np.array(images, dtype=np.int64), np.array(signs, dtype=np.int64)


@dataclass(frozen=True)
class GraphAutomorphism:
    perm: tuple

    def induced(self, s: SimplicialStructure, k: int):
        return simplex_action(s, self.perm, k)

    def to_json(self) -> str:
        return json.dumps(list(self.perm))


def automorphisms_json(perms) -> str:
    """Serialize a list of vertex permutations as JSON arrays."""
    return json.dumps([list(p) for p in perms])


def fixed_simplices(s: SimplicialStructure, perm):
    """Setwise-fixed simplices with their degrees sign(T|x) (-1)^dim."""
    out = []
    for k in range(len(s.simplices)):
        for i, simplex in enumerate(s.simplices[k]):
            mapped = tuple(perm[v] for v in simplex)
            if tuple(sorted(mapped)) == simplex:
                out.append((simplex, _perm_sign(mapped) * (-1) ** k))
    return out


def lefschetz(b: OperatorBundle, perm):
    """Lefschetz number two ways: harmonic traces vs fixed-simplex degrees."""
    s = b.structure
    trace_side = 0.0
    for k in range(len(s.simplices)):
        basis = b.harmonic_basis(k)
        if basis.shape[1] == 0:
            continue
        images, signs = simplex_action(s, perm, k)
        acted = np.zeros_like(basis)
        acted[images] = signs[:, None] * basis
        trace_side += (-1) ** k * float(np.trace(basis.T @ acted))
    fixed = fixed_simplices(s, perm)
    degree_sum = sum(d for _, d in fixed)
    rounded = round(trace_side)
    residual = abs(trace_side - rounded)
    return {
        "lefschetz_number": int(rounded),
        "trace_value": trace_side,
        "rounding_residual": residual,
        "fixed": fixed,
        "fixed_degree_sum": degree_sum,
        "match": int(rounded) == degree_sum and residual < 1e-6,
    }


def brouwer_check(g: Graph, perm):
    """For contractible graphs: the automorphism fixes some simplex."""
    from .morse import is_contractible
    from .complexes import whitney_complex

    verdict = is_contractible(g)
    if verdict.verdict != "yes":
        raise NotApplicableError("Brouwer check needs a contractible graph")
    fixed = fixed_simplices(whitney_complex(g), perm)
    return {"fixed": fixed, "has_fixed_simplex": bool(fixed)}


# --- group actions ------------------------------------------------------------

def compose(p, q):
    """Permutation composition (p after q)."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p):
    out = [0] * len(p)
    for i, t in enumerate(p):
        out[t] = i
    return tuple(out)


@dataclass(frozen=True)
class GroupAction:
    elements: tuple  # permutation tuples, identity included

    @property
    def order(self) -> int:
        return len(self.elements)


def verify_group(elements) -> bool:
    elems = set(elements)
    if not elems:
        return False
    n = len(next(iter(elems)))
    if tuple(range(n)) not in elems:
        return False
    for p in elems:
        if inverse(p) not in elems:
            return False
        for q in elems:
            if compose(p, q) not in elems:
                return False
    return True


def closure(generators, cap: int | None = None):
    """Group closure of permutations; None if the cap is exceeded."""
    if not generators:
        return None
    n = len(generators[0])
    elems = {tuple(range(n))}
    frontier = [tuple(range(n))]
    gens = [tuple(p) for p in generators]
    while frontier:
        nxt = []
        for a in frontier:
            for gsym in gens:
                c = compose(gsym, a)
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
                    if cap is not None and len(elems) > cap:
                        return None
        frontier = nxt
    return GroupAction(tuple(sorted(elems)))


def subgroups(auts, max_order: int = 48):
    """Cyclic subgroups plus closures of pairs of cyclic generators, deduped."""
    n = len(auts[0]) if auts else 0
    identity = tuple(range(n))
    found = {frozenset([identity]): GroupAction((identity,))}
    cyclic_gens = []
    for a in auts:
        group = closure([a], cap=max_order)
        if group is None:
            continue
        key = frozenset(group.elements)
        if key not in found:
            found[key] = group
            cyclic_gens.append(a)
    for i in range(len(cyclic_gens)):
        for j in range(i + 1, len(cyclic_gens)):
            group = closure([cyclic_gens[i], cyclic_gens[j]], cap=max_order)
            if group is None:
                continue
            key = frozenset(group.elements)
            if key not in found:
                found[key] = group
    return sorted(found.values(), key=lambda a: (a.order, a.elements))


def riemann_hurwitz(s: SimplicialStructure, action: GroupAction):
    """chi(G) = n chi_chain(G/A) - sum (e_x - 1), evaluated at the chain level.

    chi_chain counts simplex orbits with alternating signs; e_x counts the
    nontrivial stabilizer of each simplex with the dimension sign.
    """
    n = action.order
    chi_g = sum((-1) ** k * len(level) for k, level in enumerate(s.simplices))
    chi_chain = 0
    ram_sum = 0
    quotient_simple = True
    vertex_orbit = {}
    for k, level in enumerate(s.simplices):
        index = s.index[k]
        seen = set()
        orbit_count = 0
        for i, simplex in enumerate(level):
            if i in seen:
                continue
            orbit_count += 1
            orbit = set()
            stack = [i]
            while stack:
                cur = stack.pop()
                if cur in orbit:
                    continue
                orbit.add(cur)
                for perm in action.elements:
                    img = index[tuple(sorted(perm[v] for v in level[cur]))]
                    if img not in orbit:
                        stack.append(img)
            seen |= orbit
            if k == 0:
                root = min(orbit)
                for member in orbit:
                    vertex_orbit[level[member][0]] = root
        chi_chain += (-1) ** k * orbit_count
    identity = tuple(range(len(action.elements[0]))) if action.elements else ()
    for k, level in enumerate(s.simplices):
        for simplex in level:
            stab_nontrivial = 0
            for perm in action.elements:
                if perm == identity:
                    continue
                if tuple(sorted(perm[v] for v in simplex)) == simplex:
                    stab_nontrivial += 1
            e_x = 1 + stab_nontrivial * (-1) ** k
            ram_sum += e_x - 1
    # quotient realizability: edge orbits may not collapse or merge
    edge_orbit_pairs = set()
    if len(s.simplices) > 1:
        for (u, v) in s.simplices[1]:
            pair = (vertex_orbit[u], vertex_orbit[v])
            pair = (min(pair), max(pair))
            if pair[0] == pair[1]:
                quotient_simple = False
        seen_edges = set()
        index1 = s.index[1]
        for i, edge in enumerate(s.simplices[1]):
            if i in seen_edges:
                continue
            orbit = set()
            stack = [i]
            while stack:
                cur = stack.pop()
                if cur in orbit:
                    continue
                orbit.add(cur)
                for perm in action.elements:
                    stack.append(index1[tuple(sorted(perm[v] for v in s.simplices[1][cur]))])
            seen_edges |= orbit
            u, v = s.simplices[1][i]
            pair = tuple(sorted((vertex_orbit[u], vertex_orbit[v])))
            if pair in edge_orbit_pairs:
                quotient_simple = False
            edge_orbit_pairs.add(pair)
    return {
        "chi": chi_g,
        "group_order": n,
        "chi_chain_quotient": chi_chain,
        "ramification_sum": ram_sum,
        "identity_holds": chi_g == n * chi_chain - ram_sum,
        "quotient_simple_graph": quotient_simple,
    }


# --- orientations --------------------------------------------------------------

def orient_top(s: SimplicialStructure):
    """Consistent orientation signs for top simplices, or None if impossible."""
    top = s.top_dim
    if top < 1:
        return None
    facets = s.simplices[top]
    ridges = {}
    for i, f in enumerate(facets):
        for j in range(len(f)):
            ridge = f[:j] + f[j + 1 :]
            ridges.setdefault(ridge, []).append((i, (-1) ** j))
    for cofaces in ridges.values():
        if len(cofaces) != 2:
            return None
    orientation = [0] * len(facets)
    for start in range(len(facets)):
        if orientation[start]:
            continue
        orientation[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for f_j in range(len(facets[i])):
                ridge = facets[i][:f_j] + facets[i][f_j + 1 :]
                (a, sa), (b, sb) = ridges[ridge]
                other, so, si = (b, sb, sa) if a == i else (a, sa, sb)
                needed = -orientation[i] * si * so
                if orientation[other] == 0:
                    orientation[other] = needed
                    stack.append(other)
                elif orientation[other] != needed:
                    return None
    return tuple(orientation)


def is_orientation_preserving(s: SimplicialStructure, orientation, perm):
    """True/False for oriented complexes; None when signs are mixed."""
    top = s.top_dim
    idx = s.index[top]
    signs = set()
    for i, simplex in enumerate(s.simplices[top]):
        mapped = tuple(perm[v] for v in simplex)
        j = idx[tuple(sorted(mapped))]
        signs.add(_perm_sign(mapped) * orientation[i] * orientation[j])
    if signs == {1}:
        return True
    if signs == {-1}:
        return False
    return None
