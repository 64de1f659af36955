"""Orbital networks: graphs on Z_n (or its nonzero residues) generated by
polynomial maps, plus the number-theoretic claim suites.

Conventions pinned by empirical validation of the claims (see tests):
Z_n* means the nonzero residues 1..n-1; a map image outside the vertex set
contributes no edge; fixed points contribute no loop.  The primitive-root
clause of the doubling claim applies to primes.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from math import gcd

from .graphs import Graph


@dataclass(frozen=True)
class OrbitalSpec:
    modulus: int
    domain: str        # "zn" (full ring) | "zn_star" (nonzero residues)
    generators: tuple  # per map: coefficient tuple, ascending degree

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        if self.domain not in ("zn", "zn_star"):
            raise ValueError("domain must be 'zn' or 'zn_star'")


def poly_eval_mod(coeffs, x: int, n: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % n
    return acc


def orbital_vertices(spec: OrbitalSpec):
    if spec.domain == "zn":
        return tuple(range(spec.modulus))
    return tuple(range(1, spec.modulus))


def orbital_graph(spec: OrbitalSpec) -> Graph:
    """Undirected simple graph with edges x -- T(x) for every generator T."""
    verts = orbital_vertices(spec)
    index = {v: i for i, v in enumerate(verts)}
    edges = set()
    for x in verts:
        for coeffs in spec.generators:
            y = poly_eval_mod(coeffs, x, spec.modulus)
            if y != x and y in index:
                edges.add((min(index[x], index[y]), max(index[x], index[y])))
    return Graph(len(verts), sorted(edges), _skip_checks=True)


# --- number predicates --------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _phi(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        return 0
    order = 1
    value = a % n
    while value != 1:
        value = value * a % n
        order += 1
    return order


def number_predicates(n: int):
    """is_prime, two_primitive_root, is_fermat_prime, is_pierpont_prime."""
    prime = is_prime(n)
    two_prim = gcd(2, n) == 1 and multiplicative_order(2, n) == _phi(n)
    fermat = prime and (n - 1) & (n - 2) == 0 and n > 2
    m = n - 1
    for p in (2, 3):
        while m > 0 and m % p == 0:
            m //= p
    pierpont = prime and m == 1
    return {
        "is_prime": prime,
        "two_primitive_root": two_prim,
        "is_fermat_prime": fermat,
        "is_pierpont_prime": pierpont,
    }


# --- fast internal sweeps -------------------------------------------------------

def _edges_nonzero(n: int, maps):
    """Edge set on nonzero residues for the given callables (mod n)."""
    edges = set()
    for x in range(1, n):
        for f in maps:
            y = f(x) % n
            if y != x and y != 0:
                edges.add((x, y) if x < y else (y, x))
    return edges


def _connected(nv: int, edges, labels=None) -> bool:
    if nv <= 1:
        return True
    parent = list(range(nv))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    merges = 0
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            merges += 1
    return merges == nv - 1


def _connected_nonzero(n: int, maps) -> bool:
    edges = {(u - 1, v - 1) for u, v in _edges_nonzero(n, maps)}
    return _connected(n - 1, edges)


def _quad_masks(p: int, shifts):
    """Adjacency bitmasks of (Z_p, {x^2 + a_i}) on the full ring."""
    masks = [0] * p
    for x in range(p):
        xx = x * x
        for a in shifts:
            y = (xx + a) % p
            if y != x:
                masks[x] |= 1 << y
                masks[y] |= 1 << x
    return masks


def _clique_counts_masks(masks, n: int):
    counts = [0]

    def rec(cand: int, depth: int):
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            while len(counts) <= depth:
                counts.append(0)
            counts[depth] += 1
            rec(masks[v] & cand, depth + 1)

    rec((1 << n) - 1, 0)
    return counts


def _chi(counts) -> int:
    return sum((-1) ** k * c for k, c in enumerate(counts))


# --- the seven claims -----------------------------------------------------------

def claim_doubling_connected(n_max: int = 2000):
    """(Z_n*, 2x) is connected iff n = 2^m or n is prime with 2 a primitive root."""
    t0 = time.time()
    bad = []
    for n in range(2, n_max + 1):
        actual = _connected_nonzero(n, [lambda x: 2 * x])
        preds = number_predicates(n)
        expected = (n & (n - 1)) == 0 or (preds["is_prime"] and preds["two_primitive_root"])
        if actual != expected:
            bad.append({"n": n, "connected": actual, "claimed": expected})
    return _report("doubling_connected", {"n_max": n_max}, n_max - 1, bad, t0)


def claim_squaring_connected(n_max: int = 2000):
    """(Z_n*, x^2) is connected iff n = 2 or n is a Fermat prime."""
    t0 = time.time()
    bad = []
    for n in range(2, n_max + 1):
        actual = _connected_nonzero(n, [lambda x: x * x])
        expected = n == 2 or number_predicates(n)["is_fermat_prime"]
        if actual != expected:
            bad.append({"n": n, "connected": actual, "claimed": expected})
    return _report("squaring_connected", {"n_max": n_max}, n_max - 1, bad, t0)


def claim_square_cube_connected(n_max: int = 2000):
    """(Z_n*, {x^2, x^3}) is connected iff n is a Pierpont prime."""
    t0 = time.time()
    bad = []
    for n in range(2, n_max + 1):
        actual = _connected_nonzero(n, [lambda x: x * x, lambda x: x * x * x])
        expected = number_predicates(n)["is_pierpont_prime"]
        if actual != expected:
            bad.append({"n": n, "connected": actual, "claimed": expected})
    return _report("square_cube_connected", {"n_max": n_max}, n_max - 1, bad, t0)


def claim_collatz_triangles(p_max: int = 2000):
    """(Z_p, {2x, 3x+1}) has exactly 4 triangles for primes p > 17."""
    t0 = time.time()
    bad = []
    checked = 0
    for p in range(19, p_max + 1):
        if not is_prime(p):
            continue
        checked += 1
        masks = [0] * p
        for x in range(p):
            for y in (2 * x % p, (3 * x + 1) % p):
                if y != x:
                    masks[x] |= 1 << y
                    masks[y] |= 1 << x
        counts = _clique_counts_masks(masks, p)
        tri = counts[2] if len(counts) > 2 else 0
        if tri != 4:
            bad.append({"p": p, "triangles": tri})
    return _report("collatz_triangles", {"p_max": p_max}, checked, bad, t0)


def claim_quadratic_single(p_max: int = 2000, a_cap: int = 50):
    """(Z_p, x^2+a): no K_4 and chi >= 0, and 0/1/2 triangles; one shared sweep."""
    t0 = time.time()
    bad_k4chi = []
    bad_tri = []
    checked = 0
    for p in range(2, p_max + 1):
        if not is_prime(p):
            continue
        for a in range(min(p, a_cap)):
            checked += 1
            counts = _clique_counts_masks(_quad_masks(p, (a,)), p)
            tri = counts[2] if len(counts) > 2 else 0
            k4 = counts[3] if len(counts) > 3 else 0
            if k4 != 0 or _chi(counts) < 0:
                bad_k4chi.append({"p": p, "a": a, "k4": k4, "chi": _chi(counts)})
            if tri not in (0, 1, 2):
                bad_tri.append({"p": p, "a": a, "triangles": tri})
    rep_a = _report(
        "quadratic_no_k4_chi_nonneg", {"p_max": p_max, "a_cap": a_cap}, checked, bad_k4chi, t0
    )
    rep_b = _report(
        "quadratic_triangles_012", {"p_max": p_max, "a_cap": a_cap}, checked, bad_tri, t0
    )
    return rep_a, rep_b


def claim_quadratic_pair_chi(p_min: int = 100, p_max: int = 500, a_cap: int = 50):
    """(Z_p, {x^2+a, x^2+b}), a != b: chi < 0 for primes in [p_min, p_max]."""
    t0 = time.time()
    bad = []
    checked = 0
    for p in range(p_min, p_max + 1):
        if not is_prime(p):
            continue
        cap = min(p, a_cap)
        for a in range(cap):
            for b in range(a + 1, cap):
                checked += 1
                chi = _chi(_clique_counts_masks(_quad_masks(p, (a, b)), p))
                if chi >= 0:
                    bad.append({"p": p, "a": a, "b": b, "chi": chi})
    return _report(
        "quadratic_pair_chi_negative",
        {"p_min": p_min, "p_max": p_max, "a_cap": a_cap},
        checked,
        bad,
        t0,
    )


def witness_z311():
    """The one known disconnected 3-generator quadratic network (Z_311)."""
    t0 = time.time()
    p = 311
    masks = _quad_masks(p, (57, 58, 213))
    edges = set()
    for x in range(p):
        m = masks[x] >> (x + 1)
        base = x + 1
        while m:
            low = m & -m
            edges.add((x, base + low.bit_length() - 1))
            m ^= low
    connected = _connected(p, edges)
    bad = [] if not connected else [{"p": p, "connected": True}]
    return _report("z311_witness_disconnected", {"p": p, "shifts": [57, 58, 213]}, 1, bad, t0)


def _report(claim_id, params, checked, counterexamples, t0):
    return {
        "claim": claim_id,
        "params": params,
        "checked": checked,
        "counterexamples": counterexamples,
        "passed": not counterexamples,
        "elapsed_s": round(time.time() - t0, 3),
    }


def claim_suite(
    n_max: int = 2000,
    collatz_p_max: int = 2000,
    quad_p_max: int = 2000,
    pair_p_min: int = 100,
    pair_p_max: int = 500,
    a_cap: int = 50,
):
    """Run all seven claims plus the Z_311 witness; returns report list."""
    reports = [
        claim_doubling_connected(n_max),
        claim_squaring_connected(n_max),
        claim_collatz_triangles(collatz_p_max),
        claim_square_cube_connected(n_max),
    ]
    rep_a, rep_b = claim_quadratic_single(quad_p_max, a_cap)
    reports.append(rep_a)
    reports.append(claim_quadratic_pair_chi(pair_p_min, pair_p_max, a_cap))
    reports.append(rep_b)
    reports.append(witness_z311())
    return reports


def suite_json(reports) -> str:
    return json.dumps(reports, indent=2, sort_keys=True)
