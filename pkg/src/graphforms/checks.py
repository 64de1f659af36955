"""Theorem-check drivers over a corpus: one function per check id.

Each check returns {"id", "pass", "details"} with JSON-ready details, and is
deterministic for a fixed corpus and seed.  The CLI composes these into the
check suite; the acceptance tests call them directly at the spec tolerances.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from . import divisors, dynamics, geometry, morse, orbital, symmetry
from .complexes import Chain, Form, stokes_pairing, whitney_complex
from .corpus import CorpusEntry
from .errors import ResonantTimeError
from .exact import int_det
from .graphs import Graph, components, cycle_graph, is_connected
from .spectral import (
    OperatorBundle,
    betti_rank_oracle,
    bundle_for_graph,
    cauchy_binet_sum,
    dirac_and_laplacian,
    mckean_singer_supertrace,
    rooted_forest_count,
    rooted_forests_exhaustive,
    spanning_tree_count,
    spanning_trees_exhaustive,
    zeta,
    zeta_roots,
)


def fmt(x) -> float:
    return float(f"{float(x):.12g}")


class CorpusCache:
    """Shared per-graph precomputation: complex, operators, exact Betti."""

    def __init__(self, entries):
        self.entries = list(entries)
        self._complex = {}
        self._bundle = {}
        self._betti = {}
        self._chi = {}

    def __iter__(self):
        return iter(self.entries)

    def complex(self, entry: CorpusEntry):
        if entry.name not in self._complex:
            self._complex[entry.name] = whitney_complex(entry.graph)
        return self._complex[entry.name]

    def bundle(self, entry: CorpusEntry) -> OperatorBundle:
        if entry.name not in self._bundle:
            self._bundle[entry.name] = dirac_and_laplacian(self.complex(entry))
        return self._bundle[entry.name]

    def betti_exact(self, entry: CorpusEntry):
        if entry.name not in self._betti:
            self._betti[entry.name] = betti_rank_oracle(self.complex(entry))
        return self._betti[entry.name]

    def chi(self, entry: CorpusEntry) -> int:
        if entry.name not in self._chi:
            dims = self.complex(entry).dims
            self._chi[entry.name] = sum((-1) ** k * v for k, v in enumerate(dims))
        return self._chi[entry.name]


def _result(check_id, passed, details):
    return {"id": check_id, "pass": bool(passed), "details": details}


def _fails(fails, cap: int = 10):
    return fails[:cap] + (["..."] if len(fails) > cap else [])


def _find(cache: "CorpusCache", name: str):
    return next((e for e in cache.entries if e.name == name), None)


# 1 -----------------------------------------------------------------------------

def check_gauss_bonnet(cache: CorpusCache):
    fails = []
    for entry in cache:
        total = geometry.curvature(entry.graph).total()
        if total != cache.chi(entry):
            fails.append(entry.name)
    return _result(
        "gauss_bonnet",
        not fails,
        {"graphs": len(cache.entries), "failures": _fails(fails)},
    )


# 2 -----------------------------------------------------------------------------

def check_poincare_hopf(cache: CorpusCache, seed: int = 0, functions_per_graph: int = 50):
    rng = random.Random(seed + 101)
    fails = []
    for entry in cache:
        g = entry.graph
        chi = cache.chi(entry)
        f = list(range(g.n))
        for _ in range(functions_per_graph):
            rng.shuffle(f)
            total, chi2 = morse.ph_check(g, f)
            if total != chi or chi2 != chi:
                fails.append(entry.name)
                break
    return _result(
        "poincare_hopf",
        not fails,
        {
            "graphs": len(cache.entries),
            "functions_per_graph": functions_per_graph,
            "failures": _fails(fails),
        },
    )


# 3 -----------------------------------------------------------------------------

def check_index_expectation(cache: CorpusCache, seed: int = 0, mc_samples: int = 10000):
    fails = []
    exhaustive_count = 0
    for entry in cache:
        g = entry.graph
        if g.n > 7:
            continue
        exhaustive_count += 1
        expectation = morse.index_expectation(g, "exhaustive")
        k = geometry.curvature(g).values
        if tuple(expectation.mean) != tuple(k):
            fails.append(entry.name)
    mc_details = {}
    for entry in cache:
        if entry.name not in ("octahedron", "icosahedron"):
            continue
        g = entry.graph
        sampled = morse.index_expectation(g, "samples", samples=mc_samples, seed=seed + 7)
        k = geometry.curvature(g).values
        worst = 0.0
        ok = True
        for v in range(g.n):
            dev = abs(sampled.mean[v] - float(k[v]))
            band = 3 * max(sampled.stderr[v], 1e-12)
            worst = max(worst, dev / band if band else 0.0)
            if dev > band:
                ok = False
        mc_details[entry.name] = {"worst_dev_over_3se": fmt(worst), "ok": ok}
        if not ok:
            fails.append(entry.name + ":mc")
    return _result(
        "index_expectation",
        not fails,
        {
            "exhaustive_graphs": exhaustive_count,
            "monte_carlo": mc_details,
            "failures": _fails(fails),
        },
    )


# 4 -----------------------------------------------------------------------------

def check_lefschetz(cache: CorpusCache, max_vertices: int = 10):
    fails = []
    total_autos = 0
    worst_residual = 0.0
    for entry in cache:
        g = entry.graph
        if g.n > max_vertices or g.n == 0:
            continue
        bundle = cache.bundle(entry)
        for perm in symmetry.automorphisms(g):
            total_autos += 1
            res = symmetry.lefschetz(bundle, perm)
            worst_residual = max(worst_residual, res["rounding_residual"])
            if not res["match"]:
                fails.append(entry.name)
                break
    tree_fails = []
    for entry in cache:
        if not entry.name.startswith("tree_"):
            continue
        for perm in symmetry.automorphisms(entry.graph):
            fixed = symmetry.fixed_simplices(cache.complex(entry), perm)
            if not any(len(s) <= 2 for s, _ in fixed):
                tree_fails.append(entry.name)
                break
    sphere_fails = []
    for entry in cache:
        if entry.name not in ("octahedron", "icosahedron"):
            continue
        s = cache.complex(entry)
        orientation = symmetry.orient_top(s)
        bundle = cache.bundle(entry)
        for perm in symmetry.automorphisms(entry.graph):
            if symmetry.is_orientation_preserving(s, orientation, perm):
                res = symmetry.lefschetz(bundle, perm)
                if res["lefschetz_number"] != 2 or len(res["fixed"]) < 2:
                    sphere_fails.append(entry.name)
                    break
    passed = not fails and not tree_fails and not sphere_fails
    return _result(
        "lefschetz",
        passed,
        {
            "automorphisms_checked": total_autos,
            "worst_rounding_residual": fmt(worst_residual),
            "failures": _fails(fails),
            "tree_fixed_point_failures": _fails(tree_fails),
            "sphere_corollary_failures": _fails(sphere_fails),
        },
    )


# 5 -----------------------------------------------------------------------------

def check_brouwer(cache: CorpusCache):
    fails = []
    graphs_checked = 0
    autos_checked = 0
    for entry in cache:
        if not entry.name.startswith("contractible_"):
            continue
        graphs_checked += 1
        for perm in symmetry.automorphisms(entry.graph):
            autos_checked += 1
            res = symmetry.brouwer_check(entry.graph, perm)
            if not res["has_fixed_simplex"]:
                fails.append(entry.name)
                break
    return _result(
        "brouwer",
        not fails and graphs_checked > 0,
        {
            "contractible_graphs": graphs_checked,
            "automorphisms_checked": autos_checked,
            "failures": _fails(fails),
        },
    )


# 6 -----------------------------------------------------------------------------

def check_mckean_singer(cache: CorpusCache, times=(0.1, 1.0, 10.0), tol: float = 1e-8):
    fails = []
    worst = 0.0
    for entry in cache:
        bundle = cache.bundle(entry)
        chi = cache.chi(entry)
        for t in times:
            dev = abs(mckean_singer_supertrace(bundle, t) - chi)
            worst = max(worst, dev)
            if dev >= tol:
                fails.append(f"{entry.name}@t={t}")
    return _result(
        "mckean_singer",
        not fails,
        {"worst_deviation": fmt(worst), "tolerance": tol, "failures": _fails(fails)},
    )


# 7 -----------------------------------------------------------------------------

def check_hodge(cache: CorpusCache):
    from .spectral import betti_hodge

    fails = []
    for entry in cache:
        hodge = betti_hodge(cache.bundle(entry))[0]
        exact = cache.betti_exact(entry)
        if tuple(hodge) != tuple(exact):
            fails.append(entry.name)
    sphere_ok = True
    for name in ("octahedron", "icosahedron"):
        entry = _find(cache, name)
        if entry is not None and tuple(cache.betti_exact(entry)) != (1, 0, 1):
            sphere_ok = False
            fails.append(name + ":betti")
    return _result(
        "hodge",
        not fails and sphere_ok,
        {"graphs": len(cache.entries), "failures": _fails(fails)},
    )


# 8 -----------------------------------------------------------------------------

def check_lusternik(cache: CorpusCache, max_vertices: int = 10, seed: int = 0):
    fails = []
    exact_count = 0
    oct_triple = None
    for entry in cache:
        g = entry.graph
        if g.n == 0 or g.n > max_vertices:
            continue
        res = morse.ls_triple_check(g, seed=seed, bundle=cache.bundle(entry))
        if entry.name == "octahedron":
            oct_triple = (res["cup_lower"], res["tcap"], res["crit"])
        if res["inequalities_hold"] is None:
            continue
        exact_count += 1
        if not res["inequalities_hold"]:
            fails.append(entry.name)
    oct_ok = oct_triple == (2, 2, 2) or _find(cache, "octahedron") is None
    return _result(
        "lusternik",
        not fails and oct_ok,
        {
            "graphs_all_exact": exact_count,
            "octahedron_triple": oct_triple,
            "failures": _fails(fails),
        },
    )


# 9 -----------------------------------------------------------------------------

def check_kirchhoff(cache: CorpusCache, max_vertices: int = 8):
    fails = []
    checked = 0
    for entry in cache:
        g = entry.graph
        if g.n > max_vertices or not is_connected(g) or g.n == 0:
            continue
        checked += 1
        tc = spanning_tree_count(g)
        exhaustive = spanning_trees_exhaustive(g)
        damped = round(tc.damped_estimate)
        if not (tc.count == exhaustive == damped):
            fails.append(f"{entry.name}: cofactor={tc.count} damped={damped} brute={exhaustive}")
    c5 = spanning_tree_count(cycle_graph(5)).count
    if c5 != 5:
        fails.append(f"cycle_5 expected 5 trees, got {c5}")
    return _result(
        "kirchhoff",
        not fails,
        {"graphs": checked, "cycle_5_trees": c5, "failures": _fails(fails)},
    )


# 10 ----------------------------------------------------------------------------

def _det_batch(mats: np.ndarray) -> np.ndarray:
    """Exact integer determinants of a batch of k x k matrices, k <= 4."""
    k = mats.shape[1]
    if k == 1:
        return mats[:, 0, 0].copy()
    if k == 2:
        return mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]
    if k == 3:
        return (
            mats[:, 0, 0] * (mats[:, 1, 1] * mats[:, 2, 2] - mats[:, 1, 2] * mats[:, 2, 1])
            - mats[:, 0, 1] * (mats[:, 1, 0] * mats[:, 2, 2] - mats[:, 1, 2] * mats[:, 2, 0])
            + mats[:, 0, 2] * (mats[:, 1, 0] * mats[:, 2, 1] - mats[:, 1, 1] * mats[:, 2, 0])
        )
    if k == 4:
        total = np.zeros(mats.shape[0], dtype=np.int64)
        rows = [1, 2, 3]
        for j in range(4):
            cols = [c for c in range(4) if c != j]
            minor = mats[np.ix_(range(mats.shape[0]), rows, cols)]
            total += (-1) ** j * mats[:, 0, j] * _det_batch(minor)
        return total
    raise ValueError("batch determinant limited to k <= 4")


def cauchy_binet_exhaustive(max_rows: int = 3, max_cols: int = 4, x_values=(1, 2)):
    """det(1 + x A^T A) = sum_P x^|P| det(A_P)^2 for every sign matrix A.

    Exhaustive over all shapes (r, c) with r <= max_rows, c <= max_cols and
    entries in {-1, 0, 1}; exact int64 arithmetic throughout (values tiny).
    """
    fails = 0
    checked = 0
    for r in range(1, max_rows + 1):
        for c in range(1, max_cols + 1):
            count = 3 ** (r * c)
            digits = np.arange(count, dtype=np.int64)
            mats = np.zeros((count, r, c), dtype=np.int64)
            for pos in range(r * c):
                mats[:, pos // c, pos % c] = digits % 3 - 1
                digits = digits // 3
            gram = np.einsum("nij,nik->njk", mats, mats)
            eye = np.eye(c, dtype=np.int64)
            minor_terms = {}
            for k in range(1, min(r, c) + 1):
                acc = np.zeros(count, dtype=np.int64)
                for rows in itertools.combinations(range(r), k):
                    for cols in itertools.combinations(range(c), k):
                        sub = mats[np.ix_(range(count), rows, cols)]
                        acc += _det_batch(sub) ** 2
                minor_terms[k] = acc
            for x in x_values:
                det_side = _det_batch(eye[None, :, :] + x * gram)
                minor_side = np.ones(count, dtype=np.int64)
                for k, acc in minor_terms.items():
                    minor_side += x**k * acc
                fails += int(np.count_nonzero(det_side != minor_side))
                checked += count
    return checked, fails


def check_chebotarev(cache: CorpusCache, seed: int = 0, random_pairs: int = 100):
    fails = []
    forests_checked = 0
    for entry in cache:
        g = entry.graph
        if g.n > 6 or g.n == 0:
            continue
        forests_checked += 1
        det_count = rooted_forest_count(g)
        brute = rooted_forests_exhaustive(g)
        if det_count != brute:
            fails.append(f"{entry.name}: det={det_count} brute={brute}")
    cb_checked, cb_fails = cauchy_binet_exhaustive()
    if cb_fails:
        fails.append(f"cauchy_binet_exhaustive: {cb_fails} mismatches")
    rng = random.Random(seed + 211)
    pair_fails = 0
    for _ in range(random_pairs):
        fm = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
        gm = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
        x = rng.choice((1, 2, Fraction(1, 2)))
        det_side, minor_side = cauchy_binet_sum(fm, gm, x)
        if det_side != minor_side:
            pair_fails += 1
    if pair_fails:
        fails.append(f"random 4x4 pairs: {pair_fails} mismatches")
    return _result(
        "chebotarev",
        not fails,
        {
            "forest_graphs": forests_checked,
            "cauchy_binet_matrices": cb_checked,
            "random_pairs": random_pairs,
            "failures": _fails(fails),
        },
    )


# 11 ----------------------------------------------------------------------------

def check_euler_poincare(cache: CorpusCache):
    fails = []
    for entry in cache:
        chi = cache.chi(entry)
        betti = cache.betti_exact(entry)
        if chi != sum((-1) ** k * b for k, b in enumerate(betti)):
            fails.append(entry.name)
    return _result(
        "euler_poincare", not fails, {"graphs": len(cache.entries), "failures": _fails(fails)}
    )


def check_stokes(cache: CorpusCache, seed: int = 0, pairs_per_graph: int = 100):
    rng = random.Random(seed + 307)
    fails = []
    pairs = 0
    for entry in cache:
        s = cache.complex(entry)
        degrees = [k for k in range(s.top_dim) if len(s.simplices[k + 1]) > 0]
        if not degrees:
            continue
        for _ in range(pairs_per_graph):
            k = rng.choice(degrees)
            chain = Chain(k + 1, tuple(rng.randint(-3, 3) for _ in s.simplices[k + 1]))
            form = Form(k, tuple(rng.randint(-3, 3) for _ in s.simplices[k]))
            lhs, rhs = stokes_pairing(s, chain, form)
            pairs += 1
            if lhs != rhs:
                fails.append(entry.name)
                break
    return _result(
        "stokes", not fails, {"pairs_checked": pairs, "failures": _fails(fails)}
    )


# 12 ----------------------------------------------------------------------------

def check_riemann_roch(cache: CorpusCache, seed: int = 0, divisors_per_graph: int = 100):
    rng = random.Random(seed + 401)
    fails = []
    graphs_checked = 0
    for entry in cache:
        g = entry.graph
        if g.n > 8 or g.n < 2 or not is_connected(g):
            continue
        graphs_checked += 1
        memo: dict = {}
        for _ in range(divisors_per_graph):
            vals = [rng.randint(-2, 2) for _ in range(g.n)]
            k = divisors.canonical_divisor(g)
            kd = tuple(kv - dv for kv, dv in zip(k.values, vals))
            r_d = divisors.rank(g, vals, _memo=memo)
            r_kd = divisors.rank(g, kd, _memo=memo)
            if r_d - r_kd != (g.n - g.m) + sum(vals):
                fails.append(f"{entry.name}:{vals}")
                break
    c5 = cycle_graph(5)
    c5_zero = divisors.rank(c5, [0] * 5)
    c5_deg = divisors.riemann_roch_check(c5, [2, 0, 0, 0, 0])
    if c5_zero != 0:
        fails.append("cycle_5 zero divisor rank")
    if not c5_deg["identity_holds"] or c5_deg["rank_d"] - c5_deg["rank_k_minus_d"] != 2:
        fails.append("cycle_5 degree identity")
    return _result(
        "riemann_roch",
        not fails,
        {
            "graphs": graphs_checked,
            "divisors_per_graph": divisors_per_graph,
            "failures": _fails(fails),
        },
    )


# 13 ----------------------------------------------------------------------------

def check_riemann_hurwitz(cache: CorpusCache, max_vertices: int = 8, max_order: int = 48):
    fails = []
    subgroup_count = 0
    for entry in cache:
        g = entry.graph
        if g.n > max_vertices or g.n == 0:
            continue
        auts = symmetry.automorphisms(g)
        s = cache.complex(entry)
        for action in symmetry.subgroups(auts, max_order=max_order):
            subgroup_count += 1
            res = symmetry.riemann_hurwitz(s, action)
            if not res["identity_holds"]:
                fails.append(f"{entry.name}:order{action.order}")
                break
    c6 = cycle_graph(6)
    s6 = whitney_complex(c6)
    refl = symmetry.closure([(0, 5, 4, 3, 2, 1)])
    worked = symmetry.riemann_hurwitz(s6, refl)
    worked_ok = (
        worked["identity_holds"]
        and worked["chi_chain_quotient"] == 1
        and worked["ramification_sum"] == 2
    )
    if not worked_ok:
        fails.append("cycle_6 reflection worked example")
    return _result(
        "riemann_hurwitz",
        not fails,
        {"subgroups_checked": subgroup_count, "failures": _fails(fails)},
    )


# 14 ----------------------------------------------------------------------------

def check_morse(cache: CorpusCache, seed: int = 0, filtrations_per_graph: int = 50, max_vertices: int = 8):
    rng = random.Random(seed + 503)
    fails = []
    morse_found = 0
    filtrations = 0
    for entry in cache:
        g = entry.graph
        if g.n > max_vertices or g.n == 0:
            continue
        f = list(range(g.n))
        for _ in range(filtrations_per_graph):
            rng.shuffle(f)
            filtrations += 1
            report = morse.morse_filtration(g, f)
            if sum(report.indices) != cache.chi(entry):
                fails.append(f"{entry.name}: index sum")
                break
            if not report.is_morse:
                continue
            morse_found += 1
            res = morse.morse_inequalities_check(report)
            if not (res["weak"] and res["strong"]):
                fails.append(f"{entry.name}: inequalities")
                break
    return _result(
        "morse",
        not fails,
        {
            "filtrations": filtrations,
            "morse_functions_found": morse_found,
            "failures": _fails(fails),
        },
    )


# 15 ----------------------------------------------------------------------------

def check_flatness_bonnet(cache: CorpusCache):
    from .graphs import cross_polytope, metrics

    fails = []
    c3 = cross_polytope(3)
    if not geometry.flatness_check(c3, 3):
        fails.append("cross_polytope_3 not flat")
    if not geometry.flatness_check(cycle_graph(5), 1):
        fails.append("cycle_5 not flat")
    for name, want_diam in (("octahedron", 2), ("icosahedron", 3)):
        entry = _find(cache, name)
        if entry is None:
            continue
        report = geometry.positive_curvature_report(entry.graph)
        if not report["all_sectional_positive"]:
            fails.append(f"{name} not positively curved")
        if report["diameter"] != want_diam or not report["diameter_le_3"]:
            fails.append(f"{name} diameter {report['diameter']} != {want_diam}")
    return _result("flatness_bonnet", not fails, {"failures": _fails(fails)})


# 16 ----------------------------------------------------------------------------

def check_dynamics(
    cache: CorpusCache,
    seed: int = 0,
    heat_tol: float = 1e-10,
    wave_tol: float = 1e-8,
    residual_tol: float = 1e-6,
):
    rng = np.random.default_rng(seed + 601)
    fails = []
    worst = {"heat_mass": 0.0, "wave_energy": 0.0, "schrodinger_norm": 0.0, "residual": 0.0}
    for entry in cache:
        g = entry.graph
        if g.n == 0:
            continue
        b = cache.bundle(entry)
        u0 = rng.normal(size=g.n)
        state0 = dynamics.FieldState(0, u0)
        comps = components(g)
        masses0 = [sum(u0[v] for v in comp) for comp in comps]
        decay_prev = None
        for t in (0.5, 5.0):
            ut = dynamics.heat_evolve(b, state0, t)
            for comp, m0 in zip(comps, masses0):
                drift = abs(sum(ut.values[v] for v in comp) - m0)
                worst["heat_mass"] = max(worst["heat_mass"], drift)
                if drift >= heat_tol:
                    fails.append(f"{entry.name}: heat mass")
            dist = float(np.linalg.norm(ut.values - harmonic0(b, u0)))
            if decay_prev is not None and dist > decay_prev + 1e-12:
                fails.append(f"{entry.name}: heat decay not monotone")
            decay_prev = dist
        uw = rng.normal(size=b.size)
        vw = rng.normal(size=b.size)
        norm = np.sqrt(dynamics.wave_energy(b, uw, vw))
        if norm > 0:
            uw, vw = uw / norm, vw / norm
        e0 = dynamics.wave_energy(b, *dynamics.wave_evolve(b, uw, vw, 0.0))
        psi0, _ = dynamics.schrodinger_state(b, uw, vw)
        n0 = float(np.linalg.norm(psi0))
        for t in (2.5, 5.0, 10.0):
            drift = abs(dynamics.wave_energy(b, *dynamics.wave_evolve(b, uw, vw, t)) - e0)
            worst["wave_energy"] = max(worst["wave_energy"], drift)
            if drift >= wave_tol:
                fails.append(f"{entry.name}: wave energy")
            ndrift = abs(float(np.linalg.norm(dynamics.schrodinger_evolve(b, psi0, t))) - n0)
            worst["schrodinger_norm"] = max(worst["schrodinger_norm"], ndrift)
            if ndrift >= wave_tol:
                fails.append(f"{entry.name}: schrodinger norm")
        for k in range(min(2, len(b.dims))):
            if b.dims[k] == 0:
                continue
            sol = dynamics.poisson_solve(b, k, rng.normal(size=b.dims[k]))
            worst["residual"] = max(worst["residual"], sol["residual"])
            if sol["residual"] >= residual_tol:
                fails.append(f"{entry.name}: poisson deg {k}")
        if len(b.dims) > 1 and b.dims[1]:
            mx = dynamics.maxwell_solve(b, rng.normal(size=b.dims[1]))
            worst["residual"] = max(worst["residual"], mx["residual"], mx["coulomb_residual"])
            if mx["residual"] >= residual_tol or not mx["dF_exact_zero"]:
                fails.append(f"{entry.name}: maxwell")
        gv = dynamics.gravity_solve(b, rng.normal(size=g.n))
        worst["residual"] = max(worst["residual"], gv["residual"])
        if gv["residual"] >= residual_tol:
            fails.append(f"{entry.name}: gravity")
    return _result(
        "dynamics",
        not fails,
        {"worst": {k: fmt(v) for k, v in worst.items()}, "failures": _fails(fails)},
    )


def harmonic0(b: OperatorBundle, u0):
    basis = b.harmonic_basis(0)
    return basis @ (basis.T @ np.asarray(u0, dtype=float))


_SHOOT_NAMES = (
    "complete_2",
    "complete_3",
    "complete_5",
    "cycle_4",
    "cycle_7",
    "path_5",
    "wheel_5",
    "octahedron",
    "cross_polytope_3",
    "icosahedron",
)


def check_shooting(cache: CorpusCache, seed: int = 0, shots_per_graph: int = 20, tol: float = 1e-6):
    rng = random.Random(seed + 701)
    fails = []
    shots = 0
    worst = 0.0
    chosen = [e for e in cache.entries if e.name in _SHOOT_NAMES]
    er_connected = [
        e for e in cache.entries if e.name.startswith("er_") and is_connected(e.graph)
    ]
    chosen += er_connected[:5]
    for entry in chosen:
        g = entry.graph
        b = cache.bundle(entry)
        for _ in range(shots_per_graph):
            x = rng.randrange(g.n)
            y = rng.randrange(g.n)
            t = 0.5 + 2.0 * rng.random()
            for attempt in range(5):
                try:
                    res = dynamics.hopf_rynov_shoot(b, x, y, t)
                    break
                except ResonantTimeError:
                    t += 0.0317
            else:
                fails.append(f"{entry.name}: resonance persisted")
                continue
            shots += 1
            worst = max(worst, res["replay_error"])
            if res["replay_error"] >= tol:
                fails.append(f"{entry.name}: replay {res['replay_error']:.2e}")
    return _result(
        "hopf_rynov",
        not fails,
        {"graphs": len(chosen), "shots": shots, "worst_replay_error": fmt(worst), "failures": _fails(fails)},
    )


def check_toda(cache: CorpusCache, t_end: float = 10.0, dt: float = 1e-3, tol: float = 1e-6):
    fails = []
    drifts = {}
    for name in ("complete_2", "cycle_4", "complete_3"):
        entry = _find(cache, name)
        if entry is None:
            continue
        b = cache.bundle(entry)
        state = dynamics.toda_lax_deform(b, t_end, dt)
        drift = max(state.spectral_drifts)
        drifts[name] = fmt(drift)
        if drift >= tol:
            fails.append(f"{name}: drift {drift:.2e}")
        if name == "cycle_4":
            if not (state.diag_norms[-1] > state.diag_norms[0] and state.offdiag_norms[-1] < state.offdiag_norms[0]):
                fails.append("cycle_4: diagonal/off-diagonal trend")
    return _result("toda_lax", not fails, {"drifts": drifts, "failures": _fails(fails)})


# 17 ----------------------------------------------------------------------------

def check_zeta(n_small: int = 10, n_large: int = 100, root_tol: float = 1e-8):
    fails = []
    medians = {}
    for n in (n_small, n_large):
        b = bundle_for_graph(cycle_graph(n))
        roots = zeta_roots(b, (0.0, 1.0), (0.0, 30.0), root_tol=root_tol)
        if not roots:
            fails.append(f"cycle_{n}: no roots found")
            continue
        bad = [r for r in roots if abs(zeta(b, r)) >= root_tol]
        if bad:
            fails.append(f"cycle_{n}: unverified roots")
        medians[f"cycle_{n}"] = fmt(float(np.median([abs(r.real - 0.5) for r in roots])))
        medians[f"cycle_{n}_roots"] = len(roots)
    if not fails:
        if not medians[f"cycle_{n_large}"] < medians[f"cycle_{n_small}"]:
            fails.append("median |Re - 1/2| did not shrink")
    return _result("zeta_trend", not fails, {"medians": medians, "failures": _fails(fails)})


# 18 ----------------------------------------------------------------------------

def check_orbital(**kwargs):
    reports = orbital.claim_suite(**kwargs)
    fails = [r["claim"] for r in reports if not r["passed"]]
    return _result(
        "orbital",
        not fails,
        {
            "claims": {
                r["claim"]: {"checked": r["checked"], "passed": r["passed"]} for r in reports
            },
            "failures": _fails(fails),
        },
    )


# 19 ----------------------------------------------------------------------------

def check_dimension(seed: int = 0, samples: int = 10000):
    from .graphs import complete_graph, random_er

    fails = []
    for n in range(0, 7):
        val = geometry.inductive_dimension(complete_graph(n + 1)).graph
        if val != n:
            fails.append(f"complete_{n + 1}: dim {val}")
    poly = geometry.expected_dimension_polynomial(6)
    predicted = float(geometry.poly_eval(poly, Fraction(1, 2)))
    dims = []
    for i in range(samples):
        g = random_er(6, 0.5, seed * 100003 + i)
        dims.append(float(geometry.inductive_dimension(g).graph))
    mean = float(np.mean(dims))
    se = float(np.std(dims, ddof=1) / np.sqrt(samples))
    ok = abs(mean - predicted) <= 3 * se
    if not ok:
        fails.append(f"monte carlo: mean {mean:.4f} vs d_6(1/2) {predicted:.4f} (3se={3*se:.4f})")
    details = {
        "d6_half": fmt(predicted),
        "mc_mean": fmt(mean),
        "mc_3se": fmt(3 * se),
        "failures": _fails(fails),
    }
    return _result("dimension", not fails, details)


# registry -----------------------------------------------------------------------

CORPUS_CHECKS = {
    "gauss_bonnet": check_gauss_bonnet,
    "poincare_hopf": check_poincare_hopf,
    "index_expectation": check_index_expectation,
    "lefschetz": check_lefschetz,
    "brouwer": check_brouwer,
    "mckean_singer": check_mckean_singer,
    "hodge": check_hodge,
    "lusternik": check_lusternik,
    "kirchhoff": check_kirchhoff,
    "chebotarev": check_chebotarev,
    "euler_poincare": check_euler_poincare,
    "stokes": check_stokes,
    "riemann_roch": check_riemann_roch,
    "riemann_hurwitz": check_riemann_hurwitz,
    "morse": check_morse,
    "flatness_bonnet": check_flatness_bonnet,
    "dynamics": check_dynamics,
    "hopf_rynov": check_shooting,
    "toda_lax": check_toda,
}

GLOBAL_CHECKS = {
    "zeta_trend": check_zeta,
    "orbital": check_orbital,
    "dimension": check_dimension,
}

ALL_CHECK_IDS = tuple(list(CORPUS_CHECKS) + list(GLOBAL_CHECKS))


def run_suite(cache: CorpusCache, seed: int = 0, only=None, orbital_kwargs=None):
    """Run the named checks (all by default); returns the result list."""
    wanted = set(only) if only else set(ALL_CHECK_IDS)
    unknown = wanted - set(ALL_CHECK_IDS)
    if unknown:
        raise ValueError(f"unknown check ids: {sorted(unknown)}")
    results = []
    for check_id in ALL_CHECK_IDS:
        if check_id not in wanted:
            continue
        if check_id in CORPUS_CHECKS:
            fn = CORPUS_CHECKS[check_id]
            if check_id in ("poincare_hopf", "index_expectation", "stokes", "riemann_roch", "morse", "dynamics", "hopf_rynov", "lusternik"):
                results.append(fn(cache, seed=seed))
            else:
                results.append(fn(cache))
        elif check_id == "orbital":
            results.append(check_orbital(**(orbital_kwargs or {})))
        elif check_id == "dimension":
            results.append(check_dimension(seed=seed))
        else:
            results.append(GLOBAL_CHECKS[check_id]())
    return results
