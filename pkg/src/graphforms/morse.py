"""Homotopy reductions, Poincare-Hopf indices, Morse filtrations, and the
cup / tcap / crit triple.

Contractibility is decided by greedy sphere removal with randomized restarts
and a cohomology obstruction fallback; verdicts are memoized by exact graph
identity, which keeps the subset dynamic programs for crit and tcap cheap.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SizeLimitError
from .graphs import Graph, components, induced_subgraph, unit_sphere
from .complexes import clique_counts, whitney_complex
from .spectral import OperatorBundle, betti_rank_oracle

_CONTRACT_MEMO: dict = {}


@dataclass(frozen=True)
class HomotopyVerdict:
    verdict: str                 # "yes" | "no" | "unknown"
    witness: tuple | None        # vertex removal order down to K_1
    obstruction: tuple | None    # (k, b_k) with b_k != point value


def clear_caches():
    _CONTRACT_MEMO.clear()


def _chi_graph(g: Graph) -> int:
    return sum((-1) ** k * v for k, v in enumerate(clique_counts(g)))


def is_contractible(g: Graph, restarts: int = 20, seed: int = 0) -> HomotopyVerdict:
    """Three-valued contractibility with a replayable witness on success."""
    key = g.key()
    hit = _CONTRACT_MEMO.get(key)
    if hit is not None:
        return hit
    verdict = _decide_contractible(g, restarts, seed)
    _CONTRACT_MEMO[key] = verdict
    return verdict


def _decide_contractible(g: Graph, restarts: int, seed: int) -> HomotopyVerdict:
    if g.n == 0:
        return HomotopyVerdict("no", None, (0, 0))
    if g.n == 1:
        return HomotopyVerdict("yes", (), None)
    comps = components(g)
    if len(comps) > 1:
        return HomotopyVerdict("no", None, (0, len(comps)))
    rng = random.Random(seed)
    for attempt in range(max(1, restarts)):
        h = g
        to_orig = list(range(g.n))
        removed = []
        while h.n > 1:
            order = list(range(h.n))
            if attempt > 0:
                rng.shuffle(order)
            pick = None
            for v in order:
                sphere, _ = unit_sphere(h, v)
                if sphere.n and is_contractible(sphere, restarts, seed).verdict == "yes":
                    pick = v
                    break
            if pick is None:
                break
            removed.append(to_orig[pick])
            keep = [v for v in range(h.n) if v != pick]
            h, vmap = induced_subgraph(h, keep)
            to_orig = [to_orig[i] for i in vmap]
        if h.n == 1:
            return HomotopyVerdict("yes", tuple(removed), None)
    betti = betti_rank_oracle(whitney_complex(g))
    point = tuple([1] + [0] * (len(betti) - 1))
    if betti != point:
        for k, b in enumerate(betti):
            if b != (1 if k == 0 else 0):
                return HomotopyVerdict("no", None, (k, b))
    return HomotopyVerdict("unknown", None, None)


def replay_witness(g: Graph, witness) -> bool:
    """Apply a removal witness; True iff it lands on K_1 through valid steps."""
    h = g
    to_orig = list(range(g.n))
    for target in witness:
        try:
            local = to_orig.index(target)
        except ValueError:
            return False
        sphere, _ = unit_sphere(h, local)
        if sphere.n == 0 or is_contractible(sphere).verdict != "yes":
            return False
        keep = [v for v in range(h.n) if v != local]
        h, vmap = induced_subgraph(h, keep)
        to_orig = [to_orig[i] for i in vmap]
    return h.n == 1


# --- Poincare-Hopf ----------------------------------------------------------

def _check_injective(g: Graph, f):
    vals = list(f)
    if len(vals) != g.n:
        raise ValueError(f"function needs {g.n} values")
    if len(set(vals)) != g.n:
        raise ValueError("function must be injective")
    return vals


def _chi_mask(g: Graph, mask: int, memo: dict) -> int:
    """Euler characteristic of the induced subgraph on a vertex bitmask."""
    val = memo.get(mask)
    if val is not None:
        return val
    masks = g.masks
    chi = 0

    def rec(cand: int, sign: int):
        nonlocal chi
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            chi += sign
            rec(masks[v] & cand, -sign)

    rec(mask, 1)
    memo[mask] = chi
    return chi


def ph_index(g: Graph, f, x: int, _memo=None) -> int:
    """i_f(x) = 1 - chi(S^-(x)) with S^-(x) the sub-level part of the sphere."""
    vals = _check_injective(g, f)
    memo = _memo if _memo is not None else {}
    lower = 0
    for w in g.neighbors(x):
        if vals[w] < vals[x]:
            lower |= 1 << w
    return 1 - _chi_mask(g, lower, memo)


def ph_check(g: Graph, f):
    """(sum of indices, chi); Poincare-Hopf asserts the two agree."""
    vals = _check_injective(g, f)
    memo = {}
    total = sum(ph_index(g, vals, x, _memo=memo) for x in range(g.n))
    return total, _chi_graph(g)


@dataclass(frozen=True)
class IndexExpectation:
    mean: tuple          # per vertex: Fraction (exhaustive) or float (sampled)
    stderr: tuple | None
    exhaustive: bool
    samples: int


def index_expectation(g: Graph, mode: str = "exhaustive", samples: int = 10000, seed: int = 0) -> IndexExpectation:
    """Average of i_f(x) over vertex orderings, exact or Monte Carlo."""
    memo = {}
    if mode == "exhaustive":
        if g.n > 7:
            raise SizeLimitError("exhaustive index expectation limited to 7 vertices")
        sums = [0] * g.n
        count = 0
        for perm in itertools.permutations(range(g.n)):
            count += 1
            seen = 0
            for v in perm:
                lower = g.masks[v] & seen
                sums[v] += 1 - _chi_mask(g, lower, memo)
                seen |= 1 << v
        return IndexExpectation(
            tuple(Fraction(s, count) for s in sums), None, True, count
        )
    if mode != "samples":
        raise ValueError("mode must be 'exhaustive' or 'samples'")
    rng = random.Random(seed)
    order = list(range(g.n))
    sums = [0.0] * g.n
    sq = [0.0] * g.n
    for _ in range(samples):
        rng.shuffle(order)
        seen = 0
        for v in order:
            lower = g.masks[v] & seen
            idx = 1 - _chi_mask(g, lower, memo)
            sums[v] += idx
            sq[v] += idx * idx
            seen |= 1 << v
    means = [s / samples for s in sums]
    stderr = [
        ((sq[v] / samples - means[v] ** 2) / max(samples - 1, 1)) ** 0.5
        for v in range(g.n)
    ]
    return IndexExpectation(tuple(means), tuple(stderr), False, samples)


# --- critical points and crit ----------------------------------------------

def critical_points(g: Graph, f):
    """Vertices whose sub-level sphere is empty or not contractible."""
    vals = _check_injective(g, f)
    out = []
    for x in range(g.n):
        lower = [w for w in g.neighbors(x) if vals[w] < vals[x]]
        if not lower:
            out.append(x)
            continue
        sub, _ = induced_subgraph(g, lower)
        if is_contractible(sub).verdict != "yes":
            out.append(x)
    return tuple(out)


def _is_critical_step(g: Graph, v: int, prev_mask: int, cache: dict):
    """(critical?, decided?) for adding v on top of the vertex set prev_mask."""
    lower = g.masks[v] & prev_mask
    if lower == 0:
        return True, True
    key = lower
    hit = cache.get(key)
    if hit is None:
        vs = _bits_list(lower)
        sub, _ = induced_subgraph(g, vs)
        verdict = is_contractible(sub).verdict
        hit = (verdict != "yes", verdict != "unknown")
        cache[key] = hit
    return hit


def _bits_list(mask: int):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def crit(g: Graph, exact_limit: int = 12, samples: int = 200, seed: int = 0):
    """Minimal number of critical points over injective functions.

    Exact (subset dynamic program over insertion orders) up to ``exact_limit``
    vertices; beyond that a randomized upper bound, certified exact only when
    it hits the theoretical floor.
    """
    if g.n == 0:
        raise ValueError("crit needs a nonempty graph")
    cache: dict = {}
    decided = True
    if g.n <= exact_limit:
        size = 1 << g.n
        best = [0] * size
        for mask in range(1, size):
            best_here = None
            rest = mask
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                critical, ok = _is_critical_step(g, v, mask ^ low, cache)
                decided = decided and ok
                cand = best[mask ^ low] + (1 if critical else 0)
                if best_here is None or cand < best_here:
                    best_here = cand
            best[mask] = best_here
        return best[size - 1], decided
    rng = random.Random(seed)
    best_val = None
    order = list(range(g.n))
    for _ in range(samples):
        rng.shuffle(order)
        count = 0
        seen = 0
        for v in order:
            critical, ok = _is_critical_step(g, v, seen, cache)
            decided = decided and ok
            count += 1 if critical else 0
            seen |= 1 << v
        if best_val is None or count < best_val:
            best_val = count
    exact = False
    if best_val == 1:
        exact = True  # a single-critical-point order certifies contractibility
    elif best_val == 2 and is_contractible(g).verdict == "no":
        exact = True  # non-contractible graphs need at least 2 critical points
    return best_val, exact and decided


# --- Morse filtrations ------------------------------------------------------

@dataclass(frozen=True)
class MorseReport:
    order: tuple            # vertices by increasing f
    indices: tuple          # i_f per step (aligned with order)
    betti_steps: tuple      # Betti vector after each insertion
    morse_index: tuple      # m(x) per step, None when no handle was attached
    counts: tuple           # c_m
    is_morse: bool
    betti: tuple            # final Betti vector

    def to_json(self) -> str:
        return json.dumps(
            {
                "order": list(self.order),
                "indices": list(self.indices),
                "betti_steps": [list(b) for b in self.betti_steps],
                "morse_index": [m for m in self.morse_index],
                "counts": list(self.counts),
                "is_morse": self.is_morse,
                "betti": list(self.betti),
            },
            sort_keys=True,
        )


def _padded(vec, length):
    return tuple(vec) + (0,) * (length - len(vec))


def morse_filtration(g: Graph, f) -> MorseReport:
    """Insert vertices by increasing f, tracking exact Betti after each step.

    A step is a Morse step when the Betti vector changes in at most one entry
    and by at most one; raising b_m is a handle of index m, lowering b_m a
    handle of index m+1.
    """
    vals = _check_injective(g, f)
    order = sorted(range(g.n), key=lambda v: vals[v])
    chi_memo: dict = {}
    prev_betti: tuple = ()
    betti_steps = []
    indices = []
    morse_index = []
    is_morse = True
    prefix: list = []
    seen_mask = 0
    for v in order:
        lower = g.masks[v] & seen_mask
        indices.append(1 - _chi_mask(g, lower, chi_memo))
        prefix.append(v)
        seen_mask |= 1 << v
        sub, _ = induced_subgraph(g, prefix)
        betti = betti_rank_oracle(whitney_complex(sub))
        length = max(len(betti), len(prev_betti))
        delta = [
            a - b for a, b in zip(_padded(betti, length), _padded(prev_betti, length))
        ]
        changed = [(m, d) for m, d in enumerate(delta) if d != 0]
        if not changed:
            morse_index.append(None)
        elif len(changed) == 1 and abs(changed[0][1]) == 1:
            m, d = changed[0]
            morse_index.append(m if d > 0 else m + 1)
        else:
            morse_index.append(None)
            is_morse = False
        betti_steps.append(betti)
        prev_betti = betti
    top = max((m for m in morse_index if m is not None), default=0)
    counts = [0] * (top + 1)
    for m in morse_index:
        if m is not None:
            counts[m] += 1
    return MorseReport(
        tuple(order),
        tuple(indices),
        tuple(betti_steps),
        tuple(morse_index),
        tuple(counts),
        is_morse,
        prev_betti,
    )


def morse_inequalities_check(report: MorseReport):
    """Weak and strong Morse inequalities for a Morse filtration."""
    if not report.is_morse:
        return {"is_morse": False, "weak": None, "strong": None}
    length = max(len(report.betti), len(report.counts))
    b = _padded(report.betti, length)
    c = _padded(report.counts, length)
    chi = sum((-1) ** k * bk for k, bk in enumerate(b))
    chi_c = sum((-1) ** k * ck for k, ck in enumerate(c))
    weak = chi == chi_c and all(b[m] <= c[m] for m in range(length))
    strong = True
    for m in range(length):
        lhs = sum((-1) ** k * b[m - k] for k in range(m + 1))
        rhs = sum((-1) ** k * c[m - k] for k in range(m + 1))
        if lhs > rhs:
            strong = False
            break
    return {"is_morse": True, "weak": weak, "strong": strong}


# --- Ljusternik-Schnirelmann trio -------------------------------------------

def _coverage_mask(g: Graph, vertex_mask: int) -> int:
    """Items covered by an induced subgraph: n vertex bits then m edge bits."""
    cov = vertex_mask
    for i, (u, v) in enumerate(g.edges):
        if vertex_mask >> u & 1 and vertex_mask >> v & 1:
            cov |= 1 << (g.n + i)
    return cov


def _contractible_masks(g: Graph):
    """All vertex subsets whose induced subgraph is contractible; with flag
    telling whether every subset verdict was decided."""
    out = []
    decided = True
    for mask in range(1, 1 << g.n):
        sub, _ = induced_subgraph(g, _bits_list(mask))
        verdict = is_contractible(sub).verdict
        if verdict == "yes":
            out.append(mask)
        elif verdict == "unknown":
            decided = False
    return out, decided


def tcap_exact(g: Graph, limit: int = 10):
    """Minimal number of contractible induced subgraphs covering all vertices
    and edges; returns (value, exact flag)."""
    if g.n == 0:
        raise ValueError("tcap needs a nonempty graph")
    if g.n > limit:
        raise SizeLimitError(f"exact tcap limited to {limit} vertices")
    masks, decided = _contractible_masks(g)
    full = (1 << (g.n + g.m)) - 1
    # only maximal contractible sets matter for covering
    masks.sort(key=lambda m: -m.bit_count())
    maximal = []
    for m in masks:
        if not any(m != other and m & other == m for other in masks):
            maximal.append(m)
    covers = [(_coverage_mask(g, m), m) for m in maximal]

    best = None

    def dfs(covered: int, used: int, chosen: tuple):
        nonlocal best
        if best is not None and used >= best:
            return
        if covered == full:
            best = used
            return
        # branch on the lowest uncovered item
        missing = (~covered) & full
        item = (missing & -missing).bit_length() - 1
        for cov, m in covers:
            if cov >> item & 1:
                dfs(covered | cov, used + 1, chosen + (m,))

    dfs(0, 0, ())
    if best is None:
        raise AssertionError("no cover found; singletons should always cover")
    return best, decided


def tcap_upper(g: Graph, seed: int = 0) -> int:
    """Greedy cover by grown contractible induced subgraphs (an upper bound)."""
    if g.n == 0:
        raise ValueError("tcap needs a nonempty graph")
    rng = random.Random(seed)
    full = (1 << (g.n + g.m)) - 1
    covered = 0
    count = 0
    while covered != full:
        missing = (~covered) & full
        item = (missing & -missing).bit_length() - 1
        start = item if item < g.n else g.edges[item - g.n][0]
        current = 1 << start
        improved = True
        while improved:
            improved = False
            order = list(range(g.n))
            rng.shuffle(order)
            for w in order:
                if current >> w & 1:
                    continue
                cand = current | (1 << w)
                sub, _ = induced_subgraph(g, _bits_list(cand))
                if is_contractible(sub).verdict == "yes":
                    current = cand
                    improved = True
        covered |= _coverage_mask(g, current)
        count += 1
        if count > g.n:
            raise AssertionError("greedy cover failed to make progress")
    return count


def cup_length_lower(bundle: OperatorBundle, trials: int = 200, seed: int = 0) -> int:
    """Certified lower bound for the cup length.

    Length 1: some positive-degree harmonic form exists.  Length 2: a random
    search for products f cup g (small random integer forms plus harmonic
    combinations) that are closed with nonzero harmonic projection.  The
    search never attempts lengths above 2.
    """
    s = bundle.structure
    from .complexes import Form, cup_product, d_apply  # lightweight import

    betti = [int(np.sum(w < bundle.kernel_tol)) for w, _ in bundle.block_eigs]
    positive = [k for k in range(1, len(betti)) if betti[k] > 0]
    if not positive:
        return 0
    best = 1
    rng = random.Random(seed)
    top = s.top_dim
    targets = [
        (p, q)
        for p in range(1, top)
        for q in range(1, top)
        if p + q <= top and betti[p + q] > 0
    ]
    if not targets:
        return best
    for p, q in targets:
        h_target = bundle.harmonic_basis(p + q)
        if h_target.shape[1] == 0:
            continue
        for trial in range(trials):
            fv = _random_form(bundle, p, rng, trial)
            gv = _random_form(bundle, q, rng, trial)
            prod = cup_product(s, Form(p, tuple(fv)), Form(q, tuple(gv)))
            vec = np.array([float(x) for x in prod.values])
            scale = 1.0 + float(np.linalg.norm(vec))
            dvec = d_apply(s, prod)
            closed = all(x == 0 for x in dvec.values)
            if closed and np.linalg.norm(h_target.T @ vec) > 1e-8 * scale:
                return 2
    return best


def _random_form(bundle: OperatorBundle, degree: int, rng: random.Random, trial: int):
    size = bundle.dims[degree]
    if trial % 2 == 0:
        return [rng.randint(-3, 3) for _ in range(size)]
    basis = bundle.harmonic_basis(degree)
    if basis.shape[1] == 0:
        return [rng.randint(-3, 3) for _ in range(size)]
    combo = sum(rng.randint(-3, 3) * basis[:, j] for j in range(basis.shape[1]))
    return [float(x) for x in combo]


def ls_triple_check(g: Graph, tcap_limit: int = 10, crit_limit: int = 12, seed: int = 0, bundle=None):
    """cup_lower <= tcap <= crit with exactness flags."""
    if bundle is None:
        from .spectral import bundle_for_graph

        bundle = bundle_for_graph(g)
    cup = cup_length_lower(bundle, seed=seed)
    if g.n <= tcap_limit:
        tcap_val, tcap_exact_flag = tcap_exact(g, limit=tcap_limit)
    else:
        tcap_val, tcap_exact_flag = tcap_upper(g, seed=seed), False
    crit_val, crit_exact_flag = crit(g, exact_limit=crit_limit, seed=seed)
    all_exact = tcap_exact_flag and crit_exact_flag
    holds = (cup <= tcap_val <= crit_val) if all_exact else None
    return {
        "cup_lower": cup,
        "tcap": tcap_val,
        "tcap_exact": tcap_exact_flag,
        "crit": crit_val,
        "crit_exact": crit_exact_flag,
        "inequalities_hold": holds,
    }
