"""Whitney (clique) simplicial structure, exterior derivative, chains, cup product.

Simplices of dimension k are the (k+1)-vertex complete subgraphs, stored as
ascending vertex tuples; the ascending order is the fixed orientation.  All
incidence matrices are integer valued and satisfy d_{k+1} d_k = 0 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceededError
from .graphs import Graph

DEFAULT_SIMPLEX_BUDGET = 10**6


@dataclass(frozen=True)
class SimplicialStructure:
    graph: Graph
    simplices: tuple        # per dimension: tuple of ascending vertex tuples
    index: tuple            # per dimension: dict tuple -> ordinal
    d: tuple                # per dimension k: int matrix of shape (v_{k+1}, v_k)

    @property
    def dims(self):
        return tuple(len(s) for s in self.simplices)

    @property
    def top_dim(self) -> int:
        return len(self.simplices) - 1

    def total_simplices(self) -> int:
        return sum(self.dims)


@dataclass(frozen=True)
class Form:
    """Scalar coefficients on oriented k-simplices (ascending-tuple order)."""

    degree: int
    values: tuple

    def check(self, s: SimplicialStructure):
        expected = len(s.simplices[self.degree]) if self.degree <= s.top_dim else 0
        if len(self.values) != expected:
            raise ValueError(
                f"form of degree {self.degree} needs {expected} coefficients, got {len(self.values)}"
            )


@dataclass(frozen=True)
class Chain:
    """Integer combination of oriented k-simplices."""

    degree: int
    values: tuple

    def check(self, s: SimplicialStructure):
        expected = len(s.simplices[self.degree]) if self.degree <= s.top_dim else 0
        if len(self.values) != expected:
            raise ValueError(
                f"chain of degree {self.degree} needs {expected} coefficients, got {len(self.values)}"
            )


def _enumerate_cliques(g: Graph, max_dim, budget):
    """All cliques as ascending tuples, grouped by dimension, in lex order."""
    if g.n == 0:
        return []
    sims = [[(v,) for v in range(g.n)]]
    count = g.n
    if count > budget:
        raise BudgetExceededError(
            f"simplex budget {budget} exceeded at dimension 0", dimension_reached=0
        )
    masks = g.masks
    k = 0
    while max_dim is None or k < max_dim:
        nxt = []
        above = sims[k]
        if not above:
            break
        for s in above:
            last = s[-1]
            cand = masks[last]
            for v in s[:-1]:
                cand &= masks[v]
            cand >>= last + 1
            base = last + 1
            while cand:
                low = cand & -cand
                w = base + low.bit_length() - 1
                cand ^= low
                nxt.append(s + (w,))
        if not nxt:
            break
        count += len(nxt)
        if count > budget:
            raise BudgetExceededError(
                f"simplex budget {budget} exceeded at dimension {k + 1}",
                dimension_reached=k + 1,
            )
        sims.append(nxt)
        k += 1
    return sims


def clique_counts(g: Graph, max_dim=None, budget=DEFAULT_SIMPLEX_BUDGET):
    """f-vector (v_0, v_1, ...) without building matrices; cheap counting path."""
    if g.n == 0:
        return ()
    masks = g.masks
    counts = [0]
    total = 0

    def rec(cand: int, depth: int):
        nonlocal total
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            while len(counts) <= depth:
                counts.append(0)
            counts[depth] += 1
            total += 1
            if total > budget:
                raise BudgetExceededError(
                    f"simplex budget {budget} exceeded at dimension {depth}",
                    dimension_reached=depth,
                )
            if max_dim is None or depth < max_dim:
                rec(masks[v] & cand, depth + 1)

    rec((1 << g.n) - 1, 0)
    return tuple(counts)


def whitney_complex(g: Graph, max_dim=None, budget=DEFAULT_SIMPLEX_BUDGET) -> SimplicialStructure:
    """Enumerate all complete subgraphs and assemble the signed d_k matrices."""
    sims = _enumerate_cliques(g, max_dim, budget)
    sims = [tuple(level) for level in sims]
    index = tuple({s: i for i, s in enumerate(level)} for level in sims)
    dmats = []
    for k in range(len(sims)):
        rows = len(sims[k + 1]) if k + 1 < len(sims) else 0
        mat = np.zeros((rows, len(sims[k])), dtype=np.int64)
        if rows:
            idx = index[k]
            for r, s in enumerate(sims[k + 1]):
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    mat[r, idx[face]] = -1 if i % 2 else 1
        dmats.append(mat)
    return SimplicialStructure(g, tuple(sims), index, tuple(dmats))


def euler_characteristic(s: SimplicialStructure) -> int:
    return sum((-1) ** k * v for k, v in enumerate(s.dims))


def euler_characteristic_graph(g: Graph, budget=DEFAULT_SIMPLEX_BUDGET) -> int:
    """chi from clique counts alone (no matrices)."""
    return sum((-1) ** k * v for k, v in enumerate(clique_counts(g, budget=budget)))


def exterior_derivative(s: SimplicialStructure, k: int):
    """Signed incidence matrix d_k; beyond the top dimension a zero-row matrix."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k <= s.top_dim:
        return s.d[k]
    return np.zeros((0, 0), dtype=np.int64)


def boundary_matrix(s: SimplicialStructure, k: int):
    """Boundary operator on (k+1)-chains: the transpose of d_k."""
    return exterior_derivative(s, k).T


def d_apply(s: SimplicialStructure, form: Form) -> Form:
    """Exterior derivative of a form, exact when coefficients are exact."""
    form.check(s)
    k = form.degree
    if k >= s.top_dim:
        return Form(k + 1, ())
    mat = s.d[k]
    vals = []
    for r in range(mat.shape[0]):
        acc = 0
        row = mat[r]
        for c in np.nonzero(row)[0]:
            acc += int(row[c]) * form.values[c]
        vals.append(acc)
    return Form(k + 1, tuple(vals))


def stokes_pairing(s: SimplicialStructure, chain: Chain, form: Form):
    """Return (<chain, d form>, <boundary chain, form>); the two sides agree."""
    chain.check(s)
    form.check(s)
    if chain.degree != form.degree + 1:
        raise ValueError("chain degree must exceed form degree by one")
    df = d_apply(s, form)
    lhs = sum(c * f for c, f in zip(chain.values, df.values))
    bmat = s.d[form.degree]
    boundary = [0] * len(s.simplices[form.degree])
    for r, c in enumerate(chain.values):
        if c:
            row = bmat[r]
            for j in np.nonzero(row)[0]:
                boundary[j] += c * int(row[j])
    rhs = sum(b * f for b, f in zip(boundary, form.values))
    return lhs, rhs


def cup_product(s: SimplicialStructure, f: Form, g: Form) -> Form:
    """(f cup g)(x_0..x_{p+q}) = f(x_0..x_p) g(x_p..x_{p+q}) on ascending tuples."""
    f.check(s)
    g.check(s)
    p, q = f.degree, g.degree
    m = p + q
    if m > s.top_dim:
        return Form(m, ())
    fidx = s.index[p]
    gidx = s.index[q]
    vals = []
    for simplex in s.simplices[m]:
        front = simplex[: p + 1]
        back = simplex[p:]
        vals.append(f.values[fidx[front]] * g.values[gidx[back]])
    return Form(m, tuple(vals))


def zero_form(s: SimplicialStructure, degree: int) -> Form:
    size = len(s.simplices[degree]) if degree <= s.top_dim else 0
    return Form(degree, (Fraction(0),) * size)


def d_matrix_triplets(s: SimplicialStructure, k: int) -> str:
    """Coordinate-triplet text export: one 'row col value' line per entry."""
    mat = exterior_derivative(s, k)
    lines = []
    rows, cols = np.nonzero(mat)
    for r, c in zip(rows, cols):
        lines.append(f"{r} {c} {int(mat[r, c])}")
    return "\n".join(lines) + ("\n" if lines else "")
