"""Dirac operator D = d + d*, form Laplacian L = D^2, and spectral identities.

Integer-exact routes (Betti ranks, tree and forest counts, Cauchy-Binet) live
alongside floating-point spectral routes (Hodge kernels, heat supertrace,
zeta); the paired checks in the test suite compare the two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SizeLimitError
from .exact import frac_det, int_det, int_rank
from .graphs import Graph, is_connected
from .complexes import SimplicialStructure, whitney_complex

MAX_DENSE_SIZE = 2000
KERNEL_TOL_SCALE = 1e-9


@dataclass(frozen=True)
class OperatorBundle:
    structure: SimplicialStructure
    dims: tuple            # v_k per degree
    offsets: tuple         # start index of each degree block in the big space
    D_int: np.ndarray      # (N, N) int64, symmetric
    L_int: np.ndarray      # D^2, exact integers, block diagonal by degree
    blocks: tuple          # per degree: float L_k
    block_eigs: tuple      # per degree: (eigenvalues, eigenvectors) of L_k
    dirac_eigs: tuple      # (eigenvalues, eigenvectors) of D
    kernel_tol: float

    @property
    def size(self) -> int:
        return int(self.D_int.shape[0])

    def block_slice(self, k: int) -> slice:
        return slice(self.offsets[k], self.offsets[k] + self.dims[k])

    def harmonic_basis(self, k: int) -> np.ndarray:
        """Orthonormal basis of ker L_k as columns (possibly zero columns)."""
        w, v = self.block_eigs[k]
        return v[:, w < self.kernel_tol]

    def embed(self, k: int, values) -> np.ndarray:
        """Place a degree-k coefficient vector into the full form space."""
        out = np.zeros(self.size)
        out[self.block_slice(k)] = np.asarray(values, dtype=float)
        return out


def dirac_and_laplacian(s: SimplicialStructure, max_size: int = MAX_DENSE_SIZE) -> OperatorBundle:
    """Assemble D from the d_k blocks and verify L = D^2 is block diagonal."""
    dims = s.dims
    n_total = sum(dims)
    if n_total > max_size:
        raise SizeLimitError(
            f"operator size {n_total} exceeds the dense limit {max_size}"
        )
    offsets = []
    acc = 0
    for v in dims:
        offsets.append(acc)
        acc += v
    offsets = tuple(offsets)
    D = np.zeros((n_total, n_total), dtype=np.int64)
    for k in range(len(dims) - 1):
        dk = s.d[k]
        r0, c0 = offsets[k + 1], offsets[k]
        D[r0 : r0 + dk.shape[0], c0 : c0 + dk.shape[1]] = dk
        D[c0 : c0 + dk.shape[1], r0 : r0 + dk.shape[0]] = dk.T
    L = D @ D
    for j in range(len(dims)):
        for k in range(len(dims)):
            if j == k:
                continue
            blk = L[offsets[j] : offsets[j] + dims[j], offsets[k] : offsets[k] + dims[k]]
            if blk.size and np.any(blk):
                raise AssertionError("form Laplacian has nonzero off-degree block")
    blocks = []
    eigs = []
    for k in range(len(dims)):
        lk = L[offsets[k] : offsets[k] + dims[k], offsets[k] : offsets[k] + dims[k]].astype(float)
        blocks.append(lk)
        if dims[k]:
            w, v = np.linalg.eigh(lk)
        else:
            w, v = np.zeros(0), np.zeros((0, 0))
        eigs.append((w, v))
    if n_total:
        dw, dv = np.linalg.eigh(D.astype(float))
    else:
        dw, dv = np.zeros(0), np.zeros((0, 0))
    radius = max((float(np.max(np.abs(w))) if w.size else 0.0 for w, _ in eigs), default=0.0)
    tol = KERNEL_TOL_SCALE * (1.0 + radius)
    return OperatorBundle(
        s, dims, offsets, D, L, tuple(blocks), tuple(eigs), (dw, dv), tol
    )


def bundle_for_graph(g: Graph, max_size: int = MAX_DENSE_SIZE) -> OperatorBundle:
    return dirac_and_laplacian(whitney_complex(g), max_size=max_size)


@dataclass(frozen=True)
class SpectrumReport:
    block_eigenvalues: tuple   # per degree, ascending
    kernel_dims: tuple
    dirac_eigenvalues: tuple
    warnings: tuple            # per degree: smallest nonzero eigenvalue < 10*tol


def spectrum_report(b: OperatorBundle) -> SpectrumReport:
    evs, kdims, warns = [], [], []
    for w, _ in b.block_eigs:
        w = np.sort(w)
        evs.append(tuple(float(x) for x in w))
        kernel = int(np.sum(w < b.kernel_tol))
        kdims.append(kernel)
        nonzero = w[w >= b.kernel_tol]
        warns.append(bool(nonzero.size and nonzero[0] < 10 * b.kernel_tol))
    return SpectrumReport(
        tuple(evs), tuple(kdims), tuple(float(x) for x in np.sort(b.dirac_eigs[0])), tuple(warns)
    )


def betti_hodge(b: OperatorBundle):
    """b_k = dim ker L_k counted under the scale-aware tolerance."""
    report = spectrum_report(b)
    return report.kernel_dims, report.warnings


def betti_rank_oracle(s: SimplicialStructure):
    """Exact Betti numbers: b_k = v_k - rank(d_k) - rank(d_{k-1}) over Q."""
    dims = s.dims
    ranks = [int_rank(s.d[k].tolist()) if s.d[k].size else 0 for k in range(len(dims))]
    betti = []
    for k, v in enumerate(dims):
        r_up = ranks[k]
        r_down = ranks[k - 1] if k >= 1 else 0
        betti.append(v - r_up - r_down)
    return tuple(betti)


def mckean_singer_supertrace(b: OperatorBundle, t: float) -> float:
    """str(exp(-t L)) = sum_k (-1)^k tr(exp(-t L_k))."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    total = 0.0
    for k, (w, _) in enumerate(b.block_eigs):
        total += (-1) ** k * float(np.sum(np.exp(-t * w)))
    return total


def pseudo_determinant(m) -> float:
    """Product of the nonzero eigenvalues of a symmetric matrix."""
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return 1.0
    w = np.linalg.eigvalsh(m)
    radius = float(np.max(np.abs(w))) if w.size else 0.0
    tol = KERNEL_TOL_SCALE * (1.0 + radius)
    nz = w[np.abs(w) > tol]
    return float(np.prod(nz)) if nz.size else 1.0


def graph_laplacian(g: Graph) -> np.ndarray:
    lap = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        lap[u, u] += 1
        lap[v, v] += 1
        lap[u, v] -= 1
        lap[v, u] -= 1
    return lap


@dataclass(frozen=True)
class TreeCount:
    count: int
    connected: bool
    damped_estimate: float  # det(P + L)/n with P_ij = 1/n


def spanning_tree_count(g: Graph) -> TreeCount:
    """Number of spanning trees: exact Laplacian cofactor, damped-det cross-check."""
    if g.n == 0:
        return TreeCount(0, False, 0.0)
    lap = graph_laplacian(g)
    if g.n == 1:
        return TreeCount(1, True, 1.0)
    connected = is_connected(g)
    minor = np.delete(np.delete(lap, 0, axis=0), 0, axis=1)
    count = int_det(minor.tolist())
    damped = float(np.linalg.det(lap.astype(float) + np.full((g.n, g.n), 1.0 / g.n))) / g.n
    if not connected:
        return TreeCount(0, False, damped)
    return TreeCount(count, True, damped)


def spanning_trees_exhaustive(g: Graph, limit: int = 8) -> int:
    """Literal enumeration of spanning trees (edge subsets of size n-1)."""
    if g.n > limit:
        raise SizeLimitError(f"exhaustive tree enumeration limited to n <= {limit}")
    if g.n == 0:
        return 0
    if g.n == 1:
        return 1
    count = 0
    for subset in itertools.combinations(g.edges, g.n - 1):
        parent = list(range(g.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            count += 1
    return count


def rooted_forest_count(g: Graph) -> int:
    """det(I + L), the number of rooted spanning forests."""
    lap = graph_laplacian(g)
    m = lap + np.eye(g.n, dtype=np.int64)
    return int_det(m.tolist())


def rooted_forests_exhaustive(g: Graph, limit: int = 6) -> int:
    """Enumerate acyclic edge subsets; each tree contributes a root choice."""
    if g.n > limit:
        raise SizeLimitError(f"exhaustive forest enumeration limited to n <= {limit}")
    total = 0
    m = g.m
    for bits in range(1 << m):
        parent = list(range(g.n))
        size = [1] * g.n

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for i in range(m):
            if bits >> i & 1:
                u, v = g.edges[i]
                ru, rv = find(u), find(v)
                if ru == rv:
                    ok = False
                    break
                parent[ru] = rv
                size[rv] += size[ru]
        if not ok:
            continue
        prod = 1
        for v in range(g.n):
            if find(v) == v:
                prod *= size[v]
        total += prod
    return total


def cauchy_binet_sum(f_mat, g_mat, x):
    """Both sides of det(1 + x F^T G) = sum_P x^{|P|} det(F_P) det(G_P).

    Returns (determinant side, minor side), computed independently with exact
    rational arithmetic.  The minor sum runs over all square subpatterns P.
    """
    f_rows = [list(map(Fraction, row)) for row in f_mat]
    g_rows = [list(map(Fraction, row)) for row in g_mat]
    n = len(f_rows)
    if len(g_rows) != n:
        raise ValueError("matrices must have the same shape")
    m = len(f_rows[0]) if n else 0
    if any(len(r) != m for r in f_rows) or any(len(r) != m for r in g_rows):
        raise ValueError("matrices must have the same shape")
    x = Fraction(x)
    ftg = [[sum(f_rows[i][a] * g_rows[i][b] for i in range(n)) for b in range(m)] for a in range(m)]
    det_side = frac_det(
        [[(Fraction(1) if a == b else Fraction(0)) + x * ftg[a][b] for b in range(m)] for a in range(m)]
    )
    minor_side = Fraction(1)  # empty pattern
    for k in range(1, min(n, m) + 1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(m), k):
                df = frac_det([[f_rows[i][j] for j in cols] for i in rows])
                if df == 0:
                    continue
                dg = frac_det([[g_rows[i][j] for j in cols] for i in rows])
                if dg == 0:
                    continue
                minor_side += x**k * df * dg
    return det_side, minor_side


def dirac_positive_eigenvalues(b: OperatorBundle) -> np.ndarray:
    w = b.dirac_eigs[0]
    # D eigenvalues square to L eigenvalues, so the kernel cut uses sqrt(tol)
    return np.sort(w[w > np.sqrt(b.kernel_tol)])


def zeta(b: OperatorBundle, s: complex) -> complex:
    """zeta(s) = sum over positive Dirac eigenvalues of lambda^(-s)."""
    lam = dirac_positive_eigenvalues(b)
    return complex(np.sum(np.exp(-s * np.log(lam))))


def zeta_roots(
    b: OperatorBundle,
    re_range=(0.0, 1.0),
    im_range=(0.0, 30.0),
    grid: float = 0.05,
    root_tol: float = 1e-8,
):
    """Roots of the Dirac zeta inside a rectangle: grid scan plus Newton polish.

    Every returned root satisfies |zeta| < root_tol; an empty window returns [].
    """
    lam = dirac_positive_eigenvalues(b)
    if lam.size == 0:
        return []
    loglam = np.log(lam)

    def val(sv):
        return np.sum(np.exp(-sv * loglam))

    def deriv(sv):
        return np.sum(-loglam * np.exp(-sv * loglam))

    re_lo, re_hi = re_range
    im_lo, im_hi = im_range
    res = np.arange(re_lo, re_hi + grid / 2, grid)
    ims = np.arange(im_lo, im_hi + grid / 2, grid)
    ss = res[:, None] + 1j * ims[None, :]
    values = np.abs(np.exp(-ss[..., None] * loglam).sum(axis=-1))
    roots = []
    # Newton from every local minimum of |zeta| on the grid
    interior = values[1:-1, 1:-1]
    neighbors = np.stack(
        [values[:-2, 1:-1], values[2:, 1:-1], values[1:-1, :-2], values[1:-1, 2:]]
    )
    is_min = np.all(interior <= neighbors, axis=0)
    cand_idx = list(zip(*np.nonzero(is_min)))
    # include window borders with small |zeta|
    border_cut = np.percentile(values, 5) if values.size else 0.0
    for i in range(values.shape[0]):
        for j in range(values.shape[1]):
            edge = i in (0, values.shape[0] - 1) or j in (0, values.shape[1] - 1)
            if edge and values[i, j] <= border_cut:
                cand_idx.append((i - 1, j - 1))
    for ci, cj in cand_idx:
        sv = complex(res[ci + 1], ims[cj + 1])
        for _ in range(80):
            d = deriv(sv)
            if d == 0:
                break
            step = val(sv) / d
            sv -= step
            if abs(step) < 1e-14:
                break
        if (
            abs(val(sv)) < root_tol
            and re_lo - 1e-9 <= sv.real <= re_hi + 1e-9
            and im_lo - 1e-9 <= sv.imag <= im_hi + 1e-9
            and not any(abs(sv - r) < 1e-6 for r in roots)
        ):
            roots.append(complex(sv))
    roots.sort(key=lambda z: (z.imag, z.real))
    return roots


def super_pairing_check(b: OperatorBundle, tol: float = 1e-8) -> bool:
    """Nonzero spectra of L_even and L_odd agree with multiplicity."""
    even, odd = [], []
    for k, (w, _) in enumerate(b.block_eigs):
        target = even if k % 2 == 0 else odd
        target.extend(float(x) for x in w[w >= b.kernel_tol])
    if len(even) != len(odd):
        return False
    even.sort()
    odd.sort()
    scale = 1.0 + max([abs(x) for x in even + odd], default=0.0)
    return all(abs(a - c) < tol * scale for a, c in zip(even, odd))


def spectra_csv(b: OperatorBundle) -> str:
    """CSV export: one eigenvalue per line, tagged by form degree."""
    lines = ["block,eigenvalue"]
    for k, (w, _) in enumerate(b.block_eigs):
        for x in np.sort(w):
            lines.append(f"{k},{x:.12g}")
    return "\n".join(lines) + "\n"
