"""Discrete PDE dynamics on forms: heat, wave/Schrodinger, Poisson, Maxwell,
gravity, wave-based point-to-point shooting, and the isospectral Dirac flow.

Linear evolutions are evaluated spectrally (the operators are small symmetric
matrices); only the nonlinear Lax deformation is time-stepped (RK4).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResonantTimeError
from .spectral import OperatorBundle


@dataclass(frozen=True)
class FieldState:
    degree: int
    values: np.ndarray
    time: float = 0.0

    def check(self, b: OperatorBundle):
        if len(self.values) != b.dims[self.degree]:
            raise ValueError(
                f"degree-{self.degree} field needs {b.dims[self.degree]} values"
            )


def _dirac_cut(b: OperatorBundle) -> float:
    # D eigenvalues square to L eigenvalues, so the kernel cut is sqrt-scaled
    return float(np.sqrt(b.kernel_tol))


def heat_evolve(b: OperatorBundle, state: FieldState, t: float) -> FieldState:
    """u(t) = exp(-L_k t) u(0); converges to the harmonic projection."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    state.check(b)
    w, v = b.block_eigs[state.degree]
    coeffs = v.T @ np.asarray(state.values, dtype=float)
    out = v @ (np.exp(-w * t) * coeffs)
    return FieldState(state.degree, out, state.time + t)


def harmonic_projection(b: OperatorBundle, state: FieldState) -> np.ndarray:
    state.check(b)
    basis = b.harmonic_basis(state.degree)
    vals = np.asarray(state.values, dtype=float)
    return basis @ (basis.T @ vals)


def wave_evolve(b: OperatorBundle, u0, v0, t: float):
    """d'Alembert solution on the full form space.

    u(t) = cos(Dt) u0 + sin(Dt) D^+ v0 + t P_ker v0; returns (u(t), u'(t)).
    The kernel component of v0 contributes the linear drift term.
    """
    u0 = np.asarray(u0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    w, v = b.dirac_eigs
    cut = _dirac_cut(b)
    nz = np.abs(w) > cut
    x = v.T @ u0
    y = v.T @ v0
    cos_t = np.cos(w * t)
    u_hat = cos_t * x
    u_hat[nz] += np.sin(w[nz] * t) / w[nz] * y[nz]
    u_hat[~nz] += t * y[~nz]
    du_hat = -w * np.sin(w * t) * x
    du_hat[nz] += cos_t[nz] * y[nz]
    du_hat[~nz] += y[~nz]
    return v @ u_hat, v @ du_hat


def wave_energy(b: OperatorBundle, u, udot) -> float:
    du = b.D_int.astype(float) @ np.asarray(u, dtype=float)
    return float(np.dot(udot, udot) + np.dot(du, du))


def schrodinger_state(b: OperatorBundle, u0, v0):
    """psi = u + i D^+ v (range part); kernel velocity returned separately."""
    u0 = np.asarray(u0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    w, v = b.dirac_eigs
    cut = _dirac_cut(b)
    nz = np.abs(w) > cut
    y = v.T @ v0
    imag_hat = np.zeros_like(y)
    imag_hat[nz] = y[nz] / w[nz]
    kernel_velocity = v @ np.where(nz, 0.0, y)
    return u0 + 1j * (v @ imag_hat), kernel_velocity


def schrodinger_evolve(b: OperatorBundle, psi0, t: float):
    """psi(t) = exp(i D t) psi(0); the norm is conserved."""
    w, v = b.dirac_eigs
    coeffs = v.T @ np.asarray(psi0, dtype=complex)
    return v @ (np.exp(1j * w * t) * coeffs)


def poisson_solve(b: OperatorBundle, k: int, g_vals):
    """Solve L_k u = g on the complement of the kernel.

    The harmonic component of g is removed (and reported); u is orthogonal to
    ker L_k and satisfies the residual bound by construction.
    """
    g_vals = np.asarray(g_vals, dtype=float)
    w, v = b.block_eigs[k]
    coeffs = v.T @ g_vals
    zero = w < b.kernel_tol
    removed = v @ np.where(zero, coeffs, 0.0)
    u = v @ np.where(zero, 0.0, np.divide(coeffs, np.where(zero, 1.0, w)))
    projected = g_vals - removed
    residual = float(np.linalg.norm(b.blocks[k] @ u - projected))
    return {"solution": u, "removed": removed, "residual": residual}


def _subspace_projection(matrix: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Orthogonal projection of vec onto the column span of matrix."""
    if matrix.size == 0 or matrix.shape[1] == 0:
        return np.zeros_like(vec)
    x, *_ = np.linalg.lstsq(matrix, vec, rcond=None)
    return matrix @ x

def maxwell_solve(b: OperatorBundle, j_vals):
    """Coulomb-gauge Maxwell: A = L_1^+ (coexact part of j), F = dA.

    Returns potential, field, the removed exact/harmonic source parts, and
    residuals; dF = 0 holds exactly because d_2 d_1 = 0 in integers.
    """
    s = b.structure
    if s.top_dim < 1:
        raise ValueError("Maxwell needs 1-forms")
    j = np.asarray(j_vals, dtype=float)
    d0 = s.d[0].astype(float)
    d1 = s.d[1].astype(float) if s.top_dim >= 2 else np.zeros((0, b.dims[1]))
    exact_part = _subspace_projection(d0, j)
    coexact_part = _subspace_projection(d1.T, j) if d1.size else np.zeros_like(j)
    harmonic_part = j - exact_part - coexact_part
    sol = poisson_solve(b, 1, coexact_part)
    a = sol["solution"]
    f = d1 @ a if d1.size else np.zeros(0)
    coulomb_residual = float(np.linalg.norm(d0.T @ a))
    dstar_f = d1.T @ f if d1.size else np.zeros_like(j)
    residual = float(np.linalg.norm(dstar_f - coexact_part))
    dd_zero = True
    if s.top_dim >= 3:
        dd_zero = not np.any(s.d[2] @ s.d[1])
    df_norm = float(np.linalg.norm(s.d[2].astype(float) @ f)) if s.top_dim >= 3 else 0.0
    return {
        "potential": a,
        "field": f,
        "removed_exact": exact_part,
        "removed_harmonic": harmonic_part,
        "residual": residual,
        "coulomb_residual": coulomb_residual,
        "dF_exact_zero": dd_zero,
        "dF_float_norm": df_norm,
    }


def gravity_solve(b: OperatorBundle, rho_vals):
    """Newton potential V = L_0^+ rho, field F = dV, divergence check d*F = rho."""
    rho = np.asarray(rho_vals, dtype=float)
    sol = poisson_solve(b, 0, rho)
    v_pot = sol["solution"]
    s = b.structure
    d0 = s.d[0].astype(float) if s.top_dim >= 1 else np.zeros((0, b.dims[0]))
    f = d0 @ v_pot
    projected = rho - sol["removed"]
    residual = float(np.linalg.norm(d0.T @ f - projected))
    return {
        "potential": v_pot,
        "field": f,
        "removed": sol["removed"],
        "residual": residual,
    }


def hopf_rynov_shoot(b: OperatorBundle, x: int, y: int, t: float):
    """Initial velocity v with wave-from-x reaching the delta at y at time t.

    Fails with the resonant eigenvalue when sin(lambda t) vanishes on the
    range of D; the kernel component is matched by the linear drift.
    """
    if t <= 0:
        raise ValueError("shooting time must be positive")
    n0 = b.dims[0]
    if not (0 <= x < n0 and 0 <= y < n0):
        raise ValueError("x and y must be vertices")
    ex = b.embed(0, np.eye(n0)[x])
    ey = b.embed(0, np.eye(n0)[y])
    w, v = b.dirac_eigs
    cut = _dirac_cut(b)
    nz = np.abs(w) > cut
    sins = np.sin(w * t)
    bad = nz & (np.abs(sins) < 1e-8)
    if np.any(bad):
        lam = float(w[bad][0])
        raise ResonantTimeError(
            f"sin(lambda*T) ~ 0 for eigenvalue {lam:.6g}; retry with a perturbed T",
            eigenvalue=lam,
        )
    xh = v.T @ ex
    yh = v.T @ ey
    vh = np.zeros_like(xh)
    vh[nz] = w[nz] * (yh[nz] - np.cos(w[nz] * t) * xh[nz]) / sins[nz]
    vh[~nz] = (yh[~nz] - xh[~nz]) / t
    velocity = v @ vh
    u_t, _ = wave_evolve(b, ex, velocity, t)
    replay_error = float(np.linalg.norm(u_t - ey))
    return {"velocity": velocity, "replay_error": replay_error, "time": t}


# --- isospectral Dirac deformation -------------------------------------------

@dataclass(frozen=True)
class DeformationState:
    times: tuple
    spectral_drifts: tuple   # max |sorted spec D(t) - sorted spec D(0)| per sample
    diag_norms: tuple        # Frobenius norm of the block-diagonal part
    offdiag_norms: tuple
    initial_spectrum: tuple
    d_final: np.ndarray


def _degree_masks(b: OperatorBundle):
    n = b.size
    degree = np.zeros(n, dtype=np.int64)
    for k in range(len(b.dims)):
        degree[b.block_slice(k)] = k
    lower = degree[:, None] > degree[None, :]
    diag = degree[:, None] == degree[None, :]
    return lower, diag


def toda_lax_deform(
    b: OperatorBundle,
    t_end: float,
    dt: float,
    samples: int = 21,
    drift_abort: float = 1e-3,
) -> DeformationState:
    """Integrate D' = [B, D] with B the lower-minus-upper degree-block split.

    At t = 0 this is B = d - d*; the flow is isospectral, and the block
    diagonal part of D (absent at t = 0) records the deformation.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    lower, diag = _degree_masks(b)
    upper = ~(lower | diag)

    def bracket(dmat):
        bmat = np.where(lower, dmat, 0.0) - np.where(upper, dmat, 0.0)
        return bmat @ dmat - dmat @ bmat

    d = b.D_int.astype(float)
    w0 = np.sort(np.linalg.eigvalsh(d))
    steps = max(1, round(t_end / dt))
    sample_at = {round(i * steps / max(samples - 1, 1)) for i in range(samples)}
    times, drifts, diags, offs = [], [], [], []

    def record(step):
        t = step * dt
        wt = np.sort(np.linalg.eigvalsh(d))
        drift = float(np.max(np.abs(wt - w0))) if w0.size else 0.0
        times.append(t)
        drifts.append(drift)
        diags.append(float(np.linalg.norm(np.where(diag, d, 0.0))))
        offs.append(float(np.linalg.norm(np.where(diag, 0.0, d))))
        if drift > drift_abort:
            raise RuntimeError(
                f"spectral drift {drift:.3e} exceeded {drift_abort:.1e} at t = {t:.4g}; reduce dt"
            )

    record(0)
    for step in range(1, steps + 1):
        k1 = bracket(d)
        k2 = bracket(d + 0.5 * dt * k1)
        k3 = bracket(d + 0.5 * dt * k2)
        k4 = bracket(d + dt * k3)
        d = d + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        d = 0.5 * (d + d.T)
        if step in sample_at or step == steps:
            record(step)
    return DeformationState(
        tuple(times),
        tuple(drifts),
        tuple(diags),
        tuple(offs),
        tuple(float(x) for x in w0),
        d,
    )


def trajectory_csv(times, vectors) -> str:
    """CSV export: time column followed by one column per simplex value."""
    lines = []
    width = len(vectors[0]) if vectors else 0
    lines.append(",".join(["time"] + [f"c{i}" for i in range(width)]))
    for t, vec in zip(times, vectors):
        lines.append(",".join([f"{t:.12g}"] + [f"{float(x):.12g}" for x in vec]))
    return "\n".join(lines) + "\n"
