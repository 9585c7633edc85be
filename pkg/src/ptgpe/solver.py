"""Stationary solutions of the continued GPE by two-sided shooting.

The wave function is integrated outward from x = 0 to +-L with fixed-step RK4
and the boundary/normalization conditions are enforced by a damped Newton
root search.  Unknowns (10 reals): the four components of mu, psi_1(0),
psi_j(0) and the four components of psi'(0); the gauge freedom
psi -> exp(i(chi1 + j chi2)) psi is removed by fixing psi_i(0) = psi_k(0) = 0.
Residuals (10 reals): the four components of psi at +L and at -L, both
premultiplied by the WKB growth compensation w = exp(-int sqrt(max(V_1-mu_1,0)))
(raw boundary values at L = 10 sit ~1e9 above the representable-parameter
granularity, so they cannot be driven to 1e-9 unweighted; the weighting is a
left preconditioner and leaves the root set unchanged), plus the two
normalization conditions norm_1 - 1 and norm_j.

The Newton step is the minimal-norm least-squares solution: the gauge
conditions degenerate on symmetric states (odd components vanish at x = 0
automatically), leaving exact null directions in the Jacobian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ._core import shoot_batch, shoot_record
from .bicomplex import Bicomplex
from .model import PotentialParams, WaveFunction, potential_components

__all__ = [
    "ShootingState",
    "Solution",
    "SolverOptions",
    "SolverError",
    "NoSolutionError",
    "DivergedError",
    "solve",
    "linear_basis",
    "as_guess",
    "refine",
    "DEFAULT_OPTIONS",
]


class SolverError(RuntimeError):
    pass


class NoSolutionError(SolverError):
    """Newton failed to converge (also the bifurcation-detection signal)."""


class DivergedError(SolverError):
    """Trajectory overflow from the supplied guess."""


@dataclass(frozen=True)
class ShootingState:
    """Newton unknowns: mu, psi(0) and psi'(0) (gauge: psi_i(0)=psi_k(0)=0)."""

    mu: Bicomplex
    psi0: Bicomplex
    dpsi0: Bicomplex


@dataclass
class Solution:
    mu: Bicomplex
    psi: WaveFunction
    branch: str | None
    residual_norm: float
    g: Bicomplex = Bicomplex()
    gamma: Bicomplex = Bicomplex()


@dataclass(frozen=True)
class SolverOptions:
    half_width: float = 10.0
    n_nodes: int = 2001
    rk_step: float = 0.005
    newton_tol: float = 1e-9
    max_iter: int = 100
    fd_step: float = 1e-7
    max_halvings: int = 8
    # decay conditions and normalization quadrature are imposed at
    # |x| = match_radius: every tracked state is below 1e-9 there, while
    # shooting clear to half_width would push off-solution trajectories into
    # the cubic blow-up and ruin the Newton map.  The stored wave function
    # still covers [-half_width, half_width] by free continuation.
    match_radius: float = 7.0
    # after reaching newton_tol, keep iterating (accept-if-improving) down to
    # this target so the freely continued tail stays clean
    polish_target: float = 1e-13

    def __post_init__(self):
        if self.n_nodes < 3 or self.n_nodes % 2 == 0:
            raise ValueError("n_nodes must be odd and >= 3 (grid centered on x=0)")
        if abs(self.stride * self.rk_step - self.grid_step) > 1e-12:
            raise ValueError("rk_step must subdivide the storage grid spacing")

    @property
    def grid_step(self) -> float:
        return 2.0 * self.half_width / (self.n_nodes - 1)

    @property
    def stride(self) -> int:
        return max(1, int(round(self.grid_step / self.rk_step)))

    @property
    def side_steps(self) -> int:
        return self.stride * (self.n_nodes - 1) // 2

    @property
    def match_steps(self) -> int:
        return min(self.side_steps, int(round(self.match_radius / self.rk_step)))


DEFAULT_OPTIONS = SolverOptions()


def _pack(state: ShootingState) -> np.ndarray:
    m, p0, d0 = state.mu, state.psi0, state.dpsi0
    return np.array([m.c1, m.ci, m.cj, m.ck, p0.c1, p0.cj, d0.c1, d0.ci, d0.cj, d0.ck])


def _y0_rows(U: np.ndarray) -> np.ndarray:
    y0 = np.zeros((U.shape[0], 8))
    y0[:, 0] = U[:, 4]
    y0[:, 2] = U[:, 5]
    y0[:, 4:8] = U[:, 6:10]
    return y0


def _decay_weight(mu1: float, p: PotentialParams, L: float) -> float:
    """WKB growth compensation over the classically forbidden region."""
    xs = np.linspace(0.0, L, 513)
    v1 = potential_components(xs, p)[:, 0]
    theta = float(np.trapz(np.sqrt(np.maximum(v1 - mu1, 0.0)), xs))
    return max(math.exp(-theta), 1e-12)


def _residuals(U: np.ndarray, g4, p: PotentialParams, opts: SolverOptions, w: float) -> np.ndarray:
    gam = p.gamma.as_array()
    y0 = _y0_rows(U)
    mu = U[:, 0:4]
    args = (g4, gam, p.v0, p.sigma, p.rho)
    right = shoot_batch(y0, mu, *args, opts.rk_step, opts.match_steps)
    left = shoot_batch(y0, mu, *args, -opts.rk_step, opts.match_steps)
    res = np.empty((U.shape[0], 10))
    res[:, 0:4] = right[:, 0:4] * w
    res[:, 4:8] = left[:, 0:4] * w
    res[:, 8] = (right[:, 8] - left[:, 8]) - 1.0
    res[:, 9] = right[:, 9] - left[:, 9]
    return res


def _resnorm(res: np.ndarray) -> float:
    if not np.all(np.isfinite(res)):
        return math.inf
    return float(np.max(np.abs(res)))


def solve(guess: ShootingState, g, p: PotentialParams, opts: SolverOptions | None = None) -> Solution:
    """Newton-polish a shooting guess into a converged Solution.

    Raises NoSolutionError when the iteration stalls or exhausts max_iter
    (used by bifurcation detection) and DivergedError when the guess itself
    overflows the integrator.
    """
    opts = opts or DEFAULT_OPTIONS
    gbc = Bicomplex.coerce(g)
    g4 = gbc.as_array()
    u = _pack(guess)
    w = _decay_weight(u[0], p, opts.match_radius)

    res = _residuals(u[None, :], g4, p, opts, w)[0]
    rn = _resnorm(res)
    if not math.isfinite(rn):
        raise DivergedError("trajectory overflow at the initial guess")

    converged_at = None
    for it in range(opts.max_iter):
        if rn < opts.newton_tol and converged_at is None:
            converged_at = it
        if converged_at is not None and rn < opts.polish_target:
            break
        deltas = opts.fd_step * np.maximum(1.0, np.abs(u))
        U = np.tile(u, (10, 1))
        U[np.arange(10), np.arange(10)] += deltas
        R = _residuals(U, g4, p, opts, w)
        J = (R - res).T / deltas
        if not np.all(np.isfinite(J)):
            raise NoSolutionError("non-finite Jacobian")
        du = np.linalg.lstsq(J, -res, rcond=1e-12)[0]

        t = 1.0
        accepted = False
        for _ in range(opts.max_halvings + 1):
            trial = u + t * du
            tres = _residuals(trial[None, :], g4, p, opts, w)[0]
            trn = _resnorm(tres)
            if trn < rn:
                u, res, rn = trial, tres, trn
                accepted = True
                break
            t *= 0.5
        if not accepted:
            if converged_at is not None:
                break  # polishing hit the noise floor
            raise NoSolutionError(f"Newton stalled at residual {rn:.3e}")
    if converged_at is None:
        raise NoSolutionError(f"no convergence after {opts.max_iter} iterations (residual {rn:.3e})")

    return _build_solution(u, rn, gbc, p, opts)


def _build_solution(u: np.ndarray, rn: float, g: Bicomplex, p: PotentialParams,
                    opts: SolverOptions) -> Solution:
    gam = p.gamma.as_array()
    y0 = _y0_rows(u[None, :])[0]
    mu4 = u[0:4]
    args = (g.as_array(), gam, p.v0, p.sigma, p.rho)
    traj_r, _ = shoot_record(y0, mu4, *args, opts.rk_step, opts.side_steps, opts.stride,
                             opts.match_steps)
    traj_l, _ = shoot_record(y0, mu4, *args, -opts.rk_step, opts.side_steps, opts.stride,
                             opts.match_steps)

    m = traj_r.shape[0]
    grid = np.linspace(-opts.half_width, opts.half_width, 2 * m - 1)
    values = np.vstack([traj_l[:0:-1, 0:4], traj_r[:, 0:4]])
    derivs = np.vstack([traj_l[:0:-1, 4:8], traj_r[:, 4:8]])
    psi = WaveFunction(grid, values, derivs)
    return Solution(Bicomplex.from_array(mu4), psi, None, rn, g, p.gamma)


def as_guess(sol: Solution) -> ShootingState:
    """Shooting guess from a stored solution (gauge components re-zeroed)."""
    c = sol.psi.center_index()
    v = sol.psi.values[c]
    d = sol.psi.derivs[c]
    return ShootingState(sol.mu, Bicomplex(v[0], 0.0, v[2], 0.0), Bicomplex.from_array(d))


def refine(prev: Solution, g, p: PotentialParams, opts: SolverOptions | None = None) -> Solution:
    """Re-solve from a previous solution at (possibly) new parameters."""
    out = solve(as_guess(prev), g, p, opts)
    out.branch = prev.branch
    return out


# -- linear limit -----------------------------------------------------------------


def _fd_eigenpairs(p: PotentialParams, opts: SolverOptions, k: int = 6):
    """Lowest FD eigenpairs of the complex (i-unit) linear operator.

    Three-point discretization with Dirichlet ends, shift-invert targeting the
    lowest doublet.  Requires gamma without j/k components.
    """
    if abs(p.gamma.cj) > 0 or abs(p.gamma.ck) > 0:
        raise ValueError("linear diagonalization supports i-complex gamma only")
    grid = np.linspace(-opts.half_width, opts.half_width, opts.n_nodes)
    h = grid[1] - grid[0]
    V = potential_components(grid, p)
    vc = V[1:-1, 0] + 1j * V[1:-1, 1]
    n = len(vc)
    main = 2.0 / h**2 + vc
    off = np.full(n - 1, -1.0 / h**2, dtype=complex)
    H = sp.diags([off, main, off], [-1, 0, 1], format="csc")
    v1min = float(np.min(V[:, 0]))
    vals, vecs = spla.eigs(H, k=k, sigma=v1min + 1.0)
    order = np.argsort(vals.real)
    return grid, h, vals[order], vecs[:, order]


def linear_basis(g: float, p: PotentialParams, opts: SolverOptions | None = None) -> list[Solution]:
    """The two lowest linear states, diagonalized then shooting-polished.

    Only defined for g = 0; the returned Solutions (sorted by Re mu) seed all
    nonlinear continuations.
    """
    if Bicomplex.coerce(g).norm4() != 0.0:
        raise ValueError("linear_basis requires g = 0")
    opts = opts or DEFAULT_OPTIONS
    grid, h, vals, vecs = _fd_eigenpairs(p, opts)

    out = []
    for idx in range(2):
        vec = np.concatenate([[0.0], vecs[:, idx], [0.0]])
        # gauge: rotate so the value (or, on a node, the slope) at x=0 is real
        c = len(grid) // 2
        dpsi = (vec[c + 1] - vec[c - 1]) / (2 * h)
        ref = vec[c] if abs(vec[c]) > 1e-3 * np.max(np.abs(vec)) else dpsi
        vec = vec * np.exp(-1j * np.angle(ref))
        nrm = math.sqrt(float(np.trapz(np.abs(vec) ** 2, grid)))
        vec /= nrm
        dpsi = (vec[c + 1] - vec[c - 1]) / (2 * h)
        state = ShootingState(
            Bicomplex(vals[idx].real, vals[idx].imag, 0.0, 0.0),
            Bicomplex(vec[c].real, 0.0, 0.0, 0.0),
            Bicomplex(dpsi.real, dpsi.imag, 0.0, 0.0),
        )
        sol = solve(state, 0.0, p, opts)
        out.append(sol)
    out.sort(key=lambda s: s.mu.c1)
    out[0].branch = "psi_g"
    out[1].branch = "psi_e"
    return out
