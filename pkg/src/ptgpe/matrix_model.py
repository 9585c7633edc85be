"""Linear 4x4 matrix model of the two-mode condensate.

The model reproduces the chemical potentials of the double-well condensate
from the fixed points of non-Hermitian Bloch equations.  Everything here is
evaluated over the bicomplex ring so that encircling paths with j-complexified
parameters can be fed straight in; each operation splits into two independent
complex problems along the idempotent decomposition.

Parameter conventions: the model parameters (g~, gamma~, eps~) are related to
the physical nonlinearity g, gain/loss gamma and asymmetry eps through the
calibration constants g0 = -5.64, gamma0 = 0.953, v = 0.0426 and an additive
energy shift mu0 that depends on g and is obtained by a least-squares fit.

A note on the fixed-point quartic: eliminating s_x and s_y from the Bloch
stationarity conditions yields

    s^4 + a3 s^3 + a2 s^2 + a1 s + a0 = 0,
    a3 = g e / X,  a2 = (e^2 + v^2 - g^2 - gamma^2) / (4 X),
    a1 = -g e / (4 X),  a0 = -e^2 / (16 X),      X = g^2 + gamma^2,

(the 1/4 in a2 matters: without it the recovered chemical potentials do not
match the matrix eigenvalues).  mu follows from a root via
mu = g - 2i gamma s_z + e / (2 s_z).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .bicomplex import Bicomplex, IdempotentPair, ZeroDivisorError

__all__ = [
    "ModelParams",
    "ScalingMap",
    "BlochVector",
    "SingularParameterError",
    "RootFindingError",
    "build_H",
    "split_matrix",
    "eig_split",
    "eigenvalues",
    "closed_form_eigs",
    "char_poly_coeffs",
    "char_poly_from_matrix",
    "sz_quartic_coeffs",
    "sz_quartic_roots",
    "mu_from_sz",
    "bloch_rhs",
    "mu_from_bloch",
    "fixed_point_from_sz",
    "fit_mu0",
    "model_gamma_c1",
    "model_gamma_c2",
    "durand_kerner",
]

I_UNIT = Bicomplex(0.0, 1.0, 0.0, 0.0)


class SingularParameterError(ValueError):
    """Model parameters hit a zero divisor (e.g. g~^2 + gamma~^2 not invertible)."""


class RootFindingError(RuntimeError):
    """Durand-Kerner iteration failed to converge."""


@dataclass(frozen=True)
class ModelParams:
    """Scaled model parameters (g~, gamma~, eps~) and the real coupling v."""

    g_t: Bicomplex
    gamma_t: Bicomplex
    eps_t: Bicomplex = Bicomplex()
    v: float = 0.0426

    @staticmethod
    def make(g_t=0.0, gamma_t=0.0, eps_t=0.0, v=0.0426) -> "ModelParams":
        return ModelParams(
            Bicomplex.coerce(g_t), Bicomplex.coerce(gamma_t), Bicomplex.coerce(eps_t), float(v)
        )

    def denominator(self) -> Bicomplex:
        """g~^2 + gamma~^2, the denominator of the matrix entries."""
        return self.g_t * self.g_t + self.gamma_t * self.gamma_t


@dataclass(frozen=True)
class ScalingMap:
    """Physical <-> model parameter map: g~ = g/g0, gamma~ = gamma/gamma0,
    eps~ = eps/gamma0, mu = mu~ + mu0."""

    g0: float = -5.64
    gamma0: float = 0.953
    v: float = 0.0426
    mu0: float = 0.0

    def scale(self, gamma, g, eps=0.0) -> ModelParams:
        return ModelParams(
            Bicomplex.coerce(g) * (1.0 / self.g0),
            Bicomplex.coerce(gamma) * (1.0 / self.gamma0),
            Bicomplex.coerce(eps) * (1.0 / self.gamma0),
            self.v,
        )

    def unscale(self, mu_t) -> Bicomplex:
        return Bicomplex.coerce(mu_t) + self.mu0

    def with_mu0(self, mu0: float) -> "ScalingMap":
        return ScalingMap(self.g0, self.gamma0, self.v, float(mu0))


@dataclass(frozen=True)
class BlochVector:
    sx: Bicomplex
    sy: Bicomplex
    sz: Bicomplex


def _div(num: Bicomplex, den: Bicomplex) -> Bicomplex:
    try:
        return num / den
    except ZeroDivisorError as exc:
        raise SingularParameterError(str(exc)) from exc


def _sqrt(z: Bicomplex) -> Bicomplex:
    """Principal square root applied per idempotent component."""
    p = z.split()
    return IdempotentPair(cmath.sqrt(p.plus), cmath.sqrt(p.minus)).join()


# -- the matrix ----------------------------------------------------------------


def build_H(p: ModelParams) -> np.ndarray:
    """The 4x4 model matrix as an object array of Bicomplex entries.

    The eps-free part of h43 is evaluated in the factored form
    gamma~^2 (v^2 - g~^2 - gamma~^2) / (g~^2 + gamma~^2) so that the Jordan
    parameter point (g~=0, gamma~=v, eps~=0) produces exact zeros in floating
    point; the expanded form leaves an O(eps_mach) residue that the defective
    eigenvalue problem would amplify to ~1e-5.
    """
    g, y, e, v = p.g_t, p.gamma_t, p.eps_t, p.v
    X = p.denominator()
    i = I_UNIT
    zero = Bicomplex()
    one = Bicomplex(1.0)

    v2 = v * v
    y2 = y * y
    g2 = g * g
    e2 = e * e

    h21 = v2 + (e2 - y2)
    h31 = _div(-(i * (g * g2) * y * e), X)
    h32 = -4.0 * (i * y * e) + _div((4.0 * y2 - 2.0 * g2) * e2, X)
    h33 = g + _div(2.0 * (i * g * y * e), X)
    h41 = _div(-(i * y * e), X) * (g2 * g2 + (2.0 * g2 + 4.0 * y2) * (y2 - v2)) + _div(
        2.0 * y2 - g2, X
    ) * ((4.0 * y2 + g2 - 2.0 * v2) * e2 + 2.0 * (i * y) * (e * e2) - 2.0 * (e2 * e2))
    h43 = _div(y2 * (v2 - g2 - y2), X) + _div((2.0 * g2 - 3.0 * y2) * e2, X)

    H = np.empty((4, 4), dtype=object)
    H[0] = [zero, one, zero, zero]
    H[1] = [h21, zero, one, zero]
    H[2] = [h31, h32, h33, one]
    H[3] = [h41, h31, h43, g]
    return H


def split_matrix(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Idempotent components of a bicomplex matrix as two complex arrays."""
    Hp = np.empty(H.shape, dtype=complex)
    Hm = np.empty(H.shape, dtype=complex)
    for idx in np.ndindex(H.shape):
        pair = H[idx].split()
        Hp[idx], Hm[idx] = pair.plus, pair.minus
    return Hp, Hm


# -- polynomial root finding ----------------------------------------------------


def durand_kerner(coeffs, tol: float = 1e-13, maxiter: int = 200) -> np.ndarray:
    """All roots of a monic complex polynomial by Durand-Kerner iteration.

    `coeffs` are [c_{n-1}, ..., c_0] of z^n + c_{n-1} z^{n-1} + ... + c_0.
    Converges when the largest update falls below `tol` (absolute).
    """
    c = np.asarray(coeffs, dtype=complex)
    n = len(c)
    poly = np.concatenate(([1.0 + 0.0j], c))
    # spread the starting points on a circle that is never a root constellation
    z = (0.4 + 0.9j) ** np.arange(1, n + 1)
    for _ in range(maxiter):
        p = np.polyval(poly, z)
        q = np.empty(n, dtype=complex)
        for k in range(n):
            diff = z[k] - np.delete(z, k)
            q[k] = np.prod(diff)
        step = p / q
        z = z - step
        if np.max(np.abs(step)) < tol:
            return z
    raise RootFindingError(f"Durand-Kerner did not converge within {maxiter} iterations")


def _char_quartic(A: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial coefficients [c3, c2, c1, c0] of a
    complex 4x4 matrix via Newton's identities on trace powers."""
    A2 = A @ A
    A3 = A2 @ A
    p1 = np.trace(A)
    p2 = np.trace(A2)
    p3 = np.trace(A3)
    p4 = np.trace(A3 @ A)
    e1 = p1
    e2 = (e1 * p1 - p2) / 2.0
    e3 = (e2 * p1 - e1 * p2 + p3) / 3.0
    e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4.0
    return np.array([-e1, e2, -e3, e4])


def eig_split(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of the two idempotent components, each sorted
    lexicographically by (real, imag).  This is the pairing-free form."""
    Hp, Hm = split_matrix(H)
    rp = durand_kerner(_char_quartic(Hp))
    rm = durand_kerner(_char_quartic(Hm))
    key = lambda r: np.lexsort((r.imag, r.real))
    return rp[key(rp)], rm[key(rm)]


def _pair_roots(rp: np.ndarray, rm: np.ndarray) -> list[Bicomplex]:
    """Join the two split root sets into bicomplex values.

    The bicomplex eigen-multiset is defined only up to the pairing of the two
    component sets; the canonical choice pairs plus-roots with the
    j-conjugated minus-roots at minimal total distance, which reproduces
    ordinary complex eigenvalues exactly whenever the matrix carries only the
    i unit.
    """
    cost = np.abs(rp[:, None] - np.conj(rm)[None, :])
    rows, cols = linear_sum_assignment(cost)
    out = [IdempotentPair(complex(rp[r]), complex(rm[c])).join() for r, c in zip(rows, cols)]
    out.sort(key=lambda z: (z.c1, z.ci, z.cj, z.ck))
    return out


def eigenvalues(H: np.ndarray) -> list[Bicomplex]:
    """The four bicomplex eigenvalues of a 4x4 bicomplex matrix.

    Each idempotent component is solved through its characteristic quartic
    (Durand-Kerner, tol 1e-13); the components are then joined with the
    canonical pairing and returned in lexicographic order.
    """
    rp, rm = eig_split(H)
    return _pair_roots(rp, rm)


def closed_form_eigs(p: ModelParams) -> list[Bicomplex]:
    """Eigenvalues for eps~ = 0: +-sqrt(v^2 - gamma~^2) and
    g~ +- gamma~ sqrt(v^2/(g~^2+gamma~^2) - 1), square roots taken per
    idempotent component with the principal branch."""
    if p.eps_t.norm4() != 0.0:
        raise ValueError("closed_form_eigs requires eps_t = 0")
    g, y, v = p.g_t, p.gamma_t, p.v
    s1 = _sqrt(v * v + (-(y * y)))
    ratio = _div(Bicomplex(v * v), p.denominator())
    s2 = y * _sqrt(ratio - 1.0)
    return [s1, -s1, g + s2, g - s2]


# -- closed-form characteristic polynomial (appendix chain) ---------------------


def char_poly_coeffs(p: ModelParams) -> tuple[Bicomplex, Bicomplex, Bicomplex, Bicomplex]:
    """Coefficients (c3, c2, c1, c0) of the characteristic polynomial
    mu^4 + c3 mu^3 + c2 mu^2 + c1 mu + c0 in closed form."""
    g, y, e, v = p.g_t, p.gamma_t, p.eps_t, p.v
    i = I_UNIT
    X = p.denominator()
    v2 = Bicomplex(v * v)
    y2 = y * y
    g2 = g * g
    e2 = e * e

    c3 = -2.0 * g - _div(2.0 * (i * g * y * e), X)
    c2 = (
        2.0 * (y2 - v2)
        + g2
        + _div(g2 * v2, X)
        + _div(2.0 * (i * y) * (3.0 * g2 + 2.0 * y2), X) * e
        - _div(g2 + 2.0 * y2, X) * e2
    )
    c1 = (
        -2.0 * g * (y2 - v2)
        - _div(2.0 * (i * g * y) * (3.0 * y2 + g2 - v2), X) * e
        + _div(6.0 * g * y2, X) * e2
        + _div(2.0 * (i * g * y), X) * (e * e2)
    )
    c0 = (
        _div((y2 - v2) * (X * X - y2 * v2), X)
        + 4.0 * (i * y) * (y2 - v2) * e
        - _div(2.0 * y2 * (g2 + 3.0 * y2 - v2), X) * e2
        - _div(4.0 * (i * (y * y2)), X) * (e * e2)
        + _div(y2, X) * (e2 * e2)
    )
    return c3, c2, c1, c0


def char_poly_from_matrix(H: np.ndarray) -> tuple[Bicomplex, ...]:
    """Numerically expanded characteristic coefficients of a bicomplex matrix
    (independent route, used to cross-check the closed forms)."""
    Hp, Hm = split_matrix(H)
    cp = _char_quartic(Hp)
    cm = _char_quartic(Hm)
    return tuple(IdempotentPair(complex(a), complex(b)).join() for a, b in zip(cp, cm))


# -- Bloch fixed-point oracle ----------------------------------------------------


def sz_quartic_coeffs(p: ModelParams) -> tuple[Bicomplex, Bicomplex, Bicomplex, Bicomplex]:
    """Coefficients (a3, a2, a1, a0) of the fixed-point quartic in s_z.

    Derived by eliminating s_x, s_y from the stationarity conditions; note
    the factor 1/4 in a2 (see the module docstring).
    """
    g, y, e, v = p.g_t, p.gamma_t, p.eps_t, p.v
    X = p.denominator()
    e2 = e * e
    a3 = _div(g * e, X)
    a2 = _div(e2 + (v * v) - g * g - y * y, 4.0 * X)
    a1 = _div(-(g * e), 4.0 * X)
    a0 = _div(-e2, 16.0 * X)
    return a3, a2, a1, a0


def sz_quartic_roots(p: ModelParams) -> list[Bicomplex]:
    """The four fixed-point values of s_z (requires eps~ != 0; at eps~ = 0 the
    quartic degenerates, two roots hit s_z = 0 and the mu recovery is
    singular - use closed_form_eigs there)."""
    if p.eps_t.norm4() == 0.0:
        raise ValueError("sz_quartic_roots requires eps_t != 0 (degenerate quartic)")
    a3, a2, a1, a0 = sz_quartic_coeffs(p)
    plus = [c.split().plus for c in (a3, a2, a1, a0)]
    minus = [c.split().minus for c in (a3, a2, a1, a0)]
    rp = durand_kerner(plus)
    rm = durand_kerner(minus)
    key = lambda r: np.lexsort((r.imag, r.real))
    return _pair_roots(rp[key(rp)], rm[key(rm)])


def mu_from_sz(sz: Bicomplex, p: ModelParams) -> Bicomplex:
    """Chemical potential from a fixed-point s_z: g~ - 2i gamma~ s_z + eps~/(2 s_z)."""
    return p.g_t - 2.0 * (I_UNIT * p.gamma_t * sz) + _div(p.eps_t, 2.0 * sz)


def fixed_point_from_sz(sz: Bicomplex, p: ModelParams) -> BlochVector:
    """Recover the full Bloch fixed point from s_z:
    s_y = gamma~ (1 - 4 s_z^2)/(2v), s_x = s_y (eps~ + 2 g~ s_z)/(2 gamma~ s_z)."""
    sy = p.gamma_t * (1.0 - 4.0 * (sz * sz)) * (1.0 / (2.0 * p.v))
    sx = _div(sy * (p.eps_t + 2.0 * (p.g_t * sz)), 2.0 * (p.gamma_t * sz))
    return BlochVector(sx, sy, sz)


def bloch_rhs(s: BlochVector, p: ModelParams) -> tuple[Bicomplex, Bicomplex, Bicomplex]:
    """Right-hand sides of the non-Hermitian Bloch equations."""
    g, y, e, v = p.g_t, p.gamma_t, p.eps_t, p.v
    sx, sy, sz = s.sx, s.sy, s.sz
    fx = -2.0 * (e * sy) - 4.0 * (g * sy * sz) + 4.0 * (y * sx * sz)
    fy = 2.0 * (e * sx) + 4.0 * (g * sx * sz) - 2.0 * (v * sz) + 4.0 * (y * sy * sz)
    fz = 2.0 * (v * sy) - y * (1.0 - 4.0 * (sz * sz))
    return fx, fy, fz


def mu_from_bloch(s: BlochVector, p: ModelParams) -> Bicomplex:
    """Chemical potential 2(eps~ - i gamma~) s_z + 4 g~ s_z^2 + 2 v s_x."""
    return (
        2.0 * ((p.eps_t - I_UNIT * p.gamma_t) * s.sz)
        + 4.0 * (p.g_t * (s.sz * s.sz))
        + 2.0 * (p.v * s.sx)
    )


# -- calibration ------------------------------------------------------------------


def model_gamma_c2(m: ScalingMap) -> float:
    """Physical gamma at which the real eigenvalue pair coalesces: gamma0 * v."""
    return m.gamma0 * m.v


def model_gamma_c1(g: float, m: ScalingMap) -> float:
    """Physical gamma of the pitchfork: gamma0 * sqrt(v^2 - (g/g0)^2); 0 once
    the nonlinearity alone sustains broken states (self-trapping)."""
    gt2 = (g / m.g0) ** 2
    if gt2 >= m.v**2:
        return 0.0
    return m.gamma0 * float(np.sqrt(m.v**2 - gt2))


def fit_mu0(g: float, rows, m: ScalingMap | None = None) -> float:
    """Least-squares energy shift mu0 for nonlinearity g.

    `rows` is an iterable of (gamma, tag, mu1) over the real branches, with tag
    'psi_g' or 'psi_e'; the model values are -+sqrt(v^2 - gamma~^2).  For a pure
    shift the least-squares solution is the mean residual.
    """
    m = m or ScalingMap()
    resid = []
    for gamma, tag, mu1 in rows:
        yt = gamma / m.gamma0
        if m.v**2 < yt**2:
            continue  # beyond the model's tangent point: no real branch value
        s = float(np.sqrt(m.v**2 - yt**2))
        model = -s if tag == "psi_g" else s
        resid.append(float(mu1) - model)
    if not resid:
        raise ValueError("fit_mu0 needs at least one real-branch sweep point")
    return float(np.mean(resid))
