"""Double-well potential, continued GPE residual, norm and symmetry classes.

The stationary problem solved throughout the package is

    [-d^2/dx^2 + V(x) - g |psi|^2] psi = mu psi,
    V(x) = x^2/4 + v0 exp(-sigma x^2) + i gamma x exp(-rho x^2),

with all quantities continued to bicomplex values.  The square modulus is the
analytic continuation psi * T_i(psi) = (psi_1 + j psi_j)^2 + (psi_i + j psi_k)^2,
which carries only 1- and j-components.  A gain/loss parameter gamma with a
nonzero i-component eps contributes the real antisymmetric term
-eps x exp(-rho x^2) to the potential, which is how symmetry-breaking
perturbations enter.

Component order inside arrays is (1, i, j, k); the CSV interchange format uses
the column order psi1, psij, psii, psik.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .bicomplex import Bicomplex, bc_mul_arr, bc_sqmod_arr

__all__ = [
    "PotentialParams",
    "WaveFunction",
    "SymmetryClass",
    "default_rho",
    "potential",
    "potential_components",
    "gpe_residual",
    "bicomplex_norm",
    "classify_symmetry",
    "apply_symmetry",
    "symmetry_defect",
    "phase_rotate",
]

V0_DEFAULT = 4.0
SIGMA_DEFAULT = 0.5


def default_rho(v0: float = V0_DEFAULT, sigma: float = SIGMA_DEFAULT) -> float:
    """Envelope width placing the gain/loss extrema on the well minima.

    The real double well has minima at x^2 = ln(4 v0 sigma)/sigma and the
    antisymmetric envelope x exp(-rho x^2) peaks at x^2 = 1/(2 rho); equating
    the two gives rho = sigma / (2 ln(4 v0 sigma)) ~ 0.120224 for the default
    barrier.
    """
    return sigma / (2.0 * math.log(4.0 * v0 * sigma))


@dataclass(frozen=True)
class PotentialParams:
    """Double-well constants and the (bicomplex) gain/loss coefficient."""

    gamma: Bicomplex = Bicomplex()
    v0: float = V0_DEFAULT
    sigma: float = SIGMA_DEFAULT
    rho: float = field(default_factory=default_rho)

    def __post_init__(self):
        if not (self.v0 > 0 and self.sigma > 0 and self.rho > 0):
            raise ValueError("v0, sigma and rho must be positive")

    def with_gamma(self, gamma) -> "PotentialParams":
        return PotentialParams(Bicomplex.coerce(gamma), self.v0, self.sigma, self.rho)

    def effective(self, eps) -> "PotentialParams":
        """Fold an asymmetry parameter into the gain/loss: gamma + i*eps."""
        return self.with_gamma(self.gamma + Bicomplex(0.0, 1.0, 0.0, 0.0) * Bicomplex.coerce(eps))


def potential_components(x: np.ndarray, p: PotentialParams) -> np.ndarray:
    """V(x) on an array of positions, shape (..., 4).

    With gamma = g1 + i gi + j gj + k gk the prefactor i*gamma has components
    (-gi, g1, -gk, gj), so the i-component of gamma feeds the real part of V.
    """
    x = np.asarray(x, dtype=float)
    env = x * np.exp(-p.rho * x * x)
    out = np.empty(x.shape + (4,))
    out[..., 0] = 0.25 * x * x + p.v0 * np.exp(-p.sigma * x * x) - p.gamma.ci * env
    out[..., 1] = p.gamma.c1 * env
    out[..., 2] = -p.gamma.ck * env
    out[..., 3] = p.gamma.cj * env
    return out


def potential(x: float, p: PotentialParams) -> Bicomplex:
    """V(x) at a single position."""
    return Bicomplex.from_array(potential_components(np.asarray(float(x)), p))


class SymmetryClass(enum.Enum):
    PT_I = "PT_i-symmetric"
    T_J = "T_j-symmetric"
    PT_I_T_J = "PT_i T_j-symmetric"
    BROKEN = "fully broken"


@dataclass
class WaveFunction:
    """Sampled bicomplex wave function on an ordered grid.

    values and derivs have shape (N, 4) in (1, i, j, k) component order;
    derivs may be None for externally produced data (e.g. finite-difference
    eigenvectors).
    """

    grid: np.ndarray
    values: np.ndarray
    derivs: np.ndarray | None = None

    CSV_HEADER = "x,psi1,psij,psii,psik,dpsi1,dpsij,dpsii,dpsik"

    def value_at(self, index: int) -> Bicomplex:
        return Bicomplex.from_array(self.values[index])

    def center_index(self) -> int:
        return int(np.argmin(np.abs(self.grid)))

    def to_csv(self, path) -> None:
        n = len(self.grid)
        d = self.derivs if self.derivs is not None else np.zeros_like(self.values)
        # CSV interchange order is (1, j, i, k)
        perm = [0, 2, 1, 3]
        with open(path, "w") as fh:
            fh.write(self.CSV_HEADER + "\n")
            for m in range(n):
                row = [self.grid[m]] + [self.values[m, c] for c in perm] + [d[m, c] for c in perm]
                fh.write(",".join(repr(float(v)) for v in row) + "\n")

    @staticmethod
    def from_csv(path) -> "WaveFunction":
        data = np.loadtxt(path, delimiter=",", skiprows=1)
        perm = [0, 2, 1, 3]
        values = np.empty((len(data), 4))
        derivs = np.empty((len(data), 4))
        for c, col in enumerate(perm):
            values[:, col] = data[:, 1 + c]
            derivs[:, col] = data[:, 5 + c]
        return WaveFunction(data[:, 0], values, derivs)


def bicomplex_norm(psi: WaveFunction) -> Bicomplex:
    """Trapezoidal integral of the continued square modulus.

    The result carries only 1- and j-components; the i- and k-parts vanish
    identically in the algebra and are returned as exact zeros.
    """
    sq = bc_sqmod_arr(psi.values)
    return Bicomplex(
        float(np.trapz(sq[:, 0], psi.grid)),
        0.0,
        float(np.trapz(sq[:, 2], psi.grid)),
        0.0,
    )


def gpe_residual(psi: WaveFunction, mu, g, p: PotentialParams) -> np.ndarray:
    """Pointwise residual [-d^2/dx^2 + V - g|psi|^2 - mu] psi, shape (N, 4).

    On a uniform grid the second derivative uses the 3-node stencil; when the
    stored first derivatives are available the stencil is augmented to
    2*(central second difference) - (central difference of psi'), which
    cancels the O(h^2) term and is needed to resolve solver-grade solutions.
    The two boundary rows are returned as zeros (the decay conditions live
    there, not the differential equation).
    """
    n = len(psi.grid)
    if n < 3:
        raise ValueError("grid too coarse: need at least 3 nodes")
    h = psi.grid[1] - psi.grid[0]
    if not np.allclose(np.diff(psi.grid), h, rtol=0, atol=1e-9 * abs(h)):
        raise ValueError("gpe_residual requires a uniform grid")

    v = psi.values
    d2 = np.zeros_like(v)
    d2[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / (h * h)
    if psi.derivs is not None:
        dc = (psi.derivs[2:] - psi.derivs[:-2]) / (2.0 * h)
        d2[1:-1] = 2.0 * d2[1:-1] - dc

    mu_arr = Bicomplex.coerce(mu).as_array()
    g_arr = Bicomplex.coerce(g).as_array()
    W = potential_components(psi.grid, p) - mu_arr - bc_mul_arr(g_arr, bc_sqmod_arr(v))
    res = -d2 + bc_mul_arr(W, v)
    res[0] = 0.0
    res[-1] = 0.0
    return res


def phase_rotate(psi: WaveFunction, chi: float) -> WaveFunction:
    """Global phase exp(i chi) applied to values and derivs."""
    rot = Bicomplex(math.cos(chi), math.sin(chi), 0.0, 0.0).as_array()
    return WaveFunction(
        psi.grid.copy(),
        bc_mul_arr(rot, psi.values),
        None if psi.derivs is None else bc_mul_arr(rot, psi.derivs),
    )


_SYMMETRY_FLIPS = {
    # which components change sign; PT operators also reflect x -> -x
    "pt_i": (np.array([1.0, -1.0, 1.0, -1.0]), True),
    "t_j": (np.array([1.0, 1.0, -1.0, -1.0]), False),
    "pt_i_t_j": (np.array([1.0, -1.0, -1.0, 1.0]), True),
}


def apply_symmetry(psi: WaveFunction, which: str) -> WaveFunction:
    """PT_i, T_j or PT_i T_j image of a wave function ('pt_i', 't_j', 'pt_i_t_j')."""
    flips, reflect = _SYMMETRY_FLIPS[which]
    values = psi.values * flips
    derivs = None if psi.derivs is None else psi.derivs * flips
    if reflect:
        values = values[::-1].copy()
        if derivs is not None:
            derivs = -derivs[::-1]  # d/dx picks up a sign under x -> -x
        return WaveFunction(psi.grid.copy(), values, derivs)
    return WaveFunction(psi.grid.copy(), values, derivs)


def _split_grid(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    plus = (values[:, 0] + values[:, 3]) + 1j * (values[:, 2] - values[:, 1])
    minus = (values[:, 0] - values[:, 3]) + 1j * (values[:, 2] + values[:, 1])
    return plus, minus


def symmetry_defect(psi: WaveFunction, which: str) -> float:
    """Gauge-invariant distance of psi from its own symmetry image.

    The continued equation is invariant under psi -> exp(i(chi1 + j chi2)) psi,
    which in the idempotent split multiplies the plus component by an arbitrary
    nonzero complex lambda and the minus component by 1/lambda.  The defect is
    therefore measured after projecting out the best-fit lambda in each split
    component, plus the consistency |lambda_plus * lambda_minus - 1|.
    """
    image = apply_symmetry(psi, which)
    ap, am = _split_grid(psi.values)
    bp, bm = _split_grid(image.values)
    out = 0.0
    lams = []
    for a, b in zip((ap, am), (bp, bm)):
        na = np.vdot(a, a).real
        if na < 1e-300:
            lams.append(1.0 + 0j)
            continue
        lam = np.vdot(a, b) / na
        scale = math.sqrt(np.vdot(b, b).real) + 1e-300
        out = max(out, float(np.linalg.norm(b - lam * a)) / scale)
        lams.append(lam)
    out = max(out, abs(lams[0] * lams[1] - 1.0))
    return out


# Table rows: class -> the two mu components that must vanish (besides checks
# on the wave-function mapping, done when psi is supplied).
_VANISHING = {
    SymmetryClass.PT_I: ("ci", "ck"),
    SymmetryClass.T_J: ("ck", "cj"),
    SymmetryClass.PT_I_T_J: ("cj", "ci"),
}
_CLASS_OP = {SymmetryClass.PT_I: "pt_i", SymmetryClass.T_J: "t_j", SymmetryClass.PT_I_T_J: "pt_i_t_j"}


def classify_symmetry(
    mu,
    psi: WaveFunction | None = None,
    tol: float = 1e-7,
    wavefunction_tol: float = 1e-4,
) -> SymmetryClass:
    """Symmetry class from the vanishing pattern of the chemical potential.

    A class matches when both of its forbidden mu components are below `tol`.
    When the wave function is supplied, the mapping property (the state maps
    onto itself under the class operator, up to gauge) is verified; a mu
    pattern without a consistent wave-function mapping is classified as
    broken.  This matters for degenerate real pairs (self-trapped states),
    whose eigenvalues are real although the states break every symmetry.
    """
    mu = Bicomplex.coerce(mu)
    for cls in (SymmetryClass.PT_I, SymmetryClass.T_J, SymmetryClass.PT_I_T_J):
        a, b = _VANISHING[cls]
        if abs(getattr(mu, a)) < tol and abs(getattr(mu, b)) < tol:
            if psi is None or symmetry_defect(psi, _CLASS_OP[cls]) < wavefunction_tol:
                return cls
    return SymmetryClass.BROKEN
