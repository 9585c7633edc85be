"""Commutative bicomplex arithmetic.

Numbers of the form z = c1 + ci*i + cj*j + ck*k with two imaginary units
i^2 = j^2 = -1, their product k = ij (so k^2 = +1), and a commutative,
associative multiplication.  The ring has zero divisors: (1+k)(1-k) = 0,
so division is only defined when both idempotent components are nonzero.

Two conjugations act on the units independently: T_i sends i -> -i (and
hence k -> -k), T_j sends j -> -j (and k -> -k).  The idempotent
decomposition along (1 +- k)/2 projects a bicomplex number onto two
independent complex numbers carrying the unit j,

    z_plus  = (c1 + ck) + j (cj - ci),
    z_minus = (c1 - ck) + j (cj + ci),

equivalent to substituting i -> -j and i -> +j.  Both projections are ring
homomorphisms, which is what makes the bicomplex eigenproblems and ODEs in
this package separable.

The module also provides helpers operating on numpy arrays of shape
(..., 4) holding the (1, i, j, k) components, used by the grid code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Bicomplex",
    "IdempotentPair",
    "ZeroDivisorError",
    "unit_circle",
    "bc_array",
    "bc_mul_arr",
    "bc_conj_i_arr",
    "bc_sqmod_arr",
]

#: magnitude below which an idempotent component counts as a zero divisor
ZERO_DIVISOR_TOL = 1e-300


class ZeroDivisorError(ZeroDivisionError):
    """Division by a bicomplex number with a vanishing idempotent component."""


@dataclass(frozen=True)
class IdempotentPair:
    """The two j-complex projections of a bicomplex number.

    Both fields are Python complex numbers whose imaginary part is the
    coefficient of the unit j.
    """

    plus: complex
    minus: complex

    def join(self) -> "Bicomplex":
        p, m = self.plus, self.minus
        return Bicomplex(
            0.5 * (p.real + m.real),
            0.5 * (m.imag - p.imag),
            0.5 * (p.imag + m.imag),
            0.5 * (p.real - m.real),
        )


@dataclass(frozen=True)
class Bicomplex:
    """A bicomplex number c1 + ci*i + cj*j + ck*k."""

    c1: float = 0.0
    ci: float = 0.0
    cj: float = 0.0
    ck: float = 0.0

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def from_complex(z: complex, unit: str = "i") -> "Bicomplex":
        """Embed an ordinary complex number, its imaginary part on `unit`."""
        if unit == "i":
            return Bicomplex(z.real, z.imag, 0.0, 0.0)
        if unit == "j":
            return Bicomplex(z.real, 0.0, z.imag, 0.0)
        raise ValueError(f"unit must be 'i' or 'j', got {unit!r}")

    @staticmethod
    def coerce(x) -> "Bicomplex":
        if isinstance(x, Bicomplex):
            return x
        if isinstance(x, complex):
            return Bicomplex(x.real, x.imag, 0.0, 0.0)
        if isinstance(x, (int, float, np.floating, np.integer)):
            return Bicomplex(float(x), 0.0, 0.0, 0.0)
        raise TypeError(f"cannot coerce {type(x).__name__} to Bicomplex")

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        o = Bicomplex.coerce(other)
        return Bicomplex(self.c1 + o.c1, self.ci + o.ci, self.cj + o.cj, self.ck + o.ck)

    __radd__ = __add__

    def __neg__(self):
        return Bicomplex(-self.c1, -self.ci, -self.cj, -self.ck)

    def __sub__(self, other):
        return self + (-Bicomplex.coerce(other))

    def __rsub__(self, other):
        return Bicomplex.coerce(other) + (-self)

    def __mul__(self, other):
        o = Bicomplex.coerce(other)
        a1, ai, aj, ak = self.c1, self.ci, self.cj, self.ck
        b1, bi, bj, bk = o.c1, o.ci, o.cj, o.ck
        return Bicomplex(
            a1 * b1 - ai * bi - aj * bj + ak * bk,
            a1 * bi + ai * b1 - aj * bk - ak * bj,
            a1 * bj + aj * b1 - ai * bk - ak * bi,
            a1 * bk + ak * b1 + ai * bj + aj * bi,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Bicomplex.coerce(other)
        p = o.split()
        if abs(p.plus) < ZERO_DIVISOR_TOL or abs(p.minus) < ZERO_DIVISOR_TOL:
            raise ZeroDivisorError(f"division by zero divisor {o}")
        s = self.split()
        return IdempotentPair(s.plus / p.plus, s.minus / p.minus).join()

    def __rtruediv__(self, other):
        return Bicomplex.coerce(other) / self

    # -- conjugations and projections -----------------------------------------

    def conj_i(self) -> "Bicomplex":
        """T_i: i -> -i (flips the ci and ck components)."""
        return Bicomplex(self.c1, -self.ci, self.cj, -self.ck)

    def conj_j(self) -> "Bicomplex":
        """T_j: j -> -j (flips the cj and ck components)."""
        return Bicomplex(self.c1, self.ci, -self.cj, -self.ck)

    def conj_ij(self) -> "Bicomplex":
        """T_i T_j: flips the ci and cj components."""
        return Bicomplex(self.c1, -self.ci, -self.cj, self.ck)

    def conj(self, which: str) -> "Bicomplex":
        """Dispatch on 'i', 'j' or 'ij'."""
        try:
            return {"i": self.conj_i, "j": self.conj_j, "ij": self.conj_ij}[which]()
        except KeyError:
            raise ValueError(f"which must be 'i', 'j' or 'ij', got {which!r}") from None

    def split(self) -> IdempotentPair:
        """Idempotent projections (substitutions i -> -j and i -> +j)."""
        return IdempotentPair(
            complex(self.c1 + self.ck, self.cj - self.ci),
            complex(self.c1 - self.ck, self.cj + self.ci),
        )

    # -- misc ------------------------------------------------------------------

    def norm4(self) -> float:
        """Euclidean norm of the four real components."""
        return math.sqrt(self.c1**2 + self.ci**2 + self.cj**2 + self.ck**2)

    def isclose(self, other, tol: float = 1e-12) -> bool:
        return (self - Bicomplex.coerce(other)).norm4() <= tol

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.ci, self.cj, self.ck])

    @staticmethod
    def from_array(a) -> "Bicomplex":
        return Bicomplex(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def to_text(self) -> str:
        """Serialize as the four decimal fields 'c1 ci cj ck'."""
        return " ".join(repr(c) for c in (self.c1, self.ci, self.cj, self.ck))

    @staticmethod
    def from_text(s: str) -> "Bicomplex":
        c1, ci, cj, ck = (float(t) for t in s.split())
        return Bicomplex(c1, ci, cj, ck)

    def __repr__(self):
        return f"Bicomplex({self.c1:.12g}{self.ci:+.12g}i{self.cj:+.12g}j{self.ck:+.12g}k)"


def join(pair: IdempotentPair) -> Bicomplex:
    """Inverse of Bicomplex.split (module-level convenience)."""
    return pair.join()


def unit_circle(theta: float, unit: str = "j") -> Bicomplex:
    """cos(theta) + unit * sin(theta) for unit 'i' or 'j'."""
    c, s = math.cos(theta), math.sin(theta)
    if unit == "i":
        return Bicomplex(c, s, 0.0, 0.0)
    if unit == "j":
        return Bicomplex(c, 0.0, s, 0.0)
    raise ValueError(f"unit must be 'i' or 'j', got {unit!r}")


# -- array helpers (component layout [..., (1, i, j, k)]) ----------------------


def bc_array(z) -> np.ndarray:
    """Component array of a Bicomplex / complex / real scalar."""
    return Bicomplex.coerce(z).as_array()


def bc_mul_arr(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Componentwise bicomplex product of (..., 4) arrays (broadcasting)."""
    a1, ai, aj, ak = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b1, bi, bj, bk = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            a1 * b1 - ai * bi - aj * bj + ak * bk,
            a1 * bi + ai * b1 - aj * bk - ak * bj,
            a1 * bj + aj * b1 - ai * bk - ak * bi,
            a1 * bk + ak * b1 + ai * bj + aj * bi,
        ],
        axis=-1,
    )


def bc_conj_i_arr(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[..., 1] *= -1.0
    out[..., 3] *= -1.0
    return out


def bc_sqmod_arr(a: np.ndarray) -> np.ndarray:
    """Continued square modulus psi * T_i(psi) of a (..., 4) array.

    Only the 1- and j-components are nonzero; the i- and k-components vanish
    identically and are returned as exact zeros.
    """
    p1, pi, pj, pk = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    out = np.zeros_like(a)
    out[..., 0] = p1 * p1 + pi * pi - pj * pj - pk * pk
    out[..., 2] = 2.0 * (p1 * pj + pi * pk)
    return out
