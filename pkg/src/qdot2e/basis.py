"""Fock-Darwin and 1D-oscillator basis functions, energies and evaluation.

The same functional forms serve three roles that differ only in the oscillator
length: single-particle states use the scale parameter Omega (in scaled
units), center-of-mass states use 2*Omega (total mass 2 m*) and
relative-motion states use Omega/2 (reduced mass m*/2); the vertical modes
rescale omega_z the same way.  All radial functions are positive at small
radius (positive leading Laguerre coefficient), which fixes the global phases
of every transform coefficient downstream.
"""

from __future__ import annotations

import math
from enum import Enum
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.special import eval_genlaguerre, eval_hermite, roots_genlaguerre, roots_hermite


class Mode2D(NamedTuple):
    """Fock-Darwin label: radial n >= 0 and magnetic m of either sign."""

    n: int
    m: int


class ModeZ(NamedTuple):
    """Vertical oscillator label nz >= 0."""

    nz: int


class Role(Enum):
    """Oscillator-length rescaling for the three kinds of coordinates."""

    SINGLE = 1.0
    CENTER_OF_MASS = 2.0
    RELATIVE = 0.5

    @property
    def scale(self) -> float:
        return self.value


def fd_energy(mode: Mode2D, omega_eff: float, omega_l: float) -> float:
    """Fock-Darwin level Omega (2n + |m| + 1) - omega_L m, in hbar*omega_0 units.

    The same formula gives center-of-mass and relative-motion levels.
    """
    if mode.n < 0:
        raise ValueError("radial quantum number must be non-negative")
    return omega_eff * (2 * mode.n + abs(mode.m) + 1) - omega_l * mode.m


def z_energy(mode: ModeZ, omega_z: float) -> float:
    """Vertical oscillator level omega_z (nz + 1/2)."""
    if mode.nz < 0:
        raise ValueError("nz must be non-negative")
    if math.isinf(omega_z):
        raise ValueError("2D model has no vertical quanta (omega_z is infinite)")
    return omega_z * (mode.nz + 0.5)


def _radial_norm(n: int, m_abs: int) -> float:
    return math.sqrt(math.factorial(n) / math.factorial(n + m_abs))


def fd_eval(mode: Mode2D, role: Role, omega_eff: float, rho, phi):
    """Value of the normalized Fock-Darwin function at (rho, phi).

    Returns a complex amplitude; parity under phi -> phi + pi is (-1)^m.
    """
    n, m = mode
    if n < 0:
        raise ValueError("radial quantum number must be non-negative")
    alpha = role.scale * omega_eff
    m_abs = abs(m)
    t = alpha * np.square(rho)
    radial = (
        math.sqrt(alpha / math.pi)
        * _radial_norm(n, m_abs)
        * np.power(np.sqrt(alpha) * np.asarray(rho, dtype=float), m_abs)
        * np.exp(-0.5 * t)
        * eval_genlaguerre(n, m_abs, t)
    )
    return radial * np.exp(1j * m * np.asarray(phi, dtype=float))


def z_eval(mode: ModeZ, role: Role, omega_z: float, z):
    """Value of the normalized vertical oscillator function at z."""
    if mode.nz < 0:
        raise ValueError("nz must be non-negative")
    if math.isinf(omega_z):
        raise ValueError("2D model has no vertical modes (omega_z is infinite)")
    beta = role.scale * omega_z
    xi = math.sqrt(beta) * np.asarray(z, dtype=float)
    norm = (beta / math.pi) ** 0.25 / math.sqrt(2.0**mode.nz * math.factorial(mode.nz))
    return norm * np.exp(-0.5 * xi**2) * eval_hermite(mode.nz, xi)


@lru_cache(maxsize=None)
def genlaguerre_rule(nodes: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Laguerre rule for the weight t^alpha e^(-t) on (0, inf).

    Exact for polynomial integrands of degree <= 2*nodes - 1.
    """
    x, w = roots_genlaguerre(nodes, alpha)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=None)
def hermite_rule(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Hermite rule for the weight e^(-x^2) on the real line."""
    x, w = roots_hermite(nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w
