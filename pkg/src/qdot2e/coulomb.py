"""Matrix elements of the Coulomb repulsion 1/r12 in the relative basis.

All elements are returned per unit interaction strength; the factor lambda
multiplies outside.  Planar elements are exact Gauss-Laguerre quadratures of
Laguerre products against the weight t^(|m|-1/2) e^(-t) and scale as
sqrt(Omega).  Three-dimensional elements use the integral transform
1/r = (2/sqrt(pi)) Int_0^inf exp(-u^2 r^2) du, whose lateral and vertical
factors are closed-form Gaussian moment sums; the outer u-integral is a
mapped Gauss-Legendre rule.

Caches are plain module-level dicts filled on first use (read-mostly
memoization; CPython dict operations are atomic).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import eval_genlaguerre, gammaln, roots_legendre

from .basis import genlaguerre_rule
from .mosh import CoeffMap, CmRelState, Orbital, ProductState, ip_to_cm

_rel2d_cache: dict[tuple[int, int, int], float] = {}
_rel3d_cache: dict[tuple, float] = {}
_ip_map_cache: dict[ProductState, CoeffMap] = {}


def _rel2d_unit(n: int, n2: int, m_abs: int) -> float:
    """<n,m|1/rho|n2,m> in the relative basis at Omega = 1."""
    key = (min(n, n2), max(n, n2), m_abs)
    cached = _rel2d_cache.get(key)
    if cached is not None:
        return cached
    nodes = (n + n2) // 2 + 8
    t, w = genlaguerre_rule(nodes, m_abs - 0.5)
    integral = float(np.sum(w * eval_genlaguerre(n, m_abs, t) * eval_genlaguerre(n2, m_abs, t)))
    norm = math.exp(
        0.5
        * (
            gammaln(n + 1)
            + gammaln(n2 + 1)
            - gammaln(n + m_abs + 1)
            - gammaln(n2 + m_abs + 1)
        )
    )
    value = math.sqrt(0.5) * norm * integral
    _rel2d_cache[key] = value
    return value


def rel_element_2d(n: int, n2: int, m: int, omega_eff: float) -> float:
    """Planar relative-basis element <n,m|1/rho12|n2,m>, per unit lambda.

    Diagonal in m by axial symmetry; scales as sqrt(Omega).
    """
    if n < 0 or n2 < 0:
        raise ValueError("radial indices must be non-negative")
    return math.sqrt(omega_eff) * _rel2d_unit(n, n2, abs(m))


@lru_cache(maxsize=None)
def _laguerre_coeffs(n: int, m_abs: int) -> tuple[float, ...]:
    """Monomial coefficients of L_n^m: sum_i (-1)^i C(n+m, n-i) t^i / i!."""
    return tuple(
        (-1.0) ** i * math.comb(n + m_abs, n - i) / math.factorial(i) for i in range(n + 1)
    )


@lru_cache(maxsize=None)
def _hermite_coeffs(n: int) -> tuple[float, ...]:
    """Monomial coefficients of the physicists' Hermite polynomial H_n."""
    coeffs = np.polynomial.hermite.herm2poly([0.0] * n + [1.0])
    return tuple(float(c) for c in coeffs)


def _lateral_moment(n: int, n2: int, m_abs: int, s) -> np.ndarray:
    """<n,m| exp(-(s-1) t) |n2,m> with t the scaled squared radius.

    Equals sum over Laguerre coefficient pairs of (m+i+j)! / s^(m+i+j+1),
    normalized; s = 1 + u^2/beta for the screening factor exp(-u^2 rho^2).
    """
    s = np.asarray(s, dtype=float)
    ci = _laguerre_coeffs(n, m_abs)
    cj = _laguerre_coeffs(n2, m_abs)
    out = np.zeros_like(s)
    for i, a in enumerate(ci):
        for j, b in enumerate(cj):
            p = m_abs + i + j
            out += a * b * math.factorial(p) * s ** (-(p + 1))
    norm = math.exp(
        0.5
        * (
            gammaln(n + 1)
            + gammaln(n2 + 1)
            - gammaln(n + m_abs + 1)
            - gammaln(n2 + m_abs + 1)
        )
    )
    return norm * out


def _vertical_moment(nz: int, nz2: int, a) -> np.ndarray:
    """<nz| exp(-u^2 z^2) |nz2> with a = 1 + u^2/gamma, gamma the z scale."""
    a = np.asarray(a, dtype=float)
    conv = np.convolve(_hermite_coeffs(nz), _hermite_coeffs(nz2))
    out = np.zeros_like(a)
    for power, c in enumerate(conv):
        if c == 0.0 or power % 2:
            continue
        q = power // 2
        # Int x^(2q) e^(-a x^2) dx = Gamma(q + 1/2) / a^(q + 1/2)
        out += c * math.gamma(q + 0.5) * a ** (-(q + 0.5))
    norm = 1.0 / math.sqrt(
        math.pi * 2.0 ** (nz + nz2) * math.factorial(nz) * math.factorial(nz2)
    )
    return norm * out


@lru_cache(maxsize=None)
def _mapped_legendre(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre rule mapped onto u in (0, inf) via u = s/(1-s)."""
    x, w = roots_legendre(nodes)
    s = 0.5 * (x + 1.0)
    u = s / (1.0 - s)
    jac = 0.5 / (1.0 - s) ** 2
    return u, w * jac


def rel_element_3d(
    n: int,
    nz: int,
    n2: int,
    nz2: int,
    m: int,
    omega_eff: float,
    omega_z: float,
    nodes: int = 128,
) -> float:
    """3D relative-basis element <n,m,nz|1/r12|n2,m,nz2>, per unit lambda."""
    if n < 0 or n2 < 0 or nz < 0 or nz2 < 0:
        raise ValueError("indices must be non-negative")
    if (nz + nz2) % 2:
        raise ValueError("odd-parity vertical combination vanishes identically")
    key = (min((n, nz), (n2, nz2)), max((n, nz), (n2, nz2)), abs(m), omega_eff, omega_z, nodes)
    cached = _rel3d_cache.get(key)
    if cached is not None:
        return cached
    beta = 0.5 * omega_eff
    gamma = 0.5 * omega_z
    u, w = _mapped_legendre(nodes)
    integrand = _lateral_moment(n, n2, abs(m), 1.0 + u * u / beta) * _vertical_moment(
        nz, nz2, 1.0 + u * u / gamma
    )
    value = 2.0 / math.sqrt(math.pi) * float(np.sum(w * integrand))
    _rel3d_cache[key] = value
    return value


def _rel_element(rel1: Orbital, rel2: Orbital, omega_eff: float, omega_z: float | None) -> float:
    if rel1.nz is None:
        return rel_element_2d(rel1.n, rel2.n, rel1.m, omega_eff)
    return rel_element_3d(rel1.n, rel1.nz, rel2.n, rel2.nz, rel1.m, omega_eff, omega_z)


def _ip_map(state: ProductState) -> CoeffMap:
    cached = _ip_map_cache.get(state)
    if cached is None:
        cached = ip_to_cm(state.a, state.b)
        _ip_map_cache[state] = cached
    return cached


def coeffmap_element(
    bra: CoeffMap, ket: CoeffMap, omega_eff: float, omega_z: float | None = None
) -> float:
    """Coulomb element between two states given as maps over CM x rel labels.

    1/r12 is diagonal in the CM labels and in the relative m; odd vertical
    parity pairs drop out.
    """
    grouped: dict[tuple, list[tuple[Orbital, float]]] = {}
    for key, amp in ket.items():
        grouped.setdefault((key.cm, key.rel.m), []).append((key.rel, amp))
    total = 0.0
    for key, amp in bra.items():
        matches = grouped.get((key.cm, key.rel.m))
        if not matches:
            continue
        for rel2, amp2 in matches:
            if key.rel.nz is not None and (key.rel.nz + rel2.nz) % 2:
                continue
            total += amp * amp2 * _rel_element(key.rel, rel2, omega_eff, omega_z)
    return total


def product_element(
    bra: CoeffMap, ket: CoeffMap, omega_eff: float, omega_z: float | None = None
) -> float:
    """Coulomb element between two states given as maps over ordered products."""
    bra_cm: CoeffMap = {}
    for state, amp in bra.items():
        for key, a in _ip_map(state).items():
            bra_cm[key] = bra_cm.get(key, 0.0) + amp * a
    ket_cm: CoeffMap = {}
    for state, amp in ket.items():
        for key, a in _ip_map(state).items():
            ket_cm[key] = ket_cm.get(key, 0.0) + amp * a
    return coeffmap_element(bra_cm, ket_cm, omega_eff, omega_z)


def ip_element(
    bra: ProductState, ket: ProductState, omega_eff: float, omega_z: float | None = None
) -> float:
    """<bra|1/r12|ket> between individual-particle products, per unit lambda.

    Exactly zero unless total m matches; symmetric in bra and ket.
    """
    m_bra = bra.a.m + bra.b.m
    m_ket = ket.a.m + ket.b.m
    if m_bra != m_ket:
        return 0.0
    return coeffmap_element(_ip_map(bra), _ip_map(ket), omega_eff, omega_z)
