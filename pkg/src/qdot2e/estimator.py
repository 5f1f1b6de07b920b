"""Entanglement reconstruction from the field dependence of the addition energy.

The Hellmann-Feynman relation ties the field derivative of the relative-motion
energy to the mean squared electron separation; truncating the relative state
to its two leading radial coefficients turns that relation into a biquadratic
equation for the admixture b1^2, from which a first-order entanglement
estimate follows.  Addition-energy data enter through an exact rewriting of
the derivative, so the whole chain runs on measurable quantities plus the
segment labels (m, M_S) read off the singlet-triplet transition pattern.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from . import spectra
from .entangle import integral_I
from .errors import DiagnosticError
from .model import FieldPoint, ModelParams, effective_frequency


@dataclass(frozen=True)
class AdditionCurve:
    """Sampled addition energies with their ground-state labels.

    wl is strictly increasing; (m, M_S) must be piecewise constant.
    """

    wl: np.ndarray
    e_a: np.ndarray
    m: np.ndarray
    m_s: np.ndarray

    def __post_init__(self) -> None:
        for name in ("wl", "e_a", "m", "m_s"):
            object.__setattr__(self, name, np.asarray(getattr(self, name)))
        if not (self.wl.size == self.e_a.size == self.m.size == self.m_s.size):
            raise ValueError("curve columns must have equal length")
        if self.wl.size >= 2 and np.any(np.diff(self.wl) <= 0):
            raise ValueError("wl samples must be strictly increasing")

    def segments(self) -> list[tuple[int, int]]:
        """Half-open index ranges [start, stop) of constant (m, M_S)."""
        if self.wl.size == 0:
            return []
        out = []
        start = 0
        for i in range(1, self.wl.size):
            if self.m[i] != self.m[start] or self.m_s[i] != self.m_s[start]:
                out.append((start, i))
                start = i
        out.append((start, self.wl.size))
        return out

    @classmethod
    def from_csv(cls, text: str) -> "AdditionCurve":
        reader = csv.DictReader(io.StringIO(text))
        expected = ["wl_ratio", "E_a", "m", "M_S"]
        if reader.fieldnames != expected:
            raise ValueError(f"expected CSV header {','.join(expected)}, got {reader.fieldnames}")
        rows = [(float(r["wl_ratio"]), float(r["E_a"]), int(r["m"]), int(r["M_S"])) for r in reader]
        if not rows:
            raise ValueError("empty addition-energy table")
        wl, e_a, m, m_s = map(np.asarray, zip(*rows))
        return cls(wl, e_a, m, m_s)

    def to_csv(self, fmt=lambda x: f"{x:.12g}") -> str:
        lines = ["wl_ratio,E_a,m,M_S"]
        for wl, ea, m, ms in zip(self.wl, self.e_a, self.m, self.m_s):
            lines.append(f"{fmt(wl)},{fmt(ea)},{int(m)},{int(ms)}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class EstimateResult:
    wl: float
    m: int
    m_s: int
    f_value: float
    b1_sq: float
    b0: float
    measure_0th: float
    measure_1st: float


def f_from_erel(wl: float, m: int, derel_dwl: float) -> float:
    """F = 1 + (1 - Omega/omega_L) m - (Omega/omega_L) dE_rel/d(omega_L)."""
    if wl <= 0:
        raise DiagnosticError("F is singular at zero field")
    ratio = effective_frequency(FieldPoint(wl)) / wl
    return 1.0 + (1.0 - ratio) * m - ratio * derel_dwl


def f_from_ea(
    wl: float, m: int, m_s: int, dea_dwl: float, g_star: float, mass_ratio: float
) -> float:
    """F from the addition-energy derivative.

    F = (1 - Omega/omega_L) m + (Omega/omega_L)[g* (m*/m_e)(M_S + 1) - dE_a/d(omega_L)];
    algebraically identical to ``f_from_erel`` when E_a comes from the same
    spectra, because the one-electron terms cancel exactly.
    """
    if wl <= 0:
        raise DiagnosticError("F is singular at zero field")
    ratio = effective_frequency(FieldPoint(wl)) / wl
    return (1.0 - ratio) * m + ratio * (g_star * mass_ratio * (m_s + 1) - dea_dwl)


def solve_b1(f_value: float, m: int) -> tuple[float, float]:
    """Smaller root of (m+2) x^2 + (F-m-1) x + F^2/4 = 0 and b0 = sqrt(1-x).

    The smaller root is the perturbative branch (|b0| >> |b1|); a negative
    discriminant means the data point is outside the first-order regime.
    """
    a = m + 2.0
    b = f_value - m - 1.0
    c = 0.25 * f_value * f_value
    disc = b * b - 4.0 * a * c
    if disc < 0:
        raise DiagnosticError(
            f"negative discriminant for F={f_value}, m={m}: outside first-order regime"
        )
    b1_sq = (-b - math.sqrt(disc)) / (2.0 * a)
    if not 0.0 <= b1_sq < 1.0:
        raise DiagnosticError(f"admixture b1^2={b1_sq} outside [0, 1)")
    return b1_sq, math.sqrt(1.0 - b1_sq)


def first_order_measure(m: int, b0: float, b1_sq: float) -> float:
    """Measure with the relative state truncated to its two leading terms.

    1 - (3 - (-1)^m)/2 [I0 b0^4 + I1 (4 b0^2 + b1^2) b1^2]; reduces to the
    noninteracting closed form when b1 = 0.
    """
    b0_sq = b0 * b0
    if abs(b0_sq + b1_sq - 1.0) > 1e-10:
        raise ValueError("b0^2 + b1^2 must equal one")
    i0 = integral_I(0, 0, 0, 0, m)
    i1 = integral_I(0, 0, 1, 1, m)
    spin_factor = (3 - (-1) ** m) / 2
    return 1.0 - spin_factor * (i0 * b0_sq**2 + i1 * (4.0 * b0_sq + b1_sq) * b1_sq)


def mean_rho12_sq(
    b: np.ndarray, m: int, omega_eff: float, two_term: bool = False
) -> float:
    """Mean squared separation of the relative state with coefficients b.

    The full tridiagonal sum, or the two-term reduction
    (hbar/mu Omega)[m + 1 - 2 b0 b1 sqrt(m+1) + 2 b1^2] when ``two_term``.
    Coefficients are real; shape (n,) in 2D or (n, nz) in 3D.
    """
    b = np.asarray(b, dtype=float)
    norm = float(np.sum(b * b))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError("coefficients are not normalized")
    pref = 2.0 / omega_eff  # hbar / (mu Omega) with mu = 1/2
    if two_term:
        flat = b if b.ndim == 1 else b[:, 0]
        b0, b1 = float(flat[0]), float(flat[1])
        return pref * (m + 1 - 2.0 * b0 * b1 * math.sqrt(m + 1) + 2.0 * b1 * b1)
    if b.ndim == 1:
        b = b[:, None]
    nvals = b.shape[0]
    total = 0.0
    for n in range(nvals):
        total += float(np.sum(b[n] * b[n])) * (2 * n + m + 1)
        if n + 1 < nvals:
            total -= 2.0 * float(np.sum(b[n + 1] * b[n])) * math.sqrt((n + 1) * (n + m + 1))
    return pref * total


def simulate_curve(
    wl_values,
    params: ModelParams,
    m_max: int = 8,
    nmax: int = 8,
    nzmax: int = 6,
) -> AdditionCurve:
    """Addition-energy curve computed from the two-electron spectra."""
    wl_values = np.asarray(wl_values, dtype=float)
    e_a = np.empty_like(wl_values)
    m = np.empty(wl_values.size, dtype=int)
    m_s = np.empty(wl_values.size, dtype=int)
    for i, wl in enumerate(wl_values):
        e_a[i], m[i], m_s[i] = spectra.addition_energy(
            params, FieldPoint(float(wl)), m_max=m_max, nmax=nmax, nzmax=nzmax
        )
    return AdditionCurve(wl_values, e_a, m, m_s)


def estimate_curve(curve: AdditionCurve, params: ModelParams) -> list[EstimateResult]:
    """Per-sample entanglement estimates from an addition-energy curve.

    Derivatives are central differences inside each constant-(m, M_S)
    segment; samples within one grid step of a segment boundary are skipped
    (F jumps there).  Segments too short to differentiate are reported via
    the returned list simply containing no estimates for them.
    """
    results: list[EstimateResult] = []
    for start, stop in curve.segments():
        if stop - start < 3:
            continue
        for i in range(start + 1, stop - 1):
            wl = float(curve.wl[i])
            if wl <= 0:
                continue
            dea = float(
                (curve.e_a[i + 1] - curve.e_a[i - 1]) / (curve.wl[i + 1] - curve.wl[i - 1])
            )
            m = int(curve.m[i])
            m_s = int(curve.m_s[i])
            f_value = f_from_ea(wl, m, m_s, dea, params.g_star, params.mass_ratio)
            b1_sq, b0 = solve_b1(f_value, m)
            results.append(
                EstimateResult(
                    wl=wl,
                    m=m,
                    m_s=m_s,
                    f_value=f_value,
                    b1_sq=b1_sq,
                    b0=b0,
                    measure_0th=first_order_measure(m, 1.0, 0.0),
                    measure_1st=first_order_measure(m, b0, b1_sq),
                )
            )
    return results


def estimates_to_csv(results: list[EstimateResult], fmt=lambda x: f"{x:.12g}") -> str:
    lines = ["wl_ratio,F,b1_sq,b0,measure_0th,measure_1st"]
    for r in results:
        lines.append(
            ",".join(
                fmt(x) for x in (r.wl, r.f_value, r.b1_sq, r.b0, r.measure_0th, r.measure_1st)
            )
        )
    return "\n".join(lines) + "\n"
