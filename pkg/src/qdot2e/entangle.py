"""Linear-entropy entanglement of two-electron states by several routes.

The measure for two identical fermions is 1 - 2 Tr[rho_orb^2] Tr[rho_spin^2],
where the traces refer to the single-particle reduced density matrices of the
orbital and spin factors; Slater-rank-1 states come out exactly non-entangled.

Orbital traces are available through three routes that must agree:

* ``orbital_trace_matrix`` -- Tr[(C C^T)^2] of the two-particle coefficient
  matrix over single-particle modes;
* ``orbital_trace_schmidt`` -- the same trace from the singular values of C
  (reduces to the diagonal sum |a|^4 for Schmidt-form states);
* ``orbital_trace_cm`` -- the quadruple contraction of relative-motion
  coefficients with the mode-space I (and, in 3D, J) integrals.

The I and J integrals are evaluated exactly as finite contractions of the
shell transform, never by high-dimensional quadrature; they are independent
of the confinement parameters.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import spectra
from .model import FieldPoint, ModelParams, effective_frequency
from .mosh import CoeffMap, Orbital, ProductState, cm_to_ip


class TraceMethod(Enum):
    IP_DIAGONAL = "ip-diagonal"
    CM_IJ = "cm-ij"
    MATRIX_TRACE = "matrix-trace"
    CLOSED_FORM = "closed-form"
    FIRST_ORDER = "first-order"


@dataclass(frozen=True)
class EntanglementReport:
    m: int
    s: int
    m_s: int
    trace_orb: float
    trace_spin: float
    measure: float
    method: TraceMethod
    nmax: int | None = None
    nzmax: int | None = None


def spin_trace(m_s: int) -> float:
    """Tr[rho_spin^2] = (1 + |M_S|)/2 for a definite-symmetry spin state."""
    if m_s not in (-1, 0, 1):
        raise ValueError(f"M_S must be -1, 0 or 1, got {m_s}")
    return 0.5 * (1 + abs(m_s))


def lowest_state_spin(m: int) -> tuple[int, int, float]:
    """(S, M_S, Tr[rho_spin^2]) of the lowest state in the relative-m channel.

    The relative parity (-1)^m forces S = (1 - (-1)^m)/2, and for negative g*
    the Zeeman term selects M_S = S; the trace is then (3 - (-1)^m)/4.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    s = (1 - (-1) ** m) // 2
    return s, s, (3 - (-1) ** m) / 4


def measure_from_traces(trace_orb: float, trace_spin: float) -> float:
    return 1.0 - 2.0 * trace_orb * trace_spin


def orbital_trace_ip(a) -> float:
    """Sum |a|^4 of a Schmidt-form (diagonal) coefficient list."""
    a = np.asarray(a, dtype=float)
    norm = float(np.sum(a * a))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"coefficients are not normalized: sum of squares {norm}")
    return float(np.sum(a**4))


def _mode_matrix(cmap: CoeffMap) -> np.ndarray:
    modes: dict[Orbital, int] = {}
    for key in cmap:
        for orb in (key.a, key.b):
            if orb not in modes:
                modes[orb] = len(modes)
    mat = np.zeros((len(modes), len(modes)))
    for key, amp in cmap.items():
        mat[modes[key.a], modes[key.b]] += amp
    return mat


def orbital_trace_matrix(cmap: CoeffMap) -> float:
    """Tr[(C C^T)^2] for a normalized map over ordered products."""
    mat = _mode_matrix(cmap)
    rho = mat @ mat.T
    return float(np.sum(rho * rho))


def orbital_trace_schmidt(cmap: CoeffMap) -> float:
    """Sum of fourth powers of the singular values of the coefficient matrix."""
    sv = np.linalg.svd(_mode_matrix(cmap), compute_uv=False)
    return float(np.sum(sv**4))


@lru_cache(maxsize=None)
def _rel_vector(n: int, m: int) -> tuple[tuple[Orbital, Orbital, float], ...]:
    """cm-ground expansion of the relative state (n, m) as (mode1, mode2, amp)."""
    cmap = cm_to_ip(Orbital(0, 0), Orbital(n, m))
    return tuple((key.a, key.b, amp) for key, amp in cmap.items())


@lru_cache(maxsize=None)
def _z_vector(nz: int) -> tuple[tuple[int, int, float], ...]:
    """cm-ground expansion of the vertical relative state nz as (nz1, nz2, amp)."""
    amp = 1.0 / math.sqrt(2.0**nz)
    return tuple(
        (nz - k, k, (-amp if k % 2 else amp) * math.sqrt(math.comb(nz, k)))
        for k in range(nz + 1)
    )


def _contract4(vec1, vec2, vec3, vec4) -> float:
    """Tr[C1 C2^T C4 C3^T] for bijective (mode1 -> mode2) coefficient maps.

    Maps 1 and 3 share the first-particle mode, maps 2 and 4 likewise, and the
    two resulting bilinear forms are contracted over second-particle modes.
    """
    by1_3 = {one: (two, amp) for one, two, amp in vec3}
    g13: dict[tuple, float] = {}
    for one, two, amp in vec1:
        other = by1_3.get(one)
        if other is None:
            continue
        g13[(two, other[0])] = g13.get((two, other[0]), 0.0) + amp * other[1]
    by1_4 = {one: (two, amp) for one, two, amp in vec4}
    total = 0.0
    for one, two, amp in vec2:
        other = by1_4.get(one)
        if other is None:
            continue
        val = g13.get((two, other[0]))
        if val is not None:
            total += val * amp * other[1]
    return total


@lru_cache(maxsize=None)
def _integral_i_canonical(n1: int, n2: int, n3: int, n4: int, m: int) -> float:
    return _contract4(
        _rel_vector(n1, m), _rel_vector(n2, m), _rel_vector(n3, m), _rel_vector(n4, m)
    )


def _canonical_quadruple(n1: int, n2: int, n3: int, n4: int) -> tuple[int, int, int, int]:
    """Smallest permutation with the pairing sum preserved (first+last = middle two)."""
    best = None
    for p in itertools.permutations((n1, n2, n3, n4)):
        if p[0] + p[3] == p[1] + p[2] and (best is None or p < best):
            best = p
    return best if best is not None else (n1, n2, n3, n4)


def integral_I(n1: int, n2: int, n3: int, n4: int, m: int) -> float:
    """Mode-space contraction of four relative radial states at fixed m.

    Vanishes unless n1 + n4 = n2 + n3 and is invariant under index
    permutations that preserve that pairing; independent of the dot
    parameters.
    """
    if min(n1, n2, n3, n4) < 0:
        raise ValueError("indices must be non-negative")
    if n1 + n4 != n2 + n3:
        return 0.0
    # pairing-sum mismatch already excluded, so contraction order is (1,2,3,4)
    c1, c2, c3, c4 = _canonical_quadruple(n1, n2, n3, n4)
    return _integral_i_canonical(c1, c2, c3, c4, abs(m))


def integral_J(nz1: int, nz2: int, nz3: int, nz4: int) -> float:
    """Vertical analogue of the I contraction, over 1D oscillator modes."""
    if min(nz1, nz2, nz3, nz4) < 0:
        raise ValueError("indices must be non-negative")
    return _contract4(
        _z_vector(nz1), _z_vector(nz2), _z_vector(nz3), _z_vector(nz4)
    )


def i_tensor(nmax: int, m: int) -> np.ndarray:
    out = np.zeros((nmax + 1,) * 4)
    for n1 in range(nmax + 1):
        for n2 in range(nmax + 1):
            for n3 in range(nmax + 1):
                n4 = n2 + n3 - n1
                if 0 <= n4 <= nmax:
                    out[n1, n2, n3, n4] = integral_I(n1, n2, n3, n4, m)
    return out


def j_tensor(nz_values: tuple[int, ...]) -> np.ndarray:
    size = len(nz_values)
    out = np.zeros((size,) * 4)
    for i1, z1 in enumerate(nz_values):
        for i2, z2 in enumerate(nz_values):
            for i3, z3 in enumerate(nz_values):
                for i4, z4 in enumerate(nz_values):
                    out[i1, i2, i3, i4] = integral_J(z1, z2, z3, z4)
    return out


def orbital_trace_cm(b: np.ndarray, m: int, nz_values: tuple[int, ...] | None = None) -> float:
    """Quadruple I/J contraction of relative-motion coefficients.

    ``b`` has shape (n values,) in 2D or (n values, len(nz_values)) in 3D and
    is treated as real (the channel Hamiltonian is real symmetric).
    """
    b = np.asarray(b, dtype=float)
    if nz_values is None:
        if b.ndim != 1:
            raise ValueError("planar coefficients must be one-dimensional")
        ten = i_tensor(b.size - 1, m)
        return float(np.einsum("a,b,c,d,abcd->", b, b, b, b, ten))
    if b.ndim != 2 or b.shape[1] != len(nz_values):
        raise ValueError("3D coefficients must have shape (n values, nz values)")
    ti = i_tensor(b.shape[0] - 1, m)
    tj = j_tensor(tuple(nz_values))
    return float(
        np.einsum("au,bv,cw,dx,abcd,uvwx->", b, b, b, b, ti, tj, optimize=True)
    )


def closed_form_i0(m: int) -> Fraction:
    """Exact I(0,0,0,0;m) = (2m)! / (2^m m!)^2."""
    return Fraction(math.factorial(2 * m), (2**m * math.factorial(m)) ** 2)


def closed_form_lowest(m: int) -> float:
    """Measure of the lowest relative-m state at vanishing interaction.

    1 - (3 - (-1)^m)/2 * (2m)!/(2^m m!)^2; tends to one as m grows.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    spin_factor = Fraction(3 - (-1) ** m, 2)
    return float(1 - spin_factor * closed_form_i0(m))


def assemble_state_map(
    b: np.ndarray, m: int, nz_values: tuple[int, ...] | None = None
) -> CoeffMap:
    """CM-ground state with relative coefficients b as a map over products."""
    b = np.asarray(b, dtype=float)
    out: CoeffMap = {}
    if nz_values is None:
        for n, bn in enumerate(b):
            if bn == 0.0:
                continue
            for key, amp in cm_to_ip(Orbital(0, 0), Orbital(n, m)).items():
                out[key] = out.get(key, 0.0) + bn * amp
        return out
    for n in range(b.shape[0]):
        for iz, nz in enumerate(nz_values):
            bn = b[n, iz]
            if bn == 0.0:
                continue
            for key, amp in cm_to_ip(Orbital(0, 0, 0), Orbital(n, m, nz)).items():
                out[key] = out.get(key, 0.0) + bn * amp
    return out


def lowest_state_report(
    params: ModelParams,
    field: FieldPoint,
    m: int,
    nmax: int = 8,
    nzmax: int = 6,
    method: TraceMethod = TraceMethod.CM_IJ,
) -> EntanglementReport:
    """Entanglement of the lowest state in the relative-m channel."""
    s, m_s, tr_spin = lowest_state_spin(m)
    if method is TraceMethod.CLOSED_FORM:
        i0 = float(closed_form_i0(m))
        return EntanglementReport(
            m, s, m_s, i0, tr_spin, measure_from_traces(i0, tr_spin), method
        )
    spec = spectra.ChannelSpec.for_params(params, m, nmax=nmax, nzmax=nzmax)
    solution = spectra.solve_channel(spec, params, field)
    b = solution.b_table(0)
    if method is TraceMethod.CM_IJ:
        tr_orb = orbital_trace_cm(b, m, spec.nz_values)
    elif method is TraceMethod.MATRIX_TRACE:
        tr_orb = orbital_trace_matrix(assemble_state_map(b, m, spec.nz_values))
    elif method is TraceMethod.IP_DIAGONAL:
        tr_orb = orbital_trace_schmidt(assemble_state_map(b, m, spec.nz_values))
    else:
        raise ValueError(f"unsupported method {method}")
    return EntanglementReport(
        m,
        s,
        m_s,
        tr_orb,
        tr_spin,
        measure_from_traces(tr_orb, tr_spin),
        method,
        nmax=spec.nmax,
        nzmax=max(spec.nz_values) if spec.nz_values else None,
    )
