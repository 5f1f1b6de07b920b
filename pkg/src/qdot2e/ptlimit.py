"""First-order degenerate perturbation theory on the lowest oscillator shell.

At vanishing interaction the level with total magnetic number M is (M+1)-fold
degenerate across the two exchange-symmetry blocks.  Diagonalizing the
Coulomb matrix on the n1 = n2 = 0 shell selects, already in the limit, the
unique eigenvectors that coincide with center-of-mass basis states; their
entanglement is therefore nonzero for M >= 2 even for arbitrarily weak
interaction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import entangle
from .coulomb import product_element
from .errors import DiagnosticError
from .mosh import CoeffMap, Orbital, ProductState, cm_to_ip, symmetrize


@dataclass(frozen=True)
class DegenerateSubspace:
    """Symmetrized shell states u_k = {Phi_{0,M-k+1}, Phi_{0,k-1}}_sign."""

    total_m: int
    sign: int
    members: tuple[tuple[Orbital, Orbital], ...]

    @property
    def dim(self) -> int:
        return len(self.members)


def subspace_dim(total_m: int, sign: int) -> int:
    """d_pm = [M/2] + 1/2 + (pm 1)^(M+1)/2, so that d_+ + d_- = M + 1."""
    half = total_m // 2
    if sign > 0:
        return half + 1
    return half + (total_m % 2)


def subspace(total_m: int, sign: int) -> DegenerateSubspace:
    if total_m < 0:
        raise ValueError("M must be non-negative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    members = []
    for m2 in range(total_m // 2 + 1):
        a, b = Orbital(0, total_m - m2), Orbital(0, m2)
        if sign < 0 and a == b:
            continue
        members.append((a, b))
    return DegenerateSubspace(total_m, sign, tuple(members))


@dataclass(frozen=True)
class PTResult:
    """Secular problem of the shell: V c = (Delta E / lambda) c."""

    space: DegenerateSubspace
    v_matrix: np.ndarray
    delta_e: np.ndarray  # energy corrections per unit lambda, ascending
    vectors: np.ndarray  # column k = coefficients c over the shell basis


def _fix_sign(vector: np.ndarray) -> np.ndarray:
    lead = np.argmax(np.abs(vector))
    return -vector if vector[lead] < 0 else vector


def solve_pt(total_m: int, sign: int, omega_eff: float = 1.0) -> PTResult:
    """Diagonalize the shell Coulomb matrix; corrections scale as sqrt(Omega).

    Coefficient vectors are field independent.  Degenerate corrections (only
    possible on higher shells) keep the eigensolver's ascending order.
    """
    space = subspace(total_m, sign)
    if space.dim == 0:
        raise DiagnosticError(f"empty degenerate subspace for M={total_m}, sign={sign:+d}")
    maps = [symmetrize(a, b, sign) for a, b in space.members]
    v = np.zeros((space.dim, space.dim))
    for i in range(space.dim):
        for j in range(i, space.dim):
            v[i, j] = v[j, i] = product_element(maps[i], maps[j], omega_eff)
    delta_e, vectors = np.linalg.eigh(v)
    vectors = np.column_stack([_fix_sign(vectors[:, k]) for k in range(space.dim)])
    return PTResult(space, v, delta_e, vectors)


@dataclass(frozen=True)
class LimitStateRow:
    """One lowest-shell state in both representations, with its entanglement."""

    total_m: int
    sign: int
    rank: int  # position by ascending energy correction within the block
    coefficients: tuple[float, ...]  # over the shell basis u_k
    m_cm: int
    m_rel: int
    trace_orb: float
    s: int
    ms_options: tuple[int, ...]
    trace_spin: tuple[float, ...]
    measures: tuple[float, ...]


def _cm_state_on_shell(space: DegenerateSubspace, m_cm: int, m_rel: int) -> np.ndarray:
    """Coefficients of the CM basis state over the symmetrized shell states."""
    expansion = cm_to_ip(Orbital(0, m_cm), Orbital(0, m_rel))
    coeffs = []
    for a, b in space.members:
        amp = expansion.get(ProductState(a, b), 0.0)
        coeffs.append(amp if a == b else amp * math.sqrt(2.0))
    return np.asarray(coeffs)


def limit_state_table(total_m: int) -> list[LimitStateRow]:
    """Lowest-shell eigenstates for both signs, ordered by relative m descending.

    Each perturbation-theory eigenvector is matched (up to global sign) to the
    center-of-mass state with m_cm = M - m; a failed match raises, since the
    correspondence is what the construction guarantees.
    """
    rows: list[LimitStateRow] = []
    results = {sign: solve_pt(total_m, sign) for sign in (1, -1) if subspace_dim(total_m, sign)}
    for m_rel in range(total_m, -1, -1):
        sign = 1 if m_rel % 2 == 0 else -1
        result = results[sign]
        # within a block, larger relative m means a smaller Coulomb correction
        block_ms = [m for m in range(total_m, -1, -1) if (-1) ** m == sign]
        rank = block_ms.index(m_rel)
        vector = result.vectors[:, rank]
        reference = _cm_state_on_shell(result.space, total_m - m_rel, m_rel)
        overlap = float(vector @ reference)
        if abs(abs(overlap) - 1.0) > 1e-10:
            raise DiagnosticError(
                f"shell eigenvector does not match CM state (M={total_m}, m={m_rel}, "
                f"|overlap|={abs(overlap)})"
            )
        aligned = vector if overlap > 0 else -vector
        diag = [
            sum(
                c * w
                for (a, b), c in zip(result.space.members, aligned)
                for key, w in symmetrize(a, b, sign).items()
                if key.b.m == m2
            )
            for m2 in range(total_m + 1)
        ]
        trace_orb = entangle.orbital_trace_ip(diag)
        s = (1 - (-1) ** m_rel) // 2
        ms_options = (0,) if s == 0 else (0, 1, -1)
        trace_spin = tuple(entangle.spin_trace(ms) for ms in ms_options)
        measures = tuple(
            entangle.measure_from_traces(trace_orb, ts) for ts in trace_spin
        )
        rows.append(
            LimitStateRow(
                total_m,
                sign,
                rank,
                tuple(float(c) for c in aligned),
                total_m - m_rel,
                m_rel,
                trace_orb,
                s,
                ms_options,
                trace_spin,
                measures,
            )
        )
    return rows
