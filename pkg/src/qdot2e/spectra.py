"""Relative-motion channels, IP blocks, ground-state scans and addition energies.

The orbital Hamiltonian separates into center-of-mass and relative parts; only
the latter carries the interaction, so each relative-m channel is a dense real
symmetric matrix in the relative Fock-Darwin basis (vertical quanta restricted
to even values, which is the parity of every lowest state).  The alternative
route diagonalizes the same Hamiltonian in the symmetrized individual-particle
basis at fixed total m; the two spectra must coincide where both are
converged, which is the cross-validation used by the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import coulomb
from .basis import Mode2D, ModeZ, fd_energy, z_energy
from .errors import DiagnosticError
from .model import FieldPoint, ModelParams, effective_frequency, zeeman_shift
from .mosh import CoeffMap, Orbital, ProductState, ip_to_cm, symmetrize


@dataclass(frozen=True)
class ChannelSpec:
    """Truncation of one relative-motion channel at fixed m >= 0."""

    m: int
    nmax: int = 8
    nz_values: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("channel m must be non-negative")
        if self.nmax < 0:
            raise ValueError("nmax must be non-negative")
        if self.nz_values is not None:
            if not self.nz_values:
                raise ValueError("nz_values must be non-empty in 3D")
            if any(nz < 0 or nz % 2 for nz in self.nz_values):
                raise ValueError("vertical quanta of lowest states must be even")

    @classmethod
    def for_params(
        cls, params: ModelParams, m: int, nmax: int = 8, nzmax: int = 6
    ) -> "ChannelSpec":
        if params.is_2d:
            return cls(m=m, nmax=nmax)
        return cls(m=m, nmax=nmax, nz_values=tuple(range(0, nzmax + 1, 2)))

    @property
    def labels(self) -> list[tuple[int, int | None]]:
        if self.nz_values is None:
            return [(n, None) for n in range(self.nmax + 1)]
        return [(n, nz) for n in range(self.nmax + 1) for nz in self.nz_values]


@dataclass(frozen=True)
class RelSolution:
    """Eigenenergies and coefficients of one relative-motion channel."""

    spec: ChannelSpec
    energies: np.ndarray
    coeffs: np.ndarray  # column k = coefficients of state k over spec.labels

    def b_table(self, k: int) -> np.ndarray:
        """Coefficients of state k, shaped (n,) in 2D or (n, nz) in 3D."""
        column = self.coeffs[:, k]
        if self.spec.nz_values is None:
            return column.copy()
        return column.reshape(self.spec.nmax + 1, len(self.spec.nz_values)).copy()


def rho_sq_matrix(spec: ChannelSpec, basis_omega: float) -> np.ndarray:
    """Lateral rho^2 in the relative basis at scale basis_omega: tridiagonal in n.

    Elements (2n + m + 1), -sqrt(n (n+m)), -sqrt((n+1)(n+m+1)) times
    hbar/(mu Omega) with mu = 1/2.
    """
    labels = spec.labels
    size = len(labels)
    pref = 2.0 / basis_omega
    mat = np.zeros((size, size))
    for i, (n, nz) in enumerate(labels):
        for j, (n2, nz2) in enumerate(labels):
            if nz != nz2:
                continue
            if n == n2:
                mat[i, j] = 2 * n + spec.m + 1
            elif n2 == n - 1:
                mat[i, j] = -math.sqrt(n * (n + spec.m))
            elif n2 == n + 1:
                mat[i, j] = -math.sqrt((n + 1) * (n + spec.m + 1))
    return pref * mat


def channel_matrix(
    spec: ChannelSpec,
    params: ModelParams,
    field: FieldPoint,
    basis_omega: float | None = None,
) -> np.ndarray:
    """Relative-motion Hamiltonian in the Fock-Darwin basis at scale basis_omega.

    By default the basis is adapted to the field (basis_omega = Omega), which
    makes the non-interacting part diagonal.  A pinned basis_omega detunes the
    oscillator and adds the tridiagonal correction (mu/2)(Omega^2 -
    basis_omega^2) rho^2; pinning the basis while stepping the field is what
    makes the Hellmann-Feynman relation exact for the truncated model.
    """
    omega = effective_frequency(field)
    if basis_omega is None:
        basis_omega = omega
    labels = spec.labels
    size = len(labels)
    mat = np.zeros((size, size))
    for i, (n, nz) in enumerate(labels):
        diag = basis_omega * (2 * n + spec.m + 1) - field.wl_ratio * spec.m
        if nz is not None:
            diag += z_energy(ModeZ(nz), params.wz_ratio)
        mat[i, i] = diag
    if omega != basis_omega:
        mu = 0.5
        mat += 0.5 * mu * (omega**2 - basis_omega**2) * rho_sq_matrix(spec, basis_omega)
    if params.lam:
        for i, (n, nz) in enumerate(labels):
            for j in range(i, size):
                n2, nz2 = labels[j]
                if nz is None:
                    element = coulomb.rel_element_2d(n, n2, spec.m, basis_omega)
                else:
                    element = coulomb.rel_element_3d(
                        n, nz, n2, nz2, spec.m, basis_omega, params.wz_ratio
                    )
                mat[i, j] += params.lam * element
                if i != j:
                    mat[j, i] = mat[i, j]
    return mat


def solve_channel(
    spec: ChannelSpec,
    params: ModelParams,
    field: FieldPoint,
    basis_omega: float | None = None,
) -> RelSolution:
    """Diagonalize one relative-motion channel.

    Energies ascend; each eigenvector is normalized with its (n=0, nz=0)
    component non-negative.  The lowest eigenvalue is variational, hence
    non-increasing as the truncation grows.
    """
    mat = channel_matrix(spec, params, field, basis_omega)
    energies, vectors = np.linalg.eigh(mat)
    signs = np.where(vectors[0, :] < 0, -1.0, 1.0)
    return RelSolution(spec, energies, vectors * signs)


def cm_ground_energy(params: ModelParams, field: FieldPoint) -> float:
    omega = effective_frequency(field)
    if params.is_2d:
        return omega
    return omega + 0.5 * params.wz_ratio


def lowest_state_labels(m: int) -> tuple[int, int]:
    """(S, M_S) of the lowest state in channel m for negative g*."""
    s = (1 - (-1) ** m) // 2
    return s, s


def lowest_total_energy(
    m: int,
    params: ModelParams,
    field: FieldPoint,
    nmax: int = 8,
    nzmax: int = 6,
    solution: RelSolution | None = None,
) -> float:
    """Ground energy of the (m_cm = 0, m) tower including the Zeeman shift."""
    if solution is None:
        spec = ChannelSpec.for_params(params, m, nmax=nmax, nzmax=nzmax)
        solution = solve_channel(spec, params, field)
    _, m_s = lowest_state_labels(m)
    return (
        cm_ground_energy(params, field)
        + float(solution.energies[0])
        + zeeman_shift(params, field, m_s)
    )


@dataclass(frozen=True)
class GroundStateSegment:
    wl_lo: float
    wl_hi: float
    m: int
    s: int
    m_s: int
    measure_lo: float | None = None
    measure_hi: float | None = None


def _ground_m(
    wl: float, m_max: int, params: ModelParams, nmax: int, nzmax: int
) -> tuple[int, float]:
    field = FieldPoint(wl)
    best_m, best_e = 0, math.inf
    for m in range(m_max + 1):
        energy = lowest_total_energy(m, params, field, nmax=nmax, nzmax=nzmax)
        if energy < best_e:
            best_m, best_e = m, energy
    if best_m == m_max:
        raise DiagnosticError(
            f"ground-state search hit the m ceiling (m_max = {m_max}) at wl = {wl}"
        )
    return best_m, best_e


def ground_state_scan(
    wl_grid,
    m_max: int,
    params: ModelParams,
    nmax: int = 8,
    nzmax: int = 6,
    boundary_tol: float = 1e-6,
) -> list[GroundStateSegment]:
    """Piecewise-constant (m, S) labeling of the ground state over a field grid.

    Segment boundaries are refined by bisection on the energy-difference sign
    change down to ``boundary_tol`` in wl.
    """
    wl_grid = np.asarray(wl_grid, dtype=float)
    if wl_grid.ndim != 1 or wl_grid.size < 2:
        raise ValueError("wl_grid must contain at least two points")
    if np.any(np.diff(wl_grid) <= 0):
        raise ValueError("wl_grid must be strictly increasing")

    labels = [_ground_m(wl, m_max, params, nmax, nzmax)[0] for wl in wl_grid]

    def energy_gap(wl: float, m_new: int, m_old: int) -> float:
        field = FieldPoint(wl)
        return lowest_total_energy(m_new, params, field, nmax, nzmax) - lowest_total_energy(
            m_old, params, field, nmax, nzmax
        )

    boundaries: list[float] = []
    for i in range(len(labels) - 1):
        if labels[i] == labels[i + 1]:
            continue
        lo, hi = float(wl_grid[i]), float(wl_grid[i + 1])
        m_old, m_new = labels[i], labels[i + 1]
        while hi - lo > boundary_tol:
            mid = 0.5 * (lo + hi)
            if energy_gap(mid, m_new, m_old) > 0:
                lo = mid
            else:
                hi = mid
        boundaries.append(0.5 * (lo + hi))

    segments: list[GroundStateSegment] = []
    edges = [float(wl_grid[0])] + boundaries + [float(wl_grid[-1])]
    seg_labels = [labels[0]]
    for i in range(len(labels) - 1):
        if labels[i + 1] != labels[i]:
            seg_labels.append(labels[i + 1])
    for (lo, hi), m in zip(zip(edges[:-1], edges[1:]), seg_labels):
        s, m_s = lowest_state_labels(m)
        segments.append(GroundStateSegment(lo, hi, m, s, m_s))
    return segments


@dataclass(frozen=True)
class IpBlockSolution:
    """Eigensolve of one (total m, exchange sign) block of the full Hamiltonian."""

    total_m: int
    sign: int
    basis: tuple[tuple[Orbital, Orbital], ...]
    energies: np.ndarray
    vectors: np.ndarray  # column k = state k over the symmetrized basis

    def state_map(self, k: int) -> CoeffMap:
        """Eigenstate k as a map over ordered individual-particle products."""
        out: CoeffMap = {}
        for amp, (a, b) in zip(self.vectors[:, k], self.basis):
            if amp == 0.0:
                continue
            for key, w in symmetrize(a, b, self.sign).items():
                out[key] = out.get(key, 0.0) + amp * w
        return out


def _single_particle_orbitals(quanta: int, is_2d: bool) -> list[Orbital]:
    out = []
    for q in range(quanta + 1):
        for m in range(-q, q + 1):
            rest = q - abs(m)
            if is_2d:
                if rest % 2 == 0:
                    out.append(Orbital(rest // 2, m))
            else:
                out.extend(Orbital(n, m, rest - 2 * n) for n in range(rest // 2 + 1))
    return out


def ip_block_basis(
    total_m: int, sign: int, quanta_max: int, is_2d: bool = True
) -> list[tuple[Orbital, Orbital]]:
    """Canonical symmetrized pairs with m1 + m2 = total_m, quanta capped."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    singles = _single_particle_orbitals(quanta_max, is_2d)
    pairs = []
    for a in singles:
        for b in singles:
            if a.m + b.m != total_m or a.quanta + b.quanta > quanta_max:
                continue
            if b > a:
                continue  # canonical representative: a >= b
            if sign < 0 and a == b:
                continue
            pairs.append((a, b))
    pairs.sort(key=lambda p: (p[0].quanta + p[1].quanta, p))
    return pairs


def ip_block_solve(
    total_m: int,
    sign: int,
    nmax: int,
    params: ModelParams,
    field: FieldPoint,
) -> IpBlockSolution:
    """Diagonalize the interacting Hamiltonian in a symmetrized IP block.

    The basis keeps every symmetrized product with m1 + m2 = total_m up to
    total oscillator quanta total_m + 2*nmax, which is closed under the
    CM x relative shell transform; the spectrum therefore reproduces the
    Kohn-separable sum of CM and relative energies where converged.
    """
    quanta_max = abs(total_m) + 2 * nmax
    omega = effective_frequency(field)
    pairs = ip_block_basis(total_m, sign, quanta_max, params.is_2d)
    if not pairs:
        raise DiagnosticError(f"empty IP block for M={total_m}, sign={sign:+d}")
    size = len(pairs)

    diag = np.zeros(size)
    for i, (a, b) in enumerate(pairs):
        e = fd_energy(Mode2D(a.n, a.m), omega, field.wl_ratio) + fd_energy(
            Mode2D(b.n, b.m), omega, field.wl_ratio
        )
        if not params.is_2d:
            e += z_energy(ModeZ(a.nz), params.wz_ratio) + z_energy(
                ModeZ(b.nz), params.wz_ratio
            )
        diag[i] = e
    mat = np.diag(diag)

    if params.lam:
        # Transform each symmetrized state once; the interaction is block
        # diagonal over (CM labels, relative m) on the CM side.
        maps = []
        key_index: dict = {}
        for a, b in pairs:
            cm_side: CoeffMap = {}
            for key, w in symmetrize(a, b, sign).items():
                for ck, amp in ip_to_cm(key.a, key.b).items():
                    cm_side[ck] = cm_side.get(ck, 0.0) + w * amp
            maps.append(cm_side)
            for ck in cm_side:
                key_index.setdefault(ck, len(key_index))
        t = np.zeros((size, len(key_index)))
        for i, cm_side in enumerate(maps):
            for ck, amp in cm_side.items():
                t[i, key_index[ck]] = amp
        v_cm = np.zeros((len(key_index),) * 2)
        keys = list(key_index)
        by_group: dict = {}
        for ck in keys:
            by_group.setdefault((ck.cm, ck.rel.m), []).append(ck)
        for group in by_group.values():
            for ck1 in group:
                for ck2 in group:
                    if key_index[ck2] < key_index[ck1]:
                        continue
                    rel1, rel2 = ck1.rel, ck2.rel
                    if rel1.nz is not None and (rel1.nz + rel2.nz) % 2:
                        continue
                    if rel1.nz is None:
                        element = coulomb.rel_element_2d(rel1.n, rel2.n, rel1.m, omega)
                    else:
                        element = coulomb.rel_element_3d(
                            rel1.n, rel1.nz, rel2.n, rel2.nz, rel1.m, omega, params.wz_ratio
                        )
                    i1, i2 = key_index[ck1], key_index[ck2]
                    v_cm[i1, i2] = element
                    v_cm[i2, i1] = element
        mat = mat + params.lam * (t @ v_cm @ t.T)

    energies, vectors = np.linalg.eigh(mat)
    return IpBlockSolution(total_m, sign, tuple(pairs), energies, vectors)


def addition_energy(
    params: ModelParams,
    field: FieldPoint,
    m_max: int = 8,
    nmax: int = 8,
    nzmax: int = 6,
) -> tuple[float, int, int]:
    """E_tot(2) - 2 E_tot(1) and the two-electron ground labels (m, M_S).

    The one-electron ground state has spin projection -1/2, so its Zeeman
    term enters with the opposite sign of g* (negative g* raises it).
    """
    m, e2 = _ground_m(field.wl_ratio, m_max, params, nmax, nzmax)
    omega = effective_frequency(field)
    e1 = omega + zeeman_shift(params, field, -1) / 2.0
    if not params.is_2d:
        e1 += 0.5 * params.wz_ratio
    _, m_s = lowest_state_labels(m)
    return e2 - 2.0 * e1, m, m_s
