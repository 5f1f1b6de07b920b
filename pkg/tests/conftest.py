"""Shared oracle helpers: independent routes used to freeze expected values."""

from __future__ import annotations

import numpy as np

from qdot2e.basis import Mode2D, fd_energy
from qdot2e.model import FieldPoint, ModelParams, effective_frequency
from qdot2e.spectra import ChannelSpec, solve_channel


def kohn_matched_spectrum(
    total_m: int, sign: int, nmax: int, params: ModelParams, field: FieldPoint
) -> np.ndarray:
    """Separable reference spectrum on the same quanta-capped block.

    For every channel (n_cm, m_cm, m) with m_cm + m = total_m and relative
    parity matching the exchange sign, solves the relative problem truncated
    to the quanta budget left by the center-of-mass excitation, and adds the
    center-of-mass level.  Channels with negative relative m reuse the |m|
    solve shifted by omega_L (|m| - m).
    """
    quanta_max = abs(total_m) + 2 * nmax
    omega = effective_frequency(field)
    wl = field.wl_ratio
    values: list[float] = []
    for m in range(-quanta_max, quanta_max + 1):
        if (-1) ** abs(m) != sign:
            continue
        m_cm = total_m - m
        max_ncm = (quanta_max - abs(m) - abs(m_cm)) // 2
        for n_cm in range(max_ncm + 1):
            budget = quanta_max - 2 * n_cm - abs(m_cm)
            if budget < abs(m):
                continue
            spec = ChannelSpec(m=abs(m), nmax=(budget - abs(m)) // 2)
            solution = solve_channel(spec, params, field)
            shift = wl * (abs(m) - m)
            e_cm = fd_energy(Mode2D(n_cm, m_cm), omega, wl)
            values.extend(float(e) + e_cm + shift for e in solution.energies)
    return np.sort(np.asarray(values))
