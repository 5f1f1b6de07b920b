"""Scaled dot parameters shared by every other module.

Internal units throughout the package: hbar = m* = omega_0 = l_0 = 1, so
energies are in units of hbar*omega_0 and lengths in units of the lateral
oscillator length l_0.  A dot is then fully specified by the vertical
confinement ratio omega_z/omega_0 (infinite selects the planar model), the
scaled Coulomb strength lambda (the Wigner parameter at zero field), and, per
field point, the Larmor ratio omega_L/omega_0.  Conversion to physical units
happens only at output time via ``hbar_omega0_mev``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path


class Dimension(Enum):
    TWO_D = "2d"
    THREE_D = "3d"


@dataclass(frozen=True)
class ModelParams:
    """Dot parameters in scaled units.

    Defaults correspond to a typical GaAs dot (m*/m_e = 0.067, g* = -0.44,
    lambda = 2) in the planar limit omega_z >> omega_0.
    """

    wz_ratio: float = math.inf
    lam: float = 2.0
    g_star: float = -0.44
    mass_ratio: float = 0.067
    hbar_omega0_mev: float | None = None

    def __post_init__(self) -> None:
        if not self.wz_ratio > 0:
            raise ValueError(f"wz_ratio must be positive, got {self.wz_ratio}")
        if self.lam < 0:
            raise ValueError(f"lambda must be non-negative, got {self.lam}")
        if not self.mass_ratio > 0:
            raise ValueError(f"mass_ratio must be positive, got {self.mass_ratio}")
        if self.hbar_omega0_mev is not None and not self.hbar_omega0_mev > 0:
            raise ValueError("hbar_omega0_meV must be positive when given")

    @property
    def dimension(self) -> Dimension:
        return Dimension.TWO_D if math.isinf(self.wz_ratio) else Dimension.THREE_D

    @property
    def is_2d(self) -> bool:
        return self.dimension is Dimension.TWO_D

    def energy_to_mev(self, energy: float) -> float:
        """Convert an energy from hbar*omega_0 units to meV."""
        if self.hbar_omega0_mev is None:
            raise ValueError("hbar_omega0_meV is not set on these parameters")
        return energy * self.hbar_omega0_mev


def gaas(**overrides) -> ModelParams:
    """Typical GaAs dot parameters with the physical scale attached."""
    return replace(ModelParams(hbar_omega0_mev=3.165), **overrides)


@dataclass(frozen=True)
class FieldPoint:
    """Magnetic field strength expressed as the Larmor ratio omega_L/omega_0."""

    wl_ratio: float = 0.0

    def __post_init__(self) -> None:
        if not self.wl_ratio >= 0:
            raise ValueError(f"wl_ratio must be non-negative, got {self.wl_ratio}")


def effective_frequency(field: FieldPoint) -> float:
    """Effective lateral confinement Omega/omega_0 = sqrt(1 + (omega_L/omega_0)^2)."""
    return math.hypot(1.0, field.wl_ratio)


def effective_interaction(params: ModelParams, field: FieldPoint) -> float:
    """Coulomb strength relative to the effective confinement, lambda_Omega.

    Equals lambda at zero field and decays like B^(-1/2) at strong fields,
    where the confinement dominates the interaction.
    """
    return params.lam / math.sqrt(effective_frequency(field))


def zeeman_shift(params: ModelParams, field: FieldPoint, m_s: int) -> float:
    """Spin energy g* (m*/m_e) (omega_L/omega_0) M_S in hbar*omega_0 units.

    Uses mu_B B = (m*/m_e) hbar omega_L to trade the Bohr magneton for the
    Larmor ratio.
    """
    if m_s not in (-1, 0, 1):
        raise ValueError(f"M_S must be -1, 0 or 1, got {m_s}")
    return params.g_star * params.mass_ratio * field.wl_ratio * m_s


_CONFIG_KEYS = {
    "wz_ratio",
    "lambda",
    "g_star",
    "mass_ratio",
    "hbar_omega0_meV",
    "dimension",
}


def parse_config(text: str) -> ModelParams:
    """Parse ``key = value`` lines into ModelParams.

    Recognized keys: wz_ratio (``inf`` allowed), lambda, g_star, mass_ratio,
    hbar_omega0_meV, dimension (``2d``/``3d``).  Blank lines and lines starting
    with ``#`` are ignored.  A dimension key, when present, must agree with
    wz_ratio.
    """
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        values[key] = value.strip()

    kwargs = {}
    if "wz_ratio" in values:
        kwargs["wz_ratio"] = float(values["wz_ratio"])
    if "lambda" in values:
        kwargs["lam"] = float(values["lambda"])
    if "g_star" in values:
        kwargs["g_star"] = float(values["g_star"])
    if "mass_ratio" in values:
        kwargs["mass_ratio"] = float(values["mass_ratio"])
    if "hbar_omega0_meV" in values:
        kwargs["hbar_omega0_mev"] = float(values["hbar_omega0_meV"])
    params = ModelParams(**kwargs)
    if "dimension" in values:
        declared = Dimension(values["dimension"].lower())
        if declared is not params.dimension:
            raise ValueError(
                f"dimension {declared.value!r} inconsistent with wz_ratio {params.wz_ratio}"
            )
    return params


def load_config(path: str | Path) -> ModelParams:
    return parse_config(Path(path).read_text(encoding="utf-8"))
