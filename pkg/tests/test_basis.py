import math

import numpy as np
import pytest

from qdot2e.basis import (
    Mode2D,
    ModeZ,
    Role,
    fd_energy,
    fd_eval,
    genlaguerre_rule,
    hermite_rule,
    z_energy,
    z_eval,
)


def test_fd_energy_examples():
    assert fd_energy(Mode2D(0, 0), 1.0, 0.0) == 1.0
    assert fd_energy(Mode2D(0, 1), 1.929378, 1.65) == pytest.approx(2.208756, abs=1e-6)
    assert fd_energy(Mode2D(1, -2), 1.0, 0.5) == pytest.approx(6.0)


def test_fd_energy_degenerate_at_zero_field():
    # depends only on 2n + |m| when omega_L = 0
    omega = 1.37
    groups = {}
    for n in range(4):
        for m in range(-4, 5):
            groups.setdefault(2 * n + abs(m), set()).add(fd_energy(Mode2D(n, m), omega, 0.0))
    for energies in groups.values():
        assert max(energies) - min(energies) < 1e-14


def test_z_energy():
    assert z_energy(ModeZ(0), 5.0) == 2.5
    assert z_energy(ModeZ(2), 2.0) == 5.0
    with pytest.raises(ValueError):
        z_energy(ModeZ(0), math.inf)


def test_fd_eval_gaussian_peak():
    value = fd_eval(Mode2D(0, 0), Role.SINGLE, 1.0, 0.0, 0.0)
    assert value == pytest.approx(1.0 / math.sqrt(math.pi), abs=1e-15)


def _radial_overlap(mode1: Mode2D, mode2: Mode2D, role: Role, omega: float) -> float:
    """<mode1|mode2> for equal |m| via exact Gauss-Laguerre in t = alpha rho^2."""
    assert abs(mode1.m) == abs(mode2.m)
    alpha = role.scale * omega
    m_abs = abs(mode1.m)
    t, w = genlaguerre_rule(64, float(m_abs))
    rho = np.sqrt(t / alpha)
    prod = (
        fd_eval(mode1, role, omega, rho, 0.0).real
        * fd_eval(mode2, role, omega, rho, 0.0).real
    )
    # strip the weight sampled by the rule, keep the polynomial part
    poly = prod / (t**m_abs * np.exp(-t))
    return math.pi / alpha * float(np.sum(w * poly))


def test_fd_normalization_and_orthogonality_by_quadrature():
    assert _radial_overlap(Mode2D(1, 2), Mode2D(1, 2), Role.SINGLE, 1.0) == pytest.approx(
        1.0, abs=1e-12
    )
    assert abs(_radial_overlap(Mode2D(0, 1), Mode2D(1, 1), Role.SINGLE, 1.0)) < 1e-12


@pytest.mark.parametrize("role", list(Role))
def test_fd_orthonormality_whole_shells(role):
    omega = 1.618
    modes = [
        Mode2D(n, m)
        for n in range(5)
        for m in range(-8, 9)
        if 2 * n + abs(m) <= 8
    ]
    for i, a in enumerate(modes):
        for b in modes[i:]:
            if abs(a.m) != abs(b.m):
                continue  # angular factor is exactly orthogonal
            if a.m != b.m:
                continue
            expected = 1.0 if a == b else 0.0
            assert _radial_overlap(a, b, role, omega) == pytest.approx(
                expected, abs=1e-12
            )


def test_fd_parity_under_half_turn():
    rng = np.random.default_rng(7)
    for _ in range(10):
        n, m = rng.integers(0, 3), int(rng.integers(-3, 4))
        rho, phi = rng.uniform(0.1, 2.0), rng.uniform(0, 2 * math.pi)
        a = fd_eval(Mode2D(n, m), Role.SINGLE, 1.3, rho, phi + math.pi)
        b = fd_eval(Mode2D(n, m), Role.SINGLE, 1.3, rho, phi)
        assert a == pytest.approx((-1.0) ** m * b, abs=1e-12)


def test_role_scaling_identity():
    # center-of-mass functions at Omega equal single-particle ones at 2*Omega
    rho = np.linspace(0.0, 2.5, 7)
    cm = fd_eval(Mode2D(1, -2), Role.CENTER_OF_MASS, 0.9, rho, 0.4)
    single = fd_eval(Mode2D(1, -2), Role.SINGLE, 1.8, rho, 0.4)
    np.testing.assert_allclose(cm, single, atol=1e-14)
    rel = fd_eval(Mode2D(2, 1), Role.RELATIVE, 0.9, rho, 0.4)
    single_half = fd_eval(Mode2D(2, 1), Role.SINGLE, 0.45, rho, 0.4)
    np.testing.assert_allclose(rel, single_half, atol=1e-14)


def test_z_eval_odd_parity_at_origin():
    assert z_eval(ModeZ(1), Role.SINGLE, 1.0, 0.0) == 0.0


@pytest.mark.parametrize("role", list(Role))
@pytest.mark.parametrize("nz", [0, 1, 2, 3, 5])
def test_z_normalization_by_quadrature(role, nz):
    omega_z = 2.2
    beta = role.scale * omega_z
    x, w = hermite_rule(64)
    z = x / math.sqrt(beta)
    vals = z_eval(ModeZ(nz), role, omega_z, z)
    poly = vals * vals * np.exp(x * x)
    assert float(np.sum(w * poly)) / math.sqrt(beta) == pytest.approx(1.0, abs=1e-12)


def test_z_factorization_identity():
    # cm ground times relative ground equals the product of single-particle grounds
    rng = np.random.default_rng(11)
    omega_z = 1.7
    for _ in range(10):
        z1, z2 = rng.uniform(-2, 2, size=2)
        lhs = z_eval(ModeZ(0), Role.CENTER_OF_MASS, omega_z, 0.5 * (z1 + z2)) * z_eval(
            ModeZ(0), Role.RELATIVE, omega_z, z1 - z2
        )
        rhs = z_eval(ModeZ(0), Role.SINGLE, omega_z, z1) * z_eval(
            ModeZ(0), Role.SINGLE, omega_z, z2
        )
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_z_eval_rejects_planar_model():
    with pytest.raises(ValueError):
        z_eval(ModeZ(0), Role.SINGLE, math.inf, 0.0)
