import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from qdot2e.basis import Mode2D, Role, fd_eval, hermite_rule
from qdot2e.mosh import (
    CmRelState,
    Orbital,
    ProductState,
    _split_pair,
    _split_pair_exact,
    a_coeff,
    cm_to_ip,
    coeff_dot,
    coeff_norm_sq,
    ip_to_cm,
    product_exchange,
    symmetrize,
)

SQ2 = math.sqrt(2.0)


def shell_states_2d(quanta: int):
    """All CM x relative label pairs with the given total quanta."""
    out = []
    for q_cm in range(quanta + 1):
        q_rel = quanta - q_cm
        for m_cm in range(-q_cm, q_cm + 1):
            if (q_cm - abs(m_cm)) % 2:
                continue
            for m in range(-q_rel, q_rel + 1):
                if (q_rel - abs(m)) % 2:
                    continue
                out.append(
                    (Orbital((q_cm - abs(m_cm)) // 2, m_cm), Orbital((q_rel - abs(m)) // 2, m))
                )
    return out


def test_a_coeff_examples():
    assert a_coeff(0, 2, 0, 1) == pytest.approx(-1 / SQ2, abs=1e-15)
    assert a_coeff(0, 2, 0, 0) == pytest.approx(0.5, abs=1e-15)
    assert a_coeff(0, 2, 0, 2) == pytest.approx(0.5, abs=1e-15)
    assert a_coeff(0, 0, 0, 0) == 1.0
    with pytest.raises(ValueError):
        a_coeff(0, 2, 1, 0)
    with pytest.raises(ValueError):
        a_coeff(2, 2, 0, 3)


def test_cm_to_ip_ground_shell_examples():
    got = cm_to_ip(Orbital(0, 0), Orbital(0, 2))
    expected = {
        ProductState(Orbital(0, 2), Orbital(0, 0)): 0.5,
        ProductState(Orbital(0, 1), Orbital(0, 1)): -1 / SQ2,
        ProductState(Orbital(0, 0), Orbital(0, 2)): 0.5,
    }
    assert set(got) == set(expected)
    for key, amp in expected.items():
        assert got[key] == pytest.approx(amp, abs=1e-14)

    assert cm_to_ip(Orbital(0, 0), Orbital(0, 0)) == {
        ProductState(Orbital(0, 0), Orbital(0, 0)): 1.0
    }

    got3 = cm_to_ip(Orbital(0, 0), Orbital(0, 3))
    coeffs = [got3[ProductState(Orbital(0, 3 - k), Orbital(0, k))] for k in range(4)]
    expected3 = np.array([1.0, -math.sqrt(3), math.sqrt(3), -1.0]) / (2 * SQ2)
    np.testing.assert_allclose(coeffs, expected3, atol=1e-14)


def test_cm_to_ip_matches_a_coeff_row():
    for m_cm, m in [(0, 4), (2, 3), (3, 1)]:
        got = cm_to_ip(Orbital(0, m_cm), Orbital(0, m))
        total = m_cm + m
        for m2 in range(total + 1):
            expected = sum(
                a_coeff(m_cm, m, j, m2 - j)
                for j in range(max(0, m2 - m), min(m2, m_cm) + 1)
            )
            key = ProductState(Orbital(0, total - m2), Orbital(0, m2))
            assert got.get(key, 0.0) == pytest.approx(expected, abs=1e-13)


def test_ip_to_cm_example():
    got = ip_to_cm(Orbital(0, 1), Orbital(0, 1))
    assert got[CmRelState(Orbital(0, 2), Orbital(0, 0))] == pytest.approx(1 / SQ2, abs=1e-14)
    assert got[CmRelState(Orbital(0, 0), Orbital(0, 2))] == pytest.approx(-1 / SQ2, abs=1e-14)
    assert len(got) == 2

    assert ip_to_cm(Orbital(0, 0), Orbital(0, 0)) == {
        CmRelState(Orbital(0, 0), Orbital(0, 0)): 1.0
    }


def test_round_trip_identity_on_shells():
    for quanta in range(7):
        for cm, rel in shell_states_2d(quanta):
            forward = cm_to_ip(cm, rel)
            back = {}
            for key, amp in forward.items():
                for k2, a2 in ip_to_cm(key.a, key.b).items():
                    back[k2] = back.get(k2, 0.0) + amp * a2
            target = CmRelState(cm, rel)
            assert back[target] == pytest.approx(1.0, abs=1e-12)
            for key, amp in back.items():
                if key != target:
                    assert abs(amp) < 1e-12


def test_transform_orthogonality_on_shells():
    for quanta in range(9):
        states = shell_states_2d(quanta)
        maps = [cm_to_ip(cm, rel) for cm, rel in states]
        for i in range(len(states)):
            for j in range(i, len(states)):
                expected = 1.0 if i == j else 0.0
                assert coeff_dot(maps[i], maps[j]) == pytest.approx(expected, abs=1e-12)


def test_selection_rules_on_every_key():
    rng = np.random.default_rng(3)
    for _ in range(25):
        cm = Orbital(int(rng.integers(0, 3)), int(rng.integers(-3, 4)))
        rel = Orbital(int(rng.integers(0, 3)), int(rng.integers(-3, 4)))
        for key in cm_to_ip(cm, rel):
            assert key.a.m + key.b.m == cm.m + rel.m
            assert key.a.quanta + key.b.quanta == cm.quanta + rel.quanta


def test_selection_rules_3d():
    cm = Orbital(1, -1, 2)
    rel = Orbital(0, 2, 1)
    expansion = cm_to_ip(cm, rel)
    assert coeff_norm_sq(expansion) == pytest.approx(1.0, abs=1e-12)
    for key in expansion:
        assert key.a.nz + key.b.nz == cm.nz + rel.nz
        assert key.a.quanta + key.b.quanta == cm.quanta + rel.quanta


def test_exchange_symmetry_follows_relative_parity():
    cases = [
        (Orbital(0, 0), Orbital(0, 2)),
        (Orbital(0, 1), Orbital(1, 1)),
        (Orbital(1, 0), Orbital(0, -3)),
        (Orbital(0, 0, 0), Orbital(0, 1, 1)),
        (Orbital(0, 2, 1), Orbital(1, 0, 2)),
    ]
    for cm, rel in cases:
        expansion = cm_to_ip(cm, rel)
        swapped = product_exchange(expansion)
        parity = rel.parity
        for key, amp in expansion.items():
            assert swapped[key] == pytest.approx(parity * amp, abs=1e-13)


def test_symmetrize():
    a, b = Orbital(0, 1), Orbital(0, 0)
    plus = symmetrize(a, b, +1)
    assert plus[ProductState(a, b)] == pytest.approx(1 / SQ2)
    assert plus[ProductState(b, a)] == pytest.approx(1 / SQ2)
    minus = symmetrize(a, b, -1)
    assert minus[ProductState(b, a)] == pytest.approx(-1 / SQ2)
    assert symmetrize(a, a, -1) == {}
    assert symmetrize(a, a, +1) == {ProductState(a, a): 1.0}
    with pytest.raises(ValueError):
        symmetrize(a, b, 0)


def test_exact_fractions_validate_floats():
    for p in range(7):
        for q in range(7 - p):
            floats = _split_pair(p, q)
            exact = _split_pair_exact(p, q)
            assert set(floats) == set(exact)
            for key, amp in floats.items():
                sign, amp_sq = exact[key]
                assert math.copysign(1.0, amp) == sign
                assert amp * amp == pytest.approx(float(amp_sq), rel=1e-14)
            # exact normalization: amplitudes sum to one in squares
            assert sum(sq for _, sq in exact.values()) == Fraction(1)


def test_amplitudes_against_quadrature_oracle():
    """4D Gauss-Hermite overlap of actual wavefunctions, exact for polynomials."""
    x, w = hermite_rule(14)
    x1, y1, x2, y2 = np.meshgrid(x, x, x, x, indexing="ij")
    weight = (
        w[:, None, None, None]
        * w[None, :, None, None]
        * w[None, None, :, None]
        * w[None, None, None, :]
    )
    r1, p1 = np.hypot(x1, y1), np.arctan2(y1, x1)
    r2, p2 = np.hypot(x2, y2), np.arctan2(y2, x2)
    rc, pc = np.hypot(x1 + x2, y1 + y2) / 2, np.arctan2(y1 + y2, x1 + x2)
    rr, pr = np.hypot(x1 - x2, y1 - y2), np.arctan2(y1 - y2, x1 - x2)
    gauss = np.exp(-(x1**2 + y1**2 + x2**2 + y2**2))

    def overlap(ip_a: Orbital, ip_b: Orbital, cm: Orbital, rel: Orbital) -> complex:
        bra = np.conj(
            fd_eval(Mode2D(ip_a.n, ip_a.m), Role.SINGLE, 1.0, r1, p1)
            * fd_eval(Mode2D(ip_b.n, ip_b.m), Role.SINGLE, 1.0, r2, p2)
        )
        ket = fd_eval(Mode2D(cm.n, cm.m), Role.CENTER_OF_MASS, 1.0, rc, pc) * fd_eval(
            Mode2D(rel.n, rel.m), Role.RELATIVE, 1.0, rr, pr
        )
        return complex(np.sum(weight * bra * ket / gauss))

    cases = [
        (Orbital(0, 0), Orbital(1, 0)),
        (Orbital(1, 0), Orbital(0, 2)),
        (Orbital(0, 1), Orbital(1, -1)),
        (Orbital(2, 0), Orbital(0, 0)),
    ]
    for cm, rel in cases:
        expansion = cm_to_ip(cm, rel)
        for key, amp in expansion.items():
            got = overlap(key.a, key.b, cm, rel)
            assert got.imag == pytest.approx(0.0, abs=1e-12)
            assert got.real == pytest.approx(amp, abs=1e-12)
