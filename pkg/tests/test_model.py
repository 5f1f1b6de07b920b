import math

import pytest

from qdot2e.model import (
    Dimension,
    FieldPoint,
    ModelParams,
    effective_frequency,
    effective_interaction,
    gaas,
    parse_config,
    zeeman_shift,
)


def test_effective_frequency_values():
    assert effective_frequency(FieldPoint(0.0)) == 1.0
    assert effective_frequency(FieldPoint(1.65)) == pytest.approx(1.9293781381, abs=1e-9)
    # asymptote Omega/omega_0 ~ wl
    wl = 1e3
    assert effective_frequency(FieldPoint(wl)) == pytest.approx(wl, rel=1e-6)


def test_effective_frequency_monotone_and_bounded():
    values = [effective_frequency(FieldPoint(w)) for w in (0.0, 0.3, 1.0, 2.5, 7.0)]
    assert values[0] == 1.0
    assert all(b > a for a, b in zip(values, values[1:]))
    assert all(v >= 1.0 for v in values)


def test_effective_interaction():
    params = ModelParams(lam=2.0)
    assert effective_interaction(params, FieldPoint(0.0)) == 2.0
    # monotonically decreasing, tending to zero
    vals = [effective_interaction(params, FieldPoint(w)) for w in (0.0, 1.0, 10.0, 1e4)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-1 * vals[0]
    assert effective_interaction(ModelParams(lam=0.0), FieldPoint(3.0)) == 0.0


def test_zeeman_shift():
    params = ModelParams()  # g* = -0.44, mass ratio 0.067
    assert zeeman_shift(params, FieldPoint(1.0), 1) == pytest.approx(-0.02948, abs=1e-10)
    assert zeeman_shift(params, FieldPoint(2.3), 0) == 0.0
    assert zeeman_shift(ModelParams(g_star=0.0), FieldPoint(1.7), -1) == 0.0
    with pytest.raises(ValueError):
        zeeman_shift(params, FieldPoint(1.0), 2)


def test_param_validation():
    with pytest.raises(ValueError):
        ModelParams(wz_ratio=0.0)
    with pytest.raises(ValueError):
        ModelParams(lam=-1.0)
    with pytest.raises(ValueError):
        ModelParams(mass_ratio=0.0)
    with pytest.raises(ValueError):
        FieldPoint(-0.5)


def test_dimension_follows_wz_ratio():
    assert ModelParams().dimension is Dimension.TWO_D
    assert ModelParams(wz_ratio=5.0).dimension is Dimension.THREE_D


def test_gaas_defaults():
    params = gaas()
    assert params.lam == 2.0
    assert params.g_star == -0.44
    assert params.mass_ratio == 0.067
    assert params.hbar_omega0_mev == 3.165
    assert params.energy_to_mev(2.0) == pytest.approx(6.33)


def test_physical_scale_never_enters_scaled_results():
    # same scaled parameters, different physical scale: identical spectra
    from qdot2e.spectra import lowest_total_energy

    a = ModelParams(hbar_omega0_mev=None)
    b = ModelParams(hbar_omega0_mev=3.165)
    field = FieldPoint(0.8)
    assert lowest_total_energy(2, a, field, nmax=4) == lowest_total_energy(
        2, b, field, nmax=4
    )


def test_parse_config_roundtrip():
    text = """
    # typical dot
    wz_ratio = inf
    lambda = 2.0
    g_star = -0.44
    mass_ratio = 0.067
    hbar_omega0_meV = 3.165
    dimension = 2d
    """
    params = parse_config(text)
    assert math.isinf(params.wz_ratio)
    assert params.lam == 2.0
    assert params.dimension is Dimension.TWO_D


def test_parse_config_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_config("unknown_key = 1\n")
    with pytest.raises(ValueError):
        parse_config("wz_ratio\n")
    with pytest.raises(ValueError):
        parse_config("wz_ratio = 2.0\ndimension = 2d\n")  # inconsistent
