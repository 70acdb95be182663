import pytest
from hypothesis import given, strategies as st

from ncwell.constants import (
    CODATA_HBAR,
    ConfigError,
    Constants,
    Experiment,
    dump_config,
    load_config,
    parse_config,
    wavenumber,
)


def test_defaults_are_neutron_values():
    c, e = parse_config("")
    assert (c.hbar, c.mass, c.g_accel) == (1.059e-34, 1.675e-27, 9.81)
    assert (e.delta_e1_exp, e.v_mean) == (6.55e-32, 6.5)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.cfg"
    path.write_text("")
    assert load_config(path) == (Constants(), Experiment())


def test_override_single_key(tmp_path):
    path = tmp_path / "g.cfg"
    path.write_text("# standard gravity\ng_accel = 9.80665  # m/s^2\n")
    c, e = load_config(path)
    assert c == Constants(g_accel=9.80665)
    assert e == Experiment()


def test_codata_override():
    c, _ = parse_config(f"hbar = {CODATA_HBAR!r}")
    assert c.hbar == CODATA_HBAR


@pytest.mark.parametrize("text", ["mass = -1", "hbar = 0", "v_mean = -6.5", "g_accel = nan", "mass = inf"])
def test_nonpositive_rejected(text):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.key == text.split("=")[0].strip()


def test_parse_errors_name_line_and_key():
    with pytest.raises(ConfigError) as info:
        parse_config("mass = 1e-27\n\ng_accel: 9.8\n")
    assert info.value.line == 3
    with pytest.raises(ConfigError) as info:
        parse_config("hbar = 1e-34\nspeed = 3\n")
    assert (info.value.line, info.value.key) == (2, "speed")
    with pytest.raises(ConfigError) as info:
        parse_config("mass = heavy")
    assert (info.value.line, info.value.key) == (1, "mass")
    with pytest.raises(ConfigError):
        parse_config("mass = 1\nmass = 2")


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")


def test_wavenumber_examples():
    c, e = Constants(), Experiment()
    k = wavenumber(c, e)
    # 1.675e-27 * 6.5 / 1.059e-34
    assert k == pytest.approx(1.0280925401322002e8, rel=1e-15)
    assert k == pytest.approx(1.03e8, rel=5e-3)
    assert wavenumber(c, v_mean=0.0) == 0.0
    assert wavenumber(c, Experiment(v_mean=13.0)) == pytest.approx(2.0561850802644004e8, rel=1e-15)


positive = st.floats(min_value=1e-3, max_value=1e3)


@given(positive, positive, positive, st.floats(min_value=0.1, max_value=10))
def test_wavenumber_scaling(hbar_scale, mass_scale, v, lam):
    c = Constants(hbar=1e-34 * hbar_scale, mass=1e-27 * mass_scale)
    base = wavenumber(c, Experiment(v_mean=v))
    assert wavenumber(c, Experiment(v_mean=v * lam)) == pytest.approx(lam * base, rel=1e-12)
    heavier = Constants(hbar=c.hbar, mass=c.mass * lam)
    assert wavenumber(heavier, Experiment(v_mean=v)) == pytest.approx(lam * base, rel=1e-12)
    bigger_hbar = Constants(hbar=c.hbar * lam, mass=c.mass)
    assert wavenumber(bigger_hbar, Experiment(v_mean=v)) == pytest.approx(base / lam, rel=1e-12)


@given(
    st.builds(
        lambda *v: v,
        *[st.decimals(min_value="0.001", max_value="999", places=3).map(float)] * 5,
    )
)
def test_round_trip(values):
    hbar, mass, g, de, v = values
    c = Constants(hbar=hbar * 1e-34, mass=mass * 1e-27, g_accel=g)
    e = Experiment(delta_e1_exp=de * 1e-32, v_mean=v)
    assert parse_config(dump_config(c, e)) == (c, e)
