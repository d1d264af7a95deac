"""Smoke tests for the Python bindings.

Deep numerical validation lives in the C++ suites; these tests check
that the bound operations are importable, run end to end, and agree
with a few frozen values.
"""

import math
import os
from pathlib import Path

import numpy as np
import pytest

import polariscope as ps

DATA_DIR = Path(os.environ["POLARISCOPE_DATA_DIR"])


@pytest.fixture(scope="module")
def config():
    return ps.load_experiment(DATA_DIR / "reference.ini")


def test_wigner_symbols():
    assert ps.clebsch_gordan(4, 4, 1, 1, 5, 5) == pytest.approx(1.0)
    assert ps.clebsch_gordan(0.5, 0.5, 0.5, -0.5, 0, 0) == pytest.approx(
        1.0 / math.sqrt(2.0)
    )
    assert ps.wigner6j(1, 0.5, 1.5, 3.5, 5, 4) == pytest.approx(1.0 / 6.0)
    with pytest.raises(ValueError):
        ps.clebsch_gordan(0.3, 0.1, 1, 0, 1, 0)


def test_species_loading(config):
    sp = config.species
    assert sp.name == "cesium_d2"
    assert sp.ground_f == 4.0
    assert sp.nuclear_spin == 3.5
    assert len(sp.excited_levels) == 4
    assert sp.excited_levels[-1].offset == 0.0


def test_alpha_coefficients(config):
    a0, a1, a2 = ps.alpha_coefficients(config.species, 4, 5)
    assert a0 == pytest.approx(11.0 / 9.0, abs=1e-14)
    assert a1 == pytest.approx(11.0 / 45.0, abs=1e-14)
    assert a2 == pytest.approx(1.0 / 45.0, abs=1e-14)


def test_tensor_operator_routes_agree(config):
    for rank in range(3):
        for comp in range(-rank, rank + 1):
            closed = ps.irreducible_tensor_operator(config.species, 4, 5, rank, comp)
            dyad = ps.dyad_tensor_operator(config.species, 4, 5, rank, comp)
            assert closed.shape == (9, 9)
            assert np.max(np.abs(closed - dyad)) < 1e-12


def test_optical_depth(config):
    od = config.cloud.optical_depth(config.species)
    assert od == pytest.approx(6.9, abs=0.2)


def test_trajectory_and_scan(config):
    t, sy, sz = ps.simulate_trajectory(
        config.species, config.cloud, config.probe.detuning, path="xz", samples=101
    )
    assert t.shape == (101,)
    assert np.max(np.abs(sy)) > 10.0 * np.max(np.abs(sz))

    ghz = 2.0 * math.pi * 1e9
    vec, ten = ps.detuning_scan(
        config.species, config.cloud, [100 * ghz, 200 * ghz], samples=101
    )
    assert vec[0] / vec[1] == pytest.approx(2.0, rel=0.01)
    assert ten[0] / ten[1] == pytest.approx(4.0, rel=0.01)


def test_measurement_chain(config):
    m = ps.measurement_strength(config.species, config.cloud, config.probe)
    assert m.meas_strength > 0.0

    y1 = ps.simulate_photocurrent(m, 1e4, 1.0, 1e-6, 1e-3, seed=7)
    y2 = ps.simulate_photocurrent(m, 1e4, 1.0, 1e-6, 1e-3, seed=7)
    assert np.array_equal(y1, y2)

    v0 = config.cloud.n_atoms * config.species.ground_f / 2.0
    t, est, var = ps.filter_photocurrent(m, 1e4, 1.0, 1e-6, 1e-3, 7, v0)
    assert var[0] == v0
    closed = ps.conditional_variance(v0, 1.0, m.meas_strength, t[-1])
    assert var[-1] == pytest.approx(closed, rel=1e-12)


def test_squeezing(config):
    snr2, w, warning = ps.snr_squeezing(
        config.species, config.cloud, config.probe, 1e-3
    )
    assert snr2 > 0.0
    assert w == pytest.approx(1.0 / (1.0 + snr2), rel=1e-12)
    assert isinstance(warning, bool)


def test_parse_quantity_units():
    assert ps.parse_quantity("150 MHz", "frequency") == pytest.approx(
        2.0 * math.pi * 150e6
    )
    with pytest.raises(ValueError):
        ps.parse_quantity("150", "frequency")
