import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

import oracle
from thzlos import absorption as ab
from thzlos.absorption import CONTINUUM_ONLY, D_BAND, FULL, THZ_WINDOW, LineSet
from thzlos.errors import (
    FrequencyOutOfValidityRange,
    InvalidFrequency,
    InvalidMixingRatio,
    ModelError,
    NegativeDistance,
    ValidityRangeWarning,
)

MU50 = 0.0157
F_LINE2 = 100 * ab.SPEED_OF_LIGHT * 6.11

freqs = st.floats(50e9, 500e9)
mus = st.floats(0.0, 0.2)
line_ids = st.sampled_from(ab.LINE_IDS)
line_sets = st.frozensets(line_ids).map(LineSet)


def test_line_centers():
    expected = [118.72, 183.17, 324.98, 380.14, 439.20, 447.89]
    got = [ab.line_center_hz(i) / 1e9 for i in ab.LINE_IDS]
    assert_allclose(got, expected, atol=0.005)


def test_water_lines_vanish_in_dry_air():
    for i in range(2, 7):
        assert ab.line_coefficient(i, ab.line_center_hz(i), 0.0) == 0.0


def test_oxygen_line_persists_in_dry_air():
    y = ab.line_coefficient(1, 118.7e9, 0.0)
    assert y > 0
    assert ab.line_coefficient(1, ab.line_center_hz(1), 0.0) == pytest.approx(
        3.2948887604227566e-4, rel=1e-12)


def test_line2_at_center():
    assert ab.line_coefficient(2, F_LINE2, MU50) == pytest.approx(9.045242265056825e-3, rel=1e-12)


def test_continuum_fit_values():
    assert ab.continuum_fit(300e9, 0.0) == 0.0
    f = 250e9
    assert ab.continuum_fit(f, MU50) == pytest.approx(2e-4 + 0.915e-112 * f ** 9.42, rel=1e-12)
    assert ab.continuum_fit(450e9, MU50) == pytest.approx(5.6285391446645994e-3, rel=1e-12)


def test_dry_air_full_set_is_oxygen_line():
    f = np.linspace(100e9, 450e9, 501)
    assert_array_equal(ab.kappa(f, 0.0, FULL), ab.line_coefficient(1, f, 0.0))
    assert ab.kappa(300e9, 0.0) == ab.line_coefficient(1, 300e9, 0.0)


def test_kappa_line2_plus_fit():
    k = ab.kappa(F_LINE2, MU50, LineSet.of(2))
    assert k == pytest.approx(9.246384039495666e-3, rel=1e-12)


def test_absorption_coefficient_record():
    rec = ab.absorption_coefficient(300e9, MU50, D_BAND)
    assert rec.kappa == ab.kappa(300e9, MU50, D_BAND)
    assert rec.frequency == 300e9 and rec.mu == MU50 and rec.lines == D_BAND


def test_empty_line_set_is_continuum_only():
    assert ab.kappa(300e9, MU50, CONTINUUM_ONLY) == ab.continuum_fit(300e9, MU50)


def test_line_set_parsing():
    assert LineSet.parse("d-band") == LineSet.parse("1,2") == D_BAND
    assert LineSet.parse("thz-window") == THZ_WINDOW
    assert LineSet.parse("full") == LineSet.parse("all") == LineSet.parse("6,5,4,3,2,1")
    assert LineSet.parse("none") == CONTINUUM_ONLY
    assert D_BAND.label() == "d-band" and LineSet.of(1, 3).label() == "1,3"
    assert FULL.include_fit
    for bad in ("7", "0", "x", "", "1,,a"):
        with pytest.raises(ModelError):
            LineSet.parse(bad)


def test_invalid_inputs():
    with pytest.raises(InvalidFrequency):
        ab.line_coefficient(1, 0.0, MU50)
    with pytest.raises(InvalidFrequency):
        ab.continuum_fit(-1e9, MU50)
    with pytest.raises(InvalidMixingRatio):
        ab.line_coefficient(2, 200e9, 0.21)
    with pytest.raises(InvalidMixingRatio):
        ab.continuum_fit(200e9, -0.01)
    with pytest.raises(NegativeDistance):
        ab.transmittance(200e9, MU50, -1.0)
    with pytest.raises(ModelError):
        ab.line_coefficient(7, 200e9, MU50)


def test_validity_range_policy():
    with pytest.warns(ValidityRangeWarning):
        ab.kappa(90e9, MU50)
    with pytest.raises(FrequencyOutOfValidityRange):
        ab.kappa(460e9, MU50, strict=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ab.kappa(np.array([100e9, 450e9]), MU50, strict=True)


def test_transmittance_and_loss():
    assert ab.transmittance(300e9, MU50, 0.0) == 1.0
    assert ab.absorption_loss_db(300e9, MU50, 0.0) == 0.0
    tau = ab.transmittance(F_LINE2, MU50, 1000.0, LineSet.of(2))
    assert tau == pytest.approx(math.exp(-9.246384039495666), rel=1e-12)
    loss = ab.absorption_loss_db(F_LINE2, MU50, 1000.0, LineSet.of(2))
    assert loss == pytest.approx(40.15653565911267, rel=1e-12)
    assert ab.absorption_loss_db(300e9, MU50, 2000.0) == pytest.approx(
        2 * ab.absorption_loss_db(300e9, MU50, 1000.0), rel=1e-15)


def test_oracle_agreement_spot_values():
    for f in (100e9, 118.7e9, 183e9, 250e9, 325e9, 380e9, 440e9, 450e9):
        for mu in (0.0, 0.0031, 0.0157, 0.0282, 0.2):
            assert ab.kappa(f, mu) == pytest.approx(float(oracle.kappa(f, mu)), rel=1e-12)


@settings(max_examples=300)
@given(line_ids, freqs, mus)
def test_lines_nonnegative(i, f, mu):
    assert ab.line_coefficient(i, f, mu) >= 0.0
    assert ab.continuum_fit(f, mu) >= 0.0


@given(line_ids, freqs, mus, mus)
def test_humidity_monotonicity(i, f, mu_a, mu_b):
    lo, hi = sorted((mu_a, mu_b))
    y_lo, y_hi = ab.line_coefficient(i, f, lo), ab.line_coefficient(i, f, hi)
    if i == 1:
        assert y_hi <= y_lo * (1 + 1e-12)
    else:
        assert y_hi >= y_lo * (1 - 1e-12)


@given(line_ids, st.floats(0.0, 20e9), mus)
def test_line_symmetry(i, offset, mu):
    fc = ab.line_center_hz(i)
    assert ab.line_coefficient(i, fc + offset, mu) == pytest.approx(
        ab.line_coefficient(i, fc - offset, mu), rel=1e-6)


@given(freqs, mus, line_sets)
def test_subset_dominance(f, mu, lines):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ValidityRangeWarning)
        assert ab.kappa(f, mu, lines) <= ab.kappa(f, mu, FULL)


@given(st.floats(100e9, 450e9), mus, st.floats(0, 1e4), st.floats(1e-3, 1e4))
def test_transmittance_decreases_with_distance(f, mu, d1, dd):
    assert ab.transmittance(f, mu, d1 + dd) < ab.transmittance(f, mu, d1) or \
        ab.transmittance(f, mu, d1) == 0.0


def test_peak_locations():
    for i in ab.LINE_IDS:
        fc = ab.line_center_hz(i)
        grid = np.round(fc / 1e6) * 1e6 + np.arange(-5000, 5001) * 1e6
        k = int(np.argmax(ab.line_coefficient(i, grid, MU50)))
        assert k == int(np.argmin(np.abs(grid - fc)))


def test_array_inputs_keep_shape():
    f = np.linspace(100e9, 450e9, 12).reshape(3, 4)
    assert ab.kappa(f, MU50).shape == (3, 4)
    assert isinstance(ab.kappa(200e9, MU50), float)
