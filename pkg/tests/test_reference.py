import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from thzlos import reference as ref
from thzlos.absorption import D_BAND, FULL
from thzlos.atmosphere import Environment
from thzlos.errors import MissingMetadata, ParseError, UnitError

HEADER = "# source=test\n# temperature_c=25\n# rh_percent=90\n# distance_m=1000\n"


def test_load_three_rows(tmp_path):
    p = tmp_path / "ref.csv"
    p.write_text(HEADER + "freq_hz,loss_db\n1e11,1.0\n2e11,2.0\n3e11,3.0\n", encoding="utf-8")
    curve = ref.load_reference(p)
    assert curve.frequency.tolist() == [1e11, 2e11, 3e11]
    assert curve.loss.tolist() == [1.0, 2.0, 3.0]
    assert curve.metadata["rh_percent"] == 90.0 and curve.source == "test"


def test_ghz_header_scales_and_crlf():
    text = HEADER.replace("\n", "\r\n") + "freq_ghz,loss_db\r\n100,1\r\n150.5,2\r\n"
    curve = ref.load_reference(io.StringIO(text))
    assert curve.frequency.tolist() == [100e9, 150.5e9]


@pytest.mark.parametrize("body, exc", [
    ("freq_hz,loss_db\n1e11,1\n1e11,2\n", ParseError),
    ("freq_hz,loss_db\n2e11,1\n1e11,2\n", ParseError),
    ("1e11,1\n2e11,2\n", ParseError),
    ("", ParseError),
    ("freq_hz,loss_db\n1e11,abc\n2e11,1\n", ParseError),
    ("freq_hz,loss_db\n1e11,1,5\n2e11,1\n", ParseError),
    ("freq_hz,loss_db\n1e11,1\n", ParseError),
    ("freq_thz,loss_db\n0.1,1\n0.2,2\n", UnitError),
    ("freq_hz,loss_np\n1e11,1\n2e11,2\n", UnitError),
])
def test_parse_errors(body, exc):
    with pytest.raises(exc):
        ref.parse_reference(HEADER + body)


def test_self_comparison_is_exact():
    f = np.linspace(100e9, 450e9, 351)
    curve = ref.model_curve(f, 1000.0, Environment(25.0, 90.0))
    report = ref.compare(curve)
    assert report.max_abs_error == 0.0 and report.rms_error == 0.0


def test_round_trip_through_csv():
    f = np.linspace(100e9, 450e9, 36)
    curve = ref.model_curve(f, 1000.0, mu=0.0157, quantity="total")
    again = ref.parse_reference(ref.format_reference(curve))
    assert np.array_equal(again.frequency, curve.frequency)
    assert ref.compare(again).max_abs_error == 0.0


def test_constant_offset():
    f = np.linspace(100e9, 450e9, 101)
    curve = ref.model_curve(f, 1000.0, Environment(25.0, 90.0)).shifted(3.0)
    report = ref.compare(curve)
    assert report.max_abs_error == pytest.approx(3.0, abs=1e-9)
    assert report.rms_error == pytest.approx(3.0, abs=1e-9)
    assert report.max_abs_error >= report.rms_error


def test_worst_frequency():
    f = np.linspace(100e9, 450e9, 11)
    curve = ref.model_curve(f, 1000.0, Environment(25.0, 50.0))
    bumped = curve.loss.copy()
    bumped[7] -= 5.0
    report = ref.compare(ref.ReferenceCurve(f, bumped, curve.metadata))
    assert report.worst_frequency == f[7]
    assert report.errors[7] == pytest.approx(5.0)
    assert report.summary()["worst_frequency_hz"] == f[7]


def test_subset_compare_against_full_curve():
    f = np.linspace(110e9, 170e9, 61)
    curve = ref.model_curve(f, 1000.0, Environment(25.0, 50.0), FULL)
    report = ref.compare(curve, D_BAND)
    assert np.all(report.errors <= 0)


@pytest.mark.parametrize("meta", [
    {"temperature_c": 25.0, "rh_percent": 50.0},
    {"distance_m": 1000.0, "rh_percent": 50.0},
    {"distance_m": 1000.0},
])
def test_missing_metadata(meta):
    curve = ref.ReferenceCurve([1e11, 2e11], [1.0, 2.0], meta)
    with pytest.raises(MissingMetadata):
        ref.compare(curve)


@given(st.floats(-50, 50), st.permutations(range(20)))
def test_translation_and_permutation(c, perm):
    f = np.linspace(120e9, 440e9, 20)
    base = ref.model_curve(f, 500.0, Environment(25.0, 70.0))
    noisy = ref.ReferenceCurve(f, base.loss + np.sin(np.arange(20)), base.metadata)
    r0 = ref.compare(noisy)
    r1 = ref.compare(noisy.shifted(c))
    np.testing.assert_allclose(r1.errors, r0.errors - c, atol=1e-9)
    p = np.array(perm)
    err = r0.errors[p]
    assert np.max(np.abs(err)) == r0.max_abs_error
    assert np.sqrt(np.mean(err ** 2)) == pytest.approx(r0.rms_error, rel=1e-12)
