import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import signal

from filtersynth import butterworth, validate_spec
from filtersynth.butterworth import ButterworthGeometry, cutoff_frequency, guarded_ceil, minimal_order, valid_poles
from filtersynth.core import EdgesOutOfOrder, evaluate, magnitude_db, stages_from_poles
from filtersynth.response import closed_form_butterworth

HALF_POWER_DB = 10 * math.log10(2)


def loss_db(n, wc, w):
    """Closed-form loss of an order-n Butterworth at w."""
    return 10 * math.log10(1 + (w / wc) ** (2 * n))


def brute_force_order(spec):
    """Smallest n whose passband-exact design also meets the stopband."""
    for n in range(1, 200):
        wc = spec.omega_p / (10 ** (spec.Ap / 10) - 1) ** (1 / (2 * n))
        if loss_db(n, wc, spec.omega_s) >= spec.As - 1e-9:
            return n
    raise AssertionError("no order found")


def test_minimal_order_reference():
    assert minimal_order(validate_spec(0.5, 100, 20, 200)) == 5


def test_minimal_order_clamps_to_one():
    assert minimal_order(validate_spec(3.0103, 1, 3.0103 + 1e-9, 2)) == 1


def test_minimal_order_exact_two():
    spec = validate_spec(3.0103, 1, 40, 10)
    assert minimal_order(spec) == 2
    wc = cutoff_frequency(spec, 2)
    assert loss_db(2, wc, 1) == pytest.approx(3.0103, abs=1e-9)
    assert loss_db(2, wc, 10) >= 40 - 1e-3


def test_guarded_ceil():
    assert guarded_ceil(2.0 - 1e-12) == 2
    assert guarded_ceil(2.0 + 1e-12) == 2
    assert guarded_ceil(2.0 + 1e-6) == 3
    assert guarded_ceil(4.832) == 5


def test_cutoff_reference():
    spec = validate_spec(0.5, 100, 20, 200)
    assert cutoff_frequency(spec, 5) == pytest.approx(123.4120164, abs=1e-3)


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_cutoff_half_power_edge(n):
    spec = validate_spec(3.0103, 1, 60, 100)
    assert cutoff_frequency(spec, n) == pytest.approx(1.0, rel=1e-5)


def test_cutoff_order_six():
    spec = validate_spec(0.5, 100, 20, 200)
    wc = cutoff_frequency(spec, 6)
    # Value frozen from the passband-equality condition solved by bisection.
    lo, hi = 100.0, 200.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if loss_db(6, mid, 100) > 0.5:
            lo = mid
        else:
            hi = mid
    assert wc == pytest.approx(lo, rel=1e-12)
    assert wc == pytest.approx(119.160195, abs=1e-5)
    assert loss_db(6, wc, 100) == pytest.approx(0.5, abs=1e-12)


def test_stopband_corner_option():
    spec = validate_spec(0.5, 100, 20, 200)
    wc = cutoff_frequency(spec, 5, "stopband")
    assert loss_db(5, wc, 200) == pytest.approx(20, abs=1e-9)
    assert loss_db(5, wc, 100) < 0.5
    with pytest.raises(ValueError):
        cutoff_frequency(spec, 5, "middle")


def test_geometry():
    g5 = ButterworthGeometry(5)
    assert (g5.total_poles, g5.theta, g5.first_pole_offset) == (10, 36.0, 0.0)
    assert g5.valid_angles == [108.0, 144.0, 180.0, 216.0, 252.0]
    g4 = ButterworthGeometry(4)
    assert g4.first_pole_offset == 22.5
    assert g4.valid_angles == [112.5, 157.5, 202.5, 247.5]


@pytest.mark.parametrize("n", range(1, 16))
def test_geometry_invariants(n):
    angles = ButterworthGeometry(n).valid_angles
    assert len(angles) == n
    assert all(90 < a < 270 for a in angles)
    for a, b in zip(angles, reversed(angles)):
        assert a + b == pytest.approx(360.0)


def test_valid_poles_reference():
    got = sorted((complex(p) for p in valid_poles(5, 123.4120164)), key=lambda z: (z.real, z.imag))
    expected = [-123.41201636, -99.84241855 - 72.53976317j, -99.84241855 + 72.53976317j,
                -38.13641037 - 117.37180235j, -38.13641037 + 117.37180235j]
    for g, e in zip(got, expected):
        assert abs(g - e) < 1e-3


def test_valid_poles_first_order():
    assert [complex(p) for p in valid_poles(1, 50.0)] == [-50 + 0j]


def test_valid_poles_fourth_order():
    got = {(round(p.re, 3), round(p.im, 3)) for p in valid_poles(4, 100.0)}
    assert got == {(-38.268, 92.388), (-38.268, -92.388), (-92.388, 38.268), (-92.388, -38.268)}


@pytest.mark.parametrize("n", range(1, 12))
def test_valid_poles_match_scipy(n):
    _, p, _ = signal.butter(n, 7.5, analog=True, output="zpk")
    ours = np.array([complex(q) for q in valid_poles(n, 7.5)])
    for q in p:
        assert np.min(np.abs(ours - q)) < 1e-12 * 7.5


def test_design_reference(bw):
    assert bw.order == 5
    assert bw.char_freq == pytest.approx(123.412, abs=1e-3)
    assert len(bw.poles) == 5
    assert bw.epsilon is None


def test_design_half_power_second_order():
    r = butterworth.design(validate_spec(3.0103, 1, 40, 10))
    assert r.order == 2
    assert r.char_freq == pytest.approx(1.0, rel=1e-5)
    for p in r.poles:
        assert abs(p.re) == pytest.approx(math.sqrt(0.5), rel=1e-5)
        assert abs(p.im) == pytest.approx(math.sqrt(0.5), rel=1e-5)
    tf = stages_from_poles(r)
    assert magnitude_db(evaluate(tf, 1.0)) == pytest.approx(-3.0103, abs=1e-6)


def test_design_rejects_equal_edges():
    with pytest.raises(EdgesOutOfOrder):
        validate_spec(0.5, 100, 20, 100)


def test_design_matches_scipy_buttord():
    n, wn = signal.buttord(100, 200, 0.5, 20, analog=True)
    assert n == 5
    assert wn == pytest.approx(butterworth.cutoff_frequency(validate_spec(0.5, 100, 20, 200), 5), rel=1e-9)


specs = st.tuples(
    st.floats(0.05, 3.0),
    st.floats(1.0, 1e4),
    st.floats(5.0, 80.0),
    st.floats(1.05, 20.0),
).map(lambda t: (t[0], t[1], t[0] + t[2], t[1] * t[3]))


@settings(max_examples=120, deadline=None)
@given(specs)
def test_corner_guarantee_and_minimality(raw):
    spec = validate_spec(*raw)
    r = butterworth.design(spec)
    assume(r.order <= 40)
    assert r.order == brute_force_order(spec)
    tf = stages_from_poles(r)
    gp, gs = magnitude_db(evaluate(tf, [spec.omega_p, spec.omega_s]))
    assert gp == pytest.approx(-spec.Ap, abs=1e-9)
    assert gs <= -spec.As + 1e-9
    if r.order > 1:
        n = r.order - 1
        wc = cutoff_frequency(spec, n)
        assert loss_db(n, wc, spec.omega_s) < spec.As


@settings(max_examples=120, deadline=None)
@given(specs)
def test_stopband_exact_corner_guarantee(raw):
    spec = validate_spec(*raw)
    r = butterworth.design(spec, "stopband")
    tf = stages_from_poles(r)
    gp, gs = magnitude_db(evaluate(tf, [spec.omega_p, spec.omega_s]))
    assert gp >= -spec.Ap - 1e-9
    assert gs == pytest.approx(-spec.As, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.floats(0.5, 1e4))
def test_pole_radius_closed_form_and_monotonicity(n, wc):
    poles = valid_poles(n, wc)
    for p in poles:
        assert p.magnitude == pytest.approx(wc, rel=1e-9)
    from filtersynth.core import Family, FilterRealization

    tf = stages_from_poles(FilterRealization(Family.BUTTERWORTH, n, wc, tuple(poles)))
    grid = np.logspace(math.log10(wc / 100), math.log10(100 * wc), 1000)
    mag = np.abs(evaluate(tf, grid))
    np.testing.assert_allclose(mag, closed_form_butterworth(n, wc, grid), rtol=1e-9)
    step = np.diff(mag)
    # Near DC the decrease is below double precision; require strictness where resolvable.
    assert np.all(step <= 1e-13)
    resolvable = (1 - mag[1:]) > 1e-9
    assert np.all(step[resolvable] < 0)
