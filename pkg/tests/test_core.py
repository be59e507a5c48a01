import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filtersynth import butterworth, chebyshev
from filtersynth.core import (
    AttenuationsOutOfOrder,
    ComplexFrequency,
    EdgesOutOfOrder,
    Family,
    FilterRealization,
    FirstOrder,
    NonPositiveFrequency,
    PairingError,
    SecondOrder,
    TransferFunction,
    evaluate,
    evaluate_expanded,
    magnitude_db,
    pair_poles,
    stages_from_poles,
    validate_spec,
)


def test_validate_spec_accepts_reference_values():
    spec = validate_spec(0.5, 100, 20, 200)
    assert (spec.Ap, spec.omega_p, spec.As, spec.omega_s) == (0.5, 100, 20, 200)


@pytest.mark.parametrize(
    "raw, exc",
    [
        ((0.5, 200, 20, 100), EdgesOutOfOrder),
        ((0.5, 100, 20, 100), EdgesOutOfOrder),
        ((20, 100, 0.5, 200), AttenuationsOutOfOrder),
        ((0.5, 0, 20, 200), NonPositiveFrequency),
        ((0.5, -1, 20, 200), NonPositiveFrequency),
        ((0.0, 100, 20, 200), AttenuationsOutOfOrder),
    ],
)
def test_validate_spec_rejects(raw, exc):
    with pytest.raises(exc):
        validate_spec(*raw)


def _realization(poles, family=Family.BUTTERWORTH, eps=None):
    return FilterRealization(family, len(poles), 1.0, tuple(ComplexFrequency.from_complex(p) for p in poles), eps)


def test_stages_from_reference_butterworth_poles():
    poles = [
        -38.13641037 + 117.37180235j, -38.13641037 - 117.37180235j,
        -99.84241855 + 72.53976317j, -99.84241855 - 72.53976317j,
        -123.41201636,
    ]
    tf = stages_from_poles(_realization(poles))
    assert tf.gain == 1.0
    first, low_q, high_q = tf.stages
    assert isinstance(first, FirstOrder)
    assert first.w0 == pytest.approx(123.412, abs=1e-3)
    assert low_q.a == pytest.approx(199.684, abs=1e-3)
    assert high_q.a == pytest.approx(76.272, abs=1e-3)
    # b = re^2 + im^2 = wc^2
    assert low_q.b == pytest.approx(15230.5, abs=0.1)
    assert high_q.b == pytest.approx(15230.5, abs=0.1)
    assert [s.q for s in tf.stages] == sorted(s.q for s in tf.stages)


def test_single_real_pole():
    tf = stages_from_poles(_realization([-1.0]))
    assert tf.stages == (FirstOrder(1.0),)
    assert tf.gain == 1.0


def test_stages_from_chebyshev_poles():
    poles = [-17.54 + 101.63j, -17.54 - 101.63j, -42.34 + 42.10j, -42.34 - 42.10j]
    tf = stages_from_poles(_realization(poles, Family.CHEBYSHEV_I, 0.349))
    s1, s2 = tf.stages
    assert s1.a == pytest.approx(84.68) and s1.b == pytest.approx(3565.0, rel=1e-3)
    assert s2.a == pytest.approx(35.08) and s2.b == pytest.approx(10636.0, rel=1e-3)
    # Printed hand-worked coefficients 35.134 / 10639.29 agree within 0.3%.
    assert s2.a == pytest.approx(35.134, rel=3e-3)
    assert s2.b == pytest.approx(10639.2886, rel=3e-3)


def test_pairing_rejects_unpaired():
    with pytest.raises(PairingError):
        pair_poles([ComplexFrequency(-1, 1), ComplexFrequency(-1, -1.001)])
    with pytest.raises(ValueError):
        _realization([-1 + 1j, -2 - 1j, -3])


def test_realization_invariants():
    with pytest.raises(ValueError):
        _realization([1.0])  # right half-plane
    with pytest.raises(ValueError):
        FilterRealization(Family.BUTTERWORTH, 2, 1.0, (ComplexFrequency(-1, 0),))
    with pytest.raises(ValueError):
        # even order with two real poles
        _realization([-1.0, -2.0])


def test_stage_invariants():
    with pytest.raises(ValueError):
        FirstOrder(0.0)
    with pytest.raises(ValueError):
        SecondOrder(-1.0, 1.0)
    with pytest.raises(ValueError):
        SecondOrder(1.0, 0.0)


def test_evaluate_reference_butterworth(bw_tf):
    assert evaluate(bw_tf, 0.0) == pytest.approx(1 + 0j)
    wc = bw_tf.stages[0].w0
    assert magnitude_db(evaluate(bw_tf, wc)) == pytest.approx(-10 * math.log10(2), abs=1e-9)
    oracle = -10 * math.log10(1 + (200 / wc) ** 10)
    assert magnitude_db(evaluate(bw_tf, 200.0)) == pytest.approx(oracle, abs=1e-9)
    assert magnitude_db(evaluate(bw_tf, 200.0)) == pytest.approx(-21.0, abs=0.1)


def test_evaluate_vectorized(bw_tf):
    w = np.array([0.0, 50.0, 200.0])
    h = evaluate(bw_tf, w)
    assert h.shape == (3,)
    assert h[2] == pytest.approx(evaluate(bw_tf, 200.0), rel=1e-15)


realizations = st.one_of(
    st.tuples(st.integers(1, 10), st.floats(0.1, 1e4)).map(
        lambda t: FilterRealization(
            Family.BUTTERWORTH, t[0], t[1], tuple(butterworth.valid_poles(t[0], t[1]))
        )
    ),
    st.tuples(st.integers(1, 10), st.floats(0.05, 3.0), st.floats(0.1, 1e4)).map(
        lambda t: FilterRealization(
            Family.CHEBYSHEV_I, t[0], t[2], tuple(chebyshev.chebyshev_poles(t[0], t[1], t[2])), t[1]
        )
    ),
)


@settings(max_examples=60, deadline=None)
@given(realizations)
def test_conjugate_closure_and_stage_reconstruction(r):
    key = lambda z: (z.real, z.imag)  # noqa: E731
    poles = sorted((complex(p) for p in r.poles), key=key)
    assert poles == sorted((complex(p).conjugate() for p in r.poles), key=key)
    tf = stages_from_poles(r)
    assert tf.order == r.order
    recovered = []
    for stage in tf.stages:
        # independent root finder
        recovered.extend(np.roots(stage.denominator()))
    for p in r.poles:
        nearest = min(recovered, key=lambda q: abs(q - complex(p)))
        assert abs(nearest - complex(p)) <= 1e-9 * p.magnitude


@settings(max_examples=60, deadline=None)
@given(realizations)
def test_dc_normalization_and_expanded_form(r):
    tf = stages_from_poles(r)
    assert evaluate(tf, 0.0) == pytest.approx(tf.gain, rel=1e-12)
    wc = r.char_freq
    grid = np.logspace(math.log10(wc / 100), math.log10(100 * wc), 200)
    a = np.abs(evaluate(tf, grid))
    b = np.abs(evaluate_expanded(tf, grid))
    np.testing.assert_allclose(a, b, rtol=1e-9)


def test_expanded_denominator_degree(bw_tf):
    assert len(bw_tf.denominator()) - 1 == bw_tf.order == 5


def test_complex_frequency_helpers():
    p = ComplexFrequency.polar(2.0, 135.0)
    assert p.magnitude == pytest.approx(2.0)
    assert p.angle_deg == pytest.approx(135.0)
    assert p.conjugate().angle_deg == pytest.approx(225.0)
    assert complex(p) == pytest.approx(complex(-math.sqrt(2), math.sqrt(2)))


def test_transfer_function_numerator_constant():
    tf = TransferFunction(2.0, (FirstOrder(3.0), SecondOrder(1.0, 5.0)))
    assert tf.numerator_constant == 30.0
