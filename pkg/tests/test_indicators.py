"""Smoothness-indicator kernels: hand values, algebraic properties, and
Taylor-expansion orders measured on critical-point probes."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wenokit.indicators import (
    OrderProbe,
    beta_es3,
    beta_es4,
    beta_js,
    measure_order,
    tau_es,
    tau_f3,
    tau_z3,
)

ALL_INDICATORS = [
    lambda w: beta_js(w)[0],
    lambda w: beta_js(w)[1],
    lambda w: beta_es3(w)[0],
    lambda w: beta_es3(w)[1],
    lambda w: beta_es4(w)[0],
    lambda w: beta_es4(w)[1],
    tau_z3,
    tau_f3,
    tau_es,
]

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False,
                   allow_infinity=False)
windows = st.lists(finite, min_size=5, max_size=5).map(np.array)


def cubic(x):
    """Test profile with a first-order critical point at x = 1
    (f' = 3x^2 - 3, f'' = 6x, f''' = 6)."""
    return x ** 3 - 3.0 * x


DX_SEQ = tuple(0.04 / 2 ** k for k in range(5))


def cp_probe(lam):
    return OrderProbe(cubic, 1.0, lam, DX_SEQ)


SMOOTH_PROBE = OrderProbe(cubic, -2.0, 0.3, DX_SEQ)  # f' = 9, f'' = -12


class TestHandValues:
    def test_beta_js(self):
        assert beta_js([0.0, 1.0, 1.0, 1.0, 0.0]) == (0.0, 0.0)
        assert beta_js([9.0, 0.0, 1.0, 2.0, 9.0]) == (1.0, 1.0)
        assert beta_js([9.0, 0.0, 1.0, 3.0, 9.0]) == (1.0, 4.0)

    def test_beta_es4(self):
        assert beta_es4(np.full(5, 3.5)) == (0.0, 0.0)
        b = beta_es4([0.0, 1.0, 2.0, 3.0, 4.0])
        assert b == pytest.approx((1.0, 1.0), abs=1e-12)
        b = beta_es4([4.0, 1.0, 0.0, 1.0, 4.0])
        assert b == pytest.approx((8.0, 8.0), abs=1e-12)

    def test_beta_es3(self):
        assert beta_es3(np.full(5, -2.0)) == (0.0, 0.0)
        assert beta_es3([4.0, 1.0, 0.0, 1.0, 4.0]) == pytest.approx(
            (3.0, 1.6), abs=1e-12)
        assert beta_es3([0.0, 1.0, 2.0, 3.0, 4.0]) == pytest.approx(
            (1.0, 1.0), abs=1e-12)

    def test_tau_z3(self):
        assert tau_z3(np.full(5, 5.0)) == 0.0
        assert tau_z3([9.0, 1.0, 0.0, 1.0, 9.0]) == 0.0
        assert tau_z3([9.0, 0.0, 1.0, 3.0, 9.0]) == pytest.approx(3.0,
                                                                  abs=1e-12)

    def test_tau_f3(self):
        assert tau_f3([0.0, 1.0, 2.0, 3.0, 4.0]) == 0.0
        assert tau_f3([9.0, 0.0, 1.0, 3.0, 9.0]) == pytest.approx(
            1.0 / 6.0, abs=1e-12)
        assert tau_f3([9.0, 4.0, 1.0, 0.0, 9.0]) == pytest.approx(
            2.0 / 3.0, abs=1e-12)

    def test_tau_es(self):
        assert tau_es([9.0, 0.0, 1.0, 2.0, 3.0]) == 0.0
        assert tau_es([9.0, 1.0, 0.0, 1.0, 4.0]) == 0.0
        assert tau_es([9.0, -1.0, 0.0, 1.0, 8.0]) == pytest.approx(
            6.0, abs=1e-12)

    def test_beta_es4_rejects_nonpositive_coefficient(self):
        with pytest.raises(ValueError, match="c_beta"):
            beta_es4([0.0, 1.0, 2.0, 3.0, 4.0], c_beta=0.0)


class TestAlgebraicProperties:
    @given(windows)
    @settings(max_examples=200)
    def test_nonnegative(self, w):
        for ind in ALL_INDICATORS:
            assert ind(w) >= 0.0

    @given(windows, st.floats(min_value=-100.0, max_value=100.0))
    @settings(max_examples=200)
    def test_homogeneity(self, w, s):
        # The largest intermediate in any kernel is O((s*max|w|)^2), so
        # cancellation noise sits at machine epsilon times that square.
        noise = 1e-12 * (s * float(np.max(np.abs(w)))) ** 2 + 1e-300
        for ind in ALL_INDICATORS:
            base = ind(w)
            assert ind(s * w) == pytest.approx(s * s * base,
                                               rel=1e-13, abs=noise)

    @given(st.lists(st.floats(min_value=-1e3, max_value=1e3,
                              allow_nan=False), min_size=5,
                    max_size=5).map(np.array),
           st.floats(min_value=-1e3, max_value=1e3))
    @settings(max_examples=200)
    def test_shift_invariance(self, w, c):
        scale = max(1.0, c * c, float(np.max(np.abs(w))) ** 2)
        tol = 1e-12 * scale
        for ind in ALL_INDICATORS:
            assert ind(w + c) == pytest.approx(ind(w), abs=tol)

    def test_vectorized_matches_scalar(self):
        rng = np.random.default_rng(0)
        batch = rng.standard_normal((7, 5))
        for ind in ALL_INDICATORS:
            vec = ind(batch)
            for i, row in enumerate(batch):
                assert vec[i] == ind(row)


class TestProbe:
    def test_requires_four_decreasing_halving_spacings(self):
        with pytest.raises(ValueError, match="at least 4"):
            OrderProbe(cubic, 1.0, 0.0, (0.1, 0.05, 0.025))
        with pytest.raises(ValueError, match="decreasing"):
            OrderProbe(cubic, 1.0, 0.0, (0.05, 0.1, 0.025, 0.0125))
        with pytest.raises(ValueError, match="ratio"):
            OrderProbe(cubic, 1.0, 0.0, (0.1, 0.05, 0.03, 0.015))
        with pytest.raises(ValueError, match="lam"):
            OrderProbe(cubic, 1.0, 1.5, DX_SEQ)

    def test_window_places_critical_point_at_offset(self):
        probe = cp_probe(0.5)
        w = probe.window(0.01)
        # Center sample sits at 1 - 0.5*dx; slot +1 at 1 + 0.5*dx.
        assert w[2] == cubic(1.0 - 0.005)
        assert w[3] == cubic(1.0 + 0.005)

    def test_identically_zero_indicator_is_undefined(self):
        m = measure_order(OrderProbe(lambda x: np.ones_like(x), 0.0, 0.0,
                                     DX_SEQ), tau_es)
        assert m.status == "undefined"
        assert m.order is None


def assert_measurement(m, order, coeff=None):
    assert m.status == "ok"
    assert m.order == pytest.approx(order, abs=0.15)
    if coeff is not None:
        assert m.coefficient == pytest.approx(coeff, rel=0.10)


class TestExpansionOrders:
    """Measured orders/coefficients at a first-order critical point with
    offset lam, against the leading-term predictions."""

    F2 = 6.0   # f'' at the critical point of `cubic`
    F3 = 6.0   # f'''

    @pytest.mark.parametrize("lam", [0.0, 0.3, 0.5])
    def test_beta_es4_order4_with_predicted_coefficient(self, lam):
        c_beta = 2.0
        expect = (lam * lam + c_beta) * self.F2 ** 2
        for k in (0, 1):
            m = measure_order(cp_probe(lam), lambda w: beta_es4(w)[k])
            assert_measurement(m, 4.0, expect)

    @pytest.mark.parametrize("lam", [0.0, 0.3])
    def test_beta_js_order4_with_predicted_coefficients(self, lam):
        for k, sign in ((0, +1.0), (1, -1.0)):
            expect = 0.25 * (2.0 * lam + sign) ** 2 * self.F2 ** 2
            m = measure_order(cp_probe(lam), lambda w: beta_js(w)[k])
            assert_measurement(m, 4.0, expect)

    @pytest.mark.parametrize("lam", [0.5, -0.5])
    def test_beta_js_one_component_upgrades_to_order6_at_half_offsets(
            self, lam):
        orders = [measure_order(cp_probe(lam), lambda w, k=k: beta_js(w)[k])
                  .order for k in (0, 1)]
        assert sum(o == pytest.approx(6.0, abs=0.15) for o in orders) == 1
        assert sum(o == pytest.approx(4.0, abs=0.15) for o in orders) == 1

    @pytest.mark.parametrize("lam", [0.3, 0.5])
    def test_tau_z3_order4_with_predicted_coefficient(self, lam):
        m = measure_order(cp_probe(lam), tau_z3)
        assert_measurement(m, 4.0, abs(2.0 * lam) * self.F2 ** 2)

    def test_tau_z3_upgrades_above_order4_at_centered_critical_point(self):
        m = measure_order(cp_probe(0.0), tau_z3)
        assert m.status == "ok"
        assert m.order > 4.5

    @pytest.mark.parametrize("lam", [0.0, 0.3, 0.5])
    def test_tau_es_order5_with_predicted_coefficient(self, lam):
        m = measure_order(cp_probe(lam), tau_es)
        assert_measurement(m, 5.0, abs((1.5 - lam) * self.F2 * self.F3))

    def test_smooth_orders_without_critical_point(self):
        fp2 = 81.0  # f'(-2)^2
        for ind in (lambda w: beta_js(w)[0], lambda w: beta_js(w)[1],
                    lambda w: beta_es3(w)[0], lambda w: beta_es3(w)[1],
                    lambda w: beta_es4(w)[0], lambda w: beta_es4(w)[1]):
            assert_measurement(measure_order(SMOOTH_PROBE, ind), 2.0, fp2)

    def test_tau_es_smooth_order4_with_coefficient(self):
        # |f' f'''| at x = -2 is 9 * 6 = 54.
        assert_measurement(measure_order(SMOOTH_PROBE, tau_es), 4.0, 54.0)

    @pytest.mark.parametrize("lam", [0.0, 0.3, 0.5])
    def test_beta_es4_leading_coefficients_agree_at_critical_point(self, lam):
        # The two components first differ one order beyond the leading
        # term, so their relative gap shrinks at measured rate >= ~1.
        probe = cp_probe(lam)
        rel = []
        for dx in probe.dx_seq:
            b0, b1 = beta_es4(probe.window(dx))
            rel.append(abs(b0 - b1) / max(b0, b1))
        rates = [np.log2(a / b) for a, b in zip(rel, rel[1:])]
        assert all(r > 0.85 for r in rates)
        assert rates[-1] > 0.95
