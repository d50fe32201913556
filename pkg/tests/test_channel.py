import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cvqkd import (
    BinaryChannel,
    ChannelParams,
    SignalParams,
    adaptive_quad,
    binary_entropy,
    channel_density,
    channel_mass,
    effective_channel,
    error_rate,
    eve_overlap,
    integration_limit,
)

# frozen from 50-digit evaluations of the closed forms
H2_QUARTER = 0.8112781244591329
ERATE_A1_E1_B1 = 0.017986209962091558
ERATE_A1_E1_D01_B1 = 0.025671586349827026
PC_VACUUM_ORIGIN = 1.1283791670955126  # 2 / sqrt(pi)
PC_A1_E1_B1 = 0.5745230762248023  # (1 + e^-4) / sqrt(pi)


class TestBinaryEntropy:
    def test_endpoints_and_maximum(self):
        assert binary_entropy(0.5) == 1.0
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0

    def test_quarter(self):
        assert binary_entropy(0.25) == pytest.approx(H2_QUARTER, rel=1e-14)

    def test_symmetry_exact_on_dyadic_grid(self):
        # dyadic rationals make 1 - e exact in binary floating point, so the
        # two evaluations see bit-identical operands
        e = np.arange(4097) / 4096.0
        assert np.array_equal(binary_entropy(e), binary_entropy(1.0 - e))

    @given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
    def test_symmetry_arbitrary_floats(self, e):
        assert binary_entropy(e) == pytest.approx(binary_entropy(1.0 - e), abs=1e-12)

    @given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
    def test_range(self, e):
        assert 0.0 <= binary_entropy(e) <= 1.0

    @pytest.mark.parametrize("bad", [-0.1, 1.1, float("nan"), float("inf")])
    def test_domain_errors(self, bad):
        with pytest.raises(ValueError):
            binary_entropy(bad)

    def test_array_output(self):
        h = binary_entropy(np.array([0.0, 0.5, 1.0]))
        assert h.shape == (3,)
        assert h[1] == 1.0


class TestParams:
    def test_signal_validation(self):
        assert SignalParams(0.0).alpha == 0.0
        for bad in (-1.0, float("nan"), float("inf")):
            with pytest.raises(ValueError):
                SignalParams(bad)

    def test_channel_validation(self):
        ChannelParams(1.0, 0.0)
        ChannelParams(0.3, 0.5)
        for eta, delta in [(0.0, 0.0), (1.2, 0.0), (-0.1, 0.0), (0.5, -0.01)]:
            with pytest.raises(ValueError):
                ChannelParams(eta, delta)
        with pytest.raises(ValueError):
            ChannelParams(float("nan"), 0.0)

    def test_binary_channel_validation(self):
        BinaryChannel(beta_x=1.0, e=0.2, p_c=0.5)
        for kwargs in [
            dict(beta_x=-1.0, e=0.2, p_c=0.5),
            dict(beta_x=1.0, e=0.6, p_c=0.5),
            dict(beta_x=1.0, e=0.2, p_c=-0.5),
        ]:
            with pytest.raises(ValueError):
                BinaryChannel(**kwargs)


class TestEveOverlap:
    def test_lossless(self):
        assert eve_overlap(SignalParams(1.0), ChannelParams(1.0)) == 1.0

    def test_vacuum(self):
        assert eve_overlap(SignalParams(0.0), ChannelParams(0.3)) == 1.0

    def test_half_transmission(self):
        c = eve_overlap(SignalParams(1.0), ChannelParams(0.5))
        assert c == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_range_and_strictness(self):
        for alpha in (0.1, 0.7, 2.5):
            for eta in (0.05, 0.4, 0.99):
                c = eve_overlap(SignalParams(alpha), ChannelParams(eta))
                assert 0.0 < c < 1.0


class TestErrorRate:
    def test_decision_boundary(self):
        assert error_rate(SignalParams(1.0), ChannelParams(1.0), 0.0) == 0.5

    def test_noiseless_point(self):
        e = error_rate(SignalParams(1.0), ChannelParams(1.0), 1.0)
        assert e == pytest.approx(ERATE_A1_E1_B1, rel=1e-14)

    def test_noisy_point(self):
        e = error_rate(SignalParams(1.0), ChannelParams(1.0, 0.1), 1.0)
        assert e == pytest.approx(ERATE_A1_E1_D01_B1, rel=1e-14)

    def test_strictly_decreasing(self):
        b = np.linspace(0.0, 6.0, 500)
        e = error_rate(SignalParams(1.0), ChannelParams(0.7), b)
        assert np.all(np.diff(e) < 0.0)

    def test_vacuum_is_flat_half(self):
        b = np.linspace(0.0, 5.0, 50)
        e = error_rate(SignalParams(0.0), ChannelParams(0.7), b)
        assert np.all(e == 0.5)

    def test_large_argument_does_not_overflow(self):
        e = error_rate(SignalParams(5.0), ChannelParams(1.0), 500.0)
        assert e == 0.0

    def test_negative_beta_rejected(self):
        with pytest.raises(ValueError):
            error_rate(SignalParams(1.0), ChannelParams(1.0), -0.5)


class TestChannelDensity:
    def test_vacuum_origin(self):
        pc = channel_density(SignalParams(0.0), ChannelParams(1.0), 0.0)
        assert pc == pytest.approx(PC_VACUUM_ORIGIN, rel=1e-15)

    def test_two_gaussian_point(self):
        pc = channel_density(SignalParams(1.0), ChannelParams(1.0), 1.0)
        assert pc == pytest.approx(PC_A1_E1_B1, rel=1e-14)

    @pytest.mark.parametrize("alpha", [0.1, 1.0, 3.0])
    @pytest.mark.parametrize("eta,delta", [(0.05, 0.0), (0.5, 0.1), (1.0, 0.3)])
    def test_normalization(self, alpha, eta, delta):
        signal, channel = SignalParams(alpha), ChannelParams(eta, delta)
        total = adaptive_quad(
            lambda b: channel_density(signal, channel, b),
            0.0,
            integration_limit(signal, channel),
        )
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_noiseless_limit_matches_independent_form(self):
        # delta = 0 must reproduce the bare two-Gaussian marginal
        signal, channel = SignalParams(1.3), ChannelParams(0.6, 0.0)
        m = math.sqrt(0.6) * 1.3
        b = np.linspace(0.0, 8.0, 2000)
        direct = (np.exp(-((b - m) ** 2)) + np.exp(-((b + m) ** 2))) / math.sqrt(math.pi)
        assert np.max(np.abs(channel_density(signal, channel, b) - direct)) < 1e-14

        e_direct = 1.0 / (1.0 + np.exp(4.0 * m * b))
        assert np.max(np.abs(error_rate(signal, channel, b) - e_direct)) < 1e-14

    def test_negative_beta_rejected(self):
        with pytest.raises(ValueError):
            channel_density(SignalParams(1.0), ChannelParams(1.0), -0.1)


class TestChannelMass:
    def test_total_mass(self):
        signal, channel = SignalParams(0.8), ChannelParams(0.4, 0.2)
        hi = integration_limit(signal, channel)
        assert channel_mass(signal, channel, 0.0, hi) == pytest.approx(1.0, abs=1e-15)

    def test_matches_quadrature_on_interval(self):
        signal, channel = SignalParams(1.1), ChannelParams(0.7, 0.05)
        for lo, hi in [(0.0, 0.5), (0.5, 1.7), (2.0, 4.0)]:
            num = adaptive_quad(lambda b: channel_density(signal, channel, b), lo, hi)
            assert channel_mass(signal, channel, lo, hi) == pytest.approx(num, abs=1e-12)

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            channel_mass(SignalParams(1.0), ChannelParams(1.0), 2.0, 1.0)


def test_effective_channel_bundles_statistics():
    signal, channel = SignalParams(1.0), ChannelParams(0.5, 0.1)
    bc = effective_channel(signal, channel, 0.7)
    assert bc.beta_x == 0.7
    assert bc.e == error_rate(signal, channel, 0.7)
    assert bc.p_c == channel_density(signal, channel, 0.7)


def test_integration_limit_scales_with_noise():
    signal = SignalParams(1.0)
    assert integration_limit(signal, ChannelParams(1.0, 0.0)) == pytest.approx(
        1.0 + 10.0 * math.sqrt(0.5)
    )
    assert integration_limit(signal, ChannelParams(1.0, 0.3)) > integration_limit(
        signal, ChannelParams(1.0, 0.0)
    )
