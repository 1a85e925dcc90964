import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from modhys.pipeline import sample_times
from modhys.signal_model import generate_random_pw
from modhys.spectral import (InsufficientOversampling, anti_difference, band_layout, build_rhs,
                             build_vandermonde, dft, effective_bandwidth, forward_difference)

OMEGA, K, T = 6.3, 48, 0.0208
finite = st.floats(-1e3, 1e3, allow_nan=False)


def direct_dft(z):
    N = len(z)
    out = []
    for m in range(N):
        acc = 0j
        for n in range(N):
            acc += z[n] * complex(math.cos(2 * math.pi * m * n / N), -math.sin(2 * math.pi * m * n / N))
        out.append(acc)
    return np.array(out)


def test_forward_difference_examples():
    assert forward_difference([1, 3, 6]).tolist() == [2, 3]
    assert not forward_difference(np.full(7, 2.5)).any()
    assert np.allclose(forward_difference(1.5 + 0.25 * np.arange(9)), 0.25)


def test_forward_difference_needs_two_points():
    with pytest.raises(ValueError):
        forward_difference([1.0])


def test_anti_difference_examples():
    assert anti_difference([2, 3]).tolist() == [0, 2, 5]
    out = anti_difference(np.zeros(4))
    assert out.size == 5 and not out.any()


@given(arrays(np.int64, st.integers(2, 200), elements=st.integers(-10 ** 6, 10 ** 6)))
def test_anti_difference_inverts_difference_exactly(z):
    assert np.array_equal(anti_difference(forward_difference(z)), z - z[0])


@given(arrays(float, st.integers(2, 200), elements=finite))
def test_anti_difference_inverts_difference_floats(z):
    assert np.allclose(anti_difference(forward_difference(z)), z - z[0], rtol=0, atol=1e-9)


def test_dft_examples():
    assert np.allclose(dft([1, 1, 1, 1]), [4, 0, 0, 0], atol=1e-15)
    impulse = np.zeros(8)
    impulse[0] = 1
    assert np.allclose(dft(impulse), np.ones(8))


@pytest.mark.parametrize("N", [4, 17, 96])
def test_dft_matches_direct_sum(N):
    rng = np.random.default_rng(N)
    z = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    ref = direct_dft(z)
    assert np.max(np.abs(dft(z) - ref)) <= 1e-9 * np.max(np.abs(ref))


@given(arrays(complex, st.integers(1, 128),
              elements=st.complex_numbers(max_magnitude=1e3, allow_nan=False)))
def test_parseval(z):
    lhs = np.sum(np.abs(dft(z)) ** 2)
    rhs = z.size * np.sum(np.abs(z) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


class TestBandLayout:
    def test_default_configuration(self):
        # 6.3 * 97 * 0.0208 / (2 pi) = 2.0230...
        layout = band_layout(OMEGA, 96, T)
        assert layout.n_omega == 3
        assert layout.M == 89
        assert layout.out_of_band.tolist() == list(range(4, 93))
        assert layout.omega0 == pytest.approx(2 * math.pi / 96)

    def test_exact_integer_boundary(self):
        # omega (N + 1) T = 2 pi exactly
        assert effective_bandwidth(2 * math.pi, 9, 0.1) == 1
        assert effective_bandwidth(2 * math.pi * 3, 99, 0.01) == 3

    def test_too_few_samples(self):
        with pytest.raises(InsufficientOversampling):
            band_layout(OMEGA, 6, 0.5)

    @given(st.floats(0.1, 50), st.integers(2, 400), st.floats(1e-4, 0.5))
    def test_out_of_band_count(self, omega, N, t):
        try:
            layout = band_layout(omega, N, t)
        except InsufficientOversampling:
            assert N - 2 * effective_bandwidth(omega, N, t) - 1 < 1
            return
        assert layout.M >= 1 and layout.out_of_band.size == layout.M


class TestVandermonde:
    layout = band_layout(OMEGA, 96, T)
    V = build_vandermonde(layout)

    def test_shape_and_first_column(self):
        assert self.V.shape == (89, 96)
        assert np.allclose(self.V[:, 0], 1)

    def test_unit_modulus(self):
        assert np.allclose(np.abs(self.V), 1, atol=1e-14)

    def test_single_atom(self):
        c = np.zeros(96)
        c[17] = 1
        m = self.layout.out_of_band
        assert np.allclose(self.V @ c, np.exp(-1j * self.layout.omega0 * m * 17), atol=1e-12)

    def test_columns_are_dft_rows_of_impulses(self):
        c = np.zeros(96)
        c[40] = 1
        assert np.allclose(self.V @ c, dft(c)[self.layout.out_of_band], atol=1e-12)


class TestRhs:
    layout = band_layout(OMEGA, 96, T)

    def test_constant_gives_zero(self):
        assert not build_rhs(np.full(97, 0.3), self.layout).any()

    def test_length_checked(self):
        with pytest.raises(ValueError):
            build_rhs(np.zeros(96), self.layout)

    def test_unfolded_signal_only_leaks(self):
        # leakage grows with the signal amplitude; at peak 0.05 it stays far
        # below the 0.15 * 89 correlation of a single fold
        for seed in range(20):
            g = generate_random_pw(OMEGA, K, T, 0.05, seed)
            s = build_rhs(g(sample_times(K, T)), self.layout)
            assert np.max(np.abs(s)) < 0.03

    def test_step_superposes_on_leakage(self):
        g = generate_random_pw(OMEGA, K, T, 0.05, 1)
        clean = g(sample_times(K, T))
        n0 = 30
        step = (np.arange(97) > n0).astype(float)
        s = build_rhs(clean - step, self.layout)
        atom = np.exp(-1j * self.layout.omega0 * self.layout.out_of_band * n0)
        assert np.allclose(s, build_rhs(clean, self.layout) - atom, atol=1e-12)

    @given(st.integers(0, 2 ** 32 - 1), st.floats(-3, 3), st.floats(-3, 3))
    def test_linear(self, seed, a, b):
        rng = np.random.default_rng(seed)
        x, y = rng.standard_normal(97), rng.standard_normal(97)
        lhs = build_rhs(a * x + b * y, self.layout)
        rhs = a * build_rhs(x, self.layout) + b * build_rhs(y, self.layout)
        assert np.allclose(lhs, rhs, atol=1e-9)
