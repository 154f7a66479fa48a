import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from risradar import (
    ArrayGeometry,
    OfdmParams,
    RisConfig,
    angle_grid,
    angle_grid_deg,
    normalize_pattern_db,
    pattern_value,
    power_pattern,
    steering_vector,
)
from risradar.arrays import ALL_SUBCARRIERS, CARRIER_ONLY, SPEED_OF_LIGHT


def brute_force_steering(geometry, params, n, theta):
    """Element-by-element oracle straight from the phase definition."""
    lam = SPEED_OF_LIGHT / params.carrier_freq_hz
    lam_n = SPEED_OF_LIGHT / (params.carrier_freq_hz + n * params.subcarrier_spacing)
    out = np.empty(geometry.num_elements, dtype=complex)
    for l in range(geometry.num_elements):
        phase = -2.0 * np.pi * geometry.element_spacing_wavelengths * (lam / lam_n) * l * np.cos(theta)
        out[l] = np.exp(1j * phase) * np.exp(-2j * np.pi * geometry.offsets[l] / lam_n)
    return out


def brute_force_power(coeffs, params, theta, subcarriers, spacing=0.5):
    """Triple loop over (subcarrier, slot, element)."""
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=complex))
    if coeffs.shape[1] > coeffs.shape[0] and coeffs.ndim == 2 and coeffs.shape[0] == 1:
        coeffs = coeffs.T
    total = 0.0
    for n in subcarriers:
        ratio = params.wavelength_ratio(n)
        for m in range(coeffs.shape[1]):
            acc = 0.0 + 0.0j
            for l in range(coeffs.shape[0]):
                acc += coeffs[l, m] * np.exp(-2j * np.pi * spacing * ratio * l * np.cos(theta))
            total += abs(acc) ** 2
    return total


class TestOfdmParams:
    def test_derived_quantities(self, params):
        assert params.subcarrier_spacing == 2e6
        assert params.symbol_time == 0.5e-6
        assert params.total_symbol_time == pytest.approx(0.5625e-6, rel=1e-15)
        assert params.wavelength == pytest.approx(SPEED_OF_LIGHT / 77e9, rel=1e-15)
        assert params.range_bin_size == 0.75
        assert params.unambiguous_range == 75.0
        assert params.velocity_bin_size == pytest.approx(
            SPEED_OF_LIGHT / (2 * 77e9 * 50 * 0.5625e-6), rel=1e-15
        )

    def test_subcarrier_wavelengths(self, params):
        assert params.wavelength_ratio(0) == 1.0
        n = 99
        f_n = 77e9 + n * 2e6
        assert params.subcarrier_freq(n) == f_n
        assert params.subcarrier_wavelength(n) == pytest.approx(SPEED_OF_LIGHT / f_n, rel=1e-15)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(carrier_freq_hz=0.0),
            dict(bandwidth_hz=-1.0),
            dict(num_subcarriers=0),
            dict(num_symbols=0),
            dict(cp_ratio=1.0),
            dict(cp_ratio=-0.1),
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        base = dict(carrier_freq_hz=77e9, bandwidth_hz=200e6, num_subcarriers=100, num_symbols=50)
        base.update(kwargs)
        with pytest.raises(ValueError):
            OfdmParams(**base)


class TestSteeringVector:
    def test_single_element_is_unity(self, params):
        sv = steering_vector(ArrayGeometry(1), params, 0, 1.234)
        assert sv.values == pytest.approx([1.0 + 0.0j])

    def test_broadside_two_elements(self, params):
        sv = steering_vector(ArrayGeometry(2), params, 57, np.pi / 2)
        assert sv.values == pytest.approx([1.0, 1.0], abs=1e-12)

    def test_four_elements_at_pi_third(self, params):
        # cos(pi/3) = 1/2 gives phases exp(-1j*pi*l/2): 1, -j, -1, j
        sv = steering_vector(ArrayGeometry(4), params, 0, np.pi / 3)
        assert sv.values == pytest.approx([1.0, -1.0j, -1.0, 1.0j], abs=1e-12)

    def test_matches_brute_force_with_offsets(self, params):
        geometry = ArrayGeometry(5, element_offsets_m=np.array([0.0, 1e-3, 2e-3, 0.5e-3, 4e-3]))
        for n in (0, 13, 99):
            for theta in (0.3, 1.1, 2.7):
                sv = steering_vector(geometry, params, n, theta)
                np.testing.assert_allclose(sv.values, brute_force_steering(geometry, params, n, theta), atol=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(theta=st.floats(min_value=0.0, max_value=np.pi), n=st.integers(min_value=0, max_value=99))
    def test_unit_magnitude_without_offsets(self, params, theta, n):
        sv = steering_vector(ArrayGeometry(16), params, n, theta)
        assert np.all(np.abs(np.abs(sv.values) - 1.0) < 1e-12)

    def test_rejects_bad_inputs(self, params):
        with pytest.raises(ValueError):
            steering_vector(ArrayGeometry(4), params, 100, 0.5)
        with pytest.raises(ValueError):
            steering_vector(ArrayGeometry(4), params, -1, 0.5)
        with pytest.raises(ValueError):
            steering_vector(ArrayGeometry(4), params, 0, np.nan)


class TestPatternValue:
    def test_two_element_cancellation(self, params):
        assert pattern_value([1, -1], params, 0, np.pi / 2) == pytest.approx(0.0, abs=1e-12)

    def test_two_element_coherent(self, params):
        assert pattern_value([1, 1], params, 0, np.pi / 2) == pytest.approx(2.0, abs=1e-12)

    def test_matches_termwise_sum(self, params):
        rng = np.random.default_rng(7)
        coeffs = rng.normal(size=8) + 1j * rng.normal(size=8)
        theta = 1.1
        acc = 0.0 + 0.0j
        for l in range(8):
            acc += coeffs[l] * np.exp(-1j * np.pi * l * np.cos(theta))
        assert pattern_value(coeffs, params, 0, theta) == pytest.approx(acc, abs=1e-12)

    def test_agrees_with_steering_dot_product(self, params):
        rng = np.random.default_rng(3)
        coeffs = rng.normal(size=6) + 1j * rng.normal(size=6)
        for n in (0, 42):
            sv = steering_vector(ArrayGeometry(6), params, n, 0.8)
            assert pattern_value(coeffs, params, n, 0.8) == pytest.approx(np.dot(coeffs, sv.values), abs=1e-12)

    def test_rejects_matrix_input(self, params):
        with pytest.raises(ValueError):
            pattern_value(np.ones((2, 2)), params, 0, 0.5)


class TestPowerPattern:
    def test_coherent_broadside_sum(self, params):
        config = RisConfig(np.ones((6, 3)))
        value = power_pattern(config, params, np.pi / 2, CARRIER_ONLY)
        assert value[0] == pytest.approx(3 * 6**2, rel=1e-12)  # L^2 per time slot

    def test_notch_is_null(self, params):
        from risradar import notch_config

        theta_n = 0.9
        value = power_pattern(notch_config(theta_n), params, theta_n, CARRIER_ONLY)
        assert value[0] <= 1e-24

    def test_matches_brute_force_triple_sum(self, params):
        small = OfdmParams(77e9, 200e6, num_subcarriers=3, num_symbols=2)
        rng = np.random.default_rng(11)
        coeffs = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
        angles = np.array([0.2, 1.0, 2.2])
        fast = power_pattern(coeffs, small, angles, ALL_SUBCARRIERS)
        slow = [brute_force_power(coeffs, small, theta, range(3)) for theta in angles]
        np.testing.assert_allclose(fast, slow, rtol=1e-12)

    def test_all_subcarriers_dominates_each_subcarrier(self, params):
        rng = np.random.default_rng(5)
        coeffs = rng.normal(size=(8, 1)) + 1j * rng.normal(size=(8, 1))
        angles = angle_grid(181)
        combined = power_pattern(coeffs, params, angles, ALL_SUBCARRIERS)
        for n in (0, 50, 99):
            single = np.array([brute_force_power(coeffs, params, theta, [n]) for theta in angles])
            assert np.all(combined >= single - 1e-9)

    def test_global_phase_invariance(self, params):
        rng = np.random.default_rng(123)
        coeffs = rng.normal(size=(10, 2)) + 1j * rng.normal(size=(10, 2))
        angles = angle_grid(91)
        reference = power_pattern(coeffs, params, angles, CARRIER_ONLY)
        for psi in rng.uniform(0, 2 * np.pi, size=100):
            rotated = power_pattern(coeffs * np.exp(1j * psi), params, angles, CARRIER_ONLY)
            np.testing.assert_allclose(rotated, reference, rtol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(st.floats(min_value=-3, max_value=3), min_size=2, max_size=8),
        st.floats(min_value=0.05, max_value=np.pi - 0.05),
    )
    def test_mirror_symmetry_for_real_configs(self, params, values, theta):
        coeffs = np.array(values, dtype=float)
        p1 = power_pattern(coeffs, params, theta, CARRIER_ONLY)[0]
        p2 = power_pattern(coeffs, params, np.pi - theta, CARRIER_ONLY)[0]
        assert p2 == pytest.approx(p1, rel=1e-9, abs=1e-9)

    def test_rejects_empty_grid_and_shape_mismatch(self, params):
        with pytest.raises(ValueError):
            power_pattern(np.ones(4), params, np.array([]), CARRIER_ONLY)
        with pytest.raises(ValueError):
            power_pattern(np.ones(4), params, 0.5, CARRIER_ONLY, geometry=ArrayGeometry(5))
        with pytest.raises(ValueError):
            power_pattern(np.ones(4), params, 0.5, "bogus")


class TestNormalizePatternDb:
    def test_decade_ratio(self):
        np.testing.assert_allclose(normalize_pattern_db([1.0, 10.0]), [-10.0, 0.0], atol=1e-12)

    def test_constant_pattern(self):
        np.testing.assert_allclose(normalize_pattern_db([5.0, 5.0]), [0.0, 0.0])

    def test_exact_zero_maps_to_floor(self):
        # 10*log10(2/4) evaluated at high precision: -3.010299956639812
        out = normalize_pattern_db([4.0, 2.0, 0.0])
        assert out[0] == 0.0
        assert out[1] == pytest.approx(-3.010299956639812, abs=1e-12)
        assert out[2] == -300.0

    def test_custom_floor(self):
        assert normalize_pattern_db([1.0, 0.0], floor_db=-120.0)[1] == -120.0

    def test_rejects_degenerate_input(self):
        with pytest.raises(ValueError):
            normalize_pattern_db([0.0, 0.0])
        with pytest.raises(ValueError):
            normalize_pattern_db([1.0, -0.5])


class TestRisConfig:
    def test_vector_becomes_column(self):
        config = RisConfig([1, 2, 3])
        assert config.num_elements == 3
        assert config.num_slots == 1
        assert config.is_static

    def test_static_detection(self):
        config = RisConfig(np.tile(np.array([[1.0], [2.0]]), (1, 4)))
        assert config.is_static
        varying = RisConfig(np.array([[1.0, -1.0], [2.0, 2.0]]))
        assert not varying.is_static
        with pytest.raises(ValueError):
            varying.static_column()

    def test_negated(self):
        config = RisConfig([1 + 1j, -2])
        np.testing.assert_array_equal(config.negated().coefficients, -config.coefficients)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            RisConfig([1.0, np.inf])

    def test_coefficients_are_read_only(self):
        config = RisConfig([1.0, 2.0])
        with pytest.raises(ValueError):
            config.coefficients[0] = 5.0


def test_angle_grid_is_inclusive_quarter_degree():
    deg = angle_grid_deg()
    assert deg.size == 721
    assert deg[0] == 0.0
    assert deg[-1] == 180.0
    assert deg[1] - deg[0] == 0.25
    rad = angle_grid()
    assert rad[0] == 0.0
    assert rad[-1] == pytest.approx(np.pi, rel=1e-15)
