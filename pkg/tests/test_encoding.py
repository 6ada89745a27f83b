"""Amplitude encoding: normalization, padding, and dataset sweeps."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from varq import (
    EncodingError,
    FeatureVector,
    amplitude_encode,
    encode_dataset,
    num_qubits_for,
)

RNG = np.random.default_rng(11)


class TestFeatureVector:
    def test_holds_values_and_label(self):
        x = FeatureVector([1.0, 2.0], 1)
        assert x.dimension == 2
        assert x.label == 1

    def test_rejects_bad_label(self):
        with pytest.raises(EncodingError):
            FeatureVector([1.0], 2)

    def test_rejects_empty_or_2d_values(self):
        with pytest.raises(EncodingError):
            FeatureVector([], 0)
        with pytest.raises(EncodingError):
            FeatureVector([[1.0, 2.0]], 0)


class TestAmplitudeEncode:
    def test_basis_aligned_vector(self):
        enc = amplitude_encode(FeatureVector([1.0, 0.0, 0.0, 0.0], 0))
        assert enc.state.num_qubits == 2
        assert_allclose(enc.state.amplitudes, [1, 0, 0, 0], atol=0)

    def test_constant_vector_gives_uniform_state(self):
        enc = amplitude_encode(FeatureVector([1.0, 1.0, 1.0, 1.0], 0))
        assert_allclose(enc.state.amplitudes, [0.5] * 4, atol=1e-15)

    def test_iris_sample_against_hand_normalization(self):
        x = np.array([5.1, 3.5, 1.4, 0.2])
        enc = amplitude_encode(FeatureVector(x, 0))
        norm = np.sqrt(5.1**2 + 3.5**2 + 1.4**2 + 0.2**2)
        assert_allclose(enc.state.amplitudes.real, x / norm, atol=1e-15)
        assert_allclose(
            enc.state.amplitudes.real, [0.8030, 0.5511, 0.2204, 0.0315], atol=1e-3
        )

    def test_zero_vector_rejected(self):
        with pytest.raises(EncodingError):
            amplitude_encode(FeatureVector([0.0, 0.0], 0))

    def test_non_finite_entries_rejected(self):
        with pytest.raises(EncodingError):
            amplitude_encode(FeatureVector([1.0, np.nan], 0))
        with pytest.raises(EncodingError):
            amplitude_encode(FeatureVector([np.inf, 1.0], 0))

    def test_scale_invariance_exact_for_dyadic_scales(self):
        x = RNG.uniform(0.1, 9.0, size=4)
        base = amplitude_encode(FeatureVector(x, 0)).state.amplitudes
        for c in (2.0, 0.5, 1024.0):
            scaled = amplitude_encode(FeatureVector(c * x, 0)).state.amplitudes
            assert np.array_equal(scaled, base)

    def test_scale_invariance_within_ulp_for_other_scales(self):
        # Non-dyadic scales can move the quotient by one last-place unit.
        x = RNG.uniform(0.1, 9.0, size=4)
        base = amplitude_encode(FeatureVector(x, 0)).state.amplitudes
        for c in (3.0, 0.7, 123.456):
            scaled = amplitude_encode(FeatureVector(c * x, 0)).state.amplitudes
            assert_allclose(scaled, base, atol=1e-15)

    def test_unit_vector_encoding_is_idempotent(self):
        x = RNG.standard_normal(8)
        x /= np.linalg.norm(x)
        enc = amplitude_encode(FeatureVector(x, 1))
        assert_allclose(enc.state.amplitudes.real, x, atol=1e-15)

    def test_qubit_count_is_ceil_log2_for_d_up_to_64(self):
        for d in range(1, 65):
            expected = int(np.ceil(np.log2(d))) if d > 1 else 0
            assert num_qubits_for(d) == expected
            x = np.zeros(d)
            x[0] = 1.0
            enc = amplitude_encode(FeatureVector(x, 0))
            assert enc.state.num_qubits == expected

    def test_non_power_of_two_dimension_zero_padded(self):
        enc = amplitude_encode(FeatureVector([3.0, 4.0, 0.0], 0))
        assert enc.state.num_qubits == 2
        assert_allclose(enc.state.amplitudes, [0.6, 0.8, 0.0, 0.0], atol=1e-15)

    def test_negative_values_become_negative_amplitudes(self):
        enc = amplitude_encode(FeatureVector([-1.0, 1.0], 0))
        assert_allclose(enc.state.amplitudes, [-np.sqrt(0.5), np.sqrt(0.5)], atol=1e-15)

    def test_label_and_source_carried_through(self):
        x = FeatureVector([1.0, 2.0], 1)
        enc = amplitude_encode(x)
        assert enc.label == 1
        assert enc.source is x


class TestEncodeDataset:
    def test_empty_list(self):
        assert encode_dataset([]) == []

    def test_basis_aligned_vectors_map_to_basis_states(self):
        samples = [
            FeatureVector([1.0, 0.0], 0),
            FeatureVector([0.0, 5.0], 1),
        ]
        out = encode_dataset(samples)
        assert_allclose(out[0].state.amplitudes, [1, 0], atol=0)
        assert_allclose(out[1].state.amplitudes, [0, 1], atol=0)

    def test_order_preserving(self):
        samples = [FeatureVector(RNG.uniform(0.1, 9, 4), i % 2) for i in range(6)]
        out = encode_dataset(samples)
        assert [e.source for e in out] == samples

    def test_mixed_dimensions_rejected_with_index(self):
        samples = [
            FeatureVector([1.0, 2.0], 0),
            FeatureVector([1.0, 2.0, 3.0], 1),
        ]
        with pytest.raises(EncodingError, match="sample 1"):
            encode_dataset(samples)

    def test_random_batch_all_normalized(self):
        samples = [FeatureVector(RNG.uniform(0.1, 9, 4), i % 2) for i in range(80)]
        out = encode_dataset(samples)
        assert len(out) == 80
        for enc in out:
            assert enc.state.num_qubits == 2
            assert abs(enc.state.norm() - 1.0) < 1e-12
