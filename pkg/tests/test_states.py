import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genpsim.states import (
    CatSpec,
    CoherentSpec,
    MultiCatSpec,
    cat_state,
    coherent_state,
    kitten_spec,
    multi_cat_state,
    product_state,
)
from genpsim.observables import mean_occupation, photon_distribution

SQ2 = 1 / math.sqrt(2)


def assert_hermitian_paired(state):
    n = state.n_components
    used = set()
    for i in range(n):
        partner = None
        for j in range(n):
            if j in used and j != i:
                continue
            if (
                np.isclose(state.weights[j], np.conj(state.weights[i]), atol=1e-12)
                and np.allclose(state.alpha[j], state.alpha_tilde[i], atol=1e-12)
                and np.allclose(state.alpha_tilde[j], state.alpha[i], atol=1e-12)
            ):
                partner = j
                break
        assert partner is not None, f"component {i} unpaired"


class TestCoherent:
    def test_vacuum_single_component(self):
        s = coherent_state(0.0)
        assert s.n_components == 1
        assert s.weights[0] == 1.0 + 0j
        assert s.alpha[0, 0] == 0.0
        assert s.alpha_tilde[0, 0] == 0.0

    def test_unit_phase_amplitude(self):
        beta = cmath.exp(1j * math.pi / 8)
        s = coherent_state(beta)
        assert s.alpha[0, 0] == beta
        assert s.alpha_tilde[0, 0] == beta

    def test_occupation_consistency(self):
        # |beta|^2 = 1.96 both via the direct estimator and sum n P(n)
        beta = 1.4 * cmath.exp(1j * math.pi / 2)
        s = coherent_state(beta)
        assert mean_occupation(s, 0) == pytest.approx(1.96, abs=1e-12)
        dist = photon_distribution(s, 0, 40)
        assert dist.mean() == pytest.approx(1.96, abs=1e-10)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            coherent_state(complex("inf"))


class TestCat:
    def test_four_components_unit_trace(self):
        s = cat_state(CatSpec(1.0, SQ2, SQ2, 0.0))
        assert s.n_components == 4
        assert abs(s.weights.sum() - 1.0) < 1e-12
        assert_hermitian_paired(s)

    def test_weight_structure(self):
        beta, theta = 1.0, math.pi / 2
        s = cat_state(CatSpec(beta, SQ2, SQ2, theta))
        overlap = math.exp(-2.0)
        norm = 1.0 + 2 * SQ2 * SQ2 * math.cos(theta) * overlap
        # (bra, ket) lexicographic ordering: (+,+), (+,-), (-,+), (-,-)
        expected = np.array(
            [
                0.5,
                0.5 * cmath.exp(1j * theta) * overlap,
                0.5 * cmath.exp(-1j * theta) * overlap,
                0.5,
            ]
        ) / norm
        assert np.allclose(s.weights, expected, atol=1e-15)
        assert np.allclose(s.alpha[:, 0], [beta, -beta, beta, -beta])
        assert np.allclose(s.alpha_tilde[:, 0], [beta, beta, -beta, -beta])

    def test_degenerate_cat_is_coherent(self):
        s = cat_state(CatSpec(1.3, 1.0, 0.0, 0.7))
        c = coherent_state(1.3)
        assert s.n_components == 1
        assert np.array_equal(s.weights, c.weights)
        assert np.array_equal(s.alpha, c.alpha)

    def test_invalid_coefficients(self):
        with pytest.raises(ValueError):
            CatSpec(1.0, 0.9, 0.9, 0.0)

    @given(
        mag=st.floats(0.1, 3.0),
        phase=st.floats(0, 2 * math.pi),
        mix=st.floats(0.05, math.pi / 2 - 0.05),
        theta=st.floats(0, 2 * math.pi),
    )
    @settings(max_examples=60, deadline=None)
    def test_random_cats_satisfy_invariants(self, mag, phase, mix, theta):
        beta = mag * cmath.exp(1j * phase)
        a, b = math.cos(mix), math.sin(mix)
        s = cat_state(CatSpec(beta, a, b, theta))
        assert abs(s.weights.sum() - 1.0) < 1e-12
        assert_hermitian_paired(s)
        # occupation formula |beta|^2 (1 - 2ab cos(theta) ov) / (1 + 2ab cos(theta) ov)
        ov = math.exp(-2 * abs(beta) ** 2)
        norm = 1 + 2 * a * b * math.cos(theta) * ov
        expected = abs(beta) ** 2 * (1 - 2 * a * b * math.cos(theta) * ov) / norm
        assert mean_occupation(s, 0) == pytest.approx(expected, rel=1e-10, abs=1e-12)


class TestMultiCat:
    def test_single_term_is_coherent(self):
        s = multi_cat_state([0.7 + 0.2j], [1.0])
        c = coherent_state(0.7 + 0.2j)
        assert s.n_components == 1
        assert np.array_equal(s.alpha, c.alpha)

    def test_two_terms_match_cat(self):
        beta, theta = 0.9, 1.1
        a, b = math.cos(0.4), math.sin(0.4)
        s1 = multi_cat_state([beta, -beta], [a, b * cmath.exp(1j * theta)])
        s2 = cat_state(CatSpec(beta, a, b, theta))
        assert s1.n_components == s2.n_components
        assert np.allclose(s1.weights, s2.weights, atol=1e-14)
        assert np.allclose(s1.alpha, s2.alpha, atol=1e-14)
        assert np.allclose(s1.alpha_tilde, s2.alpha_tilde, atol=1e-14)

    def test_square_superposition(self):
        amps = [1.5 * 1j**k for k in range(4)]
        s = multi_cat_state(amps, [1.0] * 4)
        assert s.n_components == 16
        assert abs(s.weights.sum() - 1.0) < 1e-12
        assert_hermitian_paired(s)

    def test_errors(self):
        with pytest.raises(ValueError):
            multi_cat_state([1.0, 2.0], [1.0])
        with pytest.raises(ValueError):
            multi_cat_state([1.0, 2.0], [0.0, 0.0])


class TestProduct:
    def test_two_coherent(self):
        s = product_state([coherent_state(0.5), coherent_state(1j)])
        assert s.modes == 2
        assert s.n_components == 1

    def test_kitten_times_coherent(self):
        kit = kitten_spec(1.0, theta=math.pi / 2).to_state()
        s = product_state([kit, coherent_state(cmath.exp(1j * math.pi / 8))])
        assert s.modes == 2
        assert s.n_components == 4
        assert_hermitian_paired(s)

    def test_four_mode_input(self):
        states = [
            coherent_state(cmath.exp(1j * math.pi / 4)),
            kitten_spec(1.0).to_state(),
            coherent_state(1.2j),
            coherent_state(0.8 * cmath.exp(1j * 5 * math.pi / 4)),
        ]
        s = product_state(states)
        assert s.modes == 4
        assert s.n_components == 4

    def test_component_count_multiplies(self):
        square = multi_cat_state([1.5 * 1j**k for k in range(4)], [1.0] * 4)
        kit = kitten_spec(1.0).to_state()
        s = product_state([square, kit])
        assert s.n_components == 16 * 4
        assert abs(s.weights.sum() - 1.0) < 1e-12

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            product_state([])

    def test_multimode_input_rejected(self):
        two = product_state([coherent_state(0.0), coherent_state(0.0)])
        with pytest.raises(ValueError):
            product_state([two])


class TestSpecs:
    def test_spec_roundtrip(self):
        assert CoherentSpec(1j).to_state().n_components == 1
        assert MultiCatSpec((1.0, -1.0), (1.0, 1.0)).to_state().n_components == 4

    def test_kitten_helper(self):
        spec = kitten_spec(1.0, theta=0.0)
        assert spec.a == pytest.approx(SQ2)
        assert spec.a**2 + spec.b**2 == pytest.approx(1.0, abs=1e-15)
