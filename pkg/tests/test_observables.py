import cmath
import math

import numpy as np
import pytest

from genpsim.errors import NumericalInvariantError
from genpsim.evolution import propagate
from genpsim.fock import coherent_ket, encode_state, oracle_observables
from genpsim.observables import (
    OCCUPATION_FLOOR,
    correlation_set,
    cross_g2,
    mean_occupation,
    photon_distribution,
    wigner,
)
from genpsim.states import (
    CatSpec,
    CoherentSpec,
    GeneralizedPState,
    cat_state,
    coherent_state,
    kitten_spec,
    multi_cat_state,
    product_state,
)

from oracles import cat_photon_probability, displaced_parity_wigner

SQ2 = 1 / math.sqrt(2)

# frozen from the analytic Fock expansion of the balanced cat, beta = 2
EVEN_CAT_P0 = 0.03661899347368654


class TestMeanOccupation:
    def test_coherent(self):
        assert mean_occupation(coherent_state(1.3 - 0.4j), 0) == pytest.approx(
            1.3**2 + 0.4**2, abs=1e-12
        )

    def test_even_kitten_tanh(self):
        s = cat_state(CatSpec(1.0, SQ2, SQ2, 0.0))
        assert mean_occupation(s, 0) == pytest.approx(math.tanh(1.0), abs=1e-12)

    def test_even_kitten_vs_fock_oracle(self):
        rho = encode_state([kitten_spec(1.0)], 12)
        assert oracle_observables(rho).occupations[0] == pytest.approx(
            math.tanh(1.0), abs=1e-7
        )

    def test_matches_distribution_mean(self):
        s = kitten_spec(1.0, theta=math.pi / 2).to_state()
        dist = photon_distribution(s, 0, 30)
        assert dist.mean() == pytest.approx(mean_occupation(s, 0), abs=1e-10)

    def test_bad_mode_index(self):
        with pytest.raises(ValueError):
            mean_occupation(coherent_state(1.0), 1)


class TestCrossG2:
    def test_coherent_product_exactly_one(self):
        s = product_state([coherent_state(0.7 + 0.1j), coherent_state(-0.3j)])
        assert abs(cross_g2(s, 0, 1) - 1.0) < 1e-12

    def test_product_kitten_coherent_is_one(self):
        # number-diagonal factorization; brute-force Fock route at cutoff 20
        s = product_state(
            [kitten_spec(1.0, theta=math.pi / 2).to_state(), coherent_state(1.0)]
        )
        assert cross_g2(s, 0, 1) == pytest.approx(1.0, abs=1e-12)
        rho = encode_state(
            [kitten_spec(1.0, theta=math.pi / 2), CoherentSpec(1.0)], 20
        )
        assert oracle_observables(rho).cross_g2[(0, 1)] == pytest.approx(1.0, abs=1e-9)

    def test_coherent_one_along_any_linear_evolution(self, fig3_schedule):
        s = product_state([coherent_state(0.9j), coherent_state(0.5)])
        for _, snap in propagate(s, fig3_schedule, record_every=2000.0):
            assert abs(cross_g2(snap, 0, 1) - 1.0) < 1e-12

    def test_undefined_below_floor(self):
        s = product_state([coherent_state(0.0), coherent_state(1.0)])
        assert math.isnan(cross_g2(s, 0, 1))
        assert OCCUPATION_FLOOR == 1e-9

    def test_same_mode_rejected(self):
        s = product_state([coherent_state(1.0), coherent_state(1.0)])
        with pytest.raises(ValueError):
            cross_g2(s, 1, 1)


class TestPhotonDistribution:
    def test_vacuum(self):
        dist = photon_distribution(coherent_state(0.0), 0, 5)
        assert dist.probabilities[0] == 1.0
        assert np.all(dist.probabilities[1:] == 0.0)

    def test_even_cat_beta2(self):
        s = cat_state(CatSpec(2.0, SQ2, SQ2, 0.0))
        dist = photon_distribution(s, 0, 30)
        assert dist.probabilities[0] == pytest.approx(EVEN_CAT_P0, abs=1e-13)
        assert np.abs(dist.probabilities[1::2]).max() < 1e-14
        # analytic Fock expansion, every n
        for n in range(12):
            assert dist.probabilities[n] == pytest.approx(
                cat_photon_probability(2.0, SQ2, SQ2, 0.0, n), abs=1e-13
            )

    def test_odd_cat_beta2(self):
        s = cat_state(CatSpec(2.0, SQ2, SQ2, math.pi))
        dist = photon_distribution(s, 0, 30)
        assert np.abs(dist.probabilities[0::2]).max() < 1e-14
        assert dist.total() == pytest.approx(1.0, abs=1e-10)

    def test_quarter_phase_cat_matches_coherent(self):
        # the two photon-number distributions are identical
        cat = cat_state(CatSpec(2.0, SQ2, SQ2, math.pi / 2))
        coh = coherent_state(2.0)
        d1 = photon_distribution(cat, 0, 25).probabilities
        d2 = photon_distribution(coh, 0, 25).probabilities
        assert np.abs(d1 - d2).max() < 1e-12

    def test_log_space_tail(self):
        s = coherent_state(2.5)
        dist = photon_distribution(s, 0, 60)
        n = np.arange(61)
        expected = np.exp(-6.25) * 6.25**n / np.array([float(math.factorial(k)) for k in n])
        assert np.allclose(dist.probabilities, expected, atol=1e-13)
        assert dist.total() == pytest.approx(1.0, abs=1e-10)

    def test_sum_converges_to_one(self):
        s = cat_state(CatSpec(1.0, SQ2, SQ2, math.pi / 2))
        assert photon_distribution(s, 0, 40).total() == pytest.approx(1.0, abs=1e-10)

    def test_negative_nmax_rejected(self):
        with pytest.raises(ValueError):
            photon_distribution(coherent_state(1.0), 0, -1)


class TestWigner:
    def test_vacuum_peak(self):
        g = wigner(coherent_state(0.0), 0, resolution=81)
        xs, ys = g.axes()
        assert g.values[40, 40] == pytest.approx(2 / math.pi, abs=1e-12)
        assert g.integral() == pytest.approx(1.0, abs=1e-3)

    def test_quarter_phase_kitten(self):
        s = kitten_spec(1.0, theta=math.pi / 2).to_state()
        g = wigner(s, 0)
        assert g.integral() == pytest.approx(1.0, abs=1e-3)
        assert g.values.min() < 0.0

    def test_against_displaced_parity(self):
        s = kitten_spec(1.0, theta=math.pi / 2).to_state()
        g = wigner(s, 0, re_min=-2, re_max=2, im_min=-2, im_max=2, resolution=9)
        ket = coherent_ket(1.0, 60) + cmath.exp(1j * math.pi / 2) * coherent_ket(-1.0, 60)
        ket = ket / np.linalg.norm(ket)
        xs, ys = g.axes()
        for iy, y in enumerate(ys):
            for ix, x in enumerate(xs):
                ref = displaced_parity_wigner(ket, complex(x, y))
                assert g.values[iy, ix] == pytest.approx(ref, abs=1e-8)

    def test_square_cat(self):
        s = multi_cat_state([1.5 * 1j**k for k in range(4)], [1.0] * 4)
        g = wigner(s, 0)
        assert g.integral() == pytest.approx(1.0, abs=1e-3)
        assert g.values.min() < 0.0

    def test_multimode_reduction(self):
        # single-mode Wigner of a product state equals the factor state's
        kit = kitten_spec(1.0, theta=math.pi / 2).to_state()
        prod = product_state([kit, coherent_state(0.3 + 0.4j)])
        g1 = wigner(kit, 0, resolution=41)
        g2 = wigner(prod, 0, resolution=41)
        assert np.abs(g1.values - g2.values).max() < 1e-12

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            wigner(coherent_state(0.0), 0, resolution=1)
        with pytest.raises(ValueError):
            wigner(coherent_state(0.0), 0, re_min=math.inf)


class TestResidueGuard:
    def test_broken_pairing_rejected_at_construction(self):
        with pytest.raises(ValueError):
            GeneralizedPState(
                modes=1,
                weights=np.array([0.5 + 0.5j, 0.5 - 0.5j]),
                alpha=np.array([[1.0], [1.0]]),
                alpha_tilde=np.array([[1.0], [-1.0]]),
            )

    def test_correlation_set_full(self):
        s = product_state([coherent_state(0.5), coherent_state(1j), coherent_state(1.0)])
        cs = correlation_set(s)
        assert cs.occupations == pytest.approx([0.25, 1.0, 1.0])
        assert set(cs.cross_g2) == {(0, 1), (0, 2), (1, 2)}
