import numpy as np
import pytest
from scipy.stats import unitary_group

from qcompare.linear import (
    CoherentRegister,
    LinearNetwork,
    apply_network,
    compose,
    make_balanced_multiport,
    make_beam_splitter,
    make_phase_shift,
    output_means,
)

RNG = np.random.default_rng(20240811)


def random_amplitudes(n, scale=2.0):
    return scale * (RNG.standard_normal(n) + 1j * RNG.standard_normal(n)) / np.sqrt(2)


class TestBeamSplitter:
    def test_balanced_cancels_equal_inputs(self):
        alpha = 0.7 - 0.2j
        out = apply_network(make_beam_splitter(0.5), CoherentRegister([alpha, alpha]))
        assert out.amplitudes[0] == pytest.approx(np.sqrt(2) * alpha, abs=1e-14)
        assert out.amplitudes[1] == pytest.approx(0.0, abs=1e-14)

    def test_full_transmission_is_identity_up_to_sign(self):
        out = apply_network(make_beam_splitter(1.0), CoherentRegister([1.3j, 0.4]))
        assert out.amplitudes[0] == pytest.approx(1.3j, abs=1e-14)
        assert out.amplitudes[1] == pytest.approx(-0.4, abs=1e-14)

    def test_opposite_inputs_exit_difference_port(self):
        out = apply_network(make_beam_splitter(0.5), CoherentRegister([1.0, -1.0]))
        assert out.amplitudes[0] == pytest.approx(0.0, abs=1e-14)
        assert out.amplitudes[1] == pytest.approx(np.sqrt(2), abs=1e-14)

    @pytest.mark.parametrize("bad", [-0.1, 1.1, 2.0])
    def test_rejects_out_of_range_transmittance(self, bad):
        with pytest.raises(ValueError):
            make_beam_splitter(bad)

    def test_input_phase_via_composition(self):
        # phase shifter on mode 0 followed by the splitter tests sqrt(T) e^{i th} a + sqrt(R) b
        theta, t = 0.9, 0.3
        net = compose(make_beam_splitter(t), make_phase_shift([theta, 0.0]))
        alpha, beta = 0.8 + 0.1j, -0.5 + 0.6j
        out = apply_network(net, CoherentRegister([alpha, beta]))
        expected0 = np.sqrt(t) * np.exp(1j * theta) * alpha + np.sqrt(1 - t) * beta
        expected1 = np.sqrt(1 - t) * np.exp(1j * theta) * alpha - np.sqrt(t) * beta
        assert out.amplitudes[0] == pytest.approx(expected0, abs=1e-12)
        assert out.amplitudes[1] == pytest.approx(expected1, abs=1e-12)


class TestBalancedMultiport:
    def test_two_modes_is_the_balanced_splitter(self):
        mp = make_balanced_multiport(2)
        bs = make_beam_splitter(0.5)
        assert np.allclose(mp.matrix, bs.matrix, atol=1e-12)

    def test_row_sums_of_three_port(self):
        mat = make_balanced_multiport(3).matrix
        sums = mat.sum(axis=1)
        assert sums[0] == pytest.approx(np.sqrt(3), abs=1e-12)
        assert abs(sums[1]) < 1e-12 and abs(sums[2]) < 1e-12

    def test_determinant_modulus_one(self):
        det = np.linalg.det(make_balanced_multiport(5).matrix)
        assert abs(det) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("bad", [0, 1, -3])
    def test_rejects_small_n(self, bad):
        with pytest.raises(ValueError):
            make_balanced_multiport(bad)

    def test_equal_inputs_bunch_into_mode_zero(self):
        alpha = 0.3 + 0.4j
        for n in (2, 3, 5, 8):
            out = apply_network(make_balanced_multiport(n),
                                CoherentRegister([alpha] * n))
            assert out.amplitudes[0] == pytest.approx(np.sqrt(n) * alpha, abs=1e-12)
            assert np.max(np.abs(out.amplitudes[1:])) < 1e-12

    def test_matched_phase_ramp_feeds_single_mode(self):
        w = np.exp(2j * np.pi / 3)
        out = apply_network(make_balanced_multiport(3), CoherentRegister([1, w, w * w]))
        means = out.mode_means()
        assert means[1] == pytest.approx(3.0, abs=1e-12)
        assert means[0] < 1e-24 and means[2] < 1e-24


class TestNetworkInvariants:
    def test_construction_rejects_non_unitary(self):
        with pytest.raises(ValueError):
            LinearNetwork(np.array([[1.0, 0.0], [0.0, 1.0 + 1e-8]]))

    def test_unitarity_of_constructors(self):
        nets = [make_beam_splitter(0.37, 0.4), make_balanced_multiport(7),
                make_phase_shift([0.1, -2.0, 3.0])]
        for net in nets:
            defect = np.max(np.abs(net.matrix @ net.matrix.conj().T - np.eye(net.n_modes)))
            assert defect < 1e-10

    def test_photon_conservation_random_sweep(self):
        # 1000 random register/network pairs
        for _ in range(1000):
            n = int(RNG.integers(2, 9))
            net = LinearNetwork(unitary_group.rvs(n, random_state=RNG))
            reg = CoherentRegister(random_amplitudes(n))
            out = apply_network(net, reg)
            assert out.mean_photon_number == pytest.approx(
                reg.mean_photon_number, rel=1e-12)

    def test_composition_matches_sequential_application(self):
        for _ in range(50):
            n = int(RNG.integers(2, 6))
            a = LinearNetwork(unitary_group.rvs(n, random_state=RNG))
            b = LinearNetwork(unitary_group.rvs(n, random_state=RNG))
            reg = CoherentRegister(random_amplitudes(n))
            seq = apply_network(a, apply_network(b, reg))
            fused = apply_network(compose(a, b), reg)
            assert np.allclose(seq.amplitudes, fused.amplitudes, atol=1e-10)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            apply_network(make_balanced_multiport(3), CoherentRegister([1.0, 2.0]))

    def test_register_rejects_non_finite(self):
        with pytest.raises(ValueError):
            CoherentRegister([1.0, np.nan])

    def test_output_means_helper(self):
        means = output_means(make_beam_splitter(0.5), CoherentRegister([1.0, -1.0]))
        assert means[1] == pytest.approx(2.0, abs=1e-12)
