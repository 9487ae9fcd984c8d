import math

import numpy as np
import pytest

from qcompare.comparison import (
    coherent_overlap,
    compare_report,
    multiport_success_forms,
    no_click_probabilities,
    p_success_conjugate,
    p_success_multiport,
    p_success_phase,
    p_success_two,
    p_success_universal,
    p_symm,
    unbalanced_test,
    verify_amgm_inequality,
)
from qcompare.detection import IDEAL, run_trials
from qcompare.linear import CoherentRegister, make_balanced_multiport

RNG = np.random.default_rng(31415)


def random_tuple(n, scale=2.0):
    return scale * (RNG.standard_normal(n) + 1j * RNG.standard_normal(n)) / np.sqrt(2)


class TestTwoState:
    def test_identical_states_never_flagged(self):
        assert p_success_two(0.4 + 0.1j, 0.4 + 0.1j) == 0.0

    def test_approaches_one_for_distant_states(self):
        assert p_success_two(5.0, -5.0) >= 1 - 1e-12
        values = [p_success_two(0.0, d) for d in (0.5, 1.0, 2.0, 4.0)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_canonical_value(self):
        assert p_success_two(1.0, -1.0) == pytest.approx(1 - math.exp(-2), abs=1e-12)

    def test_monte_carlo_agreement(self):
        stats = run_trials(CoherentRegister([1.0, -1.0]), make_balanced_multiport(2),
                           [1], IDEAL, trials=100_000, rng=2)
        p = p_success_two(1.0, -1.0)
        assert abs(stats.rate - p) < 3 * math.sqrt(p * (1 - p) / stats.trials)


class TestPhaseOnly:
    def test_zero_phase_difference(self):
        assert p_success_phase(1.0, 0.0) == 0.0

    def test_pi_value(self):
        assert p_success_phase(1.0, math.pi) == pytest.approx(1 - math.exp(-1), abs=1e-12)

    def test_resolution_scales_inversely_with_amplitude(self):
        # delta = c / amplitude pins the probability at 1 - exp(-c^2/4)
        c = 0.5
        limit = 1 - math.exp(-c * c / 4)
        values = [p_success_phase(a, c / a) for a in (50.0, 100.0, 400.0)]
        assert all(abs(v - limit) < 1e-6 for v in values)

    def test_rejects_negative_amplitude(self):
        with pytest.raises(ValueError):
            p_success_phase(-1.0, 0.3)


class TestConjugate:
    def test_opposite_states_silent(self):
        assert p_success_conjugate(0.7j, -0.7j) == 0.0

    def test_equal_states(self):
        assert p_success_conjugate(1.0, 1.0) == pytest.approx(1 - math.exp(-2), abs=1e-12)

    def test_mirror_identity(self):
        for _ in range(20):
            a, b = random_tuple(2)
            assert p_success_conjugate(a, -b) == pytest.approx(p_success_two(a, b), abs=1e-12)


class TestUnbalanced:
    def test_balanced_limit(self):
        a, b = 0.9 - 0.2j, 0.1 + 0.5j
        m0, m1 = unbalanced_test(a, b, 0.5)
        assert m0 == pytest.approx(abs(a + b) ** 2 / 2, abs=1e-12)
        assert m1 == pytest.approx(abs(a - b) ** 2 / 2, abs=1e-12)

    def test_cancellation_condition(self):
        t, theta = 0.3, 0.7
        alpha = 0.8 + 0.2j
        beta = -math.sqrt(t / (1 - t)) * np.exp(1j * theta) * alpha
        m0, _ = unbalanced_test(alpha, beta, t, theta)
        assert m0 < 1e-24

    def test_energy_conservation(self):
        alpha, beta = 1.0, 1.0j
        m0, m1 = unbalanced_test(alpha, beta, 0.3, math.pi / 2)
        assert m0 + m1 == pytest.approx(abs(alpha) ** 2 + abs(beta) ** 2, abs=1e-12)


class TestMultiport:
    def test_all_equal_silent(self):
        assert p_success_multiport([0.3 + 1j] * 4) == 0.0

    def test_reduces_to_two_state_form(self):
        for _ in range(30):
            a, b = random_tuple(2)
            assert p_success_multiport([a, b]) == pytest.approx(
                p_success_two(a, b), abs=1e-12)

    def test_three_forms_agree_on_random_inputs(self):
        for _ in range(200):
            n = int(RNG.integers(2, 7))
            forms = multiport_success_forms(random_tuple(n))
            assert max(forms) - min(forms) < 1e-10

    def test_no_click_probabilities_match_network_means(self):
        amps = np.array([1.0, 1.0, -1.0])
        p0 = no_click_probabilities(amps)
        net = make_balanced_multiport(3)
        means = np.abs(net.matrix.conj().T @ amps) ** 2
        assert np.allclose(p0, np.exp(-means), atol=1e-12)
        assert p_success_multiport(amps) == pytest.approx(1 - np.prod(p0[1:]), abs=1e-10)

    def test_monte_carlo_agreement(self):
        cases = {
            2: [0.75, -0.75],
            3: [0.9, -0.3 + 0.4j, 0.1],
            4: [0.5, 0.5j, -0.5, 0.2],
        }
        for n, amps in cases.items():
            p = p_success_multiport(amps)
            stats = run_trials(CoherentRegister(amps), make_balanced_multiport(n),
                               range(1, n), IDEAL, trials=100_000, rng=n)
            assert abs(stats.rate - p) < 3 * math.sqrt(p * (1 - p) / stats.trials)

    def test_too_few_amplitudes_rejected(self):
        with pytest.raises(ValueError):
            p_success_multiport([1.0])


class TestUniversal:
    def test_identical_states(self):
        assert p_success_universal([0.6, 0.6]) == 0.0

    def test_two_state_closed_form(self):
        assert p_success_universal([1.0, -1.0]) == pytest.approx(
            (1 - math.exp(-4)) / 2, abs=1e-12)
        for _ in range(20):
            a, b = random_tuple(2)
            expect = 0.5 * (1 - abs(coherent_overlap(a, b)) ** 2)
            assert p_success_universal([a, b]) == pytest.approx(expect, abs=1e-12)

    def test_never_exceeds_half_for_two_states(self):
        for _ in range(100):
            assert p_success_universal(random_tuple(2)) <= 0.5 + 1e-12

    def test_three_state_expansion(self):
        # six-term symmetric-subspace expansion written out explicitly
        a = random_tuple(3)
        g01 = coherent_overlap(a[0], a[1])
        g12 = coherent_overlap(a[1], a[2])
        g20 = coherent_overlap(a[2], a[0])
        expect = (1 + abs(g01) ** 2 + abs(g12) ** 2 + abs(g20) ** 2
                  + 2 * (g01 * g12 * g20).real) / 6
        assert p_symm(a) == pytest.approx(expect, abs=1e-12)

    def test_factorial_guard(self):
        with pytest.raises(ValueError):
            p_success_universal(np.ones(9))


class TestDominance:
    def test_equality_at_identical_inputs(self):
        report = verify_amgm_inequality([0.8] * 3)
        assert report.lhs == pytest.approx(1.0)
        assert report.rhs == pytest.approx(1.0)
        assert report.holds

    def test_strict_for_distinct_pairs(self):
        report = verify_amgm_inequality([1.0, -1.0])
        assert report.lhs < report.rhs
        assert report.holds

    def test_random_sweep(self):
        for _ in range(1000):
            n = int(RNG.integers(2, 6))
            report = verify_amgm_inequality(random_tuple(n))
            assert report.holds


class TestSymmetries:
    def test_permutation_invariance(self):
        amps = random_tuple(4)
        perm = RNG.permutation(4)
        assert p_success_multiport(amps[perm]) == pytest.approx(
            p_success_multiport(amps), abs=1e-12)
        assert p_success_universal(amps[perm]) == pytest.approx(
            p_success_universal(amps), abs=1e-12)

    def test_global_phase_covariance(self):
        amps = random_tuple(3)
        rotated = amps * np.exp(1j * 1.234)
        assert p_success_multiport(rotated) == pytest.approx(
            p_success_multiport(amps), abs=1e-12)
        assert p_success_universal(rotated) == pytest.approx(
            p_success_universal(amps), abs=1e-12)


class TestReport:
    def test_report_fields(self):
        report = compare_report([1.0, -1.0])
        assert report.p_succ_coherent == pytest.approx(1 - math.exp(-2), abs=1e-12)
        assert report.p_succ_universal == pytest.approx((1 - math.exp(-4)) / 2, abs=1e-12)
        assert len(report.p_no_click) == 2
        assert report.p_succ_coherent >= report.p_succ_universal
