import math

import numpy as np
import pytest

from qcompare.detection import (
    IDEAL,
    DetectionRecord,
    DetectorModel,
    run_trials,
    sample_counts,
    stream,
    wilson_interval,
)
from qcompare.linear import CoherentRegister, make_balanced_multiport, make_beam_splitter


def three_sigma(p, n):
    return 3.0 * math.sqrt(max(p * (1 - p), 1e-12) / n)


class TestDetectorModel:
    def test_defaults_are_ideal(self):
        assert IDEAL.efficiency == 1.0
        assert IDEAL.dark_mean == 0.0
        assert IDEAL.number_resolving

    @pytest.mark.parametrize("kwargs", [
        {"efficiency": -0.1}, {"efficiency": 1.2}, {"dark_mean": -1.0},
    ])
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            DetectorModel(**kwargs)

    def test_record_validation(self):
        with pytest.raises(ValueError):
            DetectionRecord(counts=(0, -1))
        assert DetectionRecord(counts=(0, 2)).clicked


class TestSampleCounts:
    def test_zero_mean_ideal_never_clicks(self):
        counts = sample_counts(0.0, IDEAL, rng=1, size=1000)
        assert np.all(counts == 0)

    def test_negative_mean_rejected(self):
        with pytest.raises(ValueError):
            sample_counts(-0.5, IDEAL, rng=0)

    def test_click_rate_matches_two_state_success_probability(self):
        # mean |alpha-beta|^2/2 with alpha=1, beta=-1
        mean = 2.0
        n = 100_000
        counts = sample_counts(mean, IDEAL, rng=7, size=n)
        rate = np.count_nonzero(counts) / n
        expected = 1.0 - math.exp(-mean)
        assert abs(rate - expected) < three_sigma(expected, n)

    def test_efficiency_thins_the_mean(self):
        model = DetectorModel(efficiency=0.5)
        n = 100_000
        counts = sample_counts(2.0, model, rng=11, size=n)
        rate = np.count_nonzero(counts) / n
        expected = 1.0 - math.exp(-1.0)
        assert abs(rate - expected) < three_sigma(expected, n)
        assert np.mean(counts) == pytest.approx(1.0, abs=3 * math.sqrt(1.0 / n))

    def test_threshold_detector_reports_clicks(self):
        model = DetectorModel(number_resolving=False)
        counts = sample_counts(5.0, model, rng=3, size=500)
        assert set(np.unique(counts)) <= {0, 1}
        assert sample_counts(5.0, model, rng=3) in (0, 1)

    def test_determinism(self):
        a = sample_counts(1.3, IDEAL, rng=42, size=50)
        b = sample_counts(1.3, IDEAL, rng=42, size=50)
        assert np.array_equal(a, b)


class TestRunTrials:
    def test_equal_inputs_never_click(self):
        reg = CoherentRegister([0.9, 0.9, 0.9])
        stats = run_trials(reg, make_balanced_multiport(3), [1, 2], IDEAL, trials=5000, rng=0)
        assert stats.rate == 0.0
        assert stats.successes == 0

    def test_two_state_difference_detection(self):
        reg = CoherentRegister([1.0, -1.0])
        stats = run_trials(reg, make_beam_splitter(0.5), [1], IDEAL, trials=100_000, rng=5)
        expected = 1.0 - math.exp(-2.0)
        assert abs(stats.rate - expected) < three_sigma(expected, stats.trials)
        assert stats.wilson_low < expected < stats.wilson_high

    def test_dark_counts_fire_on_equal_inputs(self):
        reg = CoherentRegister([0.5, 0.5, 0.5])
        model = DetectorModel(dark_mean=0.01)
        stats = run_trials(reg, make_balanced_multiport(3), [1, 2], model,
                           trials=100_000, rng=9)
        expected = 1.0 - math.exp(-0.01 * 2)
        assert abs(stats.rate - expected) < three_sigma(expected, stats.trials)

    def test_efficiency_scales_difference_rate(self):
        reg = CoherentRegister([1.0, -1.0])
        model = DetectorModel(efficiency=0.5)
        stats = run_trials(reg, make_beam_splitter(0.5), [1], model, trials=100_000, rng=13)
        expected = 1.0 - math.exp(-0.5 * 2.0)
        assert abs(stats.rate - expected) < three_sigma(expected, stats.trials)

    def test_empty_watched_set_rejected(self):
        reg = CoherentRegister([1.0, -1.0])
        with pytest.raises(ValueError):
            run_trials(reg, make_beam_splitter(0.5), [], IDEAL, trials=10, rng=0)

    def test_out_of_range_mode_rejected(self):
        reg = CoherentRegister([1.0, -1.0])
        with pytest.raises(ValueError):
            run_trials(reg, make_beam_splitter(0.5), [2], IDEAL, trials=10, rng=0)

    def test_seed_determinism(self):
        reg = CoherentRegister([0.8, -0.3 + 0.2j])
        a = run_trials(reg, make_beam_splitter(0.5), [0, 1], IDEAL, trials=2000, rng=77)
        b = run_trials(reg, make_beam_splitter(0.5), [0, 1], IDEAL, trials=2000, rng=77)
        assert a == b


class TestHelpers:
    def test_wilson_interval_brackets_the_rate(self):
        low, high = wilson_interval(50, 100)
        assert low < 0.5 < high
        assert wilson_interval(0, 100)[0] == pytest.approx(0.0, abs=1e-12)
        assert wilson_interval(100, 100)[1] == pytest.approx(1.0, abs=1e-12)

    def test_stream_accepts_generator(self):
        gen = stream(4)
        assert stream(gen) is gen

    def test_stream_rejects_negative_seed(self):
        with pytest.raises(ValueError):
            stream(-1)
