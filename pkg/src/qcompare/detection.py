"""Photon-detector models and the Monte Carlo engine for click statistics.

Counts registered on a coherent mode of mean photon number ``m`` are Poisson
with mean ``efficiency * m + dark_mean``: inefficiency is Bernoulli thinning
(mean scaling for a Poisson) and dark counts are an independent additive
Poisson term per detector per window.  A non-number-resolving detector
reduces the count to click / no-click.

Randomness contract: every stochastic entry point accepts either an integer
seed or a ready ``numpy.random.Generator``.  Seeds feed a counter-based
Philox stream; inside the vectorized trial engine, trial ``i`` consumes the
``i``-th fixed-width block of that stream (one uniform per watched detector,
inverted through the exact Poisson CDF), so trials are independent,
reproducible and order-independent to aggregate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linear import CoherentRegister, LinearNetwork, apply_network

Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True)
class DetectorModel:
    """Detector parameters; the defaults describe an ideal detector."""

    efficiency: float = 1.0
    dark_mean: float = 0.0
    number_resolving: bool = True

    def __post_init__(self):
        if not 0.0 <= self.efficiency <= 1.0:
            raise ValueError(f"efficiency must lie in [0, 1], got {self.efficiency}")
        if not self.dark_mean >= 0.0:
            raise ValueError(f"dark_mean must be nonnegative, got {self.dark_mean}")

    def registered_mean(self, mean_photon: float) -> float:
        """Mean of the registered count distribution for a given incident mean."""
        return self.efficiency * mean_photon + self.dark_mean


IDEAL = DetectorModel()


@dataclass(frozen=True)
class DetectionRecord:
    """Counts registered on a set of modes in a single detection window."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")

    @property
    def clicked(self) -> bool:
        return any(c > 0 for c in self.counts)


@dataclass(frozen=True)
class TrialStats:
    """Empirical event rate with its Wilson 95% confidence interval."""

    rate: float
    wilson_low: float
    wilson_high: float
    successes: int
    trials: int


def stream(seed) -> np.random.Generator:
    """Counter-based random stream for a seed; Generators pass through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    seed = int(seed)
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    return np.random.Generator(np.random.Philox(key=seed))


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be positive")
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


def sample_counts(mean_photon: float, model: DetectorModel = IDEAL, rng=0, size=None):
    """Sample registered counts for a mode of the given mean photon number.

    Returns an int (or an int array when ``size`` is given) distributed as
    Poisson(efficiency * mean + dark_mean); a non-number-resolving model
    reduces the result to 0/1.
    """
    if not mean_photon >= 0.0:
        raise ValueError(f"mean photon number must be nonnegative, got {mean_photon}")
    gen = stream(rng)
    counts = gen.poisson(model.registered_mean(mean_photon), size=size)
    if not model.number_resolving:
        counts = np.minimum(counts, 1) if size is not None else min(int(counts), 1)
    return counts if size is not None else int(counts)


def click_probabilities(means, model: DetectorModel = IDEAL) -> np.ndarray:
    """Per-detector click probabilities 1 - exp(-(efficiency * mean + dark))."""
    means = np.asarray(means, dtype=float)
    if np.any(means < 0):
        raise ValueError("mean photon numbers must be nonnegative")
    return 1.0 - np.exp(-(model.efficiency * means + model.dark_mean))


def click_matrix(means, model: DetectorModel, trials: int, rng) -> np.ndarray:
    """Boolean (trials, n_detectors) click table, one uniform per entry.

    A click happens iff the registered Poisson count is nonzero, which for a
    single inverse-CDF uniform ``u`` is ``u >= exp(-mean)``; this makes the
    whole table a deterministic function of the stream layout.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    p_click = click_probabilities(means, model)
    gen = stream(rng)
    u = gen.random((trials, p_click.size))
    return u < p_click[None, :]


def run_trials(
    register: CoherentRegister,
    network: LinearNetwork,
    watched_modes,
    model: DetectorModel = IDEAL,
    trials: int = 10_000,
    rng=0,
) -> TrialStats:
    """Monte Carlo difference-detection rate for a register sent through a network.

    Watches the listed output modes over ``trials`` repetitions and reports
    the fraction of trials in which at least one watched detector registered
    a count, with a Wilson 95% interval.
    """
    watched = sorted(set(int(m) for m in watched_modes))
    if not watched:
        raise ValueError("watched_modes must not be empty")
    if any(m < 0 or m >= network.n_modes for m in watched):
        raise ValueError(f"watched modes {watched} out of range for {network.n_modes} modes")
    means = apply_network(network, register).mode_means()[watched]
    clicks = click_matrix(means, model, trials, rng)
    successes = int(np.count_nonzero(clicks.any(axis=1)))
    low, high = wilson_interval(successes, trials)
    return TrialStats(successes / trials, low, high, successes, trials)
