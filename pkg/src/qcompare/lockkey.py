"""Quantum lock-and-key: key generation, lock testing, attacks and leakage bounds.

A key is a string of M coherent states of common magnitude whose phases are
drawn independently and uniformly from the N-th roots of unity; the lock is
an identical string.  Validation compares key against lock position by
position on balanced beam splitters: any click in a difference mode rejects
the key, and a fully silent test returns the lock states undisturbed.

Security comes in two parts.  An adversary without a key is best off sending
coherent states (the pass probability is linear in the P-function, so the
optimum over all states is attained at a point mass); the phase-averaged
single-position pass probability has the closed Bessel form implemented in
``attack_pass_probability``.  An adversary holding key copies is limited by
the Holevo bound; ``holevo_entropy_finite`` and ``holevo_entropy_infinite``
evaluate the single-position von Neumann entropy that caps the accessible
information per copy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .detection import IDEAL, DetectorModel, TrialStats, click_matrix, sample_counts, stream, wilson_interval
from .errors import InvariantError
from .fock import coherent_fock

# ---------------------------------------------------------------------------
# keys and lock tests
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KeyString:
    """M-position coherent key: common magnitude plus a phase index per position."""

    n_phases: int
    amplitude: float
    phases: tuple[int, ...]

    def __post_init__(self):
        if self.n_phases < 2:
            raise ValueError(f"phase alphabet must have at least 2 entries, got {self.n_phases}")
        if self.amplitude < 0:
            raise ValueError("amplitude must be nonnegative")
        if len(self.phases) < 1:
            raise ValueError("key must have at least one position")
        if any(not 0 <= k < self.n_phases for k in self.phases):
            raise ValueError("phase indices out of range")

    @property
    def length(self) -> int:
        return len(self.phases)

    def amplitudes(self) -> np.ndarray:
        """Coherent amplitude per position, amplitude * exp(2 pi i k / N)."""
        k = np.asarray(self.phases, dtype=float)
        return self.amplitude * np.exp(2j * np.pi * k / self.n_phases)


def generate_key(length: int, n_phases: int, amplitude: float, rng=0) -> KeyString:
    """Draw a key with i.i.d. uniform phase indices."""
    if length < 1:
        raise ValueError("length must be positive")
    gen = stream(rng)
    phases = tuple(int(k) for k in gen.integers(0, n_phases, size=length))
    return KeyString(n_phases=n_phases, amplitude=float(amplitude), phases=phases)


@dataclass(frozen=True)
class LockTestResult:
    passed: bool
    clicks: tuple[int, ...]
    recovered: np.ndarray  # (lock + candidate)/2 per position, valid on a silent test


def lock_test(key: KeyString, candidate, model: DetectorModel = IDEAL, rng=0) -> LockTestResult:
    """Compare a candidate string against the lock, one balanced splitter per position.

    The test passes iff no difference mode clicks anywhere.  After a silent
    test the second splitter of each position returns |(lock + candidate)/2>
    in both halves, which equals the original lock state when the candidate
    matched; the per-position recovered amplitudes are reported either way.
    """
    lock = key.amplitudes()
    cand = np.atleast_1d(np.asarray(candidate, dtype=complex))
    if cand.shape != lock.shape:
        raise ValueError(f"candidate has {cand.size} positions, key has {lock.size}")
    gen = stream(rng)
    diff_means = np.abs(lock - cand) ** 2 / 2.0
    clicks = tuple(sample_counts(float(m), model, gen) for m in diff_means)
    return LockTestResult(
        passed=not any(clicks),
        clicks=clicks,
        recovered=(lock + cand) / 2.0,
    )


def lock_test_pass_rate(key: KeyString, candidate, model: DetectorModel = IDEAL,
                        trials: int = 10_000, rng=0) -> TrialStats:
    """Empirical probability that the candidate silently passes the lock test."""
    lock = key.amplitudes()
    cand = np.atleast_1d(np.asarray(candidate, dtype=complex))
    if cand.shape != lock.shape:
        raise ValueError(f"candidate has {cand.size} positions, key has {lock.size}")
    diff_means = np.abs(lock - cand) ** 2 / 2.0
    clicks = click_matrix(diff_means, model, trials, rng)
    successes = int(np.count_nonzero(~clicks.any(axis=1)))
    low, high = wilson_interval(successes, trials)
    return TrialStats(successes / trials, low, high, successes, trials)


@dataclass(frozen=True)
class AttackSpec:
    """A per-position false-key state: vacuum or a coherent state of fixed magnitude."""

    kind: str = "vacuum"
    magnitude: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if self.kind not in ("vacuum", "coherent"):
            raise ValueError(f"unknown attack kind {self.kind!r}")
        if self.magnitude < 0:
            raise ValueError("magnitude must be nonnegative")


def attack_candidate(spec: AttackSpec, length: int) -> np.ndarray:
    """Candidate string for an attack: the same state at every position."""
    if spec.kind == "vacuum":
        return np.zeros(length, dtype=complex)
    return np.full(length, spec.magnitude * np.exp(1j * spec.phase), dtype=complex)


def photon_budget_ok(observed_mean_counts: float, length: int, amplitude: float,
                     tolerance: float | None = None) -> bool:
    """Mean-count audit: does an observed total match length * amplitude^2?

    Flags forgeries that pass the comparison by carrying the wrong energy
    (the vacuum attack in particular).  Default tolerance is
    3 * sqrt(length) * amplitude counts.
    """
    if tolerance is None:
        tolerance = 3.0 * math.sqrt(length) * amplitude
    return abs(observed_mean_counts - length * amplitude**2) <= tolerance


# ---------------------------------------------------------------------------
# attacks without a key
# ---------------------------------------------------------------------------

def bessel_i0_scaled(x: float) -> float:
    """exp(-x) I0(x): power series below 15, asymptotic expansion above."""
    if x < 0:
        raise ValueError("argument must be nonnegative")
    if x < 15.0:
        q = 0.25 * x * x
        term, total = 1.0, 1.0
        k = 1
        while term > 1e-18 * total:
            term *= q / (k * k)
            total += term
            k += 1
        return total * math.exp(-x)
    total, term = 1.0, 1.0
    for k in range(1, 64):
        nxt = term * (2 * k - 1) ** 2 / (8.0 * x * k)
        if nxt >= term:  # asymptotic series started diverging
            break
        total += nxt
        term = nxt
        if nxt < 1e-18 * total:
            break
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i0(x: float) -> float:
    """Modified Bessel function of the first kind, order zero."""
    return math.exp(x) * bessel_i0_scaled(x)


def attack_pass_probability(amplitude: float, beta_mag: float,
                            n_phases: int | None = None) -> float:
    """Phase-averaged chance that a coherent false key |beta> passes one position.

    With the key phase uniform on the circle the average collapses to
    ``exp(-(a^2 + b^2)/2) I0(a b)``; computed here in scaled form so large
    amplitudes stay finite.  Passing ``n_phases`` averages over the discrete
    N-phase alphabet instead (cross-check path; beta taken real).
    """
    if amplitude < 0 or beta_mag < 0:
        raise ValueError("magnitudes must be nonnegative")
    if n_phases is not None:
        if n_phases < 2:
            raise ValueError("n_phases must be at least 2")
        k = np.arange(n_phases)
        keys = amplitude * np.exp(2j * np.pi * k / n_phases)
        return float(np.mean(np.exp(-0.5 * np.abs(keys - beta_mag) ** 2)))
    x = amplitude * beta_mag
    return math.exp(-0.5 * (amplitude - beta_mag) ** 2) * bessel_i0_scaled(x)


@dataclass(frozen=True)
class AttackOptimum:
    beta_star: float
    p_star: float


def _golden_max(f, lo: float, hi: float, tol: float = 1e-8) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def optimal_coherent_attack(amplitude: float) -> AttackOptimum:
    """Best coherent false-key magnitude against a key of given amplitude.

    Scans beta over [0, 2 * amplitude + 5] on a 1e-3 grid, then refines the
    best bracket by golden section to 1e-8.  Below amplitude sqrt(2) the
    optimum is the vacuum; above it the optimum moves out to just under the
    key amplitude and the pass probability decays like 1/(sqrt(2 pi) amplitude).
    """
    if amplitude < 0:
        raise ValueError("amplitude must be nonnegative")

    def p(beta: float) -> float:
        return attack_pass_probability(amplitude, beta)

    step = 1e-3
    grid = np.arange(0.0, 2.0 * amplitude + 5.0 + step, step)
    values = np.array([p(b) for b in grid])
    best = int(np.argmax(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, grid.size - 1)]
    beta_ref, p_ref = _golden_max(p, float(lo), float(hi))

    candidates = [(0.0, p(0.0)), (float(grid[best]), float(values[best])), (beta_ref, p_ref)]
    p_star = max(v for _, v in candidates)
    beta_star = min(b for b, v in candidates if v >= p_star - 1e-15)
    return AttackOptimum(beta_star=beta_star, p_star=p_star)


def forgery_string_probability(p_single: float, length: int) -> float:
    """Chance a forgery passes all positions: p_single ** length."""
    if not 0.0 <= p_single <= 1.0:
        raise ValueError("p_single must lie in [0, 1]")
    if length < 1:
        raise ValueError("length must be positive")
    return p_single**length


# ---------------------------------------------------------------------------
# information bounds on key copies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EntropyReport:
    """Von Neumann entropy (bits) of the single-position key ensemble."""

    bits: float
    eigenvalues: tuple[float, ...]
    method: str

    def __post_init__(self):
        if self.bits < -1e-12:
            raise InvariantError(f"negative entropy {self.bits!r}")
        total = sum(self.eigenvalues)
        if self.eigenvalues and abs(total - 1.0) > 1e-10:
            raise InvariantError(f"eigenvalues sum to {total!r}, expected 1")


def _entropy_bits(eigenvalues: np.ndarray) -> float:
    lam = eigenvalues[eigenvalues > 0.0]
    return float(-np.sum(lam * np.log2(lam)))


def holevo_entropy_finite(amplitude: float, n_phases: int) -> EntropyReport:
    """Entropy of the uniform mixture of N phase states of one key position.

    The mixture is diagonalized by discrete Fourier modes; eigenvalue m is
    ``(1/N) sum_k exp(-a^2 (1 - e^{2 pi i k/N})) e^{2 pi i m k/N}``.  This
    bounds what any measurement on one position of one key copy can reveal,
    rising from 0 at a = 0 toward log2 N for large amplitude.
    """
    if n_phases < 2:
        raise ValueError("n_phases must be at least 2")
    if amplitude < 0:
        raise ValueError("amplitude must be nonnegative")
    k = np.arange(n_phases)
    weights = np.exp(-(amplitude**2) * (1.0 - np.exp(2j * np.pi * k / n_phases)))
    phases = np.exp(2j * np.pi * np.outer(np.arange(n_phases), k) / n_phases)
    lam_c = phases @ weights / n_phases
    if float(np.max(np.abs(lam_c.imag))) > 1e-9:
        raise InvariantError("eigenvalues acquired an imaginary part")
    lam = lam_c.real
    if np.any(lam < -1e-12):
        raise InvariantError(f"negative eigenvalue {lam.min()!r}")
    lam = np.clip(lam, 0.0, None)
    return EntropyReport(bits=_entropy_bits(lam), eigenvalues=tuple(lam), method="finite")


def holevo_entropy_infinite(amplitude: float) -> EntropyReport:
    """Entropy of the fully phase-randomized position (the N -> infinity limit).

    The randomized state is diagonal in the number basis with Poisson(a^2)
    eigenvalues, so the entropy is the Poisson Shannon entropy in bits,
    ``a^2 log2 e - e^{-a^2} sum_k (a^{2k}/k!) log2(a^{2k}/k!)``; the series is
    truncated once the Poisson tail drops below 1e-14.
    """
    if amplitude < 0:
        raise ValueError("amplitude must be nonnegative")
    lam = amplitude * amplitude
    if lam == 0.0:
        return EntropyReport(bits=0.0, eigenvalues=(1.0,), method="infinite")
    probs = []
    p = math.exp(-lam)
    total = p
    k = 0
    while 1.0 - total > 1e-14:
        probs.append(p)
        k += 1
        p *= lam / k
        total += p
    probs.append(p)
    arr = np.array(probs)
    return EntropyReport(bits=_entropy_bits(arr), eigenvalues=tuple(arr), method="infinite")


def stirling_entropy_approx(amplitude: float) -> float:
    """Large-amplitude entropy approximation, 0.5 * log2(2 pi e amplitude^2) bits.

    Gaussian (Stirling) approximation to the Poisson entropy; within 5% of
    the exact value once the mean photon number reaches 10.
    """
    if amplitude <= 0:
        raise ValueError("amplitude must be positive")
    return 0.5 * math.log2(2.0 * math.pi * math.e * amplitude * amplitude)


def entropy_by_diagonalization(amplitude: float, n_phases: int, cutoff: int = 30) -> EntropyReport:
    """Brute-force oracle: build the mixture in a truncated number basis and diagonalize.

    Independent of the analytic eigenvalue route; used to arbitrate it.
    """
    if n_phases < 2:
        raise ValueError("n_phases must be at least 2")
    vecs = [
        coherent_fock(amplitude * np.exp(2j * np.pi * k / n_phases), cutoff).amps
        for k in range(n_phases)
    ]
    rho = sum(np.outer(v, v.conj()) for v in vecs) / n_phases
    lam = np.linalg.eigvalsh(rho)[::-1]
    lam = np.clip(lam.real, 0.0, None)
    lam /= lam.sum()  # remove the (tiny) truncation deficit before comparing
    return EntropyReport(bits=_entropy_bits(lam), eigenvalues=tuple(lam), method="diagonalized")
