"""Closed-form success probabilities for coherent-state comparison.

"Success" always means the unambiguous outcome: at least one detector click
that certifies the inputs were not all identical.  Silence is inconclusive.

Two families are covered.  The beam-splitter / multiport strategy exploits
the promise that inputs are coherent; its failure probability is a product
of per-mode vacuum probabilities.  The universal strategy assumes nothing
and projects onto the symmetric subspace; its success probability is
``1 - p_symm`` with ``p_symm`` a permanent-type sum over all permutations of
the coherent-state Gram matrix.  The multiport strategy always dominates:
``1 - p_succ`` is the geometric mean of the same permutation terms whose
arithmetic mean is ``p_symm``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvariantError
from .linear import CoherentRegister, apply_network, make_balanced_multiport

CLAMP_SLACK = 1e-14
FORM_AGREEMENT_TOL = 1e-10
MAX_UNIVERSAL_MODES = 8


def _clamp_probability(value: float) -> float:
    """Round float noise into [0, 1]; anything beyond slack is a logic bug."""
    if value < -CLAMP_SLACK or value > 1.0 + CLAMP_SLACK:
        raise InvariantError(f"probability {value!r} outside [0, 1] beyond slack")
    return min(1.0, max(0.0, value))


def _amplitudes(values, minimum=2) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=complex))
    if arr.ndim != 1 or arr.size < minimum:
        raise ValueError(f"need at least {minimum} amplitudes")
    if not np.all(np.isfinite(arr)):
        raise ValueError("amplitudes must be finite")
    return arr


def coherent_overlap(alpha: complex, beta: complex) -> complex:
    """<alpha|beta> = exp(-(|a|^2 + |b|^2)/2 + conj(a) b), phase included."""
    alpha, beta = complex(alpha), complex(beta)
    return np.exp(-0.5 * (abs(alpha) ** 2 + abs(beta) ** 2) + np.conj(alpha) * beta)


def p_success_two(alpha: complex, beta: complex) -> float:
    """Probability that the balanced splitter flags |alpha> != |beta>.

    The difference mode carries |(alpha - beta)/sqrt(2)>, so the click
    probability is ``1 - exp(-|alpha - beta|^2 / 2)``.
    """
    d = abs(complex(alpha) - complex(beta))
    return _clamp_probability(1.0 - math.exp(-0.5 * d * d))


def p_success_phase(amplitude: float, delta: float) -> float:
    """Phase-only comparison sensitivity, ``1 - exp(-amplitude^2 sin^2(delta/2))``.

    For a fixed target probability the resolvable phase difference scales as
    1/amplitude.
    """
    if amplitude < 0:
        raise ValueError("amplitude must be nonnegative")
    s = math.sin(0.5 * delta)
    return _clamp_probability(1.0 - math.exp(-(amplitude * amplitude) * s * s))


def p_success_conjugate(alpha: complex, beta: complex) -> float:
    """Probability that a click in the sum mode flags alpha != -beta."""
    d = abs(complex(alpha) + complex(beta))
    return _clamp_probability(1.0 - math.exp(-0.5 * d * d))


def unbalanced_test(alpha: complex, beta: complex, transmittance: float,
                    input_phase: float = 0.0) -> tuple[float, float]:
    """Output photon means of the unbalanced splitter with an input phase shifter.

    Returns ``(|sqrt(T) e^{i phi} alpha + sqrt(R) beta|^2,
    |sqrt(R) e^{i phi} alpha - sqrt(T) beta|^2)``; a click in either output
    certifies the corresponding combination is nonzero.  The two means always
    sum to |alpha|^2 + |beta|^2.
    """
    if not 0.0 <= transmittance <= 1.0:
        raise ValueError(f"transmittance must lie in [0, 1], got {transmittance}")
    t = math.sqrt(transmittance)
    r = math.sqrt(1.0 - transmittance)
    a = complex(alpha) * np.exp(1j * input_phase)
    b = complex(beta)
    return float(abs(t * a + r * b) ** 2), float(abs(r * a - t * b) ** 2)


def no_click_probabilities(amplitudes) -> np.ndarray:
    """Vacuum probabilities p_k(0) = exp(-|gamma_k|^2) of every multiport output."""
    amps = _amplitudes(amplitudes)
    net = make_balanced_multiport(amps.size)
    means = apply_network(net, CoherentRegister(amps)).mode_means()
    return np.exp(-means)


def multiport_success_forms(amplitudes) -> tuple[float, float, float]:
    """The multiport success probability by three independent routes.

    pairwise:        1 - exp(-(1/2N) sum_{j,l} |a_j - a_l|^2)
    per-mode:        1 - prod_{k=1..N-1} p_k(0), with p_k(0) from the network
    overlap product: 1 - (prod_{j,l} <a_j|a_l>)^{1/N}

    All three are returned unclamped so tests can compare them directly.
    """
    amps = _amplitudes(amplitudes)
    n = amps.size

    diff = amps[:, None] - amps[None, :]
    pairwise = 1.0 - math.exp(-float(np.sum(np.abs(diff) ** 2)) / (2.0 * n))

    per_mode = 1.0 - float(np.prod(no_click_probabilities(amps)[1:]))

    g = np.exp(
        -0.5 * (np.abs(amps[:, None]) ** 2 + np.abs(amps[None, :]) ** 2)
        + np.conj(amps[:, None]) * amps[None, :]
    )
    prod = complex(np.prod(g))
    if abs(prod.imag) > 1e-12 * max(1.0, abs(prod.real)):
        raise InvariantError(f"overlap product has imaginary residue {prod.imag!r}")
    overlap_product = 1.0 - prod.real ** (1.0 / n)

    return pairwise, per_mode, overlap_product


def p_success_multiport(amplitudes) -> float:
    """Probability that the balanced multiport flags N coherent states as unequal.

    Evaluates all three equivalent forms, checks they agree to 1e-10 and
    returns the pairwise-difference form.
    """
    pairwise, per_mode, overlap_product = multiport_success_forms(amplitudes)
    spread = max(pairwise, per_mode, overlap_product) - min(pairwise, per_mode, overlap_product)
    if spread > FORM_AGREEMENT_TOL:
        raise InvariantError(f"success-probability forms disagree by {spread:.3e}")
    return _clamp_probability(pairwise)


def p_symm(amplitudes) -> float:
    """Probability that the coherent product lies in the symmetric subspace.

    Explicit sum of Gram-matrix products over all N! permutations, exact at
    desk scale; guarded at N <= 8 against factorial blowup.
    """
    amps = _amplitudes(amplitudes)
    n = amps.size
    if n > MAX_UNIVERSAL_MODES:
        raise ValueError(f"permutation sum limited to {MAX_UNIVERSAL_MODES} states, got {n}")
    g = np.exp(
        -0.5 * (np.abs(amps[:, None]) ** 2 + np.abs(amps[None, :]) ** 2)
        + np.conj(amps[:, None]) * amps[None, :]
    ).tolist()
    total = 0j
    for perm in itertools.permutations(range(n)):
        term = 1.0 + 0j
        for j, pj in enumerate(perm):
            term *= g[j][pj]
        total += term
    total /= math.factorial(n)
    if abs(total.imag) > 1e-12:
        raise InvariantError(f"p_symm has imaginary residue {total.imag!r}")
    return _clamp_probability(total.real)


def p_success_universal(amplitudes) -> float:
    """Success probability of the input-agnostic symmetry test, 1 - p_symm.

    For two states this is (1 - |<a|b>|^2)/2 and never exceeds 1/2.
    """
    return _clamp_probability(1.0 - p_symm(amplitudes))


@dataclass(frozen=True)
class AmgmReport:
    """Both sides of the failure-probability inequality 1 - p_succ <= p_symm."""

    lhs: float
    rhs: float
    holds: bool


def verify_amgm_inequality(amplitudes) -> AmgmReport:
    """Check that the multiport strategy fails no more often than the universal one.

    ``1 - p_success_multiport`` is the geometric mean of the N! permutation
    terms whose arithmetic mean is ``p_symm``, so lhs <= rhs always, with
    equality exactly when all amplitudes coincide.
    """
    lhs = 1.0 - p_success_multiport(amplitudes)
    rhs = p_symm(amplitudes)
    return AmgmReport(lhs=lhs, rhs=rhs, holds=lhs <= rhs + 1e-12)


@dataclass(frozen=True)
class ComparisonReport:
    """Success probabilities of both strategies plus per-mode vacuum probabilities."""

    p_succ_coherent: float
    p_succ_universal: float
    p_no_click: tuple[float, ...]

    def __post_init__(self):
        if self.p_succ_coherent < self.p_succ_universal - 1e-12:
            raise InvariantError(
                "coherent-strategy success fell below the universal baseline"
            )


def compare_report(amplitudes) -> ComparisonReport:
    """Full comparison report for a tuple of coherent amplitudes."""
    return ComparisonReport(
        p_succ_coherent=p_success_multiport(amplitudes),
        p_succ_universal=p_success_universal(amplitudes),
        p_no_click=tuple(float(p) for p in no_click_probabilities(amplitudes)),
    )
