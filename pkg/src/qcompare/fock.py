"""Truncated photon-number-basis simulation: the package's brute-force oracle.

States live on one or two modes with a hard per-mode photon cutoff.  The
beam splitter is applied exactly inside each total-photon-number block (a
block-diagonal rotation), so photon number is conserved by construction and
the only approximation anywhere is the cutoff itself.  Every state reports
its truncation deficit ``1 - ||v||^2`` so callers can budget tolerances.

No closed form is used for the odd-photon detection statistics of unequal
squeezed vacua; those probabilities are read off the simulated output state
directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

NORM_SLACK = 1e-12


@dataclass(frozen=True)
class FockVector:
    """Amplitudes over the photon-number basis of one or two modes.

    ``amps`` is indexed by photon number, ``amps[n]`` for one mode or
    ``amps[n_a, n_b]`` for two.  The norm may fall short of one by the
    truncation deficit but must never exceed one beyond float slack.
    """

    amps: np.ndarray
    cutoff: int

    def __post_init__(self):
        arr = np.asarray(self.amps, dtype=complex)
        d = self.cutoff + 1
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be at least 1, got {self.cutoff}")
        if arr.shape not in ((d,), (d, d)):
            raise ValueError(f"amps shape {arr.shape} does not match cutoff {self.cutoff}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("amplitudes must be finite")
        norm_sq = float(np.sum(np.abs(arr) ** 2))
        if norm_sq > 1.0 + NORM_SLACK:
            raise ValueError(f"norm^2 = {norm_sq} exceeds 1 beyond slack")
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)

    @property
    def modes(self) -> int:
        return self.amps.ndim

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    @property
    def deficit(self) -> float:
        """Probability mass lost to truncation, 1 - ||v||^2."""
        return 1.0 - self.norm_sq


def overlap(a: FockVector, b: FockVector) -> complex:
    """Inner product <a|b>; both states must share mode count and cutoff."""
    if a.amps.shape != b.amps.shape:
        raise ValueError("states have different shapes")
    return complex(np.vdot(a.amps, b.amps))


def fidelity(a: FockVector, b: FockVector) -> float:
    """|<a|b>|^2."""
    return abs(overlap(a, b)) ** 2


def recommended_cutoff(alpha: complex) -> int:
    """Cutoff at which a coherent state's truncation deficit is far below 1e-10."""
    a = abs(alpha)
    return max(20, math.ceil(a * a + 10.0 * a))


def coherent_fock(alpha: complex, cutoff: int) -> FockVector:
    """Coherent state |alpha> in the number basis: amps[n] = e^{-|a|^2/2} a^n / sqrt(n!)."""
    if cutoff < 1:
        raise ValueError(f"cutoff must be at least 1, got {cutoff}")
    alpha = complex(alpha)
    amps = np.empty(cutoff + 1, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, cutoff + 1):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    return FockVector(amps, cutoff)


def squeezed_vacuum_fock(xi: complex, cutoff: int) -> tuple[FockVector, float]:
    """Squeezed vacuum ``s * exp(xi a^dag^2)|0>`` in the number basis.

    Only even photon numbers are populated: amps[2k] = s xi^k sqrt((2k)!) / k!.
    The norm series converges only for |xi| < 1/2, where the normalization
    constant is ``s = (1 - 4 |xi|^2)^{1/4}``; ``s`` is returned alongside the
    state.  The cutoff must be even so the top populated level is complete.
    """
    xi = complex(xi)
    if abs(xi) >= 0.5:
        raise ValueError(f"|xi| must be below 1/2 for a normalizable state, got {abs(xi)}")
    if cutoff < 2 or cutoff % 2 != 0:
        raise ValueError(f"cutoff must be an even integer >= 2, got {cutoff}")
    s = (1.0 - 4.0 * abs(xi) ** 2) ** 0.25
    amps = np.zeros(cutoff + 1, dtype=complex)
    coeff = complex(s)
    amps[0] = coeff
    for k in range(1, cutoff // 2 + 1):
        # sqrt((2k)!)/k! from sqrt((2k-2)!)/(k-1)!: multiply by sqrt(2k(2k-1))/k
        coeff = coeff * xi * math.sqrt(2 * k * (2 * k - 1)) / k
        amps[2 * k] = coeff
    return FockVector(amps, cutoff), s


def product_state(a: FockVector, b: FockVector) -> FockVector:
    """Two-mode product state from two single-mode states with equal cutoff."""
    if a.modes != 1 or b.modes != 1:
        raise ValueError("product_state needs two single-mode states")
    if a.cutoff != b.cutoff:
        raise ValueError("cutoffs differ")
    return FockVector(np.outer(a.amps, b.amps), a.cutoff)


@lru_cache(maxsize=None)
def _bs_block(n_total: int, transmittance: float) -> np.ndarray:
    """Beam-splitter rotation within the total-photon-number-n block.

    Entry [j, k] is the amplitude on output |j>_a |n-j>_b given input
    |n-k>_a |k>_b, from the binomial expansion of the transformed creation
    operators; each block is orthogonal.
    """
    t = math.sqrt(transmittance)
    r = math.sqrt(1.0 - transmittance)
    n = n_total
    # weight[j] = sqrt(j! (n-j)!)
    log_fac = [math.lgamma(j + 1) for j in range(n + 1)]
    w_out = np.array([math.exp(0.5 * (log_fac[j] + log_fac[n - j])) for j in range(n + 1)])
    block = np.empty((n + 1, n + 1))
    for k in range(n + 1):
        # (t x + r y)^(n-k) expanded over the x-power p
        p1 = np.array([math.comb(n - k, p) * t**p * r ** (n - k - p) for p in range(n - k + 1)])
        # (r x - t y)^k expanded over the x-power q
        p2 = np.array([math.comb(k, q) * r**q * (-t) ** (k - q) for q in range(k + 1)])
        col = np.convolve(p1, p2)
        block[:, k] = col * w_out / math.exp(0.5 * (log_fac[n - k] + log_fac[k]))
    return block


def apply_bs_fock(state: FockVector, transmittance: float) -> FockVector:
    """Apply a beam splitter of given transmittance to a two-mode Fock state.

    Exact within the truncated space; amplitude rotated past the cutoff corner
    (total photon number above the cutoff) is dropped and shows up as
    truncation deficit.
    """
    if state.modes != 2:
        raise ValueError("apply_bs_fock needs a two-mode state")
    if not 0.0 <= transmittance <= 1.0:
        raise ValueError(f"transmittance must lie in [0, 1], got {transmittance}")
    cutoff = state.cutoff
    amps = state.amps
    out = np.zeros_like(amps)
    for n in range(2 * cutoff + 1):
        lo = max(0, n - cutoff)
        hi = min(n, cutoff)
        idx = np.arange(lo, hi + 1)
        vec = np.zeros(n + 1, dtype=complex)
        vec[idx] = amps[n - idx, idx]  # index = photon count in mode b
        if not np.any(vec):
            continue
        rot = _bs_block(n, float(transmittance)) @ vec
        out[idx, n - idx] = rot[idx]  # index = photon count in mode a
    return FockVector(out, cutoff)


def photon_distribution(state: FockVector, mode: int = 0) -> np.ndarray:
    """Photon-number probabilities of one mode (marginal for two-mode states).

    Nonnegative and summing to ``1 - deficit``.
    """
    if mode not in range(state.modes):
        raise ValueError(f"mode {mode} out of range for a {state.modes}-mode state")
    probs = np.abs(state.amps) ** 2
    if state.modes == 1:
        return probs
    return probs.sum(axis=1 - mode)


def odd_photon_probability(xi1: complex, xi2: complex, cutoff: int = 40) -> float:
    """Probability that a balanced splitter fed two squeezed vacua shows an odd count.

    Both inputs are ``s exp(xi a^dag^2)|0>`` states.  Equal squeezing sends
    only even photon numbers to both outputs, so any odd count certifies
    ``xi1 != xi2``; the returned value is the chance that at least one output
    mode carries an odd photon number.
    """
    sq1, _ = squeezed_vacuum_fock(xi1, cutoff)
    sq2, _ = squeezed_vacuum_fock(xi2, cutoff)
    joint = apply_bs_fock(product_state(sq1, sq2), 0.5)
    probs = np.abs(joint.amps) ** 2
    even = probs[0::2, 0::2].sum()
    return max(0.0, float(probs.sum() - even))


def su2_pass_state(n: int, cutoff: int) -> FockVector:
    """Two-mode entangled state that a balanced splitter maps onto |n>_a |0>_b.

    ``2^{-n/2} sum_k sqrt(C(n, k)) |n-k>_a |k>_b``; these states (and their
    mixtures) always pass the two-state comparison test even though they are
    not coherent.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cutoff:
        raise ValueError(f"n = {n} exceeds cutoff {cutoff}")
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    scale = 2.0 ** (-0.5 * n)
    for k in range(n + 1):
        amps[n - k, k] = scale * math.sqrt(math.comb(n, k))
    return FockVector(amps, cutoff)


def squeezed_pass_state(m: int, n: int, cutoff: int) -> FockVector:
    """Two-mode state that the splitter maps onto |m>_a |n>_b, m and n even.

    These states always pass the squeezed-vacuum comparison: after the
    forward splitter both output photon numbers are even with certainty.
    """
    if m < 0 or n < 0 or m % 2 or n % 2:
        raise ValueError(f"m and n must be even and nonnegative, got ({m}, {n})")
    if m + n > cutoff:
        raise ValueError(f"m + n = {m + n} exceeds cutoff {cutoff}")
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    pref = 1.0 / math.sqrt(2.0**m * math.factorial(m)) / math.sqrt(2.0**n * math.factorial(n))
    for k in range(m + 1):
        for el in range(n + 1):
            a_idx = m + n - k - el
            b_idx = k + el
            amps[a_idx, b_idx] += (
                pref
                * math.comb(m, k)
                * math.comb(n, el)
                * (-1.0) ** el
                * math.sqrt(math.factorial(a_idx))
                * math.sqrt(math.factorial(b_idx))
            )
    return FockVector(amps, cutoff)
