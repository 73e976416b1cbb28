"""Core symmetric-game mathematics.

Symmetric games are represented without payoff matrices: a game instance is
any function mapping (strategy, opponent profile) to a payoff.  This module
provides profile enumeration, multinomial profile probabilities, exact
deviation payoffs by enumeration, regret, and simplex lattices.  All
functions are pure and deterministic.
"""

from __future__ import annotations

from math import comb
from typing import Callable, Iterator

import numpy as np
from scipy.special import gammaln

DEFAULT_ENUMERATION_CAP = 10**7
DEFAULT_LATTICE_CAP = 10**6

MIXTURE_SUM_TOL = 1e-9


class EnumerationCapError(ValueError):
    """Raised when a requested enumeration would exceed the configured cap."""


def as_mixture(probs) -> np.ndarray:
    """Validate and return a symmetric mixed strategy as a float array.

    Entries must be non-negative and sum to 1 within 1e-9.
    """
    mix = np.asarray(probs, dtype=float)
    if mix.ndim != 1 or mix.size < 1:
        raise ValueError("mixture must be a non-empty 1-d vector")
    if np.any(mix < 0):
        raise ValueError(f"mixture has negative entries: {mix}")
    total = mix.sum()
    if abs(total - 1.0) > MIXTURE_SUM_TOL:
        raise ValueError(f"mixture sums to {total}, expected 1")
    return mix


def as_profile(counts, p: int | None = None) -> np.ndarray:
    """Validate an opponent profile (integer counts summing to p-1)."""
    prof = np.asarray(counts)
    if prof.ndim != 1 or prof.size < 1:
        raise ValueError("profile must be a non-empty 1-d vector")
    if not np.issubdtype(prof.dtype, np.integer):
        rounded = np.rint(prof).astype(int)
        if np.any(np.abs(prof - rounded) > 0):
            raise ValueError("profile entries must be integers")
        prof = rounded
    if np.any(prof < 0):
        raise ValueError(f"profile has negative counts: {prof}")
    if p is not None and prof.sum() != p - 1:
        raise ValueError(f"profile sums to {prof.sum()}, expected p-1={p - 1}")
    return prof.astype(np.int64)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # Descending in the first coordinate so pure-first orderings come out
    # stable across runs; matches the documented output order.
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def num_opponent_profiles(num_strategies: int, p: int) -> int:
    """Number of opponent profiles: C(p-1 + |S|-1, |S|-1)."""
    return comb(p - 1 + num_strategies - 1, num_strategies - 1)


def enumerate_opponent_profiles(
    num_strategies: int, p: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> np.ndarray:
    """Enumerate every opponent profile for p players over num_strategies.

    Returns an integer array of shape (n_profiles, num_strategies) whose rows
    sum to p-1, in a fixed deterministic order (first coordinate descending).

    Raises EnumerationCapError when the profile count exceeds `cap`; callers
    should fall back to the binomial oracle in that case.
    """
    if num_strategies < 1 or p < 1:
        raise ValueError("num_strategies and p must be positive")
    count = num_opponent_profiles(num_strategies, p)
    if count > cap:
        raise EnumerationCapError(
            f"{count} opponent profiles exceeds cap {cap}; "
            "use the binomial deviation-payoff oracle instead"
        )
    out = np.array(list(_compositions(p - 1, num_strategies)), dtype=np.int64)
    return out.reshape(count, num_strategies)


def profile_probability(profile, mix) -> float:
    """Multinomial probability of an opponent profile under a mixture.

    Computed in log space (log-gamma) so large player counts do not
    overflow; 0^0 is treated as 1 so support-boundary mixtures are exact.
    """
    prof = as_profile(profile)
    sigma = as_mixture(mix)
    if prof.size != sigma.size:
        raise ValueError("profile and mixture lengths differ")
    pos = prof > 0
    if np.any(sigma[pos] == 0):
        return 0.0
    n = prof.sum()
    log_coef = gammaln(n + 1) - gammaln(prof + 1).sum()
    log_terms = prof[pos] * np.log(sigma[pos])
    return float(np.exp(log_coef + log_terms.sum()))


def profile_probabilities(profiles: np.ndarray, mix) -> np.ndarray:
    """Vectorized multinomial masses for many profiles under one mixture."""
    sigma = as_mixture(mix)
    profs = np.asarray(profiles, dtype=np.int64)
    n = profs[0].sum()
    log_coef = gammaln(n + 1) - gammaln(profs + 1).sum(axis=1)
    with np.errstate(divide="ignore"):
        log_sigma = np.log(sigma)
    terms = np.where(profs > 0, profs * log_sigma[np.newaxis, :], 0.0)
    log_probs = log_coef + terms.sum(axis=1)
    probs = np.exp(log_probs)
    probs[np.isnan(probs)] = 0.0  # 0 * -inf from zero-support entries
    return probs


def deviation_payoffs_enum(
    payoff_fn: Callable[[int, np.ndarray], float],
    num_strategies: int,
    p: int,
    mix,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> np.ndarray:
    """Exact deviation payoffs by full opponent-profile enumeration.

    For each strategy j returns sum over profiles of Pr(s|sigma) * u_j(s).
    Intended as a ground-truth oracle for small games; raises
    EnumerationCapError beyond the cap.
    """
    sigma = as_mixture(mix)
    profiles = enumerate_opponent_profiles(num_strategies, p, cap=cap)
    probs = profile_probabilities(profiles, sigma)
    devpays = np.zeros(num_strategies)
    for prof, pr in zip(profiles, probs):
        if pr == 0.0:
            continue
        for j in range(num_strategies):
            devpays[j] += pr * payoff_fn(j, prof)
    return devpays


def regret(mix, devpays) -> float:
    """Max gain from unilateral deviation; clamped at 0 against round-off."""
    sigma = as_mixture(mix)
    d = np.asarray(devpays, dtype=float)
    if d.shape != sigma.shape:
        raise ValueError("mixture and deviation payoffs lengths differ")
    if not np.all(np.isfinite(d)):
        raise ValueError("deviation payoffs must be finite")
    return max(0.0, float(d.max() - sigma @ d))


def regrets_batch(mixtures: np.ndarray, devpays: np.ndarray) -> np.ndarray:
    """Row-wise regret for a batch of mixtures and deviation payoffs."""
    gains = devpays.max(axis=1) - np.einsum("ij,ij->i", mixtures, devpays)
    return np.maximum(gains, 0.0)


def simplex_lattice(
    num_strategies: int, resolution: int, cap: int = DEFAULT_LATTICE_CAP
) -> np.ndarray:
    """Evenly spaced grid over the probability simplex.

    Returns all mixtures whose entries are multiples of 1/resolution, as an
    array of shape (C(resolution + |S| - 1, |S| - 1), num_strategies).
    """
    if num_strategies < 1 or resolution < 1:
        raise ValueError("num_strategies and resolution must be positive")
    count = comb(resolution + num_strategies - 1, num_strategies - 1)
    if count > cap:
        raise EnumerationCapError(f"{count} lattice points exceeds cap {cap}")
    grid = np.array(list(_compositions(resolution, num_strategies)), dtype=float)
    return grid.reshape(count, num_strategies) / resolution
