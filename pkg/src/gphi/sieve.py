"""Segmented bulk sieves: smallest prime factors, totients, primes in
arithmetic progressions, and line-based checkpoints for long searches.

Segments are independent work units; callers that parallelize must merge
results in ascending range order so output stays deterministic.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

DEFAULT_SEGMENT_SIZE = 1 << 22

# int64 headroom: totient updates multiply by (p - 1) after dividing by p,
# so values themselves are the only magnitude constraint.
MAX_SIEVE_VALUE = 1 << 62


class SieveRangeError(ValueError):
    """Range bounds outside what the sieve supports."""


class SegmentTooLargeError(ValueError):
    """Requested segment exceeds the configured size bound."""


def base_primes(limit):
    """All primes <= limit, ascending, as an int64 array."""
    if limit < 2:
        raise SieveRangeError(f"base_primes needs limit >= 2, got {limit}")
    if limit > MAX_SIEVE_VALUE:
        raise SieveRangeError(f"limit {limit} above supported maximum")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


@dataclass(frozen=True)
class SieveSegment:
    """Per-element smallest prime factor and totient over [lo, hi)."""

    lo: int
    hi: int
    spf: np.ndarray
    phi: np.ndarray


def _check_range(lo, hi, max_size=None):
    if lo < 2:
        raise SieveRangeError(f"range must start at 2 or above, got {lo}")
    if hi <= lo:
        raise SieveRangeError(f"empty or inverted range [{lo}, {hi})")
    if hi > MAX_SIEVE_VALUE:
        raise SieveRangeError(f"range end {hi} above supported maximum")
    if max_size is not None and hi - lo > max_size:
        raise SegmentTooLargeError(f"segment [{lo}, {hi}) exceeds {max_size} elements")


def sieve_segment(lo, hi, max_size=DEFAULT_SEGMENT_SIZE):
    """Exact spf and phi arrays for every integer in [lo, hi).

    Totients are built by progressive division with base primes <= sqrt(hi);
    whatever remains after that pass is a single prime factor > sqrt(hi).
    """
    _check_range(lo, hi, max_size)
    values = np.arange(lo, hi, dtype=np.int64)
    phi = values.copy()
    rem = values.copy()
    spf = np.zeros(hi - lo, dtype=np.int64)
    root = math.isqrt(hi - 1)
    if root >= 2:
        for p in base_primes(root).tolist():
            first = ((lo + p - 1) // p) * p
            if first >= hi:
                continue
            sl = slice(first - lo, None, p)
            hit = spf[sl]
            hit[hit == 0] = p
            phi[sl] = phi[sl] // p * (p - 1)
            pe = p
            while pe < hi:
                first_e = ((lo + pe - 1) // pe) * pe
                if first_e >= hi:
                    break
                rem[first_e - lo :: pe] //= p
                pe *= p
    big = rem > 1
    phi[big] = phi[big] // rem[big] * (rem[big] - 1)
    lone = big & (spf == 0)
    spf[lone] = values[lone]
    return SieveSegment(lo, hi, spf, phi)


def primes_in_class(lo, hi, residue, modulus):
    """All primes p in [lo, hi) with p congruent to residue mod modulus."""
    if modulus < 1 or not 0 <= residue < modulus:
        raise ValueError(f"invalid residue class {residue} mod {modulus}")
    _check_range(max(lo, 2), max(hi, 3))
    lo = max(lo, 2)
    if hi <= lo:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(hi - lo, dtype=bool)
    root = math.isqrt(hi - 1)
    if root >= 2:
        for p in base_primes(root).tolist():
            first = max(p * p, ((lo + p - 1) // p) * p)
            if first < hi:
                flags[first - lo :: p] = False
    primes = lo + np.flatnonzero(flags)
    return primes[primes % modulus == residue]


def totient_progression(lo, hi, residue, modulus):
    """Totients of every value v in [lo, hi) with v = residue (mod modulus).

    Requires gcd(residue, modulus) = 1 so the progression avoids the primes
    dividing the modulus entirely; array index j holds phi(first + modulus*j).
    Returns (first, phi).
    """
    if modulus < 1 or math.gcd(residue, modulus) != 1:
        raise ValueError(f"residue {residue} not coprime to modulus {modulus}")
    if lo < 1 or hi <= lo or hi > MAX_SIEVE_VALUE:
        raise SieveRangeError(f"bad progression range [{lo}, {hi})")
    first = lo + (residue - lo) % modulus
    if first >= hi:
        return first, np.empty(0, dtype=np.int64)
    count = (hi - first + modulus - 1) // modulus
    top = first + modulus * (count - 1)
    values = first + modulus * np.arange(count, dtype=np.int64)
    phi = values.copy()
    rem = values.copy()
    root = math.isqrt(hi - 1)
    if root >= 2:
        for p in base_primes(root).tolist():
            if modulus % p == 0:
                continue
            pe = p
            while pe <= top:
                j0 = (-first * pow(modulus, -1, pe)) % pe
                if j0 >= count:
                    break
                if pe == p:
                    phi[j0::p] = phi[j0::p] // p * (p - 1)
                rem[j0::pe] //= p
                pe *= p
    big = rem > 1
    phi[big] = phi[big] // rem[big] * (rem[big] - 1)
    # phi(1) = 1 by the empty-product convention
    phi[values == 1] = 1
    return first, phi


@dataclass(frozen=True)
class SearchCheckpoint:
    """Resumable progress record for a segmented search."""

    search_id: str
    last_completed_hi: int
    hits: tuple

    def __post_init__(self):
        if list(self.hits) != sorted(self.hits):
            raise ValueError("checkpoint hits must be ascending")


def write_checkpoint(path, checkpoint):
    """Write a checkpoint atomically (temp file + rename)."""
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(f"search_id {checkpoint.search_id}\n")
        fh.write(f"completed {checkpoint.last_completed_hi}\n")
        for hit in checkpoint.hits:
            fh.write(f"{hit}\n")
    os.replace(tmp, path)


def read_checkpoint(path):
    with open(path) as fh:
        lines = fh.read().splitlines()
    if len(lines) < 2 or not lines[0].startswith("search_id ") or not lines[1].startswith("completed "):
        raise ValueError(f"malformed checkpoint file {path}")
    search_id = lines[0][len("search_id ") :]
    completed = int(lines[1].split()[1])
    hits = tuple(int(line) for line in lines[2:] if line)
    return SearchCheckpoint(search_id, completed, hits)
