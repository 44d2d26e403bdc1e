"""Orbit relations of the totient-increment map: detection of
g_{k+r}(n) = M * g_k(n), persistence certificates for power-of-2
multipliers, and the reduction of the r = 2 case to the Diophantine
equation phi(m) + phi(m + phi(m)) = m.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .arith import _check_natural, NaturalOverflowError, g, iterate_g
from .diophantine import is_solution

DEFAULT_K_MAX = 64


class Persistence(Enum):
    # Proven forever only via the doubling law phi(2m) = 2 phi(m): once
    # g_{k0+r} = 2^s * g_{k0} with an even anchor, the relation propagates
    # to every later k.  Anything else is claimed only as far as verified.
    PROVEN_FOREVER = "proven_forever"
    VERIFIED_ONLY = "verified_only"


@dataclass(frozen=True)
class OrbitRelation:
    """g_{k+r}(n) = multiplier * g_k(n) for all k in [k0, verified_to_k]."""

    n: int
    k0: int
    r: int
    multiplier: int
    verified_to_k: int
    persistent: Persistence
    related_r: int = None


def _is_power_of_two(x):
    return x >= 1 and x & (x - 1) == 0


def detect_relations(n, k_max=DEFAULT_K_MAX, r_max=25):
    """Detect every shift r <= r_max whose ratio g_{k+r}/g_k is a fixed
    integer >= 2 from some minimal k0 through the end of the computed orbit.

    When a shift is a multiple of a smaller detected shift with the matching
    multiplier power, both are reported and the larger carries related_r.
    """
    _check_natural(n)
    if not 1 <= r_max <= k_max:
        raise ValueError(f"need k_max >= r_max >= 1, got k_max={k_max} r_max={r_max}")
    values = iterate_g(n, k_max).values
    top = len(values) - 1
    relations = []
    by_r = {}
    for r in range(1, r_max + 1):
        last = top - r
        if last < 0:
            continue
        quot, rem = divmod(values[last + r], values[last])
        if rem or quot < 2:
            continue
        k0 = last
        while k0 > 0 and values[k0 - 1 + r] == quot * values[k0 - 1]:
            k0 -= 1
        proven = _is_power_of_two(quot) and values[k0] % 2 == 0
        related = None
        for r0, m0 in by_r.items():
            if r % r0 == 0 and m0 ** (r // r0) == quot:
                related = r0
                break
        relations.append(
            OrbitRelation(
                n,
                k0,
                r,
                quot,
                last,
                Persistence.PROVEN_FOREVER if proven else Persistence.VERIFIED_ONLY,
                related,
            )
        )
        by_r[r] = quot
    return relations


@dataclass(frozen=True)
class PersistenceResult:
    """Outcome of the doubling-law persistence check for one (n, k0, r)."""

    n: int
    k0: int
    r: int
    proven: bool
    multiplier: int = None
    power_of_two_exponent: int = None
    reason: str = None


def doubling_persistence(n, k0, r):
    """Certify g_{k+r}(n) = 2^s * g_k(n) for all k >= k0, or refuse.

    The certificate needs the multiplier at k0 to be a power of two and the
    anchor value g_{k0}(n) to be even; phi(2m) = 2 phi(m) then carries the
    relation forward step by step.
    """
    _check_natural(n)
    if k0 < 0 or r < 1:
        raise ValueError("need k0 >= 0 and r >= 1")
    orbit = iterate_g(n, k0 + r)
    if orbit.truncated:
        raise NaturalOverflowError(f"orbit of {n} overflows before k = {k0 + r}")
    anchor = orbit.values[k0]
    target = orbit.values[k0 + r]
    quot, rem = divmod(target, anchor)
    if rem or quot < 2:
        return PersistenceResult(n, k0, r, False, reason="no integer multiplier >= 2")
    if not _is_power_of_two(quot):
        return PersistenceResult(
            n, k0, r, False, multiplier=quot, reason=f"multiplier {quot} not a power of 2"
        )
    if anchor % 2:
        return PersistenceResult(
            n, k0, r, False, multiplier=quot, reason=f"anchor value {anchor} is odd"
        )
    return PersistenceResult(
        n, k0, r, True, multiplier=quot, power_of_two_exponent=quot.bit_length() - 1
    )


def reduce_to_diophantine(n, k_max):
    """Least k <= k_max with m = g_k(n) solving phi(m) + phi(m + phi(m)) = m.

    Returns (k, m) or None.  A found m is cross-checked against the orbit
    statement it encodes: g applied twice to m must give 2m.
    """
    _check_natural(n)
    if k_max < 1:
        raise ValueError("k_max must be positive")
    for k, m in enumerate(iterate_g(n, k_max).values):
        if is_solution(m):
            if g(g(m)) != 2 * m:
                raise AssertionError(f"solution {m} does not double after two steps")
            return k, m
    return None


def _detect_worker(args):
    n, k_max, r_max = args
    return detect_relations(n, k_max, r_max)


def scan_orbits(limit, k_max=DEFAULT_K_MAX, r_max=9, jobs=None):
    """detect_relations over every n <= limit, streamed in ascending n.

    Worker processes handle chunks of n; output order is independent of
    scheduling because results are yielded in submission order.
    """
    if limit < 2:
        raise ValueError("limit must be at least 2")
    tasks = ((n, k_max, r_max) for n in range(2, limit + 1))
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for relations in pool.map(_detect_worker, tasks, chunksize=64):
                yield from relations
    else:
        for task in tasks:
            yield from _detect_worker(task)
