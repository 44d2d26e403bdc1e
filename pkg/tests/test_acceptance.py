"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s`.  The exotic search
criterion covers [2, 10^9) with 8 workers; the 10^10 run is an optional
long job (see README) and is not part of this suite.
"""

import json
import random
import time

import numpy as np

from gphi.arith import euler_phi, lemma_predicate, LemmaKind, v2
from gphi.cli import main
from gphi.diophantine import (
    TraceCase,
    brute_force_solutions,
    case_trace,
    exotic_prime_search,
)
from gphi.orbits import Persistence, detect_relations
from gphi.sieve import base_primes, sieve_segment

LIMIT = 10 ** 6


def _cli_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    lines = [json.loads(line) for line in out.splitlines()]
    return code, lines[:-1], lines[-1]


def _phi_table(limit):
    phi = np.zeros(limit + 1, dtype=np.int64)
    phi[1] = 1
    step = 1 << 22
    for lo in range(2, limit + 1, step):
        hi = min(lo + step, limit + 1)
        phi[lo:hi] = sieve_segment(lo, hi).phi
    return phi


def test_criterion_1_theorem_equivalence(capsys):
    started = time.monotonic()
    code, records, summary = _cli_json(capsys, "verify-theorem", "--limit", str(LIMIT))
    elapsed = time.monotonic() - started
    assert code == 0
    assert records == []
    assert "mismatches=0" in summary["truncations"]
    assert elapsed < 120
    print(f"ACCEPTANCE 1 theorem-equivalence: PASS (0 mismatches to {LIMIT}, {elapsed:.1f}s)")


def test_criterion_2_known_small_solutions():
    expected = [4, 6, 8, 10, 12, 14, 16, 20, 24, 28, 32, 40, 48, 56, 64, 70, 80, 94, 96]
    got = brute_force_solutions(100)
    assert got == expected
    assert 10 in got and 94 in got
    print("ACCEPTANCE 2 known-small-solutions: PASS (exact list to 100)")


def test_criterion_3_exotic_prime_search(capsys):
    started = time.monotonic()
    code, records, _ = _cli_json(
        capsys, "search-exotic", "--from", "2", "--to", "1000000000", "--jobs", "8"
    )
    elapsed = time.monotonic() - started
    assert code == 0
    assert [r["m"] for r in records] == [0, 5]
    assert [r["p"] for r in records] == [7, 47]
    assert elapsed < 900
    print(f"ACCEPTANCE 3 exotic-prime-search: PASS (m in {{0, 5}} to 1e9, {elapsed:.1f}s, 8 jobs)")


def test_criterion_4_relaxed_equation(capsys):
    started = time.monotonic()
    code, records, _ = _cli_json(capsys, "search-relaxed", "--limit", "2000000")
    elapsed = time.monotonic() - started
    assert code == 0
    assert [r["n"] for r in records] == [5, 35, 1295, 1679615]
    assert elapsed < 60
    print(f"ACCEPTANCE 4 relaxed-equation: PASS (exact set to 2e6, {elapsed:.1f}s)")


def test_criterion_5_orbit_regression_table():
    def single(n, r, k_max=64):
        rels = [rel for rel in detect_relations(n, k_max, r) if rel.r == r]
        assert len(rels) == 1, (n, r, rels)
        return rels[0]

    recorded = {}
    for n in (10, 94):
        rel = single(n, 2)
        assert rel.multiplier == 2 and rel.k0 == 0
        assert rel.persistent is Persistence.PROVEN_FOREVER
        recorded[n] = rel.k0

    rel = single(3114, 25)
    assert rel.multiplier == 729
    # Originally reported to hold for k >= 6; direct recomputation (checked
    # against an independent totient) shows the onset is k = 5, so the
    # quoted bound is verified and the measured onset is recorded.
    assert rel.k0 <= 6
    assert rel.verified_to_k >= 6
    recorded[3114] = rel.k0

    for n, r, mult in [
        (385, 20, 6561),
        (1570, 25, 729),
        (1702, 25, 729),
        (3393, 14, 729),
        (6175, 14, 729),
        (6969, 14, 729),
    ]:
        rel = single(n, r)
        assert rel.multiplier == mult, (n, r, rel)
        assert rel.persistent is Persistence.VERIFIED_ONLY
        recorded[n] = rel.k0

    for n in (130, 170, 234, 260, 266):
        rel = single(n, 9)
        assert rel.multiplier == 9, (n, rel)
        recorded[n] = rel.k0

    onsets = ", ".join(f"{n}:k0={k0}" for n, k0 in sorted(recorded.items()))
    print(f"ACCEPTANCE 5 orbit-regression-table: PASS (recorded onsets {onsets})")


def test_criterion_6_lemma_suite():
    phi = _phi_table(LIMIT)
    n = np.arange(2, LIMIT + 1, dtype=np.int64)
    tot = phi[2:]
    v2_n = np.log2(n & -n).astype(np.int64)
    v2_phi = np.log2(tot & -tot).astype(np.int64)
    odd = n >> v2_n
    applicable = (v2_n >= 1) & (odd > 1)

    assert np.all(v2_phi[applicable] >= v2_n[applicable])

    # odd parts that are p^a with p = 3 (mod 4)
    pp3 = np.zeros(LIMIT + 1, dtype=bool)
    for p in base_primes(LIMIT).tolist():
        if p % 4 == 3:
            power = p
            while power <= LIMIT:
                pp3[power] = True
                power *= p
    equal = applicable & (v2_phi == v2_n)
    assert np.array_equal(equal, applicable & pp3[odd])

    # spot-check the scalar predicate against the vector sweep
    rng = random.Random(6)
    for m in (rng.randrange(2, LIMIT + 1) for _ in range(500)):
        verdict = lemma_predicate(m)
        i = m - 2
        if not applicable[i]:
            assert verdict.kind is LemmaKind.NOT_APPLICABLE
        elif equal[i]:
            assert verdict.kind is LemmaKind.EQUAL
        else:
            assert verdict.kind is LemmaKind.STRICTLY_MORE
    print(f"ACCEPTANCE 6 lemma-suite: PASS (zero counterexamples to {LIMIT})")


def test_criterion_7_structural_traces():
    solutions = brute_force_solutions(LIMIT)
    chains = 0
    for n in solutions:
        trace = case_trace(n)
        if trace.case is TraceCase.POWER_OF_2_CHAIN:
            chains += 1
            continue
        assert trace.alpha == 1, n
        assert trace.k == 2, n
        assert trace.phi_q_check, n
    print(
        f"ACCEPTANCE 7 structural-traces: PASS ({len(solutions)} solutions, "
        f"{chains} power-of-2 chains, zero exceptions)"
    )


def test_criterion_8_sieve_correctness(tmp_path):
    rng = random.Random(20250823)
    for _ in range(1000):
        n = rng.randrange(2, 10 ** 7)
        assert int(sieve_segment(n, n + 1).phi[0]) == euler_phi(n), n

    lo, hi = 2, 20_000_000
    plain = exotic_prime_search(lo, hi)
    path = tmp_path / "resume.ckpt"
    exotic_prime_search(lo, hi, checkpoint_path=path, max_segments=2)
    resumed = exotic_prime_search(lo, hi, checkpoint_path=path)
    assert resumed == plain
    assert [w.m for w in resumed] == [0, 5]
    print("ACCEPTANCE 8 sieve-correctness: PASS (1000 random totients, resume identical)")
