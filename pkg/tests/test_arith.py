import math

import pytest
from hypothesis import given, settings, strategies as st

from gphi.arith import (
    Factorization,
    LemmaKind,
    NATURAL_MAX,
    NaturalOverflowError,
    euler_phi,
    factorize,
    g,
    is_prime,
    iterate_g,
    lemma_predicate,
    odd_part,
    v2,
)


def phi_by_gcd_count(n):
    """Independent totient oracle: literal count of coprime residues."""
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


class TestFactorize:
    def test_one_gives_empty_product(self):
        assert factorize(1).factors == ()

    def test_35(self):
        assert factorize(35).factors == ((5, 1), (7, 1))

    def test_1679615(self):
        assert factorize(1679615).factors == ((5, 1), (7, 1), (37, 1), (1297, 1))

    def test_prime_power(self):
        assert factorize(2 ** 10 * 3 ** 4).factors == ((2, 10), (3, 4))

    def test_large_semiprime_uses_rho(self):
        p, q = 1000003, 1000033
        assert factorize(p * q).factors == ((p, 1), (q, 1))

    def test_large_prime_cofactor(self):
        p = 10 ** 12 + 39  # prime
        assert is_prime(p)
        assert factorize(6 * p).factors == ((2, 1), (3, 1), (p, 1))

    @given(st.integers(min_value=1, max_value=10 ** 12))
    def test_roundtrip(self, n):
        fac = factorize(n)
        assert fac.value == n
        primes = [p for p, _ in fac.factors]
        assert primes == sorted(primes)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            factorize(0)

    def test_factorization_validates_primes(self):
        with pytest.raises(ValueError):
            Factorization(((4, 1),))
        with pytest.raises(ValueError):
            Factorization(((5, 1), (3, 1)))


class TestEulerPhi:
    def test_one(self):
        assert euler_phi(1) == 1

    @pytest.mark.parametrize("k", range(1, 11))
    def test_powers_of_two(self, k):
        assert euler_phi(2 ** k) == 2 ** (k - 1)

    def test_35(self):
        assert euler_phi(35) == 24 == phi_by_gcd_count(35)

    def test_agrees_with_gcd_count_small(self):
        for n in range(1, 1000):
            assert euler_phi(n) == phi_by_gcd_count(n)

    @given(st.integers(min_value=1, max_value=10 ** 4))
    @settings(max_examples=150)
    def test_agrees_with_gcd_count(self, n):
        assert euler_phi(n) == phi_by_gcd_count(n)

    @given(
        st.integers(min_value=1, max_value=10 ** 6),
        st.integers(min_value=1, max_value=10 ** 6),
    )
    @settings(max_examples=200)
    def test_multiplicative_on_coprime_split(self, a, b):
        if math.gcd(a, b) == 1:
            assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)

    @given(st.integers(min_value=1, max_value=500_000))
    @settings(max_examples=200)
    def test_doubling_law_for_even(self, m):
        n = 2 * m
        assert euler_phi(2 * n) == 2 * euler_phi(n)


class TestMap:
    def test_g_of_one(self):
        assert g(1) == 2

    @pytest.mark.parametrize("k", range(1, 11))
    def test_g_on_powers_of_two(self, k):
        assert g(2 ** k) == 3 * 2 ** (k - 1)

    def test_g_10(self):
        assert g(10) == 14

    def test_iterate_from_10(self):
        assert iterate_g(10, 4).values == (10, 14, 20, 28, 40)

    def test_iterate_from_4(self):
        assert iterate_g(4, 4).values == (4, 6, 8, 12, 16)

    def test_zero_iterations(self):
        orbit = iterate_g(1, 0)
        assert orbit.values == (1,) and not orbit.truncated

    def test_overflow_truncates(self):
        orbit = iterate_g(1 << 191, 5)
        assert orbit.truncated
        assert orbit.values == (1 << 191, 3 << 190)
        assert orbit.last_valid_k == 1
        assert orbit.values[-1] <= NATURAL_MAX

    def test_g_overflow_is_explicit(self):
        with pytest.raises(NaturalOverflowError):
            g(3 << 190)


class TestValuation:
    @pytest.mark.parametrize("n,e", [(7, 0), (8, 3), (12, 2), (1, 0)])
    def test_v2(self, n, e):
        assert v2(n) == e

    def test_odd_part(self):
        assert odd_part(12) == 3
        assert odd_part(7) == 7


class TestLemmaPredicate:
    def test_equal_for_6(self):
        verdict = lemma_predicate(6)
        assert verdict.kind is LemmaKind.EQUAL
        assert verdict.two_adic_n == verdict.two_adic_phi == 1

    def test_strictly_more_for_10(self):
        verdict = lemma_predicate(10)
        assert verdict.kind is LemmaKind.STRICTLY_MORE
        assert (verdict.two_adic_n, verdict.two_adic_phi) == (1, 2)

    def test_equal_for_18(self):
        assert lemma_predicate(18).kind is LemmaKind.EQUAL

    @pytest.mark.parametrize("n", [1, 2, 8, 1024, 7, 35])
    def test_out_of_scope_inputs(self, n):
        assert lemma_predicate(n).kind is LemmaKind.NOT_APPLICABLE

    def test_equality_characterization_sweep(self):
        # equality exactly when the odd part is p^a with p = 3 (mod 4)
        for n in range(2, 20000, 2):
            verdict = lemma_predicate(n)
            if verdict.kind is LemmaKind.NOT_APPLICABLE:
                continue
            q = odd_part(n)
            fac = factorize(q).factors
            is_pp3 = len(fac) == 1 and fac[0][0] % 4 == 3
            assert (verdict.kind is LemmaKind.EQUAL) == is_pp3, n

    def test_odd_case_clause(self):
        # phi of odd q >= 3 is even, and not divisible by 4 exactly on
        # prime powers p^a with p = 3 (mod 4)
        for q in range(3, 20000, 2):
            tot = euler_phi(q)
            assert tot % 2 == 0
            fac = factorize(q).factors
            is_pp3 = len(fac) == 1 and fac[0][0] % 4 == 3
            assert (tot % 4 != 0) == is_pp3, q


class TestIsPrime:
    def test_small(self):
        assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_carmichael(self):
        assert not is_prime(561)
        assert not is_prime(1105)

    def test_large(self):
        assert is_prime(2 ** 89 - 1)
        assert not is_prime((2 ** 89 - 1) * 3)
