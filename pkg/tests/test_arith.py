"""Integer and rational arithmetic primitives against independent oracles."""
import math
import random
from fractions import Fraction

import pytest
import sympy

from zsig.arith import (
    IncompleteFactorizationError,
    distinct_prime_factors,
    factor_small,
    is_probable_prime,
    ln_abs_int,
    ln_abs_ratio,
    omega,
    prime_quotient_power_sum,
    primes_up_to,
    s_d,
    smallest_prime_factor_sieve,
    strip_common_primes,
    val_p,
)


def test_primes_up_to_matches_sympy():
    assert primes_up_to(100) == tuple(sympy.primerange(2, 101))
    assert primes_up_to(2) == (2,)
    assert primes_up_to(1) == ()


def test_smallest_prime_factor_sieve():
    spf = smallest_prime_factor_sieve(1000)
    for n in range(2, 1001):
        assert spf[n] == min(sympy.primefactors(n))


def test_probable_prime_agrees_with_sympy():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randrange(2, 10**12)
        assert is_probable_prime(n) == sympy.isprime(n), n
    # a few structured stress values
    for n in [2, 3, 4, 561, 1105, 2**61 - 1, 2**89 - 1, 10**18 + 9]:
        assert is_probable_prime(n) == sympy.isprime(n), n


def test_val_p_frozen_and_additive():
    assert val_p(Fraction(12), 2) == 2
    assert val_p(Fraction(9, 2), 3) == 2
    assert val_p(Fraction(9, 2), 2) == -1
    assert val_p(Fraction(26), 13) == 1  # frozen
    rng = random.Random(5)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 13])
        x = Fraction(rng.randrange(-500, 501) or 1, rng.randrange(1, 300))
        y = Fraction(rng.randrange(-500, 501) or 1, rng.randrange(1, 300))
        assert val_p(x * y, p) == val_p(x, p) + val_p(y, p)


def test_val_p_rejects_zero_and_composite_modulus():
    with pytest.raises(ValueError):
        val_p(Fraction(0), 2)
    with pytest.raises(ValueError):
        val_p(Fraction(5), 4)


def test_val_p_exactly_one_side_contributes():
    # for coprime a, b exactly one of val_p(a), val_p(b) is nonzero
    rng = random.Random(23)
    for _ in range(200):
        x = Fraction(rng.randrange(-10**6, 10**6) or 1, rng.randrange(1, 10**4))
        p = rng.choice([2, 3, 5, 7, 11])
        vn = val_p(Fraction(x.numerator), p) if x.numerator else 0
        vd = val_p(Fraction(x.denominator), p)
        assert val_p(x, p) == vn - vd
        assert vn == 0 or vd == 0


def test_omega_frozen_cases():
    assert omega(1) == 0
    assert omega(-1) == 0
    assert omega(12) == 2
    assert omega(30) == 3  # frozen
    with pytest.raises(ValueError):
        omega(0)


def test_omega_matches_sympy_on_random_values():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randrange(2, 10**9)
        assert omega(n) == len(sympy.factorint(n)), n


def test_factor_small_frozen():
    fac = factor_small(52023, 10**6)
    assert fac.factors == ((3, 1), (17341, 1))
    assert fac.cofactor == 1 and fac.complete
    assert fac.reconstruct() == 52023

    unit = factor_small(1, 10)
    assert unit.factors == () and unit.cofactor == 1 and unit.complete

    pw = factor_small(2**20, 100)
    assert pw.factors == ((2, 20),) and pw.complete


def test_factor_small_reconstruct_random():
    rng = random.Random(13)
    for _ in range(120):
        n = rng.randrange(2, 10**10)
        fac = factor_small(n)
        assert fac.complete
        assert fac.reconstruct() == n
        assert dict(fac.factors) == sympy.factorint(n)


def test_factor_small_incomplete_on_large_semiprime():
    # two primes far above the trial bound and the rho cutoff
    p = sympy.nextprime(2**70)
    q = sympy.nextprime(2**75)
    fac = factor_small(p * q, bound=10**3)
    # rho may or may not split 145-bit semiprimes; either outcome must be consistent
    assert fac.reconstruct() == p * q
    if not fac.complete:
        assert fac.cofactor > 1


def test_strip_common_primes():
    assert strip_common_primes(24, 6) == 1
    assert strip_common_primes(26, 10) == 13  # frozen
    assert strip_common_primes(35, 4) == 35
    assert strip_common_primes(1, 99) == 1
    rng = random.Random(3)
    for _ in range(200):
        r = rng.randrange(1, 10**12)
        s = rng.randrange(1, 10**12)
        out = strip_common_primes(r, s)
        assert r % out == 0
        assert math.gcd(out, s) == 1
        # the removed part carries only primes of s
        removed = r // out
        while removed > 1:
            g = math.gcd(removed, s)
            assert g > 1
            removed //= g


def test_power_sum_frozen_and_wrapper():
    assert prime_quotient_power_sum(3, 6) == 36
    assert prime_quotient_power_sum(3, 5) == 3
    assert prime_quotient_power_sum(2, 12) == 80  # frozen: 2^6 + 2^4
    assert s_d(6, 3) == 36
    assert s_d(1, 5) == 0
    with pytest.raises(ValueError):
        prime_quotient_power_sum(1, 6)


def test_power_sum_matches_direct_formula():
    rng = random.Random(41)
    for _ in range(100):
        n = rng.randrange(2, 4000)
        d = rng.randrange(2, 7)
        expected = sum(d ** (n // p) for p in sympy.primefactors(n))
        assert s_d(n, d) == expected


def test_distinct_prime_factors():
    assert distinct_prime_factors(12) == (2, 3)
    assert distinct_prime_factors(-30) == (2, 3, 5)
    assert distinct_prime_factors(1) == ()


def test_ln_abs_int_accuracy():
    """Exact-shift log against mpmath at sizes far past float overflow."""
    import mpmath

    for n in [1, 2, 3, 10**10, 2**600 + 12345, 3**5000, -(7**1234)]:
        if n == 0:
            continue
        expected = float(mpmath.log(abs(mpmath.mpf(n)))) if abs(n) < 10**300 else None
        got = ln_abs_int(n)
        with mpmath.workprec(300):
            ref = float(mpmath.log(abs(mpmath.mpmathify(n))))
        assert got == pytest.approx(ref, rel=1e-12)
        if expected is not None:
            assert got == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        ln_abs_int(0)


def test_ln_abs_ratio_close_values():
    import mpmath

    # bit-lengths within 2 take the log1p path; exercise both branches
    a = 2**4000 + 987654321
    cases = [(a, 2**4000), (a, a - 1), (3**300, 2**475), (Fraction(7, 8).numerator, 8)]
    for num, den in cases:
        with mpmath.workprec(300):
            ref = float(mpmath.log(mpmath.mpf(num) / den)) if num < 10**200 else \
                float(mpmath.log(mpmath.mpmathify(num)) - mpmath.log(mpmath.mpmathify(den)))
        assert ln_abs_ratio(num, den) == pytest.approx(ref, rel=1e-11, abs=1e-13)


def test_incomplete_factorization_error_is_arithmetic_error():
    assert issubclass(IncompleteFactorizationError, ArithmeticError)
