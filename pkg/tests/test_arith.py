import math

import pytest

from mfbv import arith
from mfbv.errors import DomainError


def test_factorize_examples():
    f12 = arith.factorize(12)
    assert f12.factors == ((2, 2), (3, 1))
    assert f12.phi == 4
    assert f12.von_mangoldt == 0.0

    f1 = arith.factorize(1)
    assert f1.factors == () and f1.phi == 1 and f1.von_mangoldt == 0.0

    f9 = arith.factorize(9)
    assert f9.factors == ((3, 2),)
    assert f9.phi == 6
    assert f9.von_mangoldt == pytest.approx(math.log(3), abs=1e-15)


def test_factorize_domain_errors():
    with pytest.raises(DomainError):
        arith.factorize(0)
    with pytest.raises(DomainError):
        arith.factorize(arith.DEFAULT_FACTOR_BOUND + 1)


def test_factorize_deterministic():
    for n in (360360, 10**9 + 7, 2**40 + 15):
        assert arith.factorize(n) == arith.factorize(n)


def test_factorize_pollard_path():
    p, q = 1000003, 1000033
    fac = arith.factorize(p * q)
    assert fac.factors == ((p, 1), (q, 1))
    assert fac.phi == (p - 1) * (q - 1)


def test_chebyshev_identity_literal_divisors():
    # sum_{d|n} Lambda(d) = log n, divisor by divisor
    for n in range(1, 2001):
        s = sum(arith.factorize(d).von_mangoldt for d in arith.divisors(n) if d > 1)
        assert abs(s - math.log(n)) < 1e-9


def test_chebyshev_identity_full_range():
    # same identity for every n <= 1e5, accumulating Lambda(d) over multiples
    import numpy as np

    N = 10**5
    acc = np.zeros(N + 1)
    for p in arith.primes_up_to(N).tolist():
        pk = p
        while pk <= N:
            acc[pk::pk] += math.log(p)
            pk *= p
    worst = float(np.max(np.abs(acc[1:] - np.log(np.arange(1, N + 1)))))
    assert worst < 1e-9


def test_smooth_rough_split_examples():
    s = arith.smooth_rough_split(60, 3)
    assert (s.q_s, s.q_r) == (12, 5)
    assert arith.smooth_rough_split(7, 10).q_s == 7
    assert arith.smooth_rough_split(1, 2) == arith.SmoothRoughSplit(1, 2, 1, 1)


@pytest.mark.parametrize("w", [2, 10, 100])
def test_smooth_rough_split_full_range(w):
    spf = arith.spf_table(10**5)
    for q in range(1, 10**5 + 1):
        s = arith.smooth_rough_split(q, w)
        assert s.q_s * s.q_r == q
        assert math.gcd(s.q_s, s.q_r) == 1
        m = s.q_s
        while m > 1:
            p = spf[m]
            assert p <= w
            while m % p == 0:
                m //= p
        m = s.q_r
        while m > 1:
            p = spf[m]
            assert p > w
            while m % p == 0:
                m //= p


def test_primes_and_primality():
    ps = arith.primes_up_to(100).tolist()
    assert ps[:5] == [2, 3, 5, 7, 11] and ps[-1] == 97 and len(ps) == 25
    assert arith.primes_in(10, 20).tolist() == [11, 13, 17, 19]
    for n in range(2, 2000):
        naive = all(n % d for d in range(2, int(math.isqrt(n)) + 1))
        assert arith.is_prime(n) == naive
    assert arith.next_prime(1800) == 1801


def test_count_prime_divisors_in():
    assert arith.count_prime_divisors_in(12, 2, 5) == 2
    assert arith.count_prime_divisors_in(12, 3, 5) == 1
    assert arith.count_prime_divisors_in(1, 2, 100) == 0


def test_euler_phi_and_von_mangoldt():
    assert arith.euler_phi(1) == 1
    assert arith.euler_phi(12) == 4
    assert arith.von_mangoldt(8) == pytest.approx(math.log(2))
    assert arith.von_mangoldt(6) == 0.0
    with pytest.raises(DomainError):
        arith.von_mangoldt(0)
