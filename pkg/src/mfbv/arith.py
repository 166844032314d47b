"""Integer plumbing: primes, factorization, totient, von Mangoldt, smooth/rough split.

A smallest-prime-factor (SPF) table backs everything at desk scale; it is
built lazily, grows geometrically, and is immutable once built.  Numbers
beyond the table fall back to trial division by sieved primes followed by
Pollard rho with a deterministic Miller-Rabin primality test (valid far
beyond the 2**50 default bound).
"""

from dataclasses import dataclass
from math import gcd, isqrt, log

import numpy as np

from .errors import DomainError, ResourceError

DEFAULT_FACTOR_BOUND = 1 << 50
SIEVE_CAP = 10 ** 8

_spf: np.ndarray = np.array([], dtype=np.int64)
_spf_list: list = []


def _build_spf(limit: int) -> None:
    """(Re)build the SPF table to cover 0..limit."""
    global _spf, _spf_list
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            view = spf[p * p :: p]
            view[view == 0] = p
    rest = np.flatnonzero(spf[2:] == 0) + 2
    spf[rest] = rest
    if limit >= 1:
        spf[1] = 1
    _spf = spf
    _spf_list = spf.tolist()


def spf_table(limit: int) -> list:
    """Smallest-prime-factor table as a Python list, valid on 0..limit."""
    if limit > SIEVE_CAP:
        raise ResourceError(f"sieve limit {limit} exceeds cap {SIEVE_CAP}")
    if len(_spf_list) <= limit:
        _build_spf(max(limit, 2 * len(_spf_list), 1 << 16))
    return _spf_list


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n, ascending."""
    if n < 2:
        return np.array([], dtype=np.int64)
    spf_table(n)
    idx = np.arange(len(_spf), dtype=np.int64)
    mask = (_spf == idx) & (idx >= 2) & (idx <= n)
    return idx[mask]


def primes_in(lo: float, hi: float) -> np.ndarray:
    """Primes p with lo < p <= hi."""
    ps = primes_up_to(int(hi))
    return ps[ps > lo]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid for n < 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime > n."""
    k = n + 1
    while not is_prime(k):
        k += 1
    return k


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed on {n}")


def _factor_large(n: int) -> dict:
    if n == 1:
        return {}
    if is_prime(n):
        return {n: 1}
    d = _pollard_rho(n)
    out = _factor_large(d)
    for p, e in _factor_large(n // d).items():
        out[p] = out.get(p, 0) + e
    return out


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple  # ((prime, exponent), ...) with primes ascending
    phi: int
    von_mangoldt: float


def factorize(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> Factorization:
    """Full factorization of n with totient and von Mangoldt value attached."""
    if n < 1 or n > bound:
        raise DomainError(f"factorize: n={n} outside [1, {bound}]")
    fac: dict = {}
    if n < len(_spf_list) or n <= min(SIEVE_CAP, 1 << 22):
        spf = spf_table(max(n, 1))
        m = n
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            fac[p] = e
    else:
        spf = spf_table(1 << 16)
        m = n
        for p in range(2, 1 << 8):
            if spf[p] == p:
                while m % p == 0:
                    m //= p
                    fac[p] = fac.get(p, 0) + 1
        for p, e in _factor_large(m).items():
            fac[p] = fac.get(p, 0) + e
    factors = tuple(sorted(fac.items()))
    phi = 1
    for p, e in factors:
        phi *= (p - 1) * p ** (e - 1)
    vm = log(factors[0][0]) if len(factors) == 1 else 0.0
    return Factorization(n=n, factors=factors, phi=phi, von_mangoldt=vm)


def euler_phi(n: int) -> int:
    return factorize(n).phi


def von_mangoldt(n: int) -> float:
    if n < 1:
        raise DomainError(f"von_mangoldt: n={n}")
    if n == 1:
        return 0.0
    return factorize(n).von_mangoldt


def divisors(n: int) -> list:
    """All divisors of n, ascending."""
    ds = [1]
    for p, e in factorize(n).factors:
        ds = [d * p ** k for d in ds for k in range(e + 1)]
    return sorted(ds)


@dataclass(frozen=True)
class SmoothRoughSplit:
    q: int
    w: int
    q_s: int  # w-smooth part
    q_r: int  # w-rough part


def smooth_rough_split(q: int, w: int) -> SmoothRoughSplit:
    """Unique coprime split q = q_s * q_r with P(q_s) <= w < smallest prime of q_r."""
    if w < 2:
        raise DomainError(f"smooth_rough_split: w={w} < 2")
    q_s = 1
    for p, e in factorize(q).factors:
        if p <= w:
            q_s *= p ** e
    return SmoothRoughSplit(q=q, w=w, q_s=q_s, q_r=q // q_s)


def count_prime_divisors_in(n: int, lo: float, hi: float) -> int:
    """#{p prime : lo <= p < hi, p | n}; tight loop used by the sieve weights."""
    spf = spf_table(n) if n < SIEVE_CAP else None
    cnt = 0
    if spf is not None:
        m = n
        while m > 1:
            p = spf[m]
            if lo <= p < hi:
                cnt += 1
            while m % p == 0:
                m //= p
    else:
        for p, _ in factorize(n).factors:
            if lo <= p < hi:
                cnt += 1
    return cnt
