"""1-bounded multiplicative functions given by their prime-power values.

A MultFn resolves f(n) as the product of f(p^k) over the factorization,
with two optional twists: a smooth support threshold y (f(p^k) = 0 for
p > y) and a pointwise override map (used to redefine f on a sparse set,
e.g. on large primes, where it cannot disturb any other value below the
evaluation bound).

Also here: the log-derivative coefficients Lambda_f via the convolution
recursion f*log = Lambda_fot f, the |Lambda_f| <= Lambda class test, and the
finite closed form of the doubled convolution identity
    f(n) log n = Lambda_f(n) + sum_{abm=n, a<n} Lambda_f(a) Lambda_f(b) f(m) / log(n/a).
"""

import hashlib
from dataclasses import dataclass
from math import log

import numpy as np

from . import arith
from .errors import DomainError

_ONE_TOL = 1e-9
_CLASS_TOL = 1e-12


class MultFn:
    def __init__(self, prime_power, name: str, *, completely_multiplicative=False,
                 smooth_bound=None, overrides=None):
        """prime_power: callable (p, k) -> complex value of f at p**k."""
        self._pp = prime_power
        self.name = name
        self.completely_multiplicative = completely_multiplicative
        self.smooth_bound = smooth_bound
        self.overrides = dict(overrides) if overrides else {}
        for n, v in self.overrides.items():
            if abs(v) > 1 + _ONE_TOL:
                raise DomainError(f"override value at {n} has modulus {abs(v)} > 1")
        self._pk_cache = {}
        self._vals = None  # cached values_up_to array

    def prime_power_value(self, p: int, k: int) -> complex:
        pk = p ** k
        if pk in self.overrides:
            return self.overrides[pk]
        v = self._pk_cache.get(pk)
        if v is None:
            if self.smooth_bound is not None and p > self.smooth_bound:
                v = 0j
            else:
                v = complex(self._pp(p, k))
            if abs(v) > 1 + _ONE_TOL:
                raise DomainError(f"f({p}^{k}) has modulus {abs(v)} > 1")
            self._pk_cache[pk] = v
        return v

    def __call__(self, n: int) -> complex:
        if n < 1:
            raise DomainError(f"f undefined at {n}")
        if n in self.overrides:
            return self.overrides[n]
        v = 1 + 0j
        for p, e in arith.factorize(n).factors:
            v *= self.prime_power_value(p, e)
        return v

    def values_up_to(self, N: int) -> np.ndarray:
        """f(0..N) as complex128 (index 0 is 0); computed by one SPF pass."""
        if self._vals is not None and len(self._vals) > N:
            return self._vals[: N + 1]
        spf = arith.spf_table(N)
        out = [0j] * (N + 1)
        if N >= 1:
            out[1] = 1 + 0j
        pkv = self.prime_power_value
        for n in range(2, N + 1):
            p = spf[n]
            m = n // p
            k = 1
            while m % p == 0:
                m //= p
                k += 1
            out[n] = out[m] * pkv(p, k)
        for n, v in self.overrides.items():
            if 1 <= n <= N:
                out[n] = complex(v)
        vals = np.array(out, dtype=complex)
        assert np.max(np.abs(vals)) <= 1 + _ONE_TOL, "1-bounded violation"
        self._vals = vals
        return vals

    def __repr__(self):
        return f"MultFn({self.name})"


def unit() -> MultFn:
    return MultFn(lambda p, k: 1.0, "unit", completely_multiplicative=True)


def mobius() -> MultFn:
    return MultFn(lambda p, k: -1.0 if k == 1 else 0.0, "mobius")


def liouville() -> MultFn:
    return MultFn(lambda p, k: (-1.0) ** k, "liouville", completely_multiplicative=True)


def character_fn(chi) -> MultFn:
    """The completely multiplicative function n -> chi(n)."""
    return MultFn(lambda p, k: chi(p) ** k, f"char({chi.modulus};{chi.index})",
                  completely_multiplicative=True)


def _pm1_hash(seed: int, p: int) -> float:
    h = hashlib.blake2b(f"{seed}:{p}".encode(), digest_size=8).digest()
    return 1.0 if h[0] & 1 == 0 else -1.0


def random_pm1(seed: int) -> MultFn:
    """Seeded random completely multiplicative +-1 function; call-order independent."""
    return MultFn(lambda p, k: _pm1_hash(seed, p) ** k, f"random_pm1({seed})",
                  completely_multiplicative=True)


def smooth_restricted(base: MultFn, y: float) -> MultFn:
    """base with support cut to y-smooth integers."""
    return MultFn(base.prime_power_value, f"{base.name}|smooth<={y:g}",
                  completely_multiplicative=base.completely_multiplicative,
                  smooth_bound=y)


def with_overrides(base: MultFn, overrides: dict, name=None) -> MultFn:
    return MultFn(base.prime_power_value, name or f"{base.name}+overrides",
                  smooth_bound=base.smooth_bound, overrides=overrides)


def from_prime_lambda(lam_pk, name: str) -> MultFn:
    """Build f from prescribed Lambda_f values at prime powers.

    lam_pk: callable (p, k) -> Lambda_f(p^k).  The convolution recursion
    determines f(p^k) uniquely (coefficient of the top term is f(1) = 1).
    """

    def pp(p, k):
        lp = log(p)
        fv = [1 + 0j]
        for j in range(1, k + 1):
            acc = sum(lam_pk(p, i) * fv[j - i] for i in range(1, j + 1))
            fv.append(acc / (j * lp))
        return fv[k]

    return MultFn(pp, name)


@dataclass(frozen=True)
class LambdaFTable:
    name: str
    bound: int
    values: dict  # prime power p^k -> Lambda_f(p^k); zero elsewhere

    def __call__(self, n: int) -> complex:
        return self.values.get(n, 0j)


def lambda_f(f: MultFn, bound: int) -> LambdaFTable:
    """Lambda_f at every prime power <= bound, solved in increasing k."""
    if bound < 2:
        raise DomainError(f"lambda_f bound {bound} < 2")
    values = {}
    for p in arith.primes_up_to(bound).tolist():
        lp = log(p)
        K = 1
        while p ** (K + 1) <= bound:
            K += 1
        fv = [1 + 0j] + [f.prime_power_value(p, j) for j in range(1, K + 1)]
        lam = [0j] * (K + 1)
        for k in range(1, K + 1):
            acc = fv[k] * k * lp
            for j in range(1, k):
                acc -= lam[j] * fv[k - j]
            lam[k] = acc
            values[p ** k] = acc
    return LambdaFTable(name=f.name, bound=bound, values=values)


@dataclass(frozen=True)
class ClassCWitness:
    in_class: bool
    first_violation: int | None  # least violating prime power, if any
    max_excess: float  # max over p^k of |Lambda_f| - log p


def class_c_check(f: MultFn, bound: int) -> ClassCWitness:
    """Check |Lambda_f(p^k)| <= log p (tolerance 1e-12) for all p^k <= bound."""
    table = lambda_f(f, bound)
    worst = 0.0
    bad = None
    for pk in sorted(table.values):
        p = arith.factorize(pk).factors[0][0]
        excess = abs(table.values[pk]) - log(p)
        worst = max(worst, excess)
        if excess > _CLASS_TOL and bad is None:
            bad = pk
    return ClassCWitness(in_class=bad is None, first_violation=bad, max_excess=worst)


def harper_residual(f: MultFn, n: int, table: LambdaFTable | None = None) -> float:
    """|f(n) log n - Lambda_f(n) - sum_{abm=n, a<n} Lambda_f(a)Lambda_f(b)f(m)/log(n/a)|.

    The beta-integral form of the second term collapses to 1/log(n/a)
    since int_0^inf (n/a)^(-beta) dbeta = 1/log(n/a).
    """
    if n < 2:
        raise DomainError(f"harper_residual needs n >= 2, got {n}")
    if table is None or table.bound < n:
        table = lambda_f(f, n)
    fac = arith.factorize(n).factors
    pps = [(p, k) for p, e in fac for k in range(1, e + 1)]
    rhs = table(n)
    for pa, ka in pps:
        a = pa ** ka
        if a == n:
            continue
        la = table(a)
        if la == 0:
            continue
        rest = n // a
        rfac = [(p, e - (ka if p == pa else 0)) for p, e in fac]
        for pb, eb in rfac:
            for kb in range(1, eb + 1):
                b = pb ** kb
                if b > rest:
                    break
                if rest % b:
                    continue
                lb = table(b)
                if lb == 0:
                    continue
                rhs += la * lb * f(rest // b) / log(n / a)
    return abs(f(n) * log(n) - rhs)
