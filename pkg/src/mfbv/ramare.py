"""Sieve weights and the T / E_sieve / E_bilinear decomposition.

The weight w(n) = 1/(#{Y <= p < Z : p | n} + 1) satisfies, in exact
rational arithmetic,

    sum_{Y <= p < Z, p^k || n} w(n / p^k) = 1 if some p in [Y, Z) divides n
                                            else 0,

which is what lets a weighted prime-times-integer rewrite of sum f(n)F(n)
be controlled by a divisor-concentration term T, a sifted term E_sieve,
and a dyadic bilinear term E_bilinear.  All three are computed here by
direct summation over an explicit F table.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import log, pi

import numpy as np

from .arith import count_prime_divisors_in, factorize, primes_in, primes_up_to, smooth_rough_split
from .errors import DomainError
from .multfn import MultFn


def ramare_weight(n: int, Y: float, Z: float) -> Fraction:
    """Exact 1 / (1 + #{Y <= p < Z : p | n})."""
    if n < 1:
        raise DomainError(f"ramare_weight: n={n} < 1")
    return Fraction(1, 1 + count_prime_divisors_in(n, Y, Z))


def weight_indicator_sum(n: int, Y: float, Z: float) -> Fraction:
    """sum over p in [Y,Z) with p^k || n of w(n/p^k); equals 1_{some p | n}."""
    total = Fraction(0)
    for p, e in factorize(n).factors:
        if Y <= p < Z:
            total += ramare_weight(n // p ** e, Y, Z)
    return total


@dataclass(frozen=True)
class RamareParams:
    Y: float
    Z: float
    w_threshold: int

    def __post_init__(self):
        if not 2 <= self.Y < self.Z:
            raise DomainError(f"need 2 <= Y < Z, got Y={self.Y}, Z={self.Z}")

    @property
    def u(self) -> float:  # log Z / log Y
        return log(self.Z) / log(self.Y)


@dataclass(frozen=True)
class FSpec:
    x: int
    moduli: tuple  # ((q, xi_q, a_q), ...) with |xi_q| = 1, gcd(a_q, q) = 1
    w_threshold: int
    zero_at: int | None = None  # fixed-residue variant: force F(zero_at) = 0


class BuiltF:
    """F(n) = sum_q xi_q (1_{n=a_q (q)} - (1/q_r) 1_{n=a_q (q_s)}) tabulated on 0..x."""

    def __init__(self, spec: FSpec):
        from math import gcd

        for q, xi, a in spec.moduli:
            if gcd(a, q) != 1:
                raise DomainError(f"build_F: gcd({a}, {q}) != 1")
            if abs(abs(xi) - 1) > 1e-12:
                raise DomainError(f"build_F: |xi_{q}| != 1")
        self.spec = spec
        x = spec.x
        vals = np.zeros(x + 1, dtype=complex)
        for q, xi, a in spec.moduli:
            split = smooth_rough_split(q, spec.w_threshold)
            vals[a % q :: q] += xi
            vals[a % split.q_s :: split.q_s] -= xi / split.q_r
        if spec.zero_at is not None and 0 <= spec.zero_at <= x:
            vals[spec.zero_at] = 0
        vals[0] = 0
        self.values = vals

    def __call__(self, n: int) -> complex:
        return complex(self.values[n])

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def l2_norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def divisor_sum(self, d: int) -> float:
        """sum_{n <= x, d | n} |F(n)|."""
        return float(np.sum(np.abs(self.values[d::d])))

    @property
    def q_scale(self) -> float:
        """Nominal dyadic scale of the moduli (max q / 2); diagnostic only."""
        return max((q for q, _, _ in self.spec.moduli), default=0) / 2.0


def build_F(spec: FSpec) -> BuiltF:
    return BuiltF(spec)


@dataclass(frozen=True)
class BilinearDiag:
    P: float
    average: float  # E_{p,p' in (P,2P]} |sum_m F(pm) conj(F(p'm))|
    bound: float    # x/P (1/(w log w) + (P^0.1 + log x)/pi(P)) + Q^2
    ratio: float


@dataclass(frozen=True)
class RamareDecomposition:
    main_sum: complex  # sum f(n) F(n) over the (possibly restricted) range
    T: float
    E_sieve: float
    E_bilinear: float
    params: RamareParams
    restrict_main: bool
    bilinear_diags: tuple
    sieve_abs_F: float  # sum |F| over sifted n, for the x/u comparison


def decompose(f: MultFn, F: BuiltF, x: int, params: RamareParams,
              restrict_main: bool = True) -> RamareDecomposition:
    """All four quantities by direct summation.

    T loops d <= Z^2 over the |F| table; E_bilinear scans dyadic P in
    {Y, 2Y, 4Y, ...} within [Y, Z), averaging over prime pairs in (P, 2P].
    """
    Y, Z = params.Y, params.Z
    if Z * Z > x:
        raise DomainError(f"decompose: Z^2 = {Z*Z} exceeds x = {x}")
    fv = f.values_up_to(x)
    Fv = F.values
    prod = fv * Fv
    lo = int(np.ceil(Z ** 9))
    if restrict_main:
        main = complex(np.sum(prod[lo:])) if lo <= x else 0j
    else:
        main = complex(np.sum(prod[1:]))

    absF = np.abs(Fv)
    T = 0.0
    for d in range(1, int(Z * Z) + 1):
        T = max(T, d * float(np.sum(absF[d::d])))

    sieve_ps = primes_in(Y - 1e-9, Z - 1e-9)  # primes in [Y, Z)
    sieve_ps = sieve_ps[sieve_ps >= Y]
    mask = np.ones(x + 1, dtype=bool)
    for p in sieve_ps.tolist():
        mask[p::p] = False
    mask[0] = False
    E_sieve = float(np.sum(np.abs(prod[mask])))
    sieve_abs_F = float(np.sum(absF[mask]))

    diags = []
    E_bil = 0.0
    P = float(Y)
    w = params.w_threshold
    while P < Z:
        ps = primes_in(P, 2 * P).tolist()
        if not ps:
            raise DomainError(f"decompose: no primes in ({P}, {2*P}]")
        acc = 0.0
        for p in ps:
            for pp in ps:
                M = min(x // p, x // pp)
                ms = np.arange(1, M + 1)
                acc += abs(complex(np.sum(Fv[p * ms] * np.conj(Fv[pp * ms]))))
        avg = acc / len(ps) ** 2
        E_bil = max(E_bil, (P * x * avg) ** 0.5)
        npi = len(primes_up_to(int(P)))
        bound = (x / P) * (1.0 / (w * log(w)) + (P ** 0.1 + log(x)) / max(npi, 1)) \
            + F.q_scale ** 2
        diags.append(BilinearDiag(P=P, average=avg, bound=bound,
                                  ratio=avg / bound if bound > 0 else float("inf")))
        P *= 2
    return RamareDecomposition(main_sum=main, T=T, E_sieve=E_sieve, E_bilinear=E_bil,
                               params=params, restrict_main=restrict_main,
                               bilinear_diags=tuple(diags), sieve_abs_F=sieve_abs_F)
