"""Smooth-number counting and its analytic companions.

Psi(x, y) is counted exactly by depth-first enumeration over products of
primes <= y (optionally filtered to a congruence class or to integers
coprime to q).  The density rho is solved from the integral form
u*rho(u) = int_{u-1}^u rho(t) dt stepped on a uniform grid, which is
self-reinforcing and avoids differentiating across the kink at u = 1.
The saddle point alpha(x, y) solves sum_{p<=y} log p / (p^alpha - 1) = log x.
"""

from dataclasses import dataclass
from math import gcd, log

import numpy as np

from .arith import factorize, primes_up_to
from .errors import DomainError, ResourceError

ENUM_BOUND = 10 ** 9
RHO_STEP = 1.0 / 2048


@dataclass(frozen=True)
class SmoothCount:
    x: float
    y: float
    u: float
    value: int
    filter: tuple | None  # None | ("coprime", q) | ("progression", q, a)


def _enumerate_smooth(primes: list, x: int):
    """Yield every integer <= x whose prime factors all lie in `primes`."""
    stack = [(0, 1)]
    while stack:
        i, n = stack.pop()
        yield n
        for j in range(i, len(primes)):
            m = n * primes[j]
            if m > x:
                break
            while m <= x:
                stack.append((j + 1, m))
                m *= primes[j]


def psi_exact(x: float, y: float, filter: tuple | None = None) -> SmoothCount:
    """#{n <= x : P(n) <= y}, exactly, with the optional filter applied."""
    if x < 1:
        raise DomainError(f"psi_exact: x={x} < 1")
    if x > ENUM_BOUND:
        raise ResourceError(f"psi_exact: x={x} exceeds enumeration bound {ENUM_BOUND}")
    if y < 2:
        raise DomainError(f"psi_exact: y={y} < 2")
    xi = int(x)
    primes = primes_up_to(int(min(y, xi))).tolist()
    if filter is None:
        count = sum(1 for _ in _enumerate_smooth(primes, xi))
    elif filter[0] == "coprime":
        q = filter[1]
        primes = [p for p in primes if q % p != 0]
        count = sum(1 for _ in _enumerate_smooth(primes, xi))
    elif filter[0] == "progression":
        _, q, a = filter
        count = sum(1 for n in _enumerate_smooth(primes, xi) if n % q == a % q)
    else:
        raise DomainError(f"unknown filter {filter!r}")
    u = log(x) / log(y) if y > 1 else float("inf")
    return SmoothCount(x=x, y=y, u=u, value=count, filter=filter)


def psi_naive(x: int, y: float) -> int:
    """Largest-prime-factor sieve count; independent cross-check for x <= 1e6."""
    if x > 10 ** 7:
        raise ResourceError(f"psi_naive: x={x} too large")
    lpf = np.zeros(x + 1, dtype=np.int64)
    lpf[1] = 1
    for p in primes_up_to(x).tolist():
        lpf[p::p] = p
    return int(np.count_nonzero(lpf[1:] <= y))


def psi_buchstab(x: float, y: float, _memo=None) -> int:
    """Recursion Psi(x,y) = 1 + sum_{p<=y} Psi(x/p, p); internal cross-check."""
    if _memo is None:
        if x > 10 ** 6:
            raise ResourceError("psi_buchstab limited to x <= 1e6")
        _memo = {}
    if x < 1:
        return 0
    xi = int(x)
    key = (xi, int(min(y, xi)))
    if key in _memo:
        return _memo[key]
    total = 1
    for p in primes_up_to(int(min(y, xi))).tolist():
        total += psi_buchstab(xi // p, p, _memo)
    _memo[key] = total
    return total


class DickmanInterpolant:
    """rho on [0, u_max] from the window equation, cubic between nodes.

    The first delay interval (1, 2] is the method-of-steps closed form
    1 - log u; stepping starts at u = 2, where the integrand is C^1 and
    composite Simpson carries no kink penalty.  Each step solves
    rho_j (u_j - h/3) = Simpson tail of the window [u_j - 1, u_j], with
    the window sums maintained as O(1) parity prefix sums.
    """

    def __init__(self, u_max: float = 20.0, step: float = RHO_STEP):
        n1 = round(1.0 / step)
        if n1 % 2 or abs(n1 * step - 1.0) > 1e-12:
            raise DomainError("step must divide 1 with an even quotient")
        self.step = step
        self.u_max = float(u_max)
        self._n1 = n1
        total = max(int(np.ceil(self.u_max / step)) + 1, 2 * n1 + 1)
        rho = np.ones(total)
        us = np.arange(n1 + 1, min(2 * n1, total - 1) + 1) * step
        rho[n1 + 1 : min(2 * n1, total - 1) + 1] = 1.0 - np.log(us)
        s_even = np.zeros(total)
        s_odd = np.zeros(total)
        s_even[0] = rho[0]
        for i in range(1, min(2 * n1, total - 1) + 1):
            s_even[i] = s_even[i - 1] + (rho[i] if i % 2 == 0 else 0.0)
            s_odd[i] = s_odd[i - 1] + (rho[i] if i % 2 else 0.0)
        h = step
        for j in range(2 * n1 + 1, total):
            lo = j - n1
            # Simpson over [u-1, u]: odd offsets have parity opposite to j
            if j % 2 == 0:
                a4 = s_odd[j - 1] - s_odd[lo - 1]
                b2 = s_even[j - 2] - s_even[lo]
            else:
                a4 = s_even[j - 1] - s_even[lo - 1]
                b2 = s_odd[j - 2] - s_odd[lo]
            rhs = (h / 3.0) * (rho[lo] + 4.0 * a4 + 2.0 * b2)
            rho[j] = rhs / (j * h - h / 3.0)
            s_even[j] = s_even[j - 1] + (rho[j] if j % 2 == 0 else 0.0)
            s_odd[j] = s_odd[j - 1] + (rho[j] if j % 2 else 0.0)
        self.samples = rho

    def __call__(self, u):
        u_arr = np.asarray(u, dtype=float)
        if np.any(u_arr < 0):
            raise DomainError("rho undefined for u < 0")
        if np.any(u_arr > self.u_max + 1e-12):
            raise DomainError(f"u beyond interpolant range {self.u_max}")
        t = u_arr / self.step
        i = np.clip(np.floor(t).astype(int), 1, len(self.samples) - 3)
        fr = t - i
        r = self.samples
        v = (
            (-fr * (fr - 1) * (fr - 2) / 6) * r[i - 1]
            + ((fr * fr - 1) * (fr - 2) / 2) * r[i]
            + (-fr * (fr + 1) * (fr - 2) / 2) * r[i + 1]
            + (fr * (fr * fr - 1) / 6) * r[i + 2]
        )
        v = np.where(u_arr <= 1.0, 1.0, v)
        return float(v) if np.isscalar(u) or u_arr.ndim == 0 else v

    def _segment_integral(self, a: int, b: int) -> float:
        """Integral of the samples over node range [a, b], b - a >= 1.

        Composite Simpson; an odd interval count spends its remainder on a
        3/8 panel, and a single interval uses the one-sided quadratic rule
        (the caller splits at kinks, so neighbours on one side are smooth).
        """
        h, r = self.step, self.samples
        m = b - a
        if m == 1:
            n1 = self._n1
            if a % n1 == 0:  # left edge sits on a delay-interval boundary
                return h / 12.0 * (5 * r[a] + 8 * r[a + 1] - r[a + 2])
            return h / 12.0 * (-r[a - 1] + 8 * r[a] + 5 * r[a + 1])
        if m % 2:
            tail = 3 * h / 8.0 * (r[b - 3] + 3 * r[b - 2] + 3 * r[b - 1] + r[b])
            return tail + (self._segment_integral(a, b - 3) if m > 3 else 0.0)
        seg = r[a : b + 1]
        return h / 3.0 * (seg[0] + seg[-1] + 4 * seg[1:-1:2].sum() + 2 * seg[2:-1:2].sum())

    def window_residual(self, u: float) -> float:
        """|u rho(u) - int_{u-1}^u rho| at a node; the quadrature splits the
        window at delay-interval boundaries, where rho loses smoothness."""
        n1 = self._n1
        j = round(u / self.step)
        lo = j - n1
        cuts = [lo] + [k for k in range((lo // n1 + 1) * n1, j, n1)] + [j]
        integral = sum(self._segment_integral(a, b) for a, b in zip(cuts, cuts[1:]))
        return abs(u * self.samples[j] - integral)


_rho_cache: dict = {}


def dickman_rho(u, u_max: float = 20.0, step: float = RHO_STEP):
    """rho(u); the backing interpolant is cached per (u_max, step)."""
    need = max(float(u_max), float(np.max(np.asarray(u))) if np.ndim(u) else float(u))
    key = (float(np.ceil(need)), step)
    if key not in _rho_cache:
        _rho_cache[key] = DickmanInterpolant(u_max=key[0], step=step)
    return _rho_cache[key](u)


@dataclass(frozen=True)
class SaddlePoint:
    x: float
    y: float
    alpha: float
    residual: float


def alpha_saddle(x: float, y: float) -> SaddlePoint:
    """alpha with sum_{p<=y} log p/(p^alpha - 1) = log x, by bisection."""
    if not 2 <= y <= x:
        raise DomainError(f"alpha_saddle needs 2 <= y <= x, got ({x}, {y})")
    ps = primes_up_to(int(y)).astype(float)
    logs = np.log(ps)
    target = log(x)

    def g(a: float) -> float:
        return float(np.sum(logs / (np.power(ps, a) - 1.0))) - target

    lo, hi = 1e-6, 1.999
    glo, ghi = g(lo), g(hi)
    if not (glo > 0 > ghi or glo == 0 or ghi == 0):
        raise ArithmeticError(
            f"alpha_saddle bracket failure: g({lo})={glo:.3g}, g({hi})={ghi:.3g}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    alpha = 0.5 * (lo + hi)
    return SaddlePoint(x=x, y=y, alpha=alpha, residual=abs(g(alpha)))


@dataclass(frozen=True)
class CompareRow:
    quantity: str
    params: str
    value: float


def tail_sum(Y: float, w: float, cap: int = ENUM_BOUND) -> tuple:
    """(sum of 1/n over w-smooth n in (Y, cap], Rankin bound on the rest)."""
    primes = primes_up_to(int(w)).tolist()
    total = 0.0
    for n in sorted(_enumerate_smooth(primes, cap)):
        if n > Y:
            total += 1.0 / n
    rem = cap ** -0.5
    for p in primes:
        rem /= 1.0 - p ** -0.5
    return total, rem


def smooth_compare(x: float, y: float, d_list=(), w: float = 5, Y_tail: float = 1e4,
                   tail_cap: int = ENUM_BOUND) -> list:
    """Diagnostic ratios; no pass/fail here, thresholds live in the test suite."""
    rows = []
    u = log(x) / log(y)
    psi_x = psi_exact(x, y).value
    rows.append(CompareRow("psi_over_x_rho", f"x={x:g},y={y:g}", psi_x / (x * dickman_rho(u))))
    alpha = alpha_saddle(x, y).alpha
    for d in d_list:
        ratio = psi_exact(x / d, y).value * d ** alpha / psi_x
        rows.append(CompareRow("psi_shift_ratio", f"x={x:g},y={y:g},d={d:g}", ratio))
    tsum, trem = tail_sum(Y_tail, w, tail_cap)
    rows.append(CompareRow("tail_sum", f"Y={Y_tail:g},w={w:g},cap={tail_cap:g}", tsum))
    rows.append(CompareRow("tail_remainder_bound", f"cap={tail_cap:g},w={w:g}", trem))
    return rows
