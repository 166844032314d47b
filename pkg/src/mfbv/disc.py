"""Twisted character sums, discrepancies in progressions, and their averages.

Everything is driven by one pass over n <= x: the residue-class sums
B_q[r] = sum_{n<=x, n=r (q)} f(n) determine the progression term, the
coprime term, and every twisted sum S_f(x, chi) = sum_r conj(chi(r)) B_q[r]
simultaneously.  All accumulations run in fixed ascending-n order, so
totals are bit-reproducible.

The subtracted main terms are parameterized by a set Xi of primitive
characters: the plain discrepancy is the special case Xi = {trivial}, and
the top-k variant takes Xi from a ranked exceptional list.  Each report row
carries the exact lower-bound certificate max_{chi not in Xi_q} |S|/phi(q),
which the expansion identity forces below max_a |Delta|.
"""

from dataclasses import dataclass
from math import ceil, gcd, log

import numpy as np

from . import chars
from .arith import euler_phi, factorize, smooth_rough_split
from .errors import DomainError
from .multfn import MultFn

_CERT_SLACK = 1e-9


def _values(f: MultFn, N: int) -> np.ndarray:
    return f.values_up_to(N)


def _bucket(f: MultFn, x: int, q: int) -> np.ndarray:
    """B[r] = sum_{n <= x, n = r mod q} f(n), complex, length q."""
    fv = _values(f, x)
    rs = np.arange(x + 1) % q
    re = np.bincount(rs, weights=fv.real, minlength=q)
    im = np.bincount(rs, weights=fv.imag, minlength=q)
    return re + 1j * im


def _twisted_cumsum(f: MultFn, x: int, psi) -> np.ndarray:
    """Prefix sums S_f(N, psi) for N = 0..x (index N)."""
    fv = _values(f, x)
    r = psi.modulus
    if r == 1:
        terms = fv.copy()
    else:
        terms = fv * np.conj(psi.values[np.arange(x + 1) % r])
    terms[0] = 0
    return np.cumsum(terms)


@dataclass(frozen=True)
class CharSumGrid:
    f_name: str
    modulus: int
    char_index: int
    xs: tuple
    sums: tuple


def char_sum(f: MultFn, chi, xs) -> CharSumGrid:
    """S_f(X, chi) at each grid point X, from a single sieve pass."""
    xs = sorted(int(v) for v in xs)
    cs = _twisted_cumsum(f, xs[-1], chi)
    return CharSumGrid(
        f_name=f.name,
        modulus=chi.modulus,
        char_index=chi.index,
        xs=tuple(xs),
        sums=tuple(complex(cs[v]) for v in xs),
    )


def sigma(f: MultFn, x: float, z: float, psi) -> float:
    """max over integers N in (x/z, x] of |S_f(N, psi)| / N.

    S_f is constant on [N, N+1), so the quotient over real X is maximized
    at integer left endpoints; the range below the first integer above x/z
    contributes no attained value.
    """
    if z <= 1:
        raise DomainError(f"sigma: z={z} <= 1 gives an empty range")
    xi = int(x)
    n0 = int(x / z) + 1
    if n0 > xi:
        raise DomainError(f"sigma: empty integer range ({x/z}, {x}]")
    cs = _twisted_cumsum(f, xi, psi)
    ns = np.arange(n0, xi + 1)
    return float(np.max(np.abs(cs[ns]) / ns))


@dataclass(frozen=True)
class ExceptionalEntry:
    char: object  # primitive DirichletCharacter
    conductor: int
    score: float


@dataclass(frozen=True)
class ExceptionalSet:
    x: float
    z: float
    conductor_cutoff: int
    entries: tuple  # ExceptionalEntry, scores nonincreasing

    def top(self, k: int) -> tuple:
        return self.entries[:k]

    def threshold(self, B: float) -> tuple:
        """Entries with score >= (log x)^(-B)."""
        cut = log(self.x) ** (-B)
        return tuple(e for e in self.entries if e.score >= cut)


def ordered_exceptionals(f: MultFn, x: float, conductor_cutoff: int | None = None,
                         z: float | None = None) -> ExceptionalSet:
    """All primitive characters of conductor <= cutoff ranked by sigma score.

    Ties break by (conductor, character index) ascending; the trivial
    character of conductor 1 participates in the ranking.
    """
    if conductor_cutoff is None:
        conductor_cutoff = max(1, ceil(log(x)))
    if z is None:
        z = x ** 0.5
    entries = []
    for r in range(1, conductor_cutoff + 1):
        for psi in chars.character_group(r):
            if psi.is_primitive:
                entries.append(
                    ExceptionalEntry(char=psi, conductor=r, score=sigma(f, x, z, psi))
                )
    entries.sort(key=lambda e: (-e.score, e.conductor, e.char.index))
    return ExceptionalSet(x=x, z=z, conductor_cutoff=conductor_cutoff,
                          entries=tuple(entries))


def _xi_for_variant(variant, exceptional: ExceptionalSet | None, xi, k: int | None):
    if variant == "plain":
        return [chars.group(1).char(0)]
    if variant == "topk":
        if exceptional is None or k is None:
            raise DomainError("topk variant needs an ExceptionalSet and k")
        return [e.char for e in exceptional.top(k)]
    if variant == "xi":
        if xi is None:
            raise DomainError("xi variant needs the character set")
        return list(xi)
    raise DomainError(f"unknown variant {variant!r}")


def _induced_indices(xi_list, q: int) -> list:
    """Indices (within group(q)) of characters induced by members of Xi."""
    out = []
    for psi in xi_list:
        if q % psi.modulus == 0:
            out.append(chars.induce(psi, q).index)
    return sorted(set(out))


def delta(f: MultFn, x: float, q: int, a: int, variant: str = "plain", *,
          exceptional: ExceptionalSet | None = None, xi=None, k: int | None = None) -> complex:
    """Discrepancy of f at a (mod q) with the variant's main term removed."""
    if gcd(a, q) != 1:
        raise DomainError(f"delta: gcd({a}, {q}) != 1")
    xi_list = _xi_for_variant(variant, exceptional, xi, k)
    xint = int(x)
    B = _bucket(f, xint, q)
    G = chars.group(q)
    phi = G.phi
    val = complex(B[a % q])
    for idx in _induced_indices(xi_list, q):
        ch = G.char(idx)
        s_chi = complex(np.sum(np.conj(ch.values) * B))
        val -= ch(a) * s_chi / phi
    return val


def expansion_check(f: MultFn, x: float, q: int) -> float:
    """max over units a of |Delta(f,x;q,a) - (1/phi) sum_{chi != chi0} chi(a) S_f(x,chi)|."""
    xint = int(x)
    B = _bucket(f, xint, q)
    G = chars.group(q)
    phi = G.phi
    V = np.vstack([c.values for c in G.chars()]) if q > 1 else np.ones((1, 1), dtype=complex)
    S = np.conj(V) @ B
    coprime_total = complex(np.sum(B[G._unit_mask]))
    worst = 0.0
    units = np.flatnonzero(G._unit_mask)
    for a in units:
        lhs = B[a] - coprime_total / phi
        rhs = complex(np.sum(V[1:, a] * S[1:]) / phi) if phi > 1 else 0.0
        # index 0 is principal only when exponents are all zero = char(0)
        worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass(frozen=True)
class ReportRow:
    q: int
    q_s: int
    q_r: int
    a_argmax: int
    abs_delta: float
    certificate: float


@dataclass(frozen=True)
class DiscrepancyReport:
    variant: str
    x: float
    w: int
    rows: tuple
    total: float

    def csv_rows(self):
        for r in self.rows:
            yield (r.q, r.q_s, r.q_r, r.a_argmax, r.abs_delta, r.certificate,
                   self.variant, self.x)


def _admissible(q: int, modulus_filter) -> bool:
    if modulus_filter is None or modulus_filter == "all":
        return True
    if modulus_filter[0] == "primes":
        return factorize(q).von_mangoldt > 0 and len(factorize(q).factors) == 1 \
            and factorize(q).factors[0][1] == 1
    if modulus_filter[0] == "smooth":
        w = modulus_filter[1]
        return all(p <= w for p, _ in factorize(q).factors)
    raise DomainError(f"unknown modulus filter {modulus_filter!r}")


def bv_average(f: MultFn, x: float, q_lo: float, q_hi: float, variant: str = "plain", *,
               exceptional: ExceptionalSet | None = None, xi=None, k: int | None = None,
               modulus_filter=None, residue=("max",), w: int | None = None) -> DiscrepancyReport:
    """Per-modulus table of max_a |Delta_variant| over q in (q_lo, q_hi].

    residue ("max",) scans all units a mod q; ("fixed", a) evaluates one
    class and skips moduli sharing a factor with a.  Every row asserts the
    exact certificate inequality max_a |Delta_Xi| >= max_{chi not in Xi_q}
    |S_f(x, chi)| / phi(q).
    """
    qs = [q for q in range(int(q_lo) + 1, int(q_hi) + 1) if _admissible(q, modulus_filter)]
    if not qs:
        raise DomainError(f"bv_average: no admissible moduli in ({q_lo}, {q_hi}]")
    if w is None:
        w = max(2, ceil(log(x)))
    xi_list = _xi_for_variant(variant, exceptional, xi, k)
    xint = int(x)
    _values(f, xint)  # one sieve pass, shared by every row
    rows = []
    for q in qs:
        if residue[0] == "fixed" and gcd(residue[1], q) != 1:
            continue
        rows.append(_report_row(f, xint, q, xi_list, residue, w))
    total = 0.0
    for r in rows:  # fixed ascending-q order
        total += r.abs_delta
    return DiscrepancyReport(variant=variant, x=x, w=w, rows=tuple(rows), total=total)


def _report_row(f: MultFn, x: int, q: int, xi_list, residue, w: int) -> ReportRow:
    B = _bucket(f, x, q)
    G = chars.group(q)
    phi = G.phi
    units = np.flatnonzero(G._unit_mask) if q > 1 else np.array([0])
    V = np.vstack([c.values for c in G.chars()]) if q > 1 else np.ones((1, 1), dtype=complex)
    S = np.conj(V) @ B
    in_xi = _induced_indices(xi_list, q)
    D = B[units].astype(complex)
    for idx in in_xi:
        D -= V[idx, units] * S[idx] / phi
    if residue[0] == "max":
        absD = np.abs(D)
        pos = int(np.argmax(absD))
        a_star, best = int(units[pos]), float(absD[pos])
    elif residue[0] == "fixed":
        a = residue[1] % q
        pos = int(np.searchsorted(units, a))
        a_star, best = a, float(abs(D[pos]))
    else:
        raise DomainError(f"unknown residue mode {residue!r}")
    outside = np.setdiff1d(np.arange(phi), np.array(in_xi, dtype=int))
    cert = float(np.max(np.abs(S[outside])) / phi) if len(outside) else 0.0
    if residue[0] == "max":
        assert best >= cert - _CERT_SLACK, (
            f"certificate inequality violated at q={q}: {best} < {cert}"
        )
    split = smooth_rough_split(q, w)
    return ReportRow(q=q, q_s=split.q_s, q_r=split.q_r, a_argmax=a_star,
                     abs_delta=best, certificate=cert)


def h_convolution_check(f: MultFn, q: int, psi, x: float) -> float:
    """|S_f(x, chi) - sum_m h(m) S_f(x/m, psi)| for chi induced by psi mod r, r | q.

    h is multiplicative, supported on powers of primes dividing q but not r,
    and killed against f*conj(psi): sum_{j<=k} h(p^j)(f conj(psi))(p^{k-j}) = 0.
    """
    r = psi.modulus
    if q % r != 0:
        raise DomainError(f"h_convolution_check: {r} does not divide {q}")
    xint = int(x)
    chi = chars.induce(psi, q)
    s_chi = complex(_twisted_cumsum(f, xint, chi)[xint])
    cs_psi = _twisted_cumsum(f, xint, psi)
    ps = [p for p, _ in factorize(q).factors if r % p != 0]
    h_pk = {}
    for p in ps:
        kmax = 0
        while p ** (kmax + 1) <= xint:
            kmax += 1
        fp = [1 + 0j] + [
            f.prime_power_value(p, j) * np.conj(psi(pow(p, j, r) if r > 1 else 0))
            for j in range(1, kmax + 1)
        ]
        hv = [1 + 0j]
        for kk in range(1, kmax + 1):
            hv.append(-sum(hv[j] * fp[kk - j] for j in range(kk)))
        h_pk[p] = hv
    rhs = 0j
    stack = [(0, 1, 1 + 0j)]
    while stack:
        i, m, hm = stack.pop()
        rhs += hm * cs_psi[xint // m]
        for j in range(i, len(ps)):
            p = ps[j]
            mm, kk = m * p, 1
            while mm <= xint:
                stack.append((j + 1, mm, hm * h_pk[p][kk]))
                mm *= p
                kk += 1
    return abs(s_chi - rhs)


def sw_diagnostic(f: MultFn, x: float, q: int, a: int) -> float:
    """max over 2 <= X <= x of |Delta(f,X;q,a)| * log(X) / X (report only)."""
    if gcd(a, q) != 1:
        raise DomainError(f"sw_diagnostic: gcd({a}, {q}) != 1")
    xint = int(x)
    fv = _values(f, xint)
    ns = np.arange(xint + 1)
    prog = np.cumsum(np.where(ns % q == a % q, fv, 0))
    cop = np.cumsum(np.where(np.gcd(ns, q) == 1, fv, 0))
    phi = euler_phi(q)
    X = np.arange(2, xint + 1)
    dvals = np.abs(prog[X] - cop[X] / phi)
    return float(np.max(dvals * np.log(X) / X))
