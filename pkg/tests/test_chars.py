import math
from math import gcd

import numpy as np
import pytest

from mfbv import chars
from mfbv.arith import euler_phi
from mfbv.chars import CharacterGroup
from mfbv.errors import DomainError


def test_group_sizes_match_phi():
    for q in range(1, 2001):
        assert CharacterGroup(q).phi == euler_phi(q)


def test_group_size_sample_to_1e4():
    for q in list(range(2001, 10**4 + 1, 137)) + [9996, 9998, 10**4, 8192, 6561]:
        assert CharacterGroup(q).phi == euler_phi(q)


def test_q5_values_are_fourth_roots():
    g = chars.character_group(5)
    assert len(g) == 4
    vals = np.concatenate([c.values[[1, 2, 3, 4]] for c in g])
    assert np.all(np.abs(np.abs(vals) - 1) < 1e-12)
    assert np.all(np.abs(vals**4 - 1) < 1e-12)


def test_q8_orthogonality_example():
    g = chars.character_group(8)
    s = sum(c(3) * np.conj(c(5)) for c in g)
    assert abs(s) < 1e-12


def test_q1_trivial_character():
    g = chars.character_group(1)
    assert len(g) == 1
    chi = g[0]
    assert chi(0) == 1 and chi(17) == 1
    assert chi.is_primitive and chi.is_principal and chi.conductor == 1


def _orthogonality_gaps(q):
    G = chars.group(q)
    units = np.flatnonzero(G._unit_mask) if q > 1 else np.array([0])
    V = np.vstack([c.values for c in G.chars()])[:, units]
    n = G.phi
    g1 = np.max(np.abs(V @ V.conj().T - n * np.eye(n)))  # sum over a of chi(a) conj(psi(a))
    g2 = np.max(np.abs(V.conj().T @ V - n * np.eye(n)))  # sum over chi of conj(chi(a)) chi(b)
    return max(float(g1), float(g2))


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 8, 9, 12, 16, 24, 36, 37, 40, 60])
def test_orthogonality_small(q):
    assert _orthogonality_gaps(q) < 1e-12


def test_completely_multiplicative_on_units():
    for q in (5, 8, 12, 45):
        for chi in chars.character_group(q):
            for m in range(1, q):
                for n in range(1, q):
                    if gcd(m, q) == 1 and gcd(n, q) == 1:
                        assert abs(chi(m * n) - chi(m) * chi(n)) < 1e-12


def test_conductor_examples():
    principal12 = chars.group(12).char(0)
    d, psi = chars.conductor_and_primitive(principal12)
    assert d == 1 and psi.modulus == 1

    # the real nonprincipal character mod 9 factors through 3
    g9 = chars.character_group(9)
    real_nonprin = [c for c in g9 if not c.is_principal
                    and np.all(np.abs(c.values.imag) < 1e-12)]
    assert len(real_nonprin) == 1
    chi = real_nonprin[0]
    assert chi.conductor == 3
    d, psi = chars.conductor_and_primitive(chi)
    assert psi.modulus == 3 and psi.is_primitive
    for n in range(1, 9):
        if gcd(n, 9) == 1:
            assert abs(chi(n) - psi(n % 3)) < 1e-12

    # Legendre symbol mod 7 is primitive
    g7 = chars.character_group(7)
    legendre = [c for c in g7 if not c.is_principal
                and np.all(np.abs(c.values.imag) < 1e-12)][0]
    assert legendre.is_primitive and legendre.conductor == 7


def test_induce_examples():
    psi3 = [c for c in chars.character_group(3) if not c.is_principal][0]
    chi = chars.induce(psi3, 12)
    for n in range(12):
        expect = psi3(n % 3) if gcd(n, 12) == 1 else 0
        assert abs(chi(n) - expect) < 1e-12

    trivial = chars.group(1).char(0)
    chi0 = chars.induce(trivial, 10)
    assert chi0.is_principal

    with pytest.raises(DomainError):
        chars.induce(psi3, 10)  # 3 does not divide 10


def test_induce_conductor_roundtrip():
    for r in range(1, 31):
        prims = [c for c in chars.character_group(r) if c.is_primitive]
        for q in range(r, 301, r):
            for psi in prims:
                chi = chars.induce(psi, q)
                d, back = chars.conductor_and_primitive(chi)
                assert d == r
                assert back.modulus == r and back.index == psi.index


def test_every_char_is_induced_from_its_primitive_part():
    for q in (12, 24, 45, 56):
        for chi in chars.character_group(q):
            d, psi = chars.conductor_and_primitive(chi)
            again = chars.induce(psi, q)
            assert np.max(np.abs(again.values - chi.values)) < 1e-12


def test_gauss_g_prime_modulus():
    for q in (5, 7, 11, 13):
        for chi in chars.character_group(q):
            gv = chars.gauss_g(chi)
            if chi.is_principal:
                assert abs(gv - (-1.0 / (q - 1))) < 1e-12
            else:
                assert abs(abs(gv) - math.sqrt(q) / (q - 1)) < 1e-12


def test_gauss_reconstruction():
    for q in (7, 11):
        group = chars.character_group(q)
        gvals = [chars.gauss_g(c) for c in group]
        for n in range(1, q):
            rec = sum(gv * c(n) for gv, c in zip(gvals, group))
            assert abs(rec - np.exp(2j * np.pi * n / q)) < 1e-12


def test_group_bound():
    from mfbv.errors import ResourceError

    with pytest.raises(ResourceError):
        CharacterGroup(10**6 + 1)
    with pytest.raises(DomainError):
        CharacterGroup(0)
