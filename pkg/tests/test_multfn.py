import math
import random

import numpy as np
import pytest

from mfbv import arith, chars, multfn
from mfbv.errors import DomainError


def test_builtin_examples():
    assert multfn.liouville()(12) == -1
    assert multfn.mobius()(12) == 0
    f = multfn.smooth_restricted(multfn.unit(), 3)
    assert f(10) == 0
    assert f(12) == 1


def test_one_bounded_enforced():
    bad = multfn.MultFn(lambda p, k: 2.0, "bad")
    with pytest.raises(DomainError):
        bad(2)
    with pytest.raises(DomainError):
        multfn.with_overrides(multfn.unit(), {5: 3.0})


def test_values_match_pointwise():
    for f in (multfn.mobius(), multfn.liouville(), multfn.random_pm1(11)):
        vals = f.values_up_to(3000)
        for n in random.Random(0).sample(range(1, 3001), 200):
            assert vals[n] == f(n)


def test_multiplicativity_random_pairs():
    rng = random.Random(42)
    fns = [multfn.mobius(), multfn.liouville(), multfn.random_pm1(5)]
    vals = [f.values_up_to(10**5) for f in fns]
    pairs = 0
    while pairs < 10**4:
        m = rng.randrange(2, 1000)
        n = rng.randrange(2, 10**5 // m)
        if math.gcd(m, n) != 1:
            continue
        pairs += 1
        for v in vals:
            assert v[m * n] == v[m] * v[n]  # exact: values in {0, +-1}


def test_multiplicativity_character_fn():
    chi = chars.group(7).char(2)
    f = multfn.character_fn(chi)
    v = f.values_up_to(5000)
    rng = random.Random(1)
    for _ in range(2000):
        m, n = rng.randrange(2, 70), rng.randrange(2, 70)
        if math.gcd(m, n) == 1:
            assert abs(v[m * n] - v[m] * v[n]) < 1e-12


def test_random_pm1_call_order_independent():
    f1 = multfn.random_pm1(9)
    f2 = multfn.random_pm1(9)
    _ = f2(997)  # evaluate out of order first
    assert [f1(n) for n in range(1, 200)] == [f2(n) for n in range(1, 200)]


def test_lambda_f_completely_multiplicative():
    f = multfn.random_pm1(3)
    table = multfn.lambda_f(f, 500)
    for p in (2, 3, 5, 7, 11):
        for k in range(1, 6):
            if p**k > 500:
                break
            expect = f(p) ** k * math.log(p)
            assert abs(table(p**k) - expect) < 1e-12


def test_lambda_f_unit_is_von_mangoldt():
    table = multfn.lambda_f(multfn.unit(), 1000)
    for n in range(2, 1000):
        assert abs(table(n) - arith.factorize(n).von_mangoldt) < 1e-12


def test_lambda_f_mobius():
    table = multfn.lambda_f(multfn.mobius(), 200)
    for p in (2, 3, 5):
        for k in (1, 2, 3):
            if p**k <= 200:
                assert abs(table(p**k) + math.log(p)) < 1e-12


def test_lambda_recursion_invariant():
    f = multfn.random_pm1(17)
    table = multfn.lambda_f(f, 2000)
    for p in (2, 3, 5, 7, 11, 13):
        kmax = int(math.log(2000) / math.log(p))
        for k in range(1, kmax + 1):
            lhs = f.prime_power_value(p, k) * k * math.log(p)
            rhs = sum(table(p**j) * f.prime_power_value(p, k - j) if k > j else table(p**j)
                      for j in range(1, k + 1))
            assert abs(lhs - rhs) < 1e-12


def test_reconstruct_f_from_lambda():
    f = multfn.random_pm1(23)
    table = multfn.lambda_f(f, 1000)
    g = multfn.from_prime_lambda(lambda p, k: table(p**k), "rebuilt")
    for n in range(1, 1000):
        assert abs(g(n) - f(n)) < 1e-12


def test_class_c_examples():
    assert multfn.class_c_check(multfn.mobius(), 500).in_class
    assert multfn.class_c_check(multfn.liouville(), 500).in_class
    tbl = {(2, 1): 1.0, (2, 2): 1.0, (2, 3): -1.0}
    f = multfn.MultFn(lambda p, k: tbl.get((p, k), 1.0), "flip8")
    w = multfn.class_c_check(f, 16)
    assert not w.in_class
    assert w.first_violation == 8


def test_class_c_implies_bounded():
    f = multfn.random_pm1(31)
    assert multfn.class_c_check(f, 2000).in_class
    assert float(np.max(np.abs(f.values_up_to(2000)))) <= 1 + 1e-9


def test_harper_prime_and_four():
    u = multfn.unit()
    for p in (2, 3, 5, 97):
        assert multfn.harper_residual(u, p) < 1e-12
    assert multfn.harper_residual(u, 4) < 1e-12


def test_harper_random_class_c():
    f = multfn.random_pm1(7)
    table = multfn.lambda_f(f, 5000)
    worst = max(multfn.harper_residual(f, n, table) for n in range(2, 5001))
    assert worst < 1e-9


def test_overrides_localized():
    base = multfn.unit()
    f = multfn.with_overrides(base, {997: -1.0})
    assert f(997) == -1
    assert f(2 * 997) == -1  # prime override participates multiplicatively
    assert f(996) == 1
    v = f.values_up_to(2500)
    assert v[997] == -1 and v[1994] == -1 and v[999] == 1
