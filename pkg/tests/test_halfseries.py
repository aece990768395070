"""Half-series algebra: exact arithmetic, Euler/Bernoulli extraction."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from stardeform.errors import NonUnit
from stardeform.exact import QC
from stardeform.halfseries import (DEFAULT_TRUNC, FormalSeries, HalfSeries, bernoulli_numbers,
                                   bernoulli_numbers_formal, bernoulli_numbers_recurrence,
                                   euler_numbers, euler_numbers_formal, euler_numbers_recurrence,
                                   exp_series, hs_inverse, hs_mul, hs_to_tau_expression,
                                   zero_detection)


def rand_series(rng, K=12, base=0):
    cs = [QC(Fraction(rng.randint(-5, 5), rng.randint(1, 4))) for _ in range(K + 1)]
    if not cs[0]:
        cs[0] = QC(1)
    return HalfSeries.from_list(cs, base, K)


def convolution_oracle(a, b, K):
    out = [QC(0)] * (K + 1)
    for n in range(K + 1):
        for i in range(n + 1):
            out[n] = out[n] + a[i] * b[n - i]
    return out


def test_mul_identity_and_oracle():
    rng = random.Random(21)
    one = HalfSeries.one(12)
    for _ in range(10):
        f = rand_series(rng)
        assert hs_mul(f, one).coeffs == f.coeffs
        g = rand_series(rng)
        got = hs_mul(f, g)
        want = convolution_oracle(list(f.coeffs), list(g.coeffs), 12)
        assert list(got.coeffs) == want
        assert got.base_deg == f.base_deg + g.base_deg


def test_geometric_inverse():
    K = 16
    one_minus_q = HalfSeries.from_list([1, -1], 0, K)
    geo = hs_inverse(one_minus_q)
    assert all(c == QC(1) for c in geo.coeffs)
    assert list(hs_mul(one_minus_q, geo).coeffs) == [QC(1)] + [QC(0)] * K


def test_inverse_unique_and_involution():
    rng = random.Random(22)
    for _ in range(10):
        f = rand_series(rng)
        inv = hs_inverse(f)
        prod = hs_mul(f, inv)
        assert list(prod.coeffs) == [QC(1)] + [QC(0)] * f.trunc
        assert hs_inverse(inv).coeffs == f.coeffs
        # uniqueness: any g with f*g = 1 equals inv (solve forward)
        assert prod.base_deg == 0


def test_inverse_of_bernoulli_generator_has_minus_half():
    K = 10
    f = HalfSeries.from_list([QC(Fraction(1, math.factorial(n + 1))) for n in range(K + 1)], 0, K)
    inv = hs_inverse(f)
    assert inv.coeffs[1] == QC(Fraction(-1, 2))


def test_non_unit_raises():
    with pytest.raises(NonUnit):
        hs_inverse(HalfSeries.from_list([0, 1], 0, 8))


def test_euler_values():
    got = euler_numbers(5)
    assert got == [1, -1, 5, -61, 1385, -50521]
    assert got == euler_numbers_recurrence(5)


def test_bernoulli_values():
    got = bernoulli_numbers(5)
    assert got == [Fraction(1), Fraction(1, 6), Fraction(-1, 30),
                   Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66)]
    assert got == bernoulli_numbers_recurrence(5)


def test_spec_reading_of_euler_series():
    # the re-reading with the k>=1 sum (i.e. plain e^{2q} in the inverse)
    # produces cosh, not sech: its even coefficients are 2/(2n)!, which fails
    # the Euler recurrence -- the as-written series is the correct one
    K = 16
    one = HalfSeries.one(K)
    k_ge_1 = HalfSeries.from_list(
        [QC(0)] + [QC(Fraction(2 ** k, math.factorial(k))) for k in range(1, K + 1)], 0, K)
    lhs = hs_mul(exp_series(1, K), hs_inverse(one + k_ge_1)) \
        + hs_mul(exp_series(-1, K), hs_inverse(
            one + HalfSeries.from_list(
                [QC(0)] + [QC(Fraction((-2) ** k, math.factorial(k))) for k in range(1, K + 1)],
                0, K)))
    wrong_e2 = lhs.coeffs[2].re * 2
    assert wrong_e2 != Fraction(-1)   # oracle value is -1


def test_replacement_principle_cross_basis():
    assert euler_numbers(5) == euler_numbers_formal(5)
    assert bernoulli_numbers(5) == bernoulli_numbers_formal(5)


def test_formal_newton_inverse():
    rng = random.Random(23)
    K = 12
    cs = [QC(Fraction(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(K + 1)]
    cs[0] = QC(Fraction(3, 2))
    f = FormalSeries(cs, K)
    prod = f * f.inverse()
    assert [c for c in prod.coeffs] == [QC(1)] + [QC(0)] * K


def test_tau_expression_constant_and_geometric():
    W = [0.1, 0.7, -1.3]
    one = HalfSeries.one(10)
    vals = hs_to_tau_expression(one, 1.0, W)
    assert np.abs(vals - 1.0).max() < 1e-15

    # geometric series (base grading 2): matches the one-sided inverse values
    from stardeform.theta import geometric_inverse_sum
    K = 20
    geo = hs_inverse(HalfSeries.from_list([1, -1], 0, K))
    tau = 1.0
    # q here stands for e_*^{2iw}: evaluate with doubled mode index
    ws = np.asarray(W)
    acc = sum(geo.coeffs[n].to_complex() * np.exp(-(2 * n) ** 2 * tau / 4 + 2j * n * ws)
              for n in range(K + 1))
    want = np.asarray([geometric_inverse_sum(+1, "+", tau, w, K + 1) for w in W])
    assert np.abs(acc - want).max() < 1e-12


def test_euler_identity_on_grid():
    # both sides of the Euler generating identity as tau-expressions, Re tau = 2
    K = DEFAULT_TRUNC
    tau = 2.0
    W = [-1.0, -0.3, 0.2, 0.9]
    one = HalfSeries.one(K)
    lhs_series = hs_mul(exp_series(1, K), hs_inverse(one + exp_series(2, K))) \
        + hs_mul(exp_series(-1, K), hs_inverse(one + exp_series(-2, K)))
    lhs = hs_to_tau_expression(lhs_series, tau, W)
    E = euler_numbers(K // 2)
    ws = np.asarray(W)
    rhs = sum(complex(Fraction(E[n]) / math.factorial(2 * n))
              * np.exp(-(2 * n) ** 2 * tau / 4 + 2j * n * ws)
              for n in range(K // 2 + 1))
    assert np.abs(lhs - rhs).max() < 1e-10


def test_bernoulli_identity_on_grid():
    K = DEFAULT_TRUNC
    tau = 2.0
    W = [-0.8, 0.1, 0.6]
    plus = HalfSeries.from_list([QC(Fraction(1, math.factorial(n + 1))) for n in range(K + 1)],
                                0, K)
    minus = HalfSeries.from_list([QC(Fraction((-1) ** n, math.factorial(n + 1)))
                                  for n in range(K + 1)], 0, K)
    series = hs_inverse(plus).scale(Fraction(1, 2)) + hs_inverse(minus).scale(Fraction(1, 2))
    lhs = hs_to_tau_expression(series, tau, W)
    B = bernoulli_numbers(K // 2)
    ws = np.asarray(W)
    rhs = sum(complex(B[n] / Fraction(math.factorial(2 * n)))
              * np.exp(-(2 * n) ** 2 * tau / 4 + 2j * n * ws)
              for n in range(K // 2 + 1))
    assert np.abs(lhs - rhs).max() < 1e-10


def test_zero_detection():
    zero = HalfSeries.from_list([0] * 9, 0, 8)
    assert zero_detection(zero, 1.0)
    not_zero = HalfSeries.from_list([0, 0, Fraction(1, 7)], 0, 8)
    assert not zero_detection(not_zero, 1.0)


def test_field_axioms_random():
    rng = random.Random(24)
    for _ in range(8):
        f, g, h = (rand_series(rng, K=10) for _ in range(3))
        assert hs_mul(f, g).coeffs == hs_mul(g, f).coeffs
        assert hs_mul(hs_mul(f, g), h).coeffs == hs_mul(f, hs_mul(g, h)).coeffs
        s = HalfSeries(g.base_deg, tuple(a + b for a, b in zip(g.coeffs, h.coeffs)), 10)
        assert hs_mul(f, s).coeffs == tuple(
            a + b for a, b in zip(hs_mul(f, g).coeffs, hs_mul(f, h).coeffs))
