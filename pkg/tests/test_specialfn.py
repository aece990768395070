"""Special-function families; scipy and generating-series Taylor expansions are
the independent oracles."""

import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import scipy.special as sps

from stardeform.core import Poly
from stardeform.exact import QC
from stardeform.specialfn import (BesselTable, bessel_addition_residual, bessel_generating_fft,
                                  bessel_i, bessel_j, bessel_symmetry_residual, bessel_table,
                                  bessel_unit_sum_residual, hermite_checks,
                                  hermite_convolution_scale, hermite_orthogonality,
                                  hermite_orthogonality_target, hermite_table,
                                  laguerre_from_quad_expansion, laguerre_orthogonality,
                                  laguerre_orthogonality_target, laguerre_star,
                                  legendre_classical, legendre_star, legendre_star_exact)

W_GRID = [-1.0 + 0.1 * k for k in range(21)]


# ----------------------------------------------------------------- Hermite

def test_hermite_first_entries():
    fam = hermite_table(3, -1.0)
    assert fam.table[0] == Poly.const(1)
    got = fam.table[1]
    assert abs(got.coeffs[1] - math.sqrt(2)) < 1e-15 and abs(got.coeffs[0]) < 1e-15


def test_hermite_h2_matches_generating_series():
    # oracle: Taylor of exp(sqrt2 t w - t^2/2) in t to order 2, coefficient * 2!
    w = 0.63
    f = lambda t: mpmath.exp(mpmath.sqrt(2) * t * w - t * t / 2)  # noqa: E731
    c2 = complex(mpmath.taylor(f, 0, 2)[2]) * 2
    fam = hermite_table(2, -1.0)
    assert abs(fam.table[2](w) - c2) < 1e-12
    # frozen: H_2(w, -1) = 2w^2 - 1
    assert abs(fam.table[2](w) - (2 * w * w - 1)) < 1e-12


def test_hermite_classical_table_scipy():
    # substituting s = t/sqrt2 into the physicists' generating function shows
    # H_n(w, -1) = 2^{-n/2} H_n^phys(w)
    fam = hermite_table(6, -1.0)
    for n in range(7):
        for w in (-0.8, 0.3, 1.1):
            want = sps.eval_hermite(n, w) * 2.0 ** (-n / 2)
            assert abs(fam.table[n](w) - want) < 1e-11 * max(1.0, abs(want))
    checks = hermite_checks(hermite_table(12, QC(-1)))
    assert all(checks.values())


def test_hermite_checks_rational_tau():
    fam = hermite_table(12, QC(Fraction(-3, 2), Fraction(1, 3)))
    assert all(hermite_checks(fam).values())


def test_hermite_convolution_needs_2n():
    tau = QC(Fraction(-1))
    for n in (1, 2, 3, 5):
        assert hermite_convolution_scale(n, tau) == n  # scale 2^n, not 1


def test_hermite_orthogonality_diagonal():
    tau = -1.0
    for n in (0, 1, 3):
        got = hermite_orthogonality(n, n, tau)
        want = hermite_orthogonality_target(n, tau)
        assert abs(got - want) < 1e-8 * abs(want)
    assert abs(hermite_orthogonality(0, 0, tau) - math.sqrt(math.pi)) < 1e-10
    assert abs(hermite_orthogonality(3, 3, tau) - 6 * math.sqrt(math.pi)) < 1e-7


def test_hermite_orthogonality_offdiagonal():
    assert abs(hermite_orthogonality(1, 0, -1.0)) < 1e-10
    assert abs(hermite_orthogonality(4, 2, -1.0)) < 1e-8
    # complex tau with negative real part
    got = hermite_orthogonality(2, 2, -1.0 + 0.4j)
    want = hermite_orthogonality_target(2, -1.0 + 0.4j)
    assert abs(got - want) < 1e-8 * abs(want)


# ------------------------------------------------------------------ Bessel

def test_bessel_j_vs_scipy():
    for n in (0, 1, 2, 5, -3):
        for z in (0.3, 2.0, 9.5, 14.0, 1.2 + 0.7j):
            if abs(z) > 10 and isinstance(z, complex):
                continue
            want = complex(sps.jv(n, z))
            assert abs(bessel_j(n, z) - want) < 1e-10 * max(1.0, abs(want))


def test_bessel_i_vs_scipy():
    for m in (0, 1, 4):
        for z in (0.2, -0.8, 0.3 + 0.1j):
            want = complex(sps.iv(m, z))
            assert abs(bessel_i(m, z) - want) < 1e-12 * max(1.0, abs(want))


def test_bessel_table_vs_fft_route():
    a, tau, N = 1.0, 1.0, 6
    tab = bessel_table(a, tau, N, W_GRID)
    fft = bessel_generating_fft(a, tau, N, W_GRID)
    for n in range(-N, N + 1):
        assert np.abs(np.asarray(tab.values[n]) - fft[n]).max() < 1e-12


def test_bessel_unit_sum_and_symmetry():
    tab = bessel_table(1.0, 1.0, 14, W_GRID)
    assert bessel_unit_sum_residual(tab) < 1e-10
    assert bessel_symmetry_residual(tab) < 1e-12


def test_bessel_tau_zero_recovers_classical():
    tab = bessel_table(1.0, 0.0, 4, [0.5, 1.0])
    for n in range(-4, 5):
        for i, w in enumerate((0.5, 1.0)):
            assert abs(tab.values[n][i] - complex(sps.jv(n, w))) < 1e-12


def test_bessel_addition_formula():
    resid = bessel_addition_residual(1.0, 1.0, 1.0, [-1.0, -0.4, 0.0, 0.3, 1.0], N=6)
    assert resid < 1e-9


# ---------------------------------------------------------------- Legendre

def test_legendre_p0_is_one():
    vals = legendre_star(0, 0.0, -1.0, W_GRID[:5])
    assert np.abs(np.asarray(vals[0]) - 1.0).max() < 1e-10


def test_legendre_small_tau_limit_classical():
    grid = [-0.6, -0.1, 0.4, 0.9]
    vals = legendre_star(4, 0.2, -1e-8, grid)
    for n in range(5):
        cl = legendre_classical(n)
        want = np.asarray([float(sum(Fraction(c) * Fraction(0) ** 0 for c in [0])) or 0.0
                           for _ in grid])
        want = np.asarray([complex(cl.to_complex()(w + 0.2)) for w in grid])
        assert np.abs(np.asarray(vals[n]) - want).max() < 1e-6


def test_legendre_exact_route_matches_quadrature():
    tau = -1.0
    grid = [-0.5, 0.3, 0.8]
    vals = legendre_star(4, 0.0, tau, grid)
    exact = legendre_star_exact(4, Fraction(-1))
    for n in range(5):
        pe = exact[n].map_coeffs(lambda c: float(c))
        want = np.asarray([pe(w) for w in grid])
        assert np.abs(np.asarray(vals[n]) - want).max() < 1e-9


def test_legendre_fd_oracle():
    # independent oracle: finite differences in t of the outer quadrature
    import stardeform.quadrature as q
    tau, a, n = -1.0, 0.0, 2
    grid = [0.3]

    def outer(t):
        U = math.sqrt(math.log(1e20)) + 2.0

        def f(u):
            s = u * u
            return 2.0 / math.sqrt(math.pi) * np.exp(
                tau * s * s * t * t - s * (1 - 2 * t * (grid[0] + a) + t * t))

        return q.integrate_segment(f, 0.0, U, n_panels=64)

    h = 1e-3
    d2 = (outer(h) - 2 * outer(0.0) + outer(-h)) / h ** 2 / 2  # [t^2] coefficient
    got = legendre_star(n, a, tau, grid)[n][0]
    assert abs(got - d2) < 1e-5 * max(1.0, abs(d2))


# ---------------------------------------------------------------- Laguerre

def test_laguerre_low_orders():
    tab = laguerre_star(2, Fraction(-1))
    assert tab[0] == Poly.const(Fraction(1))
    # L_1 = x + tau/2 evaluated at tau=-1
    assert tab[1] == Poly([Fraction(-1, 2), Fraction(1)])


def test_laguerre_top_derivative_normalization():
    tab = laguerre_star(6, Fraction(2, 3))
    for n, p in enumerate(tab):
        assert p.deriv(n) == Poly.const(Fraction(1))


def test_laguerre_classical_at_tau_minus_one():
    tab = laguerre_star(5, Fraction(-1))
    for n, p in enumerate(tab):
        pc = p.map_coeffs(float)
        for x in (0.2, 1.0, 2.5):
            want = (-1) ** n * sps.eval_genlaguerre(n, -0.5, x)
            assert abs(pc(x) - want) < 1e-10 * max(1.0, abs(want))


def test_laguerre_matches_quad_exponential_expansion():
    tau = 0.8 + 0.3j
    w = 0.7
    x = w * w
    tab = laguerre_star(6, tau)
    coef = laguerre_from_quad_expansion(6, tau, x)
    for n, p in enumerate(tab):
        assert abs(p.to_complex()(x) - coef[n]) < 1e-11 * max(1.0, abs(coef[n]))


def test_laguerre_cross_module_against_quad_exponential():
    # Cauchy coefficients of the starexp-module quadratic element itself
    from stardeform.starexp import star_exp_quadratic
    tau, w = 1.1, 0.6
    x = w * w
    r = 0.3 / abs(tau)
    n_nodes = 128
    ts = [r * np.exp(2j * np.pi * j / n_nodes) for j in range(n_nodes)]
    vals = np.asarray([star_exp_quadratic(t, tau)(w) for t in ts])
    coef = np.fft.fft(vals) / n_nodes
    tab = laguerre_star(5, tau)
    for n, p in enumerate(tab):
        want = coef[n] / r ** n
        assert abs(p.to_complex()(x) - want) < 1e-10 * max(1.0, abs(want))


def test_laguerre_orthogonality():
    tau = -1.0
    for n, m in ((0, 1), (2, 4), (1, 3)):
        assert abs(laguerre_orthogonality(n, m, tau)) < 1e-8
    for n in (0, 1, 3):
        got = laguerre_orthogonality(n, n, tau)
        want = laguerre_orthogonality_target(n, tau)
        assert abs(got - want) < 1e-8 * abs(want)
