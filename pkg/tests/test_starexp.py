"""Gaussian-exponential family: products, exponential laws, sheets.

The series oracle here evaluates the defining sum
sum_k (tau/2)^k/k! f^(k) g^(k) truncated at k=60, following the derivative
recursion q_{k+1} = q_k' + (2 alpha w + beta) q_k for Gaussian factors, and is
kept independent of the closed-form product path.
"""

import cmath
import math
import random

import pytest

from stardeform.core import Poly
from stardeform.errors import SingularPoint, SingularProduct
from stardeform.starexp import (GaussPoly, PathParam, continue_sqrt, gauss_star, gp_sub_on_grid,
                                heat_apply, leg_path, quad_exponential_law, quadexp_star,
                                series_radius_probe, sheet_transport, star_exp_linear,
                                star_exp_quadratic, star_poly_gauss, translate_action,
                                triple_transport_sign)

W_GRID = [-2.0 + 0.25 * k for k in range(17)]


def series_star_oracle(f: GaussPoly, g: GaussPoly, tau, w, kmax=60):
    """Truncated defining sum; converges when |2 alpha_f alpha_g tau| is small."""
    qf, qg = f.poly, g.poly
    chain_f = Poly([f.beta, 2 * f.alpha])
    chain_g = Poly([g.beta, 2 * g.alpha])
    acc = qf(w) * qg(w)
    scale = 1.0
    for k in range(1, kmax + 1):
        qf = qf.deriv() + qf * chain_f
        qg = qg.deriv() + qg * chain_g
        scale = scale * tau / (2 * k)
        acc += scale * qf(w) * qg(w)
    return acc * f(w) / f.poly(w) / cmath.exp(0) * g(w) / g.poly(w) / (f.poly(w) * g.poly(w)) \
        if False else acc * _envelope(f, w) * _envelope(g, w)


def _envelope(h: GaussPoly, w):
    return h.sheet * h.pref * cmath.exp(h.logamp + h.alpha * w * w + h.beta * w)


def test_star_exp_linear_fields():
    g = star_exp_linear(0.0, 1.3)
    assert g.poly == Poly.const(1) and g.beta == 0 and abs(g.amp() - 1) < 1e-15

    s, a, tau = 1.4, 0.7, 0.9 + 0.2j
    g = star_exp_linear(2 * a, tau)
    assert abs(g.beta - 2 * a) < 1e-15
    assert abs(g.amp() - cmath.exp(a * a * tau)) < 1e-14

    # pure imaginary 2ni with Re tau > 0: amplitude exp(-n^2 tau) decays in n
    tau = 1.1
    amps = [abs(star_exp_linear(2j * n, tau).amp()) for n in range(1, 5)]
    for n, av in enumerate(amps, start=1):
        assert abs(av - math.exp(-n * n * tau)) < 1e-12 * av
    assert all(b < a for a, b in zip(amps, amps[1:]))


def test_linear_exponential_law_closed_form():
    rng = random.Random(11)
    for _ in range(25):
        s = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        t = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        tau = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        prod = gauss_star(star_exp_linear(s, tau), star_exp_linear(t, tau), tau)
        target = star_exp_linear(s + t, tau)
        assert prod.alpha == 0 and abs(prod.beta - target.beta) < 1e-15
        assert abs(prod.amp() / target.amp() - 1) < 1e-13


def test_heat_apply_matches_series():
    # spec-required validation of the closed heat-flow formula
    rng = random.Random(12)
    for _ in range(20):
        a = complex(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2))
        b = complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        theta = complex(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2))
        p = Poly([rng.uniform(-1, 1) for _ in range(rng.randint(1, 4))])
        g = GaussPoly(p, a, b)
        got = heat_apply(theta, g)
        for w in (-1.0, 0.3, 1.7):
            # series: sum theta^j / j! d^{2j} [p e^{aw^2+bw}]
            q = p
            chain = Poly([b, 2 * a])
            acc = q(w)
            scale = 1.0
            for j in range(1, 40):
                q = q.deriv() + q * chain
                q = q.deriv() + q * chain
                scale = scale * theta / j
                acc += scale * q(w)
            acc *= cmath.exp(a * w * w + b * w)
            assert abs(got(w) - acc) < 1e-10 * max(1.0, abs(acc))


def test_gauss_star_matches_series_oracle():
    rng = random.Random(13)
    for _ in range(40):
        a1 = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))
        a2 = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))
        tau = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        f = GaussPoly(Poly.const(1), a1, 0.0)
        g = GaussPoly(Poly.const(1), a2, 0.0)
        prod = gauss_star(f, g, tau)
        for w in (-1.0, 0.0, 0.8):
            want = series_star_oracle(f, g, tau, w)
            assert abs(prod(w) - want) < 1e-10 * max(1.0, abs(want))


def test_gauss_star_identity():
    g = GaussPoly(Poly([0.3, 1.2]), 0.15 - 0.1j, 0.4)
    one = GaussPoly(Poly.const(1), 0.0, 0.0)
    prod = gauss_star(g, one, 0.7 + 0.3j)
    assert gp_sub_on_grid(prod, g, W_GRID) < 1e-12 * g.max_abs_on(W_GRID)


def test_prodexp_product_of_linears():
    a, b, tau = 0.6, -0.35, 1.2 + 0.4j
    prod = gauss_star(star_exp_linear(2 * a, tau), star_exp_linear(2 * b, tau), tau)
    for w in W_GRID:
        want = cmath.exp(2 * (a + b) * w + 2 * a * b * tau)
        # normalize out the tau-expression amplitudes of each factor
        want *= cmath.exp(a * a * tau) * cmath.exp(b * b * tau)
        assert abs(prod(w) - want) < 1e-12 * abs(want)


def test_translate_action_consistency():
    tau = 0.8 + 0.3j
    s = 0.4 - 0.2j
    f = GaussPoly(Poly([1.0, 0.5]), 0.12, -0.3)
    via_translate = translate_action(s, f, tau)
    via_product = gauss_star(star_exp_linear(2 * s, tau), f, tau)
    assert gp_sub_on_grid(via_translate, via_product, W_GRID) \
        < 1e-12 * via_translate.max_abs_on(W_GRID)

    # polynomial case: e^{2sw+s^2 tau} p(w + s tau)
    p = Poly([0.2, -1.0, 0.7])
    fp = GaussPoly(p, 0.0, 0.0)
    acted = translate_action(s, fp, tau)
    for w in W_GRID:
        want = cmath.exp(2 * s * w + s * s * tau) * p(w + s * tau)
        assert abs(acted(w) - want) < 1e-12 * max(1.0, abs(want))

    # s = 0 is the identity
    assert gp_sub_on_grid(translate_action(0.0, f, tau), f, W_GRID) < 1e-15


def test_translate_action_callable():
    tau = 0.5
    s = 0.3
    f = lambda w: cmath.exp(-w * w)  # noqa: E731
    acted = translate_action(s, f, tau)
    for w in (-1.0, 0.2):
        want = cmath.exp(2 * s * w + s * s * tau) * cmath.exp(-(w + s * tau) ** 2)
        assert abs(acted(w) - want) < 1e-14


def test_intertwiner_consistency_linear():
    # pushing the linear exponential from tau to tau' reproduces the tau' expression
    s, tau1, tau2 = 0.9 - 0.4j, 0.6, 1.4 + 0.2j
    pushed = heat_apply((tau2 - tau1) / 4, star_exp_linear(s, tau1))
    target = star_exp_linear(s, tau2)
    assert abs(pushed.beta - target.beta) < 1e-15
    assert abs(pushed.amp() / target.amp() - 1) < 1e-14


def test_star_exp_quadratic_values_and_singularity():
    t, tau = 0.25, 1.1
    g = star_exp_quadratic(t, tau)
    assert g.sheet == 1
    for w in (0.0, 1.0):
        want = (1 - tau * t) ** -0.5 * cmath.exp(t / (1 - tau * t) * w * w)
        assert abs(g(w) - want) < 1e-14 * abs(want)
    assert abs(star_exp_quadratic(0.0, tau)(0.7) - 1) < 1e-15
    with pytest.raises(SingularPoint):
        star_exp_quadratic(1 / tau + 1e-9, tau)
    with pytest.raises(SingularPoint):
        # straight path from 0 to 2/tau passes through the branch point
        star_exp_quadratic(2 / tau, tau)


def test_quadratic_loop_flips_sheet():
    tau = 1.0 + 0.0j
    bp = 1 / tau
    # polygon from 0 around the branch point once, ending at t0 = 0.2
    t0 = 0.2
    loop = PathParam([0, t0, t0 - 0.6j, bp.real + 0.5 - 0.6j, bp.real + 0.5 + 0.6j,
                      t0 + 0.6j, t0])
    g = star_exp_quadratic(t0, tau, loop)
    assert g.sheet == -1
    direct = star_exp_quadratic(t0, tau)
    assert abs(abs(g(0.5)) - abs(direct(0.5))) < 1e-12
    assert abs(g(0.5) + direct(0.5)) < 1e-12  # same magnitude, opposite sign


def test_quad_exponential_law_samples():
    rng = random.Random(14)
    worst = 0.0
    for _ in range(100):
        s = 0.3 * cmath.exp(2j * math.pi * rng.random()) * rng.random()
        t = 0.3 * cmath.exp(2j * math.pi * rng.random()) * rng.random()
        tau = cmath.exp(2j * math.pi * rng.random()) * rng.random()
        try:
            worst = max(worst, quad_exponential_law(s, t, tau))
        except SingularPoint:
            continue
    assert worst < 1e-12

    assert quad_exponential_law(0.0, 0.0, 0.9) < 1e-15


def test_quad_law_sheet_mismatch_doubles():
    s, t, tau = 0.21, 0.12, 1.0
    es = star_exp_quadratic(s, tau)
    et = star_exp_quadratic(t, tau)
    est = star_exp_quadratic(s + t, tau)
    import dataclasses
    flipped = dataclasses.replace(est, sheet=-est.sheet)
    prod = gauss_star(es, et, tau)
    for w in (0.0, 0.9):
        assert abs(prod(w) - flipped(w)) > 1.9 * abs(est(w))


def test_quadexp_star_matches_gauss_star_generic():
    t, tau = 0.2, 0.9 + 0.1j
    g = GaussPoly(Poly.const(1), 0.11 - 0.05j, 0.3 + 0.2j, 0.8, 0.1)
    got = quadexp_star(t, tau, g)
    want = gauss_star(star_exp_quadratic(t, tau), g, tau)
    assert gp_sub_on_grid(got, want, W_GRID) < 1e-12 * want.max_abs_on(W_GRID)


def test_star_poly_gauss_matches_gauss_star():
    tau = 0.7 - 0.2j
    p = Poly([0.5, -1.0, 2.0, 1.0])
    g = GaussPoly(Poly([1.0, 0.2]), 0.1, -0.4)
    got = star_poly_gauss(p, g, tau)
    want = gauss_star(GaussPoly(p, 0.0, 0.0), g, tau)
    assert gp_sub_on_grid(got, want, W_GRID) < 1e-12 * want.max_abs_on(W_GRID)


def test_heat_singular_pullback_raises():
    tau = 1.0
    delta_like = GaussPoly(Poly.const(1), -1 / tau, 0.0)
    with pytest.raises(SingularProduct):
        gauss_star(delta_like, delta_like, tau)


def test_series_radius_probe_growth():
    r3 = series_radius_probe(3, 1.0, 16)
    # ratios grow without bound; monotone from n=5 on
    assert all(b > a for a, b in zip(r3[5:], r3[6:]))
    assert r3[-1] > r3[5] > 1.0
    # cumulative coefficient growth passes 1e3 well before n=15
    prod = 1.0
    for r in r3[:15]:
        prod *= r
    assert prod > 1e3

    r2 = series_radius_probe(2, 1.0, 16)
    assert max(r2) < 10.0  # bounded, consistent with radius 1/|tau|

    r0 = series_radius_probe(3, 0.0, 10)
    assert max(r0) <= 1.0 + 1e-12  # undeformed: c_n = 1/n!, ratios 1/(n+1)


def test_continue_sqrt_closed_loop_winding():
    # around 0 once: sqrt flips sign; not enclosing: no flip
    sq = PathParam([1, 1j, -1, -1j, 1])
    v = continue_sqrt(lambda z: z, sq)
    assert abs(v + 1) < 1e-6
    tri = PathParam([1, 2, 2 + 1j, 1])
    v2 = continue_sqrt(lambda z: z, tri)
    assert abs(v2 - 1) < 1e-6


def test_quadratic_family_maps_parameter_to_parameter():
    # the heat map between expression parameters carries the quadratic element
    # at (t, tau1) to the quadratic element at the same t and tau2
    t = 0.15
    tau1, tau2 = 0.8, 1.6 + 0.4j
    pushed = heat_apply((tau2 - tau1) / 4, star_exp_quadratic(t, tau1))
    target = star_exp_quadratic(t, tau2)
    assert gp_sub_on_grid(pushed, target, W_GRID) < 1e-12 * target.max_abs_on(W_GRID)
    assert pushed.sheet == target.sheet == 1


def test_triple_transport_has_mixed_flip_set():
    taus = (1.0, 2.0, 4.0)
    signs = {}
    for t in [0.05, 0.3, 0.35, 0.6, 0.9, 1.3, 2.0, 3.0, -0.5, 0.5j]:
        signs[t] = triple_transport_sign(t, taus)
    vals = set(signs.values())
    assert vals == {1, -1}, f"flip set degenerate: {signs}"
