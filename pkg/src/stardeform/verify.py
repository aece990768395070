"""Named identity suites behind `stardeform verify`.

Each check returns a record {anchor, description, residual, tol, passed};
anchors are stable identity slugs for machine consumption.  Exact checks
(rational arithmetic) report residual 0.0 on success.  Suites are
deterministic for a fixed seed.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import core, distributions, halfseries, residue, specialfn, starexp, theta, vertex
from .exact import QC


@dataclass
class RunConfig:
    tau: complex = 1.0 + 0.0j
    nu: complex = 1.0 + 0.0j
    tol: float = 1e-10
    trunc: int = 24
    grid: tuple = (-2.0, 2.0, 17)
    fmt: str = "json"
    seed: int = 7

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.grid[2] < 2:
            raise ValueError("grid count must be >= 2")

    def w_grid(self):
        lo, hi, n = self.grid
        return [lo + (hi - lo) * k / (n - 1) for k in range(int(n))]


def _rec(anchor: str, description: str, residual: float, tol: float) -> dict:
    return {"anchor": anchor, "description": description,
            "residual": float(residual), "tol": float(tol),
            "passed": bool(residual <= tol)}


def _bool_rec(anchor: str, description: str, ok: bool) -> dict:
    return {"anchor": anchor, "description": description,
            "residual": 0.0 if ok else 1.0, "tol": 0.0, "passed": bool(ok)}


def _rand_qc(rng, num=6, den=5):
    return QC(Fraction(rng.randint(-num, num), rng.randint(1, den)),
              Fraction(rng.randint(-num, num), rng.randint(1, den)))


def _rand_poly(rng, deg):
    return core.Poly([_rand_qc(rng) for _ in range(deg + 1)])


def suite_core(cfg: RunConfig) -> list:
    rng = random.Random(cfg.seed)
    out = []
    worst_comm = worst_assoc = worst_cocycle = worst_hom = 0
    for _ in range(50):
        f = _rand_poly(rng, rng.randint(0, 8))
        g = _rand_poly(rng, rng.randint(0, 8))
        h = _rand_poly(rng, rng.randint(0, 6))
        t1, t2, t3 = (_rand_qc(rng) for _ in range(3))
        if core.star_product(f, g, t1) != core.star_product(g, f, t1):
            worst_comm = 1
        if core.star_product(core.star_product(f, g, t1), h, t1) != \
                core.star_product(f, core.star_product(g, h, t1), t1):
            worst_assoc = 1
        if core.intertwine(f, t1, t3) != \
                core.intertwine(core.intertwine(f, t1, t2), t2, t3):
            worst_cocycle = 1
        lhs = core.intertwine(core.star_product(f, g, t1), t1, t2)
        rhs = core.star_product(core.intertwine(f, t1, t2),
                                core.intertwine(g, t1, t2), t2)
        if lhs != rhs:
            worst_hom = 1
    out.append(_rec("product-commutativity", "deformed product commutes (exact)",
                    worst_comm, 0.0))
    out.append(_rec("product-associativity", "deformed product associates (exact)",
                    worst_assoc, 0.0))
    out.append(_rec("intertwiner-cocycle", "parameter-change maps compose (exact)",
                    worst_cocycle, 0.0))
    out.append(_rec("intertwiner-homomorphism", "parameter change is an algebra map (exact)",
                    worst_hom, 0.0))
    tau = QC(Fraction(2, 3), Fraction(1, 5))
    p = core.Poly.const(QC(1))
    rec_ok = True
    for n in range(12):
        nxt = core.Poly.x() * p + p.deriv().scale(tau / 2)
        if nxt != core.w_star_power(n + 1, tau):
            rec_ok = False
        p = nxt
    out.append(_bool_rec("deformed-power-recurrence",
                         "P_{n+1} = w P_n + (tau/2) P_n' (exact)", rec_ok))
    f = core.Poly([0.3, -1.2, 0.0, 2.0, 1.0])
    want = core.infinitesimal_intertwiner(f)
    fd = (core.intertwine(f, 0.4, 0.4 + 1e-6) - f).scale(1e6)
    resid = max((abs(c) for c in (fd - want).coeffs), default=0.0)
    out.append(_rec("infinitesimal-intertwiner", "quarter second derivative vs finite difference",
                    resid, 1e-4))
    return out


def suite_starexp(cfg: RunConfig) -> list:
    rng = random.Random(cfg.seed)
    out = []
    worst = 0.0
    for _ in range(20):
        s = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        t = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        tau = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        prod = starexp.gauss_star(starexp.star_exp_linear(s, tau),
                                  starexp.star_exp_linear(t, tau), tau)
        target = starexp.star_exp_linear(s + t, tau)
        worst = max(worst, abs(prod.beta - target.beta),
                    abs(prod.amp() / target.amp() - 1))
    out.append(_rec("linear-exponential-law", "product of linear exponentials in closed form",
                    worst, 1e-12))

    worst = 0.0
    for _ in range(40):
        s = 0.3 * cmath.exp(2j * math.pi * rng.random()) * rng.random()
        t = 0.3 * cmath.exp(2j * math.pi * rng.random()) * rng.random()
        tau = cmath.exp(2j * math.pi * rng.random()) * rng.random()
        try:
            worst = max(worst, starexp.quad_exponential_law(s, t, tau))
        except Exception:
            continue
    out.append(_rec("quadratic-exponential-law", "square-root composition law on sheets",
                    worst, 1e-12))

    worst = 0.0
    for _ in range(30):
        a1 = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))
        a2 = complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3))
        tau = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        f = starexp.GaussPoly(core.Poly.const(1), a1, 0.0)
        g = starexp.GaussPoly(core.Poly.const(1), a2, 0.0)
        prod = starexp.gauss_star(f, g, tau)
        from .numeric import cexp
        for w in (-0.8, 0.5):
            qf, qg = f.poly, g.poly
            cf, cg = core.Poly([f.beta, 2 * f.alpha]), core.Poly([g.beta, 2 * g.alpha])
            acc = qf(w) * qg(w)
            scl = 1.0
            for k in range(1, 60):
                qf = qf.deriv() + qf * cf
                qg = qg.deriv() + qg * cg
                scl = scl * tau / (2 * k)
                acc += scl * qf(w) * qg(w)
            acc *= cexp(f.alpha * w * w) * cexp(g.alpha * w * w)
            worst = max(worst, abs(prod(w) - acc) / max(1.0, abs(acc)))
    out.append(_rec("gaussian-product-series-oracle",
                    "closed Gaussian product vs truncated defining sum", worst, 1e-10))

    pushed = starexp.heat_apply((1.4 + 0.2j - 0.6) / 4, starexp.star_exp_linear(0.9 - 0.4j, 0.6))
    target = starexp.star_exp_linear(0.9 - 0.4j, 1.4 + 0.2j)
    resid = max(abs(pushed.beta - target.beta), abs(pushed.amp() / target.amp() - 1))
    out.append(_rec("intertwiner-consistency", "parameter change of linear exponentials",
                    resid, 1e-12))

    loop = starexp.PathParam([0, 0.2, 0.2 - 0.6j, 1.7 - 0.6j, 1.7 + 0.6j, 0.2 + 0.6j, 0.2])
    g = starexp.star_exp_quadratic(0.2, 1.0, loop)
    out.append(_bool_rec("branch-loop-sheet-flip",
                         "continuation once around the branch point flips the sheet",
                         g.sheet == -1))

    signs = {starexp.triple_transport_sign(t, (1.0, 2.0, 4.0))
             for t in (0.05, 0.3, 0.6, 1.3, 0.5j)}
    out.append(_bool_rec("two-to-two-monodromy",
                         "sheet transport round trip is neither identity nor global flip",
                         signs == {1, -1}))

    r3 = starexp.series_radius_probe(3, 1.0, 16)
    growth = 1.0
    for r in r3[:15]:
        growth *= r
    mono = all(b > a for a, b in zip(r3[5:], r3[6:]))
    r2 = starexp.series_radius_probe(2, 1.0, 16)
    out.append(_bool_rec("cubic-power-series-divergence",
                         "cubic-power coefficient ratios grow monotonically without bound",
                         mono and growth > 1e3 and max(r2) < 10))
    return out


def suite_special(cfg: RunConfig) -> list:
    out = []
    checks = specialfn.hermite_checks(specialfn.hermite_table(12, QC(-1)))
    out.append(_bool_rec("hermite-recurrence", "three-term recurrence (exact)",
                         checks["recurrence"]))
    out.append(_bool_rec("hermite-ode", "second-order differential equation (exact)",
                         checks["ode"]))
    out.append(_bool_rec("hermite-derivative-ladder", "derivative lowers the index (exact)",
                         checks["ladder"]))
    scale_ok = all(specialfn.hermite_convolution_scale(n, QC(-1)) == n for n in (1, 2, 3))
    out.append(_bool_rec("hermite-convolution-scale",
                         "binomial self-convolution equals 2^n times the table", scale_ok))
    worst = 0.0
    for n, m in ((0, 0), (1, 0), (3, 3), (2, 4)):
        got = specialfn.hermite_orthogonality(n, m, -1.0)
        want = specialfn.hermite_orthogonality_target(n, -1.0) if n == m else 0.0
        worst = max(worst, abs(got - want) / max(1.0, abs(want)))
    out.append(_rec("hermite-orthogonality", "weighted pairing matches n!(-tau)^n sqrt(-tau pi)",
                    worst, 1e-8))

    tab = specialfn.bessel_table(1.0, 1.0, 18, cfg.w_grid())
    out.append(_rec("bessel-unit-sum", "deformed Bessel row sums to one",
                    specialfn.bessel_unit_sum_residual(tab), 1e-10))
    out.append(_rec("bessel-reflection", "index reflection with alternating sign",
                    specialfn.bessel_symmetry_residual(tab), 1e-12))
    out.append(_rec("bessel-addition", "argument addition via pairwise products",
                    specialfn.bessel_addition_residual(1.0, 1.0, 1.0,
                                                       cfg.w_grid()[::4], N=6), 1e-9))

    grid = [-0.5, 0.1, 0.7]
    vals = specialfn.legendre_star(3, 0.0, -1.0, grid)
    exact = specialfn.legendre_star_exact(3, Fraction(-1))
    worst = 0.0
    for n in range(4):
        pe = exact[n].map_coeffs(float)
        worst = max(worst, max(abs(vals[n][i] - pe(w)) for i, w in enumerate(grid)))
    out.append(_rec("legendre-dual-route", "quadrature vs exact moment table", worst, 1e-9))

    tabL = specialfn.laguerre_star(6, Fraction(2, 3))
    norm_ok = all(p.deriv(n) == core.Poly.const(Fraction(1)) for n, p in enumerate(tabL))
    out.append(_bool_rec("laguerre-normalization", "top derivative equals one (exact)", norm_ok))
    worst = 0.0
    for n, m in ((0, 1), (2, 2), (1, 3)):
        got = specialfn.laguerre_orthogonality(n, m, -1.0)
        want = specialfn.laguerre_orthogonality_target(n, -1.0) if n == m else 0.0
        worst = max(worst, abs(got - want) / max(1.0, abs(want)))
    out.append(_rec("laguerre-orthogonality", "half-line weighted pairing", worst, 1e-8))
    return out


def suite_theta(cfg: RunConfig) -> list:
    tau = cfg.tau
    W = cfg.w_grid()
    out = []
    worst = max(theta.quasi_periodicity_residual(k, w, tau) for k in (1, 2, 3, 4)
                for w in W[::2])
    out.append(_rec("theta-quasi-periodicity", "lattice shift with exponential factor",
                    worst, cfg.tol))
    worst = max(theta.theta_eigen_residual(k, tau, W[::4]) for k in (1, 2, 3, 4))
    out.append(_rec("theta-eigen-action", "left product with the basic exponential",
                    worst, cfg.tol))
    worst = max(theta.imaginary_transform_residual(w, tau) for w in W[::2])
    out.append(_rec("theta-imaginary-transform", "modular-type relation between expressions",
                    worst, cfg.tol))
    out.append(_rec("theta-special-value-relation", "value identity at w = 0",
                    theta.jacobi_relation_residual(tau), 1e-12))
    worst = max(abs(theta.delta_sum_representation(w, tau) - theta.theta_eval(3, w, tau))
                for w in W[::2])
    out.append(_rec("theta-gaussian-comb", "delta-comb representation", worst, cfg.tol))
    worst = max(abs(theta.theta3_from_inverses(w, tau) - theta.theta_eval(3, w, tau))
                for w in W[::4])
    out.append(_rec("theta-inverse-difference", "difference of one-sided inverses", worst,
                    cfg.tol))
    dim, vec = theta.constant_coefficient_kernel(8)
    out.append(_bool_rec("theta-kernel-unique", "eigen-equation kernel is one-dimensional",
                         dim == 1 and np.allclose(vec, np.ones_like(vec))))
    return out


def suite_dist(cfg: RunConfig) -> list:
    tau = cfg.tau
    W = cfg.w_grid()
    out = []
    z = distributions.delta_annihilation(0.4, tau)
    resid = 0.0 if z.poly.is_zero() else max(abs(c) for c in z.poly.coeffs)
    out.append(_rec("delta-annihilation", "(a+w) kills its delta in closed form", resid, 1e-14))
    out.append(_rec("delta-mass", "delta expression integrates to one",
                    abs(distributions.delta_mass(0.3, tau) - 1), 1e-11))
    worst = max(distributions.sided_inverse_defect(a, s, tau, W)
                for a in (0.0, 1.0, 1j) for s in "+-")
    out.append(_rec("sided-inverse-defect", "half-line integrals invert (a+w)", worst, 1e-8))
    worst = max(distributions.delta_difference_residual(a, tau, W[::2]) for a in (0.0, 0.8))
    out.append(_rec("sided-difference-delta", "inverse difference equals 2 pi i delta",
                    worst, 1e-9))
    res = distributions.y_sgn_identity_residuals(tau, W)
    out.append(_rec("heaviside-partition", "Y(w) + Y(-w) = 1", res["sum_to_one"], 1e-10))
    out.append(_rec("sign-involution", "sgn * sgn = 1 via the density rule",
                    res["sgn_star_sgn"], 1e-10))
    y_x = distributions.heaviside_y(tau, W[::4])
    y_t = distributions.heaviside_y_fourier(tau, W[::4])
    out.append(_rec("heaviside-dual-route", "x-side vs Fourier-side Heaviside",
                    float(np.abs(y_x - y_t).max()), 1e-9))
    vp = distributions.principal_value_inverse(1, tau, W[::4])
    avg = (distributions.sided_inverse(0.0, "+", tau, W[::4])
           + distributions.sided_inverse(0.0, "-", tau, W[::4])) / 2
    out.append(_rec("principal-value-average", "v.p. transform is the sided average",
                    float(np.abs(vp - avg).max()), 1e-9))
    out.append(_rec("periodic-comb", "Gaussian comb equals exponential series",
                    distributions.periodic_comb_residual(0.0, tau, W[::2]), 1e-10))
    gap = distributions.associativity_break_gap(tau, W[::4], n_terms=40)
    th = np.asarray([theta.theta_eval(3, w, tau) for w in W[::4]])
    out.append(_rec("associativity-break", "grouping gap equals the theta series",
                    float(np.abs(gap["gap"] + th).max()), 1e-8))
    out.append(_rec("constant-variation-inverse", "variation-of-constants inverse",
                    distributions.constant_variation_defect(0.4, tau, W[::4]), 1e-8))
    prod = distributions.product_of_inverses_residual(0.3 - 0.6j, -0.2 + 0.5j, tau, W[::4])
    out.append(_rec("inverse-product-law", "resolvent law for sided inverses",
                    prod["product_law"], 1e-8))
    out.append(_rec("delta-pair-product", "product of delta pairs at distinct points vanishes",
                    prod["delta_pair_product"], 1e-8))
    return out


def suite_residue(cfg: RunConfig) -> list:
    tau, nu = cfg.tau, cfg.nu
    W = cfg.w_grid()
    out = []
    worst = 0.0
    for k, w in ((0, 0.0), (0, 0.5), (1, 0.3), (-1, 0.4)):
        closed = residue.laurent_coeff_closed(k, nu, tau, w)
        cont = residue.residue_contour(k, nu, tau, w)
        worst = max(worst, abs(cont - closed) / max(1.0, abs(closed)))
    out.append(_rec("residue-dual-route", "contour vs closed Laurent coefficients",
                    worst, 1e-10))
    a = residue.residue_contour(1, nu, tau, 0.3, radius=0.5)
    b = residue.residue_contour(1, nu, tau, 0.3, radius=1.0)
    out.append(_rec("contour-radius-independence", "Cauchy independence of the radius",
                    abs(a - b), 1e-12))
    W_unit = [w for w in W if abs(complex(w)) <= 1.0] or [0.0, 0.5]
    worst = max(residue.ladder_residual(k, nu, tau, W_unit) for k in (-1, 0, 1, 2))
    out.append(_rec("coefficient-ladder", "quadratic element raises the Laurent index",
                    worst, 1e-12))
    out.append(_rec("double-turn-vanishing", "closed double-cover contour vanishes",
                    max(residue.closed_contour_vanishing(nu, tau, w) for w in (0.0, 0.5)),
                    1e-10))
    worst = max(residue.semigroup_on_delta(t, 0.6, tau, W[::4])
                for t in (0.0, 0.5, 1 / complex(tau)))
    out.append(_rec("delta-one-parameter-group", "quadratic flow acts on deltas for all t",
                    worst, 1e-12))
    res = residue.orphan_annihilation(0.1, 0, nu, tau, [0.0, 0.5])
    nonzero = float(np.abs(res["t_zero_values"]).max())
    out.append(_rec("flow-annihilation", "nonzero flow time kills Laurent coefficients",
                    res["annihilation"], 1e-10))
    out.append(_bool_rec("ladder-discontinuity", "t = 0 bracket is nonzero (discontinuity)",
                         nonzero > 1e-3))
    ok = all(residue.surface_derivative_exact(residue.parallel_polynomial(k, m)) == {}
             for k in range(-3, 4) for m in range(-3, 4))
    out.append(_bool_rec("parallel-polynomials", "two-index family lies in the kernel (exact)",
                         ok))
    ok = all(residue.diffeqevol_exact_defect(k).is_zero() for k in range(-2, 3))
    out.append(_bool_rec("covariant-evolution-exact",
                         "Laurent coefficients satisfy the surface equation (symbolic)", ok))
    worst = max(residue.covariant_evolution_residual(core.Poly([0.5, -1.0, 2.0]), nu, z, W[::4])
                for z in (1.0, 0.8 + 0.4j))
    out.append(_rec("covariant-first-order", "closed family solves the first-order equation",
                    worst, 1e-12))
    return out


def suite_halfseries(cfg: RunConfig) -> list:
    out = []
    E = halfseries.euler_numbers(5)
    out.append(_bool_rec("euler-numbers", "alternating secant numbers (exact)",
                         E == halfseries.euler_numbers_recurrence(5)
                         and E == [1, -1, 5, -61, 1385, -50521]))
    B = halfseries.bernoulli_numbers(5)
    out.append(_bool_rec("bernoulli-numbers", "even Bernoulli numbers (exact)",
                         B == halfseries.bernoulli_numbers_recurrence(5)))
    out.append(_bool_rec("replacement-principle", "formal-basis twin gives identical sequences",
                         E == halfseries.euler_numbers_formal(5)
                         and B == halfseries.bernoulli_numbers_formal(5)))
    rng = random.Random(cfg.seed)
    ok = True
    for _ in range(6):
        cs = [QC(Fraction(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(13)]
        cs[0] = QC(1)
        f = halfseries.HalfSeries.from_list(cs, 0, 12)
        inv = halfseries.hs_inverse(f)
        if list(halfseries.hs_mul(f, inv).coeffs) != [QC(1)] + [QC(0)] * 12:
            ok = False
        if halfseries.hs_inverse(inv).coeffs != f.coeffs:
            ok = False
    out.append(_bool_rec("inverse-unique-involutive", "inversion is exact and involutive", ok))
    K = 24
    one = halfseries.HalfSeries.one(K)
    series = halfseries.hs_mul(halfseries.exp_series(1, K),
                               halfseries.hs_inverse(one + halfseries.exp_series(2, K))) \
        + halfseries.hs_mul(halfseries.exp_series(-1, K),
                            halfseries.hs_inverse(one + halfseries.exp_series(-2, K)))
    lhs = halfseries.hs_to_tau_expression(series, 2.0, cfg.w_grid()[::4])
    ws = np.asarray(cfg.w_grid()[::4])
    Efull = halfseries.euler_numbers(K // 2)
    rhs = sum(complex(Fraction(Efull[n]) / math.factorial(2 * n))
              * np.exp(-(2 * n) ** 2 * 2.0 / 4 + 2j * n * ws) for n in range(K // 2 + 1))
    out.append(_rec("euler-grid-identity", "generating identity as expressions on a grid",
                    float(np.abs(lhs - rhs).max()), 1e-10))
    zero = halfseries.HalfSeries.from_list([0] * 9, 0, 8)
    out.append(_bool_rec("zero-detection", "vanishing expression forces zero coefficients",
                         halfseries.zero_detection(zero, 1.0)))
    return out


def suite_vertex(cfg: RunConfig) -> list:
    out = []
    ok = all(vertex.witt_identity_check(n, l, m, K=6)
             for n in range(-3, 4) for l in range(-3, 4) for m in range(-3, 4))
    out.append(_bool_rec("witt-identity", "operator commutators close (exact sweep)", ok))
    ok = all(vertex.y_eigen_defect(n, m, K=6).is_zero()
             for n in range(-2, 3) for m in range(-3, 4))
    out.append(_bool_rec("normalized-generator-eigen",
                         "dressed generators transform with weight m (exact)", ok))
    rep = vertex.central_constraint_check(K=6, index_max=3)
    out.append(_bool_rec("central-antisymmetry", "bracket matrix is antisymmetric (exact)",
                         rep["antisymmetry"]))
    out.append(_bool_rec("central-parity", "odd total index brackets vanish (exact)",
                         rep["odd_parity_vanishing"]))
    out.append(_bool_rec("central-diagonal-proportionality",
                         "diagonal central charges are proportional to the index (exact)",
                         rep["diagonal_proportionality"] and rep["c1_closed_form_matches"]))
    ok = all(vertex.k_centrality_check(m, n, K=6) for m in range(-3, 4) for n in range(-3, 4))
    out.append(_bool_rec("central-remainder-annihilates",
                         "Witt remainder operator annihilates the span (exact)", ok))
    out.append(_bool_rec("gamma-dictionary",
                         "coefficient ring reproduces numeric Laurent values",
                         abs(vertex.laurent_coefficient_ring(-1, 40).evaluate(1 + 0.3j, 0.7, 0.4)
                             - residue.laurent_coeff_closed(0, 0.7, 1 + 0.3j, 0.4)) < 1e-10))
    out.append(_bool_rec("truncation-stability",
                         "raising the grade budget preserves low grades (exact)",
                         vertex.truncation_stability(6, 8)))
    out.append(_bool_rec("bracket-antisymmetry-jacobi",
                         "generator brackets are antisymmetric; Jacobi holds (central values)",
                         vertex.jacobi_x_check(3)))
    return out


SUITES = {
    "core": suite_core,
    "starexp": suite_starexp,
    "special": suite_special,
    "theta": suite_theta,
    "dist": suite_dist,
    "residue": suite_residue,
    "halfseries": suite_halfseries,
    "vertex": suite_vertex,
}


def run_suite(name: str, cfg: RunConfig) -> list:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, cfg))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name](cfg)
