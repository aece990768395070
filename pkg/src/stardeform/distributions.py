"""Star-delta calculus: deltas, sided inverses, Heaviside/sign, v.p./Pf, combs.

The tau-expression of the delta element at shift a is the entire Gaussian
(pi tau)^{-1/2} exp(-(a+w)^2/tau), Re tau > 0.  Products of the non-polynomial
objects here are computed on the distribution side (multiply the underlying
densities, or convolve on the Fourier side) and then transformed; term-wise
differentiation series diverge for these objects and are never used.

Fourier conventions: densities transform with kernel e^{+itx},

    f_*(w)|_tau = (2pi)^{-1/2} integral f_hat(t) e^{-t^2 tau/4} e^{-itw} dt,
    f_hat(t) = (2pi)^{-1/2} integral f(x) e^{itx} dx,

which makes the delta law  transform(delta(x-a)) = delta_*(a-w)  hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Poly, intertwine
from .errors import DomainError, QuadratureFailure
from .quadrature import gaussian_halfwidth, integrate_segment, integrate_segment_refined
from .starexp import GaussPoly, star_poly_gauss, translate_action

TWO_PI = 2 * math.pi


def _check_tau(tau):
    if complex(tau).real <= 0:
        raise DomainError(f"Re tau must be positive, got {tau}")


def delta_tau(a, tau) -> GaussPoly:
    """Star-delta at shift a: (pi tau)^{-1/2} exp(-(a+w)^2/tau)."""
    _check_tau(tau)
    a_c, tau_c = complex(a), complex(tau)
    return GaussPoly(Poly.const(1), -1 / tau_c, -2 * a_c / tau_c,
                     (math.pi * tau_c) ** -0.5, -a_c * a_c / tau_c, 1)


def delta_annihilation(a, tau) -> GaussPoly:
    """(a + w) * delta_*(a+w): identically zero in closed form."""
    return star_poly_gauss(Poly([a, 1]), delta_tau(a, tau), tau)


def delta_mass(a, tau, tol: float = 1e-12):
    """integral over real w of the delta expression (1 for real a, tau)."""
    d = delta_tau(a, tau)
    rate = (1 / complex(tau)).real
    L = gaussian_halfwidth(rate) + abs(complex(a)) + 1.0

    def f(w):
        return np.asarray([d(x) for x in np.atleast_1d(w)])

    return integrate_segment_refined(f, -L, L, tol=tol)


# ----------------------------------------------------------- sided inverses

def _osc_halfline(tau, a, w_grid, side: int, t_weight=None):
    """integral over the half-line (side=+1: t in (-inf,0]; -1: [0,inf)) of
    w(t) e^{-t^2 tau/4} e^{it(a+w)} dt for each w in the grid.

    Im a shifts the Gaussian peak off t=0; the cutoff solves
    rate*T^2 - |Im a| T = log(1/tol) so the shifted tail is still below tol."""
    tau_c, a_c = complex(tau), complex(a)
    ws = np.asarray([complex(w) for w in w_grid])
    rate = tau_c.real / 4
    g = abs(a_c.imag)
    logtol = math.log(1e16)
    T = (g + math.sqrt(g * g + 4 * rate * logtol)) / (2 * rate)
    # resolve both the e^{itw} oscillation and growth from Im a
    osc = max(float(np.abs(ws + a_c).max()), abs(a_c.imag) + 1.0)
    n_panels = max(24, int(2 * osc * T / math.pi) + 8)

    def f(t):
        base = np.exp(-t * t * tau_c / 4 + 1j * np.multiply.outer(ws + a_c, t))
        if t_weight is not None:
            base = base * t_weight(t)
        return base

    if side > 0:
        return integrate_segment(f, -T, 0.0, n_panels)
    return integrate_segment(f, 0.0, T, n_panels)


def sided_inverse(a, side: str, tau, w_grid):
    """Two inverses of (a + w):  '+': i * integral_{-inf}^0,  '-': -i * integral_0^inf
    of the linear exponential's tau-expression."""
    _check_tau(tau)
    if side == "+":
        return 1j * _osc_halfline(tau, a, w_grid, +1)
    if side == "-":
        return -1j * _osc_halfline(tau, a, w_grid, -1)
    raise ValueError("side must be '+' or '-'")


def sided_inverse_defect(a, side: str, tau, w_grid) -> float:
    """max over the grid of |(a+w) f + (tau/2) f' - 1| (the inverse property)."""
    tau_c, a_c = complex(tau), complex(a)
    sgn = +1 if side == "+" else -1
    f = sided_inverse(a, side, tau, w_grid)
    fp = (1j if sgn > 0 else -1j) * _osc_halfline(
        tau, a, w_grid, sgn, t_weight=lambda t: 1j * t)
    ws = np.asarray([complex(w) for w in w_grid])
    resid = (a_c + ws) * f + tau_c / 2 * fp - 1.0
    return float(np.abs(resid).max())


def sided_power(a, m: int, side: str, tau, w_grid):
    """(a+w)^{-m}_{*(side)} from the (m-1)-th a-derivative of the inverse:
    the derivative pulls (it)^{m-1} into the integrand."""
    _check_tau(tau)
    if m < 1:
        raise ValueError("m must be >= 1")
    sgn = +1 if side == "+" else -1
    pref = (1j if side == "+" else -1j) * (-1) ** (m - 1) / math.factorial(m - 1)
    return pref * _osc_halfline(tau, a, w_grid, sgn,
                                t_weight=lambda t: (1j * t) ** (m - 1))


def delta_difference_residual(a, tau, w_grid) -> float:
    """plus inverse - minus inverse = 2 pi i * delta expression."""
    plus = sided_inverse(a, "+", tau, w_grid)
    minus = sided_inverse(a, "-", tau, w_grid)
    d = delta_tau(a, tau)
    target = TWO_PI * 1j * np.asarray([d(w) for w in w_grid])
    return float(np.abs(plus - minus - target).max())


# ------------------------------------------------------------- transforms

def tempered_transform(f_hat, tau, w_grid, t_growth: float = 0.0):
    """(2pi)^{-1/2} integral f_hat(t) e^{-t^2 tau/4} e^{-itw} dt on the grid.

    f_hat is vectorized; t_growth bounds its exponential growth rate (the
    truncation widens accordingly)."""
    _check_tau(tau)
    tau_c = complex(tau)
    ws = np.asarray([complex(w) for w in w_grid])
    rate = tau_c.real / 4
    T = gaussian_halfwidth(rate) + 2 * t_growth / tau_c.real
    osc = float(np.abs(ws).max()) + t_growth + 1.0
    n_panels = max(24, int(2 * osc * T / math.pi) + 8)

    def f(t):
        return f_hat(t)[None, :] * np.exp(-t * t * tau_c / 4
                                          - 1j * np.multiply.outer(ws, t))

    return integrate_segment(f, -T, T, n_panels) / math.sqrt(TWO_PI)


def slowly_increasing_transform(f, tau, w_grid, tol: float = 1e-13, breakpoints=()):
    """x-side route: integral f(x) delta_expr(x - w) dx for slowly increasing f.

    breakpoints: x-locations of jumps/kinks of f; panel edges are pinned there
    so the Gauss-Legendre refinement converges."""
    _check_tau(tau)
    tau_c = complex(tau)
    rate = (1 / tau_c).real
    L = gaussian_halfwidth(rate, 1e-18) + 2.0
    out = []
    for w in w_grid:
        w_c = complex(w)

        def g(x):
            return f(x) * np.exp(-(x - w_c) ** 2 / tau_c) / np.sqrt(np.pi * tau_c)

        lo, hi = w_c.real - L, w_c.real + L
        edges = [lo] + [b for b in sorted(breakpoints) if lo < b < hi] + [hi]
        val = 0.0 + 0.0j
        for aa, bb in zip(edges[:-1], edges[1:]):
            val = val + integrate_segment_refined(g, aa, bb, tol=tol)
        out.append(val)
    return np.asarray(out)


# ---------------------------------------------------------------- Y / sgn

def heaviside_y(tau, w_grid, reflected: bool = False):
    """Y(w) (or Y(-w)) by x-quadrature of the delta kernel over the half line."""
    _check_tau(tau)
    tau_c = complex(tau)
    rate = (1 / tau_c).real
    L = gaussian_halfwidth(rate, 1e-18) + 2.0
    out = []
    for w in w_grid:
        w_c = complex(w)
        hi = max(w_c.real + L, 0.5)

        def g(x):
            return np.exp(-(x - w_c) ** 2 / tau_c) / np.sqrt(np.pi * tau_c)

        lo, hi_ = (0.0, hi) if not reflected else (min(w_c.real - L, -0.5), 0.0)
        out.append(integrate_segment_refined(g, lo, hi_, tol=1e-13))
    return np.asarray(out)


def heaviside_y_fourier(tau, w_grid):
    """Independent route: Y = 1/2 + (1/pi) integral_0^inf sin(tw)/t e^{-t^2 tau/4} dt.

    sin(tw)/t is written w * sinc(tw/pi) to stay finite at t = 0."""
    tau_c = complex(tau)
    ws = np.asarray([complex(w) for w in w_grid])
    rate = tau_c.real / 4
    T = gaussian_halfwidth(rate)
    osc = float(np.abs(ws).max()) + 1.0
    n_panels = max(24, int(2 * osc * T / math.pi) + 8)

    def f(t):
        tw = np.multiply.outer(ws, t)
        return ws[:, None] * np.sinc(tw / math.pi) * np.exp(-t * t * tau_c / 4)

    val = integrate_segment(f, 0.0, T, n_panels)
    return 0.5 + val / math.pi


def heaviside_sgn(tau, w_grid):
    """(Y values, sgn values) on the grid; sgn = Y(w) - Y(-w)."""
    y = heaviside_y(tau, w_grid)
    y_ref = heaviside_y(tau, w_grid, reflected=True)
    return y, y - y_ref


def y_sgn_identity_residuals(tau, w_grid) -> dict:
    """Y(w)+Y(-w)=1, Y*Y=Y, Y(w)*Y(-w)=0, sgn*sgn=1; products through the
    underlying-density rule (pointwise multiplication, then transform)."""
    y = heaviside_y(tau, w_grid)
    y_ref = heaviside_y(tau, w_grid, reflected=True)
    sum_res = float(np.abs(y + y_ref - 1.0).max())

    # indicator * indicator = indicator -> transform equals Y again
    yy = slowly_increasing_transform(lambda x: (x > 0).astype(float), tau, w_grid,
                                     breakpoints=(0.0,))
    yy_res = float(np.abs(yy - y).max())

    # indicator(x>0) * indicator(x<0) = 0 a.e.
    zero = slowly_increasing_transform(lambda x: 0.0 * x, tau, w_grid)
    disjoint_res = float(np.abs(zero).max())

    # sgn * sgn = 1
    ss = slowly_increasing_transform(lambda x: np.sign(x) ** 2, tau, w_grid,
                                     breakpoints=(0.0,))
    ss_res = float(np.abs(ss - 1.0).max())
    return {"sum_to_one": sum_res, "y_star_y": yy_res,
            "disjoint_product": disjoint_res, "sgn_star_sgn": ss_res}


def sgn_star_sgn_fourier(tau, w_grid, eps: float = 1e-3):
    """Dual route for sgn * sgn through the Fourier-side convolution rule.

    With the damped regularization sgn_eps(x) = sgn(x) e^{-eps|x|}, the
    convolution of the transforms closes to a Lorentzian (contour integral):
    (2pi)^{-1/2} (sgn_eps-hat conv sgn_eps-hat)(t) = (2pi)^{-1/2} 4 eps/(t^2+4 eps^2),
    so only the final transform needs quadrature; tends to 1 as eps -> 0 with
    O(eps) error."""
    tau_c = complex(tau)
    ws = np.asarray([complex(w) for w in w_grid])
    rate = tau_c.real / 4
    T = gaussian_halfwidth(rate)

    def integrand(t):
        kern = 4 * eps / (t * t + 4 * eps * eps)
        return kern * np.exp(-t * t * tau_c / 4 - 1j * np.multiply.outer(ws, t))

    delta_zone = 40 * eps
    val = integrate_segment(integrand, -T, -delta_zone, 64) \
        + integrate_segment(integrand, -delta_zone, delta_zone, 200) \
        + integrate_segment(integrand, delta_zone, T, 64)
    return val / TWO_PI


# ------------------------------------------------------------ eval pairing

def eval_pairing_residual(f, a, tau, w_grid) -> float:
    """| f_*(w) * delta_*(a - w) - f(a) delta_*(a - w) | on the grid.

    Non-circular routes: polynomial f goes through the finite product rule with
    the intertwined polynomial; exponential f = e^{c x} through the translation
    action.  f is given as a Poly or as ('exp', c)."""
    _check_tau(tau)
    tau_c = complex(tau)
    d = delta_tau(-complex(a), tau_c)   # delta_*(a - w)
    if isinstance(f, Poly):
        fstar = intertwine(f.to_complex(), 0.0, tau_c)
        lhs = star_poly_gauss(fstar, d, tau_c)
        fa = f.to_complex()(complex(a))
    elif isinstance(f, tuple) and f[0] == "exp":
        # f_* for e^{cx} is the deformed exponential at c (amplitude included);
        # its left product is the translation action at s = c/2
        c = complex(f[1])
        lhs = translate_action(c / 2, d, tau_c)
        fa = np.exp(c * complex(a))
    else:
        raise ValueError("f must be a Poly or ('exp', c)")
    worst = 0.0
    for w in w_grid:
        worst = max(worst, abs(lhs(complex(w)) - fa * d(complex(w))))
    return worst


# ------------------------------------------------------------- v.p. / Pf.

def principal_value_inverse(m: int, tau, w_grid):
    """Transform of v.p. 1/x (m=1) or Pf. x^{-m}: the sgn(t)-weighted integral

        (i/2) integral (it)^{m-1}/(m-1)! sgn(t) e^{-t^2 tau/4} e^{-itw} dt.
    """
    _check_tau(tau)
    tau_c = complex(tau)
    ws = np.asarray([complex(w) for w in w_grid])
    rate = tau_c.real / 4
    T = gaussian_halfwidth(rate)
    osc = float(np.abs(ws).max()) + 1.0
    n_panels = max(24, int(2 * osc * T / math.pi) + 8)

    def half(sign):
        def f(t):
            wgt = (1j * t) ** (m - 1) / math.factorial(m - 1)
            return wgt * np.exp(-t * t * tau_c / 4 - 1j * np.multiply.outer(ws, t))
        if sign > 0:
            return integrate_segment(f, 0.0, T, n_panels)
        return integrate_segment(f, -T, 0.0, n_panels)

    return 0.5j * (half(+1) - half(-1))


# ---------------------------------------------------------- periodic combs

def periodic_comb_residual(a, tau, w_grid, tol: float = 1e-13) -> float:
    """Gaussian comb vs exponential series:

        sum_n delta_*(a + 2 pi n + w) = (1/2pi) sum_k e_*^{ik(a+w)}

    (both sides tau-expressions, truncated adaptively)."""
    _check_tau(tau)
    tau_c = complex(tau)
    ws = np.asarray([complex(w) for w in w_grid])
    u = ws + complex(a)

    comb = np.zeros_like(u, dtype=complex)
    pref = (math.pi * tau_c) ** -0.5
    n = 0
    while True:
        term = np.exp(-(u + TWO_PI * n) ** 2 / tau_c)
        if n != 0:
            term = term + np.exp(-(u - TWO_PI * n) ** 2 / tau_c)
        comb = comb + term
        if n > 2 and float(np.abs(term).max()) * abs(pref) < tol:
            break
        n += 1
        if n > 10000:
            raise QuadratureFailure("comb did not settle")
    comb = pref * comb

    series = np.zeros_like(u, dtype=complex)
    k = 0
    while True:
        term = np.exp(-k * k * tau_c / 4 + 1j * k * u)
        if k != 0:
            term = term + np.exp(-k * k * tau_c / 4 - 1j * k * u)
        series = series + term
        if k > 2 and float(np.abs(term).max()) / TWO_PI < tol:
            break
        k += 1
    series = series / TWO_PI
    return float(np.abs(comb - series).max())


def fourier_series_transport(coeffs: dict, tau, w_grid):
    """sum a_n e_*^{inw} in tau-expression for a finite coefficient dict."""
    _check_tau(tau)
    tau_c = complex(tau)
    ws = np.asarray([complex(w) for w in w_grid])
    acc = np.zeros_like(ws, dtype=complex)
    for n, c in coeffs.items():
        acc = acc + c * np.exp(-n * n * tau_c / 4 + 1j * n * ws)
    return acc


# ------------------------------------------------- constant-variation route

def constant_variation_inverse(a, tau, w_grid, C=0.0):
    """g_a(w) = (2/tau) integral_0^1 exp(((a+wt)^2 - (a+w)^2)/tau) w dt
               + C exp(-(a+w)^2/tau):   a right/left inverse of (a+w)."""
    _check_tau(tau)
    tau_c, a_c = complex(tau), complex(a)
    out = []
    for w in w_grid:
        w_c = complex(w)

        def f(t):
            return np.exp(((a_c + w_c * t) ** 2 - (a_c + w_c) ** 2) / tau_c) * w_c

        val = integrate_segment_refined(f, 0.0, 1.0, tol=1e-13) * 2 / tau_c
        out.append(val + C * np.exp(-(a_c + w_c) ** 2 / tau_c))
    return np.asarray(out)


def constant_variation_defect(a, tau, w_grid, C=0.0) -> float:
    """|(a+w) g_a + (tau/2) g_a' - 1| with g_a' by central differences (the
    C-term is annihilated exactly, checked separately in closed form)."""
    tau_c, a_c = complex(tau), complex(a)
    h = 1e-5
    ws = np.asarray([complex(w) for w in w_grid])
    g0 = constant_variation_inverse(a, tau, ws, C)
    gp = (constant_variation_inverse(a, tau, ws + h, C)
          - constant_variation_inverse(a, tau, ws - h, C)) / (2 * h)
    resid = (a_c + ws) * g0 + tau_c / 2 * gp - 1.0
    return float(np.abs(resid).max())


# ------------------------------------------- products of sided inverses

def _double_osc(tau, a, b, w_grid, side_a: int, side_b: int, n_side: int = 400):
    """(i eps_a)(i eps_b) double integral over the two half-lines of
    e^{ita} e^{isb} e^{-(t+s)^2 tau/4} e^{i(t+s)w}.

    side=+1 is the t<=0 half (the '+' inverse).  With Im a < 0 < Im b the
    quadrants (+,+), (-,-), (+,-) are absolutely convergent; (-,+) grows like
    e^{(|Im a|+|Im b|) R} along its flat direction and is not integrable."""
    tau_c, a_c, b_c = complex(tau), complex(a), complex(b)
    ws = np.asarray([complex(w) for w in w_grid])
    if side_a < 0 and side_b > 0:
        raise DomainError("the (-,+) quadrant is not absolutely convergent")
    rate = tau_c.real / 4
    decay = max(min(abs(a_c.imag), abs(b_c.imag)), 0.25)
    T = gaussian_halfwidth(rate) + math.log(1e12) / decay
    xs, wts = np.polynomial.legendre.leggauss(n_side)
    half = T / 2

    def axis(side):
        return (xs + 1) * half if side < 0 else -(xs + 1) * half

    t = axis(side_a)
    s = axis(side_b)
    wt = wts * half
    tt, ss_ = np.meshgrid(t, s, indexing="ij")
    base = np.exp(1j * tt * a_c + 1j * ss_ * b_c - (tt + ss_) ** 2 * tau_c / 4)
    out = []
    pref = (1j if side_a > 0 else -1j) * (1j if side_b > 0 else -1j)
    for w in ws:
        integ = base * np.exp(1j * (tt + ss_) * w)
        out.append(pref * np.einsum("i,j,ij->", wt, wt, integ))
    return np.asarray(out)


def product_of_inverses_residual(a, b, tau, w_grid) -> dict:
    """Checks around the product law for sided inverses at distinct a != b
    (Im a < 0 < Im b so three of the four sign pairs converge absolutely):

        (a+w)^{-1}_{*s} * (b+w)^{-1}_{*s'} = ((a+w)^{-1}_{*s} - (b+w)^{-1}_{*s'})/(b-a)

    verified by 2D quadrature for (+,+), (-,-), (+,-); the (-,+) pairing is the
    law's defining case and is taken from the right side.  The vanishing of
    (plus - minus at a) * (plus - minus at b) then follows from the four-term
    expansion and is reported as computed."""
    a_c, b_c = complex(a), complex(b)
    inv = {("a", "+"): sided_inverse(a, "+", tau, w_grid),
           ("a", "-"): sided_inverse(a, "-", tau, w_grid),
           ("b", "+"): sided_inverse(b, "+", tau, w_grid),
           ("b", "-"): sided_inverse(b, "-", tau, w_grid)}

    def law(sa, sb):
        return (inv[("a", sa)] - inv[("b", sb)]) / (b_c - a_c)

    prods = {}
    worst = 0.0
    for sa, sb in (("+", "+"), ("-", "-"), ("+", "-")):
        lhs = _double_osc(tau, a, b, w_grid,
                          +1 if sa == "+" else -1, +1 if sb == "+" else -1)
        prods[(sa, sb)] = lhs
        worst = max(worst, float(np.abs(lhs - law(sa, sb)).max()))
    prods[("-", "+")] = law("-", "+")
    vanish = prods[("+", "+")] - prods[("+", "-")] - prods[("-", "+")] + prods[("-", "-")]
    return {"product_law": worst, "delta_pair_product": float(np.abs(vanish).max())}


# ------------------------------------- associativity-breaking demonstration

def associativity_break_gap(tau, w_grid, n_terms: int = 40) -> dict:
    """Associativity failure for the one-sided geometric inverses of
    B = 1 - e_*^{2iw}:  with A the plus inverse and C the minus inverse,

        A*B = 1 and B*C = 1   (boundary terms e^{-(N+1)^2 tau} below 1e-300),
        so (A*B)*C = C while A*(B*C) = A, and the gap C - A is -theta3.

    Returns the numeric residuals of both inverse properties (the telescoped
    boundary term included) and the gap values on the grid."""
    tau_c = complex(tau)
    ws = np.asarray([complex(w) for w in w_grid])

    def basis(n):
        return np.exp(-n * n * tau_c + 2j * n * ws)

    N = n_terms
    A = sum(basis(n) for n in range(N + 1))
    C = -sum(basis(-n) for n in range(1, N + 1))
    # telescoped products of the truncated series with B
    AB = 1.0 - basis(N + 1)
    BC = 1.0 - basis(-N)
    return {
        "plus_inverse_residual": float(np.abs(AB - 1.0).max()),
        "minus_inverse_residual": float(np.abs(BC - 1.0).max()),
        "gap": C - A,
    }
