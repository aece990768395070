"""Laurent/residue calculus of the quadratic exponential family at the
branching point z = 1/tau, boundary-value solutions, and the covariant flow.

On the double cover z = 1/tau + s^2 the density

    E(s) = e^{nu/tau} (-tau)^{-1/2} e^{-w^2/tau} (1/s) e^{nu s^2 - w^2/(tau^2 s^2)}

is single valued in s with only odd s-degrees; a_{2k-1} denotes its Laurent
coefficients.  Two independent code paths compute them: the double-series
closed form and trapezoid contour integrals (which inherit the principal
branch of sqrt(-tau), the same slit convention as the quadratic exponential).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Poly
from .errors import DegenerateBoundary, NodeCountError, PathError, SingularPoint
from .exact import QC, LaurentPoly2
from .numeric import cabs, cexp, csqrt
from .starexp import GaussPoly, quadexp_star, star_poly_gauss

# ------------------------------------------------------------ closed forms

def sqrt_minus_tau(tau):
    """Principal sqrt(-tau) with the signed zero of the imaginary part
    normalized (so real positive tau lands above the cut, giving +i sqrt(tau))."""
    z = -complex(tau)
    return cmath.sqrt(complex(z.real, z.imag + 0.0))


def quad_exp_z(z, nu, tau, w):
    """:e_*^{z(nu + w^2-element)}: = e^{z nu} (1-z tau)^{-1/2} e^{z w^2/(1-z tau)},
    principal branch."""
    denom = 1 - z * tau
    return cexp(z * nu) / csqrt(denom) * cexp(z * w * w / denom)


def laurent_series_coefficient(k: int, nu, tau, w, tol: float = 1e-18):
    """c_{2k-1}: the s^{2k-1} coefficient of (1/s) e^{nu s^2 - (w/tau)^2/s^2},

        sum_{q >= max(0,-k)} nu^{k+q} (-1)^q (w/tau)^{2q} / (q! (k+q)!).
    """
    acc = 0.0 + 0.0j
    x = complex(w) / complex(tau) if tau else 0.0
    x2 = x * x
    nu_c = complex(nu)
    q = max(0, -k)
    term_scale = (-1.0) ** q
    while q < 400:
        term = term_scale * nu_c ** (k + q) * x2 ** q \
            / (math.factorial(q) * math.factorial(k + q))
        acc += term
        if q > max(2, -k + 2) and abs(term) < tol * max(1.0, abs(acc)):
            break
        q += 1
        term_scale = -term_scale
    return acc


def laurent_coeff_closed(k: int, nu, tau, w):
    """a_{2k-1}(nu, tau, w) in closed form (principal sqrt(-tau))."""
    tau_c = complex(tau)
    pref = cexp(complex(nu) / tau_c - complex(w) ** 2 / tau_c) / sqrt_minus_tau(tau_c)
    return pref * laurent_series_coefficient(k, nu, tau, w)


def laurent_gausspoly(k: int, nu, tau, q_max: int = 40, tol: float = 1e-18) -> GaussPoly:
    """a_{2k-1} as a GaussPoly: polynomial in w^2 times the Gaussian envelope."""
    tau_c, nu_c = complex(tau), complex(nu)
    coeffs = {}
    q = max(0, -k)
    while q <= q_max:
        c = (-1.0) ** q * nu_c ** (k + q) / (math.factorial(q) * math.factorial(k + q)) \
            / tau_c ** (2 * q)
        coeffs[2 * q] = c
        if q > max(2, -k + 2) and abs(c) < tol:
            break
        q += 1
    deg = max(coeffs)
    poly = Poly([coeffs.get(i, 0.0) for i in range(deg + 1)])
    return GaussPoly(poly, -1 / tau_c, 0.0, 1 / sqrt_minus_tau(tau_c), nu_c / tau_c, 1)


@dataclass(frozen=True)
class LaurentObj:
    """Finite family of Laurent coefficients a_{2k-1} in GaussPoly form."""
    nu: complex
    tau: complex
    coeffs: dict  # odd integer 2k-1 -> GaussPoly

    @staticmethod
    def build(k_range, nu, tau) -> "LaurentObj":
        return LaurentObj(complex(nu), complex(tau),
                          {2 * k - 1: laurent_gausspoly(k, nu, tau) for k in k_range})


# ------------------------------------------------------------ contour route

def _contour_nodes(radius: float, n_nodes: int):
    th = 2 * np.pi * np.arange(n_nodes) / n_nodes
    return radius * np.exp(1j * th)


def residue_contour(k: int, nu, tau, w, radius: float = 1.0, n_nodes: int = 256,
                    check: bool = True):
    """a_{2k-1} = (1/2pi i) contour-integral s^{-2k} E(s) ds on |s| = radius.

    The integrand is evaluated through the z-form with the substitution
    1 - z tau = -s^2 tau, which is single valued in s (the double cover
    trivializes the cut); sqrt(-tau) is principal."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    tau_c, nu_c, w_c = complex(tau), complex(nu), complex(w)

    def value(n):
        s = _contour_nodes(radius, n)
        z = 1 / tau_c + s * s
        denom = -s * s * tau_c                      # 1 - z tau, exactly
        f = np.exp(z * nu_c) / (sqrt_minus_tau(tau_c) * s) * np.exp(z * w_c * w_c / denom)
        return np.mean(f * s ** (-2 * k) * s)        # (1/2pi i) * integral f ds

    got = value(n_nodes)
    if check:
        ref = value(2 * n_nodes)
        if abs(got - ref) > 1e-10 * max(1.0, abs(ref)):
            raise NodeCountError(f"contour integral not converged at {n_nodes} nodes")
    return got


def even_coefficient_contour(j: int, nu, tau, w, radius: float = 1.0,
                             n_nodes: int = 256):
    """The would-be even coefficient a_{2j}: vanishes (odd-degree expansion)."""
    tau_c, nu_c, w_c = complex(tau), complex(nu), complex(w)
    s = _contour_nodes(radius, n_nodes)
    z = 1 / tau_c + s * s
    denom = -s * s * tau_c
    f = np.exp(z * nu_c) / (sqrt_minus_tau(tau_c) * s) * np.exp(z * w_c * w_c / denom)
    return np.mean(f * s ** (-2 * j - 1) * s)


def closed_contour_vanishing(nu, tau, w, radius: float = 1.0, n_nodes: int = 256):
    """|contour-integral of :e_*^{z(nu+w-element)}: dz| around the branch point on
    the double cover (z = 1/tau + s^2, s once around; dz = 2s ds): the secondary
    residue is absent, so the integral vanishes."""
    tau_c, nu_c, w_c = complex(tau), complex(nu), complex(w)
    s = _contour_nodes(radius, n_nodes)
    z = 1 / tau_c + s * s
    denom = -s * s * tau_c
    f = np.exp(z * nu_c) / (sqrt_minus_tau(tau_c) * s) * np.exp(z * w_c * w_c / denom)
    integral = 2j * np.pi * np.mean(f * 2 * s * s)
    return abs(integral)


def ladder_residual(k: int, nu, tau, w_grid) -> float:
    """|(nu + w-element^2) * a_{2k-1} - (k + 1/2) a_{2k+1}| on the grid.

    The left product is the finite polynomial product rule applied to the
    GaussPoly form (tau-expression of the quadratic element is nu + w^2 + tau/2)."""
    tau_c, nu_c = complex(tau), complex(nu)
    a_lo = laurent_gausspoly(k, nu, tau)
    a_hi = laurent_gausspoly(k + 1, nu, tau)
    lhs = star_poly_gauss(Poly([nu_c + tau_c / 2, 0.0, 1.0]), a_lo, tau_c)
    worst = 0.0
    for w in w_grid:
        worst = max(worst, cabs(lhs(w) - (k + 0.5) * a_hi(w)))
    return worst


# ----------------------------------------------------- boundary-value pair

@dataclass(frozen=True)
class PhiPsi:
    """Even/odd solutions of the quadratic eigen-equation built from the
    delta pair at +-alpha, pinned by value/slope at w = 0."""
    alpha: complex
    tau: complex
    a: complex          # coefficient of delta at +alpha (argument w + alpha)
    b: complex          # coefficient of delta at -alpha
    phi_parts: tuple    # (GaussPoly, GaussPoly) for Phi
    psi_parts: tuple

    def phi(self, w):
        return self.phi_parts[0](w) + self.phi_parts[1](w)

    def psi(self, w):
        return self.psi_parts[0](w) + self.psi_parts[1](w)


def phi_psi(alpha, tau) -> PhiPsi:
    """Solve the 2x2 boundary system for Phi (value 1, slope 0) and Psi
    (value 0, slope 1) as combinations of the two shifted deltas."""
    from .distributions import delta_tau

    alpha_c, tau_c = complex(alpha), complex(tau)
    dp = delta_tau(alpha_c, tau_c)       # delta_*(w + alpha)
    dm = delta_tau(-alpha_c, tau_c)      # delta_*(w - alpha)
    v = np.array([dp(0.0), dm(0.0)])
    d = np.array([dp.diff()(0.0), dm.diff()(0.0)])
    M = np.array([v, d])
    if abs(np.linalg.det(M)) < 1e-14 * max(1.0, float(np.abs(M).max()) ** 2):
        raise DegenerateBoundary(f"boundary system singular at alpha={alpha}")
    ab_phi = np.linalg.solve(M, np.array([1.0, 0.0]))
    ab_psi = np.linalg.solve(M, np.array([0.0, 1.0]))
    return PhiPsi(alpha_c, tau_c, complex(ab_phi[0]), complex(ab_phi[1]),
                  (dp.scaled(ab_phi[0]), dm.scaled(ab_phi[1])),
                  (dp.scaled(ab_psi[0]), dm.scaled(ab_psi[1])))


def eigen_equation_poly(alpha, tau, member: GaussPoly) -> GaussPoly:
    """(alpha^2 - w-element^2) * member: polynomial prefactor of the result
    cancels identically for each delta member (exact over exact scalars)."""
    return star_poly_gauss(Poly([alpha * alpha - tau / 2, 0, -1]), member, tau)


def semigroup_on_delta(t, alpha, tau, w_grid) -> float:
    """|quad-exponential(t) * delta_*(w+alpha) - e^{t alpha^2} delta_*(w+alpha)|.

    Computed by the mu-parameterized closed product, which is regular at
    t = 1/tau (removable singularity)."""
    from .distributions import delta_tau

    alpha_c, tau_c, t_c = complex(alpha), complex(tau), complex(t)
    d = delta_tau(alpha_c, tau_c)
    prod = quadexp_star(t_c, tau_c, d)
    worst = 0.0
    for w in w_grid:
        worst = max(worst, cabs(prod(w) - cexp(t_c * alpha_c * alpha_c) * d(w)))
    return worst


def phi_group_action_residual(t, alpha, tau, w_grid) -> float:
    """quad-exponential(t) * Phi_alpha = e^{t alpha^2} Phi_alpha, all t
    (including t = 1/tau: the delta pair removes the singularity)."""
    pp = phi_psi(alpha, tau)
    t_c, tau_c = complex(t), complex(tau)
    scale = cexp(t_c * complex(alpha) ** 2)
    worst = 0.0
    for w in w_grid:
        acted = quadexp_star(t_c, tau_c, pp.phi_parts[0])(w) \
            + quadexp_star(t_c, tau_c, pp.phi_parts[1])(w)
        worst = max(worst, cabs(acted - scale * pp.phi(w)))
    return worst


# ------------------------------------------------------ orphan annihilation

def orphan_annihilation(t, k: int, nu, tau, w_grid, n_nodes: int = 256) -> dict:
    """The t-family kills every Laurent coefficient away from t = 0:

      t != 0:  (1/2pi i) contour s^{-2k} :e_*^{(t + 1/tau + s^2)(...)}: ds -> 0
               with radius r < |t|/2 (the shifted branch point |s| = sqrt|t|
               lies outside), also rechecked at r/2;
      t = 0:   the bracket equals (k + 1/2) a_{2k+1} instead (ladder).

    Returns {"annihilation": max |integral| over the grid at r and r/2,
             "t_zero_values": (k+1/2) a_{2k+1} on the grid}."""
    tau_c, nu_c, t_c = complex(tau), complex(nu), complex(t)
    if t_c == 0:
        raise ValueError("t must be nonzero for the annihilation member")
    r0 = abs(t_c) / 2
    worst = 0.0
    for radius in (r0, r0 / 2):
        s = _contour_nodes(radius, n_nodes)
        z = t_c + 1 / tau_c + s * s
        denom = 1 - z * tau_c
        # branch continued around the loop; winding of denom around 0 is zero
        root = _continued_sqrt_along(denom)
        for w in w_grid:
            w_c = complex(w)
            f = np.exp(z * nu_c) / root * np.exp(z * w_c * w_c / denom)
            integral = np.mean(f * s ** (-2 * k) * s)
            worst = max(worst, abs(integral))
    a_hi = laurent_gausspoly(k + 1, nu, tau)
    t_zero = np.asarray([(k + 0.5) * a_hi(w) for w in w_grid])
    return {"annihilation": worst, "t_zero_values": t_zero}


def _continued_sqrt_along(vals):
    """Branch-continuous sqrt along a closed node sequence; raises if the loop
    does not close (the branch point would be inside)."""
    out = np.empty_like(vals, dtype=complex)
    prev = cmath.sqrt(vals[0])
    for i, v in enumerate(vals):
        pv = cmath.sqrt(v)
        prev = pv if abs(pv - prev) <= abs(pv + prev) else -pv
        out[i] = prev
    closing = cmath.sqrt(vals[0])
    if not (abs(closing - prev) <= abs(closing + prev)):
        raise SingularPoint("square-root branch does not close around the contour")
    return out


# -------------------------------------------------------- covariant calculus

def parallel_polynomial(k: int, m: int) -> LaurentPoly2:
    """f_{k,m}(z, tau) = (m+k) z^m - m tau^k z^{m+k}; in the kernel of the
    surface derivative (z-slot partial restricted to tau = 1/z)."""
    return LaurentPoly2({(m, 0): QC(m + k)}) - LaurentPoly2({(m + k, k): QC(m)})


def surface_derivative_exact(f: LaurentPoly2) -> dict:
    """d/dz in the z slot, then restrict tau = 1/z; exact Laurent dict in z."""
    return f.d_first().restrict_second_to_inverse()


class NDict:
    """Exact Laurent polynomial over integer exponent tuples (z, w, nu)."""

    def __init__(self, terms=None):
        self.terms = {}
        for kx, v in (terms or {}).items():
            v = v if isinstance(v, QC) else QC(v)
            if v:
                self.terms[kx] = v

    def __add__(self, other):
        out = dict(self.terms)
        for kx, v in other.terms.items():
            s = out.get(kx, QC(0)) + v
            if s:
                out[kx] = s
            else:
                out.pop(kx, None)
        return NDict(out)

    def __sub__(self, other):
        return self + other * QC(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QC)):
            c = other if isinstance(other, QC) else QC(other)
            return NDict({kx: v * c for kx, v in self.terms.items()})
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                kx = tuple(a + b for a, b in zip(k1, k2))
                s = out.get(kx, QC(0)) + v1 * v2
                if s:
                    out[kx] = s
                else:
                    out.pop(kx, None)
        return NDict(out)

    __rmul__ = __mul__

    def d(self, axis: int) -> "NDict":
        out = {}
        for kx, v in self.terms.items():
            if kx[axis]:
                nk = list(kx)
                nk[axis] -= 1
                out[tuple(nk)] = v * kx[axis]
        return NDict(out)

    def shift(self, axis: int, by: int) -> "NDict":
        out = {}
        for kx, v in self.terms.items():
            nk = list(kx)
            nk[axis] += by
            out[tuple(nk)] = v
        return NDict(out)

    def is_zero(self) -> bool:
        return not self.terms


def diffeqevol_exact_defect(k: int, q_max: int = 8) -> NDict:
    """Exact symbolic defect of the covariant evolution equation for a_{2k-1}.

    Writing a = gamma(z,w) S(z,w,nu) with the envelope rules
        d_z gamma = (nu - w^2 + 1/(2z)) gamma,   d_w gamma = -2 z w gamma,
    the surface derivative of a minus the product (nu + w-element^2) * a reduces
    to gamma * [defect]; the returned dict is that defect (empty = identity
    exact at every truncation order).  Axes: (z, w, nu)."""
    # S = sum_q (-1)^q /(q!(k+q)!) z^{2q} w^{2q} nu^{k+q}
    S = NDict()
    for q in range(max(0, -k), q_max + 1):
        c = QC(Fraction((-1) ** q, math.factorial(q) * math.factorial(k + q)))
        S = S + NDict({(2 * q, 2 * q, k + q): c})

    nu = NDict({(0, 0, 1): QC(1)})
    w2 = NDict({(0, 2, 0): QC(1)})
    half_zinv = NDict({(-1, 0, 0): QC(Fraction(1, 2))})
    quarter_zinv2 = NDict({(-2, 0, 0): QC(Fraction(1, 4))})

    dS_z = S.d(0)
    dS_w = S.d(1)
    d2S_w = dS_w.d(1)
    dg = nu - w2 + half_zinv                   # d_z gamma / gamma
    gw = NDict({(1, 1, 0): QC(-2)})            # d_w gamma / gamma
    gww = NDict({(1, 0, 0): QC(-2)}) + NDict({(2, 2, 0): QC(4)})  # d_w^2 gamma/gamma

    # surface derivative: (d_z + (1/4z^2) d_w^2) applied to gamma*S, over gamma
    lhs = dg * S + dS_z + quarter_zinv2 * (gww * S + QC(2) * gw * dS_w + d2S_w)

    # product side: (nu + w^2 + tau/2) A + tau w A' + (tau^2/4) A'' with tau = 1/z
    tau_half = half_zinv
    rhs = (nu + w2 + tau_half) * S \
        + NDict({(-1, 1, 0): QC(1)}) * (gw * S + dS_w) \
        + quarter_zinv2 * (gww * S + QC(2) * gw * dS_w + d2S_w)
    return lhs - rhs


def covariant_derivative(f, z0, df_dz=None, h: float = 1e-5):
    """Surface covariant derivative of a GaussPoly-valued family f(z) living on
    tau = 1/z:   (d/dz) f + (1/4 z0^2) d^2/dw^2 f.

    df_dz: optional analytic derivative callable; otherwise 4th-order central
    differences in z.  Returns a callable w -> value."""
    z0 = complex(z0)
    f0 = f(z0)
    if df_dz is not None:
        dz = df_dz(z0)

        def dz_val(w):
            return dz(w) if callable(dz) else dz
    else:
        def dz_val(w):
            return (-f(z0 + 2 * h)(w) + 8 * f(z0 + h)(w)
                    - 8 * f(z0 - h)(w) + f(z0 - 2 * h)(w)) / (12 * h)

    dww = f0.diff().diff()

    def value(w):
        return dz_val(w) + dww(w) / (4 * z0 * z0)

    return value


# ------------------------------------------------- covariant evolution solve

def evolution_family(H: Poly, nu):
    """Closed family F(z) = sqrt(z) e^{z(nu - w^2)} H(z w) as a GaussPoly-valued
    callable of z = 1/tau (principal sqrt; continuation handled by callers)."""
    nu_c = complex(nu)

    def F(z):
        z = complex(z)
        coeffs = [H.coeffs[j] * z ** j for j in range(len(H.coeffs))]
        return GaussPoly(Poly(coeffs), -z, 0.0, csqrt(z), z * nu_c, 1)

    def dF_dz(z):
        z = complex(z)
        P = [H.coeffs[j] * z ** j for j in range(len(H.coeffs))]
        dP = [H.coeffs[j] * j * z ** (j - 1) if j else 0.0
              for j in range(len(H.coeffs))]
        # d/dz [sqrt(z) e^{z nu} P(zw) e^{-z w^2}]
        #   = [ (1/(2z) + nu) P + dP/dz - w^2 P ] * envelope
        poly = Poly(dP) + Poly(P).scale(1 / (2 * z) + nu_c) \
            - Poly([0.0, 0.0, 1.0]) * Poly(P)
        return GaussPoly(poly, -z, 0.0, csqrt(z), z * nu_c, 1)

    return F, dF_dz


def covariant_evolution_residual(H: Poly, nu, z, w_grid) -> float:
    """Residual of the first-order surface equation

        d_z F = tau w d_w F + (w^2 + nu + tau/2) F,   tau = 1/z,

    for the closed family; derivatives analytic."""
    F, dF = evolution_family(H, nu)
    z = complex(z)
    tau = 1 / z
    f0 = F(z)
    lhs = dF(z)
    fw = f0.diff()
    worst = 0.0
    scale = max(f0.max_abs_on(w_grid), 1e-300)
    for w in w_grid:
        w_c = complex(w)
        rhs = tau * w_c * fw(w_c) + (w_c * w_c + complex(nu) + tau / 2) * f0(w_c)
        worst = max(worst, cabs(lhs(w_c) - rhs))
    return worst / scale


def covariant_evolution_solve(H: Poly, nu, z_path, w_grid, margin: float = 1e-9):
    """Evaluate the closed family along a path of z = 1/tau, witnessing the
    absence of singular points (polynomial initial data).  Raises PathError if
    the path meets z = 0."""
    F, _ = evolution_family(H, nu)
    out = []
    for z in z_path:
        if abs(complex(z)) < margin:
            raise PathError("z-path hits 0")
        g = F(z)
        vals = np.asarray([g(w) for w in w_grid])
        if not np.all(np.isfinite(vals.view(float))):
            raise PathError(f"solution singular at z={z}")
        out.append(vals)
    return out


def laurent_density_from_H(s, nu, z, w):
    """Recover the Laurent density from the evolution solution with
    H(x) = (1/(i s)) e^{nu s^2 - x^2/s^2}: equals the closed z-form at
    z' = z + s^2... evaluated on the surface it reproduces
    :e_*^{(1/tau + s^2)(nu + w-element^2)}: with z = 1/tau."""
    s_c, z_c, nu_c, w_c = complex(s), complex(z), complex(nu), complex(w)
    H_val = (1 / (1j * s_c)) * cexp(nu_c * s_c * s_c - (z_c * w_c) ** 2 / (s_c * s_c))
    return csqrt(z_c) * cexp(z_c * (nu_c - w_c * w_c)) * H_val


# ----------------------------------------------------- non-compact integrals

def gamma_path_integral(nu, tau, waypoints, w_grid, n_panels: int = 48,
                        n_nodes: int = 16, deriv: int = 0):
    """integral of :e_*^{z(nu + w-element^2)}: dz along a polyline in z, branch
    of (1 - z tau)^{-1/2} continued from the first waypoint (principal there).

    deriv = 0,1,2 returns d^deriv/dw^deriv of the integrand integrated."""
    tau_c, nu_c = complex(tau), complex(nu)
    ws = np.asarray([complex(w) for w in w_grid])
    xs, wts = np.polynomial.legendre.leggauss(n_nodes)
    total = np.zeros(len(ws), dtype=complex)
    prev_root = csqrt(1 - complex(waypoints[0]) * tau_c)
    for a, b in zip(waypoints[:-1], waypoints[1:]):
        a, b = complex(a), complex(b)
        edges = np.linspace(0.0, 1.0, n_panels + 1)
        ts = (edges[:-1, None] + np.diff(edges)[:, None] * (xs[None, :] + 1) / 2).ravel()
        wt = (np.diff(edges)[:, None] * wts[None, :] / 2).ravel()
        zs = a + (b - a) * ts
        denoms = 1 - zs * tau_c
        roots = np.empty_like(zs)
        pr = prev_root
        for i, dnm in enumerate(denoms):
            pv = cmath.sqrt(dnm)
            pr = pv if abs(pv - pr) <= abs(pv + pr) else -pv
            roots[i] = pr
        prev_root = pr
        alpha = zs / denoms
        base = np.exp(zs[None, :] * nu_c + alpha[None, :] * ws[:, None] ** 2) / roots[None, :]
        if deriv == 1:
            base = base * (2 * alpha[None, :] * ws[:, None])
        elif deriv == 2:
            base = base * (2 * alpha[None, :] + (2 * alpha[None, :] * ws[:, None]) ** 2)
        total = total + (b - a) * np.sum(base * wt[None, :], axis=1)
    return total


def gamma_inverse_residual(nu, tau, waypoints, w_grid) -> float:
    """(nu + w-element^2) * integral = boundary term = 1 for a path from far
    left (Re z nu -> -inf) to 0; returns the max grid residual."""
    tau_c, nu_c = complex(tau), complex(nu)
    f0 = gamma_path_integral(nu, tau, waypoints, w_grid, deriv=0)
    f1 = gamma_path_integral(nu, tau, waypoints, w_grid, deriv=1)
    f2 = gamma_path_integral(nu, tau, waypoints, w_grid, deriv=2)
    ws = np.asarray([complex(w) for w in w_grid])
    lhs = (nu_c + ws ** 2 + tau_c / 2) * f0 + tau_c * ws * f1 + tau_c ** 2 / 4 * f2
    return float(np.abs(lhs - 1.0).max())
