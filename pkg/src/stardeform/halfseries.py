"""Exact half-series algebra: truncated series in the basis q = e_*^{iw}.

The exponential law collapses the basis (q^m q^n = q^{m+n}), so the algebra is
ordinary truncated power-series arithmetic with exact rational-complex
coefficients; the tau-expression of q^n carries the weight e^{-n^2 tau/4}.
Euler and Bernoulli numbers drop out of the symmetrized inversions below with
bit-exact rational values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NonUnit
from .exact import QC

DEFAULT_TRUNC = 24


def _qc(x) -> QC:
    if isinstance(x, QC):
        return x
    return QC(x)


@dataclass(frozen=True)
class HalfSeries:
    """e_*^{l i w} * sum_{n>=0} a_n e_*^{n i w}, coefficients exact, truncated."""
    base_deg: int
    coeffs: tuple          # QC, length K+1
    trunc: int

    @staticmethod
    def from_list(cs, base_deg: int = 0, trunc: int = DEFAULT_TRUNC) -> "HalfSeries":
        cs = [_qc(c) for c in cs][:trunc + 1]
        cs += [QC(0)] * (trunc + 1 - len(cs))
        return HalfSeries(base_deg, tuple(cs), trunc)

    @staticmethod
    def one(trunc: int = DEFAULT_TRUNC) -> "HalfSeries":
        return HalfSeries.from_list([1], 0, trunc)

    def normalized(self) -> "HalfSeries":
        """Shift the base degree so the constant term is nonzero (zero series unchanged)."""
        cs = list(self.coeffs)
        shift = 0
        while cs and not cs[0] and shift < self.trunc:
            cs.pop(0)
            shift += 1
        if not cs or not any(cs):
            return HalfSeries.from_list([], self.base_deg, self.trunc)
        cs += [QC(0)] * shift
        return HalfSeries(self.base_deg + shift, tuple(cs), self.trunc)

    def __add__(self, other: "HalfSeries") -> "HalfSeries":
        if self.base_deg != other.base_deg:
            lo = min(self.base_deg, other.base_deg)
            a = self.with_base(lo)
            b = other.with_base(lo)
            return a + b
        K = min(self.trunc, other.trunc)
        return HalfSeries(self.base_deg,
                          tuple(a + b for a, b in zip(self.coeffs[:K + 1], other.coeffs[:K + 1])),
                          K)

    def with_base(self, new_base: int) -> "HalfSeries":
        """Re-express with a lower base degree (pads leading zeros)."""
        if new_base > self.base_deg:
            raise ValueError("can only lower the base degree")
        pad = self.base_deg - new_base
        cs = (QC(0),) * pad + self.coeffs
        return HalfSeries(new_base, cs[:self.trunc + 1], self.trunc)

    def scale(self, c) -> "HalfSeries":
        c = _qc(c)
        return HalfSeries(self.base_deg, tuple(c * a for a in self.coeffs), self.trunc)


def hs_mul(f: HalfSeries, g: HalfSeries) -> HalfSeries:
    """Cauchy product; base degrees add; exact."""
    K = min(f.trunc, g.trunc)
    out = [QC(0)] * (K + 1)
    for i, a in enumerate(f.coeffs[:K + 1]):
        if not a:
            continue
        for j, b in enumerate(g.coeffs[:K + 1 - i]):
            if b:
                out[i + j] = out[i + j] + a * b
    return HalfSeries(f.base_deg + g.base_deg, tuple(out), K)


def hs_inverse(f: HalfSeries) -> HalfSeries:
    """Inverse by indeterminate coefficients: with f = q^l sum a_n q^n, a_0 != 0,
    solve (sum a q)(sum b q) = 1 order by order; base degree negates."""
    a = f.coeffs
    if not a or not a[0]:
        raise NonUnit("constant term vanishes; not invertible in the half-series algebra")
    K = f.trunc
    b = [QC(0)] * (K + 1)
    b[0] = QC(1) / a[0]
    for n in range(1, K + 1):
        s = QC(0)
        for j in range(1, n + 1):
            if a[j]:
                s = s + a[j] * b[n - j]
        b[n] = -s / a[0]
    return HalfSeries(-f.base_deg, tuple(b), K)


def exp_series(scale, trunc: int = DEFAULT_TRUNC) -> HalfSeries:
    """sum_l scale^l / l! q^l  (the exponential of the basis element, scaled)."""
    cs = []
    c = QC(1)
    for l in range(trunc + 1):
        if l:
            c = c * _qc(scale) / l
        cs.append(c)
    return HalfSeries.from_list(cs, 0, trunc)


def euler_numbers(N: int, trunc: int | None = None) -> list:
    """E_0, E_2, ..., E_{2N} as exact Fractions from

        e_*^{q} (1 + e^{2q}-series)^{-1} + e_*^{-q} (1 + e^{-2q}-series)^{-1}
            = sum E_{2n} q^{2n} / (2n)!

    (q standing for e_*^{iw}).  Odd coefficients vanish identically."""
    K = trunc if trunc is not None else max(2 * N + 2, DEFAULT_TRUNC)
    one = HalfSeries.one(K)
    lhs = hs_mul(exp_series(1, K), hs_inverse(one + exp_series(2, K))) \
        + hs_mul(exp_series(-1, K), hs_inverse(one + exp_series(-2, K)))
    assert lhs.base_deg == 0
    out = []
    for n in range(N + 1):
        c = lhs.coeffs[2 * n]
        if c.im != 0:
            raise ArithmeticError("Euler extraction produced a complex value")
        out.append(c.re * math.factorial(2 * n))
    for n in range(0, min(2 * N + 1, K), 2):
        if lhs.coeffs[n + 1]:
            raise ArithmeticError("odd-index Euler coefficient nonzero")
    return out


def euler_numbers_recurrence(N: int) -> list:
    """Independent oracle: sum_k binom(2n, 2k) E_{2k} = 0 for n >= 1, E_0 = 1."""
    out = [Fraction(1)]
    for n in range(1, N + 1):
        s = Fraction(0)
        for k in range(n):
            s += math.comb(2 * n, 2 * k) * out[k]
        out.append(-s)
    return out


def bernoulli_numbers(N: int, trunc: int | None = None) -> list:
    """B_0, B_2, ..., B_{2N} as exact Fractions from the symmetrized inversions

        (1/2)(sum q^n/(n+1)!)^{-1} + (1/2)(sum (-q)^n/(n+1)!)^{-1}
            = sum B_{2n} q^{2n} / (2n)!

    (the symmetrization removes the odd B_1 term)."""
    K = trunc if trunc is not None else max(2 * N + 2, DEFAULT_TRUNC)
    plus = HalfSeries.from_list([QC(Fraction(1, math.factorial(n + 1))) for n in range(K + 1)],
                                0, K)
    minus = HalfSeries.from_list([QC(Fraction((-1) ** n, math.factorial(n + 1)))
                                  for n in range(K + 1)], 0, K)
    lhs = hs_inverse(plus).scale(Fraction(1, 2)) + hs_inverse(minus).scale(Fraction(1, 2))
    out = []
    for n in range(N + 1):
        c = lhs.coeffs[2 * n]
        out.append(c.re * math.factorial(2 * n))
    for n in range(0, min(2 * N + 1, K), 2):
        if lhs.coeffs[n + 1]:
            raise ArithmeticError("odd-index Bernoulli coefficient nonzero")
    return out


def bernoulli_numbers_recurrence(N: int) -> list:
    """Independent oracle: sum_{k<n} binom(n+1,k) B_k = -(n+1) B_n, B_1 = -1/2."""
    full = [Fraction(1)]
    for n in range(1, 2 * N + 1):
        s = Fraction(0)
        for k in range(n):
            s += math.comb(n + 1, k) * full[k]
        full.append(-s / (n + 1))
    return [full[2 * n] for n in range(N + 1)]


def hs_to_tau_expression(f: HalfSeries, tau, w_grid):
    """sum a_n e^{-(l+n)^2 tau/4} e^{i(l+n)w} on the grid (Re tau > 0)."""
    tau_c = complex(tau)
    if tau_c.real <= 0:
        raise DomainError("Re tau must be positive")
    ws = np.asarray([complex(w) for w in w_grid])
    acc = np.zeros_like(ws, dtype=complex)
    for n, c in enumerate(f.coeffs):
        if not c:
            continue
        k = f.base_deg + n
        acc = acc + c.to_complex() * np.exp(-k * k * tau_c / 4 + 1j * k * ws)
    return acc


def zero_detection(f: HalfSeries, tau, probe_points=None) -> bool:
    """Injectivity probe: recover the coefficients from K+1 grid samples of the
    tau-expression by solving the (weighted Vandermonde) linear system; returns
    True when all recovered coefficients vanish (so the element is zero)."""
    K = f.trunc
    if probe_points is None:
        probe_points = [0.1 + 2.9 * j / K for j in range(K + 1)]
    vals = hs_to_tau_expression(f, tau, probe_points)
    tau_c = complex(tau)
    M = np.empty((K + 1, K + 1), dtype=complex)
    for r, w in enumerate(probe_points):
        for n in range(K + 1):
            k = f.base_deg + n
            M[r, n] = np.exp(-k * k * tau_c / 4 + 1j * k * w)
    rec = np.linalg.solve(M, vals)
    return bool(np.abs(rec).max() < 1e-9)


# ----------------------------- independent formal-basis twin (replacement)

class FormalSeries:
    """Truncated formal power series over exact rational-complex coefficients.

    Distinct implementation used for the replacement-principle cross-check:
    the same indeterminate-constant computations run in the formal power basis
    and must produce identical coefficient sequences."""

    def __init__(self, coeffs, trunc: int = DEFAULT_TRUNC):
        cs = [_qc(c) for c in coeffs][:trunc + 1]
        cs += [QC(0)] * (trunc + 1 - len(cs))
        self.coeffs = cs
        self.trunc = trunc

    def __add__(self, other):
        return FormalSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.trunc)

    def __mul__(self, other):
        K = self.trunc
        out = [QC(0)] * (K + 1)
        for n in range(K + 1):
            acc = QC(0)
            for i in range(n + 1):
                acc = acc + self.coeffs[i] * other.coeffs[n - i]
            out[n] = acc
        return FormalSeries(out, K)

    def inverse(self):
        if not self.coeffs[0]:
            raise NonUnit("constant term vanishes")
        K = self.trunc
        inv0 = QC(1) / self.coeffs[0]
        b = FormalSeries([inv0], K)
        # Newton iteration b <- b(2 - f b), doubling correct order each step
        order = 1
        while order <= K:
            two = FormalSeries([2], K)
            b = b * (two + (self * b).negate())
            order *= 2
        return b

    def negate(self):
        return FormalSeries([QC(0) - c for c in self.coeffs], self.trunc)

    def scale(self, c):
        c = _qc(c)
        return FormalSeries([c * a for a in self.coeffs], self.trunc)


def formal_exp(scale, trunc: int = DEFAULT_TRUNC) -> FormalSeries:
    cs = []
    c = QC(1)
    for l in range(trunc + 1):
        if l:
            c = c * _qc(scale) / l
        cs.append(c)
    return FormalSeries(cs, trunc)


def euler_numbers_formal(N: int, trunc: int | None = None) -> list:
    """Replacement-principle twin of euler_numbers in the formal power basis."""
    K = trunc if trunc is not None else max(2 * N + 2, DEFAULT_TRUNC)
    one = FormalSeries([1], K)
    lhs = formal_exp(1, K) * (one + formal_exp(2, K)).inverse() \
        + formal_exp(-1, K) * (one + formal_exp(-2, K)).inverse()
    return [lhs.coeffs[2 * n].re * math.factorial(2 * n) for n in range(N + 1)]


def bernoulli_numbers_formal(N: int, trunc: int | None = None) -> list:
    K = trunc if trunc is not None else max(2 * N + 2, DEFAULT_TRUNC)
    plus = FormalSeries([QC(Fraction(1, math.factorial(n + 1))) for n in range(K + 1)], K)
    minus = FormalSeries([QC(Fraction((-1) ** n, math.factorial(n + 1)))
                          for n in range(K + 1)], K)
    lhs = plus.inverse().scale(Fraction(1, 2)) + minus.inverse().scale(Fraction(1, 2))
    return [lhs.coeffs[2 * n].re * math.factorial(2 * n) for n in range(N + 1)]


# ---------------------------------------------- two-parameter exploration

def conjecture_coefficients(tau, tau_prime, N: int, w_points=None):
    """Exploratory only: numeric coefficients a_{2n}(tau, tau') of the
    re-expansion of the one-sided Euler combination at a second expression
    parameter.  No acceptance criterion attaches; emitted by the CLI for
    exploration."""
    tau_c, tp = complex(tau), complex(tau_prime)
    if tau_c.real <= 0 or (tau_c - tp).real <= 0 or tp.real <= 0:
        raise DomainError("need Re tau' > 0 and Re(tau - tau') > 0")
    K = max(4 * N + 8, 32)
    one = HalfSeries.one(K)
    comb = hs_mul(exp_series(1, K), hs_inverse(one + exp_series(2, K))) \
        + hs_mul(exp_series(-1, K), hs_inverse(one + exp_series(-2, K)))
    # tau-expression of the combination, sampled, then matched against the
    # formal-power basis weights at tau'
    if w_points is None:
        w_points = [0.05 + 2.8 * j / (2 * N) for j in range(2 * N + 1)]
    vals = hs_to_tau_expression(comb, tau_c, w_points)
    M = np.empty((len(w_points), N + 1), dtype=complex)
    for r, w in enumerate(w_points):
        for n in range(N + 1):
            M[r, n] = (1j * w) ** (2 * n)
    coef, *_ = np.linalg.lstsq(M, vals, rcond=None)
    return coef
