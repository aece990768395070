"""Exact arithmetic support: rational-complex scalars and small exact polynomial helpers.

QC is a complex number with Fraction real and imaginary parts.  It interoperates
with int and Fraction, so generic code written for +,-,*,/ runs unchanged over
QC, float complex, or mpmath scalars.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

_Rat = Union[int, Fraction]


class QC:
    """Rational-complex number (exact)."""

    __slots__ = ("re", "im")

    def __init__(self, re: _Rat = 0, im: _Rat = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, QC):
            return x
        if isinstance(x, (int, Fraction)):
            return QC(x)
        return NotImplemented

    def __add__(self, other):
        o = QC._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QC(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __sub__(self, other):
        o = QC._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QC(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = QC._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QC(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = QC._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QC(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QC._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero QC")
        return QC((self.re * o.re + self.im * o.im) / d,
                  (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = QC._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** (-n))
        out = QC(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = QC._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self) -> "QC":
        return QC(self.re, -self.im)

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        if self.im == 0:
            return f"QC({self.re})"
        return f"QC({self.re}, {self.im})"


QC_I = QC(0, 1)


def as_exact(x) -> QC:
    """Coerce int/Fraction/QC/(re,im) pair to QC."""
    if isinstance(x, QC):
        return x
    if isinstance(x, (int, Fraction)):
        return QC(x)
    if isinstance(x, tuple) and len(x) == 2:
        return QC(x[0], x[1])
    raise TypeError(f"cannot represent {x!r} exactly")


class LaurentPoly2:
    """Exact Laurent polynomial in two symbols (z, u) with QC coefficients.

    Exponents may be negative.  Used for surface calculus where functions of
    (z, tau) restrict to the surface tau = 1/z.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: dict[(i, j)] -> QC, monomial z^i u^j
        self.terms = {}
        if terms:
            for k, v in terms.items():
                v = v if isinstance(v, QC) else QC(v)
                if v:
                    self.terms[k] = v

    @staticmethod
    def mono(c, i=0, j=0) -> "LaurentPoly2":
        return LaurentPoly2({(i, j): as_exact(c)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, QC(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly2(out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QC)):
            c = as_exact(other)
            return LaurentPoly2({k: v * c for k, v in self.terms.items()})
        out = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                s = out.get(k, QC(0)) + v1 * v2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def d_first(self) -> "LaurentPoly2":
        """Partial derivative in the first symbol."""
        out = {}
        for (i, j), v in self.terms.items():
            if i != 0:
                out[(i - 1, j)] = v * i
        return LaurentPoly2(out)

    def restrict_second_to_inverse(self) -> dict:
        """Substitute u = z^{-1}; returns dict exponent->QC in z."""
        out = {}
        for (i, j), v in self.terms.items():
            e = i - j
            s = out.get(e, QC(0)) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, LaurentPoly2) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly2(0)"
        bits = [f"({v!r})*z^{i}*u^{j}" for (i, j), v in sorted(self.terms.items())]
        return " + ".join(bits)
