"""Integral binary quadratic forms of negative discriminant.

Forms (a, b, c) stand for a*x^2 + b*x*y + c*y^2 and represent ideal
classes of the imaginary quadratic order of discriminant b^2 - 4ac.
Reduction, class-group enumeration, the height-prediction sum
S(D) = sum 1/a, and the CM point tau of a form all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import gmpy2

from .errors import PreconditionError
from .numerics import APComplex


@dataclass(frozen=True)
class Discriminant:
    d: int

    def __post_init__(self):
        if self.d >= 0 or self.d % 4 not in (0, 1):
            raise PreconditionError(f"{self.d} is not a negative discriminant")

    def __int__(self):
        return self.d


def _as_disc(D) -> int:
    d = D.d if isinstance(D, Discriminant) else int(D)
    if d >= 0 or d % 4 not in (0, 1):
        raise PreconditionError(f"{d} is not a negative discriminant")
    return d


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def translate(self, k: int) -> "QuadForm":
        """Proper equivalence (x, y) -> (x + k*y, y): b -> b + 2ak."""
        a, b, c = self.a, self.b, self.c
        return QuadForm(a, b + 2 * a * k, a * k * k + b * k + c)

    def transform(self, u: int, r: int, v: int, s: int) -> "QuadForm":
        """Apply the SL2 matrix [[u, r], [v, s]] (det = 1)."""
        if u * s - v * r != 1:
            raise PreconditionError("transform matrix must have determinant 1")
        a, b, c = self.a, self.b, self.c
        a2 = self.value(u, v)
        c2 = self.value(r, s)
        b2 = 2 * (a * u * r + c * v * s) + b * (u * s + v * r)
        return QuadForm(a2, b2, c2)


def reduce(f: QuadForm) -> QuadForm:
    """Reduced form properly equivalent to f (positive definite case)."""
    if f.disc() >= 0:
        raise PreconditionError("reduction requires negative discriminant")
    if f.a <= 0:
        raise PreconditionError("form must be positive definite (a > 0)")
    a, b, c = f.a, f.b, f.c
    while True:
        # normalize: -a < b <= a
        if b > a or b <= -a:
            k = (a - b) // (2 * a)
            b, c = b + 2 * a * k, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


def enumerate_reduced(D) -> list[QuadForm]:
    """All reduced primitive forms of discriminant D, one per ideal class."""
    d = _as_disc(D)
    out = []
    amax = isqrt(-d // 3)
    for a in range(1, amax + 1):
        b0 = d & 1
        for b in range(b0, a + 1, 2):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            for bb in ((b, -b) if 0 < b < a and a < c else (b,)):
                g = gcd(gcd(a, bb), c)
                if g == 1:
                    out.append(QuadForm(a, bb, c))
    out.sort(key=lambda f: (f.a, -f.b))
    return out


def class_number(D) -> int:
    return len(enumerate_reduced(D))


def s_sum(D) -> Fraction:
    """S(D) = sum of 1/a over reduced primitive forms of discriminant D."""
    total = Fraction(0)
    for f in enumerate_reduced(D):
        total += Fraction(1, f.a)
    return total


def form_to_tau(f: QuadForm, prec: int = 64) -> APComplex:
    """Root tau = (-b + i*sqrt(|d|)) / (2a) of a X^2 + b X + c in H."""
    if f.a <= 0:
        raise PreconditionError("form must have a > 0")
    d = f.disc()
    if d >= 0:
        raise PreconditionError("form must have negative discriminant")
    ctx = gmpy2.context(precision=prec)
    s = ctx.sqrt(gmpy2.mpfr(-d, prec))
    re = ctx.div(gmpy2.mpfr(-f.b, prec), gmpy2.mpfr(2 * f.a, prec))
    im = ctx.div(s, gmpy2.mpfr(2 * f.a, prec))
    return APComplex.make(re, im, prec)


def class_number_table(limit: int):
    """h(|D|) for every discriminant 0 < |D| <= limit, as a numpy array.

    Index k holds h(-k) when -k is a discriminant, else 0.  Counts reduced
    primitive forms by a bulk sweep; used for population scans in tests
    and reports.
    """
    import numpy as np

    h = np.zeros(limit + 1, dtype=np.int32)
    amax = isqrt(limit // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            g0 = gcd(a, b)
            # c from max(a, ...) upward; discriminant -(4ac - b^2) >= -limit
            cmax = (limit + b * b) // (4 * a)
            clo = max(a, 1)
            if cmax < clo:
                continue
            cs = np.arange(clo, cmax + 1, dtype=np.int64)
            if g0 > 1:
                cs = cs[np.gcd(cs, g0) == 1]
                if cs.size == 0:
                    continue
            absd = 4 * a * cs - b * b
            keep = absd > 0
            cs, absd = cs[keep], absd[keep]
            if b < 0:
                # (a, -b, c) is only reduced when a < c strictly
                keep = (cs != a)
                cs, absd = cs[keep], absd[keep]
            np.add.at(h, absd, 1)
    return h
