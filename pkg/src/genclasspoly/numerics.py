"""Foundation arithmetic.

Three layers live here:

* ``APComplex`` -- arbitrary-precision complex numbers (gmpy2 mpc under the
  hood) with an explicit working precision in bits.  There is no hidden
  global precision; every value knows its own, and arithmetic results carry
  the minimum of the operand precisions.

* ``LaurentSeries`` -- truncated Laurent series with exact rational
  coefficients in a fractional-power nome: a series with ``denom = M``
  represents  sum_k  c_k * q^(k/M)  with q = exp(2*pi*i*z).

* ``IntPolyUV`` / ``IntPolyXY`` -- dense integer polynomials in one
  variable, and pairs A(X) + B(X)*Y of degree <= 1 in Y.

Coefficient convolutions go through Kronecker substitution (pack the
coefficient vector into one big integer, multiply once with GMP, unpack),
which keeps series work at ten-thousand-term scale comfortable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import gmpy2
from gmpy2 import mpfr, mpc, mpz

from .errors import PreconditionError, PrecisionError

MIN_PREC = 64

_CTX_CACHE: dict[int, "gmpy2.context"] = {}


def _ctx(prec: int):
    ctx = _CTX_CACHE.get(prec)
    if ctx is None:
        ctx = gmpy2.context(precision=prec, allow_complex=True)
        _CTX_CACHE[prec] = ctx
    return ctx


def _to_mpfr(x, prec: int):
    if isinstance(x, mpfr):
        return x
    if isinstance(x, Fraction):
        return mpfr(mpz(x.numerator), prec) / mpfr(mpz(x.denominator), prec) \
            if x.denominator != 1 else mpfr(mpz(x.numerator), prec)
    return mpfr(x, prec)


class APComplex:
    """Complex number with explicit working precision in bits."""

    __slots__ = ("z", "prec")

    def __init__(self, z: mpc, prec: int):
        if prec < MIN_PREC:
            raise PreconditionError(f"precision {prec} below minimum {MIN_PREC}")
        self.z = z
        self.prec = prec

    @staticmethod
    def make(re, im=0, prec: int = MIN_PREC) -> "APComplex":
        p = max(prec, MIN_PREC)
        return APComplex(mpc(_to_mpfr(re, p), _to_mpfr(im, p), (p, p)), p)

    @property
    def re(self) -> mpfr:
        return self.z.real

    @property
    def im(self) -> mpfr:
        return self.z.imag

    def _coerce(self, other):
        if isinstance(other, APComplex):
            return other
        if isinstance(other, (int, Fraction, float, mpfr, mpz)):
            return APComplex.make(other, 0, self.prec)
        return NotImplemented

    def _bin(self, other, op):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = min(self.prec, o.prec)
        return APComplex(op(_ctx(p))(self.z, o.z), p)

    def __add__(self, other):
        return self._bin(other, lambda c: c.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._bin(other, lambda c: c.sub)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o.__sub__(self) if o is not NotImplemented else NotImplemented

    def __mul__(self, other):
        return self._bin(other, lambda c: c.mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._bin(other, lambda c: c.div)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o.__truediv__(self) if o is not NotImplemented else NotImplemented

    def __neg__(self):
        return APComplex(-self.z, self.prec)

    def conj(self) -> "APComplex":
        return APComplex(mpc(self.z.real, -self.z.imag, (self.prec, self.prec)),
                         self.prec)

    def abs(self) -> mpfr:
        return _ctx(self.prec).abs(self.z)

    def exp(self) -> "APComplex":
        return APComplex(_ctx(self.prec).exp(self.z), self.prec)

    def sqrt(self) -> "APComplex":
        return APComplex(_ctx(self.prec).sqrt(self.z), self.prec)

    def pow_int(self, n: int) -> "APComplex":
        ctx = _ctx(self.prec)
        if n == 0:
            return APComplex.make(1, 0, self.prec)
        base = self.z if n > 0 else ctx.div(mpc(1, 0, (self.prec, self.prec)), self.z)
        e = abs(n)
        acc = mpc(1, 0, (self.prec, self.prec))
        while e:
            if e & 1:
                acc = ctx.mul(acc, base)
            base = ctx.mul(base, base)
            e >>= 1
        return APComplex(acc, self.prec)

    def to_complex(self) -> complex:
        return complex(float(self.z.real), float(self.z.imag))

    def __repr__(self):
        return f"APComplex({self.z}, prec={self.prec})"


def ap_pi(prec: int) -> mpfr:
    return gmpy2.const_pi(prec)


def dist(a: APComplex, b: APComplex) -> mpfr:
    return (a - b).abs()


# ---------------------------------------------------------------------------
# coefficient convolution


def _pack(coeffs, width: int) -> int:
    buf = bytearray(width * len(coeffs))
    for i, c in enumerate(coeffs):
        if c:
            buf[i * width:(i + 1) * width] = c.to_bytes(width, "little")
    return int.from_bytes(bytes(buf), "little")


def _unpack(n: int, width: int, count: int):
    raw = int(n).to_bytes(width * count + width, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little")
            for i in range(count)]


def _conv_int(a, b):
    """Convolution of integer sequences via Kronecker substitution."""
    na, nb = len(a), len(b)
    nc = na + nb - 1
    if na * nb <= 4096:
        out = [0] * nc
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return out
    maxa = max((abs(c) for c in a), default=0)
    maxb = max((abs(c) for c in b), default=0)
    if maxa == 0 or maxb == 0:
        return [0] * nc
    bits = maxa.bit_length() + maxb.bit_length() + min(na, nb).bit_length() + 1
    width = (bits + 7) // 8
    ap = [c if c > 0 else 0 for c in a]
    an = [-c if c < 0 else 0 for c in a]
    bp = [c if c > 0 else 0 for c in b]
    bn = [-c if c < 0 else 0 for c in b]
    pa, na_, pb, nb_ = (mpz(_pack(v, width)) for v in (ap, an, bp, bn))
    pos = int(pa * pb + na_ * nb_)
    neg = int(pa * nb_ + na_ * pb)
    cp = _unpack(pos, width, nc)
    cn = _unpack(neg, width, nc)
    return [p - n for p, n in zip(cp, cn)]


def _conv(a, b):
    """Exact convolution of int/Fraction sequences."""
    if all(isinstance(c, int) for c in a) and all(isinstance(c, int) for c in b):
        return _conv_int(a, b)
    da = 1
    for c in a:
        if isinstance(c, Fraction):
            da = da * c.denominator // gcd(da, c.denominator)
    db = 1
    for c in b:
        if isinstance(c, Fraction):
            db = db * c.denominator // gcd(db, c.denominator)
    ia = [int(c * da) if isinstance(c, Fraction) else c * da for c in a]
    ib = [int(c * db) if isinstance(c, Fraction) else c * db for c in b]
    out = _conv_int(ia, ib)
    d = da * db
    return [_norm_q(Fraction(c, d)) for c in out]


def _norm_q(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


# ---------------------------------------------------------------------------
# Laurent series


class LaurentSeries:
    """Truncated Laurent series sum_{k=val}^{trunc-1} coeffs[k-val] * q^(k/denom).

    ``trunc`` is the exponent (in 1/denom units) of the first unknown term.
    Coefficients are exact ints or Fractions; the leading one is nonzero
    unless the series is (known to be) identically zero up to trunc.
    """

    __slots__ = ("denom", "val", "coeffs", "trunc")

    def __init__(self, denom: int, val: int, coeffs, trunc: int):
        if denom < 1:
            raise PreconditionError("series denominator must be positive")
        coeffs = [_norm_q(c) for c in coeffs]
        if trunc - val < len(coeffs):
            coeffs = coeffs[:max(0, trunc - val)]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            val = trunc
        if val > trunc:
            raise PreconditionError("series valuation beyond truncation order")
        self.denom = denom
        self.val = val
        self.coeffs = coeffs
        self.trunc = trunc

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(denom: int, trunc: int) -> "LaurentSeries":
        return LaurentSeries(denom, trunc, [], trunc)

    @staticmethod
    def const(c, denom: int, trunc: int) -> "LaurentSeries":
        return LaurentSeries(denom, 0, [c], trunc)

    @staticmethod
    def monomial(c, exp: int, denom: int, trunc: int) -> "LaurentSeries":
        return LaurentSeries(denom, exp, [c], trunc)

    # -- accessors ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int):
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def coeff_list(self, start: int, count: int):
        return [self.coeff(start + i) for i in range(count)]

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.denom == other.denom and self.val == other.val
                and self.trunc == other.trunc and self.coeffs == other.coeffs)

    def eq_upto(self, other: "LaurentSeries", order: int) -> bool:
        """Coefficientwise equality for all exponents below ``order``."""
        if self.denom != other.denom:
            raise PreconditionError("mismatched series denominators")
        if min(self.trunc, other.trunc) < order:
            raise PreconditionError("series not known to requested order")
        lo = min(self.val, other.val)
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, order))

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs[:8]):
            if c:
                parts.append(f"{c}*q^({self.val + i}/{self.denom})")
        s = " + ".join(parts) if parts else "0"
        return f"<series {s} + O(q^({self.trunc}/{self.denom}))>"

    # -- reshaping ----------------------------------------------------------

    def truncate(self, trunc: int) -> "LaurentSeries":
        if trunc > self.trunc:
            raise PreconditionError("cannot extend truncation order without data")
        return LaurentSeries(self.denom, self.val, list(self.coeffs), trunc)

    def assume_trunc(self, trunc: int) -> "LaurentSeries":
        """Declare knowledge up to ``trunc``, padding with zeros.

        Only for iteration schemes (Newton) that repair the padded tail.
        """
        if trunc <= self.trunc:
            return self.truncate(trunc)
        return LaurentSeries(self.denom, self.val, list(self.coeffs), trunc)

    def with_denom(self, denom: int) -> "LaurentSeries":
        if denom == self.denom:
            return self
        if denom % self.denom:
            raise PreconditionError("new denominator must be a multiple")
        m = denom // self.denom
        coeffs = [0] * (m * max(0, len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            coeffs[m * i] = c
        return LaurentSeries(denom, m * self.val, coeffs, m * self.trunc)

    def reduce_denom(self, denom: int) -> "LaurentSeries":
        """Rewrite over a coarser exponent lattice (must divide exactly)."""
        if self.denom % denom:
            raise PreconditionError("denominator does not divide")
        m = self.denom // denom
        if m == 1:
            return self
        if self.val % m or any(c and (self.val + i) % m
                               for i, c in enumerate(self.coeffs)):
            raise PreconditionError("series does not live on the coarser lattice")
        coeffs = [self.coeffs[i] for i in range(0, len(self.coeffs), m)]
        return LaurentSeries(denom, self.val // m, coeffs, -(-self.trunc // m))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.denom != other.denom:
            raise PreconditionError("mismatched series denominators")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.const(other, self.denom, self.trunc)
        self._check(other)
        trunc = min(self.trunc, other.trunc)
        if self.is_zero() and other.is_zero():
            return LaurentSeries.zero(self.denom, trunc)
        val = min(self.val if self.coeffs else trunc,
                  other.val if other.coeffs else trunc)
        n = trunc - val
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            j = self.val + i - val
            if 0 <= j < n:
                out[j] = c
        for i, c in enumerate(other.coeffs):
            j = other.val + i - val
            if 0 <= j < n:
                out[j] = out[j] + c
        return LaurentSeries(self.denom, val, out, trunc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.denom, self.val, [-c for c in self.coeffs],
                             self.trunc)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.const(other, self.denom, self.trunc)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentSeries":
        if c == 0:
            return LaurentSeries.zero(self.denom, self.trunc)
        return LaurentSeries(self.denom, self.val,
                             [_norm_q(c * x) for x in self.coeffs], self.trunc)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by q^(k/denom)."""
        return LaurentSeries(self.denom, self.val + k, list(self.coeffs),
                             self.trunc + k)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        # a zero series has val == trunc, so the rule below covers it too
        trunc = min(self.trunc + other.val, other.trunc + self.val)
        if self.is_zero() or other.is_zero():
            return LaurentSeries.zero(self.denom, trunc)
        prod = _conv(self.coeffs, other.coeffs)
        return LaurentSeries(self.denom, self.val + other.val, prod, trunc)

    __rmul__ = __mul__

    def square(self) -> "LaurentSeries":
        return self * self

    def pow(self, n: int) -> "LaurentSeries":
        if n < 0:
            raise PreconditionError("use inverse() for negative powers")
        if n == 0:
            return LaurentSeries.const(1, self.denom, self.trunc - self.val)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def inverse(self, nterms: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse, correct to nterms coefficients."""
        if self.is_zero():
            raise PreconditionError("cannot invert zero series")
        if nterms is None:
            nterms = self.trunc - self.val
        lead = self.coeffs[0]
        ilead = Fraction(1, 1) / Fraction(lead)
        f = self.coeffs
        if nterms <= 256:
            out = [_norm_q(ilead)]
            # g * f = 1: g_n = -(1/f_0) * sum_{k>=1} f_k g_{n-k}
            nz = [(k, f[k]) for k in range(1, min(len(f), nterms)) if f[k]]
            for n in range(1, nterms):
                s = 0
                for k, fk in nz:
                    if k > n:
                        break
                    s += fk * out[n - k]
                out.append(_norm_q(-ilead * s) if s else 0)
        else:
            # Newton doubling: g <- g*(2 - f*g), error squares each round
            g = [_norm_q(ilead)]
            k = 1
            while k < nterms:
                k = min(2 * k, nterms)
                fg = _conv(f[:k], g)[:k]
                t = [_norm_q(-c) for c in fg]
                t[0] = _norm_q(2 + t[0])
                g = [_norm_q(c) for c in _conv(g, t)[:k]]
            out = g
        return LaurentSeries(self.denom, -self.val, out, -self.val + nterms)


def series_mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Product of two series over the same exponent lattice."""
    return f * g


def poly_eval_series(P, s: LaurentSeries) -> LaurentSeries:
    """Evaluate a polynomial with LaurentSeries coefficients at a series."""
    acc = None
    for c in reversed(P):
        acc = c if acc is None else acc * s + c
    return acc


def series_newton_root(P, seed: LaurentSeries, target_order: int,
                       max_steps: int = 64) -> LaurentSeries:
    """Root of P(Y) = 0 in the Laurent series field, refined by Newton.

    ``P`` is a list of LaurentSeries (coefficient of Y^i at index i), all
    over the same lattice as ``seed``.  The seed must satisfy P(seed) = 0
    through its own truncation order and P'(seed) must have an invertible
    leading coefficient.  Correct-term count roughly doubles per step.
    """
    for c in P:
        if c.denom != seed.denom:
            raise PreconditionError("mismatched series denominators")
    dP = [c.scale(i) for i, c in enumerate(P) if i >= 1]
    r0 = poly_eval_series(P, seed)
    if not r0.is_zero():
        raise PreconditionError("seed does not satisfy P to its truncation order")
    d0 = poly_eval_series(dP, seed)
    if d0.is_zero():
        raise PreconditionError("singular seed: derivative vanishes to truncation")
    # evaluating P at a series of negative valuation loses truncation order;
    # aim past the target by that loss so the final terms are certified
    slack = (len(P) - 1) * max(0, -seed.val) + max(0, -d0.val) + 8
    internal_target = target_order + slack
    s = seed
    known = s.trunc
    for _ in range(max_steps):
        if known >= target_order:
            return s.truncate(target_order)
        goal = min(internal_target, 2 * known - s.val + 8)
        ext = s.assume_trunc(goal)
        r = poly_eval_series(P, ext)
        d = poly_eval_series(dP, ext)
        if r.is_zero():
            known = r.trunc - d.val
            s = ext.truncate(min(goal, known)) if known < goal else ext
            known = s.trunc
            continue
        corr_val = r.val - d.val
        nterms = goal - corr_val
        corr = r * d.inverse(max(1, nterms))
        s_new = ext - corr
        r_new = poly_eval_series(P, s_new)
        new_known = (r_new.trunc if r_new.is_zero() else r_new.val) - d.val
        if new_known <= known:
            raise PrecisionError("newton iteration stalled; bad seed or pole")
        known = min(new_known, goal)
        s = s_new.truncate(known)
    raise PrecisionError("newton iteration did not reach target order")


def eval_series(f: LaurentSeries, z: APComplex, prec: int):
    """Value of the truncated series at q = exp(2*pi*i*z).

    Returns ``(value, tail_bound)`` where the tail bound is the heuristic
    |last kept term| * geometric factor.  Requires Im(z) > 0.
    """
    if not z.im > 0:
        raise PreconditionError("evaluation point must be in the upper half plane")
    work = max(prec, MIN_PREC)
    ctx = _ctx(work)
    zz = APComplex(mpc(z.z.real, z.z.imag, (work, work)), work)
    pi_i = APComplex(mpc(0, ap_pi(work), (work, work)), work)
    u = (pi_i * 2 * zz / f.denom).exp()        # q^(1/denom)
    if f.is_zero():
        return APComplex.make(0, 0, work), mpfr(0, work)
    def coeff_val(c):
        if isinstance(c, Fraction):
            return ctx.div(mpfr(mpz(c.numerator), work),
                           mpfr(mpz(c.denominator), work))
        return mpfr(mpz(c), work)

    uz = u.z
    n = len(f.coeffs)
    nz = [(i, c) for i, c in enumerate(f.coeffs) if c]
    if 4 * len(nz) < n:
        # sparse: walk nonzero terms with an incremental power ladder
        acc = mpc(0, 0, (work, work))
        cur = u.pow_int(f.val + nz[0][0]).z
        prev = nz[0][0]
        for i, c in nz:
            if i != prev:
                cur = ctx.mul(cur, u.pow_int(i - prev).z)
                prev = i
            acc = ctx.add(acc, ctx.mul(coeff_val(c), cur))
        value = APComplex(acc, work)
    else:
        # dense Horner over the coefficient window, then shift by u^val
        acc = mpc(0, 0, (work, work))
        for i in range(n - 1, -1, -1):
            c = f.coeffs[i]
            acc = ctx.mul(acc, uz)
            if c:
                acc = ctx.add(acc, coeff_val(c))
        value = APComplex(acc, work) * u.pow_int(f.val)
    # heuristic tail bound from the last kept term and local growth
    absu = ctx.abs(uz)
    last = None
    for i in range(n - 1, -1, -1):
        if f.coeffs[i]:
            last = (i, f.coeffs[i])
            break
    i, c = last
    cmag = abs(c.numerator / c.denominator) if isinstance(c, Fraction) else abs(c)
    lastmag = ctx.mul(mpfr(float(cmag) if cmag < 2**53 else cmag, work),
                      ctx.pow(absu, f.val + i))
    growth = mpfr(1, work)
    k = min(32, n - 1)
    if k > 0:
        cmag0 = f.coeffs[n - 1 - k]
        cmag0 = abs(cmag0.numerator / cmag0.denominator) if isinstance(cmag0, Fraction) else abs(cmag0)
        if cmag0 and cmag:
            ratio = float(cmag) / float(cmag0) if cmag0 else 1.0
            if ratio > 1:
                growth = mpfr(ratio ** (1.0 / k), work)
    rho = ctx.mul(absu, growth)
    gap = f.trunc - (f.val + i)
    if not rho < 1:
        tail = gmpy2.inf()
    else:
        tail = ctx.div(ctx.mul(lastmag, ctx.pow(rho, gap)),
                       ctx.sub(mpfr(1, work), rho))
    return value, tail


# ---------------------------------------------------------------------------
# integer polynomials


class IntPolyUV:
    """Dense integer polynomial; coeffs[i] is the coefficient of X^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @staticmethod
    def zero() -> "IntPolyUV":
        return IntPolyUV(())

    @staticmethod
    def const(c: int) -> "IntPolyUV":
        return IntPolyUV((c,))

    @staticmethod
    def x_power(n: int, c: int = 1) -> "IntPolyUV":
        return IntPolyUV([0] * n + [c])

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if not isinstance(other, IntPolyUV):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolyUV([self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolyUV([self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return IntPolyUV([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolyUV([other * c for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return IntPolyUV.zero()
        return IntPolyUV(_conv_int(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g

    def primitive(self) -> "IntPolyUV":
        g = self.content()
        if g <= 1:
            return self
        return IntPolyUV([c // g for c in self.coeffs])

    def derivative(self) -> "IntPolyUV":
        return IntPolyUV([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval_int(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, p: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def eval_apc(self, x: APComplex) -> APComplex:
        acc = APComplex.make(0, 0, x.prec)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divexact(self, other: "IntPolyUV") -> "IntPolyUV":
        """Exact division in Z[X]; raises if the division has a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        dlead = Fraction(other.leading())
        dn = other.degree
        qn = self.degree - dn
        if qn < 0:
            if self.is_zero():
                return IntPolyUV.zero()
            raise PreconditionError("division is not exact (degree)")
        quo = [Fraction(0)] * (qn + 1)
        for k in range(qn, -1, -1):
            t = rem[dn + k] / dlead
            quo[k] = t
            if t:
                for j, oc in enumerate(other.coeffs):
                    rem[j + k] -= t * oc
        if any(r != 0 for r in rem):
            raise PreconditionError("division is not exact (remainder)")
        if any(q.denominator != 1 for q in quo):
            raise PreconditionError("division is not exact (integrality)")
        return IntPolyUV([int(q) for q in quo])

    def sqrt_exact(self) -> "IntPolyUV":
        """Exact square root in Z[X]; raises if not a perfect square."""
        if self.is_zero():
            return IntPolyUV.zero()
        if self.degree % 2:
            raise PreconditionError("not a square (odd degree)")
        lead = self.leading()
        slead = gmpy2.isqrt(mpz(lead)) if lead > 0 else None
        if slead is None or slead * slead != lead:
            raise PreconditionError("not a square (leading coefficient)")
        n = self.degree // 2
        q = [0] * (n + 1)
        q[n] = int(slead)
        for k in range(n - 1, -1, -1):
            # coefficient of X^(n+k) in q^2 must match
            s = sum(q[i] * q[n + k - i] for i in range(k + 1, n)
                    if 0 <= n + k - i <= n)
            num = self[n + k] - s
            den = 2 * q[n]
            if num % den:
                raise PreconditionError("not a square (coefficient)")
            q[k] = num // den
        cand = IntPolyUV(q)
        if cand * cand != self:
            raise PreconditionError("not a square")
        return cand

    def bit_length(self) -> int:
        return sum(c.bit_length() for c in self.coeffs if c)

    def norm1(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def norm_inf(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    def __repr__(self):
        if self.is_zero():
            return "IntPolyUV(0)"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c:
                xs = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
                parts.append(f"{c}{'*' if xs else ''}{xs}")
        return "IntPolyUV(" + " + ".join(parts) + ")"


class IntPolyXY:
    """A(X) + B(X)*Y with integer coefficients, degree <= 1 in Y."""

    __slots__ = ("a", "b")

    def __init__(self, a: IntPolyUV, b: IntPolyUV):
        self.a = a
        self.b = b

    @staticmethod
    def zero() -> "IntPolyXY":
        return IntPolyXY(IntPolyUV.zero(), IntPolyUV.zero())

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        if not isinstance(other, IntPolyXY):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __add__(self, other):
        return IntPolyXY(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return IntPolyXY(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return IntPolyXY(-self.a, -self.b)

    def scale(self, c: int) -> "IntPolyXY":
        return IntPolyXY(self.a * c, self.b * c)

    def mul_mod_curve(self, other: "IntPolyXY", f4: IntPolyUV,
                      g4: IntPolyUV) -> "IntPolyXY":
        """Product reduced by Y^2 = f4(X) - g4(X)*Y."""
        aa = self.a * other.a
        bb = self.b * other.b
        ab = self.a * other.b + self.b * other.a
        return IntPolyXY(aa + bb * f4, ab - bb * g4)

    def content(self) -> int:
        return gcd(self.a.content(), self.b.content())

    def primitive(self) -> "IntPolyXY":
        g = self.content()
        if g <= 1:
            return self
        return IntPolyXY(IntPolyUV([c // g for c in self.a.coeffs]),
                         IntPolyUV([c // g for c in self.b.coeffs]))

    def eval_apc(self, x: APComplex, y: APComplex) -> APComplex:
        return self.a.eval_apc(x) + self.b.eval_apc(x) * y

    def eval_mod(self, x: int, y: int, p: int) -> int:
        return (self.a.eval_mod(x, p) + self.b.eval_mod(x, p) * y) % p

    def norm1(self) -> int:
        return self.a.norm1() + self.b.norm1()

    def norm_inf(self) -> int:
        return max(self.a.norm_inf(), self.b.norm_inf())

    def bit_length(self) -> int:
        return self.a.bit_length() + self.b.bit_length()

    def __repr__(self):
        return f"IntPolyXY(A={self.a!r}, B={self.b!r})"
