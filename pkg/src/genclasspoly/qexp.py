"""q-expansions and point evaluations on X0+(119).

The curve is the genus-one modular curve with Weierstrass model

    y^2 + 3xy - y = x^3 - 3x^2 + x

whose coordinates x, y have integer q-expansions in the nome
q119 = exp(2*pi*i*z/119), starting  x = q^-2 + q^-1 + 1 + ...  and
y = q^-3 + 1 + 2q + ....  The double eta quotient

    w(z) = eta(z/7) eta(z/17) / (eta(z) eta(z/119))

is a modular unit on the curve satisfying  w = -y + x^2 - x.

Eliminating y between the Weierstrass equation and that relation gives

    x^4 - 2*w*x^2 - w*x + (w^2 + w) = 0,

a quartic over Q[w] whose coefficients are hard-coded below (and
regression-tested against the two defining relations); Newton iteration
against it extends the published eight seed coefficients of x to any
order.  All series carry exact integer coefficients.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .errors import PreconditionError, PrecisionError
from .numerics import APComplex, IntPolyUV, LaurentSeries, eval_series

NOME_DENOM = 119          # x, y, z, w live in powers of q^(1/119)
ETA_DENOM = 24

# Weierstrass model y^2 + g4(x) y = f4(x)
CURVE_F4 = IntPolyUV([0, 1, -3, 1])      # x^3 - 3x^2 + x
CURVE_G4 = IntPolyUV([-1, 3])            # 3x - 1

# seed coefficients of x at exponents -2..5 (published expansion)
_X_SEED = [1, 1, 1, 1, 2, 2, 3, 3]

# coefficient growth rates exp(alpha * sqrt(n)) used for order planning
_GROWTH = {"x": 1.64, "y": 2.01, "w": 2.31, "j": 4 * math.pi, "eta": 0.1}


def _pentagonal_exponents(limit: int):
    """(exponent, sign) pairs of prod (1 - q^n) with exponent < limit."""
    out = [(0, 1)]
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        s = -1 if k % 2 else 1
        if e1 >= limit and e2 >= limit:
            break
        if e1 < limit:
            out.append((e1, s))
        if e2 < limit:
            out.append((e2, s))
        k += 1
    return out


def eta_series(order: int) -> LaurentSeries:
    """Dedekind eta = q^(1/24) prod (1 - q^n), over the 1/24 lattice."""
    if order < 1:
        raise PreconditionError("order must be >= 1")
    coeffs = [0] * max(0, order - 1)
    for e, s in _pentagonal_exponents((order - 1) // 24 + 1):
        idx = 24 * e
        if idx < len(coeffs):
            coeffs[idx] = s
    return LaurentSeries(ETA_DENOM, 1, coeffs, order)


def eta_scaled_series(d: int, denom: int, order: int) -> LaurentSeries:
    """eta(z/d) over the 1/denom exponent lattice.

    The exponents of eta(z/d) are (1 + 24n)/(24d); they all land on the
    1/denom lattice exactly when 24d divides denom.
    """
    if denom % (24 * d):
        raise PreconditionError("lattice too coarse for eta(z/%d)" % d)
    step = denom // (24 * d)
    coeffs = [0] * max(0, order - step)
    nmax = (order - step) // (24 * step) + 1 if order > step else 0
    for e, s in _pentagonal_exponents(nmax + 1):
        idx = 24 * e * step
        if idx < len(coeffs):
            coeffs[idx] = s
    return LaurentSeries(denom, step, coeffs, order)


def _w717_build(order119: int) -> LaurentSeries:
    """w = eta(z/7) eta(z/17) / (eta(z) eta(z/119)) in q^(1/119), val -4.

    The numerator and denominator pairs each have exponents divisible by
    24 on the 1/2856 lattice, so the quotient is computed on the coarser
    1/119 lattice directly.
    """
    M = 24 * 119
    pad = (order119 + 8) * 24
    e7 = eta_scaled_series(7, M, pad)
    e17 = eta_scaled_series(17, M, pad)
    e1 = eta_scaled_series(1, M, pad)
    e119 = eta_scaled_series(119, M, pad)
    num = (e7 * e17).reduce_denom(NOME_DENOM)
    den = (e1 * e119).reduce_denom(NOME_DENOM)
    inv = den.inverse(order119 + den.val - num.val + 8)
    return (num * inv).truncate(order119)


_cache_lock = threading.Lock()
_series_cache: dict[str, LaurentSeries] = {}


def _cached(name: str, order: int, build) -> LaurentSeries:
    s = _series_cache.get(name)
    if s is None or s.trunc < order:
        with _cache_lock:
            s = _series_cache.get(name)
            if s is None or s.trunc < order:
                target = max(order, int((s.trunc if s else 64) * 3 // 2))
                s = build(target)
                _series_cache[name] = s
    return s.truncate(order) if s.trunc > order else s


def w717_series(order: int) -> LaurentSeries:
    """The double eta quotient as an integer series in q^(1/119), val -4."""
    if order < 1:
        raise PreconditionError("order must be >= 1")

    return _cached("w", order, _w717_build)


def _build_xy(order: int):
    w = w717_series(order + 24)
    zero = LaurentSeries.zero(NOME_DENOM, w.trunc)
    one = LaurentSeries.const(1, NOME_DENOM, w.trunc)
    quartic = [w * w + w, -w, w.scale(-2), zero, one]
    seed = LaurentSeries(NOME_DENOM, -2, list(_X_SEED), 6)
    from .numerics import series_newton_root
    x = series_newton_root(quartic, seed, order)
    y = (x * x - x - w.truncate(x.trunc)).truncate(x.trunc)
    return x, y


def xy_series(order: int):
    """Weierstrass coordinate expansions (x, y) to the given order."""
    if order < 8:
        raise PreconditionError("order must be >= 8")
    x = _cached("x", order, lambda n: _build_xy(n)[0])
    y = _series_cache.get("y")
    if y is None or y.trunc < order:
        with _cache_lock:
            y = _series_cache.get("y")
            if y is None or y.trunc < order:
                y = _build_xy(max(order, x.trunc))[1]
                _series_cache["y"] = y
    return x, y.truncate(order) if y.trunc > order else y


def j_series(order: int) -> LaurentSeries:
    """Klein j = E4^3 / eta^24 as an exact integer series in q."""
    if order < 1:
        raise PreconditionError("order must be >= 1")

    def build(n):
        e4 = [1] + [240 * _sigma3(k) for k in range(1, n + 2)]
        E4 = LaurentSeries(1, 0, e4, n + 2)
        eta = eta_series(24 * (n + 2) + 1)
        delta = eta.pow(24).reduce_denom(1)       # q * prod(1-q^n)^24
        num = E4 * E4 * E4
        inv = delta.inverse(n + 2 - num.val - delta.val + 4)
        return (num * inv).truncate(n)

    return _cached("j", order, build)


def _sigma3(n: int) -> int:
    s = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            s += d ** 3
            e = n // d
            if e != d:
                s += e ** 3
        d += 1
    return s


# ---------------------------------------------------------------------------
# evaluation


def _required_order(prec: int, rate_nats: float, alpha: float,
                    extra_nats: float = 30.0) -> int:
    """Smallest n with n*rate - alpha*sqrt(n) >= prec*ln2 + extra."""
    target = prec * math.log(2) + extra_nats
    n = max(16.0, target / rate_nats)
    for _ in range(6):
        n = (target + alpha * math.sqrt(n)) / rate_nats
    return int(n * 1.1) + 16


def _im(tau: APComplex) -> float:
    return float(tau.im)


def eval_cached(name: str, tau: APComplex, prec: int) -> APComplex:
    """Evaluate a cached named series at tau to absolute accuracy 2^-prec."""
    im = _im(tau)
    if im <= 0:
        raise PreconditionError("point must be in the upper half plane")
    denom = 1 if name == "j" else NOME_DENOM
    rate = 2 * math.pi * im / denom
    order = _required_order(prec, rate, _GROWTH.get(name, 2.5))
    builders = {
        "j": j_series,
        "w": w717_series,
        "x": lambda n: xy_series(max(n, 8))[0],
        "y": lambda n: xy_series(max(n, 8))[1],
    }
    series = builders[name](order)
    for _ in range(8):
        work = prec + 64 + max(0, int(-series.val * rate / math.log(2))) + 32
        val, tail = eval_series(series, tau, work)
        if tail < _pow2(-prec):
            return val
        order = order * 2
        series = builders[name](order)
    raise PrecisionError(f"series order for {name} insufficient at prec {prec}")


def _pow2(e: int):
    import gmpy2
    return gmpy2.exp2(e)


def j_eval(tau: APComplex, prec: int) -> APComplex:
    """Klein j at tau via its q-expansion."""
    return eval_cached("j", tau, prec)


# ---------------------------------------------------------------------------
# function bases on the curve


STANDARD = "standard"
ETAMIXED = "etamixed"


def standard_monomial(pole: int):
    """(x-exponent, y-exponent) of the basis element of the given pole order."""
    if pole == 0:
        return (0, 0)
    if pole == 1 or pole < 0:
        raise PreconditionError(f"no basis element of pole order {pole}")
    if pole % 2 == 0:
        return (pole // 2, 0)
    return ((pole - 3) // 2, 1)


def etamixed_monomial(pole: int):
    """(w-exponent, x-exponent, z-exponent) for the alternate basis."""
    if pole == 0:
        return (0, 0, 0)
    if pole == 1 or pole < 0:
        raise PreconditionError(f"no basis element of pole order {pole}")
    r = pole % 4
    if r == 0:
        return (pole // 4, 0, 0)
    if r == 2:
        return ((pole - 2) // 4, 1, 0)
    if r == 3:
        return ((pole - 3) // 4, 0, 1)
    if pole >= 5:
        return ((pole - 5) // 4, 1, 1)
    raise PreconditionError(f"no basis element of pole order {pole}")


def basis_pole_orders(count: int):
    """Pole orders of the first ``count`` basis elements: 0, 2, 3, 4, ..."""
    return [0] + list(range(2, count + 1))


def point_xyzw(tau: APComplex, prec: int):
    """Values of x, y, z = x + y, w = x^2 - x - y at tau (absolute 2^-prec)."""
    # w is cheaper through x, y; the eta-quotient route is the test oracle
    guard = prec + 16
    vx = eval_cached("x", tau, guard)
    vy = eval_cached("y", tau, guard)
    vz = vx + vy
    vw = vx * vx - vx - vy
    return vx, vy, vz, vw


def basis_eval(basis: str, count: int, tau: APComplex, prec: int):
    """Values of the first ``count`` basis elements at tau.

    Each value carries absolute error below 2^-prec; raises if the
    available truncation orders cannot reach that.
    """
    if count < 1:
        raise PreconditionError("need at least one basis element")
    im = _im(tau)
    if im <= 0:
        raise PreconditionError("point must be in the upper half plane")
    rate_bits = 2 * math.pi * im / NOME_DENOM / math.log(2)
    mag_bits = int(rate_bits * (count + 1)) + 16
    inner = prec + mag_bits + 48
    vx, vy, vz, vw = point_xyzw(tau, inner)
    out = []
    for pole in basis_pole_orders(count):
        if basis == STANDARD:
            a, b = standard_monomial(pole)
            v = vx.pow_int(a)
            if b:
                v = v * vy
        elif basis == ETAMIXED:
            wc, xc, zc = etamixed_monomial(pole)
            v = vw.pow_int(wc)
            if xc:
                v = v * vx
            if zc:
                v = v * vz
        else:
            raise PreconditionError(f"unknown basis {basis!r}")
        out.append(v)
    return out
