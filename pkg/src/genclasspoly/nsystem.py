"""CM parameters and N-systems for level N.

Given a discriminant D that is a square modulo 4N, we pick a root tau of
a X^2 + b X + c with b^2 - 4ac = D and N | c, then extend it to an
N-system: one form per ideal class, all with gcd(a_i, N) = 1 and middle
coefficients congruent modulo 2N.  Evaluating curve functions at the
roots tau_i of these forms enumerates the full Galois orbit of the CM
point.

Three selection modes are supported:

* ``generic``  -- any square root b of D mod 4N, a = 1;
* ``ramified`` -- N | b and N | c (possible when N | D, 4N | D for even N),
  which makes the orbit stable under complex conjugation;
* ``plus``     -- minimal b > 0 with b^2 = D (mod 4N) and
  gcd((b^2 - D)/(4N), N) = 1, the convention for quotients of X0+(N);
  conjugation-stability then comes from the Fricke involution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .errors import PreconditionError, InconsistencyError
from .numerics import APComplex
from .quadforms import QuadForm, enumerate_reduced, form_to_tau


def _ord_p(n: int, p: int) -> int:
    if n == 0:
        raise PreconditionError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_square_mod(D: int, m: int) -> bool:
    Dm = D % m
    return any((b * b) % m == Dm for b in range(m))


@dataclass(frozen=True)
class CMParams:
    D: int
    N: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.b * self.b - 4 * self.a * self.c != self.D:
            raise InconsistencyError("b^2 - 4ac != D")
        if self.a <= 0 or self.c <= 0:
            raise InconsistencyError("need a, c > 0")
        if self.c % self.N:
            raise InconsistencyError("need N | c")
        if gcd(self.a, self.N) != 1 or gcd(gcd(self.a, self.b), self.c) != 1:
            raise InconsistencyError("need gcd(a, N) = gcd(a, b, c) = 1")

    def tau(self, prec: int = 64) -> APComplex:
        return form_to_tau(QuadForm(self.a, self.b, self.c), prec)

    def form(self) -> QuadForm:
        return QuadForm(self.a, self.b, self.c)


@dataclass(frozen=True)
class NSystem:
    members: tuple[CMParams, ...]
    common_b_mod_2n: int

    def __len__(self):
        return len(self.members)


def _exception_case(D: int, N: int) -> int | None:
    """Which obstruction (1, 2 or 3) blocks gcd(c/N, N) = 1, if any."""
    for p in _prime_factors(N):
        if p == 2:
            continue
        if _ord_p(N, p) % 2 == 1 and _ord_p(D, p) > _ord_p(4 * N, p):
            return 1
    m = _ord_p(N, 2) if N % 2 == 0 else 0
    if m > 0:
        v = _ord_p(D, 2) if D % 2 == 0 else 0
        if v == m + 1 and ((D >> v) % 4 + 4) % 4 == 1:
            return 2
        if v == m and ((D >> v) % 8 + 8) % 8 == 1:
            return 3
    return None


def find_abc(D: int, N: int, mode: str = "plus") -> CMParams:
    """CM parameters (a, b, c) for discriminant D at level N."""
    if D >= 0 or D % 4 not in (0, 1):
        raise PreconditionError(f"{D} is not a negative discriminant")
    if N < 1:
        raise PreconditionError("level must be positive")

    if mode == "ramified":
        if D % N or (N % 2 == 0 and D % (4 * N)):
            raise PreconditionError(
                "ramified mode needs N | D (4N | D for even N)")
        b = 0 if D % 2 == 0 else N
        c = (b * b - D) // 4
        return CMParams(D, N, 1, b, c)

    if mode == "generic":
        for b in range(D & 1, 2 * N + 1, 2):
            if (b * b - D) % (4 * N) == 0:
                return CMParams(D, N, 1, b if b > 0 else 2 * N, (b * b - D) // 4)
        raise PreconditionError(f"D={D} is not a square modulo 4N={4 * N}")

    if mode != "plus":
        raise PreconditionError(f"unknown mode {mode!r}")

    # the joint condition "4N | b^2 - D and gcd((b^2-D)/(4N), N) = 1" is a
    # condition on b modulo p^(ord_p(4N)+1) for each p | N, hence periodic
    # with period 4N * rad(2N); scanning one full period decides existence
    rad = 1
    for p in _prime_factors(2 * N):
        rad *= p
    square = False
    for b in range(1, 4 * N * rad + 1):
        v = b * b - D
        if v % (4 * N):
            continue
        square = True
        if gcd(v // (4 * N), N) == 1:
            return CMParams(D, N, 1, b, v // 4)
    if not square:
        raise PreconditionError(f"D={D} is not a square modulo 4N={4 * N}")
    case = _exception_case(D, N)
    raise PreconditionError(
        f"no admissible b for D={D}, N={N}: exception case ({case})")


def build_nsystem(p: CMParams) -> NSystem:
    """Extend (a, b, c) to a full N-system over all ideal classes."""
    D, N, b0 = p.D, p.N, p.b
    bound = 4 * isqrt(-D) * N + 4 * N
    members = []
    for red in enumerate_reduced(D):
        g = _coprime_representative(red, N, bound)
        # lift b: b' = g.b (mod 2 g.a), b' = b0 (mod 2N); moduli share only 2
        b1 = _crt2(g.b, 2 * g.a, b0, 2 * N)
        c1 = (b1 * b1 - D) // (4 * g.a)
        members.append(CMParams(D, N, g.a, b1, c1))
    members.sort(key=lambda m: (m.a, m.b))
    return NSystem(tuple(members), b0 % (2 * N))


def _coprime_representative(f: QuadForm, N: int, bound: int) -> QuadForm:
    """Properly equivalent form whose first coefficient is coprime to N.

    Scans primitively represented values of the form in increasing order
    and transforms the smallest one coprime to N into leading position.
    """
    if gcd(f.a, N) == 1:
        return f
    best = None
    U = 1
    while U < 4 * bound:
        U *= 2
        cands = []
        for u in range(-U, U + 1):
            for v in range(0, U + 1):
                if v == 0 and u != 1:
                    continue
                if gcd(u, v) != 1:
                    continue
                val = f.value(u, v)
                if 0 < val <= bound and gcd(val, N) == 1:
                    cands.append((val, u, v))
        if cands:
            best = min(cands)
            break
    if best is None:
        raise InconsistencyError(
            f"no represented value coprime to {N} below {bound} for {f}")
    _, u, v = best
    # extend (u, v) to an SL2 matrix [[u, r], [v, s]]
    r, s = _bezout_column(u, v)
    return f.transform(u, r, v, s)


def _bezout_column(u: int, v: int):
    # find r, s with u*s - v*r = 1
    g, x, y = _xgcd(u, v)
    if g != 1:
        raise InconsistencyError("column not primitive")
    # u*x + v*y = 1  ->  s = x, r = -y
    return -y, x


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _crt2(a1: int, m1: int, a2: int, m2: int) -> int:
    g = gcd(m1, m2)
    if (a1 - a2) % g:
        raise InconsistencyError("incompatible congruences")
    l = lcm(m1, m2)
    _, x, _ = _xgcd(m1 // g, m2 // g)
    k = ((a2 - a1) // g * x) % (m2 // g)
    return (a1 + m1 * k) % l


def is_real_case(p: CMParams, curve_is_plus_quotient: bool) -> bool:
    """Is the Galois orbit stable under complex conjugation?"""
    if p.b % p.N == 0 and p.c % p.N == 0:
        return True
    if curve_is_plus_quotient and gcd(p.c // p.N, p.N) == 1:
        return True
    return False


def density(N: int, fundamental_only: bool) -> Fraction:
    """Density of admissible discriminants for level N (odd squarefree)."""
    if N < 1:
        raise PreconditionError("level must be positive")
    if N == 1:
        return Fraction(1)
    if N % 2 == 0:
        raise PreconditionError("density formula needs odd N")
    primes = _prime_factors(N)
    sq = 1
    for p in primes:
        sq *= p
    if sq != N:
        raise PreconditionError("density formula needs squarefree N")
    out = Fraction(1)
    for p in primes:
        if fundamental_only:
            out *= Fraction(p * p + p - 2, 2 * (p * p - 1))
        else:
            out *= Fraction(p * p + p - 2, 2 * p * p)
    return out


def admissible_mask(N: int, limit: int):
    """Boolean mask over |D| = 1..limit of admissible discriminants.

    Admissible means: D is a discriminant, a square mod 4N, and none of
    the obstruction cases holds; for odd squarefree N this is, prime by
    prime, (D a nonzero square mod p) or (ord_p(D) exactly 1).
    """
    import numpy as np

    if N % 2 == 0:
        raise PreconditionError("mask only implemented for odd N")
    absd = np.arange(0, limit + 1, dtype=np.int64)
    D = -absd
    mask = (np.mod(D, 4) == 0) | (np.mod(D, 4) == 1)
    mask[0] = False
    for p in _prime_factors(N):
        r = np.mod(D, p)
        qr = np.zeros(p, dtype=bool)
        for b in range(p):
            qr[(b * b) % p] = True
        qr[0] = False
        cond_qr = qr[r]
        cond_ram = (np.mod(D, p) == 0) & (np.mod(D, p * p) != 0)
        mask &= cond_qr | cond_ram
    return mask
