from fractions import Fraction
from math import gcd

import pytest

from genclasspoly.errors import PreconditionError
from genclasspoly.nsystem import (
    CMParams, admissible_mask, build_nsystem, density, find_abc,
    is_real_case, _ord_p,
)
from genclasspoly.quadforms import class_number


def scan_valid_b(D, N):
    """Oracle: all b in [0, 4N) with ord_p(b^2 - D) = ord_p(4N) for p | N."""
    ps = []
    n = N
    d = 2
    while d * d <= n:
        if n % d == 0:
            ps.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        ps.append(n)
    good = []
    for b in range(4 * N):
        v = b * b - D
        if v % (4 * N):
            continue
        if all(_ord_p(v, p) == _ord_p(4 * N, p) for p in ps):
            good.append(b)
    return good


def test_find_abc_plus_minimal_b_for_52():
    p = find_abc(-52, 119, "plus")
    assert (p.a, p.b) == (1, 30)
    assert p.c == (30 * 30 + 52) // 4 == 238
    assert p.c % 119 == 0 and gcd(p.c // 119, 119) == 1
    # exhaustive scan confirms 30 is minimal
    good = scan_valid_b(-52, 119)
    assert min(b for b in good if b > 0) == 30


def test_find_abc_plus_exception_case_1():
    with pytest.raises(PreconditionError, match=r"case \(1\)"):
        find_abc(-343, 7, "plus")


def test_find_abc_ramified_even_discriminant():
    for N in (7, 15, 119):
        D = -4 * N * N
        p = find_abc(D, N, "ramified")
        assert (p.a, p.b, p.c) == (1, 0, N * N)


def test_find_abc_generic():
    p = find_abc(-52, 119, "generic")
    assert p.a == 1
    assert (p.b * p.b - p.D) % (4 * 119) == 0


def test_find_abc_rejects_nonsquare():
    # -1 is not a discriminant; -7 is not a square mod 4*5
    with pytest.raises(PreconditionError):
        find_abc(-1, 119, "plus")
    with pytest.raises(PreconditionError):
        find_abc(-7, 5, "plus")


def test_lemma_exception_iff_machine_check():
    # find_abc(plus) succeeds exactly when the brute-force valuation scan
    # finds an admissible b, for all levels N <= 50 and -2000 <= D < 0
    for N in range(2, 51):
        for D in range(-2000, 0):
            if D % 4 not in (0, 1):
                continue
            ok_scan = bool(scan_valid_b(D, N))
            try:
                find_abc(D, N, "plus")
                ok_impl = True
            except PreconditionError:
                ok_impl = False
            assert ok_impl == ok_scan, (D, N)


def test_build_nsystem_52():
    p = find_abc(-52, 119, "plus")
    ns = build_nsystem(p)
    assert len(ns) == 2
    for m in ns.members:
        assert m.b % 238 == ns.common_b_mod_2n
        assert m.b * m.b - 4 * m.a * m.c == -52
        assert gcd(m.a, 119) == 1 and m.c % 119 == 0
    assert any(m.a == 1 for m in ns.members)


def test_build_nsystem_15139_has_29_members():
    p = find_abc(-15139, 119, "plus")
    ns = build_nsystem(p)
    assert len(ns) == 29 == class_number(-15139)


def test_build_nsystem_class_number_one():
    # D = -3 has h = 1 and is a square mod 4*13 (7^2 = 49 = 52 - 3)
    p = find_abc(-3, 13, "plus")
    ns = build_nsystem(p)
    assert len(ns) == 1
    assert ns.members[0] == p


def test_build_nsystem_congruences_random_sample():
    import random
    rng = random.Random(31)
    tried = 0
    for _ in range(400):
        D = -rng.randrange(3, 4000)
        if D % 4 not in (0, 1):
            continue
        N = rng.choice([7, 17, 119, 15, 21])
        try:
            p = find_abc(D, N, "plus")
        except PreconditionError:
            continue
        tried += 1
        ns = build_nsystem(p)
        assert len(ns) == class_number(D)
        for m in ns.members:
            assert m.b % (2 * N) == p.b % (2 * N)
            assert m.b * m.b - 4 * m.a * m.c == D
            assert gcd(m.a, N) == 1
            assert gcd(gcd(m.a, m.b), m.c) == 1
        if tried > 60:
            break
    assert tried >= 30


def test_is_real_case():
    p = find_abc(-52, 119, "plus")
    assert is_real_case(p, True) is True          # plus quotient criterion
    assert is_real_case(p, False) is False        # neither criterion applies
    q = find_abc(-595, 119, "ramified")           # N | b and N | c
    assert is_real_case(q, False) is True


def test_density_values():
    assert density(119, True) == Fraction(19, 64)
    assert density(119, False) == Fraction(4104, 14161)
    assert float(density(119, False)) > 0.2898
    assert float(density(119, True)) > 0.2968
    assert density(1, True) == 1 and density(1, False) == 1
    with pytest.raises(PreconditionError):
        density(14, False)
    with pytest.raises(PreconditionError):
        density(49, False)


def test_density_matches_exhaustive_count():
    import numpy as np
    limit = 10 ** 6
    mask = admissible_mask(119, limit)
    count = int(mask.sum())
    total = limit // 2          # discriminants 0,1 mod 4 in (-limit, 0)
    expect = float(density(119, False)) * total
    assert abs(count - expect) / expect < 0.01


def test_density_fundamental_matches_count():
    import numpy as np
    limit = 10 ** 6
    mask = admissible_mask(119, limit)
    absd = np.arange(limit + 1)
    # fundamental: odd part squarefree, and D=1 mod 4 squarefree, or D=4m
    # with m = 2,3 mod 4 squarefree
    sq = np.ones(limit + 1, dtype=bool)
    for p in range(2, int(limit ** 0.5) + 1):
        sq[::p * p] = False
    sq[0] = False
    fund = np.zeros(limit + 1, dtype=bool)
    m1 = (absd % 4 == 3) & sq                      # D = -absd = 1 mod 4
    d4 = absd % 4 == 0
    m = absd // 4
    m2 = d4 & ((m % 4 == 1) | (m % 4 == 2)) & sq[m]  # -m = 2, 3 mod 4
    fund = m1 | m2
    count = int((mask & fund).sum())
    total = int(fund.sum())
    expect = float(density(119, True)) * total
    assert abs(count - expect) / expect < 0.01
