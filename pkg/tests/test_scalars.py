import math
import random
from fractions import Fraction

import pytest

from gaussmanin.errors import NotCoprime
from gaussmanin.scalars import (
    LaurentLambda,
    UniPoly,
    bezout,
    coprime_split,
    mat_det,
    mat_inverse,
    mat_rank,
    mat_solve,
    poly_gcd,
    rational_roots,
    squarefree_decomposition,
)


def test_rational_arithmetic_vs_naive_reference():
    rng = random.Random(1)
    for _ in range(1000):
        p1, q1 = rng.randint(-10**6, 10**6), rng.randint(1, 10**6)
        p2, q2 = rng.randint(-10**6, 10**6), rng.randint(1, 10**6)
        x, y = Fraction(p1, q1), Fraction(p2, q2)
        s = x + y
        assert s.numerator * (q1 * q2) == (p1 * q2 + p2 * q1) * s.denominator
        m = x * y
        assert m.numerator * (q1 * q2) == (p1 * p2) * m.denominator
        assert math.gcd(s.numerator, s.denominator) == 1
        assert s.denominator > 0


def test_rational_huge_magnitudes():
    c = Fraction(-(61**61 * 15**15), 34**34 * 22**22 * 20**20)
    assert c * (Fraction(34**34 * 22**22 * 20**20)) == -(61**61) * 15**15
    assert math.gcd(c.numerator, c.denominator) == 1


def test_laurent_commutative_distributive():
    rng = random.Random(2)

    def rand_ll():
        return LaurentLambda({rng.randint(-10, 10): Fraction(rng.randint(-5, 5))
                              for _ in range(rng.randint(0, 4))})

    for _ in range(200):
        x, y, z = rand_ll(), rand_ll(), rand_ll()
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z


def test_laurent_basics():
    lam = LaurentLambda.monomial(1)
    x = lam ** -61 * Fraction(3, 4)
    assert x.coeffs == {-61: Fraction(3, 4)}
    assert x.evaluate(Fraction(2)) == Fraction(3, 4) / 2**61
    assert (lam - lam) == 0
    assert LaurentLambda.const(5).constant_value() == 5
    with pytest.raises(ValueError):
        (lam + 1).constant_value()


def test_laurent_json_roundtrip():
    x = LaurentLambda({-3: Fraction(1, 7), 0: Fraction(-2), 5: Fraction(9, 4)})
    assert LaurentLambda.from_json(x.to_json()) == x


def test_unipoly_divmod_and_gcd():
    x = UniPoly((Fraction(0), Fraction(1)))
    p = (x - UniPoly.const(Fraction(1))) ** 2 * (x + UniPoly.const(Fraction(3)))
    q, r = p.divmod(x - UniPoly.const(Fraction(1)))
    assert r.is_zero()
    assert poly_gcd(p, p.derivative()).degree == 1


def test_rational_roots_known_examples():
    # x^2 - 3x + 2
    p = UniPoly((Fraction(2), Fraction(-3), Fraction(1)))
    assert rational_roots(p) == [(Fraction(1), 1), (Fraction(2), 1)]
    # x^2 - 2: irrational roots absent
    p = UniPoly((Fraction(-2), Fraction(0), Fraction(1)))
    assert rational_roots(p) == []
    # (x - 1/432)·x^5
    p = UniPoly((Fraction(-1, 432), Fraction(1))) * UniPoly.x_power(5)
    assert rational_roots(p) == [(Fraction(0), 5), (Fraction(1, 432), 1)]


def test_rational_roots_divides_exactly():
    rng = random.Random(3)
    for _ in range(25):
        roots = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))]
        extra = UniPoly((Fraction(1), Fraction(0), Fraction(1)))  # x^2 + 1, no rational roots
        p = UniPoly.from_roots(roots) * extra
        found = rational_roots(p)
        total = UniPoly.const(Fraction(1))
        for root, mult in found:
            total = total * UniPoly.from_roots([root] * mult)
        q, r = p.divmod(total)
        assert r.is_zero()
        assert sorted(r0 for r0, m in found for _ in range(m)) == sorted(roots)


def test_rational_roots_huge_coefficients_fast():
    # x^15 - c with the 61/15 constant: no rational roots, answered quickly
    c = Fraction(-(61**61 * 15**15), 34**34 * 22**22 * 20**20)
    p = UniPoly.x_power(15) - UniPoly.const(c)
    assert rational_roots(p) == []


def test_squarefree_decomposition():
    x = UniPoly((Fraction(0), Fraction(1)))
    one = UniPoly.const(Fraction(1))
    p = (x - one) ** 3 * (x + one) * (x ** 2 + UniPoly.const(Fraction(2)))
    parts = squarefree_decomposition(p)
    assert [(g.format(), m) for g, m in parts] == [("x^3 + x^2 + 2·x + 2", 1), ("x - 1", 3)]


def test_coprime_split_known_examples():
    x = UniPoly((Fraction(0), Fraction(1)))
    one = UniPoly.const(Fraction(1))
    p = UniPoly.x_power(5) * (x - UniPoly.const(Fraction(1, 432)))
    assert coprime_split(p) == [UniPoly.x_power(5), x - UniPoly.const(Fraction(1, 432))]
    assert coprime_split(UniPoly.x_power(3)) == [UniPoly.x_power(3)]
    p = (x ** 2 + one) * (x - UniPoly.const(Fraction(2))) ** 2
    assert coprime_split(p) == [x ** 2 + one, (x - UniPoly.const(Fraction(2))) ** 2]


def test_coprime_split_properties():
    rng = random.Random(4)
    for _ in range(20):
        roots = [Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))]
        p = UniPoly.const(Fraction(1))
        for root in set(roots):
            p = p * UniPoly.from_roots([root] * rng.randint(1, 3))
        if rng.random() < 0.5:
            p = p * (UniPoly((Fraction(1), Fraction(0), Fraction(1))) ** rng.randint(1, 2))
        parts = coprime_split(p)
        prod = UniPoly.const(Fraction(1))
        for part in parts:
            prod = prod * part
        assert prod == p
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                assert poly_gcd(parts[i], parts[j]).degree == 0


def test_coprime_split_irreducible_certificate():
    # x^4 + 1 is reducible mod every prime but irreducible over Q
    x4 = UniPoly.x_power(4) + UniPoly.const(Fraction(1))
    assert coprime_split(x4) == [x4]


def test_bezout_known_examples():
    x = UniPoly((Fraction(0), Fraction(1)))
    one = UniPoly.const(Fraction(1))
    for u, v in [(x, x - one), (x - one, x - UniPoly.const(Fraction(2))),
                 (x ** 2, x - UniPoly.const(Fraction(3)))]:
        s, t = bezout(u, v)
        assert s * u + t * v == one
        assert s.degree < max(v.degree, 1)
        assert t.degree < max(u.degree, 1)
    s, t = bezout(x ** 2, x - UniPoly.const(Fraction(3)))
    assert s == UniPoly.const(Fraction(1, 9))
    assert t == UniPoly((Fraction(-1, 3), Fraction(-1, 9)))  # -(x+3)/9


def test_bezout_not_coprime():
    x = UniPoly((Fraction(0), Fraction(1)))
    with pytest.raises(NotCoprime):
        bezout(x ** 2, x)


def test_exact_linear_algebra():
    rows = [[Fraction(1), Fraction(1), Fraction(1)],
            [Fraction(2), Fraction(0), Fraction(1)],
            [Fraction(0), Fraction(3), Fraction(1)]]
    inv = mat_inverse(rows)
    assert inv[2] == [Fraction(6), Fraction(-3), Fraction(-2)]
    assert mat_det(rows) == 1
    assert mat_rank(rows) == 3
    sol = mat_solve(rows, [Fraction(1), Fraction(0), Fraction(0)])
    assert sol == [row[0] for row in inv]
    with pytest.raises(ValueError):
        mat_inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_rational_roots_large_denominator():
    root = Fraction(12345, 677)
    p = UniPoly.from_roots([root, root]) * (UniPoly.x_power(2) + UniPoly.const(Fraction(1)))
    assert rational_roots(p) == [(root, 2)]
