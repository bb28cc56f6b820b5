"""Built-in identity suites, runnable without pytest via the CLI."""

from __future__ import annotations

import random
from fractions import Fraction

from .abalgebra import ABElement, right_divide, theta_k
from .engine import PolySpec, analyze, build_operator


def _random_element(rng: random.Random, max_a=4, max_b=4, n_terms=5) -> ABElement:
    terms = {}
    for _ in range(n_terms):
        key = (rng.randint(0, max_b), rng.randint(0, max_a))
        terms[key] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return ABElement(terms)


def _check_power_identities() -> None:
    a, b = ABElement.a(), ABElement.b()
    for nu in range(1, 9):
        assert a ** nu * b == b * (a + b) ** nu
        assert (a + b) ** nu == a ** nu + (a ** (nu - 1) * b) * nu
        assert a ** nu * b == b * a ** nu + (b * a ** (nu - 1) * b) * nu


def _check_commutators() -> None:
    a, b = ABElement.a(), ABElement.b()
    for k in range(1, 11):
        bk = b ** k
        assert a * bk - bk * a == b ** (k + 1) * k


def _check_associativity(trials=100) -> None:
    rng = random.Random(20240)
    for _ in range(trials):
        x, y, z = (_random_element(rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def _check_theta() -> None:
    rng = random.Random(20241)
    for _ in range(25):
        x, y = _random_element(rng, 3, 3, 4), _random_element(rng, 3, 3, 4)
        k = rng.randint(1, 5)
        assert theta_k(theta_k(x, k), k) == x
        assert theta_k(x * y, k) == theta_k(y, k) * theta_k(x, k)


def _check_division() -> None:
    rng = random.Random(20242)
    for _ in range(50):
        dvs = _random_element(rng, 2, 2, 3) + ABElement.term(0, 3)
        p = _random_element(rng, 4, 4, 6)
        quot, rem = right_divide(p, dvs)
        assert quot * dvs + rem == p
        assert rem.is_zero() or rem.a_degree < dvs.a_degree


def _check_small_example() -> None:
    spec = PolySpec(((2, 0), (0, 3)), (1, 1), (0, 0))
    rel = analyze(spec)
    assert (rel.d, rel.h, rel.r, rel.c) == (5, 1, 6, Fraction(-1, 432))
    op = build_operator(spec)
    assert op.P_dh.is_monic_in_a() and op.P_d.is_monic_in_a()


_SUITES = (
    ("power identities a^ν·b = b·(a+b)^ν (ν ≤ 8)", _check_power_identities),
    ("commutators [a, b^k] = k·b^(k+1) (k ≤ 10)", _check_commutators),
    ("associativity on 100 random triples", _check_associativity),
    ("theta_k involution and anti-multiplicativity", _check_theta),
    ("right division multiply-back", _check_division),
    ("two-variable example end to end", _check_small_example),
)


def run(verbose: bool = True) -> int:
    failures = 0
    for name, fn in _SUITES:
        try:
            fn()
        except AssertionError:
            failures += 1
            if verbose:
                print(f"FAIL  {name}")
        else:
            if verbose:
                print(f"PASS  {name}")
    if verbose and failures:
        print(f"{failures} suite(s) failed")
    return 1 if failures else 0
