"""Exact scalar arithmetic: rationals, Laurent polynomials in lambda,
univariate polynomials over Q, and small exact linear algebra.

Rationals are fractions.Fraction throughout: always reduced, positive
denominator, arbitrary precision.  All values in this module are immutable
and safe to share between threads.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NotCoprime

Rational = Fraction


def rational_to_str(x: Fraction) -> str:
    """Serialize a rational as "p" or "p/q"."""
    return str(x)


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# Laurent polynomials in the symbolic parameter lambda
# ---------------------------------------------------------------------------

class LaurentLambda:
    """Laurent polynomial in lambda with rational coefficients.

    Supports negative exponents (the 61/15 example needs lambda^-61).
    Zero coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        if coeffs:
            self.coeffs = {e: c for e, c in coeffs.items() if c != 0}
        else:
            self.coeffs = {}

    @classmethod
    def const(cls, value) -> "LaurentLambda":
        v = Fraction(value)
        ll = cls.__new__(cls)
        ll.coeffs = {0: v} if v else {}
        return ll

    @classmethod
    def monomial(cls, exponent: int, value=1) -> "LaurentLambda":
        v = Fraction(value)
        ll = cls.__new__(cls)
        ll.coeffs = {exponent: v} if v else {}
        return ll

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {0}

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def constant_value(self) -> Fraction:
        """The value as a rational; raises if lambda genuinely appears."""
        if not self.coeffs:
            return Fraction(0)
        if set(self.coeffs) == {0}:
            return self.coeffs[0]
        raise ValueError(f"not a constant: {self}")

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentLambda):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentLambda.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        r = LaurentLambda.__new__(LaurentLambda)
        r.coeffs = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LaurentLambda.__new__(LaurentLambda)
        r.coeffs = {e: -c for e, c in self.coeffs.items()}
        return r

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _LL_ZERO
        if len(a) == 1 and len(b) == 1:
            (ea, ca), = a.items()
            (eb, cb), = b.items()
            r = LaurentLambda.__new__(LaurentLambda)
            r.coeffs = {ea + eb: ca * cb}
            return r
        out: dict[int, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = out.get(e)
                p = ca * cb
                s = p if s is None else s + p
                out[e] = s
        out = {e: c for e, c in out.items() if c}
        r = LaurentLambda.__new__(LaurentLambda)
        r.coeffs = out
        return r

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.coeffs:
            raise ZeroDivisionError("division by zero LaurentLambda")
        if len(other.coeffs) != 1:
            raise ValueError("can only divide by a lambda-monomial")
        (e, c), = other.coeffs.items()
        r = LaurentLambda.__new__(LaurentLambda)
        r.coeffs = {ea - e: ca / c for ea, ca in self.coeffs.items()}
        return r

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.coeffs.items()
            return LaurentLambda.monomial(e * n, c ** n)
        out = _LL_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return set(self.coeffs) == {0} and self.coeffs[0] == other
        if isinstance(other, LaurentLambda):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- evaluation and io ----------------------------------------------------

    def evaluate(self, value: Fraction) -> Fraction:
        """Substitute a nonzero rational for lambda."""
        value = Fraction(value)
        if value == 0 and any(e < 0 for e in self.coeffs):
            raise ZeroDivisionError("lambda = 0 with negative exponents")
        return sum((c * value ** e for e, c in self.coeffs.items()), Fraction(0))

    def evaluate_complex(self, value: complex) -> complex:
        return sum(complex(c) * value ** e for e, c in self.coeffs.items())

    def to_json(self) -> list:
        return [[e, rational_to_str(c)] for e, c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentLambda":
        return cls({int(e): Fraction(c) for e, c in data})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items()):
            if e == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}·")
                lam = "λ" if e == 1 else f"λ^{e}"
                parts.append(f"{head}{lam}")
        s = " + ".join(parts).replace("+ -", "- ")
        return s

    def __repr__(self):
        return f"LaurentLambda({self.coeffs!r})"


_LL_ZERO = LaurentLambda.const(0)
_LL_ONE = LaurentLambda.const(1)
LAMBDA = LaurentLambda.monomial(1)


def as_laurent(x) -> LaurentLambda:
    if isinstance(x, LaurentLambda):
        return x
    return LaurentLambda.const(x)


# ---------------------------------------------------------------------------
# Univariate polynomials, dense, lowest degree first
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial.

    Coefficients are Fractions or LaurentLambdas (one kind per polynomial).
    The leading coefficient is nonzero unless the polynomial is zero.
    Division-based operations require Fraction coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def x_power(cls, n: int, c=Fraction(1)) -> "UniPoly":
        return cls((0,) * n + (c,))

    @classmethod
    def from_roots(cls, roots) -> "UniPoly":
        p = cls((Fraction(1),))
        for r in roots:
            p = p * cls((-Fraction(r), Fraction(1)))
        return p

    # -- structure ------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentLambda)):
            if other == 0:
                return UniPoly()
            return UniPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UniPoly.const(Fraction(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def scale(self, c) -> "UniPoly":
        return UniPoly(tuple(x * c for x in self.coeffs))

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        inv = 1 / Fraction(self.lead) if not isinstance(self.lead, LaurentLambda) else None
        if inv is None:
            raise ValueError("monic() needs rational coefficients")
        return self.scale(inv)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Exact polynomial division over Q."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d = other.degree
        lead = other.lead
        while len(rem) - 1 >= d and rem:
            c = rem[-1] / lead
            k = len(rem) - 1 - d
            q[k] = c
            for i, oc in enumerate(other.coeffs):
                rem[k + i] -= c * oc
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(q), UniPoly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(c * k for k, c in enumerate(self.coeffs) if k >= 1))

    def evaluate(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """self(inner(x)) by Horner."""
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * inner + UniPoly.const(c)
        return out

    def shift(self, n: int) -> "UniPoly":
        """Multiply by x^n."""
        if not self.coeffs:
            return self
        return UniPoly((0,) * n + self.coeffs)

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly(tuple(fn(c) for c in self.coeffs))

    def to_rational(self) -> "UniPoly":
        """Coerce constant LaurentLambda coefficients to plain rationals."""
        return UniPoly(tuple(
            c.constant_value() if isinstance(c, LaurentLambda) else Fraction(c)
            for c in self.coeffs))

    # -- io ----------------------------------------------------------------------

    def to_json(self) -> list:
        out = []
        for c in self.coeffs:
            if isinstance(c, LaurentLambda):
                out.append(c.to_json())
            else:
                out.append(rational_to_str(Fraction(c)))
        return out

    @classmethod
    def from_json(cls, data) -> "UniPoly":
        cs = []
        for c in data:
            if isinstance(c, list):
                cs.append(LaurentLambda.from_json(c))
            else:
                cs.append(Fraction(c))
        return cls(cs)

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == 0:
                continue
            if isinstance(c, LaurentLambda) and not c.is_constant():
                cs = f"({c})"
            else:
                cv = c.constant_value() if isinstance(c, LaurentLambda) else c
                cs = str(cv)
            if k == 0:
                parts.append(cs)
            else:
                xs = var if k == 1 else f"{var}^{k}"
                parts.append(xs if cs == "1" else (f"-{xs}" if cs == "-1" else f"{cs}·{xs}"))
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"UniPoly({self.coeffs!r})"


# ---------------------------------------------------------------------------
# gcd, Bezout, squarefree decomposition (Fraction coefficients)
# ---------------------------------------------------------------------------

def poly_gcd(u: UniPoly, v: UniPoly) -> UniPoly:
    """Monic gcd over Q."""
    a, b = u, v
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def bezout(u: UniPoly, v: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Cofactors (s, t) with s*u + t*v = 1, deg s < deg v, deg t < deg u.

    Raises NotCoprime when gcd(u, v) != 1.
    """
    if u.is_zero() or v.is_zero():
        raise NotCoprime("zero polynomial")
    r0, r1 = u, v
    s0, s1 = UniPoly.const(Fraction(1)), UniPoly.zero()
    t0, t1 = UniPoly.zero(), UniPoly.const(Fraction(1))
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.degree != 0:
        raise NotCoprime(f"gcd has degree {r0.degree}")
    inv = 1 / r0.lead
    s, t = s0.scale(inv), t0.scale(inv)
    # Extended Euclid already yields the minimal-degree cofactors, except in
    # constant corner cases where the bounds are vacuous.
    if v.degree >= 1 and s.degree >= v.degree:
        q, s = s.divmod(v)
        t = t + q * u
    return s, t


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: [(g, m)] with p = lead * prod g^m, g monic squarefree,
    pairwise coprime, multiplicities m strictly increasing."""
    p = p.monic()
    out: list[tuple[UniPoly, int]] = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    m = 1
    while b.degree >= 1:
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if g.degree >= 1:
            out.append((g, m))
        b = b // g
        c = d // g
        m += 1
    return out


# ---------------------------------------------------------------------------
# Rational roots via modular lifting and rational reconstruction
# ---------------------------------------------------------------------------

_ROOT_PRIMES = (4099, 4111, 4127, 4129, 4133, 4139, 4153, 4157, 5003, 5009,
                5011, 5021, 5023, 5039, 5051, 5059, 6007, 6011, 6029, 6037)


def _to_int_poly(p: UniPoly) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _fp_eval(coeffs: list[int], x: int, p: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = (out * x + c) % p
    return out


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] = (a[k + i] - c * bc) % p
        _fp_trim(a)
    return q, a


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _fp_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                out[i + j] = (out[i + j] + ac * bc) % p
    return _fp_divmod(_fp_trim(out), mod, p)[1]


def _fp_pow_x(exp: int, mod: list[int], p: int) -> list[int]:
    """x^exp mod (mod) over F_p."""
    result = [1]
    base = _fp_divmod([0, 1], mod, p)[1]
    while exp:
        if exp & 1:
            result = _fp_mulmod(result, base, mod, p)
        base = _fp_mulmod(base, base, mod, p)
        exp >>= 1
    return result


def _rational_reconstruct(r: int, m: int, num_bound: int, den_bound: int) -> Fraction | None:
    """Find p/q = r mod m with |p| <= num_bound, 0 < q <= den_bound."""
    v0, v1 = (m, 0), (r % m, 1)
    while v1[0] > num_bound:
        q = v0[0] // v1[0]
        v0, v1 = v1, (v0[0] - q * v1[0], v0[1] - q * v1[1])
    num, den = v1[0], v1[1]
    if den == 0 or abs(den) > den_bound:
        return None
    if den < 0:
        num, den = -num, -den
    if math.gcd(abs(num), den) != 1:
        return None
    return Fraction(num, den)


def rational_roots(p: UniPoly) -> list[tuple[Fraction, int]]:
    """All rational roots of p with multiplicities, sorted ascending.

    Uses root finding mod a small prime, Hensel lifting and rational
    reconstruction, so huge integer coefficients stay cheap.
    """
    if p.is_zero():
        raise ValueError("rational_roots of the zero polynomial")
    roots: list[tuple[Fraction, int]] = []
    # strip roots at 0
    k0 = 0
    while k0 <= p.degree and p[k0] == 0:
        k0 += 1
    if k0:
        roots.append((Fraction(0), k0))
        p = UniPoly(p.coeffs[k0:])
    if p.degree < 1:
        return roots
    if p.degree == 1:
        r = -Fraction(p[0]) / Fraction(p[1])
        roots.append((r, 1))
        return sorted(roots)

    ints = _to_int_poly(p)
    candidates = _rational_root_candidates(ints)
    for r in candidates:
        mult = 0
        q = p
        lin = UniPoly((-r, Fraction(1)))
        while True:
            quo, rem = q.divmod(lin)
            if not rem.is_zero():
                break
            mult += 1
            q = quo
        if mult:
            roots.append((r, mult))
    return sorted(roots)


def _rational_root_candidates(ints: list[int]) -> list[Fraction]:
    """Candidate rational roots of a primitive integer polynomial, found by
    lifting roots mod a prime; every true rational root is among them."""
    # squarefree part over Q keeps the modular roots simple
    pq = UniPoly([Fraction(c) for c in ints])
    sf = pq // poly_gcd(pq, pq.derivative())
    g = _to_int_poly(sf)
    deg = len(g) - 1
    if deg < 1:
        return []
    num_bound = abs(ints[0]) if ints[0] else abs(ints[-1])
    den_bound = abs(ints[-1])
    for prime in _ROOT_PRIMES:
        if g[-1] % prime == 0:
            continue
        gp = [c % prime for c in g]
        dgp = _fp_trim([c * k % prime for k, c in enumerate(gp) if k >= 1])
        if len(_fp_gcd(gp, dgp, prime)) != 1:
            continue
        res = [x for x in range(prime) if _fp_eval(gp, x, prime) == 0]
        if not res:
            return []
        # Hensel-lift each simple root until the modulus dominates the bounds
        target = 2 * max(1, num_bound) * max(1, den_bound) + 1
        cands = []
        for r in res:
            m = prime
            while m < target:
                m = m * m
                fr = _int_eval_mod(g, r, m)
                dfr = _int_eval_mod([c * k for k, c in enumerate(g) if k >= 1], r, m)
                try:
                    r = (r - fr * pow(dfr, -1, m)) % m
                except ValueError:
                    break  # derivative not invertible: no simple lift here
            else:
                pass
            cand = _rational_reconstruct(r, m, num_bound, den_bound)
            if cand is not None:
                cands.append(cand)
        return cands
    return _divisor_candidates(ints)


def _int_eval_mod(coeffs: list[int], x: int, m: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = (out * x + c) % m
    return out


def _divisor_candidates(ints: list[int]) -> list[Fraction]:
    """Classic p/q enumeration; only used as a last resort for tiny inputs."""
    def divisors(n: int) -> list[int]:
        n = abs(n)
        out = []
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.extend((i, n // i))
            i += 1
        return sorted(set(out))

    a0, an = ints[0], ints[-1]
    cands = set()
    for num in divisors(a0):
        for den in divisors(an):
            cands.add(Fraction(num, den))
            cands.add(Fraction(-num, den))
    return sorted(cands)


# ---------------------------------------------------------------------------
# Coprime splitting into powers of distinct irreducibles
# ---------------------------------------------------------------------------

def _is_irreducible_mod_p(g: list[int], prime: int) -> bool:
    """Distinct-degree certificate: g irreducible over F_p implies over Q."""
    gp = _fp_trim([c % prime for c in g])
    deg = len(gp) - 1
    if deg <= 0 or g[-1] % prime == 0:
        return False
    dgp = _fp_trim([c * k % prime for k, c in enumerate(gp) if k >= 1])
    if len(_fp_gcd(gp, dgp, prime)) != 1:
        return False
    h = _fp_divmod([0, 1], gp, prime)[1]  # x mod g
    for _ in range(deg // 2):
        # h <- h^p mod g (iterated Frobenius)
        hp = [1]
        base, e = h, prime
        while e:
            if e & 1:
                hp = _fp_mulmod(hp, base, gp, prime)
            base = _fp_mulmod(base, base, gp, prime)
            e >>= 1
        h = hp
        probe = list(h)
        if len(probe) < 2:
            probe = probe + [0]
        probe[1] = (probe[1] - 1) % prime
        if len(_fp_gcd(gp, _fp_trim(probe), prime)) != 1:
            return False
    return True


def _certified_irreducible_factors(g: UniPoly) -> list[UniPoly]:
    """Split a monic squarefree polynomial with no rational roots into monic
    irreducible factors over Q."""
    if g.degree <= 3:
        # no rational roots and degree <= 3 means irreducible
        return [g]
    ints = _to_int_poly(g)
    for prime in _ROOT_PRIMES:
        if _is_irreducible_mod_p(ints, prime):
            return [g]
    # reducible mod every probed prime: fall back to a full factorization
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(Fraction(c)) * x ** k for k, c in enumerate(g.coeffs))
    _, factors = sympy.Poly(expr, x).factor_list()
    out = []
    for fac, mult in factors:
        assert mult == 1
        cs = [Fraction(str(c)) for c in reversed(sympy.Poly(fac, x).all_coeffs())]
        out.append(UniPoly(cs).monic())
    return out


def coprime_split(p: UniPoly) -> list[UniPoly]:
    """Split a monic polynomial into pairwise-coprime monic factors, each a
    power of a distinct irreducible over Q; their product is p.

    Order: ascending |constant term| of the factor, then coefficients.
    """
    if not p.is_monic():
        raise ValueError("coprime_split needs a monic polynomial")
    pieces: list[UniPoly] = []
    for g, m in squarefree_decomposition(p):
        rest = g
        for root, _ in rational_roots(g):
            lin = UniPoly((-root, Fraction(1)))
            pieces.append(lin ** m)
            rest = rest // lin
        if rest.degree >= 1:
            for irr in _certified_irreducible_factors(rest):
                pieces.append(irr ** m)

    def key(f: UniPoly):
        return (abs(Fraction(f[0])), tuple(Fraction(c) for c in f.coeffs))

    pieces.sort(key=key)
    return pieces


# ---------------------------------------------------------------------------
# Small exact linear algebra over Q
# ---------------------------------------------------------------------------

def mat_rank(rows: list[list[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        m[rank] = [x / pv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def mat_inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(i == j) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def mat_solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square exact linear system."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def mat_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        pv = m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] / pv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det
