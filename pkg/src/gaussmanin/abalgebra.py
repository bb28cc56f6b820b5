"""Exact arithmetic in the algebra A = C<a,b> with a·b - b·a = b².

Elements are kept in "b-left" normal form, sum of c_{k,i}·b^k·a^i, so
b-adic truncation and initial forms read directly off the representation.
All products reduce with the single rewrite a·b^k = b^k·a + k·b^(k+1),
equivalently a·c(b) = c(b)·a + b²·c'(b) for a coefficient series c.

Elements are immutable; every operation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import (
    NonMonicDivisor,
    NotHomogeneous,
    TruncationTooSmall,
    ZeroElement,
)
from .scalars import LaurentLambda, UniPoly, as_laurent

_ZERO = LaurentLambda.const(0)


def _min_trunc(t1: int | None, t2: int | None) -> int | None:
    if t1 is None:
        return t2
    if t2 is None:
        return t1
    return min(t1, t2)


class ABElement:
    """Element of A (or of its b-adic truncation A / b^N·A).

    terms maps (b_power, a_power) to a LaurentLambda coefficient; zero
    coefficients are never stored.  trunc is None for exact elements; a
    truncated element drops every term with b_power >= trunc.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms=None, trunc: int | None = None):
        tt: dict[tuple[int, int], LaurentLambda] = {}
        if terms:
            for (k, i), c in terms.items():
                if trunc is not None and k >= trunc:
                    continue
                c = as_laurent(c)
                if c:
                    tt[(k, i)] = c
        self.terms = tt
        self.trunc = trunc

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, trunc: int | None = None) -> "ABElement":
        return cls({}, trunc)

    @classmethod
    def one(cls, trunc: int | None = None) -> "ABElement":
        return cls({(0, 0): Fraction(1)}, trunc)

    @classmethod
    def a(cls) -> "ABElement":
        return cls({(0, 1): Fraction(1)})

    @classmethod
    def b(cls) -> "ABElement":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def term(cls, b_power: int, a_power: int, coeff=1, trunc: int | None = None) -> "ABElement":
        return cls({(b_power, a_power): coeff}, trunc)

    @classmethod
    def linear(cls, eta, theta) -> "ABElement":
        """eta·a + theta·b."""
        return cls({(0, 1): eta, (1, 0): theta})

    @classmethod
    def from_poly_in_a(cls, p: UniPoly, trunc: int | None = None) -> "ABElement":
        return cls({(0, i): c for i, c in enumerate(p.coeffs)}, trunc)

    # -- degrees ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def a_degree(self) -> int:
        if not self.terms:
            raise ZeroElement("a_degree of zero")
        return max(i for (_, i) in self.terms)

    @property
    def b_order(self) -> int:
        if not self.terms:
            raise ZeroElement("b_order of zero")
        return min(k for (k, _) in self.terms)

    @property
    def ab_valuation(self) -> int:
        if not self.terms:
            raise ZeroElement("valuation of zero")
        return min(k + i for (k, i) in self.terms)

    @property
    def ab_degree(self) -> int:
        """Total (a,b)-degree; only meaningful for exact (finite) elements."""
        if not self.terms:
            raise ZeroElement("degree of zero")
        return max(k + i for (k, i) in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {k + i for (k, i) in self.terms}
        return len(degs) == 1

    def coeff(self, b_power: int, a_power: int) -> LaurentLambda:
        return self.terms.get((b_power, a_power), _ZERO)

    def a_coefficient(self, a_power: int) -> dict[int, LaurentLambda]:
        """The coefficient of a^i as a map b_power -> coefficient."""
        return {k: c for (k, i), c in self.terms.items() if i == a_power}

    def is_monic_in_a(self) -> bool:
        """Leading a-coefficient is exactly 1 (b-free)."""
        if not self.terms:
            return False
        d = self.a_degree
        col = self.a_coefficient(d)
        return set(col) == {0} and col[0] == 1

    # -- ring operations ---------------------------------------------------------

    def _make(self, terms, trunc) -> "ABElement":
        e = ABElement.__new__(ABElement)
        e.terms = terms
        e.trunc = trunc
        return e

    def __add__(self, other):
        if not isinstance(other, ABElement):
            return NotImplemented
        trunc = _min_trunc(self.trunc, other.trunc)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        if trunc is not None:
            out = {key: c for key, c in out.items() if key[0] < trunc}
        return self._make(out, trunc)

    def __neg__(self):
        return self._make({key: -c for key, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, ABElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentLambda)):
            c = as_laurent(other)
            if not c:
                return self._make({}, self.trunc)
            return self._make({key: v * c for key, v in self.terms.items()}, self.trunc)
        if not isinstance(other, ABElement):
            return NotImplemented
        trunc = _min_trunc(self.trunc, other.trunc)
        out: dict[tuple[int, int], LaurentLambda] = {}
        for (k1, i1), c1 in self.terms.items():
            for (k2, i2), c2 in other.terms.items():
                c = c1 * c2
                # b^k1 a^i1 · b^k2 a^i2:
                # a^i1·b^k2 = sum_t C(i1,t)·k2·(k2+1)···(k2+t-1)·b^(k2+t)·a^(i1-t)
                rising = 1
                for t in range(i1 + 1):
                    if t:
                        rising *= k2 + t - 1
                        if rising == 0:
                            break
                    k = k1 + k2 + t
                    if trunc is not None and k >= trunc:
                        break
                    key = (k, i1 + i2 - t)
                    add = c * (comb(i1, t) * rising)
                    s = out.get(key)
                    s = add if s is None else s + add
                    out[key] = s
        out = {key: c for key, c in out.items() if c}
        return self._make(out, trunc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentLambda)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = ABElement.one(self.trunc)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, ABElement):
            return NotImplemented
        return self.terms == other.terms and self.trunc == other.trunc

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.trunc))

    # -- truncation and gradings ---------------------------------------------------

    def truncate(self, order: int) -> "ABElement":
        """Drop terms with b_power >= order and mark the element truncated."""
        if order < 1:
            raise TruncationTooSmall(f"truncation order {order} < 1")
        return ABElement({key: c for key, c in self.terms.items() if key[0] < order},
                         trunc=order)

    def without_trunc_mark(self) -> "ABElement":
        return self._make(dict(self.terms), None)

    def shift_b(self, q: int) -> "ABElement":
        """Multiply by b^q on the left (q may be negative if valuations allow)."""
        if q < 0 and any(k + q < 0 for (k, _) in self.terms):
            raise ValueError("negative b-shift below order 0")
        trunc = None if self.trunc is None else self.trunc + q
        return self._make({(k + q, i): c for (k, i), c in self.terms.items()}, trunc)

    def component(self, degree: int) -> "ABElement":
        """Homogeneous component of the given (a,b)-degree."""
        return self._make(
            {key: c for key, c in self.terms.items() if key[0] + key[1] == degree},
            self.trunc)

    def components(self) -> dict[int, "ABElement"]:
        degs: dict[int, dict] = {}
        for key, c in self.terms.items():
            degs.setdefault(key[0] + key[1], {})[key] = c
        return {d: self._make(t, self.trunc) for d, t in sorted(degs.items())}

    def initial_form(self) -> "ABElement":
        """The homogeneous component of lowest (a,b)-degree."""
        if not self.terms:
            if self.trunc is not None:
                raise TruncationTooSmall("element vanishes to the stored order")
            raise ZeroElement("initial form of zero")
        v = self.ab_valuation
        if self.trunc is not None and self.trunc <= v:
            raise TruncationTooSmall("truncation hides the initial form")
        return self.component(v).without_trunc_mark()

    def mod_b(self) -> UniPoly:
        """The class modulo b·A as a polynomial in a."""
        if not self.terms:
            return UniPoly()
        d = self.a_degree
        cs = [_ZERO] * (d + 1)
        for (k, i), c in self.terms.items():
            if k == 0:
                cs[i] = c
        return UniPoly(cs)

    def mod_b_rational(self) -> UniPoly:
        """mod_b with plain rational coefficients; requires lambda-free input."""
        from .errors import LambdaNotSpecialized

        cs = []
        for c in self.mod_b().coeffs:
            if not c.is_constant():
                raise LambdaNotSpecialized("coefficients still involve lambda")
            cs.append(c.constant_value())
        return UniPoly(cs)

    def is_lambda_free(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def substitute_lambda(self, value: Fraction) -> "ABElement":
        """Evaluate lambda at a nonzero rational."""
        out = {}
        for key, c in self.terms.items():
            v = c.evaluate(value)
            if v:
                out[key] = LaurentLambda.const(v)
        return self._make(out, self.trunc)

    def map_coefficients(self, fn) -> "ABElement":
        out = {}
        for key, c in self.terms.items():
            v = as_laurent(fn(c))
            if v:
                out[key] = v
        return self._make(out, self.trunc)

    # -- io ---------------------------------------------------------------------

    def to_json(self) -> dict:
        terms = [{"b": k, "a": i, "c": c.to_json()}
                 for (k, i), c in sorted(self.terms.items())]
        return {"trunc": self.trunc, "terms": terms}

    @classmethod
    def from_json(cls, data) -> "ABElement":
        terms = {(t["b"], t["a"]): LaurentLambda.from_json(t["c"]) for t in data["terms"]}
        return cls(terms, data.get("trunc"))

    def __str__(self):
        if not self.terms:
            return "0"
        def key(item):
            (k, i), _ = item
            return (-(k + i), -i)
        parts = []
        for (k, i), c in sorted(self.terms.items(), key=key):
            mono = "·".join(s for s in (
                f"b^{k}" if k > 1 else ("b" if k == 1 else ""),
                f"a^{i}" if i > 1 else ("a" if i == 1 else "")) if s)
            if not mono:
                parts.append(f"{c}" if c.is_constant() else f"({c})")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            elif c.is_constant():
                parts.append(f"{c.constant_value()}·{mono}")
            else:
                parts.append(f"({c})·{mono}")
        s = " + ".join(parts).replace("+ -", "- ")
        if self.trunc is not None:
            s += f" + O(b^{self.trunc})"
        return s

    def __repr__(self):
        return f"ABElement({self.terms!r}, trunc={self.trunc!r})"


# ---------------------------------------------------------------------------
# Right division
# ---------------------------------------------------------------------------

def right_divide(p: ABElement, dvs: ABElement) -> tuple[ABElement, ABElement]:
    """Right division p = quot·dvs + rem with a_degree(rem) < a_degree(dvs).

    The divisor must be a polynomial in a whose leading a-coefficient is a
    unit: a single invertible lambda-monomial, with no b-part.  For
    homogeneous p and homogeneous divisor the division is exact and graded;
    otherwise it is exact up to the common truncation order.
    """
    if dvs.is_zero():
        raise NonMonicDivisor("division by zero")
    e = dvs.a_degree
    lead_col = dvs.a_coefficient(e)
    if set(lead_col) != {0}:
        raise NonMonicDivisor("leading a-coefficient has positive b-order")
    lead = lead_col[0]
    if not lead.is_monomial():
        raise NonMonicDivisor("leading a-coefficient is not a unit")
    trunc = _min_trunc(p.trunc, dvs.trunc)
    quot = ABElement.zero(trunc)
    rem = ABElement(dict(p.terms), trunc)
    while rem.terms and rem.a_degree >= e:
        i = rem.a_degree
        col = rem.a_coefficient(i)
        t = ABElement({(k, i - e): c / lead for k, c in col.items()}, trunc)
        quot = quot + t
        rem = rem - t * dvs
    return quot, rem


# ---------------------------------------------------------------------------
# Anti-automorphisms theta_k
# ---------------------------------------------------------------------------

def theta_k(p: ABElement, k: int) -> ABElement:
    """The anti-automorphism with theta(a) = a - k·b, theta(b) = -b.

    Anti-multiplicative: theta(x·y) = theta(y)·theta(x); an involution.
    """
    if p.trunc is not None:
        raise ValueError("theta_k needs a finite (untruncated) element")
    if not p.terms:
        return p
    amax = p.a_degree
    gen = ABElement.linear(Fraction(1), Fraction(-k))  # a - k·b
    powers = [ABElement.one()]
    for _ in range(amax):
        powers.append(powers[-1] * gen)
    out = ABElement.zero()
    for (kk, i), c in p.terms.items():
        sign = Fraction(-1) ** kk
        # theta(b^kk·a^i) = theta(a)^i·theta(b)^kk = (a - k·b)^i·(-1)^kk·b^kk,
        # with the b-powers multiplied on the right
        term = powers[i] * ABElement.term(kk, 0) if kk else powers[i]
        out = out + term * (c * sign)
    return out


# ---------------------------------------------------------------------------
# Homogeneous chains of degree-1 factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomogChain:
    """Ordered product of degree-1 factors (eta·a + theta·b), leftmost first."""

    factors: tuple[tuple[Fraction, Fraction], ...]
    _cache: list = field(default_factory=list, repr=False, compare=False)

    @property
    def degree(self) -> int:
        return len(self.factors)

    @property
    def leading(self) -> Fraction:
        out = Fraction(1)
        for eta, _ in self.factors:
            out *= eta
        return out

    def expand(self) -> ABElement:
        if not self._cache:
            out = ABElement.one()
            for eta, theta in self.factors:
                out = out * ABElement.linear(eta, theta)
            self._cache.append(out)
        return self._cache[0]

    def monic_expand(self) -> ABElement:
        lead = self.leading
        if lead == 0:
            raise ZeroElement("chain with vanishing leading coefficient")
        return self.expand() * (1 / lead)

    def to_json(self) -> list:
        return [[str(e), str(t)] for e, t in self.factors]

    @classmethod
    def from_json(cls, data) -> "HomogChain":
        return cls(tuple((Fraction(e), Fraction(t)) for e, t in data))

    def __str__(self):
        if not self.factors:
            return "1"
        def fac(eta, theta):
            lhs = "a" if eta == 1 else f"{eta}·a"
            if theta == 0:
                return f"({lhs})"
            op = "-" if theta < 0 else "+"
            th = abs(theta)
            rhs = "b" if th == 1 else f"{th}·b"
            return f"({lhs} {op} {rhs})"
        return "".join(fac(e, t) for e, t in self.factors)


def chain_expand(chain: HomogChain) -> ABElement:
    """Expanded normal form of the chain product."""
    return chain.expand()


def require_homogeneous(p: ABElement) -> int:
    """Return the (a,b)-degree, raising NotHomogeneous otherwise."""
    if p.is_zero():
        raise ZeroElement("zero element")
    if not p.is_homogeneous():
        raise NotHomogeneous(str(p))
    return p.ab_degree
