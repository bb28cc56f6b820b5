"""Classical ODE view of algebra elements: a acts as multiplication by s and
b as integration from 0, so b^{-1} is d/ds and θ = s·d/ds satisfies
b^{-i}·a^i = (θ+1)(θ+2)···(θ+i).

A homogeneous element of degree q becomes the Euler polynomial E with
b^{-q}·p = E(θ); a full operator becomes Σ p_k(s)·D^k with D·s = s·D + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .abalgebra import ABElement, require_homogeneous
from .engine import GMOperator
from .errors import NotMonic
from .scalars import LaurentLambda, UniPoly, as_laurent

#: Euler polynomials are UniPoly values in θ over LaurentLambda.
EulerPoly = UniPoly


def _falling_basis(max_len: int) -> list[UniPoly]:
    """F_i(θ) = (θ+1)···(θ+i) for i = 0..max_len."""
    out = [UniPoly.const(Fraction(1))]
    for i in range(1, max_len + 1):
        out.append(out[-1] * UniPoly((Fraction(i), Fraction(1))))
    return out


def euler_form(p: ABElement) -> EulerPoly:
    """The polynomial E(θ) with b^{-q}·p = E(s·d/ds), q the degree of p."""
    q = require_homogeneous(p)
    basis = _falling_basis(q)
    out = UniPoly()
    for (k, i), c in p.terms.items():
        out = out + basis[i].map_coeffs(lambda x, c=c: c * x)
    return out


def from_euler(e: EulerPoly, q: int) -> ABElement:
    """The homogeneous degree-q element whose Euler polynomial is e."""
    if e.degree > q:
        raise ValueError("Euler polynomial degree exceeds the element degree")
    basis = _falling_basis(q)
    residual = e
    terms = {}
    for k in range(q + 1):
        i = q - k
        c = residual[i]
        if not (c == 0):
            terms[(k, i)] = c
            residual = residual - basis[i].map_coeffs(lambda x, c=c: c * x)
    assert residual.is_zero()
    return ABElement(terms)


def bernstein_polynomial(q_elem: ABElement) -> UniPoly:
    """The unique monic B with (-b)^d·B(-b^{-1}·a) = q for a homogeneous
    element q monic in a of degree d.

    With E the Euler polynomial of q this is B(x) = (-1)^d·E(-x-1).
    """
    d = require_homogeneous(q_elem)
    if not q_elem.is_monic_in_a() or q_elem.a_degree != d:
        raise NotMonic("element must be monic in a of full degree")
    e = euler_form(q_elem)
    flip = UniPoly((Fraction(-1), Fraction(-1)))  # -x - 1
    b = e.compose(flip)
    if d % 2:
        b = -b
    assert b.degree == d and b[d] == 1
    return b


def element_from_bernstein(b: UniPoly, d: int) -> ABElement:
    """Inverse of bernstein_polynomial: the monic homogeneous element of
    degree d with (-b)^d·B(-b^{-1}a) equal to it."""
    flip = UniPoly((Fraction(-1), Fraction(-1)))
    e = b.compose(flip)
    if d % 2:
        e = -e
    return from_euler(e, d)


# ---------------------------------------------------------------------------
# Differential operators Σ p_k(s)·D^k
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DiffOp:
    """Normal form Σ p_k(s)·D^k with D = d/ds and D·s = s·D + 1 applied
    exhaustively; p_k are polynomials in s over LaurentLambda."""

    parts: tuple[tuple[int, UniPoly], ...]   # (derivative order, coefficient)

    @classmethod
    def build(cls, mapping: dict[int, UniPoly]) -> "DiffOp":
        parts = tuple(sorted((k, p) for k, p in mapping.items() if not p.is_zero()))
        return cls(parts)

    @classmethod
    def zero(cls) -> "DiffOp":
        return cls(())

    @classmethod
    def s_poly(cls, p: UniPoly) -> "DiffOp":
        return cls.build({0: p})

    @classmethod
    def derivative_power(cls, k: int) -> "DiffOp":
        return cls.build({k: UniPoly.const(Fraction(1))})

    @property
    def order(self) -> int:
        return self.parts[-1][0] if self.parts else -1

    def coefficient(self, k: int) -> UniPoly:
        for kk, p in self.parts:
            if kk == k:
                return p
        return UniPoly()

    def __add__(self, other: "DiffOp") -> "DiffOp":
        out = {k: p for k, p in self.parts}
        for k, p in other.parts:
            out[k] = out.get(k, UniPoly()) + p
        return DiffOp.build(out)

    def __neg__(self) -> "DiffOp":
        return DiffOp(tuple((k, -p) for k, p in self.parts))

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentLambda)):
            c = as_laurent(other)
            return DiffOp.build({k: p.map_coeffs(lambda x: x * c) for k, p in self.parts})
        if not isinstance(other, DiffOp):
            return NotImplemented
        out: dict[int, UniPoly] = {}
        for k, p in self.parts:
            for l, q in other.parts:
                # D^k·q(s) = Σ_t C(k,t)·q^{(t)}(s)·D^{k-t}
                deriv = q
                for t in range(k + 1):
                    if deriv.is_zero():
                        break
                    coef = comb(k, t)
                    term = p * deriv * coef
                    key = k - t + l
                    out[key] = out.get(key, UniPoly()) + term
                    deriv = deriv.derivative()
        return DiffOp.build(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.parts == other.parts

    def to_json(self) -> list:
        return [{"order": k, "coeff": p.to_json()} for k, p in self.parts]

    @classmethod
    def from_json(cls, data) -> "DiffOp":
        return cls.build({int(t["order"]): UniPoly.from_json(t["coeff"]) for t in data})

    def __str__(self):
        if not self.parts:
            return "0"
        chunks = []
        for k, p in sorted(self.parts, reverse=True):
            ps = p.format("s")
            body = f"({ps})" if (" " in ps or "·" in ps) else ps
            if k == 0:
                chunks.append(body)
            else:
                dd = "D" if k == 1 else f"D^{k}"
                chunks.append(f"{body}·{dd}")
        return " + ".join(chunks)


def euler_to_diffop(e: EulerPoly) -> DiffOp:
    """Substitute θ = s·D and normal-order."""
    theta = DiffOp.build({1: UniPoly((Fraction(0), Fraction(1)))})
    out = DiffOp.zero()
    for c in reversed(e.coeffs):
        out = out * theta + DiffOp.s_poly(UniPoly.const(c))
    return out


def to_differential_operator(g: GMOperator) -> DiffOp:
    """b^{-(d+h)}·P as a classical operator: B_{d+h}(θ) - c·λ^r·D^h·B_d(θ).

    The result has order d+h and its top coefficient is s^{d+h} - c·λ^r·s^d.
    """
    e_dh = euler_form(g.P_dh)
    e_d = euler_form(g.P_d)
    lead = euler_to_diffop(e_dh)
    tail = DiffOp.derivative_power(g.h) * euler_to_diffop(e_d)
    out = lead - tail * g.lambda_part()
    top = out.coefficient(g.d + g.h)
    expect = UniPoly.x_power(g.d + g.h, as_laurent(1)) - \
        UniPoly.x_power(g.d, as_laurent(g.lambda_part()))
    assert top.map_coeffs(as_laurent) == expect.map_coeffs(as_laurent)
    return out


def singular_values(g: GMOperator) -> tuple[int, LaurentLambda]:
    """The equation s^h = c·λ^r satisfied by the nonzero singular points."""
    return g.h, g.lambda_part()
