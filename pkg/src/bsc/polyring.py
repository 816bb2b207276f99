"""Exact arithmetic in Q[alpha_1, ..., alpha_r] with the Weyl action.

Polynomials are sparse maps from exponent vectors to nonzero rationals.
The cohomological grading puts every simple root in degree 2, so a
monomial with exponent sum k sits in degree 2k.  On top of the ring
structure this module provides the reflection action, the averaging
operator, the divided-difference (Demazure) operator

    partial_s(f) = (f - s(f)) / alpha_s,

and the exact splitting f = P_s(f) + partial_s(f) * alpha_s / 2 into
s-invariant parts.  All divisions are checked; a nonzero remainder in a
place where exactness is guaranteed raises ArithmeticError, since it can
only mean an internal bug.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cartan import CartanData, WeylElement, simple_reflection

INHOMOGENEOUS = "inhomogeneous"
NEG_INFINITY = float("-inf")  # degree of the zero polynomial


class PolyParseError(ValueError):
    """Raised for malformed polynomial text or JSON."""


class Poly:
    """Sparse multivariate polynomial over Q, immutable by convention."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[tuple(exps)] = coeff
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, rank: int) -> "Poly":
        return cls(rank, {})

    @classmethod
    def const(cls, rank: int, value) -> "Poly":
        return cls(rank, {(0,) * rank: Fraction(value)})

    @classmethod
    def root(cls, rank: int, i: int) -> "Poly":
        """The simple root alpha_i (0-based index)."""
        if not 0 <= i < rank:
            raise PolyParseError(f"variable index {i} out of range for rank {rank}")
        exps = tuple(1 if j == i else 0 for j in range(rank))
        return cls(rank, {exps: Fraction(1)})

    @classmethod
    def half_root(cls, rank: int, i: int) -> "Poly":
        """x_i = alpha_i / 2, the degree-2 generator used in the epsilon basis."""
        exps = tuple(1 if j == i else 0 for j in range(rank))
        return cls(rank, {exps: Fraction(1, 2)})

    @classmethod
    def monomial(cls, rank: int, exps, coeff=1) -> "Poly":
        return cls(rank, {tuple(exps): Fraction(coeff)})

    # -- ring operations ------------------------------------------------

    def _require_same_rank(self, other: "Poly") -> None:
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.rank, other)
        self._require_same_rank(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = terms.get(exps, 0) + coeff
            if new:
                terms[exps] = new
            else:
                terms.pop(exps, None)
        out = Poly.__new__(Poly)
        out.rank = self.rank
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.__new__(Poly)
        out.rank = self.rank
        out.terms = {exps: -coeff for exps, coeff in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.rank, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.rank)
            out = Poly.__new__(Poly)
            out.rank = self.rank
            out.terms = {exps: coeff * other for exps, coeff in self.terms.items()}
            return out
        self._require_same_rank(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(key, 0) + c1 * c2
                if new:
                    terms[key] = new
                else:
                    del terms[key]
        out = Poly.__new__(Poly)
        out.rank = self.rank
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        out = Poly.const(self.rank, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.rank, other)
        return isinstance(other, Poly) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({poly_to_text(self)!r})"

    def __str__(self):
        return poly_to_text(self)

    # -- grading ---------------------------------------------------------

    def total_exponent(self):
        """Common exponent sum if homogeneous, else None; None for zero too."""
        degs = {sum(exps) for exps in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self) -> bool:
        return len({sum(exps) for exps in self.terms}) <= 1

    def constant_value(self):
        """The rational value of a constant polynomial, else None."""
        if not self.terms:
            return Fraction(0)
        if list(self.terms) == [(0,) * self.rank]:
            return self.terms[(0,) * self.rank]
        return None


def degree(f: Poly):
    """Cohomological degree: 2 * exponent sum, -inf for 0, or "inhomogeneous"."""
    if not f.terms:
        return NEG_INFINITY
    d = f.total_exponent()
    return INHOMOGENEOUS if d is None else 2 * d


# -- Weyl action ----------------------------------------------------------

# (matrix, variable, power) -> Poly; reflection matrices recur constantly
_image_power_cache: dict = {}


def _variable_image_power(w: WeylElement, j: int, e: int, rank: int) -> Poly:
    key = (w.matrix, j, e)
    cached = _image_power_cache.get(key)
    if cached is None:
        image = Poly(rank, {tuple(1 if k == i else 0 for k in range(rank)): Fraction(coeff)
                            for i, coeff in enumerate(w.column(j)) if coeff})
        cached = image ** e
        _image_power_cache[key] = cached
    return cached


def weyl_act(w: WeylElement, f: Poly) -> Poly:
    """Ring automorphism substituting each alpha_j by its image root vector."""
    if w.rank != f.rank:
        raise ValueError(f"rank mismatch: element of rank {w.rank}, polynomial of rank {f.rank}")
    out = Poly.zero(f.rank)
    for exps, coeff in f.terms.items():
        term = Poly.const(f.rank, coeff)
        for j, e in enumerate(exps):
            if e:
                term = term * _variable_image_power(w, j, e, f.rank)
        out = out + term
    return out


def divide_by_root(f: Poly, i: int) -> Poly:
    """Exact division by the variable alpha_i; inexactness is an internal bug."""
    terms = {}
    for exps, coeff in f.terms.items():
        if exps[i] == 0:
            raise ArithmeticError(
                f"internal error: {poly_to_text(f)} is not divisible by alpha_{i + 1}"
            )
        key = tuple(e - 1 if j == i else e for j, e in enumerate(exps))
        terms[key] = coeff
    return Poly(f.rank, terms)


def demazure(c: CartanData, s: int, f: Poly) -> Poly:
    """partial_s(f) = (f - s(f)) / alpha_s; lands in the s-invariants."""
    sf = weyl_act(simple_reflection(c, s), f)
    diff = f - sf
    if not diff:
        return Poly.zero(f.rank)
    return divide_by_root(diff, s)


def average(c: CartanData, s: int, f: Poly) -> Poly:
    """P_s(f) = (f + s(f)) / 2."""
    return (f + weyl_act(simple_reflection(c, s), f)) * Fraction(1, 2)


def decompose(c: CartanData, s: int, f: Poly) -> tuple[Poly, Poly]:
    """Split f as P_s(f) + partial_s(f) * alpha_s/2 and return both parts."""
    sf = weyl_act(simple_reflection(c, s), f)
    avg = (f + sf) * Fraction(1, 2)
    diff = f - sf
    der = divide_by_root(diff, s) if diff else Poly.zero(f.rank)
    return avg, der


def is_invariant(c: CartanData, s: int, f: Poly) -> bool:
    return weyl_act(simple_reflection(c, s), f) == f


def exact_div(f: Poly, g: Poly) -> Poly:
    """Exact polynomial quotient f / g; raises ArithmeticError if not exact.

    Term-by-term cancellation of leading monomials in graded-lex order.
    For genuinely exact divisions this always terminates with remainder 0.
    """
    f._require_same_rank(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return Poly.zero(f.rank)

    def order_key(exps):
        return (sum(exps), exps)

    g_lead = max(g.terms, key=order_key)
    g_coeff = g.terms[g_lead]
    quotient_terms = {}
    rem = f
    while rem:
        r_lead = max(rem.terms, key=order_key)
        quot_exps = tuple(a - b for a, b in zip(r_lead, g_lead))
        if any(e < 0 for e in quot_exps):
            raise ArithmeticError("inexact polynomial division")
        q_coeff = rem.terms[r_lead] / g_coeff
        quotient_terms[quot_exps] = quotient_terms.get(quot_exps, 0) + q_coeff
        rem = rem - Poly.monomial(f.rank, quot_exps, q_coeff) * g
    return Poly(f.rank, quotient_terms)


# -- text and JSON forms ----------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+\s*/\s*\d+|\d+)|(a\d+)|([+\-*^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character at position {pos} in {text!r}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", Fraction(num.replace(" ", ""))))
        elif var is not None:
            out.append(("var", int(var[1:])))
        else:
            out.append((op, op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, rank: int):
        self.tokens = tokens
        self.pos = 0
        self.rank = rank

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse_expr(self) -> Poly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        result = self.parse_term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            result = result + self.parse_term() * (1 if op == "+" else -1)
        return result

    def parse_term(self) -> Poly:
        result = self.parse_factor()
        while self.peek() == "*":
            self.take()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Poly:
        base = self.parse_atom()
        if self.peek() == "^":
            self.take()
            kind, value = self.take() if self.pos < len(self.tokens) else (None, None)
            if kind != "num" or value.denominator != 1:
                raise PolyParseError("exponent must be a non-negative integer")
            return base ** int(value)
        return base

    def parse_atom(self) -> Poly:
        if self.peek() is None:
            raise PolyParseError("unexpected end of polynomial text")
        kind, value = self.take()
        if kind == "num":
            return Poly.const(self.rank, value)
        if kind == "var":
            if not 1 <= value <= self.rank:
                raise PolyParseError(f"variable a{value} out of range for rank {self.rank}")
            return Poly.root(self.rank, value - 1)
        if kind == "(":
            inner = self.parse_expr()
            if self.peek() != ")":
                raise PolyParseError("missing closing parenthesis")
            self.take()
            return inner
        if kind == "-":
            return -self.parse_atom()
        raise PolyParseError(f"unexpected token {value!r}")


def poly_from_text(text: str, rank: int) -> Poly:
    """Parse the grammar `a1..ar`, rationals `p/q`, operators `+ - * ^`."""
    parser = _Parser(_tokenize(text), rank)
    result = parser.parse_expr()
    if parser.pos != len(parser.tokens):
        raise PolyParseError(f"trailing input in polynomial text {text!r}")
    return result


def poly_to_text(f: Poly) -> str:
    """Canonical text, monomials in descending graded-lex order."""
    if not f.terms:
        return "0"
    parts = []
    for exps in sorted(f.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
        coeff = f.terms[exps]
        factors = [
            f"a{i + 1}" if e == 1 else f"a{i + 1}^{e}" for i, e in enumerate(exps) if e
        ]
        body = "*".join(factors)
        mag = abs(coeff)
        if not factors:
            piece = str(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{mag}*{body}"
        parts.append(("-" if coeff < 0 else "+", piece))
    sign, first = parts[0]
    text = ("-" if sign == "-" else "") + first
    for sign, piece in parts[1:]:
        text += sign + piece
    return text


def poly_to_json(f: Poly) -> list:
    """List of [numerator, denominator, [e_1, ..., e_r]] triples."""
    items = sorted(f.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))
    return [[c.numerator, c.denominator, list(exps)] for exps, c in items]


def poly_from_json(data, rank: int) -> Poly:
    if isinstance(data, str):
        return poly_from_text(data, rank)
    terms = {}
    try:
        for num, den, exps in data:
            exps = tuple(int(e) for e in exps)
            if len(exps) != rank or any(e < 0 for e in exps):
                raise PolyParseError(f"bad exponent vector {list(exps)} for rank {rank}")
            terms[exps] = terms.get(exps, 0) + Fraction(int(num), int(den))
    except (TypeError, ValueError) as exc:
        raise PolyParseError(f"malformed polynomial JSON: {exc}") from None
    return Poly(rank, terms)
