"""Exact coefficient domains: prime fields, integer polynomials in q, Laurent polynomials in v.

Rationals are :class:`fractions.Fraction` throughout.  ``IntPoly`` is the
home of Hall polynomials; ``LaurentV`` carries twisted structure constants,
with the convention v**2 = q.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import sympy


class NonIntegralInterpolant(ValueError):
    pass


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _format_terms(terms: list[tuple[int | Fraction, str]]) -> str:
    # terms: (coefficient, monomial string with "" meaning 1), highest first
    if not terms:
        return "0"
    out = ""
    for coeff, mono in terms:
        sign = "-" if coeff < 0 else "+"
        mag = -coeff if coeff < 0 else coeff
        if mono == "":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out = body if sign == "+" else "-" + body
        else:
            out += sign + body
    return out


class IntPoly:
    """Integer polynomial in x (x stands for the field size q)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim(int(c) for c in coeffs)

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "IntPoly":
        return cls([0, 1])

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        s = text.replace(" ", "").replace("q", "x")
        if s in ("", "0"):
            return cls()
        coeffs: dict[int, int] = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            m = re.fullmatch(r"(?:(\d+)\*?)?(x(?:\^(\d+))?)?", body)
            if m is None or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"cannot parse polynomial term {body!r}")
            c = int(m.group(1)) if m.group(1) else 1
            deg = 0 if m.group(2) is None else int(m.group(3) or 1)
            coeffs[deg] = coeffs.get(deg, 0) + (-c if sign == "-" else c)
        top = max(coeffs)
        return cls([coeffs.get(d, 0) for d in range(top + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly([other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = IntPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, IntPoly) else other
        if o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c:
                mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
                terms.append((c, mono))
        return _format_terms(terms)

    def __repr__(self):
        return f"IntPoly({str(self)!r})"

    def to_laurent(self) -> "LaurentV":
        """Image under q -> v**2."""
        return LaurentV({2 * d: Fraction(c) for d, c in enumerate(self.coeffs) if c})


class LaurentV:
    """Laurent polynomial in v with rational coefficients, canonical (no zero terms)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None):
        self.terms = {int(e): Fraction(c) for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, c) -> "LaurentV":
        return cls({0: c})

    @classmethod
    def v_power(cls, e: int, coeff=1) -> "LaurentV":
        return cls({e: coeff})

    @classmethod
    def parse(cls, text: str) -> "LaurentV":
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        terms: dict[int, Fraction] = {}
        for sign, body in re.findall(r"([+-]?)((?:[^+-]|(?<=\^)-)+)", s):
            m = re.fullmatch(r"(?:(\d+(?:/\d+)?)\*?)?(v(?:\^(-?\d+))?)?", body)
            if m is None or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"cannot parse Laurent term {body!r}")
            c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            e = 0 if m.group(2) is None else int(m.group(3) or 1)
            terms[e] = terms.get(e, Fraction(0)) + (-c if sign == "-" else c)
        return cls(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, LaurentV):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentV({0: other})
        if isinstance(other, IntPoly):
            return other.to_laurent()
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentV(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentV({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
        return LaurentV(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.terms == o.terms

    def __hash__(self):
        return hash(("LaurentV", tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        terms = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "" if e == 0 else ("v" if e == 1 else f"v^{e}")
            terms.append((c, mono))
        return _format_terms(terms)

    def __repr__(self):
        return f"LaurentV({str(self)!r})"


def lagrange_interpolate(points: Iterable[tuple[int, int]]) -> IntPoly:
    """The polynomial of degree < len(points) through `points`, required to have integer coefficients."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    n = len(pts)
    # Newton divided differences, then expand the Newton form.
    table = [y for _, y in pts]
    newton = [table[0]] if n else []
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        newton.append(table[0])
    coeffs = [Fraction(0)] * max(n, 1)
    basis = [Fraction(1)]
    for k, a in enumerate(newton):
        for d, b in enumerate(basis):
            coeffs[d] += a * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for d, b in enumerate(basis):
            nxt[d + 1] += b
            nxt[d] -= xs[k] * b
        basis = nxt
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegralInterpolant(f"interpolant has non-integral coefficients {coeffs}")
    return IntPoly(int(c) for c in coeffs)


def laurent_eval_q(f: LaurentV, q: int) -> tuple[Fraction, Fraction]:
    """Value of f at v = sqrt(q), returned as (even, odd) with f = even + odd * sqrt(q)."""
    even, odd = Fraction(0), Fraction(0)
    for e, c in f.terms.items():
        half, r = divmod(e, 2)
        term = c * Fraction(q) ** half
        if r:
            odd += term
        else:
            even += term
    return even, odd
