"""Hall numbers by subobject counting, Hall polynomials and the Hall products.

Structure constants of the plain product are counted at a single prime in a
:class:`HallContext`.  :class:`GenericHall` interpolates counts over several
primes into Hall polynomials and produces the degenerate (q = 1) and the
twisted (v**2 = q) products as exact symbolic identities.
"""

from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import cyclic as cy
from . import modcat as mc
from .arith import IntPoly, LaurentV, lagrange_interpolate, laurent_eval_q
from .cyclic import C1Class
from .modcat import ModClass
from .quiver import DynkinQuiver, euler_form

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13, 17)


class StabilizationFailed(RuntimeError):
    pass


class NotIndecomposable(ValueError):
    pass


class HasKTerms(ValueError):
    pass


# ------------------------------------------------------------------ elements

_DOMAINS = {Fraction: "rational", IntPoly: "intpoly", LaurentV: "laurent"}


def _zero_like(domain: str):
    return {"rational": Fraction(0), "intpoly": IntPoly(), "laurent": LaurentV()}[domain]


def _coerce(c, domain: str):
    if domain == "rational":
        return Fraction(c)
    if domain == "intpoly":
        return c if isinstance(c, IntPoly) else IntPoly.const(int(c))
    if isinstance(c, LaurentV):
        return c
    if isinstance(c, IntPoly):
        return c.to_laurent()
    return LaurentV.const(c)


class HallElement:
    """A finite linear combination of isoclasses with coefficients in one exact domain."""

    __slots__ = ("terms", "domain")

    def __init__(self, terms: Mapping | None = None, domain: str = "rational"):
        self.domain = domain
        zero = _zero_like(domain)
        self.terms = {}
        for b, c in (terms or {}).items():
            c = _coerce(c, domain)
            if c != zero:
                self.terms[b] = c

    @classmethod
    def basis(cls, b, domain: str = "rational") -> "HallElement":
        return cls({b: 1}, domain)

    def to(self, domain: str) -> "HallElement":
        return HallElement(self.terms, domain)

    def __add__(self, other: "HallElement") -> "HallElement":
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out[b] + c if b in out else c
        return HallElement(out, self.domain)

    def __neg__(self):
        return HallElement({b: -c for b, c in self.terms.items()}, self.domain)

    def __sub__(self, other: "HallElement") -> "HallElement":
        return self + (-other)

    def scale(self, s) -> "HallElement":
        s = _coerce(s, self.domain)
        return HallElement({b: s * c for b, c in self.terms.items()}, self.domain)

    def __eq__(self, other):
        return isinstance(other, HallElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, b):
        return self.terms.get(b, _zero_like(self.domain))

    def support(self) -> list:
        return sorted(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[b]})[{b}]" for b in sorted(self.terms))

    __repr__ = __str__

    def to_json(self) -> dict:
        def basis_json(b):
            return b.to_json() if isinstance(b, C1Class) else cy.mod_to_json(b)

        return {"domain": self.domain,
                "terms": [{"basis": basis_json(b), "coeff": str(self.terms[b])} for b in sorted(self.terms)]}

    @classmethod
    def from_json(cls, data) -> "HallElement":
        if isinstance(data, str):
            data = json.loads(data)
        domain = data["domain"]
        parse = {"rational": Fraction, "intpoly": IntPoly.parse, "laurent": LaurentV.parse}[domain]
        terms = {}
        for t in data["terms"]:
            b = t["basis"]
            if "mods" in b or "projs" in b:
                key = C1Class.from_json(b)
            else:
                key = ModClass.from_dict({tuple(int(x) for x in k.split(",")): v for k, v in b.items()})
            terms[key] = parse(t["coeff"])
        return cls(terms, domain)


def evaluate_at(a: HallElement, q: int) -> HallElement:
    """Specialize IntPoly coefficients at x = q (rational element)."""
    if a.domain != "intpoly":
        raise ValueError("evaluate_at needs an intpoly element")
    return HallElement({b: c(q) for b, c in a.terms.items()}, "rational")


def laurent_split(a: HallElement, q: int) -> dict:
    """Per-basis (even, odd) parts of a Laurent element at v**2 = q."""
    return {b: laurent_eval_q(c, q) for b, c in a.terms.items()}


def laurent_equal_at(a: HallElement, b: HallElement, q: int) -> bool:
    sa, sb = laurent_split(a, q), laurent_split(b, q)
    zero = (Fraction(0), Fraction(0))
    return all(sa.get(k, zero) == sb.get(k, zero) for k in set(sa) | set(sb))


# ------------------------------------------------------------------- context

class HallContext:
    """Counting at one prime: catalogue, memo caches and optional fault injection."""

    def __init__(self, quiver: DynkinQuiver, p: int, submodule_threshold: int = 24, end_threshold: int = 14):
        self.quiver = quiver
        self.p = p
        self.cat = mc.build_catalogue(quiver, p)
        self.submodule_threshold = submodule_threshold
        self.end_threshold = end_threshold
        self._split: dict = {}
        self._split_mod: dict = {}
        self._products: dict = {}
        self._aut: dict = {}
        self.faults: dict = {}

    # -- counting
    def subobject_table(self, z: C1Class, dims: tuple[int, ...]) -> Counter:
        """Counter of (class(Z/U), class(U)) over all subobjects U of realize(z) with underlying dims."""
        key = (z, dims)
        if key not in self._split:
            obj = cy.realize(z, self.cat)
            table: Counter = Counter()
            for u in mc.submodules(obj.rep, dims=dims, stable=[obj.d], split=True, max_dim=self.submodule_threshold):
                sub, (dsub,) = mc.restrict(obj.rep, u, [obj.d])
                quo, (dquo,) = mc.quotient(obj.rep, u, [obj.d])
                y = cy.classify(cy.C1Object(sub, dsub), self.cat, check=False)
                x = cy.classify(cy.C1Object(quo, dquo), self.cat, check=False)
                table[(x, y)] += 1
            self._split[key] = table
        return self._split[key]

    def hall_number(self, x: C1Class, y: C1Class, z: C1Class) -> int:
        if (x, y, z) in self.faults:
            return self.faults[(x, y, z)]
        ux = cy.underlying_multiplicities(x, self.cat)
        uy = cy.underlying_multiplicities(y, self.cat)
        uz = cy.underlying_multiplicities(z, self.cat)
        if tuple(a + b for a, b in zip(ux, uy)) != uz:
            return 0
        return self.subobject_table(z, cy.underlying_dims(y, self.cat))[(x, y)]

    def hall_number_module(self, x: ModClass, y: ModClass, z: ModClass) -> int:
        n = self.quiver.n
        if tuple(a + b for a, b in zip(x.dim_vector(n), y.dim_vector(n))) != z.dim_vector(n):
            return 0
        key = (z, y.dim_vector(n))
        if key not in self._split_mod:
            rep = self.cat.realize(z)
            table: Counter = Counter()
            for u in mc.submodules(rep, dims=y.dim_vector(n), max_dim=self.submodule_threshold):
                sub, _ = mc.restrict(rep, u)
                quo, _ = mc.quotient(rep, u)
                table[(self.cat.decompose(quo), self.cat.decompose(sub))] += 1
            self._split_mod[key] = table
        return self._split_mod[key][(x, y)]

    def middle_term_candidates(self, x: C1Class, y: C1Class) -> list[C1Class]:
        ux = cy.underlying_multiplicities(x, self.cat)
        uy = cy.underlying_multiplicities(y, self.cat)
        return cy.all_classes_with_underlying([a + b for a, b in zip(ux, uy)], self.cat)

    def module_middle_candidates(self, x: ModClass, y: ModClass) -> list[ModClass]:
        n = self.quiver.n
        target = tuple(a + b for a, b in zip(x.dim_vector(n), y.dim_vector(n)))
        return module_classes_with_dims(target, self.cat)

    def product_basis(self, x: C1Class, y: C1Class) -> dict[C1Class, int]:
        """Structure constants {Z: F^Z_{xy}} of [x][y]."""
        key = (x, y)
        if key not in self._products or any(k[:2] == key for k in self.faults):
            out = {}
            for z in self.middle_term_candidates(x, y):
                f = self.hall_number(x, y, z)
                if f:
                    out[z] = f
            self._products[key] = out
        return self._products[key]

    def product_basis_module(self, x: ModClass, y: ModClass) -> dict[ModClass, int]:
        out = {}
        for z in self.module_middle_candidates(x, y):
            f = self.hall_number_module(x, y, z)
            if f:
                out[z] = f
        return out

    # -- automorphisms and chain maps
    def aut_c1(self, lam: C1Class) -> int:
        if lam not in self._aut:
            obj = cy.realize(lam, self.cat)
            basis = mc.morphism_basis(obj.rep, obj.rep, commuting=[(obj.d, obj.d)])
            self._aut[lam] = mc.unit_count(basis, obj.rep.dims, self.p, self.end_threshold)
        return self._aut[lam]

    def hom_c1_dim(self, x: C1Class, y: C1Class) -> int:
        ox, oy = cy.realize(x, self.cat), cy.realize(y, self.cat)
        return mc.morphism_dim(ox.rep, oy.rep, commuting=[(ox.d, oy.d)])

    def underlying_euler(self, x: C1Class, y: C1Class) -> int:
        return euler_form(self.quiver, cy.underlying_dims(x, self.cat), cy.underlying_dims(y, self.cat))


def module_classes_with_dims(dims: Sequence[int], cat: mc.IndCatalogue) -> list[ModClass]:
    roots = list(cat.roots)
    n = cat.quiver.n
    out = []

    def rec(k, remaining, acc):
        if k == len(roots):
            if not any(remaining):
                out.append(ModClass.from_dict(acc))
            return
        r = roots[k]
        cap = min(remaining[v] // r[v] for v in range(n) if r[v])
        for m in range(cap + 1):
            acc[r] = m
            rec(k + 1, tuple(remaining[v] - m * r[v] for v in range(n)), acc)
        acc.pop(r, None)

    rec(0, tuple(dims), {})
    return sorted(out)


# ------------------------------------------------------------ products at p

def _bilinear(a: HallElement, b: HallElement, basis_product: Callable, domain: str) -> HallElement:
    out = HallElement({}, domain)
    acc: dict = {}
    for x, cx in a.terms.items():
        for y, cy_ in b.terms.items():
            for z, c in basis_product(x, y).items():
                term = _coerce(cx, domain) * _coerce(cy_, domain) * c
                acc[z] = acc[z] + term if z in acc else term
    return out + HallElement(acc, domain)


def multiply(ctx: HallContext, a: HallElement, b: HallElement) -> HallElement:
    """Plain Hall product at the context prime (rational coefficients)."""
    return _bilinear(a, b, lambda x, y: {z: Fraction(f) for z, f in ctx.product_basis(x, y).items()}, "rational")


def twisted_multiply(ctx: HallContext, a: HallElement, b: HallElement) -> HallElement:
    """[X]*[Y] = v^{-<Y0,X0>} sum F [Z], counted at the context prime."""
    def basis_product(x, y):
        tw = LaurentV.v_power(-ctx.underlying_euler(y, x))
        return {z: tw * f for z, f in ctx.product_basis(x, y).items()}

    return _bilinear(a, b, basis_product, "laurent")


def multiply_module(ctx: HallContext, a: HallElement, b: HallElement) -> HallElement:
    return _bilinear(a, b, lambda x, y: {z: Fraction(f) for z, f in ctx.product_basis_module(x, y).items()}, "rational")


def twisted_multiply_module(ctx: HallContext, a: HallElement, b: HallElement) -> HallElement:
    """[M]*[N] = v^{<M,N>} sum F^L_{MN} [L]."""
    n = ctx.quiver.n

    def basis_product(x, y):
        tw = LaurentV.v_power(euler_form(ctx.quiver, x.dim_vector(n), y.dim_vector(n)))
        return {z: tw * f for z, f in ctx.product_basis_module(x, y).items()}

    return _bilinear(a, b, basis_product, "laurent")


def product_chain(mul: Callable, ctx, elems: Sequence[HallElement], unit_domain: str = "rational") -> HallElement:
    """Left-to-right product of a sequence of elements (unit for the empty sequence)."""
    if not elems:
        return HallElement.basis(C1Class(), unit_domain)
    out = elems[0]
    for e in elems[1:]:
        out = mul(ctx, out, e)
    return out


def reduce_mod_K(a: HallElement) -> HallElement:
    """Drop every basis term with a K_P summand."""
    return HallElement({b: c for b, c in a.terms.items() if not b.has_k()}, a.domain)


def top_map(a: HallElement, cat: mc.IndCatalogue) -> HallElement:
    """[C_M] -> [top M], extended linearly."""
    acc: dict = {}
    for b, c in a.terms.items():
        if b.has_k():
            raise HasKTerms(f"term {b} has a K summand")
        t = cat.top_class(b.mod_class)
        acc[t] = acc[t] + c if t in acc else c
    return HallElement(acc, a.domain)


def section(i: int, q: DynkinQuiver, domain: str = "rational") -> HallElement:
    """[S_i] -> [C_{P_i}]."""
    return HallElement.basis(cy.c_projective(q, i), domain)


def extension_total(ctx: HallContext, x: C1Class, y: C1Class) -> tuple[Fraction, int]:
    """(sum_Z F^Z_{xy} |Hom(x,y)| |Aut x| |Aut y| / |Aut Z|, q^{h+e})."""
    p = ctx.p
    hom = p ** ctx.hom_c1_dim(x, y)
    ax, ay = ctx.aut_c1(x), ctx.aut_c1(y)
    total = Fraction(0)
    for z, f in ctx.product_basis(x, y).items():
        total += Fraction(f * hom * ax * ay, ctx.aut_c1(z))
    h, e = cy.ext1_dims(x, y, ctx.cat)
    return total, p ** (h + e)


def extension_total_check(ctx: HallContext, x: C1Class, y: C1Class) -> bool:
    total, expected = extension_total(ctx, x, y)
    return total == expected


# --------------------------------------------------------- Hall polynomials

def fit_stabilized(count: Callable[[int], int], primes: Sequence[int] = DEFAULT_PRIMES, min_fit: int = 3) -> tuple[IntPoly, list[int]]:
    """Interpolate counts over growing prime sets until two consecutive fits agree and a holdout prime agrees.

    Returns (polynomial, primes used including the holdout).
    """
    values: dict[int, int] = {}

    def val(p):
        if p not in values:
            values[p] = count(p)
        return values[p]

    prev = lagrange_interpolate([(p, val(p)) for p in primes[:min_fit - 1]]) if min_fit > 1 else None
    for k in range(min_fit, len(primes)):
        fit = lagrange_interpolate([(p, val(p)) for p in primes[:k]])
        if fit == prev:
            holdout = primes[k]
            if fit(holdout) == val(holdout):
                return fit, list(primes[:k + 1])
        prev = fit
    raise StabilizationFailed(f"no stable fit within primes {list(primes)}")


class GenericHall:
    """Hall polynomials for a fixed quiver, computed from contexts at several primes."""

    def __init__(self, quiver: DynkinQuiver, primes: Sequence[int] = DEFAULT_PRIMES, submodule_threshold: int = 24,
                 end_threshold: int = 14):
        self.quiver = quiver
        self.primes = tuple(primes)
        self.submodule_threshold = submodule_threshold
        self.end_threshold = end_threshold
        self._ctx: dict[int, HallContext] = {}
        self._poly: dict = {}
        self._products: dict = {}

    def ctx(self, p: int) -> HallContext:
        if p not in self._ctx:
            self._ctx[p] = HallContext(self.quiver, p, self.submodule_threshold, self.end_threshold)
        return self._ctx[p]

    @property
    def base(self) -> HallContext:
        return self.ctx(self.primes[0])

    def hall_polynomial(self, x: C1Class, y: C1Class, z: C1Class) -> IntPoly:
        key = (x, y, z)
        if key not in self._poly:
            poly, _ = fit_stabilized(lambda p: self.ctx(p).hall_number(x, y, z), self.primes)
            self._poly[key] = poly
        return self._poly[key]

    def product_basis(self, x: C1Class, y: C1Class) -> dict[C1Class, IntPoly]:
        key = (x, y)
        if key not in self._products:
            out = {}
            for z in self.base.middle_term_candidates(x, y):
                f = self.hall_polynomial(x, y, z)
                if f:
                    out[z] = f
            self._products[key] = out
        return self._products[key]


def hall_polynomial(quiver: DynkinQuiver, x: C1Class, y: C1Class, z: C1Class, primes: Sequence[int] = DEFAULT_PRIMES) -> IntPoly:
    return GenericHall(quiver, primes).hall_polynomial(x, y, z)


def generic_multiply(gh: GenericHall, a: HallElement, b: HallElement) -> HallElement:
    """Plain product with Hall-polynomial coefficients (IntPoly in x = q)."""
    return _bilinear(a, b, gh.product_basis, "intpoly")


def degenerate_multiply(gh: GenericHall, a: HallElement, b: HallElement) -> HallElement:
    """Product with structure constants psi(1)."""
    return _bilinear(a, b, lambda x, y: {z: Fraction(f(1)) for z, f in gh.product_basis(x, y).items()}, "rational")


def generic_twisted_multiply(gh: GenericHall, a: HallElement, b: HallElement) -> HallElement:
    """Twisted product with exact Laurent coefficients, psi(q) read at q = v**2."""
    ctx = gh.base

    def basis_product(x, y):
        tw = LaurentV.v_power(-ctx.underlying_euler(y, x))
        return {z: tw * f.to_laurent() for z, f in gh.product_basis(x, y).items()}

    return _bilinear(a, b, basis_product, "laurent")


def lie_bracket(gh: GenericHall, mu: C1Class, nu: C1Class) -> HallElement:
    """[mu, nu] = sum (psi_{mu nu}(1) - psi_{nu mu}(1)) [lambda] for indecomposable mu, nu."""
    if not (mu.is_indecomposable() and nu.is_indecomposable()):
        raise NotIndecomposable("lie_bracket needs indecomposable classes")
    a, b = HallElement.basis(mu), HallElement.basis(nu)
    return degenerate_multiply(gh, a, b) - degenerate_multiply(gh, b, a)


def bracket_elements(gh: GenericHall, a: HallElement, b: HallElement) -> HallElement:
    """Bilinear extension of the bracket via the degenerate commutator."""
    return degenerate_multiply(gh, a, b) - degenerate_multiply(gh, b, a)


def basis_elements(classes: Iterable, domain: str = "rational") -> list[HallElement]:
    return [HallElement.basis(c, domain) for c in classes]
