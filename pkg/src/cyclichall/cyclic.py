"""1-cyclic complexes of projective modules: construction, homology and isoclasses.

An object is a projective representation together with a square-zero
module endomorphism d.  Canonical objects are built in standard form
(summand tops plus one scalar matrix for d), see :mod:`cyclichall.modcat`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import linalg as la
from . import modcat as mc
from .modcat import IndCatalogue, ModClass, Rep
from .quiver import DynkinQuiver, euler_form


class NotProjective(ValueError):
    pass


class NotAC1Isoclass(ValueError):
    pass


class C1Object:
    """A projective representation with a square-zero endomorphism d."""

    def __init__(self, rep: Rep, d: Sequence[np.ndarray], tops: tuple[int, ...] | None = None, scalar: np.ndarray | None = None):
        self.rep = rep
        self.d = tuple(np.asarray(x, dtype=np.int64) % rep.p for x in d)
        # standard-form data when known (summand tops and the scalar matrix of d)
        self.tops = tops
        self.scalar = scalar

    @property
    def p(self) -> int:
        return self.rep.p

    @property
    def quiver(self) -> DynkinQuiver:
        return self.rep.quiver

    def check(self) -> None:
        p = self.p
        q = self.quiver
        for v in range(q.n):
            if (self.d[v] @ self.d[v] % p).any():
                raise NotAC1Isoclass(f"d^2 != 0 at vertex {v + 1}")
        for a, (s, t) in enumerate(q.arrows):
            if ((self.d[t] @ self.rep.maps[a] - self.rep.maps[a] @ self.d[s]) % p).any():
                raise NotAC1Isoclass("d does not commute with the arrow maps")
        if not self.rep.is_projective():
            raise NotAC1Isoclass("underlying module is not projective")

    def conjugate(self, g: Sequence[np.ndarray]) -> "C1Object":
        """The isomorphic object obtained by the vertexwise change of basis g."""
        p = self.p
        ginv = [la.inverse(x, p) if x.size else x for x in g]
        rep = self.rep.transform(g)
        d = [g[v] @ self.d[v] @ ginv[v] % p for v in range(self.quiver.n)]
        return C1Object(rep, d)

    def __repr__(self):
        return f"C1Object(dims={self.rep.dims}, p={self.p})"


def _from_standard(quiver: DynkinQuiver, p: int, tops: tuple[int, ...], scalar: np.ndarray) -> C1Object:
    rep = mc.std_projective(quiver, p, tops)
    d = mc.std_morphism(quiver, tops, tops, scalar)
    return C1Object(rep, d, tops, scalar % p)


def c_of_map(quiver: DynkinQuiver, p: int, p_tops, omega_tops, f: np.ndarray) -> C1Object:
    """C_f for a map f: Omega -> P between standard projectives (scalar matrix, rows P, columns Omega)."""
    p_tops, omega_tops = tuple(p_tops), tuple(omega_tops)
    f = np.asarray(f, dtype=np.int64).reshape(len(p_tops), len(omega_tops)) % p
    if not mc.check_std_support(quiver, omega_tops, p_tops, f):
        raise NotProjective("scalar matrix is not a module map between the given projectives")
    s, t = len(p_tops), len(omega_tops)
    scalar = la.zeros(s + t, s + t)
    scalar[:s, s:] = f
    return _from_standard(quiver, p, p_tops + omega_tops, scalar)


def c_of_rep_map(f: mc.Morphism, omega: Rep, proj: Rep) -> C1Object:
    """C_f for a module map f: omega -> proj given by vertex matrices."""
    if not (omega.is_projective() and proj.is_projective()):
        raise NotProjective("C_f needs projective source and target")
    q, p = proj.quiver, proj.p
    both = proj.direct_sum(omega)
    d = []
    for v in range(q.n):
        m = la.zeros(both.dims[v], both.dims[v])
        m[:proj.dims[v], proj.dims[v]:] = f[v]
        d.append(m)
    return C1Object(both, d)


def k_of_projective(quiver: DynkinQuiver, p: int, i: int) -> C1Object:
    """K_{P_i} = C_{Id}."""
    return c_of_map(quiver, p, (i,), (i,), np.array([[1]]))


def c_of_module(m: Rep) -> C1Object:
    """C_M from the minimal projective resolution of m."""
    if m.total_dim == 0:
        return _from_standard(m.quiver, m.p, (), la.zeros(0, 0))
    *_, res = mc.minimal_resolution(m)
    return c_of_map(m.quiver, m.p, res.p_tops, res.omega_tops, res.delta)


def shift(x: C1Object) -> C1Object:
    scalar = None if x.scalar is None else (-x.scalar) % x.p
    return C1Object(x.rep, [(-m) % x.p for m in x.d], x.tops, scalar)


def homology(x: C1Object) -> Rep:
    """Ker d / Im d with the induced arrow maps."""
    q, p = x.quiver, x.p
    image, extra = [], []
    for v in range(q.n):
        dv = x.d[v]
        ker = la.nullspace(dv, p) if dv.size else la.identity(x.rep.dims[v])
        img = la.column_basis(dv, p) if dv.size else la.zeros(x.rep.dims[v], 0)
        image.append(img)
        extra.append(la.extend_basis(img, ker, p))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        coords = la.solve(np.hstack([image[t], extra[t]]), x.rep.maps[a] @ extra[s] % p, p)
        maps.append(coords[image[t].shape[1]:, :])
    return Rep(q, p, [e.shape[1] for e in extra], maps)


# ----------------------------------------------------------------- isoclasses

def _vertex_json(v: int) -> str:
    return str(v + 1)


def _root_json(r) -> str:
    return ",".join(str(x) for x in r)


@dataclass(frozen=True, order=True)
class C1Class:
    """Isoclass: multiplicities of C_{M(alpha)} over positive roots and of K_{P_i} over vertices."""

    mods: tuple[tuple[tuple[int, ...], int], ...] = ()
    projs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def make(cls, mods: Mapping | None = None, projs: Mapping | None = None) -> "C1Class":
        mods = mods or {}
        projs = projs or {}
        return cls(tuple(sorted((tuple(int(x) for x in r), int(m)) for r, m in mods.items() if m)),
                   tuple(sorted((int(v), int(m)) for v, m in projs.items() if m)))

    @property
    def mod_class(self) -> ModClass:
        return ModClass(self.mods)

    def __add__(self, other: "C1Class") -> "C1Class":
        m, k = dict(self.mods), dict(self.projs)
        for r, x in other.mods:
            m[r] = m.get(r, 0) + x
        for v, x in other.projs:
            k[v] = k.get(v, 0) + x
        return C1Class.make(m, k)

    def is_zero(self) -> bool:
        return not self.mods and not self.projs

    def has_k(self) -> bool:
        return bool(self.projs)

    def summand_count(self) -> int:
        return sum(m for _, m in self.mods) + sum(m for _, m in self.projs)

    def is_indecomposable(self) -> bool:
        return self.summand_count() == 1

    def summands(self) -> list["C1Class"]:
        out = []
        for r, m in self.mods:
            out += [C1Class(((r, 1),), ())] * m
        for v, m in self.projs:
            out += [C1Class((), ((v, 1),))] * m
        return out

    def homology_dim(self, n: int) -> tuple[int, ...]:
        return self.mod_class.dim_vector(n)

    def to_json(self) -> dict:
        return {"mods": {_root_json(r): m for r, m in self.mods}, "projs": {_vertex_json(v): m for v, m in self.projs}}

    @classmethod
    def from_json(cls, data) -> "C1Class":
        if isinstance(data, str):
            data = json.loads(data)
        mods = {tuple(int(x) for x in k.split(",")): int(m) for k, m in data.get("mods", {}).items()}
        projs = {int(k) - 1: int(m) for k, m in data.get("projs", {}).items()}
        return cls.make(mods, projs)

    def __str__(self):
        parts = []
        for r, m in self.mods:
            parts.append((str(m) if m > 1 else "") + "C[" + _root_json(r) + "]")
        for v, m in self.projs:
            parts.append((str(m) if m > 1 else "") + f"K{v + 1}")
        return "+".join(parts) if parts else "0"


def c_class(root) -> C1Class:
    return C1Class(((tuple(root), 1),), ())


def k_class(v: int) -> C1Class:
    return C1Class((), ((v, 1),))


def c_projective(q: DynkinQuiver, i: int, m: int = 1) -> C1Class:
    root = tuple(int(x) for x in q.projective_dims[i])
    return C1Class(((root, m),), ())


def c_simple(q: DynkinQuiver, i: int) -> C1Class:
    return c_class(tuple(int(j == i) for j in range(q.n)))


_TERM = re.compile(r"(\d*)\s*(?:C\[([\d,\s]+)\]|CP(\d+)|CS(\d+)|K(\d+)|KP(\d+))")


def parse_c1(text: str, q: DynkinQuiver) -> C1Class:
    """Parse JSON or shorthand like ``C[1,1]+K1``, ``2CP1``, ``CS2+KP3``."""
    s = text.strip()
    if s.startswith("{"):
        return C1Class.from_json(s)
    if s in ("", "0"):
        return C1Class()
    total = C1Class()
    for part in s.split("+"):
        part = part.strip()
        m = _TERM.fullmatch(part)
        if m is None:
            raise ValueError(f"cannot parse class term {part!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        if m.group(2):
            root = tuple(int(x) for x in m.group(2).split(","))
            if len(root) != q.n:
                raise ValueError(f"root {root} has wrong length")
            cls = C1Class(((root, mult),), ())
        elif m.group(3):
            cls = c_projective(q, _vertex(m.group(3), q), mult)
        elif m.group(4):
            cls = C1Class(((c_simple(q, _vertex(m.group(4), q)).mods[0][0], mult),), ())
        else:
            cls = C1Class((), ((_vertex(m.group(5) or m.group(6), q), mult),))
        total = total + cls
    return total


_MTERM = re.compile(r"(\d*)\s*(?:M\[([\d,\s]+)\]|S(\d+)|P(\d+))")


def parse_mod(text: str, q: DynkinQuiver) -> ModClass:
    """Parse a module class: ``M[1,1]+2S1``, ``P2`` or JSON ``{"1,0": 1}``."""
    s = text.strip()
    if s.startswith("{"):
        data = json.loads(s)
        return ModClass.from_dict({tuple(int(x) for x in k.split(",")): int(m) for k, m in data.items()})
    if s in ("", "0"):
        return ModClass()
    total = ModClass()
    for part in s.split("+"):
        part = part.strip()
        m = _MTERM.fullmatch(part)
        if m is None:
            raise ValueError(f"cannot parse module term {part!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        if m.group(2):
            root = tuple(int(x) for x in m.group(2).split(","))
        elif m.group(3):
            i = _vertex(m.group(3), q)
            root = tuple(int(j == i) for j in range(q.n))
        else:
            root = tuple(int(x) for x in q.projective_dims[_vertex(m.group(4), q)])
        total = total + ModClass.from_dict({root: mult})
    return total


def mod_to_json(cls: ModClass) -> dict:
    return {_root_json(r): m for r, m in cls.mult}


def _vertex(s: str, q: DynkinQuiver) -> int:
    v = int(s) - 1
    if not 0 <= v < q.n:
        raise ValueError(f"vertex {s} out of range")
    return v


# ---------------------------------------------------------- catalogue-level

@lru_cache(maxsize=None)
def _indecomposable_standard(cat: IndCatalogue, key: tuple) -> tuple[tuple[int, ...], np.ndarray]:
    kind, item = key
    if kind == "K":
        return (item, item), np.array([[0, 1], [0, 0]], dtype=np.int64)
    res = cat.resolutions[item]
    s, t = len(res.p_tops), len(res.omega_tops)
    scalar = la.zeros(s + t, s + t)
    scalar[:s, s:] = res.delta
    return res.p_tops + res.omega_tops, scalar


_REALIZED: dict = {}


def realize(lam: C1Class, cat: IndCatalogue) -> C1Object:
    """Block-diagonal direct sum of the canonical indecomposables."""
    key = (id(cat), lam)
    hit = _REALIZED.get(key)
    if hit is not None:
        return hit
    parts = []
    for r, m in lam.mods:
        parts += [_indecomposable_standard(cat, ("C", r))] * m
    for v, m in lam.projs:
        parts += [_indecomposable_standard(cat, ("K", v))] * m
    tops: tuple[int, ...] = ()
    size = sum(len(t) for t, _ in parts)
    scalar = la.zeros(size, size)
    off = 0
    for t, sc in parts:
        scalar[off:off + len(t), off:off + len(t)] = sc
        tops += t
        off += len(t)
    obj = _from_standard(cat.quiver, cat.p, tops, scalar)
    _REALIZED[key] = obj
    return obj


def underlying_multiplicities(lam: C1Class, cat: IndCatalogue) -> tuple[int, ...]:
    out = [0] * cat.quiver.n
    for r, m in lam.mods:
        for v, x in enumerate(cat.underlying(r)):
            out[v] += m * x
    for v, m in lam.projs:
        out[v] += 2 * m
    return tuple(out)


def underlying_projective(lam: C1Class, cat: IndCatalogue) -> ModClass:
    mult = underlying_multiplicities(lam, cat)
    return ModClass.from_dict({cat.projective_roots[v]: m for v, m in enumerate(mult)})


def underlying_dims(lam: C1Class, cat: IndCatalogue) -> tuple[int, ...]:
    mult = underlying_multiplicities(lam, cat)
    dims = cat.quiver.projective_dims
    return tuple(int(sum(mult[i] * dims[i, v] for i in range(cat.quiver.n))) for v in range(cat.quiver.n))


def classify(x: C1Object, cat: IndCatalogue, check: bool = True) -> C1Class:
    """The isoclass of x, from the homology class and the projective residue."""
    if check:
        x.check()
    h = homology(x)
    try:
        mods = cat.decompose(h)
    except mc.NonIntegralMultiplicity as exc:
        raise NotAC1Isoclass(str(exc)) from exc
    try:
        total = cat.quiver.projective_multiplicities(x.rep.dims)
    except ValueError as exc:
        raise NotAC1Isoclass(str(exc)) from exc
    lam = C1Class(mods.mult, ())
    used = underlying_multiplicities(lam, cat)
    projs = {}
    for v in range(cat.quiver.n):
        r = total[v] - used[v]
        if r < 0 or r % 2:
            raise NotAC1Isoclass(f"projective residue {r} at vertex {v + 1} is not a nonnegative even number")
        if r:
            projs[v] = r // 2
    return C1Class(mods.mult, tuple(sorted(projs.items())))


def ext1_dims(x: C1Class, y: C1Class, cat: IndCatalogue) -> tuple[int, int]:
    """(dim Hom(H0 x, H0 y), dim Ext^1(H0 x, H0 y))."""
    n = cat.quiver.n
    h = cat.hom_dim_classes(x.mod_class, y.mod_class)
    e = h - euler_form(cat.quiver, x.homology_dim(n), y.homology_dim(n))
    if e < 0:
        raise mc.NegativeExt(f"computed Ext dimension {e} < 0")
    return h, e


def indecomposables(cat: IndCatalogue) -> list[C1Class]:
    """All indecomposable classes in the canonical total order."""
    out = [c_class(r) for r in cat.roots] + [k_class(v) for v in range(cat.quiver.n)]
    return sorted(out, key=lambda c: order_key(c, cat))


def order_key(c: C1Class, cat: IndCatalogue) -> tuple:
    """Canonical total order on indecomposables: (dim H0, dim End H0, dim vector H0, C before K, index)."""
    n = cat.quiver.n
    if c.mods:
        r = c.mods[0][0]
        return (sum(r), cat.end_dim(c.mod_class), r, 0, cat.index[r])
    v = c.projs[0][0]
    return (0, 0, (0,) * n, 1, v)


def all_classes_with_underlying(mult: Sequence[int], cat: IndCatalogue) -> list[C1Class]:
    """Every class whose underlying projective multiplicities equal `mult`."""
    n = cat.quiver.n
    items = [(("C", r), cat.underlying(r)) for r in cat.roots] + [(("K", v), tuple(2 * (w == v) for w in range(n))) for v in range(n)]
    out = []

    def rec(k, remaining, acc_m, acc_k):
        if k == len(items):
            if not any(remaining):
                out.append(C1Class.make(acc_m, acc_k))
            return
        (kind, key), u = items[k]
        cap = min((remaining[v] // u[v] for v in range(n) if u[v]), default=0)
        for m in range(cap + 1):
            rem = tuple(remaining[v] - m * u[v] for v in range(n))
            if kind == "C":
                acc_m[key] = m
            else:
                acc_k[key] = m
            rec(k + 1, rem, acc_m, acc_k)
        if kind == "C":
            acc_m.pop(key, None)
        else:
            acc_k.pop(key, None)

    rec(0, tuple(mult), {}, {})
    return sorted(out)


def all_classes_up_to(total_dim: int, cat: IndCatalogue) -> list[C1Class]:
    """Every class whose underlying module has total dimension <= total_dim."""
    sizes = [int(x) for x in cat.quiver.projective_dims.sum(axis=1)]
    out = []
    n = cat.quiver.n

    def rec(v, budget, mult):
        if v == n:
            out.extend(all_classes_with_underlying(mult, cat))
            return
        for m in range(budget // sizes[v] + 1):
            rec(v + 1, budget - m * sizes[v], mult + [m])

    rec(0, total_dim, [])
    return sorted(set(out))
