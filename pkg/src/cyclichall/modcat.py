"""Representations of a Dynkin quiver over F_p.

A representation stores one matrix per arrow a: s -> t of shape
(dims[t], dims[s]); a morphism is a tuple of vertex matrices.  Projective
modules are usually kept in *standard form*: a list of summand tops
(vertex i meaning a copy of P_i), with the basis of the space at vertex v
indexed by the summands whose top reaches v.  A map between standard
projectives is then a single scalar matrix with rows indexed by target
summands and columns by source summands.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import linalg as la
from .quiver import DynkinQuiver, euler_form, root_candidates


class NegativeExt(RuntimeError):
    pass


class CatalogueSearchExhausted(RuntimeError):
    pass


class NonIntegralMultiplicity(ValueError):
    pass


class EndSpaceTooLarge(RuntimeError):
    pass


class SearchSpaceTooLarge(RuntimeError):
    pass


Morphism = tuple  # tuple of vertex matrices


class Rep:
    """A representation with arrow matrices over F_p."""

    def __init__(self, quiver: DynkinQuiver, p: int, dims: Sequence[int], maps: Sequence[np.ndarray] | None = None):
        self.quiver = quiver
        self.p = p
        self.dims = tuple(int(d) for d in dims)
        if maps is None:
            maps = [la.zeros(self.dims[t], self.dims[s]) for s, t in quiver.arrows]
        self.maps = tuple(np.asarray(m, dtype=np.int64) % p for m in maps)
        for m, (s, t) in zip(self.maps, quiver.arrows):
            if m.shape != (self.dims[t], self.dims[s]):
                raise ValueError(f"arrow {s}->{t}: matrix shape {m.shape} does not match dims")

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def key(self) -> tuple:
        return (self.dims, tuple(m.tobytes() for m in self.maps))

    def __eq__(self, other):
        return isinstance(other, Rep) and self.quiver == other.quiver and self.p == other.p and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Rep(dims={self.dims}, p={self.p})"

    @cached_property
    def _paths(self) -> dict:
        out = {}
        for (i, j), arrows in self.quiver.paths.items():
            m = la.identity(self.dims[i])
            for a in arrows:
                m = self.maps[a] @ m % self.p
            out[(i, j)] = m
        return out

    def path_map(self, i: int, j: int) -> np.ndarray:
        """Composite of the arrow maps along the path i -> j."""
        return self._paths[(i, j)]

    def radical_basis(self, v: int) -> np.ndarray:
        imgs = [self.maps[a] for a, _ in self.quiver.arrows_into(v)]
        if not imgs:
            return la.zeros(self.dims[v], 0)
        return la.column_basis(np.hstack(imgs), self.p)

    def top_dims(self) -> tuple[int, ...]:
        return tuple(self.dims[v] - self.radical_basis(v).shape[1] for v in range(self.quiver.n))

    def is_projective(self) -> bool:
        # projective iff at each vertex the incoming arrows embed the direct sum of their sources
        for v in range(self.quiver.n):
            into = self.quiver.arrows_into(v)
            if not into:
                continue
            total = sum(self.dims[s] for _, s in into)
            if la.rank(np.hstack([self.maps[a] for a, _ in into]), self.p) != total:
                return False
        return True

    def direct_sum(self, *others: "Rep") -> "Rep":
        reps = (self,) + others
        dims = [sum(r.dims[v] for r in reps) for v in range(self.quiver.n)]
        maps = []
        for a, (s, t) in enumerate(self.quiver.arrows):
            m = la.zeros(dims[t], dims[s])
            ro = co = 0
            for r in reps:
                m[ro:ro + r.dims[t], co:co + r.dims[s]] = r.maps[a]
                ro += r.dims[t]
                co += r.dims[s]
            maps.append(m)
        return Rep(self.quiver, self.p, dims, maps)

    def transform(self, g: Sequence[np.ndarray]) -> "Rep":
        """The isomorphic representation g . M, with g a tuple of invertible vertex matrices."""
        ginv = [la.inverse(x, self.p) if x.size else x for x in g]
        maps = [g[t] @ m @ ginv[s] % self.p for m, (s, t) in zip(self.maps, self.quiver.arrows)]
        return Rep(self.quiver, self.p, self.dims, maps)


def zero_rep(quiver: DynkinQuiver, p: int) -> Rep:
    return Rep(quiver, p, [0] * quiver.n)


# ---------------------------------------------------------------- Hom spaces

def _morphism_equations(m: Rep, n: Rep, commuting=()) -> tuple[np.ndarray, list[int]]:
    p = m.p
    q = m.quiver
    offsets = [0]
    for v in range(q.n):
        offsets.append(offsets[-1] + n.dims[v] * m.dims[v])
    rows = []
    for a, (s, t) in enumerate(q.arrows):
        blk = la.zeros(n.dims[t] * m.dims[s], offsets[-1])
        blk[:, offsets[t]:offsets[t + 1]] = np.kron(la.identity(n.dims[t]), m.maps[a].T)
        blk[:, offsets[s]:offsets[s + 1]] -= np.kron(n.maps[a], la.identity(m.dims[s]))
        rows.append(blk)
    for em, en in commuting:
        for v in range(q.n):
            blk = la.zeros(n.dims[v] * m.dims[v], offsets[-1])
            blk[:, offsets[v]:offsets[v + 1]] = np.kron(la.identity(n.dims[v]), em[v].T) - np.kron(en[v], la.identity(m.dims[v]))
            rows.append(blk)
    if rows:
        eqs = np.vstack(rows) % p
    else:
        eqs = la.zeros(0, offsets[-1])
    return eqs, offsets


def morphism_basis(m: Rep, n: Rep, commuting=()) -> list[Morphism]:
    """Basis of module maps m -> n, optionally required to intertwine pairs of endomorphisms."""
    eqs, offsets = _morphism_equations(m, n, commuting)
    total = offsets[-1]
    if total == 0:
        return []
    if eqs.shape[0] == 0:
        ker = la.identity(total)
    else:
        ker = la.nullspace(eqs, m.p)
    out = []
    for k in range(ker.shape[1]):
        col = ker[:, k]
        out.append(tuple(col[offsets[v]:offsets[v + 1]].reshape(n.dims[v], m.dims[v]) for v in range(m.quiver.n)))
    return out


def morphism_dim(m: Rep, n: Rep, commuting=()) -> int:
    eqs, offsets = _morphism_equations(m, n, commuting)
    return offsets[-1] - (la.rank(eqs, m.p) if eqs.shape[0] else 0)


def hom_basis(m: Rep, n: Rep) -> list[Morphism]:
    return morphism_basis(m, n)


def hom_dim(m: Rep, n: Rep) -> int:
    return morphism_dim(m, n)


def ext_dim(m: Rep, n: Rep) -> int:
    e = hom_dim(m, n) - euler_form(m.quiver, m.dims, n.dims)
    if e < 0:
        raise NegativeExt(f"computed Ext dimension {e} < 0")
    return e


def is_indecomposable(m: Rep) -> bool:
    """Local endomorphism ring test: the only idempotents of End(m) are 0 and 1 (enumerates End)."""
    if m.total_dim == 0:
        return False
    basis = hom_basis(m, m)
    p = m.p
    ident = tuple(la.identity(d) for d in m.dims)
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        e = tuple(sum(c * b[v] for c, b in zip(coeffs, basis)) % p if basis else la.zeros(m.dims[v], m.dims[v]) for v in range(m.quiver.n))
        if all((x @ x % p == x).all() for x in e):
            is_zero = all(not x.any() for x in e)
            is_one = all((x == i).all() for x, i in zip(e, ident))
            if not (is_zero or is_one):
                return False
    return True


# ------------------------------------------------------- standard projectives

@lru_cache(maxsize=None)
def std_basis(quiver: DynkinQuiver, tops: tuple[int, ...], v: int) -> tuple[int, ...]:
    return tuple(k for k, t in enumerate(tops) if quiver.reaches(t, v))


@lru_cache(maxsize=None)
def std_projective(quiver: DynkinQuiver, p: int, tops: tuple[int, ...]) -> Rep:
    """The projective module with one summand P_t per entry t of `tops`, in path basis."""
    dims = [len(std_basis(quiver, tops, v)) for v in range(quiver.n)]
    maps = []
    for s, t in quiver.arrows:
        bs, bt = std_basis(quiver, tops, s), std_basis(quiver, tops, t)
        m = la.zeros(len(bt), len(bs))
        for c, k in enumerate(bs):
            m[bt.index(k), c] = 1
        maps.append(m)
    return Rep(quiver, p, dims, maps)


def std_morphism(quiver: DynkinQuiver, src_tops, tgt_tops, scalar: np.ndarray) -> Morphism:
    """Vertex matrices of the map between standard projectives with the given scalar matrix."""
    src_tops, tgt_tops = tuple(src_tops), tuple(tgt_tops)
    out = []
    for v in range(quiver.n):
        rows = list(std_basis(quiver, tgt_tops, v))
        cols = list(std_basis(quiver, src_tops, v))
        out.append(np.asarray(scalar)[np.ix_(rows, cols)].astype(np.int64) if rows and cols else la.zeros(len(rows), len(cols)))
    return tuple(out)


def check_std_support(quiver: DynkinQuiver, src_tops, tgt_tops, scalar: np.ndarray) -> bool:
    for r, c in zip(*np.nonzero(scalar)):
        if not quiver.reaches(tgt_tops[r], src_tops[c]):
            return False
    return True


def projective(quiver: DynkinQuiver, p: int, i: int) -> Rep:
    return std_projective(quiver, p, (i,))


def simple(quiver: DynkinQuiver, p: int, i: int) -> Rep:
    return Rep(quiver, p, [int(v == i) for v in range(quiver.n)])


@dataclass(frozen=True)
class Resolution:
    """Minimal projective resolution 0 -> Omega -> P -> M -> 0 in standard form."""

    p_tops: tuple[int, ...]
    omega_tops: tuple[int, ...]
    delta: np.ndarray = field(compare=False)  # scalar matrix, len(p_tops) x len(omega_tops)
    epi: Morphism = field(compare=False)  # vertex matrices P -> M


def _top_complements(m: Rep) -> list[np.ndarray]:
    return [la.complement(m.radical_basis(v), m.dims[v], m.p) for v in range(m.quiver.n)]


def projective_cover(m: Rep) -> tuple[Morphism, Rep, tuple[int, ...]]:
    """(epimorphism P_M -> M, P_M in standard form, tops of P_M)."""
    q, p = m.quiver, m.p
    tops_cols = _top_complements(m)
    tops: list[int] = []
    gens: list[np.ndarray] = []
    for v in range(q.n):
        for c in range(tops_cols[v].shape[1]):
            tops.append(v)
            gens.append(tops_cols[v][:, c])
    tops_t = tuple(tops)
    pm = std_projective(q, p, tops_t)
    epi = []
    for w in range(q.n):
        basis = std_basis(q, tops_t, w)
        mat = la.zeros(m.dims[w], len(basis))
        for c, k in enumerate(basis):
            mat[:, c] = m.path_map(tops[k], w) @ gens[k] % p
        epi.append(mat)
    return tuple(epi), pm, tops_t


def minimal_resolution(m: Rep) -> tuple[Rep, np.ndarray, Rep, Resolution]:
    """(Omega_M, delta_M scalar matrix Omega_M -> P_M, P_M, Resolution record)."""
    q, p = m.quiver, m.p
    epi, pm, p_tops = projective_cover(m)
    kernels = [la.nullspace(epi[w], p) if epi[w].shape[1] else la.zeros(0, 0) for w in range(q.n)]
    omega_tops: list[int] = []
    columns: list[np.ndarray] = []
    for w in range(q.n):
        kw = kernels[w]
        if kw.shape[1] == 0:
            continue
        imgs = [pm.maps[a] @ kernels[s] % p for a, s in q.arrows_into(w) if kernels[s].shape[1]]
        rad = la.column_basis(np.hstack(imgs), p) if imgs else la.zeros(pm.dims[w], 0)
        gens = la.extend_basis(rad, kw, p)
        basis = std_basis(q, p_tops, w)
        for c in range(gens.shape[1]):
            col = np.zeros(len(p_tops), dtype=np.int64)
            for pos, k in enumerate(basis):
                col[k] = gens[pos, c]
            omega_tops.append(w)
            columns.append(col)
    omega_t = tuple(omega_tops)
    delta = np.stack(columns, axis=1) if columns else la.zeros(len(p_tops), 0)
    omega = std_projective(q, p, omega_t)
    res = Resolution(p_tops, omega_t, delta, epi)
    return omega, delta, pm, res


def top(m: Rep) -> "ModClass":
    td = m.top_dims()
    return ModClass.from_dict({tuple(int(i == v) for i in range(m.quiver.n)): td[v] for v in range(m.quiver.n)})


# ------------------------------------------------------------ unit counting

def end_threshold_dim(p: int, threshold: int = 14) -> int:
    """Largest End dimension enumerated: 2**threshold elements, scaled to base p."""
    return int(math.floor(threshold * math.log(2) / math.log(p) + 1e-9))


def unit_count(basis: Sequence[Morphism], dims: Sequence[int], p: int, threshold: int = 14) -> int:
    """Number of invertible elements of the algebra spanned by `basis` (vertexwise invertibility)."""
    k = len(basis)
    if k > end_threshold_dim(p, threshold):
        raise EndSpaceTooLarge(f"End has dimension {k} > {end_threshold_dim(p, threshold)} at p={p}")
    if k == 0:
        return 1 if sum(dims) == 0 else 0
    coeffs = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    ok = np.ones(coeffs.shape[0], dtype=bool)
    for v, d in enumerate(dims):
        if d == 0:
            continue
        stack = np.stack([b[v] for b in basis])  # (k, d, d)
        mats = np.einsum("nk,kij->nij", coeffs, stack) % p
        ok &= la.batched_invertible(mats, p)
    return int(ok.sum())


def aut_count(m: Rep, threshold: int = 14) -> int:
    return unit_count(hom_basis(m, m), m.dims, m.p, threshold)


# --------------------------------------------------------------- submodules

def _stable(uv: np.ndarray, endos_v: Sequence[np.ndarray], p: int) -> bool:
    k = uv.shape[1]
    for e in endos_v:
        img = e @ uv % p
        if not img.any():
            continue
        if k == 0 or la.rank(np.hstack([uv, img]), p) != k:
            return False
    return True


def submodules(rep: Rep, dims: Sequence[int] | None = None, stable: Sequence[Morphism] = (), split: bool = False,
               max_dim: int = 24) -> Iterator[tuple[np.ndarray, ...]]:
    """Subrepresentations of `rep`, each once, as column bases (one per vertex).

    `dims` restricts the dimension vector; `stable` lists extra endomorphisms
    the subspace family must be stable under; with `split=True` only
    projective submodules with projective quotient are produced (for
    projective `rep`).  Order is deterministic.
    """
    q, p = rep.quiver, rep.p
    if rep.total_dim > max_dim:
        raise SearchSpaceTooLarge(f"total dimension {rep.total_dim} exceeds {max_dim}")
    order = q.topological_order
    n = q.n
    into = [q.arrows_into(v) for v in range(n)]
    s_basis, c_basis = [], []
    for v in range(n):
        if into[v]:
            s = la.column_basis(np.hstack([rep.maps[a] for a, _ in into[v]]), p)
        else:
            s = la.zeros(rep.dims[v], 0)
        s_basis.append(s)
        c_basis.append(la.complement(s, rep.dims[v], p))
    u: list[np.ndarray | None] = [None] * n

    def rec(idx: int):
        if idx == n:
            yield tuple(u)
            return
        v = order[idx]
        zv = rep.dims[v]
        imgs = [rep.maps[a] @ u[s] % p for a, s in into[v] if u[s].shape[1]]
        r = la.column_basis(np.hstack(imgs), p) if imgs else la.zeros(zv, 0)
        rdim = r.shape[1]
        if split and rdim != sum(u[s].shape[1] for _, s in into[v]):
            return
        targets = [dims[v]] if dims is not None else range(rdim, zv + 1)
        endos_v = [e[v] for e in stable]
        if split:
            t = la.extend_basis(r, s_basis[v], p)
            c = c_basis[v]
            tdim, cdim = t.shape[1], c.shape[1]
            for total in targets:
                w = total - rdim
                if w < 0 or w > cdim:
                    continue
                for sub in la.subspaces(cdim, w, p):
                    base = c @ sub.T % p
                    for vals in itertools.product(range(p), repeat=tdim * w):
                        a = np.array(vals, dtype=np.int64).reshape(tdim, w) if tdim * w else la.zeros(tdim, w)
                        uv = np.hstack([r, (base + t @ a) % p])
                        if _stable(uv, endos_v, p):
                            u[v] = uv
                            yield from rec(idx + 1)
        else:
            cfull = la.complement(r, zv, p)
            m = cfull.shape[1]
            for total in targets:
                w = total - rdim
                if w < 0 or w > m:
                    continue
                for sub in la.subspaces(m, w, p):
                    uv = np.hstack([r, cfull @ sub.T % p])
                    if _stable(uv, endos_v, p):
                        u[v] = uv
                        yield from rec(idx + 1)

    yield from rec(0)


def restrict(rep: Rep, u: Sequence[np.ndarray], endos: Sequence[Morphism] = ()) -> tuple[Rep, list[Morphism]]:
    """The subrepresentation spanned by `u` and the restrictions of `endos`."""
    p = rep.p
    maps = [la.solve(u[t], rep.maps[a] @ u[s] % p, p) for a, (s, t) in enumerate(rep.quiver.arrows)]
    sub = Rep(rep.quiver, p, [x.shape[1] for x in u], maps)
    out = [tuple(la.solve(u[v], e[v] @ u[v] % p, p) for v in range(rep.quiver.n)) for e in endos]
    return sub, out


def quotient(rep: Rep, u: Sequence[np.ndarray], endos: Sequence[Morphism] = ()) -> tuple[Rep, list[Morphism]]:
    """The quotient rep/u with the induced endomorphisms."""
    p = rep.p
    n = rep.quiver.n
    comp = [la.complement(u[v], rep.dims[v], p) for v in range(n)]
    binv = [la.inverse(np.hstack([u[v], comp[v]]), p) if rep.dims[v] else la.zeros(0, 0) for v in range(n)]
    k = [u[v].shape[1] for v in range(n)]
    maps = []
    for a, (s, t) in enumerate(rep.quiver.arrows):
        maps.append((binv[t] @ rep.maps[a] @ comp[s] % p)[k[t]:, :])
    quo = Rep(rep.quiver, p, [comp[v].shape[1] for v in range(n)], maps)
    out = [tuple((binv[v] @ e[v] @ comp[v] % p)[k[v]:, :] for v in range(n)) for e in endos]
    return quo, out


# --------------------------------------------------------------- catalogue

@dataclass(frozen=True, order=True)
class ModClass:
    """Isoclass of a module: multiplicities over positive roots (zero entries dropped)."""

    mult: tuple[tuple[tuple[int, ...], int], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[tuple[int, ...], int]) -> "ModClass":
        return cls(tuple(sorted((tuple(k), int(v)) for k, v in d.items() if v)))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.mult)

    def __add__(self, other: "ModClass") -> "ModClass":
        d = self.as_dict()
        for k, v in other.mult:
            d[k] = d.get(k, 0) + v
        return ModClass.from_dict(d)

    def dim_vector(self, n: int) -> tuple[int, ...]:
        out = [0] * n
        for root, m in self.mult:
            for i, x in enumerate(root):
                out[i] += m * x
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.mult

    def summand_count(self) -> int:
        return sum(m for _, m in self.mult)

    def __str__(self):
        if not self.mult:
            return "0"
        return "+".join((f"{m}" if m > 1 else "") + "M[" + ",".join(map(str, r)) + "]" for r, m in self.mult)


class IndCatalogue:
    """Canonical indecomposables over F_p, one per positive root, with Hom-dimension Gram matrix."""

    def __init__(self, quiver: DynkinQuiver, p: int, roots, reps):
        self.quiver = quiver
        self.p = p
        self.roots: tuple[tuple[int, ...], ...] = tuple(roots)
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.reps: dict[tuple[int, ...], Rep] = dict(reps)
        n = quiver.n
        self.projective_roots = tuple(tuple(int(x) for x in quiver.projective_dims[i]) for i in range(n))
        self.simple_roots = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        self.resolutions: dict[tuple[int, ...], Resolution] = {}
        for r in self.roots:
            *_, res = minimal_resolution(self.reps[r])
            self.resolutions[r] = res
        k = len(self.roots)
        self.gram = np.zeros((k, k), dtype=np.int64)
        for i, a in enumerate(self.roots):
            for j, b in enumerate(self.roots):
                self.gram[i, j] = self.hom_dim_from(a, self.reps[b])
        import sympy

        inv = sympy.Matrix(self.gram.tolist()).inv()
        self.gram_inv = [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(k)]
        self._gram_den = math.lcm(*(x.denominator for row in self.gram_inv for x in row)) if k else 1
        self._gram_num = np.array([[int(x * self._gram_den) for x in row] for row in self.gram_inv], dtype=np.int64)

    def __len__(self):
        return len(self.roots)

    def is_projective_root(self, root) -> bool:
        return tuple(root) in self.projective_roots

    def underlying(self, root) -> tuple[int, ...]:
        """Projective multiplicities of P_M + Omega_M for M = M(root)."""
        res = self.resolutions[tuple(root)]
        out = [0] * self.quiver.n
        for t in res.p_tops + res.omega_tops:
            out[t] += 1
        return tuple(out)

    def hom_dim_from(self, root, h: Rep) -> int:
        """dim Hom(M(root), h), via the minimal projective presentation of M(root)."""
        res = self.resolutions[tuple(root)]
        p = self.p
        if not res.omega_tops:
            return sum(h.dims[t] for t in res.p_tops)
        col_dims = [h.dims[t] for t in res.p_tops]
        row_dims = [h.dims[t] for t in res.omega_tops]
        ncols, nrows = sum(col_dims), sum(row_dims)
        if ncols == 0:
            return 0
        if nrows == 0:
            return ncols
        phi = la.zeros(nrows, ncols)
        ro = 0
        for c, l in enumerate(res.omega_tops):
            co = 0
            for k, v in enumerate(res.p_tops):
                coeff = int(res.delta[k, c])
                if coeff and h.dims[l] and h.dims[v]:
                    phi[ro:ro + h.dims[l], co:co + h.dims[v]] = coeff * h.path_map(v, l)
                co += col_dims[k]
            ro += row_dims[c]
        return ncols - la.rank(phi % p, p)

    def decompose(self, m: Rep) -> ModClass:
        h = np.array([self.hom_dim_from(r, m) for r in self.roots], dtype=np.int64)
        scaled = self._gram_num @ h
        if (scaled % self._gram_den).any() or (scaled < 0).any():
            raise NonIntegralMultiplicity(f"multiplicities {scaled}/{self._gram_den} are not natural numbers")
        mult = {r: int(x) // self._gram_den for r, x in zip(self.roots, scaled) if x}
        cls = ModClass.from_dict(mult)
        if cls.dim_vector(self.quiver.n) != m.dims:
            raise NonIntegralMultiplicity("recovered multiplicities do not account for the dimension vector")
        return cls

    def realize(self, cls: ModClass) -> Rep:
        reps = [self.reps[r] for r, m in cls.mult for _ in range(m)]
        if not reps:
            return zero_rep(self.quiver, self.p)
        return reps[0].direct_sum(*reps[1:])

    def end_dim(self, cls: ModClass) -> int:
        tot = 0
        for a, ma in cls.mult:
            for b, mb in cls.mult:
                tot += ma * mb * int(self.gram[self.index[a], self.index[b]])
        return tot

    def hom_dim_classes(self, x: ModClass, y: ModClass) -> int:
        tot = 0
        for a, ma in x.mult:
            for b, mb in y.mult:
                tot += ma * mb * int(self.gram[self.index[a], self.index[b]])
        return tot

    def top_class(self, cls: ModClass) -> ModClass:
        d: dict = {}
        for r, m in cls.mult:
            td = self.reps[r].top_dims()
            for v, x in enumerate(td):
                if x:
                    s = self.simple_roots[v]
                    d[s] = d.get(s, 0) + m * x
        return ModClass.from_dict(d)


def search_indecomposable(quiver: DynkinQuiver, p: int, dims: Sequence[int]) -> Rep | None:
    """Lexicographically least arrow-matrix tuple (row-major) with End = k, or None."""
    shapes = [(dims[t], dims[s]) for s, t in quiver.arrows]
    sizes = [a * b for a, b in shapes]
    for vals in itertools.product(range(p), repeat=sum(sizes)):
        maps, pos = [], 0
        for (r, c), sz in zip(shapes, sizes):
            maps.append(np.array(vals[pos:pos + sz], dtype=np.int64).reshape(r, c))
            pos += sz
        rep = Rep(quiver, p, dims, maps)
        if hom_dim(rep, rep) == 1:
            return rep
    return None


_CATALOGUES: dict = {}


def build_catalogue(quiver: DynkinQuiver, p: int) -> IndCatalogue:
    key = (quiver, p)
    if key not in _CATALOGUES:
        reps = {}
        for root in root_candidates(quiver):
            rep = search_indecomposable(quiver, p, root)
            if rep is None:
                raise CatalogueSearchExhausted(f"no indecomposable with dimension vector {root}")
            reps[root] = rep
        _CATALOGUES[key] = IndCatalogue(quiver, p, list(reps), reps)
    return _CATALOGUES[key]


def decompose(m: Rep, catalogue: IndCatalogue | None = None) -> ModClass:
    cat = catalogue or build_catalogue(m.quiver, m.p)
    return cat.decompose(m)
