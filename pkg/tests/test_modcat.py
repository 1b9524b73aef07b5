import itertools
import random

import numpy as np
import pytest

from cyclichall import linalg as la
from cyclichall import modcat as mc
from cyclichall.hall import HallContext, module_classes_with_dims
from cyclichall.modcat import ModClass
from cyclichall.quiver import preset


def brute_submodules(rep, endos=()):
    """All stable subspace families, by enumerating every family of subspaces."""
    p, q = rep.p, rep.quiver
    per_vertex = []
    for v in range(q.n):
        subs = []
        for k in range(rep.dims[v] + 1):
            subs += [s.T for s in la.subspaces(rep.dims[v], k, p)]
        per_vertex.append(subs)
    out = []
    for fam in itertools.product(*per_vertex):
        ok = all(la.in_span(fam[t], rep.maps[a] @ fam[s] % p, p) for a, (s, t) in enumerate(q.arrows))
        ok = ok and all(la.in_span(fam[v], e[v] @ fam[v] % p, p) for e in endos for v in range(q.n))
        if ok:
            out.append(fam)
    return out


def test_hom_examples():
    q = preset("A2")
    p1, p2 = mc.projective(q, 2, 0), mc.projective(q, 2, 1)
    s1, s2 = mc.simple(q, 2, 0), mc.simple(q, 2, 1)
    assert mc.hom_dim(p1, p1) == 1
    assert mc.hom_dim(p2, p1) == 1 and mc.hom_dim(p1, p2) == 0
    assert mc.hom_dim(s1, s2) == 0
    assert mc.ext_dim(s1, s2) == 1
    assert mc.ext_dim(p1, s2) == 0
    for r in mc.build_catalogue(q, 2).reps.values():
        assert mc.ext_dim(r, r) == 0


def test_catalogue_examples():
    cat = mc.build_catalogue(preset("A2"), 2)
    assert sorted(cat.roots) == [(0, 1), (1, 0), (1, 1)]
    assert (cat.reps[(1, 1)].maps[0] == np.array([[1]])).all()
    assert len(mc.build_catalogue(preset("A3-linear"), 2)) == 6


@pytest.mark.parametrize("name, size", [("A2", 3), ("A3-linear", 6), ("A3-bipartite", 6), ("D4", 12)])
@pytest.mark.parametrize("p", [2, 3])
def test_catalogue_sizes_and_certificates(name, size, p):
    cat = mc.build_catalogue(preset(name), p)
    assert len(cat) == size
    for r in cat.roots:
        assert mc.hom_dim(cat.reps[r], cat.reps[r]) == 1
        assert mc.is_indecomposable(cat.reps[r])
    assert abs(round(float(np.linalg.det(cat.gram)))) == 1


def test_indecomposability_detects_sums():
    q = preset("A2")
    s1, s2 = mc.simple(q, 2, 0), mc.simple(q, 2, 1)
    assert not mc.is_indecomposable(s1.direct_sum(s2))
    assert mc.is_indecomposable(mc.projective(q, 2, 0))


def test_decompose_examples():
    q = preset("A2")
    p1 = mc.projective(q, 3, 0)
    assert mc.decompose(p1.direct_sum(p1)) == ModClass.from_dict({(1, 1): 2})
    cat = mc.build_catalogue(q, 3)
    assert mc.decompose(cat.reps[(1, 1)]) == ModClass.from_dict({(1, 1): 1})


def _classes_up_to(cat, bound):
    out = []
    roots = cat.roots

    def rec(k, budget, acc):
        if k == len(roots):
            out.append(ModClass.from_dict(acc))
            return
        size = sum(roots[k])
        for m in range(budget // size + 1):
            rec(k + 1, budget - m * size, {**acc, roots[k]: m})

    rec(0, bound, {})
    return out


@pytest.mark.parametrize("name, p", [("A2", 2), ("A2", 3), ("A3-linear", 2), ("A3-bipartite", 3)])
def test_decompose_realize_round_trip(name, p):
    cat = mc.build_catalogue(preset(name), p)
    rng = random.Random(7)
    for cls in _classes_up_to(cat, 6):
        m = cat.realize(cls)
        assert cat.decompose(m) == cls
        g = []
        for d in m.dims:
            while True:
                x = np.array([[rng.randrange(p) for _ in range(d)] for _ in range(d)], dtype=np.int64).reshape(d, d)
                if la.rank(x, p) == d:
                    break
            g.append(x)
        assert cat.decompose(m.transform(g)) == cls


@pytest.mark.parametrize("name", ["A2", "A3-linear", "A3-bipartite", "D4"])
def test_minimal_resolution_is_minimal(name):
    q = preset(name)
    cat = mc.build_catalogue(q, 3)
    for r, rep in cat.reps.items():
        omega, delta, pm, res = mc.minimal_resolution(rep)
        assert pm.top_dims() == rep.top_dims()
        # Omega lands in rad P: delta has no unit entry on a top-to-top component of equal vertex
        for c, w in enumerate(res.omega_tops):
            for k, v in enumerate(res.p_tops):
                if v == w:
                    assert delta[k, c] == 0
        assert tuple(a - b for a, b in zip(pm.dims, omega.dims)) == rep.dims
        assert omega.is_projective() and pm.is_projective()


def test_resolution_of_simple_a2():
    q = preset("A2")
    omega, delta, pm, res = mc.minimal_resolution(mc.simple(q, 2, 0))
    assert res.p_tops == (0,) and res.omega_tops == (1,)
    omega, delta, pm, res = mc.minimal_resolution(mc.projective(q, 2, 0))
    assert res.omega_tops == () and pm.dims == (1, 1)
    assert mc.top(mc.projective(q, 2, 0)) == ModClass.from_dict({(1, 0): 1})


@pytest.mark.parametrize("p", [2, 3])
def test_aut_counts(p):
    q = preset("A2")
    p1, p2 = mc.projective(q, p, 0), mc.projective(q, p, 1)
    assert mc.aut_count(p1) == p - 1
    assert mc.aut_count(p1.direct_sum(p1)) == (p * p - 1) * (p * p - p)
    assert mc.aut_count(p1.direct_sum(p2)) == (p - 1) ** 2 * p


def test_aut_threshold_refuses():
    q = preset("A2")
    big = mc.projective(q, 2, 0)
    big = big.direct_sum(*[big] * 3)
    with pytest.raises(mc.EndSpaceTooLarge):
        mc.aut_count(big, threshold=8)


def test_submodule_examples():
    q = preset("A2")
    s1 = mc.simple(q, 2, 0)
    assert len(list(mc.submodules(s1))) == 2
    assert len(list(mc.submodules(mc.projective(q, 2, 0)))) == 3
    assert len(list(mc.submodules(s1.direct_sum(s1)))) == 5
    with pytest.raises(mc.SearchSpaceTooLarge):
        list(mc.submodules(s1.direct_sum(s1), max_dim=1))


@pytest.mark.parametrize("name, p, mult", [
    ("A2", 2, {(1, 1): 1, (0, 1): 1, (1, 0): 1}),
    ("A2", 3, {(1, 1): 1, (1, 0): 1}),
    ("A3-linear", 2, {(1, 1, 0): 1, (0, 1, 1): 1}),
    ("A3-bipartite", 2, {(1, 1, 1): 1, (0, 1, 0): 1}),
])
def test_submodules_match_brute_force(name, p, mult):
    cat = mc.build_catalogue(preset(name), p)
    rep = cat.realize(ModClass.from_dict(mult))
    fast = list(mc.submodules(rep))
    brute = brute_submodules(rep)
    assert len(fast) == len(brute)
    key = lambda fam: tuple(la.rref(f.T, p)[0].tobytes() if f.size else b"" for f in fam)
    assert {key(f) for f in fast} == {key(f) for f in brute}


@pytest.mark.parametrize("name, p, tops", [("A2", 2, (0, 1)), ("A2", 3, (0, 0)), ("A3-linear", 2, (0, 2)),
                                           ("A3-bipartite", 2, (0, 2, 1))])
def test_split_submodules_match_filtered_brute_force(name, p, tops):
    q = preset(name)
    rep = mc.std_projective(q, p, tops)
    endo = mc.hom_basis(rep, rep)
    rng = random.Random(3)
    e = tuple(sum(rng.randrange(p) * b[v] for b in endo) % p for v in range(q.n))
    fast = list(mc.submodules(rep, stable=[e], split=True))
    brute = []
    for fam in brute_submodules(rep, [e]):
        sub, _ = mc.restrict(rep, fam)
        quo, _ = mc.quotient(rep, fam)
        if sub.is_projective() and quo.is_projective():
            brute.append(fam)
    assert len(fast) == len(brute)


def _module_sequences(name, bound):
    """(x, y, z, count) with z a counted middle term of 0 -> y -> z -> x -> 0."""
    q = preset(name)
    ctx = HallContext(q, 2)
    cat = ctx.cat
    classes = [c for c in _classes_up_to(cat, bound) if not c.is_zero()]
    out = []
    for x in classes:
        for y in classes:
            if sum(x.dim_vector(q.n)) + sum(y.dim_vector(q.n)) > bound:
                continue
            for z, f in ctx.product_basis_module(x, y).items():
                out.append((x, y, z, f))
    return cat, out


@pytest.mark.parametrize("name, bound", [("A2", 4), ("A3-linear", 4)])
def test_end_dimension_drops_on_nonsplit_extensions(name, bound):
    cat, seqs = _module_sequences(name, bound)
    assert seqs
    for x, y, z, _ in seqs:
        split = x + y
        assert cat.end_dim(z) <= cat.end_dim(split)
        assert (cat.end_dim(z) == cat.end_dim(split)) == (z == split)


@pytest.mark.parametrize("name, bound", [("A2", 4), ("A3-linear", 4)])
def test_hom_from_all_indecomposables_is_subadditive(name, bound):
    cat, seqs = _module_sequences(name, bound)
    v0 = ModClass.from_dict({r: 1 for r in cat.roots})

    def d(m):
        return cat.hom_dim_classes(v0, m)

    for x, y, z, _ in seqs:
        assert d(z) <= d(x) + d(y)
        assert (d(z) == d(x) + d(y)) == (z == x + y)


def test_module_classes_with_dims():
    cat = mc.build_catalogue(preset("A2"), 2)
    got = module_classes_with_dims((1, 1), cat)
    assert sorted(str(c) for c in got) == sorted(["M[1,1]", "M[0,1]+M[1,0]"])
