"""Acceptance criteria 1-13, each at exact (zero) tolerance.

Every test records one PASS/FAIL line; the lines are repeated in the
terminal summary under "acceptance criteria".
"""

import random

from conftest import generic, record

from cyclichall import cyclic as cy
from cyclichall import hall as hl
from cyclichall import pbw
from cyclichall.arith import IntPoly, lagrange_interpolate
from cyclichall.hall import HallElement
from cyclichall.quiver import is_bipartite, preset

E = HallElement.basis
TARGETS = ("A2", "A3-linear", "A3-bipartite", "D4")
PRIMES = (2, 3, 5)
SEED = 20240611


def _failures(report):
    return [(e["identity"], tuple(e["pair"]), e["prime"]) for e in report if e["status"] != "pass"]


def test_criterion_01_square_of_projective():
    bad, checked = [], 0
    for name in TARGETS:
        q = preset(name)
        for p in PRIMES:
            ctx = generic(name).ctx(p)
            for j in range(q.n):
                c = cy.c_projective(q, j)
                expected = HallElement({cy.c_projective(q, j, 2): p + 1, cy.k_class(j): 1})
                checked += 1
                if hl.multiply(ctx, E(c), E(c)) != expected:
                    bad.append((name, p, j + 1))
    ok = not bad
    record(1, ok, f"[C_P]^2 = (q+1)[C_2P] + [K_P]: {checked} (quiver, prime, vertex) cases, failures {bad}")
    assert ok


def test_criterion_02_six_displays():
    bad, checked = [], 0
    for name in ("A3-linear", "A3-bipartite"):
        report = pbw.verify_relation_suite(generic(name), PRIMES, groups=("6.1",))
        disp = [e for e in report if e["identity"][:4] in ("6.2-", "6.3-")]
        checked += len(disp)
        bad += [(name,) + f for f in _failures(disp)]
        pairs = {tuple(e["pair"]) for e in disp}
        expected = {(i + 1, j + 1) for i, j in pbw.ordered_pairs(preset(name))["path"]}
        if pairs != expected:
            bad.append((name, "pairs", sorted(pairs)))
    ok = not bad and checked > 0
    record(2, ok, f"six displays per path pair, per prime {PRIMES} and as Hall polynomials: {checked} entries, failures {bad}")
    assert ok


def test_criterion_03_lemma_counts():
    bad, checked = [], 0
    for name in ("A2", "A3-linear", "A3-bipartite"):
        for p in (2, 3):
            entries = pbw.lemma42_entries(generic(name).ctx(p), max_m=3)
            entries = [e for e in entries if e["identity"].endswith(("-top", "-split"))]
            checked += len(entries)
            bad += [(name,) + f for f in _failures(entries)]
    ok = not bad and checked > 0
    record(3, ok, f"F(C_(m+1)P) = (q^(m+1)-1)/(q-1) and F(C_(m-1)P + K_P) = 1, m<=3, q in (2,3): "
                  f"{checked} counts, failures {bad}")
    assert ok


def _triples(name):
    """(x, y, z) with nonzero Hall number from products of small classes."""
    gh = generic(name)
    cat = gh.base.cat
    small = [c for c in cy.all_classes_up_to(2, cat) if not c.is_zero()]
    out = []
    for x in small:
        for y in small:
            for z in gh.base.middle_term_candidates(x, y):
                if gh.base.hall_number(x, y, z):
                    out.append((x, y, z))
    return out


def test_criterion_04_hall_polynomials():
    results = []
    for name in ("A2", "A3-linear"):
        gh = generic(name)
        for x, y, z in _triples(name):
            count = lambda p, x=x, y=y, z=z: gh.ctx(p).hall_number(x, y, z)
            try:
                poly, used = hl.fit_stabilized(count)
            except (hl.StabilizationFailed, ValueError) as exc:
                results.append((name, x, y, z, None, str(exc)))
                continue
            # 7 is held out: refit on the other stabilizing primes, then predict it
            pre7 = lagrange_interpolate([(p, count(p)) for p in used if p != 7])
            results.append((name, x, y, z, poly, pre7(7) == count(7) and poly(7) == count(7)))
    stable = [r for r in results if r[4] is not None]
    predicted = [r for r in stable if r[5] is True]
    q = preset("A2")
    c = cy.c_projective(q, 1)
    square = generic("A2").hall_polynomial(c, c, cy.c_projective(q, 1, 2))
    unstable = [r for r in results if r[4] is None]
    ok = len(predicted) >= 20 and square == IntPoly.parse("x+1") and not unstable and len(predicted) == len(stable)
    record(4, ok, f"{len(stable)} triples stabilized, {len(predicted)} predict the held-out count at 7; "
                  f"psi(C_2P; C_P, C_P) = {square}; unstable {len(unstable)}")
    assert ok


def test_criterion_05_quantum_serre():
    bad, residual, reduced = [], 0, 0
    for name in TARGETS:
        report = pbw.verify_relation_suite(generic(name), PRIMES, groups=("7.5",))
        serre = [e for e in report if e["identity"].startswith("eq7.")]
        residual += sum(e["identity"] == "eq7.3-residual" for e in serre)
        reduced += sum(e["identity"] in ("eq7.3", "eq7.4") for e in serre)
        bad += [(name,) + f for f in _failures(serre)]
    ok = not bad and residual > 0 and reduced > 0
    record(5, ok, f"both Serre relations vanish after reduce_mod_K ({reduced} entries) and the unreduced residual is "
                  f"(v^-1 - v)[C_Pi + K_Pj] ({residual} entries); failures {bad}")
    assert ok


def test_criterion_06_fundamental_relations():
    bad, checked = [], 0
    for name in TARGETS:
        report = pbw.verify_relation_suite(generic(name), PRIMES, groups=("6.3",))
        rel = [e for e in report if e["identity"].startswith("prop6.3")]
        checked += len(rel)
        bad += [(name,) + f for f in _failures(rel)]
    ok = not bad and checked > 0
    record(6, ok, f"commutators of unrelated generators and both cubic relations vanish mod K at q in {PRIMES}: "
                  f"{checked} entries, failures {bad}")
    assert ok


def test_criterion_07_pbw_triangularity():
    out = []
    for name, bound in (("A2", 6), ("A3-linear", 5)):
        res = pbw.pbw_triangularity_check(generic(name).ctx(2), bound)
        out.append((name, bound, res.checked, res.violations))
    ok = all(not v for *_, v in out)
    record(7, ok, "; ".join(f"{n} bound {b}: {c} classes, {len(v)} violations" for n, b, c, v in out))
    assert ok


def test_criterion_08_minimal_generation():
    bad, checked = [], 0
    for name in ("A2", "A3-linear", "A3-bipartite"):
        q = preset(name)
        generators = {cy.c_projective(q, i) for i in range(q.n)}
        for p in (2, 3):
            ctx = generic(name).ctx(p)
            for lam in cy.indecomposables(ctx.cat):
                if lam in generators:
                    continue
                checked += 1
                try:
                    poly = pbw.express_in_generators(ctx, lam)
                except pbw.EliminationStuck as exc:
                    bad.append((name, p, str(lam), str(exc)))
                    continue
                if pbw.evaluate(ctx, poly) - E(lam) != HallElement({}):
                    bad.append((name, p, str(lam), "residual"))
    ok = not bad and checked > 0
    record(8, ok, f"{checked} indecomposable non-generator classes expressed in generator words, zero residual; "
                  f"failures {bad}")
    assert ok


def test_criterion_09_lie_structure():
    bad = []
    triples = 0
    for name in ("A2", "A3-linear"):
        gh = generic(name)
        ind = cy.indecomposables(gh.base.cat)
        br = lambda a, b: hl.bracket_elements(gh, a, b)
        for mu in ind:
            for nu in ind:
                b = hl.lie_bracket(gh, mu, nu)
                if not all(z.is_indecomposable() for z in b.terms):
                    bad.append((name, "closure", str(mu), str(nu)))
                if b != -hl.lie_bracket(gh, nu, mu):
                    bad.append((name, "antisymmetry", str(mu), str(nu)))
        for x in ind:
            for y in ind:
                for z in ind:
                    triples += 1
                    ex, ey, ez = E(x), E(y), E(z)
                    if not (br(ex, br(ey, ez)) + br(ey, br(ez, ex)) + br(ez, br(ex, ey))).is_zero():
                        bad.append((name, "jacobi", str(x), str(y), str(z)))
        report = pbw.verify_relation_suite(gh, (), groups=("2.11",))
        bad += [(name,) + f for f in _failures(report)]
        kinds = {e["identity"] for e in report}
        if name == "A3-linear" and not {"2.11(b)-i", "2.11(b)-k"} <= kinds:
            bad.append((name, "relation (b) not exercised"))
        if "2.10-h-central" not in kinds:
            bad.append((name, "[n, h] = 0 not exercised"))
    ok = not bad
    record(9, ok, f"bracket closure and antisymmetry on indecomposables, Jacobi on {triples} triples, "
                  f"relations (a)(b)(c) and [n, h] = 0; failures {bad}")
    assert ok


def test_criterion_10_degenerate_algebra():
    rng = random.Random(SEED)
    bad = []
    for name in ("A2", "A3-linear"):
        gh = generic(name)
        cat = gh.base.cat
        pool = [c for c in cy.all_classes_up_to(3, cat) if not c.is_zero()]
        mul = lambda a, b: hl.degenerate_multiply(gh, a, b)
        for _ in range(10):
            # bounded total underlying dimension keeps the Hall-polynomial fits cheap
            while True:
                triple = [rng.choice(pool) for _ in range(3)]
                if sum(sum(cy.underlying_dims(x, cat)) for x in triple) <= 4:
                    break
            a, b, c = (E(x) for x in triple)
            if mul(mul(a, b), c) != mul(a, mul(b, c)):
                bad.append((name, "associativity"))
        report = pbw.verify_relation_suite(gh, (), groups=("5.1",))
        bad += [(name,) + f for f in _failures(report)]
    tri = []
    for name, bound in (("A2", 5), ("A3-linear", 4)):
        res = pbw.pbw_triangularity_check(generic(name), bound, degenerate=True)
        tri.append((name, bound, res.checked, len(res.violations)))
        if not res.ok:
            bad.append((name, "q=1 triangularity"))
    ok = not bad
    record(10, ok, "degenerate product associative on 20 random triples, degenerate Serre and commutation vanish, "
                   + "; ".join(f"q=1 PBW {n} bound {b}: {c} classes, {v} violations" for n, b, c, v in tri)
                   + f"; failures {bad}")
    assert ok


def test_criterion_11_bipartite_retraction():
    name = "A3-bipartite"
    q = preset(name)
    assert is_bipartite(q)
    ctx = generic(name).ctx(2)
    cat = ctx.cat
    gens_ok = all(hl.top_map(E(cy.c_projective(q, i)), cat) == E(cy.parse_mod(f"S{i + 1}", q))
                  and hl.top_map(hl.section(i, q), cat) == E(cy.parse_mod(f"S{i + 1}", q)) for i in range(q.n))
    rng = random.Random(SEED)
    pool = [c for c in cy.all_classes_up_to(3, cat) if not c.is_zero() and not c.has_k()]
    mismatches = []
    for _ in range(50):
        x, y = rng.choice(pool), rng.choice(pool)
        xl, yl = E(x, "laurent"), E(y, "laurent")
        lhs = hl.top_map(hl.reduce_mod_K(hl.twisted_multiply(ctx, xl, yl)), cat)
        rhs = hl.twisted_multiply_module(ctx, hl.top_map(xl, cat), hl.top_map(yl, cat))
        if not hl.laurent_equal_at(lhs, rhs, 2):
            mismatches.append((str(x), str(y)))
    ok = gens_ok and not mismatches
    record(11, ok, f"top_map on generators and top_map o section = id: {'ok' if gens_ok else 'broken'}; "
                   f"homomorphism spot-check: {50 - len(mismatches)}/50 random reduced products agree"
                   + (f", first mismatch {mismatches[0]}" if mismatches else ""))
    assert ok


def test_criterion_12_extension_totals():
    bad, checked = [], 0
    for name in ("A2", "A3-linear"):
        ctx = generic(name).ctx(2)
        ind = cy.indecomposables(ctx.cat)
        for x in ind:
            for y in ind:
                checked += 1
                total, expected = hl.extension_total(ctx, x, y)
                if total != expected:
                    bad.append((name, str(x), str(y), str(total), expected))
    ok = not bad
    record(12, ok, f"sum_Z F |Hom| |Aut x| |Aut y| / |Aut Z| = q^(h+e) on {checked} indecomposable pairs; failures {bad}")
    assert ok


def test_criterion_13_serre_rank():
    bad, checked = [], 0
    for name in ("A2", "A3-linear", "A3-bipartite"):
        gh = generic(name)
        for i, j in pbw.ordered_pairs(preset(name))["path"]:
            for second in (False, True):
                basis, rows = pbw.serre_coefficient_matrix(gh, i, j, second)
                checked += 1
                if pbw.serre_rank_certificate(rows) is None:
                    bad.append((name, i + 1, j + 1, second))
    ok = not bad and checked > 0
    record(13, ok, f"coefficient matrix of the three cubic words has rank 3 over Z[q] in {checked} cases "
                   f"(nonzero 3x3 minor); failures {bad}")
    assert ok
