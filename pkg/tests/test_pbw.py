from fractions import Fraction

import pytest
from conftest import generic

from cyclichall import cyclic as cy
from cyclichall import hall as hl
from cyclichall import pbw
from cyclichall.arith import IntPoly
from cyclichall.cyclic import C1Class
from cyclichall.hall import HallElement
from cyclichall.pbw import GeneratorWord, NCPolynomial
from cyclichall.quiver import preset

E = HallElement.basis


def test_ordered_monomial_examples():
    q = preset("A2")
    ctx = generic("A2").ctx(2)
    c1, c2 = cy.c_projective(q, 0), cy.c_projective(q, 1)
    assert pbw.ordered_monomial_expand(ctx, {c2: 2}) == HallElement({cy.c_projective(q, 1, 2): 3, cy.k_class(1): 1})
    assert pbw.ordered_monomial_expand(ctx, {}) == E(C1Class())
    # C_{P_1} comes after C_{P_2} in the canonical order, so order [C_{P_1}][C_{P_2}]^2 explicitly
    got = pbw.ordered_monomial_expand(ctx, {c1: 1, c2: 2}, order=[c1, c2])
    assert got == HallElement({C1Class.make({(1, 1): 1, (0, 1): 2}): 4 * 3, c1 + cy.k_class(1): 2})


def test_degree_orders():
    cat = generic("A2").base.cat
    q = preset("A2")
    c2 = cy.c_projective(q, 1, 2)
    k = cy.k_class(1)
    assert pbw.pbw_less(pbw.pbw_deg(k, cat), pbw.pbw_deg(c2, cat))
    assert not pbw.pbw_less(pbw.pbw_deg(c2, cat), pbw.pbw_deg(c2, cat))
    split = cy.c_projective(q, 0) + cy.c_projective(q, 1)
    assert pbw.pbw_less(pbw.pbw_deg(cy.c_projective(q, 0), cat), pbw.pbw_deg(split, cat))
    assert pbw.gen_less(pbw.gen_deg(split, 2), pbw.gen_deg(cy.c_simple(q, 0), 2))
    assert pbw.gen_less(pbw.gen_deg(c2, 2), pbw.gen_deg(cy.c_projective(q, 1), 2))
    order = pbw.DegOrder("PBW")
    assert order.less(order.deg(k, cat), order.deg(c2, cat))


def test_single_indecomposable_is_its_own_monomial():
    ctx = generic("A3-linear").ctx(2)
    for x in cy.indecomposables(ctx.cat):
        assert pbw.ordered_monomial_expand(ctx, {x: 1}) == E(x)


@pytest.mark.parametrize("name, bound", [("A2", 4), ("A3-linear", 4), ("A3-bipartite", 4)])
def test_triangularity_small(name, bound):
    res = pbw.pbw_triangularity_check(generic(name).ctx(3), bound)
    assert res.ok, res.violations[:3]
    assert res.checked > 5


def test_degenerate_triangularity_small():
    res = pbw.pbw_triangularity_check(generic("A2"), 4, degenerate=True)
    assert res.ok and res.checked == 17


def test_triangularity_detects_a_fault():
    q = preset("A2")
    ctx = hl.HallContext(q, 2)
    c2 = cy.c_projective(q, 1)
    ctx.faults[(c2, c2, cy.c_projective(q, 1, 2))] = 0
    res = pbw.pbw_triangularity_check(ctx, 2)
    assert not res.ok
    assert res.violations[0][0] == cy.c_projective(q, 1, 2)


def test_express_examples():
    q = preset("A2")
    for p in (2, 3):
        ctx = generic("A2").ctx(p)
        poly = pbw.express_in_generators(ctx, cy.c_projective(q, 0))
        assert poly.terms == {GeneratorWord.parse("c1"): 1}
        poly = pbw.express_in_generators(ctx, cy.c_simple(q, 0))
        assert poly.terms == {GeneratorWord.parse("c2 c1"): 1, GeneratorWord.parse("c1 c2"): Fraction(-1, p)}
        poly = pbw.express_in_generators(ctx, cy.c_projective(q, 1, 2))
        assert poly.terms == {GeneratorWord.parse("c2 c2"): Fraction(1, p + 1), GeneratorWord.parse("k2"): Fraction(-1, p + 1)}


@pytest.mark.parametrize("name", ["A2", "A3-linear", "A3-bipartite", "A3-source"])
def test_express_round_trip(name):
    ctx = generic(name).ctx(2)
    for lam in cy.all_classes_up_to(3, ctx.cat):
        poly = pbw.express_in_generators(ctx, lam)
        assert pbw.evaluate(ctx, poly) == E(lam)


def test_generator_word_parse_and_json():
    w = GeneratorWord.parse("c2 k1 c1")
    assert w.letters == (("c", 1), ("k", 0), ("c", 0))
    assert str(w) == "c2 k1 c1"
    assert str(GeneratorWord()) == "1"
    poly = NCPolynomial({w: Fraction(1, 3), GeneratorWord(): 0})
    assert poly.to_json() == [{"word": "c2 k1 c1", "coeff": "1/3"}]


@pytest.mark.parametrize("name, p", [("A2", 2), ("A3-linear", 2), ("A3-bipartite", 3)])
def test_relation_suite_passes(name, p):
    groups = ("6.1", "6.3", "7.4", "7.5", "4.2", "5.1", "7.3")
    report = pbw.verify_relation_suite(generic(name), primes=(p,), groups=groups, lemma42_primes=(p,), max_m=2)
    assert report
    failing = [(e["identity"], e["pair"], e["prime"]) for e in report if e["status"] != "pass"]
    assert not failing
    assert {e["group"] for e in report} == set(groups)


def test_relation_suite_commuting_pair_in_bipartite_a3():
    report = pbw.verify_relation_suite(generic("A3-bipartite"), primes=(3,), groups=("6.1",))
    commute = [e for e in report if e["identity"].startswith("6.1(1)")]
    assert {tuple(e["pair"]) for e in commute} == {(1, 3)}
    assert all(e["status"] == "pass" for e in commute)


def test_relation_suite_reports_injected_fault():
    q = preset("A2")
    gh = hl.GenericHall(q, primes=(3, 5, 7, 11, 13, 17, 19))
    c1, c2 = cy.c_projective(q, 0), cy.c_projective(q, 1)
    gh.ctx(2).faults[(c2, c2, cy.c_projective(q, 1, 2))] = 5
    report = pbw.verify_relation_suite(gh, primes=(2,), groups=("6.1",))
    failing = {e["identity"] for e in report if e["status"] == "fail" and e["prime"] == 2}
    assert "6.2-line1" in failing
    assert all(e["status"] == "pass" for e in report if e["prime"] is None)


def test_report_entry_shape():
    report = pbw.verify_relation_suite(generic("A2"), primes=(2,), groups=("6.1",))
    e = report[0]
    assert set(e) == {"identity", "group", "pair", "prime", "status", "lhs", "rhs"}
    assert e["lhs"]["domain"] in ("rational", "intpoly", "laurent")


def test_serre_rank_certificate():
    gh = generic("A2")
    for second in (False, True):
        basis, rows = pbw.serre_coefficient_matrix(gh, 0, 1, second)
        assert len(basis) == 3
        cols = pbw.serre_rank_certificate(rows)
        assert cols is not None
        sub = [[rows[r][c] for c in cols] for r in range(3)]
        assert not pbw.poly_det3(sub).is_zero()
    x = IntPoly.x()
    assert pbw.serre_rank_certificate([[x, x, x], [x, x, x], [IntPoly.const(1)] * 3]) is None
