import warnings
from fractions import Fraction

import pytest

from higher_kazhdan.group_ring import TraceFunctional, trace
from higher_kazhdan.groups import FiniteCyclic, FiniteTable, FreeGroup, FreeProduct, parse_group
from higher_kazhdan.kclass import (
    BettiReport,
    UnsupportedGroup,
    betti,
    betti_report,
    kazhdan_class_free_group,
    kazhdan_class_free_product,
    kazhdan_class_product,
    kclass_for,
    known_betti,
)

from test_groups import s3_table

PSL = FreeProduct((2, 3))


def oracle_free_product(m, n, g):
    """Closed form by counting: [1] gives 1 at e, p spreads 1/m over <s>, q 1/n over <t>."""
    if g == ():
        return 1 - Fraction(1, m) - Fraction(1, n)
    if len(g) == 1:
        f = g[0][0]
        return -Fraction(1, (m, n)[f])
    return Fraction(0)


def test_psl_table():
    expr = kazhdan_class_free_product(2, 3)
    got = {w: betti(expr, PSL.parse(w)) for w in ["e", "s", "t", "tt", "st", "sts", "tst"]}
    assert got == {"e": Fraction(1, 6), "s": Fraction(-1, 2), "t": Fraction(-1, 3),
                   "tt": Fraction(-1, 3), "st": 0, "sts": Fraction(-1, 3), "tst": 0}


@pytest.mark.parametrize("m", range(2, 7))
@pytest.mark.parametrize("n", range(3, 7))
def test_free_product_grid(m, n):
    spec = FreeProduct((m, n))
    expr = kazhdan_class_free_product(m, n)
    for w in ["e", "s", "t", "st", "tst"]:
        g = spec.parse(w)
        assert betti(expr, g) == oracle_free_product(m, n, spec.cyclic_reduce(g))


def test_free_product_rejects_amenable():
    with pytest.raises(UnsupportedGroup):
        kazhdan_class_free_product(2, 2)


def test_free_group():
    assert betti(kazhdan_class_free_group(2), FreeGroup(2).identity()) == 1
    assert betti(kazhdan_class_free_group(3), FreeGroup(3).identity()) == 2
    assert betti(kazhdan_class_free_group(3), FreeGroup(3).parse("a")) == 0
    with pytest.warns(UserWarning):
        expr = kazhdan_class_free_group(1)
    assert betti(expr, ()) == 0


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("order", [2, 3, 4])
def test_product_class(n, order):
    F = FiniteCyclic(order)
    expr = kazhdan_class_product(n, F)
    (c, P), = expr.terms
    assert P.is_idempotent() and P.is_self_adjoint()
    assert expr.pair(TraceFunctional.canonical()) == Fraction(1, order)
    spec = expr.spec
    for f in F.elements():
        g = f if n == 0 else tuple([()] * n) + (f,)
        assert betti(expr, g) == Fraction(1, order)


def test_product_class_table_group():
    S3 = s3_table()
    expr = kazhdan_class_product(1, S3)
    spec = expr.spec
    assert trace(expr.terms[0][1]) == Fraction(1, 6)
    # class of r has two elements, class of f three
    assert betti(expr, ((), S3.parse("r"))) == Fraction(2, 6)
    assert betti(expr, ((), S3.parse("f"))) == Fraction(3, 6)


def test_product_pairs_with_free_part_vanish():
    expr = kazhdan_class_product(1, FiniteCyclic(2))
    assert betti(expr, (FreeGroup(2).parse("a"), 0)) == 0


def test_reports():
    r = betti_report(PSL, 1, [PSL.parse(w) for w in ["e", "s", "t", "tt", "st"]])
    assert [row["value"] for row in r.rows()] == ["1/6", "-1/2", "-1/3", "-1/3", "0"]
    assert BettiReport.from_json(PSL, r.to_json()).entries == r.entries
    lines = r.to_csv().splitlines()
    assert lines[0] == "group,degree,method,class,value"
    assert lines[1] == "Z2*Z3,1,kclass,e,1/6"


@pytest.mark.parametrize("degree", [0, 2, 3])
def test_vanishing_degrees(degree):
    r = betti_report(PSL, degree, [PSL.parse(w) for w in ["e", "s", "t"]])
    assert all(v == 0 for _, v in r.entries)


def test_kclass_for_products():
    G = parse_group("F2xF2xZ2")
    expr, _ = kclass_for(G, 2)
    assert betti(expr, G.identity()) == Fraction(1, 2)
    assert kclass_for(G, 1)[0] is None
    G = parse_group("F2xF2")
    expr, _ = kclass_for(G, 2)
    assert betti(expr, G.identity()) == 1


def test_unsupported():
    with pytest.raises(UnsupportedGroup):
        kclass_for(FreeProduct((2, 3, 4)), 1)
    assert known_betti(FreeProduct((2, 2)), 1, ()) is None


def test_symmetry_under_inverse():
    expr = kazhdan_class_free_product(3, 5)
    spec = expr.spec
    for w in ["s", "ss", "t", "tttt", "st", "sstt"]:
        g = spec.parse(w)
        assert betti(expr, g) == betti(expr, spec.inv(g))


def test_finite_group_degree_zero():
    r = betti_report(FiniteCyclic(4), 0, [0, 1])
    assert [v for _, v in r.entries] == [Fraction(1, 4)] * 2
