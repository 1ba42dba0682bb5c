import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from higher_kazhdan.group_ring import (
    RingElement,
    RingMatrix,
    SpecMismatch,
    TraceFunctional,
    averaging_projection,
    block_matrix,
    l1_norm,
    mat_mul,
    mat_star,
    tensor,
    tensor_matrix,
    trace,
)
from higher_kazhdan.groups import FiniteCyclic, FreeGroup, FreeProduct, GroupError, parse_group

from helpers import el
from strategies import free_group_elements, free_product_elements, ring_elements

PSL = FreeProduct((2, 3))
F2 = FreeGroup(2)
psl_ring = ring_elements(PSL, free_product_elements(PSL, 4))
f2_ring = ring_elements(F2, free_group_elements(F2, 4))


class TestElements:
    def test_literals(self):
        a = el(PSL, "1 - s")
        assert a[()] == 1 and a[PSL.parse("s")] == -1 and len(a) == 2

    def test_examples(self):
        one_s = el(PSL, "1 - s")
        assert one_s * one_s == el(PSL, "2 - 2 s")
        p = averaging_projection(PSL, [(), PSL.parse("s")])
        assert p * p == p
        assert p.star() == p
        assert el(PSL, "2/3 st").star() == el(PSL, "2/3 tts")

    def test_int_coefficients_stay_int(self):
        a = el(PSL, "1 - s") * el(PSL, "1 - t")
        assert all(type(v) is int for _, v in a.items())

    def test_zero_coefficients_dropped(self):
        a = el(PSL, "1 - s") + el(PSL, "s")
        assert a == RingElement.one(PSL) and len(a) == 1

    def test_spec_mismatch(self):
        with pytest.raises(SpecMismatch):
            RingElement.one(PSL) + RingElement.one(F2)

    def test_not_closed(self):
        with pytest.raises(GroupError):
            averaging_projection(PSL, [(), PSL.parse("t")])

    def test_json_roundtrip(self):
        a = el(PSL, "1 - s + 2/3 st")
        doc = json.loads(json.dumps(a.to_json()))
        assert {"word": "st", "coeff": "2/3"} in doc
        assert RingElement.from_json(PSL, doc) == a

    @given(psl_ring, psl_ring, psl_ring)
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a * RingElement.one(PSL) == a == RingElement.one(PSL) * a

    @given(psl_ring, psl_ring)
    def test_star_antihomomorphism(self, a, b):
        assert (a * b).star() == b.star() * a.star()
        assert a.star().star() == a

    @given(f2_ring, f2_ring)
    def test_traciality(self, a, b):
        tau = TraceFunctional.canonical()
        assert tau(a * b) == tau(b * a)
        for g in ["e", "a", "ab", "aB"]:
            t = TraceFunctional.delocalised(F2.parse(g))
            assert t(a * b) == t(b * a)

    @given(psl_ring, psl_ring)
    def test_delocalised_traciality_psl(self, a, b):
        for g in ["s", "t", "st"]:
            t = TraceFunctional.delocalised(PSL.parse(g))
            assert t(a * b) == t(b * a)

    @given(psl_ring, psl_ring)
    def test_l1_submultiplicative(self, a, b):
        assert (a * b).l1() <= a.l1() * b.l1()

    @given(psl_ring)
    def test_json_property(self, a):
        assert RingElement.from_json(PSL, a.to_json()) == a


class TestMatrices:
    def test_psl_d0(self):
        d0 = RingMatrix(PSL, [[el(PSL, "1 - s")], [el(PSL, "1 - t")]])
        assert d0.shape == (2, 1)
        assert (mat_star(d0) @ d0)[0, 0] == el(PSL, "4 - 2 s - t - tt")
        assert l1_norm(d0) == 4

    def test_shape_checks(self):
        A = RingMatrix.identity(PSL, 2)
        with pytest.raises(ValueError):
            A @ RingMatrix.identity(PSL, 3)
        with pytest.raises(ValueError):
            trace(RingMatrix.zeros(PSL, 1, 2))

    def test_trace(self):
        A = RingMatrix.diag(PSL, [el(PSL, "1 - s"), el(PSL, "2 + s")])
        assert trace(A) == 3
        assert trace(A, TraceFunctional.delocalised(PSL.parse("s"))) == 0
        assert trace(RingMatrix.identity(F2, 3)) == 3

    @given(st.lists(psl_ring, min_size=8, max_size=8))
    def test_matrix_star(self, xs):
        A = RingMatrix(PSL, [xs[0:2], xs[2:4]])
        B = RingMatrix(PSL, [xs[4:6], xs[6:8]])
        assert mat_star(mat_mul(A, B)) == mat_mul(mat_star(B), mat_star(A))
        assert trace(A @ B) == trace(B @ A)
        assert l1_norm(A @ B) <= l1_norm(A) * l1_norm(B)

    def test_idempotent_checks(self):
        p = averaging_projection(PSL, [(), PSL.parse("s")])
        P = RingMatrix.diag(PSL, [p, RingElement.one(PSL)])
        assert P.is_idempotent() and P.is_self_adjoint()
        assert not RingMatrix.scalar(el(PSL, "1 - s")).is_idempotent()

    def test_block_matrix(self):
        I = RingMatrix.identity(PSL, 1)
        M = block_matrix(PSL, [[I, None], [None, I.scale(2)]], [1, 1], [1, 1])
        assert M == RingMatrix.diag(PSL, [RingElement.one(PSL), RingElement.one(PSL).scale(2)])

    def test_json_roundtrip(self):
        A = RingMatrix(PSL, [[el(PSL, "1 - s"), el(PSL, "1/2 t")]])
        assert RingMatrix.from_json(PSL, json.loads(A.dumps())) == A

    def test_propagation(self):
        A = RingMatrix(PSL, [[el(PSL, "1 - st")]])
        assert A.propagation() == 2


class TestTensor:
    def test_tensor_elements(self):
        G = parse_group("F2xZ3")
        a = el(F2, "1 - a")
        b = RingElement(FiniteCyclic(3), {0: 1, 1: -1})
        ab = tensor(a, b, G)
        assert ab[G.parse("a|t")] == 1 and len(ab) == 4

    def test_tensor_multiplicative(self):
        G = parse_group("F2xZ3")
        a, a2 = el(F2, "1 - a"), el(F2, "2 + B")
        b, b2 = RingElement(FiniteCyclic(3), {0: 1, 1: -1}), RingElement(FiniteCyclic(3), {2: 3})
        assert tensor(a, b, G) * tensor(a2, b2, G) == tensor(a * a2, b * b2, G)

    def test_tensor_matrix_shape(self):
        G = parse_group("F2xF2")
        A = RingMatrix(F2, [[el(F2, "1 - a")], [el(F2, "1 - b")]])
        B = RingMatrix.identity(F2, 2)
        assert tensor_matrix(A, B, G).shape == (4, 2)
