import json
from itertools import product

import pytest
from hypothesis import given, strategies as st

from higher_kazhdan.groups import (
    DirectProduct,
    FiniteCyclic,
    FiniteTable,
    FreeGroup,
    FreeProduct,
    GroupError,
    ball,
    conjugacy_intersection,
    cyclic_reduce,
    cyclic_subgroup,
    inverse,
    is_conjugate,
    multiply,
    parse_group,
    word_length,
)

from strategies import free_group_elements, free_product_elements, free_product_words, reduce_word

PSL = FreeProduct((2, 3))
F2 = FreeGroup(2)

S3_LABELS = ["1", "r", "rr", "f", "fr", "frr"]


def s3_table():
    """S3 as permutations of {0, 1, 2}: r rotates, f reflects."""
    def perm(a, b):
        p = [(i + b) % 3 for i in range(3)]
        return tuple((-i) % 3 for i in p) if a else tuple(p)

    perms = [perm(a, b) for a in range(2) for b in range(3)]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    return FiniteTable(tuple(S3_LABELS), tuple(map(tuple, table)), 0)


class TestParsing:
    def test_group_specs(self):
        assert parse_group("Z2*Z3") == PSL
        assert parse_group("F2") == F2
        assert parse_group("Z4") == FiniteCyclic(4)
        g = parse_group("F2xF2xZ2")
        assert isinstance(g, DirectProduct) and len(g.factors) == 3

    def test_x_binds_looser(self):
        g = parse_group("Z2*Z3xZ4")
        assert g == DirectProduct((PSL, FiniteCyclic(4)))

    @pytest.mark.parametrize("bad", ["", "Z2*", "*Z3", "Z2Z3", "Q8", "F2*Z3", "Z1", "F0"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_group(bad)

    def test_table_from_file(self, tmp_path):
        t = s3_table()
        path = tmp_path / "s3.json"
        path.write_text(json.dumps(t.to_json()))
        assert parse_group(f"[{path}]") == t

    def test_words_roundtrip(self):
        for w in ["e", "s", "t", "tt", "st", "sts", "tstt"]:
            assert PSL.format(PSL.parse(w)) == w
        for w in ["e", "a", "B", "aB", "abAB"]:
            assert F2.format(F2.parse(w)) == w
        assert PSL.parse("ttt") == PSL.identity()
        assert PSL.parse("ss") == ()
        assert F2.parse("aA") == ()

    def test_bad_words(self):
        with pytest.raises(GroupError):
            PSL.parse("a")
        with pytest.raises(GroupError):
            F2.parse("s")


class TestNormalForms:
    def test_examples(self):
        s, t = PSL.parse("s"), PSL.parse("t")
        assert multiply(PSL, s, s) == ()
        assert multiply(PSL, t, multiply(PSL, t, t)) == ()
        assert PSL.format(multiply(PSL, PSL.parse("st"), PSL.parse("ts"))) == "stts"
        assert PSL.format(multiply(PSL, PSL.parse("st"), PSL.parse("tts"))) == "e"
        assert inverse(PSL, PSL.parse("st")) == PSL.parse("tts")

    def test_membership_enforced(self):
        with pytest.raises(GroupError):
            multiply(PSL, ((0, 1), (0, 1)), ())
        with pytest.raises(GroupError):
            multiply(F2, (1, -1), ())

    @given(free_product_words(FreeProduct((2, 3, 4))))
    def test_reduction_yields_normal_form(self, w):
        spec = FreeProduct((2, 3, 4))
        x = reduce_word(spec, w)
        assert spec.contains(x)

    @given(free_product_words(PSL), free_product_words(PSL), free_product_words(PSL))
    def test_confluence_associativity(self, a, b, c):
        x, y, z = (reduce_word(PSL, w) for w in (a, b, c))
        assert PSL.mul(PSL.mul(x, y), z) == PSL.mul(x, PSL.mul(y, z))
        # reducing the concatenated word in any split gives the same element
        assert reduce_word(PSL, a + b + c) == PSL.mul(x, PSL.mul(y, z))

    @given(free_product_elements(PSL))
    def test_inverse(self, x):
        assert PSL.mul(x, PSL.inv(x)) == PSL.identity() == PSL.mul(PSL.inv(x), x)

    @given(free_group_elements(F2), free_group_elements(F2), free_group_elements(F2))
    def test_free_group_axioms(self, x, y, z):
        assert F2.mul(F2.mul(x, y), z) == F2.mul(x, F2.mul(y, z))
        assert F2.mul(x, F2.inv(x)) == ()
        assert F2.contains(F2.mul(x, y))

    def test_table_axioms_checked(self):
        with pytest.raises(ValueError):
            FiniteTable(("1", "x"), ((0, 1), (1, 1)), 0)
        with pytest.raises(ValueError):
            FiniteTable(tuple(str(i) for i in range(25)),
                        tuple(tuple((i + j) % 25 for j in range(25)) for i in range(25)), 0)

    def test_table_group(self):
        S3 = s3_table()
        assert len(S3.elements()) == 6
        for a, b, c in product(S3.elements(), repeat=3):
            assert S3.mul(S3.mul(a, b), c) == S3.mul(a, S3.mul(b, c))
        assert FiniteTable.from_json(S3.to_json()) == S3
        assert len(FiniteTable.cyclic(5).elements()) == 5

    def test_direct_product(self):
        G = parse_group("F2xZ3")
        x = G.parse("ab|t")
        assert G.format(G.mul(x, G.inv(x))) == "e|e"
        assert G.format(G.mul(x, x)) == "abab|tt"


class TestConjugacy:
    def test_examples(self):
        P = lambda w: PSL.parse(w)
        assert PSL.format(cyclic_reduce(PSL, P("tst"))) == "tts"
        assert PSL.format(cyclic_reduce(PSL, P("t"))) == "t"
        assert is_conjugate(PSL, P("st"), P("ts"))
        assert not is_conjugate(PSL, P("t"), P("tt"))
        assert not is_conjugate(PSL, P("st"), P("stt"))
        assert is_conjugate(PSL, P("s"), P("tstt"))
        assert is_conjugate(F2, F2.parse("ab"), F2.parse("ba"))
        assert not is_conjugate(F2, F2.parse("ab"), F2.parse("aB"))

    def test_intersection(self):
        got = conjugacy_intersection(PSL, PSL.parse("st"), ball(PSL, 2))
        assert {PSL.format(h) for h in got} == {"st", "ts"}

    def test_cyclic_reduce_rejects(self):
        with pytest.raises(GroupError):
            cyclic_reduce(FiniteCyclic(3), 1)

    @given(free_product_elements(PSL, 5), free_product_elements(PSL, 3))
    def test_conjugates_are_conjugate(self, x, w):
        y = PSL.mul(PSL.mul(w, x), PSL.inv(w))
        assert is_conjugate(PSL, x, y)
        assert PSL.class_key(x) == PSL.class_key(y)

    def test_against_brute_force(self):
        # in a ball, conjugacy by short conjugators agrees with the decision procedure
        B = ball(PSL, 4)
        W = ball(PSL, 4)
        for x in ball(PSL, 3):
            conj = {PSL.mul(PSL.mul(w, x), PSL.inv(w)) for w in W}
            for y in B:
                if y in conj:
                    assert is_conjugate(PSL, x, y)
            for y in ball(PSL, 2):
                if is_conjugate(PSL, x, y):
                    assert y in conj

    @given(free_group_elements(F2, 5), free_group_elements(F2, 3))
    def test_free_group_conjugates(self, x, w):
        y = F2.mul(F2.mul(w, x), F2.inv(w))
        assert is_conjugate(F2, x, y)

    def test_table_conjugacy(self):
        S3 = s3_table()
        r, rr, f = (S3.parse(x) for x in ("r", "rr", "f"))
        assert is_conjugate(S3, r, rr)
        assert not is_conjugate(S3, r, f)
        assert S3.class_key(r) == S3.class_key(rr)


class TestBalls:
    def test_sizes(self):
        assert [len(ball(F2, r)) for r in range(4)] == [1, 5, 17, 53]
        assert [len(ball(PSL, r)) for r in range(4)] == [1, 4, 8, 14]
        assert ball(FiniteCyclic(3), 5) == [0, 1, 2]

    def test_order_deterministic(self):
        b = ball(PSL, 2)
        assert [PSL.format(x) for x in b] == ["e", "s", "t", "tt", "st", "stt", "ts", "tts"]
        assert ball(PSL, 5) == ball(PSL, 5)

    @given(st.integers(0, 4))
    def test_monotone_and_layered(self, r):
        small, big = ball(F2, r), ball(F2, r + 1)
        assert big[:len(small)] == small
        lengths = [word_length(F2, x) for x in big]
        assert lengths == sorted(lengths) and max(lengths) <= r + 1

    def test_negative_radius(self):
        with pytest.raises(ValueError):
            ball(PSL, -1)

    def test_cyclic_subgroup(self):
        assert len(cyclic_subgroup(PSL, PSL.parse("t"))) == 3
        with pytest.raises(GroupError):
            cyclic_subgroup(PSL, PSL.parse("st"))
