import pytest

from higher_kazhdan.complexes import (
    CochainComplex,
    ComplexError,
    complex_for,
    finite_cyclic_complex,
    free_group_complex,
    free_product_complex,
    product_complex,
    product_laplacian_blocks,
    tensor_complex,
)
from higher_kazhdan.group_ring import RingMatrix, l1_norm
from higher_kazhdan.groups import FiniteCyclic, FreeGroup, FreeProduct, parse_group
from higher_kazhdan.spectral import invert_generators, closed_form_laplacian

from helpers import el

PSL = FreeProduct((2, 3))


def test_psl_laplacians_match_printed_matrix():
    c = free_product_complex(2, 3)
    D1 = c.laplacian(1)
    expected = RingMatrix(PSL, [
        [el(PSL, "4"), el(PSL, "1 - s - tt + stt")],
        [el(PSL, "1 - s - t + ts"), el(PSL, "5 + 2 t + 2 tt")],
    ])
    assert D1 == expected
    assert c.laplacian(0) == RingMatrix(PSL, [[el(PSL, "4 - 2 s - t - tt")]])
    assert l1_norm(D1) == 13


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [3, 4, 5])
def test_free_product_structure(m, n):
    c = free_product_complex(m, n, max_degree=4)
    assert c.ranks == (1, 2, 2, 2, 2)
    assert c.chain_law_holds()
    for i in c.laplacian_degrees():
        assert c.laplacian(i).is_self_adjoint()
    assert c.laplacian(1) == invert_generators(closed_form_laplacian(m, n))


def test_truncated_top_degree_unavailable():
    c = free_product_complex(2, 3, max_degree=2)
    assert list(c.laplacian_degrees()) == [0, 1]
    with pytest.raises(ComplexError):
        c.laplacian(2)


def test_free_group():
    c = free_group_complex(2)
    assert c.ranks == (1, 2) and not c.truncated
    F2 = FreeGroup(2)
    assert c.d(0) == RingMatrix(F2, [[el(F2, "1 - a")], [el(F2, "1 - b")]])
    D1 = c.laplacian(1)
    assert D1.is_self_adjoint()
    assert D1[0, 0] == el(F2, "1 - a") * el(F2, "1 - A")


def test_finite_cyclic():
    c = finite_cyclic_complex(3, 4)
    assert c.chain_law_holds()
    assert c.ranks == (1,) * 5


def test_bad_shapes():
    with pytest.raises(ComplexError):
        CochainComplex(PSL, (1, 2), (RingMatrix.identity(PSL, 1),))
    with pytest.raises(ComplexError):
        free_product_complex(1, 3)


@pytest.mark.parametrize("spec,ranks", [
    ("F2xZ3", (1, 3, 3)),
    ("F2xF2", (1, 4, 4)),
    ("F2xF2xZ2", (1, 5, 9)),
])
def test_tensor_ranks(spec, ranks):
    c = complex_for(parse_group(spec), 2)
    assert c.ranks[:3] == ranks
    assert c.chain_law_holds()


def test_tensor_sign_needed_for_chain_law():
    c = tensor_complex(free_group_complex(2), finite_cyclic_complex(3, 3), 3)
    assert c.chain_law_holds()


@pytest.mark.parametrize("i", [0, 1, 2])
def test_product_laplacian_blocks(i):
    c1, c2 = free_group_complex(2), free_group_complex(2)
    t = tensor_complex(c1, c2, 2)
    assert t.laplacian(i) == product_laplacian_blocks(c1, c2, i)
    assert t.laplacian(i).is_self_adjoint()


def test_product_with_finite_factor_blocks():
    c1, c2 = free_group_complex(2), finite_cyclic_complex(2, 3)
    t = tensor_complex(c1, c2, 2)
    for i in t.laplacian_degrees():
        assert t.laplacian(i) == product_laplacian_blocks(c1, c2, i)


def test_product_complex_rejects():
    with pytest.raises(ComplexError):
        product_complex(0, None, 1)
    with pytest.raises(ComplexError):
        complex_for(FreeProduct((2, 3, 4)), 1)
