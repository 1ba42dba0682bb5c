"""Higher Kazhdan projections, delocalised l2-Betti numbers and heat traces
for free products of cyclic groups, free groups and their products."""

from .complexes import (
    CochainComplex,
    complex_for,
    finite_cyclic_complex,
    free_group_complex,
    free_product_complex,
    laplacian,
    product_complex,
    tensor_complex,
)
from .group_ring import RingElement, RingMatrix, TraceFunctional, l1_norm, trace
from .groups import (
    DirectProduct,
    FiniteCyclic,
    FiniteTable,
    FreeGroup,
    FreeProduct,
    GroupError,
    ball,
    is_conjugate,
    parse_group,
)
from .kclass import BettiReport, KClassExpr, UnsupportedGroup, betti, betti_report, kclass_for

__version__ = "0.1.0"
