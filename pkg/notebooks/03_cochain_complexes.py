"""
Cochain complexes and Laplacians
================================

The periodic resolution of Z_m * Z_n, the rose of F_k, and tensor
products for direct products.  Coboundaries act on column vectors.
"""

from higher_kazhdan.complexes import (
    free_group_complex,
    free_product_complex,
    product_laplacian_blocks,
    tensor_complex,
)
from higher_kazhdan.spectral import invert_generators, closed_form_laplacian

# %% the PSL(2,Z) Laplacians
c = free_product_complex(2, 3)
for i in c.laplacian_degrees():
    D = c.laplacian(i)
    print(f"Delta_{i}:")
    for row in D.entries:
        print("   ", " | ".join(x.to_string() for x in row))
print("chain law:", c.chain_law_holds())

# %% the closed form with generators inverted is the same matrix
for m, n in [(2, 3), (3, 4), (5, 5)]:
    ok = free_product_complex(m, n).laplacian(1) == invert_generators(closed_form_laplacian(m, n))
    print(f"Z{m}*Z{n}: closed form matches:", ok)

# %% tensor complexes; ranks add as sums of products
c1, c2 = free_group_complex(2), free_group_complex(2)
T = tensor_complex(c1, c2, 2)
print("F2 x F2 ranks", T.ranks, "chain law", T.chain_law_holds())
print("Delta_1 equals the block form:", T.laplacian(1) == product_laplacian_blocks(c1, c2, 1))
