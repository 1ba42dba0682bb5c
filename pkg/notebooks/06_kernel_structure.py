"""
Kernel structure of the first Laplacian
=======================================

The identity Delta = diag(m^2 p, n^2 q) + D* J D, the correctors k with
(1-s)k = 1-p, and a numerical witness a in im(1-p) cap im(1-q) whose
image [ka; -la] lies in the kernel.  The witness lives in the regular
representation of a finite permutation quotient.
"""

from higher_kazhdan.spectral import spectral_gap_probe, verify_decomposition, verify_kernel_structure
from higher_kazhdan.complexes import free_product_complex

# %% all three checks for a grid of (m, n)
for m in range(2, 6):
    for n in range(3, 6):
        r = verify_kernel_structure(m, n)
        print(f"({m},{n}) pass={bool(r)} residual={r.residual:.1e} |Q|={r.quotient_order}")

# %% the two orthogonal decompositions, with subspace dimensions
d = verify_decomposition(3, 4)
print(bool(d), d.dims)

# %% bottom of the compressed spectrum (diagnostic only: boundary modes appear)
print(spectral_gap_probe(free_product_complex(2, 3).laplacian(1), 5, 6))
