"""Bottom of the spectrum of a compressed Laplacian.

A diagnostic only: truncating to a ball creates boundary modes with
eigenvalues near zero that the full operator does not have, so small
eigenvalues here certify nothing about a spectral gap.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse.linalg import eigsh

from ..group_ring import RingMatrix
from .compress import compress

DENSE_LIMIT = 2000


def spectral_gap_probe(D: RingMatrix, radius: int, count: int = 6) -> list[float]:
    """The ``count`` smallest eigenvalues of ``compress(D, radius)``, ascending."""
    op = compress(D, radius)
    count = min(count, op.dim)
    if count <= 0:
        return []
    if op.dim <= DENSE_LIMIT or count >= op.dim - 1:
        vals = np.linalg.eigvalsh(op.matrix.toarray())[:count]
    else:
        vals = np.sort(eigsh(op.matrix, k=count, which="SA", return_eigenvectors=False))
    return [float(v) for v in vals]
