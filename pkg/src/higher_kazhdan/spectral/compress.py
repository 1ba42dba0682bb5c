"""Restriction of left convolution operators to finite Cayley balls."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from ..group_ring import RingMatrix
from ..groups import ball


@dataclass(frozen=True)
class CompressedOperator:
    """``P A P`` on ``l2(ball)^k`` for a matrix ``A`` over the group ring.

    Basis vector ``(h, i)`` sits at index ``i * len(ball) + position(h)``.
    The entry at row ``(h, i)``, column ``(g, j)`` is ``A_ij(h g^{-1})``.
    """

    ball: tuple
    copies: int
    matrix: sp.csr_matrix
    source: RingMatrix
    radius: int

    @property
    def dim(self) -> int:
        return self.copies * len(self.ball)

    def index(self, h, i: int) -> int:
        return i * len(self.ball) + self.positions[h]

    @property
    def positions(self) -> dict:
        pos = self.__dict__.get("_positions")
        if pos is None:
            pos = {g: n for n, g in enumerate(self.ball)}
            object.__setattr__(self, "_positions", pos)
        return pos

    def exact_entries(self) -> dict[tuple[int, int], Fraction]:
        return _entries(self.source, self.ball, self.positions)

    def basis_vector(self, h, i: int) -> np.ndarray:
        v = np.zeros(self.dim)
        v[self.index(h, i)] = 1.0
        return v


def _entries(A: RingMatrix, elements, pos) -> dict:
    spec, n = A.spec, len(elements)
    mul = spec.mul
    out: dict = {}
    for i in range(A.rows):
        for j in range(A.cols):
            for u, c in A.entries[i][j].items():
                for g in elements:
                    h = mul(u, g)
                    ph = pos.get(h)
                    if ph is not None:
                        key = (i * n + ph, j * n + pos[g])
                        out[key] = out.get(key, 0) + c
    return {k: Fraction(v) for k, v in out.items() if v}


def compress(A: RingMatrix, radius: int) -> CompressedOperator:
    """Compress a square matrix over the group ring to the ball of ``radius``."""
    if A.rows != A.cols:
        raise ValueError("only square matrices can be compressed")
    elements = tuple(ball(A.spec, radius))
    pos = {g: n for n, g in enumerate(elements)}
    entries = _entries(A, elements, pos)
    dim = A.rows * len(elements)
    if entries:
        (rows, cols), vals = zip(*entries.keys()), [float(v) for v in entries.values()]
    else:
        rows, cols, vals = (), (), []
    M = sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))
    op = CompressedOperator(elements, A.rows, M, A, radius)
    object.__setattr__(op, "_positions", pos)
    return op
