"""Cochain complexes over group rings and their combinatorial Laplacians.

Coboundaries act on column vectors: ``d_i`` maps degree ``i`` to degree
``i + 1`` and is stored as a ``k_{i+1} x k_i`` :class:`RingMatrix`.  The
Laplacian in degree ``i`` is ``d_i^* d_i + d_{i-1} d_{i-1}^*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .group_ring import RingElement, RingMatrix, block_matrix, tensor_matrix
from .groups import (
    DirectProduct,
    FiniteCyclic,
    FreeGroup,
    FreeProduct,
    GroupSpec,
    direct_product,
)


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class CochainComplex:
    """Finite stretch ``C^0 -> C^1 -> ... -> C^N`` of free modules over ``Q[G]``.

    ``truncated`` marks a complex cut off from a longer resolution, in which
    case the top-degree Laplacian is not available.
    """

    spec: GroupSpec
    ranks: tuple[int, ...]
    coboundaries: tuple[RingMatrix, ...]
    truncated: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "coboundaries", tuple(self.coboundaries))
        if len(self.coboundaries) != len(self.ranks) - 1:
            raise ComplexError("need exactly one coboundary between consecutive degrees")
        for i, d in enumerate(self.coboundaries):
            if d.spec != self.spec:
                raise ComplexError(f"d_{i} is over {d.spec}, complex is over {self.spec}")
            if d.shape != (self.ranks[i + 1], self.ranks[i]):
                raise ComplexError(f"d_{i} has shape {d.shape}, expected "
                                   f"{(self.ranks[i + 1], self.ranks[i])}")

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def d(self, i: int) -> RingMatrix | None:
        """``d_i``, or ``None`` where it is a zero map to or from a zero module."""
        if 0 <= i < len(self.coboundaries):
            return self.coboundaries[i]
        return None

    def chain_law_holds(self) -> bool:
        return all((b @ a) == RingMatrix.zeros(self.spec, b.rows, a.cols)
                   for a, b in zip(self.coboundaries, self.coboundaries[1:]))

    def laplacian(self, i: int) -> RingMatrix:
        return laplacian(self, i)

    def laplacian_degrees(self) -> range:
        return range(self.top_degree if self.truncated else self.top_degree + 1)


def laplacian(c: CochainComplex, i: int) -> RingMatrix:
    """``Delta_i = d_i^* d_i + d_{i-1} d_{i-1}^*``."""
    if i not in c.laplacian_degrees():
        raise ComplexError(f"degree {i} Laplacian unavailable (degrees {list(c.laplacian_degrees())})")
    out = RingMatrix.zeros(c.spec, c.ranks[i], c.ranks[i])
    up, down = c.d(i), c.d(i - 1)
    if up is not None:
        out = out + up.star() @ up
    if down is not None:
        out = out + down @ down.star()
    return out


def _norm(spec: FreeProduct, factor: int) -> RingElement:
    return RingElement(spec, {spec.syllable(factor, k): 1 for k in range(spec.orders[factor])})


def _one_minus(spec, g) -> RingElement:
    return RingElement.one(spec) - RingElement.delta(spec, g)


def free_product_complex(m: int, n: int, max_degree: int = 2) -> CochainComplex:
    """Cochains of the periodic resolution of ``Z_m * Z_n``.

    Ranks ``(1, 2, 2, ...)`` with ``d_0 = [1-s; 1-t]`` and then alternately
    ``diag(N_s, N_t)`` and ``diag(1-s, 1-t)``, ``N`` being the norm elements.
    """
    if m < 2 or n < 2:
        raise ComplexError("factor orders must be at least 2")
    if max_degree < 1:
        raise ComplexError("max_degree must be at least 1")
    spec = FreeProduct((m, n))
    s, t = spec.syllable(0), spec.syllable(1)
    one_minus = [_one_minus(spec, s), _one_minus(spec, t)]
    norms = [_norm(spec, 0), _norm(spec, 1)]
    ds = [RingMatrix(spec, [[one_minus[0]], [one_minus[1]]])]
    for i in range(1, max_degree):
        ds.append(RingMatrix.diag(spec, norms if i % 2 else one_minus))
    return CochainComplex(spec, (1,) + (2,) * max_degree, tuple(ds), truncated=True,
                          name=f"Z{m}*Z{n}")


def free_group_complex(k: int) -> CochainComplex:
    """Cochains of the rose with ``k`` petals: ``d_0`` is the column ``(1 - a_i)``."""
    if k < 1:
        raise ComplexError("rank must be at least 1")
    spec = FreeGroup(k)
    d0 = RingMatrix(spec, [[_one_minus(spec, spec.letter(i))] for i in range(1, k + 1)])
    return CochainComplex(spec, (1, k), (d0,), truncated=False, name=f"F{k}")


def finite_cyclic_complex(m: int, max_degree: int) -> CochainComplex:
    """Periodic resolution of ``Z_m`` with coboundaries ``1-t, N_t, 1-t, ...``."""
    if max_degree < 1:
        raise ComplexError("max_degree must be at least 1")
    spec = FiniteCyclic(m)
    one_minus = _one_minus(spec, 1)
    norm = RingElement(spec, {k: 1 for k in range(m)})
    ds = [RingMatrix.scalar(norm if i % 2 else one_minus) for i in range(max_degree)]
    return CochainComplex(spec, (1,) * (max_degree + 1), tuple(ds), truncated=True, name=f"Z{m}")


def _block_index(ranks1: Sequence[int], ranks2: Sequence[int], i: int) -> list[tuple[int, int]]:
    """Pairs ``(r, s)`` with ``r + s = i`` and both ranks available, ``r`` ascending."""
    return [(r, i - r) for r in range(i + 1)
            if r < len(ranks1) and 0 <= i - r < len(ranks2)
            and ranks1[r] and ranks2[i - r]]


def tensor_complex(c1: CochainComplex, c2: CochainComplex, max_degree: int) -> CochainComplex:
    """Tensor product complex over ``Q[G1 x G2]``.

    Degree ``i`` is ``(+)_{r+s=i} C1^r (x) C2^s`` (blocks ordered by ``r``)
    with coboundary ``d1_r (x) 1 + (-1)^r 1 (x) d2_s``.
    """
    if max_degree < 0:
        raise ComplexError("max_degree must be nonnegative")
    for c in (c1, c2):
        if c.truncated and max_degree > c.top_degree:
            raise ComplexError(f"degree {max_degree} exceeds the truncated factor {c.name or c.spec}")
    full_top = c1.top_degree + c2.top_degree
    top = min(max_degree, full_top)
    spec = direct_product(c1.spec, c2.spec)
    I1 = [RingMatrix.identity(c1.spec, k) for k in c1.ranks]
    I2 = [RingMatrix.identity(c2.spec, k) for k in c2.ranks]
    blocks = [_block_index(c1.ranks, c2.ranks, i) for i in range(top + 1)]
    ranks = tuple(sum(c1.ranks[r] * c2.ranks[s] for r, s in b) for b in blocks)
    ds = []
    for i in range(top):
        src, dst = blocks[i], blocks[i + 1]
        grid: list[list[RingMatrix | None]] = [[None] * len(src) for _ in dst]
        for bj, (r, s) in enumerate(src):
            for bi, (r2, s2) in enumerate(dst):
                if (r2, s2) == (r + 1, s) and c1.d(r) is not None:
                    grid[bi][bj] = tensor_matrix(c1.d(r), I2[s], spec)
                elif (r2, s2) == (r, s + 1) and c2.d(s) is not None:
                    blk = tensor_matrix(I1[r], c2.d(s), spec)
                    grid[bi][bj] = -blk if r % 2 else blk
        ds.append(block_matrix(spec, grid, [c1.ranks[r] * c2.ranks[s] for r, s in dst],
                               [c1.ranks[r] * c2.ranks[s] for r, s in src]))
    truncated = c1.truncated or c2.truncated or top < full_top
    name = f"{c1.name or c1.spec} (x) {c2.name or c2.spec}"
    return CochainComplex(spec, ranks, tuple(ds), truncated=truncated, name=name)


def product_laplacian_blocks(c1: CochainComplex, c2: CochainComplex, i: int) -> RingMatrix:
    """``(+)_{r+s=i} (Delta_r (x) 1 + 1 (x) Delta_s)`` as a block diagonal matrix."""
    spec = direct_product(c1.spec, c2.spec)
    idx = _block_index(c1.ranks, c2.ranks, i)
    diag = []
    for r, s in idx:
        a = tensor_matrix(laplacian(c1, r), RingMatrix.identity(c2.spec, c2.ranks[s]), spec)
        b = tensor_matrix(RingMatrix.identity(c1.spec, c1.ranks[r]), laplacian(c2, s), spec)
        diag.append(a + b)
    sizes = [c1.ranks[r] * c2.ranks[s] for r, s in idx]
    grid = [[diag[a] if a == b else None for b in range(len(idx))] for a in range(len(idx))]
    return block_matrix(spec, grid, sizes, sizes)


def product_complex(n_free: int, finite: GroupSpec | None, max_degree: int) -> CochainComplex:
    """Iterated tensor complex for ``F2 x ... x F2 (x F)`` with ``F`` finite cyclic."""
    parts = [free_group_complex(2) for _ in range(n_free)]
    if finite is not None:
        if not isinstance(finite, FiniteCyclic):
            raise ComplexError("complexes are only built for finite cyclic factors")
        parts.append(finite_cyclic_complex(finite.order, max_degree + 1))
    if not parts:
        raise ComplexError("empty product")
    out = parts[0]
    for c in parts[1:]:
        out = tensor_complex(out, c, max_degree + 1)
    return out


def complex_for(spec: GroupSpec, degree: int) -> CochainComplex:
    """A complex over ``spec`` whose Laplacian in ``degree`` is available."""
    if isinstance(spec, FreeProduct) and len(spec.orders) == 2:
        return free_product_complex(*spec.orders, max_degree=max(2, degree + 1))
    if isinstance(spec, FreeGroup):
        return free_group_complex(spec.rank)
    if isinstance(spec, FiniteCyclic):
        return finite_cyclic_complex(spec.order, degree + 1)
    if isinstance(spec, DirectProduct):
        *free, last = spec.factors
        if all(f == FreeGroup(2) for f in free):
            if last == FreeGroup(2):
                return product_complex(len(spec.factors), None, degree)
            if isinstance(last, FiniteCyclic):
                return product_complex(len(free), last, degree)
    raise ComplexError(f"no complex available for {spec}")
