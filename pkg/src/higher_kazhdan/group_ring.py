"""Exact rational group rings and matrices over them.

Coefficients are Python ``int`` or :class:`fractions.Fraction`; integral
values stay ``int`` so products of integer matrices never touch fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Callable, Iterable, Mapping, Sequence

from .groups import (
    DirectProduct,
    GroupElement,
    GroupError,
    GroupSpec,
    conjugacy_intersection,
    word_length,
)

Scalar = int | Fraction


def as_rational(x: Any) -> Scalar:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact rational."""
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return as_rational(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return as_rational(Fraction(x))
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


def format_rational(x: Scalar) -> str:
    return str(Fraction(x))


class SpecMismatch(GroupError):
    pass


class RingElement:
    """Finitely supported function ``G -> Q`` with convolution product."""

    __slots__ = ("spec", "_c", "_hash")

    def __init__(self, spec: GroupSpec, coeffs: Mapping[GroupElement, Any] | None = None):
        self.spec = spec
        c = {}
        for g, v in (coeffs or {}).items():
            spec.check(g)
            v = as_rational(v)
            if v:
                c[g] = c.get(g, 0) + v
                if not c[g]:
                    del c[g]
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, spec: GroupSpec, c: dict) -> "RingElement":
        out = cls.__new__(cls)
        out.spec, out._c, out._hash = spec, c, None
        return out

    @classmethod
    def zero(cls, spec: GroupSpec) -> "RingElement":
        return cls._raw(spec, {})

    @classmethod
    def one(cls, spec: GroupSpec) -> "RingElement":
        return cls._raw(spec, {spec.identity(): 1})

    @classmethod
    def delta(cls, spec: GroupSpec, g, coeff: Any = 1) -> "RingElement":
        return cls(spec, {g: coeff})

    @classmethod
    def from_words(cls, spec: GroupSpec, terms: Mapping[str, Any]) -> "RingElement":
        out: dict = {}
        for word, v in terms.items():
            g = spec.parse(word)
            out[g] = out.get(g, 0) + as_rational(v)
        return cls(spec, out)

    # -- inspection -----------------------------------------------------------------
    @property
    def coeffs(self) -> Mapping[GroupElement, Scalar]:
        return dict(self._c)

    def support(self) -> set:
        return set(self._c)

    def __getitem__(self, g) -> Scalar:
        return self._c.get(g, 0)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def items(self):
        return self._c.items()

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.spec == other.spec and self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == RingElement.one(self.spec) * other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"RingElement({self.spec}, {self.to_string()})"

    def sorted_items(self) -> list:
        return sorted(self._c.items(),
                      key=lambda kv: (word_length(self.spec, kv[0]), self.spec.sort_key(kv[0])))

    def to_string(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for g, v in self.sorted_items():
            w = self.spec.format(g)
            parts.append(format_rational(v) if w == "e" else f"{format_rational(v)}*{w}")
        return " + ".join(parts)

    # -- arithmetic -------------------------------------------------------------------
    def _same(self, other: "RingElement"):
        if self.spec != other.spec:
            raise SpecMismatch(f"group ring elements over {self.spec} and {other.spec}")

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            self._same(other)
            return other
        return RingElement.one(self.spec).scale(as_rational(other))

    def __add__(self, other):
        other = self._coerce(other)
        c = dict(self._c)
        for g, v in other._c.items():
            w = c.get(g, 0) + v
            if w:
                c[g] = w
            else:
                c.pop(g, None)
        return RingElement._raw(self.spec, c)

    __radd__ = __add__

    def __neg__(self):
        return RingElement._raw(self.spec, {g: -v for g, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, k: Any) -> "RingElement":
        k = as_rational(k)
        if not k:
            return RingElement.zero(self.spec)
        return RingElement._raw(self.spec, {g: as_rational(v * k) for g, v in self._c.items()})

    def __mul__(self, other):
        if not isinstance(other, RingElement):
            return self.scale(other)
        self._same(other)
        mul = self.spec.mul
        out: dict = {}
        get = out.get
        for g, a in self._c.items():
            for h, b in other._c.items():
                k = mul(g, h)
                v = get(k, 0) + a * b
                if v:
                    out[k] = v
                else:
                    del out[k]
        return RingElement._raw(self.spec, {g: as_rational(v) for g, v in out.items()})

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, k):
        return self.scale(Fraction(1) / as_rational(k))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = RingElement.one(self.spec)
        for _ in range(n):
            out = out * self
        return out

    def star(self) -> "RingElement":
        """Involution ``a*(g) = a(g^{-1})`` (rational coefficients, no conjugation)."""
        inv = self.spec.inv
        return RingElement._raw(self.spec, {inv(g): v for g, v in self._c.items()})

    def l1(self) -> Scalar:
        return sum((abs(v) for v in self._c.values()), 0)

    def map_group(self, f: Callable[[GroupElement], GroupElement], target: GroupSpec) -> "RingElement":
        """Push the coefficients forward along a map of groups."""
        out: dict = {}
        for g, v in self._c.items():
            h = f(g)
            out[h] = out.get(h, 0) + v
        return RingElement(target, out)

    # -- serialization ------------------------------------------------------------------
    def to_json(self) -> list:
        return [{"word": self.spec.format(g), "coeff": format_rational(v)}
                for g, v in self.sorted_items()]

    @classmethod
    def from_json(cls, spec: GroupSpec, data: Sequence[Mapping[str, str]]) -> "RingElement":
        out: dict = {}
        for term in data:
            g = spec.parse(term["word"])
            out[g] = out.get(g, 0) + as_rational(term["coeff"])
        return cls(spec, out)


def star(a: RingElement) -> RingElement:
    return a.star()


def convolve(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def averaging_projection(spec: GroupSpec, subgroup: Iterable) -> RingElement:
    """``(1/|H|) sum_{h in H} h`` for a finite subgroup ``H``."""
    H = set(subgroup)
    spec.check(*H)
    if spec.identity() not in H:
        raise GroupError("subgroup must contain the identity")
    for a in H:
        if spec.inv(a) not in H or any(spec.mul(a, b) not in H for b in H):
            raise GroupError("the given elements are not closed under products and inverses")
    w = Fraction(1, len(H))
    return RingElement._raw(spec, {h: w for h in H})


class RingMatrix:
    """Dense matrix of group ring elements over a single group."""

    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: GroupSpec, entries: Sequence[Sequence[Any]]):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("matrices must have at least one row and column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        grid = []
        for r in rows:
            out = []
            for x in r:
                if isinstance(x, RingElement):
                    if x.spec != spec:
                        raise SpecMismatch(f"entry over {x.spec} in a matrix over {spec}")
                else:
                    x = RingElement.one(spec).scale(as_rational(x))
                out.append(x)
            grid.append(tuple(out))
        self.spec = spec
        self.rows, self.cols = len(grid), ncols
        self.entries = tuple(grid)

    @classmethod
    def identity(cls, spec: GroupSpec, n: int) -> "RingMatrix":
        return cls(spec, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, spec: GroupSpec, rows: int, cols: int) -> "RingMatrix":
        return cls(spec, [[0] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, spec: GroupSpec, items: Sequence[Any]) -> "RingMatrix":
        n = len(items)
        return cls(spec, [[items[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, x: RingElement) -> "RingMatrix":
        return cls(x.spec, [[x]])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.spec == other.spec and self.entries == other.entries

    def __hash__(self):
        return hash((self.spec, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(x.to_string() for x in r) for r in self.entries)
        return f"RingMatrix({self.spec}, [{body}])"

    def _check(self, other: "RingMatrix"):
        if self.spec != other.spec:
            raise SpecMismatch(f"matrices over {self.spec} and {other.spec}")

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return RingMatrix(self.spec, [[a + b for a, b in zip(r, s)]
                                      for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return RingMatrix(self.spec, [[-a for a in r] for r in self.entries])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: Any) -> "RingMatrix":
        return RingMatrix(self.spec, [[a.scale(k) for a in r] for r in self.entries])

    def left_mul(self, x: RingElement) -> "RingMatrix":
        return RingMatrix(self.spec, [[x * a for a in r] for r in self.entries])

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = RingElement.zero(self.spec)
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RingMatrix(self.spec, out)

    def star(self) -> "RingMatrix":
        """Conjugate transpose with the involution applied to entries."""
        return RingMatrix(self.spec, [[self.entries[i][j].star() for i in range(self.rows)]
                                      for j in range(self.cols)])

    def is_self_adjoint(self) -> bool:
        return self.rows == self.cols and self.star() == self

    def is_idempotent(self) -> bool:
        return self.rows == self.cols and self @ self == self

    def power(self, n: int) -> "RingMatrix":
        out = RingMatrix.identity(self.spec, self.rows)
        for _ in range(n):
            out = out @ self
        return out

    def map_entries(self, f: Callable[[RingElement], RingElement]) -> "RingMatrix":
        out = [[f(a) for a in r] for r in self.entries]
        return RingMatrix(out[0][0].spec, out)

    def propagation(self) -> int:
        """Largest word length in the support of any entry."""
        lengths = [word_length(self.spec, g) for r in self.entries for a in r for g in a._c]
        return max(lengths, default=0)

    def to_json(self) -> list:
        return [[a.to_json() for a in r] for r in self.entries]

    @classmethod
    def from_json(cls, spec: GroupSpec, data: Sequence[Sequence[Any]]) -> "RingMatrix":
        return cls(spec, [[RingElement.from_json(spec, x) for x in r] for r in data])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def mat_mul(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    return a @ b


def mat_add(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    return a + b


def mat_star(a: RingMatrix) -> RingMatrix:
    return a.star()


def block_matrix(spec: GroupSpec, blocks: Sequence[Sequence[RingMatrix | None]],
                 row_sizes: Sequence[int], col_sizes: Sequence[int]) -> RingMatrix:
    """Assemble a matrix from blocks; ``None`` stands for a zero block."""
    grid = [[RingElement.zero(spec)] * sum(col_sizes) for _ in range(sum(row_sizes))]
    r0 = 0
    for bi, nr in enumerate(row_sizes):
        c0 = 0
        for bj, nc in enumerate(col_sizes):
            blk = blocks[bi][bj]
            if blk is not None:
                if blk.shape != (nr, nc):
                    raise ValueError(f"block ({bi},{bj}) has shape {blk.shape}, expected {(nr, nc)}")
                for i in range(nr):
                    for j in range(nc):
                        grid[r0 + i][c0 + j] = blk.entries[i][j]
            c0 += nc
        r0 += nr
    return RingMatrix(spec, grid)


@dataclass(frozen=True)
class TraceFunctional:
    """The canonical trace (``g is None``) or the delocalised trace at the class of ``g``."""

    kind: str = "canonical"
    g: Any = None

    def __post_init__(self):
        if self.kind not in ("canonical", "delocalised"):
            raise ValueError(f"unknown trace kind {self.kind!r}")
        if (self.kind == "delocalised") == (self.g is None):
            raise ValueError("delocalised traces need a group element, canonical ones do not")

    @classmethod
    def canonical(cls) -> "TraceFunctional":
        return cls()

    @classmethod
    def delocalised(cls, g) -> "TraceFunctional":
        return cls("delocalised", g)

    def __call__(self, a: RingElement) -> Scalar:
        if self.kind == "canonical":
            return a[a.spec.identity()]
        return sum((a[h] for h in conjugacy_intersection(a.spec, self.g, a.support())), 0)


def trace(A: RingMatrix | RingElement, t: TraceFunctional | None = None) -> Scalar:
    """Matrix trace composed with the canonical or a delocalised trace."""
    t = t or TraceFunctional.canonical()
    if isinstance(A, RingElement):
        A = RingMatrix.scalar(A)
    if A.rows != A.cols:
        raise ValueError(f"trace of a non-square {A.shape} matrix")
    if t.kind == "delocalised":
        A.spec.check(t.g)
    return as_rational(sum((t(A.entries[j][j]) for j in range(A.rows)), 0))


def l1_norm(A: RingMatrix | RingElement) -> Scalar:
    """Max of the largest column and row sums of entrywise l1 norms.

    Submultiplicative, and an upper bound for the operator norm in the left
    regular representation.
    """
    if isinstance(A, RingElement):
        return A.l1()
    norms = [[a.l1() for a in r] for r in A.entries]
    col = max(sum(norms[i][j] for i in range(A.rows)) for j in range(A.cols))
    row = max(sum(r) for r in norms)
    return max(col, row)


def tensor(a: RingElement, b: RingElement, target: GroupSpec) -> RingElement:
    """``a (x) b`` inside the group ring of a direct product ``target``.

    The components of the product are the concatenation of the (flattened)
    components of ``a`` and ``b``.
    """
    wa, wb = _wrap(a.spec), _wrap(b.spec)
    out = {}
    for g, u in a.items():
        for h, v in b.items():
            out[wa(g) + wb(h)] = u * v
    return RingElement(target, out)


def _wrap(spec: GroupSpec) -> Callable[[Any], tuple]:
    if isinstance(spec, DirectProduct):
        return lambda g: g
    return lambda g: (g,)


def tensor_matrix(A: RingMatrix, B: RingMatrix, target: GroupSpec) -> RingMatrix:
    """Kronecker product with entries tensored into the direct product ring."""
    out = []
    for i in range(A.rows):
        for k in range(B.rows):
            out.append([tensor(A.entries[i][j], B.entries[k][l], target)
                        for j in range(A.cols) for l in range(B.cols)])
    return RingMatrix(target, out)
