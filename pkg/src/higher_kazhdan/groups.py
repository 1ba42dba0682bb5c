"""Group presentations with canonical normal forms.

Supported families are finite cyclic groups, free products of finite cyclic
groups, free groups, finite groups given by a multiplication table, and
direct products of these.  Elements are plain hashable Python values in
normal form, so equality of elements is structural equality:

==================  ====================================================
FiniteCyclic(m)     ``int`` exponent in ``[0, m)``
FreeProduct(ords)   ``tuple`` of ``(factor, exponent)`` syllables
FreeGroup(k)        ``tuple`` of nonzero ints, ``+i``/``-i`` is ``a_i^{+-1}``
FiniteTable         ``int`` index into the label list
DirectProduct       ``tuple`` of factor elements
==================  ====================================================

Words are written with one letter per generator.  Free products use
``s, t, u, ...`` for the factor generators, free groups use ``a, b, c, ...``
with upper case for inverses, finite cyclic groups use ``t`` and table
groups use their labels.  Direct product components are separated by ``|``
and the identity of any group is ``e``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Any, Hashable, Iterable, Sequence

GroupElement = Hashable

FREE_PRODUCT_LETTERS = "stuvwxyz"
FREE_GROUP_LETTERS = "abcdfghijklmnopqr"
CYCLIC_LETTER = "t"
MAX_TABLE_ORDER = 24


class GroupError(ValueError):
    """Raised when an element does not belong to the group it is used with."""


def _parse_power(word: str, pos: int) -> tuple[int, int]:
    """Read an optional ``^k`` suffix starting at ``pos``."""
    if pos < len(word) and word[pos] == "^":
        m = re.match(r"\^(-?\d+)", word[pos:])
        if m is None:
            raise GroupError(f"bad exponent in {word!r}")
        return int(m.group(1)), pos + m.end()
    return 1, pos


class GroupSpec:
    """Base class of the supported group families."""

    def identity(self) -> GroupElement:
        raise NotImplementedError

    def contains(self, a: Any) -> bool:
        raise NotImplementedError

    def mul(self, a, b):
        """Product without membership checks (hot path)."""
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def generators(self) -> list:
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, word: str) -> GroupElement:
        raise NotImplementedError

    def sort_key(self, a):
        return a

    def class_key(self, a):
        """Canonical representative of the conjugacy class of ``a``."""
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return False

    def elements(self) -> list:
        raise GroupError(f"{self} is infinite")

    def check(self, *elements) -> None:
        for a in elements:
            if not self.contains(a):
                raise GroupError(f"{a!r} is not a normal-form element of {self}")


@dataclass(frozen=True)
class FiniteCyclic(GroupSpec):
    order: int

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 2:
            raise ValueError("cyclic group order must be an integer >= 2")

    def __str__(self):
        return f"Z{self.order}"

    def identity(self):
        return 0

    def contains(self, a):
        return type(a) is int and 0 <= a < self.order

    def mul(self, a, b):
        return (a + b) % self.order

    def inv(self, a):
        return -a % self.order

    def generators(self):
        return list(range(1, self.order))

    @property
    def is_finite(self):
        return True

    def elements(self):
        return list(range(self.order))

    def class_key(self, a):
        return a

    def format(self, a):
        return "e" if a == 0 else CYCLIC_LETTER * a

    def parse(self, word):
        word = word.strip()
        if word in ("", "e", "1"):
            return 0
        total, pos = 0, 0
        while pos < len(word):
            if word[pos] != CYCLIC_LETTER:
                raise GroupError(f"unexpected letter {word[pos]!r} in {word!r} for {self}")
            k, pos = _parse_power(word, pos + 1)
            total += k
        return total % self.order


@dataclass(frozen=True)
class FreeProduct(GroupSpec):
    """Free product of finite cyclic groups, one generator per factor."""

    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        if len(self.orders) < 2:
            raise ValueError("a free product needs at least two factors")
        if len(self.orders) > len(FREE_PRODUCT_LETTERS):
            raise ValueError("too many free factors")
        for m in self.orders:
            if not isinstance(m, int) or m < 2:
                raise ValueError("factor orders must be integers >= 2")

    def __str__(self):
        return "*".join(f"Z{m}" for m in self.orders)

    def identity(self):
        return ()

    def contains(self, a):
        if type(a) is not tuple:
            return False
        prev = None
        for syl in a:
            if type(syl) is not tuple or len(syl) != 2:
                return False
            f, k = syl
            if not (type(f) is int and 0 <= f < len(self.orders)):
                return False
            if not (type(k) is int and 0 < k < self.orders[f]):
                return False
            if f == prev:
                return False
            prev = f
        return True

    def mul(self, a, b):
        if not a:
            return b
        if not b:
            return a
        i, j, nb = len(a), 0, len(b)
        while i and j < nb and a[i - 1][0] == b[j][0]:
            f = b[j][0]
            k = (a[i - 1][1] + b[j][1]) % self.orders[f]
            if k:
                return a[: i - 1] + ((f, k),) + b[j + 1:]
            i -= 1
            j += 1
        return a[:i] + b[j:]

    def inv(self, a):
        return tuple((f, self.orders[f] - k) for f, k in reversed(a))

    def generators(self):
        return [((f, k),) for f, m in enumerate(self.orders) for k in range(1, m)]

    def syllable(self, factor: int, power: int = 1):
        k = power % self.orders[factor]
        return ((factor, k),) if k else ()

    def cyclic_reduce(self, a):
        """Conjugate ``a`` until its first and last syllables lie in different factors."""
        while len(a) >= 2 and a[0][0] == a[-1][0]:
            last = (a[-1],)
            a = self.mul(self.mul(last, a), self.inv(last))
        return a

    def class_key(self, a):
        r = self.cyclic_reduce(a)
        if len(r) <= 1:
            return r
        return min(r[i:] + r[:i] for i in range(len(r)))

    def format(self, a):
        if not a:
            return "e"
        return "".join(FREE_PRODUCT_LETTERS[f] * k for f, k in a)

    def parse(self, word):
        word = word.strip()
        if word in ("", "e", "1"):
            return ()
        out, pos = (), 0
        while pos < len(word):
            f = FREE_PRODUCT_LETTERS.find(word[pos])
            if f < 0 or f >= len(self.orders):
                raise GroupError(f"unexpected letter {word[pos]!r} in {word!r} for {self}")
            k, pos = _parse_power(word, pos + 1)
            out = self.mul(out, self.syllable(f, k))
        return out


@dataclass(frozen=True)
class FreeGroup(GroupSpec):
    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValueError("free group rank must be an integer >= 1")
        if self.rank > len(FREE_GROUP_LETTERS):
            raise ValueError("free group rank too large for the word alphabet")

    def __str__(self):
        return f"F{self.rank}"

    def identity(self):
        return ()

    def contains(self, a):
        if type(a) is not tuple:
            return False
        prev = 0
        for x in a:
            if type(x) is not int or x == 0 or abs(x) > self.rank or x == -prev:
                return False
            prev = x
        return True

    def mul(self, a, b):
        if not a:
            return b
        if not b:
            return a
        i, j, nb = len(a), 0, len(b)
        while i and j < nb and a[i - 1] == -b[j]:
            i -= 1
            j += 1
        return a[:i] + b[j:]

    def inv(self, a):
        return tuple(-x for x in reversed(a))

    def generators(self):
        gens = []
        for i in range(1, self.rank + 1):
            gens += [(i,), (-i,)]
        return gens

    def letter(self, i: int, power: int = 1):
        return (i,) * power if power >= 0 else (-i,) * (-power)

    def cyclic_reduce(self, a):
        i, j = 0, len(a)
        while j - i >= 2 and a[i] == -a[j - 1]:
            i += 1
            j -= 1
        return a[i:j]

    def class_key(self, a):
        r = self.cyclic_reduce(a)
        if not r:
            return r
        return min(r[i:] + r[:i] for i in range(len(r)))

    def format(self, a):
        if not a:
            return "e"
        return "".join(
            FREE_GROUP_LETTERS[x - 1] if x > 0 else FREE_GROUP_LETTERS[-x - 1].upper()
            for x in a
        )

    def parse(self, word):
        word = word.strip()
        if word in ("", "e", "1"):
            return ()
        out, pos = (), 0
        while pos < len(word):
            ch = word[pos]
            i = FREE_GROUP_LETTERS.find(ch.lower()) + 1
            if i == 0 or i > self.rank:
                raise GroupError(f"unexpected letter {ch!r} in {word!r} for {self}")
            k, pos = _parse_power(word, pos + 1)
            if ch.isupper():
                k = -k
            out = self.mul(out, self.letter(i, k))
        return out


@dataclass(frozen=True)
class FiniteTable(GroupSpec):
    """Finite group from an explicit multiplication table.

    ``table[i][j]`` is the index of ``labels[i] * labels[j]``.  The group
    axioms are checked on construction.
    """

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity_index: int = 0
    _inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", table)
        n = len(labels)
        if n == 0 or n > MAX_TABLE_ORDER:
            raise ValueError(f"table groups must have between 1 and {MAX_TABLE_ORDER} elements")
        if len(set(labels)) != n or any(lab in ("e", "") or "|" in lab for lab in labels):
            raise ValueError("labels must be distinct, nonempty and not 'e' or contain '|'")
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError("multiplication table must be square of size len(labels)")
        if any(not 0 <= x < n for row in table for x in row):
            raise ValueError("table entries out of range")
        e = self.identity_index
        if not 0 <= e < n:
            raise ValueError("identity index out of range")
        for i in range(n):
            if table[e][i] != i or table[i][e] != i:
                raise ValueError(f"{labels[e]!r} is not a two-sided identity")
        inverse = []
        for i in range(n):
            js = [j for j in range(n) if table[i][j] == e]
            if len(js) != 1 or table[js[0]][i] != e:
                raise ValueError(f"{labels[i]!r} has no two-sided inverse")
            inverse.append(js[0])
        for a, b, c in product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise ValueError("multiplication table is not associative")
        object.__setattr__(self, "_inverse", tuple(inverse))

    @classmethod
    def from_json(cls, doc: dict | str | Path) -> "FiniteTable":
        """Load ``{"labels": [...], "table": [[...]], "identity": i}``."""
        if not isinstance(doc, dict):
            doc = json.loads(Path(doc).read_text())
        return cls(tuple(doc["labels"]), tuple(map(tuple, doc["table"])), int(doc.get("identity", 0)))

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "table": [list(r) for r in self.table],
                "identity": self.identity_index}

    @classmethod
    def cyclic(cls, m: int) -> "FiniteTable":
        labels = ["1"] + [CYCLIC_LETTER * k for k in range(1, m)]
        return cls(tuple(labels), tuple(tuple((i + j) % m for j in range(m)) for i in range(m)))

    def __str__(self):
        return f"Table{len(self.labels)}"

    @property
    def is_finite(self):
        return True

    def elements(self):
        return list(range(len(self.labels)))

    def identity(self):
        return self.identity_index

    def contains(self, a):
        return type(a) is int and 0 <= a < len(self.labels)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inverse[a]

    def generators(self):
        return [i for i in range(len(self.labels)) if i != self.identity_index]

    @cached_property
    def _class_min(self) -> tuple[int, ...]:
        n = len(self.labels)
        return tuple(min(self.table[self.table[w][a]][self._inverse[w]] for w in range(n))
                     for a in range(n))

    def class_key(self, a):
        return self._class_min[a]

    def format(self, a):
        return "e" if a == self.identity_index else self.labels[a]

    def parse(self, word):
        word = word.strip()
        if word in ("e", ""):
            return self.identity_index
        try:
            return self.labels.index(word)
        except ValueError:
            raise GroupError(f"unknown label {word!r} for {self}") from None


@dataclass(frozen=True)
class DirectProduct(GroupSpec):
    factors: tuple[GroupSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 2:
            raise ValueError("a direct product needs at least two factors")
        for f in self.factors:
            if not isinstance(f, GroupSpec) or isinstance(f, DirectProduct):
                raise ValueError("direct product factors must be non-product GroupSpecs")

    def __str__(self):
        return "x".join(str(f) for f in self.factors)

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    def elements(self):
        return list(product(*(f.elements() for f in self.factors)))

    def identity(self):
        return tuple(f.identity() for f in self.factors)

    def contains(self, a):
        return (type(a) is tuple and len(a) == len(self.factors)
                and all(f.contains(x) for f, x in zip(self.factors, a)))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        return tuple(f.inv(x) for f, x in zip(self.factors, a))

    def embed(self, index: int, x):
        out = list(self.identity())
        out[index] = x
        return tuple(out)

    def generators(self):
        return [self.embed(i, g) for i, f in enumerate(self.factors) for g in f.generators()]

    def sort_key(self, a):
        return tuple(f.sort_key(x) for f, x in zip(self.factors, a))

    def class_key(self, a):
        return tuple(f.class_key(x) for f, x in zip(self.factors, a))

    def format(self, a):
        return "|".join(f.format(x) for f, x in zip(self.factors, a))

    def parse(self, word):
        word = word.strip()
        if word in ("e", ""):
            return self.identity()
        parts = word.split("|")
        if len(parts) != len(self.factors):
            raise GroupError(f"{word!r} needs {len(self.factors)} '|'-separated components")
        return tuple(f.parse(p) for f, p in zip(self.factors, parts))


def direct_product(*factors: GroupSpec) -> GroupSpec:
    """Direct product with nested products flattened; one factor is returned as is."""
    flat: list[GroupSpec] = []
    for f in factors:
        flat.extend(f.factors if isinstance(f, DirectProduct) else [f])
    return flat[0] if len(flat) == 1 else DirectProduct(tuple(flat))


_TOKEN = re.compile(r"\s*(\[[^\]]*\]|Z\d+|F\d+|[*x])")


def parse_group(text: str) -> GroupSpec:
    """Parse ``"Z2*Z3"``, ``"F2"``, ``"Z4"``, ``"F2xF2xZ3"`` and ``"[table.json]"`` tokens.

    ``x`` (direct product) binds looser than ``*`` (free product).
    """
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse group spec {text!r} at position {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    factors: list[list[str]] = [[]]
    expect_operand = True
    for tok in tokens:
        if tok in "*x":
            if expect_operand:
                raise ValueError(f"misplaced {tok!r} in {text!r}")
            if tok == "x":
                factors.append([])
            expect_operand = True
        else:
            if not expect_operand:
                raise ValueError(f"missing operator before {tok!r} in {text!r}")
            factors[-1].append(tok)
            expect_operand = False
    if expect_operand:
        raise ValueError(f"incomplete group spec {text!r}")

    def atom(tok: str) -> GroupSpec:
        if tok.startswith("Z"):
            return FiniteCyclic(int(tok[1:]))
        if tok.startswith("F"):
            return FreeGroup(int(tok[1:]))
        return FiniteTable.from_json(Path(tok[1:-1]))

    specs = []
    for group in factors:
        if len(group) == 1:
            specs.append(atom(group[0]))
        elif all(tok.startswith("Z") for tok in group):
            specs.append(FreeProduct(tuple(int(tok[1:]) for tok in group)))
        else:
            raise ValueError("only finite cyclic groups may be combined with '*'")
    return direct_product(*specs)


# -- operations on (spec, element) pairs -------------------------------------------

def identity(spec: GroupSpec) -> GroupElement:
    return spec.identity()


def multiply(spec: GroupSpec, a, b) -> GroupElement:
    spec.check(a, b)
    return spec.mul(a, b)


def inverse(spec: GroupSpec, a) -> GroupElement:
    spec.check(a)
    return spec.inv(a)


def cyclic_reduce(spec: GroupSpec, a) -> GroupElement:
    """Return a cyclically reduced conjugate of ``a`` (free products and free groups)."""
    if not isinstance(spec, (FreeProduct, FreeGroup)):
        raise GroupError(f"cyclic reduction is not defined for {spec}")
    spec.check(a)
    return spec.cyclic_reduce(a)


def _is_rotation(a: tuple, b: tuple) -> bool:
    if len(a) != len(b):
        return False
    return any(a[i:] + a[:i] == b for i in range(len(a))) if a else True


def is_conjugate(spec: GroupSpec, a, b) -> bool:
    spec.check(a, b)
    if isinstance(spec, FreeProduct):
        ra, rb = spec.cyclic_reduce(a), spec.cyclic_reduce(b)
        if len(ra) >= 2 and len(rb) >= 2:
            return _is_rotation(ra, rb)
        # single syllables: the factors are abelian
        return ra == rb
    if isinstance(spec, FreeGroup):
        return _is_rotation(spec.cyclic_reduce(a), spec.cyclic_reduce(b))
    if isinstance(spec, DirectProduct):
        return all(is_conjugate(f, x, y) for f, x, y in zip(spec.factors, a, b))
    if isinstance(spec, FiniteCyclic):
        return a == b
    return any(spec.mul(spec.mul(w, a), spec.inv(w)) == b for w in spec.elements())


def conjugacy_intersection(spec: GroupSpec, g, support: Iterable) -> set:
    """Elements of ``support`` conjugate to ``g``."""
    return {h for h in support if is_conjugate(spec, g, h)}


def ball(spec: GroupSpec, radius: int) -> list:
    """Elements at word distance at most ``radius`` from the identity.

    Ordered by distance, then by normal form.  The generating set takes every
    non-identity power of each cyclic factor generator, letters and inverses
    for free groups, every non-identity element of a table group, and the
    union of embedded factor generators for direct products.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    gens = spec.generators()
    layer = [spec.identity()]
    seen = set(layer)
    out = list(layer)
    for _ in range(radius):
        nxt = set()
        for x in layer:
            for g in gens:
                y = spec.mul(g, x)
                if y not in seen:
                    nxt.add(y)
        if not nxt:
            break
        seen |= nxt
        layer = sorted(nxt, key=spec.sort_key)
        out.extend(layer)
    return out


def word_length(spec: GroupSpec, a) -> int:
    """Word length of ``a`` in the generating set used by :func:`ball`."""
    if isinstance(spec, (FreeProduct, FreeGroup)):
        return len(a)
    if isinstance(spec, DirectProduct):
        return sum(word_length(f, x) for f, x in zip(spec.factors, a))
    return 0 if a == spec.identity() else 1


def parse_element(spec: GroupSpec, word: str) -> GroupElement:
    return spec.parse(word)


def format_element(spec: GroupSpec, a) -> str:
    return spec.format(a)


def cyclic_subgroup(spec: GroupSpec, g) -> list:
    """Powers of a torsion element ``g``, starting with the identity."""
    spec.check(g)
    out, x = [spec.identity()], g
    while x != spec.identity():
        out.append(x)
        x = spec.mul(x, g)
        if len(out) > 10_000:
            raise GroupError("element does not appear to have finite order")
    return out


def sorted_elements(spec: GroupSpec, elements: Sequence) -> list:
    return sorted(elements, key=lambda a: (word_length(spec, a), spec.sort_key(a)))
