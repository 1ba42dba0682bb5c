"""K-class representatives of higher Kazhdan projections and their trace pairings."""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .group_ring import (
    RingElement,
    RingMatrix,
    Scalar,
    TraceFunctional,
    averaging_projection,
    format_rational,
    trace,
)
from .groups import (
    DirectProduct,
    FiniteCyclic,
    FiniteTable,
    FreeGroup,
    FreeProduct,
    GroupSpec,
    direct_product,
)


class UnsupportedGroup(ValueError):
    """No K-class representative is known for this (group, degree) pair."""


@dataclass(frozen=True)
class KClassExpr:
    """Formal integer combination ``sum c_i [P_i]`` of projections over ``Q[G]``."""

    spec: GroupSpec
    terms: tuple[tuple[int, RingMatrix], ...]
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for c, P in self.terms:
            if not isinstance(c, int):
                raise TypeError("K-class coefficients are integers")
            if P.spec != self.spec:
                raise ValueError(f"representative over {P.spec}, expression over {self.spec}")
            if not (P.is_idempotent() and P.is_self_adjoint()):
                raise ValueError("representatives must be self-adjoint idempotents")

    def pair(self, functional: TraceFunctional) -> Fraction:
        return Fraction(sum((c * trace(P, functional) for c, P in self.terms), 0))

    def describe(self) -> str:
        parts = []
        for c, P in self.terms:
            body = P.entries[0][0].to_string() if P.shape == (1, 1) else f"{P.rows}x{P.cols} matrix"
            parts.append(f"{c:+d}[{body}]")
        return " ".join(parts) if parts else "0"


def _point(spec: GroupSpec) -> RingMatrix:
    return RingMatrix.identity(spec, 1)


def kazhdan_class_free_product(m: int, n: int) -> KClassExpr:
    """``[p_1] = [1] - [p] - [q]`` for ``Z_m * Z_n``."""
    if m < 2 or n < 2:
        raise UnsupportedGroup("factor orders must be at least 2")
    if (m, n) == (2, 2):
        raise UnsupportedGroup("Z2*Z2 is amenable: Delta_1 has no spectral gap")
    spec = FreeProduct((m, n))
    p = averaging_projection(spec, [spec.syllable(0, k) for k in range(m)])
    q = averaging_projection(spec, [spec.syllable(1, k) for k in range(n)])
    return KClassExpr(spec, ((1, _point(spec)), (-1, RingMatrix.scalar(p)),
                             (-1, RingMatrix.scalar(q))), degree=1)


def kazhdan_class_free_group(k: int) -> KClassExpr:
    """``[p_1] = (k - 1)[1]`` for the free group of rank ``k``."""
    spec = FreeGroup(k)
    if k == 1:
        warnings.warn("F1 = Z is amenable; p_1 vanishes", stacklevel=2)
        return KClassExpr(spec, (), degree=1)
    return KClassExpr(spec, ((k - 1, _point(spec)),), degree=1)


def kazhdan_class_product(n_free_factors: int, finite: GroupSpec) -> KClassExpr:
    """``[p_n] = [1 (x) ... (x) 1 (x) avg_F]`` for ``F2^n x F``."""
    if n_free_factors < 0:
        raise ValueError("number of free factors must be nonnegative")
    if not (isinstance(finite, (FiniteCyclic, FiniteTable))):
        raise UnsupportedGroup("the last factor must be a finite cyclic or table group")
    spec = direct_product(*([FreeGroup(2)] * n_free_factors), finite)
    w = Fraction(1, len(finite.elements()))
    if n_free_factors == 0:
        rep = RingElement(spec, {f: w for f in finite.elements()})
    else:
        ident = tuple(FreeGroup(2).identity() for _ in range(n_free_factors))
        rep = RingElement(spec, {ident + (f,): w for f in finite.elements()})
    return KClassExpr(spec, ((1, RingMatrix.scalar(rep)),), degree=n_free_factors)


def betti(expr: KClassExpr, g: Any) -> Fraction:
    """Delocalised l2-Betti number ``tau_<g>([p_n])``."""
    expr.spec.check(g)
    return expr.pair(TraceFunctional.delocalised(g))


# -- reports ----------------------------------------------------------------------------

@dataclass
class BettiReport:
    spec: GroupSpec
    degree: int
    entries: list[tuple[Any, Fraction]]
    method: str = "kclass"
    notes: list[str] = field(default_factory=list)

    def rows(self) -> list[dict[str, str]]:
        return [{"class": self.spec.format(g), "value": format_rational(v)} for g, v in self.entries]

    def to_json(self) -> dict:
        return {"group": str(self.spec), "degree": self.degree, "method": self.method,
                "entries": self.rows(), "notes": list(self.notes)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["group", "degree", "method", "class", "value"])
        for row in self.rows():
            w.writerow([str(self.spec), self.degree, self.method, row["class"], row["value"]])
        return buf.getvalue()

    @classmethod
    def from_json(cls, spec: GroupSpec, doc: dict) -> "BettiReport":
        entries = [(spec.parse(e["class"]), Fraction(e["value"])) for e in doc["entries"]]
        return cls(spec, int(doc["degree"]), entries, doc.get("method", "kclass"),
                   list(doc.get("notes", [])))


def kclass_for(spec: GroupSpec, degree: int) -> tuple[KClassExpr | None, str]:
    """The K-class expression for ``p_degree``, or ``None`` with a note when it vanishes."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if isinstance(spec, FreeProduct):
        if len(spec.orders) != 2:
            raise UnsupportedGroup("only free products of two cyclic groups are covered")
        m, n = spec.orders
        if (m, n) == (2, 2):
            raise UnsupportedGroup("Z2*Z2 is amenable and excluded")
        if degree == 1:
            return kazhdan_class_free_product(m, n), "[p_1] = [1] - [p] - [q]"
        return None, f"p_{degree} = 0: virtually free groups only have p_1 nonzero"
    if isinstance(spec, FreeGroup):
        if degree == 1:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                return kazhdan_class_free_group(spec.rank), f"[p_1] = {spec.rank - 1}[1]"
        return None, f"p_{degree} = 0 for a free group in degree {degree}"
    if isinstance(spec, (FiniteCyclic, FiniteTable)):
        if degree == 0:
            return kazhdan_class_product(0, spec), "[p_0] = [average over F]"
        return None, f"p_{degree} = 0: a finite group has no l2-cohomology in positive degree"
    if isinstance(spec, DirectProduct):
        *free, last = spec.factors
        if all(f == FreeGroup(2) for f in free):
            if isinstance(last, (FiniteCyclic, FiniteTable)):
                n = len(free)
                if degree == n:
                    return kazhdan_class_product(n, last), f"[p_{n}] = [1 (x) ... (x) avg_F]"
                return None, f"p_{degree} = 0 for F2^{n} x F unless the degree is {n}"
            if last == FreeGroup(2):
                n = len(spec.factors)
                if degree == n:
                    return KClassExpr(spec, ((1, _point(spec)),), degree=n), f"[p_{n}] = [1]"
                return None, f"p_{degree} = 0 for F2^{n} unless the degree is {n}"
    raise UnsupportedGroup(f"no K-class representative known for {spec} in degree {degree}")


def betti_report(spec: GroupSpec, degree: int, classes: Sequence[Any]) -> BettiReport:
    """Exact delocalised Betti numbers for each class representative in ``classes``."""
    expr, note = kclass_for(spec, degree)
    spec.check(*classes)
    if expr is None:
        entries = [(g, Fraction(0)) for g in classes]
    else:
        entries = [(g, betti(expr, g)) for g in classes]
    return BettiReport(spec, degree, entries, "kclass", [note])


def known_betti(spec: GroupSpec, degree: int, g: Any) -> Scalar | None:
    """Exact value if a K-class is known, else ``None``."""
    try:
        return betti_report(spec, degree, [g]).entries[0][1]
    except UnsupportedGroup:
        return None
