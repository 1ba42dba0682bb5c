"""Heat-semigroup traces ``tau_<g>(exp(-t Delta))`` by two independent engines.

The exact engine sums the Taylor series in the group ring with a certified
remainder.  The float engine exponentiates a Cayley-ball compression.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from ..group_ring import RingElement, RingMatrix, Scalar, as_rational, format_rational, l1_norm
from .compress import CompressedOperator, compress
from .expm import expm_action

THREADS_ENV = "HIGHER_KAZHDAN_THREADS"
SCAN_TOL = 0.05


class BoundUnavailable(ValueError):
    """The Taylor order is too small for the closed-form remainder bound to be finite."""


def _check_square_self_adjoint(D: RingMatrix) -> None:
    if D.rows != D.cols:
        raise ValueError("heat traces need a square matrix")
    if not D.is_self_adjoint():
        raise ValueError("heat traces need a self-adjoint matrix")


class _ClassTest:
    """Cached membership test for the conjugacy class of ``g``."""

    def __init__(self, spec, g):
        spec.check(g)
        self.spec = spec
        self.identity = g == spec.identity()
        self.key = spec.class_key(g)
        self._memo: dict = {}

    def __call__(self, h) -> bool:
        if self.identity:
            return h == self.spec.identity()
        hit = self._memo.get(h)
        if hit is None:
            hit = self._memo[h] = self.spec.class_key(h) == self.key
        return hit


def _apply(D: RingMatrix, v: list[RingElement]) -> list[RingElement]:
    out = []
    for i in range(D.rows):
        acc = RingElement.zero(D.spec)
        for l in range(D.cols):
            if D.entries[i][l] and v[l]:
                acc = acc + D.entries[i][l] * v[l]
        out.append(acc)
    return out


def heat_moments(D: RingMatrix, g, order: int) -> list[Scalar]:
    """Exact ``tau_<g>(tr Delta^k)`` for ``k = 0..order``.

    For ``g = e`` only columns up to ``ceil(order / 2)`` are formed and
    higher moments come from ``tau(Delta^(a+b)) = sum_j <Delta^a e_j, Delta^b e_j>``,
    which uses self-adjointness.
    """
    _check_square_self_adjoint(D)
    if order < 0:
        raise ValueError("order must be nonnegative")
    spec = D.spec
    member = _ClassTest(spec, g)
    if member.identity:
        depth = (order + 1) // 2
    else:
        depth = order
    moments = [0] * (order + 1)
    for j in range(D.rows):
        col = [RingElement.delta(spec, spec.identity()) if i == j else RingElement.zero(spec)
               for i in range(D.rows)]
        cols = [col]
        for _ in range(depth):
            col = _apply(D, col)
            cols.append(col)
        if member.identity:
            for k in range(order + 1):
                a, b = k // 2, k - k // 2
                moments[k] += sum(sum(x * cols[b][i][h] for h, x in cols[a][i].items())
                                  for i in range(D.rows))
        else:
            for k in range(order + 1):
                moments[k] += sum(x for h, x in cols[k][j].items() if member(h))
    return [as_rational(m) for m in moments]


def remainder_bound(D: RingMatrix, t: Scalar, order: int) -> Fraction:
    """Certified bound on the Taylor tail beyond ``order``.

    ``k (tN)^(K+1) / ((K+1)! (1 - tN/(K+2)))`` with ``N = l1_norm(D)`` and
    ``k`` the matrix size, since the trace adds ``k`` diagonal entries each
    dominated by the l1 norm of the tail.
    """
    x = Fraction(as_rational(t)) * l1_norm(D)
    if x == 0:
        return Fraction(0)
    if order + 2 <= x:
        raise BoundUnavailable(f"order {order} too small for tN = {float(x):.4g}; need K + 2 > tN")
    return D.rows * x ** (order + 1) / (math.factorial(order + 1) * (1 - x / (order + 2)))


def heat_trace_exact(D: RingMatrix, t: Any, g, order: int) -> tuple[Fraction, Fraction]:
    """Rational Taylor partial sum of ``tau_<g>(exp(-tD))`` and its remainder bound."""
    t = as_rational(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    bound = remainder_bound(D, t, order)
    moments = heat_moments(D, g, order)
    return exact_partial_sum(moments, t), bound


def exact_partial_sum(moments: Sequence[Scalar], t: Scalar) -> Fraction:
    value, coeff = Fraction(0), Fraction(1)
    for k, m in enumerate(moments):
        if k:
            coeff = coeff * (-t) / k
        value += coeff * m
    return value


def _class_indices(op: CompressedOperator, g) -> list[int]:
    member = _ClassTest(op.source.spec, g)
    return [n for n, h in enumerate(op.ball) if member(h)]


def heat_columns(op: CompressedOperator, t: float) -> np.ndarray:
    """``exp(-t M)`` applied to the identity basis columns, one per copy."""
    e = op.source.spec.identity()
    V = np.zeros((op.dim, op.copies))
    for j in range(op.copies):
        V[op.index(e, j), j] = 1.0
    return expm_action(op.matrix, V, float(t))


def trace_from_columns(op: CompressedOperator, cols: np.ndarray, g) -> float:
    idx = _class_indices(op, g)
    n = len(op.ball)
    return float(sum(cols[j * n + h, j] for j in range(op.copies) for h in idx))


def heat_trace_numeric(D: RingMatrix, t: float, g, radius: int,
                       op: CompressedOperator | None = None) -> float:
    """``sum_j sum_{h in <g> cap ball} <delta_(h,j), exp(-t P D P) delta_(e,j)>``."""
    _check_square_self_adjoint(D)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if op is None or op.radius != radius or op.source != D:
        op = compress(D, radius)
    return trace_from_columns(op, heat_columns(op, t), g)


# -- scans ------------------------------------------------------------------------------

@dataclass(frozen=True)
class HeatEntry:
    t: float
    radius_or_order: int
    cls: str
    value: float | Fraction
    bound: Fraction | None
    method: str

    def row(self) -> dict:
        exact = self.method == "heat-exact"
        return {
            "t": format_rational(self.t) if exact else repr(float(self.t)),
            "radius_or_order": self.radius_or_order,
            "class": self.cls,
            "value": format_rational(self.value) if exact else repr(float(self.value)),
            "bound": "" if self.bound is None else format_rational(self.bound),
            "method": self.method,
        }


@dataclass
class HeatReport:
    group: str
    degree: int | None
    t_schedule: list
    radius_schedule: list[int]
    entries: list[HeatEntry]
    limits: dict[str, float | None] = field(default_factory=dict)
    exact: dict[str, Fraction | None] = field(default_factory=dict)
    status: str = "converged"
    tol: float = SCAN_TOL
    notes: list[str] = field(default_factory=list)

    COLUMNS = ("t", "radius_or_order", "class", "value", "bound", "method")

    def deviations(self) -> dict[str, float | None]:
        """``limit - exact`` per class where both are known."""
        out = {}
        for k, v in self.limits.items():
            x = self.exact.get(k)
            out[k] = None if v is None or x is None else float(v) - float(x)
        return out

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "degree": self.degree,
            "t_schedule": [str(t) for t in self.t_schedule],
            "radius_schedule": list(self.radius_schedule),
            "tol": self.tol,
            "status": self.status,
            "entries": [e.row() for e in self.entries],
            "limits": {k: (None if v is None else repr(float(v))) for k, v in self.limits.items()},
            "exact": {k: (None if v is None else format_rational(v)) for k, v in self.exact.items()},
            "deviation": {k: (None if v is None else repr(v)) for k, v in self.deviations().items()},
            "notes": list(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=self.COLUMNS, lineterminator="\n")
        w.writeheader()
        for e in self.entries:
            w.writerow(e.row())
        return buf.getvalue()

    @classmethod
    def from_json(cls, doc: dict) -> "HeatReport":
        entries = []
        for r in doc["entries"]:
            exact = r["method"] == "heat-exact"
            num = Fraction if exact else float
            entries.append(HeatEntry(num(r["t"]), int(r["radius_or_order"]), r["class"],
                                     num(r["value"]), Fraction(r["bound"]) if r["bound"] else None,
                                     r["method"]))
        return cls(doc["group"], doc["degree"], [Fraction(t) for t in doc["t_schedule"]],
                   list(doc["radius_schedule"]), entries,
                   {k: None if v is None else float(v) for k, v in doc["limits"].items()},
                   {k: None if v is None else Fraction(v) for k, v in doc["exact"].items()},
                   doc["status"], float(doc["tol"]), list(doc.get("notes", [])))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _increasing(xs: Sequence, what: str) -> None:
    if not xs:
        raise ValueError(f"{what} schedule is empty")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError(f"{what} schedule must be strictly increasing")


def heat_limit_scan(D: RingMatrix, classes: Sequence[Any], t_schedule: Sequence[float],
                    radius_schedule: Sequence[int], tol: float = SCAN_TOL,
                    exact: dict | None = None, degree: int | None = None) -> HeatReport:
    """Float heat traces over the ``t x radius`` grid for each class.

    A class converges when the value at the largest ``t`` moves by less than
    ``tol`` between the two largest radii and, at the largest radius, between
    the two largest ``t``.  A single-point schedule cannot converge.
    """
    _check_square_self_adjoint(D)
    _increasing(list(t_schedule), "t")
    _increasing(list(radius_schedule), "radius")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    spec = D.spec
    classes = list(classes)
    spec.check(*classes)
    ops = {r: compress(D, r) for r in radius_schedule}

    def unit(job):
        r, t = job
        op = ops[r]
        cols = heat_columns(op, t)
        return [trace_from_columns(op, cols, g) for g in classes]

    jobs = [(r, t) for r in radius_schedule for t in t_schedule]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = dict(zip(jobs, pool.map(unit, jobs)))

    entries, limits, status = [], {}, "converged"
    exact = dict(exact or {})
    for c, g in enumerate(classes):
        name = spec.format(g)
        for r in radius_schedule:
            for t in t_schedule:
                entries.append(HeatEntry(t, r, name, results[(r, t)][c], None, "heat-numeric"))
        T, R = t_schedule[-1], radius_schedule[-1]
        last = results[(R, T)][c]
        ok = len(t_schedule) > 1 and len(radius_schedule) > 1
        if ok:
            ok = (abs(last - results[(radius_schedule[-2], T)][c]) < tol
                  and abs(last - results[(R, t_schedule[-2])][c]) < tol)
        limits[name] = last if ok else None
        if not ok:
            status = "not converged"
        exact.setdefault(name, None)
    return HeatReport(str(spec), degree, list(t_schedule), list(radius_schedule), entries,
                      limits, exact, status, tol)


def exact_scan(D: RingMatrix, classes: Sequence[Any], t_schedule: Sequence[Any], order: int,
               degree: int | None = None) -> HeatReport:
    """Exact Taylor values with certified bounds; moments are shared across ``t``."""
    _check_square_self_adjoint(D)
    ts = [as_rational(t) for t in t_schedule]
    _increasing(ts, "t")
    spec = D.spec
    entries, status = [], "converged"
    for g in classes:
        moments = heat_moments(D, g, order)
        for t in ts:
            try:
                bound = remainder_bound(D, t, order)
            except BoundUnavailable:
                bound, status = None, "bound unavailable"
            value = exact_partial_sum(moments, t)
            entries.append(HeatEntry(t, order, spec.format(g), value, bound, "heat-exact"))
    return HeatReport(str(spec), degree, ts, [order], entries, {}, {}, status, tol=0.0)
