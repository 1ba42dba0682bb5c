"""Command line front door: ``betti``, ``heat``, ``verify`` and ``complex``.

Exit codes: 0 success or converged, 2 unsupported request, 3 verification
failure, 4 heat scan did not converge, 5 certified bound unavailable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complexes import (
    ComplexError,
    CochainComplex,
    complex_for,
    product_laplacian_blocks,
    tensor_complex,
)
from .groups import DirectProduct, FreeProduct, GroupError, GroupSpec, parse_group
from .kclass import BettiReport, UnsupportedGroup, betti_report, known_betti
from .spectral import (
    SCAN_TOL,
    exact_scan,
    heat_limit_scan,
    invert_generators,
    closed_form_laplacian,
    rewritten_laplacian,
    verify_decomposition,
    verify_kernel_structure,
)

EXIT_OK, EXIT_UNSUPPORTED, EXIT_VERIFY, EXIT_NOT_CONVERGED, EXIT_NO_BOUND = 0, 2, 3, 4, 5


class Unsupported(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    group: str
    degree: int = 1
    classes: list[str] = field(default_factory=lambda: ["e"])
    t_schedule: list[str] = field(default_factory=lambda: ["2", "5", "10"])
    radius_schedule: list[int] = field(default_factory=lambda: [4, 6, 8])
    order: int | None = None
    tol: float = SCAN_TOL
    max_degree: int | None = None
    fmt: str = "json"
    out: str | None = None

    def validate(self) -> None:
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        ts = [Fraction(t) for t in self.t_schedule]
        for xs, what in ((ts, "t"), (self.radius_schedule, "radius")):
            if any(b <= a for a, b in zip(xs, xs[1:])):
                raise ValueError(f"{what} schedule must be strictly increasing")
        if any(t < 0 for t in ts):
            raise ValueError("t must be nonnegative")
        if self.order is not None and self.order < 0:
            raise ValueError("order must be nonnegative")


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _elements(spec: GroupSpec, words: Sequence[str]) -> list:
    return [spec.parse(w) for w in words]


# -- betti -------------------------------------------------------------------------------

def cmd_betti(cfg: RunConfig) -> BettiReport:
    spec = parse_group(cfg.group)
    try:
        return betti_report(spec, cfg.degree, _elements(spec, cfg.classes))
    except UnsupportedGroup as exc:
        raise Unsupported(str(exc)) from exc


# -- heat --------------------------------------------------------------------------------

def cmd_heat(cfg: RunConfig):
    spec = parse_group(cfg.group)
    try:
        D = complex_for(spec, cfg.degree).laplacian(cfg.degree)
    except ComplexError as exc:
        raise Unsupported(str(exc)) from exc
    gs = _elements(spec, cfg.classes)
    if cfg.order is not None:
        return exact_scan(D, gs, [Fraction(t) for t in cfg.t_schedule], cfg.order, cfg.degree)
    exact = {}
    for g in gs:
        try:
            exact[spec.format(g)] = known_betti(spec, cfg.degree, g)
        except (UnsupportedGroup, ValueError):
            exact[spec.format(g)] = None
    report = heat_limit_scan(D, gs, [float(Fraction(t)) for t in cfg.t_schedule],
                             cfg.radius_schedule, cfg.tol, exact, cfg.degree)
    report.notes.append("limit = value at the largest (t, radius) when both deltas are below tol")
    return report


# -- verify ------------------------------------------------------------------------------

@dataclass
class VerifyReport:
    group: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    def to_json(self) -> dict:
        return {"group": self.group, "passed": self.passed,
                "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.checks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_csv(self) -> str:
        return _csv(["name", "passed", "detail"], [(n, str(ok).lower(), d) for n, ok, d in self.checks])


def _structural(rep: VerifyReport, c: CochainComplex) -> None:
    rep.add("chain law", c.chain_law_holds(), f"ranks {list(c.ranks)}")
    for i in c.laplacian_degrees():
        rep.add(f"Delta_{i} self-adjoint", c.laplacian(i).is_self_adjoint())


def cmd_verify(cfg: RunConfig) -> VerifyReport:
    spec = parse_group(cfg.group)
    rep = VerifyReport(str(spec))
    try:
        c = complex_for(spec, max(cfg.max_degree or 2, 2))
    except ComplexError as exc:
        raise Unsupported(str(exc)) from exc
    _structural(rep, c)
    if isinstance(spec, FreeProduct):
        m, n = spec.orders
        D1 = c.laplacian(1)
        rep.add("Delta_1 closed form", D1 == invert_generators(closed_form_laplacian(m, n)),
                "entrywise, after s -> s^-1, t -> t^-1")
        rep.add("Delta_1 rewritten form", D1 == invert_generators(rewritten_laplacian(m, n)))
        if min(m, n) >= 2 and max(m, n) >= 3:
            a, b = (m, n) if n >= 3 else (n, m)
            k = verify_kernel_structure(a, b)
            rep.add("kernel identity", k.identity and k.identity_column)
            rep.add("kernel factorization", k.factorization)
            rep.add("kernel witness", k.witness_ok,
                    f"residual {max(k.residual, k.residual_column):.3g}, quotient order {k.quotient_order}")
            d = verify_decomposition(a, b)
            rep.add("orthogonal decompositions", bool(d), f"dims {d.dims}, error {d.error:.3g}")
    elif isinstance(spec, DirectProduct) and len(spec.factors) == 2:
        try:
            c1, c2 = (complex_for(f, 2) for f in spec.factors)
            t = tensor_complex(c1, c2, 2)
            for i in t.laplacian_degrees():
                rep.add(f"Delta_{i} = product block form",
                        t.laplacian(i) == product_laplacian_blocks(c1, c2, i))
        except ComplexError as exc:
            rep.add("product block form", False, str(exc))
    return rep


# -- complex -----------------------------------------------------------------------------

@dataclass
class ComplexDump:
    complex: CochainComplex
    degrees: list[int]

    def to_json(self) -> dict:
        c = self.complex
        return {
            "group": str(c.spec),
            "ranks": list(c.ranks),
            "truncated": c.truncated,
            "coboundaries": [{"degree": i, "matrix": d.to_json()} for i, d in enumerate(c.coboundaries)],
            "laplacians": [{"degree": i, "matrix": c.laplacian(i).to_json()} for i in self.degrees],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_csv(self) -> str:
        rows = []
        c = self.complex
        mats = [("d", i, d) for i, d in enumerate(c.coboundaries)]
        mats += [("laplacian", i, c.laplacian(i)) for i in self.degrees]
        for kind, i, A in mats:
            for r in range(A.rows):
                for col in range(A.cols):
                    rows.append((kind, i, r, col, A.entries[r][col].to_string()))
        return _csv(["kind", "degree", "row", "col", "entry"], rows)


def cmd_complex(cfg: RunConfig) -> ComplexDump:
    spec = parse_group(cfg.group)
    top = cfg.max_degree if cfg.max_degree is not None else max(cfg.degree + 1, 2)
    try:
        c = complex_for(spec, max(top - 1, cfg.degree))
    except ComplexError as exc:
        raise Unsupported(str(exc)) from exc
    if cfg.max_degree is not None and c.top_degree > cfg.max_degree:
        c = CochainComplex(c.spec, c.ranks[:cfg.max_degree + 1], c.coboundaries[:cfg.max_degree],
                           truncated=True, name=c.name)
    if cfg.degree not in c.laplacian_degrees():
        raise Unsupported(f"degree {cfg.degree} Laplacian unavailable for this complex")
    return ComplexDump(c, [cfg.degree])


# -- driver ------------------------------------------------------------------------------

def _split(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="higher-kazhdan", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, degree=True):
        p.add_argument("--group", required=True, help='group spec, e.g. "Z2*Z3" or "F2xF2xZ2"')
        if degree:
            p.add_argument("--degree", type=int, default=1)
        p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write the report here instead of standard output")

    p = sub.add_parser("betti", help="exact delocalised l2-Betti numbers")
    common(p)
    p.add_argument("--classes", "--class", dest="classes", type=_split, default=["e"])

    p = sub.add_parser("heat", help="heat-semigroup traces over a t x radius grid")
    common(p)
    p.add_argument("--classes", "--class", dest="classes", type=_split, default=["e"])
    p.add_argument("--t", dest="t_schedule", type=_split, default=["2", "5", "10"])
    p.add_argument("--radius", dest="radius_schedule", type=lambda s: [int(x) for x in _split(s)],
                   default=[4, 6, 8])
    p.add_argument("--order", type=int, help="use the exact Taylor engine with this order")
    p.add_argument("--tol", type=float, default=SCAN_TOL,
                   help="convergence tolerance on consecutive t and radius deltas")

    p = sub.add_parser("verify", help="exact structural identities")
    common(p, degree=False)
    p.add_argument("--max-degree", type=int, default=None)

    p = sub.add_parser("complex", help="dump coboundaries and a Laplacian")
    common(p)
    p.add_argument("--max-degree", type=int, default=None)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    kw = {k: v for k, v in vars(ns).items() if v is not None}
    cfg = RunConfig(**kw)
    cfg.validate()
    return cfg


COMMANDS = {"betti": cmd_betti, "heat": cmd_heat, "verify": cmd_verify, "complex": cmd_complex}


def exit_status(command: str, report) -> int:
    if command == "verify":
        return EXIT_OK if report.passed else EXIT_VERIFY
    if command == "heat":
        return {"converged": EXIT_OK, "not converged": EXIT_NOT_CONVERGED,
                "bound unavailable": EXIT_NO_BOUND}[report.status]
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report = COMMANDS[cfg.command](cfg)
    except (Unsupported, GroupError, ComplexError, UnsupportedGroup) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    text = report.dumps() + "\n" if cfg.fmt == "json" else report.to_csv()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return exit_status(cfg.command, report)


if __name__ == "__main__":
    raise SystemExit(main())
