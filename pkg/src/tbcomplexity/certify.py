"""Complexity certificates and machine-readable reports.

A certificate pairs an upper bound (a constructed triangulation, or a cited
result) with lower bounds (volume, torsion, census), and is only marked
``exact`` when a constructed upper bound meets the best lower bound.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Any

from . import __version__
from .bounds import (
    BETTI_MN,
    LENS_UPPER_CITATION,
    BoundReport,
    LowerBound,
    UpperBound,
    cn_constant,
    lens_constant,
    lens_lower_bound,
    mn_bound_report,
    volume_lower_bound,
)
from .errors import DomainError, InternalInconsistency, SolverError
from .exactnum import fibonacci, torsion_order
from .geometry import (
    DEFAULT_TOL,
    extract_gluing_system,
    max_tetrahedron_volume,
    solve_gluing,
    volume,
)
from .triangulation import (
    build_figure_eight,
    build_sibling,
    cyclic_cover,
    spine_stats,
    transfer_cocycle,
)

VARIANTS = {"n8": build_figure_eight, "figure-eight": build_figure_eight,
            "sibling": build_sibling}
FAMILY_NAMES = {build_figure_eight: "N_n", build_sibling: "sibling_n"}
SIG_DIGITS = 12


def clean(value: Any) -> Any:
    """Recursively convert to JSON-ready data with reals at 12 significant digits."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return str(value)
        return float(f"{value:.{SIG_DIGITS}g}")
    if isinstance(value, complex):
        return [clean(value.real), clean(value.imag)]
    if isinstance(value, dict):
        return {str(k): clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean(v) for v in value]
    if hasattr(value, "__dataclass_fields__"):
        return clean(asdict(value))
    raise TypeError(f"cannot serialize {type(value).__name__}")


@dataclass(frozen=True)
class ComplexityCertificate:
    family: str
    n: int
    upper: UpperBound | None
    lower_bounds: tuple[LowerBound, ...]
    status: str  # exact | exact-by-citation | gap | lower-only
    volume_evidence: dict | None = None
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.upper is None:
            if self.status != "lower-only":
                raise InternalInconsistency(f"status {self.status!r} without an upper bound")
            return
        for b in self.lower_bounds:
            if b.value > self.upper.value:
                raise InternalInconsistency(
                    f"{self.family} n={self.n}: lower bound {b.value} exceeds upper {self.upper.value}")
        if self.status == "exact" and (self.best_lower != self.upper.value
                                       or self.upper.provenance != "constructed"):
            raise InternalInconsistency("exact status without a matching constructed upper bound")

    @property
    def best_lower(self) -> int:
        return max((b.value for b in self.lower_bounds), default=0)

    def to_dict(self) -> dict:
        return clean({
            "family": self.family,
            "n": self.n,
            "status": self.status,
            "complexity": self.upper.value if self.upper and self.status == "exact" else None,
            "upper": self.upper,
            "lower": self.best_lower,
            "lower_bounds": list(self.lower_bounds),
            "volume_evidence": self.volume_evidence,
            "flags": list(self.flags),
        })


def _status(best_lower: int, upper: UpperBound | None) -> str:
    if upper is None:
        return "lower-only"
    if best_lower < upper.value:
        return "gap"
    return "exact" if upper.provenance == "constructed" else "exact-by-citation"


def certify_punctured_bundle(n: int, variant: str = "n8", tol: float = DEFAULT_TOL) -> ComplexityCertificate:
    """c = 2n for the n-fold cyclic cover of a two-tetrahedron manifold.

    Upper bound: the cover triangulation has 2n tetrahedra (its dual spine has
    2n vertices).  Lower bound: ceil(volume / V) from the solved gluing
    equations.
    """
    if n < 1:
        raise DomainError(f"cover degree must be >= 1, got {n}")
    try:
        builder = VARIANTS[variant]
    except KeyError:
        raise DomainError(f"unknown variant {variant!r}; use one of {sorted(VARIANTS)}") from None
    base = builder()
    cover = cyclic_cover(base, transfer_cocycle(base), n)
    stats = spine_stats(cover)
    upper = UpperBound(cover.tet_count, "constructed",
                       f"special spine dual to the {n}-fold cyclic cover triangulation "
                       f"({stats.vertices} vertices, {stats.edges} edges, {stats.cells} cells)")
    flags: list[str] = []
    try:
        system = extract_gluing_system(cover)
        shapes = solve_gluing(system, tol=tol)
        vol = volume(shapes)
    except SolverError as exc:
        lower = LowerBound(0, "volume", None, False, (f"no geometric solution: {exc}",))
        return ComplexityCertificate(FAMILY_NAMES[builder], n, upper, (lower,), "gap", None,
                                     ("solver-failure",))
    lower = volume_lower_bound(vol.volume, vol.error)
    if lower.boundary:
        flags.append("volume-ceiling-boundary")
    evidence = {
        "volume": vol.volume,
        "volume_error": vol.error,
        "volume_over_V": vol.volume / max_tetrahedron_volume(),
        "V": max_tetrahedron_volume(),
        "residual": shapes.residual,
        "iterations": shapes.iterations,
        "tetrahedra": cover.tet_count,
        "edge_classes": stats.cells,
        "min_imag_shape": min(z.imag for z in shapes.shapes),
        "error_kind": "heuristic floating-point estimate",
    }
    return ComplexityCertificate(FAMILY_NAMES[builder], n, upper, (lower,),
                                 _status(lower.value, upper), evidence, tuple(flags))


def mn_certificate(n: int) -> tuple[ComplexityCertificate, BoundReport]:
    if n < 1:
        raise DomainError(f"bundle index must be >= 1, got {n}")
    report = mn_bound_report(n)
    status = _status(report.best_lower.value, report.upper)
    flags = ("boundary: combined lower bound equals the cited upper bound",) \
        if status == "exact-by-citation" else ()
    cert = ComplexityCertificate("M_n", n, report.upper, report.bounds, status, None, flags)
    return cert, report


def fibonacci_lens_index(p: int, q: int) -> int | None:
    """n with (p, q) = (phi_n, phi_{n-1}), or None."""
    n, a, b = 2, 1, 1  # a = phi_{n-1}, b = phi_n
    while b < p:
        a, b = b, a + b
        n += 1
    return n if (b, a) == (p, q) else None


def lens_certificate(p: int, q: int) -> ComplexityCertificate:
    if p < 2 or q < 1:
        raise DomainError(f"lens space needs p >= 2 and q >= 1, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise DomainError(f"p = {p} and q = {q} are not coprime")
    lower = lens_lower_bound(p)
    n = fibonacci_lens_index(p, q)
    upper = UpperBound(n - 4, "cited", LENS_UPPER_CITATION) if n is not None and n >= 4 else None
    return ComplexityCertificate(f"L({p},{q})", n or 0, upper, (lower,), _status(lower.value, upper))


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    timing_ms: float | None = None
    version: str = __version__

    def to_dict(self) -> dict:
        return clean({"version": self.version, "command": self.command,
                      "inputs": self.inputs, "results": self.results,
                      "timing_ms": self.timing_ms})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        return cls(data["command"], data["inputs"], data["results"], data.get("timing_ms"),
                   data["version"])

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))


def report_mn(n: int) -> Report:
    cert, bounds = mn_certificate(n)
    torsion, census, combined = bounds.bounds
    results = {
        "torsion_order": torsion_order(n),
        "beta1": BETTI_MN,
        "C_n": cn_constant(n),
        "torsion_bound": torsion,
        "census_floor": census,
        "combined_lower": combined,
        "upper": bounds.upper,
        "conjectured": bounds.conjectured,
        "gap": bounds.upper.value - combined.value,
        "certificate": cert.to_dict(),
    }
    return Report("bound mn", {"n": n}, results)


def report_lens(p: int, q: int) -> Report:
    cert = lens_certificate(p, q)
    n = fibonacci_lens_index(p, q)
    results = {
        "lower": cert.lower_bounds[0],
        "fibonacci_index": n,
        "upper": cert.upper,
        "conjectured": n - 4 if cert.upper is not None else None,
        "gap": cert.upper.value - cert.best_lower if cert.upper is not None else None,
        "certificate": cert.to_dict(),
    }
    if n is not None:
        results["lens_constant"] = lens_constant(n)
    return Report("bound lens", {"p": p, "q": q}, results)


def report_certify(n: int, variant: str = "n8", tol: float = DEFAULT_TOL) -> Report:
    cert = certify_punctured_bundle(n, variant, tol)
    return Report("certify", {"variant": variant, "n": n, "tol": tol}, {"certificate": cert.to_dict()})


TABLE_LIMITS = {"mn": 200, "lens": 200, "nn": 50}


def table_rows(kind: str, n_max: int, tol: float = DEFAULT_TOL) -> list[dict]:
    if kind not in TABLE_LIMITS:
        raise DomainError(f"unknown table {kind!r}; use one of {sorted(TABLE_LIMITS)}")
    if not 1 <= n_max <= TABLE_LIMITS[kind]:
        raise DomainError(f"table {kind} supports 1 <= n_max <= {TABLE_LIMITS[kind]}, got {n_max}")
    rows = []
    for n in range(1, n_max + 1):
        if kind == "mn":
            cert, bounds = mn_certificate(n)
            rows.append({"n": n, "torsion_order": torsion_order(n), "C_n": cn_constant(n),
                         "torsion_bound": bounds.bounds[0].value,
                         "combined_lower": bounds.bounds[2].value,
                         "exceeds_1.19n": bounds.bounds[2].value > 1.19 * n,
                         "upper_cited": 2 * n + 5, "status": cert.status})
        elif kind == "lens":
            if n < 3:
                continue
            p, q = fibonacci(n), fibonacci(n - 1)
            cert = lens_certificate(p, q)
            rows.append({"n": n, "p": p, "q": q, "C_n": lens_constant(n),
                         "lower": cert.best_lower,
                         "upper_cited": cert.upper.value if cert.upper else None,
                         "status": cert.status})
        else:
            cert = certify_punctured_bundle(n, "n8", tol)
            ev = cert.volume_evidence or {}
            rows.append({"n": n, "tetrahedra": cert.upper.value if cert.upper else None,
                         "volume": ev.get("volume"), "volume_over_V": ev.get("volume_over_V"),
                         "lower": cert.best_lower, "status": cert.status})
    return rows
