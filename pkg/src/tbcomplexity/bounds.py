"""Closed-form lower bounds for complexity.

* torsion bound: c(M) >= 2 log_5 |Tor H_1(M)| + beta_1(M) - 1
* lens spaces: c(L_{p,q}) >= 2 log_5 p - 1
* torus bundles M_n: the torsion bound with beta_1 = 1, combined with the
  census floor c(M_n) >= 7
* hyperbolic manifolds: c(M) >= ceil(Vol(M) / V), V the volume of the
  regular ideal tetrahedron

Every real-valued bound is rounded up to an integer. Raw values within
``BOUNDARY_TOL`` of an integer are snapped to that integer and flagged, which
is always the weaker (sound) choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, InternalInconsistency
from .exactnum import fibonacci, torsion_order
from .geometry import max_tetrahedron_volume

BOUNDARY_TOL = 1e-9
LOG5_2 = math.log(2) / math.log(5)

BETTI_MN = 1
CENSUS_FLOOR_MN = 7
CENSUS_FLOOR_CITATION = (
    "no M_n appears in Matveev's table of closed 3-manifolds up to complexity 6 "
    "(MPI preprint 1998-67), hence c(M_n) >= 7"
)
MN_UPPER_CITATION = "c(M_n) <= 2n + 5 (Anisov, math.GT/0103169)"
LENS_UPPER_CITATION = "c(L_n) <= n - 4 for n >= 4 (Matveev, MPI preprint 1998-67)"
LIMIT_CONSTANT = 2 * math.log((1 + math.sqrt(5)) / 2) / math.log(5)


@dataclass(frozen=True)
class LowerBound:
    value: int
    source: str  # torsion | census-floor | volume | combined
    raw: float | None = None
    boundary: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.value < 0:
            raise InternalInconsistency(f"negative lower bound {self.value}")


@dataclass(frozen=True)
class UpperBound:
    value: int
    provenance: str  # constructed | cited
    citation: str = ""


@dataclass(frozen=True)
class BoundReport:
    n: int
    family: str
    bounds: tuple[LowerBound, ...]
    upper: UpperBound | None = None
    conjectured: int | None = None

    def __post_init__(self):
        if self.upper is not None:
            for b in self.bounds:
                if b.value > self.upper.value:
                    raise InternalInconsistency(
                        f"{self.family} n={self.n}: lower bound {b.value} ({b.source}) "
                        f"exceeds upper bound {self.upper.value}")

    @property
    def best_lower(self) -> LowerBound:
        return max(self.bounds, key=lambda b: b.value)


def log5(x: int) -> float:
    """log base 5 of a positive integer of any size.

    Keeps the top 64 bits as a mantissa and adds back the discarded bits.
    """
    if x < 1:
        raise DomainError(f"log5 needs a positive integer, got {x}")
    shift = max(0, x.bit_length() - 64)
    return math.log(x >> shift) / math.log(5) + shift * LOG5_2


def _exact_log5(x: int) -> int | None:
    k = 0
    while x > 1 and x % 5 == 0:
        x //= 5
        k += 1
    return k if x == 1 else None


def ceil_with_flag(raw: float) -> tuple[int, bool]:
    nearest = round(raw)
    if abs(raw - nearest) < BOUNDARY_TOL:
        return nearest, True
    return math.ceil(raw), False


def _rounded(raw: float, source: str, exact: bool = False, notes=()) -> LowerBound:
    value, boundary = ceil_with_flag(raw)
    if exact:
        boundary = False
    notes = tuple(notes)
    if boundary:
        notes += ("raw value within 1e-9 of an integer; snapped down to it",)
    if value < 0:
        notes += (f"raw value {raw:.12g} is negative; clamped to 0",)
        value = 0
    return LowerBound(value, source, raw, boundary, notes)


def mp_lower_bound(torsion: int, beta1: int) -> LowerBound:
    """Torsion bound 2 log_5 |Tor H_1| + beta_1 - 1, rounded up."""
    if torsion < 1:
        raise DomainError(f"torsion order must be >= 1, got {torsion}")
    if beta1 < 0:
        raise DomainError(f"Betti number must be >= 0, got {beta1}")
    k = _exact_log5(torsion)
    if k is not None:
        return _rounded(float(2 * k + beta1 - 1), "torsion", exact=True)
    return _rounded(2 * log5(torsion) + beta1 - 1, "torsion")


def lens_lower_bound(p: int) -> LowerBound:
    """2 log_5 p - 1, rounded up; independent of q."""
    if p < 2:
        raise DomainError(f"lens space order must be >= 2, got {p}")
    if p == 3:
        # every L_{3,q} is L_{3,1}, which the torsion theorem excludes (c = 0)
        return LowerBound(0, "torsion", 2 * log5(3) - 1, False,
                          ("L_{3,q} = L_{3,1} is excluded from the torsion bound; using 0",))
    return mp_lower_bound(p, 0)


def cn_constant(n: int) -> float:
    """C_n = log_5(phi_{2n+1} + phi_{2n-1} - 2) / n."""
    return log5(torsion_order(n)) / n


def lens_constant(n: int) -> float:
    """(2/n) log_5(sqrt(5) phi_n), so that the lens bound for L_n equals this times n minus 2."""
    if n < 1:
        raise DomainError(f"index must be >= 1, got {n}")
    return (2 * log5(fibonacci(n)) + 1) / n


def mn_combined_lower_bound(n: int) -> LowerBound:
    torsion = mp_lower_bound(torsion_order(n), BETTI_MN)
    if CENSUS_FLOOR_MN >= torsion.value:
        return LowerBound(CENSUS_FLOOR_MN, "combined", torsion.raw, False,
                          (f"census floor: {CENSUS_FLOOR_CITATION}",))
    return LowerBound(torsion.value, "combined", torsion.raw, torsion.boundary,
                      torsion.notes + ("torsion bound exceeds census floor 7",))


def volume_lower_bound(vol: float, vol_error: float = 0.0) -> LowerBound:
    """ceil((vol - vol_error) / V); vol_error must bound |vol - true volume|."""
    if vol_error < 0:
        raise DomainError(f"volume error must be >= 0, got {vol_error}")
    if vol <= vol_error:
        raise DomainError(f"volume {vol} does not exceed its error bound {vol_error}")
    return _rounded((vol - vol_error) / max_tetrahedron_volume(), "volume")


def mn_bound_report(n: int) -> BoundReport:
    return BoundReport(
        n, "M_n",
        (mp_lower_bound(torsion_order(n), BETTI_MN),
         LowerBound(CENSUS_FLOOR_MN, "census-floor", None, False, (CENSUS_FLOOR_CITATION,)),
         mn_combined_lower_bound(n)),
        UpperBound(2 * n + 5, "cited", MN_UPPER_CITATION),
        conjectured=2 * n + 5,
    )
