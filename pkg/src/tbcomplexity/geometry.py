"""Hyperbolic structures on ideal triangulations.

Shape conventions: for a positively oriented tetrahedron with shape z, the
edges 01 and 23 carry z, edges 02 and 13 carry 1/(1-z), and edges 03 and 12
carry (z-1)/z.  A negatively oriented tetrahedron swaps the last two.  The
dihedral angles are the arguments of these three numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import zeta

from .errors import DegenerateSolution, NoGeometricSolution
from .triangulation.core import IdealTriangulation

LAMBDA_ERROR = 1e-12
DEGENERACY_THRESHOLD = 1e-8
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100
REGULAR_SHAPE = cmath.exp(1j * math.pi / 3)

_TERMS = 40
_n = np.arange(1, _TERMS + 1)
_SERIES = zeta(2 * _n) / (_n * (2 * _n + 1))


def _lobachevsky_reduced(x):
    """Lambda on [0, pi/2] from the zeta-coefficient expansion of log(sin x / x)."""
    u = (x / math.pi) ** 2
    total = np.zeros_like(x)
    for c in _SERIES[::-1]:
        total = (total + c) * u
    with np.errstate(divide="ignore", invalid="ignore"):
        head = np.where(x > 0, x * (1.0 - np.log(2.0 * np.where(x > 0, x, 1.0))), 0.0)
    return head + x * total


def lobachevsky(theta):
    """Lobachevsky function -int_0^theta log|2 sin t| dt.

    Accepts a float or a numpy array.  Odd and pi-periodic.
    """
    arr = np.asarray(theta, dtype=float)
    r = arr - math.pi * np.round(arr / math.pi)
    out = np.sign(r) * _lobachevsky_reduced(np.abs(r))
    return float(out) if out.ndim == 0 else out


def max_tetrahedron_volume() -> float:
    """Volume of the regular ideal tetrahedron, 3 * Lambda(pi/3) ~ 1.01494."""
    return 3 * lobachevsky(math.pi / 3)


def tetrahedron_volume(alpha, beta, gamma):
    return lobachevsky(alpha) + lobachevsky(beta) + lobachevsky(gamma)


def shape_forms(z: complex) -> tuple[complex, complex, complex]:
    return z, 1 / (1 - z), (z - 1) / z


def _form_index(a: int, b: int, sign: int) -> int:
    idx = {(0, 1): 0, (2, 3): 0, (0, 2): 1, (1, 3): 1, (0, 3): 2, (1, 2): 2}[(a, b)]
    if sign < 0 and idx:
        idx = 3 - idx
    return idx


@dataclass(frozen=True)
class GluingEquationSystem:
    """``counts[e][i]`` = (a, b, c): incidences of edge e on tetrahedron i
    carrying z_i, 1/(1-z_i), (z_i-1)/z_i.  Every edge targets angle sum 2 pi."""

    counts: tuple[tuple[tuple[int, int, int], ...], ...]

    @property
    def tet_count(self) -> int:
        return len(self.counts[0]) if self.counts else 0

    @property
    def edge_count(self) -> int:
        return len(self.counts)

    def matrix(self) -> np.ndarray:
        """Shape (edges, tets, 3) array of the counts."""
        return np.array(self.counts, dtype=float)

    def evaluate(self, shapes) -> np.ndarray:
        """Log-form residuals sum(a log z + b log z' + c log z'') - 2 pi i."""
        logs = np.array([[cmath.log(w) for w in shape_forms(z)] for z in shapes])
        return np.einsum("eij,ij->e", self.matrix(), logs) - 2j * math.pi

    def jacobian(self, shapes) -> np.ndarray:
        """Derivatives with respect to log z_i."""
        z = np.asarray(shapes, dtype=complex)
        d = np.stack([np.ones_like(z), z / (1 - z), 1 / (z - 1)], axis=1)
        return np.einsum("eij,ij->ei", self.matrix(), d)


def extract_gluing_system(tri: IdealTriangulation) -> GluingEquationSystem:
    signs = tri.require_orientation()
    k = tri.tet_count
    rows = []
    for edge in tri.edge_classes:
        row = [[0, 0, 0] for _ in range(k)]
        for t, (a, b) in edge.representatives:
            row[t][_form_index(a, b, signs[t])] += 1
        rows.append(tuple(tuple(c) for c in row))
    return GluingEquationSystem(tuple(rows))


@dataclass(frozen=True)
class ShapeAssignment:
    shapes: tuple[complex, ...]
    residual: float = 0.0
    iterations: int = 0

    @property
    def angles(self) -> list[tuple[float, float, float]]:
        return [tuple(cmath.phase(w) for w in shape_forms(z)) for z in self.shapes]

    def edge_angle_sums(self, system: GluingEquationSystem) -> list[float]:
        ang = np.array(self.angles)
        return list(np.einsum("eij,ij->e", system.matrix(), ang))


def _residual(system, shapes) -> float:
    return float(np.max(np.abs(system.evaluate(shapes))))


def _newton(system, start, tol, max_iter):
    w = np.log(np.asarray(start, dtype=complex))
    shapes = np.exp(w)
    res = _residual(system, shapes)
    for it in range(max_iter + 1):
        if res < tol:
            return shapes, res, it
        if it == max_iter:
            break
        F = system.evaluate(shapes)
        J = system.jacobian(shapes)
        step = np.linalg.lstsq(J, -F, rcond=None)[0]
        t = 1.0
        while t > 1e-6:
            trial = np.exp(w + t * step)
            if np.all(trial.imag > 0):
                trial_res = _residual(system, trial)
                if trial_res < res:
                    break
            t /= 2
        else:
            break
        w, shapes, res = w + t * step, trial, trial_res
    return None


def solve_gluing(system: GluingEquationSystem, tol: float = DEFAULT_TOL,
                 max_iter: int = DEFAULT_MAX_ITER,
                 degeneracy: float = DEGENERACY_THRESHOLD) -> ShapeAssignment:
    """Damped least-squares Newton on log shapes.

    Starts from regular shapes, retries once from z = i, and otherwise raises
    NoGeometricSolution.
    """
    k = system.tet_count
    for guess in (REGULAR_SHAPE, 1j):
        found = _newton(system, [guess] * k, tol, max_iter)
        if found is not None:
            break
    else:
        raise NoGeometricSolution(
            f"Newton did not reach residual {tol:g} within {max_iter} iterations")
    shapes, res, iterations = found
    if np.min(shapes.imag) <= degeneracy:
        raise DegenerateSolution(
            f"solution has a flat tetrahedron (min Im z = {np.min(shapes.imag):.3g})")
    return ShapeAssignment(tuple(complex(z) for z in shapes), res, iterations)


@dataclass(frozen=True)
class VolumeResult:
    volume: float
    error: float
    per_tet: tuple[float, ...] = field(default_factory=tuple)


def volume(shapes: ShapeAssignment, degeneracy: float = DEGENERACY_THRESHOLD) -> VolumeResult:
    """Sum of tetrahedron volumes with a heuristic absolute error bound.

    The bound adds the Lobachevsky evaluation error for every angle and the
    first-order effect of the solver residual on the angles
    (|d Lambda / d theta| = |log |2 sin theta||).
    """
    if any(z.imag <= degeneracy for z in shapes.shapes):
        raise DegenerateSolution("volume of a degenerate tetrahedron is not accepted")
    angles = np.array(shapes.angles)
    per_tet = lobachevsky(angles).sum(axis=1)
    sensitivity = float(np.abs(np.log(2 * np.sin(angles))).sum())
    rounding = 1e-15 * angles.size
    error = LAMBDA_ERROR * angles.size + shapes.residual * sensitivity + rounding
    return VolumeResult(float(per_tet.sum()), error, tuple(float(v) for v in per_tet))
