"""Inversion of fitted implicit relations and conic geometry.

Coefficients follow the unit-constant convention 1 = a1*x + a2*y + a3*xy
+ a4*x^2 + a5*y^2, so the quadratic-in-y form is
a5*y^2 + (a2 + a3*x)*y + (a1*x + a4*x^2 - 1) = 0 and symmetrically for x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidSpec, NoSolutionAtPoint, NotAnEllipse, NotRepresentable, PoleAtPoint
from .fitters import FitResult

TOL_DISC = 1e-10
TOL_DENOM = 1e-12


@dataclass(frozen=True)
class ConicCoeffs:
    """Coefficients of 1 = a1*x + a2*y + a3*xy + a4*x^2 + a5*y^2."""

    a1: float
    a2: float
    a3: float = 0.0
    a4: float = 0.0
    a5: float = 0.0

    def __post_init__(self):
        if not any((self.a1, self.a2, self.a3, self.a4, self.a5)):
            raise InvalidSpec("at least one coefficient must be nonzero")

    def as_array(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3, self.a4, self.a5])

    def evaluate(self, x, y):
        """Left-hand side a1*x + ... + a5*y^2 (equals 1 on the curve)."""
        return (self.a1 * x + self.a2 * y + self.a3 * x * y
                + self.a4 * x * x + self.a5 * y * y)

    def swapped(self) -> "ConicCoeffs":
        """Roles of x and y exchanged: (a1,a4) <-> (a2,a5)."""
        return ConicCoeffs(self.a2, self.a1, self.a3, self.a5, self.a4)


class ConicClass(Enum):
    CIRCLE = "Circle"
    ELLIPSE = "Ellipse"
    PARABOLA = "Parabola"
    HYPERBOLA = "Hyperbola"
    DEGENERATE_OR_LINE = "DegenerateOrLine"


def _quadratic_roots(a: float, b: float, c: float) -> list[float]:
    """Ascending real roots of a*t^2 + b*t + c = 0 with a != 0.

    A discriminant within TOL_DISC below zero (after scaling by the
    coefficient magnitudes) snaps to a double root.
    """
    disc = b * b - 4 * a * c
    scale = max(b * b, abs(4 * a * c), 1.0)
    if disc < -TOL_DISC * scale:
        return []
    if disc < 0:
        disc = 0.0
    r = math.sqrt(disc)
    # Citardauq form on one branch avoids cancellation.
    if b >= 0:
        t1 = (-b - r) / (2 * a)
        t2 = (2 * c) / (-b - r) if (b + r) != 0 else -b / (2 * a)
    else:
        t2 = (-b + r) / (2 * a)
        t1 = (2 * c) / (-b + r) if (r - b) != 0 else -b / (2 * a)
    if disc == 0.0:
        return [-b / (2 * a)]
    return sorted([t1, t2])


def solve_for_y(c: ConicCoeffs, x: float) -> list[float]:
    """Real y with (x, y) on the fitted curve, ascending; 0, 1, or 2 roots."""
    qa = c.a5
    qb = c.a2 + c.a3 * x
    qc = c.a1 * x + c.a4 * x * x - 1.0
    if qa == 0.0:
        if abs(qb) < TOL_DENOM:
            raise NoSolutionAtPoint(f"no y solves the relation at x = {x}")
        return [-qc / qb]
    return _quadratic_roots(qa, qb, qc)


def solve_for_x(c: ConicCoeffs, y: float) -> list[float]:
    """Mirror image of solve_for_y with the roles of x and y exchanged."""
    return solve_for_y(c.swapped(), y)


def invert_rotation_linear(fit: FitResult, at: float, which: str) -> float:
    """Invert the three-term rotation y = a0 + a1*x + a2*xy rationally.

    which = "for_y": evaluate y = (a0 + a1*x)/(1 - a2*x) at x = at.
    which = "for_x": evaluate x = (y - a0)/(a1 + a2*y) at y = at.
    """
    if len(fit.coeffs) != 3:
        raise InvalidSpec("expected a 3-coefficient rotation fit (a0, a1, a2)")
    a0, a1, a2 = (float(v) for v in fit.coeffs)
    if which == "for_y":
        denom = 1.0 - a2 * at
        if abs(denom) < TOL_DENOM:
            raise PoleAtPoint(f"pole at x = {at}")
        return (a0 + a1 * at) / denom
    if which == "for_x":
        denom = a1 + a2 * at
        if abs(denom) < TOL_DENOM:
            raise PoleAtPoint(f"pole at y = {at}")
        return (at - a0) / denom
    raise InvalidSpec("which must be 'for_y' or 'for_x'")


def classify_conic(c: ConicCoeffs) -> ConicClass:
    """Scale-invariant discriminant classification of the quadratic part."""
    a = c.as_array()
    scale = float(np.max(np.abs(a)))
    a1, a2, a3, a4, a5 = a / scale
    if max(abs(a3), abs(a4), abs(a5)) <= TOL_DISC:
        return ConicClass.DEGENERATE_OR_LINE
    disc = a3 * a3 - 4 * a4 * a5
    if disc < -TOL_DISC:
        if abs(a3) <= TOL_DISC and abs(a4 - a5) <= TOL_DISC * max(abs(a4), abs(a5)):
            return ConicClass.CIRCLE
        return ConicClass.ELLIPSE
    if disc <= TOL_DISC:
        return ConicClass.PARABOLA
    return ConicClass.HYPERBOLA


@dataclass(frozen=True)
class ConicGeometry:
    center: tuple[float, float]
    semi_axes: tuple[float, float]   # major first
    rotation: float                  # radians, angle of the major axis


def conic_geometry(c: ConicCoeffs) -> ConicGeometry:
    """Center, semi-axes, and axis rotation of an elliptic relation.

    The center solves the gradient system; axes come from the eigenpairs
    of the quadratic-form matrix scaled by the centered constant.
    """
    kind = classify_conic(c)
    if kind not in (ConicClass.CIRCLE, ConicClass.ELLIPSE):
        raise NotAnEllipse(f"classification is {kind.value}")
    M = np.array([[c.a4, c.a3 / 2.0], [c.a3 / 2.0, c.a5]])
    center = np.linalg.solve(2.0 * M, np.array([-c.a1, -c.a2]))
    cx, cy = float(center[0]), float(center[1])
    # Centered form: u' M u = k with k = 1 - evaluate(center).
    k = 1.0 - float(c.evaluate(cx, cy))
    scale = float(np.max(np.abs(c.as_array())))
    if abs(k) <= TOL_DISC * scale:
        raise NotRepresentable("centered constant vanishes; no unit-constant form")
    if k < 0:
        # normalize the sign so the centered form reads u'Mu = k with k > 0
        M = -M
        k = -k
    eigvals, eigvecs = np.linalg.eigh(M)
    if np.any(eigvals <= 0):
        raise NotAnEllipse("quadratic form is not definite against the constant")
    axes = np.sqrt(k / eigvals)
    order = np.argsort(-axes)     # major axis first
    axes = axes[order]
    major_vec = eigvecs[:, order[0]]
    rotation = math.atan2(major_vec[1], major_vec[0])
    if rotation < 0:
        rotation += math.pi       # axis direction is defined modulo pi
    if abs(axes[0] - axes[1]) <= TOL_DISC * axes[0]:
        rotation = 0.0
    return ConicGeometry(center=(cx, cy), semi_axes=(float(axes[0]), float(axes[1])),
                         rotation=rotation)


def ellipse_points(g: ConicGeometry, n: int = 64) -> np.ndarray:
    """Sample the parametric ellipse; rows are (x, y)."""
    theta = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    u = g.semi_axes[0] * np.cos(theta)
    v = g.semi_axes[1] * np.sin(theta)
    cr, sr = math.cos(g.rotation), math.sin(g.rotation)
    x = g.center[0] + cr * u - sr * v
    y = g.center[1] + sr * u + cr * v
    return np.column_stack([x, y])
