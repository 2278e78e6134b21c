"""Deterministic seeded generators for tests and the CLI.

All randomness flows through numpy's PCG64 Generator seeded from the spec;
uniform deviates come from the generator's native stream and normal
deviates from its ziggurat method.  Identical specs therefore produce
identical output on any platform running the same numpy build (the suite
only relies on distribution-level tolerances, not bit equality).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidSpec
from .terms import Dataset

# Abscissa range for line sampling; angle range for circles/ellipses is
# the full turn.
LINE_X_RANGE = (0.0, 10.0)


@dataclass(frozen=True)
class Line:
    b0: float
    b1: float


@dataclass(frozen=True)
class Circle:
    cx: float
    cy: float
    r: float


@dataclass(frozen=True)
class Ellipse:
    cx: float
    cy: float
    ax: float
    ay: float
    rot: float = 0.0


@dataclass(frozen=True)
class ConstantNormal:
    mu: float
    sigma: float


@dataclass(frozen=True)
class Uniform:
    a: float
    b: float


Kind = Union[Line, Circle, Ellipse, ConstantNormal, Uniform]


@dataclass(frozen=True)
class GeneratorSpec:
    kind: Kind
    n: int
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpec("n must be >= 1")
        if self.noise_sigma < 0:
            raise InvalidSpec("noise_sigma must be >= 0")
        k = self.kind
        if isinstance(k, Circle) and k.r <= 0:
            raise InvalidSpec("radius must be positive")
        if isinstance(k, Ellipse) and (k.ax <= 0 or k.ay <= 0):
            raise InvalidSpec("semi-axes must be positive")
        if isinstance(k, ConstantNormal) and k.sigma < 0:
            raise InvalidSpec("sigma must be >= 0")
        if isinstance(k, Uniform) and not k.a < k.b:
            raise InvalidSpec("uniform bounds must satisfy a < b")


def generate(spec: GeneratorSpec) -> Union[Dataset, np.ndarray]:
    """Sample per the spec; geometric kinds return a Dataset, univariate
    kinds a plain vector."""
    rng = np.random.default_rng(spec.seed)
    k = spec.kind
    if isinstance(k, Line):
        x = rng.uniform(*LINE_X_RANGE, size=spec.n)
        y = k.b0 + k.b1 * x
        return _with_noise(x, y, spec, rng)
    if isinstance(k, Circle):
        theta = rng.uniform(0.0, 2 * math.pi, size=spec.n)
        x = k.cx + k.r * np.cos(theta)
        y = k.cy + k.r * np.sin(theta)
        return _with_noise(x, y, spec, rng)
    if isinstance(k, Ellipse):
        theta = rng.uniform(0.0, 2 * math.pi, size=spec.n)
        u = k.ax * np.cos(theta)
        v = k.ay * np.sin(theta)
        cr, sr = math.cos(k.rot), math.sin(k.rot)
        x = k.cx + cr * u - sr * v
        y = k.cy + sr * u + cr * v
        return _with_noise(x, y, spec, rng)
    if isinstance(k, ConstantNormal):
        if k.sigma == 0:
            return np.full(spec.n, float(k.mu))
        return rng.normal(k.mu, k.sigma, size=spec.n)
    if isinstance(k, Uniform):
        return rng.uniform(k.a, k.b, size=spec.n)
    raise InvalidSpec(f"unknown generator kind {k!r}")


def _with_noise(x: np.ndarray, y: np.ndarray, spec: GeneratorSpec,
                rng: np.random.Generator) -> Dataset:
    if spec.noise_sigma > 0:
        x = x + rng.normal(0.0, spec.noise_sigma, size=spec.n)
        y = y + rng.normal(0.0, spec.noise_sigma, size=spec.n)
    return Dataset(x, y)
