"""Shared random generators for the test suite.

Zeros stay within radius 0.75 and circle points keep at least 0.35 radians
of angular separation; both bounds leave double precision enough headroom
that matrix entries, which grow like inverse powers of the separations,
stay well conditioned across the whole random suite.
"""

from __future__ import annotations

import math

import numpy as np

from blaschkepick import BlaschkeProduct, make_blaschke

ZERO_RADIUS = 0.75
MIN_SEPARATION = 0.35


def random_blaschke(rng: np.random.Generator, degree: int, radius: float = ZERO_RADIUS) -> BlaschkeProduct:
    """Degree-`degree` product with area-uniform zeros and a random constant."""
    zeros = []
    for _ in range(degree):
        r = radius * math.sqrt(rng.uniform())
        theta = rng.uniform(0.0, 2.0 * math.pi)
        zeros.append(r * complex(math.cos(theta), math.sin(theta)))
    phi = rng.uniform(0.0, 2.0 * math.pi)
    return make_blaschke(zeros, complex(math.cos(phi), math.sin(phi)))


def random_circle_points(rng: np.random.Generator, n: int, min_separation: float = MIN_SEPARATION) -> list[complex]:
    """n points of modulus one, pairwise separated by at least min_separation radians."""
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        wrap = np.concatenate([np.diff(angles), [angles[0] + 2.0 * math.pi - angles[-1]]])
        if n == 1 or float(np.min(wrap)) >= min_separation:
            break
    return [complex(math.cos(a), math.sin(a)) for a in angles]


def random_interior_points(rng: np.random.Generator, n: int, radius: float = 0.9) -> list[complex]:
    """n distinct points inside the disk of the given radius."""
    pts: list[complex] = []
    while len(pts) < n:
        r = radius * math.sqrt(rng.uniform())
        theta = rng.uniform(0.0, 2.0 * math.pi)
        z = r * complex(math.cos(theta), math.sin(theta))
        if all(abs(z - w) > 0.1 for w in pts):
            pts.append(z)
    return pts
