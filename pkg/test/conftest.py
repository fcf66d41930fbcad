from math import gcd

import numpy as np
import pytest

from fank.geometry.fan import Fan, fan_from_description
from fank.geometry.planar import angular_sort
from fank.laurent import LaurentPoly
from fank.linalg.lattice import spans_ambient


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_matrix(rng, rows, cols, bound=50):
    return [[int(x) for x in row] for row in rng.integers(-bound, bound + 1, size=(rows, cols))]


def random_vector(rng, n, bound=5, nonzero=True):
    while True:
        v = tuple(int(x) for x in rng.integers(-bound, bound + 1, size=n))
        if any(v) or not nonzero:
            return v


def random_laurent(rng, n, terms=4, bound=3, coefficient_bound=5):
    pairs = []
    for _ in range(terms):
        exponent = tuple(int(x) for x in rng.integers(-bound, bound + 1, size=n))
        pairs.append((exponent, int(rng.integers(-coefficient_bound, coefficient_bound + 1))))
    return LaurentPoly.from_terms(n, pairs)


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _primitive_2d(rng, bound):
    while True:
        x, y = (int(t) for t in rng.integers(-bound, bound + 1, size=2))
        if (x, y) != (0, 0) and gcd(x, y) == 1:
            return x, y


def complete_2d_rays(rng, bound=5, max_rays=7):
    """Primitive rays in [-bound, bound]^2, in angular order, each consecutive angle below pi."""
    while True:
        count = int(rng.integers(3, max_rays + 1))
        rays = angular_sort(list({_primitive_2d(rng, bound) for _ in range(count)}))
        if len(rays) < 3:
            continue
        if all(_cross(rays[i], rays[(i + 1) % len(rays)]) > 0 for i in range(len(rays))):
            return rays


def fan_2d(rays, cyclic=True) -> Fan:
    k = len(rays)
    pairs = [[i, (i + 1) % k] for i in range(k if cyclic else k - 1)]
    return fan_from_description(rays, pairs)


def random_complete_2d_fan(rng, bound=5, max_rays=7) -> Fan:
    return fan_2d(complete_2d_rays(rng, bound, max_rays))


def random_indexed_2d_fan(rng, index, bound=5):
    """Complete 2D fan with rays in [-bound, bound]^2 spanning a sublattice of index exactly ``index``."""
    while True:
        rays = complete_2d_rays(rng, bound, max_rays=4)
        if spans_ambient(rays, 2).index == index:
            return fan_2d(rays)


def random_incomplete_2d_fan(rng, bound=5):
    """A chain of consecutive cones from a random complete fan (a single clump)."""
    rays = complete_2d_rays(rng, bound)
    keep = int(rng.integers(2, len(rays) + 1))
    return fan_2d(rays[:keep], cyclic=False)


def random_unimodular(rng, n, steps=6):
    matrix = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False)) if n > 1 else (0, 0)
        if i == j:
            matrix[i] = [-x for x in matrix[i]]
            continue
        factor = int(rng.integers(-2, 3))
        matrix[i] = [x + factor * y for x, y in zip(matrix[i], matrix[j])]
    return matrix


def random_smooth_cone_rays(rng, n, dim):
    """First ``dim`` columns of a random unimodular matrix."""
    matrix = random_unimodular(rng, n)
    return [tuple(matrix[i][j] for i in range(n)) for j in range(dim)]
