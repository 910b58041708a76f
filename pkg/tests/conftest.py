import math

import numpy as np
import pytest

from meshneck import kernels, synthetic
from meshneck.mesh import Mesh


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT-compile all kernels once so wall-clock assertions measure the
    # algorithm, not compilation
    kernels.warmup()


@pytest.fixture(scope="session")
def unit_tetra():
    """Regular tetrahedron with unit edges."""
    verts = np.array(
        [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float
    ) / (2 * math.sqrt(2))
    faces = np.array([[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]])
    return Mesh(verts, faces)


@pytest.fixture(scope="session")
def corner_tetra():
    """Tetrahedron at the unit cube corner; face 0 is a right triangle."""
    verts = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float)
    faces = np.array([[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]])
    return Mesh(verts, faces)


@pytest.fixture(scope="session")
def unit_octahedron():
    s = 1 / math.sqrt(2)
    verts = np.array(
        [[s, 0, 0], [-s, 0, 0], [0, s, 0], [0, -s, 0], [0, 0, s], [0, 0, -s]]
    )
    faces = np.array(
        [[0, 2, 4], [2, 1, 4], [1, 3, 4], [3, 0, 4],
         [2, 0, 5], [1, 2, 5], [3, 1, 5], [0, 3, 5]]
    )
    return Mesh(verts, faces)


@pytest.fixture(scope="session")
def sphere2():
    return synthetic.icosphere(2)


@pytest.fixture(scope="session")
def sphere3():
    return synthetic.icosphere(3)


@pytest.fixture(scope="session")
def cyl16():
    return synthetic.cylinder(1.0, 5.0, 16)


@pytest.fixture(scope="session")
def dumbbell24():
    return synthetic.dumbbell(1.0, 0.2, 3.0, 24)


@pytest.fixture(scope="session")
def dumbbell12():
    return synthetic.dumbbell(1.0, 0.2, 3.0, 12)


@pytest.fixture(scope="session")
def ellipsoid411():
    return synthetic.ellipsoid(4.0, 1.0, 1.0, 3)


def grid_torus(n=12, m=8, R=2.0, r=0.7):
    """Triangulated torus: V - E + F = 0."""
    verts = []
    for i in range(n):
        for j in range(m):
            a = 2 * math.pi * i / n
            b = 2 * math.pi * j / m
            verts.append(
                (
                    (R + r * math.cos(b)) * math.cos(a),
                    (R + r * math.cos(b)) * math.sin(a),
                    r * math.sin(b),
                )
            )
    faces = []
    for i in range(n):
        for j in range(m):
            a = i * m + j
            b = i * m + (j + 1) % m
            c = ((i + 1) % n) * m + j
            d = ((i + 1) % n) * m + (j + 1) % m
            faces.append((a, b, c))
            faces.append((b, d, c))
    return Mesh(np.array(verts), np.array(faces, dtype=np.int64))


@pytest.fixture(scope="session")
def torus():
    return grid_torus()
