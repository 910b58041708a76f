"""Procedural test meshes with known analytic measures.

All generators return closed, consistently oriented genus-zero meshes, which
makes them usable both as fixtures and as ground-truth oracles (sphere areas,
tube circumferences, ...).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import MeshError
from .mesh import Mesh

# icosahedron with outward CCW faces (unit circumradius after normalization)
_PHI = (1.0 + math.sqrt(5.0)) / 2.0
_ICO_VERTS = np.array(
    [
        (-1, _PHI, 0), (1, _PHI, 0), (-1, -_PHI, 0), (1, -_PHI, 0),
        (0, -1, _PHI), (0, 1, _PHI), (0, -1, -_PHI), (0, 1, -_PHI),
        (_PHI, 0, -1), (_PHI, 0, 1), (-_PHI, 0, -1), (-_PHI, 0, 1),
    ],
    dtype=np.float64,
)
_ICO_FACES = np.array(
    [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ],
    dtype=np.int64,
)


def icosphere(subdiv, radius=1.0):
    """Icosphere by ``subdiv`` rounds of 1:4 triangle subdivision.

    Face count is 20 * 4**subdiv (subdiv 3 -> 1280 faces).
    """
    if subdiv < 0:
        raise MeshError("subdiv must be >= 0")
    return icosphere_frequency(2 ** subdiv, radius=radius)


def icosphere_frequency(frequency, radius=1.0, radial_fn=None):
    """Geodesic sphere: every icosahedron face becomes a frequency**2 grid.

    Face count is 20 * frequency**2, so intermediate sizes between the
    classic power-of-four subdivision steps are reachable.  ``radial_fn``,
    if given, maps an array of unit directions to radii (used for bumpy /
    ellipsoidal variants).
    """
    f = int(frequency)
    if f < 1:
        raise MeshError("frequency must be >= 1")
    base = _ICO_VERTS / np.linalg.norm(_ICO_VERTS, axis=1, keepdims=True)

    verts = []
    index = {}

    def point_key(face_id, fa, fb, fc, i, j):
        k = f - i - j
        if i == f:
            return ("v", fa)
        if j == f:
            return ("v", fb)
        if k == f:
            return ("v", fc)
        if k == 0:  # edge a-b
            lo, hi = (fa, fb) if fa < fb else (fb, fa)
            t = j if fa < fb else i
            return ("e", lo, hi, t)
        if j == 0:  # edge c-a
            lo, hi = (fc, fa) if fc < fa else (fa, fc)
            t = i if fc < fa else k
            return ("e", lo, hi, t)
        if i == 0:  # edge b-c
            lo, hi = (fb, fc) if fb < fc else (fc, fb)
            t = k if fb < fc else j
            return ("e", lo, hi, t)
        return ("f", face_id, i, j)

    def vid(face_id, fa, fb, fc, i, j):
        key = point_key(face_id, fa, fb, fc, i, j)
        if key in index:
            return index[key]
        k = f - i - j
        p = (i * base[fa] + j * base[fb] + k * base[fc]) / f
        p = p / np.linalg.norm(p)
        index[key] = len(verts)
        verts.append(p)
        return index[key]

    faces = []
    for face_id, (fa, fb, fc) in enumerate(_ICO_FACES.tolist()):
        # barycentric lattice: X(i, j) = (i*A + j*B + (f-i-j)*C) / f
        for i in range(f):
            for j in range(f - i):
                faces.append(
                    (
                        vid(face_id, fa, fb, fc, i, j),
                        vid(face_id, fa, fb, fc, i + 1, j),
                        vid(face_id, fa, fb, fc, i, j + 1),
                    )
                )
                if i + j <= f - 2:
                    faces.append(
                        (
                            vid(face_id, fa, fb, fc, i + 1, j),
                            vid(face_id, fa, fb, fc, i + 1, j + 1),
                            vid(face_id, fa, fb, fc, i, j + 1),
                        )
                    )
    dirs = np.array(verts)
    if radial_fn is None:
        positions = dirs * radius
    else:
        positions = dirs * radial_fn(dirs)[:, None]
    return Mesh(positions, np.array(faces, dtype=np.int64))


def ellipsoid(a, b, c, subdiv=3):
    """Axis-aligned ellipsoid with semi-axes (a, b, c)."""

    def radial(dirs):
        return 1.0 / np.sqrt(
            (dirs[:, 0] / a) ** 2 + (dirs[:, 1] / b) ** 2 + (dirs[:, 2] / c) ** 2
        )

    return icosphere_frequency(2 ** subdiv, radial_fn=radial)


def _revolution(stations, segments, bottom_z, top_z):
    """Closed surface of revolution around the z axis.

    ``stations`` is a list of (z, rho) rings with rho > 0, ordered bottom to
    top; apex vertices at ``bottom_z`` / ``top_z`` close the surface.  Ring
    vertices come first (file order = ring order), the two apexes last.
    """
    if len(stations) < 2:
        raise MeshError("need at least two rings to close a revolution surface")
    if segments < 3:
        raise MeshError("segments must be >= 3")
    n_rings = len(stations)
    angles = np.arange(segments) * (2.0 * math.pi / segments)
    cos, sin = np.cos(angles), np.sin(angles)
    verts = np.empty((n_rings * segments + 2, 3))
    for r, (z, rho) in enumerate(stations):
        if rho <= 0:
            raise MeshError("ring radius must be positive")
        sl = slice(r * segments, (r + 1) * segments)
        verts[sl, 0] = rho * cos
        verts[sl, 1] = rho * sin
        verts[sl, 2] = z
    bottom = n_rings * segments
    top = bottom + 1
    verts[bottom] = (0.0, 0.0, bottom_z)
    verts[top] = (0.0, 0.0, top_z)

    faces = []
    idx = np.arange(segments)
    nxt = (idx + 1) % segments
    for r in range(n_rings - 1):
        lo = r * segments
        hi = lo + segments
        # outward orientation: CCW seen from outside
        for k in range(segments):
            faces.append((lo + idx[k], lo + nxt[k], hi + idx[k]))
            faces.append((lo + nxt[k], hi + nxt[k], hi + idx[k]))
    last = (n_rings - 1) * segments
    for k in range(segments):
        faces.append((bottom, nxt[k] + 0, idx[k] + 0))
        faces.append((top, last + idx[k], last + nxt[k]))
    return Mesh(verts, np.array(faces, dtype=np.int64))


def uv_sphere(radius=1.0, segments=24):
    """Latitude/longitude sphere of revolution; every latitude is a vertex
    ring, so equatorial loops exist exactly on the mesh."""
    n_lat = max(3, segments // 2)
    stations = []
    for t in range(1, n_lat):
        theta = math.pi * t / n_lat
        stations.append(
            (-radius * math.cos(theta), radius * math.sin(theta))
        )
    return _revolution(stations, segments, -radius, radius)


def cylinder(radius, height, segments=24):
    """Capped cylinder along z in [0, height], flat fan caps."""
    if radius <= 0 or height <= 0:
        raise MeshError("radius and height must be positive")
    spacing = 2.0 * math.pi * radius / segments
    n_rows = max(2, int(round(height / spacing)) + 1)
    zs = np.linspace(0.0, height, n_rows)
    stations = [(float(z), float(radius)) for z in zs]
    return _revolution(stations, segments, 0.0, height)


def dumbbell(sphere_radius, tube_radius, tube_length, segments=24):
    """Two spheres joined by a coaxial tube; the classic neck benchmark.

    The tube meets each sphere where the sphere's cross-section radius
    equals ``tube_radius``. Analytic areas (see :func:`dumbbell_analytic`)
    follow directly from the construction.
    """
    big_r, r, length = float(sphere_radius), float(tube_radius), float(tube_length)
    if not (0 < r < big_r) or length <= 0:
        raise MeshError("need 0 < tube_radius < sphere_radius and tube_length > 0")
    a = math.sqrt(big_r * big_r - r * r)
    theta_att = math.acos(-a / big_r)  # polar angle of attachment from far pole
    ds = 2.0 * math.pi * big_r / segments
    n_sph = max(3, int(round(theta_att * big_r / ds)))
    n_tube = max(2, int(round(length / ds)))

    stations = []
    zc_bot = -(length / 2.0 + a)
    # bottom sphere, pole (theta=0) to attachment ring (theta=theta_att)
    for t in range(1, n_sph + 1):
        theta = theta_att * t / n_sph
        stations.append(
            (zc_bot - big_r * math.cos(theta), big_r * math.sin(theta))
        )
    for t in range(1, n_tube):
        stations.append((-length / 2.0 + length * t / n_tube, r))
    for t in range(n_sph, 0, -1):
        theta = theta_att * t / n_sph
        stations.append(
            (-zc_bot + big_r * math.cos(theta), big_r * math.sin(theta))
        )
    return _revolution(stations, segments, zc_bot - big_r, -zc_bot + big_r)


def dumbbell_analytic(sphere_radius, tube_radius, tube_length):
    """Smooth-surface reference measures for :func:`dumbbell`."""
    big_r, r, length = float(sphere_radius), float(tube_radius), float(tube_length)
    a = math.sqrt(big_r * big_r - r * r)
    lobe = 2.0 * math.pi * big_r * (big_r + a)  # sphere minus tube-facing cap
    tube = 2.0 * math.pi * r * length
    cut_len = 2.0 * math.pi * r
    min_side_mid = lobe + tube / 2.0
    return {
        "lobe_area": lobe,
        "tube_area": tube,
        "total_area": 2.0 * lobe + tube,
        "cut_length": cut_len,
        "mid_tightness": min_side_mid / cut_len ** 2,
    }


def spiked_ellipsoid(
    radii=(1.0, 0.9, 0.7),
    n_spikes=5,
    spike_length=1.5,
    spike_width=0.15,
    frequency=32,
):
    """Ellipsoid body with finger-like radial protrusions.

    Spike directions fan around +z, evenly spaced in azimuth with slightly
    alternating polar angles (no exact symmetry); each spike is a narrow
    Gaussian radial bump, tall and thin enough to carry a neck at its base.
    Returns (mesh, spike_directions).
    """
    a, b, c = radii
    dirs = []
    for k in range(n_spikes):
        az = 2.0 * math.pi * k / n_spikes
        polar = 0.85 + 0.1 * (k % 2)
        d = np.array(
            [math.sin(polar) * math.cos(az), math.sin(polar) * math.sin(az),
             math.cos(polar)]
        )
        dirs.append(d / np.linalg.norm(d))
    spike_dirs = np.array(dirs)

    def radial(unit):
        base = 1.0 / np.sqrt(
            (unit[:, 0] / a) ** 2 + (unit[:, 1] / b) ** 2 + (unit[:, 2] / c) ** 2
        )
        out = base.copy()
        for d in spike_dirs:
            ang = np.arccos(np.clip(unit @ d, -1.0, 1.0))
            out += spike_length * np.exp(-((ang / spike_width) ** 2))
        return out

    mesh = icosphere_frequency(frequency, radial_fn=radial)
    return mesh, spike_dirs


@dataclass
class SyntheticSpec:
    """Parsed synthetic-mesh request with analytic expectations when known."""

    kind: str
    params: dict
    analytic: dict = field(default_factory=dict)


def parse_spec(text):
    """Parse "kind:arg,arg,..." (e.g. "dumbbell:1,0.2,3" or "icosphere:3")."""
    kind, _, arg_str = text.partition(":")
    kind = kind.strip().lower()
    args = [float(x) for x in arg_str.split(",") if x.strip()] if arg_str else []
    if kind == "icosphere":
        subdiv = int(args[0]) if args else 3
        return SyntheticSpec(
            kind, {"subdiv": subdiv}, {"area": 4.0 * math.pi}
        )
    if kind == "cylinder":
        if len(args) < 2:
            raise MeshError("cylinder needs radius,height[,segments]")
        params = {"radius": args[0], "height": args[1]}
        if len(args) > 2:
            params["segments"] = int(args[2])
        analytic = {
            "lateral_area": 2.0 * math.pi * args[0] * args[1],
            "ring_length": 2.0 * math.pi * args[0],
        }
        return SyntheticSpec(kind, params, analytic)
    if kind == "dumbbell":
        if len(args) < 3:
            raise MeshError(
                "dumbbell needs sphere_radius,tube_radius,tube_length[,segments]"
            )
        params = {
            "sphere_radius": args[0],
            "tube_radius": args[1],
            "tube_length": args[2],
        }
        if len(args) > 3:
            params["segments"] = int(args[3])
        return SyntheticSpec(
            kind, params, dumbbell_analytic(args[0], args[1], args[2])
        )
    if kind == "ellipsoid":
        if len(args) < 3:
            raise MeshError("ellipsoid needs a,b,c[,subdiv]")
        params = {"a": args[0], "b": args[1], "c": args[2]}
        if len(args) > 3:
            params["subdiv"] = int(args[3])
        return SyntheticSpec(kind, params)
    raise MeshError(f"unknown synthetic kind {kind!r}")


def synthesize(spec):
    """Build the mesh described by a :class:`SyntheticSpec` (or spec string)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    builders = {
        "icosphere": icosphere,
        "cylinder": cylinder,
        "dumbbell": dumbbell,
        "ellipsoid": ellipsoid,
    }
    if spec.kind not in builders:
        raise MeshError(f"unknown synthetic kind {spec.kind!r}")
    return builders[spec.kind](**spec.params)
