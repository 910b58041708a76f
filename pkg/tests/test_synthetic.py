import math

import numpy as np
import pytest

from meshneck import synthetic
from meshneck.errors import MeshError
from meshneck.mesh import validate


@pytest.mark.parametrize(
    "spec",
    [
        "icosphere:3",
        "cylinder:1,5",
        "cylinder:1,5,16",
        "dumbbell:1,0.2,3",
        "dumbbell:1,0.2,3,12",
        "ellipsoid:4,1,1,2",
    ],
)
def test_synthesized_meshes_are_genus_zero(spec):
    mesh = synthetic.synthesize(spec)
    rep = validate(mesh)
    assert rep.is_genus_zero, rep.summary()


def test_icosphere_counts_and_area():
    mesh = synthetic.icosphere(3)
    assert mesh.n_faces == 1280
    assert mesh.total_area == pytest.approx(4 * math.pi, rel=0.01)


def test_icosphere_frequency_counts():
    for f in (1, 3, 11):
        mesh = synthetic.icosphere_frequency(f)
        assert mesh.n_faces == 20 * f * f
        assert mesh.n_vertices == 10 * f * f + 2


def test_cylinder_euler_characteristic():
    mesh = synthetic.cylinder(1.0, 5.0)
    rep = validate(mesh)
    assert rep.euler_characteristic == 2
    lateral = 2 * math.pi * 1.0 * 5.0
    assert mesh.total_area == pytest.approx(lateral + 2 * math.pi, rel=0.05)


def test_dumbbell_lobes_near_sphere_area(dumbbell24):
    ana = synthetic.dumbbell_analytic(1.0, 0.2, 3.0)
    centroids = dumbbell24.vertices[dumbbell24.faces].mean(axis=1)
    lower = dumbbell24.face_areas[centroids[:, 2] < -1.5].sum()
    upper = dumbbell24.face_areas[centroids[:, 2] > 1.5].sum()
    for lobe in (lower, upper):
        assert lobe == pytest.approx(ana["lobe_area"], rel=0.02)
        assert lobe == pytest.approx(4 * math.pi, rel=0.05)
    assert dumbbell24.total_area == pytest.approx(ana["total_area"], rel=0.02)


def test_total_area_within_two_percent_of_analytic():
    sphere = synthetic.icosphere(3)
    assert sphere.total_area == pytest.approx(4 * math.pi, rel=0.02)
    ell = synthetic.ellipsoid(2.0, 1.0, 1.0, 3)
    # Thomsen's approximation for ellipsoid surface area
    p = 1.6075
    ap, bp, cp = 2.0 ** p, 1.0 ** p, 1.0 ** p
    approx = 4 * math.pi * ((ap * bp + ap * cp + bp * cp) / 3) ** (1 / p)
    assert ell.total_area == pytest.approx(approx, rel=0.02)


def test_uv_sphere_area():
    mesh = synthetic.uv_sphere(1.0, 32)
    assert validate(mesh).is_genus_zero
    assert mesh.total_area == pytest.approx(4 * math.pi, rel=0.02)


def test_spiked_ellipsoid_valid():
    mesh, dirs = synthetic.spiked_ellipsoid(n_spikes=3, frequency=12)
    assert validate(mesh).is_genus_zero
    assert len(dirs) == 3


def test_generation_deterministic():
    a = synthetic.dumbbell(1.0, 0.2, 3.0, 12)
    b = synthetic.dumbbell(1.0, 0.2, 3.0, 12)
    assert np.array_equal(a.vertices, b.vertices)
    assert np.array_equal(a.faces, b.faces)


def test_parse_spec_errors():
    with pytest.raises(MeshError):
        synthetic.parse_spec("moebius:1")
    with pytest.raises(MeshError):
        synthetic.parse_spec("dumbbell:1")
    with pytest.raises(MeshError):
        synthetic.synthesize("cylinder:1")


def test_bad_parameters_rejected():
    with pytest.raises(MeshError):
        synthetic.cylinder(-1.0, 5.0)
    with pytest.raises(MeshError):
        synthetic.dumbbell(1.0, 1.5, 3.0)  # tube wider than sphere
    with pytest.raises(MeshError):
        synthetic.icosphere(-1)
    with pytest.raises(MeshError):
        synthetic.cylinder(1.0, 5.0, segments=2)
