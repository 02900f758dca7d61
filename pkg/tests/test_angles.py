import math
import random
from fractions import Fraction

import numpy as np
import pytest

from polygauss.angles import (
    dihedral_angle,
    external_solid_angle,
    face_angle,
    simplicial_cone_solid_angle,
    solid_angle,
    tetrahedron_angles,
)
from polygauss.errors import (
    DegenerateCone,
    DegenerateTetrahedron,
    NotAnEdge,
    UnsupportedDimension,
)
from polygauss.geometry import RationalVector
from tests.conftest import FUND_TET, SECOND_TILE_TET

ORIGIN = RationalVector((0, 0, 0))


def test_octant_is_exactly_one_eighth():
    got = simplicial_cone_solid_angle(ORIGIN, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert got == 0.125


def test_obtuse_wedge():
    # 135 degree wedge in the xz-plane crossed with the ray y >= 0:
    # (3/8) * (1/2) of the sphere
    got = simplicial_cone_solid_angle(ORIGIN, [(1, 0, 0), (-1, 0, 1), (0, 1, 0)])
    assert got == pytest.approx(3 / 16, abs=1e-15)


def _monte_carlo_cone(generators, n_samples=200_000, seed=7):
    """Fraction of uniformly random directions lying in the cone, plus the
    binomial standard error.  Solves for barycentric cone coordinates."""
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((n_samples, 3))
    M = np.array(generators, dtype=float).T
    coeffs = np.linalg.solve(M, dirs.T).T
    inside = np.all(coeffs >= 0.0, axis=1)
    p = inside.mean()
    se = math.sqrt(max(p * (1 - p), 1e-12) / n_samples)
    return p, se


@pytest.mark.parametrize(
    "gens",
    [
        [(1, 0, 0), (1, 1, 0), (1, 1, 1)],
        [(1, 0, 0), (0, 1, 0), (-1, -1, 1)],
        [(2, 1, 0), (0, 3, 1), (1, -1, 4)],
    ],
)
def test_cone_angle_against_monte_carlo(gens):
    exact = simplicial_cone_solid_angle(ORIGIN, gens)
    est, se = _monte_carlo_cone(gens)
    assert abs(est - exact) < 3 * se + 1e-4


def test_cone_angle_translation_invariant():
    apex = RationalVector((3, -2, 5))
    shifted = [RationalVector(g) + apex for g in ((1, 0, 0), (1, 1, 0), (1, 1, 1))]
    assert simplicial_cone_solid_angle(apex, shifted) == pytest.approx(
        simplicial_cone_solid_angle(ORIGIN, [(1, 0, 0), (1, 1, 0), (1, 1, 1)]),
        abs=1e-15,
    )


def test_cone_errors():
    with pytest.raises(DegenerateCone):
        simplicial_cone_solid_angle(ORIGIN, [(1, 0, 0), (0, 1, 0)])
    with pytest.raises(DegenerateCone):
        simplicial_cone_solid_angle(ORIGIN, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    with pytest.raises(UnsupportedDimension):
        simplicial_cone_solid_angle(RationalVector((0, 0)), [(1, 0), (0, 1), (1, 1)])


def test_reference_tetrahedron_angle_table():
    T = tetrahedron_angles(FUND_TET)
    assert T.volume == Fraction(1, 6)
    expect_dihedral = {
        (0, 1): 0.125,
        (0, 2): 0.25,
        (0, 3): 1 / 6,
        (1, 2): 0.25,
        (1, 3): 0.25,
        (2, 3): 0.125,
    }
    for key, val in expect_dihedral.items():
        assert T.dihedral[key] == pytest.approx(val, abs=1e-12)
    expect_solid = (1 / 48, 1 / 16, 1 / 16, 1 / 48)
    for got, val in zip(T.solid, expect_solid):
        assert got == pytest.approx(val, abs=1e-12)
    assert sum(T.solid) == pytest.approx(1 / 6, abs=1e-12)
    assert sum(T.dihedral.values()) == pytest.approx(7 / 6, abs=1e-12)
    assert T.sq_lengths == {
        (0, 1): 1,
        (0, 2): 2,
        (0, 3): 3,
        (1, 2): 1,
        (1, 3): 2,
        (2, 3): 1,
    }


def test_second_tiler_angle_table():
    T = tetrahedron_angles(SECOND_TILE_TET)
    assert T.dihedral[(0, 1)] == pytest.approx(3 / 8, abs=1e-12)
    assert T.dihedral[(0, 2)] == pytest.approx(1 / 8, abs=1e-12)
    assert T.dihedral[(0, 3)] == pytest.approx(1 / 6, abs=1e-12)
    assert T.dihedral[(2, 3)] == pytest.approx(1 / 4, abs=1e-12)
    assert T.dihedral[(1, 2)] + T.dihedral[(1, 3)] == pytest.approx(1 / 4, abs=1e-12)
    assert sorted(T.sq_lengths.values()) == [1, 1, 2, 2, 3, 6]


def test_angle_sum_identity_random_tetrahedra():
    # sum of dihedrals = 1 + sum of solids, and the per-vertex relation
    # w_i = (1/2) sum_j w_ij - 1/4, checked on seeded integer tetrahedra
    rng = random.Random(11)
    checked = 0
    while checked < 100:
        pts = [tuple(rng.randint(-5, 5) for _ in range(3)) for _ in range(4)]
        try:
            T = tetrahedron_angles(pts)
        except DegenerateTetrahedron:
            continue
        checked += 1
        assert max(T.gram_residuals()) < 1e-9
        assert max(T.external_residuals().values()) < 1e-9
        assert sum(T.dihedral.values()) == pytest.approx(
            1 + sum(T.solid), abs=1e-9
        )


def test_external_angle_matches_table():
    T = tetrahedron_angles(FUND_TET)
    for (i, j), val in T.external.items():
        assert external_solid_angle(FUND_TET, i, j) == pytest.approx(val, abs=1e-15)
    with pytest.raises(DegenerateCone):
        external_solid_angle(FUND_TET, 2, 2)


def test_degenerate_tetrahedron_rejected():
    with pytest.raises(DegenerateTetrahedron):
        tetrahedron_angles([(0, 0, 0), (1, 0, 0), (2, 0, 0), (1, 1, 0)])
    with pytest.raises(DegenerateTetrahedron):
        tetrahedron_angles([(0, 0, 0), (1, 0, 0), (0, 1, 0)])


def test_face_angles_cube(unit_cube):
    by_dim = {}
    for i, f in enumerate(unit_cube.faces):
        by_dim.setdefault(f.dim, face_angle(unit_cube, i))
    assert by_dim == {0: 0.125, 1: 0.25, 2: 0.5, 3: 1.0}


def test_face_angles_triangle(unit_triangle):
    vals = sorted(
        face_angle(unit_triangle, i)
        for i, f in enumerate(unit_triangle.faces)
        if f.dim == 0
    )
    assert vals == pytest.approx([0.125, 0.125, 0.25], abs=1e-12)


def test_face_angles_interval(unit_interval):
    vals = [
        face_angle(unit_interval, i)
        for i, f in enumerate(unit_interval.faces)
        if f.dim == 0
    ]
    assert vals == [0.5, 0.5]


def test_dihedral_angle_requires_edge(unit_cube):
    vertex_id = next(i for i, f in enumerate(unit_cube.faces) if f.dim == 0)
    with pytest.raises(NotAnEdge):
        dihedral_angle(unit_cube, vertex_id)
    edge = unit_cube.edges()[0]
    assert dihedral_angle(unit_cube, edge) == pytest.approx(0.25, abs=1e-15)


def test_solid_angle_of_point(fund_tet):
    assert solid_angle(fund_tet, RationalVector(("1/2", "1/4", "1/8"))) == 1.0
    assert solid_angle(fund_tet, RationalVector((5, 5, 5))) == 0.0
    at_apex = solid_angle(fund_tet, RationalVector((0, 0, 0)))
    assert at_apex == pytest.approx(1 / 48, abs=1e-12)
