import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polygauss.errors import (
    DegenerateInput,
    DegenerateTetrahedron,
    MalformedInput,
    VolumeNotMinimal,
)
from polygauss.gauss import gauss_sum_closed
from polygauss.geometry import RationalVector, build_polytope, translate
from polygauss.polysum import (
    closed_form_residual,
    closed_form_value,
    kappa,
    polyhedral_gauss_sum_direct,
    polyhedral_gauss_sum_folded,
    tetra_gauss_sum_formula,
)
from polygauss.weyl import weyl_elements
from tests.conftest import FUND_TET, SECOND_TILE_TET, STD_SIMPLEX, make

SQ3 = math.sqrt(3)


def test_interval_recovers_classical_sum(unit_interval):
    # [0,1] multi-tiles with multiplicity 2, volume 1: G_P(n) = G(n)
    for n in range(1, 13):
        rep = polyhedral_gauss_sum_direct(unit_interval, n)
        assert abs(rep.value - gauss_sum_closed(n)) < 1e-12
        assert abs(rep.residual) < 1e-12
        assert rep.point_count == n + 1


def test_reference_tetrahedron_closed_form(fund_tet):
    # vol 1/6 and multiplicity-8 tiling: G_P(n) = G(n)^3 / 6
    for n, want in [
        (1, 1 / 6),
        (2, 0),
        (3, -1j * SQ3 / 2),
        (4, -8 / 3 + 8j / 3),
        (5, 5 * math.sqrt(5) / 6),
    ]:
        rep = polyhedral_gauss_sum_direct(fund_tet, n)
        assert cmath.isclose(rep.value, want, abs_tol=1e-12)
        assert abs(rep.residual) < 1e-12


def test_unit_cube_closed_form(unit_cube, unit_square):
    for P, d in ((unit_cube, 3), (unit_square, 2)):
        for n in range(1, 7):
            rep = polyhedral_gauss_sum_direct(P, n)
            assert abs(rep.value - gauss_sum_closed(n) ** d) < 1e-12


def test_point_counts(fund_tet, unit_cube):
    assert polyhedral_gauss_sum_direct(fund_tet, 1).point_count == 4
    assert polyhedral_gauss_sum_direct(fund_tet, 2).point_count == 10
    assert polyhedral_gauss_sum_direct(unit_cube, 1).point_count == 8
    assert polyhedral_gauss_sum_direct(unit_cube, 2).point_count == 27


def test_standard_simplex_fails_closed_form(std_simplex):
    # volume 1/6 but not a multi-tiler; pinned values of the direct sum
    pins = {
        1: (0.20613008597704457, 0.03946341931037792),
        2: (-0.08773982804591085, 0.08773982804591085),
        3: (-1.25 - 0.7900404837730006j, 1.2523073536752656),
        4: (-2.5 + 3.5j, 0.8498365855987982),
    }
    for n, (value, res) in pins.items():
        rep = polyhedral_gauss_sum_direct(std_simplex, n)
        assert cmath.isclose(rep.value, value, abs_tol=1e-12)
        assert abs(rep.residual) == pytest.approx(res, abs=1e-12)
    # the n=4 residual is exactly 1/6 + 5i/6
    r4 = closed_form_residual(std_simplex, 4)
    assert cmath.isclose(r4, complex(1 / 6, 5 / 6), abs_tol=1e-12)
    failing = {
        n
        for n in range(1, 5)
        if abs(polyhedral_gauss_sum_direct(std_simplex, n).residual) > 0.1
    }
    assert failing == {3, 4}


def test_folded_route_matches_direct(fund_tet, std_simplex, unit_cube, unit_triangle):
    for P in (fund_tet, std_simplex, unit_cube, unit_triangle):
        for n in range(1, 7):
            a = polyhedral_gauss_sum_direct(P, n)
            b = polyhedral_gauss_sum_folded(P, n)
            assert abs(a.value - b.value) < 1e-10
            assert a.route != b.route


def test_formula_route_matches_direct(second_tile_tet):
    for pts in (FUND_TET, STD_SIMPLEX, SECOND_TILE_TET):
        P = make(pts)
        for n in range(1, 9):
            a = polyhedral_gauss_sum_direct(P, n)
            b = tetra_gauss_sum_formula(pts, n)
            assert abs(a.value - b.value) < 1e-10, (pts, n)


def test_kappa_vanishes_for_small_dilations():
    # no positive compositions of 1 or 2 into 3 or 4 parts
    for pts in (FUND_TET, STD_SIMPLEX, SECOND_TILE_TET):
        assert kappa(pts, 1) == 0
        assert kappa(pts, 2) == 0


def test_kappa_pinned_values():
    assert cmath.isclose(
        kappa(FUND_TET, 3), complex(0.5, -SQ3 / 2), abs_tol=1e-12
    )
    assert cmath.isclose(
        kappa(SECOND_TILE_TET, 3), complex(-0.25, -3 * SQ3 / 4), abs_tol=1e-12
    )
    assert cmath.isclose(kappa(FUND_TET, 4), complex(-3, 2), abs_tol=1e-12)
    # all squared edge lengths even except the three at one vertex
    parity_tet = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 2, 1))
    assert cmath.isclose(kappa(parity_tet, 4), complex(-3, 2), abs_tol=1e-12)


def test_report_to_dict(fund_tet):
    rep = polyhedral_gauss_sum_direct(fund_tet, 3)
    d = rep.to_dict()
    assert set(d) == {
        "n",
        "re",
        "im",
        "route",
        "point_count",
        "residual_re",
        "residual_im",
    }
    assert d["n"] == 3
    assert d["re"] == rep.re and d["im"] == rep.im
    assert d["point_count"] == rep.point_count


def test_closed_form_value(fund_tet, unit_cube):
    assert closed_form_value(fund_tet, 3) == pytest.approx(
        (1j * SQ3) ** 3 / 6, abs=1e-12
    )
    assert closed_form_value(unit_cube, 4) == (2 + 2j) ** 3


def test_rejects_non_lattice_polytope():
    P = build_polytope([("0", "0"), ("1/2", "0"), ("0", "1/2")])
    with pytest.raises(MalformedInput):
        polyhedral_gauss_sum_direct(P, 1)
    with pytest.raises(MalformedInput):
        polyhedral_gauss_sum_folded(P, 1)


def test_rejects_bad_dilation(fund_tet):
    for n in (0, -2):
        with pytest.raises(MalformedInput):
            polyhedral_gauss_sum_direct(fund_tet, n)
        with pytest.raises(MalformedInput):
            polyhedral_gauss_sum_folded(fund_tet, n)
        with pytest.raises(MalformedInput):
            tetra_gauss_sum_formula(FUND_TET, n)


def test_formula_route_input_errors():
    with pytest.raises(DegenerateTetrahedron):
        tetra_gauss_sum_formula([(0, 0, 0), (1, 0, 0), (2, 0, 0), (1, 1, 0)], 2)
    with pytest.raises(DegenerateTetrahedron):
        tetra_gauss_sum_formula([(0, 0, 0), (1, 0, 0), (0, 1, 0)], 2)
    with pytest.raises(VolumeNotMinimal):
        tetra_gauss_sum_formula([(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1)], 2)
    with pytest.raises(MalformedInput):
        tetra_gauss_sum_formula(
            [("0", "0", "0"), ("1/2", "0", "0"), ("0", "1", "0"), ("0", "0", "1")], 2
        )


def test_invariance_under_lattice_symmetries(fund_tet):
    # the sum is unchanged by signed permutations and integer translations
    w = weyl_elements(3)[17]
    moved = make([w.apply(v) for v in fund_tet.vertices])
    shifted = translate(fund_tet, RationalVector((2, -3, 1)))
    for n in (1, 2, 3, 4):
        base = polyhedral_gauss_sum_direct(fund_tet, n).value
        assert abs(polyhedral_gauss_sum_direct(moved, n).value - base) < 1e-11
        assert abs(polyhedral_gauss_sum_direct(shifted, n).value - base) < 1e-11


coord2 = st.integers(min_value=-2, max_value=3)


@given(
    pts=st.lists(st.tuples(coord2, coord2), min_size=3, max_size=5),
    n=st.integers(1, 5),
)
def test_folded_equals_direct_property(pts, n):
    try:
        P = build_polytope(pts)
    except DegenerateInput:
        return
    a = polyhedral_gauss_sum_direct(P, n)
    b = polyhedral_gauss_sum_folded(P, n)
    assert abs(a.value - b.value) < 1e-10
