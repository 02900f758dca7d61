import pytest

from polygauss.classify import (
    DEFAULT_NS,
    FUNDAMENTAL_TETRAHEDRON,
    _decode_key,
    _enumerate,
    enumerate_minimal_tetrahedra,
    gauss_relation_test,
    routes_agree,
    run_theorem2_experiment,
)
from polygauss.errors import MalformedInput, VolumeNotMinimal
from polygauss.weyl import canonical_form
from tests.conftest import SECOND_TILE_TET, STD_SIMPLEX
from tests.test_weyl import FT_CANONICAL, SECOND_CANONICAL


@pytest.fixture(scope="module")
def report_b1():
    return run_theorem2_experiment(1)


def test_enumeration_counts_bound_one():
    scanned, orbits = _enumerate(1)
    assert scanned == 1160
    assert len(orbits) == 21
    keys = [k for k, _ in orbits]
    assert len(set(keys)) == 21


def test_enumeration_contains_known_orbits():
    orbits = set()
    for rep in enumerate_minimal_tetrahedra(1):
        orbits.add(canonical_form(rep))
    assert len(orbits) == 21
    assert canonical_form(FUNDAMENTAL_TETRAHEDRON) in orbits
    assert canonical_form(STD_SIMPLEX) in orbits
    assert canonical_form(SECOND_TILE_TET) in orbits


def test_enumeration_reps_are_minimal_and_in_range():
    for rep in enumerate_minimal_tetrahedra(1):
        assert len(rep) == 4
        assert all(-1 <= c <= 1 for v in rep for c in v)
        # volume check: determinant of edge vectors is +-1
        a, b, c = (
            tuple(x - y for x, y in zip(rep[k], rep[0])) for k in (1, 2, 3)
        )
        det = (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
        assert abs(det) == 1


def test_packed_key_decodes_to_canonical_form():
    _, orbits = _enumerate(1)
    for key, rep in orbits:
        assert _decode_key(key, 1) == canonical_form(rep)


def test_enumeration_bound_validation():
    with pytest.raises(MalformedInput):
        _enumerate(0)
    with pytest.raises(MalformedInput):
        _enumerate(10)
    with pytest.raises(MalformedInput):
        list(enumerate_minimal_tetrahedra(-3))


def test_relation_test_accepts_reference_tetrahedron():
    res = gauss_relation_test(FUNDAMENTAL_TETRAHEDRON)
    assert res.passed
    assert set(res.residuals) == set(DEFAULT_NS)
    assert max(res.residuals.values()) < 1e-12


def test_relation_test_accepts_second_tiler():
    res = gauss_relation_test(SECOND_TILE_TET, ns=range(1, 9))
    assert res.passed
    assert max(res.residuals.values()) < 1e-12


def test_relation_test_rejects_standard_simplex():
    res = gauss_relation_test(STD_SIMPLEX)
    assert not res.passed
    assert res.residuals[3] > 1.2
    assert res.residuals[1] < 0.05


def test_relation_test_routes_match():
    for tetra in (FUNDAMENTAL_TETRAHEDRON, STD_SIMPLEX, SECOND_TILE_TET):
        a = gauss_relation_test(tetra, route="direct")
        b = gauss_relation_test(tetra, route="tetra")
        assert a.passed == b.passed
        for n in DEFAULT_NS:
            assert a.residuals[n] == pytest.approx(b.residuals[n], abs=1e-9)


def test_relation_test_input_validation():
    with pytest.raises(MalformedInput):
        gauss_relation_test(FUNDAMENTAL_TETRAHEDRON, route="nope")
    with pytest.raises(VolumeNotMinimal):
        gauss_relation_test(
            [(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1)], route="tetra"
        )


def test_routes_agree_on_all_orbits_bound_one():
    for rep in enumerate_minimal_tetrahedra(1):
        assert routes_agree(rep)


def test_classification_bound_one(report_b1):
    rep = report_b1
    assert rep.bound == 1
    assert rep.ns == (1, 2, 3, 4)
    assert rep.candidates_scanned == 1160
    assert rep.distinct_orbits == 21
    assert len(rep.orbit_outcomes) == 21
    assert len(rep.passing_orbits) == 2
    got = {o.canonical for o in rep.passing_orbits}
    assert got == {FT_CANONICAL, SECOND_CANONICAL}
    # a second equivalence class passes every relation, so the search
    # refutes the single-orbit expectation rather than confirming it
    assert rep.theorem_confirmed is False
    assert rep.min_rejection_residual == pytest.approx(0.5767897808416121, abs=1e-9)
    assert rep.pure_weyl_match is True


def test_classification_passer_residuals_are_tiny(report_b1):
    for o in report_b1.passing_orbits:
        assert max(o.residuals.values()) < 1e-12
        assert o.passed


def test_classification_report_to_dict(report_b1):
    d = report_b1.to_dict()
    assert d["candidates_scanned"] == 1160
    assert d["distinct_orbits"] == 21
    assert len(d["passing_orbits"]) == 2
    entry = d["passing_orbits"][0]
    assert set(entry) == {"canonical", "representative", "residuals"}
    assert sorted(entry["residuals"]) == ["1", "2", "3", "4"]
    assert "orbit_outcomes" not in d
    assert d["theorem_confirmed"] is False


def test_classification_tetra_route_matches(report_b1):
    via_formula = run_theorem2_experiment(1, route="tetra")
    assert {o.canonical for o in via_formula.passing_orbits} == {
        o.canonical for o in report_b1.passing_orbits
    }
    assert via_formula.candidates_scanned == report_b1.candidates_scanned


def test_classification_workers_equivalent(report_b1):
    par = run_theorem2_experiment(1, workers=2)
    assert {o.canonical for o in par.passing_orbits} == {
        o.canonical for o in report_b1.passing_orbits
    }
    assert par.min_rejection_residual == report_b1.min_rejection_residual


def test_classification_restricted_ns_admits_more_orbits(report_b1):
    # with only n = 1, 2 the relations are much weaker
    weak = run_theorem2_experiment(1, ns=(1, 2))
    assert len(weak.passing_orbits) >= len(report_b1.passing_orbits)
    strong_passers = {o.canonical for o in report_b1.passing_orbits}
    assert strong_passers <= {o.canonical for o in weak.passing_orbits}


def test_classification_bad_bound():
    with pytest.raises(MalformedInput):
        run_theorem2_experiment(0)
