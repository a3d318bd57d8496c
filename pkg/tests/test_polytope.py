import random
from fractions import Fraction

import pytest

from gcfloer.polytope import (
    BASIC,
    STRENGTHENED,
    DegenerateParametersError,
    WoodwardParams,
    build_cut_polytope,
    build_orbit_polytope,
    classify_point,
    facet_interior_contains,
    format_polytope,
    hpolytope,
    validate_params,
    vertices,
)

from conftest import random_strengthened_params

F = Fraction


def cube():
    return hpolytope(
        [
            ((1, 0, 0), 0), ((-1, 0, 0), 1),
            ((0, 1, 0), 0), ((0, -1, 0), 1),
            ((0, 0, 1), 0), ((0, 0, -1), 1),
        ]
    )


# independent facet functions for the cut polytope, straight transcription
def cut_facet_values(p, u):
    u1, u2, u3 = u
    return (
        u2 - p.lam3,
        -u2 + p.lam2,
        u1 - u3,
        u3 - u2,
        u1 - p.lam2,
        -u1 - p.n * u2 + p.r + p.n * p.lam3,
    )


def test_validate_fixture_strengthened(fixture_params):
    assert validate_params(fixture_params, STRENGTHENED) == []


def test_validate_r_out_of_range():
    p = WoodwardParams(3, 5, 4, 0, -1)
    assert "r-between-lambda2-lambda1" in validate_params(p, BASIC)


def test_validate_ratio_bound():
    p = WoodwardParams(3, 3, 10, 0, -1)
    violations = validate_params(p, STRENGTHENED)
    assert "cut-ratio-below-1/(n+1)" in violations


def test_orbit_polytope_facets_and_interior():
    poly = build_orbit_polytope(10, 0, -1)
    assert len(poly.facets) == 6
    point = (F(5), F(-1, 2), F(2))
    values = poly.facet_values(point)
    # independent check: every interlacing inequality strictly satisfied
    u1, u2, u3 = point
    expected = (10 - u1, u1 - 0, 0 - u2, u2 + 1, u1 - u3, u3 - u2)
    assert values == expected
    assert classify_point(poly, point).is_interior


def test_orbit_polytope_singular_vertex_faces():
    poly = build_orbit_polytope(10, 0, -1)
    cls = classify_point(poly, (0, 0, 0))
    assert cls.kind == "on-faces"
    assert cls.on_facets == (1, 2, 4, 5)
    assert poly.distinguished == (0, 0, 0)


def test_orbit_polytope_rejects_equal_lambdas():
    with pytest.raises(DegenerateParametersError):
        build_orbit_polytope(1, 0, 0)


def test_cut_polytope_normals(fixture_params, cut_polytope):
    normals = tuple(n for n, _ in cut_polytope.facets)
    assert normals == (
        (0, 1, 0), (0, -1, 0), (1, 0, -1), (0, -1, 1), (1, 0, 0), (-1, -3, 0),
    )


def test_cut_polytope_interior_point(fixture_params, cut_polytope):
    u0 = (F(13, 6), F(-1, 2), F(5, 6))
    assert cut_polytope.facet_values(u0) == cut_facet_values(fixture_params, u0)
    assert cut_polytope.facet_values(u0) == (
        F(1, 2), F(1, 2), F(4, 3), F(4, 3), F(13, 6), F(4, 3),
    )
    assert classify_point(cut_polytope, u0).is_interior


def test_cut_polytope_singular_vertex(cut_polytope):
    cls = classify_point(cut_polytope, (0, 0, 0))
    assert cls.kind == "on-faces"
    # right, top, bottom and front all vanish there (u1 = u2 = u3 = lam2)
    assert cls.on_facets == (1, 2, 3, 4)


def test_cut_polytope_far_point_outside(cut_polytope):
    assert classify_point(cut_polytope, (100, 0, 0)).kind == "outside"


def test_cut_polytope_requires_basic_validity():
    with pytest.raises(DegenerateParametersError):
        build_cut_polytope(WoodwardParams(2, 5, 10, 0, -1))


def test_classify_cube_cases():
    c = cube()
    assert classify_point(c, (F(1, 2), F(1, 2), F(1, 2))).is_interior
    on = classify_point(c, (0, F(1, 2), F(1, 2)))
    assert on.kind == "on-faces" and on.on_facets == (0,)
    assert classify_point(c, (2, 0, 0)).kind == "outside"


def test_facet_interior_contains_cut_top(cut_polytope):
    assert facet_interior_contains(cut_polytope, 2, (1, F(-1, 2), 1))
    assert not facet_interior_contains(cut_polytope, 2, (0, 0, 0))


def test_facet_interior_rejects_cube_corner():
    assert not facet_interior_contains(cube(), 0, (0, 0, 0))


def test_cut_equals_orbit_with_facet_swap(fixture_params):
    orbit = build_orbit_polytope(
        fixture_params.lam1, fixture_params.lam2, fixture_params.lam3
    )
    cut = build_cut_polytope(fixture_params)
    orbit_facets = set(orbit.facets)
    cut_facets = set(cut.facets)
    removed = orbit_facets - cut_facets
    added = cut_facets - orbit_facets
    assert removed == {((-1, 0, 0), F(10))}  # lam1 - u1 >= 0
    assert added == {((-1, -3, 0), F(2))}    # the cut facet
    assert len(orbit_facets & cut_facets) == 5


def test_unbounded_set_rejected():
    with pytest.raises(DegenerateParametersError):
        hpolytope([((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0)])


def test_vertices_of_cube():
    vs = vertices(cube())
    assert len(vs) == 8
    assert (F(0), F(0), F(0)) in vs and (F(1), F(1), F(1)) in vs


def test_boundedness_of_random_cut_polytopes():
    rng = random.Random(3)
    for _ in range(10):
        p = random_strengthened_params(rng)
        poly = build_cut_polytope(p)
        assert len(vertices(poly)) >= 4


def test_interior_stability_under_small_perturbation(cut_polytope):
    u0 = (F(13, 6), F(-1, 2), F(5, 6))
    values = cut_polytope.facet_values(u0)
    max_norm1 = max(sum(abs(c) for c in n) for n, _ in cut_polytope.facets)
    delta = min(values) / max_norm1 / 2
    for sign in (-1, 1):
        for axis in range(3):
            moved = list(u0)
            moved[axis] += sign * delta
            assert classify_point(cut_polytope, moved).is_interior


def test_normals_stored_primitive():
    poly = hpolytope([((2, 0, 0), 4), ((-2, 0, 0), 4),
                      ((0, 2, 0), 4), ((0, -2, 0), 4),
                      ((0, 0, 2), 4), ((0, 0, -2), 4)])
    assert all(n in {(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0),
                     (0, 0, 1), (0, 0, -1)} for n, _ in poly.facets)
    assert all(offset == 2 for _, offset in poly.facets)


def test_format_polytope_mentions_offsets(cut_polytope):
    text = format_polytope(cut_polytope)
    assert "F6-back" in text and "offset 2" in text
