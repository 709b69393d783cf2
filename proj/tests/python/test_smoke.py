"""Smoke tests for the pyflab bindings: construct the core objects and run
one representative call per exposed area, checking known values."""

import math

import pyflab as fl


def test_geometry_basics():
    p = fl.ParamPoint(0.0, 0.0, 0.5)
    q = fl.ParamPoint(0.3, 0.0, 0.8)
    assert math.isclose(fl.param_distance(p, q), math.sqrt(0.09 + 0.09))
    assert abs(fl.tangency(p, q)) < 1e-12  # internally tangent pair
    assert fl.in_domain(p)
    assert fl.annulus_contains(p, 0.01, fl.RealPoint(0.5, 0.0))
    assert not fl.annulus_contains(p, 0.01, fl.RealPoint(0.0, 0.0))


def test_rect_operations():
    p = fl.ParamPoint(0.0, 0.0, 0.5)
    delta, sigma = 2.0**-8, 2.0**-4
    rect = fl.make_rect(p, fl.RealPoint(0.5, 0.0), delta, sigma)
    assert fl.rect_contains(rect, fl.RealPoint(0.5, 0.0))
    assert fl.rect_subset(rect, fl.rect_dilate(rect, 2.0))
    assert fl.comparable(rect, rect, 1.0)
    assert math.isclose(fl.intersection_scale(0.0, 0.0, delta), 1.0)


def test_intersection_cover():
    p = fl.ParamPoint(0.0, 0.0, 0.6)
    q = fl.ParamPoint(0.22, 0.08, 0.8)
    cover = fl.intersection_cover(p, q, 2.0**-6)
    assert 0 < len(cover) <= fl.constants.k_cover


def test_dyadic_and_fractal():
    delta = fl.Scale(6)
    points = fl.gen_cantor_params(0.5, delta, 7)
    assert len(points) >= 1
    assert fl.covering_count(points, delta) == fl.oracle_covering_count(
        points, delta
    )
    report = fl.check_delta_s_set(points, delta, 0.5, 16.0)
    assert report.is_set

    uniform = fl.uniformize(points, 2, 2)
    assert 0 < len(uniform) <= len(points)

    line_image = fl.invert_line(1.0, 0.0, 0.5)  # the line x = 1/2
    assert math.isclose(line_image.x1, 1.0)
    assert math.isclose(line_image.x2, 0.0)
    assert math.isclose(line_image.r, 1.0)


def test_tangency_lab():
    fam = fl.gen_example_ex1(fl.Scale(8), fl.Scale(4))
    n = len(fam.W)
    assert len(fam.rects) == n * n
    kept = fl.max_incomparable_subset(fam.rects, fl.constants.ex1_incomparability)
    assert len(kept.rects) >= 1
    assert math.isclose(fl.wolff_rhs(64, 64, 1, 1, fl.Scale(8), 0.0), 640.0)
