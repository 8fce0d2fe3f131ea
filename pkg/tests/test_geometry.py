import cmath
import math

from ptspec.geometry import (ModelSpec, TraceError, path_crosses_cut,
                             quartic_turning_points, seed_directions,
                             trace_matching_path, trace_stokes_line,
                             turning_points, wedge_angles)
from ptspec.special import recip_gamma

PI = math.pi


def test_wedge_angles_examples():
    left, right, width = wedge_angles(2.0)
    assert abs(left + PI) < 1e-14
    assert abs(right) < 1e-14
    assert abs(width - PI / 2) < 1e-14
    left, right, width = wedge_angles(1.0)
    assert abs(left + 7 * PI / 6) < 1e-14
    assert abs(right - PI / 6) < 1e-14
    assert abs(width - 2 * PI / 3) < 1e-14
    left, right, _ = wedge_angles(1e7)
    assert abs(left + PI / 2) < 1e-6
    assert abs(right + PI / 2) < 1e-6


def test_wedge_width_relation():
    for p in (1.1, 1.5, 2.0, 3.3, 7.0):
        left, right, width = wedge_angles(p)
        assert abs((right - left) - 4 * PI / (p + 2)) < 1e-13
        assert abs((right - left) - 2 * width) < 1e-13


def test_turning_points_examples():
    za, zb = turning_points(2.0)
    assert abs(za + 1.0) < 1e-14 and abs(zb - 1.0) < 1e-14
    za, zb = turning_points(1.0)
    assert abs(za - 1j) < 1e-14 and abs(zb - 1j) < 1e-14
    za, zb = turning_points(3.0)
    assert abs(za - cmath.exp(-5j * PI / 6)) < 1e-14
    assert abs(zb - cmath.exp(-1j * PI / 6)) < 1e-14


def test_turning_points_are_roots_and_pt_symmetric():
    for p in (1.2, 1.7, 2.0, 2.6, 3.0, 4.5):
        model = ModelSpec.power_law(p)
        za, zb = turning_points(p)
        assert abs(model.q(za)) < 1e-12
        assert abs(model.q(zb)) < 1e-12
        assert abs(zb + za.conjugate()) < 1e-13


def test_quartic_roots_a0():
    roots = quartic_turning_points(0.0)
    assert abs(roots.z_a - 1.0) < 1e-12
    assert abs(roots.z_b + 1.0) < 1e-12
    assert abs(roots.z_c + 1j) < 1e-12
    assert abs(roots.z_d - 1j) < 1e-12


def test_quartic_roots_properties():
    for a in (0.0, 0.5, 1.0, 1.5, 2.5):
        roots = quartic_turning_points(a)
        for r in roots.all:
            assert abs(r ** 4 + 1j * a * r - 1.0) <= 1e-12
        # imaginary-axis pair, z_c below
        assert abs(roots.z_c.real) < 1e-10 and abs(roots.z_d.real) < 1e-10
        assert roots.z_c.imag < 0 < roots.z_d.imag
        assert abs(roots.z_a.imag - roots.z_b.imag) < 1e-10
        # closed under z -> -conj(z)
        for r in roots.all:
            assert min(abs(-r.conjugate() - s) for s in roots.all) < 1e-10


def test_path_crosses_cut_basics():
    model = ModelSpec.power_law(1.5)
    assert not path_crosses_cut([-2 - 0.1j, 2 - 0.1j], model)
    assert path_crosses_cut([cmath.exp(3j * PI / 4), cmath.exp(1j * PI / 4)], model)


def test_straight_segment_between_turning_points_vs_cut():
    # The chord z_A -> z_B passes above the origin exactly when p < 2.
    for p in (1.1, 1.3, 1.5, 1.7, 1.9):
        model = ModelSpec.power_law(p)
        assert path_crosses_cut(list(turning_points(p)), model)
    for p in (2.1, 2.5, 3.0, 4.0, 5.0):
        model = ModelSpec.power_law(p)
        assert not path_crosses_cut(list(turning_points(p)), model)


def test_seed_directions_turning_point():
    model = ModelSpec.power_law(3.0)
    _, zb = turning_points(3.0)
    dirs = seed_directions(zb, model)
    assert len(dirs) == 3
    gaps = sorted((dirs[1] - dirs[0], dirs[2] - dirs[1],
                   2 * PI - (dirs[2] - dirs[0])))
    for g in gaps:
        assert abs(g - 2 * PI / 3) < 0.05


def test_seed_directions_branch_point():
    model = ModelSpec.power_law(1.3)
    dirs = seed_directions(0j, model)
    assert len(dirs) == 1
    assert abs(dirs[0] - 3 * PI / 2) < 0.02


def test_integer_p_origin_line_has_zero_weight():
    # The tracer finds an equal-phase line from z = 0 at p = 2, but the
    # attached switching weight 1/Gamma(-2) vanishes.
    model = ModelSpec.power_law(2.0)
    dirs = seed_directions(0j, model)
    assert len(dirs) >= 1
    assert recip_gamma(-2.0) == 0.0


def test_trace_real_axis_line_p2():
    model = ModelSpec.power_law(2.0)
    dirs = seed_directions(1.0 + 0j, model)
    best = min(dirs, key=lambda t: min(abs(t), 2 * PI - t))
    trace = trace_stokes_line(1.0 + 0j, model, best, max_arclen=12.0)
    assert trace.terminated == "escape"
    assert max(abs(z.imag) for z in trace.points) <= 1e-8
    assert max(trace.residuals) <= 1e-8


def test_trace_invariants_and_escape_p3():
    model = ModelSpec.power_law(3.0)
    za, zb = turning_points(3.0)
    escape_angles = []
    for origin in (za, zb):
        for d in seed_directions(origin, model):
            trace = trace_stokes_line(origin, model, d, max_arclen=25.0)
            assert trace.terminated == "escape"
            assert max(trace.residuals) <= 1e-8
            re = trace.re_chi
            assert all(re[i] >= -1e-10 for i in range(len(re)))
            assert all(re[i + 1] >= re[i] - 1e-12 for i in range(len(re) - 1))
            escape_angles.append(cmath.phase(trace.points[-1]))
    # three lines per point, mirrored left/right
    assert len(escape_angles) == 6
    expected = (0.699, -0.899, -0.501, 0.301, -0.499, -0.101)
    for got, want in zip(escape_angles, expected):
        assert abs(got / PI - want) < 0.02


def test_branch_point_line_crosses_continuation_region():
    # p = 1.3: the z = 0 Stokes line runs down the negative imaginary axis,
    # through any contour connecting the wedges below the turning points.
    model = ModelSpec.power_law(1.3)
    dirs = seed_directions(0j, model)
    trace = trace_stokes_line(0j, model, dirs[0], max_arclen=12.0)
    assert trace.terminated == "escape"
    assert any(z.imag < -0.5 and abs(z.real) < 0.05 for z in trace.points)


def test_quartic_stokes_lines_cross_real_axis():
    model = ModelSpec.quartic(1.0)
    roots = quartic_turning_points(1.0)
    dirs = seed_directions(roots.z_c, model)
    assert dirs
    crossed = False
    for d in dirs:
        try:
            trace = trace_stokes_line(roots.z_c, model, d, max_arclen=10.0)
        except TraceError:
            continue
        signs = [z.imag for z in trace.points]
        if any(s1 * s2 < 0 for s1, s2 in zip(signs, signs[1:])):
            crossed = True
    assert crossed


def test_quartic_traces_pass_the_power_law_cut_ray():
    # The quartic potential is entire: its equal-phase lines cross the
    # positive imaginary axis freely instead of stopping at a cut.
    model = ModelSpec.quartic(1.0)
    roots = quartic_turning_points(1.0)
    crossings = 0
    for d in seed_directions(roots.z_c, model):
        trace = trace_stokes_line(roots.z_c, model, d, max_arclen=15.0)
        assert trace.terminated == "escape"
        crossings += any(
            z1.real * z2.real < 0 and 0.5 * (z1.imag + z2.imag) > 0
            for z1, z2 in zip(trace.points, trace.points[1:]))
    assert crossings >= 1


def test_matching_path_cut_crossing_iff_broken():
    for p in (1.3, 1.7, 1.9):
        model = ModelSpec.power_law(p)
        trace = trace_matching_path(model)
        assert trace.terminated == "cut"
        assert path_crosses_cut(trace.points, model)
    for p in (2.5, 3.0, 5.0):
        model = ModelSpec.power_law(p)
        trace = trace_matching_path(model)
        assert trace.terminated == "target"
        assert not path_crosses_cut(trace.points, model)
        assert max(abs(c.real) for c in trace.chi) <= 1e-8
