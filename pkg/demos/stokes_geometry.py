"""Stokes-line geometry and the failure of the classical matching path.

Equal-phase lines Im chi = 0 leave each turning point in three directions.
For p > 2 the classical matching path between the turning points (on which
the action stays real) passes below the origin; for p < 2 it runs straight
into the branch cut on the positive imaginary axis, which is exactly why
the turning-point matching breaks there.  For non-integer p there is an
additional equal-phase line from the branch point z = 0 pointing down the
negative imaginary axis, across the continuation contour: the source of
the correction term.

Run:  python demos/stokes_geometry.py
"""

import cmath
import math

from ptspec import (ModelSpec, path_crosses_cut, seed_directions,
                    trace_matching_path, trace_stokes_line, turning_points,
                    wedge_angles)

for p in (3.0, 1.3):
    model = ModelSpec.power_law(p)
    z_a, z_b = turning_points(p)
    th_l, th_r, width = wedge_angles(p)
    print(f"p = {p}: turning points {z_a:.3f}, {z_b:.3f}; "
          f"wedge centres {th_l/math.pi:+.3f} pi, {th_r/math.pi:+.3f} pi")
    for name, origin in (("z_A", z_a), ("z_B", z_b)):
        for k, direction in enumerate(seed_directions(origin, model)):
            trace = trace_stokes_line(origin, model, direction, max_arclen=25.0)
            end = trace.points[-1]
            print(f"  line {name}/{k}: leaves at {direction:.2f} rad, "
                  f"{trace.terminated} at z = {end:.2f} "
                  f"(angle {cmath.phase(end)/math.pi:+.3f} pi), "
                  f"max |Im chi| = {max(trace.residuals):.1e}")
    if not model.is_integer_power:
        for direction in seed_directions(0j, model):
            trace = trace_stokes_line(0j, model, direction, max_arclen=12.0)
            print(f"  branch-point line: ends {trace.terminated} at "
                  f"z = {trace.points[-1]:.2f}")
    matching = trace_matching_path(model)
    crosses = path_crosses_cut(matching.points, model)
    print(f"  real-action path z_A -> z_B: {matching.terminated}, "
          f"crosses cut = {crosses}")
    print()

print("cut crossing of the matching path across p:")
for p in (1.3, 1.5, 1.7, 1.9, 2.5, 3.0, 5.0):
    model = ModelSpec.power_law(p)
    crosses = path_crosses_cut(trace_matching_path(model).points, model)
    print(f"  p = {p:4.2f}: crosses = {crosses}   (broken region: {p < 2})")
