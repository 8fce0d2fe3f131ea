"""Scaling of the ground branch as p -> 1+.

Balancing the two terms of the corrected condition at their envelope gives
delta = (8 E^{3/2}/pi) exp(-(4/3) E^{3/2}) for the offset delta = p - 1 at
which a branch reaches eigenvalue E.  Following the ground branch to small
delta, the measured (delta, E) pairs settle onto that curve: the ratio
tends to one.

Run:  python demos/p_to_one_scaling.py
"""

import math

from ptspec import delta_estimate, lowest_branch_path

deltas = [0.5 * 0.82 ** k for k in range(40)]
records = lowest_branch_path(deltas)

print(f"{'delta':>12s} {'E':>10s} {'log|log d|':>11s} "
      f"{'d*exp(4E^1.5/3)':>16s} {'(8/pi)E^1.5':>12s} {'ratio':>8s}")
for rec in records[::5] + records[-2:]:
    d = rec.param - 1.0
    e = rec.E.real
    scaled = d * math.exp(4.0 * e ** 1.5 / 3.0)
    predicted = 8.0 * e ** 1.5 / math.pi
    print(f"{d:12.6f} {e:10.5f} {math.log(abs(math.log(d))):11.5f} "
          f"{scaled:16.5f} {predicted:12.5f} {d / delta_estimate(e):8.4f}")

print()
print("the last column is delta / [(8 E^{3/2}/pi) exp(-(4/3) E^{3/2})];")
print("it approaches 1 as delta -> 0 along the branch.")
