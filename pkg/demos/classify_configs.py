"""Classify point configurations on the line and in the plane.

Labels name the stratum of the configuration space: "Stable", torus-fixed
types "(T)" and friends, and Morse strata "S_{...}" with refinements
written "S~_{...}".  Labels do not change under exact special linear
changes of coordinates, which the last section spot checks.
"""

import random

from moment_strata import (affine_p1, classify_binary_form,
                           classify_p1_config, classify_p2_config, config_of,
                           infinity_p1, proj_point, random_special_linear,
                           transform_config)

O = affine_p1(0)
I = affine_p1(1)
INF = infinity_p1()

print("configurations of points on the line:")
line_cases = [
    [O, O, INF, INF],
    [O, O, I, INF],
    [O, O, O, INF],
    [affine_p1(k) for k in range(5)],
]
for pts in line_cases:
    cfg = config_of(pts)
    label = classify_p1_config(cfg)
    print(f"  {[str(p) for p in pts]}")
    print(f"    -> {label}   (coarse {label.coarse_text})")

print()
print("the same points read as roots of a binary form:")
for pts in ([O, O, I, affine_p1(-1)], [O, O, O, I, affine_p1(2), INF]):
    print(f"  {[str(p) for p in pts]} -> "
          f"{classify_binary_form(config_of(pts))}")

print()
print("configurations of points in the plane:")
e1, e2, e3 = proj_point((1, 0, 0)), proj_point((0, 1, 0)), proj_point((0, 0, 1))
plane_cases = [
    [e1, e1, e2, e2, e3, e3],
    [e1, e1] + [proj_point((0, 1, k)) for k in range(4)],
    [e1, e1, e2],
    [proj_point((0, 1, 0)), proj_point((0, 1, 1)), proj_point((0, 1, 2)),
     proj_point((0, 1, 3)), e1],
]
for pts in plane_cases:
    print(f"  {[str(p) for p in pts]}")
    print(f"    -> {classify_p2_config(config_of(pts))}")

print()
rng = random.Random(5)
cfg = config_of(plane_cases[1])
want = str(classify_p2_config(cfg))
for _ in range(10):
    moved = transform_config(random_special_linear(3, rng), cfg)
    assert str(classify_p2_config(moved)) == want
print(f"label {want!r} unchanged under 10 random changes of coordinates")
