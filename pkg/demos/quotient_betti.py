"""Compute the Betti numbers of a quotient three independent ways.

The running example is the space of five-point configurations on the line
up to the reflection group action, realized from the weighted model with
values 5, 3, 1, -1, -3, -5.  The three routes are

  1. the truncated power series of the semistable locus, corrected
     stratum by stratum,
  2. row reduction of the free presentation modulo the restriction
     kernel ideal,
  3. ranks of the exact intersection pairing matrices between
     complementary degrees.

They must agree degree by degree.
"""

from moment_strata import (betti_from_presentation, kernel_by_pairing,
                           projective_space_model,
                           projective_space_presentation, sl2_kernel_ideal,
                           sl2_quotient_series, sl2_weyl)

weights = [5, 3, 1, -1, -3, -5]
model = projective_space_model(weights, sl2_weyl())
pres = projective_space_presentation(weights)

series = sl2_quotient_series(model, 20)
kernel = sl2_kernel_ideal(pres, 12)

print("degree | series | presentation | pairing rank")
for d in range(0, 5, 2):
    b_series = series.coeffs[d]
    b_pres = betti_from_presentation(pres, kernel, d)
    b_pair = kernel_by_pairing(model, pres.variables, d, "sl2").rank
    print(f"{d:6d} | {b_series:6d} | {b_pres:12d} | {b_pair:12d}")
    assert b_series == b_pres == b_pair

print()
print("tail of the series (degrees 6..20):",
      list(series.coeffs[6:]))
print("all three routes agree")
