"""Series bookkeeping behind the stratum-by-stratum correction.

The equivariant series of the whole space splits over the critical
strata.  Subtracting each unstable contribution, shifted by its
codimension, leaves the series of the semistable locus; the same
recursion applied inside every stratum is what perfection_check
verifies.  Shown here on the weights 2, 0, -2 model and on a rank-two
system where the recursion goes through shifted submodels.
"""

from fractions import Fraction

from moment_strata import (critical_components, index_set,
                           model_equivariant_series, perfection_check,
                           projective_space_model, semistable_series,
                           stratum_codim, weighted_model)

model = projective_space_model([2, 0, -2])
trunc = 16

total = model_equivariant_series(model, trunc)
ss = semistable_series(model, trunc)
print("ambient equivariant series:", total.coeffs[:10])
print("semistable part:           ", ss.coeffs[:10])

for stratum in index_set(model):
    if all(b == 0 for b in stratum.beta):
        continue
    codims = [stratum_codim(model, c)
              for c in critical_components(model, stratum.beta)]
    print(f"stratum beta={stratum.beta[0]} contributes in codimensions "
          f"{codims}")

report = perfection_check(model, trunc)
print(f"perfection: ok={report.ok}, strata checked={report.strata_checked}")
print()

rank2 = weighted_model(2, [
    [(Fraction(2), Fraction(0)), (Fraction(0), Fraction(2)),
     (Fraction(-1), Fraction(-1))],
    [(Fraction(1), Fraction(0)), (Fraction(-1), Fraction(0))],
])
report2 = perfection_check(rank2, 24)
print("rank-two system:", report2)
