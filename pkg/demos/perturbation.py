"""Resolve a strictly semistable model by an exact small perturbation.

The product of four lines has semistable points that are not stable, which
blocks the quotient Betti computation.  A tiny rational shift of the
moment level removes the coincidence.  The script asks for a certified
epsilon, shows the refined critical values, and prints which perturbed
values sit over each original one.
"""

from moment_strata import (index_betas, line_product_model, perturbed_model,
                           propose_epsilon, quotient_poincare_polynomial,
                           refinement_report, strictly_semistable_witness)

model = line_product_model(4)

witness = strictly_semistable_witness(model)
print("strictly semistable witness profile:", witness)

prop = propose_epsilon(model)
print("proposed epsilon:", prop.epsilon,
      "(denominator", str(prop.denominator) + ",",
      "norm bound", str(prop.norm_bound) + ")")

report = refinement_report(model, prop.epsilon)
for parent, children in report.fibers:
    kids = ", ".join(str(b[0]) for b in children)
    print(f"  critical value {parent[0]} splits into: {kids}")

shifted = perturbed_model(model, prop.epsilon)
print("perturbed critical values:",
      sorted(b[0] for b in index_betas(shifted)))
print("perturbed quotient Poincare polynomial:",
      quotient_poincare_polynomial(shifted, 40))
