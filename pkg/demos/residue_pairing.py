"""Localization data for the product of three lines.

Restriction to the fixed components, Euler classes of their negative
directions, and the intersection pairing computed as a sum of exact
residues.  The pairing matrix between complementary degrees has rank
equal to the Betti number of the quotient in that degree; its null space
picks out the classes that die on the quotient.
"""

from moment_strata import (GradedPolynomial, component_variables, euler_class,
                           fixed_components, kernel_by_pairing,
                           line_product_model, quotient_top_degree,
                           residue_pairing, restrict_to_component)

parse = GradedPolynomial.parse

model = line_product_model(3)
variables = ("z1", "z2", "z3", "a")

print("fixed components, ordered by their weight-value tuples:")
for comp in fixed_components(model):
    print(f"  mu={comp.mu}  values={comp.values}  "
          f"euler={euler_class(model, comp)}")
print()

f = parse(variables, "z1*z2")
comp = fixed_components(model)[-1]
print("restriction of z1*z2 to the top component:",
      restrict_to_component(model, f, comp))
print("component variables there:", component_variables(model))
print()

top = quotient_top_degree(model, "torus")
print("top degree of the quotient:", top)
one = parse(variables, "1")
print("pairing <z1*z2, 1> =", residue_pairing(model, f, one, "torus"))

for d in range(0, top + 1, 2):
    res = kernel_by_pairing(model, variables, d, "torus")
    print(f"degree {d}: basis {len(res.basis)}, rank {res.rank}, "
          f"kernel {len(res.kernel)}")
