"""Print restriction-kernel generators for the map to a quotient.

Each unstable stratum contributes a generator: the product of the Euler
factors of its normal directions, pushed forward from the stratum.  For
the reflection group the generators come folded into pairs, one
anti-invariant difference and one invariant sum per positive critical
value.  Passing the stable target on a product of lines with an even
number of factors adds the halfway subsets as extra generators.
"""

from moment_strata import (line_product_presentation,
                           projective_space_presentation, sl2_kernel_ideal,
                           torus_kernel_ideal)


def show(title, kernel):
    print(title)
    for label, g in kernel.generators:
        print(f"  [{label}] degree {g.degree()}: {g}")
    print()


p3 = projective_space_presentation([3, 1, -1, -3])
show("P3, torus, degrees up to 8",
     torus_kernel_ideal(p3, 8))
show("P3, reflection group, degrees up to 8",
     sl2_kernel_ideal(p3, 8))

l4 = line_product_presentation(4)
ss = sl2_kernel_ideal(l4, 6)
st = sl2_kernel_ideal(l4, 6, target="stable")
show("four lines, reflection group, semistable target", ss)
extra = set(dict(st.generators)) - set(dict(ss.generators))
print("extra generator labels for the stable target:")
print(" ", ", ".join(sorted(extra)))
