"""Walk the critical strata of two small weighted models.

For each stratum the script prints the minimizing vector beta, its squared
norm, the codimension of every critical component, and the convexity
certificate that proves beta really is the nearest point of the relevant
hull.  Everything is a Fraction; nothing here is floating point.
"""

from moment_strata import (critical_components, index_set,
                           line_product_model, projective_space_model,
                           stratum_codim)


def describe(name, model):
    strata = index_set(model)
    print(f"{name}: {len(strata)} strata")
    for stratum in sorted(strata, key=lambda s: s.beta):
        norm2 = model.form.norm2(stratum.beta)
        cert = stratum.certificate
        comps = critical_components(model, stratum.beta)
        codims = [stratum_codim(model, c) for c in comps]
        print(f"  beta={stratum.beta}  |beta|^2={norm2}  "
              f"codims={codims}")
        print(f"    certificate: support={cert.support} "
              f"coefficients={cert.coefficients}")
    print()


def main():
    describe("P3 (weights 3,1,-1,-3)",
             projective_space_model([3, 1, -1, -3]))
    describe("product of four lines", line_product_model(4))


if __name__ == "__main__":
    main()
