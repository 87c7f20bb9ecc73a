"""The level-zero quotient algebra of the norm-2 lattice algebra.

Builds the finite reduction window, prints the class representatives and
the full multiplication table, then reduces a few vectors to coordinates.
"""

from fractions import Fraction

from voalab import (Space, build_context, a_product_table, class_coords,
                    star, vacuum, basis_element, conformal_vector)

if __name__ == "__main__":
    alg = Space(norms=(2,), cutoff=6)
    ctx = build_context(alg, 6)
    for line in ctx.lines():
        print(line)

    tab = a_product_table(ctx)
    print()
    for line in tab.lines():
        print(line)

    print("\nstructure constants (row * col, coordinates over the reps):")
    for i, row in enumerate(tab.matrix):
        print("  rep %d: %s" % (i, [list(map(str, c)) for c in row]))

    uni = alg.unbounded()
    omega = conformal_vector(uni)
    print("\n[omega] =", class_coords(ctx, omega))
    e = basis_element(uni, (), (1,))
    f = basis_element(uni, (), (-1,))
    print("[e * f] =", class_coords(ctx, star(e, f)))
    print("[e * e] =", class_coords(ctx, star(e, e)),
          "  (the square lands in the reduction span)")
    print("\nweights of the class representatives:",
          [str(Fraction(r.weight())) for r in ctx.a_reps])
