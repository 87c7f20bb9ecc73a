"""Rewriting operator words into spanning-set normal form.

Takes a few words over the certified generator set and shows the full
rewriting trace: the emitted normal words, their coefficients, and the
exact evaluation they reproduce.  Then computes the annihilation threshold
L, the operator-weight floor B, and the lowest-weight vectors of the two
modules.
"""

from fractions import Fraction

from voalab import (Space, choose_X, normalize, vacuum, basis_element,
                    compute_L, lowest_weight_bound_B, c1_reps, find_omega)

if __name__ == "__main__":
    alg = Space(norms=(2,), cutoff=8)
    params = choose_X(alg, 8)
    for line in params.describe():
        print(line)

    uni = alg.unbounded()
    vac = vacuum(uni)
    half = Space(norms=(2,), coset=(Fraction(1, 2),), cutoff=8).unbounded()
    bottom = basis_element(half, (), (0,))

    words = [
        ("annihilate then create", ((1, 1), (1, -1)), vac),
        ("equal creation modes", ((1, -1), (1, -1)), vac),
        ("a run of four zero modes", ((1, 0),) * 4, bottom),
        ("mixed letters", ((3, -2), (0, 1), (2, 0)), bottom),
    ]
    for name, word, target in words:
        print("\n--", name)
        res = normalize(params, word, target)
        for line in res.lines():
            print("  " + line)
        print("  evaluates to:", res.value)

    print("\nannihilation thresholds:")
    print("  L(vacuum) =", compute_L(params, vac))
    print("  L(module bottom) =", compute_L(params, bottom))
    B, witness = lowest_weight_bound_B(params, basis_element(uni, ((0, 1),)))
    print("operator-weight floor of a(-1)|0>: B = %s, witness %s" % (B, witness))

    y = c1_reps(alg, 6).y
    for coset in [(Fraction(0),), (Fraction(1, 2),)]:
        mod = Space(norms=(2,), coset=coset, cutoff=4)
        rep = find_omega(mod, y, 4, reduced=True, params=params)
        print("\nlowest-weight vectors, offset %s:"
              % ",".join(str(c) for c in coset))
        for line in rep.lines():
            print("  " + line)
