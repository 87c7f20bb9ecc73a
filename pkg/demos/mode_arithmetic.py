"""Walk through some exact mode computations on the norm-2 lattice algebra.

Everything here is a worked example: apply modes to concrete vectors, test
the commutator and iterate identities on random samples, and print the
Virasoro bracket report.
"""

import random

from voalab import (Space, vacuum, basis_element, mode_action,
                    verify_commutator, verify_iterate, virasoro_check,
                    conformal_vector, virasoro_mode, stratum_basis, Element)

if __name__ == "__main__":
    alg = Space(norms=(2,), cutoff=6).unbounded()
    a1 = basis_element(alg, ((0, 1),))          # a(-1)|0>
    e = basis_element(alg, (), (1,))            # lattice point 1
    f = basis_element(alg, (), (-1,))

    print("a(-1)|0> acting at mode 1 on e:  ", mode_action(a1, 1, e))
    print("a(-1)|0> acting at mode 0 on e:  ", mode_action(a1, 0, e))
    print("e_{-1} f = ", mode_action(e, -1, f))
    print("e_{-2} f = ", mode_action(e, -2, f))
    print("e_0 f    = ", mode_action(e, 0, f))

    omega = conformal_vector(alg)
    print("\nconformal vector:", omega)
    print("L(0) e =", virasoro_mode(0, e), "   (weight 1, as it must be)")
    print("L(-1) e =", virasoro_mode(-1, e))

    rng = random.Random(0)
    pool = []
    for d in range(4):
        pool += [Element.monomial(alg, b) for b in stratum_basis(alg, d)]
    bad = 0
    for _ in range(30):
        u, v, w = (pool[rng.randrange(len(pool))] for _ in range(3))
        k, q = rng.randint(-3, 3), rng.randint(-3, 3)
        if not verify_commutator(u, v, k, q, w):
            bad += 1
        if not verify_iterate(u, v, rng.randint(1, 3), q, w):
            bad += 1
    print("\nrandom identity checks: 60 run, %d failed" % bad)

    for norms in [(2,), (2, 4)]:
        rep = virasoro_check(Space(norms=norms, cutoff=5),
                             mode_bound=3, max_stratum=3)
        print("virasoro bracket, norms %s: c = %s, %d cases, ok = %s"
              % (list(norms), rep.central_charge, rep.checked, rep.ok))
