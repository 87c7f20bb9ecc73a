"""Stratum dimensions of the basic spaces, printed as q-series coefficients.

Run:  python3 demos/graded_dimensions.py [max_weight]
"""

import sys
from fractions import Fraction

from voalab import Space, stratum_basis, strata, fixed_subspace

MAX = Fraction(sys.argv[1]) if len(sys.argv) > 1 else Fraction(8)


def series(space, sign=None):
    out = []
    for d in strata(space, MAX):
        if sign is None:
            out.append((d, len(stratum_basis(space, d))))
        else:
            out.append((d, fixed_subspace(space, sign, d).rank))
    return out


def show(name, pairs):
    body = " + ".join("%d q^%s" % (n, d) for d, n in pairs)
    print("%-28s %s" % (name, body))


if __name__ == "__main__":
    boson = Space(norms=(2,), heisenberg_only=True, cutoff=MAX)
    lattice = Space(norms=(2,), cutoff=MAX)
    half = Space(norms=(2,), coset=(Fraction(1, 2),), cutoff=MAX)

    show("free boson", series(boson))
    show("lattice, norm 2", series(lattice))
    show("module at offset 1/2", series(half))
    show("involution +1 eigenspace", series(lattice, sign=1))
    show("involution -1 eigenspace", series(lattice, sign=-1))

    plus = dict(series(lattice, sign=1))
    minus = dict(series(lattice, sign=-1))
    full = dict(series(lattice))
    assert all(plus[d] + minus[d] == full[d] for d in full)
    print()
    print("eigenspace dimensions add up to the full stratum in every weight")
    print("module bottom weight:", half.bottom_weight())
