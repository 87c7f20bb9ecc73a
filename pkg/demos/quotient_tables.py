"""Quotient tables C_n and the finite generator set they certify.

The free boson keeps a one-dimensional quotient in every stratum — no
finite generator set exists and choose_X refuses.  The lattice algebra's
table hits zero at stratum 3 and stays there, which certifies a 4-element
generator set with (r, N, Q) = (2, 3, 4).
"""

from voalab import Space, quotient_table, choose_X, c1_reps

if __name__ == "__main__":
    boson = Space(norms=(2,), heisenberg_only=True, cutoff=8)
    t = quotient_table(boson, 2, 8)
    print("free boson:")
    for line in t.lines():
        print("  " + line)
    try:
        choose_X(boson, 8)
    except ValueError as exc:
        print("  choose_X:", exc)

    print()
    lattice = Space(norms=(2,), cutoff=8)
    t = quotient_table(lattice, 2, 8)
    print("lattice algebra, norm 2:")
    for line in t.lines():
        print("  " + line)
    params = choose_X(lattice, 8, table=t)
    for line in params.describe():
        print("  " + line)

    t3 = quotient_table(lattice, 3, 8)
    print("\n  C_3 dims for comparison:", t3.quotient_dims())

    c1 = c1_reps(lattice, 6)
    print("\n  weight-one generators Y spanning V/C_1:")
    for v in c1.y:
        print("    wt %s: %r" % (v.weight(), v))
