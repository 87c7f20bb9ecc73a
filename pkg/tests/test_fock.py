import random
from fractions import Fraction

import pytest

from voalab import (Element, Space, TruncationOverflow, basis_element,
                    conformal_vector, enumerate_basis, fixed_subspace,
                    heisenberg_mode, lattice_mode, stratum_basis, strata,
                    theta, transport, vacuum)
from oracles import (colored_partition_counts, involution_trace,
                     partition_counts, plus_fixed_dims, sector_dims)

F = Fraction


def dims(space, max_weight):
    return [len(stratum_basis(space, d)) for d in strata(space, max_weight)]


def test_heisenberg_dims_are_partition_numbers():
    M1 = Space(norms=(2,), heisenberg_only=True, cutoff=10)
    assert dims(M1, 10) == partition_counts(10)


def test_rank_two_heisenberg_dims():
    M2 = Space(norms=(2, 4), heisenberg_only=True, cutoff=8)
    assert dims(M2, 8) == colored_partition_counts(8, 2)


def test_lattice_dims_match_sector_sums():
    VL = Space(norms=(2,), cutoff=8)
    oracle = sector_dims((2,), (F(0),), 8)
    assert dims(VL, 8) == [oracle[F(d)] for d in range(9)]
    assert dims(VL, 8)[:7] == [1, 3, 4, 7, 13, 19, 29]


def test_module_dims_match_sector_sums():
    M = Space(norms=(2,), coset=(F(1, 2),), cutoff=7)
    oracle = sector_dims((2,), (F(1, 2),), F(29, 4))
    got = dims(M, F(29, 4))
    want = [oracle[w] for w in sorted(oracle)]
    assert got == want
    assert got[:7] == [2, 2, 6, 8, 14, 20, 34]
    assert M.bottom_weight() == F(1, 4)


def test_rank_two_mixed_module():
    M = Space(norms=(2, 4), coset=(F(1, 2), F(1, 4)), cutoff=4)
    oracle = sector_dims((2, 4), (F(1, 2), F(1, 4)), M.bottom_weight() + 4)
    got = dims(M, M.bottom_weight() + 4)
    assert got == [oracle[w] for w in sorted(oracle)]
    assert M.bottom_weight() == F(1, 4) + F(1, 8)


def test_space_validation():
    with pytest.raises(ValueError):
        Space(norms=(3,))
    with pytest.raises(ValueError):
        Space(norms=(0,))
    with pytest.raises(ValueError):
        Space(norms=(2,), coset=(F(1, 3),))  # offset*norm not integral
    sp = Space(norms=(2,), coset=(F(3, 2),))
    assert sp.coset == (F(1, 2),)  # reduced mod 1


def test_heisenberg_modes():
    VL = Space(norms=(2,), cutoff=6)
    v = vacuum(VL)
    a1 = heisenberg_mode(0, -1, v)
    assert a1 == basis_element(VL, ((0, 1),), (0,))
    # commutator [a(m), a(-m)] = m * norm on the vacuum
    for m in (1, 2, 3):
        up = heisenberg_mode(0, -m, v)
        assert heisenberg_mode(0, m, up) == 2 * m * v
    # zero mode measures the pairing with the point
    e = basis_element(VL, (), (2,))
    assert heisenberg_mode(0, 0, e) == 4 * e
    assert not heisenberg_mode(0, 3, a1)


def test_truncation_overflow():
    VL = Space(norms=(2,), cutoff=2)
    v = vacuum(VL)
    with pytest.raises(TruncationOverflow):
        heisenberg_mode(0, -3, v)
    big = transport(v, VL.unbounded())
    assert heisenberg_mode(0, -3, big).weight() == 3


# The six hand-derived lattice operator identities (rank one, norm 2).
# Notation: e(k) is the exponential at lattice point k*alpha, a(n) = alpha(n).

def _vl():
    return Space(norms=(2,), cutoff=8).unbounded()


def test_exponential_identity_creation_on_vacuum():
    u = _vl()
    one = vacuum(u)
    ea = basis_element(u, (), (1,))
    # e(1)_{-1} vacuum = e(1)
    assert lattice_mode((1,), -1, one) == ea
    # e(1)_{-2} vacuum = a(-1) e(1)
    assert lattice_mode((1,), -2, one) == basis_element(u, ((0, 1),), (1,))
    # e(-1)_{-2} vacuum = -a(-1) e(-1)
    assert lattice_mode((-1,), -2, one) == basis_element(u, ((0, 1),), (-1,), -1)


def test_exponential_identity_on_heisenberg_state():
    u = _vl()
    st = basis_element(u, ((0, 1),), (0,))  # a(-1) vacuum
    want = basis_element(u, ((0, 2),), (1,), -1)  # -a(-2) e(1)
    assert lattice_mode((1,), -2, st) == want


def test_exponential_pair_contractions():
    u = _vl()
    em = basis_element(u, (), (-1,))
    got = lattice_mode((1,), -2, em)  # e(1)_{-2} e(-1), weight 3 at point 0
    want = (F(1, 3) * basis_element(u, ((0, 3),), (0,))
            + F(1, 2) * basis_element(u, ((0, 2), (0, 1)), (0,))
            + F(1, 6) * basis_element(u, ((0, 1), (0, 1), (0, 1)), (0,)))
    assert got == want
    got1 = lattice_mode((1,), -1, em)  # e(1)_{-1} e(-1), weight 2 at point 0
    want1 = (F(1, 2) * basis_element(u, ((0, 2),), (0,))
             + F(1, 2) * basis_element(u, ((0, 1), (0, 1)), (0,)))
    assert got1 == want1


def test_theta_is_an_involution_commuting_with_weight():
    VL = Space(norms=(2,), cutoff=5)
    rng = random.Random(2)
    basis = enumerate_basis(VL, 5)
    for _ in range(20):
        b = basis[rng.randrange(len(basis))]
        e = Element.monomial(VL, b)
        te = theta(e)
        assert theta(te) == e
        assert te.weight() == e.weight()


def test_fixed_subspace_dims_match_trace_oracle():
    VL = Space(norms=(2,), cutoff=10)
    plus = [fixed_subspace(VL, 1, F(d)).rank for d in range(11)]
    assert plus == plus_fixed_dims(2, 10)
    minus = [fixed_subspace(VL, -1, F(d)).rank for d in range(11)]
    full = dims(VL, 10)
    assert [p + m for p, m in zip(plus, minus)] == full
    tr = involution_trace(10)
    p = partition_counts(10)
    # at point zero the trace equals plus-minus of the partition parity count
    assert all((p[n] + tr[n]) % 2 == 0 for n in range(11))


def test_conformal_vector_shape():
    VL = Space(norms=(2, 4), cutoff=4)
    w = conformal_vector(VL)
    assert w.weight() == 2
    assert w == (F(1, 4) * basis_element(VL, ((0, 1), (0, 1)), (0, 0))
                 + F(1, 8) * basis_element(VL, ((1, 1), (1, 1)), (0, 0)))
