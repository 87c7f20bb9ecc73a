"""End-to-end acceptance battery.

One numbered test per release criterion; each prints the quantities it
asserts so a -s run doubles as a measurement log.  Everything is exact
rational arithmetic — there are no tolerances anywhere.
"""

import random
import time
from fractions import Fraction

import pytest

from oracles import partition_counts, sector_dims
from voalab import (Element, Space, a_product_table, annihilator_monomials,
                    apply_word, basis_element, build_context, c1_reps,
                    choose_X, circ, enumerate_basis, find_omega, normalize,
                    o_action, quotient_table, stratum_basis, tensor_c2_check,
                    vacuum, verify_commutator, verify_iterate, virasoro_check,
                    word_operator_weight)
from voalab.cli import main

F = Fraction


def _monomials(space, max_weight):
    out = []
    d = space.bottom_weight()
    while d <= max_weight:
        out.extend(Element.monomial(space, b) for b in stratum_basis(space, d))
        d += 1
    return out


def test_criterion_1_mode_identity_suite():
    t0 = time.monotonic()
    space = Space(norms=(2,), cutoff=6)
    uni = space.unbounded()
    pool = _monomials(uni, 3)
    rng = random.Random(1)
    comm = it = 0
    for _ in range(50):
        u, v, w = (pool[rng.randrange(len(pool))] for _ in range(3))
        k, q = rng.randint(-3, 3), rng.randint(-3, 3)
        assert verify_commutator(u, v, k, q, w).ok, (u, v, k, q, w)
        comm += 1
    for _ in range(50):
        u, v, w = (pool[rng.randrange(len(pool))] for _ in range(3))
        r, q = rng.randint(1, 3), rng.randint(-3, 3)
        assert verify_iterate(u, v, r, q, w).ok, (u, v, r, q, w)
        it += 1
    dt = time.monotonic() - t0
    print("criterion 1: %d commutator + %d iterate samples, exact, %.1fs"
          % (comm, it, dt))
    assert comm >= 50 and it >= 50
    assert dt < 60


def test_criterion_2_virasoro_suite():
    for norms in [(2,), (2, 4)]:
        rep = virasoro_check(Space(norms=norms, cutoff=6),
                             mode_bound=3, max_stratum=4)
        assert rep.ok, rep.failures
        assert rep.central_charge == len(norms)
        print("criterion 2: norms %s -> c = %s, %d bracket cases exact"
              % (list(norms), rep.central_charge, rep.checked))


def test_criterion_3_dimension_oracles():
    m1 = Space(norms=(2,), heisenberg_only=True, cutoff=10)
    dims = [len(stratum_basis(m1, F(d))) for d in range(11)]
    assert dims == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert dims == partition_counts(10)

    vl = Space(norms=(2,), cutoff=8)
    got = [len(stratum_basis(vl, F(d))) for d in range(9)]
    oracle = sector_dims((2,), (F(0),), 8)
    assert got == [oracle[F(d)] for d in range(9)]
    print("criterion 3: free-boson dims %s; lattice dims %s match the "
          "sector-sum oracle" % (dims, got))


def test_criterion_4_cofiniteness_evidence(vl8, vplus_table_12):
    m1 = Space(norms=(2,), heisenberg_only=True, cutoff=8)
    t_m1 = quotient_table(m1, 2, 8)
    assert t_m1.quotient_dims()[1:] == [1] * 8
    assert not t_m1.stabilized
    with pytest.raises(ValueError):
        choose_X(m1, 8)

    t_vl = quotient_table(vl8, 2, 8)
    assert t_vl.quotient_dims() == [1, 3, 1, 0, 0, 0, 0, 0, 0]
    assert t_vl.stabilized and t_vl.stable_from == 3

    # the involution-fixed table: honest behavior, frozen as regression
    t8 = quotient_table(Space(norms=(2,), cutoff=8), 2, 8, sign=1)
    assert t8.quotient_dims() == [1, 1, 1, 1, 3, 1, 1, 1, 1]
    assert not t8.stabilized          # zero tail has not even started by 8
    assert vplus_table_12.quotient_dims() == [1, 1, 1, 1, 3, 1, 1, 1, 1,
                                              0, 0, 0, 0]
    assert vplus_table_12.stabilized and vplus_table_12.stable_from == 9
    # cross-check: the fixed subalgebra is isomorphic to the norm-8 lattice
    t_iso = quotient_table(Space(norms=(8,), cutoff=12), 2, 12)
    assert t_iso.quotient_dims() == vplus_table_12.quotient_dims()
    print("criterion 4: free boson never stabilizes; lattice dims %s stable "
          "from 3; fixed-subalgebra dims %s stable from 9 (cross-checked)"
          % (t_vl.quotient_dims(), vplus_table_12.quotient_dims()))


@pytest.mark.xfail(strict=True, reason=(
    "the involution-fixed quotient table's zero tail begins at stratum 9, "
    "so no stabilization verdict with margin 3 can exist by stratum 8; "
    "see the stratum-by-stratum dims in the companion test above"))
def test_criterion_4_fixed_subalgebra_stabilizes_by_stratum_8():
    t8 = quotient_table(Space(norms=(2,), cutoff=8), 2, 8, sign=1)
    assert t8.stabilized


def test_criterion_5_rewriter_fuzz(params_vl):
    t0 = time.monotonic()
    uni = params_vl.space.unbounded()
    pool = _monomials(uni, 3)
    rng = random.Random(5)
    certified = evaluated = 0
    for _ in range(200):
        k = rng.randint(1, 5)
        word = tuple((rng.randrange(len(params_vl.x)), rng.randint(-3, 3))
                     for _ in range(k))
        for _ in range(5):
            target = pool[rng.randrange(len(pool))]
            res = normalize(params_vl, word, target)
            assert res.value == apply_word(params_vl, word, target)
            evaluated += 1
            for c, cert in res.terms:
                cert.validate()
                assert word_operator_weight(params_vl, cert.word) == \
                    word_operator_weight(params_vl, word)
                certified += 1
    dt = time.monotonic() - t0
    print("criterion 5: 200 words x 5 targets, %d evaluations bit-exact, "
          "%d certificates valid, %.1fs (weight conservation and measure "
          "descent are asserted inside every normalize step)"
          % (evaluated, certified, dt))
    assert dt < 300


def test_criterion_6_lowest_weight_suite(vl8, params_vl):
    y = c1_reps(vl8, 6).y
    cases = [
        (vl8, [1, 0, 0, 0, 0]),
        (Space(norms=(2,), coset=(F(0),), cutoff=4), [1, 0, 0, 0, 0]),
        (Space(norms=(2,), coset=(F(1, 2),), cutoff=4), [2, 0, 0, 0]),
    ]
    for space, expected in cases:
        red = find_omega(space, y, 4, reduced=True, params=params_vl)
        full = find_omega(space, annihilator_monomials(space, 4), 4,
                          reduced=False)
        assert red.omega_dims() == full.omega_dims() == expected
        assert any(red.omega_dims())
        if space.is_module:
            bottom_dim = len(stratum_basis(space, space.bottom_weight()))
            assert red.omega_dims() == [bottom_dim] + [0] * (len(expected) - 1)
        print("criterion 6: coset %s kernel dims %s (reduced == full)"
              % (space.coset, red.omega_dims()))


def test_criterion_7_quotient_algebra_suite():
    ctx = build_context(Space(norms=(2,), cutoff=6), 6)
    assert ctx.stabilized and ctx.adim == 5
    tab = a_product_table(ctx)
    assert tab.identity_ok and tab.central_ok and tab.assoc_ok

    uni = ctx.space.unbounded()
    bottoms = [basis_element(
        Space(norms=(2,), coset=(F(1, 2),), cutoff=6).unbounded(), (), (p,))
        for p in (0, -1)]
    bottoms.append(vacuum(uni))
    pool = _monomials(uni, 3)
    rng = random.Random(7)
    killed = 0
    for _ in range(20):
        u = pool[rng.randrange(len(pool))]
        while u.weight() < 1:
            u = pool[rng.randrange(len(pool))]
        v = pool[rng.randrange(len(pool))]
        x = circ(u, v)
        for w in bottoms:
            assert not o_action(x, w)
        killed += 1
    print("criterion 7: algebra axioms exact on dim %d (%d associativity "
          "triples); %d circle products annihilate every bottom vector"
          % (ctx.adim, tab.assoc_checked, killed))


def test_criterion_8_tensor_decomposition():
    a = Space(norms=(2,), cutoff=6)
    rep = tensor_c2_check(a, a, max_stratum=5)
    assert rep.ok
    quots = [amb - c2 for (_, amb, c2, _, _) in rep.rows]
    assert quots == [1, 6, 11, 6, 1, 0]
    print("criterion 8: tensor quotient dims %s, containment and spanning "
          "verified stratum-wise" % quots)


def test_criterion_9_determinism(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["verify", "--seed", "3", "--out", str(a)]) == 0
    assert main(["verify", "--seed", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert "failures: 0" in a.read_text()

    shallow = quotient_table(Space(norms=(2,), cutoff=6), 2, 6)
    deep = quotient_table(Space(norms=(2,), cutoff=8), 2, 8)
    assert deep.rows[:len(shallow.rows)] == shallow.rows
    print("criterion 9: verify report bytes identical across runs; "
          "quotient rows at depth 6 reproduced inside depth 8")
