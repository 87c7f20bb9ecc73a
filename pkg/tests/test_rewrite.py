import random
from fractions import Fraction

import pytest

from voalab import (Element, Space, annihilator_monomials, apply_word,
                    basis_element, c1_reps, compute_L, find_omega,
                    lowest_weight_bound_B, normalize, repetition_break,
                    unfold_iterate, vacuum, word_measure,
                    word_operator_weight)

F = Fraction


@pytest.fixture(scope="module")
def target_vac(params_vl):
    return vacuum(params_vl.space.unbounded())


@pytest.fixture(scope="module")
def module_bottom():
    m = Space(norms=(2,), coset=(F(1, 2),), cutoff=6).unbounded()
    return basis_element(m, (), (0,))  # lattice point 0 + offset 1/2


def test_annihilation_threshold(params_vl, target_vac, module_bottom):
    u = params_vl.space.unbounded()
    assert compute_L(params_vl, target_vac) == 0
    assert compute_L(params_vl, basis_element(u, (), (1,))) == 2
    assert compute_L(params_vl, module_bottom) == 2


def test_weight_floor(params_vl, target_vac):
    u = params_vl.space.unbounded()
    assert lowest_weight_bound_B(params_vl, target_vac) == (0, ())
    B, witness = lowest_weight_bound_B(params_vl, basis_element(u, ((0, 1),), (0,)))
    assert B == -1
    assert word_operator_weight(params_vl, witness) == -1
    assert apply_word(params_vl, witness, basis_element(u, ((0, 1),), (0,)))


def test_unfold_single_letter_is_the_plain_mode(params_vl, module_bottom):
    for xi in range(len(params_vl.x)):
        for t in range(-4, 3):
            terms = unfold_iterate(params_vl, ((xi, -1),), t, module_bottom)
            direct = apply_word(params_vl, ((xi, t),), module_bottom)
            total = Element._raw(module_bottom.space, {})
            for c, w in terms:
                total = total + c * apply_word(params_vl, w, module_bottom)
            assert total == direct
            for _, w in terms:
                assert w == ((xi, t),)


def test_hand_checked_normal_forms(params_vl, target_vac, module_bottom):
    # a(1) a(-1) vacuum = 2 vacuum: pure commutator scalar
    res = normalize(params_vl, ((1, 1), (1, -1)), target_vac)
    assert [(c, cert.word) for c, cert in res.terms] == [(F(2), ())]
    # the equal-mode creation pair resolves into the weight-two generator
    res = normalize(params_vl, ((1, -1), (1, -1)), target_vac)
    assert [(c, cert.word) for c, cert in res.terms] == [(F(1), ((3, -1),))]
    # a Q-run of zero modes on the module bottom
    res = normalize(params_vl, ((1, 0),) * 4, module_bottom)
    got = {cert.word: c for c, cert in res.terms}
    assert got == {((3, 1),): F(-9), ((1, 0), (1, 0)): F(-2),
                   ((2, 0), (0, 0)): F(12)}
    assert res.value == module_bottom  # alpha zero-mode eigenvalue is 1 here


def test_repetition_break_coefficients(params_vl, module_bottom):
    terms = repetition_break(params_vl, (1, 1, 1, 1), 0, module_bottom)
    block = ((1, 0),) * 4
    direct = apply_word(params_vl, block, module_bottom)
    total = Element._raw(module_bottom.space, {})
    for c, w in terms:
        assert w != block
        total = total + c * apply_word(params_vl, w, module_bottom)
    assert total == direct


def test_fuzz_normalize(params_vl, target_vac, module_bottom):
    rng = random.Random(20260815)
    targets = [target_vac, module_bottom]
    for trial in range(80):
        k = rng.randint(1, 5)
        word = tuple((rng.randrange(len(params_vl.x)), rng.randint(-3, 3))
                     for _ in range(k))
        target = targets[trial % 2]
        res = normalize(params_vl, word, target)
        assert res.value == apply_word(params_vl, word, target)
        for c, cert in res.terms:
            assert c != 0
            cert.validate()
            assert word_operator_weight(params_vl, cert.word) == \
                word_operator_weight(params_vl, word)
            assert not word_measure(params_vl, cert.word) > word_measure(params_vl, word)


def test_certificate_validation_rejects_bad_words(params_vl):
    from voalab import NormalFormCertificate
    good = NormalFormCertificate(((0, -2), (1, -1), (2, 0)), 2, params_vl)
    assert good.validate()
    bad_order = NormalFormCertificate(((0, 0), (1, -1)), 2, params_vl)
    with pytest.raises(ValueError, match="weakly increasing"):
        bad_order.validate()
    bad_pair = NormalFormCertificate(((0, -1), (1, -1)), 2, params_vl)
    with pytest.raises(ValueError, match="creation mode"):
        bad_pair.validate()
    bad_run = NormalFormCertificate(((0, 1),) * 4, 3, params_vl)
    with pytest.raises(ValueError, match="Q times"):
        bad_run.validate()
    bad_mode = NormalFormCertificate(((0, 2),), 2, params_vl)
    with pytest.raises(ValueError, match="below L"):
        bad_mode.validate()


def test_omega_reduced_matches_full(vl8, params_vl, half_module):
    y = c1_reps(vl8, 6).y
    for space, cutoff in [(vl8, 4), (half_module, 4),
                          (Space(norms=(2,), coset=(F(0),), cutoff=4), 4)]:
        red = find_omega(space, y, cutoff, reduced=True, params=params_vl)
        full = find_omega(space, annihilator_monomials(space, 4), cutoff,
                          reduced=False)
        assert red.omega_dims() == full.omega_dims()
        assert any(red.omega_dims())  # never trivial


def test_omega_values(vl8, params_vl, half_module):
    y = c1_reps(vl8, 6).y
    alg = find_omega(vl8, y, 4, reduced=True, params=params_vl)
    assert alg.omega_dims() == [1, 0, 0, 0, 0]
    assert alg.omega_basis[0] == vacuum(vl8.unbounded())
    assert alg.B == 0

    mod = find_omega(half_module, y, 4, reduced=True, params=params_vl)
    assert mod.rows[0] == (F(1, 4), 2, 2)
    assert sum(k for _, _, k in mod.rows[1:]) == 0
    assert mod.B == 0
