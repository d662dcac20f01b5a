import random
from fractions import Fraction as F

import pytest

from conftest import random_homogeneous, random_qmpoly
from iterqm.canonicalize import (
    ModularModeError,
    canonical_form,
    independence_rank,
    rational_rank,
    reduce_letters,
)
from iterqm.iterint import BarCombo, shuffle_product_words
from iterqm.quasimodular import E2, E4, E6, ONE, QMPoly, derive, is_basis_letter
from iterqm.shuffle_lyndon import LyndonPoly, is_lyndon


class TestReduceLetters:
    def test_basis_letter_untouched(self):
        combo = BarCombo({(E4,): 1})
        assert reduce_letters(combo) == combo

    def test_e2_squared_letter(self):
        got = reduce_letters(BarCombo({(E2 * E2,): 1}))
        want = BarCombo({(E4,): 1, (): QMPoly.constant(12) - 12 * E2})
        assert got == want
        assert got.expansion(30) == BarCombo({(E2 * E2,): 1}).expansion(30)

    def test_derivative_letter_in_word(self):
        combo = BarCombo({(ONE, derive(E4)): 1})
        got = reduce_letters(combo)
        assert got == BarCombo({(ONE,): 1, (E4,): -1})
        assert got.expansion(30) == combo.expansion(30)

    def test_every_letter_lands_in_basis(self):
        rng = random.Random(31)
        for _ in range(20):
            word = tuple(random_qmpoly(rng, 8) for _ in range(rng.randint(1, 3)))
            got = reduce_letters(BarCombo({word: 1}))
            for w in got.terms:
                assert all(is_basis_letter(l) for l in w)

    def test_expansion_equality_random(self):
        rng = random.Random(32)
        for _ in range(15):
            word = tuple(random_qmpoly(rng, 8) for _ in range(rng.randint(0, 3)))
            combo = BarCombo({word: random_qmpoly(rng, 4)})
            assert reduce_letters(combo).expansion(20) == combo.expansion(20)


class TestCanonicalForm:
    def test_single_basis_word(self):
        cf = canonical_form(BarCombo({(E4,): 1}))
        idx = cf.basis.index(E4)
        assert cf.poly == LyndonPoly.monomial([(idx,)], QMPoly.constant(1))

    def test_reversed_word(self):
        # [E4|1] = [1] sh [E4] - [1|E4]
        cf = canonical_form(BarCombo({(E4, ONE): 1}))
        i1, i4 = cf.basis.index(ONE), cf.basis.index(E4)
        want = LyndonPoly.monomial([(i1,), (i4,)], QMPoly.constant(1)) + LyndonPoly.monomial(
            [(i1, i4)], QMPoly.constant(-1)
        )
        assert cf.poly == want

    def test_square_of_log(self):
        cf = canonical_form(BarCombo({(ONE, ONE): 1}))
        i1 = cf.basis.index(ONE)
        assert cf.poly == LyndonPoly.monomial([(i1,), (i1,)], QMPoly.constant(F(1, 2)))

    def test_all_keys_lyndon(self):
        rng = random.Random(33)
        for _ in range(10):
            terms = {
                tuple(random_qmpoly(rng, 6) for _ in range(rng.randint(0, 3))): random_qmpoly(rng, 4)
                for _ in range(rng.randint(1, 2))
            }
            cf = canonical_form(BarCombo(terms))
            for mono in cf.poly.terms:
                assert all(is_lyndon(w) for w in mono)

    def test_soundness_random(self):
        rng = random.Random(34)
        for _ in range(20):
            terms = {
                tuple(random_qmpoly(rng, 8) for _ in range(rng.randint(0, 3))): random_qmpoly(rng, 4)
                for _ in range(rng.randint(1, 2))
            }
            combo = BarCombo(terms)
            cf = canonical_form(combo)
            assert cf.expansion(25) == combo.expansion(25)

    def test_homomorphism(self):
        # letter ranks are stable across basis sizes (weights order the
        # alphabet), so Lyndon polynomials over different bases compare
        # directly
        rng = random.Random(35)
        pool = [ONE, E2, E4, E6, E2 * E4, derive(E4)]
        for _ in range(8):
            w1 = tuple(rng.choice(pool) for _ in range(rng.randint(0, 2)))
            w2 = tuple(rng.choice(pool) for _ in range(rng.randint(0, 2)))
            prod = canonical_form(shuffle_product_words(w1, w2))
            c1 = canonical_form(BarCombo({w1: 1}))
            c2 = canonical_form(BarCombo({w2: 1}))
            assert prod.poly == c1.poly * c2.poly
            assert prod.expansion(18) == c1.expansion(18) * c2.expansion(18)

    def test_basis_prefix_stability(self):
        from iterqm.quasimodular import basis_b

        assert basis_b(8) == basis_b(12)[:5]
        assert basis_b(4, modular_only=True) == basis_b(12, modular_only=True)[:2]

    def test_idempotent_on_canonical_input(self):
        # a combination whose words are already Lyndon over the basis
        combo = BarCombo({(ONE, E4): E2, (E2, E4): QMPoly.constant(3)})
        cf = canonical_form(combo)
        i1, i2, i4 = (cf.basis.index(x) for x in (ONE, E2, E4))
        want = LyndonPoly.monomial([(i1, i4)], E2) + LyndonPoly.monomial(
            [(i2, i4)], QMPoly.constant(3)
        )
        assert cf.poly == want

    def test_modular_mode_rejects_e2(self):
        with pytest.raises(ModularModeError):
            canonical_form(BarCombo({(E2,): 1}), modular_only=True)
        with pytest.raises(ModularModeError):
            canonical_form(BarCombo({(E4,): E2}), modular_only=True)

    def test_modular_mode_agrees_with_general(self):
        rng = random.Random(36)
        for _ in range(6):
            word = tuple(
                random_homogeneous(rng, 4 * rng.randint(0, 2)) for _ in range(rng.randint(0, 2))
            )
            word = tuple(p if p.is_modular() else E4 for p in word)
            combo = BarCombo({word: E4})
            general = canonical_form(combo)
            modular = canonical_form(combo, modular_only=True)
            assert modular.modular and E2 not in modular.basis
            assert all(c.is_modular() for c in modular.poly.terms.values())
            assert general.expansion(15) == modular.expansion(15)


class TestRank:
    def test_unit_and_log(self):
        assert independence_rank([(), (ONE,)], [ONE, ONE], 2) == 2

    def test_two_eisenstein(self):
        assert independence_rank([(E4,), (E6,)], [ONE, ONE], 4) == 2

    def test_seven_basis_integrals(self):
        words = [(ONE,), (E2,), (E4,), (E6,), (ONE, E4), (ONE, E6), (E2, E4)]
        assert independence_rank(words, [ONE] * 7, 12) == 7

    def test_detects_dependence(self):
        # I(1)I(E4) = I(1,E4) + I(E4,1), a genuine linear relation
        words = [(ONE, E4), (E4, ONE), (ONE, E4)]
        assert independence_rank(words, [ONE, ONE, ONE], 10) == 2

    def test_rational_rank_basics(self):
        assert rational_rank([]) == 0
        assert rational_rank([[F(0), F(0)]]) == 0
        assert rational_rank([[F(1), F(2)], [F(2), F(4)]]) == 1
        assert rational_rank([[F(1), F(0)], [F(1), F(1)]]) == 2

    def test_mismatched_lengths(self):
        with pytest.raises(ValueError):
            independence_rank([()], [ONE, ONE], 5)
