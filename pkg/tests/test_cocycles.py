import math
import random

import pytest
from mpmath import mp, mpc, zeta

from iterqm.cocycles import (
    IDENTITY,
    S,
    SL2Mat,
    T,
    XYPoly,
    admissible_tau,
    b3_to_sl2,
    cocycle_r,
    e2_cocycle,
    eichler_integral,
    quasimodular_cocycle,
    slash_poly,
)
from iterqm.iterint import iter_integral
from iterqm.qseries import eval_numeric
from iterqm.quasimodular import DELTA, E2, E4, E6, QMPoly, derive

TWO_PI_I = 2j * math.pi


class TestSlash:
    def test_identity(self):
        p = XYPoly(3, [1, 2j, -1, 0.5])
        assert slash_poly(p, IDENTITY).distance(p) == 0

    def test_translation_on_x(self):
        assert slash_poly(XYPoly(1, [1, 0]), T).distance(XYPoly(1, [1, 1])) == 0

    def test_inversion_on_xy(self):
        # P = XY; under S: (-Y)(X) = -XY
        assert slash_poly(XYPoly(2, [0, 1, 0]), S).distance(XYPoly(2, [0, -1, 0])) == 0

    def test_right_action(self):
        rng = random.Random(41)
        p = XYPoly(4, [rng.random() + 1j * rng.random() for _ in range(5)])
        g1 = T * S
        g2 = S * T * T
        lhs = slash_poly(slash_poly(p, g1), g2)
        rhs = slash_poly(p, g1 * g2)
        assert lhs.distance(rhs) < 1e-12


class TestBraidGroup:
    def test_generators(self):
        assert b3_to_sl2((1,)) == SL2Mat(1, 1, 0, 1)
        assert b3_to_sl2((2,)) == SL2Mat(1, 0, -1, 1)

    def test_braid_relation(self):
        assert b3_to_sl2((1, 2, 1)) == b3_to_sl2((2, 1, 2)) == SL2Mat(0, 1, -1, 0)

    def test_empty_word(self):
        assert b3_to_sl2(()) == IDENTITY

    def test_inverses(self):
        assert b3_to_sl2((1, -1)) == IDENTITY
        assert b3_to_sl2((2, -2)) == IDENTITY

    def test_central_element_maps_to_identity(self):
        # (sigma1 sigma2)^6 generates the center and projects to the identity
        word = (1, 2) * 6
        assert b3_to_sl2(word) == IDENTITY


class TestEichlerIntegral:
    def test_zero_form(self):
        p = eichler_integral(QMPoly(), 1j)
        assert p.max_abs() == 0

    def test_rejects_nonmodular(self):
        with pytest.raises(ValueError):
            eichler_integral(E2, 1j)
        with pytest.raises(ValueError):
            eichler_integral(E2 * E4, 1j)

    @pytest.mark.parametrize("f,tau", [(E4, 10j), (E4, 1j), (E6, 1j), (DELTA, 1j), (DELTA, 0.3 + 1.1j)])
    def test_top_coefficient_matches_iterated_integral(self, f, tau):
        # X^(k-2) coefficient = (2 pi i)^(k-2) * I(f; tau)
        k = f.weight()
        top = complex(eichler_integral(f, tau, 80).coeffs[0])
        reference = TWO_PI_I ** (k - 2) * eval_numeric(iter_integral((f,), 80), tau)
        assert abs(top - reference) <= 1e-9 * max(1.0, abs(reference))


class TestModularCocycle:
    def test_identity_vanishes(self):
        assert float(cocycle_r(E4, IDENTITY, 1.3j).max_abs()) < 1e-20

    def test_cusp_form_translation_vanishes(self):
        assert float(cocycle_r(DELTA, T, 1.1j).max_abs()) < 1e-8
        assert float(cocycle_r(DELTA, T, 0.2 + 0.9j).max_abs()) < 1e-8

    def test_golden_value_e4_at_s(self):
        # classical closed form: r_{E4}(S) = -240 zeta(3) X^2
        #                                   + (5/3)(2 pi)^3 i XY + 240 zeta(3) Y^2
        V = cocycle_r(E4, S, 1j)
        with mp.workdps(30):
            z3 = 240 * zeta(3)
            mid = mpc(0, 1) * (2 * mp.pi) ** 3 * mp.mpf(5) / 3
            want = XYPoly(2, [-z3, mid, z3])
        assert V.distance(want) < 1e-20
        # frozen numeric regression baseline
        assert abs(complex(V.coeffs[0]) - (-288.49365675830263)) < 1e-10
        assert abs(complex(V.coeffs[1]) - 413.41702240399760j) < 1e-10
        assert abs(complex(V.coeffs[2]) - 288.49365675830263) < 1e-10

    def test_golden_value_e6_at_s(self):
        # closed form: 6048 zeta(5) (X^4 - Y^4) - (7/10)(2 pi)^5 i (X^3 Y + X Y^3)
        V = cocycle_r(E6, S, 1j)
        with mp.workdps(30):
            z5 = 6048 * zeta(5)
            mid = mpc(0, -1) * (2 * mp.pi) ** 5 * mp.mpf(7) / 10
            want = XYPoly(4, [z5, mid, 0, mid, -z5])
        assert V.distance(want) < 1e-20

    def test_s_squared_relation(self):
        V = cocycle_r(E4, S, 1j)
        assert float((slash_poly(V, S) + V).max_abs()) < 1e-10  # r(S^2) = r(-I) = 0

    def test_base_point_independence(self):
        for f in (E4, E6, DELTA):
            r1 = cocycle_r(f, S, 1.3j)
            r2 = cocycle_r(f, S, mpc(0.4, 0.9))
            assert r1.distance(r2) < 1e-8

    def test_precondition(self):
        with pytest.raises(ValueError):
            cocycle_r(E4, S, 0.05j)  # Im too small
        with pytest.raises(ValueError):
            cocycle_r(E4, T * T * T, 5 + 0.1j)

    def test_cocycle_relation_sample(self):
        rng = random.Random(42)
        pool = [S, T]
        for f in (E4, E6, DELTA):
            done = 0
            while done < 8:
                g1 = IDENTITY
                g2 = IDENTITY
                for _ in range(rng.randint(0, 4)):
                    g1 = g1 * rng.choice(pool)
                for _ in range(rng.randint(0, 4)):
                    g2 = g2 * rng.choice(pool)
                try:
                    t12, t1, t2 = (admissible_tau(g) for g in (g1 * g2, g1, g2))
                except ValueError:
                    continue
                lhs = cocycle_r(f, g1 * g2, t12, 60)
                rhs = slash_poly(cocycle_r(f, g1, t1, 60), g2) + cocycle_r(f, g2, t2, 60)
                assert lhs.distance(rhs) < 1e-8, (f, g1, g2)
                done += 1


class TestE2Cocycle:
    def test_sigma1(self):
        for tau in (1.2j, 0.3 + 0.8j, 2j):
            v = complex(e2_cocycle((1,), tau))
            assert abs(v - (-TWO_PI_I)) < 1e-8

    def test_empty_word(self):
        assert abs(complex(e2_cocycle((), 1.2j))) < 1e-12

    def test_braid_relation(self):
        v1 = e2_cocycle((1, 2, 1), 1.2j)
        v2 = e2_cocycle((2, 1, 2), 0.9j)
        assert abs(complex(v1 - v2)) < 1e-8

    def test_additive(self):
        rng = random.Random(43)
        gens = (1, -1, 2, -2)
        done = 0
        while done < 10:
            w1 = tuple(rng.choice(gens) for _ in range(rng.randint(0, 3)))
            w2 = tuple(rng.choice(gens) for _ in range(rng.randint(0, 3)))
            try:
                t12 = admissible_tau(b3_to_sl2(w1 + w2))
                t1 = admissible_tau(b3_to_sl2(w1))
                t2 = admissible_tau(b3_to_sl2(w2))
            except ValueError:
                continue
            total = e2_cocycle(w1 + w2, t12)
            assert abs(complex(total - e2_cocycle(w1, t1) - e2_cocycle(w2, t2))) < 1e-8
            done += 1

    def test_values_in_2pi_i_z(self):
        rng = random.Random(44)
        gens = (1, -1, 2, -2)
        done = 0
        while done < 12:
            w = tuple(rng.choice(gens) for _ in range(rng.randint(1, 4)))
            try:
                tau = admissible_tau(b3_to_sl2(w))
            except ValueError:
                continue
            ratio = complex(e2_cocycle(w, tau) / TWO_PI_I)
            assert abs(ratio - round(ratio.real)) < 1e-8, w
            done += 1

    def test_central_element_value(self):
        # the center of the braid group maps to 1 in the modular group but
        # the cocycle sees the winding: 12 full turns
        word = (1, 2) * 6
        ratio = complex(e2_cocycle(word, 1.5j) / TWO_PI_I)
        assert abs(ratio - round(ratio.real)) < 1e-8
        assert round(ratio.real) == -12


class TestQuasimodularCocycle:
    def test_modular_passthrough(self):
        comps = quasimodular_cocycle(E4, S, 1j)
        assert len(comps) == 1
        assert comps[0].distance(cocycle_r(E4, S, 1j)) < 1e-20

    def test_derivative_of_modular(self):
        word = (1, 2)
        mat = b3_to_sl2(word)
        comps = quasimodular_cocycle(derive(E4), word, 1.3j)
        assert len(comps) == 1
        assert comps[0].distance(cocycle_r(E4, mat, 1.3j)) < 1e-12

    def test_e2_squared_components(self):
        comps = quasimodular_cocycle(E2 * E2, (1,), 1.3j)
        assert [c.degree for c in comps] == [2, 0]
        assert comps[0].distance(cocycle_r(E4, T, 1.3j)) < 1e-12
        expected = 12 * e2_cocycle((1,), 1.3j)
        assert abs(complex(comps[1].coeffs[0] - expected)) < 1e-10

    def test_matrix_rejected_when_e2_present(self):
        with pytest.raises(ValueError):
            quasimodular_cocycle(E2, S, 1.3j)

    def test_rejects_nonhomogeneous(self):
        with pytest.raises(ValueError):
            quasimodular_cocycle(E4 + E6, S, 1j)
