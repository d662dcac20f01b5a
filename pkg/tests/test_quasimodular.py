import random
from fractions import Fraction as F

import pytest

from conftest import random_homogeneous
from iterqm.qseries import LogQSeries, QSeries, d_op
from iterqm.quasimodular import (
    DELTA,
    E2,
    E4,
    E6,
    ONE,
    QMPoly,
    basis_b,
    bernoulli,
    decompose,
    derivative_decomposition,
    derive,
    eisenstein_qexp,
    expand,
    is_basis_letter,
    transform_coeffs,
)


def as_logq(qs: QSeries) -> LogQSeries:
    return LogQSeries.from_qseries(qs)


@pytest.mark.parametrize(
    "n,value",
    [(0, F(1)), (1, F(-1, 2)), (2, F(1, 6)), (4, F(-1, 30)), (6, F(1, 42)),
     (8, F(-1, 30)), (12, F(-691, 2730))],
)
def test_bernoulli(n, value):
    assert bernoulli(n) == value


def test_bernoulli_odd_vanish():
    assert all(bernoulli(n) == 0 for n in (3, 5, 7, 9, 11))


class TestEisenstein:
    def test_weight2(self):
        assert eisenstein_qexp(2, 3) == QSeries(3, [1, -24, -72, -96])

    def test_weight4(self):
        assert eisenstein_qexp(4, 2) == QSeries(2, [1, 240, 2160])

    def test_weight6(self):
        assert eisenstein_qexp(6, 2) == QSeries(2, [1, -504, -16632])

    def test_rejects_bad_weight(self):
        for w in (0, -2, 3, 5):
            with pytest.raises(ValueError):
                eisenstein_qexp(w, 5)


class TestExpand:
    def test_discriminant_product_formula(self):
        # oracle: Delta = q * prod (1-q^n)^24
        n = 60
        prod = QSeries.constant(1, n)
        for m in range(1, n + 1):
            prod = prod * QSeries(n, [1] + [0] * (m - 1) + [-1])
        oracle = QSeries(n, [0, 1]) * prod**24
        assert expand(DELTA, n) == oracle

    def test_constant(self):
        assert expand(ONE, 5) == QSeries.constant(1, 5)

    def test_e2(self):
        assert expand(E2, 1) == QSeries(1, [1, -24])

    def test_ring_homomorphism(self):
        rng = random.Random(3)
        for _ in range(8):
            p = random_homogeneous(rng, 2 * rng.randint(0, 5))
            r = random_homogeneous(rng, 2 * rng.randint(0, 5))
            assert expand(p * r, 40) == expand(p, 40) * expand(r, 40)


class TestDerive:
    def test_generator_rules_against_expansion_oracle(self):
        # the Ramanujan images are imported knowledge; this is their
        # required validation: expand(derive(p)) == d_op(expand(p))
        for p in (E2, E4, E6):
            assert as_logq(expand(derive(p), 100)) == d_op(as_logq(expand(p, 100)))

    def test_derive_e2_closed_form(self):
        assert derive(E2) == (E2 * E2 - E4) * F(1, 12)

    def test_derive_constant(self):
        assert derive(ONE).is_zero()

    def test_derive_delta(self):
        assert derive(DELTA) == E2 * DELTA

    def test_leibniz_random(self):
        rng = random.Random(9)
        for _ in range(10):
            p = random_homogeneous(rng, 2 * rng.randint(0, 6))
            r = random_homogeneous(rng, 2 * rng.randint(0, 6))
            assert derive(p * r) == derive(p) * r + p * derive(r)

    def test_weight_raised_by_two(self):
        rng = random.Random(10)
        for _ in range(10):
            p = random_homogeneous(rng, 2 * rng.randint(1, 8))
            d = derive(p)
            if not d.is_zero():
                assert d.weight() == p.weight() + 2


class TestTransform:
    def test_e2(self):
        assert transform_coeffs(E2) == [E2, QMPoly.constant(12)]

    def test_modular_is_depth_zero(self):
        assert transform_coeffs(E4) == [E4]

    def test_e2_squared(self):
        assert transform_coeffs(E2**2) == [E2**2, 24 * E2, QMPoly.constant(144)]

    def test_first_coefficient_is_the_form(self):
        rng = random.Random(12)
        for _ in range(10):
            p = random_homogeneous(rng, 2 * rng.randint(0, 7))
            coeffs = transform_coeffs(p)
            assert coeffs[0] == p
            assert len(coeffs) == p.depth() + 1

    def test_rejects_mixed_weight(self):
        with pytest.raises(ValueError):
            transform_coeffs(E2 + E4)

    def test_derivative_transformation_identity(self):
        # componentwise: (Df)_r = D(f_r) + (k - r + 1) f_{r-1}
        rng = random.Random(13)
        for _ in range(30):
            k = 2 * rng.randint(1, 8)
            p = random_homogeneous(rng, k)
            f = transform_coeffs(p)
            df = transform_coeffs(derive(p))
            top = max(len(df), len(f) + 1)
            for r in range(top):
                lhs = df[r] if r < len(df) else QMPoly()
                fr = f[r] if r < len(f) else QMPoly()
                fr1 = f[r - 1] if 0 <= r - 1 < len(f) else QMPoly()
                assert lhs == derive(fr) + (k - r + 1) * fr1


def test_power_of_delta_eigenproperty():
    # D(Delta^a) = a * E2 * Delta^a for a = 0..3
    for a in range(4):
        assert derive(DELTA**a) == a * E2 * DELTA**a


class TestDecompose:
    def test_e2(self):
        assert decompose(E2) == (1, QMPoly(), QMPoly())

    def test_e2_squared(self):
        assert decompose(E2**2) == (0, E4, 12 * E2)

    def test_modular_passthrough(self):
        assert decompose(E4) == (0, E4, QMPoly())

    def test_weight_zero(self):
        assert decompose(QMPoly.constant(5)) == (0, QMPoly.constant(5), QMPoly())

    def test_roundtrip_random(self):
        rng = random.Random(14)
        for _ in range(200):
            k = 2 * rng.randint(0, 10)
            p = random_homogeneous(rng, k)
            c, m, h = decompose(p)
            assert c * E2 + m + derive(h) == p
            assert m.is_modular()
            if not h.is_zero():
                assert h.weight() == k - 2
            if k != 2:
                assert c == 0

    def test_rejects_mixed_weight(self):
        with pytest.raises(ValueError):
            decompose(ONE + E2)


class TestDerivativeDecomposition:
    def test_modular(self):
        assert derivative_decomposition(E4) == [(F(1), 0, E4)]

    def test_e2_squared(self):
        assert derivative_decomposition(E2**2) == [(F(1), 0, E4), (F(12), 1, E2)]

    def test_e2(self):
        assert derivative_decomposition(E2) == [(F(1), 0, E2)]

    def test_reconstruction_random(self):
        rng = random.Random(15)
        for _ in range(40):
            p = random_homogeneous(rng, 2 * rng.randint(0, 9))
            total = QMPoly()
            for lam, order, g in derivative_decomposition(p):
                assert g == E2 or g.is_modular()
                piece = g
                for _ in range(order):
                    piece = derive(piece)
                total = total + lam * piece
            assert total == p


class TestBasisB:
    def test_weight6(self):
        assert basis_b(6) == [ONE, E2, E4, E6]

    def test_weight8(self):
        assert basis_b(8) == [ONE, E2, E4, E6, E4**2]

    def test_modular_only(self):
        assert basis_b(2, modular_only=True) == [ONE]
        assert E2 not in basis_b(12, modular_only=True)

    def test_weight12_order(self):
        b = basis_b(12)
        # within weight 12: E6^2 before E4^3 (smaller E4-exponent first)
        assert b == [ONE, E2, E4, E6, E4**2, E4 * E6, E6**2, E4**3]

    def test_letters_are_basis_letters(self):
        for letter in basis_b(20):
            assert is_basis_letter(letter)
        assert not is_basis_letter(2 * E4)
        assert not is_basis_letter(E2 * E4)
        assert not is_basis_letter(E2, modular_only=True)
