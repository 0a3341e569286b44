"""Eisenstein expansions, derivative identities, and exact fitting."""

import random
from fractions import Fraction as F

import pytest

from delliptic import linalg
from delliptic.divisors import sigma, tau
from delliptic.quasimodular import (
    NotQuasimodular,
    QModMonomial,
    QuasimodularFit,
    eisenstein,
    fit_quasimodular,
    q_derivative,
    quasimodular_basis,
)
from delliptic.series import QSeries


class TestEisenstein:
    def test_weight2_expansion(self):
        assert eisenstein(2, 2) == QSeries([1, -24, -72])

    def test_weight4_expansion(self):
        assert eisenstein(4, 1) == QSeries([1, 240])

    def test_weight6_constant_term(self):
        assert eisenstein(6, 0) == QSeries([1])

    def test_general_coefficients(self):
        e6 = eisenstein(6, 20)
        for d in range(1, 21):
            assert e6.coefficient(d) == -504 * sigma(5, d)

    def test_rejects_bad_weight(self):
        with pytest.raises(ValueError):
            eisenstein(8, 10)
        with pytest.raises(ValueError):
            eisenstein(2, -1)


class TestDerivative:
    def test_constant_derivative(self):
        assert q_derivative(QSeries.one(5)) == QSeries.zero(5)

    def test_order_preserved(self):
        f = QSeries([1, 2, 3, 4])
        assert q_derivative(f) == QSeries([0, 2, 6, 12])

    def test_weight2_identity(self):
        e2, e4 = eisenstein(2, 30), eisenstein(4, 30)
        assert q_derivative(e2) == F(1, 12) * (e2 * e2 - e4)

    def test_weight4_identity(self):
        e2, e4, e6 = (eisenstein(k, 30) for k in (2, 4, 6))
        assert q_derivative(e4) == F(1, 3) * (e2 * e4 - e6)

    def test_weight6_identity(self):
        e2, e4, e6 = (eisenstein(k, 30) for k in (2, 4, 6))
        assert q_derivative(e6) == F(1, 2) * (e2 * e6 - e4 * e4)


class TestBasis:
    def test_weight0(self):
        basis = quasimodular_basis(0, 10)
        assert [m for m, _ in basis] == [QModMonomial(0, 0, 0)]
        assert basis[0][1] == QSeries.one(10)

    def test_weight4_count(self):
        # ascending lexicographic order on (weight, a, b, c)
        monomials = [m for m, _ in quasimodular_basis(4, 10)]
        assert monomials == [
            QModMonomial(0, 0, 0),
            QModMonomial(1, 0, 0),
            QModMonomial(0, 1, 0),
            QModMonomial(2, 0, 0),
        ]

    def test_weight6_count(self):
        monomials = {(m.a, m.b, m.c) for m, _ in quasimodular_basis(6, 10)}
        assert monomials == {
            (0, 0, 0),
            (1, 0, 0),
            (2, 0, 0),
            (0, 1, 0),
            (3, 0, 0),
            (1, 1, 0),
            (0, 0, 1),
        }

    def test_ordered_by_weight(self):
        keys = [m.sort_key() for m, _ in quasimodular_basis(8, 30)]
        assert keys == sorted(keys)

    def test_rejects_small_order(self):
        with pytest.raises(ValueError):
            quasimodular_basis(6, 5)

    def test_rejects_odd_weight(self):
        with pytest.raises(ValueError):
            quasimodular_basis(3, 30)


class TestFit:
    def test_sigma3_series(self):
        f = QSeries.from_function(30, lambda d: 0 if d == 0 else sigma(3, d))
        fit = fit_quasimodular(f, 4, 30)
        assert isinstance(fit, QuasimodularFit)
        # (E4 - 1)/240
        assert fit.as_dict() == {
            QModMonomial(0, 1, 0): F(1, 240),
            QModMonomial(0, 0, 0): F(-1, 240),
        }

    def test_divisor_count_series_refused(self):
        f = QSeries.from_function(30, lambda d: 0 if d == 0 else d * tau(d))
        fit = fit_quasimodular(f, 6, 30)
        assert fit == NotQuasimodular(6, 30)

    def test_zero_series_empty_combination(self):
        fit = fit_quasimodular(QSeries.zero(30), 6, 30)
        assert isinstance(fit, QuasimodularFit)
        assert fit.coefficients == ()
        assert fit.reconstruct() == QSeries.zero(30)

    @pytest.mark.parametrize("k", [2, 4, 6])
    def test_eisenstein_is_its_own_fit(self, k):
        fit = fit_quasimodular(eisenstein(k, 30), k, 30)
        exponents = {2: (1, 0, 0), 4: (0, 1, 0), 6: (0, 0, 1)}[k]
        assert fit.as_dict() == {QModMonomial(*exponents): F(1)}

    def test_polynomial_sigma_closure(self):
        # P(d) sigma_k(d) lands at weight 2 deg(P) + k + 1 for k odd
        rng = random.Random(404)
        for k in (1, 3, 5):
            for degree in (0, 1, 2):
                coeffs = [rng.randint(-5, 5) for _ in range(degree)] + [
                    rng.randint(1, 5)
                ]
                poly = lambda d: sum(c * d**i for i, c in enumerate(coeffs))
                f = QSeries.from_function(
                    30, lambda d: 0 if d == 0 else poly(d) * sigma(k, d)
                )
                fit = fit_quasimodular(f, 2 * degree + k + 1, 30)
                assert isinstance(fit, QuasimodularFit), (k, degree)

    def test_held_out_coefficients_catch_fakes(self):
        # agree with a fit target on the first 8 coefficients, diverge later
        base = QSeries.from_function(30, lambda d: 0 if d == 0 else sigma(3, d))
        corrupted = QSeries(
            [c if d < 8 else c + 1 for d, c in enumerate(base.coefficients)]
        )
        assert fit_quasimodular(corrupted, 4, 30) == NotQuasimodular(4, 30)

    def test_stable_under_basis_permutation(self):
        f = QSeries.from_function(
            30, lambda d: 0 if d == 0 else (3 * d - 1) * sigma(1, d)
        )
        reference = fit_quasimodular(f, 6, 30)
        assert isinstance(reference, QuasimodularFit)
        basis = quasimodular_basis(6, 30)
        rng = random.Random(505)
        for _ in range(5):
            shuffled = basis[:]
            rng.shuffle(shuffled)
            matrix = [
                [expansion.coefficients[d] for _, expansion in shuffled]
                for d in range(31)
            ]
            solution = linalg.solve_any(matrix, f.coefficients)
            assert solution is not None
            rebuilt = QSeries.zero(30)
            for (_, expansion), x in zip(shuffled, solution):
                rebuilt = rebuilt + x * expansion
            assert rebuilt == reference.reconstruct()

    def test_underdetermined_is_precondition_failure(self):
        with pytest.raises(ValueError):
            fit_quasimodular(QSeries.zero(30), 6, 7)

    def test_short_series_rejected(self):
        with pytest.raises(ValueError):
            fit_quasimodular(QSeries.zero(10), 6, 20)

    def test_json_shapes(self):
        refused = NotQuasimodular(6, 30).to_json_dict()
        assert refused == {"not_quasimodular": {"max_weight": 6, "order": 30}}
        f = QSeries.from_function(30, lambda d: 0 if d == 0 else sigma(1, d))
        fitted = fit_quasimodular(f, 2, 30).to_json_dict()
        assert fitted["monomials"] == [
            {"a": 0, "b": 0, "c": 0, "coeff": "1/24"},
            {"a": 1, "b": 0, "c": 0, "coeff": "-1/24"},
        ]
