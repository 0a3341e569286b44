"""Eisenstein series, the q-derivative, and exact quasimodular fitting.

The ring of quasimodular forms is generated by the three Eisenstein series

    E2 = 1 - 24  sum sigma_1(d) q^d        (weight 2)
    E4 = 1 + 240 sum sigma_3(d) q^d        (weight 4)
    E6 = 1 - 504 sum sigma_5(d) q^d        (weight 6)

and is closed under q d/dq via the Ramanujan identities

    q E2' = (E2^2 - E4)/12,  q E4' = (E2 E4 - E6)/3,  q E6' = (E2 E6 - E4^2)/2.

`fit_quasimodular` decides, exactly, whether a truncated series lies in the
span of the monomials E2^a E4^b E6^c of weight <= max_weight, using all
coefficients q^0..q^N. With N strictly larger than the number of monomials
the system is overdetermined, so a successful fit is certified by the
held-out coefficients. A failure only certifies non-membership relative to
(max_weight, N), since a truncation can never refute membership at higher
weight; the refusal value therefore carries both parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from . import linalg
from .divisors import sigma
from .errors import CrossCheckError
from .series import QSeries, format_rational

__all__ = [
    "QModMonomial",
    "QuasimodularFit",
    "NotQuasimodular",
    "FitResult",
    "eisenstein",
    "q_derivative",
    "quasimodular_basis",
    "fit_quasimodular",
]

_EISENSTEIN = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}


@lru_cache(maxsize=None)
def eisenstein(k: int, order: int) -> QSeries:
    """Normalized Eisenstein series E_k truncated at `order`, k in {2, 4, 6}."""
    if k not in _EISENSTEIN:
        raise ValueError(f"k must be one of 2, 4, 6, got {k}")
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    scale, power = _EISENSTEIN[k]
    return QSeries.from_function(
        order, lambda d: 1 if d == 0 else scale * sigma(power, d)
    )


def q_derivative(f: QSeries) -> QSeries:
    """q d/dq: the q^d coefficient becomes d times itself; order is kept."""
    return QSeries([d * c for d, c in enumerate(f.coefficients)], f.order)


@dataclass(frozen=True)
class QModMonomial:
    """Exponent triple (a, b, c) standing for E2^a E4^b E6^c."""

    a: int
    b: int
    c: int

    @property
    def weight(self) -> int:
        return 2 * self.a + 4 * self.b + 6 * self.c

    def sort_key(self) -> tuple[int, int, int, int]:
        return (self.weight, self.a, self.b, self.c)

    def __str__(self) -> str:
        parts = [
            f"E{k}^{e}" if e > 1 else f"E{k}"
            for k, e in ((2, self.a), (4, self.b), (6, self.c))
            if e > 0
        ]
        return "*".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def _monomial_series(a: int, b: int, c: int, order: int) -> QSeries:
    result = QSeries.one(order)
    for k, e in ((2, a), (4, b), (6, c)):
        for _ in range(e):
            result = result * eisenstein(k, order)
    return result


def _monomials_up_to(max_weight: int) -> list[QModMonomial]:
    if max_weight < 0 or max_weight % 2 != 0:
        raise ValueError(f"max_weight must be an even integer >= 0, got {max_weight}")
    found = [
        QModMonomial(a, b, c)
        for a in range(max_weight // 2 + 1)
        for b in range(max_weight // 4 + 1)
        for c in range(max_weight // 6 + 1)
        if 2 * a + 4 * b + 6 * c <= max_weight
    ]
    return sorted(found, key=QModMonomial.sort_key)


def quasimodular_basis(max_weight: int, order: int) -> list[tuple[QModMonomial, QSeries]]:
    """All monomials E2^a E4^b E6^c of weight <= max_weight, expanded to `order`.

    Requires order >= number of monomials, so downstream fits are
    overdetermined.
    """
    monomials = _monomials_up_to(max_weight)
    if order < len(monomials):
        raise ValueError(
            f"order {order} is below the basis size {len(monomials)} "
            f"at weight {max_weight}"
        )
    return [(m, _monomial_series(m.a, m.b, m.c, order)) for m in monomials]


@dataclass(frozen=True)
class QuasimodularFit:
    """Exact combination of weight-bounded monomials matching a series.

    `coefficients` holds only the nonzero entries, in monomial order, so the
    zero series fits as the empty combination.
    """

    max_weight: int
    order: int
    coefficients: tuple[tuple[QModMonomial, Fraction], ...]

    def as_dict(self) -> Mapping[QModMonomial, Fraction]:
        return dict(self.coefficients)

    def reconstruct(self, order: int | None = None) -> QSeries:
        n = self.order if order is None else order
        result = QSeries.zero(n)
        for monomial, coeff in self.coefficients:
            result = result + coeff * _monomial_series(
                monomial.a, monomial.b, monomial.c, n
            )
        return result

    def to_json_dict(self) -> dict:
        return {
            "monomials": [
                {"a": m.a, "b": m.b, "c": m.c, "coeff": format_rational(x)}
                for m, x in self.coefficients
            ],
            "max_weight": self.max_weight,
            "order": self.order,
        }


@dataclass(frozen=True)
class NotQuasimodular:
    """Certified non-membership relative to a weight bound and truncation order."""

    max_weight: int
    order: int

    def to_json_dict(self) -> dict:
        return {
            "not_quasimodular": {"max_weight": self.max_weight, "order": self.order}
        }


FitResult = Union[QuasimodularFit, NotQuasimodular]


def fit_quasimodular(f: QSeries, max_weight: int, order: int) -> FitResult:
    """Express f exactly in the weight-bounded monomial basis, or refuse.

    Solves the linear system over coefficients q^0..q^order. Success requires
    an exact match on every one of those coefficients, including the held-out
    ones beyond the basis size. An underdetermined call (order <= basis size)
    is a precondition failure (ValueError), not a fit failure.
    """
    basis = quasimodular_basis(max_weight, order)
    if order <= len(basis):
        raise ValueError(
            f"order {order} must strictly exceed the basis size {len(basis)}"
        )
    if f.order < order:
        raise ValueError(f"series order {f.order} is below the fit order {order}")
    target = f.truncate(order)
    matrix = [
        [expansion.coefficients[d] for _, expansion in basis]
        for d in range(order + 1)
    ]
    solution = linalg.solve_any(matrix, target.coefficients)
    if solution is None:
        return NotQuasimodular(max_weight, order)
    fit = QuasimodularFit(
        max_weight,
        order,
        tuple(
            (monomial, x)
            for (monomial, _), x in zip(basis, solution)
            if x != 0
        ),
    )
    if fit.reconstruct() != target:
        raise CrossCheckError("fit reconstruction does not match its input")
    return fit
