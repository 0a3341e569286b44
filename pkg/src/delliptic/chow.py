"""Boundary bases, intersection pairings, and the pairing-based class solver.

Five moduli spaces are registered, each with its graded boundary basis and
the exact intersection numbers between bases of complementary codimension:

  M12  moduli of 2-pointed genus-1 curves (dim 2)
  M13  moduli of 3-pointed genus-1 curves (dim 3)
  M2   moduli of genus-2 curves (dim 3)
  M21  moduli of 1-pointed genus-2 curves (dim 4)
  M3   moduli of genus-3 curves (dim 6)

Upper-case labels (Delta_*, Xi_*, Gamma_*) denote pushforwards of fundamental
classes under the boundary gluing maps; lower-case labels are the
corresponding substack classes, smaller by the order of the automorphism
group of the stable graph (delta_0 = Delta_0 / 2, and for the binodal
delta_00 the factor is 8). The M3 codimension-2 basis (lambda^2, ...,
kappa_2) is already written in substack terms, so its conversion factors are
all 1.

Where only part of a basis or pairing is ever needed, only that part is
registered (M13 carries four codimension-2 curve classes against the five
boundary divisors; M21 carries the single divisor Delta_1 against three
curve classes Gamma_(i)). The solver refuses anything not resolvable from
the stored numbers: unlisted intersection numbers are never fabricated.

The registry is immutable after import and every operation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .linalg import solve_unique
from .series import format_rational

__all__ = [
    "ChowSpace",
    "ChowClass",
    "IntersectionProfile",
    "SPACES",
    "space",
    "basis_labels",
    "q_basis_labels",
    "basis_class",
    "pairing",
    "pairing_number",
    "solve_class",
    "to_q_class_basis",
    "pushforward_m21_to_m2",
]

F = Fraction


@dataclass(frozen=True)
class ChowSpace:
    """A registered moduli space: graded basis, pairings, substack factors."""

    space_id: str
    dimension: int
    bases: Mapping[int, tuple[str, ...]]
    # (degree_a, degree_b) -> row-major matrix over (basis_a x basis_b)
    pairings: Mapping[tuple[int, int], tuple[tuple[Fraction, ...], ...]]
    # degree -> upper label -> stable-graph automorphism order
    q_factors: Mapping[int, Mapping[str, int]]
    # upper label -> substack label
    q_labels: Mapping[str, str]


def _build_registry() -> dict[str, ChowSpace]:
    spaces: dict[str, ChowSpace] = {}

    # ---- M12: divisors Delta_0 (irreducible nodal), Delta_1 (reducible) ----
    spaces["M12"] = ChowSpace(
        space_id="M12",
        dimension=2,
        bases={1: ("Delta_0", "Delta_1")},
        pairings={
            (1, 1): (
                (F(0), F(1)),
                (F(1), F(-1, 24)),
            )
        },
        q_factors={},
        q_labels={},
    )

    # ---- M13: five boundary divisors; four curve classes ----
    # Delta_1_S puts the marked points of S on the rational component;
    # Delta_01_S additionally makes the genus-1 component nodal; Delta_11_S
    # is the three-component chain with the points of S on the rational tail.
    m13_div = (
        "Delta_0",
        "Delta_1_{1,2}",
        "Delta_1_{1,3}",
        "Delta_1_{2,3}",
        "Delta_1_{1,2,3}",
    )
    m13_curves = (
        "Delta_01_{1,2}",
        "Delta_01_{1,3}",
        "Delta_11_{1,2}",
        "Delta_11_{1,3}",
    )
    # rows follow m13_curves, columns follow m13_div
    m13_table = (
        (F(0), F(-1), F(0), F(0), F(1)),
        (F(0), F(0), F(-1), F(0), F(1)),
        (F(1), F(0), F(0), F(0), F(-1, 24)),
        (F(1), F(0), F(0), F(0), F(-1, 24)),
    )
    spaces["M13"] = ChowSpace(
        space_id="M13",
        dimension=3,
        bases={1: m13_div, 2: m13_curves},
        pairings={(2, 1): m13_table},
        q_factors={},
        q_labels={},
    )

    # ---- M2: divisors Delta_0, Delta_1; curves Delta_00, Delta_01 ----
    spaces["M2"] = ChowSpace(
        space_id="M2",
        dimension=3,
        bases={1: ("Delta_0", "Delta_1"), 2: ("Delta_00", "Delta_01")},
        pairings={
            # rows Delta_0, Delta_1 x columns Delta_00, Delta_01
            (1, 2): (
                (F(-4), F(1)),
                (F(2), F(-1, 12)),
            )
        },
        q_factors={
            1: {"Delta_0": 2, "Delta_1": 2},
            2: {"Delta_00": 8, "Delta_01": 2},
        },
        q_labels={
            "Delta_0": "delta_0",
            "Delta_1": "delta_1",
            "Delta_00": "delta_00",
            "Delta_01": "delta_01",
        },
    )

    # ---- M21: the five-dimensional middle pairing, Delta_1 vs Gamma_(i) ----
    m21_mid = ("Delta_00", "Delta_01a", "Delta_01b", "Xi_1", "Delta_11")
    m21_table = (
        (F(0), F(0), F(0), F(-4), F(2)),
        (F(0), F(1), F(-1), F(1), F(0)),
        (F(0), F(-1), F(1), F(0), F(-1, 12)),
        (F(-4), F(1), F(0), F(1, 12), F(0)),
        (F(2), F(0), F(-1, 12), F(0), F(1, 288)),
    )
    spaces["M21"] = ChowSpace(
        space_id="M21",
        dimension=4,
        bases={
            1: ("Delta_1",),
            2: m21_mid,
            3: ("Gamma_(5)", "Gamma_(6)", "Gamma_(11)"),
        },
        pairings={
            (2, 2): m21_table,
            (1, 3): ((F(1), F(0), F(-1, 24)),),
        },
        q_factors={
            2: {
                "Delta_00": 8,
                "Delta_01a": 2,
                "Delta_01b": 2,
                "Xi_1": 2,
                "Delta_11": 2,
            }
        },
        q_labels={
            "Delta_00": "delta_00",
            "Delta_01a": "delta_01a",
            "Delta_01b": "delta_01b",
            "Xi_1": "xi_1",
            "Delta_11": "delta_11",
        },
    )

    # ---- M3: codim 2 basis vs the seven boundary surfaces Delta_[i] ----
    m3_codim2 = (
        "lambda^2",
        "lambda*delta_0",
        "lambda*delta_1",
        "delta_0^2",
        "delta_0*delta_1",
        "delta_1^2",
        "kappa_2",
    )
    m3_surfaces = (
        "Delta_[1]",
        "Delta_[4]",
        "Delta_[5]",
        "Delta_[6]",
        "Delta_[8]",
        "Delta_[10]",
        "Delta_[11]",
    )
    # rows follow m3_surfaces, columns follow m3_codim2
    m3_table = (
        (F(0), F(0), F(0), F(0), F(4), F(-3), F(1)),
        (F(0), F(0), F(0), F(8), F(-4), F(2), F(0)),
        (F(0), F(-1, 12), F(1, 24), F(-2), F(7, 12), F(-1, 12), F(0)),
        (F(0), F(0), F(-1, 24), F(0), F(-1, 2), F(1, 12), F(0)),
        (F(0), F(-1, 12), F(1, 24), F(-11, 6), F(1, 2), F(-1, 24), F(1, 24)),
        (F(0), F(0), F(-1, 24), F(0), F(-1, 2), F(1, 8), F(1, 24)),
        (F(1, 288), F(1, 24), F(-1, 288), F(1, 2), F(-1, 24), F(1, 288), F(0)),
    )
    spaces["M3"] = ChowSpace(
        space_id="M3",
        dimension=6,
        bases={2: m3_codim2, 4: m3_surfaces},
        pairings={(4, 2): m3_table},
        # the codim-2 basis is already in substack terms
        q_factors={2: {label: 1 for label in m3_codim2}},
        q_labels={label: label for label in m3_codim2},
    )
    return spaces


SPACES: dict[str, ChowSpace] = _build_registry()


def space(space_id: str) -> ChowSpace:
    try:
        return SPACES[space_id]
    except KeyError:
        raise ValueError(f"unknown space {space_id!r}") from None


def basis_labels(space_id: str, degree: int) -> tuple[str, ...]:
    sp = space(space_id)
    try:
        return sp.bases[degree]
    except KeyError:
        raise ValueError(f"no degree-{degree} basis registered on {space_id}") from None


def q_basis_labels(space_id: str, degree: int) -> tuple[str, ...]:
    sp = space(space_id)
    factors = sp.q_factors.get(degree)
    if factors is None:
        raise ValueError(
            f"no substack conversion registered for {space_id} degree {degree}"
        )
    return tuple(sp.q_labels[label] for label in sp.bases[degree])


@dataclass(frozen=True)
class ChowClass:
    """Exact coefficient vector against a fixed ordered label basis."""

    space_id: str
    degree: int
    labels: tuple[str, ...]
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.coefficients):
            raise ValueError("labels and coefficients must have equal length")

    @classmethod
    def zero(cls, space_id: str, degree: int) -> ChowClass:
        labels = basis_labels(space_id, degree)
        return cls(space_id, degree, labels, (F(0),) * len(labels))

    @classmethod
    def from_coefficients(
        cls, space_id: str, degree: int, values: Mapping[str, Fraction | int]
    ) -> ChowClass:
        """Class on the registered basis from a label -> value mapping."""
        labels = basis_labels(space_id, degree)
        unknown = set(values) - set(labels)
        if unknown:
            raise ValueError(f"labels {sorted(unknown)} not in basis of {space_id}")
        return cls(
            space_id,
            degree,
            labels,
            tuple(F(values.get(label, 0)) for label in labels),
        )

    def coefficient(self, label: str) -> Fraction:
        try:
            return self.coefficients[self.labels.index(label)]
        except ValueError:
            raise ValueError(f"label {label!r} not in this class's basis") from None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def _compatible(self, other: ChowClass) -> None:
        if (self.space_id, self.degree, self.labels) != (
            other.space_id,
            other.degree,
            other.labels,
        ):
            raise ValueError("classes live on different (space, degree, basis)")

    def __add__(self, other: ChowClass) -> ChowClass:
        if not isinstance(other, ChowClass):
            return NotImplemented
        self._compatible(other)
        return ChowClass(
            self.space_id,
            self.degree,
            self.labels,
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients)),
        )

    def __rmul__(self, scalar: int | Fraction) -> ChowClass:
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return ChowClass(
            self.space_id,
            self.degree,
            self.labels,
            tuple(F(scalar) * c for c in self.coefficients),
        )

    def to_json_dict(self) -> dict:
        return {
            "space": self.space_id,
            "degree": self.degree,
            "coeffs": {
                label: format_rational(c)
                for label, c in zip(self.labels, self.coefficients)
            },
        }


def basis_class(space_id: str, degree: int, label: str) -> ChowClass:
    """The basis vector `label` as a ChowClass."""
    return ChowClass.from_coefficients(space_id, degree, {label: 1})


@dataclass(frozen=True)
class IntersectionProfile:
    """Prescribed intersection numbers against dual-basis labels."""

    space_id: str
    values: tuple[tuple[str, Fraction], ...]

    @classmethod
    def from_dict(
        cls, space_id: str, values: Mapping[str, Fraction | int]
    ) -> IntersectionProfile:
        sp = space(space_id)
        registered = {label for labels in sp.bases.values() for label in labels}
        unknown = set(values) - registered
        if unknown:
            raise ValueError(
                f"labels {sorted(unknown)} not registered on {space_id}"
            )
        return cls(space_id, tuple((k, F(v)) for k, v in values.items()))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.values)

    def to_json_dict(self) -> dict:
        return {
            "space": self.space_id,
            "numbers": {label: format_rational(v) for label, v in self.values},
        }


def _pairing_matrix(sp: ChowSpace, degree_a: int, degree_b: int):
    """Entry lookup (label_a, label_b) -> Fraction, or None when unregistered."""
    if (degree_a, degree_b) in sp.pairings:
        table = sp.pairings[(degree_a, degree_b)]
        rows, cols = sp.bases[degree_a], sp.bases[degree_b]
        return {
            (ra, cb): table[i][j]
            for i, ra in enumerate(rows)
            for j, cb in enumerate(cols)
        }
    if (degree_b, degree_a) in sp.pairings:
        table = sp.pairings[(degree_b, degree_a)]
        rows, cols = sp.bases[degree_b], sp.bases[degree_a]
        return {
            (cb, ra): table[i][j]
            for i, ra in enumerate(rows)
            for j, cb in enumerate(cols)
        }
    return None


def pairing_number(
    space_id: str, label_a: str, degree_a: int, label_b: str, degree_b: int
) -> Fraction:
    """Stored intersection number of two basis classes."""
    sp = space(space_id)
    entries = _pairing_matrix(sp, degree_a, degree_b)
    if entries is None:
        raise ValueError(
            f"no pairing registered on {space_id} between degrees "
            f"{degree_a} and {degree_b}"
        )
    return entries[(label_a, label_b)]


def pairing(a: ChowClass, b: ChowClass) -> Fraction:
    """Bilinear extension of the stored pairing tables."""
    if a.space_id != b.space_id:
        raise ValueError("cannot pair classes on different spaces")
    sp = space(a.space_id)
    if a.labels != sp.bases.get(a.degree) or b.labels != sp.bases.get(b.degree):
        raise ValueError("pairing requires classes on the registered bases")
    entries = _pairing_matrix(sp, a.degree, b.degree)
    if entries is None:
        raise ValueError(
            f"degrees {a.degree} and {b.degree} are not paired on {a.space_id}"
        )
    return sum(
        (
            ca * cb * entries[(la, lb)]
            for la, ca in zip(a.labels, a.coefficients)
            for lb, cb in zip(b.labels, b.coefficients)
            if ca != 0 and cb != 0
        ),
        F(0),
    )


def solve_class(
    space_id: str, degree: int, profile: IntersectionProfile
) -> ChowClass:
    """The unique degree-`degree` class with the prescribed dual pairings.

    Every profile label must lie in the complementary-degree basis, and the
    induced exact linear system must be uniquely solvable; a singular or
    inconsistent system raises the corresponding linalg error.
    """
    if profile.space_id != space_id:
        raise ValueError("profile belongs to a different space")
    sp = space(space_id)
    labels = basis_labels(space_id, degree)
    dual_degree = sp.dimension - degree
    dual_labels = sp.bases.get(dual_degree)
    if dual_labels is None:
        raise ValueError(
            f"no degree-{dual_degree} dual basis registered on {space_id}"
        )
    entries = _pairing_matrix(sp, degree, dual_degree)
    if entries is None:
        raise ValueError(
            f"degrees {degree} and {dual_degree} are not paired on {space_id}"
        )
    matrix = []
    rhs = []
    for dual_label, value in profile.values:
        if dual_label not in dual_labels:
            raise ValueError(
                f"profile label {dual_label!r} is not in the degree-"
                f"{dual_degree} basis of {space_id}"
            )
        matrix.append([entries[(label, dual_label)] for label in labels])
        rhs.append(value)
    solution = solve_unique(matrix, rhs)
    return ChowClass(space_id, degree, labels, tuple(solution))


def to_q_class_basis(c: ChowClass) -> ChowClass:
    """Rewrite a class against substack (lower-case) labels.

    delta = Delta / |Aut| means each coefficient is multiplied by the
    registered automorphism order. Requires a factor for every basis label.
    """
    sp = space(c.space_id)
    if c.labels != sp.bases.get(c.degree):
        raise ValueError("conversion requires a class on the registered basis")
    factors = sp.q_factors.get(c.degree)
    if factors is None or any(label not in factors for label in c.labels):
        raise ValueError(
            f"no substack conversion registered for {c.space_id} degree {c.degree}"
        )
    return ChowClass(
        c.space_id,
        c.degree,
        tuple(sp.q_labels[label] for label in c.labels),
        tuple(coeff * factors[label] for label, coeff in zip(c.labels, c.coefficients)),
    )


# The point-forgetting map contracts the three boundary surfaces whose generic
# member has the marked point on a collapsing component, and carries the other
# two onto the boundary divisors (with degree 1 on substacks).
_PUSH_M21_TO_M2 = {
    "delta_00": None,
    "delta_01a": None,
    "delta_01b": None,
    "xi_1": "delta_0",
    "delta_11": "delta_1",
}
_PUSH_M21_TO_M2_UPPER = {
    "Delta_00": None,
    "Delta_01a": None,
    "Delta_01b": None,
    "Xi_1": "Delta_0",
    "Delta_11": "Delta_1",
}


def pushforward_m21_to_m2(c: ChowClass) -> ChowClass:
    """Pushforward of a middle-degree class under the point-forgetting map.

    Accepts the M21 degree-2 class in either basis and lands in the
    divisor classes of M2 in the matching basis.
    """
    if c.space_id != "M21" or c.degree != 2:
        raise ValueError("pushforward is defined for M21 degree-2 classes")
    sp = space("M21")
    if c.labels == sp.bases[2]:
        mapping, target_labels = _PUSH_M21_TO_M2_UPPER, basis_labels("M2", 1)
    elif c.labels == q_basis_labels("M21", 2):
        mapping, target_labels = _PUSH_M21_TO_M2, q_basis_labels("M2", 1)
    else:
        raise ValueError("class is not on a recognized M21 degree-2 basis")
    totals = {label: F(0) for label in target_labels}
    for label, coeff in zip(c.labels, c.coefficients):
        target = mapping[label]
        if target is not None:
            totals[target] += coeff
    return ChowClass(
        "M2", 1, target_labels, tuple(totals[label] for label in target_labels)
    )
