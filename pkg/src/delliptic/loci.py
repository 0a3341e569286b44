"""Locus classes of d-elliptic curves in genus 2 and 3, assembled exactly.

The degree-d elliptic locus on a moduli space of curves is the cycle swept
out by curves admitting a degree-d cover of a genus-1 curve (compactified by
admissible covers). Its class is pinned down by intersecting against the
boundary dual basis: every dual class is moved into a boundary divisor,
where the intersection with the locus decomposes into finitely many cover
topologies, each contributing a product of a lower-genus cover count, an
intersection number from the registered pairing tables, and a local
multiplicity.

Every assembled profile is computed twice, once from per-topology
contribution sums over the counting oracles and once from its closed form
in sigma_1/sigma_3/sigma_5, and the two must agree exactly. Every solved class
is compared against its closed-form expression in the substack basis. Any
disagreement raises CrossCheckError; these checks are the package's defense
against transcription errors in the pairing tables.

Cover topologies are labelled by the pair of boundary strata containing the
stabilized source and the marked target; the three types feeding the genus-3
product-boundary surfaces are D1_D12 (the separating-boundary source carries
a cover of the elliptic tail itself), D1_D13 (a marked genus-2 cover glued
to an elliptic tail) and D11_D14 (an elliptic bridge between two isogenies).

All functions are pure in d and cached; the d-sweep is safe to parallelize.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .chow import (
    ChowClass,
    IntersectionProfile,
    pairing_number,
    pushforward_m21_to_m2,
    q_basis_labels,
    solve_class,
    to_q_class_basis,
)
from .covers import count_pointed_isogenies, count_sublattices
from .divisors import conv2, conv2_weighted, conv3, divisors, sigma, tau
from .errors import CrossCheckError
from .quasimodular import FitResult, fit_quasimodular
from .series import QSeries

__all__ = [
    "pointed_cover_profile_m12",
    "pointed_cover_class_m12",
    "total_ramification_profile_m13",
    "double_pair_profile_m13",
    "boundary_profile_m2",
    "delliptic_class_m2",
    "delliptic_class_m2_closed",
    "fixed_target_profile_m2",
    "fixed_target_class_m2",
    "fixed_target_class_m2_closed",
    "boundary_profile_m21",
    "delliptic_class_m21",
    "delliptic_class_m21_closed",
    "COVER_TYPES_M3",
    "SURFACE_LABELS_M3",
    "surface_contribution_m3",
    "boundary_profile_m3",
    "delliptic_class_m3",
    "delliptic_class_m3_closed",
    "triple_branch_chain_sum",
    "triple_branch_split_sum",
    "triple_branch_cancellation",
    "FAMILIES",
    "family_labels",
    "class_in_family",
    "coefficient_series",
    "certify_quasimodularity",
]

F = Fraction


def _require_positive(d: int) -> None:
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")


# convolution sums with empty-range values, so d = 1 works uniformly
def _c2(d: int) -> int:
    return conv2(d) if d >= 2 else 0


def _c2w(d: int) -> int:
    return conv2_weighted(d) if d >= 2 else 0


def _c3(d: int) -> int:
    return conv3(d) if d >= 3 else 0


def _mismatch(name: str, d: int, got, want) -> CrossCheckError:
    return CrossCheckError(f"{name}(d={d}): contribution route {got} != closed form {want}")


# ---------------------------------------------------------------------------
# auxiliary loci on M12 and M13
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def pointed_cover_profile_m12(d: int) -> IntersectionProfile:
    """Intersection numbers of the locus of genus-1 covers carrying two
    marked points over one target point, against the M12 divisors.

    The irreducible-nodal divisor meets it in the pointed isogenies, of which
    there are (d-1)sigma_1(d); the reducible divisor misses it entirely.
    """
    _require_positive(d)
    return IntersectionProfile.from_dict(
        "M12", {"Delta_0": (d - 1) * sigma(1, d), "Delta_1": 0}
    )


@lru_cache(maxsize=None)
def pointed_cover_class_m12(d: int) -> ChowClass:
    """The M12 class of the two-marked cover locus: (d-1)sigma_1(d) (Delta_0/24 + Delta_1).

    Solved from its intersection profile and checked against the closed form.
    """
    solved = solve_class("M12", 1, pointed_cover_profile_m12(d))
    factor = F((d - 1) * sigma(1, d))
    closed = ChowClass.from_coefficients(
        "M12", 1, {"Delta_0": factor / 24, "Delta_1": factor}
    )
    if solved != closed:
        raise _mismatch("pointed_cover_class_m12", d, solved, closed)
    return solved


@lru_cache(maxsize=None)
def total_ramification_profile_m13(a: int) -> IntersectionProfile:
    """Intersection numbers on M13 of the locus of genus-1 covers of a line,
    totally ramified at two marked points and simply at a third.

    Meets the irreducible-nodal divisor in 2(a^2 - 1) points (the doubly
    totally ramified pencils) and misses every reducible divisor.
    """
    _require_positive(a)
    values = {"Delta_0": 2 * (a * a - 1)}
    for s in ("{1,2}", "{1,3}", "{2,3}", "{1,2,3}"):
        values[f"Delta_1_{s}"] = 0
    return IntersectionProfile.from_dict("M13", values)


@lru_cache(maxsize=None)
def double_pair_profile_m13(a: int, b: int) -> IntersectionProfile:
    """Intersection numbers on M13 of the glued genus-0 double-pair cover
    locus (two pairs of points with equal images, ramified to orders a and b,
    one pair identified to a node).

    The numbers are independent of (a, b): the locus meets exactly the two
    reducible divisors that keep the simple branch point on the genus-1 part,
    each once, and misses the rest.
    """
    _require_positive(a)
    _require_positive(b)
    return IntersectionProfile.from_dict(
        "M13",
        {
            "Delta_0": 0,
            "Delta_1_{2,3}": 1,
            "Delta_1_{1,2,3}": 1,
            "Delta_1_{1,2}": 0,
            "Delta_1_{1,3}": 0,
        },
    )


# ---------------------------------------------------------------------------
# genus 2, unpointed
# ---------------------------------------------------------------------------

# Forgetting the third marked point pulls the M12 boundary divisors back to
# these M13 boundary divisors.
_M12_DIVISOR_PULLBACK = {
    "Delta_0": ("Delta_0",),
    "Delta_1": ("Delta_1_{1,2}", "Delta_1_{1,2,3}"),
}


def _chain_cover_term(d: int, m13_labels: tuple[str, ...]) -> Fraction:
    """Type (Delta_0, Delta_0) contribution: chains of rational curves wound
    a times around an irreducible nodal target, weighted by multiplicity m
    per divisor splitting d = a*m."""
    total = F(0)
    for a in divisors(d):
        m = d // a
        profile = total_ramification_profile_m13(a).as_dict()
        total += m * sum(profile[label] for label in m13_labels)
    return total


@lru_cache(maxsize=None)
def boundary_profile_m2(d: int) -> IntersectionProfile:
    """Intersection numbers of the genus-2 d-elliptic locus with the two
    boundary curve classes of M2.

    Assembled from the per-topology contributions and checked against the
    closed forms 4(d-1)sigma_1(d) and 2*conv2(d); the reducible dual is also
    recomputed through the separating-node boundary as an extra consistency
    route.
    """
    _require_positive(d)
    closed_00 = F(4 * (d - 1) * sigma(1, d))
    closed_01 = F(2 * _c2(d))

    m12 = pointed_cover_profile_m12(d).as_dict()
    pair12 = lambda a, b: pairing_number("M12", a, 1, b, 1)

    # dual Delta_00, realized as the irreducible-nodal curve class:
    #   bridge covers (x2 multiplicity), chain covers, double-chain covers
    from_00 = (
        2 * m12["Delta_0"]
        + _chain_cover_term(d, _M12_DIVISOR_PULLBACK["Delta_0"])
        + 2 * _c2(d) * pair12("Delta_0", "Delta_0")
    )
    # dual Delta_01 through the product boundary: [point x moduli] paired
    # with the diagonal decomposition gives 1
    from_01_product = F(2 * _c2(d))
    # dual Delta_01 through the irreducible-nodal boundary
    from_01_boundary = (
        2 * m12["Delta_1"]
        + _chain_cover_term(d, _M12_DIVISOR_PULLBACK["Delta_1"])
        + 2 * _c2(d) * pair12("Delta_1", "Delta_0")
    )

    if from_00 != closed_00:
        raise _mismatch("boundary_profile_m2[Delta_00]", d, from_00, closed_00)
    if from_01_product != closed_01:
        raise _mismatch("boundary_profile_m2[Delta_01]", d, from_01_product, closed_01)
    if from_01_boundary != closed_01:
        raise _mismatch(
            "boundary_profile_m2[Delta_01/boundary]", d, from_01_boundary, closed_01
        )
    return IntersectionProfile.from_dict(
        "M2", {"Delta_00": closed_00, "Delta_01": closed_01}
    )


def delliptic_class_m2_closed(d: int) -> ChowClass:
    """Closed form of the genus-2 d-elliptic divisor class, substack basis."""
    _require_positive(d)
    s1, s3 = sigma(1, d), sigma(3, d)
    return ChowClass(
        "M2",
        1,
        q_basis_labels("M2", 1),
        (F(2 * s3 - 2 * d * s1), F(4 * s3 - 4 * s1)),
    )


@lru_cache(maxsize=None)
def delliptic_class_m2(d: int) -> ChowClass:
    """The genus-2 d-elliptic divisor class, solved from its boundary profile
    and verified against the closed form. Zero at d = 1."""
    solved = to_q_class_basis(solve_class("M2", 1, boundary_profile_m2(d)))
    closed = delliptic_class_m2_closed(d)
    if solved != closed:
        raise _mismatch("delliptic_class_m2", d, solved, closed)
    return solved


# ---------------------------------------------------------------------------
# genus 2, fixed elliptic target
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def fixed_target_profile_m2(d: int) -> IntersectionProfile:
    """Intersection numbers with the M2 divisors of the locus of genus-2
    curves covering one fixed general elliptic curve.

    The contribution route counts covers structurally: the irreducible-nodal
    divisor meets the locus in pointed isogenies (subgroup enumeration), and
    the reducible divisor in ordered pairs of isogenies (sublattice counts),
    each cover with multiplicity 2.
    """
    _require_positive(d)
    closed_0 = F((d - 1) * sigma(1, d))
    closed_1 = F(2 * _c2(d))

    # pointed isogenies are double-counted by the sign involution, and each
    # cover meets the test curve with multiplicity 2
    from_isogenies = F(count_pointed_isogenies(d))
    from_pairs = 2 * sum(
        F(count_sublattices(d1) * count_sublattices(d - d1)) for d1 in range(1, d)
    )
    if from_isogenies != closed_0:
        raise _mismatch("fixed_target_profile_m2[Delta_0]", d, from_isogenies, closed_0)
    if from_pairs != closed_1:
        raise _mismatch("fixed_target_profile_m2[Delta_1]", d, from_pairs, closed_1)
    return IntersectionProfile.from_dict(
        "M2", {"Delta_0": closed_0, "Delta_1": closed_1}
    )


def fixed_target_class_m2_closed(d: int) -> ChowClass:
    """Closed form of the fixed-target class in the substack curve basis."""
    _require_positive(d)
    s1, s3 = sigma(1, d), sigma(3, d)
    return ChowClass(
        "M2",
        2,
        q_basis_labels("M2", 2),
        (
            (F(-22, 5) * d + F(2, 5)) * s1 + 4 * s3,
            (F(-12, 5) * d - F(8, 5)) * s1 + 4 * s3,
        ),
    )


@lru_cache(maxsize=None)
def fixed_target_class_m2(d: int) -> ChowClass:
    """Class of genus-2 covers of a fixed elliptic curve, solved and verified."""
    solved = to_q_class_basis(solve_class("M2", 2, fixed_target_profile_m2(d)))
    closed = fixed_target_class_m2_closed(d)
    if solved != closed:
        raise _mismatch("fixed_target_class_m2", d, solved, closed)
    return solved


# ---------------------------------------------------------------------------
# genus 2, one marked ramification point
# ---------------------------------------------------------------------------

# The five M21 dual surfaces realized inside the irreducible-nodal boundary
# (whose interior is M13); Delta_11 lives only in the separating boundary.
_M21_DUAL_IN_M13 = {
    "Delta_00": "Delta_0",
    "Delta_01a": "Delta_1_{2,3}",
    "Delta_01b": "Delta_1_{1,2,3}",
    "Xi_1": "Delta_1_{1,3}",
}


def _double_chain_term(d: int, m13_label: str) -> Fraction:
    """Type (Delta_00, Delta_0) contribution: two chains of rational curves
    wound a and b times, weight m*b per splitting a*m + b*n = d."""
    total = F(0)
    for a in range(1, d + 1):
        for m in range(1, d // a + 1):
            rest = d - a * m
            if rest <= 0:
                continue
            for b in divisors(rest):
                profile = double_pair_profile_m13(a, b).as_dict()
                total += m * b * profile[m13_label]
    return total


@lru_cache(maxsize=None)
def boundary_profile_m21(d: int) -> IntersectionProfile:
    """Intersection numbers of the marked genus-2 d-elliptic locus with the
    five boundary surface classes of M21.

    Duals realized in the irreducible-nodal boundary collect bridge, chain
    and double-chain cover contributions; duals realized in the separating
    boundary collect the isogeny-pair contribution against the diagonal
    decomposition. The two surfaces visible from both boundaries are computed
    both ways and must agree, and every entry must match its closed form.
    """
    _require_positive(d)
    s1 = sigma(1, d)
    closed = {
        "Delta_00": F(4 * (d - 1) * s1),
        "Delta_01a": F(_c2(d)),
        "Delta_01b": F(_c2(d)),
        "Xi_1": F(-1, 24) * (d - 1) * s1,
        "Delta_11": F(-1, 24) * _c2(d),
    }

    # bridge covers land on the section curves indexed {1,2} and {1,3},
    # carrying the solved two-marked cover class
    cover_class = pointed_cover_class_m12(d)
    x = cover_class.coefficient("Delta_0")
    y = cover_class.coefficient("Delta_1")

    def bridge_term(m13_label: str) -> Fraction:
        total = F(0)
        for s in ("{1,2}", "{1,3}"):
            total += x * pairing_number("M13", f"Delta_01_{s}", 2, m13_label, 1)
            total += y * pairing_number("M13", f"Delta_11_{s}", 2, m13_label, 1)
        return total

    def chain_term(m13_label: str) -> Fraction:
        return _chain_cover_term(d, (m13_label,))

    from_nodal = {
        dual: bridge_term(label) + chain_term(label) + _double_chain_term(d, label)
        for dual, label in _M21_DUAL_IN_M13.items()
    }

    # separating boundary: the diagonal decomposes as
    # [point x moduli] + [Delta_1 x point]; its numbers against the three
    # surfaces contained there reduce to the M12 pairing table
    pair12 = lambda a, b: pairing_number("M12", a, 1, b, 1)
    diagonal_numbers = {
        "Delta_01a": F(1),  # moduli x point against point x moduli
        "Delta_01b": pair12("Delta_1", "Delta_0"),
        "Delta_11": pair12("Delta_1", "Delta_1"),
    }
    from_separating = {
        dual: _c2(d) * value for dual, value in diagonal_numbers.items()
    }

    for dual in ("Delta_01a", "Delta_01b"):
        if from_nodal[dual] != from_separating[dual]:
            raise CrossCheckError(
                f"boundary_profile_m21[{dual}](d={d}): nodal route "
                f"{from_nodal[dual]} != separating route {from_separating[dual]}"
            )

    assembled = {
        "Delta_00": from_nodal["Delta_00"],
        "Delta_01a": from_nodal["Delta_01a"],
        "Delta_01b": from_nodal["Delta_01b"],
        "Xi_1": from_nodal["Xi_1"],
        "Delta_11": from_separating["Delta_11"],
    }
    for dual, value in assembled.items():
        if value != closed[dual]:
            raise _mismatch(f"boundary_profile_m21[{dual}]", d, value, closed[dual])
    return IntersectionProfile.from_dict("M21", closed)


def delliptic_class_m21_closed(d: int) -> ChowClass:
    """Closed form of the marked genus-2 d-elliptic class, substack basis."""
    _require_positive(d)
    s1, s3 = sigma(1, d), sigma(3, d)
    return ChowClass(
        "M21",
        2,
        q_basis_labels("M21", 2),
        (
            F(-1, 12) * d * s1 + F(1, 12) * s3,
            F(1, 12) * s1 - F(1, 12) * s3,
            (-d - F(1, 12)) * s1 + F(13, 12) * s3,
            F(2 * s3 - 2 * d * s1),
            F(4 * s3 - 4 * s1),
        ),
    )


@lru_cache(maxsize=None)
def delliptic_class_m21(d: int) -> ChowClass:
    """The marked genus-2 d-elliptic class, solved through the middle pairing
    and verified against the closed form; forgetting the marked point must
    recover the unpointed class."""
    solved = to_q_class_basis(solve_class("M21", 2, boundary_profile_m21(d)))
    closed = delliptic_class_m21_closed(d)
    if solved != closed:
        raise _mismatch("delliptic_class_m21", d, solved, closed)
    pushed = pushforward_m21_to_m2(solved)
    unpointed = delliptic_class_m2(d)
    if pushed != unpointed:
        raise CrossCheckError(
            f"delliptic_class_m21(d={d}): pushforward {pushed} != "
            f"unpointed class {unpointed}"
        )
    return solved


# ---------------------------------------------------------------------------
# genus 3
# ---------------------------------------------------------------------------

COVER_TYPES_M3 = ("D1_D12", "D1_D13", "D11_D14")

# Test surfaces in the separating boundary of M3, as products: an M21 surface
# class times a point, or an M21 curve class times the elliptic-tail factor.
_SURFACE_X_POINT = {
    "Delta_[1]": "Delta_00",
    "Delta_[7]": "Delta_01b",
    "Delta_[8]": "Xi_1",
    "Delta_[10]": "Delta_01a",
    "Delta_[11]a": "Delta_11",
}
_CURVE_X_MODULI = {
    "Delta_[5]": "Gamma_(5)",
    "Delta_[6]": "Gamma_(6)",
    "Delta_[11]b": "Gamma_(11)",
}

SURFACE_LABELS_M3 = tuple(sorted(_SURFACE_X_POINT) + sorted(_CURVE_X_MODULI))

# Point-forgetting pushforwards feeding the bridge-type contribution.
# The surface-class pushforwards follow from the M21 -> M2 pushforward; the
# curve-class pushforwards are registered data validated by the closed-form
# checks on every assembled row (the per-surface map degrees have no other
# in-package derivation).
_FORGET_SURFACE = {
    "Delta_00": None,
    "Delta_01a": None,
    "Delta_01b": None,
    "Xi_1": "Delta_0",
    "Delta_11": "Delta_1",
}
_FORGET_CURVE = {
    "Gamma_(5)": "Delta_00",
    "Gamma_(6)": None,
    "Gamma_(11)": "Delta_01",
}


def surface_contribution_m3(d: int, cover_type: str, surface_label: str) -> Fraction:
    """Contribution of one cover topology to the intersection of the genus-3
    d-elliptic locus with one registered test surface.

    D1_D13 glues a marked genus-2 cover to an elliptic tail (24 labellings of
    the branch points); D11_D14 splits off a two-marked elliptic bridge
    between a pair of isogenies (24 labellings); D1_D12 carries a genus-2
    cover of the elliptic tail itself, summed over the degree splitting, with
    multiplicity 2 for the contracted bridge and 6 labellings.
    """
    _require_positive(d)
    if cover_type not in COVER_TYPES_M3:
        raise ValueError(f"unknown cover type {cover_type!r}")
    if surface_label in _SURFACE_X_POINT:
        m21_label, is_surface = _SURFACE_X_POINT[surface_label], True
    elif surface_label in _CURVE_X_MODULI:
        m21_label, is_surface = _CURVE_X_MODULI[surface_label], False
    else:
        raise ValueError(f"unregistered surface label {surface_label!r}")

    if cover_type == "D1_D13":
        if not is_surface:
            return F(0)  # projection collapses curve x moduli factors
        return 24 * boundary_profile_m21(d).as_dict()[m21_label]

    if cover_type == "D11_D14":
        if is_surface:
            return 24 * _c2(d) * pairing_number("M21", m21_label, 2, "Delta_01a", 2)
        return 24 * _c2(d) * pairing_number("M21", "Delta_1", 1, m21_label, 3)

    # D1_D12
    total = F(0)
    for d1 in range(1, d):
        d2 = d - d1
        if is_surface:
            target = _FORGET_SURFACE[m21_label]
            if target is not None:
                total += sigma(1, d2) * fixed_target_profile_m2(d1).as_dict()[target]
        else:
            target = _FORGET_CURVE[m21_label]
            if target is not None:
                total += sigma(1, d2) * boundary_profile_m2(d1).as_dict()[target]
    return 12 * total


def _surface_total(d: int, surface_label: str) -> Fraction:
    return sum(
        (surface_contribution_m3(d, t, surface_label) for t in COVER_TYPES_M3), F(0)
    )


@lru_cache(maxsize=None)
def boundary_profile_m3(d: int) -> IntersectionProfile:
    """Intersection numbers of the genus-3 d-elliptic locus with the seven
    boundary surface classes of M3.

    Six rows are per-topology sums over the separating-boundary surfaces;
    the last surface class is recovered from the square of a fixed genus-2
    curve, whose total is the doubly-totally-ramified count summed over
    chain windings, 48(d sigma_3 - sigma_1), and which decomposes as
    2(Delta_[1] + Delta_[4]).

    Built-in consistency: the two product presentations of Delta_[11] must
    agree; the contributions to Delta_[7] (a class rationally equivalent to
    Delta_[6]) must cancel to zero; the chain-winding sum must match its
    closed form; and every assembled row must match its closed form.
    """
    _require_positive(d)
    s1, s3 = sigma(1, d), sigma(3, d)

    rows: dict[str, Fraction] = {}
    for label in ("Delta_[1]", "Delta_[5]", "Delta_[6]", "Delta_[8]", "Delta_[10]"):
        rows[label] = _surface_total(d, label)

    route_a = _surface_total(d, "Delta_[11]a")
    route_b = _surface_total(d, "Delta_[11]b")
    if route_a != route_b:
        raise CrossCheckError(
            f"boundary_profile_m3(d={d}): Delta_[11] routes disagree "
            f"({route_a} vs {route_b})"
        )
    rows["Delta_[11]"] = route_a

    vanishing = _surface_total(d, "Delta_[7]")
    if vanishing != 0:
        raise CrossCheckError(
            f"boundary_profile_m3(d={d}): Delta_[7] total {vanishing} != 0"
        )

    squared_curve_direct = sum(
        48 * (a**4 - 1) * (d // a) for a in divisors(d)
    )
    squared_curve_closed = 48 * (d * s3 - s1)
    if squared_curve_direct != squared_curve_closed:
        raise CrossCheckError(
            f"boundary_profile_m3(d={d}): chain-winding sum "
            f"{squared_curve_direct} != {squared_curve_closed}"
        )
    rows["Delta_[4]"] = F(squared_curve_closed, 2) - rows["Delta_[1]"]

    closed = {
        "Delta_[1]": F(96 * (d - 1) * s1),
        "Delta_[4]": F(24 * (d * s3 - s1) - 96 * (d - 1) * s1),
        "Delta_[5]": F(24 * (2 * _c2w(d) - _c2(d))),
        "Delta_[6]": F(0),
        "Delta_[8]": F(12 * (_c2w(d) + _c2(d)) - (d - 1) * s1),
        "Delta_[10]": F(48 * _c2(d)),
        "Delta_[11]": F(24 * _c3(d) - _c2(d)),
    }
    for label, value in rows.items():
        if value != closed[label]:
            raise _mismatch(f"boundary_profile_m3[{label}]", d, value, closed[label])
    return IntersectionProfile.from_dict("M3", closed)


def delliptic_class_m3_closed(d: int) -> ChowClass:
    """Closed form of the genus-3 d-elliptic class against
    (lambda^2, lambda*delta_0, lambda*delta_1, delta_0^2, delta_0*delta_1,
    delta_1^2, kappa_2)."""
    _require_positive(d)
    s1, s3, s5 = sigma(1, d), sigma(3, d), sigma(5, d)
    return ChowClass(
        "M3",
        2,
        q_basis_labels("M3", 2),
        (
            F((-6264 * d * d + 6780 * d - 960) * s1 + (5592 * d - 5400) * s3 + 252 * s5),
            F((1224 * d * d - 1068 * d + 156) * s1 + (-1152 * d + 840) * s3),
            F((2160 * d * d - 696 * d + 216) * s1 + (-1920 * d + 240) * s3),
            F((-54 * d * d + 39 * d - 6) * s1 + (51 * d - 30) * s3),
            F((-216 * d * d + 36 * d - 12) * s1 + 192 * d * s3),
            F((-216 * d * d - 132 * d + 36) * s1 + (192 * d + 120) * s3),
            F((216 * d * d - 444 * d + 60) * s1 + (-192 * d + 360) * s3),
        ),
    )


@lru_cache(maxsize=None)
def delliptic_class_m3(d: int) -> ChowClass:
    """The genus-3 d-elliptic class: the exact 7x7 solve of the boundary
    profile, verified coefficient by coefficient against the closed form."""
    solved = to_q_class_basis(solve_class("M3", 2, boundary_profile_m3(d)))
    closed = delliptic_class_m3_closed(d)
    if solved != closed:
        raise _mismatch("delliptic_class_m3", d, solved, closed)
    return solved


# ---------------------------------------------------------------------------
# marked-pair contributions with a triple branch point
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def triple_branch_chain_sum(d: int) -> Fraction:
    """Single-chain covers through a triple point: over each winding a | d,
    (a-1)(a-2)/6 covers with multiplicity m = d/a.

    Equals (d/6 + 1/3) sigma_1(d) - d tau(d)/2; the divisor-count term makes
    the generating series non-quasimodular on its own.
    """
    _require_positive(d)
    direct = sum(F((a - 1) * (a - 2), 6) * (d // a) for a in divisors(d))
    closed = (F(d, 6) + F(1, 3)) * sigma(1, d) - F(d, 2) * tau(d)
    if direct != closed:
        raise _mismatch("triple_branch_chain_sum", d, direct, closed)
    return direct


@lru_cache(maxsize=None)
def triple_branch_split_sum(d: int) -> Fraction:
    """Split covers through a triple point: weight m*b over the splittings
    a*m + b*n = d with distinct windings a != b (equal windings admit no
    connected cover).

    Brute-force enumeration, checked against
    conv2(d) - d sigma_1(d)/2 + d tau(d)/2; the opposite divisor-count term
    cancels the one in the single-chain sum.
    """
    _require_positive(d)
    direct = 0
    for a in range(1, d + 1):
        for m in range(1, d // a + 1):
            rest = d - a * m
            if rest <= 0:
                continue
            for b in divisors(rest):
                if b != a:
                    direct += m * b
    closed = _c2(d) - F(d, 2) * sigma(1, d) + F(d, 2) * tau(d)
    if direct != closed:
        raise _mismatch("triple_branch_split_sum", d, direct, closed)
    return F(direct)


def triple_branch_cancellation(
    order: int, max_weight: int = 6
) -> tuple[FitResult, FitResult, FitResult]:
    """Fit the two triple-branch series and their sum at the given weight.

    Each part carries a d*tau(d) term of opposite sign, so the parts refuse
    the fit individually while the sum succeeds.
    """
    chain = QSeries.from_function(
        order, lambda d: 0 if d == 0 else triple_branch_chain_sum(d)
    )
    split = QSeries.from_function(
        order, lambda d: 0 if d == 0 else triple_branch_split_sum(d)
    )
    return (
        fit_quasimodular(chain, max_weight, order),
        fit_quasimodular(split, max_weight, order),
        fit_quasimodular(chain + split, max_weight, order),
    )


# ---------------------------------------------------------------------------
# quasimodularity certification
# ---------------------------------------------------------------------------

FAMILIES = {
    "m2": ("M2", 1, delliptic_class_m2),
    "m2e": ("M2", 2, fixed_target_class_m2),
    "m21": ("M21", 2, delliptic_class_m21),
    "m3": ("M3", 2, delliptic_class_m3),
}


def family_labels(family: str) -> tuple[str, ...]:
    """Substack coefficient labels of one class family."""
    if family not in FAMILIES:
        raise ValueError(f"unknown class family {family!r}")
    space_id, degree, _ = FAMILIES[family]
    return q_basis_labels(space_id, degree)


def class_in_family(family: str, d: int) -> ChowClass:
    if family not in FAMILIES:
        raise ValueError(f"unknown class family {family!r}")
    return FAMILIES[family][2](d)


def coefficient_series(family: str, label: str, order: int) -> QSeries:
    """Generating series of one substack coefficient across d = 1..order."""
    if label not in family_labels(family):
        raise ValueError(f"unknown coefficient label {label!r} for family {family!r}")
    return QSeries.from_function(
        order,
        lambda d: 0 if d == 0 else class_in_family(family, d).coefficient(label),
    )


def certify_quasimodularity(
    order: int, max_weight: int = 6
) -> dict[str, dict[str, FitResult]]:
    """Fit every coefficient series of every class family.

    Returns {family: {label: FitResult}}; membership of all four generating
    series in the quasimodular ring means every fit succeeds.
    """
    return {
        family: {
            label: fit_quasimodular(
                coefficient_series(family, label, order), max_weight, order
            )
            for label in family_labels(family)
        }
        for family in FAMILIES
    }
