"""Named verification checks and the machine-readable report.

Each check re-runs one slab of the package's internal redundancy: dual-route
profile assembly, solver-vs-closed-form class comparisons, the pushforward
coherence, counting-oracle closed forms, the convolution and derivative
identities, the triple-branch cancellation, and the quasimodularity
certification. A check passes silently inside the operations it calls (those
raise CrossCheckError on any disagreement), so a failure surfaces here with
the offending check named.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from . import chow, loci
from .covers import (
    Partition,
    count_dd2222,
    count_pointed_isogenies,
    count_sublattices,
    hurwitz_number,
)
from .divisors import conv2, conv2_weighted, conv3, sigma
from .errors import CrossCheckError
from .linalg import solve_unique
from .quasimodular import NotQuasimodular, QuasimodularFit, eisenstein, q_derivative

SCHEMA = "delliptic/1"

F = Fraction


def _check_pairing_tables() -> str:
    counted = 0
    for space_id, sp in chow.SPACES.items():
        for (deg_a, deg_b), table in sp.pairings.items():
            rows, cols = sp.bases[deg_a], sp.bases[deg_b]
            if len(table) != len(rows) or any(len(r) != len(cols) for r in table):
                raise CrossCheckError(
                    f"{space_id} pairing ({deg_a},{deg_b}) has wrong shape"
                )
            if deg_a == deg_b:
                for i in range(len(rows)):
                    for j in range(len(cols)):
                        if table[i][j] != table[j][i]:
                            raise CrossCheckError(
                                f"{space_id} self-pairing is asymmetric at "
                                f"({rows[i]}, {cols[j]})"
                            )
            if len(rows) == len(cols):
                # perfect pairing blocks must be invertible: solving against
                # every unit vector must succeed
                for j in range(len(cols)):
                    rhs = [F(1) if i == j else F(0) for i in range(len(rows))]
                    solve_unique([list(r) for r in table], rhs)
                counted += 1
    return f"{counted} square pairing blocks invertible, shapes and symmetry verified"


def _check_convolutions() -> str:
    for d in range(2, 201):
        conv2(d)
        conv2_weighted(d)
        if d >= 3:
            conv3(d)
    return "direct sums equal closed forms for d <= 200"


def _check_ramanujan(order: int) -> str:
    e2, e4, e6 = (eisenstein(k, order) for k in (2, 4, 6))
    if q_derivative(e2) != F(1, 12) * (e2 * e2 - e4):
        raise CrossCheckError("weight-2 derivative identity fails")
    if q_derivative(e4) != F(1, 3) * (e2 * e4 - e6):
        raise CrossCheckError("weight-4 derivative identity fails")
    if q_derivative(e6) != F(1, 2) * (e2 * e6 - e4 * e4):
        raise CrossCheckError("weight-6 derivative identity fails")
    return f"all three derivative identities exact to order {order}"


def _check_hurwitz() -> str:
    for d in range(3, 8):
        profile = Partition([d])
        third = Partition([3] + [1] * (d - 3))
        expected = F((d - 1) * (d - 2), 6)
        got = hurwitz_number(d, [profile, profile, third])
        if got != expected:
            raise CrossCheckError(f"one-part profile count at d={d}: {got} != {expected}")
    for a in range(1, 7):
        for b in range(a, 8 - a):
            d = a + b
            if d < 3:
                continue
            pair = Partition([a, b])
            third = Partition([3] + [1] * (d - 3))
            expected = F(0) if a == b else F(1)
            got = hurwitz_number(d, [pair, pair, third])
            if got != expected:
                raise CrossCheckError(
                    f"two-part profile count at (a,b)=({a},{b}): {got} != {expected}"
                )
    return "one-part and two-part triple-branch counts match closed forms"


def _check_sublattices() -> str:
    for d in range(1, 51):
        if count_sublattices(d) != sigma(1, d):
            raise CrossCheckError(f"sublattice count at d={d}")
    return "count equals sigma_1(d) for d <= 50"


def _check_pointed_isogenies() -> str:
    for d in range(1, 31):
        if count_pointed_isogenies(d) != (d - 1) * sigma(1, d):
            raise CrossCheckError(f"pointed isogeny count at d={d}")
    return "count equals (d-1)sigma_1(d) for d <= 30"


def _check_degeneration_identity() -> str:
    for d in range(1, 21):
        count_dd2222(d)  # raises on internal mismatch
    return "six-point degeneration identity holds for d <= 20"


def _sweep(max_d: int, fn: Callable[[int], object]) -> None:
    for d in range(1, max_d + 1):
        fn(d)


def _check_genus2(max_d: int) -> str:
    _sweep(max_d, loci.delliptic_class_m2)
    return f"dual routes and closed form agree for d <= {max_d}"


def _check_fixed_target(max_d: int) -> str:
    _sweep(max_d, loci.fixed_target_class_m2)
    return f"oracle routes and closed form agree for d <= {max_d}"


def _check_pointed_genus2(max_d: int) -> str:
    # includes the pushforward comparison against the unpointed class
    _sweep(max_d, loci.delliptic_class_m21)
    return f"routes, closed form and pushforward agree for d <= {max_d}"


def _check_genus3(max_d: int) -> str:
    _sweep(max_d, loci.delliptic_class_m3)
    return (
        f"contribution table, vanishing total, product routes and closed "
        f"form agree for d <= {max_d}"
    )


def _check_triple_branch_sums() -> str:
    for d in range(1, 41):
        loci.triple_branch_chain_sum(d)
        loci.triple_branch_split_sum(d)
    return "direct sums equal closed forms for d <= 40"


def _check_cancellation(order: int) -> str:
    chain_fit, split_fit, sum_fit = loci.triple_branch_cancellation(order)
    if not isinstance(chain_fit, NotQuasimodular):
        raise CrossCheckError("chain series unexpectedly fits")
    if not isinstance(split_fit, NotQuasimodular):
        raise CrossCheckError("split series unexpectedly fits")
    if not isinstance(sum_fit, QuasimodularFit):
        raise CrossCheckError("summed series fails to fit")
    return f"parts refuse and sum fits at weight 6, order {order}"


def _check_certification(order: int) -> str:
    report = loci.certify_quasimodularity(order)
    failures = [
        f"{family}/{label}"
        for family, fits in report.items()
        for label, fit in fits.items()
        if not isinstance(fit, QuasimodularFit)
    ]
    if failures:
        raise CrossCheckError(f"series not quasimodular: {', '.join(failures)}")
    total = sum(len(fits) for fits in report.values())
    return f"all {total} coefficient series fit at weight 6, order {order}"


_PROFILE_FNS = {
    "m2": loci.boundary_profile_m2,
    "m2e": loci.fixed_target_profile_m2,
    "m21": loci.boundary_profile_m21,
    "m3": loci.boundary_profile_m3,
}
_CLOSED_FNS = {
    "m2": loci.delliptic_class_m2_closed,
    "m2e": loci.fixed_target_class_m2_closed,
    "m21": loci.delliptic_class_m21_closed,
    "m3": loci.delliptic_class_m3_closed,
}


def class_report(family: str, d: int) -> dict:
    """Profile, solved class, closed-form class and agreement flag at one d."""
    space_id, degree, _ = loci.FAMILIES[family]
    profile = _PROFILE_FNS[family](d)
    solved = chow.to_q_class_basis(chow.solve_class(space_id, degree, profile))
    closed = _CLOSED_FNS[family](d)
    return {
        "d": d,
        "profile": profile.to_json_dict(),
        "solved": solved.to_json_dict(),
        "closed": closed.to_json_dict(),
        "agree": solved == closed,
    }


def _detailed_sections(max_d: int, order: int) -> tuple[dict, dict]:
    classes = {
        family: [class_report(family, d) for d in range(1, max_d + 1)]
        for family in sorted(loci.FAMILIES)
    }
    series = {
        family: {label: fit.to_json_dict() for label, fit in fits.items()}
        for family, fits in loci.certify_quasimodularity(order).items()
    }
    return classes, series


def run_verification(max_d: int = 30, order: int = 30) -> dict:
    """Run every named check; returns the JSON-ready report."""
    if max_d < 1:
        raise ValueError(f"max_d must be >= 1, got {max_d}")
    if order < 8:
        raise ValueError(f"order must be >= 8 (overdetermined fits), got {order}")
    checks: list[tuple[str, Callable[[], str]]] = [
        ("pairing-tables", _check_pairing_tables),
        ("convolution-identities", _check_convolutions),
        ("ramanujan-identities", lambda: _check_ramanujan(order)),
        ("hurwitz-closed-forms", _check_hurwitz),
        ("sublattice-count", _check_sublattices),
        ("pointed-isogeny-count", _check_pointed_isogenies),
        ("degeneration-identity", _check_degeneration_identity),
        ("genus2-classes", lambda: _check_genus2(max_d)),
        ("fixed-target-classes", lambda: _check_fixed_target(max_d)),
        ("pointed-genus2-classes", lambda: _check_pointed_genus2(max_d)),
        ("genus3-classes", lambda: _check_genus3(max_d)),
        ("triple-branch-sums", _check_triple_branch_sums),
        ("triple-branch-cancellation", lambda: _check_cancellation(order)),
        ("quasimodularity-certification", lambda: _check_certification(order)),
    ]
    results = []
    first_failure = None
    for name, fn in checks:
        try:
            detail = fn()
            passed = True
        except Exception as exc:  # report and continue; never abort the sweep
            detail = f"{type(exc).__name__}: {exc}"
            passed = False
            if first_failure is None:
                first_failure = name
        results.append({"check": name, "passed": passed, "detail": detail})
    try:
        classes, series = _detailed_sections(max_d, order)
    except Exception as exc:
        classes, series = {}, {}
        if first_failure is None:
            first_failure = "detailed-report"
            results.append(
                {
                    "check": "detailed-report",
                    "passed": False,
                    "detail": f"{type(exc).__name__}: {exc}",
                }
            )
    return {
        "schema": SCHEMA,
        "max_d": max_d,
        "order": order,
        "passed": first_failure is None,
        "first_failure": first_failure,
        "checks": results,
        "classes": classes,
        "series": series,
    }
