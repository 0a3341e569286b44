"""Brute-force counting oracles for branched covers and isogenies.

Hurwitz numbers are computed from first principles: a degree-d cover of a
genus-0 curve branched over k points with ramification profiles
lambda_1..lambda_k corresponds to a tuple of permutations (s_1..s_k) in S_d
with cycle_type(s_i) = lambda_i, s_1 * ... * s_k = identity, and the
generated subgroup transitive on the d sheets (connectedness). The Hurwitz
number is the number of such tuples divided by d!, which is the standard
automorphism weighting.

Conventions fixed here (validated against the closed forms in the tests
before freezing):
  * composition is (s*t)(x) = s(t(x));
  * "connected" means exactly: the subgroup generated by the tuple acts
    transitively on {1..d}.

The isogeny counts are likewise enumerated structurally: degree-d isogenies
from a fixed elliptic curve correspond to index-d sublattices of Z^2, and
order-d subgroups of the d-torsion (Z/d)^2 classify kernels.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Iterable, Sequence

from .divisors import divisors
from .errors import CrossCheckError

__all__ = [
    "Partition",
    "ENUMERATION_BUDGET",
    "cycle_type",
    "compose",
    "inverse",
    "identity",
    "is_transitive",
    "conjugacy_class",
    "conjugacy_class_size",
    "hurwitz_number",
    "count_sublattices",
    "count_pointed_isogenies",
    "count_dd22",
    "count_dd2222",
]

#: largest cover degree hurwitz_number will enumerate (8! tuples per class)
ENUMERATION_BUDGET = 8


class Partition:
    """Ramification profile: a non-increasing tuple of positive parts."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        normalized = tuple(sorted((int(p) for p in parts), reverse=True))
        if not normalized:
            raise ValueError("a partition needs at least one part")
        if normalized[-1] <= 0:
            raise ValueError(f"parts must be positive, got {normalized}")
        object.__setattr__(self, "parts", normalized)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse a comma-separated part list such as "3,1,1"."""
        try:
            return cls(int(p) for p in text.split(","))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"cannot parse partition from {text!r}") from exc

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"Partition({self.parts})"


# -- permutations as tuples of 0-based images --------------------------------


def identity(d: int) -> tuple[int, ...]:
    return tuple(range(d))


def compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """(s*t)(x) = s(t(x))."""
    return tuple(s[t[x]] for x in range(len(s)))


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def cycle_type(p: Sequence[int]) -> Partition:
    d = len(p)
    seen = [False] * d
    lengths = []
    for start in range(d):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        lengths.append(length)
    return Partition(lengths)


def is_transitive(perms: Sequence[Sequence[int]], d: int) -> bool:
    """Does the subgroup generated by `perms` act transitively on {0..d-1}?"""
    reached = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for p in perms:
            y = p[x]
            if y not in reached:
                reached.add(y)
                frontier.append(y)
    return len(reached) == d


@lru_cache(maxsize=None)
def conjugacy_class(profile: Partition) -> tuple[tuple[int, ...], ...]:
    """All permutations of S_d with the given cycle type."""
    d = profile.size
    return tuple(p for p in permutations(range(d)) if cycle_type(p) == profile)


def conjugacy_class_size(profile: Partition) -> int:
    """|class| = d! / (prod parts * prod multiplicity!)."""
    denom = 1
    for part in profile.parts:
        denom *= part
    for part in set(profile.parts):
        denom *= factorial(profile.parts.count(part))
    return factorial(profile.size) // denom


def _class_representative(profile: Partition) -> tuple[int, ...]:
    images = []
    start = 0
    for part in profile.parts:
        images.extend(list(range(start + 1, start + part)) + [start])
        start += part
    return tuple(images)


def hurwitz_number(d: int, profiles: Sequence[Partition]) -> Fraction:
    """Count of transitive identity-product tuples with given cycle types, over d!.

    The first factor is pinned to one representative of its conjugacy class
    and the total scaled by the class size; the middle factors are enumerated
    exhaustively and the last is forced by the product condition. This cuts
    the cost by |class_1| without changing the count.
    """
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    if d > ENUMERATION_BUDGET:
        raise ValueError(
            f"degree {d} exceeds the enumeration budget {ENUMERATION_BUDGET}"
        )
    if len(profiles) < 2:
        raise ValueError("need at least two ramification profiles")
    for i, profile in enumerate(profiles):
        if profile.size != d:
            raise ValueError(
                f"profile {i} has size {profile.size}, expected degree {d}"
            )
    first = _class_representative(profiles[0])
    last_type = profiles[-1]
    count = 0
    middle_classes = [conjugacy_class(p) for p in profiles[1:-1]]
    for middle in product(*middle_classes):
        running = first
        for p in middle:
            running = compose(running, p)
        closer = inverse(running)
        if cycle_type(closer) != last_type:
            continue
        if is_transitive((first, *middle, closer), d):
            count += 1
    total = conjugacy_class_size(profiles[0]) * count
    return Fraction(total, factorial(d))


def count_sublattices(d: int) -> int:
    """Index-d sublattices of Z^2, by Hermite-normal-form enumeration.

    A sublattice has a unique basis (a, 0), (b, c) with a, c > 0, ac = d and
    0 <= b < a; the count is therefore sigma_1(d).
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    count = 0
    for a in divisors(d):
        for _b in range(a):
            count += 1
    return count


def _order_d_subgroups(d: int) -> list[frozenset]:
    """All subgroups of (Z/d)^2 of order d, as frozen element sets.

    Every subgroup of (Z/d)^2 is generated by at most two elements, so the
    order-d ones are exactly the cyclic subgroups of order d together with
    the sums A + B of cyclic subgroups with |A||B|/|A & B| = d.
    """
    cyclic: set[frozenset] = set()
    for gx in range(d):
        for gy in range(d):
            elements = set()
            x, y = 0, 0
            while True:
                elements.add((x, y))
                x, y = (x + gx) % d, (y + gy) % d
                if (x, y) == (0, 0):
                    break
            cyclic.add(frozenset(elements))
    found = {h for h in cyclic if len(h) == d}
    cyclic_list = sorted(cyclic, key=len)
    for i, a in enumerate(cyclic_list):
        for b in cyclic_list[i:]:
            if len(a) * len(b) != d * len(a & b):
                continue
            found.add(frozenset(
                ((x0 + x1) % d, (y0 + y1) % d) for x0, y0 in a for x1, y1 in b
            ))
    return sorted(found, key=sorted)


def count_pointed_isogenies(d: int) -> int:
    """Pairs (order-d subgroup G of (Z/d)^2, nonzero element of G).

    Direct subgroup enumeration; the closed form is (d-1)*sigma_1(d).
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return sum(len(g) - 1 for g in _order_d_subgroups(d))


def count_dd22(d: int) -> int:
    """Degree-d genus-1 covers of P^1 totally ramified at two marked points
    and simply ramified at two more: 2(d^2 - 1).

    Cross-checked against the structural count: twice the number of nonzero
    d-torsion points (the second total ramification point), for the two ways
    of labelling the simple ramification points.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    nonzero_torsion = sum(
        1 for x in range(d) for y in range(d) if (x, y) != (0, 0)
    )
    closed = 2 * (d * d - 1)
    if 2 * nonzero_torsion != closed:
        raise CrossCheckError(
            f"count_dd22({d}): structural count {2 * nonzero_torsion} != {closed}"
        )
    return closed


def count_dd2222(d: int) -> int:
    """Degree-d genus-2 covers of P^1 totally ramified at two points and
    simply ramified at four: 48(d^4 - 1).

    Re-derived through the degeneration identity
    12 * (2(d^2-1))^2 + 8 * 6 * 2(d^2-1) = 48(d^4-1): of the 20 ways to
    distribute six points onto two elliptic bridge components, 12 split the
    total ramification points and 8 keep them together.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    closed = 48 * (d**4 - 1)
    pair = 2 * (d * d - 1)
    degenerated = 12 * pair * pair + 8 * 6 * pair
    if degenerated != closed:
        raise CrossCheckError(
            f"count_dd2222({d}): degeneration count {degenerated} != {closed}"
        )
    return closed
