"""Integer frequency lattice Z^n: norms, balls, eigenvalue levels, multiplicities.

Every mode of the n-torus is labelled by an integer multi-index xi in Z^n.
This module enumerates and measures finite pieces of that lattice by
exhaustive scanning; nothing here relies on number-theoretic closed forms,
so absent levels (e.g. 7 is not a sum of two squares) fall out of the scan
rather than being hard-coded.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum

Frequency = tuple[int, ...]


class NormKind(Enum):
    EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class LatticeBall:
    """Finite Euclidean ball {xi in Z^n : |xi| <= radius}."""

    dimension: int
    radius: int
    norm_kind: NormKind = NormKind.EUCLIDEAN

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        if self.radius < 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")

    def __contains__(self, xi: Frequency) -> bool:
        if len(xi) != self.dimension:
            raise ValueError(
                f"frequency has {len(xi)} components, ball has dimension {self.dimension}"
            )
        return norm_sq(xi) <= self.radius**2


def norm_sq(xi: Frequency) -> int:
    """Squared Euclidean norm |xi|^2 = sum_j xi_j^2 (a nonnegative integer)."""
    if len(xi) < 1:
        raise ValueError("frequency must have at least one component")
    return sum(int(x) * int(x) for x in xi)


def tail_min_norm_sq(cutoff: int) -> int:
    """First squared norm in the discarded tail of a level-cutoff truncation.

    Truncations in this package keep the mode xi exactly when
    norm_sq(xi) < (cutoff + 1)**2 and discard it otherwise.  The discarded
    tail therefore starts at squared norm (cutoff + 1)**2, which is always
    attained (by (cutoff + 1, 0, ..., 0)); integer frequencies with
    cutoff < |xi| < cutoff + 1, which exist for n >= 2, are kept.  This is
    the membership rule under which the truncation error law
    1/((cutoff + 1)^2 + 1) is exact in every dimension.
    """
    if cutoff < 0:
        raise ValueError(f"cutoff must be >= 0, got {cutoff}")
    return (cutoff + 1) ** 2


def enumerate_ball(ball: LatticeBall) -> list[Frequency]:
    """All xi with |xi| <= radius, lexicographically sorted, duplicate-free."""
    n, r = ball.dimension, ball.radius
    r_sq = r * r
    # itertools.product over ascending per-axis ranges is already lexicographic
    return [
        xi
        for xi in itertools.product(range(-r, r + 1), repeat=n)
        if norm_sq(xi) <= r_sq
    ]


def level_multiplicity(n: int, k: int) -> int:
    """Number of xi in Z^n with |xi|^2 = k, by exhaustive box scan."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if k < 0:
        raise ValueError(f"level must be >= 0, got {k}")
    r = math.isqrt(k)
    if r * r < k:
        r += 1
    return sum(
        1 for xi in itertools.product(range(-r, r + 1), repeat=n) if norm_sq(xi) == k
    )


def levels_up_to(n: int, cap: int) -> list[tuple[int, int]]:
    """Representable levels k <= cap with their multiplicities, ascending.

    A single scan of the box [-isqrt(cap), isqrt(cap)]^n histograms norm_sq;
    levels with zero count are simply never seen, so gaps such as k = 7 for
    n = 2 are discovered, not assumed.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if cap < 0:
        raise ValueError(f"level cap must be >= 0, got {cap}")
    r = math.isqrt(cap)
    counts: Counter[int] = Counter()
    for xi in itertools.product(range(-r, r + 1), repeat=n):
        k = norm_sq(xi)
        if k <= cap:
            counts[k] += 1
    return sorted(counts.items())
