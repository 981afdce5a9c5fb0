"""Exact shell counts, ball volumes, radius selection, and volume bounds.

T(n,r) counts assignments at product distance exactly r from a fixed center;
it obeys T(n,r) = sum_i d_i * T(n-1, r-i) over the distance profile
(d_0..d_s), equivalently sum_r T(n,r) x^r = (sum_i d_i x^i)^n. Everything
here is exact integer/rational arithmetic; callers convert to float only for
display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .colorgraph import DistanceProfile, complete, directed_cycle, profile

__all__ = [
    "ShellTable",
    "ball_volume",
    "lower_bound_complete",
    "lower_bound_cycle",
    "select_radius",
    "shell_counts",
    "upper_bound",
]

Rational = Union[Fraction, int]


@dataclass(frozen=True)
class ShellTable:
    """Exact counts T(n, 0..s*n) of points on each distance shell."""

    profile: DistanceProfile
    n: int
    counts: tuple[int, ...]

    def volume(self, r: int) -> int:
        """Number of points at distance <= r (saturates at the reachable total)."""
        if r < 0:
            raise ValueError("radius must be nonnegative")
        return sum(self.counts[: r + 1])


@lru_cache(maxsize=None)
def shell_counts(p: DistanceProfile, n: int) -> ShellTable:
    """Dynamic program over the shell recurrence; exact big integers."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    counts = [1]
    for _ in range(n):
        nxt = [0] * (len(counts) + p.s)
        for r, t in enumerate(counts):
            if t == 0:
                continue
            for i, d_i in enumerate(p.counts):
                nxt[r + i] += d_i * t
        counts = nxt
    table = ShellTable(p, n, tuple(counts))
    if p.spans_all_colors:
        assert sum(counts) == p.d**n
    return table


def ball_volume(p: DistanceProfile, n: int, r: int) -> int:
    """Volume of a radius-r ball in the n-fold product; d^n once r >= s*n."""
    return shell_counts(p, n).volume(r)


def select_radius(p: DistanceProfile, n: int, x: Rational) -> int:
    """The radius maximizing T(n,r) * x^r, ties broken toward smaller r.

    This is the radius at which the generating-function lower bound on the
    ball volume is tight enough for the covering-code construction.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    counts = shell_counts(p, n).counts
    best_r = 0
    best_score = Fraction(counts[0])
    power = Fraction(1)
    for r in range(1, len(counts)):
        power *= x
        score = counts[r] * power
        if score > best_score:
            best_score = score
            best_r = r
    return best_r


def lower_bound_complete(d: int, n: int, x: Rational) -> tuple[int, Fraction]:
    """Radius r and the value (1+(d-1)x)^n / ((n+1) x^r), a lower bound on Vol(n,r).

    The bound comes from bounding the largest of the n+1 terms of the
    binomial expansion of (1+(d-1)x)^n. x = 0 degenerates to r = 0.
    """
    x = Fraction(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return 0, Fraction(1, n + 1)
    p = profile(complete(d))
    r = select_radius(p, n, x)
    bound = (1 + (d - 1) * x) ** n / ((n + 1) * x**r)
    return r, bound


def lower_bound_cycle(d: int, n: int, x: Rational) -> tuple[int, Fraction]:
    """Radius r and (1+x+..+x^(d-1))^n / (((d-1)n+1) x^r), a lower bound on the cycle Vol.

    Same largest-term argument applied to the cycle generating function,
    whose expansion has (d-1)n + 1 terms.
    """
    x = Fraction(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    terms = (d - 1) * n + 1
    if x == 0:
        return 0, Fraction(1, terms)
    p = profile(directed_cycle(d))
    r = select_radius(p, n, x)
    gf = sum(x**i for i in range(d)) ** n
    return r, gf / (terms * x**r)


def upper_bound(p: DistanceProfile, n: int, r: int, x: Rational) -> Fraction:
    """(sum_i d_i x^i)^n / x^r, an upper bound on Vol(n,r) for any x in [0,1]."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if x == 0:
        if r > 0:
            raise ValueError("x = 0 is only valid for r = 0")
        return Fraction(1)
    gf = sum(d_i * x**i for i, d_i in enumerate(p.counts)) ** n
    return gf / x**r
