"""Wigner 3j and 6j symbols, evaluated exactly.

Racah's single-sum formulas are accumulated in exact rational arithmetic
(big-integer factorials via fractions.Fraction) and converted to float only
at the end, so symbols stay accurate up to the F-manifold quantum numbers
used here (j ~ 8) and far beyond.

Selection-rule failures (triangle, projection sum, |m| > j) return exactly
0.0 rather than raising: callers sum blindly over sublevels. Malformed
arguments (projection not on the same integer/half-integer lattice as its
magnitude) raise ValueError.

All functions are pure; the memo caches are the functools.lru_cache ones,
safe for concurrent use on CPython.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .halfint import HalfInt

__all__ = ["wigner3j", "wigner6j", "clebsch_gordan"]


def _fac(n: int) -> int:
    if n < 0:
        raise ValueError("negative factorial")
    return math.factorial(n)


def _triangle_ok(tj1: int, tj2: int, tj3: int) -> bool:
    # args are twice-values; perimeter must be even for integer factorials
    if (tj1 + tj2 + tj3) % 2:
        return False
    return abs(tj1 - tj2) <= tj3 <= tj1 + tj2


def _delta_sq(tj1: int, tj2: int, tj3: int) -> Fraction:
    """Squared triangle coefficient as an exact rational."""
    return Fraction(
        _fac((tj1 + tj2 - tj3) // 2)
        * _fac((tj1 - tj2 + tj3) // 2)
        * _fac((-tj1 + tj2 + tj3) // 2),
        _fac((tj1 + tj2 + tj3) // 2 + 1),
    )


def _signed_sqrt(sign: int, rational: Fraction) -> float:
    if rational == 0:
        return 0.0
    return sign * math.sqrt(rational.numerator / rational.denominator)


@lru_cache(maxsize=65536)
def _wigner3j_t(tj1: int, tj2: int, tj3: int, tm1: int, tm2: int, tm3: int) -> float:
    if tm1 + tm2 + tm3 != 0:
        return 0.0
    if not _triangle_ok(tj1, tj2, tj3):
        return 0.0
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if abs(tm) > tj:
            return 0.0

    kmin = max(0, -(tj3 - tj2 + tm1) // 2, -(tj3 - tj1 - tm2) // 2)
    kmax = min((tj1 + tj2 - tj3) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    if kmin > kmax:
        return 0.0

    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (
            _fac(k)
            * _fac((tj1 + tj2 - tj3) // 2 - k)
            * _fac((tj1 - tm1) // 2 - k)
            * _fac((tj2 + tm2) // 2 - k)
            * _fac((tj3 - tj2 + tm1) // 2 + k)
            * _fac((tj3 - tj1 - tm2) // 2 + k)
        )
        total += Fraction((-1) ** k, den)
    if total == 0:
        return 0.0

    norm = _delta_sq(tj1, tj2, tj3) * Fraction(
        _fac((tj1 + tm1) // 2) * _fac((tj1 - tm1) // 2)
        * _fac((tj2 + tm2) // 2) * _fac((tj2 - tm2) // 2)
        * _fac((tj3 + tm3) // 2) * _fac((tj3 - tm3) // 2)
    )
    phase = -1 if ((tj1 - tj2 - tm3) // 2) % 2 else 1
    sign = phase * (1 if total > 0 else -1)
    return _signed_sqrt(sign, norm * total * total)


@lru_cache(maxsize=65536)
def _wigner6j_t(tj1: int, tj2: int, tj3: int, tj4: int, tj5: int, tj6: int) -> float:
    triads = (
        (tj1, tj2, tj3),
        (tj1, tj5, tj6),
        (tj4, tj2, tj6),
        (tj4, tj5, tj3),
    )
    for t in triads:
        if not _triangle_ok(*t):
            return 0.0

    delta = Fraction(1)
    for t in triads:
        delta *= _delta_sq(*t)

    kmin = max((a + b + c) // 2 for a, b, c in triads)
    kmax = min(
        (tj1 + tj2 + tj4 + tj5) // 2,
        (tj2 + tj3 + tj5 + tj6) // 2,
        (tj3 + tj1 + tj6 + tj4) // 2,
    )
    if kmin > kmax:
        return 0.0

    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        num = _fac(k + 1)
        den = (
            _fac(k - (tj1 + tj2 + tj3) // 2)
            * _fac(k - (tj1 + tj5 + tj6) // 2)
            * _fac(k - (tj4 + tj2 + tj6) // 2)
            * _fac(k - (tj4 + tj5 + tj3) // 2)
            * _fac((tj1 + tj2 + tj4 + tj5) // 2 - k)
            * _fac((tj2 + tj3 + tj5 + tj6) // 2 - k)
            * _fac((tj3 + tj1 + tj6 + tj4) // 2 - k)
        )
        total += Fraction((-1) ** k * num, den)
    if total == 0:
        return 0.0

    sign = 1 if total > 0 else -1
    return _signed_sqrt(sign, delta * total * total)


def _as_twice(name, x) -> int:
    try:
        return HalfInt.of(x).twice_value
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name}={x!r} is not a half-integer") from exc


def _check_parity(j_t: int, m_t: int, jname: str, mname: str):
    if (j_t - m_t) % 2:
        raise ValueError(
            f"{mname} must differ from {jname} by an integer "
            f"(got {jname}/2={j_t}/2, {mname}/2={m_t}/2)"
        )


def wigner3j(j1, j2, j3, m1, m2, m3) -> float:
    """Wigner 3j symbol (j1 j2 j3 / m1 m2 m3).

    Returns exactly 0.0 when the triangle rule or m1+m2+m3=0 fails;
    raises ValueError for projections off their magnitude's lattice.
    """
    tj = [_as_twice(f"j{i}", j) for i, j in enumerate((j1, j2, j3), 1)]
    tm = [_as_twice(f"m{i}", m) for i, m in enumerate((m1, m2, m3), 1)]
    for i in range(3):
        if tj[i] < 0:
            raise ValueError(f"j{i + 1} must be non-negative")
        _check_parity(tj[i], tm[i], f"j{i + 1}", f"m{i + 1}")
    return _wigner3j_t(tj[0], tj[1], tj[2], tm[0], tm[1], tm[2])


def wigner6j(j1, j2, j3, j4, j5, j6) -> float:
    """Wigner 6j symbol {j1 j2 j3 / j4 j5 j6}.

    Returns exactly 0.0 when any of the four triads violates the triangle
    rule (including non-integer triad perimeters).
    """
    tj = [_as_twice(f"j{i}", j) for i, j in enumerate((j1, j2, j3, j4, j5, j6), 1)]
    for i, t in enumerate(tj):
        if t < 0:
            raise ValueError(f"j{i + 1} must be non-negative")
    return _wigner6j_t(*tj)


def clebsch_gordan(j1, m1, j2, m2, j3, m3) -> float:
    """<j1 m1, j2 m2 | j3 m3> via the 3j symbol."""
    tj3 = _as_twice("j3", j3)
    tm3 = _as_twice("m3", m3)
    phase = -1 if ((_as_twice("j1", j1) - _as_twice("j2", j2) + tm3) // 2) % 2 else 1
    return phase * math.sqrt(tj3 + 1.0) * wigner3j(j1, j2, j3, m1, m2, HalfInt(-tm3))
