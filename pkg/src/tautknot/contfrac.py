"""Exact continued-fraction arithmetic.

Values are :class:`fractions.Fraction`, which already keeps the denominator
positive and the pair coprime.  Terms are plain Python ints (unbounded).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import CFDivisionByZero, NotExpandable

Rational = Fraction


def format_rational(r: Fraction) -> str:
    """Text form ``num/den`` (the denominator is always printed)."""
    return f"{r.numerator}/{r.denominator}"


def parse_rational(text: str) -> Fraction:
    num, sep, den = text.strip().partition("/")
    return Fraction(int(num), int(den) if sep else 1)


def format_cf(terms: Sequence[int]) -> str:
    return "[" + ",".join(str(int(a)) for a in terms) + "]"


def parse_int_list(text: str) -> list[int]:
    """Parse ``[a,b,c]``, ``(a,b,c)`` or ``a,b,c`` into a list of ints."""
    body = text.strip().strip("[]()").replace(" ", "")
    if not body:
        return []
    return [int(t) for t in body.split(",")]


def _check_terms(terms: Sequence[int]) -> list[int]:
    out = [int(a) for a in terms]
    if not out:
        raise ValueError("continued fraction needs at least one term")
    if any(a == 0 for a in out):
        raise ValueError(f"continued fraction terms must be nonzero: {out}")
    return out


def cf_eval(terms: Sequence[int]) -> Fraction:
    """Evaluate ``[a1, ..., an] = a1 + 1/(a2 + 1/(... + 1/an))`` exactly."""
    a = _check_terms(terms)
    value = Fraction(a[-1])
    for i in range(len(a) - 2, -1, -1):
        if value == 0:
            raise CFDivisionByZero(a[i + 1:])
        value = a[i] + 1 / value
    return value


def convergent_pairs(terms: Sequence[int]) -> list[tuple[int, int]]:
    """Raw recurrence pairs ``(p_k, q_k)`` for k = 1..n.

    p_k = a_k p_{k-1} + p_{k-2}, q_k = a_k q_{k-1} + q_{k-2}, seeded with
    (p_0, q_0) = (1, 0) and (p_{-1}, q_{-1}) = (0, 1).  The pairs are not
    sign-normalised, which is what the determinant identity needs.
    """
    a = _check_terms(terms)
    p_prev, q_prev = 0, 1
    p, q = 1, 0
    out = []
    for ak in a:
        p, p_prev = ak * p + p_prev, p
        q, q_prev = ak * q + q_prev, q
        out.append((p, q))
    return out


def convergents(terms: Sequence[int]) -> list[Fraction]:
    """Convergents ``p_k/q_k`` of every prefix, computed by the recurrences.

    Raises like :func:`cf_eval` when some prefix has a suffix worth 0, even
    though the recurrences themselves would carry on through it.
    """
    a = _check_terms(terms)
    out = []
    for k, (p, q) in enumerate(convergent_pairs(a), start=1):
        cf_eval(a[:k])
        out.append(Fraction(p, q))
    return out


def palindrome_check(terms: Sequence[int], k: int) -> tuple[Fraction, bool]:
    """Evaluate the reversed prefix ``[a_k, ..., a_1]`` and test both claims.

    Returns ``(reversed_value, holds)`` where ``holds`` is true iff the
    reversed value equals ``p_k / p_{k-1}`` and
    ``q_k p_{k-1} == (-1)**(k-1) (mod |p_k|)``.  A zero p_k raises like a
    division by zero.
    """
    a = _check_terms(terms)
    if not 2 <= k <= len(a):
        raise ValueError(f"k must be in [2, {len(a)}], got {k}")
    pairs = convergent_pairs(a[:k])
    (p_k, q_k), (p_km1, _) = pairs[k - 1], pairs[k - 2]
    if p_k == 0:
        # the congruence is taken modulo |p_k|
        raise CFDivisionByZero(a[:k])
    reversed_value = cf_eval(a[:k][::-1])
    value_ok = p_km1 != 0 and reversed_value == Fraction(p_k, p_km1)
    modulus = abs(p_k)
    congruence_ok = (q_k * p_km1 - (-1) ** (k - 1)) % modulus == 0
    return reversed_value, value_ok and congruence_ok


def nearest_even(x: Fraction) -> int:
    """Even integer nearest to ``x`` (ties cannot occur for |x - c| = 1 here)."""
    return 2 * round(x / 2)


def even_expand(r: Fraction) -> tuple[int, ...]:
    """Unique odd-length sequence of nonzero even integers evaluating to ``r``.

    Greedy even-quotient division: the tail of such a sequence always has
    absolute value > 1, so each term must be the even integer within
    distance < 1 of the current value.
    """
    r = Fraction(r)
    alpha, beta = r.numerator, r.denominator
    if alpha % 2 != 0:
        raise NotExpandable(f"{format_rational(r)}: numerator must be even")
    if abs(r) <= 1:
        raise NotExpandable(f"{format_rational(r)}: need |alpha| > |beta|")
    del alpha, beta
    out = []
    x = r
    for _ in range(10_000):
        c = nearest_even(x)
        if c == 0 or abs(x - c) >= 1:
            raise NotExpandable(f"{format_rational(r)} has no even expansion")
        out.append(c)
        rest = x - c
        if rest == 0:
            break
        x = 1 / rest
    else:  # pragma: no cover - denominators strictly decrease
        raise NotExpandable(f"{format_rational(r)}: expansion did not terminate")
    if len(out) % 2 == 0:
        raise NotExpandable(f"{format_rational(r)}: expansion has even length {out}")
    return tuple(out)
