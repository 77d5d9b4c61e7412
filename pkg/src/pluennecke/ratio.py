"""Exact ratios are ``fractions.Fraction``; these helpers handle text and roots."""

from __future__ import annotations

from fractions import Fraction

ExactRatio = Fraction


def format_ratio(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_ratio(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"n"``; floats are refused."""
    text = text.strip()
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"ratios must be exact integers or p/q, got {text!r}")
    return Fraction(text)


def iroot(n: int, k: int) -> int | None:
    """The exact integer k-th root of n >= 0, or None."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2:
        return n
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**k == n else None


def rational_root(x: Fraction, k: int) -> Fraction | None:
    """The k-th root of x when it is rational, else None."""
    num, den = iroot(x.numerator, k), iroot(x.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)
