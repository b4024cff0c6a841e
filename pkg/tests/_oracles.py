"""Independent reference implementations used only by the tests.

These stay deliberately naive: plain sorted-list comparison for the
lexicographic maximin rule, and term-by-term high-precision summation
for rank-discounted values. They share no code path with the package's
block-based engines.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from welfareax import Profile, Verdict


def naive_leximin(u: list, v: list) -> Verdict:
    if len(u) != len(v):
        return Verdict.INCOMPARABLE
    su, sv = sorted(u), sorted(v)
    for a, b in zip(su, sv):
        if a > b:
            return Verdict.STRICTLY_BETTER
        if a < b:
            return Verdict.STRICTLY_WORSE
    return Verdict.EQUIVALENT


def rdu_highprec(profile: Profile, rho: Fraction, g_name: str, prec_bits: int = 128):
    """Term-by-term ascending-rank summation at >= prec_bits precision.

    The discount weight is carried by repeated multiplication, and the
    transform is applied per block value, so this shares nothing with
    the production blockwise closed form.
    """
    with mpmath.workprec(prec_bits):
        r = mpmath.mpf(rho.denominator) / mpmath.mpf(rho.numerator)
        total = mpmath.mpf(0)
        weight = mpmath.mpf(1)
        for value, count in profile.sorted_blocks():
            x = mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator)
            if g_name == "sqrt":
                gx = mpmath.sqrt(x)
            elif g_name == "identity":
                gx = x
            else:
                raise ValueError(f"unsupported transform {g_name!r}")
            for _ in range(count):
                total += gx * weight
                weight *= r
        return total
