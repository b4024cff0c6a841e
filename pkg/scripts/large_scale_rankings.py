"""Reproduce the large-population ranking examples from the command line.

Three comparisons, all evaluated through run-length blocks:

1. rank discounting at rho = 1.01 with a square-root transform lets a
   single worst-off gain outweigh enormous top-99% gains in a
   million-person society;
2. the same rule prefers a thousand people at 100 to a million at 99;
3. the shortfall-average rule (weight 1/5, threshold 0) ranks one
   person's severe sacrifice above a billion people's halved well-being.

Usage: python scripts/large_scale_rankings.py
"""

import time
from fractions import Fraction

from welfareax import (
    ConstantLambda,
    Profile,
    Rdu,
    Sqrt,
    SuffAvg,
    rdu_compare,
    rdu_value,
    suffavg_value,
    swo_compare,
)


def timed(label, fn):
    start = time.perf_counter()
    result = fn()
    print(f"{label}: {result} ({(time.perf_counter() - start) * 1000:.2f} ms)")
    return result


def main() -> None:
    rdu = Rdu(Fraction(101, 100), Sqrt())

    print("== single small gain vs top-99% gains (n = 10^6) ==")
    flat = Profile.from_blocks([(100, 10**6)])
    tilted = Profile.from_blocks([(90, 1), (100, 999), (300, 999000)])
    for name, profile in (("flat", flat), ("tilted", tilted)):
        value = rdu_value(profile, rdu)
        print(f"  value({name}) = {value.value:.6f} (bound {value.bound:.2e})")
    timed("  verdict flat vs tilted", lambda: rdu_compare(flat, tilted, rdu).verdict.value)

    print("== small well-off population vs huge slightly-poorer one ==")
    small = Profile.from_blocks([(100, 10**3)])
    huge = Profile.from_blocks([(99, 10**6)])
    timed("  verdict small vs huge", lambda: rdu_compare(small, huge, rdu).verdict.value)

    print("== one severe sacrifice vs a billion halved lives ==")
    rule = SuffAvg(0, ConstantLambda(Fraction(1, 5)))
    sacrifice = Profile.from_blocks([(-100, 1), (200, 10**9 - 1)])
    spared = Profile.from_blocks([(0, 1), (100, 10**9 - 1)])
    for name, profile in (("sacrifice", sacrifice), ("spared", spared)):
        print(f"  value({name}) = {suffavg_value(profile, rule)} (exact)")
    timed("  verdict sacrifice vs spared", lambda: swo_compare(rule, sacrifice, spared).verdict.value)


if __name__ == "__main__":
    main()
