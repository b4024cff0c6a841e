from fractions import Fraction

from hypothesis import strategies as st

from welfareax import Profile

levels = st.fractions(
    min_value=Fraction(-12), max_value=Fraction(12), max_denominator=4
)


def profiles(min_size: int = 1, max_size: int = 6):
    return st.lists(levels, min_size=min_size, max_size=max_size).map(
        Profile.from_levels
    )


def same_size_pairs(min_size: int = 1, max_size: int = 6):
    return st.integers(min_value=min_size, max_value=max_size).flatmap(
        lambda n: st.tuples(
            st.lists(levels, min_size=n, max_size=n).map(Profile.from_levels),
            st.lists(levels, min_size=n, max_size=n).map(Profile.from_levels),
        )
    )
