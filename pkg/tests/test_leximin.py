import itertools

from hypothesis import given

from welfareax import Profile, Verdict, leximin_compare, permute, replicate

from _oracles import naive_leximin
from conftest import profiles, same_size_pairs


def V(u, v):
    return leximin_compare(Profile.from_levels(u), Profile.from_levels(v)).verdict


def test_examples():
    assert V([1, 2, 3], [3, 2, 1]) is Verdict.EQUIVALENT
    assert V([1, 2, 3], [1, 1, 5]) is Verdict.STRICTLY_BETTER
    assert V([0, 9], [1, 1]) is Verdict.STRICTLY_WORSE


def test_cross_size_incomparable():
    assert V([1, 2], [1, 2, 3]) is Verdict.INCOMPARABLE


def test_block_profiles():
    u = Profile.from_blocks([(100, 10**6)])
    v = Profile.from_blocks([(90, 1), (100, 999), (300, 999000)])
    assert leximin_compare(u, v).verdict is Verdict.STRICTLY_BETTER
    assert leximin_compare(u, u).verdict is Verdict.EQUIVALENT


def test_matches_naive_on_small_grid():
    grid = [list(p) for p in itertools.product([0, 1, 2], repeat=3)]
    for a in grid:
        for b in grid:
            assert V(a, b) is naive_leximin(a, b)


@given(same_size_pairs())
def test_matches_naive_random(pair):
    u, v = pair
    assert leximin_compare(u, v).verdict is naive_leximin(
        list(u.levels()), list(v.levels())
    )


@given(same_size_pairs())
def test_antisymmetry(pair):
    u, v = pair
    assert leximin_compare(u, v).verdict is leximin_compare(v, u).verdict.flipped()


@given(profiles(max_size=4))
def test_anonymity_exhaustive(u):
    for pi in itertools.permutations(range(len(u))):
        assert leximin_compare(u, permute(u, pi)).verdict is Verdict.EQUIVALENT


@given(same_size_pairs())
def test_replication_invariance(pair):
    u, v = pair
    base = leximin_compare(u, v).verdict
    for k in (2, 3):
        assert leximin_compare(replicate(u, k), replicate(v, k)).verdict is base
