from fractions import Fraction

import pytest

from welfareax import (
    CheckStatus,
    ConstantLambda,
    Identity,
    Leximin,
    MidpointLambda,
    Rdu,
    SuffAvg,
    check_axiom,
    validate_preconditions,
)
from welfareax.search import SearchBudget, find_counterexample, shrink

# strong discounting makes ratio-aggregation violations reachable at
# single-digit population sizes
RDU_STEEP = Rdu(Fraction(2), Identity())
RATIO_PARAMS = dict(lam="1/2", gamma=2, delta=1)
RATIO_BUDGET = SearchBudget(20_000, seed=1, populations=(6, 12))


def test_leximin_violates_quantitative_aggregation_quickly():
    witness = find_counterexample(
        Leximin(),
        "quantitative_aggregation",
        dict(m=3, gamma=2, delta=1),
        SearchBudget(2000, seed=0, populations=(4, 8)),
    )
    assert witness is not None
    assert witness.result.status is CheckStatus.VIOLATED


def test_rdu_ratio_aggregation_witness_found_and_rechecks():
    witness = find_counterexample(RDU_STEEP, "ratio_aggregation", RATIO_PARAMS, RATIO_BUDGET)
    assert witness is not None
    # soundness: exact revalidation and recheck reproduce the violation
    assert validate_preconditions(witness.instance).ok
    assert check_axiom(RDU_STEEP, witness.instance).status is CheckStatus.VIOLATED


def test_suffavg_minimal_non_aggregation_finds_nothing():
    spec = SuffAvg(
        10, MidpointLambda(Fraction(10), Fraction(1), Fraction(10), Fraction(1), Fraction(1, 2))
    )
    params = dict(theta_p=10, theta_r=12, alpha=10, beta=1)
    witness = find_counterexample(
        spec, "minimal_non_aggregation", params, SearchBudget(3000, seed=2)
    )
    assert witness is None


def test_determinism():
    a = find_counterexample(RDU_STEEP, "ratio_aggregation", RATIO_PARAMS, RATIO_BUDGET)
    b = find_counterexample(RDU_STEEP, "ratio_aggregation", RATIO_PARAMS, RATIO_BUDGET)
    assert a == b
    assert a is not None


def test_shrinking_contract():
    witness = find_counterexample(RDU_STEEP, "ratio_aggregation", RATIO_PARAMS, RATIO_BUDGET)
    assert witness is not None
    again = shrink(witness, RDU_STEEP)
    # idempotent at the fixpoint and never larger
    assert again.instance == witness.instance
    assert len(witness.instance.u) <= RATIO_BUDGET.populations[1]


def test_shrunk_witness_is_small():
    # a plain-average ordering violates strong non-aggregation; shrinking
    # should cut the witness down to very few people
    avg = SuffAvg(1, ConstantLambda(Fraction(0)), allow_degenerate=True)
    witness = find_counterexample(
        avg,
        "strong_non_aggregation",
        dict(alpha=2, beta=1),
        SearchBudget(5000, seed=4, populations=(4, 10)),
    )
    assert witness is not None
    assert len(witness.instance.u) <= 4
    assert witness.shrink_steps > 0


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(0)
    with pytest.raises(ValueError):
        SearchBudget(10, populations=(5, 2))
