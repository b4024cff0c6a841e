"""Aggregation and non-aggregation axioms as checkable instances.

Each axiom variant is a frozen dataclass holding two profiles plus the
parameters of one fully instantiated premise. ``validate_preconditions``
verifies every hypothesis clause in exact rational arithmetic (magnitude
orderings, threshold caps, rank conditions, unaffected-agent equality);
``check_axiom`` then tests whether an ordering's verdict meets the
axiom's conclusion. ``generate_instances`` yields seeded random streams
of valid instances with deliberate boundary coverage.

Reading of the rank clauses in minimal non-aggregation: the recipient i
must be (tied for) worst-off before the change, end no higher than the
poverty threshold, and the donors in M must be (tied for) best-off both
before and after. Ties are permitted throughout. Requiring the recipient
to stay worst-off after the change would reject transitions where other
poor individuals remain behind, which the constructive impossibility
chains in :mod:`welfareax.propositions` rely on.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import ConfigError, InfeasibleParameters
from .orderings import DEFAULT_TOLERANCE, OrderingSpec, swo_compare
from .profiles import (
    IndexSet,
    Profile,
    Verdict,
    aligned_runs,
    as_level,
    ceil_ratio,
    format_level,
    parse_profile_line,
    permute,
    replicate,
    serialize_profile,
)


def _index_set(value) -> IndexSet:
    if isinstance(value, IndexSet):
        return value
    if isinstance(value, str):
        return IndexSet.parse(value)
    return IndexSet.from_indices(value)


# ---------------------------------------------------------------------------
# instance types


@dataclass(frozen=True)
class Anonymity:
    u: Profile
    pi: tuple[int, ...]
    tag = "anonymity"

    @property
    def v(self) -> Profile:
        return permute(self.u, self.pi)


@dataclass(frozen=True)
class StrongPareto:
    u: Profile  # the (weakly) dominating profile
    v: Profile
    tag = "strong_pareto"


@dataclass(frozen=True)
class WeakPareto:
    u: Profile  # strictly dominating everywhere
    v: Profile
    tag = "weak_pareto"


@dataclass(frozen=True)
class PigouDalton:
    """Transfer of epsilon from richer i to poorer j, order preserved."""

    u: Profile
    i: int
    j: int
    epsilon: Fraction
    tag = "pigou_dalton"

    def __post_init__(self):
        object.__setattr__(self, "epsilon", as_level(self.epsilon))

    @property
    def v(self) -> Profile:
        out = self.u.with_value_at(self.i, self.u.value_at(self.i) - self.epsilon)
        return out.with_value_at(self.j, self.u.value_at(self.j) + self.epsilon)


@dataclass(frozen=True)
class ReplicationInvariance:
    u: Profile
    v: Profile
    k: int
    tag = "replication_invariance"


def _coerce(self, *names: str) -> None:
    """Normalize magnitude fields to Fraction and M to an IndexSet."""
    for name in names:
        object.__setattr__(self, name, as_level(getattr(self, name)))
    if hasattr(self, "M"):
        object.__setattr__(self, "M", _index_set(self.M))


@dataclass(frozen=True)
class MinimalNonAggregation:
    """Poorest below theta_p gains >= alpha; richest above theta_r each lose <= beta."""

    u: Profile
    v: Profile
    i: int
    M: IndexSet
    theta_p: Fraction
    theta_r: Fraction
    alpha: Fraction
    beta: Fraction
    tag = "minimal_non_aggregation"

    def __post_init__(self):
        _coerce(self, "theta_p", "theta_r", "alpha", "beta")


@dataclass(frozen=True)
class StrongNonAggregation:
    """One person gains exactly alpha; members of M each lose exactly beta
    and stay strictly above the recipient. No thresholds."""

    u: Profile
    v: Profile
    i: int
    M: IndexSet
    alpha: Fraction
    beta: Fraction
    tag = "strong_non_aggregation"

    def __post_init__(self):
        _coerce(self, "alpha", "beta")


@dataclass(frozen=True)
class StrongNonAggThreshold:
    """Exact-magnitude strong non-aggregation with threshold constraints:
    the recipient ends at or below theta_p, donors end at or above theta_r."""

    u: Profile
    v: Profile
    i: int
    M: IndexSet
    theta_p: Fraction
    theta_r: Fraction
    alpha: Fraction
    beta: Fraction
    tag = "strong_non_aggregation_threshold"

    def __post_init__(self):
        _coerce(self, "theta_p", "theta_r", "alpha", "beta")


@dataclass(frozen=True)
class StrongerNonAggregation:
    """Non-aggregation without rank clauses: any recipient ending at or
    below theta_p gains >= alpha while donors lose <= beta and stay at or
    above theta_p after paying."""

    u: Profile
    v: Profile
    i: int
    M: IndexSet
    theta_p: Fraction
    alpha: Fraction
    beta: Fraction
    tag = "stronger_non_aggregation"

    def __post_init__(self):
        _coerce(self, "theta_p", "alpha", "beta")


@dataclass(frozen=True)
class QuantitativeAggregation:
    """At least m persons gain >= gamma while one person loses <= delta."""

    u: Profile
    v: Profile
    i: int
    M: IndexSet
    m: int
    gamma: Fraction
    delta: Fraction
    tag = "quantitative_aggregation"

    def __post_init__(self):
        _coerce(self, "gamma", "delta")


@dataclass(frozen=True)
class RatioAggregation:
    """At least ceil(lam * n) persons gain >= gamma while one loses <= delta."""

    u: Profile
    v: Profile
    i: int
    M: IndexSet
    lam: Fraction
    gamma: Fraction
    delta: Fraction
    tag = "ratio_aggregation"

    def __post_init__(self):
        _coerce(self, "lam", "gamma", "delta")


@dataclass(frozen=True)
class MinimalAggregation:
    """Everyone except i gains >= gamma while i loses <= delta."""

    u: Profile
    v: Profile
    i: int
    gamma: Fraction
    delta: Fraction
    tag = "minimal_aggregation"

    def __post_init__(self):
        _coerce(self, "gamma", "delta")


AxiomInstance = (
    Anonymity
    | StrongPareto
    | WeakPareto
    | PigouDalton
    | ReplicationInvariance
    | MinimalNonAggregation
    | StrongNonAggregation
    | StrongNonAggThreshold
    | StrongerNonAggregation
    | QuantitativeAggregation
    | RatioAggregation
    | MinimalAggregation
)

AXIOM_TAGS = {
    cls.tag: cls
    for cls in (
        Anonymity,
        StrongPareto,
        WeakPareto,
        PigouDalton,
        ReplicationInvariance,
        MinimalNonAggregation,
        StrongNonAggregation,
        StrongNonAggThreshold,
        StrongerNonAggregation,
        QuantitativeAggregation,
        RatioAggregation,
        MinimalAggregation,
    )
}


# ---------------------------------------------------------------------------
# precondition validation


@dataclass(frozen=True)
class PreconditionReport:
    ok: bool
    failures: tuple[str, ...] = ()

    @property
    def detail(self) -> str:
        return "; ".join(self.failures)


def _fail(failures: list[str], clause: str) -> None:
    failures.append(clause)


def _structural_pair(inst, failures: list[str], need_i: bool = True) -> bool:
    n, m = len(inst.u), len(inst.v)
    if n != m:
        _fail(failures, f"population sizes differ ({n} vs {m})")
        return False
    if need_i and not 0 <= inst.i < n:
        _fail(failures, f"index i={inst.i} out of range")
        return False
    M: IndexSet | None = getattr(inst, "M", None)
    if M is not None:
        if M.ranges and M.ranges[-1][1] > n:
            _fail(failures, "M contains out-of-range indices")
            return False
        if inst.i in M:
            _fail(failures, "i must not belong to M")
            return False
    return True


def _walk_changes(inst, failures, m_clauses):
    """Shared O(blocks) walk for the one-recipient / donor-set axiom shapes.

    ``m_clauses(u_j, v_j)`` returns failure strings for a donor run;
    unaffected runs must be unchanged; returns the recipient pair.
    """
    u_i = v_i = None
    for start, count, uval, vval in aligned_runs(inst.u, inst.v):
        stop = start + count
        m_cnt = inst.M.overlap(start, stop)
        has_i = start <= inst.i < stop
        unaffected = count - m_cnt - (1 if has_i else 0)
        if has_i:
            u_i, v_i = uval, vval
        if m_cnt:
            for clause in m_clauses(uval, vval):
                _fail(failures, f"{clause} (positions {start}..{stop - 1})")
        if unaffected and uval != vval:
            _fail(
                failures,
                f"unaffected agents change: {format_level(uval)} -> "
                f"{format_level(vval)} (positions {start}..{stop - 1})",
            )
    return u_i, v_i


def validate_preconditions(inst: AxiomInstance) -> PreconditionReport:
    """Exact verification of every hypothesis clause of the instance."""
    failures: list[str] = []

    if isinstance(inst, Anonymity):
        try:
            inst.v  # permutation validity is checked by permute()
        except ValueError as exc:
            _fail(failures, str(exc))

    elif isinstance(inst, (StrongPareto, WeakPareto)):
        strict = isinstance(inst, WeakPareto)
        if len(inst.u) != len(inst.v):
            _fail(failures, "population sizes differ")
        else:
            for start, count, uval, vval in aligned_runs(inst.u, inst.v):
                if strict and uval <= vval:
                    _fail(failures, f"u <= v at positions {start}..{start + count - 1}")
                    break
                if not strict and uval < vval:
                    _fail(failures, f"u < v at positions {start}..{start + count - 1}")
                    break

    elif isinstance(inst, PigouDalton):
        n = len(inst.u)
        if inst.epsilon <= 0:
            _fail(failures, "epsilon must be positive")
        if inst.i == inst.j or not (0 <= inst.i < n and 0 <= inst.j < n):
            _fail(failures, "need two distinct in-range indices")
        elif inst.u.value_at(inst.i) - inst.epsilon < inst.u.value_at(inst.j) + inst.epsilon:
            _fail(failures, "transfer would reverse the order: u_i - eps >= u_j + eps fails")

    elif isinstance(inst, ReplicationInvariance):
        if len(inst.u) != len(inst.v):
            _fail(failures, "population sizes differ")
        if inst.k < 1:
            _fail(failures, "k must be a positive integer")

    elif isinstance(inst, MinimalNonAggregation):
        if not inst.theta_r > inst.theta_p > 0:
            _fail(failures, "need theta_r > theta_p > 0")
        if not inst.alpha > inst.beta > 0:
            _fail(failures, "need alpha > beta > 0")
        if _structural_pair(inst, failures):
            u_min, u_max, v_max = inst.u.min_level(), inst.u.max_level(), inst.v.max_level()

            def m_clauses(uj, vj):
                out = []
                if uj != u_max:
                    out.append("u_j must be (tied for) best-off in u")
                if uj < inst.theta_r:
                    out.append("u_j >= theta_r fails")
                if vj != v_max:
                    out.append("v_j must be (tied for) best-off in v")
                if vj < uj - inst.beta:
                    out.append("v_j >= u_j - beta fails")
                return out

            u_i, v_i = _walk_changes(inst, failures, m_clauses)
            if u_i is None:
                _fail(failures, "recipient index not covered")
            else:
                if u_i != u_min:
                    _fail(failures, "u_i must be (tied for) worst-off in u")
                if v_i < u_i + inst.alpha:
                    _fail(failures, "v_i >= u_i + alpha fails")
                if v_i > inst.theta_p:
                    _fail(failures, "theta_p >= v_i fails")

    elif isinstance(inst, StrongNonAggregation):
        if not inst.alpha > inst.beta > 0:
            _fail(failures, "need alpha > beta > 0")
        if _structural_pair(inst, failures):
            v_i_expected = inst.u.value_at(inst.i) + inst.alpha

            def m_clauses(uj, vj):
                out = []
                if vj != uj - inst.beta:
                    out.append("u_j - beta = v_j fails")
                if vj <= v_i_expected:
                    out.append("v_j > v_i fails")
                return out

            u_i, v_i = _walk_changes(inst, failures, m_clauses)
            if u_i is None:
                _fail(failures, "recipient index not covered")
            elif v_i != u_i + inst.alpha:
                _fail(failures, "v_i = u_i + alpha fails")

    elif isinstance(inst, StrongNonAggThreshold):
        if not inst.theta_r > inst.theta_p > 0:
            _fail(failures, "need theta_r > theta_p > 0")
        if not inst.alpha > inst.beta > 0:
            _fail(failures, "need alpha > beta > 0")
        if _structural_pair(inst, failures):

            def m_clauses(uj, vj):
                out = []
                if vj != uj - inst.beta:
                    out.append("u_j - beta = v_j fails")
                if vj < inst.theta_r:
                    out.append("v_j >= theta_r fails")
                return out

            u_i, v_i = _walk_changes(inst, failures, m_clauses)
            if u_i is None:
                _fail(failures, "recipient index not covered")
            else:
                if v_i != u_i + inst.alpha:
                    _fail(failures, "v_i = u_i + alpha fails")
                if v_i > inst.theta_p:
                    _fail(failures, "theta_p >= v_i fails")

    elif isinstance(inst, StrongerNonAggregation):
        if inst.theta_p <= 0:
            _fail(failures, "need theta_p > 0")
        if not inst.alpha > inst.beta > 0:
            _fail(failures, "need alpha > beta > 0")
        if _structural_pair(inst, failures):

            def m_clauses(uj, vj):
                out = []
                if vj < uj - inst.beta:
                    out.append("v_j >= u_j - beta fails")
                if uj - inst.beta < inst.theta_p:
                    out.append("u_j - beta >= theta_p fails")
                return out

            u_i, v_i = _walk_changes(inst, failures, m_clauses)
            if u_i is None:
                _fail(failures, "recipient index not covered")
            else:
                if v_i < u_i + inst.alpha:
                    _fail(failures, "v_i >= u_i + alpha fails")
                if v_i > inst.theta_p:
                    _fail(failures, "theta_p >= v_i fails")

    elif isinstance(inst, (QuantitativeAggregation, RatioAggregation)):
        if not inst.gamma > inst.delta > 0:
            _fail(failures, "need gamma > delta > 0")
        if isinstance(inst, QuantitativeAggregation):
            if not (isinstance(inst.m, int) and inst.m > 2):
                _fail(failures, "need integer m > 2")
            elif len(inst.u) <= inst.m:
                _fail(failures, f"need population size n > m (n={len(inst.u)}, m={inst.m})")
            elif len(inst.M) < inst.m:
                _fail(failures, f"|M| >= m fails (|M|={len(inst.M)}, m={inst.m})")
        else:
            if not 0 < inst.lam < 1:
                _fail(failures, "need lam strictly between 0 and 1")
            else:
                needed = ceil_ratio(inst.lam, len(inst.u))
                if len(inst.M) < needed:
                    _fail(
                        failures,
                        f"|M| >= ceil(lam*n) fails (|M|={len(inst.M)}, need {needed})",
                    )
        if _structural_pair(inst, failures):

            def m_clauses(uj, vj):
                if vj < uj + inst.gamma:
                    return ["v_j >= u_j + gamma fails"]
                return []

            u_i, v_i = _walk_changes(inst, failures, m_clauses)
            if u_i is None:
                _fail(failures, "index i not covered")
            elif v_i < u_i - inst.delta:
                _fail(failures, "v_i >= u_i - delta fails")

    elif isinstance(inst, MinimalAggregation):
        if not inst.gamma > inst.delta > 0:
            _fail(failures, "need gamma > delta > 0")
        n = len(inst.u)
        if len(inst.v) != n:
            _fail(failures, "population sizes differ")
        elif not 0 <= inst.i < n:
            _fail(failures, "index i out of range")
        else:
            for start, count, uval, vval in aligned_runs(inst.u, inst.v):
                has_i = start <= inst.i < start + count
                others = count - (1 if has_i else 0)
                if has_i and vval < uval - inst.delta:
                    _fail(failures, "v_i >= u_i - delta fails")
                if others and vval < uval + inst.gamma:
                    _fail(
                        failures,
                        f"v_j >= u_j + gamma fails (positions {start}..{start + count - 1})",
                    )

    else:
        raise ConfigError(f"unknown axiom instance {inst!r}")

    return PreconditionReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# conclusion checking


class CheckStatus(Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    PRECONDITION_UNMET = "precondition-unmet"


@dataclass(frozen=True)
class CheckResult:
    status: CheckStatus
    instance: AxiomInstance
    detail: str = ""
    flagged: bool = False  # numeric-tie ambiguity in a floating backend

    @property
    def violated(self) -> bool:
        return self.status is CheckStatus.VIOLATED


_WEAK = (Verdict.STRICTLY_BETTER, Verdict.EQUIVALENT)


def check_axiom(
    spec: OrderingSpec,
    inst: AxiomInstance,
    tolerance: Fraction = DEFAULT_TOLERANCE,
) -> CheckResult:
    """Check one instance against one ordering.

    Violated only when every hypothesis clause held and the ordering's
    verdict contradicts the conclusion. Numeric ties are surfaced via
    ``flagged``, never silently satisfied.
    """
    report = validate_preconditions(inst)
    if not report.ok:
        return CheckResult(CheckStatus.PRECONDITION_UNMET, inst, report.detail)

    if isinstance(inst, Anonymity):
        res = swo_compare(spec, inst.u, inst.v, tolerance=tolerance)
        ok = res.verdict is Verdict.EQUIVALENT
        want = "u ~ v"
    elif isinstance(inst, StrongPareto):
        strict = any(uval > vval for _, _, uval, vval in aligned_runs(inst.u, inst.v))
        res = swo_compare(spec, inst.u, inst.v, tolerance=tolerance)
        ok = res.verdict is Verdict.STRICTLY_BETTER if strict else res.verdict in _WEAK
        want = "u > v" if strict else "u >= v"
    elif isinstance(inst, WeakPareto):
        res = swo_compare(spec, inst.u, inst.v, tolerance=tolerance)
        ok = res.verdict is Verdict.STRICTLY_BETTER
        want = "u > v"
    elif isinstance(inst, ReplicationInvariance):
        base = swo_compare(spec, inst.u, inst.v, tolerance=tolerance)
        lifted = swo_compare(
            spec,
            replicate(inst.u, inst.k),
            replicate(inst.v, inst.k),
            tolerance=tolerance,
        )
        ok = base.verdict is lifted.verdict
        detail = "" if ok else (
            f"verdict changes under {inst.k}-replication: "
            f"{base.verdict.value} vs {lifted.verdict.value}"
        )
        return CheckResult(
            CheckStatus.SATISFIED if ok else CheckStatus.VIOLATED,
            inst,
            detail,
            base.numerically_tied or lifted.numerically_tied,
        )
    else:
        res = swo_compare(spec, inst.v, inst.u, tolerance=tolerance)
        ok = res.verdict in _WEAK
        want = "v >= u"

    detail = "" if ok else f"conclusion {want} fails: ordering says {res.verdict.value}"
    return CheckResult(
        CheckStatus.SATISFIED if ok else CheckStatus.VIOLATED,
        inst,
        detail,
        res.numerically_tied,
    )


# ---------------------------------------------------------------------------
# randomized instance generation


BOUNDARY_PROBABILITY = 0.25


def _draw_level(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    """Uniform draw on a halves grid inside [lo, hi]."""
    if hi < lo:
        raise InfeasibleParameters(f"empty draw range [{lo}, {hi}]")
    den = 2 if rng.random() < 0.25 else 1
    if den == 1 and lo.denominator == 1 and hi.denominator == 1:
        return Fraction(rng.randint(lo.numerator, hi.numerator))
    lo_n = math.ceil(lo * den)
    hi_n = math.floor(hi * den)
    if hi_n < lo_n:
        return lo  # grid too coarse, fall back to the endpoint
    return Fraction(rng.randint(lo_n, hi_n), den)


def _positions(rng: random.Random, n: int, m_count: int, i_pos: int | None = None):
    if i_pos is None:
        i_pos = rng.randrange(n)
    rest = [p for p in range(n) if p != i_pos]
    rng.shuffle(rest)
    return i_pos, sorted(rest[:m_count]), sorted(rest[m_count:])


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InfeasibleParameters(message)


def generate_instances(
    axiom: str,
    params: Mapping[str, object],
    *,
    populations: tuple[int, int] = (2, 10),
    values: tuple = (-20, 20),
    seed: int = 0,
) -> Iterator[AxiomInstance]:
    """Deterministic infinite stream of valid instances of one axiom.

    ``params`` supplies the axiom's magnitudes (alpha, beta, gamma,
    delta, thresholds, m, lam, epsilon_max, k_max as applicable).
    Boundary shapes (minimal donor sets, recipients landing exactly on
    the threshold, exact maximal losses) appear with fixed probability.
    """
    rng = random.Random(seed)
    lo, hi = as_level(values[0]), as_level(values[1])
    p_lo, p_hi = populations
    _require(1 <= p_lo <= p_hi, "empty population range")
    _require(lo < hi, "empty value range")
    maker = {
        "anonymity": _gen_anonymity,
        "strong_pareto": _gen_strong_pareto,
        "weak_pareto": _gen_weak_pareto,
        "pigou_dalton": _gen_pigou_dalton,
        "replication_invariance": _gen_replication,
        "minimal_non_aggregation": _gen_mna,
        "strong_non_aggregation": _gen_sna,
        "strong_non_aggregation_threshold": _gen_snat,
        "stronger_non_aggregation": _gen_stronger,
        "quantitative_aggregation": _gen_qa,
        "ratio_aggregation": _gen_ra,
        "minimal_aggregation": _gen_minagg,
    }.get(axiom)
    if maker is None:
        raise ConfigError(f"unknown axiom tag {axiom!r}")

    ctx = _GenContext(rng, params, lo, hi, max(p_lo, 2), p_hi)
    _validate_gen_params(axiom, ctx)
    while True:
        yield maker(ctx)


@dataclass
class _GenContext:
    rng: random.Random
    params: Mapping
    lo: Fraction
    hi: Fraction
    p_lo: int
    p_hi: int

    def get(self, key: str, default=None):
        return as_level(self.params[key]) if key in self.params else default

    def boundary(self) -> bool:
        return self.rng.random() < BOUNDARY_PROBABILITY

    def size(self, minimum: int = 2) -> int:
        lo = max(self.p_lo, minimum)
        _require(lo <= self.p_hi, f"population range cannot reach size {minimum}")
        return self.rng.randint(lo, self.p_hi)


def _validate_gen_params(axiom: str, ctx: _GenContext) -> None:
    g = ctx.get
    if axiom in ("minimal_non_aggregation", "strong_non_aggregation_threshold"):
        _require(g("theta_r") > g("theta_p") > 0, "need theta_r > theta_p > 0")
        _require(g("alpha") > g("beta") > 0, "need alpha > beta > 0")
    if axiom == "stronger_non_aggregation":
        _require(g("theta_p") > 0, "need theta_p > 0")
        _require(g("alpha") > g("beta") > 0, "need alpha > beta > 0")
    if axiom == "strong_non_aggregation":
        _require(g("alpha") > g("beta") > 0, "need alpha > beta > 0")
    if axiom in ("quantitative_aggregation", "ratio_aggregation", "minimal_aggregation"):
        _require(g("gamma") > g("delta") > 0, "need gamma > delta > 0")
    if axiom == "quantitative_aggregation":
        m = int(ctx.params["m"])
        _require(m > 2, "need m > 2")
        _require(ctx.p_hi > m, "population range cannot exceed m")
    if axiom == "ratio_aggregation":
        lam = g("lam")
        _require(0 < lam < 1, "need lam in (0, 1)")
        _require(
            any(ceil_ratio(lam, n) <= n - 1 for n in range(max(2, ctx.p_lo), ctx.p_hi + 1)),
            "no population size in range leaves room for the donor set",
        )


def _random_profile(ctx: _GenContext, n: int) -> Profile:
    return Profile.from_levels(_draw_level(ctx.rng, ctx.lo, ctx.hi) for _ in range(n))


def _gen_anonymity(ctx: _GenContext) -> Anonymity:
    n = ctx.size(1)
    pi = list(range(n))
    ctx.rng.shuffle(pi)
    return Anonymity(_random_profile(ctx, n), tuple(pi))


def _gen_strong_pareto(ctx: _GenContext) -> StrongPareto:
    n = ctx.size(1)
    v = _random_profile(ctx, n)
    deltas = [
        Fraction(0) if ctx.rng.random() < 0.4 else _draw_level(ctx.rng, Fraction(0), Fraction(5))
        for _ in range(n)
    ]
    u = Profile.from_levels(x + d for x, d in zip(v.iter_levels(), deltas))
    return StrongPareto(u, v)


def _gen_weak_pareto(ctx: _GenContext) -> WeakPareto:
    n = ctx.size(1)
    v = _random_profile(ctx, n)
    u = Profile.from_levels(
        x + _draw_level(ctx.rng, Fraction(1, 2), Fraction(5)) for x in v.iter_levels()
    )
    return WeakPareto(u, v)


def _gen_pigou_dalton(ctx: _GenContext) -> PigouDalton:
    n = ctx.size(2)
    eps_max = ctx.get("epsilon_max", Fraction(3))
    epsilon = _draw_level(ctx.rng, Fraction(1, 2), eps_max)
    slack = Fraction(0) if ctx.boundary() else _draw_level(ctx.rng, Fraction(0), Fraction(4))
    u_j = _draw_level(ctx.rng, ctx.lo, ctx.hi - 2 * epsilon - slack)
    u_i = u_j + 2 * epsilon + slack
    i, j = ctx.rng.sample(range(n), 2)
    levels = [_draw_level(ctx.rng, ctx.lo, ctx.hi) for _ in range(n)]
    levels[i], levels[j] = u_i, u_j
    return PigouDalton(Profile.from_levels(levels), i, j, epsilon)


def _gen_replication(ctx: _GenContext) -> ReplicationInvariance:
    n = ctx.size(1)
    k_max = int(ctx.params.get("k_max", 4))
    return ReplicationInvariance(
        _random_profile(ctx, n), _random_profile(ctx, n), ctx.rng.randint(1, max(1, k_max))
    )


def _gen_mna(ctx: _GenContext) -> MinimalNonAggregation:
    g = ctx.get
    theta_p, theta_r = g("theta_p"), g("theta_r")
    alpha, beta = g("alpha"), g("beta")
    n = ctx.size(2)
    m_count = ctx.rng.randint(1, n - 1)
    i, M, rest = _positions(ctx.rng, n, m_count)
    u_i = _draw_level(ctx.rng, min(ctx.lo, theta_p - alpha - 5), theta_p - alpha)
    if ctx.boundary():
        # the two binding shapes: gain exactly alpha, or landing on theta_p
        v_i = u_i + alpha if ctx.rng.random() < 0.5 else theta_p
    else:
        v_i = _draw_level(ctx.rng, u_i + alpha, theta_p)
    u_top = _draw_level(ctx.rng, theta_r, max(ctx.hi, theta_r + 5))
    loss_cap = min(beta, u_top - v_i)
    loss = loss_cap if ctx.boundary() else _draw_level(ctx.rng, Fraction(0), loss_cap)
    v_top = u_top - loss
    u_levels = [None] * n
    v_levels = [None] * n
    u_levels[i], v_levels[i] = u_i, v_i
    for p in M:
        u_levels[p], v_levels[p] = u_top, v_top
    for p in rest:
        x = _draw_level(ctx.rng, u_i, v_top)
        u_levels[p] = v_levels[p] = x
    return MinimalNonAggregation(
        Profile.from_levels(u_levels), Profile.from_levels(v_levels),
        i, IndexSet.from_indices(M), theta_p, theta_r, alpha, beta,
    )


def _gen_sna(ctx: _GenContext) -> StrongNonAggregation:
    g = ctx.get
    alpha, beta = g("alpha"), g("beta")
    n = ctx.size(2)
    m_count = ctx.rng.randint(1, n - 1)
    i, M, rest = _positions(ctx.rng, n, m_count)
    u_i = _draw_level(ctx.rng, ctx.lo, ctx.hi)
    u_levels = [None] * n
    v_levels = [None] * n
    u_levels[i], v_levels[i] = u_i, u_i + alpha
    floor = u_i + alpha + beta
    for p in M:
        u_j = floor + _draw_level(ctx.rng, Fraction(1, 2), Fraction(6))
        u_levels[p], v_levels[p] = u_j, u_j - beta
    for p in rest:
        x = _draw_level(ctx.rng, ctx.lo, ctx.hi)
        u_levels[p] = v_levels[p] = x
    return StrongNonAggregation(
        Profile.from_levels(u_levels), Profile.from_levels(v_levels),
        i, IndexSet.from_indices(M), alpha, beta,
    )


def _gen_snat(ctx: _GenContext) -> StrongNonAggThreshold:
    g = ctx.get
    theta_p, theta_r = g("theta_p"), g("theta_r")
    alpha, beta = g("alpha"), g("beta")
    n = ctx.size(2)
    m_count = ctx.rng.randint(1, n - 1)
    i, M, rest = _positions(ctx.rng, n, m_count)
    u_i = theta_p - alpha if ctx.boundary() else _draw_level(
        ctx.rng, min(ctx.lo, theta_p - alpha - 5), theta_p - alpha
    )
    u_levels = [None] * n
    v_levels = [None] * n
    u_levels[i], v_levels[i] = u_i, u_i + alpha
    for p in M:
        u_j = _draw_level(ctx.rng, theta_r + beta, max(ctx.hi, theta_r + beta + 5))
        u_levels[p], v_levels[p] = u_j, u_j - beta
    for p in rest:
        x = _draw_level(ctx.rng, ctx.lo, ctx.hi)
        u_levels[p] = v_levels[p] = x
    return StrongNonAggThreshold(
        Profile.from_levels(u_levels), Profile.from_levels(v_levels),
        i, IndexSet.from_indices(M), theta_p, theta_r, alpha, beta,
    )


def _gen_stronger(ctx: _GenContext) -> StrongerNonAggregation:
    g = ctx.get
    theta_p, alpha, beta = g("theta_p"), g("alpha"), g("beta")
    n = ctx.size(2)
    m_count = ctx.rng.randint(1, n - 1)
    i, M, rest = _positions(ctx.rng, n, m_count)
    u_i = _draw_level(ctx.rng, min(ctx.lo, theta_p - alpha - 5), theta_p - alpha)
    if ctx.boundary():
        v_i = u_i + alpha if ctx.rng.random() < 0.5 else theta_p
    else:
        v_i = _draw_level(ctx.rng, u_i + alpha, theta_p)
    u_levels = [None] * n
    v_levels = [None] * n
    u_levels[i], v_levels[i] = u_i, v_i
    for p in M:
        u_j = _draw_level(ctx.rng, theta_p + beta, max(ctx.hi, theta_p + beta + 5))
        loss = beta if ctx.boundary() else _draw_level(ctx.rng, Fraction(0), beta)
        u_levels[p], v_levels[p] = u_j, u_j - loss
    for p in rest:
        x = _draw_level(ctx.rng, ctx.lo, ctx.hi)
        u_levels[p] = v_levels[p] = x
    return StrongerNonAggregation(
        Profile.from_levels(u_levels), Profile.from_levels(v_levels),
        i, IndexSet.from_indices(M), theta_p, alpha, beta,
    )


def _aggregation_pair(ctx: _GenContext, n: int, m_count: int, gamma, delta):
    i, M, rest = _positions(ctx.rng, n, m_count)
    u_levels = [_draw_level(ctx.rng, ctx.lo, ctx.hi) for _ in range(n)]
    v_levels = list(u_levels)
    loss = delta if ctx.boundary() else _draw_level(ctx.rng, Fraction(0), delta)
    v_levels[i] = u_levels[i] - loss
    for p in M:
        extra = Fraction(0) if ctx.boundary() else _draw_level(ctx.rng, Fraction(0), Fraction(4))
        v_levels[p] = u_levels[p] + gamma + extra
    return (
        Profile.from_levels(u_levels),
        Profile.from_levels(v_levels),
        i,
        IndexSet.from_indices(M),
    )


def _gen_qa(ctx: _GenContext) -> QuantitativeAggregation:
    g = ctx.get
    m = int(ctx.params["m"])
    gamma, delta = g("gamma"), g("delta")
    n = ctx.size(m + 1)
    m_count = m if ctx.boundary() else ctx.rng.randint(m, n - 1)
    u, v, i, M = _aggregation_pair(ctx, n, m_count, gamma, delta)
    return QuantitativeAggregation(u, v, i, M, m, gamma, delta)


def _gen_ra(ctx: _GenContext) -> RatioAggregation:
    g = ctx.get
    lam, gamma, delta = g("lam"), g("gamma"), g("delta")
    while True:
        n = ctx.size(2)
        needed = ceil_ratio(lam, n)
        if needed <= n - 1:
            break
    m_count = needed if ctx.boundary() else ctx.rng.randint(needed, n - 1)
    u, v, i, M = _aggregation_pair(ctx, n, m_count, gamma, delta)
    return RatioAggregation(u, v, i, M, lam, gamma, delta)


def _gen_minagg(ctx: _GenContext) -> MinimalAggregation:
    g = ctx.get
    gamma, delta = g("gamma"), g("delta")
    n = ctx.size(2)
    u, v, i, _ = _aggregation_pair(ctx, n, n - 1, gamma, delta)
    return MinimalAggregation(u, v, i, gamma, delta)


# ---------------------------------------------------------------------------
# suites


@dataclass(frozen=True)
class SuiteResult:
    axiom: str
    checked: int
    satisfied: int
    violated: int
    unmet: int
    flagged: int
    first_violation: CheckResult | None

    @property
    def clean(self) -> bool:
        return self.violated == 0 and self.unmet == 0


def run_suite(
    spec: OrderingSpec,
    axiom: str,
    params: Mapping[str, object],
    count: int,
    *,
    populations: tuple[int, int] = (2, 10),
    values: tuple = (-20, 20),
    seed: int = 0,
    tolerance: Fraction = DEFAULT_TOLERANCE,
) -> SuiteResult:
    """Run ``count`` generated instances of one axiom against an ordering."""
    satisfied = violated = unmet = flagged = 0
    first_violation = None
    stream = generate_instances(
        axiom, params, populations=populations, values=values, seed=seed
    )
    for inst in itertools.islice(stream, count):
        result = check_axiom(spec, inst, tolerance)
        if result.status is CheckStatus.SATISFIED:
            satisfied += 1
        elif result.status is CheckStatus.VIOLATED:
            violated += 1
            if first_violation is None:
                first_violation = result
        else:
            unmet += 1
        if result.flagged:
            flagged += 1
    return SuiteResult(axiom, count, satisfied, violated, unmet, flagged, first_violation)


# ---------------------------------------------------------------------------
# instance configuration documents


def instance_to_config(inst: AxiomInstance) -> dict:
    doc: dict = {"axiom": inst.tag}
    doc["u"] = serialize_profile(inst.u)
    if isinstance(inst, Anonymity):
        doc["pi"] = list(inst.pi)
        return doc
    if isinstance(inst, PigouDalton):
        doc.update(i=inst.i, j=inst.j, epsilon=format_level(inst.epsilon))
        return doc
    doc["v"] = serialize_profile(inst.v)
    if isinstance(inst, ReplicationInvariance):
        doc["k"] = inst.k
        return doc
    if isinstance(inst, (StrongPareto, WeakPareto)):
        return doc
    doc["i"] = inst.i
    if hasattr(inst, "M"):
        doc["M"] = inst.M.serialize()
    for name in ("theta_p", "theta_r", "alpha", "beta", "gamma", "delta", "lam"):
        if hasattr(inst, name):
            doc[name] = format_level(getattr(inst, name))
    if isinstance(inst, QuantitativeAggregation):
        doc["m"] = inst.m
    return doc


def instance_from_config(doc: Mapping) -> AxiomInstance:
    if "axiom" not in doc:
        raise ConfigError("instance config must carry an 'axiom' tag")
    tag = doc["axiom"]
    cls = AXIOM_TAGS.get(tag)
    if cls is None:
        raise ConfigError(f"unknown axiom tag {tag!r}")
    try:
        u = parse_profile_line(str(doc["u"]))
        if cls is Anonymity:
            return Anonymity(u, tuple(int(x) for x in doc["pi"]))
        if cls is PigouDalton:
            return PigouDalton(u, int(doc["i"]), int(doc["j"]), as_level(doc["epsilon"]))
        v = parse_profile_line(str(doc["v"]))
        if cls is ReplicationInvariance:
            return ReplicationInvariance(u, v, int(doc["k"]))
        if cls in (StrongPareto, WeakPareto):
            return cls(u, v)
        kwargs = {"u": u, "v": v, "i": int(doc["i"])}
        if cls is not MinimalAggregation:
            kwargs["M"] = _index_set(doc["M"])
        for name in ("theta_p", "theta_r", "alpha", "beta", "gamma", "delta", "lam"):
            if name in cls.__annotations__:
                kwargs[name] = as_level(doc[name])
        if cls is QuantitativeAggregation:
            kwargs["m"] = int(doc["m"])
        return cls(**kwargs)
    except KeyError as exc:
        raise ConfigError(f"missing instance field {exc}") from exc
