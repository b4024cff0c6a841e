"""Social welfare orderings over well-being profiles.

Implemented families:

* same-population leximin (lexicographic maximin);
* rank-discounted generalized utilitarianism (RDU): ascending ranks,
  the worst-off gets weight 1, rank i gets rho**(-i);
* a sufficientarian-average rule: a population-size-dependent convex
  combination of the shortfall sum below a poverty threshold and the
  simple average, with the per-n weight either fixed, tabulated, or the
  midpoint of the feasibility interval derived from aggregation and
  non-aggregation magnitudes;
* four variants of that rule: multiple thresholds, a rank-weighted
  second term, a bounded concave transform of the average, and a
  concave transform of the shortfall term.

Piecewise-linear rules evaluate in exact rational arithmetic. RDU uses
compensated float summation with an a-posteriori error bound and falls
back to exact arithmetic (rational rho, exact transform) when a float
comparison cannot separate the two sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Mapping

from .errors import ConfigError, MissingLambda
from .gfunctions import GFunction, g_from_config, g_to_config
from .profiles import (
    CompareResult,
    Profile,
    Verdict,
    as_level,
    ceil_ratio,
    format_level,
    rank,
)

DEFAULT_TOLERANCE = Fraction(1, 10**12)

#: Largest total population for which an exact RDU comparison is attempted.
RDU_EXACT_LIMIT = 20_000

_EPS = 2.0**-52


# ---------------------------------------------------------------------------
# valuations


@dataclass(frozen=True)
class ExactValue:
    value: Fraction

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class FloatValue:
    value: float
    bound: float

    def __float__(self) -> float:
        return self.value


Valuation = ExactValue | FloatValue


# ---------------------------------------------------------------------------
# per-population weight schedules


@dataclass(frozen=True)
class ConstantLambda:
    value: Fraction


@dataclass(frozen=True)
class TableLambda:
    table: tuple[tuple[int, Fraction], ...]

    @staticmethod
    def from_mapping(mapping: Mapping[int, object]) -> "TableLambda":
        return TableLambda(tuple(sorted((int(n), as_level(v)) for n, v in mapping.items())))


@dataclass(frozen=True)
class MidpointLambda:
    """Midpoint of the per-n feasibility interval, clamped into (0, 1).

    alpha > beta > 0 are the non-aggregation gain/loss magnitudes,
    gamma > delta > 0 the aggregation ones, ratio the population share
    whose gains must prevail.
    """

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    ratio: Fraction
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def value_for(self, n: int) -> Fraction:
        if n not in self._cache:
            lower, upper, feasible = lambda_feasible_interval(
                n, self.alpha, self.beta, self.gamma, self.delta, self.ratio
            )
            if not feasible:
                raise MissingLambda(
                    f"feasibility interval empty at n={n}: "
                    f"({format_level(lower)}, {format_level(upper)})"
                )
            self._cache[n] = (max(lower, Fraction(0)) + min(upper, Fraction(1))) / 2
        return self._cache[n]


LambdaSchedule = ConstantLambda | TableLambda | MidpointLambda


def lambda_for(schedule: LambdaSchedule, n: int) -> Fraction:
    if isinstance(schedule, ConstantLambda):
        return schedule.value
    if isinstance(schedule, TableLambda):
        for size, value in schedule.table:
            if size == n:
                return value
        raise MissingLambda(f"no weight tabulated for population size {n}")
    if isinstance(schedule, MidpointLambda):
        return schedule.value_for(n)
    raise ConfigError(f"unknown schedule {schedule!r}")


def lambda_feasible_interval(
    n: int, alpha, beta, gamma, delta, lam_ratio
) -> tuple[Fraction, Fraction, bool]:
    """Exact bounds on the per-n weight of the sufficientarian term.

    lower = ((n-1) beta - alpha) / ((n-1)(alpha + beta))
    upper = (q gamma - delta) / ((n-1) delta + q gamma),  q = ceil(ratio * n)

    Any weight in (max(lower, 0), min(upper, 1)) makes the n-person rule
    tolerate a delta-loss against q gains of gamma while still letting
    an alpha-gain of the poorest outweigh (n-1) losses of beta.
    """
    alpha, beta = as_level(alpha), as_level(beta)
    gamma, delta = as_level(gamma), as_level(delta)
    if not alpha > beta > 0:
        raise ConfigError("need alpha > beta > 0")
    if not gamma > delta > 0:
        raise ConfigError("need gamma > delta > 0")
    if n < 2:
        raise ConfigError("interval defined for n >= 2")
    q = ceil_ratio(as_level(lam_ratio), n)
    lower = Fraction((n - 1) * beta - alpha, (n - 1) * (alpha + beta))
    upper = Fraction(q * gamma - delta, (n - 1) * delta + q * gamma)
    feasible = max(lower, Fraction(0)) < min(upper, Fraction(1))
    return lower, upper, feasible


# ---------------------------------------------------------------------------
# ordering parameter records


@dataclass(frozen=True)
class Leximin:
    tag = "leximin"


@dataclass(frozen=True)
class Rdu:
    rho: Fraction
    g: GFunction
    tag = "rdu"

    def __post_init__(self):
        object.__setattr__(self, "rho", as_level(self.rho))
        if self.rho <= 0:
            raise ConfigError("discount factor rho must be positive")

    @property
    def warnings(self) -> tuple[str, ...]:
        if self.rho <= 1:
            return ("rho <= 1: rank discounting is reversed or absent",)
        return ()


def _check_lambda(lam: Fraction, allow_degenerate: bool) -> Fraction:
    if allow_degenerate:
        if not 0 <= lam < 1:
            raise ConfigError(f"weight {format_level(lam)} outside [0, 1)")
    elif not 0 < lam < 1:
        raise ConfigError(f"weight {format_level(lam)} outside (0, 1)")
    return lam


@dataclass(frozen=True)
class SuffAvg:
    """Shortfall-plus-average rule with threshold theta_p.

    ``allow_degenerate`` admits a weight of exactly 0 (plain average
    utilitarianism), used as a test extension only.
    """

    theta_p: Fraction
    schedule: LambdaSchedule
    allow_degenerate: bool = False
    tag = "suffavg"

    def __post_init__(self):
        object.__setattr__(self, "theta_p", as_level(self.theta_p))

    @property
    def warnings(self) -> tuple[str, ...]:
        if self.theta_p <= 0:
            return ("theta_p <= 0: the rule is defined with a positive threshold",)
        return ()

    def lambda_for(self, n: int) -> Fraction:
        return _check_lambda(lambda_for(self.schedule, n), self.allow_degenerate)


@dataclass(frozen=True)
class MultiThreshold:
    """Several nested shortfall terms below increasing thresholds."""

    thetas: tuple[Fraction, ...]
    weights: tuple[Fraction, ...] | None = None
    weights_table: tuple[tuple[int, tuple[Fraction, ...]], ...] | None = None
    tag = "multithreshold"

    def __post_init__(self):
        object.__setattr__(self, "thetas", tuple(as_level(t) for t in self.thetas))
        if any(b <= a for a, b in zip(self.thetas, self.thetas[1:])):
            raise ConfigError("thresholds must be strictly increasing")
        if (self.weights is None) == (self.weights_table is None):
            raise ConfigError("give exactly one of weights / weights_table")
        if self.weights is not None:
            object.__setattr__(self, "weights", self._validated(self.weights))
        else:
            object.__setattr__(
                self,
                "weights_table",
                tuple((int(n), self._validated(w)) for n, w in self.weights_table),
            )

    def _validated(self, weights) -> tuple[Fraction, ...]:
        w = tuple(as_level(x) for x in weights)
        if len(w) != len(self.thetas) + 1:
            raise ConfigError("need one weight per threshold plus the average weight")
        if any(not 0 < x < 1 for x in w):
            raise ConfigError("weights must lie in (0, 1)")
        if sum(w) != 1:
            raise ConfigError("weights must sum to 1 exactly")
        return w

    @property
    def warnings(self) -> tuple[str, ...]:
        tables = [self.weights] if self.weights is not None else [
            w for _, w in self.weights_table
        ]
        for w in tables:
            if any(b >= a for a, b in zip(w, w[1:])):
                return (
                    "weights are not strictly decreasing: deeper-poverty terms "
                    "are defined to weigh more",
                )
        return ()

    def weights_for(self, n: int) -> tuple[Fraction, ...]:
        if self.weights is not None:
            return self.weights
        for size, w in self.weights_table:
            if size == n:
                return w
        raise MissingLambda(f"no weights tabulated for population size {n}")


@dataclass(frozen=True)
class RankWeighted:
    """Shortfall term plus a rank-weighted average (worst-off weighted most)."""

    theta_p: Fraction
    schedule: LambdaSchedule
    weights_table: tuple[tuple[int, tuple[Fraction, ...]], ...]
    tag = "rankweighted"

    def __post_init__(self):
        object.__setattr__(self, "theta_p", as_level(self.theta_p))
        table = []
        for n, w in self.weights_table:
            w = tuple(as_level(x) for x in w)
            if len(w) != int(n):
                raise ConfigError(f"need {n} rank weights for population size {n}")
            if any(x <= 0 for x in w):
                raise ConfigError("rank weights must be positive")
            if sum(w) != 1:
                raise ConfigError("rank weights must sum to 1 exactly")
            if any(b > a for a, b in zip(w, w[1:])):
                raise ConfigError("rank weights must be nonincreasing in rank")
            table.append((int(n), w))
        object.__setattr__(self, "weights_table", tuple(table))

    def weights_for(self, n: int) -> tuple[Fraction, ...]:
        for size, w in self.weights_table:
            if size == n:
                return w
        raise MissingLambda(f"no rank weights tabulated for population size {n}")

    def lambda_for(self, n: int) -> Fraction:
        return _check_lambda(lambda_for(self.schedule, n), False)


@dataclass(frozen=True)
class BoundedG:
    """Shortfall term plus the average of a bounded concave transform."""

    theta_p: Fraction
    schedule: LambdaSchedule
    g: GFunction
    tag = "boundedg"

    def __post_init__(self):
        object.__setattr__(self, "theta_p", as_level(self.theta_p))

    @property
    def warnings(self) -> tuple[str, ...]:
        if self.g.upper_bound is None:
            return ("transform has no upper bound: large gains are not capped",)
        return ()

    def lambda_for(self, n: int) -> Fraction:
        return _check_lambda(lambda_for(self.schedule, n), False)


@dataclass(frozen=True)
class ConcavePoor:
    """Concave transform applied to the shortfall term, plain average kept."""

    theta_p: Fraction
    schedule: LambdaSchedule
    g: GFunction
    tag = "concavepoor"

    def __post_init__(self):
        object.__setattr__(self, "theta_p", as_level(self.theta_p))

    def lambda_for(self, n: int) -> Fraction:
        return _check_lambda(lambda_for(self.schedule, n), False)


OrderingSpec = Leximin | Rdu | SuffAvg | MultiThreshold | RankWeighted | BoundedG | ConcavePoor


# ---------------------------------------------------------------------------
# leximin


def leximin_compare(u: Profile, v: Profile) -> CompareResult:
    """Lexicographic maximin: worst-off first, then second worst, ...

    Profiles of different sizes are incomparable (the rule says nothing
    across population sizes).
    """
    if len(u) != len(v):
        return CompareResult(
            Verdict.INCOMPARABLE, note="leximin compares equal population sizes only"
        )
    ublocks = u.sorted_blocks()
    vblocks = v.sorted_blocks()
    iu = iv = 0
    ucnt = vcnt = 0
    while iu < len(ublocks):
        uval, un = ublocks[iu]
        vval, vn = vblocks[iv]
        if uval != vval:
            verdict = Verdict.STRICTLY_BETTER if uval > vval else Verdict.STRICTLY_WORSE
            return CompareResult(verdict)
        take = min(un - ucnt, vn - vcnt)
        ucnt += take
        vcnt += take
        if ucnt == un:
            iu += 1
            ucnt = 0
        if vcnt == vn:
            iv += 1
            vcnt = 0
    return CompareResult(Verdict.EQUIVALENT)


# ---------------------------------------------------------------------------
# rank-discounted generalized utilitarianism


def _rdu_float(u: Profile, p: Rdu) -> FloatValue:
    rho = float(p.rho)
    log_r = -math.log(rho)
    total = comp = 0.0
    err = abs_sum = 0.0
    start = 0  # 0-based rank of the first entry of the block
    for value, count in u.sorted_blocks():
        gv = p.g.value(value)
        if p.rho == 1:
            term = gv * count
            cond = 2.0
        else:
            x_s = start * log_r
            x_c = count * log_r
            weight = math.exp(x_s)
            geom = -math.expm1(x_c) / -math.expm1(log_r)
            term = gv * weight * geom
            cond = 8.0 + abs(x_s) + abs(x_c)
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        abs_sum += abs(term)
        err += _EPS * abs(term) * cond
        start += count
    value = total + comp
    return FloatValue(value, err + 4 * _EPS * abs_sum)


_CUM_TABLE_LIMIT = 64


@lru_cache(maxsize=512)
def _weight_prefix_sums(rho: Fraction, n: int) -> tuple[Fraction, ...]:
    """cum[i] = sum of rho**(-j) for j < i; cached for small populations."""
    r = 1 / rho
    cum = [Fraction(0)]
    weight = Fraction(1)
    for _ in range(n):
        cum.append(cum[-1] + weight)
        weight *= r
    return tuple(cum)


def _rdu_exact(u: Profile, p: Rdu) -> Fraction:
    total = Fraction(0)
    start = 0
    n = len(u)
    if p.rho != 1 and n <= _CUM_TABLE_LIMIT:
        cum = _weight_prefix_sums(p.rho, n)
        for value, count in u.sorted_blocks():
            total += p.g.exact(value) * (cum[start + count] - cum[start])
            start += count
        return total
    r = 1 / p.rho
    for value, count in u.sorted_blocks():
        gv = p.g.exact(value)
        if p.rho == 1:
            total += gv * count
        else:
            total += gv * r**start * (1 - r**count) / (1 - r)
        start += count
    return total


def rdu_value(u: Profile, p: Rdu) -> FloatValue:
    """Sum over ascending ranks i (0-based) of rho**(-i) * g(level).

    Compensated blockwise summation; the returned bound is an
    a-posteriori absolute error estimate.
    """
    return _rdu_float(u, p)


def rdu_value_exact(u: Profile, p: Rdu) -> Fraction:
    """Exact rational RDU value; requires an exact transform."""
    return _rdu_exact(u, p)


def rdu_compare(
    u: Profile, v: Profile, p: Rdu, tolerance: Fraction = DEFAULT_TOLERANCE
) -> CompareResult:
    """Compare by RDU value; sizes may differ (the sum is well defined).

    Float differences inside the combined error bound (or the relative
    tolerance) are retried exactly when the transform allows it and the
    populations are moderate; otherwise the result is flagged as
    numerically tied and reported as equivalent.
    """
    exact_capable = p.g.is_exact
    small = len(u) + len(v) <= RDU_EXACT_LIMIT
    if exact_capable and small:
        diff = _rdu_exact(u, p) - _rdu_exact(v, p)
        return CompareResult(_sign_verdict(diff), margin=float(diff))
    a, b = _rdu_float(u, p), _rdu_float(v, p)
    diff = a.value - b.value
    threshold = a.bound + b.bound + float(tolerance) * max(abs(a.value), abs(b.value))
    if abs(diff) > threshold:
        return CompareResult(_sign_verdict(diff), margin=diff)
    if exact_capable:
        exact_diff = _rdu_exact(u, p) - _rdu_exact(v, p)
        return CompareResult(_sign_verdict(exact_diff), margin=float(exact_diff))
    return CompareResult(
        Verdict.EQUIVALENT,
        margin=diff,
        numerically_tied=True,
        note="difference within combined error bound",
    )


def _sign_verdict(diff) -> Verdict:
    if diff > 0:
        return Verdict.STRICTLY_BETTER
    if diff < 0:
        return Verdict.STRICTLY_WORSE
    return Verdict.EQUIVALENT


# ---------------------------------------------------------------------------
# sufficientarian-average rule and variants


def _shortfall(u: Profile, theta: Fraction) -> Fraction:
    """Sum of (level - theta) over entries strictly below theta (<= 0)."""
    return sum(((v - theta) * c for v, c in u.blocks if v < theta), Fraction(0))


def suffavg_value(u: Profile, p: SuffAvg) -> Fraction:
    """lambda_n * shortfall + (1 - lambda_n) * mean, exact."""
    lam = p.lambda_for(len(u))
    return lam * _shortfall(u, p.theta_p) + (1 - lam) * u.mean()


def gn_eval(x, n: int, p: SuffAvg) -> Fraction:
    """Per-person value whose sum over a profile equals suffavg_value."""
    x = as_level(x)
    lam = p.lambda_for(n)
    base = (1 - lam) * x / n
    if x < p.theta_p:
        return lam * (x - p.theta_p) + base
    return base


def multithreshold_value(u: Profile, p: MultiThreshold) -> Fraction:
    n = len(u)
    weights = p.weights_for(n)
    total = Fraction(0)
    for theta, w in zip(p.thetas, weights):
        total += w * _shortfall(u, theta)
    return total + weights[-1] * u.mean()


def rankweighted_value(u: Profile, p: RankWeighted) -> Fraction:
    n = len(u)
    lam = p.lambda_for(n)
    weights = p.weights_for(n)
    ranked = rank(u)
    weighted = Fraction(0)
    position = 0
    for value, count in ranked.blocks:
        weighted += value * sum(weights[position : position + count])
        position += count
    return lam * _shortfall(u, p.theta_p) + (1 - lam) * weighted


def boundedg_value(u: Profile, p: BoundedG) -> Valuation:
    """Shortfall term exact; transformed average exact only when g is."""
    n = len(u)
    lam = p.lambda_for(n)
    first = lam * _shortfall(u, p.theta_p)
    if p.g.is_exact:
        avg = sum((p.g.exact(v) * c for v, c in u.blocks), Fraction(0)) / n
        return ExactValue(first + (1 - lam) * avg)
    total = err = 0.0
    for v, c in u.blocks:
        term = p.g.value(v) * c
        total += term
        err += 8 * _EPS * abs(term)
    second = float(1 - lam) * total / n
    return FloatValue(float(first) + second, err / n + 8 * _EPS * (abs(second) + abs(float(first))))


def concavepoor_value(u: Profile, p: ConcavePoor) -> Valuation:
    """Concave transform of the shortfall entries, plain average second term."""
    n = len(u)
    lam = p.lambda_for(n)
    mean_term = (1 - lam) * u.mean()
    if p.g.is_exact:
        g_theta = p.g.exact(p.theta_p)
        short = sum(
            ((p.g.exact(v) - g_theta) * c for v, c in u.blocks if v < p.theta_p),
            Fraction(0),
        )
        return ExactValue(lam * short + mean_term)
    g_theta = p.g.value(p.theta_p)
    total = err = 0.0
    for v, c in u.blocks:
        if v < p.theta_p:
            term = (p.g.value(v) - g_theta) * c
            total += term
            err += 8 * _EPS * (abs(term) + abs(g_theta) * c)
    first = float(lam) * total
    return FloatValue(first + float(mean_term), float(lam) * err + 8 * _EPS * abs(first))


# ---------------------------------------------------------------------------
# uniform dispatch


def evaluate(spec: OrderingSpec, u: Profile) -> Valuation:
    """Value of a profile under a value-based ordering."""
    if isinstance(spec, Leximin):
        raise ConfigError("leximin is not value-based")
    if isinstance(spec, Rdu):
        return rdu_value(u, spec)
    if isinstance(spec, SuffAvg):
        return ExactValue(suffavg_value(u, spec))
    if isinstance(spec, MultiThreshold):
        return ExactValue(multithreshold_value(u, spec))
    if isinstance(spec, RankWeighted):
        return ExactValue(rankweighted_value(u, spec))
    if isinstance(spec, BoundedG):
        return boundedg_value(u, spec)
    if isinstance(spec, ConcavePoor):
        return concavepoor_value(u, spec)
    raise ConfigError(f"unknown ordering {spec!r}")


def _compare_valuations(
    a: Valuation, b: Valuation, tolerance: Fraction
) -> CompareResult:
    if isinstance(a, ExactValue) and isinstance(b, ExactValue):
        diff = a.value - b.value
        return CompareResult(_sign_verdict(diff), margin=float(diff))
    af, bf = float(a), float(b)
    bound = (a.bound if isinstance(a, FloatValue) else 0.0) + (
        b.bound if isinstance(b, FloatValue) else 0.0
    )
    diff = af - bf
    threshold = bound + float(tolerance) * max(abs(af), abs(bf))
    if abs(diff) > threshold:
        return CompareResult(_sign_verdict(diff), margin=diff)
    return CompareResult(
        Verdict.EQUIVALENT,
        margin=diff,
        numerically_tied=True,
        note="difference within combined error bound",
    )


def swo_compare(
    spec: OrderingSpec,
    u: Profile,
    v: Profile,
    *,
    cross_size: bool = False,
    tolerance: Fraction = DEFAULT_TOLERANCE,
) -> CompareResult:
    """Uniform comparison dispatch.

    Population-size-dependent value rules refuse cross-size comparisons
    unless the ``cross_size`` opt-in is set; RDU compares any sizes
    directly; leximin never compares across sizes.
    """
    if isinstance(spec, Leximin):
        return leximin_compare(u, v)
    if isinstance(spec, Rdu):
        return rdu_compare(u, v, spec, tolerance)
    if len(u) != len(v) and not cross_size:
        return CompareResult(
            Verdict.INCOMPARABLE,
            note=(
                "value function is population-size dependent; "
                "pass cross_size=True to compare raw values"
            ),
        )
    return _compare_valuations(evaluate(spec, u), evaluate(spec, v), tolerance)


# ---------------------------------------------------------------------------
# configuration documents


def _schedule_to_config(schedule: LambdaSchedule, doc: dict) -> None:
    if isinstance(schedule, ConstantLambda):
        doc["lambda"] = format_level(schedule.value)
    elif isinstance(schedule, TableLambda):
        doc["lambda_table"] = {str(n): format_level(v) for n, v in schedule.table}
    elif isinstance(schedule, MidpointLambda):
        doc["lambda_midpoint"] = {
            "alpha": format_level(schedule.alpha),
            "beta": format_level(schedule.beta),
            "gamma": format_level(schedule.gamma),
            "delta": format_level(schedule.delta),
            "ratio": format_level(schedule.ratio),
        }
    else:
        raise ConfigError(f"unknown schedule {schedule!r}")


def _schedule_from_config(doc: Mapping) -> LambdaSchedule:
    given = [k for k in ("lambda", "lambda_table", "lambda_midpoint") if k in doc]
    if len(given) != 1:
        raise ConfigError("give exactly one of lambda / lambda_table / lambda_midpoint")
    key = given[0]
    if key == "lambda":
        return ConstantLambda(as_level(doc["lambda"]))
    if key == "lambda_table":
        return TableLambda.from_mapping(doc["lambda_table"])
    m = doc["lambda_midpoint"]
    return MidpointLambda(
        as_level(m["alpha"]),
        as_level(m["beta"]),
        as_level(m["gamma"]),
        as_level(m["delta"]),
        as_level(m["ratio"]),
    )


def ordering_to_config(spec: OrderingSpec) -> dict:
    doc: dict = {"ordering": spec.tag}
    if isinstance(spec, Rdu):
        doc["rho"] = format_level(spec.rho)
        doc["g"] = g_to_config(spec.g)
    elif isinstance(spec, SuffAvg):
        doc["theta_p"] = format_level(spec.theta_p)
        _schedule_to_config(spec.schedule, doc)
    elif isinstance(spec, MultiThreshold):
        doc["thetas"] = [format_level(t) for t in spec.thetas]
        if spec.weights is not None:
            doc["weights"] = [format_level(w) for w in spec.weights]
        else:
            doc["weights_table"] = {
                str(n): [format_level(x) for x in w] for n, w in spec.weights_table
            }
    elif isinstance(spec, RankWeighted):
        doc["theta_p"] = format_level(spec.theta_p)
        _schedule_to_config(spec.schedule, doc)
        doc["weights_table"] = {
            str(n): [format_level(x) for x in w] for n, w in spec.weights_table
        }
    elif isinstance(spec, (BoundedG, ConcavePoor)):
        doc["theta_p"] = format_level(spec.theta_p)
        _schedule_to_config(spec.schedule, doc)
        doc["g"] = g_to_config(spec.g)
    elif not isinstance(spec, Leximin):
        raise ConfigError(f"unknown ordering {spec!r}")
    return doc


def ordering_from_config(doc: Mapping) -> OrderingSpec:
    if not isinstance(doc, Mapping) or "ordering" not in doc:
        raise ConfigError("ordering config must be a mapping with an 'ordering' tag")
    tag = doc["ordering"]
    try:
        if tag == "leximin":
            return Leximin()
        if tag == "rdu":
            return Rdu(as_level(doc["rho"]), g_from_config(doc.get("g", "identity")))
        if tag == "suffavg":
            return SuffAvg(as_level(doc["theta_p"]), _schedule_from_config(doc))
        if tag == "multithreshold":
            if "weights" in doc:
                return MultiThreshold(
                    tuple(as_level(t) for t in doc["thetas"]),
                    weights=tuple(as_level(w) for w in doc["weights"]),
                )
            return MultiThreshold(
                tuple(as_level(t) for t in doc["thetas"]),
                weights_table=tuple(
                    (int(n), tuple(as_level(x) for x in w))
                    for n, w in doc["weights_table"].items()
                ),
            )
        if tag == "rankweighted":
            return RankWeighted(
                as_level(doc["theta_p"]),
                _schedule_from_config(doc),
                tuple(
                    (int(n), tuple(as_level(x) for x in w))
                    for n, w in doc["weights_table"].items()
                ),
            )
        if tag == "boundedg":
            return BoundedG(
                as_level(doc["theta_p"]),
                _schedule_from_config(doc),
                g_from_config(doc["g"]),
            )
        if tag == "concavepoor":
            return ConcavePoor(
                as_level(doc["theta_p"]),
                _schedule_from_config(doc),
                g_from_config(doc["g"]),
            )
    except KeyError as exc:
        raise ConfigError(f"missing ordering parameter {exc}") from exc
    raise ConfigError(f"unknown ordering tag {tag!r}")
