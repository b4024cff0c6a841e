"""Constructive impossibility and characterization chains, plus the
rank-discounting threshold reports.

``build_prop1_chain`` .. ``build_prop4_chain`` replay four constructive
arguments as validated certificates:

1. weak Pareto + quantitative aggregation + minimal non-aggregation are
   jointly contradictory (no replication needed);
2. weak Pareto + Pigou-Dalton + replication invariance + ratio
   aggregation + minimal non-aggregation are jointly contradictory;
3. weak Pareto + replication invariance + ratio aggregation + minimal
   non-aggregation are jointly contradictory whenever some h, n satisfy
   n > h * ceil(lam * n) and h * delta > alpha;
4. leximin dominance: for same-size profiles that leximin ranks
   strictly, a chain of strong non-aggregation, strong Pareto,
   anonymity and a replication descent certifies the strict ranking.

All chain parameters (counts h, l, k and level placements) are chosen
as the smallest exact rationals satisfying the required inequalities,
with a margin of one unit where strictness is needed, so the builders
are deterministic and every step validates exactly.

``prop5_nonagg_condition`` evaluates the closed-form condition under
which rank-discounted generalized utilitarianism with discount rho > 1
satisfies minimal non-aggregation; ``prop5_ratio_failure`` scans for
the population size at which it must violate ratio aggregation and
returns a concrete violated instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .axioms import (
    Anonymity,
    CheckResult,
    MinimalNonAggregation,
    PigouDalton,
    QuantitativeAggregation,
    RatioAggregation,
    StrongNonAggregation,
    StrongPareto,
    WeakPareto,
    check_axiom,
)
from .chains import AxiomStep, ChainKind, DerivationChain, DescentStep, LiftStep
from .errors import InfeasibleParameters
from .gfunctions import GFunction
from .orderings import Rdu, leximin_compare
from .profiles import (
    IndexSet,
    Profile,
    Verdict,
    as_level,
    ceil_ratio,
    rank,
    replicate,
    sorting_permutation,
)


def _guard(condition: bool, message: str) -> None:
    if not condition:
        raise InfeasibleParameters(message)


def _count_exceeding(threshold: Fraction, unit: Fraction) -> int:
    """Smallest positive integer c with c * unit > threshold."""
    return int(threshold // unit) + 1


def _common_guards(theta_p, theta_r, alpha, beta, gamma, delta):
    _guard(theta_r > theta_p > 0, "need theta_r > theta_p > 0")
    _guard(alpha > beta > 0, "need alpha > beta > 0")
    _guard(gamma > delta > 0, "need gamma > delta > 0")


# ---------------------------------------------------------------------------
# chain 1: quantitative aggregation vs minimal non-aggregation


def build_prop1_chain(theta_p, theta_r, alpha, beta, gamma, delta, m: int) -> DerivationChain:
    """Contradiction chain with n = h*l*m + l and no replication steps.

    l recipients below the poverty line each gain alpha (minimal
    non-aggregation, the h*l*m rich paying beta each time), then each
    recipient is pushed back down in h quantitative-aggregation steps
    paid for by fresh blocks of m rich; weak Pareto then ranks the start
    strictly above the end.
    """
    theta_p, theta_r = as_level(theta_p), as_level(theta_r)
    alpha, beta = as_level(alpha), as_level(beta)
    gamma, delta = as_level(gamma), as_level(delta)
    _common_guards(theta_p, theta_r, alpha, beta, gamma, delta)
    _guard(isinstance(m, int) and m > 2, "need integer m > 2")

    h = _count_exceeding(alpha, delta)  # h * delta > alpha
    l = _count_exceeding(gamma, beta)  # l * beta > gamma
    n_rich = h * l * m
    u_low = theta_p - alpha
    u_high = theta_r + l * beta + 1  # keeps the rich above theta_r throughout

    rich_set = IndexSet.from_ranges([(l, l + n_rich)])

    def poor_then_rich(poor_blocks, rich_blocks) -> Profile:
        return Profile.from_blocks([b for b in poor_blocks + rich_blocks if b[1] > 0])

    steps = []
    current = poor_then_rich([(u_low, l)], [(u_high, n_rich)])
    start = current
    for t in range(1, l + 1):
        nxt = poor_then_rich(
            [(u_low + alpha, t), (u_low, l - t)],
            [(u_high - t * beta, n_rich)],
        )
        steps.append(
            AxiomStep(
                current,
                nxt,
                MinimalNonAggregation(
                    current, nxt, t - 1, rich_set, theta_p, theta_r, alpha, beta
                ),
            )
        )
        current = nxt

    rich_low = u_high - l * beta
    rich_boosted = rich_low + gamma
    for r in range(1, l + 1):
        for s in range(1, h + 1):
            gained = (r - 1) * h * m + s * m
            sinking = u_low + alpha - s * delta
            nxt = poor_then_rich(
                [
                    (u_low + alpha - h * delta, r - 1),
                    (sinking, 1),
                    (u_low + alpha, l - r),
                ],
                [(rich_boosted, gained), (rich_low, n_rich - gained)],
            )
            block_start = l + gained - m
            steps.append(
                AxiomStep(
                    current,
                    nxt,
                    QuantitativeAggregation(
                        current,
                        nxt,
                        r - 1,
                        IndexSet.from_ranges([(block_start, block_start + m)]),
                        m,
                        gamma,
                        delta,
                    ),
                )
            )
            current = nxt

    terminal = WeakPareto(start, current)
    return DerivationChain(tuple(steps), terminal, ChainKind.CONTRADICTION)


# ---------------------------------------------------------------------------
# chain 2: ratio aggregation + replication invariance + transfers


def _smallest_ratio_population(lam: Fraction) -> int:
    n = 3
    while n - 1 < ceil_ratio(lam, n):
        n += 1
        if n > 10_000:
            raise InfeasibleParameters("no workable population size below 10000")
    return n


def build_prop2_chain(
    theta_p, theta_r, alpha, beta, gamma, delta, lam, n: int | None = None
) -> DerivationChain:
    """Contradiction chain in a k-replicated population.

    One ratio-aggregation step is lifted through k-replication, after
    which l rounds of minimal non-aggregation followed by Pigou-Dalton
    smoothing (k - 1 transfers of alpha / k) push every poor copy up by
    l * alpha / k < delta while the rich pay l * beta > gamma; weak
    Pareto contradicts the accumulated weak ranking.
    """
    theta_p, theta_r = as_level(theta_p), as_level(theta_r)
    alpha, beta = as_level(alpha), as_level(beta)
    gamma, delta = as_level(gamma), as_level(delta)
    lam = as_level(lam)
    _common_guards(theta_p, theta_r, alpha, beta, gamma, delta)
    _guard(0 < lam < 1, "need lam strictly between 0 and 1")
    if n is None:
        n = _smallest_ratio_population(lam)
    _guard(n >= 3, "need population size n > 2")
    _guard(n - 1 >= ceil_ratio(lam, n), "need n - 1 >= ceil(lam * n)")

    l = _count_exceeding(gamma, beta)  # l * beta > gamma
    k = _count_exceeding(l * alpha, delta)  # l * alpha / k < delta
    u_low = theta_p - alpha
    u_high = theta_r + l * beta + 1

    u_base = Profile.from_blocks([(u_low, 1), (u_high, n - 1)])
    u_boost = Profile.from_blocks([(u_low - delta, 1), (u_high + gamma, n - 1)])
    base_instance = RatioAggregation(
        u_base, u_boost, 0, IndexSet.from_ranges([(1, n)]), lam, gamma, delta
    )

    big_n = k * n
    poor_positions = [j * n for j in range(k)]
    rich_set = IndexSet.from_ranges([(j * n + 1, (j + 1) * n) for j in range(k)])
    eps = alpha / k

    def assemble(poor_levels: list[Fraction], rich_level: Fraction) -> Profile:
        levels = [rich_level] * big_n
        for j, level in enumerate(poor_levels):
            levels[poor_positions[j]] = level
        return Profile.from_levels(levels)

    start = replicate(u_base, k)
    lifted = replicate(u_boost, k)
    steps: list = [LiftStep(start, lifted, k, base_instance)]
    current = lifted

    poor = [u_low - delta] * k
    rich = u_high + gamma
    for t in range(1, l + 1):
        rich_next = rich - beta
        poor_up = list(poor)
        poor_up[0] = poor[0] + alpha
        nxt = assemble(poor_up, rich_next)
        steps.append(
            AxiomStep(
                current,
                nxt,
                MinimalNonAggregation(
                    current, nxt, 0, rich_set, theta_p, theta_r, alpha, beta
                ),
            )
        )
        current = nxt
        rich = rich_next
        poor = poor_up
        for j in range(1, k):
            donor_level = poor[0] - eps
            recipient_level = poor[j] + eps
            poor_next = list(poor)
            poor_next[0] = donor_level
            poor_next[j] = recipient_level
            nxt = assemble(poor_next, rich)
            steps.append(
                AxiomStep(
                    current,
                    nxt,
                    PigouDalton(current, 0, poor_positions[j], eps),
                )
            )
            current = nxt
            poor = poor_next

    terminal = WeakPareto(start, current)
    return DerivationChain(tuple(steps), terminal, ChainKind.CONTRADICTION)


# ---------------------------------------------------------------------------
# chain 3: ratio aggregation + replication invariance, no transfers


def build_prop3_chain(
    theta_p, theta_r, alpha, beta, gamma, delta, lam, h: int, n: int
) -> DerivationChain:
    """Contradiction chain under the hypothesis n > h * ceil(lam * n) and
    h * delta > alpha.

    k minimal non-aggregation steps run in the k-replicated population,
    a replication descent brings the ranking back to size n, and h ratio
    aggregation steps (donor sets of exactly ceil(lam * n)) take back the
    poor person's gain; weak Pareto closes the contradiction.
    """
    theta_p, theta_r = as_level(theta_p), as_level(theta_r)
    alpha, beta = as_level(alpha), as_level(beta)
    gamma, delta = as_level(gamma), as_level(delta)
    lam = as_level(lam)
    _common_guards(theta_p, theta_r, alpha, beta, gamma, delta)
    _guard(0 < lam < 1, "need lam strictly between 0 and 1")
    _guard(isinstance(h, int) and h >= 1, "need integer h >= 1")
    q = ceil_ratio(lam, n)
    _guard(n > h * q, f"hypothesis n > h * ceil(lam * n) fails ({n} <= {h * q})")
    _guard(h * delta > alpha, "hypothesis h * delta > alpha fails")

    k = _count_exceeding(gamma, beta)  # k * beta > gamma
    u_low = theta_p - alpha
    u_high = theta_r + k * beta + 1

    u_base = Profile.from_blocks([(u_low, 1), (u_high, n - 1)])
    start = replicate(u_base, k)
    rich_set = IndexSet.from_ranges([(j * n + 1, (j + 1) * n) for j in range(k)])

    def replicated(t: int) -> Profile:
        """t poor copies already lifted, all rich at u_high - t * beta."""
        blocks = []
        for j in range(k):
            blocks.append((u_low + alpha if j < t else u_low, 1))
            blocks.append((u_high - t * beta, n - 1))
        return Profile.from_blocks(blocks)

    steps: list = []
    current = start
    for t in range(1, k + 1):
        nxt = replicated(t)
        steps.append(
            AxiomStep(
                current,
                nxt,
                MinimalNonAggregation(
                    current, nxt, (t - 1) * n, rich_set, theta_p, theta_r, alpha, beta
                ),
            )
        )
        current = nxt

    w_base = Profile.from_blocks([(u_low + alpha, 1), (u_high - k * beta, n - 1)])
    steps.append(DescentStep(u_base, w_base, k))
    current = w_base

    rich_low = u_high - k * beta
    for s in range(1, h + 1):
        nxt = Profile.from_blocks(
            [
                (u_low + alpha - s * delta, 1),
                (rich_low + gamma, s * q),
                (rich_low, n - 1 - s * q),
            ]
        )
        donor_start = 1 + (s - 1) * q
        steps.append(
            AxiomStep(
                current,
                nxt,
                RatioAggregation(
                    current,
                    nxt,
                    0,
                    IndexSet.from_ranges([(donor_start, donor_start + q)]),
                    lam,
                    gamma,
                    delta,
                ),
            )
        )
        current = nxt

    terminal = WeakPareto(u_base, current)
    return DerivationChain(tuple(steps), terminal, ChainKind.CONTRADICTION)


# ---------------------------------------------------------------------------
# chain 4: leximin dominance


def _unsorting_permutation(x: Profile) -> tuple[int, ...]:
    """pi with permute(sorted(x), pi) == x: the stable ascending argsort."""
    levels = x.levels()
    return tuple(sorted(range(len(levels)), key=lambda i: (levels[i], i)))


def build_prop4_chain(u: Profile, v: Profile, beta_of_alpha=None) -> DerivationChain:
    """Dominance chain certifying u > v for leximin-ranked same-size pairs.

    ``beta_of_alpha`` maps a gain alpha to the acceptable exact sacrifice
    beta of strong non-aggregation (default alpha / 2); the chain uses a
    per-step loss beta' strictly inside (0, beta).
    """
    if beta_of_alpha is None:
        beta_of_alpha = lambda a: a / 2
    res = leximin_compare(u, v)
    _guard(
        res.verdict is Verdict.STRICTLY_BETTER,
        f"leximin must rank u strictly above v (got {res.verdict.value})",
    )
    n = len(u)
    ru = list(rank(u).levels())
    rv = list(rank(v).levels())
    h = next(idx for idx in range(n) if ru[idx] != rv[idx])

    u_sorted = Profile.from_levels(ru)
    v_sorted = Profile.from_levels(rv)

    if ru[h] >= rv[-1]:
        # pure strong-Pareto certificate on the sorted rearrangements
        steps = (
            AxiomStep(v, v_sorted, Anonymity(v, sorting_permutation(v))),
            AxiomStep(v_sorted, u_sorted, StrongPareto(u_sorted, v_sorted)),
            AxiomStep(u_sorted, u, Anonymity(u_sorted, _unsorting_permutation(u))),
        )
        return DerivationChain(steps, None, ChainKind.DOMINANCE)

    gap = ru[h] - rv[h]
    v_star = rv[-1] + 1
    u_star = rv[h] + gap / 4
    alpha = gap / 4
    beta = as_level(beta_of_alpha(alpha))
    _guard(0 < beta < alpha, "beta_of_alpha must return 0 < beta < alpha")
    target = rv[h] + 3 * gap / 4  # the level v_star - k * beta' must hit
    k = math.ceil((v_star - target) / beta) + 1
    beta_prime = (v_star - target) / k

    prefix = [(ru[j], k) for j in range(h)]
    n_rich = k * (n - h - 1)

    def w_profile(t: int) -> Profile:
        return Profile.from_blocks(
            prefix
            + [
                (u_star + alpha, t),
                (u_star, k - t),
                (v_star - t * beta_prime, n_rich),
            ]
        )

    big_u = replicate(u, k)
    big_v = replicate(v, k)
    grouped_u = Profile.from_blocks([(level, k) for level in ru])
    grouped_v = Profile.from_blocks([(level, k) for level in rv])
    rich_set = IndexSet.from_ranges([((h + 1) * k, n * k)])

    steps = [
        AxiomStep(big_v, grouped_v, Anonymity(big_v, sorting_permutation(big_v))),
        AxiomStep(grouped_v, w_profile(0), StrongPareto(w_profile(0), grouped_v)),
    ]
    for t in range(1, k + 1):
        frm, to = w_profile(t - 1), w_profile(t)
        steps.append(
            AxiomStep(
                frm,
                to,
                StrongNonAggregation(frm, to, h * k + t - 1, rich_set, alpha, beta_prime),
            )
        )
    steps.append(AxiomStep(w_profile(k), grouped_u, StrongPareto(grouped_u, w_profile(k))))
    steps.append(AxiomStep(grouped_u, big_u, Anonymity(grouped_u, _unsorting_permutation(big_u))))
    steps.append(DescentStep(v, u, k))
    return DerivationChain(tuple(steps), None, ChainKind.DOMINANCE)


# ---------------------------------------------------------------------------
# rank-discounting threshold condition


@dataclass(frozen=True)
class Prop5Report:
    """Two sides of the non-aggregation condition for discount rho > 1.

    holds is True only when lhs >= rhs beyond the combined error bound;
    ``certain`` is False when a floating evaluation could not separate
    the sides. Exact transforms yield exact zero-bound reports.
    """

    lhs: float
    rhs: float
    lhs_bound: float
    rhs_bound: float
    holds: bool
    certain: bool
    exact: bool


def prop5_nonagg_condition(
    g: GFunction, rho, theta_p, theta_r, alpha, beta
) -> Prop5Report:
    """Evaluate g(theta_p) - g(theta_p - alpha) >= rho/(rho-1) * (g(theta_r + beta) - g(theta_r))."""
    rho = as_level(rho)
    theta_p, theta_r = as_level(theta_p), as_level(theta_r)
    alpha, beta = as_level(alpha), as_level(beta)
    _guard(rho > 1, "need rho > 1")
    _guard(theta_r > theta_p, "need theta_r > theta_p")
    _guard(alpha > beta > 0, "need alpha > beta > 0")
    for point in (theta_p, theta_p - alpha, theta_r, theta_r + beta):
        g.check_domain(point)
    if g.is_exact:
        lhs = g.exact(theta_p) - g.exact(theta_p - alpha)
        rhs = rho / (rho - 1) * (g.exact(theta_r + beta) - g.exact(theta_r))
        return Prop5Report(float(lhs), float(rhs), 0.0, 0.0, lhs >= rhs, True, True)
    eps = 2.0**-52
    lhs = g.value(theta_p) - g.value(theta_p - alpha)
    rhs = float(rho) / float(rho - 1) * (g.value(theta_r + beta) - g.value(theta_r))
    lhs_bound = 4 * eps * (abs(g.value(theta_p)) + abs(g.value(theta_p - alpha)))
    rhs_bound = 8 * eps * abs(rhs) + 4 * eps * float(rho / (rho - 1)) * (
        abs(g.value(theta_r + beta)) + abs(g.value(theta_r))
    )
    separated = abs(lhs - rhs) > lhs_bound + rhs_bound
    return Prop5Report(lhs, rhs, lhs_bound, rhs_bound, lhs >= rhs and separated, separated, False)


# ---------------------------------------------------------------------------
# ratio-aggregation failure scan


def ratio_coefficient(rho: Fraction, lam: Fraction, n: int) -> Fraction:
    """Geometric coefficient (rho^(-n+q-1) - rho^(-n-1)) / (rho - 1), q = ceil(lam n).

    This bound indexes the donor weights as rho^(-i); the ordering's own
    weights run as rho^(-(i-1)), making its donor sum exactly rho**2
    times larger. Both vanish as n grows, which is what the failure scan
    relies on; the reports carry both population sizes.
    """
    rho, lam = as_level(rho), as_level(lam)
    q = ceil_ratio(lam, n)
    r = 1 / rho
    return (r ** (n - q + 1) - r ** (n + 1)) / (rho - 1)


def scan_ratio_coefficients(rho, lam, n_from: int, n_to: int, step: int = 1):
    """Yield (n, coefficient) over a range, exact and incrementally."""
    rho, lam = as_level(rho), as_level(lam)
    _guard(rho > 1, "need rho > 1")
    r = 1 / rho
    for n in range(n_from, n_to + 1, step):
        yield n, ratio_coefficient(rho, lam, n)


@dataclass(frozen=True)
class RatioFailureReport:
    n_star: int
    witness_n: int
    witness: RatioAggregation
    check: CheckResult
    coefficient_note: str


def _ratio_witness(lam, gamma, delta, u1, n: int) -> RatioAggregation:
    q = ceil_ratio(lam, n)
    u = Profile.constant(u1, n)
    v = Profile.from_blocks([(u1 - delta, 1), (u1, n - 1 - q), (u1 + gamma, q)])
    return RatioAggregation(u, v, 0, IndexSet.from_ranges([(n - q, n)]), lam, gamma, delta)


def prop5_ratio_failure(
    g: GFunction, rho, lam, gamma, delta, u1, n_max: int = 100_000
) -> RatioFailureReport:
    """Smallest n where the displayed coefficient inequality fails, plus a
    concrete ratio-aggregation instance that the RDU ordering violates.

    The witness population may exceed n_star slightly because the actual
    rank weights are rho**2 times the displayed coefficient.
    """
    rho, lam = as_level(rho), as_level(lam)
    gamma, delta, u1 = as_level(gamma), as_level(delta), as_level(u1)
    _guard(rho > 1, "need rho > 1")
    _guard(0 < lam < 1, "need lam strictly between 0 and 1")
    _guard(gamma > delta > 0, "need gamma > delta > 0")
    g.check_domain(u1 - delta)
    g.check_domain(u1 + gamma)

    exact = g.is_exact
    if exact:
        lhs = g.exact(u1) - g.exact(u1 - delta)
        gain = g.exact(u1 + gamma) - g.exact(u1)
    else:
        lhs = Fraction(g.value(u1) - g.value(float(u1 - delta)))
        gain = Fraction(g.value(float(u1 + gamma)) - g.value(u1))

    r = 1 / rho
    n_star = None
    # incremental exact powers: A = r^(n+1), IQ = rho^q with q = ceil(lam n)
    n = 2
    A = r ** (n + 1)
    q = ceil_ratio(lam, n)
    IQ = rho**q
    while n <= n_max:
        coefficient = A * (IQ - 1) / (rho - 1)  # (r^(n-q+1) - r^(n+1)) / (rho-1)
        if lhs > coefficient * gain:
            n_star = n
            break
        n += 1
        A *= r
        new_q = ceil_ratio(lam, n)
        if new_q != q:
            IQ *= rho ** (new_q - q)
            q = new_q
    if n_star is None:
        raise InfeasibleParameters(f"no failure found up to n_max={n_max}")

    spec = Rdu(rho, g)
    witness_n = n_star
    while witness_n <= n_max:
        candidate = _ratio_witness(lam, gamma, delta, u1, witness_n)
        result = check_axiom(spec, candidate)
        if result.violated:
            return RatioFailureReport(
                n_star,
                witness_n,
                candidate,
                result,
                "the scan's bounding coefficient uses weights rho^(-i); the "
                "ordering's weights rho^(-(i-1)) are rho**2 times larger, so "
                "the witness population can exceed n_star",
            )
        witness_n += 1
    raise InfeasibleParameters(f"no violated instance found up to n_max={n_max}")
