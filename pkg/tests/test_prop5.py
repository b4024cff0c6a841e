from fractions import Fraction

import pytest

from welfareax import (
    CheckStatus,
    Identity,
    InfeasibleParameters,
    Rdu,
    Sqrt,
    check_axiom,
    validate_preconditions,
)
from welfareax.propositions import (
    prop5_nonagg_condition,
    prop5_ratio_failure,
    ratio_coefficient,
    scan_ratio_coefficients,
)


class TestNonAggCondition:
    def test_sqrt_example(self):
        report = prop5_nonagg_condition(Sqrt(), 2, 4, 100, 3, 1)
        assert report.lhs == pytest.approx(1.0)
        assert report.rhs == pytest.approx(0.09975124224178, abs=1e-12)
        assert report.holds and report.certain

    def test_identity_reduces_to_closed_form(self):
        # lhs = alpha, rhs = rho * beta / (rho - 1), decided exactly
        for rho, alpha, beta in [
            (Fraction(2), Fraction(3), Fraction(1)),
            (Fraction(2), Fraction(2), Fraction(1)),
            (Fraction(3, 2), Fraction(7, 2), Fraction(1)),
            (Fraction(5), Fraction(5, 4), Fraction(1)),
        ]:
            report = prop5_nonagg_condition(Identity(), rho, 10, 20, alpha, beta)
            assert report.exact
            assert report.holds == (alpha >= rho * beta / (rho - 1))

    def test_rho_limit_towards_one_makes_rhs_blow_up(self):
        tight = prop5_nonagg_condition(Identity(), Fraction(101, 100), 10, 20, 5, 1)
        assert not tight.holds  # rhs = 101 > alpha = 5

    def test_large_rho_limit_is_bare_difference(self):
        # rho/(rho-1) -> 1: rhs approaches g(theta_r + beta) - g(theta_r)
        report = prop5_nonagg_condition(Identity(), Fraction(10**6), 10, 20, 2, 1)
        assert report.rhs == pytest.approx(1.0, rel=1e-5)

    def test_guards(self):
        with pytest.raises(InfeasibleParameters):
            prop5_nonagg_condition(Identity(), 1, 10, 20, 2, 1)
        with pytest.raises(InfeasibleParameters):
            prop5_nonagg_condition(Identity(), 2, 20, 10, 2, 1)


class TestRatioFailure:
    def test_reference_scan(self):
        report = prop5_ratio_failure(Identity(), Fraction(101, 100), Fraction(1, 2), 2, 1, 10)
        assert report.n_star == 1062
        assert report.witness_n >= report.n_star
        assert report.check.status is CheckStatus.VIOLATED
        assert validate_preconditions(report.witness).ok
        # and the witness really is an exact RDU violation
        spec = Rdu(Fraction(101, 100), Identity())
        assert check_axiom(spec, report.witness).status is CheckStatus.VIOLATED

    def test_larger_rho_fails_sooner(self):
        previous = None
        for rho in (Fraction(102, 100), Fraction(11, 10), Fraction(3, 2)):
            report = prop5_ratio_failure(Identity(), rho, Fraction(1, 2), 2, 1, 10)
            if previous is not None:
                assert report.n_star <= previous
            previous = report.n_star

    def test_sqrt_transform_also_fails(self):
        report = prop5_ratio_failure(Sqrt(), Fraction(3, 2), Fraction(1, 2), 2, 1, 10)
        assert report.check.status is CheckStatus.VIOLATED


class TestCoefficientScan:
    def test_matches_direct_formula(self):
        rho, lam = Fraction(101, 100), Fraction(1, 2)
        scanned = dict(scan_ratio_coefficients(rho, lam, 2, 40))
        for n in (2, 3, 17, 40):
            assert scanned[n] == ratio_coefficient(rho, lam, n)

    def test_rises_to_a_peak_then_decays(self):
        # for weak discounting the donor count ceil(lam * n) grows faster
        # than the weights decay, so the coefficient rises before its
        # geometric tail takes over
        rho, lam = Fraction(101, 100), Fraction(1, 2)
        values = dict(scan_ratio_coefficients(rho, lam, 2, 600, step=2))
        peak = max(values, key=values.get)
        assert 50 < peak < 300
        tail = [values[n] for n in range(peak, 601, 2)]
        assert all(b < a for a, b in zip(tail, tail[1:]))

    def test_parity_wiggle_from_the_ceiling(self):
        # ceil(lam * n) makes C(2m + 1) exceed C(2m) at every parity step
        rho, lam = Fraction(101, 100), Fraction(1, 2)
        assert ratio_coefficient(rho, lam, 11) > ratio_coefficient(rho, lam, 10)
        assert ratio_coefficient(rho, lam, 12) < ratio_coefficient(rho, lam, 11)

    def test_strong_discounting_decreases_from_the_start(self):
        rho, lam = Fraction(2), Fraction(1, 2)
        values = [c for _, c in scan_ratio_coefficients(rho, lam, 2, 80, step=2)]
        assert all(b < a for a, b in zip(values, values[1:]))
