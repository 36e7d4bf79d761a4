"""Sampled continuous-time backend: sampling, standard parts, window evaluation."""

import math

import pytest

from kahnets import (CtFn, DeltaSchedule, ItStream, NonProductive, OutOfDomain,
                     SamplingPeriod, compose, default_schedule,
                     delta_independence, denote_it, derivative_at, duplication,
                     generator, integral, sample, stable_floor, standard_part,
                     standardize, trace)
from kahnets.stdnets import STD_SIG, build, it_interpretation

SIN = CtFn(math.sin, "continuous", "sin")
SCHED = default_schedule()  # 1e-2 halved four times, tol 1e-6


class TestSamplingPeriod:
    def test_horizon(self):
        assert SamplingPeriod(0.25, 1.0).horizon == 4
        assert SamplingPeriod(1e-3, 1.0).horizon == 1000

    def test_stable_floor_handles_decimal_grids(self):
        assert stable_floor(0.3 / 0.1) == 3  # naive floor gives 2
        assert stable_floor(2.9) == 2

    def test_invalid_periods(self):
        with pytest.raises(ValueError):
            SamplingPeriod(0.0, 1.0)
        with pytest.raises(ValueError):
            SamplingPeriod(2.0, 1.0)  # no step fits the window

    def test_itstream_respects_horizon(self):
        p = SamplingPeriod(0.5, 1.0)
        with pytest.raises(ValueError):
            ItStream(p, (1.0, 2.0, 3.0))


class TestSampleStandardize:
    def test_sample_constant_zero(self):
        s = sample(CtFn(lambda t: 0.0, "continuous"), SamplingPeriod(0.25, 1.0))
        assert s.values == (0.0, 0.0, 0.0, 0.0)

    def test_sample_identity_ramp(self):
        s = sample(CtFn(lambda t: t, "continuous"), SamplingPeriod(0.25, 1.0))
        assert s.values == (0.0, 0.25, 0.5, 0.75)

    def test_standardize_reads_the_step_cell(self):
        s = sample(CtFn(lambda t: t, "continuous"), SamplingPeriod(0.25, 1.0))
        assert standardize(s, 0.6) == 0.5
        assert standardize(s, 0.0) == 0.0

    def test_standardize_out_of_domain(self):
        s = ItStream(SamplingPeriod(0.25, 1.0), (1.0, 2.0))
        with pytest.raises(OutOfDomain):
            standardize(s, 0.9)
        with pytest.raises(OutOfDomain):
            standardize(s, -0.1)

    def test_retraction_error_bounded_by_modulus(self):
        # sampling then reading back moves the argument by less than one step
        p = SamplingPeriod(1e-3, 1.01)
        cases = [(CtFn(math.sin, "continuous"), 1.0),
                 (CtFn(math.exp, "continuous"), 3.0),
                 (CtFn(lambda t: t * t, "continuous"), 2.0)]
        for f, lipschitz in cases:
            s = sample(f, p)
            for j in range(101):
                x = j / 100
                assert abs(standardize(s, x) - f(x)) <= lipschitz * p.delta

    def test_sample_commutes_with_pointwise_lifting(self):
        p = SamplingPeriod(0.125, 1.0)
        g = lambda v: 3.0 * v - 1.0
        lifted_then_sampled = sample(CtFn(lambda t: g(math.sin(t)), "continuous"), p)
        sampled_then_lifted = tuple(g(v) for v in sample(SIN, p).values)
        assert lifted_then_sampled.values == sampled_then_lifted


class TestStandardPart:
    def test_affine_limit_is_exact(self):
        result = standard_part(lambda d: 3.0 + d, SCHED)
        assert result.converged
        assert abs(result.value - 3.0) <= SCHED.tol

    def test_classic_limit(self):
        result = standard_part(lambda d: math.sin(d) / d, SCHED)
        assert result.converged and abs(result.value - 1.0) <= 1e-6

    def test_unlimited_quantity_detected(self):
        result = standard_part(lambda d: 1.0 / d, SCHED)
        assert not result.converged and result.value is None

    def test_raw_error_model(self):
        result = standard_part(lambda d: 5.0, SCHED, error_model="none")
        assert result.converged and result.value == 5.0 and result.extrapolants == ()

    def test_refining_the_schedule_is_stable(self):
        sched2 = DeltaSchedule(SCHED.deltas + (SCHED.deltas[-1] / 2, SCHED.deltas[-1] / 4),
                               SCHED.tol)
        g = lambda d: math.sin(d) / d
        a = standard_part(g, SCHED)
        b = standard_part(g, sched2)
        assert a.converged and b.converged
        assert abs(a.value - b.value) <= SCHED.tol

    def test_schedule_invariants(self):
        with pytest.raises(ValueError):
            DeltaSchedule((1e-2, 1e-3))
        with pytest.raises(ValueError):
            DeltaSchedule((1e-2, 1e-2, 1e-3))
        with pytest.raises(ValueError):
            DeltaSchedule((1e-2, 1e-3, 1e-4), tol=0.0)


class TestDenoteIt:
    def test_constant_net_fills_the_window(self):
        p = SamplingPeriod(1e-3, 1.0)
        out = denote_it(build("constant"), it_interpretation(1e-3), [], p)
        assert len(out[0]) == 1000
        assert set(out[0].values) == {0.0}

    def test_finite_budget_stops_short(self):
        p = SamplingPeriod(1e-3, 1.0)
        out = denote_it(build("constant"), it_interpretation(1e-3), [], p, max_sweeps=10)
        assert len(out[0]) == 10

    def test_integration_net_is_the_weighted_prefix_sum(self):
        d = 1e-3
        p = SamplingPeriod(d, 1.0)
        src = sample(SIN, p)
        out = denote_it(build("integration"), it_interpretation(d), [src], p)
        values = out[0].values
        assert len(values) == p.horizon
        eps = 2.220446049250313e-16
        for k in (0, 1, 17, 400, 999):
            oracle = d * math.fsum(math.sin(i * d) for i in range(k + 1))
            assert abs(values[k] - oracle) <= (k + 1) * eps * 1.0

    def test_undelayed_loop_is_non_productive(self):
        body = compose(generator(STD_SIG, "plus"), duplication(1))
        loop = trace(body, 1)
        p = SamplingPeriod(1e-2, 0.1)
        with pytest.raises(NonProductive):
            denote_it(loop, it_interpretation(1e-2), [sample(SIN, p)], p)

    def test_period_mismatch_rejected(self):
        from kahnets import ArityMismatch
        p1, p2 = SamplingPeriod(1e-2, 0.1), SamplingPeriod(1e-3, 0.1)
        with pytest.raises(ArityMismatch):
            denote_it(build("integration"), it_interpretation(1e-2),
                      [sample(SIN, p2)], p1)

    def test_monotone_in_inputs(self):
        d = 0.125
        p = SamplingPeriod(d, 1.0)
        full = sample(SIN, p)
        partial = ItStream(p, full.values[:3])
        interp = it_interpretation(d)
        small = denote_it(build("integration"), interp, [partial], p)
        big = denote_it(build("integration"), interp, [full], p)
        assert small[0].values == big[0].values[:len(small[0].values)]


class TestDeltaIndependence:
    def test_integration_of_sin_agrees_across_periods(self):
        sched = DeltaSchedule((1e-2, 5e-3, 2.5e-3, 1.25e-3), tol=1e-2)
        report = delta_independence(build("integration"), [SIN], sched,
                                    [0.5, 1.0], 1.05, it_interpretation)
        assert report.ok
        for row in report.rows:
            assert row.standard.converged
            closed_form = 1.0 - math.cos(row.probe)
            assert abs(row.standard.value - closed_form) <= 1e-2

    def test_constant_net_has_zero_spread(self):
        sched = DeltaSchedule((1e-2, 5e-3, 2.5e-3), tol=1e-9)
        report = delta_independence(build("constant"), [], sched, [0.05], 0.1,
                                    it_interpretation)
        assert report.ok and report.max_spread == 0.0

    def test_kink_makes_the_derivative_spread(self):
        # periods deliberately misaligned with the kink so probes straddle it
        sched = DeltaSchedule((0.03, 0.015, 0.0075, 0.00375), tol=1e-2)
        kink = CtFn(lambda t: abs(t - 0.5), "piecewise", "|t-1/2|")
        report = delta_independence(build("differentiation"), [kink], sched,
                                    [0.5], 1.05, it_interpretation)
        assert not report.ok
        assert report.max_spread > sched.tol


class TestCalculusOracles:
    def test_derivative_of_sin_at_zero(self):
        result = derivative_at(SIN, 0.0, SCHED)
        assert result.converged and abs(result.value - 1.0) <= 1e-6

    def test_symmetric_variant_agrees(self):
        fwd = derivative_at(SIN, 0.4, SCHED)
        sym = derivative_at(SIN, 0.4, SCHED, variant="symmetric")
        assert fwd.converged and sym.converged
        assert abs(fwd.value - math.cos(0.4)) <= 1e-6
        assert abs(sym.value - math.cos(0.4)) <= 1e-6

    def test_integral_of_one_is_exact_on_aligned_grids(self):
        result = integral(CtFn(lambda t: 1.0, "continuous"), 0.0, 1.0, SCHED)
        assert result.converged and result.value == 1.0
        assert all(v == 1.0 for v in result.samples)

    def test_integral_of_sin_over_half_period(self):
        result = integral(SIN, 0.0, math.pi, SCHED)
        assert result.converged and abs(result.value - 2.0) <= 1e-6

    def test_ct_fn_interpolation(self):
        f = CtFn.from_samples([0.0, 1.0, 2.0], [0.0, 2.0, 0.0])
        assert f(0.5) == 1.0 and f(1.5) == 1.0 and f(5.0) == 0.0
        assert f.continuity == "continuous"
