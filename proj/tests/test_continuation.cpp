#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pslip/continuation.hpp"
#include "pslip/mms.hpp"
#include "test_support.hpp"

using namespace pslip;
using namespace pslip::testing;

namespace {

const ConstantsEstimate kConsts{1.5, 0.4, 1.0, 4.0, 1.9, 0, "frozen for tests"};

SlipProblem make_problem(int n, double p, const VectorField& f) {
    SlipProblem prob;
    prob.dom = Domain(1.0, 0.7, n, n);
    prob.params = StressParams{p, 0.0};
    prob.q = 4.0;
    prob.f = f;
    return prob;
}

}  // namespace

TEST_CASE("schedule validation and effective mu0") {
    ContinuationSchedule s;
    s.mu0 = -1.0;
    CHECK_THROWS_AS(s.validate(), std::domain_error);
    s.mu0 = 1.0;
    s.factor = 1.5;
    CHECK_THROWS_AS(s.validate(), std::domain_error);
    s.factor = 0.25;
    s.steps = 0;
    CHECK_THROWS_AS(s.validate(), std::domain_error);
    s.steps = 8;
    CHECK_NOTHROW(s.validate());

    s.mu0_mode = ContinuationSchedule::Mu0Mode::data_scaled;
    const double p = 1.8;
    const double base = s.mu0_effective(p, 2.0);
    const double scaled = s.mu0_effective(p, 2.0 * 100.0);
    CHECK(scaled == doctest::Approx(base * std::pow(100.0, 2.0 / (p - 1.0))).epsilon(1e-12));
}

TEST_CASE("p = 2: every step reproduces the linear solution") {
    const Domain dom(1.0, 0.7, 12, 12);
    Rng rng(5);
    const VectorField f = random_data_field(dom, rng);
    SlipProblem prob = make_problem(12, 2.0, f);
    ContinuationSchedule sched;
    sched.steps = 4;
    FixedPointOptions opts;
    opts.cg_tol = 1e-13;
    const ContinuationResult res = run_continuation(prob, sched, kConsts, 1e-11, 50, opts);
    const VectorField ulin = solve_linear(assemble(dom, prob.variant), f, 1e-13);
    CHECK(rel_l2_diff(res.u0, ulin, dom) <= 1e-10);
    for (const auto& st : res.report.continuation) {
        CHECK(st.fp_iterations <= 3);
    }
    // steps after the first do not move the iterate
    for (std::size_t k = 1; k < res.report.continuation.size(); ++k) {
        CHECK(res.report.continuation[k].increment_w1p <= 1e-9);
    }
}

TEST_CASE("zero data stays zero along the whole path") {
    const Domain dom(1.0, 0.7, 10, 10);
    SlipProblem prob = make_problem(10, 1.8, VectorField(dom));
    ContinuationSchedule sched;
    sched.steps = 5;
    const ContinuationResult res = run_continuation(prob, sched, kConsts, 1e-11, 50);
    CHECK(l2_norm(res.u0, dom) == 0.0);
}

TEST_CASE("mu -> 0 path: Cauchy increments, uniform surrogate, singular residual") {
    const Domain dom(1.0, 0.7, 24, 24);
    SlipProblem prob = make_problem(24, 1.9, mms::mms_forcing(dom, 1.9, 0.0, 0.75));
    ContinuationSchedule sched;
    sched.mu0 = 1.0;
    sched.factor = 0.25;
    sched.steps = 9;
    FixedPointOptions opts;
    opts.cg_tol = 1e-12;
    const ContinuationResult res = run_continuation(prob, sched, kConsts, 1e-10, 200, opts);
    const auto& trace = res.report.continuation;
    REQUIRE(trace.size() == 9);

    double smin = trace[0].surrogate, smax = trace[0].surrogate;
    for (const auto& st : trace) {
        smin = std::min(smin, st.surrogate);
        smax = std::max(smax, st.surrogate);
        CHECK(std::isfinite(st.nonlinear_diff_ratio));
    }
    CHECK(smax / smin <= 2.5);

    // increments decay along the schedule
    CHECK(trace.back().increment_w1p <= 0.01 * trace[1].increment_w1p);

    // final mu and the guarded mu = 0 residual
    CHECK(res.final_mu == doctest::Approx(std::pow(0.25, 8)).epsilon(1e-12));
    const double res0 = weak_residual(VectorField(dom), prob, 12);
    const double h2 = dom.hx() * dom.hx();
    const double thresh = 10.0 * (h2 + std::pow(res.final_mu, 0.5 * (prob.params.p - 1.0)));
    CHECK(res.report.singular_weak_res / res0 <= thresh);
}

TEST_CASE("scaled-data solutions obey the exact mu = 0 scaling law") {
    const Domain dom(1.0, 0.7, 16, 16);
    Rng rng(23);
    const VectorField f = random_data_field(dom, rng, 2, 0.5);
    ContinuationSchedule sched;
    sched.mu0 = 1.0;
    sched.factor = 0.25;
    sched.steps = 9;
    FixedPointOptions opts;
    opts.cg_tol = 1e-13;
    for (const double p : {1.8, 2.0}) {
        SlipProblem prob = make_problem(16, p, f);
        const double dev =
            homogeneity_check(prob, {1e-2, 1.0, 1e2}, sched, kConsts, 1e-12, 300, opts);
        CHECK(dev <= 1e-8);
    }
}

TEST_CASE("singular weak residual scales linearly under the homogeneity map") {
    // residual of lambda^{1/(p-1)} u0 against lambda f equals lambda times
    // the residual of u0 against f at mu = 0
    const Domain dom(1.0, 0.7, 12, 12);
    Rng rng(29);
    const VectorField f = random_data_field(dom, rng, 2, 0.5);
    SlipProblem prob = make_problem(12, 1.8, f);
    ContinuationSchedule sched;
    sched.steps = 8;
    sched.mu0_mode = ContinuationSchedule::Mu0Mode::data_scaled;
    FixedPointOptions opts;
    opts.compute_residuals = false;
    const ContinuationResult res = run_continuation(prob, sched, kConsts, 1e-11, 200, opts);

    const double lam = 7.0;
    SlipProblem scaled = prob;
    scaled.f = f;
    scale(scaled.f, lam);
    VectorField su = res.u0;
    scale(su, std::pow(lam, 1.0 / (prob.params.p - 1.0)));
    const double r1 = singular_weak_residual(res.u0, prob, 8);
    const double r2 = singular_weak_residual(su, scaled, 8);
    CHECK(r2 == doctest::Approx(lam * r1).epsilon(1e-6));
}

TEST_CASE("step failure aborts with the partial trace") {
    const Domain dom(1.0, 0.7, 10, 10);
    SlipProblem prob = make_problem(10, 1.7, mms::mms_forcing(dom, 1.7, 0.0, 0.75));
    ContinuationSchedule sched;
    sched.steps = 6;
    FixedPointOptions opts;
    opts.compute_residuals = false;
    try {
        run_continuation(prob, sched, kConsts, 1e-13, 2, opts);
        FAIL("expected FixedPointFailure");
    } catch (const FixedPointFailure& e) {
        CHECK_FALSE(e.report.converged);
    }
}
