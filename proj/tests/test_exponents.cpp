#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pslip/exponents.hpp"

using namespace pslip;

TEST_CASE("critical_r closed-form values") {
    // q = n forces r = n regardless of p
    CHECK(critical_r(2.0, 2, 1.5) == 2.0);
    // direct evaluation: 3*2 / (3*0.5 + 2*0.5) = 6/2.5
    CHECK(critical_r(2.0, 3, 1.5) == doctest::Approx(2.4).epsilon(1e-15));
    // p = 2 collapses the denominator to n
    CHECK(critical_r(2.5, 3, 2.0) == 2.5);
    CHECK(critical_r(0.75, 2, 2.0) == 0.75);
}

TEST_CASE("critical_r: r(n) = n exactly, r(q) > q below n") {
    for (const int n : {2, 3, 4, 5}) {
        for (const double p : {1.1, 1.3, 1.5, 1.7, 1.9, 2.0}) {
            CHECK(critical_r(static_cast<double>(n), n, p) == static_cast<double>(n));
        }
    }
    for (const double p : {1.2, 1.5, 1.8}) {
        for (const double q : {1.1, 1.5, 2.0, 2.5}) {
            if (q < 3.0) CHECK(critical_r(q, 3, p) > q);
        }
    }
}

TEST_CASE("critical_r domain errors") {
    CHECK_THROWS_AS(critical_r(-1.0, 2, 1.5), std::domain_error);
    // denominator n + (q-n)(2-p) <= 0 (reachable only outside the p-range,
    // still guarded)
    CHECK_THROWS_AS(critical_r(0.1, 5, 0.5), std::domain_error);
}

TEST_CASE("q_hat values and composition r(q_hat) = 2") {
    CHECK(q_hat(3, 2.0) == 2.0);
    CHECK(q_hat(3, 1.8) == doctest::Approx(4.8 / 2.6).epsilon(1e-15));
    for (const int n : {2, 3, 4, 8}) {
        for (const double p : {1.2, 1.4, 1.6, 1.8, 1.9}) {
            const double qh = q_hat(n, p);
            CHECK(std::abs(critical_r(qh, n, p) - 2.0) <= 1e-12);
        }
    }
    // strictly below 2 for n >= 3; exactly 2 in the planar case
    for (const int n : {3, 4, 5, 8}) {
        for (const double p : {1.05, 1.3, 1.6, 1.95}) {
            CHECK(q_hat(n, p) < 2.0);
        }
    }
    for (const double p : {1.1, 1.5, 1.9}) {
        CHECK(q_hat(2, p) == doctest::Approx(2.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(q_hat(2, 1.0), std::domain_error);
}

TEST_CASE("contraction gate") {
    const GateResult g2 = contraction_gate(2.0, 123.0);
    CHECK(g2.alpha == 1.0);
    CHECK(g2.satisfied);

    const GateResult g = contraction_gate(1.5, 1.9);
    CHECK(g.alpha == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(g.satisfied);

    const GateResult gb = contraction_gate(1.5, 2.0);
    CHECK(gb.alpha == 0.0);
    CHECK_FALSE(gb.satisfied);

    CHECK_THROWS_AS(contraction_gate(1.5, 0.0), std::domain_error);
}

TEST_CASE("ball radius closed forms") {
    ExponentParams ep;
    ep.p = 2.0;
    ep.mu = 0.7;
    // p = 2: both terms collapse to 2 Cq |f|_q each
    CHECK(ball_radius(RadiusInputs{1.3, 5.0, 2.0, 1.0}, ep) ==
          doctest::Approx(4.0 * 1.3 * 2.0).epsilon(1e-14));

    // zero data
    ep.p = 1.7;
    ep.mu = 0.1;
    CHECK(ball_radius(RadiusInputs{1.3, 5.0, 0.0, 0.9}, ep) == 0.0);

    // p = 3/2, mu = 0: R = (2*1*1/0.5)^{1/(1/2)} = 16
    ep.p = 1.5;
    ep.mu = 0.0;
    CHECK(ball_radius(RadiusInputs{1.0, 1.0, 1.0, 0.5}, ep) ==
          doctest::Approx(16.0).epsilon(1e-14));

    CHECK_THROWS_AS(ball_radius(RadiusInputs{1.0, 1.0, 1.0, 0.0}, ep), std::domain_error);
}

TEST_CASE("ball radius: defining inequality at mu = 0 and p = 2") {
    // alpha R = 2 [ mu-term + Cq Chat^{2-p} |f|_q R^{2-p} ] holds with
    // equality at mu = 0 and at p = 2.
    {
        ExponentParams ep;
        ep.p = 1.6;
        ep.mu = 0.0;
        const RadiusInputs in{1.2, 0.8, 2.5, 0.52};
        const double R = ball_radius(in, ep);
        const double lhs = in.alpha * R;
        const double rhs =
            2.0 * in.Cq * std::pow(in.Chat, 2.0 - ep.p) * in.fnorm_q * std::pow(R, 2.0 - ep.p);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    {
        ExponentParams ep;
        ep.p = 2.0;
        ep.mu = 0.3;
        const RadiusInputs in{1.2, 0.8, 2.5, 1.0};
        const double R = ball_radius(in, ep);
        const double mu_term = std::pow(ep.mu, radius_mu_exponent(ep.p)) * in.Cq * in.fnorm_q;
        const double rhs = 2.0 * (mu_term + in.Cq * in.fnorm_q);
        CHECK(in.alpha * R == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("ball radius monotone in data norm and mu") {
    ExponentParams ep;
    ep.p = 1.7;
    double prev = 0.0;
    for (const double f : {0.1, 0.5, 1.0, 4.0, 20.0}) {
        ep.mu = 0.25;
        const double R = ball_radius(RadiusInputs{1.4, 0.9, f, 0.6}, ep);
        CHECK(R >= prev);
        prev = R;
    }
    prev = 0.0;
    for (const double mu : {0.0, 1e-4, 1e-2, 1.0, 10.0}) {
        ep.mu = mu;
        const double R = ball_radius(RadiusInputs{1.4, 0.9, 1.0, 0.6}, ep);
        CHECK(R >= prev);
        prev = R;
    }
}

TEST_CASE("parameter validation") {
    ExponentParams ep;
    ep.p = 2.5;
    CHECK_THROWS_AS(ep.validate(), std::domain_error);
    ep.p = 1.5;
    ep.q = 0.5;
    CHECK_THROWS_AS(ep.validate(), std::domain_error);
    ep.q = 4.0;
    ep.n = 1;
    CHECK_THROWS_AS(ep.validate(), std::domain_error);
    ep.n = 2;
    ep.mu = -1.0;
    CHECK_THROWS_AS(ep.validate(), std::domain_error);
}
