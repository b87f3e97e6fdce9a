#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pslip/mms.hpp"
#include "pslip/random_fields.hpp"
#include "pslip/stress.hpp"
#include "test_support.hpp"

using namespace pslip;
using namespace pslip::testing;

namespace {

SymMat2 random_sym(Rng& rng, double scale = 1.0) {
    return SymMat2{scale * rng.normal(), scale * rng.normal(), scale * rng.normal()};
}

VectorField mixed_random_field(const Domain& dom, Rng& rng, int which) {
    if (which % 3 == 0) return random_tangent_field(dom, rng, 3, 1.0);
    if (which % 3 == 1) return random_data_field(dom, rng, 2, 1.0);
    // quadratic polynomial field
    const double a = rng.normal(), b = rng.normal(), c = rng.normal();
    const double d = rng.normal(), e = rng.normal(), f = rng.normal();
    return sample_vector(
        dom, [=](double x, double y) { return a + b * x + c * y + d * x * y + e * x * x; },
        [=](double x, double y) { return d + e * x + f * y + a * x * y + c * y * y; });
}

}  // namespace

TEST_CASE("b_coeff values and singular point") {
    CHECK(b_coeff(SymMat2{1.0, 0.0, 0.0}, StressParams{1.5, 0.0}) == 1.0);
    CHECK(b_coeff(SymMat2{0.0, 0.0, 0.0}, StressParams{1.5, 1.0}) == 1.0);
    // |D|^2 = 4, p = 3/2: 4^{-1/4} = 1/sqrt(2)
    CHECK(b_coeff(SymMat2{2.0, 0.0, 0.0}, StressParams{1.5, 0.0}) ==
          doctest::Approx(0.70710678118654746).epsilon(1e-15));
    CHECK_THROWS_AS(b_coeff(SymMat2{0.0, 0.0, 0.0}, StressParams{1.5, 0.0}),
                    std::domain_error);
    // p = 2 never singular
    CHECK(b_coeff(SymMat2{0.0, 0.0, 0.0}, StressParams{2.0, 0.0}) == 1.0);
}

TEST_CASE("b_times_d: guard, p = 2 identity, homogeneity") {
    const SymMat2 z = b_times_d(SymMat2{0.0, 0.0, 0.0}, StressParams{1.5, 0.0});
    CHECK(z.a11 == 0.0);
    CHECK(z.a12 == 0.0);
    CHECK(z.a22 == 0.0);

    const SymMat2 D{0.3, -0.7, 1.1};
    const SymMat2 id = b_times_d(D, StressParams{2.0, 0.37});
    CHECK(id.a11 == D.a11);
    CHECK(id.a12 == D.a12);
    CHECK(id.a22 == D.a22);

    Rng rng(21);
    for (int s = 0; s < 50; ++s) {
        const SymMat2 A = random_sym(rng);
        const double p = 1.0 + 0.02 + 0.96 * rng.uniform();
        for (const double lam : {0.5, 2.0, 13.0}) {
            const SymMat2 sa = b_times_d(SymMat2{lam * A.a11, lam * A.a12, lam * A.a22},
                                         StressParams{p, 0.0});
            const SymMat2 sb = b_times_d(A, StressParams{p, 0.0});
            const double f = std::pow(lam, p - 1.0);
            CHECK(sa.a11 == doctest::Approx(f * sb.a11).epsilon(1e-12));
            CHECK(sa.a12 == doctest::Approx(f * sb.a12).epsilon(1e-12));
            CHECK(sa.a22 == doctest::Approx(f * sb.a22).epsilon(1e-12));
        }
    }
}

TEST_CASE("b_times_d is monotone") {
    Rng rng(22);
    for (const double p : {1.5, 1.8}) {
        for (const double mu : {0.0, 1e-3}) {
            const StressParams params{p, mu};
            for (int s = 0; s < 10000; ++s) {
                const SymMat2 A = random_sym(rng);
                const SymMat2 B = random_sym(rng);
                const SymMat2 sa = b_times_d(A, params);
                const SymMat2 sb = b_times_d(B, params);
                const double inner = (sa.a11 - sb.a11) * (A.a11 - B.a11) +
                                     2.0 * (sa.a12 - sb.a12) * (A.a12 - B.a12) +
                                     (sa.a22 - sb.a22) * (A.a22 - B.a22);
                const double scale = sym_norm2(A) + sym_norm2(B);
                CHECK(inner >= -1e-12 * scale);
            }
        }
    }
}

TEST_CASE("i_vector: affine kernel and brute-force oracle") {
    const Domain dom(1.0, 0.7, 8, 8);
    const VectorField aff = sample_vector(
        dom, [](double x, double y) { return 1.0 + 2.0 * x + 3.0 * y; },
        [](double x, double y) { return -0.5 * x + 0.25 * y; });
    const TensorField Da = sym_grad(aff, dom);
    const VectorField Ia = i_vector(Da, grad_tensor(Da, dom), dom);
    for (std::size_t k = 0; k < Ia.size(); ++k) {
        CHECK(std::abs(Ia.u1[k]) <= 1e-10);
        CHECK(std::abs(Ia.u2[k]) <= 1e-10);
    }

    // independent index-by-index evaluation of the triple sum
    Rng rng(33);
    const VectorField u = mixed_random_field(dom, rng, 2);
    const TensorField D = sym_grad(u, dom);
    const TensorGradField g = grad_tensor(D, dom);
    const VectorField I = i_vector(D, g, dom);
    for (std::size_t k = 0; k < D.size(); ++k) {
        const double Dm[2][2] = {{D.t11[k], D.t12[k]}, {D.t21[k], D.t22[k]}};
        const double Gm[2][2][2] = {{{g.dx11[k], g.dx12[k]}, {g.dx12[k], g.dx22[k]}},
                                    {{g.dy11[k], g.dy12[k]}, {g.dy12[k], g.dy22[k]}}};
        for (int j = 0; j < 2; ++j) {
            double s = 0.0;
            for (int kk = 0; kk < 2; ++kk)
                for (int l = 0; l < 2; ++l)
                    for (int m = 0; m < 2; ++m) s += Dm[l][m] * Gm[kk][l][m] * Dm[kk][j];
            const double got = (j == 0) ? I.u1[k] : I.u2[k];
            const double scale = std::abs(s) + 1e-30;
            CHECK(std::abs(got - s) <= 1e-13 * scale);
        }
    }
}

TEST_CASE("pointwise bound |I(u)| <= |Du|^2 |grad Du| on 50 random fields") {
    const Domain dom(1.0, 0.7, 12, 12);
    Rng rng(44);
    for (int s = 0; s < 50; ++s) {
        const VectorField u = mixed_random_field(dom, rng, s);
        const TensorField D = sym_grad(u, dom);
        const TensorGradField g = grad_tensor(D, dom);
        const VectorField I = i_vector(D, g, dom);
        const ScalarField mg = grad_tensor_magnitude(g, dom);
        for (std::size_t k = 0; k < D.size(); ++k) {
            const double lhs = std::hypot(I.u1[k], I.u2[k]);
            const double d2 = D.t11[k] * D.t11[k] + 2.0 * D.t12[k] * D.t12[k] +
                              D.t22[k] * D.t22[k];
            CHECK(lhs <= d2 * mg.v[k] * (1.0 + 1e-12) + 1e-300);
        }
    }
}

TEST_CASE("g_vector: bound, affine kernel, large-mu decay") {
    const Domain dom(1.0, 0.7, 12, 12);
    Rng rng(55);
    for (int s = 0; s < 50; ++s) {
        const VectorField v = mixed_random_field(dom, rng, s);
        const TensorField D = sym_grad(v, dom);
        const TensorGradField g = grad_tensor(D, dom);
        for (const double mu : {0.0, 1e-4, 1.0}) {
            const VectorField G = g_vector(D, g, StressParams{1.6, mu}, dom);
            for (const double q : {2.0, 4.0}) {
                const double gq = lq_norm(G, q, dom);
                const double sq = lq_norm(grad_tensor_magnitude(g, dom), q, dom);
                CHECK(gq <= sq * (1.0 + 1e-12));
            }
        }
    }

    // G decays like 1/mu for large mu
    const VectorField v = random_tangent_field(dom, rng);
    const TensorField D = sym_grad(v, dom);
    const TensorGradField g = grad_tensor(D, dom);
    const double n6 = lq_norm(g_vector(D, g, StressParams{1.6, 1e6}, dom), 2.0, dom);
    const double n7 = lq_norm(g_vector(D, g, StressParams{1.6, 1e7}, dom), 2.0, dom);
    CHECK(n6 / n7 == doctest::Approx(10.0).epsilon(1e-2));
}

TEST_CASE("rhs_F: p = 2 exactness, zero cases, norm bound") {
    const Domain dom(1.0, 0.7, 12, 12);
    Rng rng(66);
    const VectorField v = random_tangent_field(dom, rng);
    const VectorField f = random_data_field(dom, rng);

    const VectorField F2 = rhs_F(v, f, StressParams{2.0, 0.123}, dom);
    CHECK(max_abs_diff(F2, f) == 0.0);

    const VectorField aff = sample_vector(
        dom, [](double x, double y) { return 0.3 * x - 0.2 * y; },
        [](double x, double y) { return 0.1 * x + 0.7 * y; });
    VectorField zero(dom);
    const VectorField F0 = rhs_F(aff, zero, StressParams{1.7, 0.5}, dom);
    for (std::size_t k = 0; k < F0.size(); ++k) {
        CHECK(std::abs(F0.u1[k]) <= 1e-10);
        CHECK(std::abs(F0.u2[k]) <= 1e-10);
    }

    // |F(v)|_q <= (2-p)|grad Dv|_q + mu^{(2-p)/2}|f|_q + |Dv|_inf^{2-p}|f|_q
    for (int s = 0; s < 20; ++s) {
        const VectorField vs = mixed_random_field(dom, rng, s);
        const VectorField fs = random_data_field(dom, rng);
        for (const double mu : {0.0, 0.3}) {
            const StressParams params{1.75, mu};
            const double q = 4.0;
            const VectorField F = rhs_F(vs, fs, params, dom);
            const TensorField D = sym_grad(vs, dom);
            const double gDq = lq_norm(grad_tensor_magnitude(grad_tensor(D, dom), dom), q, dom);
            const double fq = lq_norm(fs, q, dom);
            const double rhs = (2.0 - params.p) * gDq +
                               std::pow(mu, 0.5 * (2.0 - params.p)) * fq +
                               std::pow(linf_norm(D, dom), 2.0 - params.p) * fq;
            CHECK(lq_norm(F, q, dom) <= rhs * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("subadditivity of fractional powers") {
    CHECK(check_subadditivity(1.0, 1.0, 0.5));
    Rng rng(77);
    for (int s = 0; s < 100000; ++s) {
        const double a = std::pow(10.0, rng.uniform(-8.0, 8.0));
        const double b = std::pow(10.0, rng.uniform(-8.0, 8.0));
        const double alpha = rng.uniform(1e-6, 1.0 - 1e-6);
        CHECK(check_subadditivity(a, b, alpha));
    }
    CHECK_THROWS_AS(check_subadditivity(-1.0, 1.0, 0.5), std::domain_error);
}

TEST_CASE("nonlinear difference bound: ratio finite and mu-stable") {
    Rng rng(88);
    CHECK(check_difference_bound(SymMat2{1.0, 2.0, 3.0}, SymMat2{1.0, 2.0, 3.0}, 0.1, 1.5) ==
          0.0);
    double overall = 0.0;
    std::vector<double> sups;
    for (const double mu : {0.0, 1e-6, 1e-3, 1.0}) {
        double sup = 0.0;
        for (int s = 0; s < 100000; ++s) {
            const double r = check_difference_bound(random_sym(rng), random_sym(rng), mu, 1.5);
            CHECK(std::isfinite(r));
            sup = std::max(sup, r);
        }
        sups.push_back(sup);
        overall = std::max(overall, sup);
    }
    // the supremum estimates the mu-independent constant; decades agree
    // within a modest factor (value recorded, not pinned)
    double lo = sups[0], hi = sups[0];
    for (double s : sups) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    CHECK(hi / lo <= 4.0);
    MESSAGE("difference-bound constant estimate: ", overall);
}

TEST_CASE("expansion identity residual is second order on cubic fields") {
    const StressParams params{1.7, 1.0};
    std::vector<int> grids{16, 32};
    std::vector<double> errs;
    for (const int n : grids) {
        const Domain dom(1.0, 0.7, n, n);
        const VectorField u = sample_vector(
            dom,
            [](double x, double y) {
                return 0.3 - 0.5 * x + 0.2 * y + 0.7 * x * x - 0.4 * x * y + 0.1 * y * y +
                       0.5 * x * x * x - 0.2 * x * x * y + 0.3 * x * y * y - 0.6 * y * y * y;
            },
            [](double x, double y) {
                return -0.2 + 0.4 * x - 0.7 * y + 0.3 * x * x + 0.6 * x * y - 0.1 * y * y -
                       0.4 * x * x * x + 0.2 * x * x * y - 0.5 * x * y * y + 0.3 * y * y * y;
            });
        errs.push_back(expansion_identity_residual(u, params, dom));
    }
    CHECK(fit_order(grids, errs) >= 1.8);
    CHECK_THROWS_AS(expansion_identity_residual(VectorField(Domain(1.0, 0.7, 4, 4)),
                                                StressParams{1.7, 0.0}, Domain(1.0, 0.7, 4, 4)),
                    std::domain_error);
}
