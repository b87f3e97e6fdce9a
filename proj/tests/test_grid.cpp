#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pslip/grid.hpp"
#include "pslip/mms.hpp"
#include "pslip/random_fields.hpp"
#include "test_support.hpp"

using namespace pslip;
using namespace pslip::testing;

TEST_CASE("domain invariants and weights") {
    CHECK_THROWS_AS(Domain(0.0, 0.7, 8, 8), std::domain_error);
    CHECK_THROWS_AS(Domain(1.0, 0.7, 2, 8), std::domain_error);
    const Domain dom(1.0, 0.7, 13, 9);
    double sum = 0.0;
    for (int j = 0; j < dom.nodes_y(); ++j)
        for (int i = 0; i < dom.nodes_x(); ++i) sum += dom.weight(i, j);
    CHECK(sum == doctest::Approx(dom.area()).epsilon(1e-13));
}

TEST_CASE("sym_grad annihilates rigid motions and is exact on linears") {
    const Domain dom(1.0, 0.7, 12, 10);
    // rigid rotation (-y, x)
    const VectorField rot = sample_vector(
        dom, [](double, double y) { return -y; }, [](double x, double) { return x; });
    const TensorField Drot = sym_grad(rot, dom);
    CHECK(linf_norm(Drot, dom) <= 1e-13);

    const VectorField lin = sample_vector(
        dom, [](double x, double) { return x; }, [](double, double) { return 0.0; });
    const TensorField Dlin = sym_grad(lin, dom);
    for (std::size_t k = 0; k < Dlin.size(); ++k) {
        CHECK(Dlin.t11[k] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(std::abs(Dlin.t12[k]) <= 1e-12);
        CHECK(std::abs(Dlin.t22[k]) <= 1e-12);
    }
}

TEST_CASE("sym_grad output is exactly symmetric") {
    const Domain dom(1.0, 0.7, 8, 8);
    Rng rng(3);
    const TensorField D = sym_grad(random_tangent_field(dom, rng), dom);
    CHECK(D.symmetric);
    for (std::size_t k = 0; k < D.size(); ++k) {
        CHECK(D.t12[k] == D.t21[k]);  // bitwise
    }
}

TEST_CASE("sym_grad converges to the closed form at second order") {
    std::vector<int> grids{16, 32};
    std::vector<double> errs;
    for (const int n : grids) {
        const Domain dom(1.0, 0.7, n, n);
        const TensorField Dh = sym_grad(mms::mms_field(dom, 0.8), dom);
        const TensorField Dex = mms::mms_sym_grad(dom, 0.8);
        double e = 0.0;
        for (std::size_t k = 0; k < Dh.size(); ++k) {
            e = std::max(e, std::abs(Dh.t11[k] - Dex.t11[k]));
            e = std::max(e, std::abs(Dh.t12[k] - Dex.t12[k]));
            e = std::max(e, std::abs(Dh.t22[k] - Dex.t22[k]));
        }
        errs.push_back(e);
    }
    CHECK(fit_order(grids, errs) >= 1.9);
}

TEST_CASE("div_tensor basics") {
    const Domain dom(1.0, 0.7, 10, 12);
    TensorField T(dom);
    for (auto& v : T.t11) v = 3.0;
    for (auto& v : T.t12) v = -1.5;
    for (auto& v : T.t21) v = -1.5;
    for (auto& v : T.t22) v = 0.25;
    const VectorField d0 = div_tensor(T, dom);
    for (std::size_t k = 0; k < d0.size(); ++k) {
        CHECK(std::abs(d0.u1[k]) <= 1e-12);
        CHECK(std::abs(d0.u2[k]) <= 1e-12);
    }

    TensorField Tx(dom);
    for (int j = 0; j < dom.nodes_y(); ++j)
        for (int i = 0; i < dom.nodes_x(); ++i) Tx.t11[dom.id(i, j)] = dom.x(i);
    const VectorField dx = div_tensor(Tx, dom);
    for (std::size_t k = 0; k < dx.size(); ++k) {
        CHECK(dx.u1[k] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(dx.u2[k]) <= 1e-12);
    }
}

TEST_CASE("div of closed-form MMS stress matches the p = 2 forcing") {
    std::vector<int> grids{16, 32};
    std::vector<double> errs;
    for (const int n : grids) {
        const Domain dom(1.0, 0.7, n, n);
        const VectorField f = mms::mms_forcing_p2_closed_form(dom, 1.0);
        const VectorField divD = div_tensor(mms::mms_sym_grad(dom, 1.0), dom);
        double e = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            e = std::max(e, std::abs(divD.u1[k] + f.u1[k]));
            e = std::max(e, std::abs(divD.u2[k] + f.u2[k]));
        }
        errs.push_back(e);
    }
    CHECK(fit_order(grids, errs) >= 1.9);
}

TEST_CASE("curl2") {
    const Domain dom(1.0, 0.7, 14, 11);
    const VectorField rot = sample_vector(
        dom, [](double, double y) { return -y; }, [](double x, double) { return x; });
    const ScalarField w = curl2(rot, dom);
    for (double v : w.v) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));

    // curl of an analytic gradient is O(h^2)
    std::vector<int> grids{16, 32};
    std::vector<double> errs;
    for (const int n : grids) {
        const Domain d(1.0, 0.7, n, n);
        const double a = 3.14159265358979323846 / d.Lx;
        const double b = 3.14159265358979323846 / d.Ly;
        const VectorField gphi = sample_vector(
            d, [&](double x, double y) { return -a * std::sin(a * x) * std::cos(b * y); },
            [&](double x, double y) { return -b * std::cos(a * x) * std::sin(b * y); });
        errs.push_back(linf_norm(curl2(gphi, d)));
    }
    CHECK(fit_order(grids, errs) >= 1.9);

    // c = Lx/Ly makes the closed-form vorticity vanish identically
    const Domain d2(1.0, 0.7, 16, 16);
    const mms::Exact e(d2, d2.Lx / d2.Ly);
    for (int i = 0; i < d2.nodes_x(); ++i) {
        CHECK(std::abs(e.vorticity(d2.x(i), 0.0)) <= 1e-13);
        CHECK(std::abs(e.vorticity(d2.x(i), d2.Ly)) <= 1e-13);
    }
}

TEST_CASE("lq_norm: unit constant on a unit-area asymmetric rectangle") {
    const Domain dom(1.25, 0.8, 9, 7);
    ScalarField one(dom);
    for (auto& v : one.v) v = 1.0;
    for (const double q : {1.0, 2.0, 3.7}) {
        CHECK(lq_norm(one, q, dom) == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS(lq_norm(one, 0.5, dom), std::domain_error);
}

TEST_CASE("norm homogeneity and affine kernel of the surrogate") {
    const Domain dom(1.0, 0.7, 10, 10);
    Rng rng(5);
    VectorField u = random_tangent_field(dom, rng);
    const double n1 = lq_norm(u, 3.0, dom);
    VectorField su = u;
    scale(su, 7.25);
    CHECK(lq_norm(su, 3.0, dom) == doctest::Approx(7.25 * n1).epsilon(1e-12));

    const VectorField aff = sample_vector(
        dom, [](double x, double y) { return 1.0 + 2.0 * x - 0.5 * y; },
        [](double x, double y) { return -0.75 + 0.25 * x + 3.0 * y; });
    CHECK(w2q_surrogate(aff, dom, 4.0) <= 1e-11);
}

TEST_CASE("norm equivalence surrogate |grad^2 u| vs |grad D u|") {
    // pointwise |grad^2 u| <= 3 |grad Du| and |grad Du| <= 2 |grad^2 u| up to
    // the discretization of the two routes
    const Domain dom(1.0, 0.7, 32, 32);
    Rng rng(17);
    for (int s = 0; s < 5; ++s) {
        const VectorField u = random_tangent_field(dom, rng, 2, 1.0);
        const TensorGradField gD = grad_tensor(sym_grad(u, dom), dom);
        const ScalarField mgD = grad_tensor_magnitude(gD, dom);
        // |grad^2 u|: all second derivatives from scalar compositions
        ScalarField f1(dom), f2(dom);
        f1.v = u.u1;
        f2.v = u.u2;
        const ScalarField d11u1 = ddx(ddx(f1, dom), dom);
        const ScalarField d12u1 = ddx(ddy(f1, dom), dom);
        const ScalarField d22u1 = ddy(ddy(f1, dom), dom);
        const ScalarField d11u2 = ddx(ddx(f2, dom), dom);
        const ScalarField d12u2 = ddx(ddy(f2, dom), dom);
        const ScalarField d22u2 = ddy(ddy(f2, dom), dom);
        double nq_h = 0.0, nq_d = 0.0;
        for (int j = 0; j < dom.nodes_y(); ++j) {
            for (int i = 0; i < dom.nodes_x(); ++i) {
                const std::size_t k = dom.id(i, j);
                // ordered (k,l) pairs: mixed derivatives counted twice
                const double h2 = d11u1.v[k] * d11u1.v[k] + 2.0 * d12u1.v[k] * d12u1.v[k] +
                                  d22u1.v[k] * d22u1.v[k] + d11u2.v[k] * d11u2.v[k] +
                                  2.0 * d12u2.v[k] * d12u2.v[k] + d22u2.v[k] * d22u2.v[k];
                const double w = dom.weight(i, j);
                nq_h += w * h2;
                nq_d += w * mgD.v[k] * mgD.v[k];
            }
        }
        nq_h = std::sqrt(nq_h);
        nq_d = std::sqrt(nq_d);
        CHECK(nq_h <= 3.0 * nq_d * 1.05);
        CHECK(nq_d <= 2.0 * nq_h * 1.05);
    }
}

TEST_CASE("apply_slip_bc") {
    const Domain dom(1.0, 0.7, 12, 12);
    const VectorField ustar = mms::mms_field(dom, 0.75);
    const VectorField enforced = apply_slip_bc(ustar, BcVariant::NavierStress, dom);
    CHECK(max_abs_diff(ustar, enforced) <= 1e-13);
    CHECK(enforced.tangency_enforced);

    VectorField c(dom);
    for (auto& v : c.u1) v = 3.0;
    for (auto& v : c.u2) v = -2.0;
    const VectorField ec = apply_slip_bc(c, BcVariant::BardosVorticity, dom);
    const int mx = dom.Nx + 1, my = dom.Ny + 1;
    for (int j = 0; j < dom.nodes_y(); ++j) {
        CHECK(ec.u1[dom.id(0, j)] == 0.0);
        CHECK(ec.u1[dom.id(mx, j)] == 0.0);
    }
    for (int i = 0; i < dom.nodes_x(); ++i) {
        CHECK(ec.u2[dom.id(i, 0)] == 0.0);
        CHECK(ec.u2[dom.id(i, my)] == 0.0);
    }
    // tangential values on face interiors untouched
    CHECK(ec.u2[dom.id(0, 3)] == -2.0);
    CHECK(ec.u1[dom.id(3, 0)] == 3.0);
}

TEST_CASE("csv dumps round-trip through text") {
    const Domain dom(1.0, 0.7, 3, 3);
    Rng rng(9);
    const VectorField u = random_tangent_field(dom, rng);
    const std::string path = "grid_dump_test.csv";
    dump_vector_csv(path, u, dom);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y,u1,u2");
    int rows = 0;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            double x, y, u1v, u2v;
            CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &y, &u1v, &u2v) == 4);
            CHECK(x == dom.x(0));
            CHECK(y == dom.y(0));
            CHECK(u1v == u.u1[0]);  // %.17g round-trips exactly
            CHECK(u2v == u.u2[0]);
            first = false;
        }
        ++rows;
    }
    CHECK(rows == static_cast<int>(dom.num_nodes()));
    std::remove(path.c_str());

    dump_tensor_csv(path, sym_grad(u, dom), dom);
    std::ifstream in2(path);
    std::getline(in2, header);
    CHECK(header == "x,y,d11,d12,d22");
    std::remove(path.c_str());
}
