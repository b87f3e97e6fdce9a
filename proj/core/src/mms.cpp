#include "pslip/mms.hpp"

#include <cmath>

namespace pslip {
namespace mms {

namespace {

constexpr double kPi = 3.14159265358979323846;

SymMat2 operator-(const SymMat2& a, const SymMat2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a22 - b.a22};
}
SymMat2 operator*(double s, const SymMat2& a) { return {s * a.a11, s * a.a12, s * a.a22}; }

}  // namespace

double Exact::u1(double x, double y) const {
    return std::sin(kPi * x / Lx) * std::cos(kPi * y / Ly);
}

double Exact::u2(double x, double y) const {
    return c * std::cos(kPi * x / Lx) * std::sin(kPi * y / Ly);
}

SymMat2 Exact::sym_grad(double x, double y) const {
    const double a = kPi / Lx;
    const double b = kPi / Ly;
    const double cc = std::cos(a * x) * std::cos(b * y);
    const double ss = std::sin(a * x) * std::sin(b * y);
    SymMat2 D;
    D.a11 = 2.0 * a * cc;
    D.a22 = 2.0 * c * b * cc;
    D.a12 = -(c * a + b) * ss;
    return D;
}

double Exact::vorticity(double x, double y) const {
    const double a = kPi / Lx;
    const double b = kPi / Ly;
    return (b - c * a) * std::sin(a * x) * std::sin(b * y);
}

VectorField mms_field(const Domain& dom, double c) {
    const Exact e(dom, c);
    VectorField u = sample_vector(
        dom, [&](double x, double y) { return e.u1(x, y); },
        [&](double x, double y) { return e.u2(x, y); });
    u.tangency_enforced = true;
    return u;
}

TensorField mms_sym_grad(const Domain& dom, double c) {
    const Exact e(dom, c);
    TensorField D(dom);
    for (int j = 0; j < dom.nodes_y(); ++j) {
        for (int i = 0; i < dom.nodes_x(); ++i) {
            const SymMat2 m = e.sym_grad(dom.x(i), dom.y(j));
            const std::size_t k = dom.id(i, j);
            D.t11[k] = m.a11;
            D.t12[k] = m.a12;
            D.t21[k] = m.a12;
            D.t22[k] = m.a22;
        }
    }
    D.symmetric = true;
    return D;
}

VectorField mms_forcing(const Domain& dom, double p, double mu, double c) {
    const Exact e(dom, c);
    const StressParams params{p, mu};
    params.validate();
    const auto stress = [&](double x, double y) { return b_times_d(e.sym_grad(x, y), params); };
    const double delta = std::min(dom.Lx, dom.Ly) / 4096.0;
    // 4th-order central difference of g along one coordinate.
    const auto d4 = [delta](auto g, double s) {
        const SymMat2 num =
            8.0 * (g(s + delta) - g(s - delta)) - (g(s + 2.0 * delta) - g(s - 2.0 * delta));
        return (1.0 / (12.0 * delta)) * num;
    };
    VectorField f(dom);
    for (int j = 0; j < dom.nodes_y(); ++j) {
        for (int i = 0; i < dom.nodes_x(); ++i) {
            const double x = dom.x(i);
            const double y = dom.y(j);
            const SymMat2 dxS = d4([&](double s) { return stress(s, y); }, x);
            const SymMat2 dyS = d4([&](double s) { return stress(x, s); }, y);
            const std::size_t k = dom.id(i, j);
            f.u1[k] = -(dxS.a11 + dyS.a12);
            f.u2[k] = -(dxS.a12 + dyS.a22);
        }
    }
    return f;
}

VectorField mms_forcing_p2_closed_form(const Domain& dom, double c) {
    const double a = kPi / dom.Lx;
    const double b = kPi / dom.Ly;
    const double k1 = 2.0 * a * a + b * b + c * a * b;
    const double k2 = 2.0 * c * b * b + c * a * a + a * b;
    return sample_vector(
        dom, [&](double x, double y) { return k1 * std::sin(a * x) * std::cos(b * y); },
        [&](double x, double y) { return k2 * std::cos(a * x) * std::sin(b * y); });
}

}  // namespace mms
}  // namespace pslip
