#include "pslip/random_fields.hpp"

#include <cmath>

namespace pslip {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

DataBasis::DataBasis(const Domain& dom, int modes)
    : dom_(dom), modes_(modes), nfun_(2 * modes + 1) {}

double DataBasis::eval1d(int t, double s, double L) const {
    if (t == 0) return 1.0;
    const int k = (t + 1) / 2;
    const double arg = k * kPi * s / L;
    return (t % 2 == 1) ? std::sin(arg) : std::cos(arg);
}

VectorField DataBasis::assemble(std::span<const double> coeffs) const {
    VectorField f(dom_);
    for (int j = 0; j < dom_.nodes_y(); ++j) {
        for (int i = 0; i < dom_.nodes_x(); ++i) {
            const double x = dom_.x(i);
            const double y = dom_.y(j);
            double v1 = 0.0, v2 = 0.0;
            std::size_t idx = 0;
            for (int tx = 0; tx < nfun_; ++tx) {
                const double bx = eval1d(tx, x, dom_.Lx);
                for (int ty = 0; ty < nfun_; ++ty) {
                    const double b = bx * eval1d(ty, y, dom_.Ly);
                    v1 += coeffs[idx] * b;
                    v2 += coeffs[nfun_ * nfun_ + idx] * b;
                    ++idx;
                }
            }
            const std::size_t k = dom_.id(i, j);
            f.u1[k] = v1;
            f.u2[k] = v2;
        }
    }
    return f;
}

std::vector<double> DataBasis::random_coeffs(Rng& rng, double amplitude) const {
    std::vector<double> c(size());
    std::size_t idx = 0;
    for (int comp = 0; comp < 2; ++comp) {
        for (int tx = 0; tx < nfun_; ++tx) {
            for (int ty = 0; ty < nfun_; ++ty) {
                const int kx = (tx + 1) / 2;
                const int ky = (ty + 1) / 2;
                const double decay = 1.0 / (1.0 + kx * kx + ky * ky);
                c[idx++] = amplitude * decay * rng.normal();
            }
        }
    }
    return c;
}

VectorField random_tangent_field(const Domain& dom, Rng& rng, int modes, double amplitude) {
    struct Mode {
        double amp;
        int m, t;
    };
    // Component 1: sin(m pi x/Lx) * {cos,sin}(k pi y/Ly); component 2 mirrored.
    const int nfun = 2 * modes + 1;
    std::vector<double> c1(static_cast<std::size_t>(modes) * nfun);
    std::vector<double> c2(static_cast<std::size_t>(modes) * nfun);
    std::size_t idx = 0;
    for (int m = 1; m <= modes; ++m) {
        for (int t = 0; t < nfun; ++t) {
            const int k = (t + 1) / 2;
            const double decay = 1.0 / (1.0 + m * m + k * k);
            c1[idx] = amplitude * decay * rng.normal();
            c2[idx] = amplitude * decay * rng.normal();
            ++idx;
        }
    }
    const auto eval1d = [](int t, double s, double L) {
        if (t == 0) return 1.0;
        const int k = (t + 1) / 2;
        const double arg = k * kPi * s / L;
        return (t % 2 == 1) ? std::sin(arg) : std::cos(arg);
    };
    VectorField u(dom);
    for (int j = 0; j < dom.nodes_y(); ++j) {
        for (int i = 0; i < dom.nodes_x(); ++i) {
            const double x = dom.x(i);
            const double y = dom.y(j);
            double v1 = 0.0, v2 = 0.0;
            idx = 0;
            for (int m = 1; m <= modes; ++m) {
                const double sx = std::sin(m * kPi * x / dom.Lx);
                const double sy = std::sin(m * kPi * y / dom.Ly);
                for (int t = 0; t < nfun; ++t) {
                    v1 += c1[idx] * sx * eval1d(t, y, dom.Ly);
                    v2 += c2[idx] * sy * eval1d(t, x, dom.Lx);
                    ++idx;
                }
            }
            const std::size_t k = dom.id(i, j);
            u.u1[k] = v1;
            u.u2[k] = v2;
        }
    }
    u.tangency_enforced = true;
    return u;
}

VectorField random_data_field(const Domain& dom, Rng& rng, int modes, double amplitude) {
    const DataBasis basis(dom, modes);
    const auto c = basis.random_coeffs(rng, amplitude);
    return basis.assemble(c);
}

}  // namespace pslip
