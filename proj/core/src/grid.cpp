#include "pslip/grid.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pslip {

Domain::Domain(double lx, double ly, int nx, int ny) : Lx(lx), Ly(ly), Nx(nx), Ny(ny) {
    if (!(Lx > 0.0) || !(Ly > 0.0)) {
        throw std::domain_error("Domain: side lengths must be positive");
    }
    if (Nx < 3 || Ny < 3) {
        throw std::domain_error("Domain: need at least 3 interior nodes per axis");
    }
}

std::string to_string(BcVariant v) {
    return v == BcVariant::NavierStress ? "navier" : "bardos";
}

VectorField sample_vector(const Domain& dom,
                          const std::function<double(double, double)>& f1,
                          const std::function<double(double, double)>& f2) {
    VectorField u(dom);
    for (int j = 0; j < dom.nodes_y(); ++j) {
        for (int i = 0; i < dom.nodes_x(); ++i) {
            const std::size_t k = dom.id(i, j);
            u.u1[k] = f1(dom.x(i), dom.y(j));
            u.u2[k] = f2(dom.x(i), dom.y(j));
        }
    }
    return u;
}

ScalarField sample_scalar(const Domain& dom, const std::function<double(double, double)>& f) {
    ScalarField s(dom);
    for (int j = 0; j < dom.nodes_y(); ++j) {
        for (int i = 0; i < dom.nodes_x(); ++i) {
            s.v[dom.id(i, j)] = f(dom.x(i), dom.y(j));
        }
    }
    return s;
}

void axpy(double a, const VectorField& x, VectorField& y) {
    for (std::size_t k = 0; k < y.size(); ++k) {
        y.u1[k] += a * x.u1[k];
        y.u2[k] += a * x.u2[k];
    }
}

void scale(VectorField& x, double a) {
    for (std::size_t k = 0; k < x.size(); ++k) {
        x.u1[k] *= a;
        x.u2[k] *= a;
    }
}

VectorField lin_comb(double a, const VectorField& x, double b, const VectorField& y) {
    VectorField z = x;
    for (std::size_t k = 0; k < z.size(); ++k) {
        z.u1[k] = a * x.u1[k] + b * y.u1[k];
        z.u2[k] = a * x.u2[k] + b * y.u2[k];
    }
    z.tangency_enforced = x.tangency_enforced && y.tangency_enforced;
    return z;
}

double max_abs_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(a.u1[k] - b.u1[k]));
        m = std::max(m, std::abs(a.u2[k] - b.u2[k]));
    }
    return m;
}

namespace {

// First derivative along one grid line. Interior: centered. Ends: one-sided
// 4-point second-order stencil with truncation -h^2/6 f''' matching the
// centered profile, so derivative compositions keep a smooth error field.
inline double d_line(const double* f, int n, int stride, int i, double h) {
    const double inv = 1.0 / h;
    if (i == 0) {
        return (-5.0 / 3.0 * f[0] + 2.5 * f[stride] - f[2 * stride] + f[3 * stride] / 6.0) * inv;
    }
    if (i == n - 1) {
        const double* e = f + (n - 1) * stride;
        return (5.0 / 3.0 * e[0] - 2.5 * e[-stride] + e[-2 * stride] - e[-3 * stride] / 6.0) * inv;
    }
    return (f[(i + 1) * stride] - f[(i - 1) * stride]) * (0.5 * inv);
}

ScalarField apply_ddx(const std::vector<double>& f, const Domain& dom) {
    ScalarField out(dom);
    const int nx = dom.nodes_x();
    const int ny = dom.nodes_y();
    const double h = dom.hx();
    for (int j = 0; j < ny; ++j) {
        const double* row = f.data() + static_cast<std::size_t>(j) * nx;
        double* orow = out.v.data() + static_cast<std::size_t>(j) * nx;
        for (int i = 0; i < nx; ++i) {
            orow[i] = d_line(row, nx, 1, i, h);
        }
    }
    return out;
}

ScalarField apply_ddy(const std::vector<double>& f, const Domain& dom) {
    ScalarField out(dom);
    const int nx = dom.nodes_x();
    const int ny = dom.nodes_y();
    const double h = dom.hy();
    for (int i = 0; i < nx; ++i) {
        const double* col = f.data() + i;
        for (int j = 0; j < ny; ++j) {
            out.v[dom.id(i, j)] = d_line(col, ny, nx, j, h);
        }
    }
    return out;
}

}  // namespace

ScalarField ddx(const ScalarField& f, const Domain& dom) { return apply_ddx(f.v, dom); }
ScalarField ddy(const ScalarField& f, const Domain& dom) { return apply_ddy(f.v, dom); }

TensorField sym_grad(const VectorField& u, const Domain& dom) {
    TensorField D(dom);
    const ScalarField d1u1 = apply_ddx(u.u1, dom);
    const ScalarField d1u2 = apply_ddx(u.u2, dom);
    const ScalarField d2u1 = apply_ddy(u.u1, dom);
    const ScalarField d2u2 = apply_ddy(u.u2, dom);
    for (std::size_t k = 0; k < D.size(); ++k) {
        D.t11[k] = 2.0 * d1u1.v[k];
        D.t22[k] = 2.0 * d2u2.v[k];
        const double off = d1u2.v[k] + d2u1.v[k];
        D.t12[k] = off;
        D.t21[k] = off;
    }
    D.symmetric = true;
    return D;
}

TensorField grad_vector(const VectorField& u, const Domain& dom) {
    TensorField G(dom);
    const ScalarField d1u1 = apply_ddx(u.u1, dom);
    const ScalarField d1u2 = apply_ddx(u.u2, dom);
    const ScalarField d2u1 = apply_ddy(u.u1, dom);
    const ScalarField d2u2 = apply_ddy(u.u2, dom);
    G.t11 = d1u1.v;
    G.t12 = d1u2.v;
    G.t21 = d2u1.v;
    G.t22 = d2u2.v;
    return G;
}

VectorField div_tensor(const TensorField& T, const Domain& dom) {
    VectorField d(dom);
    const ScalarField d1t11 = apply_ddx(T.t11, dom);
    const ScalarField d2t21 = apply_ddy(T.t21, dom);
    const ScalarField d1t12 = apply_ddx(T.t12, dom);
    const ScalarField d2t22 = apply_ddy(T.t22, dom);
    for (std::size_t k = 0; k < d.size(); ++k) {
        d.u1[k] = d1t11.v[k] + d2t21.v[k];
        d.u2[k] = d1t12.v[k] + d2t22.v[k];
    }
    return d;
}

ScalarField curl2(const VectorField& u, const Domain& dom) {
    ScalarField w(dom);
    const ScalarField d1u2 = apply_ddx(u.u2, dom);
    const ScalarField d2u1 = apply_ddy(u.u1, dom);
    for (std::size_t k = 0; k < w.size(); ++k) {
        w.v[k] = d1u2.v[k] - d2u1.v[k];
    }
    return w;
}

TensorGradField grad_tensor(const TensorField& T, const Domain& dom) {
    TensorGradField g(dom);
    g.dx11 = apply_ddx(T.t11, dom).v;
    g.dx12 = apply_ddx(T.t12, dom).v;
    g.dx22 = apply_ddx(T.t22, dom).v;
    g.dy11 = apply_ddy(T.t11, dom).v;
    g.dy12 = apply_ddy(T.t12, dom).v;
    g.dy22 = apply_ddy(T.t22, dom).v;
    return g;
}

ScalarField grad_tensor_magnitude(const TensorGradField& g, const Domain& dom) {
    ScalarField m(dom);
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double sx = g.dx11[k] * g.dx11[k] + 2.0 * g.dx12[k] * g.dx12[k] + g.dx22[k] * g.dx22[k];
        const double sy = g.dy11[k] * g.dy11[k] + 2.0 * g.dy12[k] * g.dy12[k] + g.dy22[k] * g.dy22[k];
        m.v[k] = std::sqrt(sx + sy);
    }
    return m;
}

ScalarField tensor_magnitude(const TensorField& T, const Domain& dom) {
    ScalarField m(dom);
    for (std::size_t k = 0; k < m.size(); ++k) {
        m.v[k] = std::sqrt(T.t11[k] * T.t11[k] + T.t12[k] * T.t12[k] + T.t21[k] * T.t21[k] +
                           T.t22[k] * T.t22[k]);
    }
    return m;
}

ScalarField vector_magnitude(const VectorField& u, const Domain& dom) {
    ScalarField m(dom);
    for (std::size_t k = 0; k < m.size(); ++k) {
        m.v[k] = std::hypot(u.u1[k], u.u2[k]);
    }
    return m;
}

namespace {

double lq_of_magnitude(const std::vector<double>& mag, double q, const Domain& dom) {
    if (!(q >= 1.0)) {
        throw std::domain_error("lq_norm: q must be >= 1");
    }
    double s = 0.0;
    for (int j = 0; j < dom.nodes_y(); ++j) {
        for (int i = 0; i < dom.nodes_x(); ++i) {
            s += dom.weight(i, j) * std::pow(mag[dom.id(i, j)], q);
        }
    }
    return std::pow(s, 1.0 / q);
}

}  // namespace

double lq_norm(const ScalarField& f, double q, const Domain& dom) {
    std::vector<double> mag(f.v.size());
    for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(f.v[k]);
    return lq_of_magnitude(mag, q, dom);
}

double lq_norm(const VectorField& u, double q, const Domain& dom) {
    return lq_of_magnitude(vector_magnitude(u, dom).v, q, dom);
}

double lq_norm(const TensorField& T, double q, const Domain& dom) {
    return lq_of_magnitude(tensor_magnitude(T, dom).v, q, dom);
}

double linf_norm(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.v) m = std::max(m, std::abs(v));
    return m;
}

double linf_norm(const TensorField& T, const Domain& dom) {
    return linf_norm(tensor_magnitude(T, dom));
}

double w2q_surrogate(const VectorField& u, const Domain& dom, double q) {
    const TensorField D = sym_grad(u, dom);
    const TensorGradField g = grad_tensor(D, dom);
    return lq_of_magnitude(grad_tensor_magnitude(g, dom).v, q, dom);
}

double w1p_norm(const VectorField& u, const Domain& dom, double p) {
    const TensorField G = grad_vector(u, dom);
    const double a = lq_norm(u, p, dom);
    const double b = lq_norm(G, p, dom);
    return std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
}

double l2_norm(const VectorField& u, const Domain& dom) { return lq_norm(u, 2.0, dom); }

VectorField apply_slip_bc(VectorField u, BcVariant /*variant*/, const Domain& dom) {
    const int mx = dom.Nx + 1;
    const int my = dom.Ny + 1;
    for (int j = 0; j < dom.nodes_y(); ++j) {
        u.u1[dom.id(0, j)] = 0.0;
        u.u1[dom.id(mx, j)] = 0.0;
    }
    for (int i = 0; i < dom.nodes_x(); ++i) {
        u.u2[dom.id(i, 0)] = 0.0;
        u.u2[dom.id(i, my)] = 0.0;
    }
    // Corners carry both constraints.
    for (int j : {0, my}) {
        for (int i : {0, mx}) {
            u.u1[dom.id(i, j)] = 0.0;
            u.u2[dom.id(i, j)] = 0.0;
        }
    }
    u.tangency_enforced = true;
    return u;
}

namespace {

void dump_csv(const std::string& path, const Domain& dom,
              const std::vector<const std::vector<double>*>& cols, const char* header) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (fp == nullptr) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    std::fprintf(fp, "%s\n", header);
    for (int j = 0; j < dom.nodes_y(); ++j) {
        for (int i = 0; i < dom.nodes_x(); ++i) {
            const std::size_t k = dom.id(i, j);
            std::fprintf(fp, "%.17g,%.17g", dom.x(i), dom.y(j));
            for (const auto* c : cols) {
                std::fprintf(fp, ",%.17g", (*c)[k]);
            }
            std::fprintf(fp, "\n");
        }
    }
    std::fclose(fp);
}

}  // namespace

void dump_vector_csv(const std::string& path, const VectorField& u, const Domain& dom) {
    dump_csv(path, dom, {&u.u1, &u.u2}, "x,y,u1,u2");
}

void dump_tensor_csv(const std::string& path, const TensorField& T, const Domain& dom) {
    dump_csv(path, dom, {&T.t11, &T.t12, &T.t22}, "x,y,d11,d12,d22");
}

}  // namespace pslip
