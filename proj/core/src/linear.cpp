#include "pslip/linear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace pslip {

DofMap DofMap::build(const Domain& dom) {
    DofMap m;
    m.dom = dom;
    m.dof_u1.assign(dom.num_nodes(), -1);
    m.dof_u2.assign(dom.num_nodes(), -1);
    int next = 0;
    const int mx = dom.Nx + 1;
    const int my = dom.Ny + 1;
    for (int j = 0; j < dom.nodes_y(); ++j) {
        for (int i = 0; i < dom.nodes_x(); ++i) {
            const std::size_t k = dom.id(i, j);
            if (i != 0 && i != mx) m.dof_u1[k] = next++;
            if (j != 0 && j != my) m.dof_u2[k] = next++;
        }
    }
    m.n_dofs = next;
    return m;
}

std::vector<double> DofMap::gather(const VectorField& u) const {
    std::vector<double> x(static_cast<std::size_t>(n_dofs), 0.0);
    for (std::size_t k = 0; k < dom.num_nodes(); ++k) {
        if (dof_u1[k] >= 0) x[dof_u1[k]] = u.u1[k];
        if (dof_u2[k] >= 0) x[dof_u2[k]] = u.u2[k];
    }
    return x;
}

VectorField DofMap::scatter(std::span<const double> x) const {
    VectorField u(dom);
    for (std::size_t k = 0; k < dom.num_nodes(); ++k) {
        if (dof_u1[k] >= 0) u.u1[k] = x[dof_u1[k]];
        if (dof_u2[k] >= 0) u.u2[k] = x[dof_u2[k]];
    }
    u.tangency_enforced = true;
    return u;
}

std::vector<double> DofMap::lumped_weights() const {
    std::vector<double> w(static_cast<std::size_t>(n_dofs), 0.0);
    for (int j = 0; j < dom.nodes_y(); ++j) {
        for (int i = 0; i < dom.nodes_x(); ++i) {
            const std::size_t k = dom.id(i, j);
            const double wk = dom.weight(i, j);
            if (dof_u1[k] >= 0) w[dof_u1[k]] = wk;
            if (dof_u2[k] >= 0) w[dof_u2[k]] = wk;
        }
    }
    return w;
}

GaussCell GaussCell::build(double hx, double hy) {
    GaussCell g;
    g.w = 0.25 * hx * hy;
    const double s = 1.0 / std::sqrt(3.0);
    const double gp[4][2] = {{-s, -s}, {s, -s}, {s, s}, {-s, s}};
    for (int q = 0; q < 4; ++q) {
        const double xi = gp[q][0];
        const double eta = gp[q][1];
        // dN/dxi, dN/deta of the bilinear shapes; chain rule to physical.
        const double dxi[4] = {-0.25 * (1 - eta), 0.25 * (1 - eta), 0.25 * (1 + eta),
                               -0.25 * (1 + eta)};
        const double deta[4] = {-0.25 * (1 - xi), -0.25 * (1 + xi), 0.25 * (1 + xi),
                                0.25 * (1 - xi)};
        for (int a = 0; a < 4; ++a) {
            g.dndx[q][a] = dxi[a] * 2.0 / hx;
            g.dndy[q][a] = deta[a] * 2.0 / hy;
        }
    }
    return g;
}

namespace {

// 8x8 element stiffness; local dof order [u1_0..u1_3, u2_0..u2_3].
// Filled symmetric: upper triangle computed, lower mirrored bitwise.
void element_matrix(const GaussCell& g, BcVariant variant, double ke[8][8]) {
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) ke[a][b] = 0.0;
    for (int q = 0; q < 4; ++q) {
        // Strain rows per local dof: (d11, d12, d22) for Navier,
        // (omega, div) for Bardos.
        double r1[8], r2[8], r3[8];
        for (int a = 0; a < 4; ++a) {
            const double dx = g.dndx[q][a];
            const double dy = g.dndy[q][a];
            if (variant == BcVariant::NavierStress) {
                // u1 dof: D11 = 2 dx, D12 = dy, D22 = 0
                r1[a] = 2.0 * dx;
                r2[a] = dy;
                r3[a] = 0.0;
                // u2 dof: D11 = 0, D12 = dx, D22 = 2 dy
                r1[4 + a] = 0.0;
                r2[4 + a] = dx;
                r3[4 + a] = 2.0 * dy;
            } else {
                // u1 dof: omega = -dy, div = dx
                r1[a] = -dy;
                r2[a] = dx;
                r3[a] = 0.0;
                // u2 dof: omega = dx, div = dy
                r1[4 + a] = dx;
                r2[4 + a] = dy;
                r3[4 + a] = 0.0;
            }
        }
        for (int a = 0; a < 8; ++a) {
            for (int b = a; b < 8; ++b) {
                double v;
                if (variant == BcVariant::NavierStress) {
                    // (1/2) D(u):D(v) with the off-diagonal counted twice.
                    v = 0.5 * (r1[a] * r1[b] + 2.0 * r2[a] * r2[b] + r3[a] * r3[b]);
                } else {
                    // omega(u) omega(v) + 2 div(u) div(v)
                    v = r1[a] * r1[b] + 2.0 * r2[a] * r2[b];
                }
                ke[a][b] += g.w * v;
            }
        }
    }
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < a; ++b) ke[a][b] = ke[b][a];
}

}  // namespace

LinearOperator assemble(const Domain& dom, BcVariant variant) {
    LinearOperator op;
    op.dofs = DofMap::build(dom);
    op.variant = variant;
    op.weights = op.dofs.lumped_weights();

    const GaussCell g = GaussCell::build(dom.hx(), dom.hy());
    double ke[8][8];
    element_matrix(g, variant, ke);

    const int n = op.dofs.n_dofs;
    std::vector<std::map<int, double>> rows(static_cast<std::size_t>(n));

    const int di[4] = {0, 1, 1, 0};
    const int dj[4] = {0, 0, 1, 1};
    for (int cj = 0; cj <= dom.Ny; ++cj) {
        for (int ci = 0; ci <= dom.Nx; ++ci) {
            int dofs[8];
            for (int a = 0; a < 4; ++a) {
                const std::size_t k = dom.id(ci + di[a], cj + dj[a]);
                dofs[a] = op.dofs.dof_u1[k];
                dofs[4 + a] = op.dofs.dof_u2[k];
            }
            for (int a = 0; a < 8; ++a) {
                if (dofs[a] < 0) continue;
                auto& row = rows[dofs[a]];
                for (int b = 0; b < 8; ++b) {
                    if (dofs[b] < 0) continue;
                    row[dofs[b]] += ke[a][b];
                }
            }
        }
    }

    op.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    std::size_t nnz = 0;
    for (int r = 0; r < n; ++r) {
        nnz += rows[r].size();
        op.row_ptr[r + 1] = nnz;
    }
    op.col_idx.reserve(nnz);
    op.vals.reserve(nnz);
    op.diag.assign(static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < n; ++r) {
        for (const auto& [c, v] : rows[r]) {
            op.col_idx.push_back(c);
            op.vals.push_back(v);
            if (c == r) op.diag[r] = v;
        }
    }
    return op;
}

void LinearOperator::apply(std::span<const double> x, std::span<double> y) const {
    const int n = size();
    for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
            s += vals[k] * x[col_idx[k]];
        }
        y[r] = s;
    }
}

std::vector<double> LinearOperator::weighted_load(const VectorField& f) const {
    std::vector<double> b(static_cast<std::size_t>(size()), 0.0);
    const Domain& dom = dofs.dom;
    for (int j = 0; j < dom.nodes_y(); ++j) {
        for (int i = 0; i < dom.nodes_x(); ++i) {
            const std::size_t k = dom.id(i, j);
            const double w = dom.weight(i, j);
            if (dofs.dof_u1[k] >= 0) b[dofs.dof_u1[k]] = w * f.u1[k];
            if (dofs.dof_u2[k] >= 0) b[dofs.dof_u2[k]] = w * f.u2[k];
        }
    }
    return b;
}

VectorField LinearOperator::action_field(const VectorField& u) const {
    const auto x = dofs.gather(u);
    std::vector<double> y(x.size());
    apply(x, y);
    for (std::size_t k = 0; k < y.size(); ++k) y[k] /= weights[k];
    return dofs.scatter(y);
}

double LinearOperator::max_asymmetry() const {
    double m = 0.0;
    const int n = size();
    for (int r = 0; r < n; ++r) {
        for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
            const int c = col_idx[k];
            // binary search for (c,r)
            const auto beg = col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[c]);
            const auto end = col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[c + 1]);
            const auto it = std::lower_bound(beg, end, r);
            double vt = 0.0;
            if (it != end && *it == r) {
                vt = vals[static_cast<std::size_t>(it - col_idx.begin())];
            }
            m = std::max(m, std::abs(vals[k] - vt));
        }
    }
    return m;
}

void LinearOperator::dump_coordinate(const std::string& path) const {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (fp == nullptr) throw std::runtime_error("cannot open for writing: " + path);
    const int n = size();
    for (int r = 0; r < n; ++r) {
        for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
            std::fprintf(fp, "%d %d %.17g\n", r, col_idx[k], vals[k]);
        }
    }
    std::fclose(fp);
}

namespace {

// Symmetric Gauss-Seidel preconditioner: z = (D+U)^{-1} D (D+L)^{-1} r.
void sgs_apply(const LinearOperator& op, std::span<const double> r, std::span<double> z) {
    const int n = op.size();
    // forward solve (D+L) y = r
    for (int i = 0; i < n; ++i) {
        double s = r[i];
        for (std::size_t k = op.row_ptr[i]; k < op.row_ptr[i + 1]; ++k) {
            const int c = op.col_idx[k];
            if (c < i) s -= op.vals[k] * z[c];
        }
        z[i] = s / op.diag[i];
    }
    // scale by D
    for (int i = 0; i < n; ++i) z[i] *= op.diag[i];
    // backward solve (D+U) z = y
    for (int i = n - 1; i >= 0; --i) {
        double s = z[i];
        for (std::size_t k = op.row_ptr[i]; k < op.row_ptr[i + 1]; ++k) {
            const int c = op.col_idx[k];
            if (c > i) s -= op.vals[k] * z[c];
        }
        z[i] = s / op.diag[i];
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

}  // namespace

std::vector<double> cg_solve(const LinearOperator& op, std::span<const double> b, double tol,
                             std::span<const double> x0, LinSolveInfo* info, int max_iter) {
    const int n = op.size();
    std::vector<double> x(b.size(), 0.0);
    if (!x0.empty()) x.assign(x0.begin(), x0.end());
    const double bnorm = std::sqrt(dot(b, b));
    if (info != nullptr) *info = LinSolveInfo{};
    if (bnorm == 0.0 && x0.empty()) {
        return x;  // trivial kernel: F = 0 gives u = 0
    }
    if (max_iter <= 0) max_iter = 40 * n + 200;

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> tmp(static_cast<std::size_t>(n));
    op.apply(x, tmp);
    for (int i = 0; i < n; ++i) r[i] -= tmp[i];
    const double stop = tol * (bnorm > 0.0 ? bnorm : 1.0);

    std::vector<double> z(static_cast<std::size_t>(n));
    sgs_apply(op, r, z);
    std::vector<double> p(z);
    double rz = dot(r, z);
    double rnorm = std::sqrt(dot(r, r));
    std::vector<double> history{rnorm};

    int it = 0;
    while (rnorm > stop && it < max_iter) {
        op.apply(p, tmp);
        const double pap = dot(p, tmp);
        if (!(pap > 0.0)) {
            throw SolveError("cg_solve: non-positive curvature, operator not SPD?", history);
        }
        const double alpha = rz / pap;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * tmp[i];
        }
        sgs_apply(op, r, z);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        rnorm = std::sqrt(dot(r, r));
        history.push_back(rnorm);
        ++it;
    }
    if (info != nullptr) {
        info->iterations = it;
        info->rel_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
        info->converged = rnorm <= stop;
    }
    if (rnorm > stop) {
        throw SolveError("cg_solve: no convergence after " + std::to_string(it) + " iterations",
                         history);
    }
    return x;
}

VectorField solve_linear(const LinearOperator& op, const VectorField& F, double tol,
                         const VectorField* warm_start, LinSolveInfo* info, int max_iter) {
    if (!(tol > 0.0)) throw std::domain_error("solve_linear: tol must be positive");
    const auto b = op.weighted_load(F);
    std::vector<double> x0;
    if (warm_start != nullptr) x0 = op.dofs.gather(*warm_start);
    const auto x = cg_solve(op, b, tol, x0, info, max_iter);
    return op.dofs.scatter(x);
}

double estimate_Cq(const LinearOperator& op, double q, int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::domain_error("estimate_Cq: need n_samples >= 1");
    const Domain& dom = op.dofs.dom;
    Rng rng(seed);
    const DataBasis basis(dom, 2);
    const double cg_tol = 1e-10;

    const auto ratio_of = [&](std::span<const double> coeffs) {
        const VectorField F = basis.assemble(coeffs);
        const double fq = lq_norm(F, q, dom);
        if (fq < 1e-14) return 0.0;
        const VectorField u = solve_linear(op, F, cg_tol);
        return w2q_surrogate(u, dom, q) / fq;
    };

    double best = 0.0;
    std::vector<double> best_coeffs;
    for (int s = 0; s < n_samples; ++s) {
        const auto c = basis.random_coeffs(rng, 1.0);
        const double r = ratio_of(c);
        if (r > best) {
            best = r;
            best_coeffs = c;
        }
    }
    // One coordinate-ascent sweep from the best sample.
    if (!best_coeffs.empty()) {
        const double base = *std::max_element(best_coeffs.begin(), best_coeffs.end(),
                                              [](double a, double b) {
                                                  return std::abs(a) < std::abs(b);
                                              });
        const double step = 0.3 * std::max(std::abs(base), 0.1);
        for (std::size_t i = 0; i < best_coeffs.size(); ++i) {
            for (const double d : {step, -step}) {
                auto trial = best_coeffs;
                trial[i] += d;
                const double r = ratio_of(trial);
                if (r > best) {
                    best = r;
                    best_coeffs = trial;
                }
            }
        }
    }
    return best;
}

double estimate_Chat(const Domain& dom, double q, int n_samples, std::uint64_t seed) {
    if (!(q > 2.0)) {
        throw std::domain_error("estimate_Chat: embedding requires q > n = 2");
    }
    Rng rng(seed);
    double best = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        const VectorField v = random_tangent_field(dom, rng, 3, 1.0);
        const double den = w2q_surrogate(v, dom, q);
        if (den < 1e-14) continue;
        const TensorField D = sym_grad(v, dom);
        best = std::max(best, linf_norm(D, dom) / den);
    }
    return best;
}

double estimate_korn(const Domain& dom, double p, int n_samples, std::uint64_t seed) {
    if (!(p > 1.0 && p <= 2.0)) {
        throw std::domain_error("estimate_korn: p must lie in (1,2]");
    }
    Rng rng(seed);
    double best = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        const VectorField v = random_tangent_field(dom, rng, 3, 1.0);
        const double den = lq_norm(sym_grad(v, dom), p, dom);
        if (den < 1e-14) continue;
        best = std::max(best, lq_norm(grad_vector(v, dom), p, dom) / den);
    }
    return best;
}

ConstantsEstimate estimate_constants(const Domain& dom, BcVariant variant, double q, double p,
                                     int n_samples, std::uint64_t seed) {
    ConstantsEstimate c;
    c.q = q;
    c.p = p;
    c.samples = n_samples;
    c.method = "randomized lower bound, trig samples + coordinate ascent";
    const LinearOperator op = assemble(dom, variant);
    c.Cq_disc = estimate_Cq(op, q, n_samples, seed);
    c.Chat_disc = estimate_Chat(dom, q, n_samples, seed + 1);
    c.korn_disc = estimate_korn(dom, p, n_samples, seed + 2);
    return c;
}

}  // namespace pslip
