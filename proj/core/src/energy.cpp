#include "pslip/energy.hpp"

#include <cmath>
#include <deque>

namespace pslip {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

struct CellDofs {
    int d[8];  // [u1_0..u1_3, u2_0..u2_3], -1 where pinned
};

// Iterate cells, handing the callback the local dof indices.
template <typename F>
void for_each_cell(const DofMap& dofs, F&& fn) {
    const Domain& dom = dofs.dom;
    const int di[4] = {0, 1, 1, 0};
    const int dj[4] = {0, 0, 1, 1};
    for (int cj = 0; cj <= dom.Ny; ++cj) {
        for (int ci = 0; ci <= dom.Nx; ++ci) {
            CellDofs cd;
            for (int a = 0; a < 4; ++a) {
                const std::size_t k = dom.id(ci + di[a], cj + dj[a]);
                cd.d[a] = dofs.dof_u1[k];
                cd.d[4 + a] = dofs.dof_u2[k];
            }
            fn(cd);
        }
    }
}

inline SymMat2 strain_at(const GaussCell& g, int q, const CellDofs& cd,
                         std::span<const double> x) {
    double u1[4], u2[4];
    for (int a = 0; a < 4; ++a) {
        u1[a] = cd.d[a] >= 0 ? x[cd.d[a]] : 0.0;
        u2[a] = cd.d[4 + a] >= 0 ? x[cd.d[4 + a]] : 0.0;
    }
    SymMat2 D;
    double dxu1 = 0.0, dyu1 = 0.0, dxu2 = 0.0, dyu2 = 0.0;
    for (int a = 0; a < 4; ++a) {
        dxu1 += g.dndx[q][a] * u1[a];
        dyu1 += g.dndy[q][a] * u1[a];
        dxu2 += g.dndx[q][a] * u2[a];
        dyu2 += g.dndy[q][a] * u2[a];
    }
    D.a11 = 2.0 * dxu1;
    D.a22 = 2.0 * dyu2;
    D.a12 = dxu2 + dyu1;
    return D;
}

}  // namespace

double EnergyFunctional::j0() const {
    const double mu = params.mu;
    return std::pow(mu, 0.5 * params.p) * dom.area() / (2.0 * params.p);
}

EnergyFunctional make_energy(const Domain& dom, const StressParams& params, const VectorField& f,
                             BcVariant variant) {
    params.validate();
    EnergyFunctional e{dom, params, f, assemble(dom, variant), GaussCell::build(dom.hx(), dom.hy()),
                       {}};
    e.load = e.op.weighted_load(f);
    return e;
}

double energy_dofs(const EnergyFunctional& e, std::span<const double> x) {
    const double p = e.params.p;
    const double mu = e.params.mu;
    double bulk = 0.0;
    for_each_cell(e.op.dofs, [&](const CellDofs& cd) {
        for (int q = 0; q < 4; ++q) {
            const SymMat2 D = strain_at(e.gauss, q, cd, x);
            bulk += e.gauss.w * std::pow(mu + sym_norm2(D), 0.5 * p);
        }
    });
    return bulk / (2.0 * p) - dot(e.load, x);
}

std::vector<double> energy_grad_dofs(const EnergyFunctional& e, std::span<const double> x) {
    std::vector<double> g(x.size(), 0.0);
    for_each_cell(e.op.dofs, [&](const CellDofs& cd) {
        for (int q = 0; q < 4; ++q) {
            const SymMat2 D = strain_at(e.gauss, q, cd, x);
            const SymMat2 P = b_times_d(D, e.params);
            for (int a = 0; a < 4; ++a) {
                if (cd.d[a] >= 0) {
                    g[cd.d[a]] +=
                        e.gauss.w * (P.a11 * e.gauss.dndx[q][a] + P.a12 * e.gauss.dndy[q][a]);
                }
                if (cd.d[4 + a] >= 0) {
                    g[cd.d[4 + a]] +=
                        e.gauss.w * (P.a12 * e.gauss.dndx[q][a] + P.a22 * e.gauss.dndy[q][a]);
                }
            }
        }
    });
    for (std::size_t k = 0; k < g.size(); ++k) g[k] -= e.load[k];
    return g;
}

double energy(const EnergyFunctional& e, const VectorField& u) {
    return energy_dofs(e, e.op.dofs.gather(u));
}

VectorField energy_grad(const EnergyFunctional& e, const VectorField& u) {
    return e.op.dofs.scatter(energy_grad_dofs(e, e.op.dofs.gather(u)));
}

MinimizeResult minimize(const EnergyFunctional& e, double tol_g, int max_iter,
                        const VectorField* start) {
    const int n = e.op.size();
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    if (start != nullptr) x = e.op.dofs.gather(*start);

    const double load_norm = std::sqrt(dot(e.load, e.load));
    const double gtol = tol_g * (load_norm > 0.0 ? load_norm : 1.0);

    std::vector<double> g = energy_grad_dofs(e, x);
    double gnorm = std::sqrt(dot(g, g));
    double fx = energy_dofs(e, x);

    MinimizeResult res;
    res.grad_history.push_back(gnorm);

    // Track the best iterate; near the floating-point floor the line search
    // runs on energy differences below resolution and can wander.
    std::vector<double> x_best = x;
    double g_best = gnorm;
    double g_ref = gnorm;
    int since_improved = 0;

    // Preconditioner: H0 r = A^{-1} r via an inner CG solve.
    const auto precond = [&](std::span<const double> r) {
        return cg_solve(e.op, r, 1e-12, {}, nullptr, 0);
    };

    const int memory = 8;
    std::deque<std::vector<double>> s_list, y_list;
    std::deque<double> rho_list;

    int it = 0;
    while (gnorm > gtol && it < max_iter) {
        // Two-loop recursion with the operator preconditioner as H0.
        std::vector<double> q(g);
        std::vector<double> alpha(s_list.size());
        for (int i = static_cast<int>(s_list.size()) - 1; i >= 0; --i) {
            alpha[i] = rho_list[i] * dot(s_list[i], q);
            for (int k = 0; k < n; ++k) q[k] -= alpha[i] * y_list[i][k];
        }
        std::vector<double> d = precond(q);
        for (std::size_t i = 0; i < s_list.size(); ++i) {
            const double beta = rho_list[i] * dot(y_list[i], d);
            for (int k = 0; k < n; ++k) d[k] += (alpha[i] - beta) * s_list[i][k];
        }
        for (int k = 0; k < n; ++k) d[k] = -d[k];

        double gd = dot(g, d);
        if (!(gd < 0.0)) {
            // Not a descent direction; drop the memory and fall back to the
            // preconditioned gradient.
            s_list.clear();
            y_list.clear();
            rho_list.clear();
            d = precond(g);
            for (int k = 0; k < n; ++k) d[k] = -d[k];
            gd = dot(g, d);
        }

        // Backtracking Armijo line search.
        double t = 1.0;
        const double c1 = 1e-4;
        std::vector<double> xt(static_cast<std::size_t>(n));
        double ft = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            for (int k = 0; k < n; ++k) xt[k] = x[k] + t * d[k];
            ft = energy_dofs(e, xt);
            if (ft <= fx + c1 * t * gd) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // Steepest-descent fallback with a conservative step.
            for (int k = 0; k < n; ++k) d[k] = -g[k];
            t = 1.0 / std::max(gnorm, 1.0);
            for (int ls = 0; ls < 60 && !accepted; ++ls) {
                for (int k = 0; k < n; ++k) xt[k] = x[k] + t * d[k];
                ft = energy_dofs(e, xt);
                if (ft < fx) accepted = true;
                else t *= 0.5;
            }
            if (!accepted) break;  // stagnation: gradient below resolvable scale
        }

        std::vector<double> g_new = energy_grad_dofs(e, xt);
        std::vector<double> s(static_cast<std::size_t>(n)), yv(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            s[k] = xt[k] - x[k];
            yv[k] = g_new[k] - g[k];
        }
        const double sy = dot(s, yv);
        if (sy > 1e-300) {
            if (static_cast<int>(s_list.size()) == memory) {
                s_list.pop_front();
                y_list.pop_front();
                rho_list.pop_front();
            }
            s_list.push_back(std::move(s));
            y_list.push_back(std::move(yv));
            rho_list.push_back(1.0 / sy);
        }
        x.swap(xt);
        g.swap(g_new);
        fx = ft;
        gnorm = std::sqrt(dot(g, g));
        res.grad_history.push_back(gnorm);
        ++it;

        if (gnorm < g_best) {
            g_best = gnorm;
            x_best = x;
        }
        if (gnorm < 0.95 * g_ref) {
            g_ref = gnorm;
            since_improved = 0;
        } else if (++since_improved > 25) {
            break;  // stagnation at the attainable floor
        }
    }

    if (g_best < gnorm) {
        x = x_best;
        gnorm = g_best;
    }
    res.iterations = it;
    res.grad_norm = gnorm;
    res.converged = gnorm <= gtol;
    if (!res.converged && it >= max_iter) {
        char msg[128];
        std::snprintf(msg, sizeof(msg), "minimize: max_iter reached, |g| = %.3e (tol %.3e)",
                      gnorm, gtol);
        throw SolveError(msg, res.grad_history);
    }
    res.u = e.op.dofs.scatter(x);
    return res;
}

}  // namespace pslip
