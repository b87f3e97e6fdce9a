#pragma once

#include <vector>

#include "pslip/grid.hpp"
#include "pslip/linear.hpp"
#include "pslip/stress.hpp"

namespace pslip {

/// Convex energy whose first-order conditions are the discrete weak form:
///
///   J(u) = (1/(2p)) sum_cells sum_gauss w (mu + |Du|^2)^{p/2} - sum w f.u
///
/// The directional derivative along a tangent v is
/// (1/2) sum w B(Du) Du : Dv - sum w f.v, so stationarity reproduces the
/// weak formulation, and for p = 2 the Hessian is exactly the assembled
/// linear slip operator.
struct EnergyFunctional {
    Domain dom;
    StressParams params;
    VectorField f;
    LinearOperator op;  // p = 2 Hessian; doubles as the minimizer's preconditioner
    GaussCell gauss;
    std::vector<double> load;  // lumped f restricted to unknowns

    double j0() const;  ///< J(0) = mu^{p/2} |Omega| / (2p)
};

EnergyFunctional make_energy(const Domain& dom, const StressParams& params, const VectorField& f,
                             BcVariant variant = BcVariant::NavierStress);

double energy(const EnergyFunctional& e, const VectorField& u);

/// Discrete gradient: the Euclidean representer of the directional
/// derivative over the unknown dofs (entries at pinned components are zero).
VectorField energy_grad(const EnergyFunctional& e, const VectorField& u);

/// Gradient restricted to the unknown vector (used by the minimizer).
std::vector<double> energy_grad_dofs(const EnergyFunctional& e, std::span<const double> x);
double energy_dofs(const EnergyFunctional& e, std::span<const double> x);

struct MinimizeResult {
    VectorField u;
    int iterations = 0;
    double grad_norm = 0.0;
    bool converged = false;
    std::vector<double> grad_history;
};

/// Limited-memory quasi-Newton descent in the tangency-constrained space,
/// preconditioned by the assembled linear operator. Stops when
/// ||grad||_2 <= tol_g * ||load||_2. Falls back to a damped gradient step if
/// the line search fails; throws SolveError with the gradient trace past
/// max_iter.
MinimizeResult minimize(const EnergyFunctional& e, double tol_g, int max_iter,
                        const VectorField* start = nullptr);

}  // namespace pslip
