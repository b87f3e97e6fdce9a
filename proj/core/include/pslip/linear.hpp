#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pslip/grid.hpp"
#include "pslip/random_fields.hpp"

namespace pslip {

/// Thrown when an iterative solve fails; carries the residual history.
class SolveError : public std::runtime_error {
  public:
    SolveError(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

/// Map from (component, node) to unknown index. Tangency is an essential
/// constraint: u1 is pinned on the x-faces, u2 on the y-faces, both at the
/// corners. Tangential boundary values remain unknowns.
struct DofMap {
    Domain dom;
    std::vector<int> dof_u1, dof_u2;  // per node, -1 where pinned
    int n_dofs = 0;

    static DofMap build(const Domain& dom);

    std::vector<double> gather(const VectorField& u) const;
    VectorField scatter(std::span<const double> x) const;
    /// Trapezoid node weight per dof (lumped load weights).
    std::vector<double> lumped_weights() const;
};

/// Shape-function derivative tables for one rectangular cell, evaluated at
/// the 2x2 Gauss points. Local node order: (0,0),(1,0),(1,1),(0,1).
struct GaussCell {
    double dndx[4][4];  // [gauss][local node]
    double dndy[4][4];
    double w = 0.0;  // quadrature weight per Gauss point = hx*hy/4

    static GaussCell build(double hx, double hy);
};

/// Sparse symmetric operator of the auxiliary linear slip problem
/// -div(Du) = F, assembled cell-wise from the variational form. The
/// NavierStress variant uses (1/2) int D(u):D(v); the BardosVorticity
/// variant uses int [w(u) w(v) + 2 (div u)(div v)], whose natural boundary
/// condition is vanishing vorticity. On the rectangle the two forms agree
/// on the tangent space, which the tests measure.
struct LinearOperator {
    DofMap dofs;
    BcVariant variant = BcVariant::NavierStress;
    std::vector<std::size_t> row_ptr;
    std::vector<int> col_idx;
    std::vector<double> vals;
    std::vector<double> diag;
    std::vector<double> weights;  // lumped trapezoid weight per dof

    int size() const { return dofs.n_dofs; }
    void apply(std::span<const double> x, std::span<double> y) const;
    /// Load vector entries w(node) * f_comp(node).
    std::vector<double> weighted_load(const VectorField& f) const;
    /// Unweighted action W^{-1} A u as a field; approximates
    /// -Lap u - grad(div u) at interior nodes for smooth tangent u.
    VectorField action_field(const VectorField& u) const;
    /// max |A - A^T| over stored entries (0 by construction).
    double max_asymmetry() const;
    /// Coordinate-format text dump: "row col value" per line.
    void dump_coordinate(const std::string& path) const;
};

LinearOperator assemble(const Domain& dom, BcVariant variant);

struct LinSolveInfo {
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = true;
};

/// Preconditioned (symmetric Gauss-Seidel) conjugate gradients down to a
/// relative algebraic residual <= tol. Throws SolveError past max_iter.
/// The returned field has the slip constraints enforced (pinned dofs zero).
VectorField solve_linear(const LinearOperator& op, const VectorField& F, double tol,
                         const VectorField* warm_start = nullptr, LinSolveInfo* info = nullptr,
                         int max_iter = 0);

/// Raw-vector CG used internally and by tests.
std::vector<double> cg_solve(const LinearOperator& op, std::span<const double> b, double tol,
                             std::span<const double> x0, LinSolveInfo* info, int max_iter);

/// Empirical constants of the linear theory on a fixed grid. All values are
/// suprema over sampled fields, hence lower bounds of the discrete constants.
struct ConstantsEstimate {
    double Cq_disc = 0.0;    ///< sup ||grad D u||_q / ||F||_q over sampled F
    double Chat_disc = 0.0;  ///< sup ||Dv||_inf / ||grad D v||_q
    double korn_disc = 0.0;  ///< sup ||grad v||_p / ||Dv||_p
    double q = 2.0;
    double p = 2.0;
    int samples = 0;
    std::string method;
};

/// Randomized lower bound of the operator constant C_q, refined by a
/// coordinate-ascent pass over the best sample's mode coefficients.
double estimate_Cq(const LinearOperator& op, double q, int n_samples, std::uint64_t seed);

/// sup ||Dv||_inf / ||grad Dv||_q over tangent samples; requires q > 2.
double estimate_Chat(const Domain& dom, double q, int n_samples, std::uint64_t seed);

/// sup ||grad v||_p / ||Dv||_p over tangent samples.
double estimate_korn(const Domain& dom, double p, int n_samples, std::uint64_t seed);

/// Convenience bundle of the three estimates on one grid.
ConstantsEstimate estimate_constants(const Domain& dom, BcVariant variant, double q, double p,
                                     int n_samples, std::uint64_t seed);

}  // namespace pslip
