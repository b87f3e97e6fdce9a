#pragma once

#include <vector>

#include "pslip/solver.hpp"

namespace pslip {

/// Decreasing regularization schedule mu_k = mu0_eff * factor^k,
/// k = 0 .. steps-1. In data_scaled mode mu0_eff = mu0 * ||f||_q^{2/(p-1)},
/// which makes the whole path equivariant under the exact scaling law
/// u(lambda f) = lambda^{1/(p-1)} u(f) of the singular problem, so the
/// computed limit respects the law up to solver tolerances.
struct ContinuationSchedule {
    double mu0 = 1.0;
    double factor = 0.25;
    int steps = 8;
    bool warm_start = true;
    enum class Mu0Mode { absolute, data_scaled };
    Mu0Mode mu0_mode = Mu0Mode::absolute;

    void validate() const;
    double mu0_effective(double p, double fnorm_q) const;
};

struct ContinuationResult {
    VectorField u0;      ///< final iterate, the mu = 0 candidate
    SolveReport report;  ///< last step's report with the continuation trace
    double final_mu = 0.0;
};

/// Solves the fixed-point problem along the schedule (prob.params.mu is
/// ignored), warm-starting each step from the previous solution, and
/// returns the final iterate as the singular-limit candidate. Any step's
/// non-convergence aborts with the partial trace attached.
ContinuationResult run_continuation(const SlipProblem& prob, const ContinuationSchedule& sched,
                                    const ConstantsEstimate& consts, double tol_fp,
                                    int max_iter = 200, const FixedPointOptions& opts = {});

/// Weak residual of the mu = 0 form, using the guarded product B(Du)Du.
double singular_weak_residual(const VectorField& u0, const SlipProblem& prob, int n_test,
                              std::uint64_t seed = 424242);

/// For each lambda, solves with data lambda*f (data-scaled schedule) and
/// compares against lambda^{1/(p-1)} times the base solution; returns the
/// maximal relative L^2 deviation. Exact in the continuum at mu = 0, so the
/// result measures solver and iteration error only.
double homogeneity_check(const SlipProblem& prob, const std::vector<double>& lambdas,
                         const ContinuationSchedule& sched, const ConstantsEstimate& consts,
                         double tol_fp, int max_iter = 200, const FixedPointOptions& opts = {});

}  // namespace pslip
