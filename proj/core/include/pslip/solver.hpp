#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pslip/exponents.hpp"
#include "pslip/grid.hpp"
#include "pslip/linear.hpp"
#include "pslip/stress.hpp"

namespace pslip {

/// Full problem description: geometry, exponents, data and BC variant.
struct SlipProblem {
    Domain dom;
    StressParams params;  // p, mu
    double q = 4.0;       // integrability exponent; q > n = 2 on the strong path
    VectorField f;
    BcVariant variant = BcVariant::NavierStress;

    void validate() const;
};

struct IterateRecord {
    int k = 0;
    double surrogate = 0.0;  // ||grad D u_k||_q
    double increment_l2 = 0.0;
    double increment_w1p = 0.0;
    double rel_increment_w1p = 0.0;
    double theta = 1.0;  // damping used for this update
    bool within_ball = true;
    bool map_estimate_ok = true;  // per-call linear estimate diagnostic
};

struct ContinuationStep {
    double mu = 0.0;
    double surrogate = 0.0;
    double increment_w1p = 0.0;  // distance to the previous step's solution
    double nonlinear_diff_ratio = 0.0;  // ||B(Du)Du - B(Du0)Du0||_p' / ||Du-Du0||_p^{p-1}
    int fp_iterations = 0;
};

struct SolveReport {
    // problem echo
    double p = 2.0;
    double mu = 0.0;
    double q = 4.0;
    int nx = 0, ny = 0;
    std::string bc;
    std::string provenance;

    // constants and ball
    GateResult gate;
    double Cq_disc = 0.0, Chat_disc = 0.0, korn_disc = 0.0;
    double fnorm_q = 0.0;
    double ball_R = 0.0;
    double radius_mu_exponent = 0.0;
    bool all_iterates_in_ball = true;

    // iteration
    int steps = 0;        // applications of the solution map
    int corrections = 0;  // steps that changed the iterate
    bool converged = false;
    bool increments_monotone = true;  // flags non-monotone increment decay
    double tol_fp = 0.0;
    std::vector<IterateRecord> iterates;

    // residuals of the final iterate
    double strong_res = 0.0;
    double weak_res = 0.0;

    // optional continuation trace
    std::vector<ContinuationStep> continuation;
    double final_mu = 0.0;
    double singular_weak_res = -1.0;

    double wall_seconds = 0.0;
};

/// JSON serialization; timing fields are omitted when include_timings is
/// false so reports can be compared byte-for-byte across runs.
std::string report_to_json(const SolveReport& r, bool include_timings = true);

struct FixedPointOptions {
    double cg_tol = 1e-12;
    double theta = 1.0;          // initial damping (1 = undamped)
    bool adapt_damping = true;   // halve theta when increments grow
    int max_cg_iter = 0;         // 0 = default
    int n_weak_test = 12;        // probes for the weak residual
    std::uint64_t weak_seed = 424242;
    bool compute_residuals = true;
};

class FixedPointFailure : public std::runtime_error {
  public:
    FixedPointFailure(const std::string& what, SolveReport rep)
        : std::runtime_error(what), report(std::move(rep)) {}
    SolveReport report;
};

/// One application of the linearized solution map: u solves the linear slip
/// problem with right-hand side F(v). For p = 2 the map is constant in v.
VectorField map_T(const VectorField& v, const SlipProblem& prob, const ConstantsEstimate& consts,
                  double tol);

/// Iterates u_{k+1} = T(u_k) from u_0 = 0 until the relative W^{1,p}
/// increment drops below tol_fp. A violated smallness gate downgrades to a
/// warning and the iteration runs damped. Throws FixedPointFailure carrying
/// the report when max_iter is exceeded.
std::pair<VectorField, SolveReport> fixed_point(const SlipProblem& prob,
                                                const ConstantsEstimate& consts, double tol_fp,
                                                int max_iter,
                                                const FixedPointOptions& opts = {});

/// Same iteration started from a given tangent iterate (used by the
/// continuation path for warm starts).
std::pair<VectorField, SolveReport> fixed_point_from(const SlipProblem& prob,
                                                     const ConstantsEstimate& consts,
                                                     double tol_fp, int max_iter,
                                                     const FixedPointOptions& opts,
                                                     const VectorField& u_start);

/// L^2 norm over interior nodes of -div(Du) - (p-2)G(u) - (mu+|Du|^2)^{(2-p)/2} f.
double strong_residual(const VectorField& u, const SlipProblem& prob);

/// max over random tangent probes v of
/// |(1/2) sum w B(Du)Du:Dv - sum w f.v| / ||v||_{W^{1,p}}.
double weak_residual(const VectorField& u, const SlipProblem& prob, int n_test,
                     std::uint64_t seed = 424242);

}  // namespace pslip
