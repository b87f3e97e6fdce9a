#include "pslip/continuation.hpp"

#include <cmath>
#include <stdexcept>

namespace pslip {

void ContinuationSchedule::validate() const {
    if (!(mu0 > 0.0)) throw std::domain_error("ContinuationSchedule: mu0 must be positive");
    if (!(factor > 0.0 && factor < 1.0)) {
        throw std::domain_error("ContinuationSchedule: factor must lie in (0,1)");
    }
    if (steps < 1) throw std::domain_error("ContinuationSchedule: steps must be >= 1");
}

double ContinuationSchedule::mu0_effective(double p, double fnorm_q) const {
    if (mu0_mode == Mu0Mode::absolute) return mu0;
    if (fnorm_q == 0.0) return mu0;
    return mu0 * std::pow(fnorm_q, 2.0 / (p - 1.0));
}

ContinuationResult run_continuation(const SlipProblem& prob, const ContinuationSchedule& sched,
                                    const ConstantsEstimate& consts, double tol_fp, int max_iter,
                                    const FixedPointOptions& opts) {
    sched.validate();
    const Domain& dom = prob.dom;
    const double p = prob.params.p;
    const double pprime = p / (p - 1.0);
    const double fq = lq_norm(prob.f, prob.q, dom);
    const double mu_start = sched.mu0_effective(p, fq);

    std::vector<ContinuationStep> trace;
    std::vector<VectorField> iterates;
    VectorField u = apply_slip_bc(VectorField(dom), prob.variant, dom);
    SolveReport last_rep;
    double mu_k = mu_start;

    FixedPointOptions step_opts = opts;
    for (int k = 0; k < sched.steps; ++k) {
        SlipProblem sub = prob;
        sub.params.mu = mu_k;
        FixedPointOptions o = step_opts;
        o.compute_residuals = (k == sched.steps - 1) && opts.compute_residuals;
        std::pair<VectorField, SolveReport> out;
        try {
            if (sched.warm_start && k > 0) {
                // Warm starting is realized by seeding the inner linear
                // solves with the previous solution through the first map
                // application: run the iteration from the previous iterate.
                out = fixed_point_from(sub, consts, tol_fp, max_iter, o, u);
            } else {
                out = fixed_point(sub, consts, tol_fp, max_iter, o);
            }
        } catch (const FixedPointFailure& fail) {
            SolveReport rep = fail.report;
            rep.continuation = trace;
            throw FixedPointFailure("run_continuation: step " + std::to_string(k) + " at mu = " +
                                        std::to_string(mu_k) + " failed: " + fail.what(),
                                    rep);
        }
        ContinuationStep st;
        st.mu = mu_k;
        st.fp_iterations = out.second.steps;
        st.surrogate = w2q_surrogate(out.first, dom, prob.q);
        const VectorField diff = lin_comb(1.0, out.first, -1.0, u);
        st.increment_w1p = (k == 0) ? 0.0 : w1p_norm(diff, dom, p);
        trace.push_back(st);
        u = out.first;
        iterates.push_back(u);
        last_rep = out.second;
        mu_k *= sched.factor;
    }

    // Nonlinear difference ratios against the final iterate (guarded mu = 0
    // products), recording the empirical constant of the difference bound.
    const StressParams p0{p, 0.0};
    const TensorField D0 = sym_grad(u, dom);
    const TensorField S0 = b_times_d(D0, p0, dom);
    for (std::size_t k = 0; k + 1 < iterates.size(); ++k) {
        const TensorField Dk = sym_grad(iterates[k], dom);
        StressParams pk{p, trace[k].mu};
        const TensorField Sk = b_times_d(Dk, pk, dom);
        TensorField dS(dom), dD(dom);
        for (std::size_t m = 0; m < dS.size(); ++m) {
            dS.t11[m] = Sk.t11[m] - S0.t11[m];
            dS.t12[m] = Sk.t12[m] - S0.t12[m];
            dS.t21[m] = Sk.t21[m] - S0.t21[m];
            dS.t22[m] = Sk.t22[m] - S0.t22[m];
            dD.t11[m] = Dk.t11[m] - D0.t11[m];
            dD.t12[m] = Dk.t12[m] - D0.t12[m];
            dD.t21[m] = Dk.t21[m] - D0.t21[m];
            dD.t22[m] = Dk.t22[m] - D0.t22[m];
        }
        const double den = std::pow(lq_norm(dD, p, dom), p - 1.0);
        trace[k].nonlinear_diff_ratio = (den > 1e-300) ? lq_norm(dS, pprime, dom) / den : 0.0;
    }

    ContinuationResult res;
    res.final_mu = trace.back().mu;
    res.u0 = std::move(u);
    res.report = std::move(last_rep);
    res.report.continuation = std::move(trace);
    res.report.final_mu = res.final_mu;
    if (opts.compute_residuals) {
        res.report.singular_weak_res =
            singular_weak_residual(res.u0, prob, opts.n_weak_test, opts.weak_seed);
    }
    return res;
}

double singular_weak_residual(const VectorField& u0, const SlipProblem& prob, int n_test,
                              std::uint64_t seed) {
    SlipProblem sing = prob;
    sing.params.mu = 0.0;
    return weak_residual(u0, sing, n_test, seed);
}

double homogeneity_check(const SlipProblem& prob, const std::vector<double>& lambdas,
                         const ContinuationSchedule& sched, const ConstantsEstimate& consts,
                         double tol_fp, int max_iter, const FixedPointOptions& opts) {
    ContinuationSchedule s = sched;
    s.mu0_mode = ContinuationSchedule::Mu0Mode::data_scaled;
    const double p = prob.params.p;

    FixedPointOptions o = opts;
    o.compute_residuals = false;
    const ContinuationResult base = run_continuation(prob, s, consts, tol_fp, max_iter, o);
    const double base_norm = l2_norm(base.u0, prob.dom);

    double worst = 0.0;
    for (const double lam : lambdas) {
        SlipProblem scaled = prob;
        scaled.f = prob.f;
        scale(scaled.f, lam);
        const ContinuationResult out = run_continuation(scaled, s, consts, tol_fp, max_iter, o);
        const double s_pow = std::pow(lam, 1.0 / (p - 1.0));
        const VectorField predicted = lin_comb(s_pow, base.u0, 0.0, base.u0);
        const VectorField diff = lin_comb(1.0, out.u0, -1.0, predicted);
        const double ref = s_pow * base_norm;
        const double dev = (ref > 0.0) ? l2_norm(diff, prob.dom) / ref : l2_norm(diff, prob.dom);
        worst = std::max(worst, dev);
    }
    return worst;
}

}  // namespace pslip
