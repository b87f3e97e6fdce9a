#include "pslip/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "pslip/energy.hpp"
#include "pslip/random_fields.hpp"

#include "json.hpp"

namespace pslip {

void SlipProblem::validate() const {
    params.validate();
    if (!(q > 2.0)) {
        throw std::domain_error("SlipProblem: strong path requires q > n = 2");
    }
    if (f.size() != dom.num_nodes()) {
        throw std::domain_error("SlipProblem: data field does not match the grid");
    }
}

std::string report_to_json(const SolveReport& r, bool include_timings) {
    nlohmann::json j;
    j["problem"] = {{"p", r.p},     {"mu", r.mu}, {"q", r.q},
                    {"nx", r.nx},   {"ny", r.ny}, {"bc", r.bc},
                    {"provenance", r.provenance}};
    j["constants"] = {{"Cq_disc", r.Cq_disc},
                      {"Chat_disc", r.Chat_disc},
                      {"korn_disc", r.korn_disc},
                      {"fnorm_q", r.fnorm_q}};
    j["gate"] = {{"alpha", r.gate.alpha}, {"satisfied", r.gate.satisfied}};
    j["ball"] = {{"R", r.ball_R},
                 {"radius_mu_exponent", r.radius_mu_exponent},
                 {"all_iterates_in_ball", r.all_iterates_in_ball}};
    j["iteration"] = {{"steps", r.steps},
                      {"corrections", r.corrections},
                      {"converged", r.converged},
                      {"increments_monotone", r.increments_monotone},
                      {"tol_fp", r.tol_fp}};
    nlohmann::json its = nlohmann::json::array();
    for (const auto& it : r.iterates) {
        its.push_back({{"k", it.k},
                       {"surrogate", it.surrogate},
                       {"increment_l2", it.increment_l2},
                       {"increment_w1p", it.increment_w1p},
                       {"rel_increment_w1p", it.rel_increment_w1p},
                       {"theta", it.theta},
                       {"within_ball", it.within_ball},
                       {"map_estimate_ok", it.map_estimate_ok}});
    }
    j["iterates"] = its;
    j["residuals"] = {{"strong", r.strong_res}, {"weak", r.weak_res}};
    if (!r.continuation.empty()) {
        nlohmann::json tr = nlohmann::json::array();
        for (const auto& st : r.continuation) {
            tr.push_back({{"mu", st.mu},
                          {"surrogate", st.surrogate},
                          {"increment_w1p", st.increment_w1p},
                          {"nonlinear_diff_ratio", st.nonlinear_diff_ratio},
                          {"fp_iterations", st.fp_iterations}});
        }
        j["continuation"] = tr;
        j["final_mu"] = r.final_mu;
        j["singular_weak_res"] = r.singular_weak_res;
    }
    if (include_timings) {
        j["timings"] = {{"wall_seconds", r.wall_seconds}};
    }
    return j.dump(2);
}

VectorField map_T(const VectorField& v, const SlipProblem& prob, const ConstantsEstimate& consts,
                  double tol) {
    (void)consts;
    prob.validate();
    const LinearOperator op = assemble(prob.dom, prob.variant);
    const VectorField F = rhs_F(v, prob.f, prob.params, prob.dom);
    return solve_linear(op, F, tol);
}

namespace {

/// Right-hand side of the per-call linear estimate diagnostic.
double map_estimate_rhs(double surrogate_v, double fq, const SlipProblem& prob,
                        const ConstantsEstimate& consts) {
    const double p = prob.params.p;
    const double mu = prob.params.mu;
    const double mu_term = (mu == 0.0) ? 0.0 : std::pow(mu, 0.5 * (2.0 - p));
    const double chat_pow = (p == 2.0) ? 1.0 : std::pow(consts.Chat_disc, 2.0 - p);
    const double sv_pow = (p == 2.0) ? 1.0 : std::pow(surrogate_v, 2.0 - p);
    return consts.Cq_disc * ((2.0 - p) * surrogate_v + mu_term * fq + chat_pow * sv_pow * fq);
}

}  // namespace

std::pair<VectorField, SolveReport> fixed_point(const SlipProblem& prob,
                                                const ConstantsEstimate& consts, double tol_fp,
                                                int max_iter, const FixedPointOptions& opts) {
    const VectorField zero = apply_slip_bc(VectorField(prob.dom), prob.variant, prob.dom);
    return fixed_point_from(prob, consts, tol_fp, max_iter, opts, zero);
}

std::pair<VectorField, SolveReport> fixed_point_from(const SlipProblem& prob,
                                                     const ConstantsEstimate& consts,
                                                     double tol_fp, int max_iter,
                                                     const FixedPointOptions& opts,
                                                     const VectorField& u_start) {
    prob.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Domain& dom = prob.dom;
    const double p = prob.params.p;

    SolveReport rep;
    rep.p = p;
    rep.mu = prob.params.mu;
    rep.q = prob.q;
    rep.nx = dom.Nx;
    rep.ny = dom.Ny;
    rep.bc = to_string(prob.variant);
    rep.tol_fp = tol_fp;
    rep.Cq_disc = consts.Cq_disc;
    rep.Chat_disc = consts.Chat_disc;
    rep.korn_disc = consts.korn_disc;
    rep.fnorm_q = lq_norm(prob.f, prob.q, dom);
    rep.radius_mu_exponent = radius_mu_exponent(p);
    rep.gate = (consts.Cq_disc > 0.0) ? contraction_gate(p, consts.Cq_disc)
                                      : GateResult{1.0, true};
    if (rep.gate.satisfied && consts.Cq_disc > 0.0 && consts.Chat_disc > 0.0) {
        ExponentParams ep;
        ep.p = p;
        ep.q = prob.q;
        ep.mu = prob.params.mu;
        rep.ball_R = ball_radius(
            RadiusInputs{consts.Cq_disc, consts.Chat_disc, rep.fnorm_q, rep.gate.alpha}, ep);
    }

    const LinearOperator op = assemble(dom, prob.variant);
    VectorField u = apply_slip_bc(u_start, prob.variant, dom);
    double theta = rep.gate.satisfied ? opts.theta : std::min(opts.theta, 0.5);
    double prev_rel = std::numeric_limits<double>::infinity();

    for (int k = 1; k <= max_iter; ++k) {
        const double surrogate_v =
            (k == 1) ? w2q_surrogate(u, dom, prob.q) : rep.iterates.back().surrogate;
        const VectorField F = rhs_F(u, prob.f, prob.params, dom);
        const VectorField w = solve_linear(op, F, opts.cg_tol, &u, nullptr, opts.max_cg_iter);
        VectorField u_new = (theta == 1.0) ? w : lin_comb(1.0 - theta, u, theta, w);
        u_new.tangency_enforced = true;

        IterateRecord it;
        it.k = k;
        it.theta = theta;
        const VectorField diff = lin_comb(1.0, u_new, -1.0, u);
        it.increment_l2 = l2_norm(diff, dom);
        it.increment_w1p = w1p_norm(diff, dom, p);
        const double un = w1p_norm(u_new, dom, p);
        it.rel_increment_w1p = (un > 0.0) ? it.increment_w1p / un : 0.0;
        it.surrogate = w2q_surrogate(u_new, dom, prob.q);
        it.within_ball = (rep.ball_R <= 0.0) || (it.surrogate <= 1.1 * rep.ball_R);
        if (consts.Cq_disc > 0.0) {
            const double rhs = map_estimate_rhs(surrogate_v, rep.fnorm_q, prob, consts);
            it.map_estimate_ok = w2q_surrogate(w, dom, prob.q) <= 1.25 * rhs + 1e-12;
        }
        rep.all_iterates_in_ball = rep.all_iterates_in_ball && it.within_ball;
        rep.iterates.push_back(it);
        rep.steps = k;
        if (it.increment_l2 > 0.0) ++rep.corrections;

        u = std::move(u_new);
        if (it.rel_increment_w1p <= tol_fp) {
            rep.converged = true;
            break;
        }
        if (it.rel_increment_w1p > prev_rel) {
            rep.increments_monotone = false;
            if (opts.adapt_damping && theta > 1.0 / 16.0) theta *= 0.5;
        }
        prev_rel = it.rel_increment_w1p;
    }

    if (opts.compute_residuals) {
        rep.strong_res = strong_residual(u, prob);
        rep.weak_res = weak_residual(u, prob, opts.n_weak_test, opts.weak_seed);
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!rep.converged) {
        throw FixedPointFailure("fixed_point: no convergence in " + std::to_string(max_iter) +
                                    " iterations (rel increment " +
                                    std::to_string(rep.iterates.back().rel_increment_w1p) + ")",
                                rep);
    }
    return {std::move(u), std::move(rep)};
}

double strong_residual(const VectorField& u, const SlipProblem& prob) {
    const Domain& dom = prob.dom;
    const double p = prob.params.p;
    const double mu = prob.params.mu;
    const TensorField D = sym_grad(u, dom);
    const VectorField divD = div_tensor(D, dom);
    const TensorGradField g = grad_tensor(D, dom);
    const VectorField G = g_vector(D, g, prob.params, dom);
    double s = 0.0;
    for (int j = 1; j <= dom.Ny; ++j) {
        for (int i = 1; i <= dom.Nx; ++i) {
            const std::size_t k = dom.id(i, j);
            const double d2 = mu + D.t11[k] * D.t11[k] + 2.0 * D.t12[k] * D.t12[k] +
                              D.t22[k] * D.t22[k];
            const double beta = (p == 2.0) ? 1.0 : std::pow(d2, 0.5 * (2.0 - p));
            const double r1 = -divD.u1[k] - (p - 2.0) * G.u1[k] - beta * prob.f.u1[k];
            const double r2 = -divD.u2[k] - (p - 2.0) * G.u2[k] - beta * prob.f.u2[k];
            s += dom.weight(i, j) * (r1 * r1 + r2 * r2);
        }
    }
    return std::sqrt(s);
}

double weak_residual(const VectorField& u, const SlipProblem& prob, int n_test,
                     std::uint64_t seed) {
    const EnergyFunctional e = make_energy(prob.dom, prob.params, prob.f, prob.variant);
    const auto g = energy_grad_dofs(e, e.op.dofs.gather(u));
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < n_test; ++t) {
        const VectorField v = random_tangent_field(prob.dom, rng, 3, 1.0);
        const double vn = w1p_norm(v, prob.dom, prob.params.p);
        if (vn < 1e-14) continue;
        const auto vd = e.op.dofs.gather(v);
        double pr = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) pr += g[k] * vd[k];
        worst = std::max(worst, std::abs(pr) / vn);
    }
    return worst;
}

}  // namespace pslip
