// Command-line front end: problem configuration, solver and continuation
// runs, constant estimation, identity battery, convergence studies.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pslip/config.hpp"
#include "pslip/continuation.hpp"
#include "pslip/energy.hpp"
#include "pslip/exponents.hpp"
#include "pslip/identities.hpp"
#include "pslip/mms.hpp"
#include "pslip/solver.hpp"

namespace {

using namespace pslip;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct Common {
    std::string config_path;
    std::string out_dir;
    int grid = -1;
    double p = -1.0, mu = -1.0, q = -1.0;
    std::string bc;
    long long seed = -1;
    bool dump_config = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--grid", grid, "interior nodes per axis");
        cmd->add_option("--p", p, "power-law exponent in (1,2]");
        cmd->add_option("--mu", mu, "regularization parameter >= 0");
        cmd->add_option("--q", q, "integrability exponent");
        cmd->add_option("--bc", bc, "slip variant: navier | bardos")
            ->check(CLI::IsMember({"navier", "bardos"}));
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_flag("--dump-config", dump_config, "print the effective config and exit");
    }

    RunConfig resolve() const {
        RunConfig c;
        if (!config_path.empty()) c = RunConfig::from_json_text(read_file(config_path));
        if (grid > 0) c.grid = grid;
        if (p > 0.0) c.p = p;
        if (mu >= 0.0) c.mu = mu;
        if (q > 0.0) c.q = q;
        if (!bc.empty()) c.bc = bc;
        if (!out_dir.empty()) c.out_dir = out_dir;
        if (seed >= 0) c.seed = static_cast<std::uint64_t>(seed);
        return c;
    }
};

ConstantsEstimate constants_for(const RunConfig& c, const Domain& dom) {
    return estimate_constants(dom, c.bc == "bardos" ? BcVariant::BardosVorticity
                                                    : BcVariant::NavierStress,
                              c.q, c.p, c.samples, c.seed);
}

int cmd_exponents(double p, double q, int n) {
    ExponentParams ep;
    ep.p = p;
    ep.q = q;
    ep.n = n;
    ep.validate();
    std::printf("p = %.17g, q = %.17g, n = %d\n", p, q, n);
    std::printf("r(q)   = %.17g\n", critical_r(q, n, p));
    const double qh = q_hat(n, p);
    std::printf("q_hat  = %.17g\n", qh);
    std::printf("r(q_hat) = %.17g  (should be 2)\n", critical_r(qh, n, p));
    return 0;
}

int run_solver_command(const RunConfig& cfg, bool continuation_mode) {
    std::filesystem::create_directories(cfg.out_dir);
    const SlipProblem prob = cfg.problem();
    const ConstantsEstimate consts = constants_for(cfg, prob.dom);

    FixedPointOptions opts;
    opts.cg_tol = cfg.cg_tol;
    opts.theta = cfg.theta;

    SolveReport rep;
    VectorField u(prob.dom);
    bool converged = true;
    try {
        if (continuation_mode) {
            ContinuationResult res =
                run_continuation(prob, cfg.schedule(), consts, cfg.tol_fp, cfg.max_iter, opts);
            u = std::move(res.u0);
            rep = std::move(res.report);
        } else {
            auto out = fixed_point(prob, consts, cfg.tol_fp, cfg.max_iter, opts);
            u = std::move(out.first);
            rep = std::move(out.second);
        }
    } catch (const FixedPointFailure& fail) {
        rep = fail.report;
        converged = false;
        std::fprintf(stderr, "solver failed: %s\n", fail.what());
    }
    rep.provenance = cfg.to_json_text();

    const std::string stem = cfg.out_dir + (continuation_mode ? "/continuation" : "/solve");
    write_file(stem + "_report.json", report_to_json(rep));
    if (converged) {
        dump_vector_csv(stem + "_u.csv", u, prob.dom);
        dump_tensor_csv(stem + "_Du.csv", sym_grad(u, prob.dom), prob.dom);
    }
    std::printf("%s: %s after %d steps (%d corrections), strong res %.3e, weak res %.3e\n",
                continuation_mode ? "continuation" : "solve",
                converged ? "converged" : "FAILED", rep.steps, rep.corrections, rep.strong_res,
                rep.weak_res);
    std::printf("report: %s\n", (stem + "_report.json").c_str());
    return converged ? 0 : 2;
}

int cmd_linsolve(const RunConfig& cfg, bool dump_matrix) {
    std::filesystem::create_directories(cfg.out_dir);
    const Domain dom = cfg.domain();
    const LinearOperator op = assemble(dom, cfg.variant());
    if (dump_matrix) op.dump_coordinate(cfg.out_dir + "/matrix.txt");
    const VectorField F = cfg.make_data(dom);
    LinSolveInfo info;
    const VectorField u = solve_linear(op, F, cfg.cg_tol, nullptr, &info);
    dump_vector_csv(cfg.out_dir + "/linsolve_u.csv", u, dom);
    std::printf("linsolve: %d CG iterations, rel residual %.3e\n", info.iterations,
                info.rel_residual);
    if (cfg.data == "mms" && cfg.p == 2.0) {
        const VectorField ustar = mms::mms_field(dom, cfg.mms_c);
        VectorField scaled = ustar;
        scale(scaled, cfg.amplitude);
        const double err = l2_norm(lin_comb(1.0, u, -1.0, scaled), dom) / l2_norm(scaled, dom);
        std::printf("linsolve: relative L2 error vs reference field %.3e\n", err);
    }
    return 0;
}

int cmd_constants(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const Domain dom = cfg.domain();
    const ConstantsEstimate c = constants_for(cfg, dom);
    const GateResult gate = contraction_gate(cfg.p, c.Cq_disc);
    nlohmann::json j;
    j["Cq_disc"] = c.Cq_disc;
    j["Chat_disc"] = c.Chat_disc;
    j["korn_disc"] = c.korn_disc;
    j["q"] = c.q;
    j["p"] = c.p;
    j["samples"] = c.samples;
    j["method"] = c.method;
    j["gate"] = {{"alpha", gate.alpha}, {"satisfied", gate.satisfied}};
    j["note"] = "estimates are suprema over sampled fields, i.e. lower bounds";
    const std::string text = j.dump(2);
    write_file(cfg.out_dir + "/constants.json", text);
    std::printf("%s\n", text.c_str());
    return 0;
}

int cmd_identities(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    std::vector<int> grids = cfg.grids;
    if (grids.empty()) grids = {16, 24, 32, 48};
    const auto reports = run_identity_battery(grids, cfg.Lx, cfg.Ly);
    const std::string table = battery_table(reports);
    std::printf("%s", table.c_str());
    nlohmann::json j = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        j.push_back({{"name", r.name},
                     {"grids", r.grids},
                     {"residuals", r.residuals},
                     {"observed_order", r.observed_order},
                     {"expected_order", r.expected_order},
                     {"pass", r.pass}});
        all_pass = all_pass && r.pass;
    }
    write_file(cfg.out_dir + "/identities.json", j.dump(2));
    std::printf("battery: %s\n", all_pass ? "all pass" : "FAILURES present");
    return all_pass ? 0 : 2;
}

int cmd_mms(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    std::vector<double> errors;
    std::printf("mms study: p = %g, mu = %g, c = %g\n", cfg.p, cfg.mu, cfg.mms_c);
    for (const int n : cfg.grids) {
        RunConfig level = cfg;
        level.grid = n;
        const SlipProblem prob = level.problem();
        const ConstantsEstimate consts{1.0, 1.0, 1.0, cfg.q, cfg.p, 0, "fixed"};
        FixedPointOptions opts;
        opts.cg_tol = cfg.cg_tol;
        opts.compute_residuals = false;
        const auto [u, rep] = fixed_point(prob, consts, cfg.tol_fp, cfg.max_iter, opts);
        const VectorField ustar = mms::mms_field(prob.dom, cfg.mms_c);
        const double err = l2_norm(lin_comb(1.0, u, -1.0, ustar), prob.dom) /
                           l2_norm(ustar, prob.dom);
        errors.push_back(err);
        std::printf("  grid %3d: rel L2 error %.6e (%d fp steps)\n", n, err, rep.steps);
    }
    double order = 0.0;
    if (errors.size() >= 2) {
        const std::size_t m = errors.size();
        const double h0 = 1.0 / (cfg.grids[m - 2] + 1);
        const double h1 = 1.0 / (cfg.grids[m - 1] + 1);
        order = std::log(errors[m - 2] / errors[m - 1]) / std::log(h0 / h1);
    }
    std::printf("observed order %.3f\n", order);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale solver and verification suite for the gradient-symmetric "
                 "singular p-Laplacian system under slip boundary conditions"};
    app.require_subcommand(1);

    Common c_solve, c_cont, c_lin, c_const, c_ident, c_mms;
    bool dump_matrix = false;

    CLI::App* solve = app.add_subcommand("solve", "fixed-point solve at fixed mu");
    c_solve.attach(solve);
    CLI::App* cont = app.add_subcommand("continuation", "mu -> 0 continuation solve");
    c_cont.attach(cont);
    CLI::App* lin = app.add_subcommand("linsolve", "auxiliary linear problem solve");
    c_lin.attach(lin);
    lin->add_flag("--dump-matrix", dump_matrix, "write the operator in coordinate format");
    CLI::App* consts = app.add_subcommand("constants", "estimate discrete constants");
    c_const.attach(consts);
    CLI::App* ident = app.add_subcommand("identities", "run the identity battery");
    c_ident.attach(ident);
    CLI::App* mms_cmd = app.add_subcommand("mms", "manufactured-solution convergence study");
    c_mms.attach(mms_cmd);

    CLI::App* expo = app.add_subcommand("exponents", "closed-form exponent algebra");
    double e_p = 1.8, e_q = 2.0;
    int e_n = 2;
    expo->add_option("--p", e_p, "power-law exponent");
    expo->add_option("--q", e_q, "integrability exponent");
    expo->add_option("--n", e_n, "space dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (expo->parsed()) return cmd_exponents(e_p, e_q, e_n);

        const auto dispatch = [&](const Common& com, auto&& fn) -> int {
            const RunConfig cfg = com.resolve();
            if (com.dump_config) {
                std::printf("%s\n", cfg.to_json_text().c_str());
                return 0;
            }
            return fn(cfg);
        };
        if (solve->parsed())
            return dispatch(c_solve, [](const RunConfig& c) { return run_solver_command(c, false); });
        if (cont->parsed())
            return dispatch(c_cont, [](const RunConfig& c) { return run_solver_command(c, true); });
        if (lin->parsed())
            return dispatch(c_lin,
                            [&](const RunConfig& c) { return cmd_linsolve(c, dump_matrix); });
        if (consts->parsed())
            return dispatch(c_const, [](const RunConfig& c) { return cmd_constants(c); });
        if (ident->parsed())
            return dispatch(c_ident, [](const RunConfig& c) { return cmd_identities(c); });
        if (mms_cmd->parsed())
            return dispatch(c_mms, [](const RunConfig& c) { return cmd_mms(c); });
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
