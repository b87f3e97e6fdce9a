#include "pslip/config.hpp"

#include <set>
#include <stdexcept>

#include "pslip/mms.hpp"
#include "pslip/random_fields.hpp"

#include "json.hpp"

namespace pslip {

namespace {
using nlohmann::json;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_object()) {
        throw std::runtime_error("config: top-level JSON object expected");
    }
    static const std::set<std::string> known = {
        "Lx",     "Ly",      "grid",    "p",          "mu",      "q",       "bc",
        "data",   "mms_c",   "amplitude", "tol_fp",   "cg_tol",  "max_iter", "theta",
        "mu0",    "factor",  "steps",   "warm_start", "mu0_mode", "samples", "seed",
        "out_dir", "grids"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (known.find(it.key()) == known.end()) {
            throw std::runtime_error("config: unknown key '" + it.key() + "'");
        }
    }
    RunConfig c;
    const auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("Lx", c.Lx);
    get("Ly", c.Ly);
    get("grid", c.grid);
    get("p", c.p);
    get("mu", c.mu);
    get("q", c.q);
    get("bc", c.bc);
    get("data", c.data);
    get("mms_c", c.mms_c);
    get("amplitude", c.amplitude);
    get("tol_fp", c.tol_fp);
    get("cg_tol", c.cg_tol);
    get("max_iter", c.max_iter);
    get("theta", c.theta);
    get("mu0", c.mu0);
    get("factor", c.factor);
    get("steps", c.steps);
    get("warm_start", c.warm_start);
    get("mu0_mode", c.mu0_mode);
    get("samples", c.samples);
    get("seed", c.seed);
    get("out_dir", c.out_dir);
    get("grids", c.grids);
    if (c.bc != "navier" && c.bc != "bardos") {
        throw std::runtime_error("config: bc must be 'navier' or 'bardos'");
    }
    if (c.data != "mms" && c.data != "trig" && c.data != "zero") {
        throw std::runtime_error("config: data must be 'mms', 'trig' or 'zero'");
    }
    if (c.mu0_mode != "absolute" && c.mu0_mode != "data_scaled") {
        throw std::runtime_error("config: mu0_mode must be 'absolute' or 'data_scaled'");
    }
    return c;
}

std::string RunConfig::to_json_text() const {
    json j;
    j["Lx"] = Lx;
    j["Ly"] = Ly;
    j["grid"] = grid;
    j["p"] = p;
    j["mu"] = mu;
    j["q"] = q;
    j["bc"] = bc;
    j["data"] = data;
    j["mms_c"] = mms_c;
    j["amplitude"] = amplitude;
    j["tol_fp"] = tol_fp;
    j["cg_tol"] = cg_tol;
    j["max_iter"] = max_iter;
    j["theta"] = theta;
    j["mu0"] = mu0;
    j["factor"] = factor;
    j["steps"] = steps;
    j["warm_start"] = warm_start;
    j["mu0_mode"] = mu0_mode;
    j["samples"] = samples;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["grids"] = grids;
    return j.dump(2);
}

Domain RunConfig::domain() const { return Domain(Lx, Ly, grid, grid); }

BcVariant RunConfig::variant() const {
    return bc == "bardos" ? BcVariant::BardosVorticity : BcVariant::NavierStress;
}

VectorField RunConfig::make_data(const Domain& dom) const {
    VectorField f(dom);
    if (data == "mms") {
        f = mms::mms_forcing(dom, p, mu, mms_c);
    } else if (data == "trig") {
        Rng rng(seed);
        f = random_data_field(dom, rng, 2, 1.0);
    }
    if (amplitude != 1.0) {
        scale(f, amplitude);
    }
    return f;
}

SlipProblem RunConfig::problem() const {
    SlipProblem prob;
    prob.dom = domain();
    prob.params = StressParams{p, mu};
    prob.q = q;
    prob.variant = variant();
    prob.f = make_data(prob.dom);
    return prob;
}

ContinuationSchedule RunConfig::schedule() const {
    ContinuationSchedule s;
    s.mu0 = mu0;
    s.factor = factor;
    s.steps = steps;
    s.warm_start = warm_start;
    s.mu0_mode = (mu0_mode == "data_scaled") ? ContinuationSchedule::Mu0Mode::data_scaled
                                             : ContinuationSchedule::Mu0Mode::absolute;
    return s;
}

}  // namespace pslip
