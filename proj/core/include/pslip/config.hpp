#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pslip/continuation.hpp"
#include "pslip/solver.hpp"

namespace pslip {

/// Run configuration for the command-line front end. Every field has a
/// default; parsing rejects unknown keys.
struct RunConfig {
    // domain / grid
    double Lx = 1.0;
    double Ly = 0.7;
    int grid = 32;

    // problem
    double p = 1.9;
    double mu = 1.0;
    double q = 4.0;
    std::string bc = "navier";  // navier | bardos

    // data
    std::string data = "mms";  // mms | trig | zero
    double mms_c = 0.75;
    double amplitude = 1.0;

    // solver
    double tol_fp = 1e-10;
    double cg_tol = 1e-12;
    int max_iter = 200;
    double theta = 1.0;

    // continuation schedule
    double mu0 = 1.0;
    double factor = 0.25;
    int steps = 9;
    bool warm_start = true;
    std::string mu0_mode = "absolute";  // absolute | data_scaled

    // estimation
    int samples = 80;

    // misc
    std::uint64_t seed = 1234;
    std::string out_dir = "out";
    std::vector<int> grids = {16, 32, 64};  // mms study levels

    bool operator==(const RunConfig&) const = default;

    static RunConfig from_json_text(const std::string& text);
    std::string to_json_text() const;

    Domain domain() const;
    BcVariant variant() const;
    VectorField make_data(const Domain& dom) const;
    SlipProblem problem() const;
    ContinuationSchedule schedule() const;
};

}  // namespace pslip
