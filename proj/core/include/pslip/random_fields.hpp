#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pslip/grid.hpp"

namespace pslip {

/// Deterministic random stream. Gaussian draws use a hand-rolled
/// Box-Muller on top of mt19937_64 so sequences are identical across
/// standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {
        // 53-bit mantissa in [0,1).
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    double normal();
    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Trigonometric basis for smooth data fields (no boundary constraint):
/// tensor products of {1, cos(k pi s / L), sin(k pi s / L)} per axis and
/// component.
class DataBasis {
  public:
    DataBasis(const Domain& dom, int modes);

    std::size_t size() const { return 2 * nfun_ * nfun_; }
    VectorField assemble(std::span<const double> coeffs) const;
    std::vector<double> random_coeffs(Rng& rng, double amplitude) const;

  private:
    double eval1d(int t, double s, double L) const;
    Domain dom_;
    int modes_;
    int nfun_;
};

/// Smooth vector fields tangent to the boundary: component 1 carries a
/// sin(m pi x / Lx) factor, component 2 a sin(k pi y / Ly) factor, so
/// u.n = 0 holds exactly on every face. Coefficients decay with mode order
/// to keep the samples smooth on coarse grids.
VectorField random_tangent_field(const Domain& dom, Rng& rng, int modes = 3,
                                 double amplitude = 1.0);

/// Smooth unconstrained data field.
VectorField random_data_field(const Domain& dom, Rng& rng, int modes = 2, double amplitude = 1.0);

/// Random symmetric 2x2 matrix with independent N(0, scale) entries.
struct SymSampler {
    double scale = 1.0;
};

}  // namespace pslip
