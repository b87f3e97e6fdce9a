#include "pslip/exponents.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pslip {

void ExponentParams::validate() const {
    if (!(p > 1.0 && p <= 2.0)) {
        throw std::domain_error("ExponentParams: p must lie in (1,2], got " + std::to_string(p));
    }
    if (!(q > 1.0)) {
        throw std::domain_error("ExponentParams: q must be > 1, got " + std::to_string(q));
    }
    if (n < 2) {
        throw std::domain_error("ExponentParams: n must be >= 2, got " + std::to_string(n));
    }
    if (!(mu >= 0.0)) {
        throw std::domain_error("ExponentParams: mu must be >= 0, got " + std::to_string(mu));
    }
}

double critical_r(double q, int n, double p) {
    if (!(q > 0.0)) {
        throw std::domain_error("critical_r: q must be positive");
    }
    const double nd = static_cast<double>(n);
    // n(p-1) + q(2-p) regrouped as n + (q-n)(2-p); exact at q = n.
    const double den = nd + (q - nd) * (2.0 - p);
    if (!(den > 0.0)) {
        throw std::domain_error("critical_r: denominator n(p-1) + q(2-p) is not positive");
    }
    return nd * q / den;
}

double q_hat(int n, double p) {
    const double nd = static_cast<double>(n);
    const double den = nd - 2.0 * (2.0 - p);
    if (!(den > 0.0)) {
        throw std::domain_error("q_hat: denominator n - 2(2-p) is not positive");
    }
    return 2.0 * nd * (p - 1.0) / den;
}

GateResult contraction_gate(double p, double Cq) {
    if (!(Cq > 0.0)) {
        throw std::domain_error("contraction_gate: Cq must be positive");
    }
    GateResult g;
    g.alpha = 1.0 - (2.0 - p) * Cq;
    g.satisfied = g.alpha > 0.0;
    return g;
}

double ball_radius(const RadiusInputs& inputs, const ExponentParams& params) {
    params.validate();
    if (!(inputs.alpha > 0.0)) {
        throw std::domain_error("ball_radius: gate violated, alpha <= 0");
    }
    const double p = params.p;
    const double mu = params.mu;
    const double f = inputs.fnorm_q;
    if (f == 0.0) {
        return 0.0;
    }
    const double mu_term = (mu == 0.0) ? 0.0 : std::pow(mu, radius_mu_exponent(p));
    const double first = (2.0 / inputs.alpha) * mu_term * inputs.Cq * f;
    const double chat_pow = (p == 2.0) ? 1.0 : std::pow(inputs.Chat, 2.0 - p);
    const double base = 2.0 * inputs.Cq * chat_pow / inputs.alpha;
    const double second = std::pow(base, 1.0 / (p - 1.0)) * std::pow(f, 1.0 / (p - 1.0));
    return first + second;
}

}  // namespace pslip
