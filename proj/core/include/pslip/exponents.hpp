#pragma once

namespace pslip {

/// Scalar parameters of the nonlinear slip problem.
///
/// p is the power-law exponent in (1,2], q the integrability exponent of the
/// data, n the space dimension (this project discretizes n = 2, the formulas
/// accept any n >= 2), and mu >= 0 the regularization parameter.
struct ExponentParams {
    double p = 2.0;
    double q = 4.0;
    int n = 2;
    double mu = 0.0;

    void validate() const;
};

/// Inputs for the invariant-ball radius.
struct RadiusInputs {
    double Cq = 1.0;       ///< constant of the linear second-order estimate
    double Chat = 1.0;     ///< sup-norm embedding constant
    double fnorm_q = 0.0;  ///< L^q norm of the data
    double alpha = 1.0;    ///< 1 - (2-p)*Cq, must be > 0
};

/// Result of the smallness condition (2-p)*Cq < 1.
struct GateResult {
    double alpha = 1.0;
    bool satisfied = true;
};

/// Critical data exponent r(q) = n q / (n(p-1) + q(2-p)).
///
/// The denominator is evaluated as n + (q-n)(2-p), which is the same real
/// number and makes r(n) == n hold exactly in floating point.
/// Throws std::domain_error if the denominator is not positive.
double critical_r(double q, int n, double p);

/// The exponent q_hat = 2n(p-1) / (n - 2(2-p)) at which r(q_hat) = 2.
/// Throws std::domain_error if the denominator vanishes or is negative.
double q_hat(int n, double p);

/// Evaluates alpha = 1 - (2-p)*Cq; satisfied iff alpha > 0.
GateResult contraction_gate(double p, double Cq);

/// Radius of the ball preserved by the linearized solution map:
///
///   R = (2/alpha) mu^{(2-p)/2} Cq ||f||_q
///     + (2 Cq Chat^{2-p} / alpha)^{1/(p-1)} ||f||_q^{1/(p-1)}.
///
/// The mu-prefactor uses the exponent (2-p)/2, consistent with the
/// subadditive split of (mu + |Dv|^2)^{(2-p)/2}.
/// Throws std::domain_error when inputs.alpha <= 0 (gate violated).
double ball_radius(const RadiusInputs& inputs, const ExponentParams& params);

/// Exponent applied to mu in the first term of ball_radius.
inline double radius_mu_exponent(double p) { return 0.5 * (2.0 - p); }

}  // namespace pslip
