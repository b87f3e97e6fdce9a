#pragma once

#include "pslip/grid.hpp"

namespace pslip {

struct StressParams {
    double p = 2.0;
    double mu = 0.0;

    void validate() const;
};

/// Symmetric 2x2 matrix value.
struct SymMat2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;
};

/// |A|^2 = sum_ij A_ij^2 (off-diagonal counted twice).
inline double sym_norm2(const SymMat2& A) {
    return A.a11 * A.a11 + 2.0 * A.a12 * A.a12 + A.a22 * A.a22;
}

/// Diffusivity coefficient B(D) = (mu + |D|^2)^{(p-2)/2}.
/// Throws std::domain_error at the singular point mu = 0, D = 0 for p < 2;
/// callers on the mu = 0 path must use the guarded product b_times_d.
double b_coeff(const SymMat2& D, const StressParams& params);

/// Guarded product B(D) D, extended by 0 at the singular point. For p > 1
/// the product |D|^{p-2} D tends to 0 with D, so the extension is the
/// continuous one.
SymMat2 b_times_d(const SymMat2& D, const StressParams& params);

/// Field version of b_times_d.
TensorField b_times_d(const TensorField& D, const StressParams& params, const Domain& dom);

/// Field of B(D) values; throws if any node is singular.
ScalarField b_coeff_field(const TensorField& D, const StressParams& params, const Domain& dom);

/// Convective-type vector I(u)_j = sum_{k,l,m} D_lm (d_k D_lm) D_kj,
/// equivalently (1/2) grad(|D|^2) . D.
VectorField i_vector(const TensorField& D, const TensorGradField& gradD, const Domain& dom);

/// G(v) = (mu + |Dv|^2)^{-1} I(v), guarded to 0 where mu = 0 and Dv = 0.
/// Satisfies |G| <= |grad Dv| pointwise.
VectorField g_vector(const TensorField& D, const TensorGradField& gradD,
                     const StressParams& params, const Domain& dom);

/// Right-hand side of the linearized solution map:
///   F(v) = (p-2) G(v) + (mu + |Dv|^2)^{(2-p)/2} f.
/// For p = 2 this returns f exactly.
VectorField rhs_F(const VectorField& v, const VectorField& f, const StressParams& params,
                  const Domain& dom);

/// (a+b)^alpha <= a^alpha + b^alpha for a,b >= 0, 0 < alpha < 1
/// (tiny relative slack absorbs floating-point rounding).
bool check_subadditivity(double a, double b, double alpha);

/// |B(A)A - B(B)B| (mu + |A| + |B|)^{2-p} / |A - B|; 0 when A == B.
/// Suprema of this ratio over samples estimate the mu-independent constant
/// of the nonlinear difference bound.
double check_difference_bound(const SymMat2& A, const SymMat2& B, double mu, double p);

/// Sup-norm residual of the product-rule expansion
///   div(B(Du) Du) = B(Du) div(Du) + (p-2)(mu + |Du|^2)^{(p-4)/2} I(u),
/// evaluated with the discrete operators. O(h^2) on smooth fields, mu > 0.
double expansion_identity_residual(const VectorField& u, const StressParams& params,
                                   const Domain& dom);

}  // namespace pslip
