#include "pslip/stress.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pslip {

void StressParams::validate() const {
    if (!(p > 1.0 && p <= 2.0)) {
        throw std::domain_error("StressParams: p must lie in (1,2], got " + std::to_string(p));
    }
    if (!(mu >= 0.0)) {
        throw std::domain_error("StressParams: mu must be >= 0, got " + std::to_string(mu));
    }
}

double b_coeff(const SymMat2& D, const StressParams& params) {
    if (params.p == 2.0) {
        return 1.0;
    }
    const double s = params.mu + sym_norm2(D);
    if (s == 0.0) {
        throw std::domain_error("b_coeff: singular point mu = 0, D = 0 for p < 2");
    }
    return std::pow(s, 0.5 * (params.p - 2.0));
}

SymMat2 b_times_d(const SymMat2& D, const StressParams& params) {
    if (params.p == 2.0) {
        return D;
    }
    const double s = params.mu + sym_norm2(D);
    if (s == 0.0) {
        return SymMat2{};
    }
    const double b = std::pow(s, 0.5 * (params.p - 2.0));
    return SymMat2{b * D.a11, b * D.a12, b * D.a22};
}

TensorField b_times_d(const TensorField& D, const StressParams& params, const Domain& dom) {
    TensorField S(dom);
    S.symmetric = D.symmetric;
    for (std::size_t k = 0; k < D.size(); ++k) {
        const SymMat2 v = b_times_d(SymMat2{D.t11[k], D.t12[k], D.t22[k]}, params);
        S.t11[k] = v.a11;
        S.t12[k] = v.a12;
        S.t21[k] = v.a12;
        S.t22[k] = v.a22;
    }
    return S;
}

ScalarField b_coeff_field(const TensorField& D, const StressParams& params, const Domain& dom) {
    ScalarField b(dom);
    for (std::size_t k = 0; k < D.size(); ++k) {
        b.v[k] = b_coeff(SymMat2{D.t11[k], D.t12[k], D.t22[k]}, params);
    }
    return b;
}

VectorField i_vector(const TensorField& D, const TensorGradField& g, const Domain& dom) {
    VectorField I(dom);
    for (std::size_t k = 0; k < D.size(); ++k) {
        // s_k = sum_{l,m} D_lm d_k D_lm = (1/2) d_k |D|^2
        const double s1 =
            D.t11[k] * g.dx11[k] + 2.0 * D.t12[k] * g.dx12[k] + D.t22[k] * g.dx22[k];
        const double s2 =
            D.t11[k] * g.dy11[k] + 2.0 * D.t12[k] * g.dy12[k] + D.t22[k] * g.dy22[k];
        I.u1[k] = s1 * D.t11[k] + s2 * D.t21[k];
        I.u2[k] = s1 * D.t12[k] + s2 * D.t22[k];
    }
    return I;
}

VectorField g_vector(const TensorField& D, const TensorGradField& g, const StressParams& params,
                     const Domain& dom) {
    VectorField G = i_vector(D, g, dom);
    for (std::size_t k = 0; k < G.size(); ++k) {
        const double s =
            params.mu + D.t11[k] * D.t11[k] + 2.0 * D.t12[k] * D.t12[k] + D.t22[k] * D.t22[k];
        if (s == 0.0) {
            // |I| <= |D|^2 |grad D| forces I = 0 here; keep the quotient 0.
            G.u1[k] = 0.0;
            G.u2[k] = 0.0;
        } else {
            G.u1[k] /= s;
            G.u2[k] /= s;
        }
    }
    return G;
}

VectorField rhs_F(const VectorField& v, const VectorField& f, const StressParams& params,
                  const Domain& dom) {
    if (params.p == 2.0) {
        return f;
    }
    const TensorField D = sym_grad(v, dom);
    const TensorGradField g = grad_tensor(D, dom);
    const VectorField G = g_vector(D, g, params, dom);
    VectorField F(dom);
    const double ex = 0.5 * (2.0 - params.p);
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double s =
            params.mu + D.t11[k] * D.t11[k] + 2.0 * D.t12[k] * D.t12[k] + D.t22[k] * D.t22[k];
        const double beta = std::pow(s, ex);
        F.u1[k] = (params.p - 2.0) * G.u1[k] + beta * f.u1[k];
        F.u2[k] = (params.p - 2.0) * G.u2[k] + beta * f.u2[k];
    }
    return F;
}

bool check_subadditivity(double a, double b, double alpha) {
    if (a < 0.0 || b < 0.0 || !(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("check_subadditivity: need a,b >= 0 and alpha in (0,1)");
    }
    const double lhs = std::pow(a + b, alpha);
    const double rhs = std::pow(a, alpha) + std::pow(b, alpha);
    return lhs <= rhs * (1.0 + 1e-12) + 1e-300;
}

double check_difference_bound(const SymMat2& A, const SymMat2& B, double mu, double p) {
    const double diff2 = sym_norm2(SymMat2{A.a11 - B.a11, A.a12 - B.a12, A.a22 - B.a22});
    if (diff2 == 0.0) {
        return 0.0;
    }
    const StressParams params{p, mu};
    const SymMat2 sa = b_times_d(A, params);
    const SymMat2 sb = b_times_d(B, params);
    const double num =
        std::sqrt(sym_norm2(SymMat2{sa.a11 - sb.a11, sa.a12 - sb.a12, sa.a22 - sb.a22}));
    const double w = std::pow(mu + std::sqrt(sym_norm2(A)) + std::sqrt(sym_norm2(B)), 2.0 - p);
    return num * w / std::sqrt(diff2);
}

double expansion_identity_residual(const VectorField& u, const StressParams& params,
                                   const Domain& dom) {
    params.validate();
    if (!(params.mu > 0.0)) {
        throw std::domain_error("expansion_identity_residual: requires mu > 0");
    }
    const TensorField D = sym_grad(u, dom);
    const TensorField S = b_times_d(D, params, dom);
    const VectorField lhs = div_tensor(S, dom);
    const VectorField divD = div_tensor(D, dom);
    const TensorGradField g = grad_tensor(D, dom);
    const VectorField I = i_vector(D, g, dom);
    double res = 0.0;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        const double s =
            params.mu + D.t11[k] * D.t11[k] + 2.0 * D.t12[k] * D.t12[k] + D.t22[k] * D.t22[k];
        const double b = std::pow(s, 0.5 * (params.p - 2.0));
        const double c = (params.p - 2.0) * std::pow(s, 0.5 * (params.p - 4.0));
        res = std::max(res, std::abs(lhs.u1[k] - (b * divD.u1[k] + c * I.u1[k])));
        res = std::max(res, std::abs(lhs.u2[k] - (b * divD.u2[k] + c * I.u2[k])));
    }
    return res;
}

}  // namespace pslip
