#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace pslip {

/// Structured rectangular domain [0,Lx] x [0,Ly] with a vertex-centered
/// collocated grid: Nx x Ny interior nodes plus boundary nodes, spacings
/// hx = Lx/(Nx+1), hy = Ly/(Ny+1).
///
/// The default 1.0 x 0.7 rectangle has no rotational symmetry, so the only
/// rigid field tangent to the boundary is zero and ||Dv||_p alone is a norm
/// on the constrained space.
struct Domain {
    double Lx = 1.0;
    double Ly = 0.7;
    int Nx = 32;
    int Ny = 32;

    Domain() = default;
    Domain(double lx, double ly, int nx, int ny);

    double hx() const { return Lx / (Nx + 1); }
    double hy() const { return Ly / (Ny + 1); }
    int nodes_x() const { return Nx + 2; }
    int nodes_y() const { return Ny + 2; }
    std::size_t num_nodes() const { return static_cast<std::size_t>(nodes_x()) * nodes_y(); }
    std::size_t id(int i, int j) const { return static_cast<std::size_t>(j) * nodes_x() + i; }
    double x(int i) const { return i * hx(); }
    double y(int j) const { return j * hy(); }
    bool is_boundary(int i, int j) const {
        return i == 0 || i == Nx + 1 || j == 0 || j == Ny + 1;
    }
    /// Trapezoid quadrature weight of a node.
    double weight(int i, int j) const {
        const double wx = (i == 0 || i == Nx + 1) ? 0.5 * hx() : hx();
        const double wy = (j == 0 || j == Ny + 1) ? 0.5 * hy() : hy();
        return wx * wy;
    }
    double area() const { return Lx * Ly; }
};

/// Slip boundary-condition variant. Both demand tangency u.n = 0; they
/// differ in the second condition: vanishing tangential stress (Du.n)_tau
/// versus vanishing vorticity. On a rectangle every face is flat and the
/// two conditions coincide; the solver keeps both variants as genuinely
/// separate assembly paths so the coincidence is measurable.
enum class BcVariant { NavierStress, BardosVorticity };

std::string to_string(BcVariant v);

struct ScalarField {
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Domain& dom) : v(dom.num_nodes(), 0.0) {}
    double& operator()(const Domain& dom, int i, int j) { return v[dom.id(i, j)]; }
    double operator()(const Domain& dom, int i, int j) const { return v[dom.id(i, j)]; }
    std::size_t size() const { return v.size(); }
};

/// Two-component nodal vector field, the unknown u or the data f.
struct VectorField {
    std::vector<double> u1, u2;
    bool tangency_enforced = false;

    VectorField() = default;
    explicit VectorField(const Domain& dom)
        : u1(dom.num_nodes(), 0.0), u2(dom.num_nodes(), 0.0) {}
    std::size_t size() const { return u1.size(); }
};

/// Nodal 2x2 tensor samples. The symmetric flag records that t21 was
/// produced as a bitwise copy of t12.
struct TensorField {
    std::vector<double> t11, t12, t21, t22;
    bool symmetric = false;

    TensorField() = default;
    explicit TensorField(const Domain& dom)
        : t11(dom.num_nodes(), 0.0),
          t12(dom.num_nodes(), 0.0),
          t21(dom.num_nodes(), 0.0),
          t22(dom.num_nodes(), 0.0) {}
    std::size_t size() const { return t11.size(); }
};

/// Nodal samples of the gradient of a symmetric tensor field:
/// d{x,y}_{11,12,22} hold the six distinct entries of grad(D).
struct TensorGradField {
    std::vector<double> dx11, dx12, dx22, dy11, dy12, dy22;

    TensorGradField() = default;
    explicit TensorGradField(const Domain& dom)
        : dx11(dom.num_nodes(), 0.0), dx12(dom.num_nodes(), 0.0), dx22(dom.num_nodes(), 0.0),
          dy11(dom.num_nodes(), 0.0), dy12(dom.num_nodes(), 0.0), dy22(dom.num_nodes(), 0.0) {}
};

// ---------------------------------------------------------------------------
// Elementary field algebra
// ---------------------------------------------------------------------------

VectorField sample_vector(const Domain& dom,
                          const std::function<double(double, double)>& f1,
                          const std::function<double(double, double)>& f2);
ScalarField sample_scalar(const Domain& dom,
                          const std::function<double(double, double)>& f);

void axpy(double a, const VectorField& x, VectorField& y);   // y += a*x
void scale(VectorField& x, double a);
VectorField lin_comb(double a, const VectorField& x, double b, const VectorField& y);
double max_abs_diff(const VectorField& a, const VectorField& b);

// ---------------------------------------------------------------------------
// Discrete differential operators
// ---------------------------------------------------------------------------
// Centered second-order differences in the interior. The boundary closure is
// the one-sided second-order 4-point stencil whose truncation error matches
// the interior profile (-h^2/6 f'''), so compositions of these operators stay
// second-order accurate in the sup norm up to the boundary.

ScalarField ddx(const ScalarField& f, const Domain& dom);
ScalarField ddy(const ScalarField& f, const Domain& dom);

/// Symmetric gradient D(u)_ij = d_i u_j + d_j u_i (no 1/2 factor).
/// Output has t21 == t12 bitwise and the symmetric flag set.
TensorField sym_grad(const VectorField& u, const Domain& dom);

/// Full velocity gradient, stored as t_ij = d_i u_j.
TensorField grad_vector(const VectorField& u, const Domain& dom);

/// (div T)_j = d_i T_ij.
VectorField div_tensor(const TensorField& T, const Domain& dom);

/// Scalar vorticity w = d_1 u_2 - d_2 u_1 (2-D realization of curl).
ScalarField curl2(const VectorField& u, const Domain& dom);

/// Gradient of a symmetric tensor field, component by component.
TensorGradField grad_tensor(const TensorField& T, const Domain& dom);

/// Pointwise Frobenius magnitude |grad D| = (sum_k [ (dk d11)^2
/// + 2 (dk d12)^2 + (dk d22)^2 ])^{1/2}.
ScalarField grad_tensor_magnitude(const TensorGradField& g, const Domain& dom);

/// Pointwise |T| = (sum_ij T_ij^2)^{1/2} (off-diagonals counted twice for
/// symmetric input).
ScalarField tensor_magnitude(const TensorField& T, const Domain& dom);

ScalarField vector_magnitude(const VectorField& u, const Domain& dom);

// ---------------------------------------------------------------------------
// Norms (trapezoid quadrature)
// ---------------------------------------------------------------------------

double lq_norm(const ScalarField& f, double q, const Domain& dom);
double lq_norm(const VectorField& u, double q, const Domain& dom);
double lq_norm(const TensorField& T, double q, const Domain& dom);
double linf_norm(const ScalarField& f);
double linf_norm(const TensorField& T, const Domain& dom);

/// Discrete W^{2,q} surrogate ||grad D u||_q.
double w2q_surrogate(const VectorField& u, const Domain& dom, double q);

/// (||u||_p^p + ||grad u||_p^p)^{1/p}.
double w1p_norm(const VectorField& u, const Domain& dom, double p);

double l2_norm(const VectorField& u, const Domain& dom);

// ---------------------------------------------------------------------------
// Boundary conditions
// ---------------------------------------------------------------------------

/// Zeroes the normal component on each face (u1 on x-faces, u2 on y-faces,
/// both at corners) and marks the field tangent. The tangential-stress or
/// vorticity part of the slip condition is natural for the variational
/// operator and needs no strong enforcement; on flat faces the two variants
/// impose the same constraint set.
VectorField apply_slip_bc(VectorField u, BcVariant variant, const Domain& dom);

// ---------------------------------------------------------------------------
// CSV dumps
// ---------------------------------------------------------------------------

/// Header "x,y,u1,u2"; node-ordered, row-major, 17 significant digits.
void dump_vector_csv(const std::string& path, const VectorField& u, const Domain& dom);
/// Header "x,y,d11,d12,d22".
void dump_tensor_csv(const std::string& path, const TensorField& T, const Domain& dom);

}  // namespace pslip
