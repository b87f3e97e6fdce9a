#pragma once

#include "pslip/grid.hpp"
#include "pslip/stress.hpp"

namespace pslip {
namespace mms {

/// Closed-form reference field
///   u* = ( sin(pi x / Lx) cos(pi y / Ly),  c cos(pi x / Lx) sin(pi y / Ly) ).
/// It is tangent to every face, has zero tangential stress and zero
/// vorticity on every face, so it satisfies both slip variants exactly.
struct Exact {
    double Lx, Ly, c;

    Exact(const Domain& dom, double c_) : Lx(dom.Lx), Ly(dom.Ly), c(c_) {}

    double u1(double x, double y) const;
    double u2(double x, double y) const;
    /// Closed-form symmetric gradient D(u*) at a point.
    SymMat2 sym_grad(double x, double y) const;
    /// Closed-form scalar vorticity.
    double vorticity(double x, double y) const;
};

/// Samples u* on the grid (tangency holds exactly on faces).
VectorField mms_field(const Domain& dom, double c);

/// Samples D(u*) on the grid from the closed form.
TensorField mms_sym_grad(const Domain& dom, double c);

/// Forcing f = -div( B(Du*) Du* ) for the given (p, mu), evaluated by
/// fourth-order central differencing of the closed-form stress on an
/// auxiliary micro-grid of step min(Lx,Ly)/4096. For p = 2 this reduces to
/// the closed form
///   f = ( (2a^2 + b^2 + c a b) sin(ax) cos(by),
///         (2 c b^2 + c a^2 + a b) cos(ax) sin(by) ),  a = pi/Lx, b = pi/Ly.
VectorField mms_forcing(const Domain& dom, double p, double mu, double c);

/// The p = 2 closed form above, for cross-checking the differentiation path.
VectorField mms_forcing_p2_closed_form(const Domain& dom, double c);

}  // namespace mms
}  // namespace pslip
