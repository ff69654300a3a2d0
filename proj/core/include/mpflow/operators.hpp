#pragma once

#include "mpflow/grid.hpp"

namespace mpflow {

// Second-order finite differences on the uniform grid: central stencils at
// interior nodes, one-sided three-point stencils on the boundary rows.

ScalarField dx_central(const ScalarField& q);
ScalarField dy_central(const ScalarField& q);

/// perp-gradient of a stream function: (-d/dy, d/dx).
VectorField perp_grad(const ScalarField& psi);

ScalarField divergence(const VectorField& v);

/// Planar curl of a vector field: d(vy)/dx - d(vx)/dy.
ScalarField curl(const VectorField& v);

/// Planar curl of the out-of-plane scalar w: (dw/dy, -dw/dx).
VectorField curl(const ScalarField& w);

/// 5-point Laplacian at interior nodes. Boundary rows are filled with
/// one-sided second-order formulas and are diagnostic only: every solve in
/// the pipeline imposes boundary conditions strongly.
ScalarField laplacian(const ScalarField& q);
VectorField laplacian(const VectorField& v);

/// Centered v.grad(q) at interior nodes; boundary rows are zero.
ScalarField advect(const VectorField& v, const ScalarField& q);
VectorField advect(const VectorField& v, const VectorField& q);

/// Same stencil but with one-sided boundary rows filled in. Used by the
/// momentum/pressure assembly, which differentiates the result up to the
/// first interior ring.
ScalarField advect_full(const VectorField& v, const ScalarField& q);
VectorField advect_full(const VectorField& v, const VectorField& q);

enum class NormKind { L2, H1, L4, Linf };

/// Trapezoid-weighted discrete norms. H1 combines L2 with the L2 norm of
/// the forward-difference gradient.
double norm(const ScalarField& q, NormKind kind);
double norm(const VectorField& v, NormKind kind);

double max_abs(const ScalarField& q);
double max_abs(const VectorField& v);
bool all_finite(const ScalarField& q);
bool all_finite(const VectorField& v);

double max_interior_abs(const ScalarField& q);

/// Trapezoid quadrature of f over the domain.
double integrate(const ScalarField& q);

// In-place field arithmetic helpers.
void add_scaled(ScalarField& a, double s, const ScalarField& b);   // a += s*b
void add_scaled(VectorField& a, double s, const VectorField& b);
void scale(ScalarField& a, double s);
void scale(VectorField& a, double s);
ScalarField subtract(const ScalarField& a, const ScalarField& b);
VectorField subtract(const VectorField& a, const VectorField& b);

} // namespace mpflow
