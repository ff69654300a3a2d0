#pragma once

#include "mpflow/boundary.hpp"
#include "mpflow/grid.hpp"

namespace mpflow {

/// Stream function of a discretely divergence-free velocity, anchored so
/// that psi vanishes at the arc anchor node. Boundary values come from
/// boundary_stream(v_trace); the interior solves the perp-gradient system
/// in least squares, which makes stream_of an exact left inverse of
/// perp_grad on anchored fields.
ScalarField stream_of(const VectorField& v, const BoundaryTrace& v_trace,
                      const GammaSpec& gamma);

/// Same, with the boundary values supplied directly (phi scalar trace,
/// already anchored).
ScalarField stream_of(const VectorField& v, const BoundaryTrace& phi_b);

/// Pointwise density evaluation rho = eta(psi).
ScalarField density_of(const ScalarField& psi, const DensityLaw& law);

} // namespace mpflow
