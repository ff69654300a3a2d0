#pragma once

#include "mpflow/grid.hpp"
#include "mpflow/operators.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace mpflow {

enum class Edge { Bottom, Right, Top, Left };

/// One node of the counterclockwise boundary loop that starts at (0,0).
/// Corner nodes carry the edge that follows them in traversal order.
struct LoopNode {
    int i = 0;
    int j = 0;
    double s = 0.0;
    Edge edge = Edge::Bottom;
};

std::vector<LoopNode> boundary_loop(const GridSpec& g);
int boundary_node_count(const GridSpec& g);
double perimeter(const GridSpec& g);

/// Outward normal / counterclockwise tangent of an edge.
void edge_normal(Edge e, double& nx, double& ny);
void edge_tangent(Edge e, double& tx, double& ty);

/// Values sampled on the boundary loop; one (scalar) or two (vector)
/// components per node, ordered like boundary_loop().
struct BoundaryTrace {
    GridSpec grid;
    int comps = 1;
    std::vector<double> values; // comps * node_count, node-major

    double value(int k) const { return values[std::size_t(k) * comps]; }
    double vx(int k) const { return values[std::size_t(k) * comps]; }
    double vy(int k) const { return values[std::size_t(k) * comps + 1]; }
    double& value(int k) { return values[std::size_t(k) * comps]; }
    double& vx(int k) { return values[std::size_t(k) * comps]; }
    double& vy(int k) { return values[std::size_t(k) * comps + 1]; }
    int count() const { return int(values.size()) / comps; }
};

BoundaryTrace make_scalar_trace(const GridSpec& g);
BoundaryTrace make_vector_trace(const GridSpec& g);
BoundaryTrace sample_scalar_trace(const GridSpec& g,
                                  const std::function<double(double, double)>& f);
BoundaryTrace sample_vector_trace(const GridSpec& g,
                                  const std::function<double(double, double)>& fx,
                                  const std::function<double(double, double)>& fy);

/// Boundary restriction of a grid field.
BoundaryTrace trace_of(const ScalarField& q);
BoundaryTrace trace_of(const VectorField& v);

double max_abs(const BoundaryTrace& t);

/// Inflow arc: a single connected stretch of the loop (no wrap through
/// s = 0) on which v0.n stays strictly negative.
struct GammaSpec {
    double s_start = 0.0;
    double s_end = 0.0;
    int anchor_index = 0; // loop index of the first arc node
};

/// Loop indices [first, last] of the nodes inside the arc.
std::pair<int, int> gamma_node_range(const GridSpec& g, const GammaSpec& gamma);

/// Builds the arc and anchors it at its first boundary node.
GammaSpec make_gamma(const GridSpec& g, double s_start, double s_end);

/// Checks arc bounds, connectivity, anchor placement and strict inflow
/// (v0.n < -flux_floor at every arc node). Throws on violation.
void validate_gamma(const BoundaryTrace& v0, const GammaSpec& gamma,
                    double flux_floor = 1e-10);

/// Net flux of a vector trace: trapezoid value of the loop integral of
/// v0.n. The caller treats |net| > 1e-10 * max|v0| * perimeter as fatal.
double check_compatibility(const BoundaryTrace& v0);

/// Boundary stream function: phi(s) = -integral of v0.n from the arc
/// anchor, single-valued after redistributing the closure gap. Throws
/// "incompatible flux" when the gap exceeds tolerance.
BoundaryTrace boundary_stream(const BoundaryTrace& v0, const GammaSpec& gamma);

/// rho = eta(psi) law: piecewise-linear between breakpoints synthesized
/// from boundary data, constant beyond the covered range.
struct DensityLaw {
    std::vector<double> breakpoints;
    std::vector<double> rho_values;
    double lipschitz = 0.0;
    double sup_norm = 0.0;
    double min_value = 0.0;

    double operator()(double y) const;
};

DensityLaw make_constant_law(double rho);

/// Breakpoints are the boundary stream values at the arc nodes, so that
/// eta(phi_b(x)) reproduces rho0(x) exactly there. rho0 is a scalar trace
/// read only on the arc nodes.
DensityLaw build_density_law(const BoundaryTrace& rho0, const BoundaryTrace& phi_b,
                             const GammaSpec& gamma);

/// Divergence-free boundary-layer extension of the boundary velocity,
/// stored with its defining stream function. The layer stream is the
/// harmonic extension of phi_b under a C^1 cutoff of width eps, with the
/// first interior layer adjusted so the one-sided normal derivative (the
/// tangential velocity trace) matches v0 at edge nodes.
struct HopfExtension {
    VectorField a;
    ScalarField stream;
    double eps = 0.0;
    double measured_delta = 0.0;
};

/// Seed of the fixed 50-function panel behind measured_delta.
inline constexpr std::uint64_t kDeltaPanelSeed = 732001u;

HopfExtension build_hopf_extension(const BoundaryTrace& v0, const BoundaryTrace& phi_b,
                                   double eps);

/// Discrete harmonic extension of a scalar boundary trace (Dirichlet
/// 5-point Laplace solve). The trace is matched nodewise.
ScalarField build_lift_w(const BoundaryTrace& w0);

/// Discrete Sobolev-Slobodeckij surrogate of the H^{1/2} boundary norm,
/// used only for reporting.
double boundary_h_half_norm(const BoundaryTrace& t);

/// Overwrites the first interior layer of psi so that the one-sided normal
/// derivative at every non-corner edge node equals the given tangential
/// velocity target. With a zero boundary row and zero targets the corrected
/// field has an exactly zero perp-gradient trace.
void correct_normal_derivative_layer(ScalarField& psi, const BoundaryTrace& target);

/// Dirichlet Poisson solve (5-point): laplacian(u) = rhs in the interior,
/// u = bc on the boundary. rhs may be empty for a harmonic extension.
ScalarField solve_dirichlet_poisson(const GridSpec& g, const ScalarField* rhs,
                                    const BoundaryTrace& bc);

} // namespace mpflow
