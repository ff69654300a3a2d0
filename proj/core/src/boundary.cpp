#include "mpflow/boundary.hpp"

#include "mpflow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mpflow {

int boundary_node_count(const GridSpec& g) { return 2 * (g.nx + g.ny) - 4; }

double perimeter(const GridSpec& g) { return 2.0 * (g.lx + g.ly); }

std::vector<LoopNode> boundary_loop(const GridSpec& g) {
    std::vector<LoopNode> loop;
    loop.reserve(boundary_node_count(g));
    const double h = g.h;
    int k = 0;
    for (int i = 0; i < g.nx; ++i)
        loop.push_back({i, 0, (k++) * h, Edge::Bottom});
    for (int j = 1; j < g.ny; ++j)
        loop.push_back({g.nx - 1, j, (k++) * h, Edge::Right});
    for (int i = g.nx - 2; i >= 0; --i)
        loop.push_back({i, g.ny - 1, (k++) * h, Edge::Top});
    for (int j = g.ny - 2; j >= 1; --j)
        loop.push_back({0, j, (k++) * h, Edge::Left});
    // Corner nodes carry the edge that follows them: (nx-1,0) was pushed
    // with Bottom above, fix the three affected corners.
    loop[g.nx - 1].edge = Edge::Right;
    loop[g.nx - 1 + g.ny - 1].edge = Edge::Top;
    loop[2 * (g.nx - 1) + g.ny - 1].edge = Edge::Left;
    return loop;
}

void edge_normal(Edge e, double& nx, double& ny) {
    switch (e) {
        case Edge::Bottom: nx = 0.0; ny = -1.0; return;
        case Edge::Right: nx = 1.0; ny = 0.0; return;
        case Edge::Top: nx = 0.0; ny = 1.0; return;
        case Edge::Left: nx = -1.0; ny = 0.0; return;
    }
}

void edge_tangent(Edge e, double& tx, double& ty) {
    switch (e) {
        case Edge::Bottom: tx = 1.0; ty = 0.0; return;
        case Edge::Right: tx = 0.0; ty = 1.0; return;
        case Edge::Top: tx = -1.0; ty = 0.0; return;
        case Edge::Left: tx = 0.0; ty = -1.0; return;
    }
}

BoundaryTrace make_scalar_trace(const GridSpec& g) {
    BoundaryTrace t;
    t.grid = g;
    t.comps = 1;
    t.values.assign(boundary_node_count(g), 0.0);
    return t;
}

BoundaryTrace make_vector_trace(const GridSpec& g) {
    BoundaryTrace t;
    t.grid = g;
    t.comps = 2;
    t.values.assign(std::size_t(boundary_node_count(g)) * 2, 0.0);
    return t;
}

BoundaryTrace sample_scalar_trace(const GridSpec& g,
                                  const std::function<double(double, double)>& f) {
    BoundaryTrace t = make_scalar_trace(g);
    const auto loop = boundary_loop(g);
    for (int k = 0; k < int(loop.size()); ++k)
        t.value(k) = f(g.x(loop[k].i), g.y(loop[k].j));
    return t;
}

BoundaryTrace sample_vector_trace(const GridSpec& g,
                                  const std::function<double(double, double)>& fx,
                                  const std::function<double(double, double)>& fy) {
    BoundaryTrace t = make_vector_trace(g);
    const auto loop = boundary_loop(g);
    for (int k = 0; k < int(loop.size()); ++k) {
        t.vx(k) = fx(g.x(loop[k].i), g.y(loop[k].j));
        t.vy(k) = fy(g.x(loop[k].i), g.y(loop[k].j));
    }
    return t;
}

BoundaryTrace trace_of(const ScalarField& q) {
    BoundaryTrace t = make_scalar_trace(q.grid);
    const auto loop = boundary_loop(q.grid);
    for (int k = 0; k < int(loop.size()); ++k) t.value(k) = q(loop[k].i, loop[k].j);
    return t;
}

BoundaryTrace trace_of(const VectorField& v) {
    BoundaryTrace t = make_vector_trace(v.grid);
    const auto loop = boundary_loop(v.grid);
    for (int k = 0; k < int(loop.size()); ++k) {
        t.vx(k) = v.vx(loop[k].i, loop[k].j);
        t.vy(k) = v.vy(loop[k].i, loop[k].j);
    }
    return t;
}

double max_abs(const BoundaryTrace& t) {
    double m = 0.0;
    for (double a : t.values) m = std::max(m, std::abs(a));
    return m;
}

namespace {

// Edge of the loop segment between consecutive nodes k and k+1.
Edge segment_edge(const GridSpec& g, double s_mid) {
    if (s_mid < g.lx) return Edge::Bottom;
    if (s_mid < g.lx + g.ly) return Edge::Right;
    if (s_mid < 2.0 * g.lx + g.ly) return Edge::Top;
    return Edge::Left;
}

double normal_component(const BoundaryTrace& v, int k, Edge e) {
    double nx, ny;
    edge_normal(e, nx, ny);
    return v.vx(k) * nx + v.vy(k) * ny;
}

} // namespace

double check_compatibility(const BoundaryTrace& v0) {
    if (v0.comps != 2) throw std::invalid_argument("vector trace required");
    const GridSpec& g = v0.grid;
    const auto loop = boundary_loop(g);
    const int n = int(loop.size());
    double flux = 0.0;
    for (int k = 0; k < n; ++k) {
        const int k1 = (k + 1) % n;
        const double s_mid = loop[k].s + 0.5 * g.h;
        const Edge e = segment_edge(g, s_mid);
        flux += 0.5 * g.h * (normal_component(v0, k, e) + normal_component(v0, k1, e));
    }
    return flux;
}

std::pair<int, int> gamma_node_range(const GridSpec& g, const GammaSpec& gamma) {
    const double h = g.h;
    const double stol = 1e-6 * h;
    const int n = boundary_node_count(g);
    int first = int(std::ceil((gamma.s_start - stol) / h));
    int last = int(std::floor((gamma.s_end + stol) / h));
    first = std::max(first, 0);
    last = std::min(last, n - 1);
    if (last < first) throw std::runtime_error("Gamma arc contains no boundary nodes");
    return {first, last};
}

GammaSpec make_gamma(const GridSpec& g, double s_start, double s_end) {
    if (!(0.0 <= s_start && s_start < s_end && s_end <= perimeter(g)))
        throw std::invalid_argument("Gamma arc bounds out of order");
    GammaSpec gamma;
    gamma.s_start = s_start;
    gamma.s_end = s_end;
    gamma.anchor_index = gamma_node_range(g, gamma).first;
    return gamma;
}

void validate_gamma(const BoundaryTrace& v0, const GammaSpec& gamma, double flux_floor) {
    const GridSpec& g = v0.grid;
    if (!(0.0 <= gamma.s_start && gamma.s_start < gamma.s_end &&
          gamma.s_end <= perimeter(g)))
        throw std::invalid_argument("Gamma arc bounds out of order");
    const auto [first, last] = gamma_node_range(g, gamma);
    if (gamma.anchor_index != first)
        throw std::invalid_argument("Gamma anchor is not the first arc node");
    if (last - first < 1) throw std::runtime_error("Gamma arc needs at least two nodes");
    const auto loop = boundary_loop(g);
    for (int k = first; k <= last; ++k) {
        if (normal_component(v0, k, loop[k].edge) >= -flux_floor)
            throw std::runtime_error("Gamma not strict inflow");
    }
}

BoundaryTrace boundary_stream(const BoundaryTrace& v0, const GammaSpec& gamma) {
    if (v0.comps != 2) throw std::invalid_argument("vector trace required");
    const GridSpec& g = v0.grid;
    const auto loop = boundary_loop(g);
    const int n = int(loop.size());
    const int k0 = gamma.anchor_index;

    std::vector<double> phi(n + 1, 0.0);
    for (int m = 0; m < n; ++m) {
        const int k = (k0 + m) % n;
        const int k1 = (k0 + m + 1) % n;
        const double s_mid = loop[k].s + 0.5 * g.h;
        const Edge e = segment_edge(g, s_mid);
        phi[m + 1] = phi[m] - 0.5 * g.h *
                     (normal_component(v0, k, e) + normal_component(v0, k1, e));
    }
    const double gap = phi[n];
    const double tol = 1e-10 * std::max(1.0, max_abs(v0)) * perimeter(g);
    if (std::abs(gap) > tol) throw std::runtime_error("incompatible flux");

    BoundaryTrace out = make_scalar_trace(g);
    for (int m = 0; m < n; ++m) {
        const int k = (k0 + m) % n;
        out.value(k) = phi[m] - gap * double(m) / double(n);
    }
    return out;
}

double DensityLaw::operator()(double y) const {
    const auto& b = breakpoints;
    if (b.empty()) return sup_norm;
    if (y <= b.front()) return rho_values.front();
    if (y >= b.back()) return rho_values.back();
    const auto it = std::upper_bound(b.begin(), b.end(), y);
    const std::size_t k = std::size_t(it - b.begin());
    const double t = (y - b[k - 1]) / (b[k] - b[k - 1]);
    return rho_values[k - 1] + t * (rho_values[k] - rho_values[k - 1]);
}

DensityLaw make_constant_law(double rho) {
    if (rho <= 0.0) throw std::runtime_error("nonpositive boundary density");
    DensityLaw law;
    law.breakpoints = {0.0};
    law.rho_values = {rho};
    law.lipschitz = 0.0;
    law.sup_norm = rho;
    law.min_value = rho;
    return law;
}

DensityLaw build_density_law(const BoundaryTrace& rho0, const BoundaryTrace& phi_b,
                             const GammaSpec& gamma) {
    require_same_grid(rho0.grid, phi_b.grid);
    const auto [first, last] = gamma_node_range(rho0.grid, gamma);
    DensityLaw law;
    for (int k = first; k <= last; ++k) {
        const double y = phi_b.value(k);
        const double r = rho0.value(k);
        if (r <= 0.0) throw std::runtime_error("nonpositive boundary density");
        if (!law.breakpoints.empty() && y <= law.breakpoints.back())
            throw std::runtime_error("Gamma not strict inflow");
        law.breakpoints.push_back(y);
        law.rho_values.push_back(r);
    }
    law.sup_norm = *std::max_element(law.rho_values.begin(), law.rho_values.end());
    law.min_value = *std::min_element(law.rho_values.begin(), law.rho_values.end());
    law.lipschitz = 0.0;
    for (std::size_t k = 1; k < law.breakpoints.size(); ++k) {
        const double slope = std::abs(law.rho_values[k] - law.rho_values[k - 1]) /
                             (law.breakpoints[k] - law.breakpoints[k - 1]);
        law.lipschitz = std::max(law.lipschitz, slope);
    }
    return law;
}

ScalarField solve_dirichlet_poisson(const GridSpec& g, const ScalarField* rhs,
                                    const BoundaryTrace& bc) {
    const int nxu = g.nx - 2;
    const int nyu = g.ny - 2;
    const int n = nxu * nyu;
    const double invh2 = 1.0 / (g.h * g.h);

    ScalarField u(g);
    const auto loop = boundary_loop(g);
    for (int k = 0; k < int(loop.size()); ++k) u(loop[k].i, loop[k].j) = bc.value(k);

    auto idx = [&](int i, int j) { return (j - 1) * nxu + (i - 1); };
    SparseMatrix A(n);
    std::vector<double> b(n, 0.0);
    for (int j = 1; j <= nyu; ++j) {
        for (int i = 1; i <= nxu; ++i) {
            const int r = idx(i, j);
            A.add(r, r, 4.0 * invh2);
            const int di[4] = {1, -1, 0, 0};
            const int dj[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                const int ti = i + di[d];
                const int tj = j + dj[d];
                if (ti >= 1 && ti <= nxu && tj >= 1 && tj <= nyu)
                    A.add(r, idx(ti, tj), -invh2);
                else
                    b[r] += invh2 * u(ti, tj);
            }
            if (rhs) b[r] -= (*rhs)(i, j);
        }
    }
    A.finalize();
    auto [x, rep] = conjugate_gradient(A, b, 1e-12, 40 * (g.nx + g.ny));
    if (!rep.converged) {
        auto [xd, repd] = solve_linear(A, b, SolveMethod::Direct);
        x = std::move(xd);
        if (!repd.converged) throw std::runtime_error("linear solve failed");
    }
    for (int j = 1; j <= nyu; ++j)
        for (int i = 1; i <= nxu; ++i) u(i, j) = x[idx(i, j)];
    return u;
}

ScalarField build_lift_w(const BoundaryTrace& w0) {
    if (w0.comps != 1) throw std::invalid_argument("scalar trace required");
    return solve_dirichlet_poisson(w0.grid, nullptr, w0);
}

void correct_normal_derivative_layer(ScalarField& psi, const BoundaryTrace& target) {
    require_same_grid(psi.grid, target.grid);
    const GridSpec& g = psi.grid;
    const int nx = g.nx;
    const int ny = g.ny;
    const double h2 = 2.0 * g.h;

    // Loop-index lookup for the four edges.
    const auto loop = boundary_loop(g);
    std::vector<int> loop_index(g.size(), -1);
    for (int k = 0; k < int(loop.size()); ++k)
        loop_index[std::size_t(loop[k].j) * nx + loop[k].i] = k;
    auto tgt = [&](int i, int j) { return target.value(loop_index[std::size_t(j) * nx + i]); };

    // Left/right columns first: the bottom/top passes read the corrected
    // (1,2)-type values so the corner chains stay consistent.
    for (int j = 2; j <= ny - 3; ++j) {
        psi(1, j) = (-h2 * tgt(0, j) + 3.0 * psi(0, j) + psi(2, j)) / 4.0;
        psi(nx - 2, j) =
            (3.0 * psi(nx - 1, j) + psi(nx - 3, j) - h2 * tgt(nx - 1, j)) / 4.0;
    }
    for (int i = 1; i <= nx - 2; ++i) {
        psi(i, 1) = (-h2 * tgt(i, 0) + 3.0 * psi(i, 0) + psi(i, 2)) / 4.0;
        psi(i, ny - 2) =
            (3.0 * psi(i, ny - 1) + psi(i, ny - 3) - h2 * tgt(i, ny - 1)) / 4.0;
    }
}

namespace {

ScalarField bubble_stream(const GridSpec& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double c[3][3];
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
            c[m][n] = uni(rng) / double((m + 1) * (m + 1) + (n + 1) * (n + 1));
    const double pi = 3.14159265358979323846;
    return sample(g, [&](double x, double y) {
        const double xh = x / g.lx;
        const double yh = y / g.ly;
        const double b = xh * (1.0 - xh) * yh * (1.0 - yh);
        double s = 0.0;
        for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n)
                s += c[m][n] * std::sin((m + 1) * pi * xh) * std::sin((n + 1) * pi * yh);
        return b * b * s;
    });
}

} // namespace

HopfExtension build_hopf_extension(const BoundaryTrace& v0, const BoundaryTrace& phi_b,
                                   double eps) {
    require_same_grid(v0.grid, phi_b.grid);
    const GridSpec& g = v0.grid;
    if (eps < 2.0 * g.h) throw std::runtime_error("eps too small for grid");

    ScalarField big_phi = solve_dirichlet_poisson(g, nullptr, phi_b);

    // Cutoff support shrinks by one cell so every node farther than eps from
    // the boundary has an identically zero stencil.
    const double eps_eff = eps - g.h;
    ScalarField s(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double d = g.h * std::min(std::min(i, g.nx - 1 - i),
                                            std::min(j, g.ny - 1 - j));
            const double t = d / eps_eff;
            const double theta = t >= 1.0 ? 0.0 : 1.0 - 3.0 * t * t + 2.0 * t * t * t;
            s(i, j) = theta * big_phi(i, j);
        }
    }

    // Tangential-velocity targets: normal derivative of the stream equals
    // v0 . tau along the loop.
    const auto loop = boundary_loop(g);
    BoundaryTrace target = make_scalar_trace(g);
    for (int k = 0; k < int(loop.size()); ++k) {
        double tx, ty;
        edge_tangent(loop[k].edge, tx, ty);
        target.value(k) = v0.vx(k) * tx + v0.vy(k) * ty;
    }
    correct_normal_derivative_layer(s, target);

    HopfExtension ext;
    ext.stream = s;
    ext.a = perp_grad(s);
    ext.eps = eps;

    // Reproducible lower bound for the layer smallness constant: the
    // worst quotient over a fixed pseudo-random panel of test fields.
    std::mt19937_64 rng(kDeltaPanelSeed);
    double delta = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        ScalarField chi = bubble_stream(g, rng);
        VectorField phi = perp_grad(chi);
        ScalarField num(g), den(g);
        ScalarField px(g), py(g);
        px.v = phi.x;
        py.v = phi.y;
        ScalarField dpx_dx = dx_central(px), dpx_dy = dy_central(px);
        ScalarField dpy_dx = dx_central(py), dpy_dy = dy_central(py);
        for (std::size_t k = 0; k < num.v.size(); ++k) {
            const double a2 = ext.a.x[k] * ext.a.x[k] + ext.a.y[k] * ext.a.y[k];
            const double p2 = phi.x[k] * phi.x[k] + phi.y[k] * phi.y[k];
            num.v[k] = a2 * p2;
            den.v[k] = dpx_dx.v[k] * dpx_dx.v[k] + dpx_dy.v[k] * dpx_dy.v[k] +
                       dpy_dx.v[k] * dpy_dx.v[k] + dpy_dy.v[k] * dpy_dy.v[k];
        }
        const double nu = integrate(num);
        const double de = integrate(den);
        if (de > 0.0) delta = std::max(delta, std::sqrt(std::max(nu, 0.0) / de));
    }
    ext.measured_delta = delta;
    return ext;
}

double boundary_h_half_norm(const BoundaryTrace& t) {
    const GridSpec& g = t.grid;
    const auto loop = boundary_loop(g);
    const int n = int(loop.size());
    const double ds = g.h;
    const double per = perimeter(g);

    double l2sq = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int c = 0; c < t.comps; ++c) {
            const double f = t.values[std::size_t(k) * t.comps + c];
            l2sq += f * f * ds;
        }
    }
    double semi = 0.0;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            const double dd = std::abs(loop[a].s - loop[b].s);
            const double d = std::min(dd, per - dd);
            double diff2 = 0.0;
            for (int c = 0; c < t.comps; ++c) {
                const double df = t.values[std::size_t(a) * t.comps + c] -
                                  t.values[std::size_t(b) * t.comps + c];
                diff2 += df * df;
            }
            semi += diff2 / (d * d) * ds * ds;
        }
    }
    return std::sqrt(l2sq + semi);
}

} // namespace mpflow
