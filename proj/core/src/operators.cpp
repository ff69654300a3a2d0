#include "mpflow/operators.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace mpflow {

GridSpec make_grid(int nx, int ny, double lx, double ly) {
    if (nx < 5 || ny < 5) throw std::invalid_argument("grid needs nx, ny >= 5");
    if (lx <= 0.0 || ly <= 0.0) throw std::invalid_argument("grid needs lx, ly > 0");
    const double hx = lx / (nx - 1);
    const double hy = ly / (ny - 1);
    if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy))
        throw std::invalid_argument("square cells required: lx/(nx-1) != ly/(ny-1)");
    GridSpec g;
    g.nx = nx;
    g.ny = ny;
    g.lx = lx;
    g.ly = ly;
    g.h = hx;
    return g;
}

namespace {

// One-dimensional derivative along x at node i of row j.
inline double d_dx(const ScalarField& q, int i, int j, double inv2h) {
    const int nx = q.grid.nx;
    if (i == 0) return (-3.0 * q(0, j) + 4.0 * q(1, j) - q(2, j)) * inv2h;
    if (i == nx - 1)
        return (3.0 * q(nx - 1, j) - 4.0 * q(nx - 2, j) + q(nx - 3, j)) * inv2h;
    return (q(i + 1, j) - q(i - 1, j)) * inv2h;
}

inline double d_dy(const ScalarField& q, int i, int j, double inv2h) {
    const int ny = q.grid.ny;
    if (j == 0) return (-3.0 * q(i, 0) + 4.0 * q(i, 1) - q(i, 2)) * inv2h;
    if (j == ny - 1)
        return (3.0 * q(i, ny - 1) - 4.0 * q(i, ny - 2) + q(i, ny - 3)) * inv2h;
    return (q(i, j + 1) - q(i, j - 1)) * inv2h;
}

inline double d2_dx2(const ScalarField& q, int i, int j, double invh2) {
    const int nx = q.grid.nx;
    if (i == 0) return (2.0 * q(0, j) - 5.0 * q(1, j) + 4.0 * q(2, j) - q(3, j)) * invh2;
    if (i == nx - 1)
        return (2.0 * q(nx - 1, j) - 5.0 * q(nx - 2, j) + 4.0 * q(nx - 3, j) - q(nx - 4, j)) * invh2;
    return (q(i + 1, j) - 2.0 * q(i, j) + q(i - 1, j)) * invh2;
}

inline double d2_dy2(const ScalarField& q, int i, int j, double invh2) {
    const int ny = q.grid.ny;
    if (j == 0) return (2.0 * q(i, 0) - 5.0 * q(i, 1) + 4.0 * q(i, 2) - q(i, 3)) * invh2;
    if (j == ny - 1)
        return (2.0 * q(i, ny - 1) - 5.0 * q(i, ny - 2) + 4.0 * q(i, ny - 3) - q(i, ny - 4)) * invh2;
    return (q(i, j + 1) - 2.0 * q(i, j) + q(i, j - 1)) * invh2;
}

inline double trap_w(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

} // namespace

ScalarField dx_central(const ScalarField& q) {
    ScalarField r(q.grid);
    const double inv2h = 0.5 / q.grid.h;
    for (int j = 0; j < q.grid.ny; ++j)
        for (int i = 0; i < q.grid.nx; ++i) r(i, j) = d_dx(q, i, j, inv2h);
    return r;
}

ScalarField dy_central(const ScalarField& q) {
    ScalarField r(q.grid);
    const double inv2h = 0.5 / q.grid.h;
    for (int j = 0; j < q.grid.ny; ++j)
        for (int i = 0; i < q.grid.nx; ++i) r(i, j) = d_dy(q, i, j, inv2h);
    return r;
}

VectorField perp_grad(const ScalarField& psi) {
    VectorField v(psi.grid);
    const double inv2h = 0.5 / psi.grid.h;
    for (int j = 0; j < psi.grid.ny; ++j)
        for (int i = 0; i < psi.grid.nx; ++i) {
            v.vx(i, j) = -d_dy(psi, i, j, inv2h);
            v.vy(i, j) = d_dx(psi, i, j, inv2h);
        }
    return v;
}

ScalarField divergence(const VectorField& v) {
    ScalarField r(v.grid);
    const double inv2h = 0.5 / v.grid.h;
    ScalarField qx(v.grid), qy(v.grid);
    qx.v = v.x;
    qy.v = v.y;
    for (int j = 0; j < v.grid.ny; ++j)
        for (int i = 0; i < v.grid.nx; ++i)
            r(i, j) = d_dx(qx, i, j, inv2h) + d_dy(qy, i, j, inv2h);
    return r;
}

ScalarField curl(const VectorField& v) {
    ScalarField r(v.grid);
    const double inv2h = 0.5 / v.grid.h;
    ScalarField qx(v.grid), qy(v.grid);
    qx.v = v.x;
    qy.v = v.y;
    for (int j = 0; j < v.grid.ny; ++j)
        for (int i = 0; i < v.grid.nx; ++i)
            r(i, j) = d_dx(qy, i, j, inv2h) - d_dy(qx, i, j, inv2h);
    return r;
}

VectorField curl(const ScalarField& w) {
    VectorField r(w.grid);
    const double inv2h = 0.5 / w.grid.h;
    for (int j = 0; j < w.grid.ny; ++j)
        for (int i = 0; i < w.grid.nx; ++i) {
            r.vx(i, j) = d_dy(w, i, j, inv2h);
            r.vy(i, j) = -d_dx(w, i, j, inv2h);
        }
    return r;
}

ScalarField laplacian(const ScalarField& q) {
    ScalarField r(q.grid);
    const double invh2 = 1.0 / (q.grid.h * q.grid.h);
    for (int j = 0; j < q.grid.ny; ++j)
        for (int i = 0; i < q.grid.nx; ++i)
            r(i, j) = d2_dx2(q, i, j, invh2) + d2_dy2(q, i, j, invh2);
    return r;
}

VectorField laplacian(const VectorField& v) {
    VectorField r(v.grid);
    ScalarField qx(v.grid), qy(v.grid);
    qx.v = v.x;
    qy.v = v.y;
    ScalarField lx = laplacian(qx);
    ScalarField ly = laplacian(qy);
    r.x = lx.v;
    r.y = ly.v;
    return r;
}

namespace {

ScalarField advect_scalar(const VectorField& v, const ScalarField& q, bool fill_boundary) {
    require_same_grid(v.grid, q.grid);
    ScalarField r(q.grid);
    const double inv2h = 0.5 / q.grid.h;
    const int i0 = fill_boundary ? 0 : 1;
    const int j0 = fill_boundary ? 0 : 1;
    const int i1 = fill_boundary ? q.grid.nx : q.grid.nx - 1;
    const int j1 = fill_boundary ? q.grid.ny : q.grid.ny - 1;
    for (int j = j0; j < j1; ++j)
        for (int i = i0; i < i1; ++i)
            r(i, j) = v.vx(i, j) * d_dx(q, i, j, inv2h) + v.vy(i, j) * d_dy(q, i, j, inv2h);
    return r;
}

} // namespace

ScalarField advect(const VectorField& v, const ScalarField& q) {
    return advect_scalar(v, q, false);
}

ScalarField advect_full(const VectorField& v, const ScalarField& q) {
    return advect_scalar(v, q, true);
}

VectorField advect(const VectorField& v, const VectorField& q) {
    require_same_grid(v.grid, q.grid);
    ScalarField qx(q.grid), qy(q.grid);
    qx.v = q.x;
    qy.v = q.y;
    VectorField r(q.grid);
    r.x = advect_scalar(v, qx, false).v;
    r.y = advect_scalar(v, qy, false).v;
    return r;
}

VectorField advect_full(const VectorField& v, const VectorField& q) {
    require_same_grid(v.grid, q.grid);
    ScalarField qx(q.grid), qy(q.grid);
    qx.v = q.x;
    qy.v = q.y;
    VectorField r(q.grid);
    r.x = advect_scalar(v, qx, true).v;
    r.y = advect_scalar(v, qy, true).v;
    return r;
}

namespace {

double lp_norm(const ScalarField& q, int p) {
    const GridSpec& g = q.grid;
    const double cell = g.h * g.h;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double wj = trap_w(j, g.ny);
        for (int i = 0; i < g.nx; ++i) {
            const double w = wj * trap_w(i, g.nx);
            const double a = q(i, j);
            s += w * cell * (p == 2 ? a * a : a * a * a * a);
        }
    }
    return p == 2 ? std::sqrt(s) : std::sqrt(std::sqrt(s));
}

// Squared L2 norm of the forward-difference gradient, trapezoid-weighted in
// the transverse direction.
double grad_l2_sq(const ScalarField& q) {
    const GridSpec& g = q.grid;
    const double cell = g.h * g.h;
    const double invh = 1.0 / g.h;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double wj = trap_w(j, g.ny);
        for (int i = 0; i + 1 < g.nx; ++i) {
            const double gx = (q(i + 1, j) - q(i, j)) * invh;
            s += wj * cell * gx * gx;
        }
    }
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double wi = trap_w(i, g.nx);
            const double gy = (q(i, j + 1) - q(i, j)) * invh;
            s += wi * cell * gy * gy;
        }
    }
    return s;
}

} // namespace

double norm(const ScalarField& q, NormKind kind) {
    switch (kind) {
        case NormKind::L2: return lp_norm(q, 2);
        case NormKind::L4: return lp_norm(q, 4);
        case NormKind::Linf: return max_abs(q);
        case NormKind::H1: {
            const double l2 = lp_norm(q, 2);
            return std::sqrt(l2 * l2 + grad_l2_sq(q));
        }
    }
    return 0.0;
}

double norm(const VectorField& v, NormKind kind) {
    ScalarField qx(v.grid), qy(v.grid);
    qx.v = v.x;
    qy.v = v.y;
    if (kind == NormKind::Linf) return std::max(max_abs(qx), max_abs(qy));
    const double a = norm(qx, kind);
    const double b = norm(qy, kind);
    if (kind == NormKind::L4)
        return std::sqrt(std::sqrt(a * a * a * a + b * b * b * b));
    return std::sqrt(a * a + b * b);
}

double max_abs(const ScalarField& q) {
    double m = 0.0;
    for (double a : q.v) m = std::max(m, std::abs(a));
    return m;
}

double max_abs(const VectorField& v) {
    double m = 0.0;
    for (double a : v.x) m = std::max(m, std::abs(a));
    for (double a : v.y) m = std::max(m, std::abs(a));
    return m;
}

bool all_finite(const ScalarField& q) {
    for (double a : q.v)
        if (!std::isfinite(a)) return false;
    return true;
}

bool all_finite(const VectorField& v) {
    for (double a : v.x)
        if (!std::isfinite(a)) return false;
    for (double a : v.y)
        if (!std::isfinite(a)) return false;
    return true;
}

double max_interior_abs(const ScalarField& q) {
    double m = 0.0;
    for (int j = 1; j + 1 < q.grid.ny; ++j)
        for (int i = 1; i + 1 < q.grid.nx; ++i) m = std::max(m, std::abs(q(i, j)));
    return m;
}

double integrate(const ScalarField& q) {
    const GridSpec& g = q.grid;
    const double cell = g.h * g.h;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double wj = trap_w(j, g.ny);
        for (int i = 0; i < g.nx; ++i) s += wj * trap_w(i, g.nx) * cell * q(i, j);
    }
    return s;
}

void add_scaled(ScalarField& a, double s, const ScalarField& b) {
    require_same_grid(a.grid, b.grid);
    for (std::size_t k = 0; k < a.v.size(); ++k) a.v[k] += s * b.v[k];
}

void add_scaled(VectorField& a, double s, const VectorField& b) {
    require_same_grid(a.grid, b.grid);
    for (std::size_t k = 0; k < a.x.size(); ++k) {
        a.x[k] += s * b.x[k];
        a.y[k] += s * b.y[k];
    }
}

void scale(ScalarField& a, double s) {
    for (double& x : a.v) x *= s;
}

void scale(VectorField& a, double s) {
    for (double& x : a.x) x *= s;
    for (double& x : a.y) x *= s;
}

ScalarField subtract(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid, b.grid);
    ScalarField r(a.grid);
    for (std::size_t k = 0; k < a.v.size(); ++k) r.v[k] = a.v[k] - b.v[k];
    return r;
}

VectorField subtract(const VectorField& a, const VectorField& b) {
    require_same_grid(a.grid, b.grid);
    VectorField r(a.grid);
    for (std::size_t k = 0; k < a.x.size(); ++k) {
        r.x[k] = a.x[k] - b.x[k];
        r.y[k] = a.y[k] - b.y[k];
    }
    return r;
}

} // namespace mpflow
