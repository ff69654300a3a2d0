#include "mpflow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpflow {

void SparseMatrix::add(int row, int col, double value) {
    if (row < 0 || row >= n_ || col < 0 || col >= n_)
        throw std::invalid_argument("sparse entry out of range");
    rows_[row].emplace_back(col, value);
    finalized_ = false;
}

void SparseMatrix::finalize() {
    for (auto& r : rows_) {
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::size_t out = 0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (out > 0 && r[out - 1].first == r[k].first) {
                r[out - 1].second += r[k].second;
            } else {
                r[out++] = r[k];
            }
        }
        r.resize(out);
        for (const auto& e : r)
            if (!std::isfinite(e.second))
                throw std::runtime_error("non-finite matrix entry");
    }
    finalized_ = true;
}

std::vector<double> SparseMatrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (int r = 0; r < n_; ++r) {
        double s = 0.0;
        for (const auto& [c, v] : rows_[r]) s += v * x[c];
        y[r] = s;
    }
    return y;
}

std::vector<double> SparseMatrix::diagonal() const {
    std::vector<double> d(n_, 0.0);
    for (int r = 0; r < n_; ++r)
        for (const auto& [c, v] : rows_[r])
            if (c == r) d[r] += v;
    return d;
}

double SparseMatrix::max_abs_entry() const {
    double m = 0.0;
    for (const auto& r : rows_)
        for (const auto& [c, v] : r) m = std::max(m, std::abs(v));
    return m;
}

namespace {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

} // namespace

// LAPACK-style band storage: entry (i,j) lives at ab_[j*ldab + kl+ku+i-j],
// with kl extra rows on top for pivoting fill.
BandedLU::BandedLU(const SparseMatrix& a) {
    n_ = a.size();
    kl_ = 0;
    ku_ = 0;
    for (int r = 0; r < n_; ++r)
        for (const auto& [c, v] : a.row(r)) {
            (void)v;
            kl_ = std::max(kl_, r - c);
            ku_ = std::max(ku_, c - r);
        }
    ldab_ = 2 * kl_ + ku_ + 1;
    ab_.assign(std::size_t(n_) * ldab_, 0.0);
    ipiv_.assign(n_, 0);

    auto at = [&](int i, int j) -> double& {
        return ab_[std::size_t(j) * ldab_ + (kl_ + ku_ + i - j)];
    };

    for (int r = 0; r < n_; ++r)
        for (const auto& [c, v] : a.row(r)) at(r, c) = v;

    const double pivot_floor = 1e-14 * std::max(a.max_abs_entry(), 1e-300);

    for (int j = 0; j < n_; ++j) {
        const int last = std::min(j + kl_, n_ - 1);
        int p = j;
        double pmax = std::abs(at(j, j));
        for (int i = j + 1; i <= last; ++i) {
            const double m = std::abs(at(i, j));
            if (m > pmax) {
                pmax = m;
                p = i;
            }
        }
        if (pmax <= pivot_floor) throw std::runtime_error("singular matrix");
        ipiv_[j] = p;
        const int cend = std::min(j + ku_ + kl_, n_ - 1);
        if (p != j) {
            for (int c = j; c <= cend; ++c) std::swap(at(j, c), at(p, c));
        }
        const double piv = at(j, j);
        for (int i = j + 1; i <= last; ++i) {
            const double l = at(i, j) / piv;
            at(i, j) = l;
            if (l != 0.0)
                for (int c = j + 1; c <= cend; ++c) at(i, c) -= l * at(j, c);
        }
    }
}

std::vector<double> BandedLU::solve(const std::vector<double>& rhs) const {
    if (int(rhs.size()) != n_) throw std::invalid_argument("rhs length mismatch");
    std::vector<double> x = rhs;
    auto at = [&](int i, int j) -> double {
        return ab_[std::size_t(j) * ldab_ + (kl_ + ku_ + i - j)];
    };
    for (int j = 0; j < n_; ++j) {
        if (ipiv_[j] != j) std::swap(x[j], x[ipiv_[j]]);
        const int last = std::min(j + kl_, n_ - 1);
        const double xj = x[j];
        if (xj != 0.0)
            for (int i = j + 1; i <= last; ++i) x[i] -= at(i, j) * xj;
    }
    for (int j = n_ - 1; j >= 0; --j) {
        const int cend = std::min(j + ku_ + kl_, n_ - 1);
        double s = x[j];
        for (int c = j + 1; c <= cend; ++c) s -= at(j, c) * x[c];
        x[j] = s / at(j, j);
    }
    return x;
}

double relative_residual(const SparseMatrix& a, const std::vector<double>& x,
                         const std::vector<double>& rhs) {
    std::vector<double> r = a.apply(x);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = rhs[k] - r[k];
    const double nb = nrm2(rhs);
    return nb > 0.0 ? nrm2(r) / nb : nrm2(r);
}

std::pair<std::vector<double>, LinearSolveReport>
conjugate_gradient(const SparseMatrix& a, const std::vector<double>& rhs,
                   double tol, int max_iter, bool jacobi) {
    const int n = a.size();
    LinearSolveReport rep;
    rep.method = SolveMethod::Cg;
    std::vector<double> x(n, 0.0);
    const double nb = nrm2(rhs);
    if (nb == 0.0) {
        rep.converged = true;
        return {x, rep};
    }
    std::vector<double> d = a.diagonal();
    std::vector<double> minv(n, 1.0);
    if (jacobi)
        for (int k = 0; k < n; ++k) minv[k] = d[k] != 0.0 ? 1.0 / d[k] : 1.0;

    std::vector<double> r = rhs;
    std::vector<double> z(n);
    for (int k = 0; k < n; ++k) z[k] = minv[k] * r[k];
    std::vector<double> p = z;
    double rz = dot(r, z);
    for (int it = 1; it <= max_iter; ++it) {
        std::vector<double> ap = a.apply(p);
        const double pap = dot(p, ap);
        if (pap <= 0.0) throw std::runtime_error("indefinite matrix in cg");
        const double alpha = rz / pap;
        for (int k = 0; k < n; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        rep.iterations = it;
        rep.residual = nrm2(r) / nb;
        if (rep.residual <= tol) {
            rep.converged = true;
            return {x, rep};
        }
        for (int k = 0; k < n; ++k) z[k] = minv[k] * r[k];
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    rep.converged = false;
    return {x, rep};
}

std::pair<std::vector<double>, LinearSolveReport>
bicgstab(const SparseMatrix& a, const std::vector<double>& rhs,
         double tol, int max_iter, bool jacobi) {
    const int n = a.size();
    LinearSolveReport rep;
    rep.method = SolveMethod::BiCgStab;
    std::vector<double> x(n, 0.0);
    const double nb = nrm2(rhs);
    if (nb == 0.0) {
        rep.converged = true;
        return {x, rep};
    }
    std::vector<double> d = a.diagonal();
    std::vector<double> minv(n, 1.0);
    if (jacobi)
        for (int k = 0; k < n; ++k) minv[k] = d[k] != 0.0 ? 1.0 / d[k] : 1.0;

    std::vector<double> r = rhs;
    std::vector<double> rt = r;
    std::vector<double> p(n, 0.0), v(n, 0.0), ph(n), sh(n), t(n), s(n);
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    double res = nrm2(r);

    for (int it = 1; it <= max_iter; ++it) {
        const double rho_new = dot(rt, r);
        if (std::abs(rho_new) < 1e-300) break; // breakdown; report best effort
        if (it == 1) {
            p = r;
        } else {
            const double beta = (rho_new / rho) * (alpha / omega);
            for (int k = 0; k < n; ++k) p[k] = r[k] + beta * (p[k] - omega * v[k]);
        }
        rho = rho_new;
        for (int k = 0; k < n; ++k) ph[k] = minv[k] * p[k];
        v = a.apply(ph);
        const double rtv = dot(rt, v);
        if (std::abs(rtv) < 1e-300) break;
        alpha = rho / rtv;
        for (int k = 0; k < n; ++k) s[k] = r[k] - alpha * v[k];
        res = nrm2(s);
        rep.iterations = it;
        if (res / nb <= tol) {
            for (int k = 0; k < n; ++k) x[k] += alpha * ph[k];
            rep.residual = res / nb;
            rep.converged = true;
            return {x, rep};
        }
        for (int k = 0; k < n; ++k) sh[k] = minv[k] * s[k];
        t = a.apply(sh);
        const double tt = dot(t, t);
        if (tt < 1e-300) break;
        omega = dot(t, s) / tt;
        for (int k = 0; k < n; ++k) {
            x[k] += alpha * ph[k] + omega * sh[k];
            r[k] = s[k] - omega * t[k];
        }
        res = nrm2(r);
        rep.residual = res / nb;
        if (res / nb <= tol) {
            rep.converged = true;
            return {x, rep};
        }
        if (std::abs(omega) < 1e-300) break;
    }
    rep.residual = relative_residual(a, x, rhs);
    rep.converged = rep.residual <= tol;
    return {x, rep};
}

std::pair<std::vector<double>, LinearSolveReport>
solve_linear(const SparseMatrix& a, const std::vector<double>& rhs,
             SolveMethod method, double tol, int max_iter) {
    if (!a.finalized()) throw std::runtime_error("matrix not finalized");
    if (int(rhs.size()) != a.size()) throw std::invalid_argument("rhs length mismatch");
    switch (method) {
        case SolveMethod::Direct: {
            BandedLU lu(a);
            LinearSolveReport rep;
            rep.method = SolveMethod::Direct;
            auto x = lu.solve(rhs);
            rep.residual = relative_residual(a, x, rhs);
            rep.iterations = 1;
            rep.converged = rep.residual <= 1e-10;
            return {std::move(x), rep};
        }
        case SolveMethod::Cg: return conjugate_gradient(a, rhs, tol, max_iter);
        case SolveMethod::BiCgStab: return bicgstab(a, rhs, tol, max_iter);
    }
    throw std::logic_error("unknown solve method");
}

} // namespace mpflow
