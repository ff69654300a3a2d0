#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mpflow {

/// Row-wise sparse matrix with ordered, duplicate-free columns per row.
/// add() accumulates; finalize() sorts and merges.
class SparseMatrix {
public:
    SparseMatrix() = default;
    explicit SparseMatrix(int n) : n_(n), rows_(n) {}

    int size() const { return n_; }
    void add(int row, int col, double value);
    void finalize();
    bool finalized() const { return finalized_; }

    const std::vector<std::pair<int, double>>& row(int r) const { return rows_[r]; }

    std::vector<double> apply(const std::vector<double>& x) const;
    std::vector<double> diagonal() const;
    double max_abs_entry() const;

private:
    int n_ = 0;
    std::vector<std::vector<std::pair<int, double>>> rows_;
    bool finalized_ = false;
};

enum class SolveMethod { Direct, Cg, BiCgStab };

struct LinearSolveReport {
    SolveMethod method = SolveMethod::Direct;
    int iterations = 0;
    double residual = 0.0;   // relative to the right-hand side
    bool converged = false;
};

/// Banded LU factorization with partial pivoting. Band limits are taken
/// from the sparsity pattern; natural row-major node ordering keeps them
/// proportional to the grid width.
class BandedLU {
public:
    explicit BandedLU(const SparseMatrix& a);
    std::vector<double> solve(const std::vector<double>& rhs) const;
    int bandwidth_lower() const { return kl_; }
    int bandwidth_upper() const { return ku_; }

private:
    int n_ = 0;
    int kl_ = 0;
    int ku_ = 0;
    int ldab_ = 0;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

std::pair<std::vector<double>, LinearSolveReport>
conjugate_gradient(const SparseMatrix& a, const std::vector<double>& rhs,
                   double tol, int max_iter, bool jacobi = true);

std::pair<std::vector<double>, LinearSolveReport>
bicgstab(const SparseMatrix& a, const std::vector<double>& rhs,
         double tol, int max_iter, bool jacobi = true);

/// Dispatch over the three methods. Direct achieves ~1e-10 relative
/// residual on the systems assembled here; the iterative methods stop at
/// tol or report converged=false after max_iter.
std::pair<std::vector<double>, LinearSolveReport>
solve_linear(const SparseMatrix& a, const std::vector<double>& rhs,
             SolveMethod method, double tol = 1e-10, int max_iter = 10000);

double relative_residual(const SparseMatrix& a, const std::vector<double>& x,
                         const std::vector<double>& rhs);

} // namespace mpflow
