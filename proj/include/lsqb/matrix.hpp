#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lsqb {

/// Dense row-major real matrix with finite entries.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    const std::vector<double>& entries() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct SymSpectrumSummary {
    double lambda_min;
    double lambda_max;
    double lambda_tilde;  // λ_max of the inverse; +inf when singular
    double condition;     // lambda_max / lambda_min; +inf when singular
    bool singular;        // lambda_min <= 0
};

/// (1/N)·AᵀA for an N×p matrix A.
Matrix gram_normalized(const Matrix& A);

/// Extremal eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
/// Throws NonSymmetricError if |S - Sᵀ| exceeds 1e-12 relative to max |S|.
SymSpectrumSummary sym_extremal_eigs(const Matrix& S);

/// All eigenvalues (ascending) from the same rotation sweeps.
std::vector<double> sym_eigenvalues(const Matrix& S);

/// Least-squares θ̂ = (AᵀA)⁻¹Aᵀx through a Cholesky factorization of the normal equations.
/// Requires rows ≥ cols. Throws RankDeficientError when a pivot falls below 1e-12·trace(AᵀA).
std::vector<double> ls_solve(const Matrix& A, std::span<const double> x);

/// In-place Cholesky factor (lower triangle) of a symmetric positive-definite p×p
/// matrix stored row-major. Returns false when a pivot is below `pivot_floor`.
bool cholesky_in_place(std::span<double> a, std::size_t p, double pivot_floor);

/// Solves L Lᵀ y = rhs in place given the factor from cholesky_in_place.
void cholesky_solve(std::span<const double> factor, std::size_t p, std::span<double> rhs);

double max_abs_entry(const Matrix& A);

std::vector<double> multiply(const Matrix& A, std::span<const double> x);
Matrix transpose(const Matrix& A);

}  // namespace lsqb
