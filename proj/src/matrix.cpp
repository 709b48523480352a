#include "lsqb/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lsqb/errors.hpp"

namespace lsqb {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw ParameterError("matrix entry count must equal rows*cols");
    for (double v : data_) {
        if (!std::isfinite(v)) throw ParameterError("matrix entries must be finite");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix gram_normalized(const Matrix& A) {
    const std::size_t n = A.rows();
    const std::size_t p = A.cols();
    if (n == 0) throw ParameterError("gram_normalized: matrix has no rows");
    Matrix G(p, p);
    for (std::size_t k = 0; k < n; ++k) {
        const auto a = A.row(k);
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i; j < p; ++j) G(i, j) += a[i] * a[j];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            G(i, j) *= inv_n;
            G(j, i) = G(i, j);
        }
    }
    return G;
}

std::vector<double> sym_eigenvalues(const Matrix& S) {
    const std::size_t p = S.rows();
    if (p == 0 || S.cols() != p) throw ParameterError("eigenvalues need a non-empty square matrix");
    double scale = 0.0;
    for (double v : S.entries()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            if (std::abs(S(i, j) - S(j, i)) > 1e-12 * scale) {
                throw NonSymmetricError("matrix is not symmetric within 1e-12 relative tolerance");
            }
        }
    }

    Matrix a = S;
    auto off_norm = [&] {
        double sum = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) sum += 2.0 * a(i, j) * a(i, j);
        }
        return std::sqrt(sum);
    };
    auto frob = [&] {
        double sum = 0.0;
        for (double v : a.entries()) sum += v * v;
        return std::sqrt(sum);
    };
    const double total = frob();

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_norm() <= 1e-12 * total || total == 0.0) break;
        for (std::size_t i = 0; i + 1 < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) {
                const double aij = a(i, j);
                if (aij == 0.0) continue;
                const double theta = (a(j, j) - a(i, i)) / (2.0 * aij);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < p; ++k) {
                    const double aki = a(k, i);
                    const double akj = a(k, j);
                    a(k, i) = c * aki - s * akj;
                    a(k, j) = s * aki + c * akj;
                }
                for (std::size_t k = 0; k < p; ++k) {
                    const double aik = a(i, k);
                    const double ajk = a(j, k);
                    a(i, k) = c * aik - s * ajk;
                    a(j, k) = s * aik + c * ajk;
                }
            }
        }
    }
    std::vector<double> eig(p);
    for (std::size_t i = 0; i < p; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

SymSpectrumSummary sym_extremal_eigs(const Matrix& S) {
    const auto eig = sym_eigenvalues(S);
    SymSpectrumSummary out{};
    out.lambda_min = eig.front();
    out.lambda_max = eig.back();
    out.singular = !(out.lambda_min > 0.0);
    constexpr double inf = std::numeric_limits<double>::infinity();
    out.lambda_tilde = out.singular ? inf : 1.0 / out.lambda_min;
    out.condition = out.singular ? inf : out.lambda_max / out.lambda_min;
    return out;
}

bool cholesky_in_place(std::span<double> a, std::size_t p, double pivot_floor) {
    for (std::size_t j = 0; j < p; ++j) {
        double d = a[j * p + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * p + k] * a[j * p + k];
        if (!(d > pivot_floor)) return false;
        const double ljj = std::sqrt(d);
        a[j * p + j] = ljj;
        for (std::size_t i = j + 1; i < p; ++i) {
            double v = a[i * p + j];
            for (std::size_t k = 0; k < j; ++k) v -= a[i * p + k] * a[j * p + k];
            a[i * p + j] = v / ljj;
        }
    }
    return true;
}

void cholesky_solve(std::span<const double> factor, std::size_t p, std::span<double> rhs) {
    for (std::size_t i = 0; i < p; ++i) {
        double v = rhs[i];
        for (std::size_t k = 0; k < i; ++k) v -= factor[i * p + k] * rhs[k];
        rhs[i] = v / factor[i * p + i];
    }
    for (std::size_t i = p; i-- > 0;) {
        double v = rhs[i];
        for (std::size_t k = i + 1; k < p; ++k) v -= factor[k * p + i] * rhs[k];
        rhs[i] = v / factor[i * p + i];
    }
}

std::vector<double> ls_solve(const Matrix& A, std::span<const double> x) {
    const std::size_t n = A.rows();
    const std::size_t p = A.cols();
    if (x.size() != n) throw ParameterError("ls_solve: observation length must equal row count");
    if (n < p || p == 0) throw PreconditionError("ls_solve: need at least as many rows as columns");

    std::vector<double> g(p * p, 0.0);
    std::vector<double> rhs(p, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto a = A.row(k);
        for (std::size_t i = 0; i < p; ++i) {
            rhs[i] += a[i] * x[k];
            for (std::size_t j = 0; j <= i; ++j) g[i * p + j] += a[i] * a[j];
        }
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < p; ++i) trace += g[i * p + i];
    if (!cholesky_in_place(g, p, 1e-12 * trace)) {
        throw RankDeficientError("ls_solve: normal equations are rank deficient");
    }
    cholesky_solve(g, p, rhs);
    return rhs;
}

double max_abs_entry(const Matrix& A) {
    double m = 0.0;
    for (double v : A.entries()) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> multiply(const Matrix& A, std::span<const double> x) {
    if (x.size() != A.cols()) throw ParameterError("multiply: dimension mismatch");
    std::vector<double> y(A.rows(), 0.0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const auto a = A.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * x[j];
        y[i] = acc;
    }
    return y;
}

Matrix transpose(const Matrix& A) {
    Matrix t(A.cols(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) t(j, i) = A(i, j);
    }
    return t;
}

}  // namespace lsqb
