#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lsqb/errors.hpp"
#include "lsqb/matrix.hpp"

using namespace lsqb;

namespace {

// det(S − λI) by Gaussian elimination with partial pivoting.
double shifted_det(const Matrix& S, double lambda) {
    const std::size_t n = S.rows();
    std::vector<double> a(S.entries());
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] -= lambda;
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
        }
        if (a[piv * n + c] == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            det = -det;
        }
        det *= a[c * n + c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r * n + c] / a[c * n + c];
            for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
        }
    }
    return det;
}

// Eigenvalues as sign changes of the characteristic polynomial on a fine grid, refined by bisection.
std::vector<double> charpoly_roots(const Matrix& S, double lo, double hi, int cells) {
    std::vector<double> roots;
    const double h = (hi - lo) / cells;
    double x0 = lo;
    double f0 = shifted_det(S, x0);
    for (int k = 1; k <= cells; ++k) {
        const double x1 = lo + h * k;
        const double f1 = shifted_det(S, x1);
        if ((f0 < 0.0) != (f1 < 0.0)) {
            double a = x0, b = x1, fa = f0;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = shifted_det(S, m);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

Matrix random_spd(std::size_t n, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix B(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) B(i, j) = u(gen);
    }
    Matrix S(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += B(k, i) * B(k, j);
            S(i, j) = acc + (i == j ? 0.5 * (i + 1) : 0.0);
        }
    }
    return S;
}

}  // namespace

TEST_CASE("Jacobi eigenvalues agree with characteristic-polynomial roots") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const Matrix S = random_spd(n, gen);
        const auto eig = sym_eigenvalues(S);
        REQUIRE(eig.size() == n);
        const auto roots = charpoly_roots(S, eig.front() - 1.0, eig.back() + 1.0, 20000);
        if (roots.size() != n) continue;  // a near-double root hid a sign change; skip this draw
        for (std::size_t k = 0; k < n; ++k) CHECK(eig[k] == doctest::Approx(roots[k]).epsilon(1e-9));
    }
}

TEST_CASE("extremal eigen summary of a 2x2 matrix") {
    const Matrix C(2, 2, {2.0, 0.5, 0.5, 1.0});
    const auto s = sym_extremal_eigs(C);
    const double disc = std::sqrt(0.25 + 0.25);
    CHECK(s.lambda_max == doctest::Approx(1.5 + disc).epsilon(1e-13));
    CHECK(s.lambda_min == doctest::Approx(1.5 - disc).epsilon(1e-13));
    CHECK(s.lambda_tilde == doctest::Approx(1.0 / (1.5 - disc)).epsilon(1e-13));
    CHECK_FALSE(s.singular);
}

TEST_CASE("singular and non-symmetric inputs") {
    const auto s = sym_extremal_eigs(Matrix(2, 2, {1.0, 1.0, 1.0, 1.0}));
    CHECK(s.singular);
    CHECK(std::isinf(s.lambda_tilde));
    CHECK_THROWS_AS(sym_extremal_eigs(Matrix(2, 2, {1.0, 0.5, 0.4, 1.0})), NonSymmetricError);
}

TEST_CASE("ls_solve recovers the exact coefficients of a consistent system") {
    const Matrix A(4, 2, {1, 0, 1, 1, 1, 2, 1, 3});
    const std::vector<double> x{1, 3, 5, 7};  // 1 + 2t
    const auto th = ls_solve(A, x);
    CHECK(th[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(th[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("ls_solve on a square orthonormal matrix is the transpose product") {
    const double c = std::cos(0.3), s = std::sin(0.3);
    const Matrix Q(2, 2, {c, -s, s, c});
    const std::vector<double> x{0.7, -1.2};
    const auto th = ls_solve(Q, x);
    const auto want = multiply(transpose(Q), x);
    CHECK(th[0] == doctest::Approx(want[0]).epsilon(1e-12));
    CHECK(th[1] == doctest::Approx(want[1]).epsilon(1e-12));
}

TEST_CASE("ls_solve matches the normal-equation residual orthogonality") {
    std::mt19937_64 gen(9);
    std::normal_distribution<double> nd;
    Matrix A(30, 3);
    std::vector<double> x(30);
    for (std::size_t i = 0; i < 30; ++i) {
        for (std::size_t j = 0; j < 3; ++j) A(i, j) = nd(gen);
        x[i] = nd(gen);
    }
    const auto th = ls_solve(A, x);
    const auto fit = multiply(A, th);
    for (std::size_t j = 0; j < 3; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < 30; ++i) dot += A(i, j) * (x[i] - fit[i]);
        CHECK(std::abs(dot) < 1e-10);
    }
}

TEST_CASE("ls_solve rejects rank deficiency and underdetermined systems") {
    const Matrix A(3, 2, {1, 2, 2, 4, 3, 6});
    const std::vector<double> x{1, 2, 3};
    CHECK_THROWS_AS(ls_solve(A, x), RankDeficientError);
    const Matrix wide(1, 2, {1, 1});
    const std::vector<double> one{1};
    CHECK_THROWS_AS(ls_solve(wide, one), ParameterError);
}

TEST_CASE("gram_normalized and helpers") {
    const Matrix A(2, 2, {1, 2, 3, 4});
    const auto G = gram_normalized(A);
    CHECK(G(0, 0) == doctest::Approx(5.0));
    CHECK(G(0, 1) == doctest::Approx(7.0));
    CHECK(G(1, 1) == doctest::Approx(10.0));
    CHECK(max_abs_entry(A) == 4.0);
    CHECK(transpose(A)(0, 1) == 3.0);
    CHECK(Matrix::identity(3)(2, 2) == 1.0);
    CHECK_THROWS_AS(Matrix(2, 2, {1, 2, 3}), ParameterError);
    CHECK_THROWS_AS(Matrix(1, 1, {std::nan("")}), ParameterError);
}
