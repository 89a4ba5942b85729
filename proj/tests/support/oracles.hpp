#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

// Brute-force reference implementations, deliberately independent of the
// library's spectral machinery.
namespace oracles {

/// Maximum of sum_i a_i b_{pi(i)} over all permutations pi, by enumeration.
inline double best_permuted_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    std::vector<int> idx(static_cast<size_t>(a.size()));
    std::iota(idx.begin(), idx.end(), 0);
    double best = -std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (int i = 0; i < a.size(); ++i) s += a[idx[static_cast<size_t>(i)]] * b[i];
        best = std::max(best, s);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

/// In R^n strong operator commutation is exactly "the plain dot product
/// attains the rearrangement maximum".
inline bool rn_strongly_commute(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
    return best_permuted_dot(a, b) - a.dot(b) <= tol;
}

/// Characteristic polynomial coefficients by Faddeev-LeVerrier:
/// p(t) = t^n + c[1] t^{n-1} + ... + c[n].
inline std::vector<double> charpoly(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
    c[0] = 1.0;
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        acc = m * acc + c[static_cast<size_t>(k - 1)] * Eigen::MatrixXd::Identity(n, n);
        c[static_cast<size_t>(k)] = -(m * acc).trace() / k;
    }
    return c;
}

/// Roots of the characteristic polynomial by Durand-Kerner iteration,
/// returned as descending real parts (adequate for symmetric matrices).
inline Eigen::VectorXd charpoly_eigenvalues(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    const std::vector<double> c = charpoly(m);
    const auto p = [&](std::complex<double> z) {
        std::complex<double> v = 0.0;
        for (double ck : c) v = v * z + ck;
        return v;
    };
    double radius = 1.0;
    for (size_t k = 1; k < c.size(); ++k) radius = std::max(radius, 2.0 * std::abs(c[k]));
    std::vector<std::complex<double>> r(static_cast<size_t>(n));
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> w = 1.0;
    for (auto& ri : r) {
        w *= seed;
        ri = radius * w;
    }
    for (int it = 0; it < 500; ++it) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> den = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= r[static_cast<size_t>(i)] - r[static_cast<size_t>(j)];
            const std::complex<double> step = p(r[static_cast<size_t>(i)]) / den;
            r[static_cast<size_t>(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14 * radius) break;
    }
    Eigen::VectorXd out(n);
    std::vector<double> re(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) re[static_cast<size_t>(i)] = r[static_cast<size_t>(i)].real();
    std::sort(re.begin(), re.end(), std::greater<>());
    for (int i = 0; i < n; ++i) out[i] = re[static_cast<size_t>(i)];
    return out;
}

/// Frobenius norm of AB - BA for plain symmetric matrices.
inline double matrix_commutator_norm(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a * b - b * a).norm();
}

} // namespace oracles
