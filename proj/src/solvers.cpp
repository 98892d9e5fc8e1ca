#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bogo/fock.hpp"

namespace bogo {

namespace {

std::vector<double> dense_eigs(const SparseOperator& op, std::size_t k) {
    const auto n = static_cast<Eigen::Index>(op.dim());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t t = 0; t < op.values().size(); ++t)
        m(static_cast<Eigen::Index>(op.rows()[t]), static_cast<Eigen::Index>(op.cols()[t])) +=
            op.values()[t];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    std::vector<double> out(es.eigenvalues().data(),
                            es.eigenvalues().data() + std::min<std::size_t>(k, op.dim()));
    return out;
}

// Lanczos with full reorthogonalization, fixed all-ones start vector.
std::vector<double> lanczos_eigs(const SparseOperator& op, std::size_t k) {
    const std::size_t n = op.dim();
    const std::size_t max_iter = std::min<std::size_t>(n, std::max<std::size_t>(4 * k + 80, 120));
    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    basis.push_back(v);
    std::vector<double> prev_eigs;

    for (std::size_t it = 0; it < max_iter; ++it) {
        std::vector<double> w = op.apply(basis.back());
        double a = 0.0;
        for (std::size_t i = 0; i < n; ++i) a += w[i] * basis.back()[i];
        alpha.push_back(a);
        // full reorthogonalization against every stored vector, twice
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) {
                double d = 0.0;
                for (std::size_t i = 0; i < n; ++i) d += w[i] * q[i];
                for (std::size_t i = 0; i < n; ++i) w[i] -= d * q[i];
            }
        double nb = 0.0;
        for (double x : w) nb += x * x;
        nb = std::sqrt(nb);

        // tridiagonal eigenvalues so far
        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            T(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
        std::vector<double> eigs(es.eigenvalues().data(),
                                 es.eigenvalues().data() +
                                     std::min<std::size_t>(k, static_cast<std::size_t>(m)));
        bool converged = eigs.size() == k && prev_eigs.size() == k;
        if (converged)
            for (std::size_t i = 0; i < k; ++i)
                if (std::fabs(eigs[i] - prev_eigs[i]) >
                    1e-12 * (1.0 + std::fabs(eigs[i])) + 1e-13)
                    converged = false;
        if (converged || nb < 1e-13 || basis.size() == n) return eigs;
        prev_eigs = eigs;

        beta.push_back(nb);
        for (double& x : w) x /= nb;
        basis.push_back(std::move(w));
    }
    throw std::runtime_error("diagonalize: iterative solver did not converge within budget");
}

}  // namespace

std::vector<double> diagonalize(const SparseOperator& op, std::size_t k, std::size_t dense_limit) {
    if (k == 0 || k > op.dim()) throw std::invalid_argument("diagonalize: bad eigenvalue count");
    if (op.dim() <= dense_limit) return dense_eigs(op, k);
    return lanczos_eigs(op, k);
}

}  // namespace bogo
