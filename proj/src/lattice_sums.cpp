#include "bogo/lattice_sums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bogo/lattice.hpp"
#include "bogo/numeric.hpp"
#include "bogo/parallel.hpp"

namespace bogo {

namespace {

// positive Bogoliubov summand, cancellation-free for large p:
//   e_p = sqrt(p^4 + b p^2) - p^2 - b/2 + b^2/(8 p^2)
inline double bog_summand(double p2, double b) {
    // sqrt(1+e) - 1 - e/2 = -e^2 / (2 (1+sqrt(1+e))^2) keeps the large-p
    // cancellation exact; the b^2/(8 p^2) counterterm then dominates the sign
    double eps = b / p2;
    double sq = std::sqrt(1.0 + eps);
    return -p2 * eps * eps / (2.0 * (1.0 + sq) * (1.0 + sq)) + b * b / (8.0 * p2);
}

}  // namespace

SumResult e_bog(double a0, double N, double kappa, double pmax, bool extrapolate) {
    if (pmax < 4.0 * M_PI) throw std::invalid_argument("e_bog: pmax below the second shell");
    const double b = 16.0 * M_PI * (a0 * std::pow(N, kappa));
    SumResult res;
    res.cutoff = pmax;
    if (b == 0.0) return res;

    const int nmax = static_cast<int>(std::floor(pmax / (2.0 * M_PI)));
    auto hist = shell_histogram(0, nmax);
    KahanSum sum;
    std::vector<std::pair<double, double>> diag;
    std::vector<double> tail_p4;  // e_p * p^4 samples on the last decade
    const std::int64_t n2max = static_cast<std::int64_t>(nmax) * nmax;
    for (std::int64_t n2 = 1; n2 <= n2max; ++n2) {
        if (hist[n2] == 0) continue;
        double p2 = 4.0 * M_PI * M_PI * static_cast<double>(n2);
        double e = bog_summand(p2, b);
        sum.add(0.5 * hist[n2] * e);
        if (n2 * 4 >= n2max) tail_p4.push_back(e * p2 * p2);
        if ((n2 & (n2 - 1)) == 0)  // powers of two, compact diagnostics
            diag.emplace_back(2.0 * M_PI * std::sqrt(static_cast<double>(n2)), sum.value());
    }
    res.diagnostics = std::move(diag);

    double tail = 0.0;
    if (extrapolate && !tail_p4.empty()) {
        double c4 = 0.0;
        for (double v : tail_p4) c4 += v;
        c4 /= static_cast<double>(tail_p4.size());
        double pure = b * b * b / 16.0;
        if (!(c4 > 0.2 * pure && c4 < 5.0 * pure))
            throw std::runtime_error("e_bog: tail fit failed, pmax below the asymptotic regime");
        double P = 2.0 * M_PI * nmax;
        // 1/2 * (1/(2 pi^2)) * int_P^inf c4/p^4 p^2 dp = c4 / (4 pi^2 P)
        tail = c4 / (4.0 * M_PI * M_PI * P);
        res.tail_estimate = std::fabs(tail) * 0.5 + std::fabs(c4 - pure) / (4.0 * M_PI * M_PI * P);
        res.extrapolation_order = 1;
    }
    res.value = sum.value() + tail;
    res.diagnostics.emplace_back(2.0 * M_PI * nmax, res.value);
    return res;
}

std::vector<double> accelerate_cube_sequence(const std::vector<double>& raw, int passes) {
    std::vector<double> cur = raw;
    for (int pass = 0; pass < passes; ++pass) {
        std::vector<double> next(cur.size());
        std::vector<double> prefix(cur.size() + 1, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) prefix[i + 1] = prefix[i] + cur[i];
        for (std::size_t i = 0; i < cur.size(); ++i) {
            std::size_t M = i + 1;
            std::size_t w = std::max<std::size_t>(1, M / 3);
            next[i] = (prefix[i + 1] - prefix[i + 1 - w]) / static_cast<double>(w);
        }
        cur = std::move(next);
    }
    return cur;
}

namespace {

// partial cube sums S_M = sum_{|n_i|<=M, n != 0} term(|n|^2), M = 1..Mmax
template <typename Term>
std::vector<double> cube_partials(int Mmax, Term&& term) {
    std::vector<double> out(Mmax);
    KahanSum total;
    for (int M = 1; M <= Mmax; ++M) {
        KahanSum shell;
        // faces x = +-M
        for (int y = -M; y <= M; ++y)
            for (int z = -M; z <= M; ++z) {
                double n2 = static_cast<double>(M) * M + static_cast<double>(y) * y +
                            static_cast<double>(z) * z;
                shell.add(2.0 * term(n2));
            }
        // faces y = +-M (x interior)
        for (int x = -(M - 1); x <= M - 1; ++x)
            for (int z = -M; z <= M; ++z) {
                double n2 = static_cast<double>(x) * x + static_cast<double>(M) * M +
                            static_cast<double>(z) * z;
                shell.add(2.0 * term(n2));
            }
        // faces z = +-M (x, y interior)
        for (int x = -(M - 1); x <= M - 1; ++x)
            for (int y = -(M - 1); y <= M - 1; ++y) {
                double n2 = static_cast<double>(x) * x + static_cast<double>(y) * y +
                            static_cast<double>(M) * M;
                shell.add(2.0 * term(n2));
            }
        total.add(shell.value());
        out[M - 1] = total.value();
    }
    return out;
}

SumResult accelerated_result(const std::vector<double>& raw, int Mmax) {
    auto acc = accelerate_cube_sequence(raw, 3);
    SumResult res;
    res.value = acc.back();
    res.cutoff = Mmax;
    res.extrapolation_order = 3;
    double dev = std::fabs(acc[Mmax - 1] - acc[Mmax / 2 - 1]);
    for (int M = Mmax - Mmax / 8; M < Mmax; ++M)
        dev = std::max(dev, std::fabs(acc[M - 1] - res.value));
    res.tail_estimate = dev;
    const double divergence_ceiling = 1.0;
    for (int M = std::max(2, Mmax - 8); M <= Mmax; ++M)
        if (std::fabs(acc[M - 1] - acc[M - 2]) > divergence_ceiling)
            throw std::runtime_error("lattice sum acceleration divergence");
    for (int M = 2; M <= Mmax; M *= 2) res.diagnostics.emplace_back(M, acc[M - 1]);
    if (res.diagnostics.empty() || res.diagnostics.back().first != Mmax)
        res.diagnostics.emplace_back(Mmax, res.value);
    return res;
}

}  // namespace

std::vector<double> e_lambda_raw(int Mmax) {
    auto S = cube_partials(Mmax, [](double n2) { return 4.0 * std::cos(std::sqrt(n2)) / n2; });
    for (auto& v : S) v = 2.0 - v;
    return S;
}

SumResult e_lambda(int Mmax) {
    if (Mmax < 8) throw std::invalid_argument("e_lambda: Mmax must be at least 8");
    return accelerated_result(e_lambda_raw(Mmax), Mmax);
}

SumResult i_ell(double ell, int Mmax, IellForm form) {
    if (!(ell > 0.0 && ell < 0.5)) throw std::invalid_argument("i_ell: ell must lie in (0, 1/2)");
    if (Mmax < 8) throw std::invalid_argument("i_ell: Mmax must be at least 8");
    const double twopi = 2.0 * M_PI;
    std::vector<double> S;
    if (form == IellForm::cosine) {
        S = cube_partials(Mmax,
                          [&](double n2) { return std::cos(twopi * ell * std::sqrt(n2)) / n2; });
        for (auto& v : S) v = 4.0 * M_PI * ell * ell / 3.0 - 2.0 / (3.0 * M_PI) * v;
    } else {
        S = cube_partials(Mmax, [&](double n2) {
            double p = twopi * std::sqrt(n2);
            return chi_hat(ell, p) / (p * p);
        });
        for (auto& v : S) v = 1.0 / ell + (4.0 / 15.0) * M_PI * ell * ell - 2.0 / (ell * ell * ell) * v;
    }
    return accelerated_result(S, Mmax);
}

double lhy_closed_form() { return 4.0 * M_PI * 128.0 / (15.0 * std::sqrt(M_PI)); }

double lhy_integral(double a0) {
    if (a0 == 0.0) return 0.0;
    if (a0 < 0.0) throw std::invalid_argument("lhy_integral: a0 must be nonnegative");
    const double b = 16.0 * M_PI * a0;
    const double P = 200.0 * std::sqrt(b);
    auto g = [&](double p) {
        if (p == 0.0) return b * b / 8.0;
        double p2 = p * p;
        return bog_summand(p2, b) * p2;
    };
    double scale = std::pow(b, 2.5);
    double body = integrate_adaptive(g, 0.0, P, 1e-12 * scale);
    // int_P^inf g = b^3/(16 P) - 5 b^4/(384 P^3) + 7 b^5/(1280 P^5)
    double tail = b * b * b / (16.0 * P) - 5.0 * std::pow(b, 4) / (384.0 * P * P * P) +
                  7.0 * std::pow(b, 5) / (1280.0 * std::pow(P, 5));
    return (body + tail) / (4.0 * M_PI * M_PI);
}

EnergyBreakdown ground_state_energy(double a0, double N, double kappa, double pmax, int Mmax) {
    EnergyBreakdown out;
    double a0N = a0 * std::pow(N, kappa);
    out.mean_field = 4.0 * M_PI * a0N * (N - 1.0);
    if (a0 > 0.0) {
        out.elambda = e_lambda(Mmax);
        out.ebog = e_bog(a0, N, kappa, pmax);
    }
    out.elambda_term = out.elambda.value * a0N * a0N;
    out.e_bog = out.ebog.value;
    out.total = out.mean_field + out.elambda_term + out.e_bog;
    return out;
}

}  // namespace bogo
