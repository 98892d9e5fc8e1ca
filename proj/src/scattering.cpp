#include "bogo/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bogo/numeric.hpp"

namespace bogo {

namespace {

struct Shoot {
    double uR, duR;
    std::vector<double> u;  // at uniform nodes of [0, R]
};

// RK4 for u'' = (V/2 - lambda) u on [0, R], u(0)=0, u'(0)=1.
// The node at R uses the inside value of V; the exterior is handled in closed form.
Shoot integrate_inner(const Potential& pot, double lambda, int n) {
    const double R = pot.support_radius();
    const double h = R / n;
    Shoot s;
    s.u.assign(n + 1, 0.0);
    double u = 0.0, du = 1.0;
    auto acc = [&](double r, double uu) { return (0.5 * pot.value(std::min(r, R)) - lambda) * uu; };
    for (int i = 0; i < n; ++i) {
        double r = i * h;
        double k1u = du, k1d = acc(r, u);
        double k2u = du + 0.5 * h * k1d, k2d = acc(r + 0.5 * h, u + 0.5 * h * k1u);
        double k3u = du + 0.5 * h * k2d, k3d = acc(r + 0.5 * h, u + 0.5 * h * k2u);
        double k4u = du + h * k3d, k4d = acc(r + h, u + h * k3u);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        du += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        s.u[i + 1] = u;
    }
    s.uR = u;
    s.duR = du;
    return s;
}

// u and u' at radius r > R for the exterior equation u'' = -lambda u
inline void outer_state(double uR, double duR, double s, double R, double r, double& u,
                        double& du) {
    double d = r - R;
    double z = s * d;
    u = uR * std::cos(z) + duR * d * sinc(z);
    du = -uR * s * std::sin(z) + duR * std::cos(z);
}

}  // namespace

double scattering_length(const Potential& pot, const GridSpec& grid) {
    if (pot.is_zero()) return 0.0;
    const double R = pot.support_radius();
    Shoot s = integrate_inner(pot, 0.0, grid.n_inner);
    if (s.duR <= 0.0)
        throw std::runtime_error("scattering_length: nonpositive outer slope (invalid potential)");
    double a0 = R - s.uR / s.duR;
    // exterior is potential-free, so the match must be r-independent; probe the far window
    double r_far = std::max(grid.r_far_factor, 1.5) * R;
    double u_far = s.uR + s.duR * (r_far - R);
    double a0_far = r_far - u_far / s.duR;
    if (std::fabs(a0_far - a0) > 1e-10 * std::max(1.0, std::fabs(a0)))
        throw std::runtime_error("scattering_length: outer match did not converge");
    if (a0 <= 0.0) throw std::runtime_error("scattering_length: nonpositive result (invalid potential)");
    return a0;
}

ScatteringSolution solve_neumann(const Potential& pot, const ModelParams& params,
                                 const GridSpec& grid) {
    const double R = pot.support_radius();
    const double Rb = params.neumann_radius();
    if (!(Rb > R)) throw std::invalid_argument("solve_neumann: ell*N^{1-kappa} must exceed the support radius");

    ScatteringSolution sol;
    sol.Rb = Rb;
    sol.N = params.N;
    sol.kappa = params.kappa;
    sol.ell = params.ell;
    sol.grid = grid;
    sol.support_R = R;

    const int ni = grid.n_inner;
    sol.r_inner.resize(ni + 1);
    for (int i = 0; i <= ni; ++i) sol.r_inner[i] = R * i / ni;
    sol.r_outer.resize(grid.n_outer + 1);
    double ratio = std::log(Rb / R) / grid.n_outer;
    for (int j = 0; j <= grid.n_outer; ++j) sol.r_outer[j] = R * std::exp(ratio * j);
    sol.r_outer.back() = Rb;

    if (pot.is_zero()) {
        sol.lambda = 0.0;
        sol.a0 = 0.0;
        sol.f_inner.assign(ni + 1, 1.0);
        sol.uR = R;
        sol.duR = 1.0;
        sol.scaleA = 1.0;
        return sol;
    }

    sol.a0 = scattering_length(pot, grid);

    // Neumann condition: S(lambda) = Rb u'(Rb) - u(Rb) = 0; S(0) = a0 u'_outer > 0
    auto S = [&](double lam, Shoot* keep = nullptr) {
        Shoot s = integrate_inner(pot, lam, ni);
        double u, du;
        outer_state(s.uR, s.duR, std::sqrt(lam), R, Rb, u, du);
        if (keep) *keep = s;
        return Rb * du - u;
    };

    double lo = 0.0, hi = 3.0 * sol.a0 / (Rb * Rb * Rb) * 3.0;
    double Slo = S(lo), Shi = S(hi);
    int expand = 0;
    while (Shi > 0.0 && expand++ < 8) {
        hi *= 2.0;
        Shi = S(hi);
    }
    if (!(Slo > 0.0 && Shi < 0.0))
        throw std::runtime_error("solve_neumann: shooting bracket failure (no sign change in lambda scan)");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double Sm = S(mid);
        if (Sm > 0.0) {
            lo = mid;
            Slo = Sm;
        } else {
            hi = mid;
            Shi = Sm;
        }
    }
    sol.lambda = 0.5 * (lo + hi);

    Shoot s;
    S(sol.lambda, &s);
    double sq = std::sqrt(sol.lambda);
    double uRb, duRb;
    outer_state(s.uR, s.duR, sq, R, Rb, uRb, duRb);

    // ground state check: u must stay positive inside the ball
    for (int i = 1; i <= ni; ++i)
        if (s.u[i] <= 0.0) throw std::runtime_error("solve_neumann: nodal solution detected");
    if (s.uR <= 0.0 || s.duR <= 0.0 || sq * (Rb - R) > M_PI_2)
        throw std::runtime_error("solve_neumann: nodal solution detected");

    sol.scaleA = Rb / uRb;
    sol.uR = s.uR;
    sol.duR = s.duR;
    sol.f_inner.resize(ni + 1);
    sol.f_inner[0] = sol.scaleA;  // limit of A u / r at 0 with u'(0)=1
    for (int i = 1; i <= ni; ++i) sol.f_inner[i] = sol.scaleA * s.u[i] / sol.r_inner[i];
    return sol;
}

double ScatteringSolution::f_outer_at(double r) const {
    if (trivial()) return 1.0;
    double u, du;
    outer_state(uR, duR, std::sqrt(lambda), support_R, r, u, du);
    return scaleA * u / r;
}

double ScatteringSolution::f_at(double r) const {
    if (r < 0.0 || r > Rb * (1.0 + 1e-12)) throw std::invalid_argument("f_at: radius outside ball");
    if (r >= support_R) return f_outer_at(r);
    double h = r_inner[1] - r_inner[0];
    auto i = static_cast<std::size_t>(r / h);
    i = std::min(i, f_inner.size() - 2);
    double t = (r - r_inner[i]) / h;
    return f_inner[i] + t * (f_inner[i + 1] - f_inner[i]);
}

double integral_Vf(const ScatteringSolution& sol, const Potential& pot) {
    RadialKernels k(sol, pot);
    return k.conv_Vf(0.0);
}

double integral_w(const ScatteringSolution& sol) {
    Potential zero = Potential::soft_sphere(0.0, sol.support_R);
    RadialKernels k(sol, zero);
    // eta(0) = -4 pi N^{3k-2} int w r^2, so recover the plain integral
    return -k.eta0() * std::pow(sol.N, 2.0 - 3.0 * sol.kappa);
}

RadialKernels::RadialKernels(const ScatteringSolution& sol, const Potential& pot)
    : N_(sol.N), kappa_(sol.kappa), ell_(sol.ell) {
    n_scale_ = std::pow(N_, 1.0 - kappa_);
    eta_pref_ = -4.0 * M_PI * std::pow(N_, 3.0 * kappa_ - 2.0);

    const auto& ri = sol.r_inner;
    const int ni = static_cast<int>(ri.size()) - 1;
    const double h = ri[1] - ri[0];
    // inner region: classic composite Simpson on the uniform grid
    for (int i = 0; i <= ni; ++i) {
        double w = (i == 0 || i == ni) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        w *= h / 3.0;
        double r = ri[i], f = sol.f_inner[i];
        nodes_.push_back(r);
        w_weights_.push_back(w * (1.0 - f) * r * r);
        vf_weights_.push_back(w * pot.value(std::min(r, pot.support_radius())) * f * r * r);
    }
    n_inner_nodes_ = nodes_.size();
    // outer region: per-cell Simpson, midpoints from the closed form
    const auto& ro = sol.r_outer;
    for (std::size_t j = 0; j + 1 < ro.size(); ++j) {
        double a = ro[j], b = ro[j + 1], m = 0.5 * (a + b);
        double d6 = (b - a) / 6.0;
        double fa = sol.f_outer_at(a), fm = sol.f_outer_at(m), fb = sol.f_outer_at(b);
        nodes_.push_back(a);
        w_weights_.push_back(d6 * (1.0 - fa) * a * a);
        nodes_.push_back(m);
        w_weights_.push_back(4.0 * d6 * (1.0 - fm) * m * m);
        nodes_.push_back(b);
        w_weights_.push_back(d6 * (1.0 - fb) * b * b);
    }
}

double RadialKernels::eta(double pnorm) const {
    const double k = pnorm / n_scale_;
    KahanSum s;
    for (std::size_t i = 0; i < nodes_.size(); ++i) s.add(w_weights_[i] * sinc(k * nodes_[i]));
    return eta_pref_ * s.value();
}

double RadialKernels::conv_Vf(double pnorm) const {
    const double k = pnorm / n_scale_;
    KahanSum s;
    for (std::size_t i = 0; i < n_inner_nodes_; ++i) s.add(vf_weights_[i] * sinc(k * nodes_[i]));
    return 4.0 * M_PI * s.value();
}

double RadialKernels::conv_chi_f(double pnorm) const {
    return chi_hat(ell_, pnorm) + eta(pnorm) / N_;
}

double chi_hat(double ell, double pnorm) {
    double x = ell * pnorm;
    if (std::fabs(x) < 1e-4) {
        // 4 pi ell^3 / 3 * (1 - x^2/10 + x^4/280)
        double x2 = x * x;
        return 4.0 * M_PI * ell * ell * ell / 3.0 * (1.0 - x2 / 10.0 + x2 * x2 / 280.0);
    }
    double p2 = pnorm * pnorm;
    return 4.0 * M_PI / p2 * (std::sin(x) / pnorm - ell * std::cos(x));
}

double scattering_residual(const RadialKernels& k, const ScatteringSolution& sol, double pnorm) {
    double Nk = std::pow(sol.N, sol.kappa);
    double eta = k.eta(pnorm);
    double lhs = pnorm * pnorm * eta + 0.5 * Nk * k.conv_Vf(pnorm);
    double rhs = std::pow(sol.N, 3.0 - 2.0 * sol.kappa) * sol.lambda * chi_hat(sol.ell, pnorm) +
                 std::pow(sol.N, 2.0 - 2.0 * sol.kappa) * sol.lambda * eta;
    return std::fabs(lhs - rhs);
}

}  // namespace bogo
