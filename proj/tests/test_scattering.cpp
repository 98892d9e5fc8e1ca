#include <doctest.h>

#include <cmath>
#include <vector>

#include "bogo/numeric.hpp"
#include "bogo/scattering.hpp"

using namespace bogo;

namespace {

double soft_sphere_a0(double V0, double R) {
    double k = std::sqrt(V0 / 2.0);
    return R - std::tanh(k * R) / k;
}

ModelParams params_for(double N, double kappa = 0.0) {
    ModelParams p;
    p.N = N;
    p.kappa = kappa;
    return p;
}

}  // namespace

TEST_CASE("scattering length matches the soft-sphere closed form") {
    auto p1 = Potential::soft_sphere(2.0, 1.0);
    CHECK(scattering_length(p1) == doctest::Approx(soft_sphere_a0(2.0, 1.0)).epsilon(1e-8));
    auto p2 = Potential::soft_sphere(8.0, 0.5);
    CHECK(scattering_length(p2) == doctest::Approx(soft_sphere_a0(8.0, 0.5)).epsilon(1e-8));
}

TEST_CASE("zero potential is exactly trivial") {
    auto z = Potential::soft_sphere(0.0, 1.0);
    CHECK(scattering_length(z) == 0.0);
    auto sol = solve_neumann(z, params_for(1e3));
    CHECK(sol.lambda == 0.0);
    CHECK(sol.a0 == 0.0);
    for (double f : sol.f_inner) CHECK(f == 1.0);
    CHECK(integral_Vf(sol, z) == 0.0);
    CHECK(integral_w(sol) == 0.0);
    RadialKernels k(sol, z);
    CHECK(k.eta(2.0 * M_PI) == 0.0);
    CHECK(scattering_residual(k, sol, 2.0 * M_PI) == 0.0);
}

TEST_CASE("a tabulated square profile reproduces the soft sphere") {
    auto soft = Potential::soft_sphere(2.0, 1.0);
    auto tab = Potential::tabulated({{0.0, 2.0}, {0.5, 2.0}, {1.0, 2.0}});
    CHECK(scattering_length(tab) == doctest::Approx(scattering_length(soft)).epsilon(1e-9));
}

TEST_CASE("Neumann ground state: normalization, bounds, monotonicity") {
    auto pot = Potential::soft_sphere(2.0, 1.0);
    auto sol = solve_neumann(pot, params_for(1e3));
    CHECK(sol.f_outer_at(sol.Rb) == doctest::Approx(1.0).epsilon(1e-14));
    double prev = -1.0;
    for (std::size_t i = 0; i < sol.f_inner.size(); ++i) {
        CHECK(sol.f_inner[i] >= 0.0);
        CHECK(sol.f_inner[i] <= 1.0 + 1e-12);
        CHECK(sol.f_inner[i] >= prev - 1e-13);
        prev = sol.f_inner[i];
    }
    for (double r : sol.r_outer) {
        double f = sol.f_outer_at(r);
        CHECK(f >= prev - 1e-13);
        CHECK(f <= 1.0 + 1e-12);
        prev = f;
    }
    CHECK(sol.lambda > 0.0);
    CHECK(sol.a0 > 0.0);
}

TEST_CASE("Neumann eigenvalue expansion residual decays like Rb^-2") {
    auto pot = Potential::soft_sphere(2.0, 1.0);
    std::vector<double> res, rb;
    for (double N : {1e3, 1e4, 1e5}) {
        auto sol = solve_neumann(pot, params_for(N));
        res.push_back(std::fabs(sol.lambda * std::pow(sol.Rb, 3) / (3.0 * sol.a0) - 1.0 -
                                1.8 * sol.a0 / sol.Rb));
        rb.push_back(sol.Rb);
    }
    CHECK(loglog_slope(rb, res) == doctest::Approx(-2.0).epsilon(0.15));
}

TEST_CASE("finite-difference residual of the returned solution is small and second order") {
    auto pot = Potential::soft_sphere(2.0, 1.0);
    auto params = params_for(1e3);

    auto fd_residual = [&](const GridSpec& g) {
        auto sol = solve_neumann(pot, params, g);
        // radial reduction u = r f solves -u'' + (V/2) u = lambda u
        const auto& r = sol.r_inner;
        const auto& f = sol.f_inner;
        double h = r[1] - r[0];
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < r.size(); ++i) {  // interior, away from the kink at R
            double u0 = r[i - 1] * f[i - 1], u1 = r[i] * f[i], u2 = r[i + 1] * f[i + 1];
            double upp = (u2 - 2.0 * u1 + u0) / (h * h);
            double res = std::fabs(-upp + (0.5 * pot.value(r[i]) - sol.lambda) * u1) /
                         std::max(1.0, std::fabs(u1));
            worst = std::max(worst, res);
        }
        return worst;
    };

    GridSpec coarse;
    coarse.n_inner = 1024;
    coarse.n_outer = 1024;
    double r1 = fd_residual(coarse);
    CHECK(r1 < 1e-8 * pot.V0());
    double r2 = fd_residual(coarse.refined(2.0));
    CHECK(r1 / r2 >= 3.0);  // second order in the grid spacing
}

TEST_CASE("kernel moments approach their dilute-limit values at the documented rates") {
    auto pot = Potential::soft_sphere(2.0, 1.0);
    std::vector<double> rb, res_vf, res_w;
    for (double N : {1e3, 1e4, 1e5}) {
        auto sol = solve_neumann(pot, params_for(N));
        double a0 = sol.a0;
        res_vf.push_back(
            std::fabs(integral_Vf(sol, pot) - 8.0 * M_PI * a0 * (1.0 + 1.5 * a0 / sol.Rb)));
        res_w.push_back(std::fabs(integral_w(sol) / (sol.Rb * sol.Rb) - 0.4 * M_PI * a0));
        rb.push_back(sol.Rb);
    }
    CHECK(loglog_slope(rb, res_vf) == doctest::Approx(-2.0).epsilon(0.15));
    CHECK(loglog_slope(rb, res_w) == doctest::Approx(-1.0).epsilon(0.3));
}

TEST_CASE("momentum kernels: consistency and bounds") {
    auto pot = Potential::soft_sphere(2.0, 1.0);
    auto params = params_for(1e4, 0.01);
    auto sol = solve_neumann(pot, params);
    RadialKernels k(sol, pot);

    SUBCASE("convolution at p = 0 equals the plain moment") {
        CHECK(k.conv_Vf(0.0) == doctest::Approx(integral_Vf(sol, pot)).epsilon(1e-12));
    }
    SUBCASE("eta is damped like N^kappa / p^2") {
        double Nk = params.n_kappa();
        for (int n2 : {1, 2, 3, 4, 9, 25, 100, 400}) {
            double p = 2.0 * M_PI * std::sqrt(static_cast<double>(n2));
            CHECK(std::fabs(k.eta(p)) * p * p / Nk < 50.0);
        }
    }
    SUBCASE("ball-window convolution is bounded by C / p^2 and exact for V = 0") {
        for (int n2 : {1, 4, 16, 64, 256}) {
            double p = 2.0 * M_PI * std::sqrt(static_cast<double>(n2));
            CHECK(std::fabs(k.conv_chi_f(p)) * p * p < 50.0);
        }
        auto z = Potential::soft_sphere(0.0, 1.0);
        auto solz = solve_neumann(z, params);
        RadialKernels kz(solz, z);
        for (int n2 : {1, 2, 5}) {
            double p = 2.0 * M_PI * std::sqrt(static_cast<double>(n2));
            CHECK(kz.conv_chi_f(p) == doctest::Approx(chi_hat(params.ell, p)).epsilon(1e-9));
        }
    }
    SUBCASE("lattice scattering identity holds to quadrature accuracy") {
        for (int n2 : {1, 3, 9, 49}) {
            double p = 2.0 * M_PI * std::sqrt(static_cast<double>(n2));
            double rel = scattering_residual(k, sol, p) / std::fabs(p * p * k.eta(p));
            CHECK(rel < 1e-6);
        }
    }
    SUBCASE("identity residual shrinks under quadrature refinement") {
        GridSpec coarse;
        coarse.n_inner = 256;
        coarse.n_outer = 256;
        auto s1 = solve_neumann(pot, params, coarse);
        auto s2 = solve_neumann(pot, params, coarse.refined(2.0));
        double p = 2.0 * M_PI * 2.0;
        double r1 = scattering_residual(RadialKernels(s1, pot), s1, p);
        double r2 = scattering_residual(RadialKernels(s2, pot), s2, p);
        CHECK(r1 / r2 >= 3.0);
    }
}

TEST_CASE("error contracts") {
    auto pot = Potential::soft_sphere(2.0, 1.0);
    SUBCASE("ball must contain the support") {
        ModelParams p;
        p.N = 3.0;  // ell * N = 0.75 < R
        p.kappa = 0.0;
        CHECK_THROWS_AS(solve_neumann(pot, p), std::invalid_argument);
    }
    SUBCASE("pointwise negative potentials are rejected") {
        CHECK_THROWS_AS(Potential::soft_sphere(-1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(Potential::tabulated({{0.0, 1.0}, {1.0, -0.5}}), std::invalid_argument);
    }
    SUBCASE("f_at rejects radii outside the ball") {
        auto sol = solve_neumann(pot, params_for(1e3));
        CHECK_THROWS_AS(sol.f_at(sol.Rb * 1.5), std::invalid_argument);
    }
}
