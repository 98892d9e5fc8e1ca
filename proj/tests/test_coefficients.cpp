#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bogo/coefficients.hpp"
#include "bogo/lattice.hpp"

using namespace bogo;

namespace {

struct Fixture {
    Potential pot = Potential::soft_sphere(2.0, 1.0);
    ModelParams params;
    ScatteringSolution sol;
    MomentumLattice lattice;
    CoefficientTable table;
};

// shared default table: kappa = 0.01, N = 1e4, pmax = 40 pi
const Fixture& fixture() {
    static Fixture* f = [] {
        auto* x = new Fixture;
        x->params.N = 1e4;
        x->params.kappa = 0.01;
        x->sol = solve_neumann(x->pot, x->params);
        x->lattice = MomentumLattice::build(40.0 * M_PI);
        x->table = build_coefficients(x->sol, x->pot, x->params, x->lattice, false, 2);
        return x;
    }();
    return *f;
}

}  // namespace

TEST_CASE("lattice construction: counts and order") {
    auto l1 = MomentumLattice::build(2.0 * M_PI);
    CHECK(l1.points.size() == 6);
    CHECK(l1.shells.size() == 1);
    auto l3 = MomentumLattice::build(2.0 * M_PI * std::sqrt(3.0) * (1 + 1e-12));
    CHECK(l3.points.size() == 26);
    std::vector<int> mult;
    for (const auto& s : MomentumLattice::build(4.0 * M_PI).shells) mult.push_back(s.multiplicity);
    CHECK(mult == std::vector<int>{6, 12, 8, 6});
    // deterministic order: shells ascending, lexicographic inside
    CHECK(l1.points.front() == std::array<int, 3>{-1, 0, 0});
    CHECK(l1.points.back() == std::array<int, 3>{1, 0, 0});
    CHECK_THROWS_AS(MomentumLattice::build(1.0), std::invalid_argument);
    CHECK_THROWS_AS(MomentumLattice::build(4000.0, 1000), std::runtime_error);
}

TEST_CASE("zero potential: free table") {
    auto z = Potential::soft_sphere(0.0, 1.0);
    ModelParams p;
    p.N = 1e4;
    auto sol = solve_neumann(z, p);
    auto lat = MomentumLattice::build(40.0 * M_PI);
    auto t = build_coefficients(sol, z, p, lat);
    for (std::size_t i = 0; i < t.size(); ++i) {
        double p2 = t.pnorm[i] * t.pnorm[i];
        CHECK(t.eta[i] == 0.0);
        CHECK(t.sigma[i] == 0.0);
        CHECK(t.gamma[i] == 1.0);
        CHECK(t.F[i] == doctest::Approx(p2).epsilon(1e-14));
        CHECK(t.G[i] == 0.0);
        CHECK(t.tau[i] == 0.0);
        CHECK(t.eps[i] == doctest::Approx(p2).epsilon(1e-14));
    }
}

TEST_CASE("exact identity suite on the default table") {
    const auto& t = fixture().table;
    const double Nk = t.params.n_kappa();
    for (std::size_t i = 0; i < t.size(); ++i) {
        double p2 = t.pnorm[i] * t.pnorm[i];
        double sg = t.sigma[i], cg = t.gamma[i];
        CHECK(t.F[i] - t.G[i] ==
              doctest::Approx((cg - sg) * (cg - sg) * p2).epsilon(1e-10));
        double lhs = std::sqrt(t.F[i] * t.F[i] - t.G[i] * t.G[i]);
        double rhs = std::sqrt(p2 * p2 + 2.0 * p2 * Nk * t.conv[i]);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        CHECK(std::tanh(2.0 * t.tau[i]) == doctest::Approx(-t.G[i] / t.F[i]).epsilon(1e-10));
        if (t.in_PH[i]) CHECK(cg * cg - sg * sg == doctest::Approx(1.0).epsilon(1e-12));
        double st = t.sigma_tilde(i), gt = t.gamma_tilde(i);
        CHECK(gt * gt - st * st == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("dispersion column: monotone, exact square") {
    const auto& t = fixture().table;
    double b = 16.0 * M_PI * t.a0 * t.params.n_kappa();
    for (std::size_t i = 0; i < t.size(); ++i) {
        double p2 = t.pnorm[i] * t.pnorm[i];
        CHECK(t.eps[i] >= p2);
        if (i > 0) CHECK(t.eps[i] > t.eps[i - 1]);
        CHECK(t.eps[i] * t.eps[i] - p2 * p2 == doctest::Approx(b * p2).epsilon(1e-11));
    }
}

TEST_CASE("infrared cutoff placement") {
    const auto& t = fixture().table;
    const double high = t.params.high_cut();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t.pnorm[i] >= high) {
            CHECK(t.eta_H[i] == t.eta[i]);
            CHECK(t.in_PH[i]);
        } else {
            CHECK(t.eta_H[i] == 0.0);
            CHECK(t.sigma[i] == 0.0);
            CHECK(t.gamma[i] == 1.0);
        }
    }
}

TEST_CASE("high-momentum decay of the final rotation angles") {
    const auto& t = fixture().table;
    const double Nk = t.params.n_kappa();
    const double high = t.params.high_cut();
    const double low = std::pow(t.params.N, t.params.kappa / 2.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        double p2 = t.pnorm[i] * t.pnorm[i];
        if (t.pnorm[i] >= high)
            CHECK(std::fabs(t.tau[i]) * p2 * p2 / (Nk * Nk) < 500.0);
        else if (t.pnorm[i] >= low)
            CHECK(std::fabs(t.tau[i]) * p2 / Nk < 50.0);
    }
}

TEST_CASE("bound report: defaults pass on the reference potential") {
    auto rep = bound_report(fixture().table);
    CHECK(rep.all_pass);
    CHECK(rep["gap_ratio_floor"].value > 0.0);
    CHECK(rep["F_over_dispersion_inf"].value > 0.9);
    CHECK(rep["F_over_dispersion_sup"].value < 2.0);
    CHECK_THROWS_AS(rep["no_such_entry"], std::out_of_range);
}

TEST_CASE("eta_H convolution variant stays stable and differs from the default") {
    const auto& f = fixture();
    auto small_lat = MomentumLattice::build(8.0 * M_PI);
    auto t0 = build_coefficients(f.sol, f.pot, f.params, small_lat, false);
    auto t1 = build_coefficients(f.sol, f.pot, f.params, small_lat, true);
    CHECK(t1.conv_uses_eta_H);
    bool differs = false;
    for (std::size_t i = 0; i < t0.size(); ++i) {
        if (t0.Phi[i] != t1.Phi[i]) differs = true;
        CHECK(std::isfinite(t1.Phi[i]));
        CHECK(std::isfinite(t1.Gam[i]));
        // F, G do not involve the eta convolutions
        CHECK(t0.F[i] == t1.F[i]);
        CHECK(t0.G[i] == t1.G[i]);
    }
    CHECK(differs);
}

TEST_CASE("table errors") {
    const auto& f = fixture();
    auto tiny = MomentumLattice::build(2.0 * M_PI);  // pmax < N^alpha
    CHECK_THROWS_AS(build_coefficients(f.sol, f.pot, f.params, tiny), std::invalid_argument);
}

TEST_CASE("CSV export: fixed schema, deterministic") {
    const auto& t = fixture().table;
    auto csv = coefficients_csv(t);
    std::istringstream is(csv);
    std::string header;
    std::getline(is, header);
    CHECK(header == "p_sq,multiplicity,eta_H,sigma,gamma,Phi,Gamma,F,G,tau,epsilon");
    std::size_t rows = 0;
    for (std::string line; std::getline(is, line);) ++rows;
    CHECK(rows == t.size());
    CHECK(csv == coefficients_csv(t));
}

TEST_CASE("thread count does not change the table") {
    const auto& f = fixture();
    auto lat = MomentumLattice::build(10.0 * M_PI);
    auto t1 = build_coefficients(f.sol, f.pot, f.params, lat, false, 1);
    auto t4 = build_coefficients(f.sol, f.pot, f.params, lat, false, 4);
    for (std::size_t i = 0; i < t1.size(); ++i) {
        CHECK(t1.F[i] == t4.F[i]);
        CHECK(t1.G[i] == t4.G[i]);
        CHECK(t1.tau[i] == t4.tau[i]);
        CHECK(t1.Phi[i] == t4.Phi[i]);
    }
    CHECK(t1.tau_l1 == t4.tau_l1);
}
