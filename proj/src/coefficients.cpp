#include "bogo/coefficients.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bogo/numeric.hpp"
#include "bogo/parallel.hpp"

namespace bogo {

double CoefficientTable::sigma_tilde(std::size_t i) const { return std::sinh(tau[i]); }
double CoefficientTable::gamma_tilde(std::size_t i) const { return std::cosh(tau[i]); }

std::size_t CoefficientTable::shell_index_of_n2(std::int64_t key) const {
    auto it = std::lower_bound(n2.begin(), n2.end(), key);
    if (it == n2.end() || *it != key) throw std::out_of_range("shell |n|^2 not in table");
    return static_cast<std::size_t>(it - n2.begin());
}

CoefficientTable build_coefficients(const ScatteringSolution& sol, const Potential& pot,
                                    const ModelParams& params, const MomentumLattice& lattice,
                                    bool conv_uses_eta_H, int threads) {
    CoefficientTable t;
    t.params = params;
    t.a0 = sol.a0;
    t.pmax = lattice.pmax;
    t.conv_uses_eta_H = conv_uses_eta_H;

    const double Nk = params.n_kappa();
    const double N = params.N;
    const double high = params.high_cut();
    if (lattice.pmax < high)
        throw std::invalid_argument("build_coefficients: P_H empty in table (pmax < N^alpha)");

    const std::size_t ns = lattice.shells.size();
    t.n2.resize(ns);
    t.pnorm.resize(ns);
    t.multiplicity.resize(ns);
    t.in_PH.resize(ns);
    t.eta.resize(ns);
    t.eta_H.resize(ns);
    t.sigma.resize(ns);
    t.gamma.resize(ns);
    t.conv.resize(ns);
    t.vhat.resize(ns);
    t.Phi.resize(ns);
    t.Gam.resize(ns);
    t.F.resize(ns);
    t.G.resize(ns);
    t.tau.resize(ns);
    t.eps.resize(ns);

    RadialKernels kern(sol, pot);
    t.conv_eta_at_0 = N * (kern.conv_Vf(0.0) - pot.fourier_zero());
    t.eta_zero = kern.eta0();

    parallel_for(ns, threads, [&](std::size_t i) {
        const auto& sh = lattice.shells[i];
        double p = sh.pnorm;
        t.n2[i] = sh.n2;
        t.pnorm[i] = p;
        t.multiplicity[i] = sh.multiplicity;
        t.in_PH[i] = p >= high ? 1 : 0;
        t.eta[i] = kern.eta(p);
        t.conv[i] = kern.conv_Vf(p);
        t.vhat[i] = pot.fourier(p / params.n_scale());
    });

    // optional eta_H variant of the convolution entering Phi/Gamma
    // (Vhat * eta_H)_p = (Vhat * eta)_p - sum_{q in P_H^c} Vhat((p-q)/N^{1-k}) eta_q,
    // evaluated at the lexicographically first point of each shell.
    std::vector<double> convH_corr(ns, 0.0);
    if (conv_uses_eta_H) {
        std::vector<std::size_t> low_pts;
        for (std::size_t ip = 0; ip < lattice.points.size(); ++ip)
            if (!t.in_PH[lattice.shell_of_point[ip]]) low_pts.push_back(ip);
        parallel_for(ns, threads, [&](std::size_t i) {
            const auto rep = lattice.points[lattice.shells[i].first_point];
            KahanSum s;
            for (std::size_t ip : low_pts) {
                const auto& q = lattice.points[ip];
                double dx = 2.0 * M_PI * (rep[0] - q[0]);
                double dy = 2.0 * M_PI * (rep[1] - q[1]);
                double dz = 2.0 * M_PI * (rep[2] - q[2]);
                double d = std::sqrt(dx * dx + dy * dy + dz * dz);
                s.add(pot.fourier(d / params.n_scale()) * t.eta[lattice.shell_of_point[ip]]);
            }
            convH_corr[i] = s.value();
        });
    }

    double conv_eta_0 = t.conv_eta_at_0;
    if (conv_uses_eta_H) {
        // subtract the low-momentum window at p = 0 as well
        KahanSum s0;
        for (std::size_t j = 0; j < ns; ++j)
            if (!t.in_PH[j]) s0.add(t.multiplicity[j] * t.vhat[j] * t.eta[j]);
        conv_eta_0 -= s0.value() + pot.fourier_zero() * t.eta_zero;
    }

    const double b = 16.0 * M_PI * sol.a0 * Nk;
    std::atomic<bool> stability_violated{false};
    parallel_for(ns, threads, [&](std::size_t i) {
        double p = t.pnorm[i];
        double p2 = p * p;
        double etaH = t.in_PH[i] ? t.eta[i] : 0.0;
        double sg = std::sinh(etaH), cg = std::cosh(etaH);
        t.eta_H[i] = etaH;
        t.sigma[i] = sg;
        t.gamma[i] = cg;

        double conv_eta_p = N * (t.conv[i] - t.vhat[i]) - convH_corr[i];

        double gs2 = cg * cg + sg * sg;
        double gps = cg + sg;
        t.Phi[i] = 2.0 * p2 * sg * sg + Nk * t.vhat[i] * gps * gps +
                   2.0 * Nk * cg * sg / N * conv_eta_p - Nk * gs2 / N * conv_eta_0;
        t.Gam[i] = 2.0 * p2 * sg * cg + Nk * gps * gps * t.vhat[i] +
                   gs2 * Nk / N * conv_eta_p - 2.0 * cg * sg * Nk / N * conv_eta_0;

        double X = Nk * t.conv[i];
        t.F[i] = gs2 * p2 + gps * gps * X;
        t.G[i] = 2.0 * p2 * sg * cg + gps * gps * X;
        double ratio = t.G[i] / t.F[i];
        if (!(std::fabs(ratio) < 1.0) || !(t.F[i] > 0.0)) stability_violated.store(true);
        t.tau[i] = 0.25 * (std::log1p(-ratio) - std::log1p(ratio));
        t.eps[i] = std::sqrt(p2 * p2 + b * p2);
    });
    if (stability_violated.load())
        throw std::runtime_error("build_coefficients: |G_p| >= F_p (inputs violate Bogoliubov stability)");

    // norms in fixed shell order
    KahanSum l1, l2, h1;
    double linf = 0.0;
    for (std::size_t i = 0; i < ns; ++i) {
        double a = std::fabs(t.tau[i]);
        linf = std::max(linf, a);
        double m = t.multiplicity[i];
        l1.add(m * a);
        l2.add(m * a * a);
        h1.add(m * (1.0 + t.pnorm[i] * t.pnorm[i]) * a * a);
    }
    t.tau_inf = linf;
    t.tau_l1 = l1.value();
    t.tau_l2_sq = l2.value();
    t.tau_h1_sq = h1.value();
    return t;
}

std::map<std::string, double> default_ceilings() {
    return {
        {"F_over_dispersion_sup", 50.0},   {"F_over_dispersion_inf", 1e-3},
        {"G_off_PH_over_Nk", 50.0},        {"G_on_PH_p2_over_N2k", 500.0},
        {"sigma_p2_over_Nk", 50.0},        {"tau_inf_minus_log", 50.0},
        {"tau_l2sq_over_N3k2", 50.0},      {"tau_l1_over_Nak", 50.0},
        {"tau_h1sq_over_Na2k", 50.0},      {"gap_ratio_floor", 1e-3},
        {"Gamma_premise_over_Nk", 500.0},  {"Phi_premise_over_Nk", 50.0},
    };
}

const BoundEntry& BoundReport::operator[](const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw std::out_of_range("bound report entry: " + name);
}

BoundReport bound_report(const CoefficientTable& t, const std::map<std::string, double>& ceilings) {
    const double Nk = t.params.n_kappa();
    const double N = t.params.N;
    const double high = t.params.high_cut();

    double f_sup = 0.0, f_inf = 1e300, g_off = 0.0, g_on = 0.0, sig_sup = 0.0;
    double gap_c = 1e300, gam_prem = 0.0, phi_prem = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double p2 = t.pnorm[i] * t.pnorm[i];
        double disp = p2 + Nk;
        f_sup = std::max(f_sup, t.F[i] / disp);
        f_inf = std::min(f_inf, t.F[i] / disp);
        if (t.in_PH[i])
            g_on = std::max(g_on, std::fabs(t.G[i]) * p2 / (Nk * Nk));
        else
            g_off = std::max(g_off, std::fabs(t.G[i]) / Nk);
        sig_sup = std::max(sig_sup, std::fabs(t.sigma[i]) * p2 / Nk);
        double gap = (1.0 - std::fabs(t.G[i]) / t.F[i]) / std::min(1.0, p2 / Nk);
        gap_c = std::min(gap_c, gap);
        double gam_env = Nk * ((t.pnorm[i] <= high ? 1.0 : 0.0) + 1.0 / p2);
        gam_prem = std::max(gam_prem, std::fabs(t.Gam[i]) / gam_env);
        phi_prem = std::max(phi_prem, std::fabs(t.Phi[i]) / Nk);
    }
    double alpha = t.params.alpha, kap = t.params.kappa;
    BoundReport r;
    auto push = [&](const std::string& name, double value, bool lower) {
        double ceil = ceilings.at(name);
        bool pass = lower ? value >= ceil : value <= ceil;
        r.entries.push_back({name, value, ceil, lower, pass});
        r.all_pass = r.all_pass && pass;
    };
    push("F_over_dispersion_sup", f_sup, false);
    push("F_over_dispersion_inf", f_inf, true);
    push("G_off_PH_over_Nk", g_off, false);
    push("G_on_PH_p2_over_N2k", g_on, false);
    push("sigma_p2_over_Nk", sig_sup, false);
    push("tau_inf_minus_log", t.tau_inf - std::log(std::pow(N, kap / 4.0)), false);
    push("tau_l2sq_over_N3k2", t.tau_l2_sq / std::pow(N, 1.5 * kap), false);
    push("tau_l1_over_Nak", t.tau_l1 / std::pow(N, alpha + kap), false);
    push("tau_h1sq_over_Na2k", t.tau_h1_sq / std::pow(N, alpha + 2.0 * kap), false);
    push("gap_ratio_floor", gap_c, true);
    push("Gamma_premise_over_Nk", gam_prem, false);
    push("Phi_premise_over_Nk", phi_prem, false);
    return r;
}

std::string coefficients_csv(const CoefficientTable& t) {
    std::ostringstream os;
    os << "p_sq,multiplicity,eta_H,sigma,gamma,Phi,Gamma,F,G,tau,epsilon\n";
    char buf[512];
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      t.pnorm[i] * t.pnorm[i], t.multiplicity[i], t.eta_H[i], t.sigma[i],
                      t.gamma[i], t.Phi[i], t.Gam[i], t.F[i], t.G[i], t.tau[i], t.eps[i]);
        os << buf;
    }
    return os.str();
}

}  // namespace bogo
