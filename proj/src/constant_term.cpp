#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bogo/lattice.hpp"
#include "bogo/lattice_sums.hpp"
#include "bogo/numeric.hpp"
#include "bogo/parallel.hpp"

namespace bogo {

namespace {

// combined per-momentum summand of the single-sum groups: the P_H quadratic
// coefficients, the 1/N scattering-kernel group and the dispersion square
// root, in the cancellation-free form
inline double g236(double p2, double X, double vhat, double eta, double sigma, double gamma,
                   double N, double Nk, bool in_ph) {
    double eps = 2.0 * X / p2;
    double sq = std::sqrt(1.0 + eps);
    double val = -(X * X / p2) / ((1.0 + sq) * (1.0 + sq)) - sigma * sigma * p2 -
                 (sigma * gamma + sigma * sigma) * X;
    if (in_ph) {
        val += p2 * sigma * sigma + Nk * vhat * (sigma * gamma + sigma * sigma);
        double conv_eta = N * (X / Nk - vhat);
        val += (p2 * eta * eta + Nk / (2.0 * N) * conv_eta * eta) / N;
    }
    return val;
}

}  // namespace

CmnResult constant_term_cmn(const CoefficientTable& table, const ScatteringSolution& sol,
                            const Potential& pot, const ModelParams& params, double elambda_value,
                            const CmnOptions& opt) {
    const double N = params.N;
    const double Nk = params.n_kappa();
    const double nsc = params.n_scale();
    const double high = params.high_cut();
    const int nmax = static_cast<int>(std::floor(table.pmax / (2.0 * M_PI)));
    if (opt.n_exact <= nmax || opt.n_model <= opt.n_exact)
        throw std::invalid_argument("constant_term_cmn: region radii must increase");

    RadialKernels kern(sol, pot);
    const std::size_t ns = table.size();

    // ---- region A: table shells, exact eta ----
    std::vector<double> valsA(ns), sg(ns);
    parallel_for(ns, opt.threads, [&](std::size_t i) {
        valsA[i] = table.multiplicity[i] *
                   g236(table.pnorm[i] * table.pnorm[i], Nk * table.conv[i], table.vhat[i],
                        table.eta[i], table.sigma[i], table.gamma[i], N, Nk, table.in_PH[i]);
        sg[i] = table.sigma[i] * table.gamma[i];
    });
    KahanSum sumA;
    for (double v : valsA) sumA.add(v);

    // ---- region B: exact-eta shells from the table edge to n_exact ----
    const std::int64_t table_edge_n2 = table.n2.back();
    auto histB = shell_histogram_range(table_edge_n2,
                                       static_cast<std::int64_t>(opt.n_exact) * opt.n_exact);
    std::vector<std::int64_t> shellsB;
    for (std::size_t s = 0; s < histB.size(); ++s)
        if (histB[s] > 0) shellsB.push_back(static_cast<std::int64_t>(s));
    std::vector<double> etaB(shellsB.size()), convB(shellsB.size()), valsB(shellsB.size());
    parallel_for(shellsB.size(), opt.threads, [&](std::size_t j) {
        double p = 2.0 * M_PI * std::sqrt(static_cast<double>(shellsB[j]));
        double eta = kern.eta(p);
        double conv = kern.conv_Vf(p);
        etaB[j] = eta;
        convB[j] = conv;
        double sgm = std::sinh(eta), gam = std::cosh(eta);
        valsB[j] = histB[shellsB[j]] *
                   g236(p * p, Nk * conv, pot.fourier(p / nsc), eta, sgm, gam, N, Nk, true);
    });
    KahanSum sumB;
    for (double v : valsB) sumB.add(v);

    // ---- region C: model on the lattice, n_exact < n <= n_model ----
    auto histC = shell_histogram(opt.n_exact, opt.n_model);
    std::vector<std::int64_t> shellsC;
    for (std::size_t s = 0; s < histC.size(); ++s)
        if (histC[s] > 0) shellsC.push_back(static_cast<std::int64_t>(s));
    std::vector<double> valsC(shellsC.size()), g4C(shellsC.size()), sig2C(shellsC.size());
    // scalar window corrections for the pair sums, fixed below
    double eta0 = kern.eta0();
    KahanSum ElS, dsgS;
    for (std::size_t i = 0; i < ns; ++i) {
        if (!table.in_PH[i])
            ElS.add(table.multiplicity[i] * table.eta[i]);
        else
            dsgS.add(table.multiplicity[i] * (sg[i] - table.eta[i]));
    }
    for (std::size_t j = 0; j < shellsB.size(); ++j)
        dsgS.add(histB[shellsB[j]] * (std::sinh(etaB[j]) * std::cosh(etaB[j]) - etaB[j]));
    const double corr_scalar = eta0 + ElS.value() - dsgS.value();

    parallel_for(shellsC.size(), opt.threads, [&](std::size_t j) {
        double p = 2.0 * M_PI * std::sqrt(static_cast<double>(shellsC[j]));
        double k = p / nsc;
        double conv = kern.conv_Vf(p);
        double vh = pot.fourier(k);
        double eta = -Nk * conv / (2.0 * p * p);
        double sgm = std::sinh(eta), gam = std::cosh(eta);
        double mult = static_cast<double>(histC[shellsC[j]]);
        valsC[j] = mult * g236(p * p, Nk * conv, vh, eta, sgm, gam, N, Nk, true);
        g4C[j] = mult * sgm * gam * (-N * (vh - conv) - vh * corr_scalar);
        sig2C[j] = mult * sgm * sgm;
    });
    KahanSum sumC, pairC, sig2CS;
    for (double v : valsC) sumC.add(v);
    for (double v : g4C) pairC.add(v);
    for (double v : sig2C) sig2CS.add(v);

    // ---- region D: radial continuum beyond 2 pi n_model ----
    const double klo = 2.0 * M_PI * opt.n_model / nsc;
    const std::size_t nD = 32768;  // even, composite Simpson
    const double dkD = (opt.k_cut - klo) / static_cast<double>(nD);
    std::vector<double> gD(nD + 1), pD(nD + 1), s2D(nD + 1);
    parallel_for(nD + 1, opt.threads, [&](std::size_t i) {
        double k = klo + dkD * static_cast<double>(i);
        double p = k * nsc;
        double conv = kern.conv_Vf(p);
        double vh = pot.fourier(k);
        double eta = -Nk * conv / (2.0 * p * p);
        double sgm = std::sinh(eta), gam = std::cosh(eta);
        double dens = p * p / (2.0 * M_PI * M_PI);
        gD[i] = g236(p * p, Nk * conv, vh, eta, sgm, gam, N, Nk, true) * dens;
        pD[i] = sgm * gam * (-N * (vh - conv) - vh * corr_scalar) * dens;
        s2D[i] = sgm * sgm * dens;
    });
    auto simpson = [&](const std::vector<double>& g) {
        KahanSum s;
        for (std::size_t i = 0; i <= nD; ++i) {
            double w = (i == 0 || i == nD) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            s.add(w * g[i]);
        }
        return s.value() * dkD * nsc / 3.0;
    };
    double sumD = simpson(gD), pairD = simpson(pD), sig2D = simpson(s2D);

    // ---- pair group: exact double sum over P_H in the table ball ----
    auto lattice = MomentumLattice::build(table.pmax);
    std::vector<std::array<int, 3>> ph;
    std::vector<double> sg_pt;
    std::vector<std::size_t> shell_pt;
    for (std::size_t ip = 0; ip < lattice.points.size(); ++ip) {
        std::size_t si = lattice.shell_of_point[ip];
        if (lattice.shells[si].pnorm >= high) {
            ph.push_back(lattice.points[ip]);
            sg_pt.push_back(sg[si]);
            shell_pt.push_back(si);
        }
    }
    std::vector<double> vhat_d2(static_cast<std::size_t>(12) * nmax * nmax + 1);
    parallel_for(vhat_d2.size(), opt.threads, [&](std::size_t d2) {
        vhat_d2[d2] = pot.fourier(2.0 * M_PI * std::sqrt(static_cast<double>(d2)) / nsc);
    });
    std::vector<double> wball(ph.size());
    parallel_for(ph.size(), opt.threads, [&](std::size_t i) {
        const auto& a = ph[i];
        KahanSum row;
        for (std::size_t j = 0; j < ph.size(); ++j) {
            const auto& b = ph[j];
            int dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
            row.add(vhat_d2[static_cast<std::size_t>(dx * dx + dy * dy + dz * dz)] * sg_pt[j]);
        }
        wball[i] = row.value();
    });
    KahanSum ds, corr_inball, pairB;
    for (std::size_t i = 0; i < ph.size(); ++i) {
        ds.add(sg_pt[i] * wball[i]);
        std::size_t si = shell_pt[i];
        double wfull = -N * (table.vhat[si] - table.conv[si]) - table.vhat[si] * corr_scalar;
        corr_inball.add(sg_pt[i] * (wfull - wball[i]));
    }
    for (std::size_t j = 0; j < shellsB.size(); ++j) {
        double p = 2.0 * M_PI * std::sqrt(static_cast<double>(shellsB[j]));
        double vh = pot.fourier(p / nsc);
        double sgm = std::sinh(etaB[j]), gam = std::cosh(etaB[j]);
        pairB.add(histB[shellsB[j]] * sgm * gam * (-N * (vh - convB[j]) - vh * corr_scalar));
    }
    double pair_group = Nk / (2.0 * N) *
                        (ds.value() + corr_inball.value() + pairB.value() + pairC.value() + pairD);

    // ---- sigma^2 group ----
    KahanSum sig2;
    for (std::size_t i = 0; i < ns; ++i)
        sig2.add(table.multiplicity[i] * table.sigma[i] * table.sigma[i]);
    for (std::size_t j = 0; j < shellsB.size(); ++j) {
        double s = std::sinh(etaB[j]);
        sig2.add(histB[shellsB[j]] * s * s);
    }
    sig2.add(sig2CS.value());
    sig2.add(sig2D);
    double sigma_group = -(1.0 / N) * sig2.value() * Nk * table.conv_eta_at_0;

    CmnResult out;
    out.mean_field_group = (N - 1.0) / 2.0 * Nk * pot.fourier_zero();
    out.shell_groups = sumA.value() + sumB.value() + sumC.value() + sumD;
    out.pair_group = pair_group;
    out.sigma_group = sigma_group;
    out.value = out.mean_field_group + out.shell_groups + out.pair_group + out.sigma_group;

    double a0N = sol.a0 * Nk;
    double ebog_pmax = std::max(80.0 * M_PI, 1.3 * high);
    out.closed_form = 4.0 * M_PI * a0N * (N - 1.0) + elambda_value * a0N * a0N +
                      e_bog(sol.a0, N, params.kappa, ebog_pmax).value;
    out.deviation = out.value - out.closed_form;
    return out;
}

}  // namespace bogo
