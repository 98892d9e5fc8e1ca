#ifndef BOGO_COEFFICIENTS_HPP
#define BOGO_COEFFICIENTS_HPP

#include <map>
#include <string>
#include <vector>

#include "bogo/lattice.hpp"
#include "bogo/model_params.hpp"
#include "bogo/potential.hpp"
#include "bogo/scattering.hpp"

namespace bogo {

// Per-momentum coefficient families on a shell basis. All default-path
// quantities are radial, hence exactly constant on shells (and a fortiori on
// cubic orbits). The eta_H-in-convolution variant is evaluated at shell
// representatives and is a diagnostic knob only.
struct CoefficientTable {
    ModelParams params;
    double a0 = 0.0;
    double pmax = 0.0;
    bool conv_uses_eta_H = false;

    // one entry per shell, ascending |n|^2
    std::vector<std::int64_t> n2;
    std::vector<double> pnorm;
    std::vector<int> multiplicity;
    std::vector<char> in_PH;
    std::vector<double> eta;       // uncut eta_p
    std::vector<double> eta_H;
    std::vector<double> sigma;     // sinh(eta_H)
    std::vector<double> gamma;     // cosh(eta_H)
    std::vector<double> conv;      // (Vhat(./N^{1-k}) * fhat_N)_p
    std::vector<double> vhat;      // Vhat(p / N^{1-k})
    std::vector<double> Phi;
    std::vector<double> Gam;       // off-diagonal quadratic coefficient
    std::vector<double> F;
    std::vector<double> G;
    std::vector<double> tau;
    std::vector<double> eps;       // sqrt(p^4 + 16 pi a0 N^k p^2)

    // scalars
    double conv_eta_at_0 = 0.0;    // (Vhat * eta)_0 = N (conv(0) - Vhat(0))
    double eta_zero = 0.0;         // eta_0
    double tau_inf = 0.0;
    double tau_l1 = 0.0;
    double tau_l2_sq = 0.0;
    double tau_h1_sq = 0.0;        // sum mult (1 + p^2) tau^2

    std::size_t size() const { return pnorm.size(); }
    double sigma_tilde(std::size_t i) const;  // sinh(tau)
    double gamma_tilde(std::size_t i) const;  // cosh(tau)
    std::size_t shell_index_of_n2(std::int64_t n2) const;
};

CoefficientTable build_coefficients(const ScatteringSolution& sol, const Potential& pot,
                                    const ModelParams& params, const MomentumLattice& lattice,
                                    bool conv_uses_eta_H = false, int threads = 1);

// Empirical constants behind the coefficient bounds; pass/fail against
// configured ceilings (defaults documented in default_ceilings()).
struct BoundEntry {
    std::string name;
    double value = 0.0;
    double ceiling = 0.0;
    bool is_lower_bound = false;  // pass condition value >= ceiling
    bool pass = false;
};

struct BoundReport {
    std::vector<BoundEntry> entries;
    bool all_pass = true;
    const BoundEntry& operator[](const std::string& name) const;
};

std::map<std::string, double> default_ceilings();
BoundReport bound_report(const CoefficientTable& table,
                         const std::map<std::string, double>& ceilings = default_ceilings());

// CSV export, one row per shell; fixed header and column order
std::string coefficients_csv(const CoefficientTable& table);

}  // namespace bogo

#endif
