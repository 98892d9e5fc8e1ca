#ifndef BOGO_MODEL_PARAMS_HPP
#define BOGO_MODEL_PARAMS_HPP

#include <cmath>
#include <cstdint>

namespace bogo {

// Physical and cutoff parameters. The exponent relations are reported as
// flags, not enforced: out-of-window parameter sets still compute.
struct ModelParams {
    double N = 1.0e4;     // particle number
    double kappa = 0.0;   // scaling exponent in [0, 2/3)
    double ell = 0.25;    // Neumann ball cutoff in (0, 1/2)
    double alpha = 0.4;   // high-momentum exponent
    double beta = 0.2;    // low-momentum exponent
    double mu = 0.3;      // spectral-threshold exponent

    double n_kappa() const { return std::pow(N, kappa); }
    double n_scale() const { return std::pow(N, 1.0 - kappa); }  // N^{1-kappa}
    double neumann_radius() const { return ell * n_scale(); }
    double high_cut() const { return std::pow(N, alpha); }   // P_H = {|p| >= N^alpha}
    double low_cut() const { return std::pow(N, beta); }     // P_L = {|p| < N^beta}
    double threshold() const { return std::pow(N, kappa / 2.0 + mu); }

    bool basic_valid() const {
        return N >= 2.0 && kappa >= 0.0 && kappa < 2.0 / 3.0 && ell > 0.0 && ell < 0.5 && mu >= 0.0;
    }
    // 2k < beta < alpha < 1/2 - 2k,  4k < alpha,  3 beta + 4k - 1 < alpha
    bool exponent_window_valid() const {
        return 2.0 * kappa < beta && beta < alpha && alpha < 0.5 - 2.0 * kappa &&
               4.0 * kappa < alpha && 3.0 * beta + 4.0 * kappa - 1.0 < alpha;
    }
    // stronger regime: 6k < alpha < 1/2 - 3k/2 and k < 1/44
    bool strong_regime_valid() const {
        return 6.0 * kappa < alpha && alpha < 0.5 - 1.5 * kappa && kappa < 1.0 / 44.0;
    }
    // scattering ball must contain the potential support
    bool ball_contains_support(double support_radius) const {
        return neumann_radius() >= support_radius;
    }
};

}  // namespace bogo

#endif
