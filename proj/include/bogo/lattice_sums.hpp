#ifndef BOGO_LATTICE_SUMS_HPP
#define BOGO_LATTICE_SUMS_HPP

#include <utility>
#include <vector>

#include "bogo/coefficients.hpp"
#include "bogo/scattering.hpp"

namespace bogo {

struct SumResult {
    double value = 0.0;
    double tail_estimate = 0.0;   // uncertainty of the reported limit, >= 0
    double cutoff = 0.0;          // pmax or integer M actually used
    int extrapolation_order = 0;  // averaging passes / tail terms applied
    std::vector<std::pair<double, double>> diagnostics;  // (cutoff, partial value)
};

// E_Bog = 1/2 sum_{p} [ sqrt(p^4 + 16 pi a0 N^k p^2) - p^2 - 8 pi a0 N^k
//                       + (8 pi a0 N^k)^2 / (2 p^2) ],
// shell-by-shell in ascending |p|^2 with compensated accumulation, plus an
// analytic p^-4 tail fitted on the last decade of shells.
SumResult e_bog(double a0, double N, double kappa, double pmax, bool extrapolate = true);

// e_Lambda = 2 - lim_M sum_{n in Z^3\0, |n_i|<=M} 4 cos(|n|)/|n|^2.
// Cube-truncated exactly as written; the raw sequence oscillates and is
// tamed by iterated trailing-window averaging (see accelerate_cube_sequence).
SumResult e_lambda(int Mmax);

enum class IellForm { bracket, cosine };

// I_ell, cube-truncated and accelerated identically to e_lambda:
//   bracket: 1/ell + (4/15) pi ell^2 - (2/ell^3) sum chi_hat(p)/p^2
//   cosine : 4 pi ell^2/3 - (8 pi/3) lim sum cos(ell|p|)/p^2
SumResult i_ell(double ell, int Mmax, IellForm form);

// iterated trailing-window Cesaro averaging of a cube partial-sum sequence;
// raw[i] is the value at M = i+1
std::vector<double> accelerate_cube_sequence(const std::vector<double>& raw, int passes = 3);

// unaccelerated cube-truncated sequence 2 - S_M, M = 1..Mmax
std::vector<double> e_lambda_raw(int Mmax);

// (1/(2 (2pi)^3)) int_{R^3} [ sqrt(p^4+16 pi a0 p^2) - p^2 - 8 pi a0
//                             + (8 pi a0)^2/(2 p^2) ] dp
double lhy_integral(double a0);
double lhy_closed_form();  // 4 pi * 128 / (15 sqrt(pi)), the a0 = 1 value

struct EnergyBreakdown {
    double mean_field = 0.0;    // 4 pi a0 N^k (N-1)
    double elambda_term = 0.0;  // e_Lambda (a0 N^k)^2
    double e_bog = 0.0;
    double total = 0.0;
    SumResult elambda;
    SumResult ebog;
};

EnergyBreakdown ground_state_energy(double a0, double N, double kappa, double pmax, int Mmax);

// Constant-term chain: the explicit grouped sums over P_H and Lambda*_+
// (quadratic coefficients, scattering kernels, the pair double sum and the
// dispersion square root), evaluated in four radial regions:
//   A: exact table ball; B: exact-eta shells to n_exact; C: smooth-model
//   shells to n_model (interpolated kernels); D: continuum integral beyond.
struct CmnOptions {
    int n_exact = 96;
    int n_model = 384;
    double k_cut = 100.0;  // continuum cutoff in units of N^{1-kappa}
    int threads = 1;
};

struct CmnResult {
    double value = 0.0;
    double mean_field_group = 0.0;  // (N-1)/2 N^k Vhat(0)
    double shell_groups = 0.0;      // regions A+B+C+D of the single sums
    double pair_group = 0.0;        // double-sum group with tail corrections
    double sigma_group = 0.0;       // -(1/N) sum sigma^2 * N^k (Vhat*eta)_0
    double closed_form = 0.0;       // 4 pi a0 N^k (N-1) + e_L (a0 N^k)^2 + E_Bog
    double deviation = 0.0;         // value - closed_form
};

CmnResult constant_term_cmn(const CoefficientTable& table, const ScatteringSolution& sol,
                            const Potential& pot, const ModelParams& params, double elambda_value,
                            const CmnOptions& opt = {});

}  // namespace bogo

#endif
