#ifndef BOGO_SCATTERING_HPP
#define BOGO_SCATTERING_HPP

#include <vector>

#include "bogo/model_params.hpp"
#include "bogo/potential.hpp"

namespace bogo {

struct GridSpec {
    int n_inner = 4096;       // uniform nodes on [0, R], resolves the potential
    int n_outer = 4096;       // geometric cells on [R, Rb]
    double r_far_factor = 2.0;  // zero-energy match window [R, r_far_factor * R]

    GridSpec refined(double factor) const {
        GridSpec g = *this;
        g.n_inner = static_cast<int>(n_inner * factor);
        g.n_outer = static_cast<int>(n_outer * factor);
        g.n_inner += g.n_inner % 2;
        g.n_outer += g.n_outer % 2;
        return g;
    }
};

// zero-energy scattering length: exterior solution matches 1 - a0/r
double scattering_length(const Potential& pot, const GridSpec& grid = {});

// Ground state of the Neumann problem [-Lap + V/2] f = lambda f on the ball
// of radius Rb = ell N^{1-kappa}, normalized f(Rb) = 1. The radial reduction
// u = r f is integrated on the inner grid; outside the support u is the exact
// trigonometric solution, so f is available anywhere in [R, Rb].
class ScatteringSolution {
  public:
    double Rb = 0.0;
    double lambda = 0.0;
    double a0 = 0.0;
    double N = 0.0;
    double kappa = 0.0;
    double ell = 0.0;
    GridSpec grid;

    std::vector<double> r_inner;  // uniform nodes on [0, R]
    std::vector<double> f_inner;

    // outer closed-form state: u(r) = uR cos(s(r-R)) + duR (r-R) sinc(s(r-R)), f = A u / r
    double support_R = 0.0;
    double uR = 1.0, duR = 1.0, scaleA = 1.0;

    std::vector<double> r_outer;  // geometric nodes on [R, Rb]

    double f_outer_at(double r) const;
    double f_at(double r) const;  // any r in [0, Rb]
    bool trivial() const { return lambda == 0.0 && a0 == 0.0; }
};

ScatteringSolution solve_neumann(const Potential& pot, const ModelParams& params,
                                 const GridSpec& grid = {});

// 4 pi int_0^R V f r^2 dr  (equals (Vhat(./N^{1-k}) * fhat_N)_0)
double integral_Vf(const ScatteringSolution& sol, const Potential& pot);

// 4 pi int_0^Rb (1 - f) r^2 dr
double integral_w(const ScatteringSolution& sol);

// Precomputed radial quadrature weights shared by all momentum transforms.
// Every integral is a fixed-order weighted sum, so results are deterministic
// and identical across thread counts.
class RadialKernels {
  public:
    RadialKernels(const ScatteringSolution& sol, const Potential& pot);

    // eta_p = -N * what_N(p), spherically symmetric in p
    double eta(double pnorm) const;
    // (Vhat(./N^{1-k}) * fhat_N)_p as a single radial integral
    double conv_Vf(double pnorm) const;
    // (chihat_ell * fhat_N)_p = chihat_ell(p) + eta_p / N
    double conv_chi_f(double pnorm) const;
    double eta0() const { return eta(0.0); }

    double N() const { return N_; }
    double n_scale() const { return n_scale_; }

  private:
    double N_, kappa_, ell_, n_scale_, eta_pref_;
    std::vector<double> nodes_;       // all quadrature nodes (inner + outer incl. midpoints)
    std::vector<double> w_weights_;   // weight * w(r) * r^2
    std::vector<double> vf_weights_;  // weight * V(r) f(r) r^2, inner nodes only
    std::size_t n_inner_nodes_ = 0;
};

// Fourier transform of the ball indicator chi_{|x|<=ell}
double chi_hat(double ell, double pnorm);

// |LHS - RHS| of the lattice scattering identity at momentum p:
//   p^2 eta_p + (N^k/2) (Vhat * fhat_N)_p  =  N^{3-2k} lambda chihat(p) + N^{2-2k} lambda eta_p
double scattering_residual(const RadialKernels& k, const ScatteringSolution& sol, double pnorm);

}  // namespace bogo

#endif
