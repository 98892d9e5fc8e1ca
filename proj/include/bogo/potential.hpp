#ifndef BOGO_POTENTIAL_HPP
#define BOGO_POTENTIAL_HPP

#include <string>
#include <utility>
#include <vector>

namespace bogo {

// Radial, compactly supported, pointwise nonnegative interaction profile.
// Soft spheres are analytic; tabulated profiles interpolate linearly between
// samples and are exactly zero beyond the last sample.
class Potential {
  public:
    enum class Kind { soft_sphere, tabulated };

    static Potential soft_sphere(double V0, double R);
    static Potential tabulated(std::vector<std::pair<double, double>> samples);

    Kind kind() const { return kind_; }
    double V0() const { return V0_; }
    double support_radius() const { return R_; }
    bool is_zero() const;
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

    // pointwise value; at r == support_radius() returns the inside limit
    double value(double r) const;

    // 3d Fourier transform 4*pi * int_0^R V(r) sinc(k r) r^2 dr
    // closed form for soft spheres, radial quadrature for tabulated profiles
    double fourier(double k) const;
    double fourier_zero() const { return fourier(0.0); }

    std::string kind_name() const;

  private:
    Kind kind_ = Kind::soft_sphere;
    double V0_ = 0.0;
    double R_ = 1.0;
    std::vector<std::pair<double, double>> samples_;

    void validate() const;
};

}  // namespace bogo

#endif
