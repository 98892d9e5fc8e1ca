#include "bogo/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bogo/numeric.hpp"

namespace bogo {

Potential Potential::soft_sphere(double V0, double R) {
    Potential p;
    p.kind_ = Kind::soft_sphere;
    p.V0_ = V0;
    p.R_ = R;
    p.validate();
    return p;
}

Potential Potential::tabulated(std::vector<std::pair<double, double>> samples) {
    Potential p;
    p.kind_ = Kind::tabulated;
    p.samples_ = std::move(samples);
    std::sort(p.samples_.begin(), p.samples_.end());
    if (p.samples_.empty()) throw std::invalid_argument("tabulated potential needs samples");
    p.R_ = p.samples_.back().first;
    p.V0_ = 0.0;
    for (const auto& s : p.samples_) p.V0_ = std::max(p.V0_, s.second);
    p.validate();
    return p;
}

void Potential::validate() const {
    if (!(R_ > 0.0)) throw std::invalid_argument("potential support radius must be positive");
    if (V0_ < 0.0) throw std::invalid_argument("potential amplitude must be nonnegative");
    for (const auto& s : samples_) {
        if (s.first < 0.0) throw std::invalid_argument("tabulated radius must be nonnegative");
        if (s.second < 0.0) throw std::invalid_argument("potential must be pointwise nonnegative");
    }
}

bool Potential::is_zero() const { return V0_ == 0.0; }

double Potential::value(double r) const {
    if (r < 0.0) throw std::invalid_argument("radius must be nonnegative");
    if (kind_ == Kind::soft_sphere) return r <= R_ ? V0_ : 0.0;
    if (r > R_) return 0.0;
    auto it = std::lower_bound(samples_.begin(), samples_.end(), std::make_pair(r, -1.0));
    if (it == samples_.begin()) return it->second;
    if (it == samples_.end()) return samples_.back().second;
    auto prev = std::prev(it);
    double t = (r - prev->first) / (it->first - prev->first);
    return prev->second + t * (it->second - prev->second);
}

double Potential::fourier(double k) const {
    if (kind_ == Kind::soft_sphere) {
        double kR = k * R_;
        if (std::fabs(kR) < 1e-4) {
            // 4 pi V0 R^3/3 * (1 - (kR)^2/10 + (kR)^4/280)
            double x2 = kR * kR;
            return 4.0 * M_PI * V0_ * R_ * R_ * R_ / 3.0 * (1.0 - x2 / 10.0 + x2 * x2 / 280.0);
        }
        return 4.0 * M_PI * V0_ * (std::sin(kR) - kR * std::cos(kR)) / (k * k * k);
    }
    // composite Simpson per tabulated panel (integrand piecewise smooth)
    KahanSum total;
    for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
        double a = samples_[i].first, b = samples_[i + 1].first;
        if (b <= a) continue;
        int nsub = std::max(8, static_cast<int>(std::ceil(k * (b - a) * 4.0)));
        nsub += nsub % 2;
        double h = (b - a) / nsub;
        KahanSum panel;
        for (int j = 0; j <= nsub; ++j) {
            double r = a + j * h;
            double w = (j == 0 || j == nsub) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            panel.add(w * value(r) * sinc(k * r) * r * r);
        }
        total.add(panel.value() * h / 3.0);
    }
    return 4.0 * M_PI * total.value();
}

std::string Potential::kind_name() const {
    return kind_ == Kind::soft_sphere ? "soft_sphere" : "tabulated";
}

}  // namespace bogo
