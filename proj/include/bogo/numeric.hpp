#ifndef BOGO_NUMERIC_HPP
#define BOGO_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bogo {

// sin(x)/x with series fallback near zero to avoid cancellation
inline double sinc(double x) {
    double a = std::fabs(x);
    if (a < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// compensated accumulator; fixed summation order makes results
// independent of thread count when partials are reduced sequentially
class KahanSum {
  public:
    void add(double v) {
        double y = v - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline double kahan_total(const std::vector<double>& v) {
    KahanSum k;
    for (double x : v) k.add(x);
    return k.value();
}

// least-squares slope of log(y) vs log(x)
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need >= 2 matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] <= 0.0)
            throw std::invalid_argument("loglog_slope: nonpositive sample");
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// adaptive Simpson with absolute tolerance
namespace detail {
template <typename F>
double adapt_simpson(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol, int max_depth = 40) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adapt_simpson(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace bogo

#endif
