#include "bogo/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bogo {

MomentumLattice MomentumLattice::build(double pmax, std::size_t point_limit) {
    if (pmax < 2.0 * M_PI) throw std::invalid_argument("build_lattice: pmax below first shell");
    MomentumLattice lat;
    lat.pmax = pmax;
    const double r = pmax / (2.0 * M_PI);
    const auto nmax = static_cast<int>(std::floor(r));
    const auto r2max = static_cast<std::int64_t>(std::floor(r * r + 1e-9));

    std::size_t est = static_cast<std::size_t>(4.19 * r * r * r) + 64;
    if (est > point_limit)
        throw std::runtime_error("build_lattice: point count exceeds configured limit");

    std::map<std::int64_t, std::vector<std::array<int, 3>>> by_shell;
    for (int x = -nmax; x <= nmax; ++x)
        for (int y = -nmax; y <= nmax; ++y)
            for (int z = -nmax; z <= nmax; ++z) {
                std::int64_t n2 = static_cast<std::int64_t>(x) * x +
                                  static_cast<std::int64_t>(y) * y +
                                  static_cast<std::int64_t>(z) * z;
                if (n2 == 0 || n2 > r2max) continue;
                by_shell[n2].push_back({x, y, z});
            }
    if (by_shell.empty()) throw std::invalid_argument("build_lattice: empty lattice");

    for (auto& [n2, pts] : by_shell) {
        std::sort(pts.begin(), pts.end());
        Shell s;
        s.n2 = n2;
        s.pnorm = 2.0 * M_PI * std::sqrt(static_cast<double>(n2));
        s.multiplicity = static_cast<int>(pts.size());
        s.first_point = lat.points.size();
        std::uint32_t idx = static_cast<std::uint32_t>(lat.shells.size());
        for (const auto& p : pts) {
            lat.points.push_back(p);
            lat.shell_of_point.push_back(idx);
        }
        lat.shells.push_back(s);
    }
    if (lat.points.size() > point_limit)
        throw std::runtime_error("build_lattice: point count exceeds configured limit");
    return lat;
}

std::vector<std::int64_t> shell_histogram(int nlo, int nhi) {
    return shell_histogram_range(static_cast<std::int64_t>(nlo) * nlo,
                                 static_cast<std::int64_t>(nhi) * nhi);
}

std::vector<std::int64_t> shell_histogram_range(std::int64_t lo2, std::int64_t hi2) {
    const int nhi = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(hi2))));
    std::vector<std::int64_t> hist(static_cast<std::size_t>(hi2) + 1, 0);
    for (int x = -nhi; x <= nhi; ++x)
        for (int y = -nhi; y <= nhi; ++y)
            for (int z = -nhi; z <= nhi; ++z) {
                std::int64_t n2 = static_cast<std::int64_t>(x) * x +
                                  static_cast<std::int64_t>(y) * y +
                                  static_cast<std::int64_t>(z) * z;
                if (n2 > lo2 && n2 <= hi2) ++hist[static_cast<std::size_t>(n2)];
            }
    return hist;
}

}  // namespace bogo
