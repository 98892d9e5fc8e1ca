#ifndef BOGO_LATTICE_HPP
#define BOGO_LATTICE_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace bogo {

// Momenta p = 2 pi n, n in Z^3 \ {0}, |p| <= pmax, grouped into shells of
// equal |n|^2. Point order is deterministic: ascending |n|^2, then
// lexicographic (nx, ny, nz).
struct MomentumLattice {
    struct Shell {
        std::int64_t n2 = 0;       // integer |n|^2
        double pnorm = 0.0;        // 2 pi sqrt(n2)
        int multiplicity = 0;
        std::size_t first_point = 0;  // index into points
    };

    double pmax = 0.0;
    std::vector<Shell> shells;
    std::vector<std::array<int, 3>> points;
    std::vector<std::uint32_t> shell_of_point;

    static MomentumLattice build(double pmax, std::size_t point_limit = 4000000);

    std::size_t size() const { return points.size(); }
};

// multiplicity histogram of |n|^2 for nlo < |n| <= nhi (annulus), index = n2
std::vector<std::int64_t> shell_histogram(int nlo, int nhi);

// same with exact integer |n|^2 bounds: lo2 < |n|^2 <= hi2
std::vector<std::int64_t> shell_histogram_range(std::int64_t lo2, std::int64_t hi2);

}  // namespace bogo

#endif
