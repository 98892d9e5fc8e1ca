#ifndef BOGO_EXCITATIONS_HPP
#define BOGO_EXCITATIONS_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace bogo {

// One eigenvalue of the diagonal excitation operator: nu = sum n_p eps_p with
// eps_p = sqrt(p^4 + 16 pi a0 N^k p^2), finitely many nonzero occupations.
struct ExcitationLevel {
    double nu = 0.0;
    std::vector<std::pair<std::array<int, 3>, int>> occupations;  // (n-vector, count), nonzero only
    std::string degeneracy_note;  // occupations grouped by shell |n|^2
};

struct ExcitationList {
    std::vector<ExcitationLevel> levels;  // ascending nu, ties in occupation order
    double threshold = 0.0;
    bool truncated = false;  // level count hit max_count
};

// All levels with nu <= N^{kappa/2 + mu} (inclusive), vacuum included,
// best-first search over occupation multisets with deterministic tie-breaks.
ExcitationList enumerate_excitations(double a0, double N, double kappa, double mu,
                                     std::size_t max_count);

// same search against an explicit threshold (used by tests and tools)
ExcitationList enumerate_excitations_threshold(double a0, double N, double kappa, double threshold,
                                               std::size_t max_count);

std::string excitations_csv(const ExcitationList& list);

}  // namespace bogo

#endif
