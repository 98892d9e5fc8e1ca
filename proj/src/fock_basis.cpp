#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bogo/fock.hpp"

namespace bogo {

namespace {

// weak compositions of k into m parts, leftmost-first descending order:
// (k,0,..), (k-1,1,0,..), ..., (0,..,0,k)
void enumerate_compositions(int k, int m, std::vector<std::uint8_t>& cur,
                            std::vector<std::vector<std::uint8_t>>& out) {
    if (m == 1) {
        cur.push_back(static_cast<std::uint8_t>(k));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int first = k; first >= 0; --first) {
        cur.push_back(static_cast<std::uint8_t>(first));
        enumerate_compositions(k - first, m - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

FockBasis::FockBasis(std::vector<Mode> modes, int ncap, double Nparam, std::size_t dim_limit)
    : modes_(std::move(modes)), ncap_(ncap), Nparam_(Nparam) {
    if (modes_.empty()) throw std::invalid_argument("FockBasis: empty mode set");
    if (ncap_ < 0 || ncap_ > 255) throw std::invalid_argument("FockBasis: bad occupancy cap");
    if (static_cast<double>(ncap_) > Nparam_)
        throw std::invalid_argument("FockBasis: ncap must not exceed Nparam");
    std::sort(modes_.begin(), modes_.end(), [](const Mode& a, const Mode& b) {
        auto n2 = [](const Mode& m) { return m[0] * m[0] + m[1] * m[1] + m[2] * m[2]; };
        if (n2(a) != n2(b)) return n2(a) < n2(b);
        return a < b;
    });
    if (std::adjacent_find(modes_.begin(), modes_.end()) != modes_.end())
        throw std::invalid_argument("FockBasis: duplicate modes");
    neg_.resize(modes_.size());
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const Mode& m = modes_[i];
        if (m == Mode{0, 0, 0}) throw std::invalid_argument("FockBasis: zero mode not allowed");
        Mode neg{-m[0], -m[1], -m[2]};
        auto it = std::find(modes_.begin(), modes_.end(), neg);
        if (it == modes_.end())
            throw std::invalid_argument("FockBasis: mode set not closed under negation");
        neg_[i] = static_cast<std::size_t>(it - modes_.begin());
    }

    // dimension check before enumerating: sum_k C(k + m - 1, m - 1)
    double dim_est = 0.0, binom = 1.0;
    const auto m = static_cast<int>(modes_.size());
    for (int k = 0; k <= ncap_; ++k) {
        dim_est += binom;  // C(k+m-1, m-1) built incrementally
        binom = binom * (k + m) / (k + 1);
        if (dim_est > static_cast<double>(dim_limit))
            throw std::runtime_error("FockBasis: dimension exceeds configured cap");
    }

    std::vector<std::uint8_t> cur;
    for (int k = 0; k <= ncap_; ++k) {
        std::vector<std::vector<std::uint8_t>> block;
        enumerate_compositions(k, m, cur, block);
        for (auto& s : block) {
            totals_.push_back(k);
            index_[s] = states_.size();
            states_.push_back(std::move(s));
        }
    }
    if (states_.size() > dim_limit)
        throw std::runtime_error("FockBasis: dimension exceeds configured cap");
}

std::size_t FockBasis::index_of(const std::vector<std::uint8_t>& occ) const {
    auto it = index_.find(occ);
    if (it == index_.end()) throw std::out_of_range("FockBasis: state not in basis");
    return it->second;
}

std::size_t FockBasis::mode_index(const Mode& m) const {
    auto it = std::find(modes_.begin(), modes_.end(), m);
    if (it == modes_.end()) throw std::out_of_range("FockBasis: mode not in basis");
    return static_cast<std::size_t>(it - modes_.begin());
}

std::vector<Mode> FockBasis::shell_modes(int shell_count) {
    if (shell_count < 1) throw std::invalid_argument("shell_modes: need at least one shell");
    std::vector<Mode> out;
    int found = 0;
    for (int n2 = 1; found < shell_count && n2 <= 64; ++n2) {
        std::vector<Mode> shell;
        int r = static_cast<int>(std::sqrt(static_cast<double>(n2))) + 1;
        for (int x = -r; x <= r; ++x)
            for (int y = -r; y <= r; ++y)
                for (int z = -r; z <= r; ++z)
                    if (x * x + y * y + z * z == n2) shell.push_back({x, y, z});
        if (!shell.empty()) {
            ++found;
            out.insert(out.end(), shell.begin(), shell.end());
        }
    }
    if (found < shell_count) throw std::runtime_error("shell_modes: shell scan exhausted");
    return out;
}

}  // namespace bogo
