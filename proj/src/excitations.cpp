#include "bogo/excitations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "bogo/lattice.hpp"

namespace bogo {

namespace {

struct Node {
    double nu;
    std::vector<std::uint16_t> occ;  // parallel to the point list
    std::size_t last;                // highest point index with a quantum (or npos)

    bool operator>(const Node& o) const {
        if (nu != o.nu) return nu > o.nu;
        return occ > o.occ;  // deterministic tie-break: lexicographic occupations
    }
};

}  // namespace

ExcitationList enumerate_excitations_threshold(double a0, double N, double kappa, double threshold,
                                               std::size_t max_count) {
    if (threshold < 0.0) throw std::invalid_argument("enumerate_excitations: negative threshold");
    ExcitationList out;
    out.threshold = threshold;

    const double b = 16.0 * M_PI * a0 * std::pow(N, kappa);
    // eps_p <= T  <=>  p^2 <= (-b + sqrt(b^2 + 4 T^2)) / 2
    double p2max = 0.5 * (-b + std::sqrt(b * b + 4.0 * threshold * threshold));
    std::vector<std::array<int, 3>> points;
    std::vector<double> eps;
    if (p2max >= 4.0 * M_PI * M_PI) {
        auto lat = MomentumLattice::build(std::sqrt(p2max) * (1.0 + 1e-12));
        for (std::size_t ip = 0; ip < lat.points.size(); ++ip) {
            double p2 = lat.shells[lat.shell_of_point[ip]].pnorm;
            p2 *= p2;
            double e = std::sqrt(p2 * p2 + b * p2);
            if (e <= threshold) {
                points.push_back(lat.points[ip]);
                eps.push_back(e);
            }
        }
    }

    const std::size_t npos = static_cast<std::size_t>(-1);
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap;
    heap.push({0.0, std::vector<std::uint16_t>(points.size(), 0), npos});

    while (!heap.empty()) {
        Node cur = heap.top();
        heap.pop();
        if (cur.nu > threshold) break;
        if (out.levels.size() >= max_count) {
            out.truncated = true;
            break;
        }
        ExcitationLevel lvl;
        lvl.nu = cur.nu;
        std::map<std::int64_t, int> by_shell;
        for (std::size_t i = 0; i < cur.occ.size(); ++i)
            if (cur.occ[i]) {
                lvl.occupations.emplace_back(points[i], cur.occ[i]);
                const auto& n = points[i];
                by_shell[static_cast<std::int64_t>(n[0]) * n[0] + n[1] * n[1] + n[2] * n[2]] +=
                    cur.occ[i];
            }
        std::ostringstream note;
        for (auto it = by_shell.begin(); it != by_shell.end(); ++it) {
            if (it != by_shell.begin()) note << ";";
            note << "n2=" << it->first << ":" << it->second;
        }
        lvl.degeneracy_note = note.str();
        out.levels.push_back(std::move(lvl));

        // children: add one quantum at index >= last used (unique generation)
        std::size_t start = cur.last == npos ? 0 : cur.last;
        for (std::size_t i = start; i < points.size(); ++i) {
            double nu = cur.nu + eps[i];
            if (nu > threshold) continue;
            Node child = cur;
            child.nu = nu;
            ++child.occ[i];
            child.last = i;
            heap.push(std::move(child));
        }
    }
    return out;
}

ExcitationList enumerate_excitations(double a0, double N, double kappa, double mu,
                                     std::size_t max_count) {
    double threshold = std::pow(N, kappa / 2.0 + mu);
    return enumerate_excitations_threshold(a0, N, kappa, threshold, max_count);
}

std::string excitations_csv(const ExcitationList& list) {
    std::ostringstream os;
    os << "index,nu,occupations\n";
    char buf[64];
    for (std::size_t i = 0; i < list.levels.size(); ++i) {
        const auto& l = list.levels[i];
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,", i, l.nu);
        os << buf << '"';
        for (std::size_t j = 0; j < l.occupations.size(); ++j) {
            const auto& [n, c] = l.occupations[j];
            if (j) os << ";";
            os << n[0] << "," << n[1] << "," << n[2] << ":" << c;
        }
        os << "\"\n";
    }
    return os.str();
}

}  // namespace bogo
