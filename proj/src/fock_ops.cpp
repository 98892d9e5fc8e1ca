#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bogo/fock.hpp"

namespace bogo {

namespace {

// generic normal-ordered ladder string applied to a basis state; ops are
// (mode index, creation flag) applied right-to-left; returns amplitude and
// final occupation, or amplitude 0 when annihilating an empty mode.
// Creation beyond the cap is reported through the `capped` flag so callers
// can drop those amplitudes (documented truncation policy).
double apply_ladder(const FockBasis& b, std::vector<std::uint8_t>& occ, int& total,
                    const std::vector<std::pair<std::size_t, bool>>& ops, bool& capped) {
    double amp = 1.0;
    capped = false;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        auto [k, create] = *it;
        if (create) {
            if (total + 1 > b.ncap()) {
                capped = true;
                return 0.0;
            }
            amp *= std::sqrt(static_cast<double>(occ[k]) + 1.0);
            ++occ[k];
            ++total;
        } else {
            if (occ[k] == 0) return 0.0;
            amp *= std::sqrt(static_cast<double>(occ[k]));
            --occ[k];
            --total;
        }
    }
    return amp;
}

}  // namespace

SparseOperator op_a(const FockBasis& b, const Mode& p) {
    std::size_t k = b.mode_index(p);
    SparseOperator out(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const auto& s = b.state(i);
        if (s[k] == 0) continue;
        auto occ = s;
        --occ[k];
        out.add(b.index_of(occ), i, std::sqrt(static_cast<double>(s[k])));
    }
    out.finalize(false);
    return out;
}

SparseOperator op_adag(const FockBasis& b, const Mode& p) { return op_a(b, p).transpose(); }

SparseOperator number_op(const FockBasis& b) {
    SparseOperator out(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i)
        out.add(i, i, static_cast<double>(b.total_occupancy(i)));
    out.finalize(true);
    return out;
}

SparseOperator op_b(const FockBasis& b, const Mode& p) {
    std::size_t k = b.mode_index(p);
    SparseOperator out(b.dim());
    const double N = b.Nparam();
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const auto& s = b.state(i);
        if (s[k] == 0) continue;
        auto occ = s;
        --occ[k];
        // N_+ evaluated after annihilation
        double mult = std::sqrt((N - (b.total_occupancy(i) - 1)) / N);
        out.add(b.index_of(occ), i, std::sqrt(static_cast<double>(s[k])) * mult);
    }
    out.finalize(false);
    return out;
}

SparseOperator op_bdag(const FockBasis& b, const Mode& p) { return op_b(b, p).transpose(); }

CcrDeviation ccr_check(const FockBasis& b, const Mode& p, const Mode& q) {
    auto bp = op_b(b, p), bq = op_b(b, q);
    auto bpd = bp.transpose(), bqd = bq.transpose();
    auto ap = op_a(b, p), aq = op_a(b, q);

    // [b_p, b_q^dag] - delta_pq (1 - N_+/N) + a_q^dag a_p / N
    auto comm = bp.multiply(bqd).plus(bqd.multiply(bp), -1.0);
    SparseOperator rhs(b.dim());
    const double N = b.Nparam();
    if (p == q)
        for (std::size_t i = 0; i < b.dim(); ++i)
            rhs.add(i, i, 1.0 - b.total_occupancy(i) / N);
    rhs.finalize(false);
    auto dev_op = comm.plus(rhs, -1.0).plus(aq.transpose().multiply(ap), 1.0 / N);

    auto headroom_max = [&](const SparseOperator& op) {
        double m = 0.0;
        for (std::size_t k = 0; k < op.values().size(); ++k) {
            if (b.total_occupancy(op.rows()[k]) > b.ncap() - 1) continue;
            if (b.total_occupancy(op.cols()[k]) > b.ncap() - 1) continue;
            m = std::max(m, std::fabs(op.values()[k]));
        }
        return m;
    };

    CcrDeviation d;
    d.mixed = headroom_max(dev_op);
    d.annih_pair = headroom_max(bp.multiply(bq).plus(bq.multiply(bp), -1.0));
    d.creat_pair = headroom_max(bpd.multiply(bqd).plus(bqd.multiply(bpd), -1.0));
    return d;
}

SparseOperator kinetic_op(const FockBasis& b) {
    SparseOperator out(b.dim());
    const auto& modes = b.modes();
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const auto& s = b.state(i);
        double e = 0.0;
        for (std::size_t k = 0; k < modes.size(); ++k) {
            double p2 = 4.0 * M_PI * M_PI *
                        (modes[k][0] * modes[k][0] + modes[k][1] * modes[k][1] +
                         modes[k][2] * modes[k][2]);
            e += p2 * s[k];
        }
        if (e != 0.0) out.add(i, i, e);
    }
    out.finalize(true);
    return out;
}

SparseOperator potential_op(const FockBasis& b, const Potential& pot, const ModelParams& params) {
    const auto& modes = b.modes();
    const std::size_t m = modes.size();
    const double pref = params.n_kappa() / (2.0 * params.N);
    const double scale = 1.0 / params.n_scale();

    // Vhat at all transfer momenta r = modes[kp1] - modes[kp]
    std::vector<std::vector<double>> vtab(m, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double dx = 2.0 * M_PI * (modes[i][0] - modes[j][0]);
            double dy = 2.0 * M_PI * (modes[i][1] - modes[j][1]);
            double dz = 2.0 * M_PI * (modes[i][2] - modes[j][2]);
            vtab[i][j] = pot.fourier(std::sqrt(dx * dx + dy * dy + dz * dz) * scale);
        }

    SparseOperator out(b.dim());
    std::vector<std::uint8_t> occ;
    // a^dag_{p+r} a^dag_q a_p a_{q+r}: loop the annihilated modes (p, q+r) and
    // the transfer via the created mode p+r; q = (q+r) - r must be in the set
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const auto& s = b.state(i);
        for (std::size_t kp = 0; kp < m; ++kp) {          // p
            if (s[kp] == 0) continue;
            for (std::size_t kqr = 0; kqr < m; ++kqr) {   // q + r
                for (std::size_t kp1 = 0; kp1 < m; ++kp1) {  // p + r, fixes r
                    Mode r{modes[kp1][0] - modes[kp][0], modes[kp1][1] - modes[kp][1],
                           modes[kp1][2] - modes[kp][2]};
                    Mode q{modes[kqr][0] - r[0], modes[kqr][1] - r[1], modes[kqr][2] - r[2]};
                    if (q == Mode{0, 0, 0}) continue;  // r = -q excluded
                    Mode negp{-modes[kp][0], -modes[kp][1], -modes[kp][2]};
                    if (r == negp) continue;           // r = -p excluded (p+r = 0)
                    auto qit = std::find(modes.begin(), modes.end(), q);
                    if (qit == modes.end()) continue;
                    std::size_t kq = static_cast<std::size_t>(qit - modes.begin());
                    occ = s;
                    int total = b.total_occupancy(i);
                    bool capped = false;
                    double amp = apply_ladder(b, occ, total,
                                              {{kp1, true}, {kq, true}, {kp, false}, {kqr, false}},
                                              capped);
                    if (amp == 0.0) continue;
                    out.add(b.index_of(occ), i, pref * vtab[kp1][kp] * amp);
                }
            }
        }
    }
    out.finalize(true);
    return out;
}

SparseOperator quadratic_hamiltonian(const FockBasis& b, const std::vector<double>& F,
                                     const std::vector<double>& G) {
    const std::size_t m = b.modes().size();
    if (F.size() != m || G.size() != m)
        throw std::invalid_argument("quadratic_hamiltonian: coefficient size mismatch");
    for (std::size_t k = 0; k < m; ++k) {
        if (std::fabs(G[k]) >= F[k])
            throw std::invalid_argument("quadratic_hamiltonian: |G_p| >= F_p violates stability");
        if (F[k] != F[b.negated_mode(k)] || G[k] != G[b.negated_mode(k)])
            throw std::invalid_argument("quadratic_hamiltonian: coefficients must be even in p");
    }
    SparseOperator out(b.dim());
    std::vector<std::uint8_t> occ;
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const auto& s = b.state(i);
        double diag = 0.0;
        for (std::size_t k = 0; k < m; ++k) diag += F[k] * s[k];
        if (diag != 0.0) out.add(i, i, diag);
        for (std::size_t k = 0; k < m; ++k) {
            std::size_t kneg = b.negated_mode(k);
            // (G/2) a^dag_p a^dag_{-p}
            occ = s;
            int total = b.total_occupancy(i);
            bool capped = false;
            double amp =
                apply_ladder(b, occ, total, {{k, true}, {kneg, true}}, capped);
            if (amp != 0.0) out.add(b.index_of(occ), i, 0.5 * G[k] * amp);
            // (G/2) a_p a_{-p}
            occ = s;
            total = b.total_occupancy(i);
            amp = apply_ladder(b, occ, total, {{k, false}, {kneg, false}}, capped);
            if (amp != 0.0) out.add(b.index_of(occ), i, 0.5 * G[k] * amp);
        }
    }
    out.finalize(true);
    return out;
}

BogoliubovReport bogoliubov_check(const FockBasis& b, const std::vector<double>& F,
                                  const std::vector<double>& G, std::size_t k) {
    auto H = quadratic_hamiltonian(b, F, G);
    BogoliubovReport rep;
    rep.exact = diagonalize(H, k);

    // analytic levels: E0 + sum n_p etilde_p over occupation patterns within the cap
    const std::size_t m = b.modes().size();
    double e0 = 0.0;
    std::vector<double> etil(m);
    for (std::size_t j = 0; j < m; ++j) {
        etil[j] = std::sqrt(F[j] * F[j] - G[j] * G[j]);
        e0 -= 0.5 * (F[j] - etil[j]);
    }
    std::vector<double> levels;
    // enumerate occupation patterns up to the cap (same graded basis)
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const auto& s = b.state(i);
        double nu = e0;
        for (std::size_t j = 0; j < m; ++j) nu += etil[j] * s[j];
        levels.push_back(nu);
    }
    std::sort(levels.begin(), levels.end());
    levels.resize(std::min(levels.size(), k));
    rep.analytic = levels;
    for (std::size_t i = 0; i < std::min(rep.exact.size(), rep.analytic.size()); ++i)
        rep.gaps.push_back(std::fabs(rep.exact[i] - rep.analytic[i]));
    return rep;
}

double vn_kn_constant(const FockBasis& b, const Potential& pot, const ModelParams& params) {
    auto vn = potential_op(b, pot, params);
    auto kin = kinetic_op(b);
    auto np = number_op(b);
    // D = K N_+ is diagonal and positive on the positive-occupancy sector;
    // C = lambda_max(D^{-1/2} V_N D^{-1/2}) there
    std::vector<double> d(b.dim(), 0.0);
    for (std::size_t k = 0; k < kin.values().size(); ++k)
        d[kin.rows()[k]] = kin.values()[k];
    std::vector<double> nk(b.dim(), 0.0);
    for (std::size_t k = 0; k < np.values().size(); ++k) nk[np.rows()[k]] = np.values()[k];

    SparseOperator scaled(b.dim());
    for (std::size_t k = 0; k < vn.values().size(); ++k) {
        std::size_t i = vn.rows()[k], j = vn.cols()[k];
        if (b.total_occupancy(i) == 0 || b.total_occupancy(j) == 0) continue;
        double di = d[i] * nk[i], dj = d[j] * nk[j];
        if (!(di > 0.0) || !(dj > 0.0))
            throw std::runtime_error("vn_kn_constant: K N_+ not positive on tested sector");
        scaled.add(i, j, vn.values()[k] / std::sqrt(di * dj));
    }
    scaled.finalize(true);
    if (scaled.nnz() == 0) return 0.0;
    // largest eigenvalue = -(smallest of negated operator)
    SparseOperator neg(b.dim());
    for (std::size_t k = 0; k < scaled.values().size(); ++k)
        neg.add(scaled.rows()[k], scaled.cols()[k], -scaled.values()[k]);
    neg.finalize(true);
    double lam = diagonalize(neg, 1).front();
    return -lam;
}

std::vector<double> theta_state(const FockBasis& b, const std::map<Mode, int>& occupations) {
    std::vector<std::uint8_t> occ(b.modes().size(), 0);
    int total = 0;
    for (const auto& [mode, n] : occupations) {
        if (n < 0) throw std::invalid_argument("theta_state: negative occupation");
        occ[b.mode_index(mode)] = static_cast<std::uint8_t>(n);
        total += n;
    }
    if (total > b.ncap()) throw std::invalid_argument("theta_state: occupation exceeds cap");
    std::vector<double> v(b.dim(), 0.0);
    v[b.index_of(occ)] = 1.0;
    return v;
}

double vn_expectation(const SparseOperator& vn, const std::vector<double>& state) {
    return vn.quad_form(state);
}

}  // namespace bogo
