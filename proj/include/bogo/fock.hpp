#ifndef BOGO_FOCK_HPP
#define BOGO_FOCK_HPP

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "bogo/model_params.hpp"
#include "bogo/potential.hpp"

namespace bogo {

using Mode = std::array<int, 3>;  // momentum p = 2 pi n, n != 0

// Occupation-number basis over a finite, negation-closed mode set with a cap
// on the total occupancy. States are graded by total, then enumerated with
// the leftmost mode filled first; the vacuum has index 0.
class FockBasis {
  public:
    FockBasis(std::vector<Mode> modes, int ncap, double Nparam,
              std::size_t dim_limit = 200000);

    const std::vector<Mode>& modes() const { return modes_; }
    int ncap() const { return ncap_; }
    double Nparam() const { return Nparam_; }
    std::size_t dim() const { return states_.size(); }

    const std::vector<std::uint8_t>& state(std::size_t i) const { return states_[i]; }
    int total_occupancy(std::size_t i) const { return totals_[i]; }
    std::size_t index_of(const std::vector<std::uint8_t>& occ) const;  // throws if absent
    std::size_t mode_index(const Mode& m) const;
    std::size_t negated_mode(std::size_t k) const { return neg_[k]; }

    // full-shell helper: all n with |n|^2 in the first `shell_count` occupied shells
    static std::vector<Mode> shell_modes(int shell_count);

  private:
    std::vector<Mode> modes_;
    int ncap_;
    double Nparam_;
    std::vector<std::vector<std::uint8_t>> states_;
    std::vector<int> totals_;
    std::map<std::vector<std::uint8_t>, std::size_t> index_;
    std::vector<std::size_t> neg_;
};

// Real symmetric-or-general sparse operator in coordinate form; entries are
// kept sorted by (row, col) and deduplicated, so equal operators compare equal.
class SparseOperator {
  public:
    SparseOperator() = default;
    explicit SparseOperator(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    bool symmetric_flag() const { return symmetric_; }

    void add(std::size_t row, std::size_t col, double value);
    void finalize(bool enforce_symmetry);  // sort, dedup; optionally mirror upper to lower

    const std::vector<std::size_t>& rows() const { return rows_; }
    const std::vector<std::size_t>& cols() const { return cols_; }
    const std::vector<double>& values() const { return vals_; }
    std::size_t nnz() const { return vals_.size(); }

    std::vector<double> apply(const std::vector<double>& x) const;
    double quad_form(const std::vector<double>& x) const;  // <x, A x>
    SparseOperator transpose() const;
    SparseOperator multiply(const SparseOperator& other) const;  // this * other
    SparseOperator plus(const SparseOperator& other, double scale = 1.0) const;
    double max_abs_entry() const;
    double max_abs_difference(const SparseOperator& other) const;
    bool equal_entries(const SparseOperator& other, double tol) const;

  private:
    std::size_t dim_ = 0;
    bool symmetric_ = false;
    bool finalized_ = false;
    std::vector<std::size_t> rows_, cols_;
    std::vector<double> vals_;
};

// ladder operators; creation amplitudes that would exceed the cap are dropped
SparseOperator op_a(const FockBasis& b, const Mode& p);
SparseOperator op_adag(const FockBasis& b, const Mode& p);
SparseOperator number_op(const FockBasis& b);
// b_p = sqrt((N - N_+)/N) a_p with N_+ evaluated after annihilation
SparseOperator op_b(const FockBasis& b, const Mode& p);
SparseOperator op_bdag(const FockBasis& b, const Mode& p);

// max matrix-element deviation of [b_p, b_q^dag] - (delta_pq (1 - N_+/N) - a_q^dag a_p / N)
// between states with headroom (total <= ncap - 1), plus the [b,b] and
// [b^dag, b^dag] deviations on the same subspace
struct CcrDeviation {
    double mixed = 0.0;       // [b_p, b_q^dag] identity
    double annih_pair = 0.0;  // [b_p, b_q]
    double creat_pair = 0.0;  // [b_p^dag, b_q^dag]
};
CcrDeviation ccr_check(const FockBasis& b, const Mode& p, const Mode& q);

SparseOperator kinetic_op(const FockBasis& b);
// V_N = (N^k / 2N) sum V(r/N^{1-k}) a^dag_{p+r} a^dag_q a_p a_{q+r}, with all
// four indices restricted to the mode set (the compression of the full
// operator onto the modes' Fock space)
SparseOperator potential_op(const FockBasis& b, const Potential& pot, const ModelParams& params);

// H = sum_p [ F_p a^dag_p a_p + (G_p/2)(a^dag_p a^dag_{-p} + a_p a_{-p}) ]
SparseOperator quadratic_hamiltonian(const FockBasis& b, const std::vector<double>& F,
                                     const std::vector<double>& G);

// k lowest eigenvalues, ascending; dense solver below dense_limit, Lanczos
// with full reorthogonalization above (fixed all-ones start vector)
std::vector<double> diagonalize(const SparseOperator& op, std::size_t k,
                                std::size_t dense_limit = 3000);

struct BogoliubovReport {
    std::vector<double> exact;     // from truncated diagonalization
    std::vector<double> analytic;  // -(1/2) sum (F - sqrt(F^2-G^2)) + sum n_p sqrt(F^2-G^2)
    std::vector<double> gaps;      // |exact - analytic|
};
BogoliubovReport bogoliubov_check(const FockBasis& b, const std::vector<double>& F,
                                  const std::vector<double>& G, std::size_t k);

// smallest C with C * K * N_+ - V_N >= 0 on the positive-occupancy sector
double vn_kn_constant(const FockBasis& b, const Potential& pot, const ModelParams& params);

// normalized product of creation operators on the vacuum = unit coordinate vector
std::vector<double> theta_state(const FockBasis& b, const std::map<Mode, int>& occupations);
double vn_expectation(const SparseOperator& vn, const std::vector<double>& state);

}  // namespace bogo

#endif
