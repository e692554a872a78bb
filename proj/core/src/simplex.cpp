#include "fpt/simplex.hpp"

#include <optional>

#include "fpt/errors.hpp"

namespace fpt::lp {

namespace {

// Tableau with one artificial column per row appended after the original
// columns. The artificial block starts as the identity, so in any later basis
// it holds B^{-1}, which is what the dual extraction reads.
class Tableau {
public:
  explicit Tableau(const Problem& p)
      : rows_(p.A.size()), cols_(p.c.size()), tab_(p.A.size()), basis_(p.A.size()) {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (p.A[r].size() != cols_) throw InternalError("lp: ragged constraint matrix");
      if (p.b[r] < Rational(0)) throw InternalError("lp: negative right-hand side");
      tab_[r].assign(cols_ + rows_ + 1, Rational(0));
      for (std::size_t j = 0; j < cols_; ++j) tab_[r][j] = p.A[r][j];
      tab_[r][cols_ + r] = Rational(1);
      tab_[r].back() = p.b[r];
      basis_[r] = cols_ + r;
    }
  }

  // Minimizes the cost vector over the current feasible basis. Artificial
  // columns may enter only while `allow_artificial` (phase one).
  void optimize(const std::vector<Rational>& cost, bool allow_artificial) {
    for (;;) {
      const std::size_t limit = allow_artificial ? cols_ + rows_ : cols_;
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < limit; ++j) {
        if (is_basic(j)) continue;
        if (reduced_cost(cost, j) < Rational(0)) {
          entering = j;  // Bland: lowest index
          break;
        }
      }
      if (!entering) return;

      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (tab_[r][*entering] <= Rational(0)) continue;
        const Rational ratio = tab_[r].back() / tab_[r][*entering];
        if (!leaving || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (!leaving) throw InternalError("lp: unbounded program");
      pivot(*leaving, *entering);
    }
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational v(0);
    for (std::size_t r = 0; r < rows_; ++r) v += cost[basis_[r]] * tab_[r].back();
    return v;
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(cols_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) x[basis_[r]] = tab_[r].back();
    }
    return x;
  }

  // y = c_B B^{-1}, read off the artificial block.
  std::vector<Rational> duals(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t r = 0; r < rows_; ++r) {
        y[i] += cost[basis_[r]] * tab_[r][cols_ + i];
      }
    }
    return y;
  }

  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return rows_; }

private:
  bool is_basic(std::size_t j) const {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] == j) return true;
    }
    return false;
  }

  Rational reduced_cost(const std::vector<Rational>& cost, std::size_t j) const {
    Rational z = cost[j];
    for (std::size_t r = 0; r < rows_; ++r) z -= cost[basis_[r]] * tab_[r][j];
    return z;
  }

  void pivot(std::size_t r, std::size_t j) {
    const Rational inv = Rational(1) / tab_[r][j];
    for (auto& v : tab_[r]) v *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const Rational f = tab_[i][j];
      if (f == Rational(0)) continue;
      for (std::size_t k = 0; k < tab_[i].size(); ++k) tab_[i][k] -= f * tab_[r][k];
    }
    basis_[r] = j;
  }

  std::size_t rows_, cols_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const Problem& problem) {
  Tableau tab(problem);
  const std::size_t n = tab.cols(), m = tab.rows();

  std::vector<Rational> phase1(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = Rational(1);
  tab.optimize(phase1, true);

  Solution sol;
  if (tab.objective(phase1) != Rational(0)) {
    sol.feasible = false;
    return sol;
  }

  std::vector<Rational> phase2(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = problem.c[j];
  tab.optimize(phase2, false);

  sol.feasible = true;
  sol.objective = tab.objective(phase2);
  sol.x = tab.primal();
  sol.y = tab.duals(phase2);
  return sol;
}

}  // namespace fpt::lp
