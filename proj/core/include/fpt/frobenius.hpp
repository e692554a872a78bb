#ifndef FPT_FROBENIUS_HPP
#define FPT_FROBENIUS_HPP

#include <optional>
#include <vector>

#include "fpt/poly.hpp"
#include "fpt/rational.hpp"

namespace fpt {

/// Size caps for the level search. Exceeding a cap raises ResourceLimitError;
/// budgets never change a returned answer.
struct NuBudget {
  std::size_t max_terms = std::size_t(1) << 22;   // terms in any reduced polynomial
  std::uint64_t max_visits = std::uint64_t(1) << 26;  // nodes visited by the tuple search
};

/// An ideal a = (g_1, ..., g_m) in F_p[X_1..X_d], optionally paired with a
/// hypersurface multiplier f. With a multiplier the level data describes the
/// pair (R/(f), a·R/(f)); the colon ideal (f^q):(f) is (f^{q-1}), so every
/// level test multiplies by f^{q-1}.
///
/// Validation: at least one generator; generators and multiplier are nonzero
/// with zero constant term; everything lives in one ring.
class IdealPair {
public:
  explicit IdealPair(std::vector<SparsePoly> gens,
                     std::optional<SparsePoly> multiplier = std::nullopt);

  const std::shared_ptr<const Ring>& ring() const noexcept { return gens_[0].ring(); }
  const std::vector<SparsePoly>& gens() const noexcept { return gens_; }
  const std::optional<SparsePoly>& multiplier() const noexcept { return multiplier_; }
  std::size_t mu() const noexcept { return gens_.size(); }

  /// Compact human-readable form "(g1; g2 | mult)" used in messages and ids.
  std::string describe() const;

private:
  std::vector<SparsePoly> gens_;
  std::optional<SparsePoly> multiplier_;
};

/// Level datum. `nu` is empty exactly when the multiplier power f^{q-1} lies
/// in the bracket ideal (the pair is not F-pure at this level). `witness`
/// holds a generator-exponent tuple (l_1, ..., l_m) with sum nu whose product
/// survives; it is empty when nu is 0 or absent.
struct NuRecord {
  BracketLevel level;
  std::optional<std::uint64_t> nu;
  std::vector<std::uint64_t> witness;

  bool not_f_pure() const noexcept { return !nu.has_value(); }
};

/// Largest k such that some product g_1^{l_1}...g_m^{l_m} with sum k, times
/// f^{q-1} when a multiplier is present, stays out of (X_1^q, ..., X_d^q).
///
/// Products of k generators have order >= k while survivors have every
/// exponent <= q-1, so k <= d(q-1); membership in k is downward closed
/// (dropping a factor of a survivor leaves a survivor), which justifies a
/// binary search. Each membership probe runs a depth-first walk over the
/// exponent tuples in generator order; partial products are reduced at every
/// step, each prefix is computed once per probe, reduced powers of the last
/// generator are cached across probes, and a branch is pruned as soon as its
/// partial product reduces to zero.
NuRecord nu_level(const IdealPair& pair, BracketLevel lvl, const NuBudget& budget = {});

/// Fedder-style level test at exponent t >= 0: true iff some product of
/// exactly floor(t(q-1)) generators, times f^{q-1} when present, stays out of
/// the bracket ideal.
bool fedder_fpure_at(const IdealPair& pair, const Rational& t, BracketLevel lvl,
                     const NuBudget& budget = {});

/// Reference implementation of nu_level: enumerates every tuple with sum at
/// most d(q-1) in plain nested-loop order, with no binary search, no shared
/// state and no pruning, and returns the largest surviving sum. Requires
/// d(q-1) <= bound. Slow by design; exists to check nu_level against.
NuRecord oracle_nu(const IdealPair& pair, BracketLevel lvl, std::uint64_t bound = 64);

}  // namespace fpt

#endif  // FPT_FROBENIUS_HPP
