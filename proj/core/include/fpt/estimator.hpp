#ifndef FPT_ESTIMATOR_HPP
#define FPT_ESTIMATOR_HPP

#include <functional>
#include <optional>

#include "fpt/frobenius.hpp"

namespace fpt {

/// Levels e = 1..E of a pair, in order. Invariants, checked on construction:
/// levels are consecutive from e = 1 at one prime, and once a level reports
/// the non-F-pure marker every later level does too (the marker propagates:
/// f^{pq-1} = f^{p-1}(f^{q-1})^p).
class NuSequence {
public:
  NuSequence(IdealPair pair, std::vector<NuRecord> records);

  const IdealPair& pair() const noexcept { return pair_; }
  const std::vector<NuRecord>& records() const noexcept { return records_; }

  /// True when no level has a finite value.
  bool all_not_f_pure() const;

private:
  IdealPair pair_;
  std::vector<NuRecord> records_;
};

/// Optional memo consulted before each level is computed; hits must have been
/// produced by nu_level on the same pair. Keys are (canonical pair text, e).
using NuMemo = std::function<std::optional<NuRecord>(const std::string&, std::uint32_t)>;
using NuMemoStore = std::function<void(const std::string&, std::uint32_t, const NuRecord&)>;

/// Levels 1..e_max via nu_level. On a resource limit mid-sequence the partial
/// results computed so far are attached to the rethrown error's message and
/// lost levels are absent; callers needing partial data pass a store hook.
NuSequence nu_sequence(const IdealPair& pair, std::uint32_t e_max, const NuBudget& budget = {},
                       const NuMemo& lookup = nullptr, const NuMemoStore& store = nullptr);

/// Default level budget: 3 for p <= 7, else 2.
std::uint32_t default_level_budget(PrimeChar p);

/// Two-sided threshold interval certified by level data.
///
/// lower = max_e nu(p^e)/p^e: each level witnesses purity at that exponent.
/// upper = min_e (nu(p^e)+1+m)/p^e with m the generator count: once every
/// product of k generators dies at level e, every product of
/// p(k+1)+(p-1)m-1 or more dies at level e+1 (split each exponent l_i as
/// p s_i + r_i with r_i < p), so the envelope (nu+1+m)/p^e never increases.
struct FptInterval {
  Rational lower;
  Rational upper;
  std::uint32_t lower_level = 0;  // level attaining the max
  std::uint32_t upper_level = 0;  // level attaining the min
};

/// Interval from the finite levels of the sequence.
/// Throws AllLevelsNotFPureError when no finite level exists.
FptInterval bounds(const NuSequence& seq);

/// A closed-form limit guessed from the base-p growth pattern; always a
/// conjecture, never fed back into bounds. delta_e = nu(p^{e+1}) - p nu(p^e);
/// when the trailing delta values agree the sequence extrapolates
/// geometrically to nu(p^{e0})/p^{e0} + delta/(p^{e0}(p-1)).
struct ClosedFormGuess {
  Rational limit;
  std::uint32_t e0 = 0;            // earliest level from which delta is constant
  std::int64_t delta = 0;
  std::uint32_t confirmed_steps = 0;  // length of the constant trailing run
};

/// Emits a guess whenever at least one delta exists (two finite levels);
/// the trailing constant run may have length 1.
std::optional<ClosedFormGuess> conjecture(const NuSequence& seq);

}  // namespace fpt

#endif  // FPT_ESTIMATOR_HPP
