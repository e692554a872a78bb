#ifndef FPT_SIMPLEX_HPP
#define FPT_SIMPLEX_HPP

#include <vector>

#include "fpt/rational.hpp"

namespace fpt::lp {

/// Linear program in standard form:  minimize c.x  subject to  A x = b, x >= 0,
/// with b >= 0 componentwise (negate rows to arrange this before building).
struct Problem {
  std::vector<std::vector<Rational>> A;  // rows x cols
  std::vector<Rational> b;               // rows
  std::vector<Rational> c;               // cols
};

struct Solution {
  bool feasible = false;
  Rational objective;
  std::vector<Rational> x;  // primal values of the original columns
  std::vector<Rational> y;  // row multipliers c_B B^{-1} of the optimal basis
};

/// Two-phase dense tableau simplex over exact rationals with Bland's
/// anti-cycling rule (lowest eligible index enters, lowest basic index breaks
/// ratio ties), so it terminates on every input. Throws InternalError if the
/// program is unbounded; the programs built in this library never are.
Solution solve(const Problem& problem);

}  // namespace fpt::lp

#endif  // FPT_SIMPLEX_HPP
