#ifndef FPT_MONOMIAL_HPP
#define FPT_MONOMIAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpt/rational.hpp"

namespace fpt {

using Exponents = std::vector<std::uint32_t>;

/// A monomial ideal in d variables, stored as the unique minimal generating
/// antichain: construction deletes duplicates and every generator that is
/// componentwise dominated by another, then sorts lexicographically.
/// Generators must be nonzero vectors (the unit ideal is not representable).
class MonomialIdeal {
public:
  MonomialIdeal(std::size_t dim, std::vector<Exponents> gens);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Exponents>& gens() const noexcept { return gens_; }

  /// True iff X^u lies in the ideal, i.e. some generator divides u.
  bool member(const Exponents& u) const;

  /// Smallest total degree of a generator.
  std::uint64_t order() const;

  /// Common total degree when all generators share one, else empty.
  std::optional<std::uint64_t> equigenerated_degree() const;

  /// n-th power, computed by iterated Minkowski sums of generator exponents,
  /// normalized to the minimal antichain after each step.
  MonomialIdeal power(std::uint32_t n) const;

  /// Ideal sum (union of generating sets, re-normalized).
  friend MonomialIdeal operator+(const MonomialIdeal& a, const MonomialIdeal& b);

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.dim_ == b.dim_ && a.gens_ == b.gens_;
  }

  /// Canonical text "(2,0),(1,2),(0,3)".
  std::string str() const;

private:
  std::size_t dim_;
  std::vector<Exponents> gens_;
};

/// Newton polytope P(a) = conv{generator exponents} + R^d_{>=0}, represented
/// by its generating points.
struct NewtonPolytope {
  std::size_t dim;
  std::vector<Exponents> points;
};

NewtonPolytope newton_polytope(const MonomialIdeal& a);

/// Exact membership of a rational point: u in P(a) iff there are convex
/// weights mu with sum(mu_i v_i) <= u componentwise. Decided by a phase-one
/// simplex over exact rationals.
bool contains(const NewtonPolytope& polytope, const std::vector<Rational>& u);

/// Output of the threshold linear program, with both optimality certificates.
///
/// s_star solves  min s  s.t.  sum_i mu_i v_ij <= s for all j, mu in the
/// simplex; the threshold is 1/s_star. `mu` is the optimal primal point. The
/// dual certificate `coord_weights` is a probability vector y over
/// coordinates with <v_i, y> >= s_star for every generator i, which proves no
/// smaller s is feasible: s >= sum_j y_j sum_i mu_i v_ij >= s_star for every
/// feasible (mu, s).
struct FptLpResult {
  Rational fpt;
  Rational s_star;
  std::vector<Rational> mu;
  std::vector<Rational> coord_weights;
};

/// True iff both certificates check out by exact arithmetic: mu is convex,
/// max_j sum_i mu_i v_ij equals s_star, coord_weights is a probability
/// vector, <v_i, coord_weights> >= s_star for all i, and fpt * s_star = 1.
bool verify_fpt_certificate(const MonomialIdeal& a, const FptLpResult& r);

/// Threshold of the ideal from its Newton polytope: the largest t with
/// (1,...,1) in t*P(a), computed as 1/s_star. The returned certificates are
/// re-verified before returning; failure throws InternalError.
FptLpResult fpt_lp(const MonomialIdeal& a);

/// Integral closure: the monomial ideal of all lattice points of P(a).
/// Enumerates the bounding box of the generators and keeps the
/// componentwise-minimal members.
MonomialIdeal integral_closure(const MonomialIdeal& a);

/// Height: the smallest number of variables meeting every generator's
/// support (minimum vertex cover of the support hypergraph).
std::uint32_t height(const MonomialIdeal& a);

/// Hilbert-Samuel multiplicity of an ideal primary to the maximal ideal,
/// d <= 3. Computes L(n) = #{u : X^u not in a^n} for consecutive n and
/// returns the d-th finite difference once three consecutive values agree.
/// Throws NotMPrimaryError when some variable has no pure power in a.
std::uint64_t multiplicity(const MonomialIdeal& a);

}  // namespace fpt

#endif  // FPT_MONOMIAL_HPP
