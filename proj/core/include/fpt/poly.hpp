#ifndef FPT_POLY_HPP
#define FPT_POLY_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fpt/errors.hpp"
#include "fpt/prime.hpp"

namespace fpt {

/// A polynomial ring F_p[vars...] presented by its characteristic and an
/// ordered list of variable names. Variable order fixes the meaning of every
/// exponent vector and the canonical term order.
struct Ring {
  PrimeChar p;
  std::vector<std::string> vars;

  std::size_t dim() const noexcept { return vars.size(); }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.p == b.p && a.vars == b.vars;
  }
};

/// Validates and builds a shared ring: p prime, at least one variable,
/// variable names distinct identifiers ([A-Za-z_][A-Za-z0-9_]*).
std::shared_ptr<const Ring> make_ring(std::uint32_t p, std::vector<std::string> vars);

/// Sparse multivariate polynomial over F_p with dense exponent vectors.
///
/// Invariants: terms are sorted in strictly increasing lexicographic order of
/// their exponent vectors (first variable most significant), every stored
/// coefficient lies in [1, p-1], and the zero polynomial has no terms.
/// Values are immutable once built; all operations return new polynomials.
class SparsePoly {
public:
  static SparsePoly zero(std::shared_ptr<const Ring> ring);
  static SparsePoly constant(std::shared_ptr<const Ring> ring, std::uint64_t c);
  /// Single term c * X^exps. The coefficient is reduced mod p; a vanishing
  /// coefficient yields the zero polynomial.
  static SparsePoly monomial(std::shared_ptr<const Ring> ring,
                             std::vector<std::uint32_t> exps, std::uint64_t c);

  const std::shared_ptr<const Ring>& ring() const noexcept { return ring_; }
  std::size_t num_terms() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Exponent vector of term i, in canonical (ascending) term order.
  std::span<const std::uint32_t> term_exps(std::size_t i) const {
    return {exps_.data() + i * dim(), dim()};
  }
  std::uint32_t term_coeff(std::size_t i) const { return coeffs_[i]; }

  /// Coefficient of X^exps, zero when the term is absent.
  std::uint32_t coeff_at(std::span<const std::uint32_t> exps) const;

  /// Largest total degree of a term. Undefined on zero: throws.
  std::uint64_t total_degree() const;
  /// Smallest total degree of a term (the order). Undefined on zero: throws.
  std::uint64_t order() const;

  /// True when every exponent of every term is divisible by p, i.e. the
  /// polynomial is a p-th power in F_p[X].
  bool is_pth_power() const;

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  SparsePoly operator-() const;

  /// Plain n-th power by square-and-multiply (no bracket reduction).
  SparsePoly pow(std::uint64_t n) const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b);
  friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

  /// Canonical compact text, terms in descending lexicographic order,
  /// e.g. "X^2*Y+3*Z". Parsing this text reproduces the polynomial.
  std::string str() const;

private:
  friend SparsePoly reduce_mod_bracket(const SparsePoly&, BracketLevel);
  friend SparsePoly mul_reduced(const SparsePoly&, const SparsePoly&, BracketLevel);
  friend class PolyBuilder;

  SparsePoly(std::shared_ptr<const Ring> ring, std::vector<std::uint32_t> exps,
             std::vector<std::uint32_t> coeffs)
      : ring_(std::move(ring)), exps_(std::move(exps)), coeffs_(std::move(coeffs)) {}

  std::size_t dim() const noexcept { return ring_->dim(); }

  std::shared_ptr<const Ring> ring_;
  std::vector<std::uint32_t> exps_;    // flattened, num_terms x dim
  std::vector<std::uint32_t> coeffs_;  // least positive residues mod p
};

/// Accumulates terms in any order and assembles a canonical SparsePoly.
/// Coefficients of equal exponent vectors are summed mod p.
class PolyBuilder {
public:
  explicit PolyBuilder(std::shared_ptr<const Ring> ring) : ring_(std::move(ring)) {}

  void add_term(std::span<const std::uint32_t> exps, std::uint64_t coeff);
  SparsePoly build();

private:
  std::shared_ptr<const Ring> ring_;
  std::vector<std::uint32_t> exps_;
  std::vector<std::uint64_t> coeffs_;
};

/// Deletes every term with some exponent >= q. The result is the canonical
/// representative of f modulo the bracket ideal (X_1^q, ..., X_d^q); it is
/// zero exactly when f lies in that ideal.
SparsePoly reduce_mod_bracket(const SparsePoly& f, BracketLevel lvl);

/// reduce_mod_bracket(a*b, lvl), computed with dead product terms discarded
/// as they arise. Discarding early is sound: once some coordinate of a term
/// reaches q it stays >= q in every multiple.
SparsePoly mul_reduced(const SparsePoly& a, const SparsePoly& b, BracketLevel lvl);

/// reduce_mod_bracket(f^n, lvl) by square-and-multiply, reducing after every
/// multiplication. pow_reduced(f, 0) is 1.
SparsePoly pow_reduced(const SparsePoly& f, std::uint64_t n, BracketLevel lvl);

}  // namespace fpt

#endif  // FPT_POLY_HPP
