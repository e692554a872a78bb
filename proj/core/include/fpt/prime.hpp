#ifndef FPT_PRIME_HPP
#define FPT_PRIME_HPP

#include <cstdint>
#include <stdexcept>

namespace fpt {

/// A prime number p, the characteristic of every coefficient field in this
/// library. Construction runs a deterministic primality check (trial
/// division; the supported range is small) and rejects non-primes.
class PrimeChar {
public:
  explicit PrimeChar(std::uint32_t p);

  std::uint32_t value() const noexcept { return p_; }

  friend bool operator==(PrimeChar a, PrimeChar b) noexcept { return a.p_ == b.p_; }
  friend bool operator!=(PrimeChar a, PrimeChar b) noexcept { return a.p_ != b.p_; }

private:
  std::uint32_t p_;
};

/// A Frobenius level: e >= 1 together with q = p^e. The bracket ideal at this
/// level is (X_1^q, ..., X_d^q).
struct BracketLevel {
  PrimeChar p;
  std::uint32_t e;
  std::uint64_t q;

  /// Builds the level, computing q = p^e with an overflow check.
  static BracketLevel make(PrimeChar p, std::uint32_t e);
};

/// Binomial coefficient C(n, k) modulo p, computed digit-by-digit in base p.
/// Returns the least non-negative residue.
std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, PrimeChar p);

}  // namespace fpt

#endif  // FPT_PRIME_HPP
