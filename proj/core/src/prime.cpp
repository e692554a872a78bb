#include "fpt/prime.hpp"

#include <limits>

namespace fpt {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = r * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return r;
}

// C(a, b) mod p for 0 <= a, b < p. Numerator and denominator of the falling
// factorial are coprime to p, so the denominator inverts by Fermat.
std::uint32_t binom_small(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    num = num * ((a - b + i) % p) % p;
    den = den * (i % p) % p;
  }
  if (num == 0) return 0;
  return static_cast<std::uint32_t>(num * pow_mod(den, p - 2, p) % p);
}

}  // namespace

PrimeChar::PrimeChar(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("PrimeChar: " + std::to_string(p) + " is not prime");
  }
}

BracketLevel BracketLevel::make(PrimeChar p, std::uint32_t e) {
  if (e < 1) throw std::invalid_argument("BracketLevel: level must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (q > std::numeric_limits<std::uint64_t>::max() / p.value()) {
      throw std::invalid_argument("BracketLevel: p^e overflows");
    }
    q *= p.value();
  }
  return BracketLevel{p, e, q};
}

std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, PrimeChar p) {
  const std::uint64_t pv = p.value();
  if (k > n) return 0;
  std::uint64_t r = 1;
  while (n > 0 || k > 0) {
    std::uint64_t nd = n % pv, kd = k % pv;
    if (kd > nd) return 0;
    r = r * binom_small(nd, kd, pv) % pv;
    if (r == 0) return 0;
    n /= pv;
    k /= pv;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace fpt
