#include "fpt/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace fpt {

namespace {

constexpr std::size_t kMaxProductPairs = std::size_t(1) << 34;
constexpr std::size_t kMaxAccumTerms = std::size_t(1) << 24;

void require_same_ring(const SparsePoly& a, const SparsePoly& b) {
  if (a.ring() == b.ring() || *a.ring() == *b.ring()) return;
  throw std::invalid_argument("polynomial operands live in different rings");
}

// Lexicographic compare of flat exponent rows, first variable decides first.
int lex_cmp(const std::uint32_t* a, const std::uint32_t* b, std::size_t d) {
  for (std::size_t j = 0; j < d; ++j) {
    if (a[j] != b[j]) return a[j] < b[j] ? -1 : 1;
  }
  return 0;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

// Exponent fields per packed 64-bit key. Wide fields for low dimension keep
// headroom so that adding two keys never carries between fields.
unsigned bits_for_dim(std::size_t d) {
  if (d <= 3) return 21;
  if (d == 4) return 16;
  if (d == 5) return 12;
  return 0;
}

bool packable(const SparsePoly& f, unsigned bits) {
  if (bits == 0) return false;
  const std::uint32_t limit = 1u << (bits - 1);
  for (std::size_t i = 0; i < f.num_terms(); ++i) {
    for (std::uint32_t e : f.term_exps(i)) {
      if (e >= limit) return false;
    }
  }
  return true;
}

std::uint64_t pack_row(std::span<const std::uint32_t> row, unsigned bits) {
  std::uint64_t key = 0;
  for (std::uint32_t e : row) key = (key << bits) | e;
  return key;
}

void unpack_key(std::uint64_t key, unsigned bits, std::size_t d, std::uint32_t* out) {
  const std::uint64_t mask = (std::uint64_t(1) << bits) - 1;
  for (std::size_t j = 0; j < d; ++j) {
    out[d - 1 - j] = static_cast<std::uint32_t>(key & mask);
    key >>= bits;
  }
}

bool key_fields_below(std::uint64_t key, unsigned bits, std::size_t d, std::uint64_t q) {
  const std::uint64_t mask = (std::uint64_t(1) << bits) - 1;
  for (std::size_t j = 0; j < d; ++j) {
    if ((key & mask) >= q) return false;
    key >>= bits;
  }
  return true;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Open-addressing accumulator for packed product terms.
class KeyAccumulator {
public:
  explicit KeyAccumulator(std::size_t expected) {
    std::size_t cap = 64;
    while (cap < expected * 2) cap <<= 1;
    keys_.assign(cap, kEmpty);
    vals_.assign(cap, 0);
  }

  void add(std::uint64_t key, std::uint32_t val, std::uint32_t p) {
    std::size_t mask = keys_.size() - 1;
    std::size_t i = mix64(key) & mask;
    for (;;) {
      if (keys_[i] == key) {
        vals_[i] = (vals_[i] + val) % p;
        return;
      }
      if (keys_[i] == kEmpty) {
        keys_[i] = key;
        vals_[i] = val % p;
        ++count_;
        if (count_ * 10 >= keys_.size() * 7) grow();
        return;
      }
      i = (i + 1) & mask;
    }
  }

  std::size_t count() const { return count_; }

  // Nonzero entries sorted by key (packed keys sort like exponent rows).
  std::vector<std::pair<std::uint64_t, std::uint32_t>> sorted_entries() const {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (keys_[i] != kEmpty && vals_[i] != 0) out.emplace_back(keys_[i], vals_[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t(0);

  void grow() {
    if (keys_.size() >= kMaxAccumTerms) {
      throw ResourceLimitError("polynomial product exceeds the term budget");
    }
    std::vector<std::uint64_t> old_keys = std::move(keys_);
    std::vector<std::uint32_t> old_vals = std::move(vals_);
    keys_.assign(old_keys.size() * 2, kEmpty);
    vals_.assign(old_vals.size() * 2, 0);
    std::size_t mask = keys_.size() - 1;
    for (std::size_t i = 0; i < old_keys.size(); ++i) {
      if (old_keys[i] == kEmpty) continue;
      std::size_t j = mix64(old_keys[i]) & mask;
      while (keys_[j] != kEmpty) j = (j + 1) & mask;
      keys_[j] = old_keys[i];
      vals_[j] = old_vals[i];
    }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> vals_;
  std::size_t count_ = 0;
};

SparsePoly from_sorted_packed(std::shared_ptr<const Ring> ring,
                              const std::vector<std::pair<std::uint64_t, std::uint32_t>>& entries,
                              unsigned bits) {
  const std::size_t d = ring->dim();
  PolyBuilder out(std::move(ring));
  std::vector<std::uint32_t> row(d);
  for (const auto& [key, val] : entries) {
    unpack_key(key, bits, d, row.data());
    out.add_term(row, val);
  }
  return out.build();
}

// Product of a and b; when `reduced`, terms with a coordinate >= q are
// discarded as they are formed.
SparsePoly multiply(const SparsePoly& a, const SparsePoly& b, bool reduced, std::uint64_t q) {
  require_same_ring(a, b);
  const auto& ring = a.ring();
  const std::uint32_t p = ring->p.value();
  const std::size_t d = ring->dim();

  if (a.is_zero() || b.is_zero()) return SparsePoly::zero(ring);
  const std::size_t pairs = a.num_terms() * b.num_terms();
  if (a.num_terms() != 0 && pairs / a.num_terms() != b.num_terms()) {
    throw ResourceLimitError("polynomial product too large");
  }
  if (pairs > kMaxProductPairs) {
    throw ResourceLimitError("polynomial product too large");
  }

  const unsigned bits = bits_for_dim(d);
  if (bits != 0 && packable(a, bits) && packable(b, bits)) {
    std::vector<std::uint64_t> ka(a.num_terms()), kb(b.num_terms());
    for (std::size_t i = 0; i < a.num_terms(); ++i) ka[i] = pack_row(a.term_exps(i), bits);
    for (std::size_t j = 0; j < b.num_terms(); ++j) kb[j] = pack_row(b.term_exps(j), bits);

    KeyAccumulator acc(std::min<std::size_t>(pairs, 1u << 16));
    for (std::size_t i = 0; i < a.num_terms(); ++i) {
      const std::uint64_t ca = a.term_coeff(i);
      for (std::size_t j = 0; j < b.num_terms(); ++j) {
        const std::uint64_t key = ka[i] + kb[j];
        if (reduced && !key_fields_below(key, bits, d, q)) continue;
        acc.add(key, static_cast<std::uint32_t>(ca * b.term_coeff(j) % p), p);
      }
    }
    return from_sorted_packed(ring, acc.sorted_entries(), bits);
  }

  // Generic fallback for high dimension or huge exponents.
  std::map<std::vector<std::uint32_t>, std::uint32_t> acc;
  std::vector<std::uint32_t> row(d);
  for (std::size_t i = 0; i < a.num_terms(); ++i) {
    const auto ea = a.term_exps(i);
    const std::uint64_t ca = a.term_coeff(i);
    for (std::size_t j = 0; j < b.num_terms(); ++j) {
      const auto eb = b.term_exps(j);
      bool dead = false;
      for (std::size_t k = 0; k < d; ++k) {
        const std::uint64_t s = std::uint64_t(ea[k]) + eb[k];
        if (reduced && s >= q) {
          dead = true;
          break;
        }
        if (s > std::numeric_limits<std::uint32_t>::max()) {
          throw ResourceLimitError("exponent overflow in polynomial product");
        }
        row[k] = static_cast<std::uint32_t>(s);
      }
      if (dead) continue;
      auto [it, fresh] = acc.emplace(row, 0);
      it->second = static_cast<std::uint32_t>((it->second + ca * b.term_coeff(j)) % p);
      if (acc.size() > kMaxAccumTerms) {
        throw ResourceLimitError("polynomial product exceeds the term budget");
      }
    }
  }
  PolyBuilder out(ring);
  for (const auto& [exps, c] : acc) {
    if (c != 0) out.add_term(exps, c);
  }
  return out.build();
}

}  // namespace

std::shared_ptr<const Ring> make_ring(std::uint32_t p, std::vector<std::string> vars) {
  PrimeChar prime(p);
  if (vars.empty()) throw std::invalid_argument("ring needs at least one variable");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!valid_identifier(v)) {
      throw std::invalid_argument("invalid variable name '" + v + "'");
    }
    if (!seen.insert(v).second) {
      throw std::invalid_argument("duplicate variable name '" + v + "'");
    }
  }
  return std::make_shared<const Ring>(Ring{prime, std::move(vars)});
}

SparsePoly SparsePoly::zero(std::shared_ptr<const Ring> ring) {
  return SparsePoly(std::move(ring), {}, {});
}

SparsePoly SparsePoly::constant(std::shared_ptr<const Ring> ring, std::uint64_t c) {
  return monomial(std::move(ring), std::vector<std::uint32_t>(0), c);
}

SparsePoly SparsePoly::monomial(std::shared_ptr<const Ring> ring,
                                std::vector<std::uint32_t> exps, std::uint64_t c) {
  if (exps.empty()) exps.assign(ring->dim(), 0);
  if (exps.size() != ring->dim()) {
    throw std::invalid_argument("exponent vector length does not match the ring dimension");
  }
  const std::uint32_t cv = static_cast<std::uint32_t>(c % ring->p.value());
  if (cv == 0) return zero(std::move(ring));
  return SparsePoly(std::move(ring), std::move(exps), {cv});
}

std::uint32_t SparsePoly::coeff_at(std::span<const std::uint32_t> exps) const {
  if (exps.size() != dim()) {
    throw std::invalid_argument("exponent vector length does not match the ring dimension");
  }
  for (std::size_t i = 0; i < num_terms(); ++i) {
    if (lex_cmp(exps_.data() + i * dim(), exps.data(), dim()) == 0) return coeffs_[i];
  }
  return 0;
}

std::uint64_t SparsePoly::total_degree() const {
  if (is_zero()) throw std::logic_error("degree of the zero polynomial is undefined");
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < num_terms(); ++i) {
    const auto row = term_exps(i);
    best = std::max(best, std::accumulate(row.begin(), row.end(), std::uint64_t(0)));
  }
  return best;
}

std::uint64_t SparsePoly::order() const {
  if (is_zero()) throw std::logic_error("order of the zero polynomial is undefined");
  std::uint64_t best = ~std::uint64_t(0);
  for (std::size_t i = 0; i < num_terms(); ++i) {
    const auto row = term_exps(i);
    best = std::min(best, std::accumulate(row.begin(), row.end(), std::uint64_t(0)));
  }
  return best;
}

bool SparsePoly::is_pth_power() const {
  const std::uint32_t p = ring_->p.value();
  for (std::uint32_t e : exps_) {
    if (e % p != 0) return false;
  }
  return true;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
  require_same_ring(a, b);
  const std::size_t d = a.ring()->dim();
  const std::uint32_t p = a.ring()->p.value();
  PolyBuilder out(a.ring());
  std::size_t i = 0, j = 0;
  while (i < a.num_terms() && j < b.num_terms()) {
    const int c = lex_cmp(a.exps_.data() + i * d, b.exps_.data() + j * d, d);
    if (c < 0) {
      out.add_term(a.term_exps(i), a.term_coeff(i));
      ++i;
    } else if (c > 0) {
      out.add_term(b.term_exps(j), b.term_coeff(j));
      ++j;
    } else {
      const std::uint32_t s = (a.term_coeff(i) + b.term_coeff(j)) % p;
      if (s != 0) out.add_term(a.term_exps(i), s);
      ++i;
      ++j;
    }
  }
  for (; i < a.num_terms(); ++i) out.add_term(a.term_exps(i), a.term_coeff(i));
  for (; j < b.num_terms(); ++j) out.add_term(b.term_exps(j), b.term_coeff(j));
  return out.build();
}

SparsePoly SparsePoly::operator-() const {
  const std::uint32_t p = ring_->p.value();
  std::vector<std::uint32_t> coeffs(coeffs_);
  for (auto& c : coeffs) c = p - c;
  return SparsePoly(ring_, exps_, std::move(coeffs));
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return a + (-b); }

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  return multiply(a, b, false, 0);
}

SparsePoly SparsePoly::pow(std::uint64_t n) const {
  SparsePoly acc = SparsePoly::constant(ring_, 1);
  if (n == 0) return acc;
  SparsePoly base = *this;
  for (;;) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n == 0) break;
    base = base * base;
  }
  return acc;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  return (a.ring() == b.ring() || *a.ring() == *b.ring()) && a.exps_ == b.exps_ &&
         a.coeffs_ == b.coeffs_;
}

std::string SparsePoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t t = num_terms(); t-- > 0;) {
    if (!out.empty()) out += "+";
    const auto row = term_exps(t);
    const std::uint32_t c = term_coeff(t);
    bool any_var = false;
    std::string part;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (row[j] == 0) continue;
      if (any_var) part += "*";
      part += ring_->vars[j];
      if (row[j] > 1) part += "^" + std::to_string(row[j]);
      any_var = true;
    }
    if (!any_var) {
      out += std::to_string(c);
    } else if (c != 1) {
      out += std::to_string(c) + "*" + part;
    } else {
      out += part;
    }
  }
  return out;
}

void PolyBuilder::add_term(std::span<const std::uint32_t> exps, std::uint64_t coeff) {
  if (exps.size() != ring_->dim()) {
    throw std::invalid_argument("exponent vector length does not match the ring dimension");
  }
  const std::uint64_t c = coeff % ring_->p.value();
  if (c == 0) return;
  exps_.insert(exps_.end(), exps.begin(), exps.end());
  coeffs_.push_back(c);
}

SparsePoly PolyBuilder::build() {
  const std::size_t d = ring_->dim();
  const std::uint32_t p = ring_->p.value();
  const std::size_t n = coeffs_.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return lex_cmp(exps_.data() + a * d, exps_.data() + b * d, d) < 0;
  });

  std::vector<std::uint32_t> exps;
  std::vector<std::uint32_t> coeffs;
  exps.reserve(exps_.size());
  coeffs.reserve(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    std::uint64_t c = coeffs_[idx[i]] % p;
    while (j < n && lex_cmp(exps_.data() + idx[i] * d, exps_.data() + idx[j] * d, d) == 0) {
      c = (c + coeffs_[idx[j]]) % p;
      ++j;
    }
    if (c != 0) {
      const std::uint32_t* row = exps_.data() + idx[i] * d;
      exps.insert(exps.end(), row, row + d);
      coeffs.push_back(static_cast<std::uint32_t>(c));
    }
    i = j;
  }
  return SparsePoly(std::move(ring_), std::move(exps), std::move(coeffs));
}

SparsePoly reduce_mod_bracket(const SparsePoly& f, BracketLevel lvl) {
  if (f.ring()->p != lvl.p) {
    throw std::invalid_argument("bracket level characteristic differs from the ring");
  }
  const std::size_t d = f.dim();
  std::vector<std::uint32_t> exps;
  std::vector<std::uint32_t> coeffs;
  for (std::size_t i = 0; i < f.num_terms(); ++i) {
    const auto row = f.term_exps(i);
    bool alive = true;
    for (std::uint32_t e : row) {
      if (e >= lvl.q) {
        alive = false;
        break;
      }
    }
    if (alive) {
      exps.insert(exps.end(), row.begin(), row.end());
      coeffs.push_back(f.term_coeff(i));
    }
  }
  return SparsePoly(f.ring(), std::move(exps), std::move(coeffs));
}

SparsePoly mul_reduced(const SparsePoly& a, const SparsePoly& b, BracketLevel lvl) {
  if (a.ring()->p != lvl.p) {
    throw std::invalid_argument("bracket level characteristic differs from the ring");
  }
  return multiply(reduce_mod_bracket(a, lvl), reduce_mod_bracket(b, lvl), true, lvl.q);
}

SparsePoly pow_reduced(const SparsePoly& f, std::uint64_t n, BracketLevel lvl) {
  SparsePoly acc = SparsePoly::constant(f.ring(), 1);
  if (n == 0) return acc;
  SparsePoly base = reduce_mod_bracket(f, lvl);
  for (;;) {
    if (n & 1) acc = mul_reduced(acc, base, lvl);
    n >>= 1;
    if (n == 0) break;
    base = mul_reduced(base, base, lvl);
  }
  return acc;
}

}  // namespace fpt
