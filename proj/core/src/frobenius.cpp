#include "fpt/frobenius.hpp"

#include <limits>

namespace fpt {

namespace {

void require_level(const IdealPair& pair, BracketLevel lvl) {
  if (pair.ring()->p != lvl.p) {
    throw std::invalid_argument("bracket level characteristic differs from the pair's ring");
  }
}

// The product F * g_1^{l_1} ... g_m^{l_m} of a surviving term has order at
// least sum(l), and a survivor mod the bracket has all exponents <= q-1.
std::uint64_t tuple_sum_limit(const IdealPair& pair, BracketLevel lvl) {
  return pair.ring()->dim() * (lvl.q - 1);
}

// f with every exponent scaled by `scale`, reduced mod the bracket. Over F_p
// with scale = p^i this is exactly f^{p^i}: the Frobenius fixes coefficients.
SparsePoly frobenius_scale(const SparsePoly& f, std::uint64_t scale, BracketLevel lvl) {
  PolyBuilder out(f.ring());
  std::vector<std::uint32_t> row(f.ring()->dim());
  for (std::size_t i = 0; i < f.num_terms(); ++i) {
    const auto exps = f.term_exps(i);
    bool dead = false;
    for (std::size_t j = 0; j < exps.size(); ++j) {
      const std::uint64_t e = exps[j];
      if (e != 0 && scale > (lvl.q - 1) / e) {  // e * scale >= q, term dies
        dead = true;
        break;
      }
      const std::uint64_t v = e * scale;
      if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw ResourceLimitError("scaled exponent exceeds the representable range");
      }
      row[j] = static_cast<std::uint32_t>(v);
    }
    if (!dead) out.add_term(row, f.term_coeff(i));
  }
  return out.build();
}

// Reduced multiplier power f^{q-1}, or the constant 1 without a multiplier.
// Uses q-1 = (p-1)(p^{e-1} + ... + 1): f^{q-1} = prod_i (f^{p^i})^{p-1}, and
// each factor is a cheap Frobenius rescaling raised to a small power. Far
// fewer intermediate terms arise than in a direct square-and-multiply chain.
SparsePoly level_front(const IdealPair& pair, BracketLevel lvl, std::size_t max_terms) {
  if (!pair.multiplier()) return SparsePoly::constant(pair.ring(), 1);
  SparsePoly front = SparsePoly::constant(pair.ring(), 1);
  std::uint64_t scale = 1;
  for (std::uint32_t i = 0; i < lvl.e && !front.is_zero(); ++i) {
    const SparsePoly factor = frobenius_scale(*pair.multiplier(), scale, lvl);
    front = mul_reduced(front, pow_reduced(factor, lvl.p.value() - 1, lvl), lvl);
    if (front.num_terms() > max_terms) {
      throw ResourceLimitError("multiplier power exceeds the term budget");
    }
    scale *= lvl.p.value();
  }
  return front;
}

// A generator of the form c * X_v (a single variable to the first power).
std::optional<std::size_t> unit_variable_of(const SparsePoly& g) {
  if (g.num_terms() != 1) return std::nullopt;
  const auto exps = g.term_exps(0);
  std::optional<std::size_t> var;
  for (std::size_t j = 0; j < exps.size(); ++j) {
    if (exps[j] == 0) continue;
    if (exps[j] != 1 || var) return std::nullopt;
    var = j;
  }
  return var;
}

// Shared machinery for the per-k membership probe.
class NuSearch {
public:
  NuSearch(const IdealPair& pair, BracketLevel lvl, const NuBudget& budget)
      : lvl_(lvl), budget_(budget), front_(level_front(pair, lvl, budget.max_terms)) {
    gens_.reserve(pair.mu());
    for (const auto& g : pair.gens()) gens_.push_back(reduce_mod_bracket(g, lvl));
    pows_.resize(gens_.size());
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      pows_[j].push_back(SparsePoly::constant(pair.ring(), 1));
    }
    detect_unit_variables(pair.ring()->dim());
  }

  bool front_dead() const { return front_.is_zero(); }

  bool fast() const { return fast_; }

  // Closed form when every generator is a distinct single variable: products
  // of k generators are the monomials X^l with sum(l) = k, and F * X^l
  // survives the bracket iff some term t of F has t[v_j] + l_j <= q-1 for
  // every j. So nu is the best per-term "room" sum, no search needed.
  std::uint64_t fast_nu() {
    std::uint64_t best = 0;
    std::size_t best_term = 0;
    for (std::size_t i = 0; i < front_.num_terms(); ++i) {
      const auto t = front_.term_exps(i);
      std::uint64_t sum = 0;
      for (const std::size_t v : unit_vars_) sum += (lvl_.q - 1) - t[v];
      if (i == 0 || sum > best) {
        best = sum;
        best_term = i;
      }
    }
    const auto t = front_.term_exps(best_term);
    witness_.assign(gens_.size(), 0);
    for (std::size_t j = 0; j < unit_vars_.size(); ++j) {
      witness_[j] = (lvl_.q - 1) - t[unit_vars_[j]];
    }
    return best;
  }

  // True iff some tuple with sum exactly k survives. On success the witness
  // of the first surviving tuple (in generator-order DFS) is recorded.
  bool probe(std::uint64_t k) {
    stack_.assign(gens_.size(), 0);
    if (!dfs(0, k, front_)) return false;
    witness_ = stack_;
    return true;
  }

  const std::vector<std::uint64_t>& witness() const { return witness_; }

private:
  void count_visit() {
    if (++visits_ > budget_.max_visits) {
      throw ResourceLimitError("tuple search exceeds the visit budget");
    }
  }

  void check_terms(const SparsePoly& f) const {
    if (f.num_terms() > budget_.max_terms) {
      throw ResourceLimitError("partial product exceeds the term budget");
    }
  }

  const SparsePoly& cached_pow(std::size_t j, std::uint64_t l) {
    auto& ladder = pows_[j];
    while (ladder.size() <= l) {
      ladder.push_back(mul_reduced(ladder.back(), gens_[j], lvl_));
      check_terms(ladder.back());
    }
    return ladder[l];
  }

  bool dfs(std::size_t j, std::uint64_t rem, const SparsePoly& partial) {
    count_visit();
    if (partial.is_zero()) return false;
    if (j + 1 == gens_.size()) {
      stack_[j] = rem;
      return !mul_reduced(partial, cached_pow(j, rem), lvl_).is_zero();
    }
    SparsePoly current = partial;
    for (std::uint64_t l = 0; l <= rem; ++l) {
      if (l > 0) {
        current = mul_reduced(current, gens_[j], lvl_);
        check_terms(current);
        if (current.is_zero()) return false;  // larger l stays zero
      }
      stack_[j] = l;
      if (dfs(j + 1, rem - l, current)) return true;
    }
    return false;
  }

  void detect_unit_variables(std::size_t dim) {
    std::vector<bool> seen(dim, false);
    for (const auto& g : gens_) {
      const auto v = unit_variable_of(g);
      if (!v || seen[*v]) return;
      seen[*v] = true;
      unit_vars_.push_back(*v);
    }
    fast_ = true;
  }

  BracketLevel lvl_;
  NuBudget budget_;
  SparsePoly front_;
  std::vector<SparsePoly> gens_;
  std::vector<std::vector<SparsePoly>> pows_;  // reduced powers of each generator
  std::vector<std::uint64_t> stack_;
  std::vector<std::uint64_t> witness_;
  std::vector<std::size_t> unit_vars_;  // generator j is c * X_{unit_vars_[j]}
  bool fast_ = false;
  std::uint64_t visits_ = 0;
};

}  // namespace

IdealPair::IdealPair(std::vector<SparsePoly> gens, std::optional<SparsePoly> multiplier)
    : gens_(std::move(gens)), multiplier_(std::move(multiplier)) {
  if (gens_.empty()) throw std::invalid_argument("ideal needs at least one generator");
  const auto& ring = gens_[0].ring();
  auto check = [&](const SparsePoly& g, const char* what) {
    if (!(g.ring() == ring || *g.ring() == *ring)) {
      throw std::invalid_argument(std::string(what) + " lives in a different ring");
    }
    if (g.is_zero()) throw std::invalid_argument(std::string(what) + " is zero");
    if (g.order() == 0) {
      throw std::invalid_argument(std::string(what) + " has a nonzero constant term");
    }
  };
  for (const auto& g : gens_) check(g, "generator");
  if (multiplier_) check(*multiplier_, "multiplier");
}

std::string IdealPair::describe() const {
  std::string out = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i > 0) out += "; ";
    out += gens_[i].str();
  }
  if (multiplier_) out += " | " + multiplier_->str();
  out += ")";
  return out;
}

NuRecord nu_level(const IdealPair& pair, BracketLevel lvl, const NuBudget& budget) {
  require_level(pair, lvl);
  NuSearch search(pair, lvl, budget);
  if (search.front_dead()) return NuRecord{lvl, std::nullopt, {}};

  if (search.fast()) {
    NuRecord rec{lvl, search.fast_nu(), {}};
    if (*rec.nu > 0) rec.witness = search.witness();
    return rec;
  }

  // probe is monotone in k: probe(0) holds, everything above d(q-1) fails.
  std::uint64_t lo = 0;
  std::uint64_t hi = tuple_sum_limit(pair, lvl);
  if (search.probe(hi)) {
    lo = hi;
  } else {
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (search.probe(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  NuRecord rec{lvl, lo, {}};
  if (lo > 0) {
    rec.witness = search.witness();
    std::uint64_t sum = 0;
    for (auto l : rec.witness) sum += l;
    if (sum != lo) throw InternalError("witness sum does not match nu");
  }
  return rec;
}

bool fedder_fpure_at(const IdealPair& pair, const Rational& t, BracketLevel lvl,
                     const NuBudget& budget) {
  require_level(pair, lvl);
  if (t < Rational(0)) throw std::invalid_argument("exponent t must be >= 0");
  const BigInt k = (t * Rational(std::uint64_t(lvl.q - 1))).floor();
  if (k > BigInt(tuple_sum_limit(pair, lvl))) return false;
  NuSearch search(pair, lvl, budget);
  if (search.front_dead()) return false;
  if (search.fast()) return static_cast<std::uint64_t>(k) <= search.fast_nu();
  return search.probe(static_cast<std::uint64_t>(k));
}

NuRecord oracle_nu(const IdealPair& pair, BracketLevel lvl, std::uint64_t bound) {
  require_level(pair, lvl);
  const std::uint64_t limit = tuple_sum_limit(pair, lvl);
  if (limit > bound) {
    throw ResourceLimitError("oracle_nu requires d(q-1) <= " + std::to_string(bound));
  }

  SparsePoly front = pair.multiplier()
                         ? reduce_mod_bracket(pair.multiplier()->pow(lvl.q - 1), lvl)
                         : SparsePoly::constant(pair.ring(), 1);
  if (front.is_zero()) return NuRecord{lvl, std::nullopt, {}};

  const auto& gens = pair.gens();
  std::vector<std::uint64_t> tuple(gens.size(), 0);
  std::optional<std::uint64_t> best;
  std::vector<std::uint64_t> best_tuple;
  std::uint64_t visited = 0;

  // Plain exhaustive walk over all tuples with sum <= limit; the partial
  // product along the current prefix is carried, nothing else is shared.
  auto walk = [&](auto&& self, std::size_t j, std::uint64_t rem,
                  const SparsePoly& partial) -> void {
    if (++visited > (std::uint64_t(1) << 31)) {
      throw ResourceLimitError("oracle_nu tuple walk is too large");
    }
    if (j == gens.size()) {
      if (partial.is_zero()) return;
      const std::uint64_t sum = limit - rem;
      if (!best || sum > *best) {
        best = sum;
        best_tuple = tuple;
      }
      return;
    }
    SparsePoly current = partial;
    for (std::uint64_t l = 0; l <= rem; ++l) {
      if (l > 0) current = mul_reduced(current, gens[j], lvl);
      tuple[j] = l;
      self(self, j + 1, rem - l, current);
    }
    tuple[j] = 0;
  };
  walk(walk, 0, limit, front);

  NuRecord rec{lvl, best, {}};
  if (best && *best > 0) rec.witness = best_tuple;
  return rec;
}

}  // namespace fpt
