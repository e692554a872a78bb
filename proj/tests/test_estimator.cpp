#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "fpt/errors.hpp"
#include "fpt/estimator.hpp"
#include "fpt/harness.hpp"
#include "fpt/parse.hpp"

using namespace fpt;

namespace {

IdealPair pair_from(const std::shared_ptr<const Ring>& ring,
                    const std::vector<std::string>& gens,
                    std::optional<std::string> mult = std::nullopt) {
  std::vector<SparsePoly> gs;
  for (const auto& g : gens) gs.push_back(parse_poly(g, ring));
  std::optional<SparsePoly> m;
  if (mult) m = parse_poly(*mult, ring);
  return IdealPair(std::move(gs), std::move(m));
}

IdealPair e8_pair_p11() {
  const auto ring = suite_ring(11, 3);
  return pair_from(ring, {"X", "Y", "Z"}, "X^2+Y^3+Z^5");
}

}  // namespace

TEST_SUITE("estimator") {

TEST_CASE("default level budget by prime size") {
  CHECK(default_level_budget(PrimeChar(2)) == 3);
  CHECK(default_level_budget(PrimeChar(7)) == 3);
  CHECK(default_level_budget(PrimeChar(11)) == 2);
  CHECK(default_level_budget(PrimeChar(13)) == 2);
}

TEST_CASE("sequence invariants are enforced on construction") {
  const auto pair = e8_pair_p11();
  const auto r1 = nu_level(pair, BracketLevel::make(PrimeChar(11), 1));
  const auto r2 = nu_level(pair, BracketLevel::make(PrimeChar(11), 2));
  CHECK_NOTHROW(NuSequence(pair, {r1, r2}));
  CHECK_THROWS_AS(NuSequence(pair, {}), InternalError);
  CHECK_THROWS_AS(NuSequence(pair, {r2}), InternalError);          // starts at e = 2
  CHECK_THROWS_AS(NuSequence(pair, {r1, r1}), InternalError);      // not consecutive
  // A finite level may not follow a non-F-pure one.
  NuRecord dead{BracketLevel::make(PrimeChar(11), 1), std::nullopt, {}};
  CHECK_THROWS_AS(NuSequence(pair, {dead, r2}), InternalError);
}

TEST_CASE("level sequence of the maximal ideal in two variables") {
  const auto ring = suite_ring(5, 2);
  const auto pair = pair_from(ring, {"X", "Y"});
  const auto seq = nu_sequence(pair, 3);
  REQUIRE(seq.records().size() == 3);
  for (std::uint32_t e = 1; e <= 3; ++e) {
    CHECK(*seq.records()[e - 1].nu == 2 * (seq.records()[e - 1].level.q - 1));
  }
  CHECK_FALSE(seq.all_not_f_pure());

  const auto iv = bounds(seq);
  CHECK(iv.lower == Rational(248, 125));
  CHECK(iv.upper == Rational(251, 125));
  CHECK(iv.lower_level == 3);
  CHECK(iv.upper_level == 3);
  CHECK(iv.lower <= Rational(2));
  CHECK(Rational(2) <= iv.upper);

  const auto guess = conjecture(seq);
  REQUIRE(guess.has_value());
  CHECK(guess->limit == Rational(2));
  CHECK(guess->delta == 8);  // nu(pq) - p nu(q) = 2(p-1)
  CHECK(guess->confirmed_steps == 2);
}

TEST_CASE("interval and extrapolation for X^2+Y^3+Z^5 at p = 11") {
  const auto seq = nu_sequence(e8_pair_p11(), 2);
  const auto iv = bounds(seq);
  CHECK(iv.lower == Rational(16, 121));
  CHECK(iv.upper == Rational(20, 121));
  const auto guess = conjecture(seq);
  REQUIRE(guess.has_value());
  CHECK(guess->limit == Rational(3, 22));
  CHECK(guess->limit == Rational(1, 6) - Rational(1, 33));
  CHECK(guess->e0 == 1);
  CHECK(guess->delta == 5);
  CHECK(guess->confirmed_steps == 1);
}

TEST_CASE("no extrapolation from a single level") {
  const auto ring = suite_ring(5, 2);
  const auto seq = nu_sequence(pair_from(ring, {"X", "Y"}), 1);
  CHECK_FALSE(conjecture(seq).has_value());
}

TEST_CASE("all levels dead: no interval, flagged sequence") {
  const auto ring = suite_ring(2, 2);
  const auto seq = nu_sequence(pair_from(ring, {"X", "Y"}, "X^2"), 2);
  CHECK(seq.all_not_f_pure());
  CHECK_THROWS_AS(bounds(seq), AllLevelsNotFPureError);
  CHECK_FALSE(conjecture(seq).has_value());
}

TEST_CASE("memo hits bypass computation and stores see computed levels") {
  const auto pair = e8_pair_p11();
  std::vector<std::uint32_t> stored;
  std::string seen_key;
  const auto store = [&](const std::string& key, std::uint32_t e, const NuRecord& rec) {
    stored.push_back(e);
    seen_key = key;
    CHECK(rec.level.e == e);
  };
  const auto seq1 = nu_sequence(pair, 2, {}, nullptr, store);
  REQUIRE(stored == std::vector<std::uint32_t>{1, 2});
  CHECK_FALSE(seen_key.empty());

  // A poisoned memo value is returned verbatim, proving the lookup short-circuits.
  NuRecord fake{BracketLevel::make(PrimeChar(11), 1), 999, {}};
  const auto lookup = [&](const std::string&, std::uint32_t e) -> std::optional<NuRecord> {
    if (e == 1) return fake;
    return std::nullopt;
  };
  const auto seq2 = nu_sequence(pair, 1, {}, lookup, nullptr);
  CHECK(*seq2.records()[0].nu == 999);

  // Wrong-level hits are rejected rather than silently used.
  const auto bad = [&](const std::string&, std::uint32_t) -> std::optional<NuRecord> {
    return fake;
  };
  CHECK_THROWS_AS(nu_sequence(pair, 2, {}, bad, nullptr), InternalError);
}

TEST_CASE("resource limits surface as errors, not wrong answers") {
  NuBudget tiny;
  tiny.max_terms = 8;
  CHECK_THROWS_AS(nu_sequence(e8_pair_p11(), 2, tiny), ResourceLimitError);
  CHECK_THROWS_AS(nu_sequence(e8_pair_p11(), 0), InternalError);
}

}  // TEST_SUITE
