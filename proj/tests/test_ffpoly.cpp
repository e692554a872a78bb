#include <cstdint>
#include <vector>

#include "doctest.h"
#include "fpt/errors.hpp"
#include "fpt/parse.hpp"
#include "fpt/poly.hpp"
#include "fpt/prime.hpp"

using namespace fpt;

namespace {

std::shared_ptr<const Ring> xy(std::uint32_t p) { return make_ring(p, {"X", "Y"}); }

SparsePoly var(const std::shared_ptr<const Ring>& ring, std::size_t j, std::uint32_t e = 1) {
  std::vector<std::uint32_t> exps(ring->dim(), 0);
  exps[j] = e;
  return SparsePoly::monomial(ring, exps, 1);
}

}  // namespace

TEST_SUITE("ffpoly") {

TEST_CASE("prime characteristic validation") {
  CHECK(PrimeChar(2).value() == 2);
  CHECK(PrimeChar(7919).value() == 7919);
  CHECK_THROWS_AS(PrimeChar(1), std::invalid_argument);
  CHECK_THROWS_AS(PrimeChar(6), std::invalid_argument);
  CHECK_THROWS_AS(PrimeChar(0), std::invalid_argument);
}

TEST_CASE("bracket level carries q = p^e") {
  const auto lvl = BracketLevel::make(PrimeChar(3), 4);
  CHECK(lvl.q == 81);
  CHECK_THROWS_AS(BracketLevel::make(PrimeChar(2), 0), std::invalid_argument);
}

TEST_CASE("parse round trip and normal form") {
  const auto ring = xy(7);
  CHECK(parse_poly("X^2*Y + 3", ring).str() == "X^2*Y+3");
  CHECK(parse_poly("(X + Y)^2 - X^2 - Y^2", ring).str() == "2*X*Y");
  CHECK(parse_poly("X - X", ring).is_zero());
  CHECK(parse_poly("10*X", ring).str() == "3*X");
  // ^ binds tighter than *, which binds tighter than +.
  CHECK(parse_poly("2*X^2+Y", ring) == parse_poly("Y + X^2 + X^2", ring));
}

TEST_CASE("parse rejects malformed input with positions") {
  const auto ring = xy(5);
  CHECK_THROWS_AS(parse_poly("X + W", ring), UnknownVariableError);
  CHECK_THROWS_AS(parse_poly("X^-1", ring), SyntaxError);
  CHECK_THROWS_AS(parse_poly("X^Y", ring), SyntaxError);
  CHECK_THROWS_AS(parse_poly("X + * Y", ring), SyntaxError);
  CHECK_THROWS_AS(parse_poly("", ring), SyntaxError);
  CHECK_THROWS_AS(parse_poly("(X", ring), SyntaxError);
  try {
    parse_poly("X + W", ring);
  } catch (const UnknownVariableError& err) {
    CHECK(err.name() == "W");
    CHECK(err.position() == 4);
  }
}

TEST_CASE("builder folds duplicate terms modulo p") {
  const auto ring = xy(7);
  PolyBuilder b(ring);
  const std::uint32_t e10[] = {1, 0};
  b.add_term(e10, 4);
  b.add_term(e10, 3);
  CHECK(b.build().is_zero());
}

TEST_CASE("degree and order of a mixed polynomial") {
  const auto ring = xy(5);
  const auto f = parse_poly("X^5 + X^2*Y + X^2", ring);
  CHECK(f.total_degree() == 5);
  CHECK(f.order() == 2);
  CHECK(f.num_terms() == 3);
  const std::uint32_t e21[] = {2, 1};
  CHECK(f.coeff_at(e21) == 1);
  const std::uint32_t e11[] = {1, 1};
  CHECK(f.coeff_at(e11) == 0);
}

TEST_CASE("freshman's dream: (X+Y)^p = X^p + Y^p") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto ring = xy(p);
    const auto sum = var(ring, 0) + var(ring, 1);
    CHECK(sum.pow(p) == var(ring, 0, p) + var(ring, 1, p));
  }
}

TEST_CASE("pow matches iterated multiplication") {
  const auto ring = xy(3);
  const auto f = parse_poly("X^2 + 2*X*Y + Y^2 + 1", ring);
  auto g = SparsePoly::constant(ring, 1);
  for (int i = 0; i < 7; ++i) g = g * f;
  CHECK(f.pow(7) == g);
  CHECK(f.pow(0) == SparsePoly::constant(ring, 1));
  CHECK(SparsePoly::zero(ring).pow(0) == SparsePoly::constant(ring, 1));
}

TEST_CASE("pth power detection is exponent divisibility") {
  const auto ring = xy(3);
  CHECK(parse_poly("X^3 + Y^6", ring).is_pth_power());
  CHECK(parse_poly("2*X^3", ring).is_pth_power());  // 2 = 2^3 in F_3
  CHECK_FALSE(parse_poly("X^3 + Y^2", ring).is_pth_power());
  CHECK(SparsePoly::constant(ring, 2).is_pth_power());
  CHECK(SparsePoly::zero(ring).is_pth_power());
}

TEST_CASE("bracket reduction drops exactly the terms with an exponent >= q") {
  const auto ring = xy(3);
  const auto lvl = BracketLevel::make(PrimeChar(3), 2);  // q = 9
  const auto f = parse_poly("X^9 + X^8*Y^8 + X^2*Y^10", ring);
  CHECK(reduce_mod_bracket(f, lvl).str() == "X^8*Y^8");
  CHECK(reduce_mod_bracket(var(ring, 0, 9), lvl).is_zero());
}

TEST_CASE("reduced multiplication agrees with multiply-then-reduce") {
  const auto ring = xy(5);
  const auto lvl = BracketLevel::make(PrimeChar(5), 1);
  const auto f = parse_poly("X^3 + Y^4 + X*Y", ring);
  const auto g = parse_poly("X^2 + 3*Y", ring);
  CHECK(mul_reduced(f, g, lvl) == reduce_mod_bracket(f * g, lvl));
}

TEST_CASE("reduced exponentiation agrees with exponentiate-then-reduce") {
  const auto ring = xy(3);
  const auto lvl = BracketLevel::make(PrimeChar(3), 2);
  const auto f = parse_poly("X^2 + Y^3 + X*Y", ring);
  for (std::uint64_t n : {0ull, 1ull, 2ull, 8ull, 9ull}) {
    CHECK(pow_reduced(f, n, lvl) == reduce_mod_bracket(f.pow(n), lvl));
  }
}

TEST_CASE("binomial coefficients mod p follow the base-p digits") {
  CHECK(binom_mod_p(5, 2, PrimeChar(3)) == 1);   // 10 mod 3
  CHECK(binom_mod_p(7, 3, PrimeChar(5)) == 0);   // 35 mod 5
  CHECK(binom_mod_p(10, 4, PrimeChar(7)) == 0);  // 210 mod 7
  CHECK(binom_mod_p(9, 10, PrimeChar(3)) == 0);  // k > n
  // Every digit of q-1 is p-1, so no binomial in row q-1 vanishes.
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t e = 1; e <= 3; ++e) {
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < e; ++i) q *= p;
      for (std::uint64_t j = 0; j <= q - 1; ++j) {
        CAPTURE(p);
        CAPTURE(q);
        CAPTURE(j);
        REQUIRE(binom_mod_p(q - 1, j, PrimeChar(p)) != 0);
      }
    }
  }
}

}  // TEST_SUITE
