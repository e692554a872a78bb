// End-to-end acceptance gate. Each criterion re-derives a promised identity
// or inequality with exact arithmetic and prints a single pass/fail line;
// the process exits nonzero when any criterion fails.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fpt/errors.hpp"
#include "fpt/estimator.hpp"
#include "fpt/frobenius.hpp"
#include "fpt/harness.hpp"
#include "fpt/monomial.hpp"
#include "fpt/parse.hpp"

using namespace fpt;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) detail << "; ";
    ok = false;
    detail << what;
  }
};

IdealPair pair_from(const std::shared_ptr<const Ring>& ring,
                    const std::vector<std::string>& gens,
                    std::optional<std::string> mult = std::nullopt) {
  std::vector<SparsePoly> gs;
  for (const auto& g : gens) gs.push_back(parse_poly(g, ring));
  std::optional<SparsePoly> m;
  if (mult) m = parse_poly(*mult, ring);
  return IdealPair(std::move(gs), std::move(m));
}

MonomialIdeal max_ideal(std::size_t d) {
  std::vector<Exponents> gens;
  for (std::size_t j = 0; j < d; ++j) {
    Exponents e(d, 0);
    e[j] = 1;
    gens.push_back(e);
  }
  return MonomialIdeal(d, std::move(gens));
}

IdealPair maximal_pair(std::uint32_t p, std::size_t d) {
  const auto ring = suite_ring(p, d);
  std::vector<std::string> vars(ring->vars.begin(), ring->vars.end());
  return pair_from(ring, vars);
}

std::uint64_t ideal_order(const IdealPair& pair) {
  std::uint64_t ord = UINT64_MAX;
  for (const auto& g : pair.gens()) ord = std::min(ord, g.order());
  return ord;
}

// --- criteria ---------------------------------------------------------

// nu of the maximal ideal is d(q-1) at every level, the certified interval
// brackets d, and the polytope threshold is exactly d.
void regular_maximal_ideal(Check& c) {
  for (std::size_t d : {1u, 2u, 3u}) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      const auto pair = maximal_pair(p, d);
      for (std::uint32_t e = 1; e <= 3; ++e) {
        const auto lvl = BracketLevel::make(PrimeChar(p), e);
        const auto rec = nu_level(pair, lvl);
        c.require(rec.nu && *rec.nu == d * (lvl.q - 1),
                  "nu(m) != d(q-1) at d=" + std::to_string(d) + " p=" + std::to_string(p) +
                      " e=" + std::to_string(e));
      }
      const auto iv = bounds(nu_sequence(pair, 3));
      const Rational dd(static_cast<int>(d));
      c.require(iv.lower <= dd && dd <= iv.upper,
                "interval misses d at d=" + std::to_string(d) + " p=" + std::to_string(p));
    }
    c.require(fpt_lp(max_ideal(d)).fpt == Rational(static_cast<int>(d)),
              "fpt_lp(m) != d at d=" + std::to_string(d));
  }
}

// The polytope threshold of m^r is exactly d/r.
void veronese_powers(Check& c) {
  for (std::size_t d : {2u, 3u}) {
    for (std::uint32_t r : {2u, 3u, 5u}) {
      c.require(fpt_lp(max_ideal(d).power(r)).fpt ==
                    Rational(static_cast<int>(d), static_cast<int>(r)),
                "fpt_lp(m^r) != d/r at d=" + std::to_string(d) + " r=" + std::to_string(r));
    }
  }
}

// Principal plane curves X^a + Y^b: base level from the rounding formula,
// and the exact linear level values when p = 1 mod ab.
void plane_curve_grid(Check& c) {
  for (std::uint32_t a = 2; a <= 5; ++a) {
    for (std::uint32_t b = 2; b <= 5; ++b) {
      for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
        const auto ring = suite_ring(p, 2);
        const auto pair =
            pair_from(ring, {"X^" + std::to_string(a) + "+Y^" + std::to_string(b)});
        const std::uint64_t r = (p + a - 1) / a + (p + b - 1) / b - 1;
        const auto rec = nu_level(pair, BracketLevel::make(PrimeChar(p), 1));
        c.require(rec.nu && *rec.nu == r - 1,
                  "nu(p) != r-1 at a=" + std::to_string(a) + " b=" + std::to_string(b) +
                      " p=" + std::to_string(p));
        if (p % (a * b) != 1) continue;
        for (std::uint32_t e = 1; e <= 2; ++e) {
          const auto lvl = BracketLevel::make(PrimeChar(p), e);
          const std::uint64_t want = (lvl.q - 1) / (a * b) * (a + b);
          const auto lin = nu_level(pair, lvl);
          c.require(lin.nu && *lin.nu == want,
                    "split-level nu mismatch at a=" + std::to_string(a) +
                        " b=" + std::to_string(b) + " p=" + std::to_string(p) +
                        " e=" + std::to_string(e));
        }
      }
    }
  }
}

// The rational-double-point suite, plus the one tabulated sequence whose
// limit differs from both nearby residue classes: p = 11 on X^2+Y^3+Z^5.
void rational_double_points(Check& c) {
  SuiteSpec spec;
  spec.suite = Suite::duval;
  const auto report = run_suite(spec);
  c.require(report.all_passed(),
            "duval suite: " + std::to_string(report.failure_count()) + " failing cases");

  const auto ring = suite_ring(11, 3);
  const auto pair = pair_from(ring, {"X", "Y", "Z"}, "X^2+Y^3+Z^5");
  const auto seq = nu_sequence(pair, 2);
  c.require(*seq.records()[0].nu == 1 && *seq.records()[1].nu == 16,
            "nu sequence at p=11 is not (1, 16)");
  const auto guess = conjecture(seq);
  c.require(guess && guess->limit == Rational(3, 22), "limit at p=11 is not 3/22");
  c.require(Rational(3, 22) == Rational(1, 6) - Rational(1, 33), "3/22 != 1/6 - 1/33");
}

// (X^2,Y^2,Z^2) at p=2: the level test fails at 3/2 for every e <= 3 even
// though the threshold is 3/2; the integral closure attains it.
void characteristic_two_edge(Check& c) {
  const auto ring = suite_ring(2, 3);
  const auto squares = pair_from(ring, {"X^2", "Y^2", "Z^2"});
  const Rational t(3, 2);
  for (std::uint32_t e = 1; e <= 3; ++e) {
    c.require(!fedder_fpure_at(squares, t, BracketLevel::make(PrimeChar(2), e)),
              "level test passed at 3/2, e=" + std::to_string(e));
  }
  const MonomialIdeal sq(3, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  c.require(integral_closure(sq) == max_ideal(3).power(2), "closure != m^2");
  c.require(fpt_lp(sq).fpt == t, "fpt_lp of the squares != 3/2");
  c.require(fpt_lp(integral_closure(sq)).fpt == t, "fpt_lp of the closure != 3/2");
}

// Order/height bounds on random monomial ideals, the equigenerated
// refinement, and the level-wise nu bounds on random polynomial ideals.
void threshold_bounds(Check& c) {
  Rng rng(42);
  std::size_t equigenerated_seen = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 1 + rng.below(3);
    const auto a = random_monomial_ideal(rng, d, 2 + rng.below(5), 2 + rng.below(3));
    const Rational fpt = fpt_lp(a).fpt;
    const Rational ord(std::uint64_t{1}, a.order());
    c.require(ord <= fpt && fpt <= ord * Rational(std::uint64_t(d)),
              "order bound fails on " + a.str());
    c.require(fpt <= Rational(std::uint64_t(height(a))), "height bound fails on " + a.str());
    if (const auto D = a.equigenerated_degree()) {
      ++equigenerated_seen;
      c.require(fpt >= Rational(std::uint64_t(height(a)), *D),
                "equigenerated bound fails on " + a.str());
    }
  }
  // Force the equigenerated case to occur: generators drawn on one simplex.
  for (int i = 0; i < 25; ++i) {
    const std::size_t d = 2 + rng.below(2);
    const std::uint32_t D = 2 + rng.below(4);
    std::vector<Exponents> gens(2 + rng.below(3), Exponents(d, 0));
    for (auto& g : gens)
      for (std::uint32_t s = 0; s < D; ++s) ++g[rng.below(d)];
    const MonomialIdeal a(d, std::move(gens));
    ++equigenerated_seen;
    c.require(a.equigenerated_degree() == D, "construction is not equigenerated: " + a.str());
    c.require(fpt_lp(a).fpt >= Rational(std::uint64_t(height(a)), D),
              "equigenerated bound fails on " + a.str());
  }
  c.require(equigenerated_seen >= 25, "equigenerated subset was empty");

  const std::uint32_t primes[] = {2, 3, 5};
  for (int i = 0; i < 50; ++i) {
    const std::uint32_t p = primes[i % 3];
    const std::size_t d = 1 + rng.below(3);
    const auto ring = suite_ring(p, d);
    const std::size_t mu = p >= 5 ? 1 : 1 + rng.below(2);
    const auto profile = (i % 2) ? Profile::binomial : Profile::sparse_poly;
    const auto pair = random_pair(rng, profile, ring, 2 + rng.below(3), mu);
    const std::uint64_t ord = ideal_order(pair);
    for (std::uint32_t e = 1; e <= 2; ++e) {
      const auto lvl = BracketLevel::make(PrimeChar(p), e);
      const auto rec = nu_level(pair, lvl);
      c.require(rec.nu.has_value(), "regular pair died: " + pair.describe());
      if (!rec.nu) continue;
      c.require(*rec.nu >= (lvl.q + ord - 1) / ord - 1,
                "nu lower bound fails on " + pair.describe());
      c.require(*rec.nu <= d * (lvl.q - 1) / ord,
                "nu upper bound fails on " + pair.describe());
    }
  }
}

// nu is subadditive level by level, and the polytope threshold is
// subadditive under ideal sums.
void subadditivity(Check& c) {
  Rng rng(42);
  const std::uint32_t primes[] = {2, 3, 5};
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t p = primes[i % 3];
    const std::size_t d = 1 + rng.below(3);
    const auto ring = suite_ring(p, d);
    const std::size_t mu = p >= 5 ? 1 : 1 + rng.below(2);
    const auto a = random_pair(rng, Profile::monomial, ring, 3, mu);
    const auto b =
        random_pair(rng, (i % 2) ? Profile::binomial : Profile::sparse_poly, ring, 3, mu);
    auto both = a.gens();
    for (const auto& g : b.gens()) both.push_back(g);
    const IdealPair ab(std::move(both));
    for (std::uint32_t e = 1; e <= 2; ++e) {
      const auto lvl = BracketLevel::make(PrimeChar(p), e);
      const auto na = nu_level(a, lvl);
      const auto nb = nu_level(b, lvl);
      const auto nab = nu_level(ab, lvl);
      c.require(*nab.nu <= *na.nu + *nb.nu,
                "nu subadditivity fails: " + ab.describe() + " q=" + std::to_string(lvl.q));
    }
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 1 + rng.below(3);
    const auto a = random_monomial_ideal(rng, d, 2 + rng.below(4), 2 + rng.below(2));
    const auto b = random_monomial_ideal(rng, d, 2 + rng.below(4), 2 + rng.below(2));
    c.require(fpt_lp(a).fpt + fpt_lp(b).fpt >= fpt_lp(a + b).fpt,
              "lp subadditivity fails: " + a.str() + " + " + b.str());
  }
}

// e(a) >= (d / c(a))^d for zero-dimensional monomial ideals, with equality
// exactly when the integral closure is a power of the maximal ideal.
void multiplicity_inequality(Check& c) {
  const MonomialIdeal cusp(2, {{2, 0}, {0, 3}});
  c.require(multiplicity(cusp) == 6, "e((X^2,Y^3)) != 6");
  const MonomialIdeal squares(3, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  c.require(multiplicity(squares) == 8, "e((X^2,Y^2,Z^2)) != 8");
  {
    const Rational fpt = fpt_lp(squares).fpt;
    c.require(Rational(multiplicity(squares)) * fpt * fpt * fpt == Rational(27),
              "squares miss the equality case");
    c.require(integral_closure(squares) == max_ideal(3).power(2),
              "squares closure is not m^2");
  }

  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 1 + rng.below(3);
    const std::uint32_t max_deg = d == 3 ? 2 + rng.below(3) : 2 + rng.below(5);
    const auto a =
        random_monomial_ideal(rng, d, max_deg, d + rng.below(3), /*ensure_primary=*/true);
    const Rational fpt = fpt_lp(a).fpt;
    Rational lhs(multiplicity(a));
    Rational rhs(std::uint64_t{1});
    for (std::size_t j = 0; j < d; ++j) {
      lhs = lhs * fpt;
      rhs = rhs * Rational(std::uint64_t(d));
    }
    c.require(lhs >= rhs, "multiplicity bound fails on " + a.str());

    const Rational n_exact = Rational(std::uint64_t(d)) / fpt;
    const bool closure_is_power =
        n_exact.is_integer() && n_exact.num() <= 64 &&
        integral_closure(a) == max_ideal(d).power(static_cast<std::uint32_t>(n_exact.num()));
    c.require((lhs == rhs) == closure_is_power,
              "equality characterization fails on " + a.str());
    if (lhs == rhs) {
      c.require(Rational(n_exact.num()) * fpt == Rational(std::uint64_t(d)),
                "equality case scaling fails on " + a.str());
    }
  }
}

// The searcher and the exhaustive reference implementation agree on every
// instance small enough for the reference to enumerate.
void oracle_equivalence(Check& c) {
  Rng rng(42);
  const std::uint32_t primes[] = {2, 3, 5};
  const Profile profiles[] = {Profile::monomial, Profile::binomial, Profile::sparse_poly};
  std::uint64_t instances = 0;
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t p = primes[i % 3];
    const std::size_t d = 1 + rng.below(3);
    const auto ring = suite_ring(p, d);
    const auto pair =
        random_pair(rng, profiles[i % 3], ring, 2 + rng.below(3), 1 + rng.below(3));
    for (std::uint32_t e = 1; e <= 6; ++e) {
      const auto lvl = BracketLevel::make(PrimeChar(p), e);
      if (d * (lvl.q - 1) > 64) break;
      const auto fast = nu_level(pair, lvl);
      const auto slow = oracle_nu(pair, lvl);
      ++instances;
      c.require(fast.nu == slow.nu,
                "searcher and reference disagree on " + pair.describe() +
                    " q=" + std::to_string(lvl.q));
    }
  }
  c.require(instances >= 200, "too few comparable instances");
}

// Every level sequence recorded by any suite yields a coherent interval.
void interval_coherence(Check& c) {
  std::vector<SequenceTrace> traces;
  for (Suite suite : all_suites()) {
    SuiteSpec spec;
    spec.suite = suite;
    auto report = run_suite(spec);
    c.require(report.all_passed(),
              suite_name(suite) + ": " + std::to_string(report.failure_count()) +
                  " failing cases");
    for (auto& t : report.sequences) traces.push_back(std::move(t));
  }
  const auto audit = audit_intervals(traces);
  c.require(!traces.empty() && audit.checks > 0, "no sequences were audited");
  for (const auto& v : audit.violations) c.require(false, v);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {"regular-maximal-ideal", regular_maximal_ideal},
      {"veronese-powers", veronese_powers},
      {"plane-curve-grid", plane_curve_grid},
      {"rational-double-points", rational_double_points},
      {"characteristic-two-edge", characteristic_two_edge},
      {"threshold-bounds", threshold_bounds},
      {"subadditivity", subadditivity},
      {"multiplicity-inequality", multiplicity_inequality},
      {"oracle-equivalence", oracle_equivalence},
      {"interval-coherence", interval_coherence},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].fn(check);
    } catch (const std::exception& err) {
      check.require(false, std::string("exception: ") + err.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%2zu %-26s %s  (%.2fs)\n", i + 1, criteria[i].name,
                check.ok ? "pass" : "FAIL", secs);
    if (!check.ok) {
      std::printf("   %s\n", check.detail.str().c_str());
      ++failed;
    }
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
