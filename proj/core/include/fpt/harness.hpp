#ifndef FPT_HARNESS_HPP
#define FPT_HARNESS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpt/estimator.hpp"
#include "fpt/monomial.hpp"

namespace fpt {

/// Named verification suites. Each binds computed values to the reference
/// tables and inequalities it checks and is deterministic under its seed.
enum class Suite {
  duval,            // rational double point grid: level formulas and limits
  bounds,           // order/height bounds on random ideals, interval sanity
  hypersurface_ab,  // f = X^a + Y^b level values over a prime grid
  monomial_laws,    // closure/power/sum laws of the Newton-polytope threshold
  multiplicity,     // multiplicity inequality and its equality case
  summation,        // nu and threshold subadditivity under ideal sums
  threshold_edge,   // (X^2,Y^2,Z^2) vs its closure at p = 2, t = 3/2
};

/// Suite named on the command line: "duval", "bounds", "hypersurface-ab",
/// "monomial-laws", "multiplicity", "summation", "threshold-edge".
Suite suite_from_name(const std::string& name);
std::string suite_name(Suite suite);
std::vector<Suite> all_suites();

struct SuiteSpec {
  Suite suite;
  /// Prime filter; empty keeps each suite's built-in grid.
  std::vector<std::uint32_t> primes;
  /// Cap on e per level sequence; 0 applies default_level_budget per prime.
  std::uint32_t e_budget = 0;
  std::uint64_t seed = 42;
};

/// Where an expected value comes from: stated by the reference material this
/// suite verifies, forced by an identity/inequality that holds by
/// construction, or reproduced by the independent brute-force oracle.
enum class Tag { reference, identity, oracle };

std::string tag_name(Tag tag);

struct CaseRecord {
  std::string id;
  std::string inputs;
  std::string expected;
  std::string computed;
  Tag tag;
  bool pass;
  double ms;  // wall time; not part of the transcript line
};

/// One nu-sequence computed while a suite ran, kept so intervals can be
/// audited across everything a run touched.
struct SequenceTrace {
  std::string origin;  // case id family that produced it
  bool regular_ambient;
  std::vector<NuRecord> records;
  std::uint64_t mu;
  /// Newton-polytope threshold when the ideal is monomial.
  std::optional<Rational> lp_value;
};

struct SuiteReport {
  SuiteSpec spec;
  std::vector<CaseRecord> cases;
  std::vector<SequenceTrace> sequences;

  bool all_passed() const;
  std::size_t failure_count() const;

  /// One line per case: suite|id|inputs|expected|computed|tag|pass with
  /// pass rendered as "pass"/"FAIL". Byte-identical across runs; fields are
  /// sanitized so '|' cannot appear inside them.
  std::string transcript() const;
};

SuiteReport run_suite(const SuiteSpec& spec);

/// Interval-coherence audit over recorded sequences: L <= U where defined;
/// nu(p^{e+1}) >= p nu(p^e) without a multiplier; the envelope
/// (nu+1+mu)/p^e never increases; the LP threshold lies in [L, U] for
/// monomial ideals. Sequences with no finite level only count the envelope.
struct CoherenceAudit {
  std::uint64_t checks = 0;
  std::vector<std::string> violations;
};

CoherenceAudit audit_intervals(const std::vector<SequenceTrace>& traces);

/// splitmix64. Tiny, seedable and bit-stable everywhere, which standard
/// library distributions are not; every random artifact derives from this.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform-ish value in [0, n); the modulo bias is irrelevant here.
  std::uint64_t below(std::uint64_t n);

  /// Uniform-ish value in [lo, hi] inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi);

private:
  std::uint64_t state_;
};

/// Generator shapes for random inputs.
enum class Profile { monomial, binomial, sparse_poly };

/// Random minimal antichain: mu draws from the box [0, max_deg]^d (zero
/// vector excluded), normalized; duplicates or dominated draws may shrink
/// the generator count. With ensure_primary, pure powers of every variable
/// are included first.
MonomialIdeal random_monomial_ideal(Rng& rng, std::size_t d, std::uint32_t max_deg,
                                    std::size_t mu, bool ensure_primary = false);

/// Random nonzero polynomial with zero constant term: `terms` draws of
/// monomials with total degree in [1, max_deg], coefficients in [1, p-1].
/// Resamples degenerate draws, so the result has at least one term.
SparsePoly random_polynomial(Rng& rng, const std::shared_ptr<const Ring>& ring,
                             std::uint32_t max_deg, std::size_t terms);

/// Random regular-ambient pair (no multiplier) with mu generators of the
/// given profile: monomials, two-term, or up-to-four-term polynomials.
IdealPair random_pair(Rng& rng, Profile profile, const std::shared_ptr<const Ring>& ring,
                      std::uint32_t max_deg, std::size_t mu);

/// The generators of a monomial ideal as polynomials in `ring`.
std::vector<SparsePoly> monomial_generators(const MonomialIdeal& a,
                                            const std::shared_ptr<const Ring>& ring);

/// Rings F_p[X], F_p[X,Y], F_p[X,Y,Z] used throughout the suites.
std::shared_ptr<const Ring> suite_ring(std::uint32_t p, std::size_t d);

}  // namespace fpt

#endif  // FPT_HARNESS_HPP
