#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <fpt/errors.hpp>
#include <fpt/estimator.hpp>
#include <fpt/harness.hpp>
#include <fpt/monomial.hpp>
#include <fpt/parse.hpp>
#include <fpt/version.hpp>

#include "cache.hpp"

namespace {

using nlohmann::json;
using namespace fpt;

// 0 success; 1 failing case or internal failure; 2 bad usage or input text;
// 3 not F-pure at every computed level (a mathematical outcome, not an
// error); 4 resource budget exhausted.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kNotFPure = 3,
  kResourceLimit = 4,
};

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    out.push_back(first == std::string::npos ? std::string()
                                             : item.substr(first, last - first + 1));
  }
  return out;
}

std::string monomial_text(const Ring& ring, const Exponents& u) {
  std::string out;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += ring.vars[j];
    if (u[j] > 1) out += "^" + std::to_string(u[j]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// fpt nu
// ---------------------------------------------------------------------------

struct NuOptions {
  std::uint32_t prime = 0;
  std::string vars;
  std::string gens;
  std::string multiplier;
  std::uint32_t e = 0;  // 0: level budget chosen by the prime
  bool as_json = false;
  bool explain = false;
  bool no_cache = false;
  bool verify_cache = false;
  std::string cache_dir;
  std::uint64_t max_terms = 0;
  std::uint64_t max_visits = 0;
};

json level_json(const NuRecord& rec) {
  json level;
  level["e"] = rec.level.e;
  level["q"] = rec.level.q;
  if (rec.nu)
    level["nu"] = *rec.nu;
  else
    level["nu"] = nullptr;
  level["witness"] = rec.witness;
  return level;
}

int cmd_nu(const NuOptions& opt) {
  std::shared_ptr<const Ring> ring;
  try {
    ring = make_ring(opt.prime, split_list(opt.vars, ','));
  } catch (const std::exception& err) {
    std::fprintf(stderr, "fpt nu: --prime/--vars: %s\n", err.what());
    return kUsage;
  }

  std::vector<SparsePoly> gens;
  for (const std::string& text : split_list(opt.gens, ';')) {
    try {
      gens.push_back(parse_poly(text, ring));
    } catch (const std::exception& err) {
      std::fprintf(stderr, "fpt nu: --gens: \"%s\": %s\n", text.c_str(), err.what());
      return kUsage;
    }
  }
  std::optional<SparsePoly> multiplier;
  if (!opt.multiplier.empty()) {
    try {
      multiplier = parse_poly(opt.multiplier, ring);
    } catch (const std::exception& err) {
      std::fprintf(stderr, "fpt nu: --multiplier: %s\n", err.what());
      return kUsage;
    }
  }

  std::optional<IdealPair> pair;
  try {
    pair.emplace(std::move(gens), std::move(multiplier));
  } catch (const std::exception& err) {
    std::fprintf(stderr, "fpt nu: --gens/--multiplier: %s\n", err.what());
    return kUsage;
  }

  NuBudget budget;
  if (opt.max_terms) budget.max_terms = opt.max_terms;
  if (opt.max_visits) budget.max_visits = opt.max_visits;

  const std::string canonical = tool::canonical_problem(*pair);
  std::optional<tool::Cache> cache;
  if (!opt.no_cache)
    cache.emplace(opt.cache_dir.empty() ? tool::Cache::default_dir() : opt.cache_dir);

  std::vector<std::string> stale;
  NuMemo memo;
  NuMemoStore store;
  if (cache) {
    memo = [&](const std::string&, std::uint32_t e) -> std::optional<NuRecord> {
      const BracketLevel lvl = BracketLevel::make(ring->p, e);
      auto hit = cache->lookup(tool::level_digest(canonical, e), lvl);
      if (hit && opt.verify_cache) {
        const NuRecord fresh = nu_level(*pair, lvl, budget);
        if (fresh.nu != hit->nu || fresh.witness != hit->witness) {
          stale.push_back("e=" + std::to_string(e));
          return fresh;  // the recomputation wins
        }
      }
      return hit;
    };
    store = [&](const std::string&, std::uint32_t e, const NuRecord& rec) {
      cache->store(tool::level_digest(canonical, e), rec);
    };
  }

  const std::uint32_t e_max = opt.e ? opt.e : default_level_budget(ring->p);
  std::optional<NuSequence> seq;
  try {
    seq.emplace(nu_sequence(*pair, e_max, budget, memo, store));
  } catch (const ResourceLimitError& err) {
    std::fprintf(stderr, "fpt nu: resource limit: %s\n", err.what());
    return kResourceLimit;
  }

  std::optional<FptInterval> interval;
  if (!seq->all_not_f_pure()) interval = bounds(*seq);
  const std::optional<ClosedFormGuess> guess = conjecture(*seq);

  if (opt.as_json) {
    json out;
    out["version"] = 1;
    out["prime"] = ring->p.value();
    out["vars"] = ring->vars;
    json pair_json;
    json gens_json = json::array();
    for (const auto& g : pair->gens()) gens_json.push_back(g.str());
    pair_json["gens"] = gens_json;
    if (pair->multiplier())
      pair_json["multiplier"] = pair->multiplier()->str();
    else
      pair_json["multiplier"] = nullptr;
    out["pair"] = pair_json;
    json levels = json::array();
    for (const auto& rec : seq->records()) levels.push_back(level_json(rec));
    out["levels"] = levels;
    if (interval)
      out["bounds"] = json{{"lower", interval->lower.str()}, {"upper", interval->upper.str()}};
    else
      out["bounds"] = nullptr;
    if (guess)
      out["conjecture"] =
          json{{"limit", guess->limit.str()}, {"confirmed_steps", guess->confirmed_steps}};
    else
      out["conjecture"] = nullptr;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "pair " << pair->describe() << " over F_" << ring->p.value() << "\n";
    for (const auto& rec : seq->records()) {
      std::cout << "e=" << rec.level.e << " q=" << rec.level.q << " nu=";
      if (rec.nu)
        std::cout << *rec.nu;
      else
        std::cout << "-  (multiplier power falls inside the bracket ideal)";
      if (opt.explain && !rec.witness.empty()) {
        std::cout << " witness=(";
        for (std::size_t i = 0; i < rec.witness.size(); ++i)
          std::cout << (i ? "," : "") << rec.witness[i];
        std::cout << ")";
      }
      std::cout << "\n";
    }
    if (interval)
      std::cout << "bounds [" << interval->lower.str() << ", " << interval->upper.str() << "]\n";
    if (guess)
      std::cout << "conjecture limit=" << guess->limit.str() << " (" << guess->confirmed_steps
                << " confirmed step" << (guess->confirmed_steps == 1 ? "" : "s") << ")\n";
    if (seq->all_not_f_pure()) std::cout << "not F-pure at every computed level\n";
  }

  if (!stale.empty()) {
    std::fprintf(stderr, "fpt nu: stale cache entries at %zu level(s); recomputed values used\n",
                 stale.size());
    return kFailure;
  }
  return seq->all_not_f_pure() ? kNotFPure : kOk;
}

// ---------------------------------------------------------------------------
// fpt monomial
// ---------------------------------------------------------------------------

struct MonomialOptions {
  std::string vars;
  std::string gens;
  std::string what;
};

int cmd_monomial(const MonomialOptions& opt) {
  // The monomial operations are characteristic-free; parsing just needs a
  // prime large enough that no sensible integer coefficient vanishes.
  std::shared_ptr<const Ring> ring;
  try {
    ring = make_ring(2147483647u, split_list(opt.vars, ','));
  } catch (const std::exception& err) {
    std::fprintf(stderr, "fpt monomial: --vars: %s\n", err.what());
    return kUsage;
  }

  std::vector<Exponents> exponents;
  for (const std::string& text : split_list(opt.gens, ',')) {
    try {
      const SparsePoly g = parse_poly(text, ring);
      if (g.num_terms() != 1) {
        std::fprintf(stderr, "fpt monomial: --gens: \"%s\" is not a monomial\n", text.c_str());
        return kUsage;
      }
      const auto span = g.term_exps(0);
      exponents.emplace_back(span.begin(), span.end());
    } catch (const std::exception& err) {
      std::fprintf(stderr, "fpt monomial: --gens: \"%s\": %s\n", text.c_str(), err.what());
      return kUsage;
    }
  }

  std::optional<MonomialIdeal> ideal;
  try {
    ideal.emplace(ring->dim(), std::move(exponents));
  } catch (const std::exception& err) {
    std::fprintf(stderr, "fpt monomial: --gens: %s\n", err.what());
    return kUsage;
  }

  if (opt.what == "fpt") {
    std::cout << fpt_lp(*ideal).fpt.str() << "\n";
  } else if (opt.what == "closure") {
    const MonomialIdeal closed = integral_closure(*ideal);
    std::string out;
    for (const auto& u : closed.gens()) {
      if (!out.empty()) out += ", ";
      out += monomial_text(*ring, u);
    }
    std::cout << out << "\n";
  } else if (opt.what == "height") {
    std::cout << height(*ideal) << "\n";
  } else if (opt.what == "mult") {
    try {
      std::cout << multiplicity(*ideal) << "\n";
    } catch (const NotMPrimaryError& err) {
      // The monomial layer names coordinates x1..xd; report the user's name.
      std::string var = err.variable();
      if (var.size() > 1 && var[0] == 'x') {
        const std::size_t index = std::strtoul(var.c_str() + 1, nullptr, 10);
        if (index >= 1 && index <= ring->dim()) var = ring->vars[index - 1];
      }
      std::fprintf(stderr,
                   "fpt monomial: --what mult: ideal is not primary to the maximal ideal: "
                   "no pure power of '%s' among the generators\n",
                   var.c_str());
      return kUsage;
    }
  } else {
    std::fprintf(stderr, "fpt monomial: --what must be fpt|closure|height|mult\n");
    return kUsage;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// fpt suite
// ---------------------------------------------------------------------------

struct SuiteOptions {
  std::string name;
  std::uint64_t seed = 42;
  std::string primes;
  std::uint32_t e = 0;
  std::string golden;
  std::string golden_dir = "golden/v1";
};

int cmd_suite(const SuiteOptions& opt) {
  SuiteSpec spec;
  try {
    spec.suite = suite_from_name(opt.name);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "fpt suite: --name: %s\n", err.what());
    return kUsage;
  }
  spec.seed = opt.seed;
  spec.e_budget = opt.e;
  if (!opt.primes.empty()) {
    for (const std::string& text : split_list(opt.primes, ',')) {
      try {
        spec.primes.push_back(PrimeChar(std::stoul(text)).value());
      } catch (const std::exception&) {
        std::fprintf(stderr, "fpt suite: --primes: \"%s\" is not a prime\n", text.c_str());
        return kUsage;
      }
    }
  }
  if (!opt.golden.empty() && opt.golden != "write") {
    std::fprintf(stderr, "fpt suite: --golden accepts only \"write\"\n");
    return kUsage;
  }

  const SuiteReport report = run_suite(spec);
  const std::string transcript = report.transcript();

  if (opt.golden == "write") {
    std::error_code ec;
    std::filesystem::create_directories(opt.golden_dir, ec);
    const std::string path = opt.golden_dir + "/" + suite_name(spec.suite) + ".txt";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::fprintf(stderr, "fpt suite: cannot write %s\n", path.c_str());
      return kFailure;
    }
    out << transcript;
    std::fprintf(stderr, "wrote %s\n", path.c_str());
  }

  std::fputs(transcript.c_str(), stdout);
  std::fprintf(stderr, "suite %s: %zu cases, %zu failures\n", suite_name(spec.suite).c_str(),
               report.cases.size(), report.failure_count());
  if (report.all_passed()) return kOk;
  for (const auto& c : report.cases)
    if (!c.pass && c.id.size() >= 10 && c.id.substr(c.id.size() - 10) == ".limit-hit")
      return kResourceLimit;
  return kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact F-pure threshold calculator for ideals over prime fields"};
  app.require_subcommand(1);
  // Overrides use INI sections or dotted keys: "[nu]\nprime=7" or "nu.prime=7".
  app.set_config("--config", "", "Read key=value overrides for any flag");

  NuOptions nu_opt;
  CLI::App* nu = app.add_subcommand(
      "nu", "Per-level nu values, threshold interval and closed-form conjecture");
  nu->add_option("--prime", nu_opt.prime, "Characteristic p (prime)")->required();
  nu->add_option("--vars", nu_opt.vars, "Comma-separated variable names")->required();
  nu->add_option("--gens", nu_opt.gens, "Semicolon-separated generator polynomials")->required();
  nu->add_option("--multiplier", nu_opt.multiplier,
                 "Hypersurface multiplier f (work in the quotient by f)");
  nu->add_option("--e", nu_opt.e, "Compute levels 1..e (default: 3 for p <= 7, else 2)")->check(CLI::Range(1u, 24u));
  nu->add_flag("--json", nu_opt.as_json, "Emit the machine-readable report");
  nu->add_flag("--explain", nu_opt.explain, "Print witness exponent tuples");
  nu->add_flag("--no-cache", nu_opt.no_cache, "Skip the result cache entirely");
  nu->add_flag("--verify-cache", nu_opt.verify_cache,
               "Recompute cache hits and fail on divergence");
  nu->add_option("--cache-dir", nu_opt.cache_dir, "Cache directory (default: FPT_CACHE_DIR)");
  nu->add_option("--max-terms", nu_opt.max_terms, "Term budget override");
  nu->add_option("--max-visits", nu_opt.max_visits, "Search-node budget override");
  nu->configurable();
  nu->fallthrough();

  MonomialOptions mono_opt;
  CLI::App* mono = app.add_subcommand("monomial",
                                      "Newton-polytope threshold, closure, height, multiplicity");
  mono->add_option("--vars", mono_opt.vars, "Comma-separated variable names")->required();
  mono->add_option("--gens", mono_opt.gens, "Comma-separated monomial generators")->required();
  mono->add_option("--what", mono_opt.what, "fpt|closure|height|mult")->required();
  mono->configurable();
  mono->fallthrough();

  SuiteOptions suite_opt;
  CLI::App* suite = app.add_subcommand("suite", "Run a named verification suite");
  suite->add_option("--name", suite_opt.name, "Suite name (e.g. duval, bounds)")->required();
  suite->add_option("--seed", suite_opt.seed, "Seed for the randomized suites");
  suite->add_option("--primes", suite_opt.primes, "Comma-separated prime filter");
  suite->add_option("--e", suite_opt.e, "Level budget override");
  suite->add_option("--golden", suite_opt.golden, "\"write\" regenerates the golden transcript");
  suite->add_option("--golden-dir", suite_opt.golden_dir, "Golden transcript directory");
  suite->configurable();
  suite->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kUsage;
  }

  try {
    if (nu->parsed()) return cmd_nu(nu_opt);
    if (mono->parsed()) return cmd_monomial(mono_opt);
    if (suite->parsed()) return cmd_suite(suite_opt);
  } catch (const ResourceLimitError& err) {
    std::fprintf(stderr, "fpt: resource limit: %s\n", err.what());
    return kResourceLimit;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "fpt: %s\n", err.what());
    return kFailure;
  }
  return kUsage;
}
