#include "fpt/estimator.hpp"

#include <sstream>

#include "fpt/errors.hpp"

namespace fpt {

namespace {

void require_consecutive(const std::vector<NuRecord>& records) {
  if (records.empty()) throw InternalError("empty level sequence");
  bool dead = false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].level.e != i + 1)
      throw InternalError("level sequence must run e = 1.." +
                          std::to_string(records.size()));
    if (i > 0 && records[i].level.p.value() != records[0].level.p.value())
      throw InternalError("level sequence mixes primes");
    if (dead && !records[i].not_f_pure())
      throw InternalError("finite level after a non-F-pure level");
    dead = records[i].not_f_pure();
  }
}

}  // namespace

NuSequence::NuSequence(IdealPair pair, std::vector<NuRecord> records)
    : pair_(std::move(pair)), records_(std::move(records)) {
  require_consecutive(records_);
}

bool NuSequence::all_not_f_pure() const {
  for (const auto& r : records_)
    if (!r.not_f_pure()) return false;
  return true;
}

std::uint32_t default_level_budget(PrimeChar p) {
  return p.value() <= 7 ? 3u : 2u;
}

NuSequence nu_sequence(const IdealPair& pair, std::uint32_t e_max, const NuBudget& budget,
                       const NuMemo& lookup, const NuMemoStore& store) {
  if (e_max == 0) throw InternalError("nu_sequence needs e_max >= 1");
  const std::string key = pair.describe();
  std::vector<NuRecord> records;
  records.reserve(e_max);
  for (std::uint32_t e = 1; e <= e_max; ++e) {
    std::optional<NuRecord> hit;
    if (lookup) hit = lookup(key, e);
    if (hit) {
      if (hit->level.e != e || hit->level.p.value() != pair.ring()->p.value())
        throw InternalError("memo returned a record for the wrong level");
      records.push_back(std::move(*hit));
      continue;
    }
    std::optional<NuRecord> rec;
    try {
      rec = nu_level(pair, BracketLevel::make(pair.ring()->p, e), budget);
    } catch (const ResourceLimitError& err) {
      std::ostringstream os;
      os << err.what() << " (while computing level e=" << e << " of " << key
         << "; levels 1.." << (e - 1) << " completed)";
      throw ResourceLimitError(os.str());
    }
    if (store) store(key, e, *rec);
    records.push_back(std::move(*rec));
  }
  return NuSequence(pair, std::move(records));
}

FptInterval bounds(const NuSequence& seq) {
  const std::uint64_t mu = seq.pair().mu();
  std::optional<FptInterval> out;
  for (const auto& rec : seq.records()) {
    if (rec.not_f_pure()) continue;
    const Rational q(static_cast<std::uint64_t>(rec.level.q));
    const Rational lo = Rational(*rec.nu) / q;
    const Rational hi = Rational(*rec.nu + 1 + mu) / q;
    if (!out) {
      out = FptInterval{lo, hi, rec.level.e, rec.level.e};
      continue;
    }
    if (lo > out->lower) {
      out->lower = lo;
      out->lower_level = rec.level.e;
    }
    if (hi < out->upper) {
      out->upper = hi;
      out->upper_level = rec.level.e;
    }
  }
  if (!out) throw AllLevelsNotFPureError();
  return *out;
}

std::optional<ClosedFormGuess> conjecture(const NuSequence& seq) {
  const auto& recs = seq.records();
  // deltas[i] pairs levels i+1 and i+2.
  std::vector<std::int64_t> deltas;
  const std::uint64_t p = seq.pair().ring()->p.value();
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    if (recs[i].not_f_pure() || recs[i + 1].not_f_pure()) break;
    deltas.push_back(static_cast<std::int64_t>(*recs[i + 1].nu) -
                     static_cast<std::int64_t>(p * *recs[i].nu));
  }
  if (deltas.empty()) return std::nullopt;
  std::size_t start = deltas.size() - 1;
  while (start > 0 && deltas[start - 1] == deltas.back()) --start;
  ClosedFormGuess guess;
  guess.e0 = static_cast<std::uint32_t>(start + 1);
  guess.delta = deltas.back();
  guess.confirmed_steps = static_cast<std::uint32_t>(deltas.size() - start);
  const NuRecord& base = recs[start];
  const Rational q0(static_cast<std::uint64_t>(base.level.q));
  // nu(p^e) = p^{e-e0} nu(p^{e0}) + delta (p^{e-e0}-1)/(p-1) for e >= e0,
  // so nu(p^e)/p^e -> nu(p^{e0})/p^{e0} + delta/(p^{e0}(p-1)).
  guess.limit = Rational(*base.nu) / q0 +
                Rational(guess.delta) / (q0 * Rational(p - 1));
  return guess;
}

}  // namespace fpt
