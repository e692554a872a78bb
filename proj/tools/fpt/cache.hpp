#ifndef FPT_TOOLS_CACHE_HPP
#define FPT_TOOLS_CACHE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <fpt/frobenius.hpp>

namespace fpt::tool {

/// Canonical problem text: format version, prime, variable list, generator
/// polynomials and multiplier in declaration order. Polynomial text comes
/// from the parsed form's canonical printer, so it is independent of how the
/// user spelled the input.
std::string canonical_problem(const IdealPair& pair);

/// FNV-1a 64 over the canonical text plus "|e=<level>", hex-encoded.
std::string level_digest(const std::string& canonical, std::uint32_t e);

/// Append-only result cache: one JSON object per line in a single file.
/// Writers hold an advisory flock while appending a whole line; readers
/// load everything up front and skip lines that do not parse (at worst the
/// torn final line of an interrupted writer). Entries are keyed by
/// level_digest and record the tool version that wrote them.
class Cache {
public:
  explicit Cache(std::string dir);

  /// $FPT_CACHE_DIR if set, else $XDG_CACHE_HOME/fpt, else ~/.cache/fpt.
  static std::string default_dir();

  /// A hit must match the requested level exactly; stale or foreign entries
  /// are ignored.
  std::optional<NuRecord> lookup(const std::string& key, BracketLevel lvl) const;

  void store(const std::string& key, const NuRecord& rec);

  const std::string& file() const noexcept { return file_; }

private:
  struct Entry {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::optional<std::uint64_t> nu;
    std::vector<std::uint64_t> witness;
  };

  std::string file_;
  std::map<std::string, Entry> entries_;
};

}  // namespace fpt::tool

#endif  // FPT_TOOLS_CACHE_HPP
