#include "cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <fpt/version.hpp>

namespace fpt::tool {

using nlohmann::json;

std::string canonical_problem(const IdealPair& pair) {
  std::ostringstream os;
  os << "v1;p=" << pair.ring()->p.value() << ";vars=";
  const auto& vars = pair.ring()->vars;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) os << ',';
    os << vars[i];
  }
  os << ";gens=";
  for (std::size_t i = 0; i < pair.gens().size(); ++i) {
    if (i) os << ';';
    os << pair.gens()[i].str();
  }
  os << ";mult=" << (pair.multiplier() ? pair.multiplier()->str() : "-");
  return os.str();
}

std::string level_digest(const std::string& canonical, std::uint32_t e) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  mix(canonical);
  mix("|e=" + std::to_string(e));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Cache::default_dir() {
  if (const char* dir = std::getenv("FPT_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::string(xdg) + "/fpt";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::string(home) + "/.cache/fpt";
  return ".fpt-cache";
}

Cache::Cache(std::string dir) {
  ::mkdir(dir.c_str(), 0755);  // best effort; nested parents must already exist
  file_ = dir + "/nu-cache.jsonl";
  std::ifstream in(file_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) continue;  // torn final line
    if (!obj.contains("key") || !obj.contains("p") || !obj.contains("e")) continue;
    Entry entry;
    entry.p = obj["p"].get<std::uint32_t>();
    entry.e = obj["e"].get<std::uint32_t>();
    if (obj.contains("nu") && !obj["nu"].is_null()) entry.nu = obj["nu"].get<std::uint64_t>();
    if (obj.contains("witness"))
      entry.witness = obj["witness"].get<std::vector<std::uint64_t>>();
    entries_[obj["key"].get<std::string>()] = std::move(entry);
  }
}

std::optional<NuRecord> Cache::lookup(const std::string& key, BracketLevel lvl) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  const Entry& entry = it->second;
  if (entry.p != lvl.p.value() || entry.e != lvl.e) return std::nullopt;
  return NuRecord{lvl, entry.nu, entry.witness};
}

void Cache::store(const std::string& key, const NuRecord& rec) {
  json obj;
  obj["key"] = key;
  obj["p"] = rec.level.p.value();
  obj["e"] = rec.level.e;
  obj["q"] = rec.level.q;
  if (rec.nu)
    obj["nu"] = *rec.nu;
  else
    obj["nu"] = nullptr;
  obj["witness"] = rec.witness;
  obj["tool"] = kVersion;
  const std::string line = obj.dump() + "\n";

  const int fd = ::open(file_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) return;  // cache is best effort; the computation already succeeded
  ::flock(fd, LOCK_EX);
  ssize_t written = 0;
  while (written < static_cast<ssize_t>(line.size())) {
    const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
    if (n <= 0) break;
    written += n;
  }
  ::flock(fd, LOCK_UN);
  ::close(fd);

  Entry entry;
  entry.p = rec.level.p.value();
  entry.e = rec.level.e;
  entry.nu = rec.nu;
  entry.witness = rec.witness;
  entries_[key] = std::move(entry);
}

}  // namespace fpt::tool
