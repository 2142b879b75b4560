#include "isoprofile/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <numeric>

#include "isoprofile/errors.hpp"
#include "isoprofile/structure.hpp"

namespace isoprofile {

using nlohmann::json;

std::optional<std::filesystem::path> default_cache_path() {
  const char* dir = std::getenv("ISOPROFILE_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir) / "cache.json";
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  try {
    json doc = json::parse(in);
    if (!doc.is_object() || !doc.contains("entries") ||
        !doc.at("entries").is_object()) {
      throw std::runtime_error("no entries object");
    }
    entries_ = std::move(doc.at("entries"));
  } catch (const std::exception& e) {
    warnings_.push_back("cache file " + path_.string() +
                        " is corrupt and will be rebuilt (" + e.what() + ")");
    entries_ = json::object();
    dirty_ = true;
  }
}

std::string ResultCache::key(std::string_view fingerprint, TableKind kind, int n,
                             const Budget& budget, std::string_view subject) {
  std::string k(fingerprint);
  k += '|';
  k += table_kind_name(kind);
  k += '|';
  k += std::to_string(n);
  k += "|fill=" + std::to_string(budget.max_fill_volume);
  k += ",nodes=" + std::to_string(budget.max_nodes);
  if (!subject.empty()) {
    k += '|';
    k += subject;
  }
  return k;
}

std::optional<ProfileEntry> ResultCache::lookup(const std::string& key,
                                                TableKind kind, int n,
                                                const CellComplex* complex,
                                                const Chain* subject) {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  try {
    const int cycle_dim = complex ? complex->top_dim() - 1 : 0;
    ProfileEntry entry = entry_from_json(*it, complex, cycle_dim);
    if (entry_is_consistent(entry, kind, n, complex, subject)) return entry;
  } catch (const std::exception&) {
  }
  entries_.erase(it);
  ++evictions_;
  dirty_ = true;
  warnings_.push_back("evicted cache entry " + key + ": witness check failed");
  return std::nullopt;
}

void ResultCache::store(const std::string& key, const ProfileEntry& entry,
                        const CellComplex* complex) {
  json j = entry_to_json(entry, complex);
  std::lock_guard lock(mutex_);
  entries_[key] = std::move(j);
  dirty_ = true;
}

void ResultCache::save() {
  std::lock_guard lock(mutex_);
  if (!dirty_) return;
  if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  const auto tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InputError("cannot write cache file " + tmp);
    out << json{{"version", 1}, {"entries", entries_}}.dump(1) << "\n";
    if (!out) throw InputError("cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, path_);
  dirty_ = false;
}

std::size_t ResultCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

ProfileEntry entry_from_json(const json& j, const CellComplex* complex,
                             int cycle_dim) {
  try {
    ProfileEntry entry;
    entry.value = j.at("value").get<Coeff>();
    if (j.contains("partition")) entry.partition = j.at("partition").get<std::vector<int>>();
    if (j.contains("witnesses")) {
      if (!complex) throw ParseError("witnesses need a complex");
      for (const auto& w : j.at("witnesses")) {
        Chain cycle = parse_chain(w.at("cycle").get<std::string>(), *complex, cycle_dim);
        Filling filling{w.at("volume").get<Coeff>(),
                        parse_chain(w.at("filling").get<std::string>(), *complex,
                                    cycle_dim + 1)};
        entry.witnesses.emplace_back(std::move(cycle), std::move(filling));
      }
    }
    return entry;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed cache entry: ") + e.what());
  }
}

bool entry_is_consistent(const ProfileEntry& entry, TableKind kind, int n,
                         const CellComplex* complex, const Chain* subject) {
  if (entry.value < 0) return false;
  if (complex) {
    for (const auto& [cycle, filling] : entry.witnesses) {
      if (!verify_filling(cycle, filling, *complex)) return false;
    }
  }
  const auto single_witness = [&] {
    if (entry.value == 0 && entry.witnesses.empty()) return true;
    return entry.witnesses.size() == 1 &&
           entry.witnesses[0].second.volume == entry.value &&
           norm(entry.witnesses[0].first) <= n;
  };
  switch (kind) {
    case TableKind::kFV:
      if (!subject || !complex) return false;
      if (entry.witnesses.size() != 1) return false;
      return entry.witnesses[0].second.volume == entry.value &&
             chains_equal(entry.witnesses[0].first, *subject, complex->oracle());
    case TableKind::kPsi:
      if (!complex || !single_witness()) return false;
      return entry.witnesses.empty() ||
             is_connected(entry.witnesses[0].first, *complex);
    case TableKind::kFinitePhi:
      return complex && single_witness();
    case TableKind::kPhi: {
      if (!complex) return false;
      if (n == 0) return entry.value == 0;
      const int total = std::accumulate(entry.partition.begin(),
                                        entry.partition.end(), 0);
      if (total != n) return false;
      Coeff sum = 0;
      for (const auto& w : entry.witnesses) sum += w.second.volume;
      return sum == entry.value;
    }
    case TableKind::kChain2Bound:
    case TableKind::kDiskBound:
      return entry.witnesses.empty();
  }
  return false;
}

}  // namespace isoprofile
