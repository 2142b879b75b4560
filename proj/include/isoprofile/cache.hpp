#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "isoprofile/io.hpp"

namespace isoprofile {

// $ISOPROFILE_CACHE_DIR/cache.json, if the variable is set and nonempty.
std::optional<std::filesystem::path> default_cache_path();

// Profile values on disk, one entry per (fingerprint, kind, n, budget) and,
// for FV, the cycle. Every hit is re-verified against its witnesses first;
// entries that fail are evicted and reported as misses.
class ResultCache {
 public:
  // A missing file is an empty cache; an unreadable one is replaced, with a
  // message in warnings().
  explicit ResultCache(std::filesystem::path path);

  static std::string key(std::string_view fingerprint, TableKind kind, int n,
                         const Budget& budget, std::string_view subject = {});

  // `complex` is required for kinds with witnesses; `subject` for FV.
  std::optional<ProfileEntry> lookup(const std::string& key, TableKind kind,
                                     int n, const CellComplex* complex,
                                     const Chain* subject = nullptr);
  void store(const std::string& key, const ProfileEntry& entry,
             const CellComplex* complex);
  // Writes to a temporary file and renames it over the cache.
  void save();

  std::size_t size() const;
  std::size_t evictions() const { return evictions_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  nlohmann::json entries_ = nlohmann::json::object();
  std::vector<std::string> warnings_;
  std::size_t evictions_ = 0;
  bool dirty_ = false;
  mutable std::mutex mutex_;
};

// Reads an entry written by entry_to_json. Throws ParseError.
ProfileEntry entry_from_json(const nlohmann::json& j, const CellComplex* complex,
                             int cycle_dim);

// The checks a cached entry must pass: each witness filling has the stated
// volume and boundary equal to its cycle, and the witnesses account for the
// value in the way the kind requires.
bool entry_is_consistent(const ProfileEntry& entry, TableKind kind, int n,
                         const CellComplex* complex, const Chain* subject);

}  // namespace isoprofile
