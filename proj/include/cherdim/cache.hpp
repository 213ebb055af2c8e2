#ifndef CHERDIM_CACHE_HPP
#define CHERDIM_CACHE_HPP

#include <optional>
#include <string>

namespace cherdim::cache {

// Stable 64-bit content hash for cache keys (FNV-1a).
uint64_t fnv64(const std::string& s);

// Bump when an algorithm change invalidates cached results.
inline constexpr const char* kCodeVersion = "cherdim-1";

struct Store {
  std::string dir;   // empty: caching disabled
  bool enabled() const { return !dir.empty(); }

  std::optional<std::string> get(const std::string& key) const;
  // write-then-rename so concurrent writers never expose partial files
  void put(const std::string& key, const std::string& value) const;
};

// Resolution order: explicit flag, CHERDIM_CACHE_DIR, $HOME/.cache/cherdim.
Store open_store(const std::string& flag_dir, bool disabled);

}  // namespace cherdim::cache

#endif
