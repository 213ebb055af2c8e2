#include "cherdim/cache.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cherdim::cache {

namespace fs = std::filesystem;

uint64_t fnv64(const std::string& s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Store open_store(const std::string& flag_dir, bool disabled) {
  Store st;
  if (disabled) return st;
  if (!flag_dir.empty()) {
    st.dir = flag_dir;
  } else if (const char* env = std::getenv("CHERDIM_CACHE_DIR")) {
    st.dir = env;
  } else if (const char* home = std::getenv("HOME")) {
    st.dir = std::string(home) + "/.cache/cherdim";
  }
  if (!st.dir.empty()) {
    std::error_code ec;
    fs::create_directories(st.dir, ec);
    if (ec) st.dir.clear();  // unusable cache directory: run uncached
  }
  return st;
}

static std::string path_for(const Store& st, const std::string& key) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                (unsigned long long)fnv64(std::string(kCodeVersion) + "|" + key));
  return st.dir + "/" + buf + ".json";
}

std::optional<std::string> Store::get(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(*this, key));
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Store::put(const std::string& key, const std::string& value) const {
  if (!enabled()) return;
  std::string final_path = path_for(*this, key);
  std::string tmp = final_path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;
    out << value;
  }
  std::error_code ec;
  fs::rename(tmp, final_path, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace cherdim::cache
