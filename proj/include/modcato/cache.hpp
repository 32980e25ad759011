#pragma once

// Persistent memo store. One record per file, one line per record:
//
//   <version>\t<canonical key>\t<value>\n
//
// Records are written to a temporary file and renamed into place, so a
// reader sees either nothing or a whole record.

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>

#include "modcato/rootdata.hpp"

namespace modcato::cache {

inline constexpr std::string_view kVersion = "modcato-cache-v1";

class CacheError : public Error {
 public:
  using Error::Error;
};

enum class Kind { gram, rank_p, rank_0, simple_dim, decomp_row };

inline std::string to_string(Kind k) {
  switch (k) {
    case Kind::gram: return "gram";
    case Kind::rank_p: return "rank_p";
    case Kind::rank_0: return "rank_0";
    case Kind::simple_dim: return "simple_dim";
    case Kind::decomp_row: return "decomp_row";
  }
  return "?";
}

struct CacheKey {
  Kind kind;
  CartanType system;
  std::optional<std::int64_t> p;
  std::string payload;  // canonical parameter string, built by the caller

  std::string canonical() const {
    std::string s = to_string(kind);
    s += '|';
    s += modcato::to_string(system);
    s += "|p=";
    s += p ? std::to_string(*p) : std::string("-");
    s += '|';
    s += payload;
    return s;
  }
};

/// Canonical text for a weight or root vector: coordinates joined by ','.
template <class V>
std::string coords_text(const V& v) {
  std::string s;
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Store {
 public:
  using Warn = std::function<void(const std::string&)>;

  explicit Store(std::filesystem::path dir, Warn warn = default_warn()) : dir_(std::move(dir)), warn_(std::move(warn)) {}

  /// Store configured by the MODCATO_CACHE environment variable, if set.
  static std::optional<Store> from_environment() {
    const char* dir = std::getenv("MODCATO_CACHE");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return Store(dir);
  }

  const std::filesystem::path& directory() const { return dir_; }

  std::optional<std::string> get(const CacheKey& key) const {
    const std::string canon = key.canonical();
    const auto path = record_path(canon);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.empty() || text.back() != '\n') {
      warn_("cache: corrupt record " + path.string() + " ignored");
      return std::nullopt;
    }
    const std::string_view line(text.data(), text.size() - 1);
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\n') != std::string_view::npos) {
      warn_("cache: corrupt record " + path.string() + " ignored");
      return std::nullopt;
    }
    if (line.substr(0, t1) != kVersion) return std::nullopt;
    if (line.substr(t1 + 1, t2 - t1 - 1) != canon) return std::nullopt;
    return std::string(line.substr(t2 + 1));
  }

  /// Atomic, idempotent. Throws CacheError when the store is not writable.
  void put(const CacheKey& key, const std::string& value) const {
    if (value.find_first_of("\t\n") != std::string::npos) throw InvalidArgument("cache: value contains tab or newline");
    const std::string canon = key.canonical();
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const auto path = record_path(canon);
    static std::atomic<std::uint64_t> counter{0};
    const auto tmp = path.string() + ".tmp." + std::to_string(::getpid()) + "." +
                     std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
                     std::to_string(counter++);
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw CacheError("cache: cannot write to " + dir_.string());
      out << kVersion << '\t' << canon << '\t' << value << '\n';
      out.flush();
      if (!out) {
        std::filesystem::remove(tmp, ec);
        throw CacheError("cache: write failed in " + dir_.string());
      }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      throw CacheError("cache: cannot rename record into " + dir_.string());
    }
  }

  static Warn default_warn() {
    return [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  }

 private:
  std::filesystem::path record_path(const std::string& canon) const {
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.rec", static_cast<unsigned long long>(fnv1a64(canon)));
    return dir_ / name;
  }

  std::filesystem::path dir_;
  Warn warn_;
};

/// get-or-compute through an optional store. Write failures are reported
/// once per store and otherwise ignored.
template <class Compute, class Encode, class Decode>
auto memoize(const Store* store, const CacheKey& key, Compute&& compute, Encode&& encode, Decode&& decode)
    -> decltype(compute()) {
  if (store != nullptr) {
    if (auto hit = store->get(key)) {
      if (auto value = decode(*hit)) return *value;
    }
  }
  auto value = compute();
  if (store != nullptr) {
    try {
      store->put(key, encode(value));
    } catch (const CacheError& e) {
      static std::atomic<bool> reported{false};
      if (!reported.exchange(true)) std::cerr << "warning: " << e.what() << "; continuing uncached\n";
    }
  }
  return value;
}

}  // namespace modcato::cache
