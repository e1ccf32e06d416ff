#pragma once

// Append-only cache of point counts. One record per line,
//   curve_id, p, order, a_p
// after the version header. A 1% sample of the records is recounted when the
// file is loaded.

#include "brauerkit/curves.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace brauerkit {

inline constexpr const char* kApCacheHeader = "# brauerkit-ap-cache v1";

class CacheCorrupted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ApCache {
 public:
  /// An empty path keeps the cache in memory only.
  explicit ApCache(std::string path = "");
  ~ApCache();
  ApCache(const ApCache&) = delete;
  ApCache& operator=(const ApCache&) = delete;

  /// Reads the file if it exists. Throws CacheCorrupted on a malformed line or
  /// a failed recount.
  void load();
  /// Appends records added since the last flush.
  void flush();

  std::optional<PointCount> find(const std::string& curve_id, std::uint64_t p) const;
  void insert(const std::string& curve_id, const PointCount& count);

  const std::string& path() const { return path_; }
  std::size_t size() const;
  std::size_t recounted_on_load() const { return recounted_; }

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::uint64_t>, PointCount> records_;
  std::vector<std::pair<std::string, PointCount>> unflushed_;
  std::size_t recounted_ = 0;
};

/// Parses one record line; throws CacheCorrupted.
std::pair<std::string, PointCount> parse_cache_record(const std::string& line);
std::string format_cache_record(const std::string& curve_id, const PointCount& count);

}  // namespace brauerkit
