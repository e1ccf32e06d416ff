#include "brauerkit/ap_cache.hpp"

#include <algorithm>
#include <fstream>
#include <random>

namespace brauerkit {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

std::pair<std::string, PointCount> parse_cache_record(const std::string& line) {
  // the curve id itself contains commas: split at the last three
  std::vector<std::size_t> commas;
  for (std::size_t i = line.size(); i-- > 0 && commas.size() < 3;) {
    if (line[i] == ',') commas.push_back(i);
  }
  if (commas.size() < 3) throw CacheCorrupted("a_p cache: malformed record '" + line + "'");
  std::string id = trim(line.substr(0, commas[2]));
  try {
    PointCount c;
    c.p = std::stoull(trim(line.substr(commas[2] + 1, commas[1] - commas[2] - 1)));
    c.order = std::stoull(trim(line.substr(commas[1] + 1, commas[0] - commas[1] - 1)));
    c.a_p = std::stol(trim(line.substr(commas[0] + 1)));
    if (static_cast<long>(c.p + 1) - static_cast<long>(c.order) != c.a_p) {
      throw CacheCorrupted("a_p cache: order and trace disagree in '" + line + "'");
    }
    return {id, c};
  } catch (const std::logic_error&) {
    throw CacheCorrupted("a_p cache: malformed record '" + line + "'");
  }
}

std::string format_cache_record(const std::string& curve_id, const PointCount& c) {
  return curve_id + ", " + std::to_string(c.p) + ", " + std::to_string(c.order) + ", " + std::to_string(c.a_p);
}

ApCache::ApCache(std::string path) : path_(std::move(path)) {}

ApCache::~ApCache() {
  try {
    flush();
  } catch (...) {
  }
}

void ApCache::load() {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  if (!std::getline(in, line)) return;
  if (trim(line) != kApCacheHeader) throw CacheCorrupted("a_p cache: unknown header '" + line + "' in " + path_);
  std::vector<std::pair<std::string, PointCount>> loaded;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    loaded.push_back(parse_cache_record(line));
  }
  // fixed seed: the same file always recounts the same records
  std::mt19937_64 rng(0x5eed);
  std::size_t sample = std::max<std::size_t>(loaded.empty() ? 0 : 1, loaded.size() / 100);
  std::vector<std::size_t> idx(loaded.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  for (std::size_t k = 0; k < sample; ++k) {
    const auto& [id, c] = loaded[idx[k]];
    PointCount fresh = count_points_mod_p(WeierstrassCurve::parse(id), c.p);
    if (fresh.order != c.order) {
      throw CacheCorrupted("a_p cache: recount mismatch for " + id + " at p = " + std::to_string(c.p));
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  recounted_ = sample;
  for (auto& [id, c] : loaded) records_[{id, c.p}] = c;
}

void ApCache::flush() {
  std::lock_guard<std::mutex> lock(mu_);
  if (path_.empty() || unflushed_.empty()) return;
  bool fresh = !std::ifstream(path_).good();
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("a_p cache: cannot write " + path_);
  if (fresh) out << kApCacheHeader << "\n";
  for (const auto& [id, c] : unflushed_) out << format_cache_record(id, c) << "\n";
  unflushed_.clear();
}

std::optional<PointCount> ApCache::find(const std::string& curve_id, std::uint64_t p) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = records_.find({curve_id, p});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void ApCache::insert(const std::string& curve_id, const PointCount& count) {
  std::lock_guard<std::mutex> lock(mu_);
  if (records_.emplace(std::make_pair(curve_id, count.p), count).second) unflushed_.emplace_back(curve_id, count);
}

std::size_t ApCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

}  // namespace brauerkit
