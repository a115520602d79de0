#include <chrono>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>

#include "ramsey/search.hpp"
#include "ramsey/version.hpp"

namespace ramsey {

namespace {

using nlohmann::json;

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json record_json(const CacheRecord& r) {
  json j;
  j["k"] = r.k;
  j["q"] = r.q;
  j["m"] = r.m;
  j["kind"] = r.kind;
  j["color"] = r.color;
  if (r.kind == "exists") {
    j["value"] = r.value != 0;
  } else {
    j["value"] = r.value;
  }
  if (r.witness) {
    j["witness"] = *r.witness;
  } else {
    j["witness"] = nullptr;
  }
  j["elapsed_ms"] = r.elapsed_ms;
  j["version"] = r.version;
  j["timestamp"] = r.timestamp;
  j["at_limit"] = r.at_limit;
  return j;
}

std::optional<CacheRecord> parse_record(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (!j.contains("kind") || !j["kind"].is_string()) return std::nullopt;
  std::string kind = j["kind"];
  if (kind != "exists" && kind != "count" && kind != "max") return std::nullopt;
  CacheRecord r;
  r.kind = kind;
  r.k = j.value("k", 0u);
  r.q = j.value("q", 0u);
  r.m = j.value("m", 0u);
  r.color = j.value("color", 0u);
  if (j.contains("value")) {
    if (j["value"].is_boolean()) {
      r.value = j["value"].get<bool>() ? 1 : 0;
    } else if (j["value"].is_number()) {
      r.value = j["value"].get<std::uint64_t>();
    }
  }
  if (j.contains("witness") && j["witness"].is_array()) {
    r.witness = j["witness"].get<std::vector<std::uint32_t>>();
  }
  r.elapsed_ms = j.value("elapsed_ms", std::uint64_t{0});
  r.version = j.value("version", "");
  r.timestamp = j.value("timestamp", "");
  r.at_limit = j.value("at_limit", false);
  return r;
}

}  // namespace

std::string CacheRecord::to_json_line() const { return record_json(*this).dump(); }

SearchCache::SearchCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (auto r = parse_record(line)) records_.push_back(std::move(*r));
  }
}

std::optional<CacheRecord> SearchCache::lookup(std::uint32_t k, std::uint32_t q, std::uint32_t m,
                                               const std::string& kind,
                                               std::uint32_t color) const {
  // scan backwards so the newest record for a key wins
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
    if (it->k == k && it->q == q && it->m == m && it->kind == kind && it->color == color &&
        it->version == kVersion) {
      return *it;
    }
  }
  return std::nullopt;
}

void SearchCache::append(const CacheRecord& rec) {
  records_.push_back(rec);
  if (file_.empty()) return;
  if (file_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(file_.parent_path(), ec);
  }
  std::ofstream out(file_, std::ios::app);
  out << rec.to_json_line() << "\n";
}

CacheRecord make_cache_record(std::uint32_t k, std::uint32_t q, std::uint32_t m,
                              const std::string& kind, std::uint32_t color,
                              const SearchResult& r) {
  CacheRecord rec;
  rec.k = k;
  rec.q = q;
  rec.m = m;
  rec.kind = kind;
  rec.color = color;
  rec.value = r.value_as_uint();
  if (!r.witness.empty()) rec.witness = r.witness;
  rec.elapsed_ms = static_cast<std::uint64_t>(r.elapsed.count());
  rec.version = kVersion;
  rec.timestamp = utc_timestamp();
  rec.at_limit = r.at_limit;
  return rec;
}

}  // namespace ramsey
