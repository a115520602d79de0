#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ramsey/graphs.hpp"

namespace ramsey {

/// Flat word-array bitset sized at runtime; the solver's candidate sets.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::uint32_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  std::uint32_t size() const { return nbits_; }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  void set(std::uint32_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
  void reset(std::uint32_t i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  std::uint32_t count() const;
  bool any() const;

  /// this = a & b (operands must share the size).
  void assign_and(const Bitset& a, const Bitset& b);

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t w = w_[wi];
      while (w) {
        std::uint32_t bit = static_cast<std::uint32_t>(__builtin_ctzll(w));
        f(static_cast<std::uint32_t>(wi * 64 + bit));
        w &= w - 1;
      }
    }
  }

 private:
  std::uint32_t nbits_ = 0;
  std::vector<std::uint64_t> w_;
};

using GraphHandle =
    std::variant<const ColoredTournament*, const PaleyView*, const MathonDigraph*>;

enum class SearchKind : std::uint8_t { exists, count, max };
enum class CountMethod : std::uint8_t { brute, symmetric };
enum class Symmetry : std::uint8_t { automatic, none, vertex_transitive, paley_affine };

struct SearchOptions {
  int threads = 1;
  Symmetry symmetry = Symmetry::automatic;
  bool deterministic_witness = true;
  std::optional<std::chrono::milliseconds> budget;
};

struct SearchResult {
  SearchKind kind = SearchKind::exists;
  bool exists = false;
  std::uint64_t count = 0;
  std::uint32_t max_order = 0;
  std::vector<std::uint32_t> witness;  // transitive chain, dominant vertex first
  std::uint32_t witness_color = 0;     // color of the witness / winning color
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
  bool at_limit = false;  // budget expired; value is a partial lower bound

  std::uint64_t value_as_uint() const {
    switch (kind) {
      case SearchKind::exists:
        return exists ? 1 : 0;
      case SearchKind::count:
        return count;
      case SearchKind::max:
        return max_order;
    }
    return 0;
  }
};

/// The unique transitive ordering of S in the given color (all colors when
/// absent and the graph is single-colored), or nothing when S does not
/// induce a transitive subtournament. Sorts by within-S out-degree, then
/// verifies every arc.
std::optional<std::vector<std::uint32_t>> transitive_chain(GraphHandle g,
                                                           std::span<const std::uint32_t> verts,
                                                           std::optional<std::uint32_t> color);

/// Number of m-subsets inducing a transitive subtournament, color-restricted
/// when `color` is set, summed over all colors otherwise. The symmetric
/// method requires a Paley handle: it counts chains normalized to start
/// (0, omega^{color-1}) and multiplies by the affine group order q(q-1)/k.
SearchResult count_tt(GraphHandle g, std::uint32_t m, std::optional<std::uint32_t> color,
                      CountMethod method, const SearchOptions& opts = {});

SearchResult exists_tt(GraphHandle g, std::uint32_t m, std::optional<std::uint32_t> color,
                       const SearchOptions& opts = {});

SearchResult max_tt(GraphHandle g, std::optional<std::uint32_t> color,
                    const SearchOptions& opts = {});

// ---- persisted search records ----

struct CacheRecord {
  std::uint32_t k = 0, q = 0, m = 0;  // m = 0 for max searches
  std::string kind;                   // "exists" | "count" | "max"
  std::uint32_t color = 0;            // 0 = all colors
  std::uint64_t value = 0;            // exists stored as 0/1
  std::optional<std::vector<std::uint32_t>> witness;
  std::uint64_t elapsed_ms = 0;
  std::string version;
  std::string timestamp;
  bool at_limit = false;

  std::string to_json_line() const;
};

/// Append-only JSON-lines store keyed by (k, q, m, kind, color, version).
/// Lines of other kinds (e.g. verifier reports) are preserved but ignored
/// for lookups.
class SearchCache {
 public:
  SearchCache() = default;  // in-memory only
  explicit SearchCache(std::filesystem::path file);

  std::optional<CacheRecord> lookup(std::uint32_t k, std::uint32_t q, std::uint32_t m,
                                    const std::string& kind, std::uint32_t color) const;
  void append(const CacheRecord& rec);

  const std::filesystem::path& path() const { return file_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::filesystem::path file_;
  std::vector<CacheRecord> records_;
};

CacheRecord make_cache_record(std::uint32_t k, std::uint32_t q, std::uint32_t m,
                              const std::string& kind, std::uint32_t color,
                              const SearchResult& r);

// ---- scan orchestration ----

struct ScanOptions {
  bool descending = true;  // highest q first, stop at the first K_m = 0
  SearchOptions search;
  bool use_cache = true;
};

struct ScanEvaluation {
  std::uint32_t q;
  bool exists;
  bool from_cache;
  bool unknown = false;  // budget expired before the search settled
};

struct ScanResult {
  std::optional<std::uint32_t> q;  // largest admissible q with K_m(G_k(q)) = 0
  bool at_limit = false;           // q within one admissible step of q_max
  std::vector<ScanEvaluation> evaluated;
};

/// Walks admissible q <= q_max and reports the largest with no transitive
/// subtournament of order m in G_k(q), consulting and feeding the cache.
ScanResult scan(std::uint32_t k, std::uint32_t m, std::uint32_t q_max, SearchCache* cache,
                const ScanOptions& opts = {});

}  // namespace ramsey
