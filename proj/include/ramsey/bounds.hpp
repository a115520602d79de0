#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace ramsey {

struct KnownFact {
  std::uint32_t t, m;
  std::int64_t value;
  bool exact;  // exact Ramsey number vs lower bound
  std::string source;
};

struct QDataEntry {
  std::uint32_t m, k, q;  // largest verified q with K_m(G_k(q)) = 0
  std::string source;     // "paper" or "searched"
  bool at_limit;          // sits near the original search limit
};

/// Known directed Ramsey values/bounds plus the q-data the rules feed on.
class FactBase {
 public:
  static FactBase shipped();
  static FactBase load(const std::filesystem::path& path);
  static FactBase from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  void add_fact(KnownFact f);
  void add_qdata(QDataEntry e);  // rejects inadmissible (k, q)

  std::optional<KnownFact> fact(std::uint32_t t, std::uint32_t m) const;
  std::optional<QDataEntry> qdata(std::uint32_t m, std::uint32_t k) const;

  const std::vector<KnownFact>& facts() const { return facts_; }
  const std::vector<QDataEntry>& qdata_entries() const { return qdata_; }

 private:
  std::vector<KnownFact> facts_;
  std::vector<QDataEntry> qdata_;
};

/// One rule application; `inputs` names the fact, q-data entry or table
/// cells consumed, so a chain can be replayed independently.
struct RuleStep {
  std::string rule;  // "fact" | "direct" | "mathon" | "product"
  nlohmann::json inputs;
  std::int64_t value;
};

struct BoundEntry {
  std::uint32_t t = 0, m = 0;
  std::int64_t value = 0;
  bool exact = false;
  bool uses_at_limit = false;
  RuleStep step;  // winning rule; product references earlier cells
};

class BoundTable {
 public:
  std::optional<BoundEntry> at(std::uint32_t t, std::uint32_t m) const;
  void put(BoundEntry e);
  std::uint32_t t_max() const { return t_max_; }
  std::uint32_t m_max() const { return m_max_; }

  /// Flattened provenance: the entry's rule chain down to base facts.
  std::vector<RuleStep> provenance(std::uint32_t t, std::uint32_t m) const;
  std::string provenance_string(std::uint32_t t, std::uint32_t m) const;

 private:
  std::map<std::pair<std::uint32_t, std::uint32_t>, BoundEntry> cells_;
  std::uint32_t t_max_ = 0, m_max_ = 0;
};

/// R_t(m) >= q_{m,2t} + 1.
std::optional<BoundEntry> bound_direct(const FactBase& facts, std::uint32_t t, std::uint32_t m);

/// R_t(m) >= 2t (q_{m-2,2t} + 1) + 1, only under the completion-bound
/// hypothesis m-2 >= 2t.
std::optional<BoundEntry> bound_mathon(const FactBase& facts, std::uint32_t t, std::uint32_t m);

/// R_t(m) >= (R_{t-1}(m) - 1)(R_1(m) - 1) + 1 from already-derived cells.
std::optional<BoundEntry> bound_product(const BoundTable& table, std::uint32_t t, std::uint32_t m);

/// Dynamic program over t = 1..t_max, m = 3..m_max taking the best of
/// known facts and the three rules per cell.
BoundTable derive_bounds(const FactBase& facts, std::uint32_t t_max, std::uint32_t m_max);

/// Recomputes a cell's value from its recorded provenance; the audit pass
/// checks replay(t, m) == value for every cell.
std::int64_t replay(const BoundTable& table, const FactBase& facts, std::uint32_t t,
                    std::uint32_t m);

std::string emit_table1(const FactBase& facts);
std::string emit_table3(const FactBase& facts, std::uint32_t t_max = 6);
std::string emit_tables(const FactBase& facts);

}  // namespace ramsey
