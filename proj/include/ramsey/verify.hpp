#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/graphs.hpp"
#include "ramsey/search.hpp"

namespace ramsey {

struct CheckReport {
  std::string name;
  std::uint32_t k = 0, q = 0;
  std::map<std::string, std::string> extra;
  bool pass = false;
  std::string counterexample;  // empty on pass; concrete and re-checkable on fail
  std::uint64_t elapsed_ms = 0;

  std::string to_json_line() const;  // JSON-lines style, kind "check"
};

/// A single arc reclassification for the verifier's self-test: the checks
/// read arcs through this override instead of the clean digraph.
struct ArcOverride {
  std::uint32_t u, v;
  EdgeClass value;  // class of u->v; v->u reads as the reverse
};

/// Structural checks on M_k(q), in order:
///   rho-sigma-automorphisms, transitivity-recipe, gamma0-cliques,
///   color-shift, disjoint-neighborhoods, paley-embedding.
/// Failures come back as reports, never exceptions.
std::vector<CheckReport> check_structure(const MathonDigraph& M,
                                         const std::optional<ArcOverride>& mutation = {});

/// Empirical evidence for the completion bound: builds M_k*(q) for `trials`
/// seeds drawn from base_seed plus the two uniform completions (all digons
/// low->high in color 1, all high->low in color k/2) and verifies that no
/// completion contains a monochromatic transitive subtournament of order
/// m+2. Requires m >= k and checks K_m(G_k(q)) = 0 first; when that count
/// is nonzero the report notes the hypothesis failed and the check is
/// vacuous.
CheckReport check_theorem(std::uint32_t k, std::uint32_t q, std::uint32_t m, std::uint32_t trials,
                          std::uint64_t base_seed, const SearchOptions& opts = {});

}  // namespace ramsey
