#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/field.hpp"

namespace ramsey {

/// Explicit edge-colored tournament: every unordered pair of distinct
/// vertices carries exactly one oriented arc in a color from 1..t.
/// arc(u,v) > 0 is the color of u->v, arc(u,v) < 0 means v->u in color
/// -arc(u,v). Intended for orders up to a few thousand vertices.
class ColoredTournament {
 public:
  ColoredTournament(std::uint32_t n, std::uint32_t colors);

  std::uint32_t order() const { return n_; }
  std::uint32_t colors() const { return t_; }

  int arc(std::uint32_t u, std::uint32_t v) const { return m_[std::size_t(u) * n_ + v]; }
  void set_arc(std::uint32_t u, std::uint32_t v, std::uint32_t color);

  bool complete() const;  // every off-diagonal pair oriented
  std::uint64_t arc_count() const { return std::uint64_t(n_) * (n_ - 1) / 2; }

  const std::string& label(std::uint32_t v) const { return labels_[v]; }
  void set_label(std::uint32_t v, std::string s) { labels_[v] = std::move(s); }

 private:
  std::uint32_t n_, t_;
  std::vector<std::int8_t> m_;
  std::vector<std::string> labels_;
};

/// Implicit k-th power Paley machinery on F_q: arc(a,b) classifies b-a,
/// so Forward(i) means a->b in color i (the graph G_{k,i}(q); color 1 is
/// G_k(q) itself, and all colors together form the tournament P_k(q)).
class PaleyView {
 public:
  explicit PaleyView(ResidueSystem rs) : rs_(std::move(rs)) {}

  const ResidueSystem& rs() const { return rs_; }
  std::uint32_t order() const { return rs_.field().order(); }
  std::uint32_t colors() const { return rs_.half(); }

  EdgeClass arc(std::uint32_t a, std::uint32_t b) const {
    return rs_.pair_class(rs_.field().sub(b, a));
  }

 private:
  ResidueSystem rs_;
};

/// Materializes P_k(q) as an explicit tournament with field-element labels.
ColoredTournament build_paley(const ResidueSystem& rs);

/// The Mathon-type colored digraph on the k(q+1) classes of
/// (F_q x F_q) \ {0} under scaling by k-th power residues. The arc between
/// [a,b] and [c,d] is classified by bc - ad; Zero pairs are digons.
///
/// Canonical class representative: scale so the first nonzero coordinate
/// (a if a != 0, else b) becomes omega^(dlog mod k). Vertex indices follow
/// ascending lexicographic order of the canonical (a, b) encodings, which
/// puts [0,1] at index 0.
class MathonDigraph {
 public:
  explicit MathonDigraph(ResidueSystem rs);

  const ResidueSystem& rs() const { return rs_; }
  std::uint32_t order() const { return n_; }
  std::uint32_t colors() const { return rs_.half(); }

  std::pair<std::uint32_t, std::uint32_t> rep(std::uint32_t v) const { return reps_[v]; }
  std::pair<std::uint32_t, std::uint32_t> canonicalize(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t class_index(std::uint32_t a, std::uint32_t b) const;

  EdgeClass arc(std::uint32_t u, std::uint32_t v) const {
    const FieldCtx& F = rs_.field();
    auto [a, b] = reps_[u];
    auto [c, d] = reps_[v];
    return rs_.pair_class(F.sub(F.mul(b, c), F.mul(a, d)));
  }

  /// Digon pairs {u,v} (both directions Zero), u < v, ascending.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& digons() const { return digons_; }

  enum class Map : std::uint8_t { rho, sigma };
  struct MapStep {
    Map kind;
    std::uint32_t s;
  };

  /// rho_s: [a,b] -> [a, b+as];  sigma_s: [a,b] -> [a+bs, b].
  std::uint32_t automorphism(Map kind, std::uint32_t s, std::uint32_t v) const;
  std::uint32_t apply(std::span<const MapStep> ops, std::uint32_t v) const;

  /// Composition of rho/sigma steps carrying u to v (vertex transitivity).
  std::vector<MapStep> transitivity_maps(std::uint32_t u, std::uint32_t v) const;

 private:
  ResidueSystem rs_;
  std::uint32_t n_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> reps_;
  std::vector<std::uint32_t> index_;  // key a*q+b -> vertex, 0xffffffff elsewhere
  std::vector<std::pair<std::uint32_t, std::uint32_t>> digons_;
};

/// ON_i(v) together with the color-preserving bijection onto P_k(q):
/// phi[j] is the field element assigned to vertices[j]. For v = [0,1] this
/// is the map [omega^{i-1}, d] -> -omega^{i-1} d; for other v the
/// transitivity maps carrying v to [0,1] are applied first.
struct PaleyEmbedding {
  std::vector<std::uint32_t> vertices;  // ON_i(v), ascending vertex index
  std::vector<std::uint32_t> phi;       // parallel array of field elements
};

PaleyEmbedding out_neighborhood_paley(const MathonDigraph& M, std::uint32_t v, std::uint32_t color);

/// Tournament completion of M_k(q): colored arcs are kept, and each digon
/// {u,v} (u < v, visited in ascending order) is replaced by one oriented
/// colored arc drawn from a SplitMix64 stream seeded with `seed`. Per draw,
/// bit 0 picks the orientation (0: u->v) and ((z>>1) mod (k/2)) + 1 the
/// color; the modulo bias is irrelevant at k/2 <= 5.
ColoredTournament complete_mathon(const MathonDigraph& M, std::uint64_t seed);

enum class DigonFill { low_to_high, high_to_low };

/// Deterministic completion: every digon oriented the same way in one color.
ColoredTournament complete_mathon_uniform(const MathonDigraph& M, DigonFill fill,
                                          std::uint32_t color);

/// Text format. Header `digraph <family> k=<k> q=<q> n=<n> [seed=<seed>]`,
/// one line `u v c` per colored arc (c in 1..k/2), digons as `u v 0` plus
/// `v u 0`, labels as trailing `# v <index> <label>` lines.
void write_graph(std::ostream& os, const ColoredTournament& g, std::string_view family,
                 std::uint32_t k, std::uint32_t q, std::optional<std::uint64_t> seed);
void write_graph(std::ostream& os, const MathonDigraph& M);

}  // namespace ramsey
