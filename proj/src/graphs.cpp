#include "ramsey/graphs.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "ramsey/splitmix.hpp"

namespace ramsey {

ColoredTournament::ColoredTournament(std::uint32_t n, std::uint32_t colors)
    : n_(n), t_(colors), m_(std::size_t(n) * n, 0), labels_(n) {
  if (colors == 0 || colors > 127) throw std::invalid_argument("color count out of range");
}

void ColoredTournament::set_arc(std::uint32_t u, std::uint32_t v, std::uint32_t color) {
  if (u == v) throw std::invalid_argument("no self-arcs");
  if (color == 0 || color > t_) throw std::invalid_argument("color out of range");
  m_[std::size_t(u) * n_ + v] = static_cast<std::int8_t>(color);
  m_[std::size_t(v) * n_ + u] = static_cast<std::int8_t>(-static_cast<int>(color));
}

bool ColoredTournament::complete() const {
  for (std::uint32_t u = 0; u < n_; ++u)
    for (std::uint32_t v = u + 1; v < n_; ++v)
      if (arc(u, v) == 0) return false;
  return true;
}

ColoredTournament build_paley(const ResidueSystem& rs) {
  const FieldCtx& F = rs.field();
  std::uint32_t q = F.order();
  ColoredTournament g(q, rs.half());
  for (std::uint32_t a = 0; a < q; ++a) {
    g.set_label(a, std::to_string(a));
    for (std::uint32_t b = 0; b < q; ++b) {
      if (a == b) continue;
      EdgeClass e = rs.pair_class(F.sub(b, a));
      if (e.is_forward()) g.set_arc(a, b, e.color());
    }
  }
  return g;
}

MathonDigraph::MathonDigraph(ResidueSystem rs) : rs_(std::move(rs)) {
  const FieldCtx& F = rs_.field();
  std::uint32_t q = F.order();
  std::uint32_t k = rs_.k();
  n_ = k * (q + 1);

  // Canonical representatives: (0, omega^r) for r < k, and (omega^r, b) for
  // r < k, b in F_q. Sorting the packed keys gives the vertex numbering.
  reps_.reserve(n_);
  for (std::uint32_t r = 0; r < k; ++r) reps_.emplace_back(0u, F.exp(r));
  for (std::uint32_t r = 0; r < k; ++r) {
    std::uint32_t a = F.exp(r);
    for (std::uint32_t b = 0; b < q; ++b) reps_.emplace_back(a, b);
  }
  std::sort(reps_.begin(), reps_.end());

  index_.assign(std::size_t(q) * q, 0xffffffffu);
  for (std::uint32_t v = 0; v < n_; ++v) {
    index_[std::size_t(reps_[v].first) * q + reps_[v].second] = v;
  }

  // Digons join distinct classes over the same projective point; group the
  // k classes of each point and take all pairs.
  std::vector<std::vector<std::uint32_t>> points(q + 1);
  for (std::uint32_t v = 0; v < n_; ++v) {
    auto [a, b] = reps_[v];
    std::uint32_t pt = (a == 0) ? q : F.mul(b, F.inv(a));
    points[pt].push_back(v);
  }
  for (auto& cls : points) {
    std::sort(cls.begin(), cls.end());
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = i + 1; j < cls.size(); ++j)
        digons_.emplace_back(cls[i], cls[j]);
  }
  std::sort(digons_.begin(), digons_.end());
}

std::pair<std::uint32_t, std::uint32_t> MathonDigraph::canonicalize(std::uint32_t a,
                                                                    std::uint32_t b) const {
  const FieldCtx& F = rs_.field();
  if (a == 0 && b == 0) throw std::invalid_argument("(0,0) is not a class representative");
  std::uint32_t lead = a != 0 ? a : b;
  std::uint32_t r = F.dlog(lead) % rs_.k();
  std::uint32_t g = F.mul(F.exp(r), F.inv(lead));
  return {F.mul(a, g), F.mul(b, g)};
}

std::uint32_t MathonDigraph::class_index(std::uint32_t a, std::uint32_t b) const {
  auto [ca, cb] = canonicalize(a, b);
  return index_[std::size_t(ca) * rs_.field().order() + cb];
}

std::uint32_t MathonDigraph::automorphism(Map kind, std::uint32_t s, std::uint32_t v) const {
  const FieldCtx& F = rs_.field();
  auto [a, b] = reps_[v];
  if (kind == Map::rho) return class_index(a, F.add(b, F.mul(a, s)));
  return class_index(F.add(a, F.mul(b, s)), b);
}

std::uint32_t MathonDigraph::apply(std::span<const MapStep> ops, std::uint32_t v) const {
  for (const auto& op : ops) v = automorphism(op.kind, op.s, v);
  return v;
}

std::vector<MathonDigraph::MapStep> MathonDigraph::transitivity_maps(std::uint32_t u,
                                                                     std::uint32_t v) const {
  const FieldCtx& F = rs_.field();
  auto [a, b] = reps_[u];
  auto [c, d] = reps_[v];
  std::vector<MapStep> ops;
  if (b == 0) {
    ops.push_back({Map::rho, 1});  // [a,0] -> [a,a]
    b = a;
  }
  if (c == 0) {
    // reach [d,d] first, then sigma_{-1} lands on [0,d]
    ops.push_back({Map::sigma, F.mul(F.sub(d, a), F.inv(b))});
    ops.push_back({Map::rho, F.mul(F.sub(d, b), F.inv(d))});
    ops.push_back({Map::sigma, F.neg(1)});
  } else {
    ops.push_back({Map::sigma, F.mul(F.sub(c, a), F.inv(b))});
    ops.push_back({Map::rho, F.mul(F.sub(d, b), F.inv(c))});
  }
  return ops;
}

PaleyEmbedding out_neighborhood_paley(const MathonDigraph& M, std::uint32_t v,
                                      std::uint32_t color) {
  const ResidueSystem& rs = M.rs();
  const FieldCtx& F = rs.field();
  if (color == 0 || color > rs.half()) {
    throw std::invalid_argument("color must lie in 1..k/2, got " + std::to_string(color));
  }
  std::uint32_t base = M.class_index(0, 1);
  auto to_base = M.transitivity_maps(v, base);

  PaleyEmbedding out;
  out.vertices.reserve(F.order());
  for (std::uint32_t u = 0; u < M.order(); ++u) {
    if (u != v && M.arc(v, u) == EdgeClass::forward(color)) out.vertices.push_back(u);
  }
  std::uint32_t wi = F.exp(color - 1);
  out.phi.reserve(out.vertices.size());
  for (std::uint32_t u : out.vertices) {
    std::uint32_t w = M.apply(to_base, u);
    auto [a, d] = M.rep(w);
    if (a != wi) throw std::logic_error("neighborhood image has unexpected representative");
    out.phi.push_back(F.neg(F.mul(wi, d)));
  }
  return out;
}

namespace {

ColoredTournament completion_base(const MathonDigraph& M) {
  std::uint32_t n = M.order();
  ColoredTournament g(n, M.rs().half());
  for (std::uint32_t u = 0; u < n; ++u) {
    auto [a, b] = M.rep(u);
    g.set_label(u, "[" + std::to_string(a) + "," + std::to_string(b) + "]");
    for (std::uint32_t v = u + 1; v < n; ++v) {
      EdgeClass e = M.arc(u, v);
      if (e.is_forward()) {
        g.set_arc(u, v, e.color());
      } else if (e.is_backward()) {
        g.set_arc(v, u, e.color());
      }
    }
  }
  return g;
}

}  // namespace

ColoredTournament complete_mathon(const MathonDigraph& M, std::uint64_t seed) {
  ColoredTournament g = completion_base(M);
  SplitMix64 stream(seed);
  std::uint32_t half = M.rs().half();
  for (auto [u, v] : M.digons()) {
    std::uint64_t z = stream.next();
    std::uint32_t color = static_cast<std::uint32_t>((z >> 1) % half) + 1;
    if (z & 1) {
      g.set_arc(v, u, color);
    } else {
      g.set_arc(u, v, color);
    }
  }
  return g;
}

ColoredTournament complete_mathon_uniform(const MathonDigraph& M, DigonFill fill,
                                          std::uint32_t color) {
  if (color == 0 || color > M.rs().half()) throw std::invalid_argument("color out of range");
  ColoredTournament g = completion_base(M);
  for (auto [u, v] : M.digons()) {
    if (fill == DigonFill::low_to_high) {
      g.set_arc(u, v, color);
    } else {
      g.set_arc(v, u, color);
    }
  }
  return g;
}

void write_graph(std::ostream& os, const ColoredTournament& g, std::string_view family,
                 std::uint32_t k, std::uint32_t q, std::optional<std::uint64_t> seed) {
  os << "digraph " << family << " k=" << k << " q=" << q << " n=" << g.order();
  if (seed) os << " seed=" << *seed;
  os << "\n";
  for (std::uint32_t u = 0; u < g.order(); ++u) {
    for (std::uint32_t v = 0; v < g.order(); ++v) {
      if (u != v && g.arc(u, v) > 0) os << u << " " << v << " " << g.arc(u, v) << "\n";
    }
  }
  for (std::uint32_t v = 0; v < g.order(); ++v) {
    if (!g.label(v).empty()) os << "# v " << v << " " << g.label(v) << "\n";
  }
}

void write_graph(std::ostream& os, const MathonDigraph& M) {
  std::uint32_t n = M.order();
  os << "digraph mathon k=" << M.rs().k() << " q=" << M.rs().field().order() << " n=" << n
     << "\n";
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (u == v) continue;
      EdgeClass e = M.arc(u, v);
      if (e.is_forward()) {
        os << u << " " << v << " " << e.color() << "\n";
      } else if (e.is_zero() && u != v) {
        os << u << " " << v << " 0\n";
      }
    }
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    auto [a, b] = M.rep(v);
    os << "# v " << v << " [" << a << "," << b << "]\n";
  }
}

}  // namespace ramsey
