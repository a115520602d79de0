#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "ramsey/graphs.hpp"
#include "ramsey/splitmix.hpp"

using namespace ramsey;

TEST_CASE("splitmix64 reference stream") {
  SplitMix64 rng(42);
  CHECK(rng.next() == 0xbdd732262feb6e95ULL);
  CHECK(rng.next() == 0x28efe333b266f103ULL);
  CHECK(rng.next() == 0x47526757130f9f52ULL);
}

TEST_CASE("paley tournament on GF(7)") {
  ResidueSystem rs = ResidueSystem::build(2, 7);
  ColoredTournament g = build_paley(rs);
  CHECK(g.order() == 7);
  CHECK(g.colors() == 1);
  CHECK(g.complete());
  std::set<std::uint32_t> out0;
  for (std::uint32_t v = 1; v < 7; ++v) {
    if (g.arc(0, v) > 0) out0.insert(v);
  }
  CHECK(out0 == std::set<std::uint32_t>{1, 2, 4});
}

TEST_CASE("paley out-degrees split evenly over colors") {
  for (auto [k, q] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 11}, {4, 13}, {6, 19}}) {
    ResidueSystem rs = ResidueSystem::build(k, q);
    ColoredTournament g = build_paley(rs);
    for (std::uint32_t v = 0; v < q; ++v) {
      std::uint32_t total = 0;
      std::vector<std::uint32_t> per(rs.half() + 1, 0);
      for (std::uint32_t u = 0; u < q; ++u) {
        if (u != v && g.arc(v, u) > 0) {
          ++total;
          ++per[static_cast<std::uint32_t>(g.arc(v, u))];
        }
      }
      CHECK(total == (q - 1) / 2);
      for (std::uint32_t c = 1; c <= rs.half(); ++c) CHECK(per[c] == (q - 1) / k);
    }
  }
}

TEST_CASE("paley arc colors match the coset classifier") {
  ResidueSystem rs = ResidueSystem::build(4, 13);
  ColoredTournament g = build_paley(rs);
  CHECK(g.arc(0, 2) == 2);  // dlog(2) = 1 -> S_{4,2}
  PaleyView view(rs);
  for (std::uint32_t a = 0; a < 13; ++a) {
    for (std::uint32_t b = 0; b < 13; ++b) {
      if (a == b) continue;
      EdgeClass e = view.arc(a, b);
      if (e.is_forward()) {
        CHECK(g.arc(a, b) == static_cast<int>(e.color()));
      } else {
        CHECK(g.arc(b, a) == static_cast<int>(e.color()));
      }
    }
  }
}

TEST_CASE("implicit and explicit paley agree across sample orders") {
  for (auto [k, q] :
       std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 27}, {2, 199}, {4, 125}, {8, 169}}) {
    ResidueSystem rs = ResidueSystem::build(k, q);
    PaleyView view(rs);
    ColoredTournament g = build_paley(rs);
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = a + 1; b < q; ++b) {
        EdgeClass e = view.arc(a, b);
        if (e.is_forward()) {
          CHECK(g.arc(a, b) == static_cast<int>(e.color()));
        } else {
          CHECK(g.arc(b, a) == static_cast<int>(e.color()));
        }
      }
    }
  }
}

TEST_CASE("mathon digraph vertex set and canonicalization") {
  MathonDigraph M(ResidueSystem::build(2, 7));
  CHECK(M.order() == 16);
  CHECK(M.rep(0) == std::pair<std::uint32_t, std::uint32_t>{0, 1});
  CHECK(M.canonicalize(6, 1) == std::pair<std::uint32_t, std::uint32_t>{3, 4});
  // scaling by any k-th power residue lands in the same class
  const FieldCtx& F = M.rs().field();
  for (std::uint32_t v = 0; v < M.order(); ++v) {
    auto [a, b] = M.rep(v);
    std::uint32_t g = F.exp(2);  // omega^2 is a square
    CHECK(M.class_index(F.mul(a, g), F.mul(b, g)) == v);
  }

  MathonDigraph M4(ResidueSystem::build(4, 13));
  CHECK(M4.order() == 56);
}

TEST_CASE("mathon digon structure") {
  MathonDigraph M(ResidueSystem::build(2, 7));
  CHECK(M.digons().size() == 8);  // (q+1) k(k-1)/2
  std::vector<std::pair<std::uint32_t, std::uint32_t>> expected{
      {0, 1}, {2, 9}, {3, 12}, {4, 15}, {5, 11}, {6, 14}, {7, 10}, {8, 13}};
  CHECK(M.digons() == expected);
  for (auto [u, v] : M.digons()) {
    CHECK(M.arc(u, v).is_zero());
    CHECK(M.arc(v, u).is_zero());
  }
  MathonDigraph M4(ResidueSystem::build(4, 13));
  CHECK(M4.digons().size() == 84);
}

TEST_CASE("mathon degree profile") {
  for (auto [k, q] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 7}, {4, 13}, {8, 9}}) {
    MathonDigraph M(ResidueSystem::build(k, q));
    std::uint32_t n = M.order();
    for (std::uint32_t v = 0; v < n; ++v) {
      std::uint32_t zero = 0;
      std::vector<std::uint32_t> out(M.rs().half() + 1, 0), in(M.rs().half() + 1, 0);
      for (std::uint32_t u = 0; u < n; ++u) {
        if (u == v) continue;
        EdgeClass e = M.arc(v, u);
        if (e.is_zero()) {
          ++zero;
        } else if (e.is_forward()) {
          ++out[e.color()];
        } else {
          ++in[e.color()];
        }
      }
      CHECK(zero == k - 1);
      for (std::uint32_t c = 1; c <= M.rs().half(); ++c) {
        CHECK(out[c] == q);
        CHECK(in[c] == q);
      }
    }
  }
}

TEST_CASE("rho and sigma are arc-preserving automorphisms") {
  MathonDigraph M(ResidueSystem::build(2, 7));
  CHECK(M.automorphism(MathonDigraph::Map::rho, 0, 5) == 5);
  CHECK(M.automorphism(MathonDigraph::Map::sigma, 0, 5) == 5);
  // rho_1([1,0]) = [1,1]
  std::uint32_t v10 = M.class_index(1, 0);
  CHECK(M.automorphism(MathonDigraph::Map::rho, 1, v10) == M.class_index(1, 1));
  for (std::uint32_t s = 0; s < 7; ++s) {
    for (std::uint32_t u = 0; u < 16; ++u) {
      for (std::uint32_t v = 0; v < 16; ++v) {
        if (u == v) continue;
        std::uint32_t ru = M.automorphism(MathonDigraph::Map::rho, s, u);
        std::uint32_t rv = M.automorphism(MathonDigraph::Map::rho, s, v);
        CHECK(M.arc(u, v) == M.arc(ru, rv));
      }
    }
  }
}

TEST_CASE("transitivity maps carry any vertex to any other") {
  MathonDigraph M(ResidueSystem::build(4, 5));
  for (std::uint32_t u = 0; u < M.order(); ++u) {
    for (std::uint32_t v = 0; v < M.order(); ++v) {
      auto ops = M.transitivity_maps(u, v);
      CHECK(M.apply(ops, u) == v);
    }
  }
}

TEST_CASE("color shift relabeling maps color i onto color i+1") {
  MathonDigraph M(ResidueSystem::build(4, 13));
  const FieldCtx& F = M.rs().field();
  for (std::uint32_t u = 0; u < M.order(); ++u) {
    auto [a, b] = M.rep(u);
    std::uint32_t lu = M.class_index(F.mul(F.omega(), a), b);
    for (std::uint32_t v = 0; v < M.order(); ++v) {
      if (u == v) continue;
      EdgeClass e = M.arc(u, v);
      if (e != EdgeClass::forward(1)) continue;
      auto [c, d] = M.rep(v);
      std::uint32_t lv = M.class_index(F.mul(F.omega(), c), d);
      CHECK(M.arc(lu, lv) == EdgeClass::forward(2));
    }
  }
}

TEST_CASE("out-neighborhoods embed into the paley tournament") {
  for (auto [k, q] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 7}, {4, 13}}) {
    MathonDigraph M(ResidueSystem::build(k, q));
    PaleyView P(M.rs());
    for (std::uint32_t v : {0u, 3u, M.order() - 1}) {
      for (std::uint32_t i = 1; i <= M.rs().half(); ++i) {
        PaleyEmbedding emb = out_neighborhood_paley(M, v, i);
        REQUIRE(emb.vertices.size() == q);
        std::set<std::uint32_t> img(emb.phi.begin(), emb.phi.end());
        CHECK(img.size() == q);  // bijection onto F_q
        for (std::size_t x = 0; x < emb.vertices.size(); ++x) {
          for (std::size_t y = 0; y < emb.vertices.size(); ++y) {
            if (x == y) continue;
            CHECK(M.arc(emb.vertices[x], emb.vertices[y]) == P.arc(emb.phi[x], emb.phi[y]));
          }
        }
      }
    }
  }
}

TEST_CASE("out_neighborhood_paley rejects bad colors") {
  MathonDigraph M(ResidueSystem::build(2, 7));
  CHECK_THROWS_AS(out_neighborhood_paley(M, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(out_neighborhood_paley(M, 0, 2), std::invalid_argument);
}

TEST_CASE("seeded completion is deterministic and only touches digons") {
  MathonDigraph M(ResidueSystem::build(4, 13));
  ColoredTournament a = complete_mathon(M, 123);
  ColoredTournament b = complete_mathon(M, 123);
  ColoredTournament c = complete_mathon(M, 124);
  CHECK(a.complete());
  std::uint32_t n = M.order();
  std::uint32_t digon_diffs = 0;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      CHECK(a.arc(u, v) == b.arc(u, v));
      if (M.arc(u, v).is_zero()) {
        if (a.arc(u, v) != c.arc(u, v)) ++digon_diffs;
      } else {
        // non-digon arcs never depend on the seed
        CHECK(a.arc(u, v) == c.arc(u, v));
        EdgeClass e = M.arc(u, v);
        int want = e.is_forward() ? static_cast<int>(e.color()) : -static_cast<int>(e.color());
        CHECK(a.arc(u, v) == want);
      }
    }
  }
  CHECK(digon_diffs > 0);
}

TEST_CASE("completion draws follow the documented stream") {
  // frozen from the stream definition: seed 1, digons of M_2(7) in order
  MathonDigraph M(ResidueSystem::build(2, 7));
  ColoredTournament g = complete_mathon(M, 1);
  std::vector<std::tuple<std::uint32_t, std::uint32_t, int>> expected{
      {1, 0, 1}, {9, 2, 1}, {3, 12, 1}, {15, 4, 1},
      {11, 5, 1}, {6, 14, 1}, {10, 7, 1}, {13, 8, 1}};
  for (auto [u, v, c] : expected) CHECK(g.arc(u, v) == c);
  CHECK(g.arc_count() == 120);
}

TEST_CASE("uniform completions orient every digon one way") {
  MathonDigraph M(ResidueSystem::build(4, 13));
  ColoredTournament lo = complete_mathon_uniform(M, DigonFill::low_to_high, 1);
  ColoredTournament hi = complete_mathon_uniform(M, DigonFill::high_to_low, 2);
  for (auto [u, v] : M.digons()) {
    CHECK(lo.arc(u, v) == 1);
    CHECK(hi.arc(v, u) == 2);
  }
}

TEST_CASE("graph text format") {
  MathonDigraph M(ResidueSystem::build(2, 7));
  std::ostringstream os;
  write_graph(os, M);
  std::string text = os.str();
  CHECK(text.rfind("digraph mathon k=2 q=7 n=16\n", 0) == 0);
  // digons appear in both directions
  CHECK(text.find("\n0 1 0\n") != std::string::npos);
  CHECK(text.find("\n1 0 0\n") != std::string::npos);
  CHECK(text.find("# v 0 [0,1]\n") != std::string::npos);

  ResidueSystem rs = ResidueSystem::build(2, 7);
  ColoredTournament p = build_paley(rs);
  std::ostringstream os2;
  write_graph(os2, p, "paley", 2, 7, std::nullopt);
  CHECK(os2.str().rfind("digraph paley k=2 q=7 n=7\n", 0) == 0);
  CHECK(os2.str().find("0 1 1\n") != std::string::npos);
}
