#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ramsey/bounds.hpp"

using namespace ramsey;

namespace {

std::int64_t cell(const BoundTable& t, std::uint32_t tt, std::uint32_t m) {
  auto e = t.at(tt, m);
  REQUIRE(e.has_value());
  return e->value;
}

// Parses a whitespace-separated numeric row of an emitted table by its
// leading label cell.
std::vector<std::string> row_tokens(const std::string& table, const std::string& label) {
  std::istringstream is(table);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    if (first == label) {
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      return toks;
    }
  }
  return {};
}

}  // namespace

TEST_CASE("shipped fact base carries the known values and q-data") {
  FactBase fb = FactBase::shipped();
  auto r5 = fb.fact(1, 5);
  REQUIRE(r5.has_value());
  CHECK(r5->value == 14);
  CHECK(r5->exact);
  auto r7 = fb.fact(1, 7);
  REQUIRE(r7.has_value());
  CHECK(r7->value == 34);
  CHECK_FALSE(r7->exact);

  auto q7 = fb.qdata(7, 2);
  REQUIRE(q7.has_value());
  CHECK(q7->q == 27);
  CHECK(q7->source == "paper");
  auto q6 = fb.qdata(6, 2);
  REQUIRE(q6.has_value());
  CHECK(q6->q == 27);
  CHECK(q6->source == "searched");
  CHECK_FALSE(fb.qdata(5, 2).has_value());

  auto q108 = fb.qdata(10, 8);
  REQUIRE(q108.has_value());
  CHECK(q108->q == 29929);
  CHECK(q108->at_limit);
  auto q38 = fb.qdata(3, 8);
  REQUIRE(q38.has_value());
  CHECK(q38->q == 169);
  CHECK_FALSE(q38->at_limit);
}

TEST_CASE("fact base round-trips through json and validates q-data") {
  FactBase fb = FactBase::shipped();
  FactBase fb2 = FactBase::from_json(fb.to_json());
  CHECK(fb2.to_json() == fb.to_json());
  FactBase bad;
  CHECK_THROWS_AS(bad.add_qdata({3, 2, 13, "paper", false}), std::invalid_argument);  // 13 = 1 mod 4
  CHECK_THROWS_AS(bad.add_qdata({3, 4, 33, "paper", false}), std::invalid_argument);  // 33 = 3*11
}

TEST_CASE("direct rule") {
  FactBase fb = FactBase::shipped();
  auto b = bound_direct(fb, 4, 3);
  REQUIRE(b.has_value());
  CHECK(b->value == 170);  // q(3,8) = 169
  auto b2 = bound_direct(fb, 1, 9);
  REQUIRE(b2.has_value());
  CHECK(b2->value == 84);
  CHECK_FALSE(bound_direct(fb, 1, 21).has_value());
}

TEST_CASE("mathon rule and its hypothesis guard") {
  FactBase fb = FactBase::shipped();
  auto b = bound_mathon(fb, 1, 8);
  REQUIRE(b.has_value());
  CHECK(b->value == 57);  // 2 (27 + 1) + 1
  auto b2 = bound_mathon(fb, 2, 8);
  REQUIRE(b2.has_value());
  CHECK(b2->value == 3321);  // 4 (829 + 1) + 1
  auto b3 = bound_mathon(fb, 1, 11);
  REQUIRE(b3.has_value());
  CHECK(b3->value == 169);
  // guard: t=2, m=5 means k=4 > m-2=3, no candidate even though q(3,4) exists
  CHECK_FALSE(bound_mathon(fb, 2, 5).has_value());
  CHECK_FALSE(bound_mathon(fb, 3, 4).has_value());
}

TEST_CASE("product rule composes derived cells") {
  FactBase fb = FactBase::shipped();
  BoundTable t = derive_bounds(fb, 5, 5);
  auto b = bound_product(t, 2, 5);
  REQUIRE(b.has_value());
  CHECK(b->value == 170);  // 13 * 13 + 1
  auto b5 = bound_product(t, 5, 3);
  REQUIRE(b5.has_value());
  CHECK(b5->value == 508);  // (170-1) * 3 + 1
  CHECK_FALSE(bound_product(t, 1, 5).has_value());
}

TEST_CASE("derive_bounds reproduces the published theorem rows") {
  FactBase fb = FactBase::shipped();
  BoundTable t = derive_bounds(fb, 6, 20);

  // single color row, m = 7..20
  const std::int64_t r1[] = {34, 57, 84, 108, 169, 217, 272, 401, 545, 737, 889, 1241, 1321, 1945};
  for (std::uint32_t m = 7; m <= 20; ++m) CHECK(cell(t, 1, m) == r1[m - 7]);
  CHECK(cell(t, 1, 3) == 4);
  CHECK(cell(t, 1, 4) == 8);
  CHECK(cell(t, 1, 5) == 14);
  CHECK(cell(t, 1, 6) == 28);
  CHECK(t.at(1, 3)->exact);
  CHECK_FALSE(t.at(1, 8)->exact);

  // multicolor families
  CHECK(cell(t, 2, 3) == 14);
  CHECK(cell(t, 3, 3) == 44);
  CHECK(cell(t, 4, 3) == 170);
  CHECK(cell(t, 5, 3) == 508);
  CHECK(cell(t, 6, 3) == 1522);
  CHECK(cell(t, 2, 4) == 126);
  CHECK(cell(t, 3, 4) == 876);
  CHECK(cell(t, 6, 4) == 300126);
  CHECK(cell(t, 2, 5) == 170);
  CHECK(cell(t, 6, 5) == 4826810);
  CHECK(cell(t, 2, 6) == 830);
  CHECK(cell(t, 3, 6) == 22384);
  CHECK(cell(t, 4, 6) == 604342);
  CHECK(cell(t, 5, 6) == 16317208);
  CHECK(cell(t, 6, 6) == 440564590);
  CHECK(cell(t, 2, 7) == 1090);
  CHECK(cell(t, 6, 7) == 1291467970);
  CHECK(cell(t, 2, 8) == 3321);
  CHECK(cell(t, 3, 8) == 185921);
  CHECK(cell(t, 4, 8) == 10411521);
  CHECK(cell(t, 5, 8) == 583045121);
  CHECK(cell(t, 6, 8) == 32650526721);
  CHECK(cell(t, 2, 9) == 6890);
  CHECK(cell(t, 6, 9) == 326940373370);
  CHECK(cell(t, 2, 10) == 11450);
  CHECK(cell(t, 6, 10) == 1500730351850);

  // winning rules where it matters
  CHECK(t.at(1, 8)->step.rule == "mathon");
  CHECK(t.at(1, 9)->step.rule == "direct");
  CHECK(t.at(1, 7)->step.rule == "fact");
  CHECK(t.at(2, 8)->step.rule == "mathon");
  CHECK(t.at(2, 6)->step.rule == "direct");
  CHECK(t.at(3, 6)->step.rule == "product");
}

TEST_CASE("provenance replays to the stored value everywhere") {
  FactBase fb = FactBase::shipped();
  BoundTable t = derive_bounds(fb, 6, 20);
  for (std::uint32_t tt = 1; tt <= 6; ++tt) {
    for (std::uint32_t m = 3; m <= 20; ++m) {
      auto e = t.at(tt, m);
      if (!e) continue;
      CHECK(replay(t, fb, tt, m) == e->value);
      CHECK_FALSE(t.provenance(tt, m).empty());
    }
  }
  std::string p = t.provenance_string(3, 6);
  CHECK(p.find("product") != std::string::npos);
  CHECK(p.find("829") != std::string::npos);
}

TEST_CASE("derivation is monotone under extra q-data") {
  FactBase fb = FactBase::shipped();
  BoundTable before = derive_bounds(fb, 4, 12);
  fb.add_qdata({5, 2, 11, "searched", false});
  fb.add_qdata({3, 2, 3, "searched", false});
  BoundTable after = derive_bounds(fb, 4, 12);
  for (std::uint32_t tt = 1; tt <= 4; ++tt) {
    for (std::uint32_t m = 3; m <= 12; ++m) {
      auto b = before.at(tt, m);
      auto a = after.at(tt, m);
      if (!b) continue;
      REQUIRE(a.has_value());
      CHECK(a->value >= b->value);
    }
  }
  // with q_5 = 11 the completion rule reaches 25 at m = 7, still below both
  // the direct 28 and the external fact 34
  CHECK(bound_mathon(fb, 1, 7)->value == 25);
  CHECK(after.at(1, 7)->value == 34);
  // direct q_3 = 3 gives R(3) >= 4, matching the exact value
  CHECK(bound_direct(fb, 1, 3)->value == 4);
}

TEST_CASE("flagged q-data surfaces in provenance") {
  FactBase fb = FactBase::shipped();
  BoundTable t = derive_bounds(fb, 5, 10);
  // (5,10) comes through products of unflagged cells
  CHECK_FALSE(t.at(5, 10)->uses_at_limit);
  FactBase fb2;
  fb2.add_fact({1, 3, 4, true, "x"});
  fb2.add_qdata({9, 6, 29611, "paper", true});
  auto b = bound_direct(fb2, 3, 9);
  REQUIRE(b.has_value());
  CHECK(b->uses_at_limit);
  BoundTable t2 = derive_bounds(fb2, 3, 9);
  CHECK(t2.at(3, 9)->uses_at_limit);
}

TEST_CASE("emitted table 1 matches the published row") {
  FactBase fb = FactBase::shipped();
  std::string t1 = emit_table1(fb);
  const std::vector<std::pair<std::string, std::vector<std::string>>> expect = {
      {"7", {"27", "28"}},   {"8", {"47", "57"}},    {"9", {"83", "84"}},
      {"10", {"107", "108"}}, {"11", {"107", "169"}}, {"12", {"199", "217"}},
      {"13", {"271", "272"}}, {"14", {"367", "401"}}, {"15", {"443", "545"}},
      {"16", {"619", "737"}}, {"17", {"659", "889"}}, {"18", {"971", "1241"}},
      {"19", {"1259", "1321"}}, {"20", {"1571", "1945"}}};
  for (const auto& [m, cells] : expect) {
    auto toks = row_tokens(t1, m);
    REQUIRE(toks.size() == 2);
    CHECK(toks == cells);
  }
  CHECK(t1.find("missing") == std::string::npos);
}

TEST_CASE("emitted table 3 matches the published grid at t <= 6") {
  FactBase fb = FactBase::shipped();
  std::string t3 = emit_table3(fb, 6);
  const std::vector<std::vector<std::string>> rows = {
      {"14", "44", "170", "508", "1522"},
      {"126", "876", "6126", "42876", "300126"},
      {"170", "2198", "28562", "371294", "4826810"},
      {"830", "22384", "604342", "16317208", "440564590"},
      {"1090", "35938", "1185922", "39135394", "1291467970"},
      {"3321", "185921", "10411521", "583045121", "32650526721"},
      {"6890", "571788", "47458322", "3939040644", "326940373370"},
      {"11450", "1225044", "131079602", "14025517308", "1500730351850"}};
  for (std::uint32_t m = 3; m <= 10; ++m) {
    auto toks = row_tokens(t3, std::to_string(m));
    REQUIRE(toks.size() == 5);
    CHECK(toks == rows[m - 3]);
  }
}

TEST_CASE("missing q-data renders as deficits") {
  FactBase fb;
  fb.add_fact({1, 3, 4, true, "x"});
  fb.add_qdata({8, 2, 47, "paper", false});
  std::string t1 = emit_table1(fb);
  CHECK(t1.find("?") != std::string::npos);
  CHECK(t1.find("missing q_m entries:") != std::string::npos);
  auto toks = row_tokens(t1, "8");
  REQUIRE(toks.size() == 2);
  CHECK(toks[0] == "47");
  CHECK(toks[1] == "48");  // only the direct rule applies without q_6
}

TEST_CASE("emit_tables is deterministic") {
  FactBase fb = FactBase::shipped();
  CHECK(emit_tables(fb) == emit_tables(fb));
}
