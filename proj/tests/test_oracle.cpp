#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "pqp/corpus.hpp"
#include "pqp/crosscheck.hpp"
#include "pqp/group_view.hpp"
#include "pqp/oracle.hpp"
#include "pqp/theorems.hpp"

using namespace pqp;
namespace o = pqp::oracle;

TEST(Oracle, AgreesWithEngineOnCorpus) {
  for (const FamilySpec& spec : standard_corpus()) {
    if (expected_order(spec) > 6561) continue;
    SCOPED_TRACE(spec.label());
    const PcGroup g = build(spec);
    const Tabulated<PcGroup> t(g);
    const o::CayleyTable table(g.presentation());
    EXPECT_TRUE(table.latin_square());
    const CrossCheck r = recompute_and_compare(t, table);
    EXPECT_TRUE(r.ok()) << r.diffs.front();
  }
}

TEST(Oracle, FixtureValues) {
  const PcGroup g = build(FamilySpec::paper(Family::paper_6561));
  const o::CayleyTable table(g.presentation());
  const CrossCheck r = recompute_and_compare(Tabulated<PcGroup>(g), table);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.oracle_values.at("exponent"), 27u);
  EXPECT_EQ(r.oracle_values.at("nilpotency_class"), 3u);
  EXPECT_EQ(r.oracle_values.at("min_generators"), 3u);
  EXPECT_EQ(r.oracle_values.at("center"), 27u);
  EXPECT_EQ(r.oracle_values.at("derived"), 27u);
  EXPECT_EQ(r.oracle_values.at("frattini"), 243u);
  EXPECT_EQ(r.oracle_values.at("omega_1"), 81u);
  EXPECT_EQ(r.oracle_values.at("agemo_1"), 81u);
}

TEST(Oracle, DetectsDisagreement) {
  // Same order, different groups: the first product that differs is reported.
  const Tabulated<PcGroup> ab(build(FamilySpec::abelian(3, {1, 1, 1})));
  const o::CayleyTable heis(build(FamilySpec::extraspecial(3)).presentation());
  const CrossCheck bad = recompute_and_compare(ab, heis);
  EXPECT_FALSE(bad.ok());
  EXPECT_EQ(bad.diffs.front().rfind("product ", 0), 0u);
  const o::CayleyTable same(parse_presentation("prime 3\ngen a 9\ngen b 3\n"));
  EXPECT_TRUE(recompute_and_compare(build(FamilySpec::abelian(3, {2, 1})), same).ok());
}

TEST(Oracle, FullAssociativityOnTwoGroup) {
  const o::CayleyTable table(parse_presentation(fixture_text(Family::paper_256)));
  const auto r = table.check_associativity(true);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.triples, 256ull * 256 * 256);
}

TEST(Oracle, SampledAssociativityOnLargeFixture) {
  const o::CayleyTable table(parse_presentation(fixture_text(Family::paper_6561)));
  EXPECT_TRUE(table.latin_square());
  const auto r = table.check_associativity(false, 200000, 11);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.exhaustive);
}

TEST(Oracle, InconsistentPresentationIsNotAGroup) {
  const o::CayleyTable table(parse_presentation("prime 3\ngen a 3\ngen b 3\nconj b a = b^2\n"));
  EXPECT_FALSE(table.latin_square() && table.check_associativity(true).holds);
}

TEST(Oracle, RefusesLargeOrders) {
  EXPECT_THROW(o::CayleyTable(build(FamilySpec::higman(3, 3)).presentation()), ResourceError);
}

TEST(Oracle, LyndonCountsMatchWitt) {
  for (unsigned r = 1; r <= 4; ++r)
    for (unsigned n = 1; n <= 7; ++n) EXPECT_EQ(o::lyndon_count(r, n), witt_count(r, n)) << r << "," << n;
  EXPECT_EQ(o::lyndon_count(2, 3), 2u);
  EXPECT_EQ(o::lyndon_count(3, 4), 18u);
}

TEST(Oracle, DumpRoundTrip) {
  const o::CayleyTable table(build(FamilySpec::extraspecial(3)).presentation());
  const auto path = (std::filesystem::temp_directory_path() / "pqp_oracle_dump.bin").string();
  table.dump(path);
  std::uint64_t order = 0;
  const auto raw = o::CayleyTable::load_raw(path, order);
  std::remove(path.c_str());
  ASSERT_EQ(order, 27u);
  ASSERT_EQ(raw.size(), 27u * 27u);
  for (o::Id a = 0; a < 27; ++a)
    for (o::Id b = 0; b < 27; ++b) EXPECT_EQ(raw[a * 27 + b], table.multiply(a, b));
}

TEST(Oracle, LoadRejectsForeignFiles) {
  const auto path = (std::filesystem::temp_directory_path() / "pqp_oracle_bad.bin").string();
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("NOTATABLE", f);
    std::fclose(f);
  }
  std::uint64_t order = 0;
  EXPECT_THROW(o::CayleyTable::load_raw(path, order), Error);
  std::remove(path.c_str());
}

TEST(Oracle, SubgroupCountsAgree) {
  for (const FamilySpec& spec : {FamilySpec::extraspecial(3), FamilySpec::abelian(3, {2, 1}), FamilySpec::cyclic(2, 3)}) {
    SCOPED_TRACE(spec.label());
    const PcGroup g = build(spec);
    const o::CayleyTable table(g.presentation());
    std::uint64_t engine = 0;
    enumerate_subgroups(g, [&](const Subgroup&) { ++engine; });
    EXPECT_EQ(engine, o::all_subgroups(table).size());
  }
}
