#include <gtest/gtest.h>

#include <string>

#include "pqp/corpus.hpp"
#include "pqp/group_view.hpp"
#include "pqp/predicates.hpp"
#include "pqp/subgroup.hpp"

using namespace pqp;

namespace {

using View = Tabulated<PcGroup>;

struct Fixture {
  explicit Fixture(const FamilySpec& s) : g(build(s)), t(g), all(whole_group(t)) {}
  ElemId id(const std::string& w) const { return g.encode(g.normalize(parse_word(g.presentation(), w))); }
  PcGroup g;
  View t;
  Subgroup all;
};

const Fixture& large() {
  static const Fixture f(FamilySpec::paper(Family::paper_6561));
  return f;
}
const Fixture& medium() {
  static const Fixture f(FamilySpec::paper(Family::paper_729));
  return f;
}
const Fixture& two_group() {
  static const Fixture f(FamilySpec::paper(Family::paper_256));
  return f;
}

ElemId witness(const Verdict& v, const std::string& label) {
  for (const auto& [l, x] : v.witness)
    if (l == label) return x;
  ADD_FAILURE() << "no witness labelled " << label;
  return 0;
}

} // namespace

TEST(Abelian, AllPropertiesHold) {
  for (const FamilySpec& spec : standard_corpus()) {
    if (spec.family != Family::abelian && spec.family != Family::cyclic) continue;
    Fixture f(spec);
    SCOPED_TRACE(spec.label());
    EXPECT_TRUE(is_abelian(f.t, f.all).holds);
    EXPECT_TRUE(is_powerful(f.t, f.all).holds);
    EXPECT_TRUE(is_potent(f.t, f.all).holds);
    EXPECT_TRUE(is_regular(f.t, f.all).holds);
    EXPECT_TRUE(is_strongly_powerful(f.t, f.all).holds);
    if (f.t.prime() != 2) EXPECT_TRUE(is_quasi_powerful(f.t).holds);
    for (const auto& row : regular_power_structure(f.t, f.all)) {
      EXPECT_TRUE(row.powers.holds && row.omega.holds && row.index.holds) << "i = " << row.i;
    }
  }
}

TEST(LargeFixture, NotPowerfulWitnessB) {
  const Fixture& f = large();
  const Verdict v = is_powerful(f.t, f.all);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(witness(v, "commutator outside the power subgroup"), f.id("b"));
  EXPECT_FALSE(agemo(f.t, f.all, 1).contains(f.id("b")));
}

TEST(LargeFixture, NotPotent) {
  const Fixture& f = large();
  const Verdict v = is_potent(f.t, f.all);
  EXPECT_FALSE(v.holds);
  ASSERT_FALSE(v.witness.empty());
  const ElemId x = v.witness.front().second;
  EXPECT_TRUE(gamma(f.t, f.all, 2).contains(x));
  EXPECT_FALSE(agemo(f.t, f.all, 1).contains(x));
}

TEST(LargeFixture, QuasiPowerfulAndCentralQuotient) {
  const Fixture& f = large();
  EXPECT_TRUE(is_quasi_powerful(f.t).holds);
  EXPECT_TRUE(centre_by_powerful(f.t).holds);
}

TEST(LargeFixture, NotRegularAtListedPair) {
  const Fixture& f = large();
  const ElemId x = f.id("a^18 c^18 d"), y = f.id("c");
  const ElemId p = 3;
  const ElemId defect =
      f.t.multiply(f.t.inverse(power(f.t, f.t.multiply(x, y), p)), f.t.multiply(power(f.t, x, p), power(f.t, y, p)));
  const Subgroup t = closure(f.t, {x, y});
  EXPECT_FALSE(agemo(f.t, derived_subgroup(f.t, t), 1).contains(defect));

  PairSweep only{0, 0, 0, 1, {{x, y}}};
  const Verdict v = is_regular(f.t, f.all, only);
  EXPECT_FALSE(v.holds);
  EXPECT_FALSE(v.exhaustive);
  EXPECT_EQ(witness(v, "x"), x);
  EXPECT_EQ(witness(v, "y"), y);
  EXPECT_EQ(witness(v, "(xy)^-p x^p y^p"), defect);
}

TEST(LargeFixture, SampledRegularityFails) {
  const Fixture& f = large();
  PairSweep sweep;
  sweep.sample = 10000;
  sweep.seed = 0;
  const Verdict v = is_regular(f.t, f.all, sweep);
  EXPECT_FALSE(v.exhaustive);
  EXPECT_FALSE(v.holds);
  const ElemId x = witness(v, "x"), y = witness(v, "y");
  const Subgroup t = closure(f.t, {x, y});
  EXPECT_FALSE(agemo(f.t, derived_subgroup(f.t, t), 1).contains(witness(v, "(xy)^-p x^p y^p")));
}

TEST(LargeFixture, PropertyReport) {
  const Fixture& f = large();
  PairSweep sweep;
  sweep.sample = 2000;
  const PropertyReport r = property_report(f.t, sweep);
  EXPECT_EQ(r.order, 6561u);
  EXPECT_EQ(r.prime, 3u);
  EXPECT_EQ(r.exponent, 27u);
  EXPECT_EQ(r.nilpotency_class, 3u);
  EXPECT_EQ(r.nilpotency_class, lower_central_series(f.t, f.all).size() - 1);
  EXPECT_EQ(r.min_generators, 3u);
  EXPECT_FALSE(r.properties.at("abelian").holds);
  EXPECT_FALSE(r.properties.at("powerful").holds);
  EXPECT_FALSE(r.properties.at("potent").holds);
  EXPECT_FALSE(r.properties.at("regular").holds);
  EXPECT_FALSE(r.properties.at("strongly_powerful").holds);
  EXPECT_TRUE(r.properties.at("quasi_powerful").holds);
  EXPECT_EQ(r.properties.count("centre_by_powerful"), 0u);
}

TEST(LargeFixture, RegularPowerStructureHolds) {
  const Fixture& f = large();
  const auto rows = regular_power_structure(f.t, f.all);
  ASSERT_EQ(rows.size(), 3u);
  const std::uint64_t powers[] = {81, 9, 1};
  const std::uint64_t omegas[] = {81, 729, 6561};
  for (const auto& row : rows) {
    SCOPED_TRACE(row.i);
    EXPECT_TRUE(row.powers.holds);
    EXPECT_TRUE(row.omega.holds);
    EXPECT_TRUE(row.index.holds);
    EXPECT_EQ(row.power_set_size, powers[row.i - 1]);
    EXPECT_EQ(row.agemo_order, powers[row.i - 1]);
    EXPECT_EQ(row.omega_order, omegas[row.i - 1]);
    EXPECT_EQ(row.bounded_set_size, omegas[row.i - 1]);
  }
}

TEST(MediumFixture, AgemoNotPowerfullyEmbedded) {
  const Fixture& f = medium();
  const Subgroup g3 = agemo(f.t, f.all, 1);
  EXPECT_TRUE(is_powerful(f.t, g3).holds);
  EXPECT_TRUE(agemo(f.t, f.all, 2).is_trivial());
  const Verdict v = is_powerfully_embedded(f.t, g3, f.all);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(witness(v, "x"), f.id("a^3"));
  EXPECT_EQ(witness(v, "g"), f.id("c"));
  EXPECT_EQ(witness(v, "[x,g]"), f.id("b^3"));
}

TEST(MediumFixture, FullRegularSweep) {
  const Fixture& f = medium();
  const Verdict v = is_regular(f.t, f.all);
  EXPECT_TRUE(v.exhaustive);
  EXPECT_EQ(v.checked, 729u * 729u);
  EXPECT_TRUE(v.holds);
}

TEST(PowerfullyEmbedded, TrivialAndPowerCentre) {
  const Fixture& f = large();
  EXPECT_TRUE(is_powerfully_embedded(f.t, trivial_subgroup(f.t), f.all).holds);
  EXPECT_TRUE(is_powerfully_embedded(f.t, power_center_product(f.t, f.all), f.all).holds);
  EXPECT_THROW(is_powerfully_embedded(f.t, closure(f.t, {f.id("a")}), f.all), InvalidArgument);
}

TEST(TwoGroup, QuasiPowerfulRefused) {
  const Fixture& f = two_group();
  EXPECT_THROW(is_quasi_powerful(f.t), UnsupportedDefinition);
  EXPECT_TRUE(centre_by_powerful(f.t).holds);
  const PropertyReport r = property_report(f.t);
  EXPECT_EQ(r.properties.count("quasi_powerful"), 0u);
  EXPECT_TRUE(r.properties.at("centre_by_powerful").holds);
  EXPECT_EQ(r.nilpotency_class, 2u);
  EXPECT_EQ(r.min_generators, 4u);
  EXPECT_EQ(r.exponent, 8u);
}

TEST(TwoGroup, PowerStructureFailsAtFirstLevel) {
  const Fixture& f = two_group();
  const auto rows = regular_power_structure(f.t, f.all);
  ASSERT_FALSE(rows.empty());
  const auto& row = rows.front();
  EXPECT_EQ(row.i, 1u);
  EXPECT_FALSE(row.powers.holds);
  EXPECT_FALSE(row.omega.holds);
  EXPECT_FALSE(row.index.holds);
  EXPECT_EQ(row.power_set_size, 8u);
  EXPECT_EQ(row.agemo_order, 16u);
  EXPECT_EQ(row.omega_order, 64u);
  EXPECT_EQ(row.omega_exponent, 4u);
  EXPECT_EQ(f.t.order() / row.agemo_order, 16u);
  const ElemId b2 = f.id("b^2");
  EXPECT_TRUE(omega(f.t, f.all, 1).contains(b2));
  EXPECT_EQ(element_order(f.t, b2), 4u);
}

TEST(Invariants, PotentMatchesPowerfulForSmallPrimes) {
  for (const FamilySpec& spec : standard_corpus()) {
    if (expected_order(spec) > 6561) continue;
    Fixture f(spec);
    SCOPED_TRACE(spec.label());
    const bool powerful = is_powerful(f.t, f.all).holds;
    if (f.t.prime() <= 3) EXPECT_EQ(is_potent(f.t, f.all).holds, powerful);
    if (is_strongly_powerful(f.t, f.all).holds) EXPECT_TRUE(powerful);
  }
}

TEST(Invariants, QuasiPowerfulCriteriaAgree) {
  // centre_by_powerful throws if the quotient and power-centre criteria differ.
  for (const FamilySpec& spec : standard_corpus()) {
    if (expected_order(spec) > 6561) continue;
    Fixture f(spec);
    SCOPED_TRACE(spec.label());
    if (f.t.prime() == 2) {
      EXPECT_NO_THROW(centre_by_powerful(f.t));
      continue;
    }
    bool quasi = false;
    EXPECT_NO_THROW(quasi = is_quasi_powerful(f.t).holds);
    if (nilpotency_class(f.t, f.all) <= 2) EXPECT_TRUE(quasi);
  }
}

TEST(Invariants, SmallClassIsRegular) {
  for (const FamilySpec& spec : standard_corpus()) {
    if (expected_order(spec) > 3125) continue;
    Fixture f(spec);
    if (nilpotency_class(f.t, f.all) >= f.t.prime()) continue;
    PairSweep sweep;
    sweep.sample = 5000;
    EXPECT_TRUE(is_regular(f.t, f.all, sweep).holds) << spec.label();
  }
}

TEST(Invariants, WitnessesRecheck) {
  for (const FamilySpec& spec : standard_corpus()) {
    if (expected_order(spec) > 6561) continue;
    Fixture f(spec);
    SCOPED_TRACE(spec.label());
    const Verdict pw = is_powerful(f.t, f.all);
    if (!pw.holds) {
      const ElemId x = pw.witness.front().second;
      EXPECT_TRUE(derived_subgroup(f.t, f.all).contains(x));
      EXPECT_FALSE(powerful_agemo(f.t, f.all).contains(x));
    }
    const Verdict sp = is_strongly_powerful(f.t, f.all);
    if (!sp.holds) EXPECT_FALSE(agemo(f.t, f.all, 2).contains(sp.witness.front().second));
    const Verdict ab = is_abelian(f.t, f.all);
    if (!ab.holds) {
      ASSERT_EQ(ab.witness.size(), 2u);
      const ElemId x = ab.witness[0].second, y = ab.witness[1].second;
      EXPECT_NE(f.t.multiply(x, y), f.t.multiply(y, x));
    }
  }
}

TEST(Sweep, WorkersDoNotChangeWitness) {
  const Fixture& f = large();
  PairSweep one;
  one.sample = 20000;
  one.seed = 4;
  PairSweep many = one;
  many.workers = 3;
  const Verdict a = is_regular(f.t, f.all, one);
  const Verdict b = is_regular(f.t, f.all, many);
  EXPECT_EQ(a.holds, b.holds);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.checked, b.checked);
}

TEST(Sweep, PairPlanShape) {
  const Fixture& f = medium();
  PairSweep s;
  PairPlan full(f.all, s);
  EXPECT_TRUE(full.exhaustive());
  EXPECT_EQ(full.size(), 729u * 729u);
  EXPECT_EQ(full[730], std::make_pair(ElemId(1), ElemId(1)));
  s.exhaustive_limit = 0;
  s.sample = 10;
  s.extra_pairs = {{5, 6}};
  PairPlan sampled(f.all, s);
  EXPECT_FALSE(sampled.exhaustive());
  EXPECT_EQ(sampled.size(), 11u);
  EXPECT_EQ(sampled[0], std::make_pair(ElemId(5), ElemId(6)));
}
