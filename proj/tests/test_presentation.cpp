#include <gtest/gtest.h>

#include <string>

#include "pqp/corpus.hpp"
#include "pqp/error.hpp"
#include "pqp/presentation.hpp"

using namespace pqp;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_presentation(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return ParseError(0, 0, "");
}

} // namespace

TEST(Primes, SmallValues) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(3));
  EXPECT_FALSE(is_prime(9));
  EXPECT_TRUE(is_prime(7919));
  EXPECT_FALSE(is_prime(7917));
}

TEST(Primes, LogExact) {
  EXPECT_FALSE(log_exact(1, 3));
  EXPECT_EQ(log_exact(3, 3), 1u);
  EXPECT_EQ(log_exact(27, 3), 3u);
  EXPECT_EQ(log_exact(256, 2), 8u);
  EXPECT_FALSE(log_exact(12, 2));
  EXPECT_FALSE(log_exact(0, 2));
}

TEST(Parse, MinimalCyclic) {
  auto p = parse_presentation("prime 5\ngen x 25\n");
  EXPECT_EQ(p.prime(), 5u);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.name(0), "x");
  EXPECT_EQ(p.relative_order(0), 25u);
  EXPECT_TRUE(p.power_tail(0).empty());
  EXPECT_EQ(p.nominal_order(), 25u);
}

TEST(Parse, CommentsBlankLinesAndCarriageReturns) {
  auto p = parse_presentation("# header\r\n\r\nprime 3   # trailing\r\n\tgen a 3\r\ngen b 3\r\nconj b a = b\r\n");
  EXPECT_EQ(p.size(), 2u);
  EXPECT_TRUE(p.trivial_conjugate(1, 0));
}

TEST(Parse, NoTrailingNewline) {
  auto p = parse_presentation("prime 2\ngen a 2\ngen b 2\npow a = b");
  ASSERT_EQ(p.power_tail(0).letters.size(), 1u);
  EXPECT_EQ(p.power_tail(0).letters[0].gen, 1u);
}

TEST(Parse, RelationsAndNegativeExponents) {
  auto p = parse_presentation("prime 3\ngen c 27\ngen b 3\ngen a 27\nconj b c = b a^9\nconj a c = a^4 b\npow c = a^-3\n");
  EXPECT_EQ(format_word(p, p.conjugate(1, 0)), "b a^9");
  EXPECT_EQ(format_word(p, p.conjugate(2, 0)), "a^4 b");
  EXPECT_EQ(format_word(p, p.power_tail(0)), "a^-3");
  EXPECT_TRUE(p.trivial_conjugate(2, 1));
}

TEST(Parse, IdentityWord) {
  auto p = parse_presentation("prime 2\ngen a 2\ngen b 2\nconj b a = 1\n");
  EXPECT_TRUE(p.conjugate(1, 0).empty());
  EXPECT_FALSE(p.trivial_conjugate(1, 0));
}

TEST(Parse, FixturesParse) {
  for (const auto& [name, text] : fixture_files()) {
    SCOPED_TRACE(name);
    EXPECT_NO_THROW(parse_presentation(text));
  }
  EXPECT_EQ(parse_presentation(fixture_text(Family::paper_6561)).nominal_order(), 6561u);
  EXPECT_EQ(parse_presentation(fixture_text(Family::paper_729)).nominal_order(), 729u);
  EXPECT_EQ(parse_presentation(fixture_text(Family::paper_256)).nominal_order(), 256u);
}

TEST(ParseErrors, MissingPrime) {
  auto e = parse_error("gen a 3\n");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 1u);
}

TEST(ParseErrors, EmptyInput) {
  auto e = parse_error("");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_NE(std::string(e.what()).find("missing 'prime P'"), std::string::npos);
}

TEST(ParseErrors, NotAPrime) {
  auto e = parse_error("prime 9\n");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 7u);
}

TEST(ParseErrors, RelativeOrderNotPowerOfPrime) {
  auto e = parse_error("prime 3\ngen a 3\ngen b 6\n");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 7u);
  EXPECT_NE(std::string(e.what()).find("not a power of 3"), std::string::npos);
}

TEST(ParseErrors, UnknownGenerator) {
  auto e = parse_error("prime 3\ngen a 3\ngen b 3\nconj b a = b q^2\n");
  EXPECT_EQ(e.line(), 4u);
  EXPECT_EQ(e.column(), 14u);
  EXPECT_NE(std::string(e.what()).find("unknown generator 'q'"), std::string::npos);
}

TEST(ParseErrors, MalformedAndZeroExponents) {
  EXPECT_EQ(parse_error("prime 3\ngen a 3\ngen b 3\npow a = b^x\n").column(), 9u);
  EXPECT_EQ(parse_error("prime 3\ngen a 3\ngen b 3\npow a = b^0\n").column(), 9u);
}

TEST(ParseErrors, ConjugatorMustPrecede) {
  auto e = parse_error("prime 3\ngen a 3\ngen b 3\nconj a b = a\n");
  EXPECT_EQ(e.line(), 4u);
  EXPECT_EQ(e.column(), 8u);
}

TEST(ParseErrors, TailUsesEarlierGenerator) {
  auto e = parse_error("prime 3\ngen a 3\ngen b 3\ngen c 3\nconj c b = c b\n");
  EXPECT_EQ(e.line(), 5u);
  EXPECT_EQ(e.column(), 14u);
  auto f = parse_error("prime 3\ngen a 3\ngen b 3\npow b = a\n");
  EXPECT_EQ(f.line(), 4u);
  EXPECT_EQ(f.column(), 9u);
}

TEST(ParseErrors, DuplicateRelationsAndGenerators) {
  auto e = parse_error("prime 3\ngen a 3\ngen b 3\nconj b a = b\nconj b a = b\n");
  EXPECT_EQ(e.line(), 5u);
  EXPECT_EQ(e.column(), 1u);
  EXPECT_EQ(parse_error("prime 3\ngen a 3\npow a = 1\npow a = 1\n").line(), 4u);
  auto g = parse_error("prime 3\ngen a 3\ngen a 9\n");
  EXPECT_EQ(g.line(), 3u);
  EXPECT_EQ(g.column(), 5u);
}

TEST(ParseErrors, StatementShapes) {
  EXPECT_EQ(parse_error("prime 3\ngen a\n").line(), 2u);
  EXPECT_EQ(parse_error("prime 3\ngen a 3\npow a b\n").line(), 3u);
  EXPECT_EQ(parse_error("prime 3\ngen a 3\nrel a = 1\n").line(), 3u);
  EXPECT_EQ(parse_error("prime 3\ngen a 3\ngen b 3\nconj b a =\n").line(), 4u);
  EXPECT_EQ(parse_error("prime 3\ngen a 3\npow a = 1\ngen b 3\n").line(), 4u);
  EXPECT_EQ(parse_error("prime 3\ngen a 3\ngen b 3\nconj b a = b 1\n").column(), 14u);
}

TEST(ParseErrors, MessageCarriesPosition) {
  auto e = parse_error("prime 3\ngen a 3\ngen b 3\nconj b a = b q\n");
  EXPECT_EQ(std::string(e.what()), "line 4, column 14: unknown generator 'q'");
}

TEST(Canonical, RoundTrip) {
  for (const auto& [name, text] : fixture_files()) {
    SCOPED_TRACE(name);
    auto p = parse_presentation(text);
    const std::string canon = to_text(p);
    EXPECT_EQ(to_text(parse_presentation(canon)), canon);
  }
}

TEST(Canonical, OmitsDefaults) {
  auto p = parse_presentation("prime 2\ngen a 2\ngen b 4\nconj b a = b\npow a = 1\n");
  EXPECT_EQ(to_text(p), "prime 2\ngen a 2\ngen b 4\n");
}

TEST(Canonical, Fixture729Text) {
  auto p = parse_presentation(fixture_text(Family::paper_729));
  EXPECT_EQ(to_text(p), "prime 3\ngen c 9\ngen b 9\ngen a 9\nconj b c = b^7\nconj a c = a b\n");
}

TEST(Words, ParseAndFormat) {
  auto p = parse_presentation(fixture_text(Family::paper_6561));
  Word w = parse_word(p, "a^18 c^18 d");
  ASSERT_EQ(w.letters.size(), 3u);
  EXPECT_EQ(w.letters[0].gen, *p.find("a"));
  EXPECT_EQ(w.letters[0].exp, 18);
  EXPECT_EQ(format_word(p, w), "a^18 c^18 d");
  EXPECT_TRUE(parse_word(p, "1").empty());
  EXPECT_EQ(format_word(p, Word{}), "1");
  EXPECT_THROW(parse_word(p, "a^18 z"), ParseError);
  EXPECT_THROW(parse_word(p, "a^"), ParseError);
}

TEST(Construction, RejectsBadData) {
  EXPECT_THROW(PcPresentation(4, {{"a", 2}}), PresentationError);
  EXPECT_THROW(PcPresentation(3, {{"a", 6}}), PresentationError);
  EXPECT_THROW(PcPresentation(3, {{"a", 3}, {"a", 3}}), PresentationError);
  EXPECT_THROW(PcPresentation(3, {{"", 3}}), PresentationError);
  PcPresentation p(3, {{"a", 3}, {"b", 3}, {"c", 3}});
  EXPECT_THROW(p.set_conjugate(0, 1, Word{}), PresentationError);
  EXPECT_THROW(p.set_conjugate(2, 1, Word{{Letter{1, 1}}}), PresentationError);
  EXPECT_THROW(p.set_power(1, Word{{Letter{0, 1}}}), PresentationError);
  EXPECT_THROW(p.set_power(5, Word{}), PresentationError);
  EXPECT_THROW(p.set_power(0, Word{{Letter{2, 0}}}), PresentationError);
  EXPECT_NO_THROW(p.set_conjugate(2, 0, Word{{Letter{2, 1}, Letter{1, -1}}}));
}
