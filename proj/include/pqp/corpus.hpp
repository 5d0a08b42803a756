#pragma once

// Fixture presentations and parametric families of test groups.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pqp/error.hpp"
#include "pqp/pc_group.hpp"
#include "pqp/presentation.hpp"

namespace pqp {

enum class Family { paper_6561, paper_729, paper_256, cyclic, abelian, extraspecial, higman };

inline const std::vector<std::pair<Family, std::string>>& family_names() {
  static const std::vector<std::pair<Family, std::string>> names{
      {Family::paper_6561, "paper_6561"}, {Family::paper_729, "paper_729"},       {Family::paper_256, "paper_256"},
      {Family::cyclic, "cyclic"},         {Family::abelian, "abelian"},           {Family::extraspecial, "extraspecial"},
      {Family::higman, "higman"}};
  return names;
}

inline Family parse_family(const std::string& name) {
  for (const auto& [f, n] : family_names())
    if (n == name) return f;
  throw InvalidArgument("unknown family '" + name + "'");
}

inline const std::string& family_name(Family f) {
  for (const auto& [g, n] : family_names())
    if (g == f) return n;
  throw std::logic_error("unnamed family");
}

struct FamilySpec {
  Family family = Family::cyclic;
  unsigned p = 0;
  unsigned r = 0;                  // higman rank
  std::vector<unsigned> exponents; // cyclic: {e}; abelian: {e1, .., ek}

  static FamilySpec paper(Family f) { return {f, 0, 0, {}}; }
  static FamilySpec cyclic(unsigned p, unsigned e) { return {Family::cyclic, p, 0, {e}}; }
  static FamilySpec abelian(unsigned p, std::vector<unsigned> exps) { return {Family::abelian, p, 0, std::move(exps)}; }
  static FamilySpec extraspecial(unsigned p) { return {Family::extraspecial, p, 0, {}}; }
  static FamilySpec higman(unsigned p, unsigned r) { return {Family::higman, p, r, {}}; }

  std::string label() const {
    std::string s = family_name(family);
    if (p != 0) s += "_p" + std::to_string(p);
    if (family == Family::higman) s += "_r" + std::to_string(r);
    for (std::size_t k = 0; k < exponents.size(); ++k) s += (k == 0 ? "_" : ".") + std::to_string(exponents[k]);
    return s;
  }
};

inline const std::vector<std::pair<std::string, std::string>>& fixture_files() {
  static const std::vector<std::pair<std::string, std::string>> files{
      {"paper_6561.pqp", R"(# <a,b,c,d | a^27, b^3, c^27, d^3, a^b = a, a^c = a^4 b, a^d = a,
#            b^c = b a^9, b^d = b, c^d = c b^-1>
# Declared in polycyclic order d, c, b, a.
prime 3
gen d 3
gen c 27
gen b 3
gen a 27
conj c d = c b^-1
conj b c = b a^9
conj a c = a^4 b
)"},
      {"paper_729.pqp", R"(# <a,b,c | a^9, b^9, c^9, [a,c] = b, [b,c] = b^6, [a,b] = 1>
# A repeated [b,c] relation is read as [a,b] = 1.
# Declared in polycyclic order c, b, a; X^Y = X [X,Y].
prime 3
gen c 9
gen b 9
gen a 9
conj b c = b^7
conj a c = a b
)"},
      {"paper_256.pqp", R"(# <a,b,c,d,e | a^2, b^8, c^2, d^4, e^2, [a,b], [a,c], [a,d], [a,e] = b^4,
#              [b,c], [b,d] = b^2 c, [b,e] = b^4, [c,d] = b^4, [c,e], [d,e]>
# Declared in polycyclic order e, d, c, b, a; X^Y = X [X,Y].
prime 2
gen e 2
gen d 4
gen c 2
gen b 8
gen a 2
conj c d = c b^4
conj b d = b^3 c
conj b e = b^5
conj a e = a b^4
)"}};
  return files;
}

inline const std::string& fixture_text(Family f) {
  const std::string file = family_name(f) + ".pqp";
  for (const auto& [name, text] : fixture_files())
    if (name == file) return text;
  throw InvalidArgument("no fixture file for family " + family_name(f));
}

namespace detail {

inline std::uint64_t checked_pow(unsigned p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned k = 0; k < e; ++k) {
    if (r > UINT32_MAX / p) throw InvalidArgument("relative order p^" + std::to_string(e) + " is too large");
    r *= p;
  }
  return r;
}

} // namespace detail

inline PcPresentation presentation_for(const FamilySpec& spec) {
  switch (spec.family) {
  case Family::paper_6561:
  case Family::paper_729:
  case Family::paper_256:
    return parse_presentation(fixture_text(spec.family));
  default:
    break;
  }
  if (!is_prime(spec.p)) throw InvalidArgument("family " + family_name(spec.family) + " needs a prime p");
  const unsigned p = spec.p;
  std::vector<GeneratorSpec> gens;

  switch (spec.family) {
  case Family::cyclic: {
    if (spec.exponents.size() != 1 || spec.exponents[0] == 0) throw InvalidArgument("cyclic needs one exponent e >= 1");
    gens.push_back({"a", static_cast<std::uint32_t>(detail::checked_pow(p, spec.exponents[0]))});
    return PcPresentation(p, std::move(gens));
  }
  case Family::abelian: {
    if (spec.exponents.empty()) throw InvalidArgument("abelian needs at least one exponent");
    for (std::size_t k = 0; k < spec.exponents.size(); ++k) {
      if (spec.exponents[k] == 0) throw InvalidArgument("abelian exponents must be >= 1");
      gens.push_back({"a" + std::to_string(k + 1), static_cast<std::uint32_t>(detail::checked_pow(p, spec.exponents[k]))});
    }
    return PcPresentation(p, std::move(gens));
  }
  case Family::extraspecial: {
    if (p == 2) throw InvalidArgument("extraspecial of exponent p needs an odd prime");
    gens = {{"x", p}, {"y", p}, {"z", p}};
    PcPresentation pres(p, std::move(gens));
    pres.set_conjugate(1, 0, Word{{{1, 1}, {2, 1}}}); // y^x = y z
    return pres;
  }
  case Family::higman: {
    if (p == 2) throw InvalidArgument("higman needs an odd prime");
    if (spec.r == 0) throw InvalidArgument("higman needs r >= 1");
    const unsigned r = spec.r;
    // x_1..x_r, then y_1..y_r, then z_{j,i} for i < j, ordered by (i, j)
    for (unsigned k = 1; k <= r; ++k) gens.push_back({"x" + std::to_string(k), p});
    for (unsigned k = 1; k <= r; ++k) gens.push_back({"y" + std::to_string(k), p});
    std::vector<std::vector<std::size_t>> zidx(r, std::vector<std::size_t>(r, 0));
    for (unsigned i = 0; i < r; ++i)
      for (unsigned j = i + 1; j < r; ++j) {
        zidx[j][i] = gens.size();
        gens.push_back({"z" + std::to_string(j + 1) + "_" + std::to_string(i + 1), p});
      }
    PcPresentation pres(p, std::move(gens));
    for (unsigned i = 0; i < r; ++i) pres.set_power(i, Word{{{r + i, 1}}});
    for (unsigned i = 0; i < r; ++i)
      for (unsigned j = i + 1; j < r; ++j) pres.set_conjugate(j, i, Word{{{j, 1}, {zidx[j][i], 1}}});
    return pres;
  }
  default:
    throw std::logic_error("unhandled family");
  }
}

inline std::uint64_t expected_order(const FamilySpec& spec) {
  switch (spec.family) {
  case Family::paper_6561: return 6561;
  case Family::paper_729: return 729;
  case Family::paper_256: return 256;
  case Family::cyclic: return detail::checked_pow(spec.p, spec.exponents.at(0));
  case Family::abelian: {
    unsigned s = 0;
    for (unsigned e : spec.exponents) s += e;
    return detail::checked_pow(spec.p, s);
  }
  case Family::extraspecial: return detail::checked_pow(spec.p, 3);
  case Family::higman: return detail::checked_pow(spec.p, spec.r + spec.r * (spec.r + 1) / 2);
  }
  throw std::logic_error("unhandled family");
}

/// Builds and validates: the presentation must be consistent and of the
/// expected order.
inline PcGroup build(const FamilySpec& spec) {
  PcGroup g(presentation_for(spec));
  g.require_consistent();
  if (g.order() != expected_order(spec))
    throw PresentationError(spec.label() + " built with order " + std::to_string(g.order()));
  return g;
}

/// The standard test corpus: the three fixtures plus small members of each
/// parametric family.
inline std::vector<FamilySpec> standard_corpus() {
  return {FamilySpec::paper(Family::paper_6561),
          FamilySpec::paper(Family::paper_729),
          FamilySpec::paper(Family::paper_256),
          FamilySpec::cyclic(3, 2),
          FamilySpec::cyclic(2, 3),
          FamilySpec::cyclic(5, 2),
          FamilySpec::abelian(3, {1, 1}),
          FamilySpec::abelian(3, {2, 1}),
          FamilySpec::abelian(2, {2, 1, 1}),
          FamilySpec::abelian(5, {1, 1}),
          FamilySpec::extraspecial(3),
          FamilySpec::extraspecial(5),
          FamilySpec::higman(3, 2),
          FamilySpec::higman(3, 3),
          FamilySpec::higman(5, 2)};
}

} // namespace pqp
