#pragma once

// Power-commutator presentations and their text format.
//
//   prime P
//   gen NAME ORDER          (one per generator, in polycyclic order)
//   pow NAME = WORD         (NAME^ORDER = WORD; omitted means identity)
//   conj X Y = WORD         (X^Y = WORD, Y declared before X; omitted means X)
//
// WORD is a whitespace separated list of `name` or `name^INT` tokens, or the
// literal `1` for the empty word. '#' starts a comment.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pqp/error.hpp"

namespace pqp {

/// One syllable g_gen^exp of a word. exp is never zero.
struct Letter {
  std::size_t gen = 0;
  long long exp = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in the generators; the empty word is the identity.
struct Word {
  std::vector<Letter> letters;

  bool empty() const noexcept { return letters.empty(); }
  friend bool operator==(const Word&, const Word&) = default;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Returns e with p^e == n, or nullopt when n is not a positive power of p.
inline std::optional<unsigned> log_exact(std::uint64_t n, std::uint64_t p) {
  if (n < p) return std::nullopt;
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1) return std::nullopt;
  return e;
}

struct GeneratorSpec {
  std::string name;
  std::uint32_t relative_order = 0;
};

/// The defining data of a finite p-group: ordered generators with prime-power
/// relative orders, power tails and conjugation relations.
class PcPresentation {
public:
  PcPresentation(unsigned prime, std::vector<GeneratorSpec> generators)
      : prime_(prime), gens_(std::move(generators)) {
    if (!is_prime(prime_)) throw PresentationError(std::to_string(prime_) + " is not a prime");
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const auto& g = gens_[i];
      if (g.name.empty()) throw PresentationError("empty generator name");
      if (!log_exact(g.relative_order, prime_))
        throw PresentationError("relative order " + std::to_string(g.relative_order) + " of " + g.name +
                                " is not a power of " + std::to_string(prime_));
      if (!index_.emplace(g.name, i).second) throw PresentationError("duplicate generator " + g.name);
    }
    power_tails_.resize(gens_.size());
    conj_.resize(gens_.size());
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      conj_[j].resize(j);
      for (std::size_t i = 0; i < j; ++i) conj_[j][i] = Word{{Letter{j, 1}}};
    }
  }

  unsigned prime() const noexcept { return prime_; }
  std::size_t size() const noexcept { return gens_.size(); }
  const std::vector<GeneratorSpec>& generators() const noexcept { return gens_; }
  const std::string& name(std::size_t i) const { return gens_.at(i).name; }
  std::uint32_t relative_order(std::size_t i) const { return gens_.at(i).relative_order; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// g_i^{m_i} = tail. The tail may only involve generators after i.
  void set_power(std::size_t i, Word tail) {
    check_index(i);
    check_refs(tail, i, "power tail of " + gens_[i].name);
    power_tails_[i] = std::move(tail);
  }

  /// g_j^{g_i} = value, for j > i. The value may only involve generators after i.
  void set_conjugate(std::size_t j, std::size_t i, Word value) {
    check_index(j);
    check_index(i);
    if (i >= j)
      throw PresentationError("conjugator " + gens_[i].name + " must precede conjugated generator " + gens_[j].name);
    check_refs(value, i, "conjugate " + gens_[j].name + "^" + gens_[i].name);
    conj_[j][i] = std::move(value);
  }

  const Word& power_tail(std::size_t i) const { return power_tails_.at(i); }
  const Word& conjugate(std::size_t j, std::size_t i) const { return conj_.at(j).at(i); }

  bool trivial_conjugate(std::size_t j, std::size_t i) const {
    const auto& w = conj_[j][i];
    return w.letters.size() == 1 && w.letters[0].gen == j && w.letters[0].exp == 1;
  }

  /// Product of the relative orders; saturates at UINT64_MAX.
  std::uint64_t nominal_order() const noexcept {
    std::uint64_t n = 1;
    for (const auto& g : gens_) {
      if (n > UINT64_MAX / g.relative_order) return UINT64_MAX;
      n *= g.relative_order;
    }
    return n;
  }

private:
  void check_index(std::size_t i) const {
    if (i >= gens_.size()) throw PresentationError("generator index out of range");
  }

  void check_refs(const Word& w, std::size_t after, const std::string& what) const {
    for (const auto& l : w.letters) {
      if (l.gen >= gens_.size()) throw PresentationError(what + ": generator index out of range");
      if (l.gen <= after)
        throw PresentationError(what + " references " + gens_[l.gen].name + ", which is not after " +
                                gens_[after].name);
      if (l.exp == 0) throw PresentationError(what + ": zero exponent");
    }
  }

  unsigned prime_;
  std::vector<GeneratorSpec> gens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Word> power_tails_;
  std::vector<std::vector<Word>> conj_;
};

inline std::string format_word(const PcPresentation& pres, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += pres.name(l.gen);
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

/// Canonical text form: only non-default relations are written.
inline std::string to_text(const PcPresentation& pres) {
  std::ostringstream os;
  os << "prime " << pres.prime() << '\n';
  for (const auto& g : pres.generators()) os << "gen " << g.name << ' ' << g.relative_order << '\n';
  for (std::size_t i = 0; i < pres.size(); ++i)
    if (!pres.power_tail(i).empty())
      os << "pow " << pres.name(i) << " = " << format_word(pres, pres.power_tail(i)) << '\n';
  for (std::size_t i = 0; i < pres.size(); ++i)
    for (std::size_t j = i + 1; j < pres.size(); ++j)
      if (!pres.trivial_conjugate(j, i))
        os << "conj " << pres.name(j) << ' ' << pres.name(i) << " = " << format_word(pres, pres.conjugate(j, i))
           << '\n';
  return os.str();
}

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column; // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    if (line[i] == '=') {
      ++i;
    } else {
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '=') ++i;
    }
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline std::optional<long long> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i >= s.size()) return std::nullopt;
  long long v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    if (v > (INT64_MAX - 9) / 10) return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

} // namespace detail

/// Parses the presentation file format. Throws ParseError with the position
/// of the offending token.
inline PcPresentation parse_presentation(std::string_view text) {
  using detail::Token;

  struct PendingRelation {
    bool is_power;
    std::size_t target;
    std::size_t conjugator;
    Word word;
    std::size_t line;
    std::size_t column;
  };

  std::optional<unsigned> prime;
  std::vector<GeneratorSpec> gens;
  std::unordered_map<std::string, std::size_t> names;
  std::vector<PendingRelation> relations;
  bool seen_relation = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = detail::tokenize(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }

    auto fail = [&](const Token& t, const std::string& msg) -> void { throw ParseError(line_no, t.column, msg); };
    auto lookup = [&](const Token& t) -> std::size_t {
      auto it = names.find(std::string(t.text));
      if (it == names.end()) fail(t, "unknown generator '" + std::string(t.text) + "'");
      return it->second;
    };
    auto parse_word = [&](std::size_t from) -> Word {
      Word w;
      if (from >= toks.size()) fail(toks.back(), "missing word after '='");
      if (toks.size() == from + 1 && toks[from].text == "1") return w;
      for (std::size_t k = from; k < toks.size(); ++k) {
        const auto& t = toks[k];
        auto caret = t.text.find('^');
        std::string_view name = t.text.substr(0, caret);
        long long e = 1;
        if (caret != std::string_view::npos) {
          auto v = detail::parse_int(t.text.substr(caret + 1));
          if (!v) fail(t, "malformed exponent in '" + std::string(t.text) + "'");
          if (*v == 0) fail(t, "zero exponent in '" + std::string(t.text) + "'");
          e = *v;
        }
        if (name == "1") fail(t, "'1' must be the whole word");
        w.letters.push_back({lookup(Token{name, t.column}), e});
      }
      return w;
    };

    const auto& kw = toks[0];
    if (!prime) {
      if (kw.text != "prime") fail(kw, "expected 'prime P' as the first statement");
      if (toks.size() != 2) fail(kw, "expected 'prime P'");
      auto v = detail::parse_int(toks[1].text);
      if (!v || *v < 2 || *v > 1000000 || !is_prime(static_cast<std::uint64_t>(*v)))
        fail(toks[1], "'" + std::string(toks[1].text) + "' is not a prime");
      prime = static_cast<unsigned>(*v);
    } else if (kw.text == "gen") {
      if (seen_relation) fail(kw, "generators must be declared before relations");
      if (toks.size() != 3) fail(kw, "expected 'gen NAME ORDER'");
      std::string name(toks[1].text);
      if (name == "1" || name.find('^') != std::string::npos) fail(toks[1], "invalid generator name '" + name + "'");
      if (names.count(name)) fail(toks[1], "duplicate generator '" + name + "'");
      auto v = detail::parse_int(toks[2].text);
      if (!v || *v < 1 || *v > UINT32_MAX) fail(toks[2], "invalid order '" + std::string(toks[2].text) + "'");
      if (!log_exact(static_cast<std::uint64_t>(*v), *prime))
        fail(toks[2], "relative order " + std::to_string(*v) + " is not a power of " + std::to_string(*prime));
      names.emplace(name, gens.size());
      gens.push_back({name, static_cast<std::uint32_t>(*v)});
    } else if (kw.text == "pow") {
      seen_relation = true;
      if (toks.size() < 4 || toks[2].text != "=") fail(kw, "expected 'pow NAME = WORD'");
      std::size_t target = lookup(toks[1]);
      Word w = parse_word(3);
      for (std::size_t k = 0; k < w.letters.size(); ++k)
        if (w.letters[k].gen <= target)
          fail(toks[3 + k], "power tail of '" + gens[target].name + "' may only use later generators");
      relations.push_back({true, target, 0, std::move(w), line_no, kw.column});
    } else if (kw.text == "conj") {
      seen_relation = true;
      if (toks.size() < 5 || toks[3].text != "=") fail(kw, "expected 'conj X Y = WORD'");
      std::size_t x = lookup(toks[1]);
      std::size_t y = lookup(toks[2]);
      if (y >= x)
        fail(toks[2], "conjugator '" + gens[y].name + "' must precede conjugated generator '" + gens[x].name + "'");
      Word w = parse_word(4);
      for (std::size_t k = 0; k < w.letters.size(); ++k)
        if (w.letters[k].gen <= y)
          fail(toks[4 + k], "conjugation relation by '" + gens[y].name + "' may only use later generators");
      relations.push_back({false, x, y, std::move(w), line_no, kw.column});
    } else {
      fail(kw, "unknown statement '" + std::string(kw.text) + "'");
    }
    if (end == text.size()) break;
  }
  if (!prime) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'prime P' statement");

  PcPresentation pres(*prime, std::move(gens));
  std::vector<bool> power_seen(pres.size(), false);
  std::vector<std::vector<bool>> conj_seen(pres.size(), std::vector<bool>(pres.size(), false));
  for (auto& r : relations) {
    if (r.is_power) {
      if (power_seen[r.target]) throw ParseError(r.line, r.column, "duplicate power relation for '" + pres.name(r.target) + "'");
      power_seen[r.target] = true;
      pres.set_power(r.target, std::move(r.word));
    } else {
      if (conj_seen[r.target][r.conjugator])
        throw ParseError(r.line, r.column,
                         "duplicate conjugation relation for '" + pres.name(r.target) + "' by '" +
                             pres.name(r.conjugator) + "'");
      conj_seen[r.target][r.conjugator] = true;
      pres.set_conjugate(r.target, r.conjugator, std::move(r.word));
    }
  }
  return pres;
}

/// Parses a word such as "a^18 c^18 d" against the presentation's names.
inline Word parse_word(const PcPresentation& pres, std::string_view text) {
  Word w;
  auto toks = detail::tokenize(text);
  if (toks.size() == 1 && toks[0].text == "1") return w;
  for (const auto& t : toks) {
    auto caret = t.text.find('^');
    std::string_view name = t.text.substr(0, caret);
    long long e = 1;
    if (caret != std::string_view::npos) {
      auto v = detail::parse_int(t.text.substr(caret + 1));
      if (!v || *v == 0) throw ParseError(1, t.column, "malformed exponent in '" + std::string(t.text) + "'");
      e = *v;
    }
    auto g = pres.find(name);
    if (!g) throw ParseError(1, t.column, "unknown generator '" + std::string(name) + "'");
    w.letters.push_back({*g, e});
  }
  return w;
}

} // namespace pqp
