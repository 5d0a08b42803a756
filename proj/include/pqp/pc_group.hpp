#pragma once

// Finite p-groups given by a power-commutator presentation. Every word is
// reduced to the normal form g_1^{x_1} ... g_n^{x_n}, 0 <= x_i < m_i, by
// collection from the left.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqp/error.hpp"
#include "pqp/presentation.hpp"

namespace pqp {

/// Dense index of an element inside a finite group view.
using ElemId = std::uint32_t;

/// Exponent vector of a normal form.
struct Element {
  std::vector<std::uint32_t> exps;

  bool is_identity() const noexcept {
    return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
  }
  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Result of the overlap test. `overlap` names the first failing test.
struct ConsistencyReport {
  bool consistent = true;
  std::string overlap;
  Element lhs;
  Element rhs;
};

class PcGroup {
public:
  explicit PcGroup(PcPresentation pres) : pres_(std::move(pres)) {
    const std::size_t n = pres_.size();
    if (n > 0xFFFF) throw PresentationError("too many generators");
    m_.resize(n);
    for (std::size_t i = 0; i < n; ++i) m_[i] = pres_.relative_order(i);
    tails_.resize(n);
    conj_.assign(n, std::vector<std::vector<Syllable>>(n));
    commutes_.assign(n * n, 1);
    conj_powers_.resize(n * n);
    powers_ready_.assign(n, 0);

    // Relations of g_i only involve later generators, so normalising them
    // from the last generator upwards only ever uses relations that are
    // already in collected form.
    for (std::size_t i = n; i-- > 0;) {
      tails_[i] = to_syllables(normalize_raw(pres_.power_tail(i)));
      for (std::size_t j = i + 1; j < n; ++j) {
        conj_[j][i] = to_syllables(normalize_raw(pres_.conjugate(j, i)));
        const auto& c = conj_[j][i];
        commutes_[j * n + i] = c.size() == 1 && c[0].gen == j && c[0].exp == 1;
      }
      build_conj_powers(i);
    }

    strides_.assign(n, 1);
    std::uint64_t order = 1;
    for (std::size_t i = n; i-- > 0;) {
      strides_[i] = order;
      order = order > UINT64_MAX / m_[i] ? UINT64_MAX : order * m_[i];
    }
    order_ = order;
    if (indexable())
      for (std::size_t i = 0; i < n; ++i) gen_ids_.push_back(encode(generator(i)));
    consistency_ = check_overlaps();
  }

  const PcPresentation& presentation() const noexcept { return pres_; }
  unsigned prime() const noexcept { return pres_.prime(); }
  std::size_t rank() const noexcept { return m_.size(); }
  std::uint32_t relative_order(std::size_t i) const { return m_.at(i); }

  /// Product of relative orders; the group order when consistent.
  std::uint64_t order() const noexcept { return order_; }
  bool consistent() const noexcept { return consistency_.consistent; }
  const ConsistencyReport& consistency() const noexcept { return consistency_; }

  void require_consistent() const {
    if (!consistent()) throw PresentationError("inconsistent presentation (overlap " + consistency_.overlap + ")");
  }

  // ---- normal forms --------------------------------------------------------

  Element identity_element() const { return Element{std::vector<std::uint32_t>(rank(), 0)}; }

  Element generator(std::size_t i) const {
    Element e = identity_element();
    e.exps.at(i) = 1;
    return e;
  }

  Element normalize(const Word& w) const { return normalize_raw(w); }

  Element multiply(const Element& x, const Element& y) const {
    Element r = x;
    std::vector<Syllable> stack;
    for (std::size_t i = 0; i < y.exps.size(); ++i)
      if (y.exps[i] != 0) mul_syllable(r.exps, static_cast<std::uint16_t>(i), y.exps[i], stack);
    return r;
  }

  /// Peels the leading generator of x coordinate by coordinate.
  Element inverse(const Element& x) const {
    Element w = x;
    Element y = identity_element();
    std::vector<Syllable> stack;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (w.exps[i] == 0) continue;
      std::uint32_t e = m_[i] - w.exps[i];
      mul_syllable(w.exps, static_cast<std::uint16_t>(i), e, stack);
      y.exps[i] = e;
    }
    return y;
  }

  Element power(const Element& x, long long k) const {
    Element base = k < 0 ? inverse(x) : x;
    unsigned long long n = k < 0 ? 0ULL - static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
    Element acc = identity_element();
    while (n > 0) {
      if (n & 1) acc = multiply(acc, base);
      n >>= 1;
      if (n) base = multiply(base, base);
    }
    return acc;
  }

  /// [x, y] = x^-1 y^-1 x y.
  Element commutator(const Element& x, const Element& y) const {
    return multiply(inverse(multiply(y, x)), multiply(x, y));
  }

  /// x^y = y^-1 x y.
  Element conjugate(const Element& x, const Element& y) const { return multiply(inverse(y), multiply(x, y)); }

  /// Smallest k >= 1 with x^k = 1, found by repeated p-th powering.
  std::uint64_t element_order(const Element& x) const {
    std::uint64_t o = 1;
    Element y = x;
    while (!y.is_identity()) {
      y = power(y, prime());
      o *= prime();
    }
    return o;
  }

  Word to_word(const Element& x) const {
    Word w;
    for (std::size_t i = 0; i < x.exps.size(); ++i)
      if (x.exps[i] != 0) w.letters.push_back({i, static_cast<long long>(x.exps[i])});
    return w;
  }

  std::string to_string(const Element& x) const { return format_word(pres_, to_word(x)); }

  // ---- dense indices -------------------------------------------------------
  // Mixed radix with g_1 most significant, so numeric order of ids is the
  // lexicographic order of exponent vectors.

  ElemId encode(const Element& x) const {
    std::uint64_t id = 0;
    for (std::size_t i = 0; i < x.exps.size(); ++i) id += x.exps[i] * strides_[i];
    return static_cast<ElemId>(id);
  }

  Element decode(ElemId id) const {
    require_indexable();
    Element x = identity_element();
    std::uint64_t rest = id;
    for (std::size_t i = 0; i < rank(); ++i) {
      x.exps[i] = static_cast<std::uint32_t>(rest / strides_[i]);
      rest %= strides_[i];
    }
    return x;
  }

  bool indexable() const noexcept { return order_ <= UINT32_MAX; }
  void require_indexable() const {
    if (!indexable()) throw ResourceError("group order exceeds the 32-bit element index range");
  }

  // ---- FiniteGroup view on dense indices ------------------------------------

  ElemId identity() const noexcept { return 0; }

  ElemId multiply(ElemId a, ElemId b) const {
    thread_local std::vector<std::uint32_t> x, y;
    thread_local std::vector<Syllable> stack;
    decode_into(a, x);
    decode_into(b, y);
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] != 0) mul_syllable(x, static_cast<std::uint16_t>(i), y[i], stack);
    return encode_vec(x);
  }

  ElemId inverse(ElemId a) const { return encode(inverse(decode(a))); }

  const std::vector<ElemId>& generators() const {
    require_indexable();
    return gen_ids_;
  }

  std::string describe(ElemId a) const { return to_string(decode(a)); }

  /// {y', s} with y = y' s and y' < y: s is the last generator occurring in
  /// the normal form of y. Requires y != identity.
  std::pair<ElemId, ElemId> pc_step(ElemId y) const {
    for (std::size_t i = rank(); i-- > 0;)
      if ((y / strides_[i]) % m_[i] != 0) return {static_cast<ElemId>(y - strides_[i]), gen_ids_[i]};
    throw InvalidArgument("pc_step of the identity");
  }

private:
  struct Syllable {
    std::uint16_t gen;
    std::uint32_t exp;
  };

  static std::vector<Syllable> to_syllables(const Element& x) {
    std::vector<Syllable> s;
    for (std::size_t i = 0; i < x.exps.size(); ++i)
      if (x.exps[i] != 0) s.push_back({static_cast<std::uint16_t>(i), x.exps[i]});
    return s;
  }

  void decode_into(ElemId id, std::vector<std::uint32_t>& x) const {
    x.resize(rank());
    std::uint64_t rest = id;
    for (std::size_t i = 0; i < rank(); ++i) {
      x[i] = static_cast<std::uint32_t>(rest / strides_[i]);
      rest %= strides_[i];
    }
  }

  ElemId encode_vec(const std::vector<std::uint32_t>& x) const {
    std::uint64_t id = 0;
    for (std::size_t i = 0; i < x.size(); ++i) id += x[i] * strides_[i];
    return static_cast<ElemId>(id);
  }

  static void push_reversed(std::vector<Syllable>& stack, const std::vector<Syllable>& word, std::uint32_t times) {
    for (std::uint32_t t = 0; t < times; ++t)
      for (auto it = word.rbegin(); it != word.rend(); ++it) stack.push_back(*it);
  }

  // v <- v * g_gen^e (e > 0). Collection from the left: the pending letters
  // live on `stack`, the collected prefix is v.
  void mul_syllable(std::vector<std::uint32_t>& v, std::uint16_t gen, std::uint32_t e,
                    std::vector<Syllable>& stack) const {
    const std::size_t n = v.size();
    const std::size_t base = stack.size();
    stack.push_back({gen, e});
    while (stack.size() > base) {
      const Syllable s = stack.back();
      stack.pop_back();
      const std::size_t i = s.gen;

      // first later position that does not commute with g_i
      std::size_t blocker = n;
      bool suffix_nonzero = false;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (v[j] == 0) continue;
        suffix_nonzero = true;
        if (!commutes_[j * n + i]) {
          blocker = j;
          break;
        }
      }

      if (blocker == n) {
        std::uint64_t total = std::uint64_t(v[i]) + s.exp;
        if (total < m_[i]) {
          v[i] = static_cast<std::uint32_t>(total);
          continue;
        }
        v[i] = static_cast<std::uint32_t>(total % m_[i]);
        auto q = static_cast<std::uint32_t>(total / m_[i]);
        if (tails_[i].empty()) continue;
        if (suffix_nonzero) pull_suffix(v, i + 1, stack, i, false);
        push_reversed(stack, tails_[i], q);
        continue;
      }

      if (!powers_ready_[i]) {
        if (s.exp > 1) stack.push_back({s.gen, s.exp - 1});
        bool overflow = ++v[i] == m_[i];
        if (overflow) v[i] = 0;
        pull_suffix(v, overflow ? i + 1 : blocker, stack, i, true);
        if (overflow) push_reversed(stack, tails_[i], 1);
        continue;
      }

      // v * g_i^e = prefix * g_i^{v_i + e} * A * B^{g_i^e}, where A (before
      // the blocker) commutes with g_i.
      std::uint32_t e = s.exp;
      if (e >= m_[i]) {
        stack.push_back({s.gen, e - (m_[i] - 1)});
        e = m_[i] - 1;
      }
      std::uint32_t total = v[i] + e;
      bool overflow = total >= m_[i];
      v[i] = overflow ? total - m_[i] : total;
      for (std::size_t j = n; j-- > (overflow ? i + 1 : blocker);) {
        if (v[j] == 0) continue;
        if (commutes_[j * n + i])
          stack.push_back({static_cast<std::uint16_t>(j), v[j]});
        else
          push_reversed(stack, conj_power(j, i, v[j], e), 1);
        v[j] = 0;
      }
      if (overflow) push_reversed(stack, tails_[i], 1);
    }
  }

  const std::vector<Syllable>& conj_power(std::size_t j, std::size_t i, std::uint32_t v, std::uint32_t e) const {
    return conj_powers_[j * rank() + i][std::size_t(v) * m_[i] + e];
  }

  // (g_j^v)^{g_i^e} for all v < m_j, e < m_i, collected inside <g_{i+1},...>.
  void build_conj_powers(std::size_t i) {
    const std::size_t n = rank();
    std::uint64_t cells = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (!commutes_[j * n + i]) cells += std::uint64_t(m_[j]) * m_[i];
    if (cells > kMaxConjPowerCells) return;
    std::vector<Syllable> stack;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (commutes_[j * n + i]) continue;
      auto& table = conj_powers_[j * n + i];
      table.assign(std::size_t(m_[j]) * m_[i], {});
      for (std::uint32_t v = 1; v < m_[j]; ++v) {
        Element w = identity_element();
        w.exps[j] = v;
        table[std::size_t(v) * m_[i]] = to_syllables(w);
        for (std::uint32_t e = 1; e < m_[i]; ++e) {
          // conjugate w by g_i once more, syllable by syllable
          Element next = identity_element();
          for (std::size_t k = i + 1; k < n; ++k)
            for (std::uint32_t t = 0; t < w.exps[k]; ++t)
              for (const auto& syl : conj_[k][i]) mul_syllable(next.exps, syl.gen, syl.exp, stack);
          w = std::move(next);
          table[std::size_t(v) * m_[i] + e] = to_syllables(w);
        }
      }
    }
    powers_ready_[i] = 1;
  }

  // Moves v[from..] onto the stack (so it is re-collected after whatever is
  // pushed next), conjugated by g_i when `conjugate` is set.
  void pull_suffix(std::vector<std::uint32_t>& v, std::size_t from, std::vector<Syllable>& stack, std::size_t i,
                   bool conjugate) const {
    const std::size_t n = v.size();
    for (std::size_t j = n; j-- > from;) {
      if (v[j] == 0) continue;
      if (!conjugate || commutes_[j * n + i])
        stack.push_back({static_cast<std::uint16_t>(j), v[j]});
      else
        push_reversed(stack, conj_[j][i], v[j]);
      v[j] = 0;
    }
  }

  // Normal form of an arbitrary word; negative syllables are replaced by the
  // inverse of the corresponding positive power before collection.
  Element normalize_raw(const Word& w) const {
    Element v = identity_element();
    std::vector<Syllable> stack;
    for (const auto& l : w.letters) {
      if (l.gen >= rank()) throw PresentationError("word references unknown generator");
      if (l.exp > 0) {
        auto e = static_cast<std::uint64_t>(l.exp);
        // g^e with e >= m: reduce through the power relation
        while (e > 0) {
          auto step = static_cast<std::uint32_t>(std::min<std::uint64_t>(e, m_[l.gen]));
          mul_syllable(v.exps, static_cast<std::uint16_t>(l.gen), step, stack);
          e -= step;
        }
      } else {
        Element p = identity_element();
        auto e = static_cast<std::uint64_t>(-l.exp);
        while (e > 0) {
          auto step = static_cast<std::uint32_t>(std::min<std::uint64_t>(e, m_[l.gen]));
          mul_syllable(p.exps, static_cast<std::uint16_t>(l.gen), step, stack);
          e -= step;
        }
        Element q = inverse(p);
        for (std::size_t i = 0; i < rank(); ++i)
          if (q.exps[i] != 0) mul_syllable(v.exps, static_cast<std::uint16_t>(i), q.exps[i], stack);
      }
    }
    return v;
  }

  Element mul_gen(Element x, std::size_t i, std::uint32_t e = 1) const {
    std::vector<Syllable> stack;
    if (e > 0) mul_syllable(x.exps, static_cast<std::uint16_t>(i), e, stack);
    return x;
  }

  Element collect_syllables(const std::vector<Syllable>& w) const {
    Element x = identity_element();
    std::vector<Syllable> stack;
    for (const auto& s : w) mul_syllable(x.exps, s.gen, s.exp, stack);
    return x;
  }

  Element gen_power_collected(std::size_t i, std::uint32_t e) const { return mul_gen(identity_element(), i, e); }

  ConsistencyReport failure(std::string what, Element lhs, Element rhs) const {
    return ConsistencyReport{false, std::move(what), std::move(lhs), std::move(rhs)};
  }

  // Standard overlap tests for a power-conjugate presentation:
  //   (g_k g_j) g_i = g_k (g_j g_i)                  k > j > i
  //   (g_j^{m_j}) g_i = g_j^{m_j - 1} (g_j g_i)        j > i
  //   g_j (g_i^{m_i}) = (g_j g_i) g_i^{m_i - 1}        j > i
  //   (g_i^{m_i}) g_i = g_i (g_i^{m_i})
  ConsistencyReport check_overlaps() const {
    const std::size_t n = rank();
    auto name = [&](std::size_t i) { return pres_.name(i); };
    auto tail = [&](std::size_t i) { return collect_syllables(tails_[i]); };
    auto jdoti = [&](std::size_t j, std::size_t i) { return mul_gen(gen_power_collected(j, 1), i); };

    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          Element lhs = mul_gen(mul_gen(gen_power_collected(k, 1), j), i);
          Element rhs = multiply(gen_power_collected(k, 1), jdoti(j, i));
          if (lhs != rhs) return failure("(" + name(k) + " " + name(j) + ") " + name(i), lhs, rhs);
        }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        Element lhs = mul_gen(tail(j), i);
        Element rhs = multiply(gen_power_collected(j, m_[j] - 1), jdoti(j, i));
        if (lhs != rhs) return failure("(" + name(j) + "^" + std::to_string(m_[j]) + ") " + name(i), lhs, rhs);

        Element lhs2 = multiply(gen_power_collected(j, 1), tail(i));
        Element rhs2 = mul_gen(jdoti(j, i), i, m_[i] - 1);
        if (lhs2 != rhs2) return failure(name(j) + " (" + name(i) + "^" + std::to_string(m_[i]) + ")", lhs2, rhs2);
      }
    for (std::size_t i = 0; i < n; ++i) {
      Element lhs = mul_gen(tail(i), i);
      Element rhs = multiply(gen_power_collected(i, 1), tail(i));
      if (lhs != rhs) return failure("(" + name(i) + "^" + std::to_string(m_[i]) + ") " + name(i), lhs, rhs);
    }
    return {};
  }

  PcPresentation pres_;
  std::vector<std::uint32_t> m_;
  std::vector<std::vector<Syllable>> tails_;
  std::vector<std::vector<std::vector<Syllable>>> conj_;
  std::vector<char> commutes_;
  static constexpr std::uint64_t kMaxConjPowerCells = 1 << 16;
  std::vector<std::vector<std::vector<Syllable>>> conj_powers_;
  std::vector<char> powers_ready_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t order_ = 1;
  ConsistencyReport consistency_;
  std::vector<ElemId> gen_ids_;
};

} // namespace pqp
