#pragma once

// Brute-force ground truth. The Cayley table is bootstrapped from the
// presentation through the suffix groups G_j = <g_j, .., g_n>, using only
// table lookups; nothing here calls the collector.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pqp/error.hpp"
#include "pqp/presentation.hpp"

namespace pqp::oracle {

using Id = std::uint32_t;

class CayleyTable {
public:
  static constexpr std::uint64_t kDefaultMaxOrder = 10000;

  CayleyTable() = default;

  /// Assumes a consistent presentation; check `latin_square()` and
  /// associativity before trusting the result.
  explicit CayleyTable(const PcPresentation& pres, std::uint64_t max_order = kDefaultMaxOrder)
      : prime_(pres.prime()) {
    const std::size_t n = pres.size();
    m_.resize(n);
    strides_.assign(n, 1);
    std::uint64_t order = 1;
    for (std::size_t i = n; i-- > 0;) {
      m_[i] = pres.relative_order(i);
      strides_[i] = order;
      order *= m_[i];
      if (order > max_order)
        throw ResourceError("oracle table refused: order exceeds " + std::to_string(max_order));
    }
    for (std::size_t i = 0; i < n; ++i) names_.push_back(pres.name(i));

    // Table of G_n = 1, then G_{n-1}, ..., G_1 = G.
    std::vector<Id> sub{0};
    std::uint64_t sub_order = 1;
    for (std::size_t j = n; j-- > 0;) {
      const std::uint64_t sz = sub_order * m_[j];
      std::vector<Id> cur(sz * sz);
      auto sub_mul = [&](Id a, Id b) { return sub[std::uint64_t(a) * sub_order + b]; };
      auto sub_inv = [&](Id a) {
        for (Id b = 0; b < sub_order; ++b)
          if (sub_mul(a, b) == 0) return b;
        throw std::logic_error("suffix table has no inverse");
      };
      auto eval = [&](const Word& w) {
        Id acc = 0;
        for (const auto& l : w.letters) {
          Id base = static_cast<Id>(strides_[l.gen]);
          if (l.exp < 0) base = sub_inv(base);
          const long long k = l.exp < 0 ? -l.exp : l.exp;
          for (long long t = 0; t < k; ++t) acc = sub_mul(acc, base);
        }
        return acc;
      };
      // phi(x') = x'^{g_j} on G_{j+1}, multiplicative, fixed by the images of
      // the generators of G_{j+1}
      std::vector<Id> gen_image(n, 0);
      for (std::size_t k = j + 1; k < n; ++k) gen_image[k] = eval(pres.conjugate(k, j));
      std::vector<Id> phi(sub_order);
      for (Id x = 0; x < sub_order; ++x) {
        Id acc = 0;
        std::uint64_t rest = x;
        for (std::size_t k = j + 1; k < n; ++k) {
          auto e = rest / strides_[k];
          rest %= strides_[k];
          for (std::uint64_t t = 0; t < e; ++t) acc = sub_mul(acc, gen_image[k]);
        }
        phi[x] = acc;
      }
      const Id tail = eval(pres.power_tail(j));

      // act[k][x] = x * g_k on G_j for k >= j
      std::vector<std::vector<Id>> act(n);
      for (std::size_t k = j; k < n; ++k) {
        act[k].resize(sz);
        for (Id x = 0; x < sz; ++x) {
          const std::uint64_t e = x / strides_[j];
          const Id rest = static_cast<Id>(x % strides_[j]);
          if (k > j) {
            act[k][x] = static_cast<Id>(e * strides_[j] + sub_mul(rest, static_cast<Id>(strides_[k])));
          } else {
            const Id moved = phi[rest];
            act[k][x] = e + 1 < m_[j] ? static_cast<Id>((e + 1) * strides_[j] + moved) : sub_mul(tail, moved);
          }
        }
      }
      // y = y' g_k with k the last nonzero coordinate of y
      for (Id x = 0; x < sz; ++x) {
        Id* row = &cur[std::uint64_t(x) * sz];
        row[0] = x;
        for (Id y = 1; y < sz; ++y) {
          std::size_t k = n - 1;
          while ((y / strides_[k]) % m_[k] == 0) --k;
          row[y] = act[k][row[y - strides_[k]]];
        }
      }
      sub = std::move(cur);
      sub_order = sz;
    }
    order_ = sub_order;
    table_ = std::move(sub);
    inverse_.assign(order_, 0);
    for (Id a = 0; a < order_; ++a)
      for (Id b = 0; b < order_; ++b)
        if (multiply(a, b) == 0) {
          inverse_[a] = b;
          break;
        }
    for (std::size_t i = 0; i < n; ++i) gens_.push_back(static_cast<Id>(strides_[i]));
  }

  std::uint64_t order() const noexcept { return order_; }
  unsigned prime() const noexcept { return prime_; }
  Id identity() const noexcept { return 0; }
  Id multiply(Id a, Id b) const noexcept { return table_[std::uint64_t(a) * order_ + b]; }
  Id inverse(Id a) const noexcept { return inverse_[a]; }
  std::span<const Id> generators() const noexcept { return gens_; }
  const std::vector<Id>& raw() const noexcept { return table_; }

  std::vector<std::uint32_t> exponents(Id a) const {
    std::vector<std::uint32_t> e(m_.size());
    std::uint64_t rest = a;
    for (std::size_t i = 0; i < m_.size(); ++i) {
      e[i] = static_cast<std::uint32_t>(rest / strides_[i]);
      rest %= strides_[i];
    }
    return e;
  }

  std::string describe(Id a) const {
    auto e = exponents(a);
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += ' ';
      out += names_[i];
      if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
  }

  bool latin_square() const {
    std::vector<std::uint32_t> seen(order_, 0);
    std::uint32_t stamp = 0;
    for (Id a = 0; a < order_; ++a) {
      ++stamp;
      for (Id b = 0; b < order_; ++b) {
        Id c = multiply(a, b);
        if (seen[c] == stamp) return false;
        seen[c] = stamp;
      }
    }
    for (Id b = 0; b < order_; ++b) {
      ++stamp;
      for (Id a = 0; a < order_; ++a) {
        Id c = multiply(a, b);
        if (seen[c] == stamp) return false;
        seen[c] = stamp;
      }
    }
    return true;
  }

  struct AssociativityResult {
    bool holds = true;
    std::uint64_t triples = 0;
    bool exhaustive = true;
    Id a = 0, b = 0, c = 0;
  };

  /// All triples when `full` or order <= 81, otherwise `samples` seeded ones.
  AssociativityResult check_associativity(bool full, std::uint64_t samples = 1'000'000, std::uint64_t seed = 0) const {
    AssociativityResult r;
    auto test = [&](Id a, Id b, Id c) {
      ++r.triples;
      if (multiply(multiply(a, b), c) == multiply(a, multiply(b, c))) return true;
      r.holds = false;
      r.a = a;
      r.b = b;
      r.c = c;
      return false;
    };
    if (full || order_ <= 81) {
      for (Id a = 0; a < order_; ++a)
        for (Id b = 0; b < order_; ++b) {
          const Id ab = multiply(a, b);
          for (Id c = 0; c < order_; ++c) {
            ++r.triples;
            if (multiply(ab, c) != multiply(a, multiply(b, c))) {
              r.holds = false;
              r.a = a;
              r.b = b;
              r.c = c;
              return r;
            }
          }
        }
      return r;
    }
    r.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (std::uint64_t k = 0; k < samples; ++k)
      if (!test(static_cast<Id>(rng() % order_), static_cast<Id>(rng() % order_), static_cast<Id>(rng() % order_)))
        break;
    return r;
  }

  void dump(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path);
    os.write("PQPTBL01", 8);
    write_le(os, order_, 8);
    for (Id v : table_) write_le(os, v, 4);
    if (!os) throw Error("write failed for " + path);
  }

  /// Raw table of a dump; the result has no generator names.
  static std::vector<Id> load_raw(const std::string& path, std::uint64_t& order) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot read " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, "PQPTBL01", 8) != 0) throw Error(path + " is not a table dump");
    order = read_le(is, 8);
    if (order > kDefaultMaxOrder * 10) throw Error(path + " declares an implausible order");
    std::vector<Id> t(order * order);
    for (auto& v : t) v = static_cast<Id>(read_le(is, 4));
    if (!is) throw Error(path + " is truncated");
    return t;
  }

private:
  static void write_le(std::ostream& os, std::uint64_t v, int bytes) {
    char buf[8];
    for (int k = 0; k < bytes; ++k) buf[k] = static_cast<char>((v >> (8 * k)) & 0xFF);
    os.write(buf, bytes);
  }
  static std::uint64_t read_le(std::istream& is, int bytes) {
    unsigned char buf[8] = {};
    is.read(reinterpret_cast<char*>(buf), bytes);
    std::uint64_t v = 0;
    for (int k = bytes; k-- > 0;) v = (v << 8) | buf[k];
    return v;
  }

  unsigned prime_ = 0;
  std::uint64_t order_ = 0;
  std::vector<std::uint32_t> m_;
  std::vector<std::uint64_t> strides_;
  std::vector<std::string> names_;
  std::vector<Id> table_;
  std::vector<Id> inverse_;
  std::vector<Id> gens_;
};

// ---- naive computations over the table ---------------------------------------

using ElementSet = std::vector<Id>; // sorted

inline Id power(const CayleyTable& t, Id x, std::uint64_t k) {
  Id acc = 0;
  for (std::uint64_t s = 0; s < k; ++s) acc = t.multiply(acc, x);
  return acc;
}

inline Id commutator(const CayleyTable& t, Id x, Id y) {
  return t.multiply(t.multiply(t.inverse(x), t.inverse(y)), t.multiply(x, y));
}

inline std::uint64_t order_of(const CayleyTable& t, Id x) {
  std::uint64_t k = 1;
  for (Id y = x; y != 0; y = t.multiply(y, x)) ++k;
  return k;
}

/// Breadth-first closure: every element times every generator.
inline ElementSet closure(const CayleyTable& t, const std::vector<Id>& gens) {
  std::vector<char> in(t.order(), 0);
  std::vector<Id> out{0};
  in[0] = 1;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (Id s : gens) {
      Id y = t.multiply(out[k], s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline ElementSet whole(const CayleyTable& t) {
  ElementSet all(t.order());
  for (Id x = 0; x < t.order(); ++x) all[x] = x;
  return all;
}

inline bool member(const ElementSet& s, Id x) { return std::binary_search(s.begin(), s.end(), x); }

inline ElementSet center(const CayleyTable& t) {
  ElementSet z;
  for (Id x = 0; x < t.order(); ++x) {
    bool central = true;
    for (Id y = 0; y < t.order() && central; ++y) central = t.multiply(x, y) == t.multiply(y, x);
    if (central) z.push_back(x);
  }
  return z;
}

/// [A, B] as the closure of all commutators [a, b].
inline ElementSet commutators(const CayleyTable& t, const ElementSet& a, const ElementSet& b) {
  std::vector<char> seen(t.order(), 0);
  std::vector<Id> gens;
  for (Id x : a)
    for (Id y : b) {
      Id c = commutator(t, x, y);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  return closure(t, gens);
}

inline ElementSet agemo(const CayleyTable& t, const ElementSet& s, unsigned i) {
  std::uint64_t q = 1;
  for (unsigned k = 0; k < i; ++k) q *= t.prime();
  std::vector<Id> gens;
  for (Id x : s) gens.push_back(power(t, x, q));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return closure(t, gens);
}

inline ElementSet omega(const CayleyTable& t, const ElementSet& s, unsigned i) {
  std::uint64_t q = 1;
  for (unsigned k = 0; k < i; ++k) q *= t.prime();
  std::vector<Id> gens;
  for (Id x : s)
    if (q % order_of(t, x) == 0) gens.push_back(x);
  return closure(t, gens);
}

inline ElementSet join(const CayleyTable& t, const ElementSet& a, const ElementSet& b) {
  std::vector<Id> gens(a);
  gens.insert(gens.end(), b.begin(), b.end());
  return closure(t, gens);
}

inline ElementSet frattini(const CayleyTable& t, const ElementSet& s) {
  return join(t, agemo(t, s, 1), commutators(t, s, s));
}

inline unsigned log_p(std::uint64_t n, unsigned p) {
  unsigned e = 0;
  for (; n > 1; n /= p) ++e;
  return e;
}

/// All subgroups: closures of all pairs, then joins until nothing new appears.
inline std::set<ElementSet> all_subgroups(const CayleyTable& t) {
  std::set<ElementSet> subs;
  for (Id x = 0; x < t.order(); ++x)
    for (Id y = x; y < t.order(); ++y) subs.insert(closure(t, {x, y}));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<ElementSet> list(subs.begin(), subs.end());
    for (std::size_t a = 0; a < list.size(); ++a)
      for (std::size_t b = a + 1; b < list.size(); ++b)
        if (subs.insert(join(t, list[a], list[b])).second) grew = true;
  }
  return subs;
}

/// Lyndon words of length n over r letters, by Duval's generation.
inline std::uint64_t lyndon_count(unsigned r, unsigned n) {
  if (r == 0 || n == 0) return 0;
  std::uint64_t count = 0;
  std::vector<unsigned> w{0};
  while (!w.empty()) {
    if (w.size() == n) ++count;
    const std::size_t m = w.size();
    while (w.size() < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == r - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return count;
}

} // namespace pqp::oracle
