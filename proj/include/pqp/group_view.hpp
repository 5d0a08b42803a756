#pragma once

// Abstract finite group over dense element indices, and generic helpers that
// only use the group operations.

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pqp/error.hpp"
#include "pqp/pc_group.hpp"

namespace pqp {

/// A finite p-group whose elements are the indices 0 .. order()-1.
template <class G>
concept FiniteGroup = requires(const G& g, ElemId a, ElemId b) {
  { g.order() } -> std::convertible_to<std::uint64_t>;
  { g.prime() } -> std::convertible_to<unsigned>;
  { g.identity() } -> std::convertible_to<ElemId>;
  { g.multiply(a, b) } -> std::convertible_to<ElemId>;
  { g.inverse(a) } -> std::convertible_to<ElemId>;
  { g.generators() } -> std::convertible_to<std::span<const ElemId>>;
  { g.describe(a) } -> std::convertible_to<std::string>;
};

static_assert(FiniteGroup<PcGroup>);

/// A group that can peel the last generator off a normal form.
template <class G>
concept PcStepped = FiniteGroup<G> && requires(const G& g, ElemId y) {
  { g.pc_step(y) } -> std::convertible_to<std::pair<ElemId, ElemId>>;
};

template <FiniteGroup G>
ElemId power(const G& g, ElemId x, std::uint64_t k) {
  ElemId acc = g.identity();
  ElemId base = x;
  while (k > 0) {
    if (k & 1) acc = g.multiply(acc, base);
    k >>= 1;
    if (k) base = g.multiply(base, base);
  }
  return acc;
}

template <FiniteGroup G>
ElemId commutator(const G& g, ElemId x, ElemId y) {
  return g.multiply(g.inverse(g.multiply(y, x)), g.multiply(x, y));
}

template <FiniteGroup G>
ElemId conjugate(const G& g, ElemId x, ElemId y) {
  return g.multiply(g.inverse(y), g.multiply(x, y));
}

template <FiniteGroup G>
std::uint64_t element_order(const G& g, ElemId x) {
  std::uint64_t o = 1;
  while (x != g.identity()) {
    x = power(g, x, g.prime());
    o *= g.prime();
  }
  return o;
}

/// Orders of all elements, indexed by element id.
template <FiniteGroup G>
std::vector<std::uint64_t> element_orders(const G& g) {
  std::vector<std::uint64_t> orders(g.order(), 0);
  const ElemId e = g.identity();
  for (ElemId x = 0; x < g.order(); ++x) {
    if (orders[x] != 0) continue;
    // walk the chain x, x^p, x^{p^2}, ... ; each link has order o/p
    std::vector<ElemId> chain{x};
    ElemId y = x;
    while (y != e && orders[y] == 0) {
      y = power(g, y, g.prime());
      chain.push_back(y);
    }
    std::uint64_t o = y == e ? 1 : orders[y];
    orders[e] = 1;
    for (std::size_t k = chain.size() - 1; k-- > 0;) {
      o *= g.prime();
      orders[chain[k]] = o;
    }
    if (x == e) orders[x] = 1;
  }
  return orders;
}

/// log_p of a power of p.
inline unsigned log_p(std::uint64_t n, unsigned p) {
  unsigned e = 0;
  while (n > 1) {
    n /= p;
    ++e;
  }
  return e;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

/// Full multiplication table of another group view, filled through that
/// view's multiply. Reads are lock-free and thread-safe.
template <FiniteGroup Base>
class Tabulated {
public:
  static constexpr std::uint64_t kDefaultMaxOrder = 10000;

  explicit Tabulated(const Base& base, std::uint64_t max_order = kDefaultMaxOrder, unsigned workers = 1)
      : base_(&base), n_(base.order()) {
    if (n_ > max_order)
      throw ResourceError("refusing to tabulate a group of order " + std::to_string(n_) + " (limit " +
                          std::to_string(max_order) + ")");
    table_.resize(n_ * n_);
    inverse_.resize(n_);
    auto run = [&](auto&& rows) {
      if (workers <= 1) return rows(std::uint64_t(0), n_);
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(rows, n_ * w / workers, n_ * (w + 1) / workers);
      for (auto& t : pool) t.join();
    };
    if constexpr (PcStepped<Base>) {
      // Generator columns by collection, then row x at y = y' s is row x at
      // y' times s, which is a lookup in the generator column of s.
      std::vector<std::pair<ElemId, ElemId>> steps(n_);
      for (std::uint64_t y = 1; y < n_; ++y) steps[y] = base.pc_step(static_cast<ElemId>(y));
      run([&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t a = lo; a < hi; ++a)
          for (ElemId s : base.generators()) table_[a * n_ + s] = base.multiply(static_cast<ElemId>(a), s);
      });
      run([&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t a = lo; a < hi; ++a) {
          ElemId* row = &table_[a * n_];
          row[0] = static_cast<ElemId>(a);
          for (std::uint64_t y = 1; y < n_; ++y) {
            const auto [prev, s] = steps[y];
            if (prev == 0) continue; // generator column, already filled
            row[y] = table_[std::uint64_t(row[prev]) * n_ + s];
          }
        }
      });
    } else {
      run([&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t a = lo; a < hi; ++a)
          for (std::uint64_t b = 0; b < n_; ++b)
            table_[a * n_ + b] = base.multiply(static_cast<ElemId>(a), static_cast<ElemId>(b));
      });
    }
    const ElemId e = base.identity();
    for (std::uint64_t a = 0; a < n_; ++a)
      for (std::uint64_t b = 0; b < n_; ++b)
        if (table_[a * n_ + b] == e) {
          inverse_[a] = static_cast<ElemId>(b);
          break;
        }
    gens_.assign(base.generators().begin(), base.generators().end());
  }

  std::uint64_t order() const noexcept { return n_; }
  unsigned prime() const { return base_->prime(); }
  ElemId identity() const { return base_->identity(); }
  ElemId multiply(ElemId a, ElemId b) const noexcept { return table_[std::uint64_t(a) * n_ + b]; }
  ElemId inverse(ElemId a) const noexcept { return inverse_[a]; }
  std::span<const ElemId> generators() const noexcept { return gens_; }
  std::string describe(ElemId a) const { return base_->describe(a); }
  const Base& base() const noexcept { return *base_; }

private:
  const Base* base_;
  std::uint64_t n_;
  std::vector<ElemId> table_;
  std::vector<ElemId> inverse_;
  std::vector<ElemId> gens_;
};

} // namespace pqp
