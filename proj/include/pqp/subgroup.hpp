#pragma once

// Subgroups stored extensionally (sorted element ids plus a membership bitmap)
// and the characteristic subgroups built from them.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pqp/error.hpp"
#include "pqp/group_view.hpp"

namespace pqp {

inline constexpr std::uint64_t kDefaultElementBudget = 10'000'000;

class Subgroup {
public:
  Subgroup() = default;

  Subgroup(std::uint64_t ambient_order, std::vector<ElemId> elements, std::vector<ElemId> generators)
      : ambient_(ambient_order), elements_(std::move(elements)), generators_(std::move(generators)),
        bits_((ambient_order + 63) / 64, 0) {
    std::sort(elements_.begin(), elements_.end());
    for (ElemId x : elements_) bits_[x >> 6] |= std::uint64_t(1) << (x & 63);
  }

  std::uint64_t size() const noexcept { return elements_.size(); }
  std::uint64_t ambient_order() const noexcept { return ambient_; }
  bool contains(ElemId x) const noexcept { return x < ambient_ && (bits_[x >> 6] >> (x & 63)) & 1; }
  const std::vector<ElemId>& elements() const noexcept { return elements_; }
  const std::vector<ElemId>& generators() const noexcept { return generators_; }
  bool is_trivial() const noexcept { return elements_.size() <= 1; }

  bool is_subset_of(const Subgroup& other) const {
    return std::all_of(elements_.begin(), elements_.end(), [&](ElemId x) { return other.contains(x); });
  }

  /// Smallest element of this subgroup outside `other`, if any.
  std::optional<ElemId> first_outside(const Subgroup& other) const {
    for (ElemId x : elements_)
      if (!other.contains(x)) return x;
    return std::nullopt;
  }

  std::uint64_t fingerprint() const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : bits_) {
      h ^= w;
      h *= 1099511628211ULL;
      h ^= h >> 29;
    }
    return h;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

private:
  std::uint64_t ambient_ = 0;
  std::vector<ElemId> elements_;
  std::vector<ElemId> generators_;
  std::vector<std::uint64_t> bits_;
};

/// Incremental closure by right cosets: adding a generator x to a closed
/// subgroup S appends the cosets S*r reachable from the identity.
template <FiniteGroup G>
class SubgroupBuilder {
public:
  explicit SubgroupBuilder(const G& g, std::uint64_t budget = kDefaultElementBudget)
      : g_(&g), budget_(budget), bits_((g.order() + 63) / 64, 0) {
    insert(g.identity());
  }

  SubgroupBuilder(const G& g, const Subgroup& start, std::uint64_t budget = kDefaultElementBudget)
      : g_(&g), budget_(budget), bits_((g.order() + 63) / 64, 0) {
    elems_ = start.elements();
    for (ElemId x : elems_) set(x);
    gens_ = start.generators();
  }

  bool contains(ElemId x) const noexcept { return (bits_[x >> 6] >> (x & 63)) & 1; }
  std::uint64_t size() const noexcept { return elems_.size(); }

  /// Returns false when x was already a member.
  bool add(ElemId x) {
    if (contains(x)) return false;
    gens_.push_back(x);
    const std::size_t old = elems_.size();
    std::vector<ElemId> reps{g_->identity()};
    for (std::size_t r = 0; r < reps.size(); ++r) {
      for (ElemId h : gens_) {
        ElemId y = g_->multiply(reps[r], h);
        if (contains(y)) continue;
        if (elems_.size() + old > budget_)
          throw ResourceError("subgroup closure exceeded the element budget of " + std::to_string(budget_));
        for (std::size_t k = 0; k < old; ++k) insert(g_->multiply(elems_[k], y));
        reps.push_back(y);
      }
    }
    return true;
  }

  Subgroup build() const { return Subgroup(g_->order(), elems_, gens_); }

private:
  void set(ElemId x) { bits_[x >> 6] |= std::uint64_t(1) << (x & 63); }
  void insert(ElemId x) {
    if (contains(x)) return;
    set(x);
    elems_.push_back(x);
  }

  const G* g_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> bits_;
  std::vector<ElemId> elems_;
  std::vector<ElemId> gens_;
};

template <FiniteGroup G>
Subgroup trivial_subgroup(const G& g) {
  return Subgroup(g.order(), {g.identity()}, {});
}

/// Subgroup generated by `gens`; redundant generators are dropped.
template <FiniteGroup G>
Subgroup closure(const G& g, std::span<const ElemId> gens, std::uint64_t budget = kDefaultElementBudget) {
  SubgroupBuilder<G> b(g, budget);
  for (ElemId x : gens) b.add(x);
  return b.build();
}

template <FiniteGroup G>
Subgroup closure(const G& g, std::initializer_list<ElemId> gens, std::uint64_t budget = kDefaultElementBudget) {
  return closure(g, std::span<const ElemId>(gens.begin(), gens.size()), budget);
}

template <FiniteGroup G>
Subgroup whole_group(const G& g) {
  return closure(g, g.generators());
}

/// Subgroup generated by the union of two subgroups.
template <FiniteGroup G>
Subgroup join(const G& g, const Subgroup& a, const Subgroup& b) {
  SubgroupBuilder<G> builder(g, a);
  for (ElemId x : b.generators()) builder.add(x);
  return builder.build();
}

/// Wraps a set already known to be a subgroup; generators chosen greedily.
template <FiniteGroup G>
Subgroup subgroup_from_elements(const G& g, std::vector<ElemId> elements) {
  std::sort(elements.begin(), elements.end());
  SubgroupBuilder<G> b(g);
  for (ElemId x : elements) b.add(x);
  Subgroup s = b.build();
  if (s.elements() != elements) throw std::logic_error("element set is not closed under multiplication");
  return s;
}

template <FiniteGroup G>
Subgroup intersection(const G& g, const Subgroup& a, const Subgroup& b) {
  std::vector<ElemId> common;
  for (ElemId x : a.elements())
    if (b.contains(x)) common.push_back(x);
  return subgroup_from_elements(g, std::move(common));
}

/// Smallest subgroup containing `gens` and closed under conjugation by every
/// element of `conjugators`.
template <FiniteGroup G>
Subgroup normal_closure(const G& g, std::span<const ElemId> gens, std::span<const ElemId> conjugators,
                        std::uint64_t budget = kDefaultElementBudget) {
  SubgroupBuilder<G> b(g, budget);
  std::vector<ElemId> queue;
  for (ElemId x : gens)
    if (b.add(x)) queue.push_back(x);
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (ElemId c : conjugators) {
      ElemId y = conjugate(g, queue[k], c);
      if (b.add(y)) queue.push_back(y);
    }
  return b.build();
}

template <FiniteGroup G>
bool normalizes(const G& g, const Subgroup& n, std::span<const ElemId> conjugators) {
  for (ElemId x : n.generators())
    for (ElemId c : conjugators)
      if (!n.contains(conjugate(g, x, c))) return false;
  return true;
}

template <FiniteGroup G>
bool is_normal(const G& g, const Subgroup& n) {
  return normalizes(g, n, g.generators());
}

/// [A, B], generated by commutators of generators and closed under <A, B>.
template <FiniteGroup G>
Subgroup commutator_subgroup(const G& g, const Subgroup& a, const Subgroup& b,
                             std::uint64_t budget = kDefaultElementBudget) {
  std::vector<ElemId> comms;
  for (ElemId x : a.generators())
    for (ElemId y : b.generators()) comms.push_back(commutator(g, x, y));
  std::vector<ElemId> conj(a.generators());
  conj.insert(conj.end(), b.generators().begin(), b.generators().end());
  return normal_closure(g, comms, conj, budget);
}

template <FiniteGroup G>
Subgroup derived_subgroup(const G& g, const Subgroup& s) {
  return commutator_subgroup(g, s, s);
}

/// Closure of every commutator [x, y] with x, y in s.
template <FiniteGroup G>
Subgroup derived_subgroup_all_pairs(const G& g, const Subgroup& s) {
  SubgroupBuilder<G> b(g);
  for (ElemId x : s.elements())
    for (ElemId y : s.elements()) b.add(commutator(g, x, y));
  return b.build();
}

/// gamma_1(s) = s, gamma_{k+1}(s) = [gamma_k(s), s]; stops at the first
/// repeated term, so the last entry is trivial for a p-group.
template <FiniteGroup G>
std::vector<Subgroup> lower_central_series(const G& g, const Subgroup& s) {
  std::vector<Subgroup> series{s};
  while (!series.back().is_trivial()) {
    Subgroup next = commutator_subgroup(g, series.back(), s);
    if (next == series.back()) throw std::logic_error("lower central series stalled; not a p-group");
    series.push_back(std::move(next));
  }
  return series;
}

/// gamma_k(s), k >= 1.
template <FiniteGroup G>
Subgroup gamma(const G& g, const Subgroup& s, unsigned k) {
  if (k == 0) throw InvalidArgument("gamma index starts at 1");
  Subgroup cur = s;
  for (unsigned i = 1; i < k && !cur.is_trivial(); ++i) cur = commutator_subgroup(g, cur, s);
  return cur;
}

template <FiniteGroup G>
unsigned nilpotency_class(const G& g, const Subgroup& s) {
  return static_cast<unsigned>(lower_central_series(g, s).size() - 1);
}

/// Elements of s commuting with every generator of s.
template <FiniteGroup G>
Subgroup center(const G& g, const Subgroup& s) {
  std::vector<ElemId> z;
  for (ElemId x : s.elements()) {
    bool central = true;
    for (ElemId h : s.generators())
      if (g.multiply(x, h) != g.multiply(h, x)) {
        central = false;
        break;
      }
    if (central) z.push_back(x);
  }
  return subgroup_from_elements(g, std::move(z));
}

/// The literal set {x^{p^i} : x in s}, sorted.
template <FiniteGroup G>
std::vector<ElemId> power_image_set(const G& g, const Subgroup& s, unsigned i) {
  const std::uint64_t q = ipow(g.prime(), i);
  std::vector<ElemId> out;
  out.reserve(s.size());
  for (ElemId x : s.elements()) out.push_back(power(g, x, q));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// s^{p^i} = <x^{p^i} : x in s>.
template <FiniteGroup G>
Subgroup agemo(const G& g, const Subgroup& s, unsigned i) {
  auto powers = power_image_set(g, s, i);
  return closure(g, std::span<const ElemId>(powers));
}

/// Elements x of s with x^{p^i} = 1 (not closed).
template <FiniteGroup G>
std::vector<ElemId> bounded_order_set(const G& g, const Subgroup& s, unsigned i) {
  const std::uint64_t q = ipow(g.prime(), i);
  std::vector<ElemId> out;
  for (ElemId x : s.elements())
    if (power(g, x, q) == g.identity()) out.push_back(x);
  return out;
}

/// Omega_i(s) = <x in s : x^{p^i} = 1>.
template <FiniteGroup G>
Subgroup omega(const G& g, const Subgroup& s, unsigned i) {
  auto low = bounded_order_set(g, s, i);
  return closure(g, std::span<const ElemId>(low));
}

/// Phi(s) = s^p [s, s].
template <FiniteGroup G>
Subgroup frattini(const G& g, const Subgroup& s) {
  return join(g, agemo(g, s, 1), derived_subgroup(g, s));
}

/// d(s) = log_p |s : Phi(s)|.
template <FiniteGroup G>
unsigned min_generators(const G& g, const Subgroup& s) {
  if (s.is_trivial()) return 0;
  return log_p(s.size() / frattini(g, s).size(), g.prime());
}

/// Largest element order in s.
template <FiniteGroup G>
std::uint64_t exponent_of(const G& g, const Subgroup& s) {
  std::uint64_t e = 1;
  for (ElemId x : s.elements()) e = std::max(e, element_order(g, x));
  return e;
}

/// s^p for odd p, s^4 for p = 2.
template <FiniteGroup G>
Subgroup powerful_agemo(const G& g, const Subgroup& s) {
  return agemo(g, s, g.prime() == 2 ? 2 : 1);
}

} // namespace pqp
