#pragma once

// Subgroup lattices by cyclic extension, and seeded subgroup sampling.

#include <cstdint>
#include <functional>
#include <random>
#include <unordered_map>
#include <vector>

#include "pqp/error.hpp"
#include "pqp/group_view.hpp"
#include "pqp/subgroup.hpp"

namespace pqp {

struct EnumerationLimits {
  std::uint64_t max_group_order = 729;
  std::uint64_t max_subgroups = 2'000'000;
};

/// Calls `visit` once per subgroup of g, trivial subgroup first, then in the
/// order subgroups are discovered by extending known ones by one element.
/// Returns the number of subgroups.
template <FiniteGroup G>
std::uint64_t enumerate_subgroups(const G& g, const std::function<void(const Subgroup&)>& visit,
                                  const EnumerationLimits& limits = {}) {
  if (g.order() > limits.max_group_order)
    throw ResourceError("exhaustive subgroup enumeration refused for order " + std::to_string(g.order()) +
                        " (limit " + std::to_string(limits.max_group_order) + ")");
  std::vector<Subgroup> found{trivial_subgroup(g)};
  std::unordered_multimap<std::uint64_t, std::size_t> index{{found[0].fingerprint(), 0}};
  visit(found[0]);

  auto known = [&](const Subgroup& s) {
    auto [lo, hi] = index.equal_range(s.fingerprint());
    for (auto it = lo; it != hi; ++it)
      if (found[it->second] == s) return true;
    return false;
  };

  std::vector<char> done(g.order());
  for (std::size_t k = 0; k < found.size(); ++k) {
    const Subgroup h = found[k];
    std::fill(done.begin(), done.end(), 0);
    for (ElemId x : h.elements()) done[x] = 1;
    for (ElemId x = 0; x < g.order(); ++x) {
      if (done[x]) continue;
      // <H, xh> = <H, x> for h in H
      for (ElemId y : h.elements()) done[g.multiply(x, y)] = 1;
      SubgroupBuilder<G> b(g, h);
      b.add(x);
      Subgroup ext = b.build();
      if (known(ext)) continue;
      if (found.size() >= limits.max_subgroups)
        throw ResourceError("subgroup enumeration stopped after " + std::to_string(found.size()) + " subgroups");
      index.emplace(ext.fingerprint(), found.size());
      found.push_back(std::move(ext));
      visit(found.back());
    }
  }
  return found.size();
}

template <FiniteGroup G>
std::vector<Subgroup> all_subgroups(const G& g, const EnumerationLimits& limits = {}) {
  std::vector<Subgroup> out;
  enumerate_subgroups(g, [&](const Subgroup& s) { out.push_back(s); }, limits);
  return out;
}

/// `count` subgroups, each generated by `gens_per_sample` elements drawn from
/// a mt19937_64 stream seeded with `seed`.
template <FiniteGroup G>
std::vector<Subgroup> sample_subgroups(const G& g, std::uint64_t count, unsigned gens_per_sample, std::uint64_t seed,
                                       std::uint64_t budget = kDefaultElementBudget) {
  if (count == 0 || gens_per_sample == 0) throw InvalidArgument("sample count and generator count must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Subgroup> out;
  out.reserve(count);
  std::vector<ElemId> gens(gens_per_sample);
  for (std::uint64_t k = 0; k < count; ++k) {
    for (auto& x : gens) x = static_cast<ElemId>(rng() % g.order());
    out.push_back(closure(g, std::span<const ElemId>(gens), budget));
  }
  return out;
}

} // namespace pqp
