#pragma once

// G/N realised on coset representatives. The representative of a coset is its
// smallest element id, i.e. the lexicographically least exponent vector.

#include <algorithm>
#include <string>
#include <vector>

#include "pqp/error.hpp"
#include "pqp/group_view.hpp"
#include "pqp/subgroup.hpp"

namespace pqp {

template <FiniteGroup G>
class QuotientGroup {
public:
  QuotientGroup(const G& g, Subgroup kernel) : g_(&g), kernel_(std::move(kernel)) {
    if (!is_normal(g, kernel_)) throw InvalidArgument("quotient by a subgroup that is not normal");
    constexpr ElemId unset = ~ElemId(0);
    coset_.assign(g.order(), unset);
    for (ElemId x = 0; x < g.order(); ++x) {
      if (coset_[x] != unset) continue;
      const auto q = static_cast<ElemId>(reps_.size());
      reps_.push_back(x);
      for (ElemId n : kernel_.elements()) coset_[g.multiply(x, n)] = q;
    }
    for (ElemId h : g.generators()) {
      ElemId q = coset_[h];
      if (q != identity() && std::find(gens_.begin(), gens_.end(), q) == gens_.end()) gens_.push_back(q);
    }
  }

  std::uint64_t order() const noexcept { return reps_.size(); }
  unsigned prime() const { return g_->prime(); }
  ElemId identity() const noexcept { return coset_[g_->identity()]; }
  ElemId multiply(ElemId a, ElemId b) const { return coset_[g_->multiply(reps_[a], reps_[b])]; }
  ElemId inverse(ElemId a) const { return coset_[g_->inverse(reps_[a])]; }
  std::span<const ElemId> generators() const noexcept { return gens_; }
  std::string describe(ElemId a) const { return "(" + g_->describe(reps_[a]) + ")N"; }

  ElemId representative(ElemId q) const { return reps_.at(q); }
  ElemId coset_of(ElemId x) const { return coset_.at(x); }
  const Subgroup& kernel() const noexcept { return kernel_; }
  const G& parent() const noexcept { return *g_; }

  /// Full preimage of a subgroup of the quotient.
  Subgroup preimage(const Subgroup& s) const {
    std::vector<ElemId> out;
    for (ElemId x = 0; x < g_->order(); ++x)
      if (s.contains(coset_[x])) out.push_back(x);
    return subgroup_from_elements(*g_, std::move(out));
  }

private:
  const G* g_;
  Subgroup kernel_;
  std::vector<ElemId> coset_;
  std::vector<ElemId> reps_;
  std::vector<ElemId> gens_;
};

} // namespace pqp
