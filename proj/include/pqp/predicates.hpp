#pragma once

// Structural predicates on a subgroup S of a finite p-group, each returning a
// verdict with a witness that re-checks as a violation.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pqp/error.hpp"
#include "pqp/group_view.hpp"
#include "pqp/quotient.hpp"
#include "pqp/subgroup.hpp"
#include "pqp/sweep.hpp"

namespace pqp {

struct Verdict {
  bool holds = true;
  std::vector<std::pair<std::string, ElemId>> witness;
  std::string note;
  std::uint64_t checked = 0;
  bool exhaustive = true;
};

/// Pair sweeps run exhaustively while |S|^2 <= exhaustive_limit, otherwise on
/// `extra_pairs` followed by `sample` pseudorandom pairs.
struct PairSweep {
  std::uint64_t exhaustive_limit = 729ULL * 729ULL;
  std::uint64_t sample = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::vector<std::pair<ElemId, ElemId>> extra_pairs;
};

/// The pairs a sweep visits, in visiting order.
class PairPlan {
public:
  PairPlan(const Subgroup& s, const PairSweep& opt) : elems_(&s.elements()) {
    const std::uint64_t n = s.size();
    exhaustive_ = n * n <= opt.exhaustive_limit;
    if (exhaustive_) {
      count_ = n * n;
      return;
    }
    pairs_ = opt.extra_pairs;
    std::mt19937_64 rng(opt.seed);
    for (std::uint64_t k = 0; k < opt.sample; ++k) {
      ElemId x = (*elems_)[rng() % n];
      ElemId y = (*elems_)[rng() % n];
      pairs_.emplace_back(x, y);
    }
    count_ = pairs_.size();
  }

  std::uint64_t size() const noexcept { return count_; }
  bool exhaustive() const noexcept { return exhaustive_; }
  std::pair<ElemId, ElemId> operator[](std::uint64_t k) const {
    if (!exhaustive_) return pairs_[k];
    const std::uint64_t n = elems_->size();
    return {(*elems_)[k / n], (*elems_)[k % n]};
  }

private:
  const std::vector<ElemId>* elems_;
  bool exhaustive_ = true;
  std::uint64_t count_ = 0;
  std::vector<std::pair<ElemId, ElemId>> pairs_;
};

/// Verdict for `inner <= outer`; the witness is the smallest element of
/// inner outside outer.
inline Verdict containment(const Subgroup& inner, const Subgroup& outer, std::string label) {
  Verdict v;
  v.checked = inner.size();
  if (auto x = inner.first_outside(outer)) {
    v.holds = false;
    v.witness.emplace_back(std::move(label), *x);
  }
  return v;
}

template <FiniteGroup G>
Verdict is_abelian(const G& g, const Subgroup& s) {
  Verdict v;
  for (ElemId x : s.generators())
    for (ElemId y : s.generators()) {
      ++v.checked;
      if (g.multiply(x, y) != g.multiply(y, x)) {
        v.holds = false;
        v.witness = {{"x", x}, {"y", y}};
        return v;
      }
    }
  return v;
}

/// [S,S] <= S^p (odd p) or [S,S] <= S^4 (p = 2).
template <FiniteGroup G>
Verdict is_powerful(const G& g, const Subgroup& s) {
  return containment(derived_subgroup(g, s), powerful_agemo(g, s), "commutator outside the power subgroup");
}

/// gamma_{p-1}(S) <= S^p for p > 2, [S,S] <= S^4 for p = 2.
template <FiniteGroup G>
Verdict is_potent(const G& g, const Subgroup& s) {
  if (g.prime() == 2) return is_powerful(g, s);
  if (g.prime() == 3) return containment(derived_subgroup(g, s), agemo(g, s, 1), "commutator outside S^p");
  return containment(gamma(g, s, g.prime() - 1), agemo(g, s, 1), "element of gamma_{p-1} outside S^p");
}

/// [S,S] <= S^{p^2}.
template <FiniteGroup G>
Verdict is_strongly_powerful(const G& g, const Subgroup& s) {
  return containment(derived_subgroup(g, s), agemo(g, s, 2), "commutator outside S^{p^2}");
}

/// N normal in S with [N,S] <= N^p (odd p) or N^4 (p = 2). The witness is
/// the first x in N (by id) and generator h of S with [x,h] outside.
template <FiniteGroup G>
Verdict is_powerfully_embedded(const G& g, const Subgroup& n, const Subgroup& s) {
  if (!n.is_subset_of(s) || !normalizes(g, n, s.generators()))
    throw InvalidArgument("powerful embedding needs a normal subgroup");
  Verdict v;
  const Subgroup np = powerful_agemo(g, n);
  const Subgroup ns = commutator_subgroup(g, n, s);
  v.checked = ns.size();
  if (ns.is_subset_of(np)) return v;
  v.holds = false;
  for (ElemId x : n.elements())
    for (ElemId h : s.generators()) {
      ElemId c = commutator(g, x, h);
      if (!np.contains(c)) {
        v.witness = {{"x", x}, {"g", h}, {"[x,g]", c}};
        return v;
      }
    }
  throw std::logic_error("[N,S] escapes N^p but no commutator with a generator does");
}

/// x^p y^p = (xy)^p c with c in the subgroup generated by p-th powers of
/// gamma_2(<x,y>), for every swept pair.
template <FiniteGroup G>
Verdict is_regular(const G& g, const Subgroup& s, const PairSweep& opt = {}) {
  const unsigned p = g.prime();
  const PairPlan plan(s, opt);
  const unsigned workers = std::max(1u, opt.workers);
  std::vector<std::unordered_map<std::uint64_t, Subgroup>> caches(workers);

  auto defect = [&](ElemId x, ElemId y) {
    ElemId xy = g.multiply(x, y);
    return g.multiply(g.inverse(power(g, xy, p)), g.multiply(power(g, x, p), power(g, y, p)));
  };
  auto fails = [&](std::uint64_t k, unsigned w) {
    auto [x, y] = plan[k];
    ElemId d = defect(x, y);
    if (d == g.identity()) return false;
    ElemId pair[] = {x, y};
    Subgroup t = closure(g, std::span<const ElemId>(pair));
    auto& cache = caches[w];
    auto it = cache.find(t.fingerprint());
    if (it == cache.end()) it = cache.emplace(t.fingerprint(), agemo(g, derived_subgroup(g, t), 1)).first;
    return !it->second.contains(d);
  };

  Verdict v;
  v.exhaustive = plan.exhaustive();
  v.checked = plan.size();
  if (auto k = first_failure(plan.size(), workers, fails)) {
    auto [x, y] = plan[*k];
    v.holds = false;
    v.checked = *k + 1;
    v.witness = {{"x", x}, {"y", y}, {"(xy)^-p x^p y^p", defect(x, y)}};
  }
  return v;
}

/// H = S^p Z(S).
template <FiniteGroup G>
Subgroup power_center_product(const G& g, const Subgroup& s) {
  return join(g, agemo(g, s, 1), center(g, s));
}

/// G/Z(G) powerful, decided on the quotient and cross-checked against
/// [G,G] <= G^p Z(G). Witness: element of [G,G] outside G^p Z(G).
template <FiniteGroup G>
Verdict centre_by_powerful(const G& g) {
  const Subgroup whole = whole_group(g);
  const Subgroup z = center(g, whole);
  QuotientGroup<G> q(g, z);
  const bool by_quotient = is_powerful(q, whole_group(q)).holds;
  const Subgroup h = g.prime() == 2 ? join(g, agemo(g, whole, 2), z) : power_center_product(g, whole);
  Verdict v = containment(derived_subgroup(g, whole), h, "commutator outside the power-centre product");
  if (v.holds != by_quotient) throw std::logic_error("quotient and power-centre criteria disagree");
  return v;
}

template <FiniteGroup G>
Verdict is_quasi_powerful(const G& g) {
  if (g.prime() == 2)
    throw UnsupportedDefinition("quasi-powerful is defined only for odd primes; use centre_by_powerful for p = 2");
  return centre_by_powerful(g);
}

struct PropertyReport {
  unsigned prime = 0;
  std::uint64_t order = 0;
  std::uint64_t exponent = 0;
  unsigned nilpotency_class = 0;
  unsigned min_generators = 0;
  std::map<std::string, Verdict> properties;
};

template <FiniteGroup G>
PropertyReport property_report(const G& g, const PairSweep& regular_sweep = {}) {
  const Subgroup whole = whole_group(g);
  PropertyReport r;
  r.prime = g.prime();
  r.order = g.order();
  r.exponent = exponent_of(g, whole);
  r.nilpotency_class = nilpotency_class(g, whole);
  r.min_generators = min_generators(g, whole);
  r.properties["abelian"] = is_abelian(g, whole);
  r.properties["powerful"] = is_powerful(g, whole);
  r.properties["potent"] = is_potent(g, whole);
  r.properties["regular"] = is_regular(g, whole, regular_sweep);
  r.properties["strongly_powerful"] = is_strongly_powerful(g, whole);
  if (g.prime() == 2)
    r.properties["centre_by_powerful"] = centre_by_powerful(g);
  else
    r.properties["quasi_powerful"] = is_quasi_powerful(g);
  return r;
}

/// One row of the regular power structure matrix.
struct PowerStructureLevel {
  unsigned i = 0;
  std::uint64_t power_set_size = 0;
  std::uint64_t agemo_order = 0;
  std::uint64_t omega_order = 0;
  std::uint64_t bounded_set_size = 0;
  std::uint64_t omega_exponent = 0;
  Verdict powers;  // {x^{p^i}} = S^{p^i}
  Verdict omega;   // Omega_i(S) = {x : o(x) <= p^i}
  Verdict index;   // |S : S^{p^i}| = |Omega_i(S)|
};

/// Conditions (1)-(3) for i = 1 .. log_p exp(S).
template <FiniteGroup G>
std::vector<PowerStructureLevel> regular_power_structure(const G& g, const Subgroup& s) {
  std::vector<PowerStructureLevel> rows;
  const unsigned e = log_p(exponent_of(g, s), g.prime());
  for (unsigned i = 1; i <= e; ++i) {
    PowerStructureLevel row;
    row.i = i;
    auto image = power_image_set(g, s, i);
    Subgroup ag = closure(g, std::span<const ElemId>(image));
    auto bounded = bounded_order_set(g, s, i);
    Subgroup om = closure(g, std::span<const ElemId>(bounded));
    row.power_set_size = image.size();
    row.agemo_order = ag.size();
    row.bounded_set_size = bounded.size();
    row.omega_order = om.size();
    row.omega_exponent = exponent_of(g, om);

    row.powers.checked = ag.size();
    for (ElemId x : ag.elements())
      if (!std::binary_search(image.begin(), image.end(), x)) {
        row.powers.holds = false;
        row.powers.witness = {{"element of S^{p^i} that is not a p^i-th power", x}};
        break;
      }
    row.omega.checked = om.size();
    for (ElemId x : om.elements())
      if (!std::binary_search(bounded.begin(), bounded.end(), x)) {
        row.omega.holds = false;
        row.omega.witness = {{"element of Omega_i of order above p^i", x}};
        break;
      }
    row.index.holds = s.size() / ag.size() == om.size();
    if (!row.index.holds)
      row.index.note = "|S:S^{p^i}| = " + std::to_string(s.size() / ag.size()) + ", |Omega_i| = " +
                       std::to_string(om.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace pqp
