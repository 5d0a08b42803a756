#pragma once

// Engine results against the oracle table. Element ids agree on both sides
// because both enumerate normal forms in the same mixed radix.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pqp/group_view.hpp"
#include "pqp/oracle.hpp"
#include "pqp/pc_group.hpp"
#include "pqp/subgroup.hpp"

namespace pqp {

struct CrossCheck {
  std::vector<std::string> diffs;
  std::map<std::string, std::uint64_t> oracle_values;
  bool ok() const noexcept { return diffs.empty(); }
};

template <FiniteGroup G>
CrossCheck recompute_and_compare(const G& g, const oracle::CayleyTable& t) {
  namespace o = oracle;
  CrossCheck r;
  if (g.order() != t.order()) {
    r.diffs.push_back("order: engine " + std::to_string(g.order()) + ", oracle " + std::to_string(t.order()));
    return r;
  }
  const std::uint64_t n = t.order();
  std::uint64_t bad_products = 0;
  for (ElemId a = 0; a < n; ++a)
    for (ElemId b = 0; b < n; ++b)
      if (g.multiply(a, b) != t.multiply(a, b)) {
        if (bad_products++ == 0)
          r.diffs.push_back("product " + t.describe(a) + " * " + t.describe(b) + ": engine " +
                            t.describe(g.multiply(a, b)) + ", oracle " + t.describe(t.multiply(a, b)));
      }
  if (bad_products > 1) r.diffs.push_back(std::to_string(bad_products) + " products differ in total");
  for (ElemId a = 0; a < n; ++a)
    if (g.inverse(a) != t.inverse(a)) {
      r.diffs.push_back("inverse of " + t.describe(a));
      break;
    }

  const auto orders = element_orders(g);
  std::uint64_t exponent = 1;
  for (ElemId a = 0; a < n; ++a) {
    const std::uint64_t oo = o::order_of(t, a);
    exponent = std::max(exponent, oo);
    if (orders[a] != oo) {
      r.diffs.push_back("order of " + t.describe(a) + ": engine " + std::to_string(orders[a]) + ", oracle " +
                        std::to_string(oo));
      break;
    }
  }
  r.oracle_values["exponent"] = exponent;

  auto compare = [&](const std::string& what, const Subgroup& engine, const o::ElementSet& truth) {
    r.oracle_values[what] = truth.size();
    if (engine.elements() != truth)
      r.diffs.push_back(what + ": engine order " + std::to_string(engine.size()) + ", oracle order " +
                        std::to_string(truth.size()));
  };

  const Subgroup whole = whole_group(g);
  const o::ElementSet all = o::whole(t);
  if (whole.elements() != all) r.diffs.push_back("generators do not reach every normal form");
  compare("center", center(g, whole), o::center(t));
  compare("derived", derived_subgroup(g, whole), o::commutators(t, all, all));
  compare("derived_all_pairs", derived_subgroup_all_pairs(g, whole), o::commutators(t, all, all));
  const o::ElementSet phi = o::frattini(t, all);
  compare("frattini", frattini(g, whole), phi);
  const unsigned d = o::log_p(n / phi.size(), t.prime());
  r.oracle_values["min_generators"] = d;
  if (min_generators(g, whole) != d) r.diffs.push_back("min_generators");

  // gamma_{k+1} = closure of [x, g] over all x in gamma_k and g in G
  const auto series = lower_central_series(g, whole);
  o::ElementSet gk = all;
  unsigned k = 1;
  for (; gk.size() > 1; ++k) {
    if (k - 1 >= series.size() || series[k - 1].elements() != gk) {
      r.diffs.push_back("gamma_" + std::to_string(k));
      break;
    }
    gk = o::commutators(t, gk, all);
  }
  r.oracle_values["nilpotency_class"] = k - 1;
  if (nilpotency_class(g, whole) != k - 1) r.diffs.push_back("nilpotency class");

  const unsigned e = o::log_p(exponent, t.prime());
  for (unsigned i = 0; i <= e; ++i) {
    compare("omega_" + std::to_string(i), omega(g, whole, i), o::omega(t, all, i));
    compare("agemo_" + std::to_string(i), agemo(g, whole, i), o::agemo(t, all, i));
  }
  return r;
}

} // namespace pqp
