#pragma once

// Executable checks of the power-structure theorems. Every verifier reports
// whether its hypothesis held; a failed hypothesis is never reported as a
// pass.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pqp/enumerate.hpp"
#include "pqp/error.hpp"
#include "pqp/group_view.hpp"
#include "pqp/predicates.hpp"
#include "pqp/subgroup.hpp"
#include "pqp/sweep.hpp"

namespace pqp {

struct TheoremVerdict {
  std::string id;
  std::string group;
  bool holds = true;
  bool precondition_met = true;
  std::string precondition;
  std::string swept;
  std::vector<std::pair<std::string, std::string>> witness;
  std::vector<std::pair<std::string, std::int64_t>> data;

  /// A check that ran under its hypothesis and found a violation.
  bool failed() const noexcept { return precondition_met && !holds; }
};

// ---- Witt's formula ------------------------------------------------------------

inline int mobius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

/// (1/n) sum_{d | n} mu(d) r^{n/d}, exactly.
inline std::uint64_t witt_count(std::uint64_t r, std::uint64_t n) {
  if (r == 0 || n == 0) throw InvalidArgument("witt_count needs r >= 1 and n >= 1");
  __int128 sum = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    __int128 term = 1;
    for (std::uint64_t k = 0; k < n / d; ++k) {
      term *= r;
      if (term > (__int128(1) << 120)) throw InvalidArgument("witt_count overflow");
    }
    sum += mobius(d) * term;
  }
  if (sum < 0 || sum % n != 0) throw std::logic_error("Witt sum not divisible by n");
  return static_cast<std::uint64_t>(sum / n);
}

inline TheoremVerdict verify_witt(unsigned max_r = 5, unsigned max_n = 8) {
  TheoremVerdict v;
  v.id = "witt";
  v.group = "-";
  v.swept = "1 <= r <= " + std::to_string(max_r) + ", 1 <= n <= " + std::to_string(max_n) + ", plus weight 2 up to r = 10";
  for (unsigned r = 1; r <= max_r && v.holds; ++r)
    for (unsigned n = 1; n <= max_n; ++n) {
      __int128 sum = 0;
      for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) sum += mobius(d) * static_cast<__int128>(ipow(r, n / d));
      if (static_cast<__int128>(witt_count(r, n)) * n != sum) {
        v.holds = false;
        v.witness = {{"r", std::to_string(r)}, {"n", std::to_string(n)}};
        break;
      }
    }
  for (unsigned r = 1; r <= 10 && v.holds; ++r)
    if (witt_count(r, 2) != r * (r - 1) / 2) {
      v.holds = false;
      v.witness = {{"r", std::to_string(r)}, {"n", "2"}};
    }
  return v;
}

// ---- group suites ---------------------------------------------------------------

struct SuiteOptions {
  /// Pairs for the product-order and commutator-order sweeps; exhaustive below the limit.
  PairSweep pairs{};
  /// Pairs for the graded commutator-order bounds.
  PairSweep detailed_pairs{729ULL * 729ULL, 100000, 0, 1, {}};
  std::uint64_t collection_trials = 100;
  std::uint64_t collection_seed = 0;
  std::uint64_t enumeration_limit = 729;
  std::uint64_t subgroup_samples = 500;
  unsigned subgroup_sample_gens = 3;
  std::uint64_t subgroup_seed = 7;
  unsigned interchange_max = 2;
  /// Run checks even when the hypothesis fails (for negative controls).
  bool force = false;

  void set_workers(unsigned w) {
    pairs.workers = w;
    detailed_pairs.workers = w;
  }
  void set_seed(std::uint64_t s) {
    pairs.seed = s;
    detailed_pairs.seed = s;
    collection_seed = s;
  }
};

/// Options of the exhaustive acceptance configuration.
inline SuiteOptions paper_options() {
  SuiteOptions o;
  o.pairs.exhaustive_limit = std::numeric_limits<std::uint64_t>::max();
  return o;
}

template <FiniteGroup G>
class TheoremSuite {
public:
  struct Hypothesis {
    std::string text = "none";
    bool met = true;
  };

  TheoremSuite(const G& g, std::string name, SuiteOptions opt = {})
      : g_(g), name_(std::move(name)), opt_(std::move(opt)), whole_(whole_group(g)) {
    orders_ = element_orders(g_);
    exp_levels_ = 0;
    for (auto o : orders_) exp_levels_ = std::max(exp_levels_, log_p(o, g_.prime()));
    const auto gens = g_.generators();
    for (ElemId x : gens)
      for (ElemId y : gens) generator_pairs_.emplace_back(x, y);
  }

  const Subgroup& whole() const noexcept { return whole_; }
  unsigned exponent_levels() const noexcept { return exp_levels_; }

  const Subgroup& centre() {
    if (!centre_) centre_ = center(g_, whole_);
    return *centre_;
  }
  bool quasi_powerful() {
    if (!quasi_) quasi_ = g_.prime() != 2 && is_quasi_powerful(g_).holds;
    return *quasi_;
  }
  bool potent() {
    if (!potent_) potent_ = is_potent(g_, whole_).holds;
    return *potent_;
  }
  const Subgroup& power_centre() {
    if (!h_) h_ = join(g_, agemo(g_, whole_, 1), centre());
    return *h_;
  }
  const std::vector<PowerStructureLevel>& power_structure() {
    if (!rps_) rps_ = regular_power_structure(g_, whole_);
    return *rps_;
  }

  // Power structure ---------------------------------------------------------

  /// Products of elements of order <= p^i have order <= p^i, checked both
  /// pairwise and as exp Omega_i <= p^i.
  TheoremVerdict products_of_bounded_order() {
    TheoremVerdict v = start("thm-1.1-i", quasi_hypothesis());
    if (!v.precondition_met && !opt_.force) return v;
    const unsigned p = g_.prime();
    std::uint64_t total = 0;
    bool exhaustive = true;
    for (unsigned i = 1; i <= exp_levels_ && v.holds; ++i) {
      const std::uint64_t bound = ipow(p, i);
      Subgroup bounded_set(g_.order(), bounded_order_set(g_, whole_, i), {});
      PairSweep sweep = opt_.pairs;
      sweep.extra_pairs.clear();
      PairPlan plan(bounded_set, sweep);
      exhaustive = exhaustive && plan.exhaustive();
      auto bad = first_failure(plan.size(), sweep.workers, [&](std::uint64_t k, unsigned) {
        auto [a, b] = plan[k];
        return orders_[g_.multiply(a, b)] > bound;
      });
      total += bad ? *bad + 1 : plan.size();
      const bool pairwise = !bad;
      const Subgroup om = closure(g_, std::span<const ElemId>(bounded_set.elements()));
      const bool by_exponent = exponent_of(g_, om) <= bound;
      if (bad) {
        auto [a, b] = plan[*bad];
        v.holds = false;
        v.witness = {{"i", std::to_string(i)}, {"a", g_.describe(a)}, {"b", g_.describe(b)},
                     {"ab", g_.describe(g_.multiply(a, b))}};
      } else if (!by_exponent) {
        v.holds = false;
        v.witness = {{"i", std::to_string(i)}, {"exp Omega_i", std::to_string(exponent_of(g_, om))}};
      }
      if (plan.exhaustive() && pairwise != by_exponent)
        throw std::logic_error("pairwise and exponent forms of the product bound disagree");
    }
    v.swept = "i = 1.." + std::to_string(exp_levels_) + ", " + std::to_string(total) + " pairs, " +
              (exhaustive ? "exhaustive" : "sampled, seed " + std::to_string(opt_.pairs.seed));
    v.data.emplace_back("pairs", static_cast<std::int64_t>(total));
    return v;
  }

  TheoremVerdict power_sets_are_subgroups(std::string id = "thm-1.1-ii", bool conditional = true) {
    TheoremVerdict v = start(std::move(id), conditional ? quasi_hypothesis() : Hypothesis{});
    if (!v.precondition_met && !opt_.force) return v;
    for (const auto& row : power_structure()) {
      v.data.emplace_back("i=" + std::to_string(row.i) + " power_set", row.power_set_size);
      v.data.emplace_back("i=" + std::to_string(row.i) + " agemo", row.agemo_order);
      if (!row.powers.holds && v.holds) {
        v.holds = false;
        v.witness = {{"i", std::to_string(row.i)},
                     {"element of G^{p^i} that is not a p^i-th power", g_.describe(row.powers.witness[0].second)},
                     {"distinct p^i-th powers", std::to_string(row.power_set_size)},
                     {"|G^{p^i}|", std::to_string(row.agemo_order)}};
      }
    }
    v.swept = "i = 1.." + std::to_string(exp_levels_) + ", exhaustive set comparison";
    return v;
  }

  TheoremVerdict omega_is_bounded_set(std::string id = "thm-1.1-ii-omega", bool conditional = true) {
    TheoremVerdict v = start(std::move(id), conditional ? quasi_hypothesis() : Hypothesis{});
    if (!v.precondition_met && !opt_.force) return v;
    for (const auto& row : power_structure()) {
      v.data.emplace_back("i=" + std::to_string(row.i) + " omega", row.omega_order);
      v.data.emplace_back("i=" + std::to_string(row.i) + " exp_omega", row.omega_exponent);
      if (!row.omega.holds && v.holds) {
        v.holds = false;
        ElemId x = row.omega.witness[0].second;
        v.witness = {{"i", std::to_string(row.i)},
                     {"element of Omega_i", g_.describe(x)},
                     {"order", std::to_string(orders_[x])},
                     {"exp Omega_i", std::to_string(row.omega_exponent)}};
      }
    }
    v.swept = "i = 1.." + std::to_string(exp_levels_) + ", exhaustive set comparison";
    return v;
  }

  TheoremVerdict index_equals_omega(std::string id = "thm-1.1-iii", bool conditional = true) {
    TheoremVerdict v = start(std::move(id), conditional ? quasi_hypothesis() : Hypothesis{});
    if (!v.precondition_met && !opt_.force) return v;
    for (const auto& row : power_structure()) {
      const std::uint64_t index = g_.order() / row.agemo_order;
      v.data.emplace_back("i=" + std::to_string(row.i) + " index", index);
      v.data.emplace_back("i=" + std::to_string(row.i) + " omega", row.omega_order);
      if (index != row.omega_order && v.holds) {
        v.holds = false;
        v.witness = {{"i", std::to_string(row.i)},
                     {"|G:G^{p^i}|", std::to_string(index)},
                     {"|Omega_i(G)|", std::to_string(row.omega_order)}};
      }
    }
    v.swept = "i = 1.." + std::to_string(exp_levels_);
    return v;
  }

  /// Conditions (1), (2), (3) without any hypothesis.
  std::vector<TheoremVerdict> unconditional_power_structure() {
    auto a = power_sets_are_subgroups("rps-1", false);
    auto b = omega_is_bounded_set("rps-2", false);
    auto c = index_equals_omega("rps-3", false);
    return {a, b, c};
  }

  /// Bounded-order products, then both set equalities under one verdict, then
  /// the index equality.
  std::vector<TheoremVerdict> regular_power_structure_theorem() {
    TheoremVerdict ii = power_sets_are_subgroups();
    TheoremVerdict om = omega_is_bounded_set();
    if (ii.precondition_met || opt_.force) {
      if (ii.holds && !om.holds) {
        ii.holds = false;
        ii.witness = om.witness;
      }
      ii.data.insert(ii.data.end(), om.data.begin(), om.data.end());
    }
    return {products_of_bounded_order(), ii, index_equals_omega()};
  }

  // Agemo --------------------------------------------------------------------

  TheoremVerdict agemo_powerful() {
    TheoremVerdict v = start("thm-1.2", quasi_hypothesis());
    if (!v.precondition_met && !opt_.force) return v;
    unsigned i = 1;
    for (;; ++i) {
      Subgroup a = agemo(g_, whole_, i);
      if (a.is_trivial()) break;
      Verdict pw = is_powerful(g_, a);
      Verdict pe = is_powerfully_embedded(g_, a, whole_);
      v.data.emplace_back("i=" + std::to_string(i) + " order", a.size());
      v.data.emplace_back("i=" + std::to_string(i) + " powerfully_embedded", pe.holds);
      if (!pw.holds && v.holds) {
        v.holds = false;
        v.witness = {{"i", std::to_string(i)}, {"commutator outside (G^{p^i})^p", g_.describe(pw.witness[0].second)}};
      }
    }
    v.swept = "i = 1.." + std::to_string(i - 1) + " (until G^{p^i} = 1)";
    return v;
  }

  // Commutator orders --------------------------------------------------------

  /// o([x,y]) <= o(y) over the configured pairs, and o([x,y]) <= o(x) on
  /// generator pairs.
  TheoremVerdict commutator_order_bound() {
    TheoremVerdict v = start("thm-1.3", quasi_hypothesis());
    if (!v.precondition_met && !opt_.force) return v;
    PairSweep sweep = opt_.pairs;
    sweep.extra_pairs = generator_pairs_;
    PairPlan plan(whole_, sweep);
    auto bad = first_failure(plan.size(), sweep.workers, [&](std::uint64_t k, unsigned) {
      auto [x, y] = plan[k];
      return orders_[commutator(g_, x, y)] > orders_[y];
    });
    if (bad) {
      auto [x, y] = plan[*bad];
      fail_pair(v, x, y, commutator(g_, x, y));
    }
    for (auto [x, y] : generator_pairs_)
      if (v.holds && orders_[commutator(g_, x, y)] > orders_[x]) fail_pair(v, x, y, commutator(g_, x, y));
    v.swept = describe_plan(plan, sweep) + "; generator pairs also against o(x)";
    v.data.emplace_back("pairs", static_cast<std::int64_t>(bad ? *bad + 1 : plan.size()));
    return v;
  }

  /// o([x^{p^j}, y^{p^k}]) <= p^{i-j-k} with i = max(log o(x) - 1, log o(y)).
  TheoremVerdict detailed_commutator_bound(bool potent_variant = false) {
    Hypothesis h = potent_variant ? potent_hypothesis() : quasi_hypothesis();
    TheoremVerdict v = start(potent_variant ? "thm-1.5" : "thm-1.4", h);
    if (!v.precondition_met && !opt_.force) return v;
    const unsigned p = g_.prime();
    const unsigned e = exp_levels_;
    std::vector<std::vector<ElemId>> pw(e + 1, std::vector<ElemId>(g_.order()));
    for (ElemId x = 0; x < g_.order(); ++x) pw[0][x] = x;
    for (unsigned j = 1; j <= e; ++j)
      for (ElemId x = 0; x < g_.order(); ++x) pw[j][x] = power(g_, pw[j - 1][x], p);
    std::vector<int> lo(g_.order());
    for (ElemId x = 0; x < g_.order(); ++x) lo[x] = static_cast<int>(log_p(orders_[x], p));

    struct Hit {
      unsigned j, k;
    };
    auto check = [&](ElemId x, ElemId y) -> std::optional<Hit> {
      const int i = std::max(lo[x] - 1, lo[y]);
      for (unsigned j = 0; j <= e; ++j)
        for (unsigned k = 0; k <= e; ++k) {
          ElemId c = commutator(g_, pw[j][x], pw[k][y]);
          const int bound = i - static_cast<int>(j) - static_cast<int>(k);
          if (bound < 0 ? c != g_.identity() : lo[c] > bound) return Hit{j, k};
        }
      return std::nullopt;
    };
    PairSweep sweep = opt_.detailed_pairs;
    sweep.extra_pairs = generator_pairs_;
    PairPlan plan(whole_, sweep);
    auto bad = first_failure(plan.size(), sweep.workers, [&](std::uint64_t k, unsigned) {
      auto [x, y] = plan[k];
      return check(x, y).has_value();
    });
    if (bad) {
      auto [x, y] = plan[*bad];
      Hit hit = *check(x, y);
      ElemId c = commutator(g_, pw[hit.j][x], pw[hit.k][y]);
      fail_pair(v, x, y, c);
      v.witness.emplace_back("j", std::to_string(hit.j));
      v.witness.emplace_back("k", std::to_string(hit.k));
    }
    v.swept = describe_plan(plan, sweep) + "; j, k = 0.." + std::to_string(e);
    v.data.emplace_back("pairs", static_cast<std::int64_t>(bad ? *bad + 1 : plan.size()));
    return v;
  }

  // Subgroup ranks -----------------------------------------------------------

  TheoremVerdict subgroup_rank_bound() {
    TheoremVerdict v = start("thm-1.6", quasi_hypothesis());
    if (!v.precondition_met && !opt_.force) return v;
    const unsigned r = min_generators(g_, whole_);
    const unsigned bound = r * (r + 3) / 2;
    unsigned max_d = 0;
    std::uint64_t count = 0;
    auto visit = [&](const Subgroup& h) {
      ++count;
      const unsigned d = min_generators(g_, h);
      max_d = std::max(max_d, d);
      if (d > bound && v.holds) {
        v.holds = false;
        v.witness = {{"d(H)", std::to_string(d)}, {"|H|", std::to_string(h.size())}};
        for (std::size_t k = 0; k < h.generators().size(); ++k)
          v.witness.emplace_back("h" + std::to_string(k + 1), g_.describe(h.generators()[k]));
      }
    };
    if (g_.order() <= opt_.enumeration_limit) {
      enumerate_subgroups(g_, visit, EnumerationLimits{opt_.enumeration_limit});
      v.swept = "all " + std::to_string(count) + " subgroups";
    } else {
      for (const auto& h : sample_subgroups(g_, opt_.subgroup_samples, opt_.subgroup_sample_gens, opt_.subgroup_seed))
        visit(h);
      v.swept = std::to_string(count) + " sampled subgroups, " + std::to_string(opt_.subgroup_sample_gens) +
                " generators each, seed " + std::to_string(opt_.subgroup_seed);
    }
    v.data = {{"r", r},
              {"bound", bound},
              {"max_d", max_d},
              {"subgroups", static_cast<std::int64_t>(count)},
              {"cyclic_factor_bound", r + bound}};
    return v;
  }

  // Structural lemmas --------------------------------------------------------

  /// Every g^p h^p lies in {j^p} Z(G).
  TheoremVerdict product_of_powers() {
    TheoremVerdict v = start("lem-3.4", quasi_hypothesis());
    if (!v.precondition_met && !opt_.force) return v;
    auto powers = power_image_set(g_, whole_, 1);
    std::vector<char> in_pz(g_.order(), 0);
    for (ElemId u : powers)
      for (ElemId z : centre().elements()) in_pz[g_.multiply(u, z)] = 1;
    for (ElemId u : powers) {
      for (ElemId w : powers)
        if (!in_pz[g_.multiply(u, w)]) {
          v.holds = false;
          v.witness = {{"g^p", g_.describe(u)}, {"h^p", g_.describe(w)}, {"g^p h^p", g_.describe(g_.multiply(u, w))}};
          break;
        }
      if (!v.holds) break;
    }
    v.swept = std::to_string(powers.size() * powers.size()) + " products of p-th powers, exhaustive";
    v.data = {{"pth_powers", static_cast<std::int64_t>(powers.size())},
              {"centre", static_cast<std::int64_t>(centre().size())}};
    return v;
  }

  TheoremVerdict h_powerfully_embedded() {
    TheoremVerdict v = start("prop-3.5", quasi_hypothesis());
    if (!v.precondition_met && !opt_.force) return v;
    merge(v, powerfully_embedded_check(power_centre()));
    return v;
  }

  TheoremVerdict h_strongly_powerful() {
    TheoremVerdict v = start("prop-8.1", quasi_hypothesis());
    if (!v.precondition_met && !opt_.force) return v;
    merge(v, strongly_powerful_check(power_centre()));
    return v;
  }

  /// [N,G] <= N^p for the given normal subgroup, without any hypothesis.
  TheoremVerdict powerfully_embedded_check(const Subgroup& n) {
    TheoremVerdict v = start("powerfully-embedded", Hypothesis{});
    absorb(v, is_powerfully_embedded(g_, n, whole_));
    v.swept = "[N,G] against N^p, |N| = " + std::to_string(n.size());
    v.data = {{"N", static_cast<std::int64_t>(n.size())}};
    return v;
  }

  /// [H,H] <= H^{p^2} for the given subgroup, without any hypothesis.
  TheoremVerdict strongly_powerful_check(const Subgroup& h) {
    TheoremVerdict v = start("strongly-powerful", Hypothesis{});
    absorb(v, is_strongly_powerful(g_, h));
    v.swept = "[H,H] against H^{p^2}, |H| = " + std::to_string(h.size());
    v.data = {{"H", static_cast<std::int64_t>(h.size())}};
    return v;
  }

  /// [x,y,z,w] = 1 for x, y, z of order p and all w, via [[x,y],z] central.
  TheoremVerdict weight_four_commutators() {
    TheoremVerdict v = start("lem-4.1", quasi_hypothesis());
    if (!v.precondition_met && !opt_.force) return v;
    std::vector<ElemId> low;
    for (ElemId x = 0; x < g_.order(); ++x)
      if (orders_[x] <= g_.prime()) low.push_back(x);
    const ElemId none = ~ElemId(0);
    std::vector<std::pair<ElemId, ElemId>> origin(g_.order(), {none, none});
    std::vector<ElemId> comms;
    for (ElemId x : low)
      for (ElemId y : low) {
        ElemId c = commutator(g_, x, y);
        if (origin[c].first == none) {
          origin[c] = {x, y};
          comms.push_back(c);
        }
      }
    std::uint64_t checked = 0;
    for (ElemId c : comms) {
      for (ElemId z : low) {
        ElemId cz = commutator(g_, c, z);
        ++checked;
        if (centre().contains(cz)) continue;
        // cz is not central, so some generator w has [cz, w] != 1
        for (ElemId w : g_.generators())
          if (commutator(g_, cz, w) != g_.identity()) {
            v.holds = false;
            v.witness = {{"x", g_.describe(origin[c].first)}, {"y", g_.describe(origin[c].second)},
                         {"z", g_.describe(z)}, {"w", g_.describe(w)},
                         {"[x,y,z,w]", g_.describe(commutator(g_, cz, w))}};
            break;
          }
        break;
      }
      if (!v.holds) break;
    }
    v.swept = std::to_string(low.size()) + " elements of order <= p, " + std::to_string(comms.size()) +
              " distinct [x,y], " + std::to_string(checked) + " [x,y,z] against Z(G)";
    return v;
  }

  TheoremVerdict omega_one_class() {
    TheoremVerdict v = start("lem-4.2", quasi_hypothesis());
    if (!v.precondition_met && !opt_.force) return v;
    const Subgroup om = omega(g_, whole_, 1);
    const unsigned cls = nilpotency_class(g_, om);
    v.data = {{"omega_1", static_cast<std::int64_t>(om.size())}, {"class", cls}};
    if (cls > 3) {
      v.holds = false;
      const Subgroup g4 = gamma(g_, om, 4);
      v.witness = {{"class of Omega_1", std::to_string(cls)},
                   {"nontrivial element of gamma_4(Omega_1)", g_.describe(g4.elements().at(1))}};
    }
    v.swept = "lower central series of Omega_1(G)";
    return v;
  }

  /// [M^{p^i}, N^{p^j}] = [M,N]^{p^{i+j}} with M = N = C, where C is G when
  /// G is powerful, G^p when only G^p is, and G otherwise.
  TheoremVerdict interchanging() {
    const bool g_powerful = is_powerful(g_, whole_).holds;
    const Subgroup gp = agemo(g_, whole_, 1);
    const bool use_gp = !g_powerful && is_powerful(g_, gp).holds;
    Hypothesis h;
    h.text = std::string("odd p and ") + (use_gp ? "G^p" : "G") + " powerful";
    h.met = g_.prime() != 2 && (g_powerful || use_gp);
    TheoremVerdict v = start("lem-2.4", h);
    if (!v.precondition_met && !opt_.force) return v;
    merge(v, interchange_check(use_gp ? gp : whole_));
    v.swept = std::string("M = N = ") + (use_gp ? "G^p, " : "G, ") + v.swept;
    return v;
  }

  /// The interchanging identity on M = N = c for 1 <= i + j <= interchange_max.
  TheoremVerdict interchange_check(const Subgroup& c) {
    TheoremVerdict v = start("interchanging", Hypothesis{});
    const Subgroup mn = commutator_subgroup(g_, c, c);
    std::vector<Subgroup> ag{c};
    for (unsigned k = 1; k <= opt_.interchange_max; ++k) ag.push_back(agemo(g_, c, k));
    for (unsigned i = 0; i <= opt_.interchange_max && v.holds; ++i)
      for (unsigned j = 0; i + j <= opt_.interchange_max; ++j) {
        if (i + j == 0) continue;
        const Subgroup lhs = commutator_subgroup(g_, ag[i], ag[j]);
        const Subgroup rhs = agemo(g_, mn, i + j);
        if (lhs == rhs) continue;
        v.holds = false;
        auto x = lhs.first_outside(rhs);
        auto y = rhs.first_outside(lhs);
        v.witness = {{"i", std::to_string(i)}, {"j", std::to_string(j)},
                     {"|[M^{p^i},N^{p^j}]|", std::to_string(lhs.size())},
                     {"|[M,N]^{p^{i+j}}|", std::to_string(rhs.size())},
                     {x ? "in lhs only" : "in rhs only", g_.describe(x ? *x : *y)}};
        break;
      }
    v.swept = "1 <= i + j <= " + std::to_string(opt_.interchange_max) + ", |M| = " + std::to_string(c.size());
    v.data = {{"carrier", static_cast<std::int64_t>(c.size())}};
    return v;
  }

  // Collection identities ----------------------------------------------------

  /// <gamma_2(T)^{p^l}, gamma_{p^k}(T)^{p^{l-k}} : 1 <= k <= l>.
  Subgroup collection_modulus(const Subgroup& t, unsigned level) {
    const unsigned p = g_.prime();
    Subgroup acc = agemo(g_, gamma(g_, t, 2), level);
    for (unsigned k = 1; k <= level; ++k) {
      const std::uint64_t idx = ipow(p, k);
      const Subgroup gk = idx > 64 ? trivial_subgroup(g_) : gamma(g_, t, static_cast<unsigned>(idx));
      if (gk.is_trivial()) break;
      acc = join(g_, acc, agemo(g_, gk, level - k));
    }
    return acc;
  }

  /// (xy)^{p^l} = x^{p^l} y^{p^l} mod the series of T = <x,y> (power form)
  /// or [x,y]^{p^l} = [x^{p^l}, y] mod the series of M = <x, [x,y]>.
  TheoremVerdict collection_identity(bool commutator_form) {
    TheoremVerdict v = start(commutator_form ? "eq-5" : "eq-4", Hypothesis{});
    const unsigned p = g_.prime();
    std::mt19937_64 rng(opt_.collection_seed);
    std::uint64_t checked = 0;
    for (unsigned level = 1; level <= exp_levels_ && v.holds; ++level) {
      const std::uint64_t q = ipow(p, level);
      for (std::uint64_t t = 0; t < opt_.collection_trials; ++t) {
        const ElemId x = static_cast<ElemId>(rng() % g_.order());
        const ElemId y = static_cast<ElemId>(rng() % g_.order());
        ElemId defect, a, b;
        if (commutator_form) {
          const ElemId c = commutator(g_, x, y);
          a = power(g_, c, q);
          b = commutator(g_, power(g_, x, q), y);
        } else {
          a = power(g_, g_.multiply(x, y), q);
          b = g_.multiply(power(g_, x, q), power(g_, y, q));
        }
        defect = g_.multiply(a, g_.inverse(b));
        ++checked;
        if (defect == g_.identity()) continue;
        ElemId pair[] = {x, commutator_form ? commutator(g_, x, y) : y};
        const Subgroup t_sub = closure(g_, std::span<const ElemId>(pair));
        if (collection_modulus(t_sub, level).contains(defect)) continue;
        v.holds = false;
        v.witness = {{"level", std::to_string(level)}, {"x", g_.describe(x)}, {"y", g_.describe(y)},
                     {"defect", g_.describe(defect)}};
        break;
      }
    }
    v.swept = std::to_string(opt_.collection_trials) + " pairs per level, levels 1.." + std::to_string(exp_levels_) +
              ", seed " + std::to_string(opt_.collection_seed);
    v.data = {{"pairs", static_cast<std::int64_t>(checked)}};
    return v;
  }

  // Suites -------------------------------------------------------------------

  std::vector<TheoremVerdict> rps_suite() {
    auto out = regular_power_structure_theorem();
    for (auto& v : unconditional_power_structure()) out.push_back(std::move(v));
    return out;
  }

  std::vector<TheoremVerdict> full_suite() {
    std::vector<TheoremVerdict> out = rps_suite();
    out.push_back(agemo_powerful());
    out.push_back(commutator_order_bound());
    out.push_back(detailed_commutator_bound(false));
    out.push_back(detailed_commutator_bound(true));
    out.push_back(subgroup_rank_bound());
    out.push_back(product_of_powers());
    out.push_back(h_powerfully_embedded());
    out.push_back(weight_four_commutators());
    out.push_back(omega_one_class());
    out.push_back(collection_identity(false));
    out.push_back(collection_identity(true));
    out.push_back(interchanging());
    out.push_back(h_strongly_powerful());
    return out;
  }

private:
  Hypothesis quasi_hypothesis() {
    if (g_.prime() == 2) return {"quasi-powerful with p odd (p = 2 is outside the definition)", false};
    return {"quasi-powerful with p odd", quasi_powerful()};
  }
  Hypothesis potent_hypothesis() { return {"potent with p odd", g_.prime() != 2 && potent()}; }

  TheoremVerdict start(std::string id, const Hypothesis& h) {
    TheoremVerdict v;
    v.id = std::move(id);
    v.group = name_;
    v.precondition = h.text;
    v.precondition_met = h.met;
    if (!h.met && !opt_.force) {
      v.holds = false;
      v.swept = "not run: hypothesis fails";
    }
    return v;
  }

  void fail_pair(TheoremVerdict& v, ElemId x, ElemId y, ElemId c) {
    v.holds = false;
    v.witness = {{"x", g_.describe(x)}, {"y", g_.describe(y)}, {"commutator", g_.describe(c)},
                 {"o(x)", std::to_string(orders_[x])}, {"o(y)", std::to_string(orders_[y])},
                 {"o(commutator)", std::to_string(orders_[c])}};
  }

  static void merge(TheoremVerdict& v, const TheoremVerdict& check) {
    v.holds = check.holds;
    v.witness = check.witness;
    v.swept = check.swept;
    v.data = check.data;
  }

  void absorb(TheoremVerdict& v, const Verdict& p) {
    v.holds = p.holds;
    for (const auto& [label, x] : p.witness) v.witness.emplace_back(label, g_.describe(x));
  }

  static std::string describe_plan(const PairPlan& plan, const PairSweep& sweep) {
    if (plan.exhaustive()) return "all " + std::to_string(plan.size()) + " ordered pairs";
    return std::to_string(plan.size()) + " pairs (" + std::to_string(sweep.extra_pairs.size()) +
           " generator pairs + " + std::to_string(sweep.sample) + " sampled, seed " + std::to_string(sweep.seed) + ")";
  }

  const G& g_;
  std::string name_;
  SuiteOptions opt_;
  Subgroup whole_;
  std::vector<std::uint64_t> orders_;
  unsigned exp_levels_ = 0;
  std::vector<std::pair<ElemId, ElemId>> generator_pairs_;
  std::optional<Subgroup> centre_;
  std::optional<Subgroup> h_;
  std::optional<bool> quasi_;
  std::optional<bool> potent_;
  std::optional<std::vector<PowerStructureLevel>> rps_;
};

} // namespace pqp
