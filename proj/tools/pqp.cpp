// pqp: command-line front end for the p-group engine.
//
// Exit codes: 0 success, 1 a theorem check failed under its hypothesis,
// 2 parse, consistency, resource or usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pqp/crosscheck.hpp"
#include "pqp/oracle.hpp"
#include "pqp/pqp.hpp"
#include "pqp/report.hpp"

namespace {

using namespace pqp;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

struct Input {
  std::string path;
  std::string text;
};

Input read_input(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return {path, ss.str()};
}

PcGroup load_group(const Input& in) {
  PcGroup g(parse_presentation(in.text));
  g.require_consistent();
  g.require_indexable();
  return g;
}

class Timer {
public:
  explicit Timer(bool enabled) : enabled_(enabled) {}
  void phase(const std::string& name) {
    auto now = std::chrono::steady_clock::now();
    if (!current_.empty()) times_[current_] = std::chrono::duration<double>(now - start_).count();
    current_ = name;
    start_ = now;
  }
  void attach(Json& j) {
    phase("");
    if (!enabled_) return;
    Json t;
    for (const auto& [k, v] : times_) t[k] = v;
    j["timing_seconds"] = t;
  }

private:
  bool enabled_;
  std::string current_;
  std::chrono::steady_clock::time_point start_;
  std::map<std::string, double> times_;
};

/// Runs `fn` on a tabulated view when the group is small enough, otherwise
/// directly on the collector.
template <class Fn>
auto with_view(const PcGroup& g, unsigned workers, Fn&& fn) {
  if (g.order() <= Tabulated<PcGroup>::kDefaultMaxOrder) {
    Tabulated<PcGroup> t(g, Tabulated<PcGroup>::kDefaultMaxOrder, workers);
    return fn(t);
  }
  return fn(g);
}

Json group_summary(const PcGroup& g) {
  Json j;
  j["prime"] = g.prime();
  j["order"] = g.order();
  Json gens = Json::array();
  for (std::size_t i = 0; i < g.rank(); ++i) {
    Json x;
    x["name"] = g.presentation().name(i);
    x["relative_order"] = g.relative_order(i);
    gens.push_back(x);
  }
  j["generators"] = gens;
  return j;
}

template <FiniteGroup V>
void add_invariants(Json& summary, const V& view) {
  const Subgroup whole = whole_group(view);
  summary["nilpotency_class"] = nilpotency_class(view, whole);
  summary["exponent"] = exponent_of(view, whole);
  summary["min_generators"] = min_generators(view, whole);
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

// ---- subcommands -------------------------------------------------------------

struct CommonFlags {
  std::string file;
  bool json = false;
  bool timing = false;
  unsigned workers = 1;
  std::uint64_t seed = 0;
};

int cmd_check(const CommonFlags& f, bool enumerate) {
  Input in = read_input(f.file);
  PcGroup g(parse_presentation(in.text));
  Json j = report_header("check", in.text);
  j["group"] = group_summary(g);
  j["consistent"] = g.consistent();
  if (!g.consistent()) {
    Json fail;
    fail["overlap"] = g.consistency().overlap;
    fail["lhs"] = g.to_string(g.consistency().lhs);
    fail["rhs"] = g.to_string(g.consistency().rhs);
    j["first_failing_overlap"] = fail;
  }
  if (enumerate && g.consistent()) {
    if (g.order() > 10000) throw ResourceError("normal form enumeration is limited to 10000 elements");
    j["normal_forms_reached"] = whole_group(g).size();
  }
  if (f.json) {
    print(j);
  } else {
    std::cout << "prime " << g.prime() << '\n'
              << "generators " << g.rank() << '\n'
              << "order " << g.order() << '\n'
              << "consistent " << (g.consistent() ? "yes" : "no") << '\n';
    if (!g.consistent()) std::cout << "first failing overlap " << g.consistency().overlap << '\n';
    if (j.contains("normal_forms_reached")) std::cout << "normal forms reached " << j["normal_forms_reached"] << '\n';
  }
  if (!g.consistent()) return kExitError;
  if (j.contains("normal_forms_reached") && j["normal_forms_reached"] != g.order()) return kExitError;
  return kExitOk;
}

int cmd_props(const CommonFlags& f, std::uint64_t max_pairs) {
  Input in = read_input(f.file);
  Timer timer(f.timing);
  timer.phase("build");
  PcGroup g = load_group(in);
  Json j = report_header("props", in.text);
  j["seed"] = f.seed;
  j["group"] = group_summary(g);
  with_view(g, f.workers, [&](const auto& view) {
    timer.phase("properties");
    add_invariants(j["group"], view);
    PairSweep sweep;
    sweep.seed = f.seed;
    sweep.workers = f.workers;
    if (max_pairs) sweep.exhaustive_limit = max_pairs;
    PropertyReport r = property_report(view, sweep);
    j["report"] = to_json(view, r);
    const Subgroup whole = whole_group(view);
    j["frattini_order"] = frattini(view, whole).size();
    j["min_generators_frattini"] = min_generators(view, frattini(view, whole));
    j["center_order"] = center(view, whole).size();
    j["derived_order"] = derived_subgroup(view, whole).size();
    timer.phase("power structure");
    j["power_structure"] = to_json(view, regular_power_structure(view, whole));
    return 0;
  });
  timer.attach(j);
  if (f.json) {
    print(j);
    return kExitOk;
  }
  const Json& r = j["report"];
  std::cout << "order " << r["order"] << "  prime " << r["prime"] << "  exponent " << r["exponent"] << "  class "
            << r["nilpotency_class"] << "  d(G) " << r["min_generators"] << "  d(Phi) " << j["min_generators_frattini"]
            << '\n';
  for (const auto& [name, v] : r["properties"].items()) {
    std::cout << "  " << name << ": " << (v["holds"].get<bool>() ? "true" : "false");
    if (!v["witness"].is_null())
      for (const auto& [label, w] : v["witness"].items()) std::cout << "  [" << label << " = " << w.get<std::string>() << "]";
    std::cout << '\n';
  }
  for (const auto& row : j["power_structure"])
    std::cout << "  i=" << row["i"] << ": p^i-th powers " << row["power_set_size"] << ", |G^{p^i}| "
              << row["agemo_order"] << ", |Omega_i| " << row["omega_order"] << ", exp Omega_i "
              << row["omega_exponent"] << '\n';
  return kExitOk;
}

void print_verdicts(const Json& verdicts) {
  for (const auto& v : verdicts) {
    std::string status = !v["precondition_met"].get<bool>() ? "HYPOTHESIS FAILS" : v["holds"].get<bool>() ? "holds" : "FAILS";
    std::cout << v["id"].get<std::string>() << "  " << status << "  (" << v["swept"].get<std::string>() << ")\n";
    if (!v["witness"].is_null())
      for (const auto& [label, w] : v["witness"].items())
        std::cout << "    " << label << " = " << w.get<std::string>() << '\n';
  }
}

int cmd_verify(const CommonFlags& f, const std::string& suite, std::uint64_t max_pairs) {
  Input in = read_input(f.file);
  Timer timer(f.timing);
  timer.phase("build");
  PcGroup g = load_group(in);
  SuiteOptions opt = suite == "paper" ? paper_options() : SuiteOptions{};
  opt.set_seed(f.seed);
  opt.set_workers(f.workers);
  if (max_pairs) opt.pairs.exhaustive_limit = opt.detailed_pairs.exhaustive_limit = max_pairs;

  Json j = report_header("verify", in.text);
  j["suite"] = suite;
  j["seed"] = f.seed;
  j["group"] = group_summary(g);
  std::vector<TheoremVerdict> verdicts = with_view(g, f.workers, [&](const auto& view) {
    timer.phase("theorems");
    add_invariants(j["group"], view);
    TheoremSuite suite_runner(view, f.file, opt);
    return suite == "rps" ? suite_runner.rps_suite() : suite_runner.full_suite();
  });
  if (suite != "rps") verdicts.push_back(verify_witt());
  Json list = Json::array();
  bool failed = false;
  for (const auto& v : verdicts) {
    list.push_back(to_json(v));
    failed = failed || v.failed();
  }
  j["verdicts"] = list;
  j["all_passed"] = !failed;
  timer.attach(j);
  if (f.json)
    print(j);
  else
    print_verdicts(list);
  return failed ? kExitCheckFailed : kExitOk;
}

int cmd_subgroups(const CommonFlags& f, bool exhaustive, std::uint64_t sample, unsigned gens, bool bound_check) {
  Input in = read_input(f.file);
  Timer timer(f.timing);
  timer.phase("build");
  PcGroup g = load_group(in);
  SuiteOptions opt;
  opt.subgroup_samples = sample;
  opt.subgroup_sample_gens = gens;
  opt.subgroup_seed = f.seed;
  opt.enumeration_limit = exhaustive ? std::max<std::uint64_t>(g.order(), 729) : 0;
  opt.force = !bound_check;
  Json j = report_header("subgroups", in.text);
  j["seed"] = f.seed;
  j["group"] = group_summary(g);
  TheoremVerdict v = with_view(g, f.workers, [&](const auto& view) {
    timer.phase("subgroups");
    add_invariants(j["group"], view);
    TheoremSuite suite(view, f.file, opt);
    return suite.subgroup_rank_bound();
  });
  j["verdict"] = to_json(v);
  timer.attach(j);
  if (f.json) {
    print(j);
  } else {
    std::cout << v.swept << '\n';
    for (const auto& [k, val] : v.data) std::cout << "  " << k << " " << val << '\n';
    if (bound_check) print_verdicts(Json::array({j["verdict"]}));
  }
  return bound_check && v.failed() ? kExitCheckFailed : kExitOk;
}

int cmd_make(const std::string& family, unsigned p, unsigned r, const std::string& exps, const std::string& out) {
  const Family fam = parse_family(family);
  FamilySpec spec{fam, p, r, {}};
  if (!exps.empty()) {
    std::stringstream ss(exps);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        spec.exponents.push_back(static_cast<unsigned>(std::stoul(tok)));
      } catch (const std::exception&) {
        throw InvalidArgument("bad exponent list '" + exps + "'");
      }
    }
  }
  if (fam == Family::cyclic && spec.exponents.empty() && r) spec.exponents = {r};
  PcGroup g = build(spec);
  std::string text = (fam == Family::paper_6561 || fam == Family::paper_729 || fam == Family::paper_256)
                         ? fixture_text(fam)
                         : "# " + spec.label() + ", order " + std::to_string(g.order()) + "\n" + to_text(g.presentation());
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw Error("cannot write " + out);
    os << text;
  }
  return kExitOk;
}

int cmd_oracle(const CommonFlags& f, bool full_assoc, const std::string& dump) {
  Input in = read_input(f.file);
  Timer timer(f.timing);
  timer.phase("build");
  PcGroup g = load_group(in);
  timer.phase("oracle table");
  oracle::CayleyTable table(g.presentation());
  timer.phase("latin square");
  const bool latin = table.latin_square();
  timer.phase("associativity");
  auto assoc = table.check_associativity(full_assoc, 1'000'000, f.seed);
  timer.phase("engine table");
  Tabulated<PcGroup> view(g, Tabulated<PcGroup>::kDefaultMaxOrder, f.workers);
  timer.phase("compare");
  CrossCheck cc = recompute_and_compare(view, table);
  if (!dump.empty()) table.dump(dump);

  Json j = report_header("oracle", in.text);
  j["seed"] = f.seed;
  j["group"] = group_summary(g);
  add_invariants(j["group"], view);
  j["latin_square"] = latin;
  Json a;
  a["holds"] = assoc.holds;
  a["triples"] = assoc.triples;
  a["exhaustive"] = assoc.exhaustive;
  if (!assoc.holds)
    a["witness"] = Json::array({table.describe(assoc.a), table.describe(assoc.b), table.describe(assoc.c)});
  j["associativity"] = a;
  Json values;
  for (const auto& [k, v] : cc.oracle_values) values[k] = v;
  j["oracle_values"] = values;
  j["diff"] = cc.diffs;
  timer.attach(j);
  const bool ok = latin && assoc.holds && cc.ok();
  if (f.json) {
    print(j);
  } else {
    std::cout << "latin square " << (latin ? "yes" : "no") << '\n'
              << "associativity " << (assoc.holds ? "holds" : "FAILS") << " on " << assoc.triples << " triples"
              << (assoc.exhaustive ? " (all)" : " (sampled)") << '\n';
    for (const auto& [k, v] : cc.oracle_values) std::cout << "  " << k << " " << v << '\n';
    std::cout << (cc.ok() ? "diff empty" : "DIFF:") << '\n';
    for (const auto& d : cc.diffs) std::cout << "  " << d << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite p-groups from power-commutator presentations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pqp::kToolVersion));

  CommonFlags f;
  auto add_common = [&](CLI::App* sub, bool sweeps) {
    sub->add_option("FILE", f.file, "presentation file")->required()->check(CLI::ExistingFile);
    sub->add_flag("--json", f.json, "print the JSON report");
    sub->add_flag("--timing", f.timing, "include per-phase timings in the report");
    if (sweeps) {
      sub->add_option("--seed", f.seed, "seed for sampled sweeps")->default_val(0);
      sub->add_option("--workers", f.workers, "worker threads")->default_val(1)->check(CLI::Range(1u, 256u));
    }
  };

  bool enumerate = false;
  auto* check = app.add_subcommand("check", "parse, check consistency, print the order");
  add_common(check, false);
  check->add_flag("--enumerate", enumerate, "also count normal forms reached from the generators");

  std::uint64_t max_pairs = 0;
  auto* props = app.add_subcommand("props", "structural properties");
  add_common(props, true);
  props->add_option("--max-pairs", max_pairs, "largest exhaustive pair sweep");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "theorem suite");
  add_common(verify, true);
  verify->add_option("--suite", suite, "paper | rps | all")->check(CLI::IsMember({"paper", "rps", "all"}));
  verify->add_option("--max-pairs", max_pairs, "largest exhaustive pair sweep");

  bool exhaustive = false;
  bool bound_check = false;
  std::uint64_t sample = 500;
  unsigned gens = 3;
  auto* subgroups = app.add_subcommand("subgroups", "subgroup rank sweep");
  add_common(subgroups, true);
  auto* ex = subgroups->add_flag("--exhaustive", exhaustive, "enumerate every subgroup");
  subgroups->add_option("--sample", sample, "number of sampled subgroups")->excludes(ex);
  subgroups->add_option("--gens", gens, "generators per sampled subgroup")->excludes(ex)->check(CLI::PositiveNumber);
  subgroups->add_flag("--bound-check", bound_check, "fail when a subgroup exceeds the rank bound");

  std::string family, exps, out;
  unsigned p = 0, r = 0;
  auto* make = app.add_subcommand("make", "write a corpus presentation");
  make->add_option("FAMILY", family, "paper_6561 | paper_729 | paper_256 | cyclic | abelian | extraspecial | higman")
      ->required();
  make->add_option("--p", p, "prime");
  auto* r_opt = make->add_option("--r", r, "rank (higman) or exponent (cyclic)");
  make->add_option("--exps", exps, "comma separated exponents")->excludes(r_opt);
  make->add_option("-o,--output", out, "output file");

  bool full_assoc = false;
  std::string dump;
  auto* orc = app.add_subcommand("oracle", "Cayley table cross-check");
  add_common(orc, true);
  orc->add_flag("--full-assoc", full_assoc, "check every triple");
  orc->add_option("--dump", dump, "write the table to PATH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : kExitError;
  }

  try {
    if (*check) return cmd_check(f, enumerate);
    if (*props) return cmd_props(f, max_pairs);
    if (*verify) return cmd_verify(f, suite, max_pairs);
    if (*subgroups) return cmd_subgroups(f, exhaustive, sample, gens, bound_check);
    if (*make) return cmd_make(family, p, r, exps, out);
    if (*orc) return cmd_oracle(f, full_assoc, dump);
  } catch (const pqp::ParseError& e) {
    std::cerr << f.file << ": " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
