/**
 * @file budget_agg.cpp
 * @brief Command-line driver: mechanism runs, decompositions, audits,
 *        dominance experiments, and instance generation.
 *
 * Exit codes: 0 success, 1 audit/assertion failure, 2 input error, 3 internal
 * error. Every run is fully determined by its flags (plus the optional
 * BUDGET_AGG_NODE_LIMIT environment override for optdecomp).
 */
#include "bagg/analysis.hpp"
#include "bagg/io.hpp"
#include "bagg/optdecomp.hpp"
#include "bagg/weighted.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace bagg;
using nlohmann::json;

constexpr int kExitOk = 0, kExitAudit = 1, kExitInput = 2, kExitInternal = 3;

/// optdecomp instances are capped: branch-and-bound is exponential by nature.
constexpr int kOptDecompCellCap = 20;

struct Options {
  std::string input, output, mech = "utilprop", format = "table";
  std::string family, check, weights;
  int n = 0, m = 0, ell = 0;
  long denominator = 4, trials = 100, node_limit = kDefaultNodeLimit;
  unsigned long long seed = 0;
  std::string eps = "1/1000";
  bool random = false, dominance = false, enumerate_all = false;
  bool alpha = false, truthfulness = false;
};

void print_report(const json& rep, const Options& opt) {
  if (opt.format == "json") {
    std::cout << rep.dump(2) << "\n";
    return;
  }
  // Table / CSV renderings for the common fields; anything else prints JSON.
  auto frac_line = [&](const json& arr, const char* sep) {
    std::string out;
    for (const auto& v : arr) {
      if (!out.empty()) out += sep;
      out += v["frac"].get<std::string>();
    }
    return out;
  };
  if (opt.format == "csv") {
    if (rep.contains("allocation")) std::cout << frac_line(rep["allocation"], ",") << "\n";
    else std::cout << rep.dump() << "\n";
    return;
  }
  for (auto& [key, value] : rep.items()) {
    if (value.is_array() && !value.empty() && value[0].is_object() && value[0].contains("frac")) {
      std::cout << key << ": " << frac_line(value, " ") << "\n";
    } else if (value.is_object() && value.contains("frac")) {
      std::cout << key << ": " << value["frac"].get<std::string>() << " ("
                << value["decimal"].get<std::string>() << ")\n";
    } else if (value.is_array()) {
      std::cout << key << ":\n";
      for (const auto& row : value)
        if (row.is_array()) std::cout << "  " << frac_line(row, " ") << "\n";
        else std::cout << "  " << row.dump() << "\n";
    } else {
      std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                << "\n";
    }
  }
}

MechanismId require_phantom(const std::string& name) {
  auto id = mechanism_from_name(name);
  if (!id) throw ParseError("unknown mechanism: " + name);
  return *id;
}

MechanismFn resolve_mechanism(const std::string& name) {
  if (name == "greedy") return greedy_mechanism();
  return phantom_mechanism(require_phantom(name));
}

Profile make_family(const Options& opt) {
  auto eps = parse_rational(opt.eps);
  if (!eps) throw ParseError("bad --eps literal: " + opt.eps);
  if (opt.family == "worst-case") return worst_case_family(opt.n, opt.ell);
  if (opt.family == "pwu-lb") return pwu_lower_bound_family(opt.n);
  if (opt.family == "gap") return gap_family(opt.n, *eps);
  throw ParseError("unknown family: " + opt.family);
}

Profile input_profile(const Options& opt) {
  if (!opt.family.empty()) return make_family(opt);
  if (opt.random)
    return random_profile({opt.n, opt.m, opt.denominator, opt.seed});
  if (opt.input.empty()) throw ParseError("no input: give --input, --family, or --random");
  return load_profile(opt.input);
}

int cmd_run(const Options& opt) {
  Profile p = input_profile(opt);
  MechanismReport rep = run_phantom(p, require_phantom(opt.mech));
  json out{{"command", "run"},
           {"mechanism", mechanism_name(rep.id)},
           {"n", p.n},
           {"m", p.m},
           {"t_star", rational_json(rep.t_star)},
           {"allocation", allocation_json(rep.allocation.values)},
           {"welfare", rational_json(rep.welfare)}};
  print_report(out, opt);
  return kExitOk;
}

int cmd_decomp(const Options& opt) {
  Profile p = input_profile(opt);
  DecompositionCertificate cert = greedy_decomp(p);
  json out{{"command", "decomp"},
           {"n", p.n},
           {"m", p.m},
           {"allocation", allocation_json(cert.allocation.values)},
           {"welfare", rational_json(social_welfare(p, cert.allocation))},
           {"contributions", matrix_json(cert.contributions.matrix)}};
  print_report(out, opt);
  return kExitOk;
}

int cmd_optdecomp(const Options& opt) {
  Profile p = input_profile(opt);
  if (p.n * p.m > kOptDecompCellCap)
    throw ParseError("optdecomp instance too large: n*m must be <= 20");
  long limit = opt.node_limit;
  if (const char* env = std::getenv("BUDGET_AGG_NODE_LIMIT")) limit = std::atol(env);
  OptDecompResult res = util_decomp(p, limit);
  json out{{"command", "optdecomp"},
           {"n", p.n},
           {"m", p.m},
           {"allocation", allocation_json(res.allocation.values)},
           {"welfare", rational_json(res.welfare)},
           {"contributions", matrix_json(res.contributions.matrix)},
           {"nodes_explored", res.nodes_explored}};
  print_report(out, opt);
  return kExitOk;
}

int audit_check(const Options& opt) {
  Profile p = input_profile(opt);
  Allocation a = resolve_mechanism(opt.mech)(p);
  json out{{"command", "audit"},
           {"check", opt.check},
           {"mechanism", opt.mech},
           {"allocation", allocation_json(a.values)}};
  bool ok = true;
  if (opt.check == "proportional-spending") {
    ProportionalSpendingReport rep = check_proportional_spending(p, a);
    ok = rep.holds;
    out["holds"] = rep.holds;
    if (!rep.holds) {
      out["violating_k"] = rep.violating_k;
      out["overlap"] = rational_json(rep.lhs);
      out["required"] = rational_json(rep.rhs);
    }
  } else if (opt.check == "range-respect") {
    ok = check_range_respect(p, a);
    out["holds"] = ok;
  } else if (opt.check == "single-minded") {
    ok = check_single_minded_proportionality(resolve_mechanism(opt.mech), p);
    out["holds"] = ok;
  } else {
    throw ParseError("unknown --check: " + opt.check);
  }
  print_report(out, opt);
  return ok ? kExitOk : kExitAudit;
}

int audit_dominance(const Options& opt) {
  auto edges = dominance_edges();
  std::vector<DominancePair> results;
  long total = 0;
  if (opt.enumerate_all) {
    std::vector<Profile> profiles;
    enumerate_profiles(opt.n, opt.m, opt.denominator,
                       [&](const Profile& p) { profiles.push_back(p); });
    total = static_cast<long>(profiles.size());
    for (auto [a, b] : edges) results.push_back(compare_welfare(a, b, profiles));
  } else {
    total = opt.trials;
    results = dominance_experiment(edges, {opt.n, opt.m, opt.denominator, opt.seed}, opt.trials);
  }
  bool ok = true;
  json rows = json::array();
  for (const DominancePair& r : results) {
    ok = ok && r.b_higher == 0;
    rows.push_back({{"dominant", mechanism_name(r.mech_a)},
                    {"dominated", mechanism_name(r.mech_b)},
                    {"higher", r.a_higher},
                    {"equal", r.equal},
                    {"violations", r.b_higher}});
  }
  json out{{"command", "audit"},
           {"check", "dominance"},
           {"profiles", total},
           {"edges", rows},
           {"holds", ok}};
  print_report(out, opt);
  return ok ? kExitOk : kExitAudit;
}

int audit_alpha(const Options& opt) {
  bool ok = true;
  long worst = 0;
  for (long n = 1; n <= opt.n; ++n)
    if (!check_alpha_bound(n)) {
      ok = false;
      worst = n;
      break;
    }
  json out{{"command", "audit"}, {"check", "alpha-bound"}, {"max_n", opt.n}, {"holds", ok}};
  if (!ok) out["first_failure"] = worst;
  print_report(out, opt);
  return ok ? kExitOk : kExitAudit;
}

int audit_truthfulness(const Options& opt) {
  TruthfulnessReport rep = truthfulness_probe(resolve_mechanism(opt.mech),
                                              {opt.n, opt.m, opt.denominator, opt.seed},
                                              opt.trials);
  json out{{"command", "audit"},
           {"check", "truthfulness"},
           {"mechanism", opt.mech},
           {"trials", rep.trials},
           {"violations", static_cast<long>(rep.violations.size())},
           {"holds", rep.violations.empty()}};
  print_report(out, opt);
  return rep.violations.empty() ? kExitOk : kExitAudit;
}

int cmd_audit(const Options& opt) {
  if (opt.dominance) return audit_dominance(opt);
  if (opt.alpha) return audit_alpha(opt);
  if (opt.truthfulness) return audit_truthfulness(opt);
  if (!opt.check.empty()) return audit_check(opt);
  Profile p = input_profile(opt);
  ApproximationAudit audit = approximation_audit(p);
  bool ok = audit.utilprop_within_alpha && audit.greedy_within_alpha &&
            audit.utilprop_within_m_bound;
  json out{{"command", "audit"},
           {"check", "approximation"},
           {"n", p.n},
           {"m", p.m},
           {"welfare_util", rational_json(audit.w_util)},
           {"welfare_utilprop", rational_json(audit.w_utilprop)},
           {"welfare_greedy", rational_json(audit.w_greedy)},
           {"ratio_utilprop", rational_json(audit.r_utilprop)},
           {"ratio_greedy", rational_json(audit.r_greedy)},
           {"alpha_star", rational_json(audit.alpha)},
           {"bound_tight", audit.r_utilprop == audit.alpha},
           {"greedy_within_m_bound", audit.greedy_within_m_bound},
           {"holds", ok}};
  print_report(out, opt);
  return ok ? kExitOk : kExitAudit;
}

int cmd_dominate(const Options& opt) {
  Options o = opt;
  o.dominance = true;
  return audit_dominance(o);
}

int cmd_gen(const Options& opt) {
  Profile p = opt.random ? random_profile({opt.n, opt.m, opt.denominator, opt.seed})
                         : make_family(opt);
  std::string text =
      opt.format == "json" ? profile_to_json(p).dump(2) + "\n" : profile_to_csv(p);
  if (opt.output.empty()) std::cout << text;
  else write_file(opt.output, text);
  return kExitOk;
}

int cmd_weighted_run(const Options& opt) {
  if (opt.input.empty()) throw ParseError("weighted-run needs --input");
  WeightedProfile wp = load_weighted_profile(opt.input, opt.weights);
  json out{{"command", "weighted-run"}, {"n", wp.profile.n}, {"m", wp.profile.m},
           {"total_weight", wp.total}};
  if (opt.mech == "greedy") {
    DecompositionCertificate cert = weighted_greedy_decomp(wp);
    out["mechanism"] = "greedy";
    out["allocation"] = allocation_json(cert.allocation.values);
    out["welfare"] = rational_json(weighted_welfare(wp, cert.allocation));
    out["contributions"] = matrix_json(cert.contributions.matrix);
  } else {
    MechanismReport rep = run_weighted_phantom(wp, require_phantom(opt.mech));
    out["mechanism"] = mechanism_name(rep.id);
    out["t_star"] = rational_json(rep.t_star);
    out["allocation"] = allocation_json(rep.allocation.values);
    out["welfare"] = rational_json(rep.welfare);
  }
  print_report(out, opt);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact budget-aggregation mechanisms under l1 utilities"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* c) {
    c->add_option("-i,--input", opt.input, "profile file (CSV or JSON)");
    c->add_option("--format", opt.format, "output format: table, json, csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    c->add_option("--family", opt.family, "instance family: worst-case, pwu-lb, gap");
    c->add_flag("--random", opt.random, "sample a random profile instead of reading a file");
    c->add_option("--n", opt.n, "voters (families / random profiles)");
    c->add_option("--m", opt.m, "alternatives (random profiles)");
    c->add_option("--ell", opt.ell, "worst-case family parameter");
    c->add_option("--eps", opt.eps, "gap family epsilon (fraction literal)");
    c->add_option("--denominator", opt.denominator, "lattice denominator for random profiles");
    c->add_option("--seed", opt.seed, "random seed");
  };

  auto* run = app.add_subcommand("run", "run a moving-phantom mechanism");
  add_common(run);
  run->add_option("--mech", opt.mech, "mechanism name");

  auto* decomp = app.add_subcommand("decomp", "run GreedyDecomp");
  add_common(decomp);

  auto* optd = app.add_subcommand("optdecomp", "welfare-optimal decomposable allocation");
  add_common(optd);
  optd->add_option("--node-limit", opt.node_limit, "branch-and-bound node limit");

  auto* audit = app.add_subcommand("audit", "axiom and bound audits");
  add_common(audit);
  audit->add_option("--mech", opt.mech, "mechanism name (or 'greedy')");
  audit->add_option("--check", opt.check,
                    "proportional-spending, range-respect, or single-minded");
  audit->add_flag("--dominance", opt.dominance, "check welfare-dominance edges");
  audit->add_flag("--enumerate", opt.enumerate_all, "exhaustive lattice enumeration");
  audit->add_flag("--alpha", opt.alpha, "check alpha*(n) bound for all n up to --n");
  audit->add_flag("--truthfulness", opt.truthfulness, "sampled truthfulness probe");
  audit->add_option("--trials", opt.trials, "sample count");

  auto* dominate = app.add_subcommand("dominate", "sampled welfare-dominance experiment");
  add_common(dominate);
  dominate->add_option("--trials", opt.trials, "sample count");
  dominate->add_flag("--enumerate", opt.enumerate_all, "exhaustive lattice enumeration");

  auto* gen = app.add_subcommand("gen", "emit an instance (family or random)");
  add_common(gen);
  gen->add_option("-o,--output", opt.output, "output path (default stdout)");

  auto* wrun = app.add_subcommand("weighted-run", "run a weighted mechanism");
  add_common(wrun);
  wrun->add_option("--mech", opt.mech, "mechanism name (or 'greedy')");
  wrun->add_option("--weights", opt.weights, "comma-separated weights (CSV inputs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (run->parsed()) return cmd_run(opt);
    if (decomp->parsed()) return cmd_decomp(opt);
    if (optd->parsed()) return cmd_optdecomp(opt);
    if (audit->parsed()) return cmd_audit(opt);
    if (dominate->parsed()) return cmd_dominate(opt);
    if (gen->parsed()) return cmd_gen(opt);
    if (wrun->parsed()) return cmd_weighted_run(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
