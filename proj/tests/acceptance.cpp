/**
 * @file acceptance.cpp
 * @brief Release gate: one pass/fail line per criterion, exit 0 iff all pass.
 *
 * Every expected value is an exact rational; comparisons are bit-exact.
 * Criteria with runtime caps are wall-clock timed here.
 */
#include "helpers.hpp"

#include "bagg/analysis.hpp"
#include "bagg/optdecomp.hpp"
#include "bagg/weighted.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace bagg;
using namespace bagg::testutil;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " - " << what
            << "\n";
  if (!ok) ++g_failures;
}

double run_timed(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

// --- criterion 1: two-voter greedy golden values and the manipulation gain ---
void criterion1() {
  bool ok = true;
  ok = ok && greedy_decomp(fig1a()).allocation.values == alloc({"1/3", "1/3", "1/3"});
  ok = ok && greedy_decomp(fig1b()).allocation.values == alloc({"5/12", "7/24", "7/24"});
  std::vector<Rat> truthful = {R("1/2"), R("1/2"), R("0")};
  Rat gain = overlap(truthful, greedy_decomp(fig1b()).allocation.values) -
             overlap(truthful, greedy_decomp(fig1a()).allocation.values);
  ok = ok && overlap(truthful, greedy_decomp(fig1b()).allocation.values) == R("17/24");
  ok = ok && gain == R("1/24");
  report(1, ok, "two-voter greedy outputs and the exact 1/24 manipulation gain");
}

// --- criterion 2: five-alternative optimum with certificate, under 60 s ---
void criterion2() {
  Profile p = example51();
  bool ok = social_welfare(p, greedy_decomp(p).allocation) == 2;
  OptDecompResult res;
  double secs = run_timed([&] { res = util_decomp(p, 1000000); });
  ok = ok && res.welfare == R("7/3");
  ok = ok && res.allocation.values == alloc({"1/12", "1/12", "1/4", "1/4", "1/3"});
  DecompositionCertificate published;
  published.allocation = res.allocation;
  published.contributions.matrix = {
      {R("1/12"), R("0"), R("1/6"), R("0"), R("0")},
      {R("0"), R("1/12"), R("0"), R("1/6"), R("0")},
      {R("0"), R("0"), R("1/12"), R("0"), R("1/6")},
      {R("0"), R("0"), R("0"), R("1/12"), R("1/6")},
  };
  ok = ok && verify_certificate(p, published);
  ok = ok && secs < 60.0;
  std::ostringstream os;
  os << "greedy welfare 2, optimal decomposable welfare 7/3 with published certificate ("
     << secs << " s)";
  report(2, ok, os.str());
}

// --- criterion 3: ladder/piecewise-uniform incomparability pair ---
void criterion3() {
  bool ok = true;
  MechanismReport r = run_phantom(appc3_p(), MechanismId::Ladder);
  ok = ok && r.allocation.values == alloc({"5/12", "5/12", "1/6"}) && r.t_star == R("11/12") &&
       r.welfare == R("11/6");
  r = run_phantom(appc3_p(), MechanismId::PiecewiseUniform);
  ok = ok && r.allocation.values == alloc({"2/5", "2/5", "1/5"}) && r.t_star == R("9/10") &&
       r.welfare == R("9/5");
  r = run_phantom(appc3_pprime(), MechanismId::Ladder);
  ok = ok && r.welfare == R("17/6");
  r = run_phantom(appc3_pprime(), MechanismId::PiecewiseUniform);
  ok = ok && r.allocation.values == alloc({"1/2", "1/2", "0"}) && r.t_star == R("1/2") &&
       r.welfare == 3;
  report(3, ok, "ladder vs piecewise-uniform welfare flip on the paired 3-alternative profiles");
}

// --- criterion 4: proportional-spending violation + lower-bound family ratio ---
void criterion4() {
  bool ok = true;
  MechanismReport r = run_phantom(appb4(), MechanismId::Ladder);
  ok = ok && r.allocation.values == alloc({"2/3", "1/6", "1/6"}) && r.t_star == R("2/3");
  ProportionalSpendingReport ps = check_proportional_spending(appb4(), r.allocation);
  ok = ok && !ps.holds && ps.violating_k == 1 && ps.lhs == R("2/3") && ps.rhs == R("5/6");

  Profile lb = pwu_lower_bound_family(4);
  Rat ratio = welfare_optimal(lb).second / run_phantom(lb, MechanismId::PiecewiseUniform).welfare;
  ok = ok && ratio == R("5/3");
  report(4, ok, "ladder proportional-spending violation at k=1; piecewise-uniform ratio 5/3");
}

// --- criterion 5: seven-voter instance, greedy optimal but dominated ---
void criterion5() {
  Profile p = appe1();
  Allocation greedy = greedy_decomp(p).allocation;
  bool ok = greedy.values == alloc({"1/7", "1/7", "1/7", "4/7"});
  OptDecompResult res = util_decomp(p);
  ok = ok && res.welfare == social_welfare(p, greedy);
  Allocation better{alloc({"0", "0", "2/7", "5/7"})};
  ok = ok && pareto_dominates(p, better, greedy);
  ok = ok && !is_decomposable(p, better).has_value();
  report(5, ok, "greedy (1/7,1/7,1/7,4/7) optimal among decomposables yet dominated by a "
                "non-decomposable allocation");
}

// --- criterion 6: tight worst-case ratios and the alpha bound sweep ---
void criterion6() {
  bool ok = true;
  struct Row { int n, ell; const char* alpha; };
  for (Row row : {Row{4, 2, "4/3"}, Row{9, 3, "9/5"}, Row{16, 4, "16/7"}}) {
    Profile p = worst_case_family(row.n, row.ell);
    Rat ratio = run_phantom(p, MechanismId::Util).welfare /
                run_phantom(p, MechanismId::UtilProp).welfare;
    ok = ok && ratio == R(row.alpha) && ratio == alpha_star(row.n);
  }
  bool sweep = true;
  double secs = run_timed([&] {
    for (long n = 1; n <= 10000 && sweep; ++n) sweep = check_alpha_bound(n);
  });
  ok = ok && sweep && secs < 10.0;
  std::ostringstream os;
  os << "worst-case ratios 4/3, 9/5, 16/7 match alpha*(n); bound sweep n<=10^4 in " << secs
     << " s";
  report(6, ok, os.str());
}

// --- criterion 7: greedy-vs-optimal gap family window ---
void criterion7() {
  bool ok = true;
  Rat eps = R("1/1000");
  double secs = 0;
  for (int n : {4, 6, 8}) {
    Profile p = gap_family(n, eps);
    Rat w_greedy = social_welfare(p, greedy_decomp(p).allocation);
    Rat w_best;
    if (n == 4) {
      OptDecompResult res;
      secs = run_timed([&] { res = util_decomp(p, 1000000); });
      ok = ok && secs < 60.0;
      w_best = res.welfare;
    } else {
      DecompositionCertificate cert = gap_family_opt_certificate(n, eps);
      auto flow = is_decomposable(p, cert.allocation);
      ok = ok && flow.has_value() && verify_certificate(p, cert);
      w_best = social_welfare(p, cert.allocation);
    }
    Rat ratio = w_best / w_greedy;
    Rat target = 2 - Rat(6, n + 4);
    ok = ok && ratio <= target && ratio >= target - R("1/50");
    ok = ok && ratio <= 2 - Rat(1, n - 1);
  }
  std::ostringstream os;
  os << "gap-family ratios inside [2-6/(n+4)-1/50, 2-6/(n+4)] for n=4,6,8 (n=4 exact optimum in "
     << secs << " s)";
  report(7, ok, os.str());
}

// --- criterion 8: exhaustive dominance on two full lattices ---
void criterion8() {
  bool ok = true;
  double secs = run_timed([&] {
    for (auto [n, m, d] : {std::tuple<int, int, long>{2, 2, 4}, {2, 3, 3}}) {
      std::vector<Profile> profiles;
      enumerate_profiles(n, m, d, [&](const Profile& p) { profiles.push_back(p); });
      for (auto [a, b] : dominance_edges()) {
        DominancePair r = compare_welfare(a, b, profiles);
        ok = ok && r.b_higher == 0;
      }
    }
  });
  ok = ok && secs < 120.0;
  std::ostringstream os;
  os << "all dominance edges hold on the full n=2 lattices (D=4 with m=2, D=3 with m=3) in "
     << secs << " s";
  report(8, ok, os.str());
}

// --- criterion 9: property suites ---
void criterion9() {
  bool ok = true;
  std::ostringstream detail;

  // (a) truthfulness: >= 1000 sampled (profile, misreport) pairs per mechanism.
  {
    RandomProfileSpec spec{4, 3, 6, 424242};
    long trials = 250;  // 250 trials x 4 voters = 1000 pairs per mechanism
    long violations = 0;
    for (MechanismId id : all_mechanisms()) {
      TruthfulnessReport rep = truthfulness_probe(phantom_mechanism(id), spec, trials, 4);
      violations += static_cast<long>(rep.violations.size());
    }
    ok = ok && violations == 0;
    detail << "truthfulness 1000 pairs/mechanism (violations " << violations << "); ";
  }

  // (b) oracle equivalence on 50 random instances with n*m <= 9.
  {
    long mismatches = 0;
    int done = 0;
    struct Shape { int n, m; };
    for (Shape sh : {Shape{2, 2}, Shape{2, 3}, Shape{3, 2}, Shape{2, 4}, Shape{3, 3}}) {
      for (int s = 0; s < 10; ++s, ++done) {
        Profile p = random_profile({sh.n, sh.m, 5, 1000 + static_cast<unsigned>(done)}, s);
        const int cells = p.n * p.m;
        std::optional<Rat> oracle;
        for (long mask = 0; mask < (1L << cells); ++mask) {
          SupportPattern pat;
          pat.x.assign(p.n, std::vector<int>(p.m, 0));
          bool row_empty = false;
          for (int i = 0; i < p.n; ++i) {
            bool any = false;
            for (int j = 0; j < p.m; ++j) {
              if (mask & (1L << (i * p.m + j))) pat.x[i][j] = 1, any = true;
            }
            row_empty = row_empty || !any;
          }
          if (row_empty) continue;  // sum_j c_ij = 1/n > 0 is impossible
          auto w = pattern_welfare(p, pat);
          if (w && (!oracle || *w > *oracle)) oracle = *w;
        }
        if (!oracle || util_decomp(p).welfare != *oracle) ++mismatches;
      }
    }
    ok = ok && mismatches == 0 && done == 50;
    detail << "oracle equivalence on 50 instances (mismatches " << mismatches << "); ";
  }

  // (c) weighted Omega evaluation equals duplication on 200 instances, b <= 16.
  {
    long mismatches = 0;
    for (int t = 0; t < 200; ++t) {
      Profile p = random_profile({3, 3, 4, 555}, t);
      std::vector<long> w(3);
      std::vector<Rat> noise = random_simplex_row(3, 9, 556, t);
      for (int i = 0; i < 3; ++i) w[i] = 1 + static_cast<long>(num(noise[i] * 9) % 4);
      WeightedProfile wp = make_weighted(p, w);
      Profile ex = expand_weighted(wp);
      for (MechanismId id : all_mechanisms()) {
        MechanismReport direct = run_weighted_phantom(wp, id);
        MechanismReport oracle = run_phantom(ex, id);
        if (direct.allocation.values != oracle.allocation.values ||
            direct.welfare != oracle.welfare)
          ++mismatches;
      }
    }
    ok = ok && mismatches == 0;
    detail << "weighted duplication oracle on 200 instances (mismatches " << mismatches
           << "); ";
  }

  // (d) normalization exactness + greedy certificates + axioms on 1000 profiles.
  {
    long bad = 0;
    for (int t = 0; t < 1000; ++t) {
      Profile p = random_profile({3, 4, 8, 777777}, t);
      for (MechanismId id : {MechanismId::UtilProp, MechanismId::Ladder}) {
        if (sum(run_phantom(p, id).allocation.values) != 1) ++bad;
      }
      DecompositionCertificate cert = greedy_decomp(p);
      if (!verify_certificate(p, cert)) ++bad;
      if (!check_range_respect(p, cert.allocation)) ++bad;
      if (!check_proportional_spending(p, cert.allocation).holds) ++bad;
    }
    ok = ok && bad == 0;
    detail << "greedy certificates, range respect, proportional spending on 1000 profiles "
              "(failures "
           << bad << ")";
  }

  report(9, ok, detail.str());
}

// --- criterion 10: hardness is documented, not reproduced ---
void criterion10() {
  // The decision problem is NP-hard, so no empirical reproduction is attempted;
  // the exact solver is validated by criterion 9's oracle equivalence and is
  // capped (node limit, CLI size cap) instead.
  bool ok = true;
  try {
    util_decomp(example51(), 1);
    ok = false;  // the cap must be enforced
  } catch (const NodeLimitExceeded&) {
  }
  report(10, ok, "hardness handled by documented caps (node limit enforced) plus criterion 9's "
                 "oracle equivalence, not by empirical scaling");
}

}  // namespace

int main() {
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
  } catch (const std::exception& e) {
    std::cout << "acceptance run aborted: " << e.what() << "\n";
    return 1;
  }
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT") << "\n";
  return g_failures == 0 ? 0 : 1;
}
