/**
 * @file bench_harness.cpp
 * @brief Benchmarks the experiment harnesses: serial reference (threads=1)
 *        against the parallel trial loop, asserting identical results.
 */
#include "bagg/analysis.hpp"

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace bagg;

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

bool same(const std::vector<DominancePair>& x, const std::vector<DominancePair>& y) {
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i].a_higher != y[i].a_higher || x[i].equal != y[i].equal ||
        x[i].b_higher != y[i].b_higher)
      return false;
  return true;
}

bool same(const TruthfulnessReport& x, const TruthfulnessReport& y) {
  if (x.violations.size() != y.violations.size()) return false;
  for (size_t i = 0; i < x.violations.size(); ++i)
    if (x.violations[i].trial != y.violations[i].trial ||
        x.violations[i].voter != y.violations[i].voter)
      return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  long trials = argc > 1 ? std::atol(argv[1]) : 200;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  RandomProfileSpec spec{5, 4, 8, 42};
  std::cout << "trials=" << trials << " threads=" << threads << " (n=" << spec.n
            << ", m=" << spec.m << ", D=" << spec.denominator << ")\n";

  auto edges = dominance_edges();
  auto t0 = std::chrono::steady_clock::now();
  auto serial = dominance_experiment(edges, spec, trials, 1);
  auto t1 = std::chrono::steady_clock::now();
  auto parallel = dominance_experiment(edges, spec, trials, threads);
  auto t2 = std::chrono::steady_clock::now();
  std::cout << "dominance     serial " << seconds(t0, t1) << "s  parallel " << seconds(t1, t2)
            << "s  match=" << (same(serial, parallel) ? "yes" : "NO") << "\n";

  auto mech = phantom_mechanism(MechanismId::UtilProp);
  auto t3 = std::chrono::steady_clock::now();
  auto ts = truthfulness_probe(mech, spec, trials, 1);
  auto t4 = std::chrono::steady_clock::now();
  auto tp = truthfulness_probe(mech, spec, trials, threads);
  auto t5 = std::chrono::steady_clock::now();
  std::cout << "truthfulness  serial " << seconds(t3, t4) << "s  parallel " << seconds(t4, t5)
            << "s  match=" << (same(ts, tp) ? "yes" : "NO") << "\n";

  bool ok = same(serial, parallel) && same(ts, tp);
  return ok ? 0 : 1;
}
