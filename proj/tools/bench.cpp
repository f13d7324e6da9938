// Timing comparison of the enumeration and localization kernels:
//   - pruned OpenMP search at 1 worker and at every available worker
//   - unpruned serial oracle
//   - shared-denominator localization sums vs. point-by-point rational sums

#include <iomanip>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>
#include <omp.h>

#include "chiy/enumerate.hpp"
#include "chiy/localization.hpp"

namespace {

template <typename F>
double time_best(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    f();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chiy kernel benchmark"};
  std::size_t n = 2;
  std::size_t points = 4;
  int max_weight = 2;
  int reps = 3;
  bool skip_oracle = false;
  app.add_option("--n", n, "half dimension");
  app.add_option("--points", points, "number of fixed points");
  app.add_option("--max-weight", max_weight, "bound on |w|");
  app.add_option("--reps", reps, "repetitions (best time reported)");
  app.add_flag("--skip-oracle", skip_oracle, "do not run the brute-force oracle");
  CLI11_PARSE(app, argc, argv);

  chiy::EnumerationQuery q;
  q.half_dim = n;
  q.point_count = points;
  q.max_weight = max_weight;

  const int threads = omp_get_max_threads();
  std::cout << "query n=" << n << " k=" << points << " W=" << max_weight << " space="
            << chiy::candidate_space(n, points, max_weight) << " threads=" << threads << "\n";

  std::size_t found = 0;
  q.worker_count = 1;
  const double serial = time_best(reps, [&] { found = chiy::enumerate_admissible(q).admissible.size(); });
  std::cout << std::fixed << std::setprecision(4) << "pruned, 1 worker      " << serial << " s  (" << found
            << " admissible)\n";

  q.worker_count = threads;
  const double parallel = time_best(reps, [&] { found = chiy::enumerate_admissible(q).admissible.size(); });
  std::cout << "pruned, all workers   " << parallel << " s  speedup " << serial / parallel << "\n";

  if (!skip_oracle) {
    const double oracle = time_best(1, [&] { found = chiy::brute_force_admissible(q).admissible.size(); });
    std::cout << "brute-force oracle    " << oracle << " s  (" << found << " admissible)\n";
  }

  std::vector<chiy::FixedPointDatum> samples;
  for (int m = 2; m <= 7; ++m) {
    std::vector<chiy::Weight> exps(static_cast<std::size_t>(m) + 1);
    std::iota(exps.begin(), exps.end(), 0);
    for (auto& e : exps) e *= 2;
    exps.back() += 1;
    samples.push_back(chiy::gen_cpn(exps));
  }
  samples.push_back(chiy::product(chiy::gen_s6(2, 3), chiy::gen_s6(1, 4)));

  const double fast = time_best(reps, [&] {
    for (const auto& d : samples) (void)chiy::localization_sums(d);
  });
  const double reference = time_best(reps, [&] {
    for (const auto& d : samples) (void)chiy::localization_sums_reference(d);
  });
  std::cout << "localization shared denominator " << fast << " s\n"
            << "localization rational reference " << reference << " s  ratio " << reference / fast << "\n";
  return 0;
}
