// Library walkthrough: generate points with a few far outliers, solve exactly
// and by sampling, and print what came out.

#include <iostream>

#include "mer/mer.hpp"

int main() {
  const mer::PointSet ps(mer::generate(mer::Distribution::gaussian, 400, 2024, 4));
  const long long t = 4;

  const mer::SolveReport exact = mer::solve_exact(ps, t);
  std::cout << "exact: area " << exact.rectangle.area.value << ", covers " << exact.enclosed_indices.size() << " of "
            << ps.size() << ", outliers";
  for (std::size_t i : exact.outlier_indices) std::cout << ' ' << i;
  std::cout << "\n  valid pairs " << exact.stats.valid_pair_count << ", k " << exact.stats.k << '\n';

  const auto params = mer::SampleParams::make(ps.size(), t, 0.25, 1.0, 7);
  const mer::SolveReport sampled = mer::solve_sampled(ps, t, params);
  const mer::Verification v = mer::verify(ps, sampled.rectangle, t);
  std::cout << "sampled (s=" << params.s << ", t'=" << params.t_prime << "): area " << sampled.rectangle.area.value
            << ", covers " << v.enclosed << (v.feasible ? "" : " (more than t left out)") << '\n';

  std::cout << mer::result_document(exact, ps.size(), t).dump(2) << '\n';
  return 0;
}
