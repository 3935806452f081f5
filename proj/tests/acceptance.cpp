// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mer/mer.hpp"

using namespace mer;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << std::endl;
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

// Sizes and budgets for the small oracle suites: n in [6, 12], t in [0, min(3, ceil(n/2) - 1)].
std::pair<std::size_t, long long> small_instance_shape(Rng& rng) {
  const auto n = static_cast<std::size_t>(rng.between(6, 12));
  const long long t_max = std::min<long long>(3, static_cast<long long>((n + 1) / 2) - 1);
  return {n, rng.between(0, t_max)};
}

Outcome oracle_equivalence_general() {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(1, 0));
  std::size_t matched = 0;
  const std::size_t total = 500;
  std::string first_miss;
  for (std::size_t i = 0; i < total; ++i) {
    const auto [n, t] = small_instance_shape(rng);
    const PointSet ps(generate(Distribution::uniform_square, n, derive_seed(1, i + 1)));
    const Area e = solve_exact(ps, t).rectangle.area;
    const Area o = solve_oracle(ps, t).rectangle.area;
    if (e.exact && o.exact && compare(e, o) == 0) {
      ++matched;
    } else if (first_miss.empty()) {
      first_miss = " first mismatch at instance " + std::to_string(i);
    }
  }
  const double secs = seconds_since(t0);
  return {matched == total && secs < 60.0,
          std::to_string(matched) + "/" + std::to_string(total) + " exact matches in " + fmt(secs) + " s (limit 60 s)" +
              first_miss};
}

Outcome oracle_equivalence_collinear() {
  Rng rng(derive_seed(2, 0));
  std::size_t matched = 0, with_triple = 0;
  const std::size_t total = 200;
  for (std::size_t i = 0; i < total; ++i) {
    const auto [n, t] = small_instance_shape(rng);
    const PointSet ps(generate(Distribution::grid_collinear, n, derive_seed(2, i + 1)));
    with_triple += find_collinear_triple(ps).has_value();
    const Area e = solve_exact(ps, t, true).rectangle.area;
    const Area o = solve_oracle(ps, t).rectangle.area;
    matched += compare(e, o) == 0;
  }
  return {matched == total && with_triple == total,
          std::to_string(matched) + "/" + std::to_string(total) + " exact matches; " + std::to_string(with_triple) +
              " instances contain a collinear triple"};
}

Outcome octagon_counts() {
  const PointSet ps(generate(Distribution::convex_position, 8, 3));
  const std::size_t c1 = valid_pairs(ps, 1, false).size();
  const std::size_t c2 = valid_pairs(ps, 2, false).size();
  return {c1 == 16 && c2 == 24, "t=1: " + std::to_string(c1) + " pairs (want 16), t=2: " + std::to_string(c2) +
                                    " pairs (want 24)"};
}

Outcome structural_invariants() {
  Rng rng(derive_seed(4, 0));
  std::size_t bad_a = 0, bad_b = 0, bad_c = 0, bad_d = 0;
  const std::size_t total = 1000;
  const std::array<Distribution, 3> dists{Distribution::uniform_square, Distribution::gaussian,
                                          Distribution::convex_position};
  for (std::size_t i = 0; i < total; ++i) {
    const auto n = static_cast<std::size_t>(rng.between(20, 200));
    const long long t = rng.between(0, 8);
    const PointSet ps(generate(dists[i % dists.size()], n, derive_seed(4, i + 1)));
    const auto pairs = valid_pairs(ps, t, false);
    const auto layers = convex_layers(ps, static_cast<std::size_t>(t) + 1);
    std::size_t k = 0;
    for (const auto& l : layers.layers) k += l.size();

    std::vector<std::size_t> per_point(n, 0);
    bool endpoints_ok = true;
    for (const ValidPair& vp : pairs) {
      ++per_point[vp.i1];
      ++per_point[vp.i2];
      endpoints_ok &= layers.layer_of[vp.i1] <= static_cast<std::size_t>(t) + 1 &&
                      layers.layer_of[vp.i2] <= static_cast<std::size_t>(t) + 1;
    }
    bad_a += *std::max_element(per_point.begin(), per_point.end()) > static_cast<std::size_t>(4 * t + 2);
    bad_b += pairs.size() > static_cast<std::size_t>(2 * t + 1) * k;
    bad_c += !endpoints_ok;
    const std::size_t covered = solve_exact(ps, t).enclosed_indices.size();
    bad_d += !(covered == n - t || covered == n - t + 1);
  }
  return {bad_a + bad_b + bad_c + bad_d == 0,
          std::to_string(total) + " instances; violations: per-point " + std::to_string(bad_a) + ", total " +
              std::to_string(bad_b) + ", layers " + std::to_string(bad_c) + ", enclosed count " +
              std::to_string(bad_d)};
}

Outcome dual_relation() {
  Rng rng(derive_seed(5, 0));
  std::size_t ok = 0;
  const std::size_t total = 100;
  for (std::size_t i = 0; i < total; ++i) {
    const auto [n, t] = small_instance_shape(rng);
    const PointSet ps(generate(Distribution::uniform_square, n, derive_seed(5, i + 1)));
    const Area opt = solve_oracle(ps, t).rectangle.area;
    const std::size_t kappa = kappa_oracle(ps, opt);
    ok += kappa == n - t || kappa == n - t + 1;
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " with kappa in {n-t, n-t+1}"};
}

Outcome sampling_guarantee() {
  const std::size_t n = 2000;
  const long long t = 10;
  const PointSet ps(generate(Distribution::uniform_square, n, 2000));
  const auto t0 = Clock::now();
  const SolveReport exact = solve_exact(ps, t);
  const double exact_secs = seconds_since(t0);
  const auto threshold = static_cast<std::size_t>(std::ceil(static_cast<double>(n - t) * (1.0 - 0.2)));
  std::size_t good = 0, enough_points = 0, small_enough = 0, min_cov = n, max_cov = 0;
  SampleParams shown;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    shown = SampleParams::make(n, t, 0.2, 1.0, seed);
    const SolveReport r = solve_sampled(ps, t, shown);
    const std::size_t covered = r.enclosed_indices.size();
    const bool cov_ok = covered >= threshold;
    const bool area_ok = compare(r.rectangle.area, exact.rectangle.area) <= 0;
    enough_points += cov_ok;
    small_enough += area_ok;
    good += cov_ok && area_ok;
    min_cov = std::min(min_cov, covered);
    max_cov = std::max(max_cov, covered);
  }
  return {good >= 18 && exact_secs < 120.0,
          std::to_string(good) + "/20 runs meet both conditions (need 18); enclosed >= " + std::to_string(threshold) +
              " in " + std::to_string(enough_points) + "/20 (observed " + std::to_string(min_cov) + ".." +
              std::to_string(max_cov) + "), area <= opt in " + std::to_string(small_enough) + "/20; s=" +
              std::to_string(shown.s) + " t'=" + std::to_string(shown.t_prime) + "; exact reference " +
              fmt(exact_secs) + " s (limit 120 s)"};
}

Outcome scaling() {
  const std::array<std::size_t, 3> sizes{500, 1000, 2000};
  std::array<double, 3> med{};
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    std::vector<double> times;
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
      const PointSet ps(generate(Distribution::uniform_square, sizes[s], derive_seed(7, sizes[s] * 10 + trial)));
      const auto t0 = Clock::now();
      solve_exact(ps, 5);
      times.push_back(seconds_since(t0));
    }
    std::sort(times.begin(), times.end());
    med[s] = times[2];
  }
  const double r1 = med[1] / med[0], r2 = med[2] / med[1];
  const bool in_band = r1 >= 3 && r1 <= 6 && r2 >= 3 && r2 <= 6;
  std::string detail = "median times " + fmt(med[0], 4) + " / " + fmt(med[1], 4) + " / " + fmt(med[2], 4) +
                       " s; T(1000)/T(500)=" + fmt(r1, 2) + ", T(2000)/T(1000)=" + fmt(r2, 2);
  if (!in_band) detail += " (WARN: outside [3, 6]; fails only above 8)";
  return {r1 <= 8 && r2 <= 8, detail};
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args, int workers) {
  const std::string cmd = "MER_WORKERS=" + std::to_string(workers) + " " + MER_CLI_PATH + " " + args;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Bench rows without the wall-clock columns.
std::string drop_timing_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k >= 5 && k <= 7) continue;
      out << cells[k] << (k + 1 < cells.size() ? "," : "\n");
    }
  }
  return out.str();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "mer_acceptance";
  fs::create_directories(dir);
  const std::string small = (dir / "small.csv").string();
  const std::string medium = (dir / "medium.csv").string();
  if (run_cli("gen grid-collinear --n 12 --seed 8 --output " + small, 1).code != 0 ||
      run_cli("gen uniform-square --n 1500 --seed 8 --outliers 5 --output " + medium, 1).code != 0) {
    return {false, "could not generate inputs"};
  }
  struct Case {
    std::string name, args;
    bool bench = false;
  };
  const std::vector<Case> cases{
      {"solve exact", "solve " + medium + " --t 5"},
      {"solve exact general", "solve " + medium + " --t 5 --general-position"},
      {"solve oracle", "solve " + small + " --t 2 --mode oracle"},
      {"solve sample", "solve " + medium + " --t 5 --mode sample --epsilon 0.2 --seed 42"},
      {"gen", "gen gaussian --n 500 --seed 9 --outliers 3"},
      {"bench", "bench --sizes 200,400 --t 2 --trials 2 --seed 3", true},
  };
  std::vector<std::string> broken;
  for (const Case& c : cases) {
    std::string reference;
    bool same = true;
    bool first = true;
    for (int workers : {1, 2, 4}) {
      for (int rep = 0; rep < 3; ++rep) {
        Run r = run_cli(c.args, workers);
        if (r.code != 0) {
          same = false;
          continue;
        }
        const std::string text = c.bench ? drop_timing_columns(r.out) : r.out;
        if (first) {
          reference = text;
          first = false;
        } else {
          same &= text == reference;
        }
      }
    }
    if (!same || reference.empty()) broken.push_back(c.name);
  }
  std::string detail = std::to_string(cases.size() - broken.size()) + "/" + std::to_string(cases.size()) +
                       " commands identical over 3 runs x workers {1,2,4} (bench compared without timing columns)";
  for (const auto& b : broken) detail += "; differs: " + b;
  return {broken.empty(), detail};
}

}  // namespace

int main() {
  report(1, "oracle equivalence, general position", oracle_equivalence_general);
  report(2, "oracle equivalence, collinear input", oracle_equivalence_collinear);
  report(3, "valid pairs on convex octagon", octagon_counts);
  report(4, "structural invariants", structural_invariants);
  report(5, "dual relation", dual_relation);
  report(6, "sampling guarantee", sampling_guarantee);
  report(7, "scaling", scaling);
  report(8, "determinism", determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
