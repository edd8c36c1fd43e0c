// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
//
//   acceptance [--jobs N] [--seed S] [--only K]
//
// Everything is over F_65537 unless stated otherwise.  Worker count defaults to
// the hardware concurrency; results do not depend on it.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "quadgon/cohomology.hpp"
#include "quadgon/curves.hpp"
#include "quadgon/field.hpp"
#include "quadgon/gonality.hpp"
#include "quadgon/horace.hpp"
#include "quadgon/instances.hpp"
#include "quadgon/parallel.hpp"

using namespace quadgon;

namespace {

const PrimeField F(65537);

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Options {
  unsigned jobs = 1;
  std::uint64_t seed = 20261015;
  int only = 0;
};

Options opts;

std::uint64_t seed_for(int criterion, std::uint64_t k) { return derive_seed(derive_seed(opts.seed, criterion), k); }

// 1. h0(I_2S(a, b)) = (a+1)(b+1) - 3x for general S.
Outcome double_points() {
  struct Case {
    int a, b, x;
  };
  std::vector<Case> cases;
  for (int a = 4; a <= 8; ++a)
    for (int b = a; b <= 8; ++b)
      for (int x = 0; 3 * x <= a * b; ++x) cases.push_back({a, b, x});
  constexpr int kSeeds = 20;
  const auto bad = parallel_map<int>(cases.size() * kSeeds, opts.jobs, [&](std::size_t k) {
    const auto& c = cases[k / kSeeds];
    Rng rng(seed_for(1, k));
    const auto S = sample_general_nodes(F, c.x, rng);
    const auto rep = ideal_cohomology(F, fat_scheme(S), {c.a, c.b});
    return rep.h0 == (c.a + 1) * (c.b + 1) - 3 * c.x && rep.h1 == 0 ? 0 : 1;
  });
  const int failures = static_cast<int>(std::count(bad.begin(), bad.end(), 1));
  return {failures == 0, std::to_string(cases.size() * kSeeds) + " schemes, " + std::to_string(failures) + " failures"};
}

// 2. Double points plus one tangency on each ruling through two extra points.
Outcome tangent_curves() {
  struct Case {
    int a, b, x;
  };
  std::vector<Case> cases;
  for (const auto& [a, b] : {std::pair{4, 4}, {4, 5}, {5, 5}, {6, 6}})
    for (int x = 0; 3 * x <= (a - 1) * (b - 1); ++x) cases.push_back({a, b, x});
  constexpr int kSeeds = 10;
  const ScanOptions scan{10000, false};
  const auto bad = parallel_map<int>(cases.size() * kSeeds, opts.jobs, [&](std::size_t k) {
    const auto& c = cases[k / kSeeds];
    Rng rng(seed_for(2, k));
    const auto S = sample_general_nodes(F, c.x, rng);
    const auto P = points_avoiding(F, 2, S, rng);
    const auto rep = build_tangent_curve(F, c.a, c.b, S, P[0], P[1], rng, scan);
    const bool ok = rep.h0 == (c.a + 1) * (c.b + 1) - 3 * c.x - 4 && rep.fibre_d1 && rep.fibre_d2 &&
                    rep.fibre_d1->distinct == c.b - 1 && rep.fibre_d2->distinct == c.a - 1;
    return ok ? 0 : 1;
  });
  const int failures = static_cast<int>(std::count(bad.begin(), bad.end(), 1));
  return {failures == 0, std::to_string(cases.size() * kSeeds) + " curves, " + std::to_string(failures) + " failures"};
}

// 3. Peeling certificates never claim h1 = 0 when the direct rank says otherwise.
Outcome certificates() {
  constexpr int kPerMode = 120;
  struct Trial {
    bool conclusive = false, agree = true, replay = true;
  };
  auto e4 = parallel_map<Trial>(kPerMode, opts.jobs, [&](std::size_t k) {
    Rng rng(seed_for(3, k));
    const int u = 9 + static_cast<int>(uniform_below(rng, 7));
    const int v = u + static_cast<int>(uniform_below(rng, 16 - u));
    const int cap_n = v - u + 10 * (u / 3);
    const int n = cap_n / 2 + static_cast<int>(uniform_below(rng, cap_n - cap_n / 2 + 1));
    const std::size_t cap = std::max<std::size_t>(kDefaultSearchCap, n);
    const auto inst = random_e4_instance(F, u, v, n, rng, cap);
    const auto cert = peel_e4(F, inst.E, u, v, cap);
    Trial t;
    t.conclusive = cert.conclusive();
    t.agree = !t.conclusive || h1_of_points(F, inst.E, {u, v}) == 0;
    t.replay = check_certificate(F, cert).ok;
    return t;
  });
  auto g4 = parallel_map<Trial>(kPerMode, opts.jobs, [&](std::size_t k) {
    Rng rng(seed_for(3, kPerMode + k));
    const int alpha = 3 + static_cast<int>(uniform_below(rng, 2));
    const int beta = 2 + static_cast<int>(uniform_below(rng, 2));
    const int x = static_cast<int>(uniform_below(rng, (beta + 1) * (beta + 1) + 1));
    const int z = 5 * alpha + static_cast<int>(uniform_below(rng, 5 * alpha + 1));
    const std::size_t cap = std::max<std::size_t>(kDefaultSearchCap, x + z);
    const auto inst = random_g4_instance(F, alpha, beta, x, z, rng, cap);
    const auto cert = peel_g4(F, inst.S, inst.B, alpha, beta, cap);
    Trial t;
    t.conclusive = cert.conclusive();
    const int u = 3 * alpha + beta;
    t.agree = !t.conclusive || h1_of_points(F, detail::concat(inst.S, inst.B), {u, u}) == 0;
    t.replay = check_certificate(F, cert).ok;
    return t;
  });
  bool pass = true;
  std::ostringstream os;
  for (const auto& [name, trials] : {std::pair{"e4", &e4}, {"g4", &g4}}) {
    int conclusive = 0, disagree = 0, replay = 0;
    for (const auto& t : *trials) {
      conclusive += t.conclusive;
      disagree += !t.agree;
      replay += !t.replay;
    }
    const int inconclusive = kPerMode - conclusive;
    pass = pass && disagree == 0 && replay == 0 && 10 * inconclusive < kPerMode;
    os << name << ": " << conclusive << "/" << kPerMode << " conclusive, " << disagree << " disagreements, "
       << replay << " replay failures, inconclusive rate " << 100.0 * inconclusive / kPerMode << "%; ";
  }
  auto s = os.str();
  s.resize(s.size() - 2);
  return {pass, s};
}

// 4. h1(I_{S u B}(a-2, a+m-2)) = 0 for general S and B.
Outcome d4_sampling() {
  constexpr int kTrials = 50;
  bool pass = true;
  int total = 0, positive = 0, disagree = 0;
  std::ostringstream fails;
  for (const int a : {18, 20, 24})
    for (const int m : {0, 2})
      for (const int x : {0, a / 3 + m}) {
        const auto rep = d4_lower_sampler(F, a, m, x, 3 * a - 15, kTrials, seed_for(4, a * 1000 + m * 100 + x), opts.jobs);
        total += rep.trials;
        positive += rep.positive_h1;
        disagree += rep.disagreements;
        if (!rep.passed()) {
          pass = false;
          fails << " (a=" << a << ",m=" << m << ",x=" << x << ")";
        }
      }
  std::string d = std::to_string(total) + " trials, " + std::to_string(positive) + " with h1 > 0, " +
                  std::to_string(disagree) + " certificate disagreements";
  if (!pass) d += "; failing:" + fails.str();
  return {pass, d};
}

// 5. Nodal curves: every accepted report carries nonzero Hessians and a clean scan.
Outcome nodal_curves() {
  struct Case {
    int a, x;
  };
  std::vector<Case> cases;
  for (int a = 4; a <= 8; ++a)
    for (int x = 0; 3 * x <= a * a; ++x) cases.push_back({a, x});
  constexpr int kSeeds = 5;
  const ScanOptions scan{10000, false};
  const auto bad = parallel_map<int>(cases.size() * kSeeds, opts.jobs, [&](std::size_t k) {
    const auto& c = cases[k / kSeeds];
    Rng rng(seed_for(5, k));
    const auto S = sample_general_nodes(F, c.x, rng);
    const auto rep = build_nodal_curve(F, c.a, c.a, S, rng, scan);
    const bool ok = rep.certified(F) && rep.nodes_ok(F) && rep.scan.clean() && rep.attempts <= kCurveRedraws &&
                    replay_nodal_report(F, rep, S);
    return ok ? 0 : 1;
  });
  const int failures = static_cast<int>(std::count(bad.begin(), bad.end(), 1));
  return {failures == 0, std::to_string(cases.size() * kSeeds) + " curves, " + std::to_string(failures) +
                             " uncertified after at most " + std::to_string(kCurveRedraws) + " draws"};
}

// 6. Closed-form bounds for the square case a = 204.
Outcome closed_form() {
  bool pass = true;
  std::ostringstream os;
  for (const long long x : {0LL, 1LL, 200LL, 404LL}) {
    const auto gb = bounds_for(204, 0, x);
    const long long d4_hi = x == 0 ? 611 : 610;
    const bool ok = gb.d3_lower == 403 && gb.d3_upper == 408 && gb.d4_lower == 597 && gb.d4_upper == d4_hi && gb.slope_ok;
    pass = pass && ok;
    os << "x=" << x << ": d3 [" << gb.d3_lower << "," << gb.d3_upper << "] d4 [" << gb.d4_lower << "," << gb.d4_upper
       << "]" << (ok ? "" : " MISMATCH") << "; ";
  }
  auto s = os.str();
  s.resize(s.size() - 2);
  return {pass, s};
}

// 7. Every genus in [40805, 60000] is (a-1)^2 - x with 0 <= x <= 2a-4, a >= 204.
Outcome genus_covering() {
  int bad = 0;
  for (long long g = 40805; g <= 60000; ++g) {
    try {
      const auto c = genus_cover(g);
      if (c.a < 204 || c.x < 0 || c.x > 2 * c.a - 4 || (c.a - 1) * (c.a - 1) - c.x != g) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  bool rejected = false;
  try {
    genus_cover(40804);
  } catch (const Error&) {
    rejected = true;
  }
  return {bad == 0 && rejected,
          "19196 genera, " + std::to_string(bad) + " invalid; 40804 " + (rejected ? "rejected" : "accepted")};
}

// 8. The ratio and normalized-difference intervals for 204 <= a <= 10^4.
Outcome asymptotic_intervals() {
  const Rational three_halves(3, 2), twelfth(1, 12);
  int bad = 0;
  AsymptoticRow last;
  for (long long a = 204; a <= 10000; ++a) {
    last = asymptotic_row(a);
    if (last.ratio_lo > three_halves || last.ratio_hi < three_halves) ++bad;
    if (last.stat_lo > twelfth || last.stat_hi < twelfth) ++bad;
  }
  const Rational ratio_width = last.ratio_hi - last.ratio_lo, stat_width = last.stat_hi - last.stat_lo;
  const bool pass = bad == 0 && ratio_width < Rational(2, 1000) && stat_width < Rational(1, 1000);
  return {pass, std::to_string(bad) + " intervals missing their limit; widths at a=10^4: ratio " +
                    decimal(ratio_width, 6) + ", difference " + decimal(stat_width, 6)};
}

// 9. slope_ok(a, m) holds exactly when a >= 4m + 43.
Outcome slope_arithmetic() {
  int bad = 0, checked = 0;
  for (long long a = 1; a <= 500; ++a)
    for (long long m = 0; m < a; ++m, ++checked)
      if (slope_ok(a, m) != (a >= 4 * m + 43)) ++bad;
  return {bad == 0, std::to_string(checked) + " pairs, " + std::to_string(bad) + " mismatches"};
}

int parse_arg(int argc, char** argv, int& i) {
  if (i + 1 >= argc) {
    std::cerr << "missing value for " << argv[i] << "\n";
    std::exit(2);
  }
  return std::atoi(argv[++i]);
}

}  // namespace

int main(int argc, char** argv) {
  opts.jobs = std::max(1u, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--jobs") opts.jobs = static_cast<unsigned>(std::max(1, parse_arg(argc, argv, i)));
    else if (arg == "--seed") opts.seed = static_cast<std::uint64_t>(parse_arg(argc, argv, i));
    else if (arg == "--only") opts.only = parse_arg(argc, argv, i);
    else {
      std::cerr << "usage: acceptance [--jobs N] [--seed S] [--only K]\n";
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"double-point Hilbert function", double_points},
      {"tangency schemes and ruling fibres", tangent_curves},
      {"peeling certificate soundness", certificates},
      {"d4 lower-bound sampling", d4_sampling},
      {"nodal curve certification", nodal_curves},
      {"closed-form bounds at a = 204", closed_form},
      {"genus cover", genus_covering},
      {"asymptotic intervals", asymptotic_intervals},
      {"slope arithmetic", slope_arithmetic},
  };

  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (opts.only != 0 && opts.only != static_cast<int>(k + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("%s %zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
