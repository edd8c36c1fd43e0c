#pragma once

// Random point sets that satisfy the peeling hypotheses.  Points are drawn
// uniformly and the whole set is redrawn until the position predicates are
// certified, so every returned instance is admissible by check, not by luck.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "quadgon/error.hpp"
#include "quadgon/field.hpp"
#include "quadgon/position.hpp"
#include "quadgon/quadric.hpp"

namespace quadgon {

inline constexpr int kInstanceRedraws = 100;

/// `count` uniform points, none sharing a ruling line with each other or with `avoid`.
template <class Field>
std::vector<QuadricPoint<Field>> points_avoiding(const Field& F, int count, const std::vector<QuadricPoint<Field>>& avoid,
                                                 Rng& rng) {
  if (count < 0) throw Error("negative point count");
  std::vector<QuadricPoint<Field>> out;
  int rejected = 0;
  while (static_cast<int>(out.size()) < count) {
    const auto P = make_point(F, F.random(rng), F.random(rng));
    auto shares_ruling = [&](const QuadricPoint<Field>& R) {
      return same_projective(F, P.first, R.first) || same_projective(F, P.second, R.second);
    };
    if (std::any_of(avoid.begin(), avoid.end(), shares_ruling) || std::any_of(out.begin(), out.end(), shares_ruling)) {
      // Only a tiny field can make this loop long.
      if (++rejected > 1000 * (count + 1)) throw CheckFailure("could not realize general position");
      continue;
    }
    out.push_back(P);
  }
  return out;
}

template <class Field>
struct E4Instance {
  std::vector<QuadricPoint<Field>> E;
  int attempts = 0;
};

/// n points E with the e4 hypotheses for (u, v).
template <class Field>
E4Instance<Field> random_e4_instance(const Field& F, int u, int v, int n, Rng& rng,
                                     std::size_t cap = kDefaultSearchCap) {
  for (int attempt = 1; attempt <= kInstanceRedraws; ++attempt) {
    auto E = points_avoiding<Field>(F, n, {}, rng);
    if (check_e4_hypotheses(F, E, u, v, cap).pass) return {std::move(E), attempt};
  }
  throw CheckFailure("could not realize general position");
}

template <class Field>
struct G4Instance {
  std::vector<QuadricPoint<Field>> S, B;
  int attempts = 0;
};

/// |S| = x, |B| = z with the g4 hypotheses for (alpha, beta).  S is drawn once
/// and B is redrawn.
template <class Field>
G4Instance<Field> random_g4_instance(const Field& F, int alpha, int beta, int x, int z, Rng& rng,
                                     std::size_t cap = kDefaultSearchCap) {
  auto S = points_avoiding<Field>(F, x, {}, rng);
  for (int attempt = 1; attempt <= kInstanceRedraws; ++attempt) {
    auto B = points_avoiding(F, z, S, rng);
    if (check_g4_hypotheses(F, S, B, alpha, beta, cap).pass) return {std::move(S), std::move(B), attempt};
  }
  throw CheckFailure("could not realize general position");
}

}  // namespace quadgon
