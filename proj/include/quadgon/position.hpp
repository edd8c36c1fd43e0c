#pragma once

// Exact incidence maxima of point sets against curves of a fixed type on Q,
// and the general-position hypotheses built from them.
//
// For a type (c, d) with k = (c+1)(d+1) and evaluation vectors e_q in K^k, a
// curve f contains q iff <e_q, f> = 0.  If the e_q span K^k, a curve through
// the maximum number of points is spanned (in the dual sense) by k-1
// independent points among them, so the search runs over independent
// (k-1)-subsets.  It is organised as
//
//   prefix T of k-3 independent points  ->  net N = ker(T), dim 3
//   phi(q) = (<n_1, e_q>, <n_2, e_q>, <n_3, e_q>)
//
// so curves through T become lines in P^2 through the points [phi(q)], and
// for each anchor r the other points are grouped by the line joining [phi(r)]
// and [phi(q)].  Only q > r are grouped: the lexicographically smallest basis
// (T, r, s) of a maximal curve has every other point of the curve either in
// span(T) or after r, so the maximum is exact and the first strict maximum in
// enumeration order is the lexicographically smallest generating subset.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "quadgon/error.hpp"
#include "quadgon/field.hpp"
#include "quadgon/matrix.hpp"
#include "quadgon/quadric.hpp"

namespace quadgon {

inline constexpr std::size_t kDefaultSearchCap = 64;

template <class Field>
struct IncidenceMax {
  int count = 0;
  BiForm<Field> witness;
  std::vector<std::size_t> on_curve;    // indices of points on the witness
  std::vector<std::size_t> generators;  // subset that determines the witness
};

inline void check_curve_type(int c, int d) {
  const bool ok = (c == 1 && d == 0) || (c == 0 && d == 1) || (c == 1 && d == 1) || (c == 2 && d == 1) ||
                  (c == 1 && d == 2);
  if (!ok) throw Error("unsupported curve type (" + std::to_string(c) + "," + std::to_string(d) + ")");
}

template <class Field>
std::vector<std::size_t> incident_indices(const Field& F, const BiForm<Field>& f,
                                          const std::vector<QuadricPoint<Field>>& pts) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (vanishes_at(F, f, pts[i])) out.push_back(i);
  return out;
}

namespace detail {

template <class Field>
IncidenceMax<Field> max_on_ruling(const Field& F, const std::vector<QuadricPoint<Field>>& pts, bool first) {
  IncidenceMax<Field> best;
  const QuadricPoint<Field> origin{{F.zero(), F.one()}, {F.zero(), F.one()}};
  best.witness = first ? line_10(F, origin) : line_01(F, origin);
  std::vector<bool> seen(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> group;
    for (std::size_t j = i; j < pts.size(); ++j) {
      const bool same = first ? same_projective(F, pts[i].first, pts[j].first)
                              : same_projective(F, pts[i].second, pts[j].second);
      if (same) {
        seen[j] = true;
        group.push_back(j);
      }
    }
    if (static_cast<int>(group.size()) > best.count) {
      best.count = static_cast<int>(group.size());
      best.witness = first ? line_10(F, pts[i]) : line_01(F, pts[i]);
      best.on_curve = group;
      best.generators = {i};
    }
  }
  return best;
}

/// Fixed-seed combination of a kernel basis; avoids special members such as
/// products of lines when the kernel is large.
template <class Field>
BiForm<Field> generic_kernel_member(const Field& F, Bidegree d,
                                    const std::vector<std::vector<typename Field::Element>>& basis) {
  Rng rng(0x5eed0f0a11c0ffeeULL);
  auto f = BiForm<Field>::zero(F, d);
  while (f.is_zero(F)) {
    for (const auto& v : basis) {
      const auto c = F.random_nonzero(rng);
      for (std::size_t k = 0; k < v.size(); ++k) f.coeffs[k] = F.add(f.coeffs[k], F.mul(c, v[k]));
    }
  }
  return f;
}

/// Line-direction key for grouping.  For PrimeField keys are integers in
/// [0, p]; for other fields the ratio itself is kept.
template <class Field>
struct DirectionKey {
  bool at_infinity = false;
  typename Field::Element ratio{};
  std::size_t index = 0;
};

}  // namespace detail

/// Maximum number of the given points on one curve of type (c, d), with a
/// witness curve and the incident indices.
template <class Field>
IncidenceMax<Field> max_on_curve_type(const Field& F, const std::vector<QuadricPoint<Field>>& pts, int c, int d,
                                      std::size_t cap = kDefaultSearchCap) {
  using Element = typename Field::Element;
  check_curve_type(c, d);
  if (pts.size() > cap) throw Error("search cap exceeded");
  if (c == 1 && d == 0) return detail::max_on_ruling(F, pts, true);
  if (c == 0 && d == 1) return detail::max_on_ruling(F, pts, false);

  const Bidegree deg{c, d};
  const std::size_t k = static_cast<std::size_t>(deg.dim());
  const std::size_t n = pts.size();
  std::vector<std::vector<Element>> ev(n);
  Matrix<Field> all(F, 0, k);
  for (std::size_t q = 0; q < n; ++q) {
    ev[q] = evaluation_row(F, deg, pts[q]);
    all.append_row(ev[q]);
  }

  IncidenceMax<Field> best;
  if (rank(F, all) < k) {
    best.witness = detail::generic_kernel_member(F, deg, kernel_basis(F, all));
    best.count = static_cast<int>(n);
    for (std::size_t q = 0; q < n; ++q) best.on_curve.push_back(q);
    // Generators: greedy independent prefix in index order.
    Matrix<Field> acc(F, 0, k);
    std::size_t r = 0;
    for (std::size_t q = 0; q < n; ++q) {
      acc.append_row(ev[q]);
      const auto rk = rank(F, acc);
      if (rk > r) {
        best.generators.push_back(q);
        r = rk;
      }
    }
    return best;
  }

  // Full rank: n >= k.  Search over prefixes of size k - 3.
  const std::size_t prefix_size = k - 3;
  const bool small_keys = F.has_small_keys();
  const std::size_t key_space = small_keys ? static_cast<std::size_t>(F.size()) + 1 : 0;
  std::vector<std::uint32_t> stamp(key_space, 0), count(key_space, 0), first_member(key_space, 0);
  std::uint32_t epoch = 0;

  int best_count = -1;
  std::vector<std::size_t> best_prefix;
  std::size_t best_r = 0, best_s = 0;
  std::array<std::vector<Element>, 3> best_net;

  std::vector<std::array<Element, 3>> phi(n);
  std::vector<std::size_t> prefix(prefix_size);
  std::vector<detail::DirectionKey<Field>> keys;

  // Iterate prefixes in lexicographic order.
  auto process_prefix = [&]() {
    Matrix<Field> tm(F, 0, k);
    for (auto i : prefix) tm.append_row(ev[i]);
    if (rank(F, tm) != prefix_size) return;
    const auto net = kernel_basis(F, tm);  // exactly 3 vectors
    int base = 0;
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t t = 0; t < 3; ++t) phi[q][t] = dot(F, net[t], ev[q]);
      if (F.is_zero(phi[q][0]) && F.is_zero(phi[q][1]) && F.is_zero(phi[q][2])) ++base;
    }
    const std::size_t start = prefix.empty() ? 0 : prefix.back() + 1;
    for (std::size_t r = start; r < n; ++r) {
      const auto& A = phi[r];
      std::size_t piv = 0;
      while (piv < 3 && F.is_zero(A[piv])) ++piv;
      if (piv == 3) continue;
      // Upper bound on anything this anchor can reach.
      if (base + 1 + static_cast<int>(n - r - 1) <= best_count) break;
      const std::size_t j1 = piv == 0 ? 1 : 0;
      const std::size_t j2 = piv == 2 ? 1 : 2;
      int parallel = 0;
      int group_best = 0;
      std::size_t group_first = 0;
      ++epoch;
      keys.clear();
      for (std::size_t q = r + 1; q < n; ++q) {
        const auto& B = phi[q];
        if (F.is_zero(B[0]) && F.is_zero(B[1]) && F.is_zero(B[2])) continue;
        const Element w1 = F.sub(F.mul(A[piv], B[j1]), F.mul(B[piv], A[j1]));
        const Element w2 = F.sub(F.mul(A[piv], B[j2]), F.mul(B[piv], A[j2]));
        if (F.is_zero(w1) && F.is_zero(w2)) {
          ++parallel;
          continue;
        }
        detail::DirectionKey<Field> key;
        if (F.is_zero(w1)) {
          key.at_infinity = true;
          key.ratio = F.zero();
        } else {
          key.ratio = F.div(w2, w1);
        }
        key.index = q;
        if (small_keys) {
          const std::size_t slot = key.at_infinity ? key_space - 1 : static_cast<std::size_t>(F.key(key.ratio));
          if (stamp[slot] != epoch) {
            stamp[slot] = epoch;
            count[slot] = 0;
            first_member[slot] = static_cast<std::uint32_t>(q);
          }
          const int cnt = static_cast<int>(++count[slot]);
          // q ascends, so ties keep the earlier-starting group only when it
          // has strictly more members; equal counts compare first members.
          if (cnt > group_best || (cnt == group_best && first_member[slot] < group_first)) {
            group_best = cnt;
            group_first = first_member[slot];
          }
        } else {
          keys.push_back(key);
        }
      }
      if (!small_keys && !keys.empty()) {
        std::stable_sort(keys.begin(), keys.end(), [&](const auto& x, const auto& y) {
          if (x.at_infinity != y.at_infinity) return x.at_infinity < y.at_infinity;
          return F.less(x.ratio, y.ratio);
        });
        std::size_t i = 0;
        while (i < keys.size()) {
          std::size_t j = i;
          std::size_t first = keys[i].index;
          while (j < keys.size() && keys[j].at_infinity == keys[i].at_infinity &&
                 F.equal(keys[j].ratio, keys[i].ratio)) {
            first = std::min(first, keys[j].index);
            ++j;
          }
          const int cnt = static_cast<int>(j - i);
          if (cnt > group_best || (cnt == group_best && first < group_first)) {
            group_best = cnt;
            group_first = first;
          }
          i = j;
        }
      }
      if (group_best == 0) continue;  // every later point is parallel or in span(T)
      const int total = base + 1 + parallel + group_best;
      if (total > best_count) {
        best_count = total;
        best_prefix = prefix;
        best_r = r;
        best_s = group_first;
        for (std::size_t t = 0; t < 3; ++t) best_net[t] = net[t];
      }
    }
  };

  // Lexicographic enumeration of prefixes of size prefix_size from [0, n).
  if (prefix_size == 0) {
    process_prefix();
  } else {
    for (std::size_t t = 0; t < prefix_size; ++t) prefix[t] = t;
    for (;;) {
      process_prefix();
      std::size_t pos = prefix_size;
      while (pos > 0 && prefix[pos - 1] == n - prefix_size + pos - 1) --pos;
      if (pos == 0) break;
      ++prefix[pos - 1];
      for (std::size_t t = pos; t < prefix_size; ++t) prefix[t] = prefix[t - 1] + 1;
    }
  }
  if (best_count < 0) throw Error("incidence search found no independent basis");

  // Witness: lambda = phi(r) x phi(s) in net coordinates.
  std::array<Element, 3> A{}, B{};
  for (std::size_t t = 0; t < 3; ++t) {
    A[t] = dot(F, best_net[t], ev[best_r]);
    B[t] = dot(F, best_net[t], ev[best_s]);
  }
  const std::array<Element, 3> lambda{F.sub(F.mul(A[1], B[2]), F.mul(A[2], B[1])),
                                      F.sub(F.mul(A[2], B[0]), F.mul(A[0], B[2])),
                                      F.sub(F.mul(A[0], B[1]), F.mul(A[1], B[0]))};
  best.witness = BiForm<Field>::zero(F, deg);
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t m = 0; m < k; ++m)
      best.witness.coeffs[m] = F.add(best.witness.coeffs[m], F.mul(lambda[t], best_net[t][m]));
  best.on_curve = incident_indices(F, best.witness, pts);
  best.count = static_cast<int>(best.on_curve.size());
  if (best.count != best_count) throw Error("incidence search: witness recount mismatch");
  best.generators = best_prefix;
  best.generators.push_back(best_r);
  best.generators.push_back(best_s);
  return best;
}

template <class Field>
struct PositionReport {
  IncidenceMax<Field> line_first;   // type (1, 0)
  IncidenceMax<Field> line_second;  // type (0, 1)
  IncidenceMax<Field> on_11;
  IncidenceMax<Field> on_21;
  IncidenceMax<Field> on_12;

  int max_on_line() const { return std::max(line_first.count, line_second.count); }
};

template <class Field>
PositionReport<Field> position_report(const Field& F, const std::vector<QuadricPoint<Field>>& pts,
                                      std::size_t cap = kDefaultSearchCap) {
  return {max_on_curve_type(F, pts, 1, 0, cap), max_on_curve_type(F, pts, 0, 1, cap),
          max_on_curve_type(F, pts, 1, 1, cap), max_on_curve_type(F, pts, 2, 1, cap),
          max_on_curve_type(F, pts, 1, 2, cap)};
}

struct HypothesisReport {
  bool pass = true;
  std::vector<std::string> violated;

  void require(bool ok, std::string clause) {
    if (!ok) {
      pass = false;
      violated.push_back(std::move(clause));
    }
  }
};

namespace detail {

/// Does some curve of type (c, d) contain more than `bound` of the points?
/// Skips the search when the set is too small to violate the bound.
template <class Field>
bool exceeds(const Field& F, const std::vector<QuadricPoint<Field>>& pts, int c, int d, int bound,
             std::size_t cap) {
  if (static_cast<int>(pts.size()) <= bound) return false;
  return max_on_curve_type(F, pts, c, d, cap).count > bound;
}

template <class Field>
std::vector<QuadricPoint<Field>> concat(const std::vector<QuadricPoint<Field>>& x,
                                        const std::vector<QuadricPoint<Field>>& y) {
  auto out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace detail

/// Hypotheses for h^1(I_E(u, v)) = 0 by (2,1)/(1,2) peeling:
/// |E| <= v - u + 10 floor(u/3), no two points on a ruling line, and at most
/// 2u+1, 3u+1, 3u-4 points on curves of types (1,1), (2,1), (1,2).
template <class Field>
HypothesisReport check_e4_hypotheses(const Field& F, const std::vector<QuadricPoint<Field>>& E, int u, int v,
                                     std::size_t cap = kDefaultSearchCap) {
  if (u < 9 || v < u) throw Error("out of lemma range");
  check_distinct_supports(F, E);
  const int alpha = u / 3;
  HypothesisReport r;
  r.require(static_cast<int>(E.size()) <= v - u + 10 * alpha, "size");
  r.require(!detail::exceeds(F, E, 1, 0, 1, cap) && !detail::exceeds(F, E, 0, 1, 1, cap), "line");
  r.require(!detail::exceeds(F, E, 1, 1, 2 * u + 1, cap), "type (1,1)");
  r.require(!detail::exceeds(F, E, 2, 1, 3 * u + 1, cap), "type (2,1)");
  r.require(!detail::exceeds(F, E, 1, 2, 3 * u - 4, cap), "type (1,2)");
  return r;
}

/// Hypotheses for h^1(I_{S u B}(u, u)) = 0 with u = 3 alpha + beta:
/// |S| <= (beta+1)^2, |B| <= 10 alpha, no ruling line through two points of
/// S u B, and at most 2u-2, 3u-4, 3u-9 points of B on types (1,1), (2,1), (1,2).
template <class Field>
HypothesisReport check_g4_hypotheses(const Field& F, const std::vector<QuadricPoint<Field>>& S,
                                     const std::vector<QuadricPoint<Field>>& B, int alpha, int beta,
                                     std::size_t cap = kDefaultSearchCap) {
  if (alpha < 3 || beta < 2) throw Error("out of lemma range");
  const auto E = detail::concat(S, B);
  check_distinct_supports(F, E);
  const int u = 3 * alpha + beta;
  HypothesisReport r;
  r.require(static_cast<int>(S.size()) <= (beta + 1) * (beta + 1), "size of S");
  r.require(static_cast<int>(B.size()) <= 10 * alpha, "size of B");
  r.require(!detail::exceeds(F, E, 1, 0, 1, cap) && !detail::exceeds(F, E, 0, 1, 1, cap), "line");
  r.require(!detail::exceeds(F, B, 1, 1, 2 * u - 2, cap), "type (1,1)");
  r.require(!detail::exceeds(F, B, 2, 1, 3 * u - 4, cap), "type (2,1)");
  r.require(!detail::exceeds(F, B, 1, 2, 3 * u - 9, cap), "type (1,2)");
  return r;
}

}  // namespace quadgon
