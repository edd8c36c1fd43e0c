#pragma once

// h^0 and h^1 of the twisted ideal sheaf I_W(a, b) of a point scheme W on Q.
//
// For a, b >= 0 we have h^1(O_Q(a, b)) = 0, so the restriction sequence gives
//   h^0(I_W(a, b)) = (a+1)(b+1) - rank,   h^1(I_W(a, b)) = deg W - rank,
// where rank is the rank of the condition matrix of W in bidegree (a, b).

#include <algorithm>
#include <vector>

#include "quadgon/error.hpp"
#include "quadgon/field.hpp"
#include "quadgon/matrix.hpp"
#include "quadgon/quadric.hpp"

namespace quadgon {

struct CohomologyReport {
  int a = 0;
  int b = 0;
  int h0 = 0;
  int h1 = 0;
  int degree = 0;
  int expected_h0 = 0;
  int rank = 0;
};

template <class Field>
CohomologyReport ideal_cohomology(const Field& F, const PointScheme<Field>& scheme, Bidegree d) {
  if (!d.nonnegative()) throw Error("nonnegative bidegree required");
  const auto rows = condition_rows(F, scheme, d);
  CohomologyReport r;
  r.a = d.a;
  r.b = d.b;
  r.degree = scheme.degree();
  r.rank = static_cast<int>(rank(F, rows));
  r.h0 = d.dim() - r.rank;
  r.h1 = r.degree - r.rank;
  r.expected_h0 = std::max(0, d.dim() - r.degree);
  return r;
}

/// Shortcut for reduced point sets.
template <class Field>
int h1_of_points(const Field& F, const std::vector<QuadricPoint<Field>>& pts, Bidegree d) {
  return ideal_cohomology(F, reduced_scheme(pts), d).h1;
}

/// Uniformly random element of H^0(I_W(d)) expressed in a kernel basis.  The
/// zero combination is redrawn, so the result is always a nonzero form.
template <class Field>
BiForm<Field> random_member(const Field& F, const PointScheme<Field>& scheme, Bidegree d, Rng& rng) {
  if (!d.nonnegative()) throw Error("system is empty");
  const auto basis = kernel_basis(F, condition_rows(F, scheme, d));
  if (basis.empty()) throw Error("system is empty");
  auto f = BiForm<Field>::zero(F, d);
  do {
    std::fill(f.coeffs.begin(), f.coeffs.end(), F.zero());
    for (const auto& v : basis) {
      const auto c = F.random(rng);
      if (F.is_zero(c)) continue;
      for (std::size_t k = 0; k < v.size(); ++k) f.coeffs[k] = F.add(f.coeffs[k], F.mul(c, v[k]));
    }
  } while (f.is_zero(F));
  return f;
}

}  // namespace quadgon
