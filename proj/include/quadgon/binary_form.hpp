#pragma once

// Univariate polynomials and binary forms over a quadgon Field.
//
// A BinaryForm of degree n stores coeffs[k] = coefficient of x^k y^(n-k).
// Its roots live on P^1; the root [1:0] (y = 0) is handled through the degree
// deficiency of the dehomogenization p(x) = g(x, 1).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "quadgon/error.hpp"

namespace quadgon {

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
/// The zero polynomial is the empty vector.
template <class Field>
using UniPoly = std::vector<typename Field::Element>;

template <class Field>
void trim(const Field& F, UniPoly<Field>& p) {
  while (!p.empty() && F.is_zero(p.back())) p.pop_back();
}

template <class Field>
int poly_degree(const UniPoly<Field>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <class Field>
typename Field::Element poly_eval(const Field& F, const UniPoly<Field>& p,
                                  const typename Field::Element& x) {
  auto acc = F.zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

template <class Field>
UniPoly<Field> poly_derivative(const Field& F, const UniPoly<Field>& p) {
  UniPoly<Field> d;
  for (std::size_t k = 1; k < p.size(); ++k)
    d.push_back(F.mul(F.from_int(static_cast<std::int64_t>(k)), p[k]));
  trim(F, d);
  return d;
}

/// Quotient and remainder of a by b (b nonzero).
template <class Field>
std::pair<UniPoly<Field>, UniPoly<Field>> poly_divmod(const Field& F, UniPoly<Field> a,
                                                      const UniPoly<Field>& b) {
  if (b.empty()) throw Error("polynomial division by zero");
  trim(F, a);
  if (a.size() < b.size()) return {UniPoly<Field>{}, a};
  UniPoly<Field> q(a.size() - b.size() + 1, F.zero());
  const auto lead_inv = F.inv(b.back());
  for (std::size_t shift = a.size() - b.size() + 1; shift-- > 0;) {
    const auto c = F.mul(a[shift + b.size() - 1], lead_inv);
    q[shift] = c;
    if (F.is_zero(c)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
  }
  a.resize(b.size() - 1);
  trim(F, a);
  trim(F, q);
  return {q, a};
}

/// Monic gcd; gcd(0, 0) = 0.
template <class Field>
UniPoly<Field> poly_gcd(const Field& F, UniPoly<Field> a, UniPoly<Field> b) {
  trim(F, a);
  trim(F, b);
  while (!b.empty()) {
    auto r = poly_divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const auto lead_inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, lead_inv);
  }
  return a;
}

/// Multiplicity of x0 as a root of p (p nonzero).
template <class Field>
int root_multiplicity(const Field& F, UniPoly<Field> p, const typename Field::Element& x0) {
  trim(F, p);
  if (p.empty()) throw Error("root multiplicity of the zero polynomial");
  const UniPoly<Field> linear{F.neg(x0), F.one()};
  int m = 0;
  for (;;) {
    auto [q, r] = poly_divmod(F, p, linear);
    if (!r.empty()) return m;
    p = std::move(q);
    ++m;
  }
}

template <class Field>
struct BinaryForm {
  using Element = typename Field::Element;
  int degree = 0;
  std::vector<Element> coeffs;  // coeffs[k] multiplies x^k y^(degree-k)

  bool is_zero(const Field& F) const {
    return std::all_of(coeffs.begin(), coeffs.end(), [&](const Element& c) { return F.is_zero(c); });
  }
  Element evaluate(const Field& F, const Element& x, const Element& y) const {
    std::vector<Element> ypows(coeffs.size(), F.one());
    for (std::size_t k = 1; k < ypows.size(); ++k) ypows[k] = F.mul(ypows[k - 1], y);
    auto acc = F.zero();
    auto xpow = F.one();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      acc = F.add(acc, F.mul(coeffs[k], F.mul(xpow, ypows[coeffs.size() - 1 - k])));
      xpow = F.mul(xpow, x);
    }
    return acc;
  }
  UniPoly<Field> dehomogenized(const Field& F) const {
    UniPoly<Field> p(coeffs.begin(), coeffs.end());
    trim(F, p);
    return p;
  }
  /// Multiplicity of the root [1:0]; the form must be nonzero.
  int multiplicity_at_infinity(const Field& F) const {
    const auto p = dehomogenized(F);
    if (p.empty()) throw Error("binary form is zero");
    return degree - poly_degree<Field>(p);
  }
};

/// Root structure of a nonzero binary form over the algebraic closure.
struct RootProfile {
  int degree = 0;
  int distinct = 0;          // number of distinct roots on P^1
  int repeated_degree = 0;   // sum over roots of (multiplicity - 1)
  int max_multiplicity = 0;
};

template <class Field>
RootProfile root_profile(const Field& F, const BinaryForm<Field>& g) {
  if (g.is_zero(F)) throw Error("root profile of the zero form");
  const auto p = g.dehomogenized(F);
  const int at_infinity = g.degree - poly_degree<Field>(p);

  RootProfile out;
  out.degree = g.degree;
  // Finite part: square-free decomposition by repeated gcd with the derivative.
  auto current = p;
  int level = 0;
  int finite_distinct = 0;
  int finite_repeated = 0;
  {
    const auto g1 = poly_gcd(F, p, poly_derivative(F, p));
    finite_repeated = std::max(0, poly_degree<Field>(g1));
    finite_distinct = poly_degree<Field>(p) - finite_repeated;
  }
  while (poly_degree<Field>(current) > 0) {
    ++level;
    current = poly_gcd(F, current, poly_derivative(F, current));
  }
  out.distinct = finite_distinct + (at_infinity > 0 ? 1 : 0);
  out.repeated_degree = finite_repeated + std::max(0, at_infinity - 1);
  out.max_multiplicity = std::max(level, at_infinity);
  return out;
}

/// gcd of binary forms (up to scalar); the zero form acts as identity.
template <class Field>
BinaryForm<Field> form_gcd(const Field& F, const BinaryForm<Field>& f, const BinaryForm<Field>& g) {
  if (f.is_zero(F)) return g;
  if (g.is_zero(F)) return f;
  const auto pf = f.dehomogenized(F);
  const auto pg = g.dehomogenized(F);
  const int inf = std::min(f.degree - poly_degree<Field>(pf), g.degree - poly_degree<Field>(pg));
  const auto common = poly_gcd(F, pf, pg);
  BinaryForm<Field> out;
  out.degree = poly_degree<Field>(common) + inf;
  out.coeffs.assign(static_cast<std::size_t>(out.degree) + 1, F.zero());
  for (std::size_t k = 0; k < common.size(); ++k) out.coeffs[k] = common[k];
  return out;
}

/// Binary form divided by a known factor (exact division assumed).
template <class Field>
BinaryForm<Field> form_divide(const Field& F, const BinaryForm<Field>& f, const BinaryForm<Field>& d) {
  const auto pf = f.dehomogenized(F);
  const auto pd = d.dehomogenized(F);
  auto [q, r] = poly_divmod(F, pf, pd);
  if (!r.empty()) throw Error("binary form division is not exact");
  BinaryForm<Field> out;
  out.degree = f.degree - d.degree;
  if (out.degree < 0 || poly_degree<Field>(q) > out.degree) throw Error("binary form division is not exact");
  out.coeffs.assign(static_cast<std::size_t>(out.degree) + 1, F.zero());
  for (std::size_t k = 0; k < q.size(); ++k) out.coeffs[k] = q[k];
  return out;
}

}  // namespace quadgon
