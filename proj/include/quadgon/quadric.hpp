#pragma once

// Geometry of the smooth quadric Q = P^1 x P^1.
//
// Coordinates: a point is ([s:t], [u:v]).  A form of bidegree (a, b) is
// homogeneous of degree a in (s, t) and degree b in (u, v); its coefficients
// are indexed by the monomials s^i t^(a-i) u^j v^(b-j), i-major, j-minor, both
// ascending, so monomial (i, j) sits at position i * (b + 1) + j.
//
// Curves of type (1, 0) are the fibres {[s:t]} x P^1 of the first projection;
// curves of type (0, 1) are P^1 x {[u:v]}.
//
// Affine charts: the first factor uses x = s/t when t != 0 and x = t/s
// otherwise; the second uses y = u/v when v != 0 and y = v/u otherwise.
// Derivative conditions (fat points, tangency schemes) are taken in the chart
// of the point they are attached to.

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "quadgon/binary_form.hpp"
#include "quadgon/error.hpp"
#include "quadgon/matrix.hpp"

namespace quadgon {

struct Bidegree {
  int a = 0;
  int b = 0;

  bool nonnegative() const { return a >= 0 && b >= 0; }
  /// h^0(O_Q(a, b)); zero when either entry is negative.
  int dim() const { return nonnegative() ? (a + 1) * (b + 1) : 0; }
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

inline std::vector<std::pair<int, int>> monomial_basis(Bidegree d) {
  if (!d.nonnegative()) throw Error("empty system");
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(d.dim()));
  for (int i = 0; i <= d.a; ++i)
    for (int j = 0; j <= d.b; ++j) out.emplace_back(i, j);
  return out;
}

inline std::size_t monomial_index(Bidegree d, int i, int j) {
  return static_cast<std::size_t>(i * (d.b + 1) + j);
}

template <class Field>
struct QuadricPoint {
  using Element = typename Field::Element;
  std::array<Element, 2> first;   // [s:t]
  std::array<Element, 2> second;  // [u:v]
};

template <class Field>
QuadricPoint<Field> make_point(const Field& F, const typename Field::Element& x,
                               const typename Field::Element& y) {
  return {{x, F.one()}, {y, F.one()}};
}

template <class Field>
bool valid_point(const Field& F, const QuadricPoint<Field>& P) {
  return !(F.is_zero(P.first[0]) && F.is_zero(P.first[1])) &&
         !(F.is_zero(P.second[0]) && F.is_zero(P.second[1]));
}

template <class Field>
bool same_projective(const Field& F, const std::array<typename Field::Element, 2>& p,
                     const std::array<typename Field::Element, 2>& q) {
  return F.equal(F.mul(p[0], q[1]), F.mul(p[1], q[0]));
}

/// Equality of both projective classes.
template <class Field>
bool same_point(const Field& F, const QuadricPoint<Field>& P, const QuadricPoint<Field>& R) {
  return same_projective(F, P.first, R.first) && same_projective(F, P.second, R.second);
}

/// Representative with the chart pivot scaled to 1: [x:1] or [1:0].
template <class Field>
std::array<typename Field::Element, 2> normalized_pair(const Field& F,
                                                       const std::array<typename Field::Element, 2>& p) {
  if (!F.is_zero(p[1])) return {F.div(p[0], p[1]), F.one()};
  if (F.is_zero(p[0])) throw Error("projective pair [0:0]");
  return {F.one(), F.zero()};
}

template <class Field>
QuadricPoint<Field> normalized(const Field& F, const QuadricPoint<Field>& P) {
  return {normalized_pair(F, P.first), normalized_pair(F, P.second)};
}

/// Exchange the two factors of Q.
template <class Field>
QuadricPoint<Field> swap_factors(const QuadricPoint<Field>& P) {
  return {P.second, P.first};
}

/// Chart data of a point: affine coordinates and which pivot was used.
template <class Field>
struct Chart {
  typename Field::Element x;
  typename Field::Element y;
  bool first_pivot_t = true;   // x = s/t (else x = t/s)
  bool second_pivot_v = true;  // y = u/v (else y = v/u)
};

template <class Field>
Chart<Field> chart_of(const Field& F, const QuadricPoint<Field>& P) {
  Chart<Field> c;
  if (!F.is_zero(P.first[1])) {
    c.x = F.div(P.first[0], P.first[1]);
  } else {
    if (F.is_zero(P.first[0])) throw Error("projective pair [0:0]");
    c.x = F.zero();
    c.first_pivot_t = false;
  }
  if (!F.is_zero(P.second[1])) {
    c.y = F.div(P.second[0], P.second[1]);
  } else {
    if (F.is_zero(P.second[0])) throw Error("projective pair [0:0]");
    c.y = F.zero();
    c.second_pivot_v = false;
  }
  return c;
}

namespace detail {

inline std::int64_t falling(int e, int k) {
  std::int64_t r = 1;
  for (int m = 0; m < k; ++m) r *= (e - m);
  return r;
}

template <class Field>
std::vector<typename Field::Element> powers(const Field& F, const typename Field::Element& x, int n) {
  std::vector<typename Field::Element> out(static_cast<std::size_t>(n) + 1, F.one());
  for (int k = 1; k <= n; ++k) out[static_cast<std::size_t>(k)] = F.mul(out[static_cast<std::size_t>(k - 1)], x);
  return out;
}

/// d^k/dz^k z^e at z0, given z0's powers.
template <class Field>
typename Field::Element monomial_derivative(const Field& F, const std::vector<typename Field::Element>& zpow,
                                            int e, int k) {
  if (k > e) return F.zero();
  return F.mul(F.from_int(falling(e, k)), zpow[static_cast<std::size_t>(e - k)]);
}

}  // namespace detail

/// Row of values of d^dx/dx d^dy/dy (monomial) at P, one entry per monomial in
/// the documented order, computed in P's chart.
template <class Field>
std::vector<typename Field::Element> evaluation_row(const Field& F, Bidegree d, const QuadricPoint<Field>& P,
                                                    int dx = 0, int dy = 0) {
  if (!d.nonnegative()) throw Error("empty system");
  const auto c = chart_of(F, P);
  const auto xp = detail::powers(F, c.x, d.a);
  const auto yp = detail::powers(F, c.y, d.b);
  std::vector<typename Field::Element> xs(static_cast<std::size_t>(d.a) + 1);
  std::vector<typename Field::Element> ys(static_cast<std::size_t>(d.b) + 1);
  for (int i = 0; i <= d.a; ++i)
    xs[static_cast<std::size_t>(i)] = detail::monomial_derivative(F, xp, c.first_pivot_t ? i : d.a - i, dx);
  for (int j = 0; j <= d.b; ++j)
    ys[static_cast<std::size_t>(j)] = detail::monomial_derivative(F, yp, c.second_pivot_v ? j : d.b - j, dy);
  std::vector<typename Field::Element> row;
  row.reserve(static_cast<std::size_t>(d.dim()));
  for (int i = 0; i <= d.a; ++i)
    for (int j = 0; j <= d.b; ++j) row.push_back(F.mul(xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]));
  return row;
}

/// Bihomogeneous form of bidegree (a, b).
template <class Field>
struct BiForm {
  using Element = typename Field::Element;
  Bidegree bidegree;
  std::vector<Element> coeffs;

  static BiForm zero(const Field& F, Bidegree d) {
    return {d, std::vector<Element>(static_cast<std::size_t>(d.dim()), F.zero())};
  }
  const Element& coefficient(int i, int j) const { return coeffs[monomial_index(bidegree, i, j)]; }
  Element& coefficient(int i, int j) { return coeffs[monomial_index(bidegree, i, j)]; }
  bool is_zero(const Field& F) const { return is_zero_vector(F, coeffs); }
};

/// Homogeneous evaluation f(s, t, u, v) at the given representative.
template <class Field>
typename Field::Element evaluate(const Field& F, const BiForm<Field>& f, const QuadricPoint<Field>& P) {
  const auto [a, b] = f.bidegree;
  const auto sp = detail::powers(F, P.first[0], a);
  const auto tp = detail::powers(F, P.first[1], a);
  const auto up = detail::powers(F, P.second[0], b);
  const auto vp = detail::powers(F, P.second[1], b);
  auto acc = F.zero();
  for (int i = 0; i <= a; ++i) {
    auto inner = F.zero();
    for (int j = 0; j <= b; ++j)
      inner = F.add(inner, F.mul(f.coefficient(i, j),
                                 F.mul(up[static_cast<std::size_t>(j)], vp[static_cast<std::size_t>(b - j)])));
    acc = F.add(acc, F.mul(inner, F.mul(sp[static_cast<std::size_t>(i)], tp[static_cast<std::size_t>(a - i)])));
  }
  return acc;
}

template <class Field>
bool vanishes_at(const Field& F, const BiForm<Field>& f, const QuadricPoint<Field>& P) {
  return F.is_zero(evaluate(F, f, P));
}

/// Chart partial derivative d^dx/dx d^dy/dy f at P.
template <class Field>
typename Field::Element chart_derivative(const Field& F, const BiForm<Field>& f, const QuadricPoint<Field>& P,
                                         int dx, int dy) {
  return dot(F, evaluation_row(F, f.bidegree, P, dx, dy), f.coeffs);
}

/// Product of two forms; bidegrees add.
template <class Field>
BiForm<Field> multiply(const Field& F, const BiForm<Field>& f, const BiForm<Field>& g) {
  const Bidegree d{f.bidegree.a + g.bidegree.a, f.bidegree.b + g.bidegree.b};
  auto out = BiForm<Field>::zero(F, d);
  for (int i = 0; i <= f.bidegree.a; ++i)
    for (int j = 0; j <= f.bidegree.b; ++j) {
      const auto& c = f.coefficient(i, j);
      if (F.is_zero(c)) continue;
      for (int k = 0; k <= g.bidegree.a; ++k)
        for (int l = 0; l <= g.bidegree.b; ++l)
          out.coefficient(i + k, j + l) = F.add(out.coefficient(i + k, j + l), F.mul(c, g.coefficient(k, l)));
    }
  return out;
}

/// Form with the factors of Q exchanged: bidegree (a, b) becomes (b, a).
template <class Field>
BiForm<Field> swap_factors(const Field& F, const BiForm<Field>& f) {
  auto out = BiForm<Field>::zero(F, {f.bidegree.b, f.bidegree.a});
  for (int i = 0; i <= f.bidegree.a; ++i)
    for (int j = 0; j <= f.bidegree.b; ++j) out.coefficient(j, i) = f.coefficient(i, j);
  return out;
}

/// The (1, 0)-line through P, i.e. {first = P.first} x P^1, as a form.
template <class Field>
BiForm<Field> line_10(const Field& F, const QuadricPoint<Field>& P) {
  auto f = BiForm<Field>::zero(F, {1, 0});
  f.coefficient(1, 0) = P.first[1];         // s * t0
  f.coefficient(0, 0) = F.neg(P.first[0]);  // - t * s0
  return f;
}

/// The (0, 1)-line through P, i.e. P^1 x {second = P.second}, as a form.
template <class Field>
BiForm<Field> line_01(const Field& F, const QuadricPoint<Field>& P) {
  auto f = BiForm<Field>::zero(F, {0, 1});
  f.coefficient(0, 1) = P.second[1];
  f.coefficient(0, 0) = F.neg(P.second[0]);
  return f;
}

// ---------------------------------------------------------------------------
// Zero-dimensional schemes

/// Direction of a degree-2 ruling tangency scheme at its support P.
///   first:  tangent along the first factor, so the scheme lies on the
///           (0, 1)-line through P; rows are f(P) and df/dx(P).
///   second: tangent along the second factor, so the scheme lies on the
///           (1, 0)-line through P; rows are f(P) and df/dy(P).
enum class Ruling { first, second };

enum class ItemKind { reduced, fat, ruling_tangent };

inline int item_degree(ItemKind k) {
  switch (k) {
    case ItemKind::reduced: return 1;
    case ItemKind::fat: return 3;
    case ItemKind::ruling_tangent: return 2;
  }
  return 0;
}

template <class Field>
struct SchemeItem {
  ItemKind kind = ItemKind::reduced;
  QuadricPoint<Field> point;
  Ruling ruling = Ruling::first;  // meaningful for ruling_tangent only

  int degree() const { return item_degree(kind); }
};

template <class Field>
struct PointScheme {
  std::vector<SchemeItem<Field>> items;

  int degree() const {
    int d = 0;
    for (const auto& it : items) d += it.degree();
    return d;
  }
  std::vector<QuadricPoint<Field>> support() const {
    std::vector<QuadricPoint<Field>> out;
    for (const auto& it : items) out.push_back(it.point);
    return out;
  }
  void add(ItemKind kind, const QuadricPoint<Field>& P, Ruling r = Ruling::first) {
    items.push_back({kind, P, r});
  }
};

template <class Field>
PointScheme<Field> reduced_scheme(const std::vector<QuadricPoint<Field>>& pts) {
  PointScheme<Field> s;
  for (const auto& P : pts) s.add(ItemKind::reduced, P);
  return s;
}

/// 2S: first infinitesimal neighbourhoods of the given points.
template <class Field>
PointScheme<Field> fat_scheme(const std::vector<QuadricPoint<Field>>& pts) {
  PointScheme<Field> s;
  for (const auto& P : pts) s.add(ItemKind::fat, P);
  return s;
}

template <class Field>
void check_distinct_supports(const Field& F, const std::vector<QuadricPoint<Field>>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!valid_point(F, pts[i])) throw Error("projective pair [0:0]");
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (same_point(F, pts[i], pts[j])) throw Error("colliding supports");
  }
}

/// Linear conditions imposed by a scheme on forms of bidegree d.  A form f
/// vanishes on the scheme iff rows * coeffs(f) = 0.
template <class Field>
Matrix<Field> condition_rows(const Field& F, const PointScheme<Field>& scheme, Bidegree d) {
  if (!d.nonnegative()) throw Error("nonnegative bidegree required");
  check_distinct_supports(F, scheme.support());
  Matrix<Field> m(F, 0, static_cast<std::size_t>(d.dim()));
  for (const auto& item : scheme.items) {
    m.append_row(evaluation_row(F, d, item.point));
    switch (item.kind) {
      case ItemKind::reduced:
        break;
      case ItemKind::fat:
        m.append_row(evaluation_row(F, d, item.point, 1, 0));
        m.append_row(evaluation_row(F, d, item.point, 0, 1));
        break;
      case ItemKind::ruling_tangent:
        if (item.ruling == Ruling::first)
          m.append_row(evaluation_row(F, d, item.point, 1, 0));
        else
          m.append_row(evaluation_row(F, d, item.point, 0, 1));
        break;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Restriction to ruling lines

enum class LineType {
  type10,  // {[s:t] fixed} x P^1; restriction is a binary form in (u, v)
  type01   // P^1 x {[u:v] fixed}; restriction is a binary form in (s, t)
};

template <class Field>
struct RulingLine {
  QuadricPoint<Field> through;
  LineType type = LineType::type10;
};

/// Restriction of f to a ruling line.  On a (1, 0)-line the result is the
/// degree-b binary form in (u, v) (coeffs[j] multiplies u^j v^(b-j)); on a
/// (0, 1)-line it is the degree-a form in (s, t).  The result is zero iff the
/// line is a component of {f = 0}.
template <class Field>
BinaryForm<Field> restrict_to_ruling(const Field& F, const BiForm<Field>& f, const RulingLine<Field>& line) {
  const auto [a, b] = f.bidegree;
  BinaryForm<Field> g;
  if (line.type == LineType::type10) {
    const auto sp = detail::powers(F, line.through.first[0], a);
    const auto tp = detail::powers(F, line.through.first[1], a);
    g.degree = b;
    g.coeffs.assign(static_cast<std::size_t>(b) + 1, F.zero());
    for (int i = 0; i <= a; ++i) {
      const auto w = F.mul(sp[static_cast<std::size_t>(i)], tp[static_cast<std::size_t>(a - i)]);
      for (int j = 0; j <= b; ++j)
        g.coeffs[static_cast<std::size_t>(j)] =
            F.add(g.coeffs[static_cast<std::size_t>(j)], F.mul(w, f.coefficient(i, j)));
    }
  } else {
    const auto up = detail::powers(F, line.through.second[0], b);
    const auto vp = detail::powers(F, line.through.second[1], b);
    g.degree = a;
    g.coeffs.assign(static_cast<std::size_t>(a) + 1, F.zero());
    for (int j = 0; j <= b; ++j) {
      const auto w = F.mul(up[static_cast<std::size_t>(j)], vp[static_cast<std::size_t>(b - j)]);
      for (int i = 0; i <= a; ++i)
        g.coeffs[static_cast<std::size_t>(i)] =
            F.add(g.coeffs[static_cast<std::size_t>(i)], F.mul(w, f.coefficient(i, j)));
    }
  }
  return g;
}

}  // namespace quadgon
