#pragma once

// Curves Y in |O_Q(a, b)| with ordinary nodes at a prescribed set S, and
// optionally simple tangency to two ruling lines, plus the checks that make
// the normalization genus p_a(Y) - |S| trustworthy.
//
// Singularity scan.  A singular point of Y is a common zero of the four
// bihomogeneous partials.  On a rational fibre of either projection the four
// partials restrict to binary forms whose gcd collects the singular points on
// that fibre, including those whose other coordinate is irrational.  Each known
// node contributes one simple root (an ordinary node cannot make all four
// restrictions vanish doubly), so any degree left after dividing out the nodes
// is an extra singularity.  A random-point scan is run on top.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quadgon/binary_form.hpp"
#include "quadgon/cohomology.hpp"
#include "quadgon/error.hpp"
#include "quadgon/field.hpp"
#include "quadgon/position.hpp"
#include "quadgon/quadric.hpp"

namespace quadgon {

inline constexpr int kNodeSampleCap = 1000;
inline constexpr int kCurveRedraws = 25;

/// Arithmetic genus minus the nodes: a^2 + am - 2a - m + 1 - x, i.e.
/// (a-1)(a+m-1) - x.
inline long long genus(long long a, long long m, long long x) { return a * a + a * m - 2 * a - m + 1 - x; }

/// x points with no two on a ruling line, at most 3 on any (1,1) curve and at
/// most 5 on any (2,1) or (1,2) curve, drawn by rejection sampling.
template <class Field>
std::vector<QuadricPoint<Field>> sample_general_nodes(const Field& F, int x, Rng& rng, int max_attempts = kNodeSampleCap,
                                                      int* attempts_used = nullptr) {
  if (x < 0) throw Error("negative point count");
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<QuadricPoint<Field>> pts;
    for (int k = 0; k < x; ++k) pts.push_back(make_point(F, F.random(rng), F.random(rng)));
    bool ok = true;
    for (std::size_t i = 0; ok && i < pts.size(); ++i)
      for (std::size_t j = i + 1; ok && j < pts.size(); ++j)
        ok = !same_projective(F, pts[i].first, pts[j].first) && !same_projective(F, pts[i].second, pts[j].second);
    ok = ok && !detail::exceeds(F, pts, 1, 1, 3, pts.size()) && !detail::exceeds(F, pts, 2, 1, 5, pts.size()) &&
         !detail::exceeds(F, pts, 1, 2, 5, pts.size());
    if (ok) {
      if (attempts_used) *attempts_used = attempt;
      return pts;
    }
  }
  throw CheckFailure("could not realize general position");
}

template <class Field>
struct NodeCertificate {
  QuadricPoint<Field> point;
  typename Field::Element value, dx, dy, hessian_det;

  bool ok(const Field& F) const {
    return F.is_zero(value) && F.is_zero(dx) && F.is_zero(dy) && !F.is_zero(hessian_det);
  }
};

template <class Field>
NodeCertificate<Field> node_certificate(const Field& F, const BiForm<Field>& f, const QuadricPoint<Field>& P) {
  NodeCertificate<Field> c;
  c.point = P;
  c.value = chart_derivative(F, f, P, 0, 0);
  c.dx = chart_derivative(F, f, P, 1, 0);
  c.dy = chart_derivative(F, f, P, 0, 1);
  const auto fxx = chart_derivative(F, f, P, 2, 0);
  const auto fyy = chart_derivative(F, f, P, 0, 2);
  const auto fxy = chart_derivative(F, f, P, 1, 1);
  c.hessian_det = F.sub(F.mul(fxx, fyy), F.mul(fxy, fxy));
  return c;
}

struct ScanOptions {
  int random_points = 10000;
  bool fibres = true;
};

template <class Field>
struct ScanFinding {
  LineType fibre_type = LineType::type10;
  std::array<typename Field::Element, 2> fibre;  // fixed coordinate of the fibre
  int extra_degree = 0;                           // singular points beyond the known nodes
  bool component = false;                         // the fibre itself lies on Y
};

template <class Field>
struct SingularityScan {
  std::string scanned;  // human-readable description of the scanned set
  long long fibres_scanned = 0;
  int random_points = 0;
  std::vector<ScanFinding<Field>> found;
  std::vector<QuadricPoint<Field>> random_hits;

  bool clean() const { return found.empty() && random_hits.empty(); }
};

namespace detail {

/// Bihomogeneous partial derivatives f_s, f_t, f_u, f_v.
template <class Field>
std::array<BiForm<Field>, 4> partials(const Field& F, const BiForm<Field>& f) {
  const auto [a, b] = f.bidegree;
  std::array<BiForm<Field>, 4> out{BiForm<Field>::zero(F, {a - 1, b}), BiForm<Field>::zero(F, {a - 1, b}),
                                   BiForm<Field>::zero(F, {a, b - 1}), BiForm<Field>::zero(F, {a, b - 1})};
  for (int i = 0; i <= a; ++i)
    for (int j = 0; j <= b; ++j) {
      const auto& c = f.coefficient(i, j);
      if (i > 0) out[0].coefficient(i - 1, j) = F.mul(F.from_int(i), c);
      if (i < a) out[1].coefficient(i, j) = F.mul(F.from_int(a - i), c);
      if (j > 0) out[2].coefficient(i, j - 1) = F.mul(F.from_int(j), c);
      if (j < b) out[3].coefficient(i, j) = F.mul(F.from_int(b - j), c);
    }
  return out;
}

template <class Field>
BinaryForm<Field> linear_form_vanishing_at(const Field& F, const std::array<typename Field::Element, 2>& p) {
  // x * p1 - y * p0 vanishes at [p0 : p1].
  return {1, {F.neg(p[0]), p[1]}};
}

template <class Field>
std::array<typename Field::Element, 2> projective_element(const Field& F, std::uint64_t k) {
  if (k == F.size()) return {F.one(), F.zero()};
  return {F.element_at(k), F.one()};
}

}  // namespace detail

/// Extra-singularity scan of Y with known nodes S.  Fibres run over the
/// enumerable rational values of the field plus infinity.
template <class Field>
SingularityScan<Field> singularity_scan(const Field& F, const BiForm<Field>& f,
                                        const std::vector<QuadricPoint<Field>>& S, const ScanOptions& opt, Rng& rng) {
  SingularityScan<Field> scan;
  const auto parts = detail::partials(F, f);
  if (opt.fibres) {
    const std::uint64_t values = F.size();
    for (const auto type : {LineType::type10, LineType::type01}) {
      for (std::uint64_t k = 0; k <= values; ++k) {
        const auto c = detail::projective_element(F, k);
        QuadricPoint<Field> through;
        through.first = type == LineType::type10 ? c : std::array{F.zero(), F.one()};
        through.second = type == LineType::type10 ? std::array{F.zero(), F.one()} : c;
        const RulingLine<Field> line{through, type};
        ++scan.fibres_scanned;
        if (restrict_to_ruling(F, f, line).is_zero(F)) {
          scan.found.push_back({type, c, 0, true});
          continue;
        }
        BinaryForm<Field> g{0, {}};
        bool first = true;
        for (const auto& p : parts) {
          const auto r = restrict_to_ruling(F, p, line);
          g = first ? r : form_gcd(F, g, r);
          first = false;
        }
        if (g.is_zero(F)) {
          scan.found.push_back({type, c, -1, false});
          continue;
        }
        if (g.degree == 0) continue;
        for (const auto& P : S) {
          const bool on = type == LineType::type10 ? same_projective(F, P.first, c) : same_projective(F, P.second, c);
          if (!on) continue;
          const auto& other = type == LineType::type10 ? P.second : P.first;
          const auto lin = detail::linear_form_vanishing_at(F, other);
          try {
            g = form_divide(F, g, lin);
          } catch (const Error&) {
            // Node not a root of the gcd: impossible for a singular point, so
            // the certificates will already have failed.  Keep the degree.
          }
        }
        if (g.degree > 0) scan.found.push_back({type, c, g.degree, false});
      }
    }
  }
  for (int k = 0; k < opt.random_points; ++k) {
    const auto P = make_point(F, F.random(rng), F.random(rng));
    if (!vanishes_at(F, f, P)) continue;
    if (!F.is_zero(chart_derivative(F, f, P, 1, 0)) || !F.is_zero(chart_derivative(F, f, P, 0, 1))) continue;
    bool known = false;
    for (const auto& Q : S) known = known || same_point(F, P, Q);
    if (!known) scan.random_hits.push_back(P);
  }
  scan.random_points = opt.random_points;
  scan.scanned = std::string(opt.fibres ? "all rational fibres of both rulings over " + F.name() + ", " : "") +
                 std::to_string(opt.random_points) + " random points";
  return scan;
}

template <class Field>
struct FibreCount {
  int distinct = 0;
  int repeated_degree = 0;
  int max_multiplicity = 0;
};

template <class Field>
struct NodalCurveReport {
  BiForm<Field> form;
  int a = 0, b = 0, m = 0, x = 0;
  bool tangency = false;
  int h0 = 0;
  int h0_expected = 0;
  std::vector<NodeCertificate<Field>> nodes;
  bool no_ruling_component = true;  // no ruling line through a node lies on Y
  SingularityScan<Field> scan;
  long long arithmetic_genus = 0;
  long long genus = 0;
  std::optional<FibreCount<Field>> fibre_d1, fibre_d2;
  int attempts = 0;

  bool h0_check() const { return h0 == h0_expected; }
  bool nodes_ok(const Field& F) const {
    for (const auto& n : nodes)
      if (!n.ok(F)) return false;
    return true;
  }
  bool fibres_ok() const {
    if (!tangency) return true;
    auto good = [](const std::optional<FibreCount<Field>>& c, int expected) {
      return c && c->distinct == expected && c->repeated_degree == 1 && c->max_multiplicity == 2;
    };
    return good(fibre_d1, b - 1) && good(fibre_d2, a - 1);
  }
  bool certified(const Field& F) const {
    return h0_check() && nodes_ok(F) && no_ruling_component && scan.clean() && fibres_ok();
  }
};

namespace detail {

template <class Field>
bool ruling_component_through(const Field& F, const BiForm<Field>& f, const std::vector<QuadricPoint<Field>>& S) {
  for (const auto& P : S)
    for (const auto type : {LineType::type10, LineType::type01})
      if (restrict_to_ruling(F, f, {P, type}).is_zero(F)) return true;
  return false;
}

template <class Field>
FibreCount<Field> fibre_count(const Field& F, const BinaryForm<Field>& g) {
  if (g.is_zero(F)) return {-1, -1, -1};
  const auto prof = root_profile(F, g);
  return {prof.distinct, prof.repeated_degree, prof.max_multiplicity};
}

template <class Field>
void check_curve_range(int a, int b, int x, int cap) {
  if (a < 4 || b < a) throw Error("need b >= a >= 4");
  if (x < 0 || 3 * x > cap) throw Error("too many nodes for this bidegree");
}

/// Draw Y from the system, certify, redraw on failure.
template <class Field>
NodalCurveReport<Field> draw_certified(const Field& F, NodalCurveReport<Field> base, const PointScheme<Field>& scheme,
                                       const std::vector<QuadricPoint<Field>>& S,
                                       const std::optional<RulingLine<Field>>& d1,
                                       const std::optional<RulingLine<Field>>& d2, const ScanOptions& opt, Rng& rng) {
  NodalCurveReport<Field> rep = base;
  for (int attempt = 1; attempt <= kCurveRedraws; ++attempt) {
    rep = base;
    rep.attempts = attempt;
    rep.form = random_member(F, scheme, {base.a, base.b}, rng);
    for (const auto& P : S) rep.nodes.push_back(node_certificate(F, rep.form, P));
    rep.no_ruling_component = !ruling_component_through(F, rep.form, S);
    if (d1) rep.fibre_d1 = fibre_count(F, restrict_to_ruling(F, rep.form, *d1));
    if (d2) rep.fibre_d2 = fibre_count(F, restrict_to_ruling(F, rep.form, *d2));
    // The expensive scan only runs once the cheap certificates hold.
    if (!rep.nodes_ok(F) || !rep.no_ruling_component || !rep.fibres_ok()) continue;
    rep.scan = singularity_scan(F, rep.form, S, opt, rng);
    if (rep.certified(F)) return rep;
  }
  return rep;
}

}  // namespace detail

/// A general member of |I_{2S}(a, b)| with its node, component and scan
/// certificates.  Redrawn up to 25 times until every certificate holds.
template <class Field>
NodalCurveReport<Field> build_nodal_curve(const Field& F, int a, int b, const std::vector<QuadricPoint<Field>>& S,
                                          Rng& rng, const ScanOptions& opt = {}) {
  detail::check_curve_range<Field>(a, b, static_cast<int>(S.size()), a * b);
  const auto scheme = fat_scheme(S);
  NodalCurveReport<Field> base;
  base.a = a;
  base.b = b;
  base.m = b - a;
  base.x = static_cast<int>(S.size());
  base.h0 = ideal_cohomology(F, scheme, {a, b}).h0;
  base.h0_expected = (a + 1) * (b + 1) - 3 * base.x;
  if (base.h0 != base.h0_expected) throw CheckFailure("special node configuration");
  base.arithmetic_genus = static_cast<long long>(a - 1) * (b - 1);
  base.genus = genus(a, b - a, base.x);
  const std::optional<RulingLine<Field>> none;
  return detail::draw_certified(F, base, scheme, S, none, none, opt, rng);
}

/// As build_nodal_curve, additionally tangent at P1 to the (1,0)-line D1
/// through P1 and at P2 to the (0,1)-line D2 through P2: the degree-2 schemes
/// Z in D1 and Z' in D2 are imposed, so Y meets D1 in b-1 and D2 in a-1
/// distinct points.
template <class Field>
NodalCurveReport<Field> build_tangent_curve(const Field& F, int a, int b, const std::vector<QuadricPoint<Field>>& S,
                                            const QuadricPoint<Field>& P1, const QuadricPoint<Field>& P2, Rng& rng,
                                            const ScanOptions& opt = {}) {
  detail::check_curve_range<Field>(a, b, static_cast<int>(S.size()), (a - 1) * (b - 1));
  if (same_projective(F, P1.first, P2.first) || same_projective(F, P1.second, P2.second))
    throw Error("tangency points must avoid the rulings through S and each other");
  for (const auto& P : S)
    for (const auto* T : {&P1, &P2})
      if (same_projective(F, P.first, T->first) || same_projective(F, P.second, T->second))
        throw Error("tangency points must avoid the rulings through S and each other");

  auto scheme = fat_scheme(S);
  scheme.add(ItemKind::ruling_tangent, P1, Ruling::second);  // Z inside the (1,0)-line D1
  scheme.add(ItemKind::ruling_tangent, P2, Ruling::first);   // Z' inside the (0,1)-line D2
  NodalCurveReport<Field> base;
  base.a = a;
  base.b = b;
  base.m = b - a;
  base.x = static_cast<int>(S.size());
  base.tangency = true;
  base.h0 = ideal_cohomology(F, scheme, {a, b}).h0;
  base.h0_expected = (a + 1) * (b + 1) - 3 * base.x - 4;
  if (base.h0 != base.h0_expected) throw CheckFailure("special node configuration");
  base.arithmetic_genus = static_cast<long long>(a - 1) * (b - 1);
  base.genus = genus(a, b - a, base.x);
  return detail::draw_certified(F, base, scheme, S, std::optional<RulingLine<Field>>({P1, LineType::type10}),
                                std::optional<RulingLine<Field>>({P2, LineType::type01}), opt, rng);
}

/// Recomputes node certificates and the ruling-component check from the form.
template <class Field>
bool replay_nodal_report(const Field& F, const NodalCurveReport<Field>& rep, const std::vector<QuadricPoint<Field>>& S) {
  if (rep.nodes.size() != S.size()) return false;
  for (std::size_t k = 0; k < S.size(); ++k) {
    const auto c = node_certificate(F, rep.form, S[k]);
    if (c.ok(F) != rep.nodes[k].ok(F) || !F.equal(c.hessian_det, rep.nodes[k].hessian_det)) return false;
  }
  return rep.no_ruling_component == !detail::ruling_component_through(F, rep.form, S);
}

}  // namespace quadgon
