#pragma once

// Peeling certificates for h^1(I_E(u, v)) = 0.
//
// The carrier E is repeatedly cut by a curve A_i of type (2, 1) through as
// many carrier points as possible, then by a curve D_i of type (1, 2).  Each
// cut is a residual exact sequence
//
//   0 -> I_{E'}(w-2, w-1) -> I_E(w, w) -> I_{F, A}(w, w) -> 0
//   0 -> I_{E''}(w-3, w-3) -> I_{E'}(w-2, w-1) -> I_{G, D}(w-2, w-1) -> 0
//
// so h^1 vanishes on the middle term whenever it vanishes on both ends.  The
// right-hand terms are decided curve by curve (restriction_h1_vanishes); after
// floor(u/3) rounds the twist is (beta, beta) and the carrier must be empty
// (mode e4) or contained in the general part S with h^1 = 0 checked directly
// (mode g4).  When v > u a first cut by v - u disjoint (0, 1)-lines brings the
// twist down to (u, u).
//
// Every cut is also checked by the identity h^1(D, I_{F,D}(c, d)) =
// h^1(Q, I_F(c, d)) (valid since F lies on D and the twists are large enough),
// which is recorded next to the curve-by-curve verdict.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
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

// ---------------------------------------------------------------------------
// Curve-by-curve vanishing on (2,1) and (1,2) curves

enum class CurveShape { irreducible, conic_and_line, three_lines, non_reduced };

inline std::string to_string(CurveShape s) {
  switch (s) {
    case CurveShape::irreducible: return "irreducible";
    case CurveShape::conic_and_line: return "conic+line";
    case CurveShape::three_lines: return "three lines";
    case CurveShape::non_reduced: return "non-reduced";
  }
  return "?";
}

struct RestrictionVerdict {
  bool pass = false;
  CurveShape shape = CurveShape::irreducible;
  std::string detail;
};

namespace detail {

template <class Field>
BinaryForm<Field> u_part(const Field& F, const BiForm<Field>& f, int j) {
  BinaryForm<Field> g;
  g.degree = f.bidegree.a;
  for (int i = 0; i <= f.bidegree.a; ++i) g.coeffs.push_back(f.coefficient(i, j));
  (void)F;
  return g;
}

/// Largest number of points of `pts` on a single ruling line that is a
/// component of {f = 0}.
template <class Field>
int max_on_component_line(const Field& F, const BiForm<Field>& f, const std::vector<QuadricPoint<Field>>& pts) {
  int best = 0;
  for (const auto type : {LineType::type10, LineType::type01}) {
    for (const auto& P : pts) {
      if (!restrict_to_ruling(F, f, {P, type}).is_zero(F)) continue;
      int on = 0;
      for (const auto& R : pts) {
        const bool same = type == LineType::type10 ? same_projective(F, P.first, R.first)
                                                   : same_projective(F, P.second, R.second);
        if (same) ++on;
      }
      best = std::max(best, on);
    }
  }
  return best;
}

template <class Field>
bool proportional(const Field& F, const BinaryForm<Field>& x, const BinaryForm<Field>& y) {
  if (x.coeffs.size() != y.coeffs.size()) return false;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i)
    for (std::size_t j = i + 1; j < x.coeffs.size(); ++j)
      if (!F.equal(F.mul(x.coeffs[i], y.coeffs[j]), F.mul(x.coeffs[j], y.coeffs[i]))) return false;
  return true;
}

template <class Field>
RestrictionVerdict verdict_21(const Field& F, const BiForm<Field>& f, const std::vector<QuadricPoint<Field>>& pts,
                              Bidegree d) {
  // f = U(s,t) u + V(s,t) v with U, V binary quadratics.
  const auto U = u_part(F, f, 1);
  const auto V = u_part(F, f, 0);
  const auto G = form_gcd(F, U, V);
  const int n = static_cast<int>(pts.size());
  RestrictionVerdict out;
  auto line_check = [&](RestrictionVerdict& v) {
    const int worst = max_on_component_line(F, f, pts);
    if (worst > 1) {
      v.pass = false;
      v.detail = std::to_string(worst) + " points on one line component";
    }
  };

  if (G.degree == 0) {
    const int bound = 2 * d.b + d.a + 1;
    out.shape = CurveShape::irreducible;
    out.pass = n <= bound;
    out.detail = std::to_string(n) + " points, bound " + std::to_string(bound);
    return out;
  }
  if (G.degree == 1) {
    const auto Ur = form_divide(F, U, G);
    const auto Vr = form_divide(F, V, G);
    const auto det = F.sub(F.mul(Ur.coeffs[1], Vr.coeffs[0]), F.mul(Ur.coeffs[0], Vr.coeffs[1]));
    if (!F.is_zero(det)) {
      // Line {G = 0} of type (1, 0) plus the smooth (1, 1) curve Ur u + Vr v.
      auto conic = BiForm<Field>::zero(F, {1, 1});
      for (int i = 0; i <= 1; ++i) {
        conic.coefficient(i, 1) = Ur.coeffs[static_cast<std::size_t>(i)];
        conic.coefficient(i, 0) = Vr.coeffs[static_cast<std::size_t>(i)];
      }
      int on_conic = 0;
      for (const auto& P : pts)
        if (vanishes_at(F, conic, P)) ++on_conic;
      const int bound = d.a + d.b + 1;
      out.shape = CurveShape::conic_and_line;
      out.pass = on_conic <= bound;
      out.detail = std::to_string(on_conic) + " points on the conic, bound " + std::to_string(bound);
      line_check(out);
      return out;
    }
    const auto& other = Ur.is_zero(F) ? Vr : Ur;
    if (proportional(F, other, G)) {
      out.shape = CurveShape::non_reduced;
      out.detail = "double (1,0)-line";
      return out;
    }
    out.shape = CurveShape::three_lines;
    out.pass = true;
    out.detail = "at most one point per line";
    line_check(out);
    return out;
  }
  // G.degree == 2: f = G(s,t) * (c u + c' v).
  if (root_profile(F, G).max_multiplicity > 1) {
    out.shape = CurveShape::non_reduced;
    out.detail = "double (1,0)-line";
    return out;
  }
  out.shape = CurveShape::three_lines;
  out.pass = true;
  out.detail = "at most one point per line";
  line_check(out);
  return out;
}

}  // namespace detail

/// Decides h^1(D, I_{pts,D}(d)) = 0, d > (0, 0), for a reduced curve D of type (2,1) or
/// (1,2) from the incidence counts on its components: an irreducible D takes
/// up to deg O_D(d) + 1 points, a smooth (1,1) component up to a + b + 1, and a
/// line component at most one.  A non-reduced D fails with that shape.
template <class Field>
RestrictionVerdict restriction_h1_vanishes(const Field& F, const BiForm<Field>& curve,
                                           const std::vector<QuadricPoint<Field>>& pts, Bidegree d) {
  if (!d.nonnegative()) throw Error("nonnegative bidegree required");
  if (curve.is_zero(F)) throw Error("zero curve");
  for (const auto& P : pts)
    if (!vanishes_at(F, curve, P)) throw Error("not incident");
  if (curve.bidegree != Bidegree{2, 1} && curve.bidegree != Bidegree{1, 2})
    throw Error("restriction check needs a curve of type (2,1) or (1,2)");
  if (d.a == 0 || d.b == 0) {
    // The component counts say nothing here: three lines (x-1)(x-2)(y-3) with
    // one point on each already have h^1 = 1 in bidegree (1, 0).
    RestrictionVerdict out;
    out.detail = "twist outside the range of the count criterion";
    return out;
  }
  if (curve.bidegree == Bidegree{2, 1}) return detail::verdict_21(F, curve, pts, d);
  if (curve.bidegree == Bidegree{1, 2}) {
    std::vector<QuadricPoint<Field>> swapped;
    for (const auto& P : pts) swapped.push_back(swap_factors(P));
    return detail::verdict_21(F, swap_factors(F, curve), swapped, {d.b, d.a});
  }
  throw Error("restriction check needs a curve of type (2,1) or (1,2)");
}

// ---------------------------------------------------------------------------
// Thresholds

enum class PeelMode { e4, g4 };

inline std::string to_string(PeelMode m) { return m == PeelMode::e4 ? "e4" : "g4"; }

struct Thresholds {
  int a_bound = 0;  // on a_i
  int b_bound = 0;  // on b_i
  int f_bound = 0;  // on |F_i| (mode g4; equals a_bound in mode e4)
  int g_bound = 0;  // on |G_i| (mode g4; equals b_bound in mode e4)
  long long phi = 0, psi = 0, tau = 0, eta = 0;
};

/// Per-step admissible counts and the four counting functions at t = i.
inline Thresholds threshold_functions(int i, int u, PeelMode mode) {
  const long long t = i;
  Thresholds th;
  if (mode == PeelMode::e4) {
    th.a_bound = th.f_bound = 3 * u - 9 * i + 10;
    th.b_bound = th.g_bound = 3 * u - 9 * i + 5;
    th.phi = t * (3LL * u + 16 - 9 * t) - 5;
    th.psi = t * (2LL * u + 13 - 6 * t) - 5;
    th.tau = t * (3LL * u + 11 - 9 * t);
    th.eta = t * (4LL * u - 12 * t + 11);
  } else {
    th.a_bound = 3 * u - 9 * i + 5;
    th.f_bound = 3 * u - 9 * i + 10;
    th.b_bound = 3 * u - 9 * i;
    th.g_bound = 3 * u - 9 * i + 5;
    th.phi = t * (3LL * u + 11 - 9 * t) - 5;
    th.psi = t * (2LL * u + 10 - 6 * t) - 5;
    th.tau = t * (3LL * u + 6 - 9 * t);
    th.eta = t * (4LL * u + 5 - 12 * t);
  }
  return th;
}

// ---------------------------------------------------------------------------
// Certificates

struct StepAudit {
  bool a_bound = true;
  bool f_bound = true;
  bool b_bound = true;
  bool g_bound = true;
  bool non_increasing = true;
  bool emptiness = true;

  bool all() const { return a_bound && f_bound && b_bound && g_bound && non_increasing && emptiness; }
};

template <class Field>
struct PeelCut {
  BiForm<Field> curve;
  std::vector<QuadricPoint<Field>> removed;
  int count = 0;  // points of the maximised part on the curve
  Bidegree twist;
  RestrictionVerdict verdict;
  int direct_h1 = 0;
};

template <class Field>
struct PeelStep {
  int i = 0;
  PeelCut<Field> A;                // type (2, 1)
  std::optional<PeelCut<Field>> D;  // type (1, 2); absent when nothing is left
  int residual_size = 0;
  StepAudit audit;

  int a_i() const { return A.count; }
  int b_i() const { return D ? D->count : 0; }
};

template <class Field>
struct HorizontalPeel {
  std::vector<std::array<typename Field::Element, 2>> lines;  // second coordinates [u:v]
  std::vector<QuadricPoint<Field>> absorbed;
};

template <class Field>
struct HoraceCertificate {
  PeelMode mode = PeelMode::e4;
  int u = 0, v = 0, alpha = 0, beta = 0;
  std::vector<QuadricPoint<Field>> S;  // general part (mode g4 only)
  std::vector<QuadricPoint<Field>> B;  // maximised part; all of E in mode e4
  std::optional<HorizontalPeel<Field>> horizontal;
  std::vector<PeelStep<Field>> steps;
  std::vector<QuadricPoint<Field>> residual;
  int residual_h1 = 0;  // h^1(I_residual(beta, beta))
  std::vector<std::string> failures;

  bool conclusive() const { return failures.empty(); }
  std::string conclusion() const { return conclusive() ? "h1=0" : "inconclusive"; }
};

namespace detail {

template <class Field>
struct Carrier {
  std::vector<QuadricPoint<Field>> pts;
  std::vector<bool> in_b;

  std::vector<QuadricPoint<Field>> b_part() const {
    std::vector<QuadricPoint<Field>> out;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (in_b[k]) out.push_back(pts[k]);
    return out;
  }
  int b_count() const { return static_cast<int>(std::count(in_b.begin(), in_b.end(), true)); }
};

/// Cut the carrier by the curve, removing every carrier point on it.
template <class Field>
PeelCut<Field> cut(const Field& F, Carrier<Field>& carrier, const BiForm<Field>& curve, int count, Bidegree twist) {
  PeelCut<Field> c;
  c.curve = curve;
  c.count = count;
  c.twist = twist;
  Carrier<Field> kept;
  for (std::size_t k = 0; k < carrier.pts.size(); ++k) {
    if (vanishes_at(F, curve, carrier.pts[k])) {
      c.removed.push_back(carrier.pts[k]);
    } else {
      kept.pts.push_back(carrier.pts[k]);
      kept.in_b.push_back(carrier.in_b[k]);
    }
  }
  carrier = std::move(kept);
  c.verdict = restriction_h1_vanishes(F, curve, c.removed, twist);
  c.direct_h1 = h1_of_points(F, c.removed, twist);
  return c;
}

template <class Field>
void note_verdict(HoraceCertificate<Field>& cert, const PeelCut<Field>& c, const std::string& name, int i) {
  const std::string where = name + "_" + std::to_string(i);
  if (c.verdict.shape == CurveShape::non_reduced) cert.failures.push_back(where + ": non-reduced curve");
  else if (!c.verdict.pass) cert.failures.push_back(where + ": restriction check failed (" + c.verdict.detail + ")");
}

/// The shared peeling loop; mode e4 is the case S = {}.
template <class Field>
void run_peel(const Field& F, HoraceCertificate<Field>& cert, Carrier<Field> carrier, std::size_t cap) {
  const int u = cert.u;
  for (int i = 1; i <= cert.alpha; ++i) {
    const bool active = cert.mode == PeelMode::e4 ? !carrier.pts.empty() : carrier.b_count() > 0;
    if (!active) break;
    const auto th = threshold_functions(i, u, cert.mode);
    const int w = u - 3 * i + 3;
    PeelStep<Field> step;
    step.i = i;

    const auto bestA = max_on_curve_type(F, carrier.b_part(), 2, 1, cap);
    step.A = cut(F, carrier, bestA.witness, bestA.count, {w, w});
    note_verdict(cert, step.A, "A", i);

    const bool d_needed = cert.mode == PeelMode::e4 ? !carrier.pts.empty() : carrier.b_count() > 0;
    if (d_needed) {
      const auto bestD = max_on_curve_type(F, carrier.b_part(), 1, 2, cap);
      step.D = cut(F, carrier, bestD.witness, bestD.count, {w - 2, w - 1});
      note_verdict(cert, *step.D, "D", i);
    }
    step.residual_size = static_cast<int>(carrier.pts.size());

    auto& au = step.audit;
    au.a_bound = step.a_i() <= th.a_bound;
    au.f_bound = static_cast<int>(step.A.removed.size()) <= th.f_bound;
    au.b_bound = step.b_i() <= th.b_bound;
    au.g_bound = !step.D || static_cast<int>(step.D->removed.size()) <= th.g_bound;
    if (!cert.steps.empty()) {
      const auto& prev = cert.steps.back();
      au.non_increasing = step.a_i() <= prev.a_i() && step.b_i() <= prev.b_i();
    }
    // Five points always lie on a curve of either type, so a small maximum
    // means the maximised part was used up.
    const bool a_trigger_ok = step.a_i() > 4 || !d_needed;
    const bool b_trigger_ok = step.b_i() > 4 ||
                              (cert.mode == PeelMode::e4 ? carrier.pts.empty() : carrier.b_count() == 0);
    au.emptiness = a_trigger_ok && b_trigger_ok;
    if (!au.all()) cert.failures.push_back("step " + std::to_string(i) + ": audit failed");
    cert.steps.push_back(std::move(step));
  }
  cert.residual = carrier.pts;
  if (cert.mode == PeelMode::e4) {
    if (!cert.residual.empty()) cert.failures.push_back("residual is not empty");
  } else {
    if (carrier.b_count() > 0) cert.failures.push_back("residual meets B");
  }
  cert.residual_h1 = h1_of_points(F, cert.residual, {cert.beta, cert.beta});
  if (cert.residual_h1 != 0) cert.failures.push_back("residual has h1 > 0 in bidegree (beta, beta)");
}

template <class Field>
std::array<typename Field::Element, 2> unused_second_coordinate(const Field& F,
                                                                 const std::vector<QuadricPoint<Field>>& pts,
                                                                 const std::vector<std::array<typename Field::Element, 2>>& taken,
                                                                 std::uint64_t& cursor) {
  for (;; ++cursor) {
    if (cursor >= F.size()) throw Error("field too small for the horizontal peel");
    const std::array<typename Field::Element, 2> c{F.element_at(cursor), F.one()};
    bool clash = false;
    for (const auto& P : pts) clash = clash || same_projective(F, P.second, c);
    for (const auto& t : taken) clash = clash || same_projective(F, t, c);
    if (!clash) {
      ++cursor;
      return c;
    }
  }
}

}  // namespace detail

/// Certificate for h^1(I_E(u, v)) = 0 under the e4 hypotheses.
template <class Field>
HoraceCertificate<Field> peel_e4(const Field& F, const std::vector<QuadricPoint<Field>>& E, int u, int v,
                                 std::size_t cap = kDefaultSearchCap) {
  const auto hyp = check_e4_hypotheses(F, E, u, v, cap);
  if (!hyp.pass) {
    std::string msg = "hypotheses fail:";
    for (const auto& c : hyp.violated) msg += " " + c + ";";
    throw Error(msg);
  }
  HoraceCertificate<Field> cert;
  cert.mode = PeelMode::e4;
  cert.u = u;
  cert.v = v;
  cert.alpha = u / 3;
  cert.beta = u - 3 * cert.alpha;
  cert.B = E;

  detail::Carrier<Field> carrier;
  std::size_t start = 0;
  if (v > u) {
    HorizontalPeel<Field> hp;
    const std::size_t absorbed = std::min(E.size(), static_cast<std::size_t>(v - u));
    for (std::size_t k = 0; k < absorbed; ++k) {
      hp.absorbed.push_back(E[k]);
      hp.lines.push_back(normalized_pair(F, E[k].second));
    }
    std::uint64_t cursor = 0;
    while (static_cast<int>(hp.lines.size()) < v - u)
      hp.lines.push_back(detail::unused_second_coordinate(F, E, hp.lines, cursor));
    cert.horizontal = std::move(hp);
    start = absorbed;
  }
  for (std::size_t k = start; k < E.size(); ++k) {
    carrier.pts.push_back(E[k]);
    carrier.in_b.push_back(true);
  }
  detail::run_peel(F, cert, std::move(carrier), cap);
  return cert;
}

/// Certificate for h^1(I_{S u B}(u, u)) = 0, u = 3 alpha + beta, under the g4
/// hypotheses.  Curves maximise their count on the B-part; every carrier
/// point on a curve (S-points included) is removed with it.
template <class Field>
HoraceCertificate<Field> peel_g4(const Field& F, const std::vector<QuadricPoint<Field>>& S,
                                 const std::vector<QuadricPoint<Field>>& B, int alpha, int beta,
                                 std::size_t cap = kDefaultSearchCap) {
  const auto hyp = check_g4_hypotheses(F, S, B, alpha, beta, cap);
  if (!hyp.pass) {
    std::string msg = "hypotheses fail:";
    for (const auto& c : hyp.violated) msg += " " + c + ";";
    throw Error(msg);
  }
  HoraceCertificate<Field> cert;
  cert.mode = PeelMode::g4;
  cert.alpha = alpha;
  cert.beta = beta;
  cert.u = cert.v = 3 * alpha + beta;
  cert.S = S;
  cert.B = B;
  detail::Carrier<Field> carrier;
  for (const auto& P : S) {
    carrier.pts.push_back(P);
    carrier.in_b.push_back(false);
  }
  for (const auto& P : B) {
    carrier.pts.push_back(P);
    carrier.in_b.push_back(true);
  }
  detail::run_peel(F, cert, std::move(carrier), cap);
  return cert;
}

// ---------------------------------------------------------------------------
// Replay checker

struct CheckResult {
  bool ok = true;
  std::vector<std::string> problems;

  void require(bool cond, std::string what) {
    if (!cond) {
      ok = false;
      problems.push_back(std::move(what));
    }
  }
};

/// Re-verifies a certificate without searching: every incidence, every count,
/// the thresholds, the per-curve verdicts, the horizontal peel and the final
/// residual.  Maximality of a_i, b_i is checked against the recorded witness
/// counts only.
template <class Field>
CheckResult check_certificate(const Field& F, const HoraceCertificate<Field>& cert) {
  CheckResult res;
  const bool e4 = cert.mode == PeelMode::e4;
  if (e4) {
    res.require(cert.alpha == cert.u / 3 && cert.beta == cert.u - 3 * cert.alpha, "alpha/beta do not match u");
  } else {
    res.require(cert.u == 3 * cert.alpha + cert.beta && cert.v == cert.u, "u does not match alpha/beta");
    res.require(cert.alpha >= 3 && cert.beta >= 2, "alpha/beta out of range");
  }
  res.require(!e4 || cert.S.empty(), "mode e4 with a separate S part");

  auto E = detail::concat(cert.S, cert.B);
  try {
    check_distinct_supports(F, E);
  } catch (const Error& e) {
    res.require(false, e.what());
    return res;
  }

  detail::Carrier<Field> carrier;
  for (std::size_t k = 0; k < E.size(); ++k) {
    carrier.pts.push_back(E[k]);
    carrier.in_b.push_back(k >= cert.S.size());
  }

  if (cert.v > cert.u) {
    if (!cert.horizontal) {
      res.require(false, "missing horizontal peel");
      return res;
    }
    const auto& hp = *cert.horizontal;
    res.require(static_cast<int>(hp.lines.size()) == cert.v - cert.u, "horizontal peel: wrong number of lines");
    res.require(hp.absorbed.size() == std::min(E.size(), static_cast<std::size_t>(cert.v - cert.u)),
                "horizontal peel: wrong number of absorbed points");
    for (std::size_t i = 0; i < hp.lines.size(); ++i)
      for (std::size_t j = i + 1; j < hp.lines.size(); ++j)
        res.require(!same_projective(F, hp.lines[i], hp.lines[j]), "horizontal peel: lines meet");
    std::vector<int> per_line(hp.lines.size(), 0);
    detail::Carrier<Field> kept;
    for (std::size_t k = 0; k < carrier.pts.size(); ++k) {
      const auto& P = carrier.pts[k];
      int hits = 0;
      for (std::size_t l = 0; l < hp.lines.size(); ++l)
        if (same_projective(F, P.second, hp.lines[l])) {
          ++per_line[l];
          ++hits;
        }
      bool absorbed = false;
      for (const auto& R : hp.absorbed) absorbed = absorbed || same_point(F, P, R);
      res.require((hits > 0) == absorbed, "horizontal peel: kept point on a peel line or absorbed point off it");
      if (!absorbed) {
        kept.pts.push_back(P);
        kept.in_b.push_back(carrier.in_b[k]);
      }
    }
    for (int c : per_line) res.require(c <= 1, "horizontal peel: two points on one line");
    res.require(kept.pts.size() + hp.absorbed.size() == carrier.pts.size(), "horizontal peel: absorbed points not in E");
    carrier = std::move(kept);
  } else {
    res.require(!cert.horizontal, "unexpected horizontal peel");
  }

  std::vector<std::string> failures;
  auto replay_cut = [&](const PeelCut<Field>& c, Bidegree type, Bidegree twist, const std::string& where) {
    res.require(c.curve.bidegree == type && !c.curve.is_zero(F), where + ": wrong curve type");
    res.require(c.twist == twist, where + ": wrong twist");
    const auto b_before = carrier.b_part();
    res.require(static_cast<int>(incident_indices(F, c.curve, b_before).size()) == c.count,
                where + ": witness count mismatch");
    detail::Carrier<Field> kept;
    std::vector<QuadricPoint<Field>> removed;
    for (std::size_t k = 0; k < carrier.pts.size(); ++k) {
      if (vanishes_at(F, c.curve, carrier.pts[k])) {
        removed.push_back(carrier.pts[k]);
      } else {
        kept.pts.push_back(carrier.pts[k]);
        kept.in_b.push_back(carrier.in_b[k]);
      }
    }
    bool same = removed.size() == c.removed.size();
    for (std::size_t k = 0; same && k < removed.size(); ++k) same = same_point(F, removed[k], c.removed[k]);
    res.require(same, where + ": removed points do not match the incidences");
    carrier = std::move(kept);
    const auto v = restriction_h1_vanishes(F, c.curve, removed, twist);
    res.require(v.pass == c.verdict.pass && v.shape == c.verdict.shape, where + ": verdict mismatch");
    res.require(h1_of_points(F, removed, twist) == c.direct_h1, where + ": direct h1 mismatch");
    if (v.shape == CurveShape::non_reduced) failures.push_back(where + ": non-reduced curve");
    else if (!v.pass) failures.push_back(where + ": restriction check failed");
  };

  int expected_i = 1;
  const PeelStep<Field>* prev = nullptr;
  for (const auto& step : cert.steps) {
    res.require(step.i == expected_i++ && step.i <= cert.alpha, "step index out of sequence");
    const bool active = e4 ? !carrier.pts.empty() : carrier.b_count() > 0;
    res.require(active, "step recorded after the carrier was exhausted");
    const int w = cert.u - 3 * step.i + 3;
    replay_cut(step.A, {2, 1}, {w, w}, "A_" + std::to_string(step.i));
    const bool d_needed = e4 ? !carrier.pts.empty() : carrier.b_count() > 0;
    res.require(d_needed == step.D.has_value(), "D_" + std::to_string(step.i) + ": presence mismatch");
    if (step.D) replay_cut(*step.D, {1, 2}, {w - 2, w - 1}, "D_" + std::to_string(step.i));
    res.require(step.residual_size == static_cast<int>(carrier.pts.size()), "residual size mismatch");

    const auto th = threshold_functions(step.i, cert.u, cert.mode);
    StepAudit au;
    au.a_bound = step.a_i() <= th.a_bound;
    au.f_bound = static_cast<int>(step.A.removed.size()) <= th.f_bound;
    au.b_bound = step.b_i() <= th.b_bound;
    au.g_bound = !step.D || static_cast<int>(step.D->removed.size()) <= th.g_bound;
    if (prev) au.non_increasing = step.a_i() <= prev->a_i() && step.b_i() <= prev->b_i();
    const bool a_ok = step.a_i() > 4 || !d_needed;
    const bool b_ok = step.b_i() > 4 || (e4 ? carrier.pts.empty() : carrier.b_count() == 0);
    au.emptiness = a_ok && b_ok;
    res.require(au.a_bound == step.audit.a_bound && au.f_bound == step.audit.f_bound &&
                    au.b_bound == step.audit.b_bound && au.g_bound == step.audit.g_bound &&
                    au.non_increasing == step.audit.non_increasing && au.emptiness == step.audit.emptiness,
                "step " + std::to_string(step.i) + ": audit record mismatch");
    if (!au.all()) failures.push_back("step " + std::to_string(step.i) + ": audit failed");
    prev = &step;
  }
  if (static_cast<int>(cert.steps.size()) < cert.alpha) {
    const bool active = e4 ? !carrier.pts.empty() : carrier.b_count() > 0;
    res.require(!active, "certificate stops before the carrier is exhausted");
  }

  bool same = carrier.pts.size() == cert.residual.size();
  for (std::size_t k = 0; same && k < carrier.pts.size(); ++k) same = same_point(F, carrier.pts[k], cert.residual[k]);
  res.require(same, "residual mismatch");
  if (e4 && !carrier.pts.empty()) failures.push_back("residual is not empty");
  if (!e4 && carrier.b_count() > 0) failures.push_back("residual meets B");
  const int h1 = h1_of_points(F, carrier.pts, {cert.beta, cert.beta});
  res.require(h1 == cert.residual_h1, "residual h1 mismatch");
  if (h1 != 0) failures.push_back("residual has h1 > 0 in bidegree (beta, beta)");

  res.require(failures.empty() == cert.conclusive(), "conclusion does not match the replay");
  return res;
}

}  // namespace quadgon
