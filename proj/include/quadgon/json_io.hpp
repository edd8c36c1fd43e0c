#pragma once

// JSON encodings of quadgon objects (nlohmann::json, keys sorted).
//
//   point    ["s", "t", "u", "v"]              field elements as decimal strings
//   BiForm   {"a": .., "b": .., "p": .., "coeffs": ["..", ..]}   p = 0 means Q
//
// Certificates round-trip so that check-cert can replay them.

#include <string>
#include <vector>

#include <json.hpp>

#include "quadgon/cohomology.hpp"
#include "quadgon/curves.hpp"
#include "quadgon/error.hpp"
#include "quadgon/gonality.hpp"
#include "quadgon/horace.hpp"
#include "quadgon/position.hpp"
#include "quadgon/quadric.hpp"

namespace quadgon::io {

using json = nlohmann::json;

template <class Field>
json point_json(const Field& F, const QuadricPoint<Field>& P) {
  return json::array({F.to_string(P.first[0]), F.to_string(P.first[1]), F.to_string(P.second[0]),
                      F.to_string(P.second[1])});
}

template <class Field>
json points_json(const Field& F, const std::vector<QuadricPoint<Field>>& pts) {
  json out = json::array();
  for (const auto& P : pts) out.push_back(point_json(F, P));
  return out;
}

template <class Field>
typename Field::Element element_from(const Field& F, const json& j) {
  if (j.is_string()) return F.parse(j.get<std::string>());
  if (j.is_number_integer()) return F.from_int(j.get<long long>());
  throw Error("field element must be a decimal string or integer");
}

template <class Field>
QuadricPoint<Field> point_from(const Field& F, const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error("point must be an array [s, t, u, v]");
  QuadricPoint<Field> P{{element_from(F, j[0]), element_from(F, j[1])}, {element_from(F, j[2]), element_from(F, j[3])}};
  if (!valid_point(F, P)) throw Error("projective pair [0:0]");
  return P;
}

template <class Field>
std::vector<QuadricPoint<Field>> points_from(const Field& F, const json& j) {
  if (!j.is_array()) throw Error("expected an array of points");
  std::vector<QuadricPoint<Field>> out;
  for (const auto& p : j) out.push_back(point_from(F, p));
  return out;
}

template <class Field>
json form_json(const Field& F, const BiForm<Field>& f) {
  json c = json::array();
  for (const auto& x : f.coeffs) c.push_back(F.to_string(x));
  return {{"a", f.bidegree.a}, {"b", f.bidegree.b}, {"p", F.json_modulus()}, {"coeffs", c}};
}

template <class Field>
BiForm<Field> form_from(const Field& F, const json& j) {
  const Bidegree d{j.at("a").get<int>(), j.at("b").get<int>()};
  if (!d.nonnegative()) throw Error("negative bidegree in form");
  if (j.contains("p") && j.at("p").get<std::uint64_t>() != F.json_modulus())
    throw Error("form was written over a different field");
  const auto& c = j.at("coeffs");
  if (!c.is_array() || c.size() != static_cast<std::size_t>(d.dim())) throw Error("coefficient count mismatch");
  BiForm<Field> f{d, {}};
  for (const auto& x : c) f.coeffs.push_back(element_from(F, x));
  return f;
}

inline json cohomology_json(const CohomologyReport& r) {
  return {{"a", r.a}, {"b", r.b}, {"h0", r.h0}, {"h1", r.h1}, {"deg", r.degree}, {"rank", r.rank},
          {"expected_h0", r.expected_h0}};
}

template <class Field>
json incidence_json(const Field& F, const IncidenceMax<Field>& m) {
  return {{"count", m.count}, {"witness", form_json(F, m.witness)}, {"on_curve", m.on_curve},
          {"generators", m.generators}};
}

template <class Field>
json position_json(const Field& F, const PositionReport<Field>& r) {
  return {{"max_on_line_first", r.line_first.count},
          {"max_on_line_second", r.line_second.count},
          {"max_on_11", r.on_11.count},
          {"max_on_21", r.on_21.count},
          {"max_on_12", r.on_12.count},
          {"witnesses",
           {{"line_first", incidence_json(F, r.line_first)},
            {"line_second", incidence_json(F, r.line_second)},
            {"11", incidence_json(F, r.on_11)},
            {"21", incidence_json(F, r.on_21)},
            {"12", incidence_json(F, r.on_12)}}}};
}

inline json hypothesis_json(const HypothesisReport& h) { return {{"pass", h.pass}, {"violated", h.violated}}; }

// ---------------------------------------------------------------------------
// Certificates

inline CurveShape shape_from(const std::string& s) {
  for (auto c : {CurveShape::irreducible, CurveShape::conic_and_line, CurveShape::three_lines, CurveShape::non_reduced})
    if (to_string(c) == s) return c;
  throw Error("unknown curve shape '" + s + "'");
}

inline json audit_json(const StepAudit& a) {
  return {{"a_bound", a.a_bound}, {"f_bound", a.f_bound},           {"b_bound", a.b_bound},
          {"g_bound", a.g_bound}, {"non_increasing", a.non_increasing}, {"emptiness", a.emptiness}};
}

inline StepAudit audit_from(const json& j) {
  StepAudit a;
  a.a_bound = j.at("a_bound").get<bool>();
  a.f_bound = j.at("f_bound").get<bool>();
  a.b_bound = j.at("b_bound").get<bool>();
  a.g_bound = j.at("g_bound").get<bool>();
  a.non_increasing = j.at("non_increasing").get<bool>();
  a.emptiness = j.at("emptiness").get<bool>();
  return a;
}

template <class Field>
json cut_json(const Field& F, const PeelCut<Field>& c) {
  return {{"curve", form_json(F, c.curve)},
          {"removed", points_json(F, c.removed)},
          {"count", c.count},
          {"twist", {c.twist.a, c.twist.b}},
          {"verdict", {{"pass", c.verdict.pass}, {"shape", to_string(c.verdict.shape)}, {"detail", c.verdict.detail}}},
          {"direct_h1", c.direct_h1}};
}

template <class Field>
PeelCut<Field> cut_from(const Field& F, const json& j) {
  PeelCut<Field> c;
  c.curve = form_from(F, j.at("curve"));
  c.removed = points_from(F, j.at("removed"));
  c.count = j.at("count").get<int>();
  c.twist = {j.at("twist").at(0).get<int>(), j.at("twist").at(1).get<int>()};
  c.verdict.pass = j.at("verdict").at("pass").get<bool>();
  c.verdict.shape = shape_from(j.at("verdict").at("shape").get<std::string>());
  c.verdict.detail = j.at("verdict").value("detail", "");
  c.direct_h1 = j.at("direct_h1").get<int>();
  return c;
}

template <class Field>
json certificate_json(const Field& F, const HoraceCertificate<Field>& cert) {
  json steps = json::array();
  json audits = json::array();
  for (const auto& s : cert.steps) {
    const auto th = threshold_functions(s.i, cert.u, cert.mode);
    json step = {{"i", s.i},
                 {"A", form_json(F, s.A.curve)},
                 {"F", points_json(F, s.A.removed)},
                 {"a_i", s.a_i()},
                 {"D", s.D ? form_json(F, s.D->curve) : json(nullptr)},
                 {"G", s.D ? points_json(F, s.D->removed) : json::array()},
                 {"b_i", s.b_i()},
                 {"residual_size", s.residual_size},
                 {"cut_A", cut_json(F, s.A)},
                 {"cut_D", s.D ? cut_json(F, *s.D) : json(nullptr)}};
    steps.push_back(step);
    json au = audit_json(s.audit);
    au["i"] = s.i;
    au["thresholds"] = {{"a", th.a_bound}, {"f", th.f_bound}, {"b", th.b_bound}, {"g", th.g_bound},
                        {"phi", th.phi},   {"psi", th.psi},   {"tau", th.tau},   {"eta", th.eta}};
    audits.push_back(au);
  }
  json j = {{"mode", to_string(cert.mode)},
            {"u", cert.u},
            {"v", cert.v},
            {"alpha", cert.alpha},
            {"beta", cert.beta},
            {"p", F.json_modulus()},
            {"steps", steps},
            {"audits", audits},
            {"residual", points_json(F, cert.residual)},
            {"residual_h1", cert.residual_h1},
            {"failures", cert.failures},
            {"conclusion", cert.conclusion()}};
  if (cert.mode == PeelMode::e4) {
    j["E"] = points_json(F, cert.B);
  } else {
    j["S"] = points_json(F, cert.S);
    j["B"] = points_json(F, cert.B);
  }
  if (cert.horizontal) {
    json lines = json::array();
    for (const auto& l : cert.horizontal->lines) lines.push_back({F.to_string(l[0]), F.to_string(l[1])});
    j["horizontal_peel"] = {{"lines", lines}, {"absorbed", points_json(F, cert.horizontal->absorbed)}};
  } else {
    j["horizontal_peel"] = nullptr;
  }
  return j;
}

template <class Field>
HoraceCertificate<Field> certificate_from(const Field& F, const json& j) {
  HoraceCertificate<Field> cert;
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "e4") cert.mode = PeelMode::e4;
  else if (mode == "g4") cert.mode = PeelMode::g4;
  else throw Error("unknown certificate mode '" + mode + "'");
  if (j.contains("p") && j.at("p").get<std::uint64_t>() != F.json_modulus())
    throw Error("certificate was written over a different field");
  cert.u = j.at("u").get<int>();
  cert.v = j.at("v").get<int>();
  cert.alpha = j.at("alpha").get<int>();
  cert.beta = j.at("beta").get<int>();
  if (cert.mode == PeelMode::e4) {
    cert.B = points_from(F, j.at("E"));
  } else {
    cert.S = points_from(F, j.at("S"));
    cert.B = points_from(F, j.at("B"));
  }
  if (j.contains("horizontal_peel") && !j.at("horizontal_peel").is_null()) {
    HorizontalPeel<Field> hp;
    for (const auto& l : j.at("horizontal_peel").at("lines"))
      hp.lines.push_back({element_from(F, l.at(0)), element_from(F, l.at(1))});
    hp.absorbed = points_from(F, j.at("horizontal_peel").at("absorbed"));
    cert.horizontal = std::move(hp);
  }
  const auto& audits = j.at("audits");
  std::size_t k = 0;
  for (const auto& s : j.at("steps")) {
    PeelStep<Field> step;
    step.i = s.at("i").get<int>();
    step.A = cut_from(F, s.at("cut_A"));
    if (!s.at("cut_D").is_null()) step.D = cut_from(F, s.at("cut_D"));
    step.residual_size = s.at("residual_size").get<int>();
    // a_i and b_i are written for readability; they must agree with the cuts they summarize
    if (s.value("a_i", step.a_i()) != step.a_i() || s.value("b_i", step.b_i()) != step.b_i())
      throw Error("certificate: a_i/b_i disagree with the recorded cuts");
    if (k >= audits.size()) throw Error("certificate: missing audit record");
    step.audit = audit_from(audits.at(k++));
    cert.steps.push_back(std::move(step));
  }
  cert.residual = points_from(F, j.at("residual"));
  cert.residual_h1 = j.at("residual_h1").get<int>();
  const auto conclusion = j.at("conclusion").get<std::string>();
  if (conclusion != "h1=0") {
    cert.failures = j.value("failures", std::vector<std::string>{});
    if (cert.failures.empty()) cert.failures.push_back(conclusion);
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Curves and gonality

template <class Field>
json nodal_json(const Field& F, const NodalCurveReport<Field>& r) {
  json nodes = json::array();
  for (const auto& n : r.nodes)
    nodes.push_back({{"point", point_json(F, n.point)},
                     {"value", F.to_string(n.value)},
                     {"dx", F.to_string(n.dx)},
                     {"dy", F.to_string(n.dy)},
                     {"hessian_det", F.to_string(n.hessian_det)},
                     {"ok", n.ok(F)}});
  json found = json::array();
  for (const auto& f : r.scan.found)
    found.push_back({{"fibre_type", f.fibre_type == LineType::type10 ? "(1,0)" : "(0,1)"},
                     {"fibre", {F.to_string(f.fibre[0]), F.to_string(f.fibre[1])}},
                     {"extra_degree", f.extra_degree},
                     {"component", f.component}});
  json j = {{"form", form_json(F, r.form)},
            {"a", r.a},
            {"b", r.b},
            {"m", r.m},
            {"x", r.x},
            {"h0", r.h0},
            {"h0_expected", r.h0_expected},
            {"h0_check", r.h0_check()},
            {"node_certificates", nodes},
            {"no_ruling_component", r.no_ruling_component},
            {"extra_singularities_scan",
             {{"scanned_field", r.scan.scanned},
              {"fibres_scanned", r.scan.fibres_scanned},
              {"random_points", r.scan.random_points},
              {"found", found},
              {"random_hits", points_json(F, r.scan.random_hits)}}},
            {"arithmetic_genus", r.arithmetic_genus},
            {"genus", r.genus},
            {"attempts", r.attempts},
            {"irreducibility", "not certified; only ruling-line components through the nodes are excluded"},
            {"certified", r.certified(F)}};
  if (r.tangency) {
    auto fc = [](const auto& c) {
      return c ? json{{"distinct", c->distinct}, {"repeated_degree", c->repeated_degree},
                      {"max_multiplicity", c->max_multiplicity}}
               : json(nullptr);
    };
    j["ruling_fiber_counts"] = {{"D1", fc(r.fibre_d1)}, {"D2", fc(r.fibre_d2)}};
  }
  return j;
}

inline json bounds_json(const GonalityBounds& g) {
  json results = json::array();
  for (const auto& r : g.results) results.push_back({{"bound", r.bound}, {"value", r.value}, {"source", r.source}});
  return {{"a", g.a},
          {"m", g.m},
          {"x", g.x},
          {"genus", g.genus},
          {"d3", {g.d3_lower, g.d3_upper}},
          {"d4", {g.d4_lower, g.d4_upper}},
          {"d3_lower", g.d3_lower},
          {"d3_upper", g.d3_upper},
          {"d4_lower", g.d4_lower},
          {"d4_upper", g.d4_upper},
          {"slope_ok", g.slope_ok},
          {"provenance", g.provenance},
          {"results", results},
          {"notes", g.notes}};
}

inline json sample_json(const D4SampleReport& r) {
  json trials = json::array();
  for (const auto& t : r.per_trial)
    trials.push_back({{"seed", t.seed},
                      {"direct_h1", t.direct_h1},
                      {"conclusion", t.conclusive ? "h1=0" : "inconclusive"},
                      {"agree", t.agree},
                      {"b_attempts", t.b_attempts},
                      {"failures", t.failures}});
  return {{"a", r.a},
          {"m", r.m},
          {"x", r.x},
          {"z", r.z},
          {"route",
           {{"mode", to_string(r.route.mode)},
            {"u", r.route.u},
            {"v", r.route.v},
            {"alpha", r.route.alpha},
            {"beta", r.route.beta}}},
          {"trials", r.trials},
          {"positive_h1", r.positive_h1},
          {"disagreements", r.disagreements},
          {"inconclusive", r.inconclusive},
          {"passed", r.passed()},
          {"per_trial", trials}};
}

inline json genus_cover_json(const GenusCover& c) { return {{"g", c.g}, {"a", c.a}, {"x", c.x}}; }

inline json asymptotics_json(const std::vector<AsymptoticRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"a", r.a},
                   {"ratio", {r.ratio_lo.str(), r.ratio_hi.str()}},
                   {"statistic", {r.stat_lo.str(), r.stat_hi.str()}},
                   {"ratio_decimal", {decimal(r.ratio_lo), decimal(r.ratio_hi)}},
                   {"statistic_decimal", {decimal(r.stat_lo), decimal(r.stat_hi)}}});
  return out;
}

}  // namespace quadgon::io
