#pragma once

// Command dispatch for the quadgon tool.  `run` is pure apart from reading
// --input and writing sweep reports, so the same RunConfig always yields the
// same bytes.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed (the report
// is still emitted), 2 usage or domain error.
//
// Seeds: every command draws from Rng(seed).  The d4 sampler uses
// derive_seed(seed, 0) for S and derive_seed(seed, i + 1) for trial i.  A
// sweep gives tuple k (in row-major order of the ranges) the seed
// derive_seed(seed, k).

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadgon/cohomology.hpp"
#include "quadgon/curves.hpp"
#include "quadgon/error.hpp"
#include "quadgon/field.hpp"
#include "quadgon/gonality.hpp"
#include "quadgon/horace.hpp"
#include "quadgon/instances.hpp"
#include "quadgon/json_io.hpp"
#include "quadgon/parallel.hpp"
#include "quadgon/position.hpp"
#include "quadgon/quadric.hpp"

namespace quadgon::cli {

using json = nlohmann::json;

inline constexpr const char* kPrimeEnv = "QUADGON_PRIME";

struct RunConfig {
  std::string command;
  std::string prime;  // decimal prime or "rational"; empty means $QUADGON_PRIME, then 65537
  std::uint64_t seed = 0;
  std::string output;  // informational; the caller writes the output
  std::string format = "json";
  int trials = 50;
  unsigned jobs = 1;
  std::map<std::string, long long> params;
  std::string input;  // check-cert, position
  // sweep only
  std::string over;
  std::vector<std::string> ranges;  // "name=lo:hi[:step]" or "name=v1,v2,..."
  std::string out_dir;
  bool resume = false;
};

struct RunResult {
  int exit_code = 0;
  std::string output;
  std::string diagnostic;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Parameter schema

struct ParamSpec {
  std::string name;
  bool required = false;
  long long min = 0;
};

struct CommandSpec {
  std::string name;
  std::vector<ParamSpec> params;
  bool csv = false;
  bool input = false;  // accepts --input
};

inline const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> table = {
      {"hilbert", {{"a", true}, {"b", true}, {"fat"}, {"reduced"}}},
      {"member", {{"a", true}, {"b", true}, {"fat"}, {"reduced"}}},
      {"position", {{"n"}}, false, true},
      {"peel-e4", {{"u", true}, {"v", true}, {"n"}}},
      {"peel-g4", {{"alpha", true}, {"beta", true}, {"x"}, {"z"}}},
      {"check-cert", {}, false, true},
      {"curve", {{"a", true}, {"b", true}, {"x"}}},
      {"tangent-curve", {{"a", true}, {"b", true}, {"x"}}},
      {"bounds", {{"a", true, 1}, {"m"}, {"x"}}, true},
      {"sample-d4", {{"a", true, 1}, {"m"}, {"x"}, {"z"}}, true},
      {"genus-cover", {{"g", true}}},
      {"asymptotics", {{"a_max", true}}, true},
      {"sweep", {}},
  };
  return table;
}

inline const CommandSpec& command_spec(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return c;
  throw UsageError("unknown command '" + name + "'");
}

inline void validate(const RunConfig& cfg) {
  const auto& spec = command_spec(cfg.command);
  if (cfg.command == "sweep") {
    // Fixed parameters belong to the swept command and are checked per tuple.
    if (cfg.over.empty()) throw UsageError("sweep: missing --over");
    if (cfg.over == "sweep") throw UsageError("sweep: cannot sweep a sweep");
    command_spec(cfg.over);
    if (cfg.out_dir.empty()) throw UsageError("sweep: missing --out-dir");
    if (cfg.ranges.empty()) throw UsageError("sweep: give at least one --range");
    if (cfg.jobs < 1) throw UsageError("--jobs must be >= 1");
    return;
  }
  std::set<std::string> known;
  for (const auto& p : spec.params) {
    known.insert(p.name);
    const auto it = cfg.params.find(p.name);
    if (it == cfg.params.end()) {
      if (p.required) throw UsageError(cfg.command + ": missing --" + p.name);
      continue;
    }
    if (it->second < p.min) throw UsageError(cfg.command + ": --" + p.name + " must be >= " + std::to_string(p.min));
  }
  for (const auto& [k, v] : cfg.params)
    if (!known.count(k)) throw UsageError(cfg.command + ": unexpected parameter --" + k);
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
  if (cfg.format == "csv" && !spec.csv) throw UsageError(cfg.command + ": csv output is not available");
  if (!cfg.input.empty() && !spec.input) throw UsageError(cfg.command + ": --input is not accepted");
  if (cfg.command == "check-cert" && cfg.input.empty()) throw UsageError("check-cert: missing --input");
  if (cfg.command == "position" && cfg.input.empty() == !cfg.params.count("n"))
    throw UsageError("position: give exactly one of --input and --n");
  if (cfg.trials < 0) throw UsageError("--trials must be >= 0");
  if (cfg.jobs < 1) throw UsageError("--jobs must be >= 1");
  if (!cfg.ranges.empty() || !cfg.over.empty() || !cfg.out_dir.empty() || cfg.resume) {
    throw UsageError(cfg.command + ": sweep options given to a single run");
  }
}

inline long long param(const RunConfig& cfg, const std::string& name, long long fallback) {
  const auto it = cfg.params.find(name);
  return it == cfg.params.end() ? fallback : it->second;
}

inline int iparam(const RunConfig& cfg, const std::string& name, long long fallback = 0) {
  const long long v = param(cfg, name, fallback);
  if (v < -1000000000LL || v > 1000000000LL) throw UsageError("--" + name + " out of range");
  return static_cast<int>(v);
}

inline std::string resolved_prime(const RunConfig& cfg) {
  if (!cfg.prime.empty()) return cfg.prime;
  if (const char* env = std::getenv(kPrimeEnv); env && *env) return env;
  return "65537";
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

template <class Field>
json header(const Field& F, const RunConfig& cfg) {
  return {{"command", cfg.command}, {"field", F.name()}, {"p", F.json_modulus()}, {"seed", cfg.seed}};
}

/// Fat points first, then reduced ones, all with distinct rulings.
template <class Field>
PointScheme<Field> random_scheme(const Field& F, int fat, int reduced, Rng& rng, json& j) {
  if (fat < 0 || reduced < 0) throw UsageError("point counts must be >= 0");
  const auto pts = points_avoiding<Field>(F, fat + reduced, {}, rng);
  PointScheme<Field> scheme;
  for (int k = 0; k < fat + reduced; ++k) scheme.add(k < fat ? ItemKind::fat : ItemKind::reduced, pts[k]);
  j["fat_points"] = io::points_json(F, std::vector(pts.begin(), pts.begin() + fat));
  j["reduced_points"] = io::points_json(F, std::vector(pts.begin() + fat, pts.end()));
  return scheme;
}

template <class Field>
RunResult hilbert(const Field& F, const RunConfig& cfg) {
  const Bidegree d{iparam(cfg, "a"), iparam(cfg, "b")};
  if (!d.nonnegative()) throw UsageError("nonnegative bidegree required");
  const int fat = iparam(cfg, "fat"), reduced = iparam(cfg, "reduced");
  Rng rng(cfg.seed);
  json j = header(F, cfg);
  const auto scheme = random_scheme(F, fat, reduced, rng, j);
  const auto r = ideal_cohomology(F, scheme, d);
  j.update(io::cohomology_json(r));
  j["fat"] = fat;
  j["reduced"] = reduced;
  // General points impose independent conditions: reduced points always, fat
  // points when b >= a >= 4 (either order) and 3x <= ab.
  const bool predicted = (fat == 0 && r.degree <= d.dim()) ||
                         (reduced == 0 && std::min(d.a, d.b) >= 4 && 3 * fat <= d.a * d.b);
  j["independent_conditions_predicted"] = predicted;
  const bool ok = !predicted || r.h1 == 0;
  j["check"] = {{"pass", ok}};
  return {ok ? 0 : 1, dump(j), ok ? "" : "h1 > 0 where independent conditions were predicted"};
}

template <class Field>
RunResult member(const Field& F, const RunConfig& cfg) {
  const Bidegree d{iparam(cfg, "a"), iparam(cfg, "b")};
  if (!d.nonnegative()) throw UsageError("nonnegative bidegree required");
  Rng rng(cfg.seed);
  json j = header(F, cfg);
  const auto scheme = random_scheme(F, iparam(cfg, "fat"), iparam(cfg, "reduced"), rng, j);
  const auto f = random_member(F, scheme, d, rng);
  bool vanishes = true;
  const auto rows = condition_rows(F, scheme, d);
  for (std::size_t r = 0; r < rows.rows(); ++r) vanishes = vanishes && F.is_zero(dot(F, rows.row(r), f.coeffs));
  j["form"] = io::form_json(F, f);
  j["vanishes_on_scheme"] = vanishes;
  return {vanishes ? 0 : 1, dump(j), vanishes ? "" : "form does not vanish on the scheme"};
}

template <class Field>
RunResult position(const Field& F, const RunConfig& cfg) {
  std::vector<QuadricPoint<Field>> pts;
  if (!cfg.input.empty()) {
    const auto in = read_json_file(cfg.input);
    pts = io::points_from(F, in.is_object() ? in.at("points") : in);
  } else {
    Rng rng(cfg.seed);
    const int n = iparam(cfg, "n");
    if (n < 0) throw UsageError("--n must be >= 0");
    for (int k = 0; k < n; ++k) pts.push_back(make_point(F, F.random(rng), F.random(rng)));
  }
  check_distinct_supports(F, pts);
  const std::size_t cap = std::max<std::size_t>(kDefaultSearchCap, pts.size());
  json j = header(F, cfg);
  j["points"] = io::points_json(F, pts);
  j.update(io::position_json(F, position_report(F, pts, cap)));
  return {0, dump(j), ""};
}

template <class Field>
RunResult finish_certificate(const Field& F, const RunConfig& cfg, const HoraceCertificate<Field>& cert,
                             const std::vector<QuadricPoint<Field>>& E, int attempts) {
  json j = header(F, cfg);
  const int direct = h1_of_points(F, E, {cert.u, cert.v});
  j["certificate"] = io::certificate_json(F, cert);
  j["instance_attempts"] = attempts;
  j["direct_h1"] = direct;
  const bool agree = !cert.conclusive() || direct == 0;
  j["agree"] = agree;
  const bool pass = cert.conclusive() && agree;
  std::string diag;
  if (!agree) diag = "certificate claims h1=0 but the direct rank disagrees";
  else if (!cert.conclusive()) diag = "certificate is inconclusive";
  return {pass ? 0 : 1, dump(j), diag};
}

template <class Field>
RunResult peel_e4_cmd(const Field& F, const RunConfig& cfg) {
  const int u = iparam(cfg, "u"), v = iparam(cfg, "v");
  if (u < 9 || v < u) throw UsageError("out of lemma range");
  const int n = iparam(cfg, "n", v - u + 10 * (u / 3));
  if (n < 0 || n > v - u + 10 * (u / 3)) throw UsageError("--n must lie in [0, v - u + 10 floor(u/3)]");
  const std::size_t cap = std::max<std::size_t>(kDefaultSearchCap, static_cast<std::size_t>(n));
  Rng rng(cfg.seed);
  const auto inst = random_e4_instance(F, u, v, n, rng, cap);
  return finish_certificate(F, cfg, peel_e4(F, inst.E, u, v, cap), inst.E, inst.attempts);
}

template <class Field>
RunResult peel_g4_cmd(const Field& F, const RunConfig& cfg) {
  const int alpha = iparam(cfg, "alpha"), beta = iparam(cfg, "beta");
  if (alpha < 3 || beta < 2) throw UsageError("out of lemma range");
  const int x = iparam(cfg, "x", (beta + 1) * (beta + 1));
  const int z = iparam(cfg, "z", 10 * alpha);
  if (x < 0 || x > (beta + 1) * (beta + 1)) throw UsageError("--x must lie in [0, (beta + 1)^2]");
  if (z < 0 || z > 10 * alpha) throw UsageError("--z must lie in [0, 10 alpha]");
  const std::size_t cap = std::max<std::size_t>(kDefaultSearchCap, static_cast<std::size_t>(x + z));
  Rng rng(cfg.seed);
  const auto inst = random_g4_instance(F, alpha, beta, x, z, rng, cap);
  return finish_certificate(F, cfg, peel_g4(F, inst.S, inst.B, alpha, beta, cap),
                            quadgon::detail::concat(inst.S, inst.B), inst.attempts);
}

template <class Field>
RunResult check_cert(const Field& F, const RunConfig& cfg) {
  const auto in = read_json_file(cfg.input);
  HoraceCertificate<Field> cert;
  try {
    cert = io::certificate_from(F, in.contains("certificate") ? in.at("certificate") : in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed certificate: ") + e.what());
  }
  const auto res = check_certificate(F, cert);
  json j = header(F, cfg);
  j["mode"] = to_string(cert.mode);
  j["conclusion"] = cert.conclusion();
  j["replay_ok"] = res.ok;
  j["problems"] = res.problems;
  const bool pass = res.ok && cert.conclusive();
  std::string diag;
  if (!res.ok) diag = "certificate replay failed";
  else if (!cert.conclusive()) diag = "certificate is inconclusive";
  return {pass ? 0 : 1, dump(j), diag};
}

template <class Field>
RunResult curve_cmd(const Field& F, const RunConfig& cfg, bool tangent) {
  const int a = iparam(cfg, "a"), b = iparam(cfg, "b"), x = iparam(cfg, "x");
  if (x < 0) throw UsageError("--x must be >= 0");
  Rng rng(cfg.seed);
  const auto S = sample_general_nodes(F, x, rng);
  json j = header(F, cfg);
  j["nodes"] = io::points_json(F, S);
  NodalCurveReport<Field> rep;
  if (tangent) {
    const auto P = points_avoiding(F, 2, S, rng);
    rep = build_tangent_curve(F, a, b, S, P[0], P[1], rng);
    j["tangency_points"] = io::points_json(F, P);
  } else {
    rep = build_nodal_curve(F, a, b, S, rng);
  }
  j["report"] = io::nodal_json(F, rep);
  const bool ok = rep.certified(F);
  return {ok ? 0 : 1, dump(j), ok ? "" : "curve report is not certified"};
}

inline RunResult bounds_cmd(const RunConfig& cfg) {
  const auto gb = bounds_for(param(cfg, "a", 0), param(cfg, "m", 0), param(cfg, "x", 0));
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "a,m,x,genus,d3_lower,d3_upper,d4_lower,d4_upper,slope_ok\n"
       << gb.a << ',' << gb.m << ',' << gb.x << ',' << gb.genus << ',' << gb.d3_lower << ',' << gb.d3_upper << ','
       << gb.d4_lower << ',' << gb.d4_upper << ',' << (gb.slope_ok ? "true" : "false") << '\n';
    return {0, os.str(), ""};
  }
  json j = {{"command", cfg.command}};
  j.update(io::bounds_json(gb));
  return {0, dump(j), ""};
}

template <class Field>
RunResult sample_d4_cmd(const Field& F, const RunConfig& cfg) {
  const int a = iparam(cfg, "a"), m = iparam(cfg, "m"), x = iparam(cfg, "x");
  const int z = iparam(cfg, "z", 3LL * a - 15);
  const auto rep = d4_lower_sampler(F, a, m, x, z, cfg.trials, cfg.seed, cfg.jobs);
  const bool ok = rep.passed();
  const std::string diag = ok ? "" : "a trial had h1 > 0 or a certificate disagreed with the direct rank";
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "trial,seed,direct_h1,conclusion,agree,b_attempts\n";
    for (std::size_t i = 0; i < rep.per_trial.size(); ++i) {
      const auto& t = rep.per_trial[i];
      os << i << ',' << t.seed << ',' << t.direct_h1 << ',' << (t.conclusive ? "h1=0" : "inconclusive") << ','
         << (t.agree ? "true" : "false") << ',' << t.b_attempts << '\n';
    }
    return {ok ? 0 : 1, os.str(), diag};
  }
  json j = header(F, cfg);
  j.update(io::sample_json(rep));
  return {ok ? 0 : 1, dump(j), diag};
}

inline RunResult genus_cover_cmd(const RunConfig& cfg) {
  json j = {{"command", cfg.command}};
  j.update(io::genus_cover_json(genus_cover(param(cfg, "g", 0))));
  return {0, dump(j), ""};
}

inline RunResult asymptotics_cmd(const RunConfig& cfg) {
  const auto rows = asymptotics(param(cfg, "a_max", 0));
  if (cfg.format == "csv") return {0, asymptotics_csv(rows), ""};
  return {0, dump({{"command", cfg.command}, {"rows", io::asymptotics_json(rows)}}), ""};
}

template <class Field>
RunResult dispatch(const Field& F, const RunConfig& cfg) {
  const auto& c = cfg.command;
  if (c == "hilbert") return hilbert(F, cfg);
  if (c == "member") return member(F, cfg);
  if (c == "position") return position(F, cfg);
  if (c == "peel-e4") return peel_e4_cmd(F, cfg);
  if (c == "peel-g4") return peel_g4_cmd(F, cfg);
  if (c == "check-cert") return check_cert(F, cfg);
  if (c == "curve") return curve_cmd(F, cfg, false);
  if (c == "tangent-curve") return curve_cmd(F, cfg, true);
  if (c == "bounds") return bounds_cmd(cfg);
  if (c == "sample-d4") return sample_d4_cmd(F, cfg);
  if (c == "genus-cover") return genus_cover_cmd(cfg);
  if (c == "asymptotics") return asymptotics_cmd(cfg);
  throw UsageError("unknown command '" + c + "'");
}

}  // namespace detail

inline RunResult run(const RunConfig& cfg);

namespace detail {

struct Range {
  std::string name;
  std::vector<long long> values;
};

inline long long parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw UsageError("bad integer '" + s + "'");
  return v;
}

/// "a=4:8" (inclusive), "a=4:20:4", or "a=4,7,9".
inline Range parse_range(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--range must look like name=lo:hi[:step] or name=v1,v2");
  Range r{text.substr(0, eq), {}};
  const std::string body = text.substr(eq + 1);
  std::vector<std::string> parts;
  const char sep = body.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(body);
  for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
  if (sep == ',') {
    for (const auto& p : parts) r.values.push_back(parse_int(p));
  } else {
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("--range " + text + ": need lo:hi[:step]");
    const long long lo = parse_int(parts[0]), hi = parse_int(parts[1]);
    const long long step = parts.size() == 3 ? parse_int(parts[2]) : 1;
    if (step <= 0) throw UsageError("--range " + text + ": step must be positive");
    if (hi < lo) throw UsageError("--range " + text + ": empty range");
    if ((hi - lo) / step >= 1000000) throw UsageError("--range " + text + ": too many values");
    for (long long v = lo; v <= hi; v += step) r.values.push_back(v);
  }
  if (r.values.empty()) throw UsageError("--range " + text + ": no values");
  return r;
}

inline std::string tuple_file(const std::string& over, const std::map<std::string, long long>& tuple,
                              const std::vector<Range>& ranges) {
  std::string name = over;
  for (const auto& r : ranges) name += "__" + r.name + "=" + std::to_string(tuple.at(r.name));
  return name + ".json";
}

inline RunResult sweep(const RunConfig& cfg) {
  std::vector<Range> ranges;
  std::set<std::string> seen;
  for (const auto& t : cfg.ranges) {
    ranges.push_back(parse_range(t));
    if (!seen.insert(ranges.back().name).second) throw UsageError("--range " + ranges.back().name + " given twice");
    if (cfg.params.count(ranges.back().name))
      throw UsageError("--range " + ranges.back().name + " also given as a fixed parameter");
  }
  std::size_t total = 1;
  for (const auto& r : ranges) {
    total *= r.values.size();
    if (total > 1000000) throw UsageError("sweep: more than 10^6 tuples");
  }
  // Row-major tuples: the last range varies fastest.
  std::vector<std::map<std::string, long long>> tuples(total);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rest = k;
    auto& t = tuples[k];
    t = cfg.params;
    for (std::size_t r = ranges.size(); r-- > 0;) {
      t[ranges[r].name] = ranges[r].values[rest % ranges[r].values.size()];
      rest /= ranges[r].values.size();
    }
  }
  // Validate every tuple up front so a typo fails before any work.
  for (const auto& t : tuples) {
    RunConfig sub = cfg;
    sub.command = cfg.over;
    sub.params = t;
    sub.over.clear();
    sub.ranges.clear();
    sub.out_dir.clear();
    sub.resume = false;
    validate(sub);
  }

  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create '" + cfg.out_dir + "': " + ec.message());

  std::map<std::string, int> previous;  // file -> exit code
  if (cfg.resume && fs::exists(dir / "index.json")) {
    const auto old = read_json_file((dir / "index.json").string());
    for (const auto& e : old.at("entries"))
      if (fs::exists(dir / e.at("file").get<std::string>()))
        previous[e.at("file").get<std::string>()] = e.at("exit_code").get<int>();
  }

  struct Entry {
    int exit_code = 0;
    bool reused = false;
    std::string diagnostic;
  };
  const auto entries = parallel_map<Entry>(total, cfg.jobs, [&](std::size_t k) {
    const auto file = tuple_file(cfg.over, tuples[k], ranges);
    if (const auto it = previous.find(file); it != previous.end()) return Entry{it->second, true, ""};
    RunConfig sub = cfg;
    sub.command = cfg.over;
    sub.params = tuples[k];
    sub.seed = derive_seed(cfg.seed, k);
    sub.jobs = 1;
    sub.over.clear();
    sub.ranges.clear();
    sub.out_dir.clear();
    sub.resume = false;
    const auto res = run(sub);
    std::ofstream out(dir / file, std::ios::binary);
    out << (res.output.empty() ? dump({{"error", res.diagnostic}}) : res.output);
    if (!out) throw Error("cannot write '" + (dir / file).string() + "'");
    return Entry{res.exit_code, false, res.diagnostic};
  });

  json index = {{"command", "sweep"}, {"over", cfg.over}, {"seed", cfg.seed}, {"ranges", cfg.ranges}};
  json list = json::array();
  int worst = 0;
  int failed = 0;
  for (std::size_t k = 0; k < total; ++k) {
    json params = json::object();
    for (const auto& [name, v] : tuples[k]) params[name] = v;
    list.push_back({{"params", params},
                    {"seed", derive_seed(cfg.seed, k)},
                    {"file", tuple_file(cfg.over, tuples[k], ranges)},
                    {"exit_code", entries[k].exit_code}});
    worst = std::max(worst, entries[k].exit_code);
    if (entries[k].exit_code != 0) ++failed;
  }
  index["entries"] = list;
  index["tuples"] = total;
  index["failed"] = failed;
  const std::string text = dump(index);
  std::ofstream out(dir / "index.json", std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write index.json");
  return {worst, text, failed ? std::to_string(failed) + " tuple(s) exited nonzero" : ""};
}

}  // namespace detail

inline RunResult run(const RunConfig& cfg) {
  try {
    validate(cfg);
    if (cfg.command == "sweep") return detail::sweep(cfg);
    const std::string prime = resolved_prime(cfg);
    if (prime == "rational") return detail::dispatch(RationalField{}, cfg);
    std::uint64_t p = 0;
    try {
      std::size_t used = 0;
      p = std::stoull(prime, &used);
      if (used != prime.size() || p > UINT32_MAX) throw std::invalid_argument(prime);
    } catch (const std::exception&) {
      throw UsageError("--prime must be a prime number or 'rational'");
    }
    std::optional<PrimeField> F;
    try {
      F.emplace(static_cast<std::uint32_t>(p));
    } catch (const Error& e) {
      throw UsageError(std::string("--prime: ") + e.what());
    }
    return detail::dispatch(*F, cfg);
  } catch (const CheckFailure& e) {
    return {1, "", e.what()};
  } catch (const Error& e) {
    return {2, "", e.what()};
  }
}

}  // namespace quadgon::cli
