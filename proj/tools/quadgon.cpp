// quadgon command-line tool.  Argument parsing only; all work happens in
// quadgon::cli::run.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadgon/cli.hpp"

namespace {

const std::map<std::string, std::string> kSummaries = {
    {"hilbert", "h0/h1 of the ideal of random fat and reduced points in bidegree (a, b)"},
    {"member", "a random form of bidegree (a, b) through a random scheme"},
    {"position", "maximal incidences of points with lines and (1,1), (2,1), (1,2) curves"},
    {"peel-e4", "peeling certificate for n points in bidegree (u, v)"},
    {"peel-g4", "peeling certificate for S and B with u = v = 3 alpha + beta"},
    {"check-cert", "replay a certificate from --input"},
    {"curve", "certified nodal curve of bidegree (a, b) with x nodes"},
    {"tangent-curve", "nodal curve with two extra ruling tangencies"},
    {"bounds", "gonality bounds d3, d4 for (a, m, x)"},
    {"sample-d4", "sample h1 vanishing behind the d4 lower bound"},
    {"genus-cover", "write g as (a-1)^2 - x with 0 <= x <= 2a-4"},
    {"asymptotics", "exact intervals for d4/d3 and (d4/4 - d3/3)/sqrt(g) up to a_max"},
    {"sweep", "run a command over a cartesian product of parameter ranges"},
};

std::map<std::string, long long> parse_sets(const std::vector<std::string>& sets) {
  std::map<std::string, long long> out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw quadgon::cli::UsageError("--set must look like name=value");
    out[s.substr(0, eq)] = quadgon::cli::detail::parse_int(s.substr(eq + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using quadgon::cli::RunConfig;
  CLI::App app{"Exact computations for nodal curves on P1 x P1 and their gonality bounds"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--prime", cfg.prime,
                 "Field: an odd prime below 2^31 or 'rational' (default $QUADGON_PRIME, else 65537)");
  app.add_option("--seed", cfg.seed, "Master seed for every random draw")->capture_default_str();
  app.add_option("--output,-o", cfg.output, "Write the report here instead of stdout");
  app.add_option("--format", cfg.format, "json or csv")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Trials for sample-d4")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads for sample-d4 and sweep")->capture_default_str();

  std::map<std::string, std::map<std::string, std::optional<long long>>> values;
  std::vector<std::string> sets;
  for (const auto& spec : quadgon::cli::commands()) {
    auto* sub = app.add_subcommand(spec.name, kSummaries.at(spec.name));
    auto& slot = values[spec.name];
    for (const auto& p : spec.params) sub->add_option("--" + p.name, slot[p.name]);
    if (spec.input) sub->add_option("--input", cfg.input, "JSON input file");
    if (spec.name == "sweep") {
      sub->add_option("--over", cfg.over, "Command to run for every tuple")->required();
      sub->add_option("--range", cfg.ranges, "name=lo:hi[:step] or name=v1,v2,... (repeatable)")->required();
      sub->add_option("--set", sets, "Fixed parameter name=value (repeatable)");
      sub->add_option("--out-dir", cfg.out_dir, "Directory for per-tuple reports and index.json")->required();
      sub->add_flag("--resume", cfg.resume, "Keep reports already listed in index.json");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  for (const auto& [name, v] : values[cfg.command])
    if (v) cfg.params[name] = *v;
  try {
    for (const auto& [name, v] : parse_sets(sets)) cfg.params[name] = v;
  } catch (const std::exception& e) {
    std::cerr << "quadgon: " << e.what() << "\n";
    return 2;
  }

  const auto res = quadgon::cli::run(cfg);
  if (!res.output.empty()) {
    if (cfg.output.empty() || cfg.output == "-") {
      std::cout << res.output;
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      out << res.output;
      if (!out) {
        std::cerr << "quadgon: cannot write '" << cfg.output << "'\n";
        return 2;
      }
    }
  }
  if (!res.diagnostic.empty()) std::cerr << "quadgon: " << res.diagnostic << "\n";
  return res.exit_code;
}
