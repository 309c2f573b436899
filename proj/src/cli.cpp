#include "qecengine/cli.hpp"

#include "qecengine/validation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace qecengine {

namespace {

struct PointFlags {
  std::string code = "classical3";
  double p = 0.25;
  double z_re = 0.0;
  double z_im = 0.0;
  std::optional<double> f;
  std::optional<double> beta;
  double gamma = 0.01;
  double omega_s = 1.0;
  double omega_a = 1.0;
  bool no_entropy = false;
};

void add_point_flags(CLI::App& cmd, PointFlags& flags) {
  cmd.add_option("--code", flags.code, "classical3 or shor9")->check(CLI::IsMember({"classical3", "shor9"}));
  cmd.add_option("--p", flags.p, "excited-state population of the input")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--z-re", flags.z_re, "real part of the coherence parameter z");
  cmd.add_option("--z-im", flags.z_im, "imaginary part of the coherence parameter z");
  auto* f = cmd.add_option("--f", flags.f, "hot-bath excited-state probability at the system gap");
  auto* beta = cmd.add_option("--beta", flags.beta, "hot-bath inverse temperature");
  f->excludes(beta);
  cmd.add_option("--gamma", flags.gamma, "noise strength")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--omega-s", flags.omega_s, "system gap Omega")->check(CLI::PositiveNumber);
  cmd.add_option("--omega-a", flags.omega_a, "ancilla gap omega")->check(CLI::PositiveNumber);
  cmd.add_flag("--no-entropy", flags.no_entropy, "skip the entropy budget");
}

SweepConfig config_from(const PointFlags& flags) {
  SweepConfig c;
  c.code = parse_code_kind(flags.code);
  c.p = {flags.p};
  c.z_re = {flags.z_re};
  c.z_im = {flags.z_im};
  if (flags.beta) {
    c.beta = {*flags.beta};
  } else {
    c.f = {flags.f.value_or(0.2)};
  }
  c.gamma = {flags.gamma};
  c.omega_system = flags.omega_s;
  c.omega_ancilla = flags.omega_a;
  c.with_entropy = !flags.no_entropy;
  return c;
}

// Writes to --out when given, otherwise to `out`.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

void write_rows(const std::vector<PointReport>& rows, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    write_csv(os, rows);
    return;
  }
  nlohmann::json j;
  j["schema"] = std::string(kSweepSchema);
  j["points"] = nlohmann::json::array();
  for (const auto& r : rows) j["points"].push_back(to_json(r));
  os << j.dump(2) << '\n';
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermodynamics of quantum error-correcting engines"};
  app.require_subcommand(1, 1);

  PointFlags point;
  std::string out_path;
  std::string format;

  auto* run = app.add_subcommand("run", "simulate one cycle and print its ledger");
  add_point_flags(*run, point);
  run->add_option("--out", out_path, "output file (default: stdout)");
  run->add_option("--format", format, "json (default) or csv")->check(CLI::IsMember({"csv", "json"}));

  std::string grid_spec;
  std::size_t jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "simulate a parameter grid");
  add_point_flags(*sweep, point);
  sweep->add_option("--grid-spec", grid_spec, "axes, e.g. \"p=0.1,0.5;gamma=1e-3:1e-2:5:log\" or \"bloch=9x16\"");
  sweep->add_option("--out", out_path, "output file (default: stdout)");
  sweep->add_option("--format", format, "csv (default) or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  ValidationOptions vopt;
  std::vector<std::string> only;
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  validate->add_option("--seed", vopt.seed, "seed for randomized samples");
  validate->add_option("--jobs", vopt.jobs, "worker threads")->check(CLI::PositiveNumber);
  validate->add_option("--samples", vopt.random_samples, "randomized samples per code")->check(CLI::PositiveNumber);
  validate->add_option("--only", only, "criteria to run, e.g. AC-1,AC-7")->delimiter(',');
  validate->add_option("--perturb-gad", vopt.gad_perturbation)->group("");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (run->parsed()) {
      const SweepConfig config = config_from(point);
      config.validate();
      const CodeSpec code = make_code(config.code, config.omega_system, config.omega_ancilla);
      const std::vector<SweepPoint> points = expand_grid(config);
      const PointReport report = evaluate_point(code, points.front(), config.with_entropy);
      emit(out_path, out, [&](std::ostream& os) {
        if (format == "csv") {
          write_csv(os, std::span<const PointReport>(&report, 1));
        } else {
          os << to_json(report).dump(2) << '\n';
        }
      });
      return exit_code::ok;
    }

    if (sweep->parsed()) {
      SweepConfig config = config_from(point);
      config.jobs = jobs;
      apply_grid_spec(config, grid_spec);
      const std::vector<PointReport> rows = run_sweep(config);
      if (rows.empty()) throw std::invalid_argument("sweep: empty grid");
      emit(out_path, out, [&](std::ostream& os) { write_rows(rows, format.empty() ? "csv" : format, os); });
      return exit_code::ok;
    }

    const std::vector<CriterionResult> results = run_validation(vopt, only);
    std::size_t passed = 0;
    for (const CriterionResult& r : results) {
      out << format_result_line(r) << '\n';
      for (const auto& d : r.details) out << "    " << d << '\n';
      for (const auto& n : r.notices) out << "    notice: " << n << '\n';
      if (r.passed) ++passed;
    }
    out << passed << "/" << results.size() << " criteria passed\n";
    if (passed != results.size()) {
      err << "failed:";
      for (const CriterionResult& r : results)
        if (!r.passed) err << ' ' << r.id;
      err << '\n';
      return exit_code::validation_failed;
    }
    return exit_code::ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
}

}  // namespace qecengine
