// levykit command line: reproducible runs of the toolkit through the C API.
//
// Subcommands: rosinski, idtest, skew, sample, verify, diagram-check.
// Reports go to stdout or --out; the exit code is 0 iff every check in the
// emitted report passed. Flags can be overridden by APP_* environment
// variables (APP_SEED, APP_N, APP_WORKERS, ...).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "levykit/levykit.h"

namespace {

struct StringDeleter {
  void operator()(char* s) const { lvk_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

[[noreturn]] void die(const std::string& context, lvk_status status) {
  std::cerr << "error: " << context << ": " << lvk_status_name(status) << ": "
            << lvk_last_error() << "\n";
  std::exit(2);
}

std::string read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(2);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out.good()) {
    std::cerr << "error: cannot write " << out_path << "\n";
    std::exit(2);
  }
  out << report;
}

int finish(const std::string& report, const std::string& out_path) {
  emit(report, out_path);
  int pass = 0;
  if (lvk_report_pass(report.c_str(), &pass) != LVK_OK) return 2;
  return pass ? 0 : 1;
}

// Parses a 2D JSON array into a row-major buffer.
bool parse_matrix(const std::string& text, std::vector<double>& data, int& rows,
                  int& cols) {
  data.clear();
  rows = 0;
  cols = 0;
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) return false;
  rows = static_cast<int>(j.size());
  cols = static_cast<int>(j[0].size());
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != cols) return false;
    for (const auto& v : row) {
      if (!v.is_number()) return false;
      data.push_back(v.get<double>());
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levykit: calculus, sampling and chaos verification for infinitely "
               "divisible laws"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  lvk_config cfg = lvk_config_default();
  std::uint64_t seed = cfg.seed;
  std::size_t mc_samples = cfg.mc_samples;
  int horizon = cfg.horizon;
  int workers = cfg.workers;
  std::string mode = "exact";
  std::string out_path;

  app.add_option("--seed", seed, "master RNG seed")->envname("APP_SEED");
  app.add_option("--n", mc_samples, "Monte-Carlo sample count")->envname("APP_N");
  auto* horizon_opt =
      app.add_option("--N", horizon, "lattice / expansion horizon")->envname("APP_HORIZON");
  app.add_option("--workers", workers, "worker count for sampling")->envname("APP_WORKERS");
  app.add_option("--mode", mode, "evaluation mode: exact or mc")
      ->envname("APP_MODE")
      ->check(CLI::IsMember({"exact", "mc"}));
  app.add_option("--out", out_path, "write the report/CSV here instead of stdout")
      ->envname("APP_OUT");

  auto* rosinski = app.add_subcommand("rosinski", "run the lattice counterexample end to end");

  auto* idtest = app.add_subcommand("idtest", "infinite-divisibility test for a lattice law");
  std::string measure_path;
  idtest->add_option("--measure", measure_path, "lattice measure JSON file")->required();

  auto* skew = app.add_subcommand("skew", "solve T(lambda1) * rho = lambda2");
  std::string t_path, t1_path, t2_path;
  skew->add_option("--T", t_path, "matrix JSON file ([[...]])")->required();
  skew->add_option("--t1", t1_path, "triplet JSON file for lambda1")->required();
  skew->add_option("--t2", t2_path, "triplet JSON file for lambda2")->required();

  auto* sample = app.add_subcommand("sample", "draw samples of an ID law to CSV");
  std::string triplet_path;
  sample->add_option("--triplet", triplet_path, "triplet JSON file")->required();

  auto* verify = app.add_subcommand("verify", "full verification battery on a scenario");
  auto* diagram = app.add_subcommand("diagram-check", "diagram checks on a scenario");
  std::string scenario_path, scenario_name, f_path, export_prefix;
  for (CLI::App* cmd : {verify, diagram}) {
    cmd->add_option("--scenario", scenario_path, "scenario JSON file");
    cmd->add_option("--builtin", scenario_name,
                    "builtin scenario: identity, mehler, rank-deficient");
    cmd->add_option("--f", f_path, "spatial polynomial JSON file")->required();
  }
  diagram->add_option("--export-ops", export_prefix,
                      "write contraction blocks to <prefix>_gaussian.csv / _poisson.csv");

  CLI11_PARSE(app, argc, argv);

  cfg.seed = seed;
  cfg.mc_samples = mc_samples;
  cfg.horizon = horizon;
  cfg.workers = workers;

  if (rosinski->parsed()) {
    CString report;
    char* raw = nullptr;
    if (auto st = lvk_rosinski_report(&cfg, &raw); st != LVK_OK) die("rosinski", st);
    report.reset(raw);
    return finish(report.get(), out_path);
  }

  if (idtest->parsed()) {
    lvk_lattice* law = nullptr;
    if (auto st = lvk_lattice_from_json(read_file_or_die(measure_path).c_str(), &law);
        st != LVK_OK) {
      die("parsing " + measure_path, st);
    }
    char* raw = nullptr;
    const auto st = lvk_idtest_report(law, &cfg, &raw);
    lvk_lattice_free(law);
    if (st != LVK_OK) die("idtest", st);
    CString report(raw);
    return finish(report.get(), out_path);
  }

  if (skew->parsed()) {
    std::vector<double> t_data;
    int rows = 0, cols = 0;
    if (!parse_matrix(read_file_or_die(t_path), t_data, rows, cols)) {
      std::cerr << "error: " << t_path << " is not a JSON matrix [[...]]\n";
      return 2;
    }
    lvk_triplet* t1 = nullptr;
    lvk_triplet* t2 = nullptr;
    if (auto st = lvk_triplet_from_json(read_file_or_die(t1_path).c_str(), &t1);
        st != LVK_OK) {
      die("parsing " + t1_path, st);
    }
    if (auto st = lvk_triplet_from_json(read_file_or_die(t2_path).c_str(), &t2);
        st != LVK_OK) {
      die("parsing " + t2_path, st);
    }
    char* raw = nullptr;
    const auto st = lvk_skew_report(t_data.data(), rows, cols, t1, t2, &cfg, &raw);
    lvk_triplet_free(t1);
    lvk_triplet_free(t2);
    if (st != LVK_OK) die("skew", st);
    CString report(raw);
    return finish(report.get(), out_path);
  }

  if (sample->parsed()) {
    if (out_path.empty()) {
      std::cerr << "error: sample requires --out <csv path>\n";
      return 2;
    }
    lvk_triplet* t = nullptr;
    if (auto st = lvk_triplet_from_json(read_file_or_die(triplet_path).c_str(), &t);
        st != LVK_OK) {
      die("parsing " + triplet_path, st);
    }
    const auto st = lvk_sample_csv(t, cfg.seed, cfg.mc_samples, cfg.workers,
                                   out_path.c_str());
    lvk_triplet_free(t);
    if (st != LVK_OK) die("sample", st);
    return 0;
  }

  // verify / diagram-check
  lvk_scenario* sc = nullptr;
  if (!scenario_path.empty()) {
    if (auto st = lvk_scenario_from_json(read_file_or_die(scenario_path).c_str(), &sc);
        st != LVK_OK) {
      die("parsing " + scenario_path, st);
    }
  } else if (!scenario_name.empty()) {
    if (auto st = lvk_scenario_builtin(scenario_name.c_str(), &sc); st != LVK_OK) {
      die("scenario " + scenario_name, st);
    }
  } else {
    std::cerr << "error: give --scenario <file> or --builtin <name>\n";
    return 2;
  }
  lvk_poly* f = nullptr;
  if (auto st = lvk_poly_from_json(read_file_or_die(f_path).c_str(), &f); st != LVK_OK) {
    lvk_scenario_free(sc);
    die("parsing " + f_path, st);
  }

  // Without an explicit --N the expansion horizon defaults to deg f.
  const int max_level = horizon_opt->count() > 0 ? horizon : -1;
  char* raw = nullptr;
  lvk_status st = LVK_OK;
  if (verify->parsed()) {
    st = lvk_verify_report(sc, f, max_level, mode.c_str(), &cfg, &raw);
  } else {
    if (!export_prefix.empty()) {
      const std::string g_csv = export_prefix + "_gaussian.csv";
      const std::string p_csv = export_prefix + "_poisson.csv";
      if (auto est = lvk_scenario_export_operators(sc, g_csv.c_str(), p_csv.c_str());
          est != LVK_OK) {
        die("export-ops", est);
      }
    }
    st = lvk_diagram_report(sc, f, max_level, mode.c_str(), &cfg, &raw);
  }
  lvk_poly_free(f);
  lvk_scenario_free(sc);
  if (st != LVK_OK) die("verify", st);
  CString report(raw);
  return finish(report.get(), out_path);
}
