#include "levykit/levykit.h"

#include <cstring>
#include <string>

#include "core/commands.hpp"
#include "core/io.hpp"
#include "core/secondq.hpp"

using namespace levykit;

struct lvk_triplet {
  LevyTriplet value;
};
struct lvk_lattice {
  LatticeMeasure value;
};
struct lvk_scenario {
  Scenario value;
};
struct lvk_poly {
  SpatialPoly value;
};

namespace {

thread_local std::string g_last_error;

lvk_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return LVK_ERR_INVALID_ARGUMENT;
    case ErrorCode::dimension_mismatch: return LVK_ERR_DIMENSION_MISMATCH;
    case ErrorCode::parse: return LVK_ERR_PARSE;
    case ErrorCode::precondition: return LVK_ERR_PRECONDITION;
    case ErrorCode::not_skew_gaussian: return LVK_ERR_NOT_SKEW_GAUSSIAN;
    case ErrorCode::not_skew_jump: return LVK_ERR_NOT_SKEW_JUMP;
    case ErrorCode::io: return LVK_ERR_IO;
    case ErrorCode::unsupported: return LVK_ERR_UNSUPPORTED;
  }
  return LVK_ERR_INTERNAL;
}

template <typename Fn>
lvk_status guarded(Fn&& fn) {
  try {
    fn();
    return LVK_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LVK_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LVK_ERR_INTERNAL;
  }
}

lvk_status arg_error(const char* message) {
  g_last_error = message;
  return LVK_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Eigen::MatrixXd matrix_from(const double* data, int rows, int cols) {
  require(data != nullptr && rows >= 1 && cols >= 1, ErrorCode::invalid_argument,
          "matrix pointer/shape invalid");
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) m(i, k) = data[i * cols + k];
  }
  return m;
}

RunConfig config_from(const lvk_config* cfg) {
  RunConfig rc;
  if (cfg != nullptr) {
    rc.seed = cfg->seed;
    rc.mc_samples = cfg->mc_samples;
    rc.horizon = cfg->horizon;
    rc.exact_tol = cfg->exact_tol;
    rc.mc_sigma = cfg->mc_sigma;
    rc.workers = cfg->workers;
  }
  rc.validate();
  return rc;
}

EvalMode mode_from(const char* mode) {
  require(mode != nullptr, ErrorCode::invalid_argument, "mode must be given");
  const std::string m(mode);
  if (m == "exact") return EvalMode::exact;
  if (m == "mc") return EvalMode::mc;
  fail(ErrorCode::invalid_argument, "mode must be \"exact\" or \"mc\", got \"" + m + "\"");
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (k > 0) out += ',';
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", m(i, k));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace

extern "C" {

const char* lvk_status_name(lvk_status status) {
  switch (status) {
    case LVK_OK: return "LVK_OK";
    case LVK_ERR_INVALID_ARGUMENT: return "LVK_ERR_INVALID_ARGUMENT";
    case LVK_ERR_DIMENSION_MISMATCH: return "LVK_ERR_DIMENSION_MISMATCH";
    case LVK_ERR_PARSE: return "LVK_ERR_PARSE";
    case LVK_ERR_PRECONDITION: return "LVK_ERR_PRECONDITION";
    case LVK_ERR_NOT_SKEW_GAUSSIAN: return "LVK_ERR_NOT_SKEW_GAUSSIAN";
    case LVK_ERR_NOT_SKEW_JUMP: return "LVK_ERR_NOT_SKEW_JUMP";
    case LVK_ERR_IO: return "LVK_ERR_IO";
    case LVK_ERR_UNSUPPORTED: return "LVK_ERR_UNSUPPORTED";
    case LVK_ERR_INTERNAL: return "LVK_ERR_INTERNAL";
  }
  return "LVK_ERR_INTERNAL";
}

const char* lvk_last_error(void) { return g_last_error.c_str(); }

const char* lvk_version(void) { return "0.1.0"; }

void lvk_string_free(char* s) { delete[] s; }

lvk_config lvk_config_default(void) {
  const RunConfig rc;
  lvk_config cfg;
  cfg.seed = rc.seed;
  cfg.mc_samples = rc.mc_samples;
  cfg.horizon = rc.horizon;
  cfg.exact_tol = rc.exact_tol;
  cfg.mc_sigma = rc.mc_sigma;
  cfg.workers = rc.workers;
  return cfg;
}

/* ---------------- triplets ---------------- */

lvk_status lvk_triplet_from_json(const char* json, lvk_triplet** out) {
  if (json == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] { *out = new lvk_triplet{triplet_from_json(parse_json(json))}; });
}

lvk_status lvk_triplet_to_json(const lvk_triplet* t, char** json_out) {
  if (t == nullptr || json_out == nullptr) return arg_error("null argument");
  return guarded([&] { *json_out = dup_string(triplet_to_json(t->value).dump(2)); });
}

void lvk_triplet_free(lvk_triplet* t) { delete t; }

lvk_status lvk_triplet_dim(const lvk_triplet* t, int* dim_out) {
  if (t == nullptr || dim_out == nullptr) return arg_error("null argument");
  *dim_out = t->value.dim();
  return LVK_OK;
}

lvk_status lvk_char_exponent(const lvk_triplet* t, const double* u, int dim,
                             double* re_out, double* im_out) {
  if (t == nullptr || u == nullptr || re_out == nullptr || im_out == nullptr) {
    return arg_error("null argument");
  }
  return guarded([&] {
    const auto psi =
        char_exponent(t->value, Eigen::Map<const Eigen::VectorXd>(u, dim));
    *re_out = psi.real();
    *im_out = psi.imag();
  });
}

lvk_status lvk_convolve(const lvk_triplet* a, const lvk_triplet* b, lvk_triplet** out) {
  if (a == nullptr || b == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] { *out = new lvk_triplet{convolve(a->value, b->value)}; });
}

lvk_status lvk_pushforward(const double* t_map, int rows, int cols, const lvk_triplet* t,
                           lvk_triplet** out) {
  if (t == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] {
    *out = new lvk_triplet{pushforward(matrix_from(t_map, rows, cols), t->value)};
  });
}

lvk_status lvk_cumulants(const lvk_triplet* t, const double* u, int dim, int n_max,
                         double* kappa_out) {
  if (t == nullptr || u == nullptr || kappa_out == nullptr) return arg_error("null argument");
  return guarded([&] {
    const auto kappa =
        cumulants(t->value, Eigen::Map<const Eigen::VectorXd>(u, dim), n_max);
    for (std::size_t i = 0; i < kappa.size(); ++i) kappa_out[i] = kappa[i];
  });
}

lvk_status lvk_skew_solve(const double* t_map, int rows, int cols, const lvk_triplet* t1,
                          const lvk_triplet* t2, lvk_triplet** rho_out,
                          char** report_json_out) {
  if (t1 == nullptr || t2 == nullptr) return arg_error("null argument");
  lvk_status solve_status = LVK_OK;
  const lvk_status status = guarded([&] {
    const SkewResult result =
        skew_solve(matrix_from(t_map, rows, cols), t1->value, t2->value);
    if (report_json_out != nullptr) {
      RunConfig rc;
      *report_json_out =
          dup_string(cmd_skew(matrix_from(t_map, rows, cols), t1->value, t2->value, rc)
                         .dump(2));
    }
    if (result.ok()) {
      if (rho_out != nullptr) *rho_out = new lvk_triplet{result.solution->rho};
    } else {
      g_last_error = result.failure->message;
      solve_status = status_of(result.failure->code);
    }
  });
  return status != LVK_OK ? status : solve_status;
}

lvk_status lvk_skew_report(const double* t_map, int rows, int cols, const lvk_triplet* t1,
                           const lvk_triplet* t2, const lvk_config* cfg,
                           char** report_json_out) {
  if (t1 == nullptr || t2 == nullptr || report_json_out == nullptr) {
    return arg_error("null argument");
  }
  return guarded([&] {
    *report_json_out = dup_string(
        cmd_skew(matrix_from(t_map, rows, cols), t1->value, t2->value, config_from(cfg))
            .dump(2));
  });
}

/* ---------------- lattice ---------------- */

lvk_status lvk_lattice_from_json(const char* json, lvk_lattice** out) {
  if (json == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] { *out = new lvk_lattice{lattice_from_json(parse_json(json))}; });
}

lvk_status lvk_lattice_to_json(const lvk_lattice* m, char** json_out) {
  if (m == nullptr || json_out == nullptr) return arg_error("null argument");
  return guarded([&] { *json_out = dup_string(lattice_to_json(m->value).dump(2)); });
}

void lvk_lattice_free(lvk_lattice* m) { delete m; }

lvk_status lvk_lattice_convolve(const lvk_lattice* a, const lvk_lattice* b,
                                lvk_lattice** out) {
  if (a == nullptr || b == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] { *out = new lvk_lattice{lconvolve(a->value, b->value)}; });
}

lvk_status lvk_lattice_power(const lvk_lattice* a, unsigned k, lvk_lattice** out) {
  if (a == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] { *out = new lvk_lattice{lpower(a->value, k)}; });
}

lvk_status lvk_lattice_exp(const lvk_lattice* nu, int horizon, lvk_lattice** out) {
  if (nu == nullptr || out == nullptr) return arg_error("null argument");
  if (horizon < 0) return arg_error("horizon must be >= 0");
  return guarded([&] {
    *out = new lvk_lattice{exp_measure(nu->value, static_cast<std::size_t>(horizon))};
  });
}

lvk_status lvk_lattice_levy_from_distribution(const lvk_lattice* r, int horizon,
                                              lvk_lattice** out) {
  if (r == nullptr || out == nullptr) return arg_error("null argument");
  if (horizon < 0) return arg_error("horizon must be >= 0");
  return guarded([&] {
    *out = new lvk_lattice{
        levy_from_distribution(r->value, static_cast<std::size_t>(horizon))};
  });
}

lvk_status lvk_lattice_id_test(const lvk_lattice* r, int horizon,
                               char** verdict_json_out) {
  if (r == nullptr || verdict_json_out == nullptr) return arg_error("null argument");
  if (horizon < 0) return arg_error("horizon must be >= 0");
  return guarded([&] {
    const IDVerdict v =
        is_infinitely_divisible(r->value, static_cast<std::size_t>(horizon));
    *verdict_json_out = dup_string(verdict_to_json(v).dump(2));
  });
}

lvk_status lvk_rosinski_report(const lvk_config* cfg, char** report_json_out) {
  if (report_json_out == nullptr) return arg_error("null argument");
  return guarded(
      [&] { *report_json_out = dup_string(cmd_rosinski(config_from(cfg)).dump(2)); });
}

lvk_status lvk_idtest_report(const lvk_lattice* law, const lvk_config* cfg,
                             char** report_json_out) {
  if (law == nullptr || report_json_out == nullptr) return arg_error("null argument");
  return guarded([&] {
    *report_json_out = dup_string(cmd_idtest(law->value, config_from(cfg)).dump(2));
  });
}

/* ---------------- sampling ---------------- */

lvk_status lvk_sample_id(const lvk_triplet* t, uint64_t seed, size_t n, int workers,
                         double* out) {
  if (t == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] {
    const SampleBatch batch = sample_id(t->value, seed, n, workers);
    std::memcpy(out, batch.data.data(), batch.data.size() * sizeof(double));
  });
}

lvk_status lvk_sample_csv(const lvk_triplet* t, uint64_t seed, size_t n, int workers,
                          const char* path) {
  if (t == nullptr || path == nullptr) return arg_error("null argument");
  return guarded([&] {
    const SampleBatch batch = sample_id(t->value, seed, n, workers);
    write_file(path, batch_to_csv(batch));
  });
}

lvk_status lvk_empirical_char(const double* batch, size_t n, int dim, const double* u,
                              double* re_out, double* im_out, double* se_out) {
  if (batch == nullptr || u == nullptr || re_out == nullptr || im_out == nullptr) {
    return arg_error("null argument");
  }
  return guarded([&] {
    SampleBatch b;
    b.dim = dim;
    b.count = n;
    b.data.assign(batch, batch + n * static_cast<std::size_t>(dim));
    const EmpiricalChar ec = empirical_char(b, Eigen::Map<const Eigen::VectorXd>(u, dim));
    *re_out = ec.value.real();
    *im_out = ec.value.imag();
    if (se_out != nullptr) *se_out = ec.se;
  });
}

/* ---------------- scenarios ---------------- */

lvk_status lvk_scenario_from_json(const char* json, lvk_scenario** out) {
  if (json == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] { *out = new lvk_scenario{scenario_from_json(parse_json(json))}; });
}

lvk_status lvk_scenario_to_json(const lvk_scenario* sc, char** json_out) {
  if (sc == nullptr || json_out == nullptr) return arg_error("null argument");
  return guarded([&] { *json_out = dup_string(scenario_to_json(sc->value).dump(2)); });
}

void lvk_scenario_free(lvk_scenario* sc) { delete sc; }

lvk_status lvk_scenario_builtin(const char* name, lvk_scenario** out) {
  if (name == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] {
    const std::string n(name);
    if (n == "identity") {
      *out = new lvk_scenario{scenario_identity()};
    } else if (n == "mehler") {
      *out = new lvk_scenario{scenario_mehler()};
    } else if (n == "rank-deficient") {
      *out = new lvk_scenario{scenario_rank_deficient()};
    } else {
      fail(ErrorCode::invalid_argument,
           "unknown scenario \"" + n + "\"; known: identity, mehler, rank-deficient");
    }
  });
}

lvk_status lvk_scenario_export_operators(const lvk_scenario* sc, const char* gaussian_csv,
                                         const char* poisson_csv) {
  if (sc == nullptr || gaussian_csv == nullptr || poisson_csv == nullptr) {
    return arg_error("null argument");
  }
  return guarded([&] {
    write_file(gaussian_csv, matrix_csv(sc->value.pair.gaussian_block));
    write_file(poisson_csv, matrix_csv(sc->value.pair.poisson_block));
  });
}

lvk_status lvk_poly_from_json(const char* json, lvk_poly** out) {
  if (json == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] { *out = new lvk_poly{spatial_poly_from_json(parse_json(json))}; });
}

lvk_status lvk_poly_to_json(const lvk_poly* f, char** json_out) {
  if (f == nullptr || json_out == nullptr) return arg_error("null argument");
  return guarded([&] { *json_out = dup_string(spatial_poly_to_json(f->value).dump(2)); });
}

void lvk_poly_free(lvk_poly* f) { delete f; }

lvk_status lvk_apply_pt(const lvk_scenario* sc, const lvk_poly* f, lvk_poly** out) {
  if (sc == nullptr || f == nullptr || out == nullptr) return arg_error("null argument");
  return guarded([&] {
    *out = new lvk_poly{
        apply_pt_exact(f->value, sc->value.t_map, sc->value.solution.rho)};
  });
}

lvk_status lvk_verify_report(const lvk_scenario* sc, const lvk_poly* f, int max_level,
                             const char* mode, const lvk_config* cfg,
                             char** report_json_out) {
  if (sc == nullptr || f == nullptr || report_json_out == nullptr) {
    return arg_error("null argument");
  }
  return guarded([&] {
    const int level = max_level < 0 ? f->value.degree() : max_level;
    *report_json_out = dup_string(
        cmd_verify(sc->value, f->value, level, mode_from(mode), config_from(cfg)).dump(2));
  });
}

lvk_status lvk_diagram_report(const lvk_scenario* sc, const lvk_poly* f, int max_level,
                              const char* mode, const lvk_config* cfg,
                              char** report_json_out) {
  if (sc == nullptr || f == nullptr || report_json_out == nullptr) {
    return arg_error("null argument");
  }
  return guarded([&] {
    const int level = max_level < 0 ? f->value.degree() : max_level;
    *report_json_out = dup_string(
        cmd_diagram_check(sc->value, f->value, level, mode_from(mode), config_from(cfg))
            .dump(2));
  });
}

lvk_status lvk_report_pass(const char* report_json, int* pass_out) {
  if (report_json == nullptr || pass_out == nullptr) return arg_error("null argument");
  return guarded([&] { *pass_out = report_pass(parse_json(report_json)) ? 1 : 0; });
}

} /* extern "C" */
