#include "core/io.hpp"

#include <fstream>
#include <sstream>

namespace levykit {

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  require(it != j.end(), ErrorCode::parse, where + ": missing field '" + name + "'");
  return *it;
}

double number_at(const Json& j, const std::string& where) {
  require(j.is_number(), ErrorCode::parse, where + ": expected a number");
  return j.get<double>();
}

Eigen::VectorXd vector_from_json(const Json& j, const std::string& where) {
  require(j.is_array(), ErrorCode::parse, where + ": expected an array");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number_at(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

Exponents exponents_from_json(const Json& j, std::size_t arity, const std::string& where) {
  require(j.is_array() && j.size() == arity, ErrorCode::parse,
          where + ": expected an array of " + std::to_string(arity) + " exponents");
  Exponents e(arity, 0);
  for (std::size_t i = 0; i < arity; ++i) {
    require(j[i].is_number_integer() && j[i].get<int>() >= 0, ErrorCode::parse,
            where + "[" + std::to_string(i) + "]: exponents are nonnegative integers");
    e[i] = static_cast<std::uint8_t>(j[i].get<int>());
  }
  return e;
}

}  // namespace

Json triplet_to_json(const LevyTriplet& t) {
  Json j;
  j["dim"] = t.dim();
  j["drift"] = Json::array();
  for (int i = 0; i < t.dim(); ++i) j["drift"].push_back(t.drift()(i));
  j["cov"] = matrix_to_json(t.gaussian_cov());
  j["atoms"] = Json::array();
  for (const auto& a : t.jumps().atoms()) {
    Json atom;
    atom["x"] = Json::array();
    for (int i = 0; i < t.dim(); ++i) atom["x"].push_back(a.point(i));
    atom["w"] = a.weight;
    j["atoms"].push_back(std::move(atom));
  }
  return j;
}

LevyTriplet triplet_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::parse, "triplet: expected an object");
  const auto& dim_j = field(j, "dim", "triplet");
  require(dim_j.is_number_integer() && dim_j.get<int>() >= 1, ErrorCode::parse,
          "triplet.dim: expected a positive integer");
  const int d = dim_j.get<int>();

  Eigen::VectorXd drift = vector_from_json(field(j, "drift", "triplet"), "triplet.drift");
  require(drift.size() == d, ErrorCode::parse,
          "triplet.drift: expected " + std::to_string(d) + " entries");

  Eigen::MatrixXd cov = matrix_from_json(field(j, "cov", "triplet"));
  require(cov.rows() == d && cov.cols() == d, ErrorCode::parse,
          "triplet.cov: expected a " + std::to_string(d) + "x" + std::to_string(d) +
              " matrix");

  const auto& atoms_j = field(j, "atoms", "triplet");
  require(atoms_j.is_array(), ErrorCode::parse, "triplet.atoms: expected an array");
  std::vector<Atom> atoms;
  atoms.reserve(atoms_j.size());
  for (std::size_t i = 0; i < atoms_j.size(); ++i) {
    const std::string where = "triplet.atoms[" + std::to_string(i) + "]";
    const auto& aj = atoms_j[i];
    require(aj.is_object(), ErrorCode::parse, where + ": expected an object");
    Eigen::VectorXd x = vector_from_json(field(aj, "x", where), where + ".x");
    require(x.size() == d, ErrorCode::parse,
            where + ".x: expected " + std::to_string(d) + " entries");
    const double w = number_at(field(aj, "w", where), where + ".w");
    require(w > 0.0, ErrorCode::parse, where + ".w: weights must be strictly positive");
    require(x.lpNorm<Eigen::Infinity>() > kSnapTol, ErrorCode::parse,
            where + ".x: atoms may not sit at the origin");
    atoms.push_back(Atom{std::move(x), w});
  }
  try {
    return LevyTriplet(std::move(drift), std::move(cov), AtomicMeasure(d, std::move(atoms)));
  } catch (const Error& e) {
    fail(ErrorCode::parse, std::string("triplet: ") + e.what());
  }
}

Json lattice_to_json(const LatticeMeasure& m) {
  Json coeffs = Json::object();
  for (const auto& [site, w] : m.coeffs()) {
    coeffs[std::to_string(site)] = rational_to_string(w);
  }
  return Json{{"coeffs", std::move(coeffs)}};
}

LatticeMeasure lattice_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::parse, "lattice measure: expected an object");
  const auto& coeffs = field(j, "coeffs", "lattice measure");
  require(coeffs.is_object(), ErrorCode::parse, "lattice.coeffs: expected an object");
  LatticeMeasure m;
  for (const auto& [key, value] : coeffs.items()) {
    std::size_t site = 0;
    try {
      site = std::stoull(key);
    } catch (const std::exception&) {
      fail(ErrorCode::parse, "lattice.coeffs: site '" + key + "' is not a nonnegative integer");
    }
    require(value.is_string(), ErrorCode::parse,
            "lattice.coeffs[" + key + "]: rationals are \"p/q\" strings");
    m.add(site, rational_from_string(value.get<std::string>()));
  }
  return m;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  require(j.is_array() && !j.empty(), ErrorCode::parse,
          "matrix: expected a nonempty array of rows");
  const std::size_t rows = j.size();
  require(j[0].is_array() && !j[0].empty(), ErrorCode::parse,
          "matrix: rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    require(j[i].is_array() && j[i].size() == cols, ErrorCode::parse,
            "matrix: row " + std::to_string(i) + " has inconsistent length");
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          number_at(j[i][k], "matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

Json spatial_poly_to_json(const SpatialPoly& f) {
  Json j;
  j["kind"] = "spatial";
  j["dim"] = f.dim;
  Json terms = Json::array();
  for (const auto& [e, c] : f.poly.terms()) {
    Json exp = Json::array();
    for (auto x : e) exp.push_back(static_cast<int>(x));
    terms.push_back(Json{{"exp", std::move(exp)}, {"c", c}});
  }
  j["terms"] = std::move(terms);
  return j;
}

SpatialPoly spatial_poly_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::parse, "polynomial: expected an object");
  const auto& kind = field(j, "kind", "polynomial");
  require(kind.is_string() && kind.get<std::string>() == "spatial", ErrorCode::parse,
          "polynomial.kind: expected \"spatial\"");
  const int d = field(j, "dim", "polynomial").get<int>();
  require(d >= 1, ErrorCode::parse, "polynomial.dim: expected a positive integer");
  SpatialPoly f(d);
  const auto& terms = field(j, "terms", "polynomial");
  require(terms.is_array(), ErrorCode::parse, "polynomial.terms: expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "polynomial.terms[" + std::to_string(i) + "]";
    Exponents e = exponents_from_json(field(terms[i], "exp", where),
                                      static_cast<std::size_t>(d), where + ".exp");
    f.poly.add_term(e, number_at(field(terms[i], "c", where), where + ".c"));
  }
  return f;
}

Json test_function_to_json(const TestFunction& f) {
  Json j;
  j["kind"] = "chaos";
  j["r"] = f.r;
  j["m"] = f.m;
  Json terms = Json::array();
  for (const auto& [e, c] : f.poly.terms()) {
    Json g = Json::array();
    Json n = Json::array();
    for (int i = 0; i < f.r; ++i) g.push_back(static_cast<int>(e[i]));
    for (int k = 0; k < f.m; ++k) n.push_back(static_cast<int>(e[f.r + k]));
    terms.push_back(Json{{"g", std::move(g)}, {"N", std::move(n)}, {"c", c}});
  }
  j["terms"] = std::move(terms);
  return j;
}

TestFunction test_function_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::parse, "test function: expected an object");
  const auto& kind = field(j, "kind", "test function");
  require(kind.is_string() && kind.get<std::string>() == "chaos", ErrorCode::parse,
          "test function.kind: expected \"chaos\"");
  const int r = field(j, "r", "test function").get<int>();
  const int m = field(j, "m", "test function").get<int>();
  require(r >= 0 && m >= 0, ErrorCode::parse, "test function: r, m must be >= 0");
  TestFunction f(r, m);
  const auto& terms = field(j, "terms", "test function");
  require(terms.is_array(), ErrorCode::parse, "test function.terms: expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "test function.terms[" + std::to_string(i) + "]";
    Exponents g = exponents_from_json(field(terms[i], "g", where),
                                      static_cast<std::size_t>(r), where + ".g");
    Exponents n = exponents_from_json(field(terms[i], "N", where),
                                      static_cast<std::size_t>(m), where + ".N");
    Exponents e;
    e.reserve(g.size() + n.size());
    e.insert(e.end(), g.begin(), g.end());
    e.insert(e.end(), n.begin(), n.end());
    f.poly.add_term(e, number_at(field(terms[i], "c", where), where + ".c"));
  }
  return f;
}

Scenario scenario_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::parse, "scenario: expected an object");
  Eigen::MatrixXd t_map = matrix_from_json(field(j, "T", "scenario"));
  LevyTriplet t1 = triplet_from_json(field(j, "lambda1", "scenario"));
  LevyTriplet rho = triplet_from_json(field(j, "rho", "scenario"));
  return make_scenario(t_map, t1, rho);
}

Json scenario_to_json(const Scenario& sc) {
  Json j;
  j["T"] = matrix_to_json(sc.t_map);
  j["lambda1"] = triplet_to_json(sc.t1);
  j["rho"] = triplet_to_json(sc.solution.rho);
  return j;
}

namespace {

std::string multiset_key(const Exponents& alpha, const Exponents& beta) {
  auto side = [](const Exponents& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int rep = 0; rep < e[i]; ++rep) {
        if (!s.empty()) s += ',';
        s += std::to_string(i + 1);
      }
    }
    return s;
  };
  return side(alpha) + "|" + side(beta);
}

Exponents indices_to_exponents(const std::string& s, int arity, const std::string& where) {
  Exponents e(static_cast<std::size_t>(arity), 0);
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int idx = 0;
    try {
      idx = std::stoi(tok);
    } catch (const std::exception&) {
      fail(ErrorCode::parse, where + ": bad index '" + tok + "'");
    }
    require(idx >= 1 && idx <= arity, ErrorCode::parse,
            where + ": index " + tok + " out of range");
    ++e[static_cast<std::size_t>(idx - 1)];
  }
  return e;
}

}  // namespace

Json chaos_to_json(const ChaosCoefficients& c) {
  Json j;
  j["r"] = c.r;
  j["m"] = c.m;
  j["max_level"] = c.max_level;
  j["intensities"] = c.intensities;
  Json blocks = Json::object();
  for (const auto& [key, block] : c.blocks) {
    const std::string bkey = std::to_string(std::get<0>(key)) + "/" +
                             std::to_string(std::get<1>(key)) + "/" +
                             std::to_string(std::get<2>(key));
    Json entries = Json::object();
    for (const auto& [mkey, value] : block.coeffs) {
      entries[multiset_key(mkey.first, mkey.second)] = value;
    }
    blocks[bkey] = std::move(entries);
  }
  j["blocks"] = std::move(blocks);
  return j;
}

ChaosCoefficients chaos_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::parse, "chaos coefficients: expected an object");
  ChaosCoefficients c;
  c.r = field(j, "r", "chaos").get<int>();
  c.m = field(j, "m", "chaos").get<int>();
  c.max_level = field(j, "max_level", "chaos").get<int>();
  c.intensities = field(j, "intensities", "chaos").get<std::vector<double>>();
  const auto& blocks = field(j, "blocks", "chaos");
  require(blocks.is_object(), ErrorCode::parse, "chaos.blocks: expected an object");
  for (const auto& [bkey, entries] : blocks.items()) {
    int n = 0, jj = 0, kk = 0;
    if (std::sscanf(bkey.c_str(), "%d/%d/%d", &n, &jj, &kk) != 3 || jj + kk != n) {
      fail(ErrorCode::parse, "chaos.blocks: bad key '" + bkey + "'");
    }
    SymTensor block;
    block.gaussian_deg = jj;
    block.poisson_deg = kk;
    block.r = c.r;
    block.m = c.m;
    for (const auto& [mkey, value] : entries.items()) {
      const auto bar = mkey.find('|');
      require(bar != std::string::npos, ErrorCode::parse,
              "chaos block key '" + mkey + "' lacks the g|N separator");
      Exponents alpha = indices_to_exponents(mkey.substr(0, bar), c.r, "chaos key g-part");
      Exponents beta = indices_to_exponents(mkey.substr(bar + 1), c.m, "chaos key N-part");
      block.coeffs.emplace(std::make_pair(std::move(alpha), std::move(beta)),
                           value.get<double>());
    }
    c.blocks.emplace(std::make_tuple(n, jj, kk), std::move(block));
  }
  return c;
}

Json verdict_to_json(const IDVerdict& v) {
  Json j;
  j["status"] = v.is_id() ? "ID_up_to_" + std::to_string(v.horizon) : "NotID";
  j["horizon"] = v.horizon;
  j["recovered_levy"] = lattice_to_json(v.recovered_levy);
  if (v.witness) {
    j["witness"] = Json{{"site", v.witness->first},
                        {"weight", rational_to_string(v.witness->second)}};
  }
  return j;
}

Json check_to_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["value"] = c.value;
  j["tolerance"] = c.tolerance;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json verify_report_to_json(const VerifyReport& rep) {
  Json j;
  j["title"] = rep.title;
  j["pass"] = rep.pass();
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(check_to_json(c));
  j["checks"] = std::move(checks);
  return j;
}

Json config_to_json(const RunConfig& cfg) {
  return Json{{"seed", cfg.seed},          {"mc_samples", cfg.mc_samples},
              {"N", cfg.horizon},          {"exact_tol", cfg.exact_tol},
              {"mc_sigma", cfg.mc_sigma},  {"workers", cfg.workers}};
}

Json make_report(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["config"] = config_to_json(cfg);
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::parse, std::string("JSON parse error: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::io, "cannot open " + path + " for writing");
  out << content;
  require(out.good(), ErrorCode::io, "short write to " + path);
}

std::string batch_to_csv(const SampleBatch& batch) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < batch.count; ++i) {
    for (int k = 0; k < batch.dim; ++k) {
      if (k > 0) os << ',';
      os << batch.data[i * static_cast<std::size_t>(batch.dim) + k];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace levykit
