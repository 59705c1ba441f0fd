// qbell command-line front end. Talks to the shared library exclusively
// through the C API in qbell.h; owns flag parsing and CSV/JSON emission.
//
// Exit codes: 0 success, 1 validation/numeric failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbell.h"

namespace {

constexpr const char* kOutDirEnv = "QBELL_OUT_DIR";

// Fixed 12-significant-digit formatting keeps every emitted document
// byte-deterministic for identical inputs.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Document {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const {
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c)
      os << (c ? "," : "") << columns[c];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        os << (c ? "," : "") << row[c];
      os << "\n";
    }
    return os.str();
  }

  // Fields arrive preformatted by fmt(); finite numbers stay bare JSON
  // numbers, everything else (names, nan) is quoted.
  std::string to_json() const {
    auto is_json_number = [](const std::string& v) {
      if (v.empty()) return false;
      char* end = nullptr;
      const double d = std::strtod(v.c_str(), &end);
      return end == v.c_str() + v.size() && std::isfinite(d);
    };
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      os << (r ? ",\n " : "\n ") << "{";
      for (std::size_t c = 0; c < columns.size(); ++c) {
        const std::string& v = rows[r][c];
        os << (c ? ", " : "") << "\"" << columns[c] << "\": "
           << (is_json_number(v) ? v : "\"" + v + "\"");
      }
      os << "}";
    }
    os << "\n]\n";
    return os.str();
  }
};

int fail(qbell_status st) {
  std::cerr << "error (" << qbell_status_name(st) << "): " << qbell_last_error()
            << "\n";
  return st == QBELL_ERR_USAGE || st == QBELL_ERR_NULL_POINTER ? 2 : 1;
}

int usage_error(const std::string& msg) {
  std::cerr << "error (usage): " << msg << "\n";
  return 2;
}

// --out resolution: bare relative paths land in $QBELL_OUT_DIR when set.
std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path p(out);
  const char* dir = std::getenv(kOutDirEnv);
  if (dir && *dir && p.is_relative()) return std::filesystem::path(dir) / p;
  return p;
}

int emit(const Document& doc, const std::string& out, const std::string& format) {
  const std::string text = format == "json" ? doc.to_json() : doc.to_csv();
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  const std::filesystem::path path = resolve_out(out);
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) return usage_error("cannot open output file: " + path.string());
  f << text;
  return f.good() ? 0 : usage_error("failed writing output file: " + path.string());
}

std::optional<std::vector<double>> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) return std::nullopt;
    } catch (...) {
      return std::nullopt;
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

// "min:max:step" inclusive grid, or a single value.
std::optional<std::vector<double>> parse_kappa_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    if (parts.size() == 1) return std::vector<double>{std::stod(parts[0])};
    if (parts.size() != 3) return std::nullopt;
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const double step = std::stod(parts[2]);
    if (!(step > 0.0) || hi < lo) return std::nullopt;
    const auto n = static_cast<std::size_t>((hi - lo) / step + 1e-9);
    std::vector<double> grid(n + 1);
    for (std::size_t i = 0; i <= n; ++i) grid[i] = lo + step * i;
    return grid;
  } catch (...) {
    return std::nullopt;
  }
}

// Joint matrix: rows separated by ';' (inline) or newlines (file), cells by
// commas. '#' starts a comment line in files.
std::optional<std::vector<std::vector<double>>> parse_rows(
    const std::string& text, char row_sep) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line, row_sep)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = parse_double_list(line);
    if (!cells) return std::nullopt;
    rows.push_back(*cells);
  }
  if (rows.empty()) return std::nullopt;
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) return std::nullopt;
  return rows;
}

struct SearchFlags {
  qbell_search_config cfg;

  SearchFlags() { qbell_search_config_default(&cfg); }

  void attach(CLI::App* cmd) {
    cmd->add_option("--theta-min", cfg.theta_min, "Search domain lower bound");
    cmd->add_option("--theta-max", cfg.theta_max,
                    "Search domain upper bound (default pi)");
    cmd->add_option("--coarse-steps", cfg.coarse_steps,
                    "Coarse grid subdivisions for the theta supremum");
    cmd->add_option("--refine-tol", cfg.refine_tolerance,
                    "Golden-section tolerance on theta");
    cmd->add_option("--positivity-eps", cfg.positivity_epsilon,
                    "Threshold for counting S_q as strictly positive");
    cmd->add_option("--kappa-max", cfg.kappa_max,
                    "Upper bound of the kappa threshold search");
    cmd->add_option("--bisect-tol", cfg.kappa_bisect_tolerance,
                    "Bisection tolerance on kappa");
  }
};

int run_entropy(const std::string& inline_joint, const std::string& file,
                double q, const std::string& out, const std::string& format) {
  std::optional<std::vector<std::vector<double>>> rows;
  if (!inline_joint.empty()) {
    rows = parse_rows(inline_joint, ';');
  } else {
    std::ifstream f(file);
    if (!f) return usage_error("cannot open joint file: " + file);
    std::stringstream buf;
    buf << f.rdbuf();
    rows = parse_rows(buf.str(), '\n');
  }
  if (!rows) return usage_error("malformed joint distribution");

  const std::size_t nx = rows->size();
  const std::size_t ny = rows->front().size();
  std::vector<double> cells;
  cells.reserve(nx * ny);
  for (const auto& r : *rows) cells.insert(cells.end(), r.begin(), r.end());

  qbell_joint* joint = nullptr;
  qbell_status st = qbell_joint_create(cells.data(), nx, ny, &joint);
  if (st != QBELL_OK) return fail(st);

  Document doc;
  doc.columns = {"quantity", "value"};
  const auto push = [&](const char* name, double v) {
    doc.rows.push_back({name, fmt(v)});
  };

  double v = 0.0;
  int regime = 1;
  struct {
    const char* name;
    qbell_direction dir;
    qbell_cond_form form;
  } conds[] = {
      {"h_x_given_y_chain", QBELL_X_GIVEN_Y, QBELL_COND_CHAIN},
      {"h_y_given_x_chain", QBELL_Y_GIVEN_X, QBELL_COND_CHAIN},
      {"h_x_given_y_avg", QBELL_X_GIVEN_Y, QBELL_COND_AVERAGE},
      {"h_y_given_x_avg", QBELL_Y_GIVEN_X, QBELL_COND_AVERAGE},
  };

  if ((st = qbell_joint_marginal_entropy(joint, q, QBELL_X_GIVEN_Y, &v)) != QBELL_OK)
    goto done;
  push("h_x", v);
  if ((st = qbell_joint_marginal_entropy(joint, q, QBELL_Y_GIVEN_X, &v)) != QBELL_OK)
    goto done;
  push("h_y", v);
  if ((st = qbell_joint_entropy(joint, q, &v)) != QBELL_OK) goto done;
  push("h_joint", v);
  for (const auto& c : conds) {
    if ((st = qbell_joint_conditional_entropy(joint, q, c.dir, c.form, &v)) !=
        QBELL_OK)
      goto done;
    push(c.name, v);
  }
  if ((st = qbell_joint_mutual_information(joint, q, &v)) != QBELL_OK) goto done;
  push("mutual_information", v);
  if ((st = qbell_joint_metric(joint, q, QBELL_METRIC_DELTA, &v, &regime)) !=
      QBELL_OK)
    goto done;
  push("delta", v);
  if ((st = qbell_joint_metric(joint, q, QBELL_METRIC_DTILDE, &v, nullptr)) !=
      QBELL_OK)
    goto done;
  push("dtilde", v);

done:
  qbell_joint_free(joint);
  if (st != QBELL_OK) return fail(st);
  if (!regime)
    std::cerr << "note: q < 1 lies outside the metric regime; delta/dtilde are "
                 "not guaranteed to satisfy the distance axioms\n";
  return emit(doc, out, format);
}

int run_cq(const std::string& scenario_name, const std::string& metric_name,
           double q, double theta, double kappa, const std::string& out,
           const std::string& format) {
  qbell_scenario scenario;
  qbell_metric metric;
  qbell_status st = qbell_scenario_parse(scenario_name.c_str(), &scenario);
  if (st != QBELL_OK) return fail(st);
  if ((st = qbell_metric_parse(metric_name.c_str(), &metric)) != QBELL_OK)
    return fail(st);

  double value = 0.0;
  if ((st = qbell_cq(scenario, metric, q, theta, kappa, &value)) != QBELL_OK)
    return fail(st);

  Document doc;
  doc.columns = {"scenario", "metric", "q", "theta", "kappa", "c_q"};
  doc.rows.push_back({qbell_scenario_name(scenario), qbell_metric_name(metric),
                      fmt(q), fmt(theta), fmt(kappa), fmt(value)});
  return emit(doc, out, format);
}

int run_scan(const std::string& scenario_name, const std::string& metric_name,
             const std::string& q_text, const std::string& kappa_text,
             const SearchFlags& search, const std::string& out,
             const std::string& format) {
  qbell_scenario scenario;
  qbell_metric metric;
  qbell_status st = qbell_scenario_parse(scenario_name.c_str(), &scenario);
  if (st != QBELL_OK) return fail(st);
  if ((st = qbell_metric_parse(metric_name.c_str(), &metric)) != QBELL_OK)
    return fail(st);

  const auto q_list = parse_double_list(q_text);
  if (!q_list) return usage_error("malformed --q list: " + q_text);
  const auto kappa_grid = parse_kappa_grid(kappa_text);
  if (!kappa_grid) return usage_error("malformed --kappa grid: " + kappa_text);

  qbell_scan* scan = nullptr;
  st = qbell_scan_run(scenario, metric, q_list->data(), q_list->size(),
                      kappa_grid->data(), kappa_grid->size(), &search.cfg,
                      &scan);
  if (st != QBELL_OK) return fail(st);

  Document doc;
  doc.columns = {"scenario", "metric",  "q",       "kappa",
                 "theta_star", "s_value", "positive"};
  for (std::size_t i = 0; i < qbell_scan_size(scan); ++i) {
    qbell_scan_record rec;
    if ((st = qbell_scan_get(scan, i, &rec)) != QBELL_OK) {
      qbell_scan_free(scan);
      return fail(st);
    }
    doc.rows.push_back({qbell_scenario_name(rec.scenario),
                        qbell_metric_name(rec.metric), fmt(rec.q),
                        fmt(rec.kappa), fmt(rec.theta_star), fmt(rec.s_value),
                        rec.positive ? "1" : "0"});
  }
  qbell_scan_free(scan);
  return emit(doc, out, format);
}

int run_threshold(const std::string& scenario_name,
                  const std::string& metric_name, const std::string& q_text,
                  const SearchFlags& search, const std::string& out,
                  const std::string& format) {
  qbell_scenario scenario;
  qbell_metric metric;
  qbell_status st = qbell_scenario_parse(scenario_name.c_str(), &scenario);
  if (st != QBELL_OK) return fail(st);
  if ((st = qbell_metric_parse(metric_name.c_str(), &metric)) != QBELL_OK)
    return fail(st);

  const auto q_list = parse_double_list(q_text);
  if (!q_list) return usage_error("malformed --q list: " + q_text);

  Document doc;
  doc.columns = {"scenario", "metric", "q", "kappa_s"};
  for (double q : *q_list) {
    int exists = 0;
    double kappa_s = 0.0;
    if ((st = qbell_kappa_threshold(scenario, metric, q, &search.cfg, &exists,
                                    &kappa_s)) != QBELL_OK)
      return fail(st);
    if (!exists)
      std::cerr << "note: no violation at kappa = 0 for q = " << fmt(q)
                << "; threshold absent\n";
    doc.rows.push_back({qbell_scenario_name(scenario),
                        qbell_metric_name(metric), fmt(q),
                        exists ? fmt(kappa_s) : "nan"});
  }
  return emit(doc, out, format);
}

int run_validate(const std::string& scenario_name, std::size_t theta_steps,
                 std::size_t kappa_steps, double kappa_max,
                 const std::string& out, const std::string& format) {
  std::vector<qbell_scenario> scenarios;
  if (scenario_name == "all") {
    scenarios = {QBELL_SCENARIO_CHSH_DEPHASING,
                 QBELL_SCENARIO_LG_SPIN_HALF_DEPHASING,
                 QBELL_SCENARIO_LG_SPIN_HALF_DEPOLARIZING,
                 QBELL_SCENARIO_LG_SPIN_ONE_DEPHASING};
  } else {
    qbell_scenario s;
    const qbell_status st = qbell_scenario_parse(scenario_name.c_str(), &s);
    if (st != QBELL_OK) return fail(st);
    scenarios.push_back(s);
  }

  Document doc;
  doc.columns = {"scenario", "max_abs_dev", "tolerance", "pass"};
  bool all_ok = true;
  for (qbell_scenario s : scenarios) {
    double dev = 0.0;
    const qbell_status st =
        qbell_validate_oracle(s, theta_steps, kappa_steps, kappa_max, &dev);
    if (st != QBELL_OK) return fail(st);
    const double tol = qbell_oracle_tolerance(s);
    const bool ok = dev <= tol;
    all_ok = all_ok && ok;
    doc.rows.push_back(
        {qbell_scenario_name(s), fmt(dev), fmt(tol), ok ? "1" : "0"});
  }
  const int rc = emit(doc, out, format);
  if (rc != 0) return rc;
  if (!all_ok) {
    std::cerr << "error (numeric): oracle deviation exceeds tolerance\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tsallis q-entropic Bell / Leggett-Garg violation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qbell_version()));

  const std::string scenario_help =
      "Scenario: chsh-dephasing | lg-spin-half-dephasing | "
      "lg-spin-half-depolarizing | lg-spin-one-dephasing";
  const std::string metric_help = "Metric kind: delta | dtilde";

  std::string out, format = "csv";
  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", out,
                    "Output file (default stdout; relative paths land in "
                    "$QBELL_OUT_DIR when set)");
    cmd->add_option("--format", format, "Output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  // entropy
  std::string inline_joint, joint_file;
  double q = 1.0;
  auto* entropy = app.add_subcommand(
      "entropy", "Evaluate q-entropies and distances of a joint distribution");
  entropy->add_option("--joint", inline_joint,
                      "Inline joint, rows ';'-separated: \"0.5,0;0,0.5\"");
  entropy->add_option("--file", joint_file,
                      "Joint from file, one comma-separated row per line");
  entropy->add_option("--q", q, "Entropic order q > 0")->required();
  add_output(entropy);

  // cq
  std::string scenario_name, metric_name;
  double theta = 0.0, kappa = 0.0;
  auto* cq = app.add_subcommand("cq", "Single violation quantity C_q");
  cq->add_option("--scenario", scenario_name, scenario_help)->required();
  cq->add_option("--metric", metric_name, metric_help)->required();
  cq->add_option("--q", q, "Entropic order q > 0")->required();
  cq->add_option("--theta", theta, "Angle / omega*dtau in radians")->required();
  cq->add_option("--kappa", kappa, "Decoherence ratio")->required();
  add_output(cq);

  // scan-s
  std::string q_text, kappa_text;
  SearchFlags search;
  auto* scan = app.add_subcommand("scan-s", "S_q(kappa) table over a grid");
  scan->add_option("--scenario", scenario_name, scenario_help)->required();
  scan->add_option("--metric", metric_name, metric_help)->required();
  scan->add_option("--q", q_text, "Comma-separated q list, e.g. 1.0,1.2,1.5")
      ->required();
  scan->add_option("--kappa", kappa_text,
                   "Kappa grid min:max:step (or a single value)")
      ->required();
  search.attach(scan);
  add_output(scan);

  // kappa-threshold
  auto* threshold = app.add_subcommand(
      "kappa-threshold", "Largest kappa with S_q(kappa) > positivity epsilon");
  threshold->add_option("--scenario", scenario_name, scenario_help)->required();
  threshold->add_option("--metric", metric_name, metric_help)->required();
  threshold->add_option("--q", q_text, "Comma-separated q list")->required();
  search.attach(threshold);
  add_output(threshold);

  // validate-oracle
  std::size_t theta_steps = 20, kappa_steps = 10;
  double kappa_max = 2.0;
  auto* validate = app.add_subcommand(
      "validate-oracle",
      "Compare closed forms against the density-matrix oracle on a grid");
  validate->add_option("--scenario", scenario_name,
                       scenario_help + " | all")->required();
  validate->add_option("--theta-steps", theta_steps, "Grid points in theta");
  validate->add_option("--kappa-steps", kappa_steps, "Grid points in kappa");
  validate->add_option("--kappa-max", kappa_max, "Upper end of the kappa grid");
  add_output(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (entropy->parsed()) {
    if (inline_joint.empty() == joint_file.empty())
      return usage_error("entropy requires exactly one of --joint or --file");
    return run_entropy(inline_joint, joint_file, q, out, format);
  }
  if (cq->parsed())
    return run_cq(scenario_name, metric_name, q, theta, kappa, out, format);
  if (scan->parsed())
    return run_scan(scenario_name, metric_name, q_text, kappa_text, search,
                    out, format);
  if (threshold->parsed())
    return run_threshold(scenario_name, metric_name, q_text, search, out,
                         format);
  if (validate->parsed())
    return run_validate(scenario_name, theta_steps, kappa_steps, kappa_max,
                        out, format);
  return usage_error("no subcommand given");
}
